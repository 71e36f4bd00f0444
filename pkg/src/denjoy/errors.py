"""Exception hierarchy shared by all modules."""


class DenjoyError(Exception):
    """Base class for every error raised by this package."""


class DepthExhausted(DenjoyError):
    """A continued-fraction stream ran out of known partial quotients."""


class UnsupportedInput(DenjoyError):
    """The operation needs a quadratic irrational (periodic tail)."""


class OrbitCollision(DenjoyError):
    """Two blow-up seeds lie on the same rotation orbit."""


class InvalidWeight(DenjoyError):
    """A blow-up weight is not a positive rational."""


class UndecidableComparison(DenjoyError):
    """An enclosure is too wide to decide an order comparison; refine precision."""


class OrbitHit(DenjoyError):
    """A base angle may coincide with a resolved orbit point."""


class ResolvedDepthError(DenjoyError):
    """A gap index fell outside the truncation window |n| <= N."""

    def __init__(self, orbit_id: int, n: int, depth: int):
        super().__init__(
            f"gap index ({orbit_id}, {n}) outside resolved window |n| <= {depth}"
        )
        self.orbit_id = orbit_id
        self.n = n
        self.depth = depth


class ComplexError(DenjoyError):
    """Malformed or unsupported cell complex."""


class DisconnectedError(ComplexError):
    pass


class UnsupportedFacePattern(ComplexError):
    pass


class BoundaryMismatch(DenjoyError):
    """A gluing expression leaves boundary components unmatched."""


class ParseError(DenjoyError, ValueError):
    pass
