"""Shared independent oracles and the acceptance summary hook."""
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def fold_value(prefix, tail=(), terms=160) -> Fraction:
    """Value of [0; prefix, tail, tail, ...] by folding a long truncation from the back.

    This deliberately avoids the forward convergent recurrence used by the
    package; with 160+ partial quotients the error is far below 10^-60.
    """
    seq = list(prefix)
    while tail and len(seq) < terms:
        seq.extend(tail)
    x = Fraction(0)
    for a in reversed(seq):
        x = 1 / (a + x)
    return x


def decimal_sqrt(n: int, digits: int = 60) -> Decimal:
    getcontext().prec = digits
    return Decimal(n).sqrt()


def frac_of(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {text}")
