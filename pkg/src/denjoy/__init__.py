"""Denjoy circle maps, their suspensions and mapping tori.

Exact continued-fraction arithmetic and certified enclosures drive the
dynamics; combinatorial invariants (Euler characteristic, free rank,
handle counts) describe the mapping tori.
"""
from .certified import CertifiedValue
from .circle import (
    Base,
    BlowupSchedule,
    CantorApprox,
    DenjoyMap,
    Gap,
    GapIndex,
    OrbitAngle,
    build_map,
    cantor_approx,
    collapse,
    denjoy_eval,
    denjoy_iterate,
    gap_circular_order,
    insertion_offset,
    section,
)
from .contfrac import (
    ContinuedFraction,
    convergents,
    evaluate,
    frac_multiple,
    parse_cf,
    separation_lower_bound,
)
from .cwcomplex import euler_and_rank, gap_orbit_genus, mapping_torus_complex, spine_complex
from .dynamics import orbit_density, semiconjugacy_check, wandering_images
from .equivalence import IntegerMatrix2, Verdict, gl2z_equivalent, gl2z_matrix_search, mobius_apply
from .gluing import glue_eval, parse_expression
from .handles import HandleRecord, boundary_genus
from .suspension import (
    CantorEnds,
    FiniteEnds,
    SpherePoint,
    TorusPoint,
    end_count,
    induced_end_map,
    sphere_eval,
    suspension_flow,
)

__version__ = "0.1.0"
