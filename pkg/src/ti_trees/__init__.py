"""Exact TI (transmission irregularity) decisions for starlike and double
starlike trees: a BFS oracle, divisor-based characterization checks, and a
symbolic certifier for infinite one-parameter families."""

from .characterize import (
    CaseKind,
    CaseTarget,
    alkl_predicate,
    case_targets_double,
    case_targets_starlike,
    check_double_starlike,
    check_starlike,
    check_tree,
)
from .diophantine import (
    BoxDioProblem,
    DivisorWitness,
    GValue,
    c_star,
    compare_g,
    g_value,
    solve_bruteforce,
    solve_by_divisors,
)
from .polycert import (
    CaseCertificate,
    CertifierInapplicable,
    FamilyCertificate,
    HFamilySpec,
    LinPoly,
    QuadPoly,
    SFamilySpec,
    certify_family,
    certify_h_family,
    certify_no_divisor,
    certify_starlike_family,
    lin_mul,
    lower_g_approx,
    lower_sqrt_approx,
    shift_family,
    upper_g_approx,
    upper_sqrt_approx,
)
from .transmission import (
    TransmissionTable,
    bfs_transmissions,
    closed_form_offset_starlike,
    closed_form_offsets_double,
    is_ti_bruteforce,
)
from .trees import (
    DoubleStarlikeSpec,
    Side,
    StarlikeSpec,
    TreeGraph,
    VertexLabel,
    build_double_starlike,
    build_starlike,
    build_tree,
    format_spec,
    normalize_double_starlike,
    order_double_starlike,
    order_starlike,
    parse_spec,
)
from .verdicts import Collision, CollisionWitness, EqualBranches, LongBranch, SpineShort, Verdict

__version__ = "0.1.0"
