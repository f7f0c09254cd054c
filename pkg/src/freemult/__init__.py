"""Exact computation of derivation modules and free multiplicities.

Everything runs in exact arithmetic over Q or a prime field GF(p).  The main
entry points are

* :func:`x3`, :func:`lattice`, :func:`char_poly`, :func:`ziegler_restriction`
  for arrangements and their combinatorics;
* :func:`degree_component`, :func:`minimal_generators`, :func:`saito_check`
  and :func:`decide_free_bruteforce` for D(A, m) itself;
* :func:`decide_free_homological` and :func:`classify_predicted` for the
  X3 moduli family;
* :func:`p1_exponents`, :func:`yoshinaga3_free`, :func:`grid_line_free` for
  rank-2 and rank-3 tests;
* :func:`build_extension` and :func:`verify_extension` for rank-4 free
  extensions.
"""

from .arrangement import (
    ArrangementError,
    CharacteristicPolynomial,
    DegenerateModuliError,
    IntersectionLattice,
    MultiArrangement,
    X3_TRIPLE_POINTS,
    boolean,
    char_poly,
    lattice,
    restriction_fibers,
    ziegler_restriction,
    x3,
)
from .derivations import (
    Derivation,
    FreenessVerdict,
    MembershipError,
    SaitoResult,
    Status,
    decide_free,
    decide_free_bruteforce,
    degree_component,
    free_hilbert_function,
    hilbert_function,
    is_member,
    minimal_generators,
    saito_check,
)
from .extension import (
    ExtensionSpec,
    build_extension,
    normalize_translation,
    recognize_x3,
    terao_trace,
    translate,
    verify_extension,
)
from .field import GF, QQ, Field, FieldError
from .linalg import PolyMatrix, det, kernel_basis, rank, rref
from .poly import Polynomial, PolynomialError, parse_polynomial
from .restriction import (
    GridLineSpec,
    grid_line_arrangement,
    grid_line_free,
    grid_points_on_line,
    p1_exponents,
    yoshinaga3_free,
    yoshinaga3_report,
)
from .scan import scan
from .homological import (
    HilbertBurchError,
    HilbertBurchMatrix,
    build_M,
    canonical_basis,
    classify_predicted,
    decide_free_homological,
    hilbert_burch,
    triple_point_ideals,
    validate_hilbert_burch,
    verify_chain_exactness,
    x3_chain_complex,
)

__version__ = "0.1.0"
