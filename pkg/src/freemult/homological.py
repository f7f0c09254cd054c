"""Freeness of multiplicities on the X3 moduli via Hilbert-Burch syzygies.

The three triple points Y1 = {H1, H2, H4}, Y2 = {H1, H3, H5} and
Y3 = {H2, H3, H6} carry the ideals

    J(Y1) = <x^m1, y^m2, (x - alpha*y)^m4>
    J(Y2) = <x^m1, z^m3, (x + z)^m5>
    J(Y3) = <y^m2, z^m3, (y + z)^m6>

each with a 3x2 Hilbert-Burch matrix of syzygies.  Pushing the six syzygy
columns through the cokernel of the lifted triple-point map gives a 3x6
graded matrix ``M``; D(X3, m) is free exactly when the columns of ``M``
generate S^3.  All minors of ``M`` are homogeneous, and a homogeneous ideal
is the unit ideal iff it contains a nonzero constant (a proper homogeneous
ideal sits inside <x, y, z>), so the test is: some 3x3 minor is a nonzero
constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .arrangement import DegenerateModuliError, X3_TRIPLE_POINTS, x3
from .derivations import Derivation, FreenessVerdict, Status
from .field import Field, QQ
from .linalg import EchelonBasis, PolyMatrix, det, mat_mul, rank, sparse_kernel
from .poly import Polynomial, monomial_index, monomials

XYZ = ("x", "y", "z")

# rows of the lifted map: the pairs (H, Y) with H through Y, grouped by Y
HY_PAIRS = tuple((h, y) for y, pt in enumerate(X3_TRIPLE_POINTS) for h in pt)


class HilbertBurchError(ValueError):
    pass


def _check_moduli(alpha, m, field: Field):
    a = field(alpha)
    if not a:
        raise DegenerateModuliError("alpha = 0 makes H4 coincide with H1")
    if a == field.one:
        raise DegenerateModuliError("alpha = 1 gives the braid arrangement lattice")
    m = tuple(m)
    if len(m) != 6 or any(not isinstance(k, int) or k < 1 for k in m):
        raise ValueError(f"X3 needs six positive multiplicities, got {m}")
    return a, m


def triple_point_ideals(alpha, m, field: Field = QQ):
    """Generators of J(Y1), J(Y2), J(Y3) in the fixed order used by M."""
    a, m = _check_moduli(alpha, m, field)
    A = x3(a, field, m)
    return tuple(
        tuple(A.linear_form(h) ** m[h] for h in pt) for pt in X3_TRIPLE_POINTS
    )


# -- Hilbert-Burch matrices --------------------------------------------------------

@dataclass(frozen=True)
class HilbertBurchMatrix:
    """A 3x2 syzygy matrix ``phi`` of ``(f1, f2, f3)``.

    ``minor_scalars[i]`` is the nonzero constant with
    (2x2 minor of phi omitting row i) = minor_scalars[i] * f_i.
    """

    phi: PolyMatrix
    generators: tuple
    column_degrees: tuple
    minor_scalars: tuple

    def column(self, j):
        return self.phi.column(j)


def validate_hilbert_burch(generators, phi) -> tuple:
    """Check syzygy and minor identities; return the minor scalars.

    ``phi`` may be a :class:`PolyMatrix` or nested lists of polynomials.
    """
    entries = phi.entries if isinstance(phi, PolyMatrix) else tuple(tuple(r) for r in phi)
    gens = tuple(generators)
    if len(entries) != 3 or any(len(r) != 2 for r in entries):
        raise HilbertBurchError("a Hilbert-Burch matrix is 3x2")
    for j in range(2):
        total = gens[0].zero_like()
        for i in range(3):
            total = total + entries[i][j] * gens[i]
        if total:
            raise HilbertBurchError(f"column {j} is not a syzygy: sum = {total}")
    scalars = []
    for i in range(3):
        a, b = [r for r in range(3) if r != i]
        minor = entries[a][0] * entries[b][1] - entries[a][1] * entries[b][0]
        mon, c = gens[i].leading_term()
        k = gens[i].field.div(minor.coefficient(mon), c)
        if not k or minor != gens[i] * k:
            raise HilbertBurchError(
                f"minor omitting row {i + 1} is {minor}, not a nonzero multiple of {gens[i]}"
            )
        scalars.append(k)
    return tuple(scalars)


def _used_variables(polys):
    used = set()
    for f in polys:
        for mon in f.terms:
            used.update(i for i, e in enumerate(mon) if e)
    return sorted(used)


def _syzygy_component(gens, D: int):
    """Reduced-echelon basis of syzygies of total degree D, as sparse vectors.

    Column layout: block i holds the coefficients of g_i in degree D - d_i.
    """
    F = gens[0].field
    nv = len(gens[0].vars)
    degs = [g.degree for g in gens]
    offsets = []
    total = 0
    for d in degs:
        offsets.append(total)
        total += len(monomials(nv, D - d)) if D >= d else 0
    target = monomial_index(nv, D)
    rows: dict = {}
    for i, g in enumerate(gens):
        if D < degs[i]:
            continue
        for k, mon in enumerate(monomials(nv, D - degs[i])):
            col = offsets[i] + k
            for gm, c in g.terms.items():
                r = target[tuple(a + b for a, b in zip(mon, gm))]
                rows.setdefault(r, {})[col] = c
    kernel = sparse_kernel(list(rows.values()), total, F)
    return kernel, offsets


def _syzygy_to_column(gens, D, vec, offsets):
    F = gens[0].field
    variables = gens[0].vars
    nv = len(variables)
    column = []
    for i, g in enumerate(gens):
        d = D - g.degree
        mons = monomials(nv, d) if d >= 0 else ()
        start = offsets[i]
        terms = {mons[k]: vec[start + k] for k in range(len(mons)) if vec.get(start + k)}
        column.append(Polynomial._raw(F, variables, terms))
    return column


def _column_to_vector(gens, D, column, offsets):
    nv = len(gens[0].vars)
    vec = {}
    for i, (g, P) in enumerate(zip(gens, column)):
        d = D - g.degree
        if d < 0:
            continue
        idx = monomial_index(nv, d)
        for mon, c in P.terms.items():
            vec[offsets[i] + idx[mon]] = c
    return vec


def hilbert_burch(f1: Polynomial, f2: Polynomial, f3: Polynomial) -> HilbertBurchMatrix:
    """Minimal syzygies of ``(f1, f2, f3)``, found degree by degree.

    The computation runs in the subring of the variables that actually occur
    (two of them for a triple point of X3) and the result is embedded back.
    """
    gens_full = (f1, f2, f3)
    if any(not f or not f.is_homogeneous() or f.is_constant() for f in gens_full):
        raise HilbertBurchError("generators must be non-constant homogeneous forms")
    used = _used_variables(gens_full)
    if len(used) < 2:
        raise HilbertBurchError("generators live in one variable: the ideal is not of codimension two")
    full_vars = f1.vars
    sub_vars = tuple(full_vars[i] for i in used)
    F = f1.field

    def shrink(f):
        return Polynomial._raw(F, sub_vars, {tuple(mon[i] for i in used): c for mon, c in f.terms.items()})

    gens = tuple(shrink(f) for f in gens_full)
    nv = len(sub_vars)
    found = []  # (D, column)
    top = sum(g.degree for g in gens)
    for D in range(min(g.degree for g in gens), top + 1):
        kernel, offsets = _syzygy_component(gens, D)
        if not kernel:
            continue
        image = EchelonBasis(F)
        for e, col in found:
            for mon in monomials(nv, D - e):
                shifted = [P * Polynomial.monomial(F, sub_vars, mon) for P in col]
                image.add(_column_to_vector(gens, D, shifted, offsets))
        for vec in kernel:
            if image.add(vec):
                found.append((D, _syzygy_to_column(gens, D, vec, offsets)))
        if len(found) >= 2:
            break
    if len(found) != 2:
        raise HilbertBurchError(
            f"syzygy module of {gens_full} is not free of rank 2 on minimal generators "
            f"(found {len(found)}); are the underlying linear forms proportional?"
        )
    entries = [
        [found[j][1][i].embed(full_vars, used) for j in range(2)] for i in range(3)
    ]
    row_deg = tuple(f.degree for f in gens_full)
    col_deg = tuple(D for D, _ in found)
    phi = PolyMatrix(entries, row_deg, col_deg)
    scalars = validate_hilbert_burch(gens_full, phi)
    return HilbertBurchMatrix(phi, gens_full, col_deg, scalars)


# -- chain complex ---------------------------------------------------------------

@dataclass(frozen=True)
class X3ChainComplex:
    """Scalar matrices of S_0 -> S_1 -> S_2, the lift of delta1 and the
    projection onto the cokernel basis [e_{H1,Y1}], [e_{H2,Y1}], [e_{H3,Y2}]."""

    field: Field
    alpha: object
    delta0: tuple
    delta1: tuple
    delta1_hat: tuple
    projection: tuple


def x3_chain_complex(alpha, field: Field = QQ) -> X3ChainComplex:
    a = field(alpha)
    if not a or a == field.one:
        raise DegenerateModuliError(f"alpha = {alpha} is degenerate")
    F = field
    z, o, mo = F.zero, F.one, F.neg(F.one)
    delta0 = tuple(x3(a, F).forms)
    delta1 = (
        (o, F.neg(a), z, mo, z, z),
        (o, z, o, z, mo, z),
        (z, o, o, z, z, mo),
    )
    delta1_hat = tuple(
        tuple(delta1[y][h] if col == h else z for col in range(6)) for h, y in HY_PAIRS
    )
    projection = (
        (o, z, z, mo, z, z, z, z, z),
        (z, o, z, z, z, z, a, z, z),
        (z, z, z, z, o, z, z, mo, z),
    )
    return X3ChainComplex(F, a, delta0, delta1, delta1_hat, projection)


def verify_chain_exactness(alpha, field: Field = QQ, delta1=None) -> bool:
    """Exactness of S^3 -> S^6 -> S^3 (scalar ranks suffice).

    ``delta1`` may be overridden to test a perturbed complex.
    """
    cx = x3_chain_complex(alpha, field)
    d0 = cx.delta0
    d1 = cx.delta1 if delta1 is None else tuple(tuple(field(c) for c in r) for r in delta1)
    composite = mat_mul(d1, d0, field)
    if any(c for row in composite for c in row):
        return False
    r0 = rank(d0, field)
    r1 = rank(d1, field)
    # injective delta0, surjective delta1, and dim ker delta1 = 6 - 3 = rank delta0
    return r0 == 3 and r1 == 3 and 6 - r1 == r0


def check_cokernel_presentation(cx: X3ChainComplex) -> bool:
    """The projection kills the image of the lift, is onto, and the lift has rank 6."""
    F = cx.field
    zero = mat_mul(cx.projection, cx.delta1_hat, F)
    return (
        not any(c for row in zero for c in row)
        and rank(cx.projection, F) == 3
        and rank(cx.delta1_hat, F) == 6
    )


# -- the matrix M -------------------------------------------------------------------

def build_M(alpha, m, phis, field: Field = QQ) -> PolyMatrix:
    """Image of the triple-point syzygies in coker(lifted delta1) = S^3.

    Rows are [H1,Y1], [H2,Y1], [H3,Y2]; columns are the two syzygies of each
    J(Yi) in order, so that

        M = [ A1  B1  -C1  -D1    0      0   ]
            [ A2  B2   0    0   a*E1   a*F1  ]
            [ 0   0    C2   D2  -E2    -F2   ]
    """
    a, m = _check_moduli(alpha, m, field)
    ideals = triple_point_ideals(a, m, field)
    phis = tuple(phis)
    if len(phis) != 3:
        raise HilbertBurchError("need one Hilbert-Burch matrix per triple point")
    for i, (hb, gens) in enumerate(zip(phis, ideals)):
        if tuple(hb.generators) != tuple(gens):
            raise HilbertBurchError(f"Hilbert-Burch matrix {i + 1} does not belong to J(Y{i + 1})")
    cx = x3_chain_complex(a, field)
    proto = ideals[0][0]
    zero = proto.zero_like()
    # 9 x 6 block-diagonal syzygy matrix, rows in HY_PAIRS order
    syz = [[zero] * 6 for _ in range(9)]
    for y, hb in enumerate(phis):
        for i in range(3):
            for j in range(2):
                syz[3 * y + i][2 * y + j] = hb.phi[i, j]
    entries = []
    for prow in cx.projection:
        row = []
        for col in range(6):
            total = zero
            for k, c in enumerate(prow):
                if c and syz[k][col]:
                    total = total + syz[k][col] * c
            row.append(total)
        entries.append(row)
    col_deg = tuple(D for hb in phis for D in hb.column_degrees)
    row_deg = (m[0], m[1], m[2])
    return PolyMatrix(entries, row_deg, col_deg)


@dataclass(frozen=True)
class FreenessWitness:
    """Location and value of a unit 3x3 minor, or the census of all minors."""

    columns: tuple | None = None
    value: object = None
    minor_degrees: tuple = ()

    def to_json(self, field: Field):
        if self.columns is not None:
            return {
                "reason": "unit_minor",
                "columns": list(self.columns),
                "value": field.to_json(self.value),
            }
        return {
            "reason": "no_unit_minor",
            "minor_degrees": [[list(c), d] for c, d in self.minor_degrees],
        }


def maximal_minors(M: PolyMatrix):
    """``(columns, determinant)`` for the 20 maximal minors of the 3x6 matrix."""
    rows = tuple(range(M.nrows))
    return [(cols, det([[M[i, j] for j in cols] for i in rows])) for cols in combinations(range(M.ncols), M.nrows)]


def unit_minor_witness(M: PolyMatrix) -> FreenessWitness:
    census = []
    for cols, value in maximal_minors(M):
        if value and value.is_constant():
            return FreenessWitness(cols, value.constant_value())
        census.append((cols, value.degree if value else None))
    return FreenessWitness(minor_degrees=tuple(census))


def exponents_from_resolution(m, phis):
    """Exponents read from 0 -> D -> (+) J(H) -> (+) J(Y) -> 0.

    When D is free this sequence is exact, so the Hilbert series numerator of
    D is sum_H t^m(H) - sum_Y (sum_i t^deg f_i - sum_j t^r_j).  Returns the
    exponent multiset, or None if the numerator is not a sum of monomials.
    """
    numer: dict = {}
    for k in m:
        numer[k] = numer.get(k, 0) + 1
    for hb in phis:
        for f in hb.generators:
            numer[f.degree] = numer.get(f.degree, 0) - 1
        for r in hb.column_degrees:
            numer[r] = numer.get(r, 0) + 1
    if any(c < 0 for c in numer.values()):
        return None
    return tuple(sorted(d for d, c in numer.items() for _ in range(c)))


def decide_free_homological(alpha, m, field: Field = QQ) -> FreenessVerdict:
    """Free iff some maximal minor of M is a nonzero constant."""
    a, m = _check_moduli(alpha, m, field)
    phis = tuple(hilbert_burch(*gens) for gens in triple_point_ideals(a, m, field))
    M = build_M(a, m, phis, field)
    witness = unit_minor_witness(M)
    data = witness.to_json(field)
    if witness.columns is None:
        return FreenessVerdict(Status.NOT_FREE, "homological", witness=data)
    blocks = sorted(c // 2 for c in witness.columns)
    if blocks != [0, 1, 2]:
        # two syzygies of one ideal give det = H * (constant * generator)
        raise AssertionError(f"unit minor {witness.columns} reuses a Hilbert-Burch block")
    exps = exponents_from_resolution(m, phis)
    data["hilbert_burch_scalars"] = [[field.to_json(c) for c in hb.minor_scalars] for hb in phis]
    return FreenessVerdict(Status.FREE, "homological", exponents=exps or (), witness=data)


# -- the closed-form classification ---------------------------------------------------

def free_shape(m):
    """``n`` if m = [n, n, n, 1, 1, 1], else None."""
    m = tuple(m)
    if len(m) == 6 and m[0] == m[1] == m[2] and m[3:] == (1, 1, 1):
        return m[0]
    return None


def classify_predicted(alpha, m, field: Field = QQ) -> Status:
    """Free iff m = [n,n,n,1,1,1], n > 1, and n-1 is not a multiple of ord(alpha)."""
    a, m = _check_moduli(alpha, m, field)
    n = free_shape(m)
    if n is None or n <= 1:
        return Status.NOT_FREE
    order = field.order(a)
    if order is not None and (n - 1) % order == 0:
        return Status.NOT_FREE
    return Status.FREE


def predicted_exponents(m):
    n = free_shape(m)
    return (n + 1,) * 3 if n else None


def witness_minor_columns():
    """Columns (A, C, E) of the designated minor M' = [[A1,-C1,0],[A2,0,a*E1],[0,C2,-E2]]."""
    return (0, 2, 4)


def designated_minor(M: PolyMatrix) -> Polynomial:
    cols = witness_minor_columns()
    return det([[M[i, j] for j in cols] for i in range(3)])


def closed_form_minor(alpha, n: int, field: Field = QQ):
    """The closed form -alpha * (-1)^(n+1) * (alpha^(n-1) - 1)."""
    F = field
    a = F(alpha)
    sign = F.one if (n + 1) % 2 == 0 else F.neg(F.one)
    return F.mul(F.neg(a), F.mul(sign, F.sub(F.pow(a, n - 1), F.one)))


def minor_from_entries(alpha, n: int, field: Field = QQ):
    """-a*A1*E1*C2 - A2*C1*E2 evaluated at A1 = C1 = E1 = 1, A2 = -a^n,
    C2 = E2 = (-1)^(n+1)."""
    F = field
    a = F(alpha)
    sign = F.one if (n + 1) % 2 == 0 else F.neg(F.one)
    A2 = F.neg(F.pow(a, n))
    return F.sub(F.neg(F.mul(a, sign)), F.mul(A2, sign))


# -- explicit basis for alpha = -1 --------------------------------------------------------

def canonical_basis(k: int, field: Field = QQ):
    """Basis of D(X3(-1), [2k,2k,2k,1,1,1]) with all three degrees 2k+1."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    x, y, z = (Polynomial.variable(field, XYZ, i) for i in range(3))
    n = 2 * k
    theta1 = Derivation((x ** (n + 1), y ** (n + 1), z ** (n + 1)))
    theta2 = Derivation(((y + z) * x ** n, -((y + z) * y ** n), -((y + z) * z ** n)))
    theta3 = Derivation((x ** n * z, -((x + y + z) * y ** n), x * z ** n))
    return theta1, theta2, theta3
