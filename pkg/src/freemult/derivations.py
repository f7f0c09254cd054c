"""Graded pieces of D(A, m), minimal generators and Saito certificates.

A derivation ``theta = sum_j P_j d_j`` is stored as its coefficient tuple
``(P_1, ..., P_l)``; its degree is the common degree of the ``P_j``.
``theta`` lies in D(A, m) when ``alpha_i ** m_i`` divides
``theta(alpha_i) = sum_j a_ij P_j`` for every form ``alpha_i``.

Degree-d pieces are found by linear algebra.  For each form we change
coordinates so that ``alpha_i`` becomes the first variable; divisibility by
``alpha_i ** m_i`` then says that every monomial with first exponent below
``m_i`` has coefficient zero.  Forms that already are coordinate variables
only restrict which monomials may appear, which keeps the systems small.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum
from functools import lru_cache

from .arrangement import MultiArrangement
from .field import Field
from .linalg import EchelonBasis, det, sparse_kernel
from .poly import Polynomial, monomial_index, monomials, num_monomials


class MembershipError(ValueError):
    """A candidate derivation is not in D(A, m)."""


class Status(str, Enum):
    FREE = "Free"
    NOT_FREE = "NotFree"
    UNKNOWN = "UnknownUpToBound"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Derivation:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("empty derivation")

    @property
    def field(self) -> Field:
        return self.coeffs[0].field

    @property
    def vars(self) -> tuple:
        return self.coeffs[0].vars

    @property
    def degree(self) -> int:
        return max(P.degree for P in self.coeffs)

    def is_zero(self) -> bool:
        return all(P.is_zero() for P in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = {P.degree for P in self.coeffs if P}
        return len(degs) <= 1 and all(P.is_homogeneous() for P in self.coeffs)

    def apply(self, form) -> Polynomial:
        """theta(alpha) for a linear form given as a coefficient vector."""
        total = self.coeffs[0].zero_like()
        for a, P in zip(form, self.coeffs):
            if a:
                total = total + P * a
        return total

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(p + q for p, q in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(tuple(p - q for p, q in zip(self.coeffs, other.coeffs)))

    def __mul__(self, f) -> "Derivation":
        return Derivation(tuple(P * f for P in self.coeffs))

    __rmul__ = __mul__

    def vector(self, d: int | None = None) -> dict:
        """Sparse coefficient vector in degree ``d``; column ``j*N + k`` holds
        the coefficient of monomial ``k`` in ``P_j``."""
        d = self.degree if d is None else d
        n = len(self.coeffs)
        idx = monomial_index(n, d)
        N = len(idx)
        vec = {}
        for j, P in enumerate(self.coeffs):
            for mon, c in P.terms.items():
                vec[j * N + idx[mon]] = c
        return vec

    @classmethod
    def from_vector(cls, field, variables, d: int, vec: dict) -> "Derivation":
        n = len(variables)
        mons = monomials(n, d)
        N = len(mons)
        terms = [dict() for _ in range(n)]
        for col, c in vec.items():
            terms[col // N][mons[col % N]] = c
        return cls(tuple(Polynomial._raw(field, tuple(variables), t) for t in terms))

    def __str__(self):
        parts = []
        for name, P in zip(self.vars, self.coeffs):
            if P:
                parts.append(f"({P})*d{name}")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return [str(P) for P in self.coeffs]


def derivation_from_strings(strings, field: Field, variables) -> Derivation:
    from .poly import parse_polynomial

    return Derivation(tuple(parse_polynomial(s, field, variables) for s in strings))


# -- degree-wise computation ---------------------------------------------------

@lru_cache(maxsize=4096)
def _divisibility_functionals(field: Field, form: tuple, m: int, d: int) -> tuple:
    """Linear functionals on S_d whose common kernel is (alpha^m)_d.

    Returns a tuple of sparse dicts over the monomial index of degree ``d``.
    """
    ell = len(form)
    F = field
    p = next(i for i, c in enumerate(form) if c)
    others = [k for k in range(ell) if k != p]
    uvars = tuple(f"u{i}" for i in range(ell))
    # u_0 = alpha(x); u_{1..} = the other variables in order.  Then
    # x_p = (u_0 - sum_{k != p} a_k x_k) / a_p.
    inv = F.inv(form[p])
    xp = [F.zero] * ell
    xp[0] = inv
    for pos, k in enumerate(others, start=1):
        xp[pos] = F.neg(F.mul(form[k], inv))
    xp_form = Polynomial.linear_form(F, uvars, xp)
    powers = [Polynomial.constant(F, uvars, 1)]
    for _ in range(d):
        powers.append(powers[-1] * xp_form)
    table: dict = {}
    for k, mon in enumerate(monomials(ell, d)):
        shift = [0] * ell
        for pos, var in enumerate(others, start=1):
            shift[pos] = mon[var]
        for umon, c in powers[mon[p]].terms.items():
            if umon[0] >= m:
                continue
            full = tuple(a + b for a, b in zip(umon, shift))
            table.setdefault(full, {})[k] = c
    return tuple(table[key] for key in sorted(table))


def _axis_lower_bounds(A: MultiArrangement):
    lower = [0] * A.ell
    axis = set()
    for i, f in enumerate(A.forms):
        nz = [k for k, c in enumerate(f) if c]
        if len(nz) == 1:
            lower[nz[0]] = A.mult[i]
            axis.add(i)
    return lower, axis


@lru_cache(maxsize=2048)
def component_vectors(A: MultiArrangement, d: int) -> tuple:
    """Reduced-echelon basis of D(A, m)_d as sparse coefficient vectors."""
    if d < 0:
        return ()
    F = A.field
    ell = A.ell
    mons = monomials(ell, d)
    N = len(mons)
    lower, axis = _axis_lower_bounds(A)
    allowed = [j * N + k for j in range(ell) for k, mon in enumerate(mons) if mon[j] >= lower[j]]
    pos = {col: i for i, col in enumerate(allowed)}
    rows = []
    for i, form in enumerate(A.forms):
        if i in axis:
            continue
        for functional in _divisibility_functionals(F, form, A.mult[i], d):
            row: dict = {}
            for j, a in enumerate(form):
                if not a:
                    continue
                base = j * N
                for k, val in functional.items():
                    c = pos.get(base + k)
                    if c is None:
                        continue
                    v = F.add(row.get(c, F.zero), F.mul(a, val))
                    if v:
                        row[c] = v
                    else:
                        row.pop(c, None)
            if row:
                rows.append(row)
    kernel = sparse_kernel(rows, len(allowed), F)
    return tuple({allowed[c]: v for c, v in vec.items()} for vec in kernel)


def degree_component(A: MultiArrangement, d: int) -> list:
    """Echelon basis of the degree-``d`` piece D(A, m)_d."""
    return [Derivation.from_vector(A.field, A.vars, d, v) for v in component_vectors(A, d)]


def hilbert_function(A: MultiArrangement, d_max: int) -> list:
    """``[dim D(A, m)_d for d in 0..d_max]``."""
    return [len(component_vectors(A, d)) for d in range(d_max + 1)]


def free_hilbert_function(ell: int, exponents, d_max: int) -> list:
    """Hilbert function of a free module with generators in degrees ``exponents``."""
    return [sum(num_monomials(ell, d - e) for e in exponents) for d in range(d_max + 1)]


def _multiply_vector(vec: dict, ell: int, d_from: int, mon: tuple) -> dict:
    src = monomials(ell, d_from)
    N_src = len(src)
    d_to = d_from + sum(mon)
    idx = monomial_index(ell, d_to)
    N = len(idx)
    out = {}
    for col, c in vec.items():
        j, k = divmod(col, N_src)
        shifted = tuple(a + b for a, b in zip(src[k], mon))
        out[j * N + idx[shifted]] = c
    return out


def _generator_scan(A: MultiArrangement, d_max: int):
    """Yield ``(d, new generator vectors)`` degree by degree.

    New generators in degree d complete the image of S_1 * D_{d-1} (which is
    the span of monomial multiples of the earlier generators) to a basis of
    D_d, taking echelon basis vectors of D_d in order.
    """
    ell = A.ell
    gens: list = []
    for d in range(d_max + 1):
        comp = component_vectors(A, d)
        if not comp:
            continue
        image = EchelonBasis(A.field)
        for e, g in gens:
            for mon in monomials(ell, d - e):
                image.add(_multiply_vector(g, ell, e, mon))
        new = [v for v in comp if image.add(v)]
        gens.extend((d, v) for v in new)
        yield d, new


def minimal_generators(A: MultiArrangement, d_max: int) -> list:
    """Minimal homogeneous generators of D(A, m) in degrees ``<= d_max``."""
    out = []
    for d, new in _generator_scan(A, d_max):
        out.extend(Derivation.from_vector(A.field, A.vars, d, v) for v in new)
    return out


# -- Saito's criterion ------------------------------------------------------------

def is_member(A: MultiArrangement, theta: Derivation) -> bool:
    """Check alpha_i ** m_i | theta(alpha_i) by polynomial division."""
    for i, form in enumerate(A.forms):
        image = theta.apply(form)
        if image and not (A.linear_form(i) ** A.mult[i]).divides(image):
            return False
    return True


@dataclass(frozen=True)
class SaitoResult:
    ok: bool
    k: object = None
    det: Polynomial | None = None

    def __bool__(self):
        return self.ok


def saito_check(A: MultiArrangement, candidates, validate: bool = True) -> SaitoResult:
    """Test whether ``candidates`` form a basis of D(A, m).

    ``det(theta_ij)`` must equal ``k * Q(A, m)`` with ``k`` a nonzero scalar.
    Candidates outside D(A, m) raise :class:`MembershipError`.
    """
    candidates = list(candidates)
    if len(candidates) != A.ell:
        raise ValueError(f"Saito's criterion needs exactly {A.ell} derivations, got {len(candidates)}")
    if validate:
        for i, theta in enumerate(candidates):
            if not is_member(A, theta):
                raise MembershipError(f"candidate {i} ({theta}) is not in D(A, m)")
    D = det([list(theta.coeffs) for theta in candidates])
    if D.is_zero():
        return SaitoResult(False, None, D)
    Q = A.defining_polynomial()
    if D.degree != Q.degree:
        return SaitoResult(False, None, D)
    mon, qc = Q.leading_term()
    k = A.field.div(D.coefficient(mon), qc)
    if not k or D != Q * k:
        return SaitoResult(False, None, D)
    return SaitoResult(True, k, D)


# -- verdicts ---------------------------------------------------------------------

@dataclass
class FreenessVerdict:
    status: Status
    method: str
    basis: tuple = ()
    exponents: tuple = ()
    saito_k: object = None
    witness: dict = dc_field(default_factory=dict)

    @property
    def is_free(self) -> bool:
        return self.status is Status.FREE

    def to_json(self, field: Field | None = None) -> dict:
        out = {"status": str(self.status), "method": self.method}
        if self.status is Status.FREE:
            out["exponents"] = list(self.exponents)
            if self.basis:
                out["basis"] = [theta.to_json() for theta in self.basis]
            if self.saito_k is not None:
                out["saito_k"] = field.to_json(self.saito_k) if field else str(self.saito_k)
        out["witness"] = self.witness
        return out


def decide_free(A: MultiArrangement, d_max: int | None = None) -> FreenessVerdict:
    """Brute-force freeness decision for any rank.

    A free D(A, m) of rank l has exactly l minimal generators and they form a
    basis, so the scan stops as soon as l generators exist.  Exponents of a
    free module are non-negative and sum to |m|, so a bound ``d_max >= |m|``
    always yields a definite verdict.
    """
    ell = A.ell
    bound = A.size if d_max is None else d_max
    gens: list = []
    for d, new in _generator_scan(A, bound):
        gens.extend(Derivation.from_vector(A.field, A.vars, d, v) for v in new)
        if len(gens) < ell:
            continue
        degrees = [g.degree for g in gens]
        if len(gens) == ell:
            res = saito_check(A, gens, validate=False)
            if res.ok:
                return FreenessVerdict(
                    Status.FREE,
                    "bruteforce",
                    tuple(gens),
                    tuple(degrees),
                    res.k,
                    {"generator_degrees": degrees, "degree_bound": bound},
                )
            return FreenessVerdict(
                Status.NOT_FREE,
                "bruteforce",
                witness={
                    "reason": "saito_failure",
                    "generator_degrees": degrees,
                    "determinant": str(res.det),
                },
            )
        return FreenessVerdict(
            Status.NOT_FREE,
            "bruteforce",
            witness={"reason": "too_many_generators", "generator_degrees": degrees},
        )
    degrees = [g.degree for g in gens]
    if bound >= A.size:
        return FreenessVerdict(
            Status.NOT_FREE,
            "bruteforce",
            witness={"reason": "missing_generators", "generator_degrees": degrees, "degree_bound": bound},
        )
    return FreenessVerdict(
        Status.UNKNOWN,
        "bruteforce",
        witness={"generator_degrees": degrees, "degree_bound": bound},
    )


def decide_free_bruteforce(A: MultiArrangement, d_max: int | None = None) -> FreenessVerdict:
    """Brute-force freeness oracle for rank-3 multi-arrangements."""
    if A.ell != 3 or A.rank != 3:
        raise ValueError(f"the brute-force oracle expects a rank-3 arrangement in 3 variables (got ell={A.ell}, rank={A.rank})")
    return decide_free(A, d_max)


def exponents_from_hilbert(A: MultiArrangement, d_max: int):
    """Guess exponents by peeling generators off the Hilbert function."""
    hf = hilbert_function(A, d_max)
    ell = A.ell
    exps: list = []
    for d in range(d_max + 1):
        expected = free_hilbert_function(ell, exps, d_max)[d]
        extra = hf[d] - expected
        if extra < 0:
            return None
        exps.extend([d] * extra)
    return tuple(exps)


__all__ = [
    "Derivation",
    "FreenessVerdict",
    "MembershipError",
    "SaitoResult",
    "Status",
    "component_vectors",
    "decide_free",
    "decide_free_bruteforce",
    "degree_component",
    "hilbert_function",
    "free_hilbert_function",
    "is_member",
    "minimal_generators",
    "saito_check",
]
