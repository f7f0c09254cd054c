"""Exponents of points in P^1 and rank-3 freeness through restriction.

A rank-3 simple arrangement is free iff chi(A, t) = (t - 1)(t - d1)(t - d2)
and the Ziegler restriction onto some hyperplane has exponents {d1, d2}.
Rank-2 multi-arrangements are always free, so their exponents are computed
directly by the derivation engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arrangement import (
    ArrangementError,
    MultiArrangement,
    char_poly,
    lattice,
    ziegler_restriction,
)
from .derivations import decide_free
from .field import Field, QQ
from .linalg import EchelonBasis


def p1_exponents(P: MultiArrangement) -> tuple:
    """Exponents ``(e1, e2)`` of a multi-arrangement in two variables."""
    if P.ell != 2:
        raise ArrangementError(f"expected forms in two variables, got {P.ell}")
    verdict = decide_free(P)
    if not verdict.is_free:
        # cannot happen for a rank-2 module; surface it loudly if it does
        raise RuntimeError(f"rank-2 derivation module reported {verdict.status}")
    return tuple(sorted(verdict.exponents))


def points_on_line(forms, mult, field: Field = QQ, vars=("x", "z")) -> MultiArrangement:
    return MultiArrangement(field, tuple(forms), tuple(mult), tuple(vars))


def essentialize(A: MultiArrangement) -> MultiArrangement:
    """Rewrite A in rank(A) variables by expressing forms in a basis of their span.

    The basis is the reduced echelon form of the forms, so the coordinates of
    a form are its entries in the pivot columns.
    """
    eb = EchelonBasis(A.field)
    for f in A.forms:
        eb.add({k: c for k, c in enumerate(f) if c})
    piv = eb.pivots()
    if len(piv) == A.ell:
        return A
    forms = [tuple(f[p] for p in piv) for f in A.forms]
    return MultiArrangement(A.field, forms, A.mult, tuple(A.vars[p] for p in piv))


def localization(A: MultiArrangement, flat) -> MultiArrangement:
    """A_X: the hyperplanes through ``flat`` (a set of indices), made essential."""
    idx = sorted(flat)
    sub = MultiArrangement(A.field, [A.forms[i] for i in idx], [A.mult[i] for i in idx], A.vars)
    return essentialize(sub)


@dataclass
class YoshinagaReport:
    free: bool
    chi: tuple
    chi_roots: list | None
    restriction: MultiArrangement | None = None
    restriction_exponents: tuple = ()
    reason: str = ""
    extra: dict = dc_field(default_factory=dict)

    def to_json(self):
        out = {
            "free": self.free,
            "chi": list(self.chi),
            "chi_roots": self.chi_roots,
            "restriction_exponents": list(self.restriction_exponents),
            "reason": self.reason,
        }
        if self.restriction is not None:
            out["restriction"] = self.restriction.to_dict()
        return out


def yoshinaga3_report(A: MultiArrangement, h: int) -> YoshinagaReport:
    if not A.is_simple:
        raise ArrangementError("the rank-3 test needs a simple arrangement")
    if A.ell != 3 or A.rank != 3:
        raise ArrangementError(f"the rank-3 test needs an essential arrangement in 3 variables (ell={A.ell}, rank={A.rank})")
    chi = char_poly(A, lattice(A))
    roots = chi.factorization()
    if roots is None or 1 not in roots:
        return YoshinagaReport(False, chi.coeffs, roots, reason="chi does not split as (t-1)(t-d1)(t-d2) over Z")
    rest = list(roots)
    rest.remove(1)
    R = ziegler_restriction(A, h)
    exps = p1_exponents(R)
    ok = sorted(exps) == sorted(rest)
    reason = "" if ok else f"restriction exponents {exps} differ from chi roots {tuple(rest)}"
    return YoshinagaReport(ok, chi.coeffs, roots, R, exps, reason)


def yoshinaga3_free(A: MultiArrangement, h: int) -> bool:
    return yoshinaga3_report(A, h).free


# -- grid plus a line ------------------------------------------------------------

@dataclass(frozen=True)
class GridLineSpec:
    """Lines x = a_i z, y = b_j z, the line A x + B y + C z and the line z."""

    a: tuple
    b: tuple
    line: tuple
    field: Field = QQ

    def __post_init__(self):
        F = self.field
        a = tuple(F(v) for v in self.a)
        b = tuple(F(v) for v in self.b)
        line = tuple(F(v) for v in self.line)
        if len(a) != len(b) or not a:
            raise ValueError("need n >= 1 values for both a and b")
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            raise ValueError("grid values must be distinct")
        if len(line) != 3 or not line[0] or not line[1]:
            raise ValueError("the line needs A != 0 and B != 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "line", line)

    @property
    def n(self) -> int:
        return len(self.a)


def grid_line_arrangement(G: GridLineSpec) -> MultiArrangement:
    """Forms in (x, y, z): the a-lines, the b-lines, the line, then z (last)."""
    F = G.field
    forms = [(F.one, F.zero, F.neg(a)) for a in G.a]
    forms += [(F.zero, F.one, F.neg(b)) for b in G.b]
    forms += [G.line, (F.zero, F.zero, F.one)]
    return MultiArrangement(F, forms, (1,) * len(forms))


def grid_points_on_line(G: GridLineSpec) -> list:
    """Index pairs (i, j) with (a_i, b_j, 1) on the line."""
    F = G.field
    A, B, C = G.line
    bpos = {b: j for j, b in enumerate(G.b)}
    out = []
    for i, a in enumerate(G.a):
        # A a + B y + C = 0 has the single solution y = -(A a + C) / B
        y = F.neg(F.div(F.add(F.mul(A, a), C), B))
        if y in bpos:
            out.append((i, bpos[y]))
    return out


def grid_line_free(G: GridLineSpec) -> bool:
    """Free iff the line passes through n grid points (a matching of a's and b's)."""
    return len(grid_points_on_line(G)) == G.n


def grid_line_chi(n: int, q: int) -> tuple:
    """Coefficients of (t - 1)(t^2 - (2n + 1) t + n^2 + 2n - q), highest first."""
    c1, c0 = -(2 * n + 1), n * n + 2 * n - q
    return (1, c1 - 1, c0 - c1, -c0)
