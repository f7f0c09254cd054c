"""Central multi-arrangements, intersection lattices and Ziegler restriction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

from .field import Field, FieldError, QQ
from .linalg import EchelonBasis
from .poly import DEFAULT_VARS, MAX_VARS, Polynomial

X3_TRIPLE_POINTS = ((0, 1, 3), (0, 2, 4), (1, 2, 5))


class ArrangementError(ValueError):
    pass


class DegenerateModuliError(ArrangementError):
    """The X3 moduli parameter is 0 or 1."""


def normalize_form(form, field: Field) -> tuple:
    """Scale a nonzero coefficient vector so its first nonzero entry is 1."""
    lead = next((c for c in form if c), None)
    if lead is None:
        raise ArrangementError("zero linear form")
    inv = field.inv(lead)
    return tuple(field.mul(c, inv) for c in form)


@dataclass(frozen=True)
class MultiArrangement:
    """Linear forms (coefficient vectors) with positive multiplicities."""

    field: Field
    forms: tuple
    mult: tuple
    vars: tuple = ()

    def __post_init__(self):
        F = self.field
        forms = tuple(tuple(F(c) for c in f) for f in self.forms)
        if not forms:
            raise ArrangementError("an arrangement needs at least one hyperplane")
        ell = len(forms[0])
        if any(len(f) != ell for f in forms):
            raise ArrangementError("forms have different lengths")
        if not 1 <= ell <= MAX_VARS:
            raise ArrangementError(f"ambient dimension must be between 1 and {MAX_VARS}, got {ell}")
        variables = tuple(self.vars) or DEFAULT_VARS[:ell]
        if len(variables) != ell:
            raise ArrangementError(f"{len(variables)} variable names for dimension {ell}")
        mult = tuple(self.mult)
        if len(mult) != len(forms):
            raise ArrangementError("one multiplicity per form required")
        if any(not isinstance(m, int) or isinstance(m, bool) or m < 1 for m in mult):
            raise ArrangementError(f"multiplicities must be positive integers, got {mult}")
        seen = {}
        for i, f in enumerate(forms):
            key = normalize_form(f, F)
            if key in seen:
                raise ArrangementError(f"forms {seen[key]} and {i} define the same hyperplane")
            seen[key] = i
        object.__setattr__(self, "forms", forms)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "vars", variables)

    # -- derived data -----------------------------------------------------
    @property
    def ell(self) -> int:
        return len(self.forms[0])

    @property
    def size(self) -> int:
        """|m|, the total multiplicity."""
        return sum(self.mult)

    def __len__(self):
        return len(self.forms)

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for m in self.mult)

    @cached_property
    def rank(self) -> int:
        eb = EchelonBasis(self.field)
        for f in self.forms:
            eb.add({i: c for i, c in enumerate(f) if c})
        return eb.rank

    def linear_form(self, i: int) -> Polynomial:
        return Polynomial.linear_form(self.field, self.vars, self.forms[i])

    def defining_polynomial(self) -> Polynomial:
        """Q(A, m) = product of alpha_H ** m(H)."""
        q = Polynomial.constant(self.field, self.vars, 1)
        for i, m in enumerate(self.mult):
            q = q * self.linear_form(i) ** m
        return q

    def with_mult(self, mult) -> "MultiArrangement":
        return MultiArrangement(self.field, self.forms, tuple(mult), self.vars)

    def simple(self) -> "MultiArrangement":
        return self.with_mult((1,) * len(self.forms))

    def transform(self, T) -> "MultiArrangement":
        """Apply a change of coordinates: each form row vector ``a`` becomes ``a T``."""
        F = self.field
        n = self.ell
        forms = [
            tuple(_dot(F, (f[k] for k in range(n)), (T[k][j] for k in range(n))) for j in range(n))
            for f in self.forms
        ]
        return MultiArrangement(F, forms, self.mult, self.vars)

    def __str__(self):
        parts = []
        for i, m in enumerate(self.mult):
            text = str(self.linear_form(i))
            if " " in text:
                text = f"({text})"
            parts.append(text if m == 1 else f"{text}^{m}")
        return "*".join(parts)

    # -- JSON -------------------------------------------------------------
    def to_dict(self) -> dict:
        F = self.field
        return {
            "field": str(F),
            "vars": list(self.vars),
            "forms": [[F.to_json(c) for c in f] for f in self.forms],
            "mult": list(self.mult),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "MultiArrangement":
        try:
            F = Field.parse(data.get("field", "Q"))
            forms = [[_json_scalar(c) for c in f] for f in data["forms"]]
            mult = data.get("mult") or [1] * len(forms)
            return cls(F, forms, tuple(int(m) for m in mult), tuple(data.get("vars") or ()))
        except (KeyError, TypeError, FieldError) as exc:
            raise ArrangementError(f"malformed arrangement: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "MultiArrangement":
        return cls.from_dict(json.loads(text))


def _json_scalar(c):
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        raise ArrangementError("floating point coefficients are not accepted")
    return c


def _dot(F, a, b):
    total = F.zero
    for u, v in zip(a, b):
        total = F.add(total, F.mul(u, v))
    return total


# -- constructors -------------------------------------------------------------

def x3(alpha, field: Field = QQ, mult=None) -> MultiArrangement:
    """The X3 moduli arrangement x, y, z, x - alpha*y, x + z, y + z."""
    a = field(alpha)
    if not a:
        raise DegenerateModuliError("alpha = 0 makes H4 coincide with H1")
    if a == field.one:
        raise DegenerateModuliError("alpha = 1 gives the braid arrangement lattice")
    forms = [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, field.neg(a), 0),
        (1, 0, 1),
        (0, 1, 1),
    ]
    return MultiArrangement(field, forms, tuple(mult) if mult else (1,) * 6, ("x", "y", "z"))


def boolean(ell: int = 3, field: Field = QQ, mult=None) -> MultiArrangement:
    forms = [tuple(1 if i == j else 0 for j in range(ell)) for i in range(ell)]
    return MultiArrangement(field, forms, tuple(mult) if mult else (1,) * ell)


# -- lattice ------------------------------------------------------------------

@dataclass
class IntersectionLattice:
    """Flats keyed by the frozenset of hyperplane indices containing them."""

    arrangement: MultiArrangement
    by_rank: list = dc_field(default_factory=list)
    mobius: dict = dc_field(default_factory=dict)

    @property
    def flats(self):
        return [X for level in self.by_rank for X in level]

    def rank_of(self, flat) -> int:
        for r, level in enumerate(self.by_rank):
            if flat in level:
                return r
        raise KeyError(flat)

    def census(self, r: int) -> dict:
        """``{number of hyperplanes through the flat: count}`` for rank-r flats."""
        out: dict = {}
        for X in self.by_rank[r] if r < len(self.by_rank) else []:
            out[len(X)] = out.get(len(X), 0) + 1
        return dict(sorted(out.items()))

    def multiple_points(self, size: int = 3):
        """Rank-2 flats on exactly ``size`` hyperplanes, as sorted tuples."""
        return sorted(tuple(sorted(X)) for X in self.by_rank[2] if len(X) == size)

    def flats_above(self, i: int, r: int):
        """Rank-r flats contained in hyperplane ``i``."""
        return [X for X in self.by_rank[r] if i in X]

    def ideal_generators(self, flat) -> list:
        """The forms alpha_H ** m(H) for H through ``flat`` (the ideal J(flat))."""
        A = self.arrangement
        return [A.linear_form(i) ** A.mult[i] for i in sorted(flat)]


def _closure(A: MultiArrangement, indices) -> frozenset:
    eb = EchelonBasis(A.field)
    for i in indices:
        eb.add({k: c for k, c in enumerate(A.forms[i]) if c})
    return frozenset(
        j for j, f in enumerate(A.forms) if eb.contains({k: c for k, c in enumerate(f) if c})
    )


def lattice(A: MultiArrangement) -> IntersectionLattice:
    """Intersection lattice with Moebius values mu(0_hat, X)."""
    bottom = frozenset()
    levels = [[bottom]]
    rank1 = [frozenset([i]) for i in range(len(A))]
    levels.append(rank1)
    while True:
        nxt = set()
        for X in levels[-1]:
            for i in range(len(A)):
                if i not in X:
                    nxt.add(_closure(A, X | {i}))
        if not nxt:
            break
        levels.append(sorted(nxt, key=lambda s: sorted(s)))
    L = IntersectionLattice(A, levels)
    mu = {bottom: 1}
    for r in range(1, len(levels)):
        for X in levels[r]:
            mu[X] = -sum(mu[Y] for rr in range(r) for Y in levels[rr] if Y <= X)
    L.mobius = mu
    return L


@dataclass(frozen=True)
class CharacteristicPolynomial:
    """chi(A, t) with integer coefficients, highest degree first."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        v = 0
        for c in self.coeffs:
            v = v * t + c
        return v

    def polynomial(self) -> Polynomial:
        n = self.degree
        return Polynomial(QQ, ("t",), {(n - k,): c for k, c in enumerate(self.coeffs)})

    def __str__(self):
        return str(self.polynomial())

    def integer_roots(self):
        """Split off integer roots: returns ``(roots, cofactor coefficients)``."""
        coeffs = list(self.coeffs)
        roots = []
        while len(coeffs) > 1:
            const = coeffs[-1]
            if const == 0:
                candidates = [0]
            else:
                c = abs(const)
                divs = [d for d in range(1, c + 1) if c % d == 0]
                candidates = sorted(divs + [-d for d in divs], key=lambda d: (abs(d), d))
            for r in candidates:
                q, rem = _synthetic_division(coeffs, r)
                if rem == 0:
                    roots.append(r)
                    coeffs = q
                    break
            else:
                break
        return sorted(roots), tuple(coeffs)

    def factorization(self):
        """Sorted integer roots if chi splits over Z, else None."""
        roots, rest = self.integer_roots()
        return roots if len(rest) == 1 else None


def _synthetic_division(coeffs, r):
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(out[-1] * r + c)
    return out[:-1], out[-1]


def char_poly(A: MultiArrangement, L: IntersectionLattice | None = None) -> CharacteristicPolynomial:
    """chi(A, t) = sum over flats of mu(X) t^(dim X)."""
    L = L or lattice(A)
    ell = A.ell
    coeffs = [0] * (ell + 1)
    for r, level in enumerate(L.by_rank):
        for X in level:
            # rank r contributes to t^(ell - r)
            coeffs[r] += L.mobius[X]
    return CharacteristicPolynomial(tuple(coeffs))


# -- restriction --------------------------------------------------------------

def restriction_coordinates(form, field: Field):
    """Pivot index of ``form`` and the linear map restricting forms to ker(form).

    The pivot is the first nonzero coordinate; it is eliminated via
    ``x_p = -sum_{k != p} (a_k / a_p) x_k`` and the remaining variables keep
    their declared order.
    """
    F = field
    p = next(i for i, c in enumerate(form) if c)
    keep = [k for k in range(len(form)) if k != p]
    ratio = [F.div(form[k], form[p]) for k in range(len(form))]

    def restrict(g):
        return tuple(F.sub(g[k], F.mul(g[p], ratio[k])) for k in keep)

    return p, keep, restrict


def ziegler_restriction(A: MultiArrangement, h: int) -> MultiArrangement:
    """Ziegler multi-restriction of a simple arrangement onto hyperplane ``h``."""
    if not 0 <= h < len(A):
        raise ArrangementError(f"no hyperplane with index {h}")
    if not A.is_simple:
        raise ArrangementError("Ziegler restriction needs a simple arrangement")
    if A.ell < 2:
        raise ArrangementError("cannot restrict a one-dimensional arrangement")
    F = A.field
    p, keep, restrict = restriction_coordinates(A.forms[h], F)
    groups: dict = {}
    order = []
    for j, f in enumerate(A.forms):
        if j == h:
            continue
        key = normalize_form(restrict(f), F)
        if key not in groups:
            groups[key] = 0
            order.append(key)
        groups[key] += 1
    return MultiArrangement(F, order, tuple(groups[k] for k in order), tuple(A.vars[k] for k in keep))


def restriction_fibers(L: IntersectionLattice, h: int):
    """Hyperplanes grouped by their trace on ``h``, read off the lattice alone."""
    return sorted(tuple(sorted(X - {h})) for X in L.flats_above(h, 2))
