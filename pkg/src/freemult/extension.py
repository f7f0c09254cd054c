"""Rank-4 free extensions of (X3(alpha), [n, n, n, 1, 1, 1]).

For alpha of finite order m, n = m t and nonzero constants A_1..A_t with
distinct alpha-orbits, the forms

    x - alpha^j A_i w,  y - alpha^j A_i w,  z + alpha^j A_i w   (i <= t, j < m)
    x - alpha y,  x + z,  y + z,  w

define a free arrangement whose Ziegler restriction onto w = 0 is
(X3(alpha), [n, n, n, 1, 1, 1]).  Freeness is verified as in the rank-4
Yoshinaga criterion: the restriction is a free multiplicity and every
rank-3 localization along w = 0 is free.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .arrangement import (
    ArrangementError,
    MultiArrangement,
    lattice,
    normalize_form,
    restriction_coordinates,
    restriction_fibers,
    ziegler_restriction,
)
from .derivations import Status, decide_free
from .field import Field, QQ
from .linalg import LinearAlgebraError, inverse, rank
from .restriction import (
    GridLineSpec,
    grid_line_free,
    grid_points_on_line,
    localization,
    yoshinaga3_report,
)
from .homological import classify_predicted, decide_free_homological

XYZW = ("x", "y", "z", "w")


@dataclass(frozen=True)
class ExtensionSpec:
    alpha: object
    constants: tuple
    field: Field = QQ
    t: int | None = None

    def __post_init__(self):
        F = self.field
        a = F(self.alpha)
        if not a or a == F.one:
            raise ArrangementError("alpha must avoid 0 and 1")
        consts = tuple(F(c) for c in self.constants)
        if not consts:
            raise ArrangementError("need at least one constant")
        if self.t is not None and self.t != len(consts):
            raise ArrangementError(f"t = {self.t} but {len(consts)} constants were given")
        if any(not c for c in consts):
            raise ArrangementError("constants must be nonzero")
        if F.order(a) is None:
            raise ArrangementError(f"alpha = {F.format(a)} is not a root of unity in {F}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "constants", consts)
        object.__setattr__(self, "t", len(consts))
        values = self.grid_values()
        if len(set(values)) != len(values):
            raise ArrangementError("constants share an alpha-orbit")

    @property
    def order(self) -> int:
        return self.field.order(self.alpha)

    @property
    def n(self) -> int:
        return self.order * self.t

    def grid_values(self):
        """alpha^j A_i, grouped by constant."""
        F = self.field
        return [F.mul(F.pow(self.alpha, j), c) for c in self.constants for j in range(self.order)]


def build_extension(spec: ExtensionSpec) -> MultiArrangement:
    F = spec.field
    z, o = F.zero, F.one
    vals = spec.grid_values()
    forms = [(o, z, z, F.neg(v)) for v in vals]
    forms += [(z, o, z, F.neg(v)) for v in vals]
    forms += [(z, z, o, v) for v in vals]
    forms += [(o, F.neg(spec.alpha), z, z), (o, z, o, z), (z, o, o, z), (z, z, z, o)]
    return MultiArrangement(F, forms, (1,) * len(forms), XYZW)


def find_w(A4: MultiArrangement) -> int:
    F = A4.field
    target = normalize_form((F.zero,) * (A4.ell - 1) + (F.one,), F)
    for i, f in enumerate(A4.forms):
        if normalize_form(f, F) == target:
            return i
    raise ArrangementError("the arrangement does not contain w = 0")


# -- recognizing X3 inside a restriction ------------------------------------------

@dataclass(frozen=True)
class X3Recognition:
    """Labels H1..H6 (indices into the given arrangement) and the moduli value."""

    labels: tuple
    alpha: object
    mult: tuple


def _coords(F, target, basis):
    """Coefficients of ``target`` in the span of ``basis`` (two or three vectors), or None."""
    k = len(basis)
    # solve sum c_i basis_i = target via a square subsystem found by brute force
    rows = list(zip(*basis))  # len(target) rows, k columns
    for pick in combinations(range(len(target)), k):
        sub = [rows[p] for p in pick]
        try:
            inv = inverse(sub, F)
        except LinearAlgebraError:
            continue
        rhs = [target[p] for p in pick]
        c = [sum((F.mul(inv[i][j], rhs[j]) for j in range(k)), F.zero) for i in range(k)]
        ok = all(
            sum((F.mul(c[i], basis[i][r]) for i in range(k)), F.zero) == target[r]
            for r in range(len(target))
        )
        return c if ok else None
    return None


def recognize_x3(R: MultiArrangement) -> X3Recognition | None:
    """Match a six-line arrangement to the X3 moduli, or return None.

    H1, H2, H3 are the lines through two triple points, in index order.
    Rescaling them to x, y, z so that H5 ~ x + z and H6 ~ y + z puts H4 in
    the form x - alpha y.
    """
    if len(R) != 6 or R.ell != 3 or R.rank != 3:
        return None
    F = R.field
    L = lattice(R.simple())
    triples = L.multiple_points(3)
    if len(triples) != 3 or L.census(2) != {2: 6, 3: 3}:
        return None
    count = {i: sum(i in Y for Y in triples) for i in range(6)}
    hubs = sorted(i for i in range(6) if count[i] == 2)
    if len(hubs) != 3:
        return None
    h1, h2, h3 = hubs

    def third(a, b):
        for Y in triples:
            if a in Y and b in Y:
                return next(i for i in Y if i not in (a, b))
        return None

    h4, h5, h6 = third(h1, h2), third(h1, h3), third(h2, h3)
    if None in (h4, h5, h6):
        return None
    f = R.forms
    c = _coords(F, f[h4], [f[h1], f[h2]])
    d = _coords(F, f[h5], [f[h1], f[h3]])
    e = _coords(F, f[h6], [f[h2], f[h3]])
    if c is None or d is None or e is None:
        return None
    # x = lam1 f1, y = lam2 f2, z = f3 with lam1 = d1/d3, lam2 = e2/e3
    lam1 = F.div(d[0], d[1])
    lam2 = F.div(e[0], e[1])
    alpha = F.neg(F.div(F.mul(c[1], lam1), F.mul(c[0], lam2)))
    labels = (h1, h2, h3, h4, h5, h6)
    return X3Recognition(labels, alpha, tuple(R.mult[i] for i in labels))


# -- local freeness along H0 ------------------------------------------------------

def grid_spec_for_flat(A4: MultiArrangement, flat, h0: int) -> GridLineSpec | None:
    """Read a rank-3 localization through H0 as a grid plus a line, if it is one.

    The hyperplanes other than H0 fall into fibers by their trace on H0.  With
    two fibers of equal size k and one singleton, writing each form as
    r - v w (r the fiber's trace, normalized) gives the grid values.
    """
    F = A4.field
    p, keep, restrict = restriction_coordinates(A4.forms[h0], F)
    groups: dict = {}
    for i in sorted(flat):
        if i == h0:
            continue
        trace = restrict(A4.forms[i])
        key = normalize_form(trace, F)
        groups.setdefault(key, []).append(i)
    if len(groups) != 3:
        return None
    items = sorted(groups.items(), key=lambda kv: -len(kv[1]))
    (r1, g1), (r2, g2), (r3, g3) = items
    if len(g1) != len(g2) or len(g3) != 1:
        return None

    def offsets(rep, members):
        # f = s * lift(rep) + u * H0 with lift(rep) zero at the pivot, so
        # f ~ rep - v w with v = -u / s
        out = []
        lead = next(k for k, c in enumerate(rep) if c)
        for i in members:
            f = A4.forms[i]
            s = F.div(restrict(f)[lead], rep[lead])
            u = F.div(f[p], A4.forms[h0][p])
            out.append(F.neg(F.div(u, s)))
        return out

    a = offsets(r1, g1)
    b = offsets(r2, g2)
    (line_val,) = offsets(r3, g3)
    AB = _coords(F, r3, [r1, r2])
    if AB is None or not AB[0] or not AB[1]:
        return None
    # line = A r1 + B r2 - line_val w, and the grid lines are r1 - a w, r2 - b w
    return GridLineSpec(tuple(a), tuple(b), (AB[0], AB[1], F.neg(line_val)), F)


@dataclass
class LocalCheck:
    flat: tuple
    size: int
    free: bool
    method: str
    chi: tuple = ()
    restriction_mult: tuple = ()
    grid_points: int | None = None
    n: int | None = None
    agree: bool = True

    def to_json(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def local_checks(A4: MultiArrangement, h0: int, L=None) -> list:
    L = L or lattice(A4)
    out = []
    for X in L.flats_above(h0, 3):
        AX = localization(A4, X)
        idx = sorted(X)
        h_local = idx.index(h0)
        rep = yoshinaga3_report(AX, h_local)
        check = LocalCheck(
            tuple(idx), len(idx), rep.free, "yoshinaga", rep.chi,
            rep.restriction.mult if rep.restriction is not None else (),
        )
        G = grid_spec_for_flat(A4, X, h0)
        if G is not None:
            check.method = "grid-line"
            check.grid_points = len(grid_points_on_line(G))
            check.n = G.n
            check.agree = grid_line_free(G) == rep.free
        out.append(check)
    return out


@dataclass
class ExtensionReport:
    ok: bool
    h0: int
    restriction: MultiArrangement | None
    recognition: X3Recognition | None
    restriction_free: bool
    local: list = dc_field(default_factory=list)
    full_saito: dict | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def locally_free(self) -> bool:
        return all(c.free for c in self.local)

    def to_json(self):
        F = self.restriction.field if self.restriction is not None else QQ
        out = {
            "free": self.ok,
            "h0": self.h0,
            "restriction_free": self.restriction_free,
            "locally_free": self.locally_free,
            "local": [c.to_json() for c in self.local],
            "notes": self.notes,
        }
        if self.restriction is not None:
            out["restriction"] = self.restriction.to_dict()
        if self.recognition is not None:
            out["x3_alpha"] = F.to_json(self.recognition.alpha)
            out["x3_labels"] = list(self.recognition.labels)
            out["x3_mult"] = list(self.recognition.mult)
        if self.full_saito is not None:
            out["full_saito"] = self.full_saito
        return out


def verify_extension(A4: MultiArrangement, h0: int | None = None, full_saito: bool = False) -> ExtensionReport:
    """Freeness of a rank-4 arrangement through its restriction onto H0."""
    if A4.ell != 4:
        raise ArrangementError("expected an arrangement in four variables")
    if h0 is None:
        h0 = find_w(A4)
    elif not 0 <= h0 < len(A4):
        raise ArrangementError(f"no hyperplane with index {h0}")
    notes = []
    R = ziegler_restriction(A4, h0)
    rec = recognize_x3(R)
    restriction_free = False
    if rec is None:
        notes.append("restriction is not an X3 multi-arrangement")
    else:
        m = rec.mult
        pred = classify_predicted(rec.alpha, m, A4.field)
        homo = decide_free_homological(rec.alpha, m, A4.field).status
        if pred != homo:
            notes.append(f"restriction: predicted {pred} but homological test says {homo}")
        restriction_free = pred is Status.FREE and homo is Status.FREE
        if not restriction_free:
            notes.append(f"multiplicity {list(m)} is not free on X3({A4.field.format(rec.alpha)})")
    local = local_checks(A4, h0)
    for c in local:
        if not c.free:
            notes.append(f"localization at flat {list(c.flat)} is not free")
        if not c.agree:
            notes.append(f"grid-line test disagrees with the rank-3 test at flat {list(c.flat)}")
    ok = restriction_free and all(c.free and c.agree for c in local)
    saito = None
    if full_saito:
        if not A4.field.is_rational or len(A4) > 10:
            raise ArrangementError("full Saito certification is limited to at most 10 hyperplanes over Q")
        v = decide_free(A4)
        saito = v.to_json(A4.field)
        if v.is_free != ok:
            notes.append("full Saito certification disagrees with the restriction pipeline")
    return ExtensionReport(ok, h0, R, rec, restriction_free, local, saito, notes)


# -- translations -------------------------------------------------------------------

def translate(A4: MultiArrangement, p, q, r) -> MultiArrangement:
    """Pull back along x -> x + p w, y -> y + q w, z -> z + r w."""
    F = A4.field
    p, q, r = F(p), F(q), F(r)
    forms = []
    for a, b, c, d in A4.forms:
        shift = F.add(F.add(F.mul(a, p), F.mul(b, q)), F.mul(c, r))
        forms.append((a, b, c, F.add(d, shift)))
    return MultiArrangement(F, forms, A4.mult, A4.vars)


def normalize_translation(A4: MultiArrangement, h0: int | None = None):
    """Translate so the three singleton-fiber forms pass through x = y = z = 0.

    Returns ``(translated arrangement, (p, q, r))``.
    """
    F = A4.field
    if h0 is None:
        h0 = find_w(A4)
    L = lattice(A4)
    fibers = restriction_fibers(L, h0)
    singles = [fib[0] for fib in fibers if len(fib) == 1]
    if len(singles) != 3:
        raise ArrangementError(f"expected three singleton fibers on H0, found {len(singles)}")
    rows = [A4.forms[i][:3] for i in singles]
    if rank(rows, F) != 3:
        raise ArrangementError("the singleton forms are not independent on x, y, z")
    inv = inverse(rows, F)
    rhs = [F.neg(A4.forms[i][3]) for i in singles]
    shift = tuple(sum((F.mul(inv[k][j], rhs[j]) for j in range(3)), F.zero) for k in range(3))
    return translate(A4, *shift), shift


# -- the combinatorial trace ----------------------------------------------------------

@dataclass
class TraceStep:
    name: str
    ok: bool
    detail: dict

    def to_json(self):
        return {"step": self.name, "ok": self.ok, "detail": self.detail}


def terao_trace(A4: MultiArrangement, h0: int | None = None) -> list:
    """The freeness argument as four checked steps, each read off lattice data."""
    F = A4.field
    if A4.ell != 4:
        raise ArrangementError("expected an arrangement in four variables")
    if h0 is None:
        h0 = find_w(A4)
    L = lattice(A4)
    fibers = restriction_fibers(L, h0)
    sizes = sorted((len(f) for f in fibers), reverse=True)
    if len(sizes) != 6:
        raise ArrangementError(f"restriction onto H0 has {len(sizes)} lines, not 6")
    n = sizes[0]
    shape_ok = n > 1 and sizes == [n, n, n, 1, 1, 1]
    steps = [TraceStep("multiplicity_shape", shape_ok, {"fiber_sizes": sizes, "n": n})]

    local = local_checks(A4, h0, L)
    bad = [list(c.flat) for c in local if not c.free]
    steps.append(TraceStep(
        "local_freeness",
        not bad and all(c.agree for c in local),
        {
            "flats_checked": len(local),
            "grid_flats": [
                {"flat": list(c.flat), "grid_points": c.grid_points, "n": c.n}
                for c in local if c.method == "grid-line"
            ],
            "failed": bad,
        },
    ))

    rec = recognize_x3(ziegler_restriction(A4, h0))
    if rec is None:
        steps.append(TraceStep("order_divides_n", False, {"reason": "restriction is not X3"}))
        restriction_free = False
    else:
        order = F.order(rec.alpha)
        divides = order is not None and n % order == 0
        steps.append(TraceStep("order_divides_n", divides, {
            "alpha": F.to_json(rec.alpha), "order": order, "n": n,
            "t": n // order if divides else None,
        }))
        restriction_free = classify_predicted(rec.alpha, rec.mult, F) is Status.FREE
    final = shape_ok and restriction_free and all(s.ok for s in steps[:3])
    steps.append(TraceStep("yoshinaga_verdict", final, {
        "restriction_free": restriction_free, "locally_free": not bad,
    }))
    return steps
