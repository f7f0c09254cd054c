"""Sparse multivariate polynomials over Q or GF(p).

Terms are stored as ``{exponent tuple: nonzero coefficient}``.  Printing and
all "leading term" notions use graded lexicographic order with the declared
variable order (``x > y > z > w``).

Text format: ``x^2 - 2*x*y + y^2``.  ``parse(str(f)) == f`` and
``str(parse(s)) == s`` for any ``s`` produced by the printer.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .field import Field, FieldError

MAX_VARS = 4
DEFAULT_VARS = ("x", "y", "z", "w")


class PolynomialError(ValueError):
    pass


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total degree ``d``, in decreasing grlex order."""
    if d < 0:
        return ()
    if nvars == 0:
        return ((),) if d == 0 else ()
    if nvars == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int) -> dict[tuple[int, ...], int]:
    return {mon: i for i, mon in enumerate(monomials(nvars, d))}


def num_monomials(nvars: int, d: int) -> int:
    """dim_K S_d for S a polynomial ring in ``nvars`` variables (0 if d < 0)."""
    if d < 0:
        return 0
    from math import comb

    return comb(d + nvars - 1, nvars - 1)


def grlex_key(mon: tuple[int, ...]):
    return (sum(mon), mon)


class Polynomial:
    """An immutable polynomial with coefficients in ``field``."""

    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field: Field, variables, terms=None):
        variables = tuple(variables)
        if len(variables) > MAX_VARS:
            raise PolynomialError(f"at most {MAX_VARS} variables supported, got {len(variables)}")
        self.field = field
        self.vars = variables
        clean = {}
        if terms:
            n = len(variables)
            for mon, c in terms.items():
                mon = tuple(mon)
                if len(mon) != n:
                    raise PolynomialError(f"exponent {mon} does not match variables {variables}")
                c = field(c)
                if c:
                    clean[mon] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, variables, terms):
        # trusted constructor: terms already reduced and zero-free
        obj = cls.__new__(cls)
        obj.field = field
        obj.vars = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, field, variables, c):
        variables = tuple(variables)
        return cls(field, variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, field, variables, i: int):
        variables = tuple(variables)
        mon = tuple(1 if k == i else 0 for k in range(len(variables)))
        return cls(field, variables, {mon: 1})

    @classmethod
    def linear_form(cls, field, variables, coeffs):
        variables = tuple(variables)
        terms = {}
        for i, c in enumerate(coeffs):
            terms[tuple(1 if k == i else 0 for k in range(len(variables)))] = c
        return cls(field, variables, terms)

    @classmethod
    def monomial(cls, field, variables, mon, c=1):
        return cls(field, tuple(variables), {tuple(mon): c})

    def zero_like(self):
        return Polynomial._raw(self.field, self.vars, {})

    def one_like(self):
        return Polynomial._raw(self.field, self.vars, {(0,) * len(self.vars): self.field.one})

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        """The value of a constant polynomial (zero allowed)."""
        if not self.is_constant():
            raise PolynomialError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.vars), self.field.zero)

    def coefficient(self, mon):
        return self.terms.get(tuple(mon), self.field.zero)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading term")
        mon = max(self.terms, key=grlex_key)
        return mon, self.terms[mon]

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise PolynomialError(f"field mismatch: {self.field} vs {other.field}")
        if self.vars != other.vars:
            raise PolynomialError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        try:
            return Polynomial.constant(self.field, self.vars, other)
        except FieldError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            s = F.add(terms.get(mon, F.zero), c)
            if s:
                terms[mon] = s
            else:
                terms.pop(mon, None)
        return Polynomial._raw(F, self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial._raw(F, self.vars, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        F = self.field
        c = F(c)
        if not c:
            return self.zero_like()
        return Polynomial._raw(F, self.vars, {m: F.mul(a, c) for m, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except FieldError:
                return NotImplemented
        self._check(other)
        F = self.field
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = tuple(a + b for a, b in zip(m1, m2))
                terms[mon] = F.add(terms.get(mon, F.zero), F.mul(c1, c2))
        return Polynomial._raw(F, self.vars, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolynomialError("exponent must be a non-negative integer")
        result = self.one_like()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            try:
                return self == Polynomial.constant(self.field, self.vars, other)
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.vars, frozenset(self.terms.items())))
        return self._hash

    def divmod(self, divisor: "Polynomial"):
        """Multivariate division by a single polynomial in grlex order.

        A single polynomial is a Groebner basis of the ideal it generates, so
        the remainder is zero exactly when ``divisor`` divides ``self``.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        F = self.field
        lead_mon, lead_c = divisor.leading_term()
        lead_inv = F.inv(lead_c)
        rem = dict(self.terms)
        quot: dict = {}
        remainder: dict = {}
        while rem:
            mon = max(rem, key=grlex_key)
            c = rem.pop(mon)
            if all(a >= b for a, b in zip(mon, lead_mon)):
                qmon = tuple(a - b for a, b in zip(mon, lead_mon))
                qc = F.mul(c, lead_inv)
                quot[qmon] = F.add(quot.get(qmon, F.zero), qc)
                for dm, dc in divisor.terms.items():
                    if dm == lead_mon:
                        continue
                    tm = tuple(a + b for a, b in zip(qmon, dm))
                    v = F.sub(rem.get(tm, F.zero), F.mul(qc, dc))
                    if v:
                        rem[tm] = v
                    else:
                        rem.pop(tm, None)
            else:
                remainder[mon] = c
        q = Polynomial._raw(F, self.vars, {m: c for m, c in quot.items() if c})
        r = Polynomial._raw(F, self.vars, remainder)
        return q, r

    def divides(self, other: "Polynomial") -> bool:
        """True if ``self`` divides ``other``."""
        return other.divmod(self)[1].is_zero()

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        q, r = self.divmod(divisor)
        if r:
            raise PolynomialError(f"{divisor} does not divide {self}")
        return q

    def substitute_linear(self, T) -> "Polynomial":
        """Return ``f(T x)``: each variable ``x_i`` becomes ``sum_j T[i][j] x_j``.

        ``T`` must be square and invertible; the degree of each homogeneous
        part is preserved.
        """
        return substitute_linear(self, T)

    def evaluate(self, point):
        F = self.field
        point = [F(v) for v in point]
        total = F.zero
        for mon, c in self.terms.items():
            v = c
            for a, e in zip(point, mon):
                if e:
                    v = F.mul(v, F.pow(a, e))
            total = F.add(total, v)
        return total

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.field, self.vars, {m: c for m, c in self.terms.items() if sum(m) == d})

    def coefficient_vector(self, d: int) -> list:
        """Coefficients of the degree-``d`` part in :func:`monomials` order."""
        F = self.field
        return [self.terms.get(mon, F.zero) for mon in monomials(len(self.vars), d)]

    @classmethod
    def from_vector(cls, field, variables, d: int, vec) -> "Polynomial":
        mons = monomials(len(variables), d)
        return cls._raw(field, tuple(variables), {m: c for m, c in zip(mons, vec) if c})

    def change_variables(self, variables) -> "Polynomial":
        """Rename variables (same count)."""
        variables = tuple(variables)
        if len(variables) != len(self.vars):
            raise PolynomialError("variable count mismatch")
        return Polynomial._raw(self.field, variables, dict(self.terms))

    def embed(self, variables, positions) -> "Polynomial":
        """Move into a larger ring: variable ``i`` of self becomes ``positions[i]``."""
        variables = tuple(variables)
        terms = {}
        for mon, c in self.terms.items():
            new = [0] * len(variables)
            for i, e in zip(positions, mon):
                new[i] += e
            terms[tuple(new)] = c
        return Polynomial._raw(self.field, variables, terms)

    # -- text -------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, field={self.field}, vars={self.vars})"


# -- linear substitution ----------------------------------------------------

def _scalar_rank(field, rows) -> int:
    from .linalg import rank

    return rank(rows, field)


def substitute_linear(f: Polynomial, T) -> Polynomial:
    F = f.field
    n = len(f.vars)
    T = [[F(c) for c in row] for row in T]
    if len(T) != n or any(len(row) != n for row in T):
        raise PolynomialError(f"substitution matrix must be {n}x{n}")
    if _scalar_rank(F, T) < n:
        raise PolynomialError("substitution matrix is singular")
    images = [Polynomial.linear_form(F, f.vars, row) for row in T]
    cache: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = images[i] ** e
        return cache[key]

    result = f.zero_like()
    for mon, c in f.terms.items():
        term = Polynomial.constant(F, f.vars, c)
        for i, e in enumerate(mon):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


# -- printing and parsing -----------------------------------------------------

def _format_monomial(mon, variables) -> str:
    parts = []
    for name, e in zip(variables, mon):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    F = f.field
    out = []
    for mon, c in f.sorted_terms():
        c = F.signed(c)
        negative = c < 0
        a = -c if negative else c
        body = _format_monomial(mon, f.vars)
        if not body:
            text = str(a)
        elif a == 1:
            text = body
        else:
            text = f"{a}*{body}"
        if not out:
            out.append(("-" if negative else "") + text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text, field, variables):
        self.tokens = []
        for num, name, op in _TOKEN.findall(text):
            if num:
                self.tokens.append(("num", int(num)))
            elif name:
                self.tokens.append(("var", name))
            elif op.strip():
                self.tokens.append(("op", op))
        self.pos = 0
        self.field = field
        self.vars = tuple(variables)
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise PolynomialError(f"cannot parse {self.text!r} near token {self.pos}: {tok[1]!r}")
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        result = self.term() * sign
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self):
        result = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            if op == "*":
                result = result * self.factor()
            else:
                den = self.take("num")[1]
                result = result * self.field.inv(self.field(den))
        return result

    def factor(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            base = Polynomial.constant(self.field, self.vars, val)
        elif kind == "var":
            self.take()
            if val not in self.vars:
                raise PolynomialError(f"unknown variable {val!r}; expected one of {self.vars}")
            base = Polynomial.variable(self.field, self.vars, self.vars.index(val))
        elif (kind, val) == ("op", "("):
            self.take()
            base = self.expr()
            self.take("op", ")")
        elif (kind, val) == ("op", "-"):
            self.take()
            return -self.factor()
        else:
            raise PolynomialError(f"cannot parse {self.text!r}: unexpected {val!r}")
        if self.peek() == ("op", "^"):
            self.take()
            base = base ** self.take("num")[1]
        return base


def parse_polynomial(text: str, field: Field, variables=DEFAULT_VARS[:3]) -> Polynomial:
    """Parse ``c*x^a*y^b...`` sums; parentheses and ``a/b`` coefficients allowed."""
    parser = _Parser(text, field, variables)
    result = parser.expr()
    if parser.pos != len(parser.tokens):
        raise PolynomialError(f"trailing input in {text!r}")
    return result

