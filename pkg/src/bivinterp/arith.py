"""Exact sparse bivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction` instances; a polynomial is a
map from exponent pairs ``(e1, e2)`` to nonzero coefficients.  The canonical
monomial order is graded (ascending total degree) with ties broken by the
exponent of ``x1`` descending, i.e. ``1, x1, x2, x1^2, x1*x2, x2^2, ...``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

Scalar = Fraction
Point = tuple  # (Fraction, Fraction)
Monomial = tuple  # (e1, e2)

#: degree of the zero polynomial
ZERO_DEGREE = -math.inf


class NoLeadingFormError(ValueError):
    pass


def scalar(value) -> Fraction:
    """Coerce ints, strings like ``"-3/4"`` and Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    return Fraction(value)


def point(p) -> Point:
    x, y = p
    return (scalar(x), scalar(y))


def monomial_key(m: Monomial):
    """Sort key realizing the canonical order."""
    return (m[0] + m[1], -m[0])


def monomials_upto(n: int) -> list[Monomial]:
    """All exponent pairs of total degree <= n, in canonical order."""
    return [(d - j, j) for d in range(n + 1) for j in range(d + 1)]


def monomials_of_degree(d: int) -> list[Monomial]:
    return [(d - j, j) for j in range(d + 1)]


class Poly:
    """Immutable sparse polynomial in ``x1, x2`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for (e1, e2), c in terms.items():
                c = scalar(c)
                if c:
                    if e1 < 0 or e2 < 0:
                        raise ValueError(f"negative exponent in {(e1, e2)}")
                    clean[(int(e1), int(e2))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # terms already clean: Fraction values, no zeros
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, e1: int, e2: int, c=1) -> "Poly":
        return cls({(e1, e2): c})

    @classmethod
    def x1(cls) -> "Poly":
        return cls.monomial(1, 0)

    @classmethod
    def x2(cls) -> "Poly":
        return cls.monomial(0, 1)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical monomial order."""
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]))

    def coeff(self, e1: int, e2: int) -> Fraction:
        return self._terms.get((e1, e2), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self):
        if not self._terms:
            return ZERO_DEGREE
        return max(e1 + e2 for e1, e2 in self._terms)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw({m: c for m, c in self._terms.items() if m[0] + m[1] == d})

    def leading_form(self) -> "Poly":
        if not self._terms:
            raise NoLeadingFormError("no leading form: zero polynomial")
        return self.homogeneous_part(self.degree)

    def coefficients(self, monomials: Sequence[Monomial]) -> list[Fraction]:
        zero = Fraction(0)
        return [self._terms.get(m, zero) for m in monomials]

    @classmethod
    def from_coefficients(cls, monomials: Sequence[Monomial], coeffs) -> "Poly":
        return cls(dict(zip(monomials, coeffs)))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Poly._raw({})
            other = Fraction(other)
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict = {}
        get = out.get
        for (a1, a2), c in self._terms.items():
            for (b1, b2), d in other._terms.items():
                m = (a1 + b1, a2 + b2)
                out[m] = get(m, 0) + c * d
        return Poly._raw({m: Fraction(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Fraction(other)
            return Poly._raw({m: c / other for m, c in self._terms.items()})
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation and substitution -------------------------------------

    def __call__(self, pt) -> Fraction:
        return evaluate(self, pt)

    def substitute(self, p1: "Poly", p2: "Poly") -> "Poly":
        """Return ``self(p1, p2)``."""
        if not self._terms:
            return self
        d1 = max(m[0] for m in self._terms)
        d2 = max(m[1] for m in self._terms)
        pow1 = [Poly.const(1)]
        for _ in range(d1):
            pow1.append(pow1[-1] * p1)
        pow2 = [Poly.const(1)]
        for _ in range(d2):
            pow2.append(pow2[-1] * p2)
        out = Poly._raw({})
        for (e1, e2), c in self._terms.items():
            out = out + (pow1[e1] * pow2[e2]) * c
        return out

    # -- display ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (e1, e2), c in sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = "*".join(
                s for s in (_var("x1", e1), _var("x2", e2)) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _var(name, e):
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _as_poly(other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
        return Poly.const(other)
    return NotImplemented


X1 = Poly.x1()
X2 = Poly.x2()
ONE = Poly.const(1)
ZERO = Poly()


def evaluate(p: Poly, pt) -> Fraction:
    """Exact value of ``p`` at the point ``pt``."""
    x, y = pt
    terms = p._terms
    if not terms:
        return Fraction(0)
    d1 = max(m[0] for m in terms)
    d2 = max(m[1] for m in terms)
    px = [1]
    for _ in range(d1):
        px.append(px[-1] * x)
    py = [1]
    for _ in range(d2):
        py.append(py[-1] * y)
    total = Fraction(0)
    for (e1, e2), c in terms.items():
        total += c * px[e1] * py[e2]
    return total


def leading_form(p: Poly) -> Poly:
    return p.leading_form()


def poly_arith(p: Poly, q, op: str) -> Poly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (``q`` a scalar)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p * scalar(q)
    raise ValueError(f"unknown operation {op!r}")


def _lead(p: Poly):
    return max(p._terms, key=lambda m: (m[0] + m[1], m[0]))


def exact_div(p: Poly, q: Poly) -> Poly | None:
    """Return ``p / q`` if ``q`` divides ``p`` exactly, otherwise ``None``."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return p
    lq = _lead(q)
    cq = q._terms[lq]
    rem = dict(p._terms)
    quot = {}
    while rem:
        lm = max(rem, key=lambda m: (m[0] + m[1], m[0]))
        e1, e2 = lm[0] - lq[0], lm[1] - lq[1]
        if e1 < 0 or e2 < 0:
            return None
        c = rem[lm] / cq
        quot[(e1, e2)] = c
        for (b1, b2), d in q._terms.items():
            m = (b1 + e1, b2 + e2)
            v = rem.get(m, 0) - c * d
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return Poly._raw(quot)


# ---------------------------------------------------------------------------
# linear forms


@dataclass(frozen=True)
class LinearForm:
    """The polynomial ``a0 + a1*x1 + a2*x2``."""

    a0: Fraction
    a1: Fraction
    a2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a0", scalar(self.a0))
        object.__setattr__(self, "a1", scalar(self.a1))
        object.__setattr__(self, "a2", scalar(self.a2))

    @classmethod
    def from_poly(cls, p: Poly) -> "LinearForm":
        if p.degree > 1:
            raise ValueError(f"{p} is not of degree <= 1")
        return cls(p.coeff(0, 0), p.coeff(1, 0), p.coeff(0, 1))

    @classmethod
    def through(cls, p, q) -> "LinearForm":
        """The line through two distinct points."""
        (x0, y0), (x1, y1) = p, q
        if (x0, y0) == (x1, y1):
            raise ValueError("points coincide")
        a1, a2 = y1 - y0, x0 - x1
        return cls(-(a1 * x0 + a2 * y0), a1, a2)

    def __call__(self, pt) -> Fraction:
        return self.a0 + self.a1 * pt[0] + self.a2 * pt[1]

    def is_constant(self) -> bool:
        return self.a1 == 0 and self.a2 == 0

    def to_poly(self) -> Poly:
        return Poly({(0, 0): self.a0, (1, 0): self.a1, (0, 1): self.a2})

    def scaled(self, c) -> "LinearForm":
        c = scalar(c)
        return LinearForm(self.a0 * c, self.a1 * c, self.a2 * c)

    def normalized(self) -> "LinearForm":
        """Scale so the first nonzero of ``(a1, a2, a0)`` equals 1."""
        for c in (self.a1, self.a2, self.a0):
            if c:
                return self.scaled(1 / c)
        return self

    def normalized_at(self, z) -> "LinearForm":
        """Scale so the value at ``z`` is 1, or canonically if it vanishes there."""
        v = self(z)
        return self.scaled(1 / v) if v else self.normalized()

    def key(self):
        return (self.a1, self.a2, self.a0)

    def as_strings(self) -> list[str]:
        return [str(self.a0), str(self.a1), str(self.a2)]

    def __str__(self):
        return str(self.to_poly())


def intersect(k: LinearForm, l: LinearForm) -> Point | None:
    """Intersection point of two lines, or ``None`` when parallel."""
    det = k.a1 * l.a2 - k.a2 * l.a1
    if det == 0:
        return None
    x = (k.a2 * l.a0 - k.a0 * l.a2) / det
    y = (k.a0 * l.a1 - k.a1 * l.a0) / det
    return (x, y)


def divide_by_linear(p: Poly, k: LinearForm) -> Poly | None:
    """Quotient ``p / k``, or ``None`` when ``k`` does not divide ``p``."""
    if k.is_constant():
        raise ValueError("division by a constant linear form")
    return exact_div(p, k.to_poly())


# ---------------------------------------------------------------------------
# univariate helpers; a univariate polynomial is a list of coefficients,
# index = power, with no trailing zeros


def _utrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _ueval(c, x):
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _udivmod(a, b):
    a = [Fraction(v) for v in a]
    b = _utrim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lb
        q[shift] = f
        for i, v in enumerate(b):
            a[i + shift] -= f * v
        a = _utrim(a)
    return q, a


def _ugcd(a, b):
    a, b = _utrim(a), _utrim(b)
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if a:
        lc = a[-1]
        a = [v / lc for v in a]
    return a


def _uderiv(c):
    return [i * c[i] for i in range(1, len(c))]


def _uprimitive(c):
    """Integer primitive multiple with positive leading coefficient."""
    den = math.lcm(*(Fraction(v).denominator for v in c))
    ints = [int(Fraction(v) * den) for v in c]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return [v // g for v in ints]


def _sturm_sequence(c):
    seq = [_utrim(c), _utrim(_uderiv(c))]
    while len(seq[-1]) > 1:
        _, r = _udivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-v for v in r])
    return seq


def _sign_changes(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sturm_count(seq, x):
    return _sign_changes([_ueval(p, x) for p in seq])


def _sturm_at_infinity(seq, positive):
    vals = []
    for p in seq:
        lc = p[-1]
        deg = len(p) - 1
        vals.append(lc if positive or deg % 2 == 0 else -lc)
    return _sign_changes(vals)


def _squarefree_rational_roots_exact(c):
    """Complete search for rational roots of a square-free integer polynomial.

    Real roots are isolated with a Sturm sequence and bisection; every
    rational root has the form ``j / lc``.
    """
    lc = abs(c[-1])
    seq = _sturm_sequence(c)
    total = _sturm_at_infinity(seq, False) - _sturm_at_infinity(seq, True)
    if total == 0:
        return []
    bound = 1 + max(Fraction(abs(v), lc) for v in c[:-1])
    roots = []
    stack = [(-bound, bound, total)]
    target = Fraction(1, 2 * lc)
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1 and hi - lo < target:
            for j in (math.floor(lo * lc), math.ceil(lo * lc), math.floor(hi * lc), math.ceil(hi * lc)):
                r = Fraction(j, lc)
                if lo <= r <= hi and _ueval(c, r) == 0 and r not in roots:
                    roots.append(r)
            continue
        mid = (lo + hi) / 2
        if _ueval(c, mid) == 0:
            # deflate and restart; Sturm counts need root-free endpoints
            q, _ = _udivmod(c, [-mid, 1])
            rest = _squarefree_rational_roots_exact(_uprimitive(q)) if len(q) > 1 else []
            return [mid] + rest
        left = _sturm_count(seq, lo) - _sturm_count(seq, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, cnt - left))
    return roots


def rational_roots(coeffs: Sequence) -> list[Fraction]:
    """Distinct rational roots, ascending, of a univariate polynomial (index = power)."""
    c = _utrim(Fraction(v) for v in coeffs)
    if len(c) <= 1:
        if not c:
            raise ValueError("the zero polynomial has every number as a root")
        return []
    roots = []
    if c[0] == 0:
        roots.append(Fraction(0))
        while c[0] == 0:
            c = c[1:]
    if len(c) > 2:
        g = _ugcd(c, _uderiv(c))
        if len(g) > 1:
            c, _ = _udivmod(c, g)
    c = _uprimitive(c)
    while len(c) > 1:
        deg = len(c) - 1
        if deg == 1:
            roots.append(Fraction(-c[0], c[1]))
            break
        if deg == 2:
            a0, a1, a2 = c
            disc = a1 * a1 - 4 * a2 * a0
            if disc >= 0:
                s = math.isqrt(disc)
                if s * s == disc:
                    roots.extend({Fraction(-a1 + s, 2 * a2), Fraction(-a1 - s, 2 * a2)})
            break
        found = _float_guided_root(c)
        if found is None:
            roots.extend(_squarefree_rational_roots_exact(c))
            break
        roots.append(found)
        q, r = _udivmod(c, [-found, 1])
        c = _uprimitive(q)
    return sorted(roots)


def _float_guided_root(c):
    """Try to find one rational root of integer polynomial ``c`` numerically."""
    lc = c[-1]
    big = max(abs(v) for v in c)
    try:
        approx = np.roots([float(Fraction(v, big)) for v in reversed(c)])
    except (OverflowError, np.linalg.LinAlgError):
        return None
    for r in approx:
        if abs(r.imag) > 1e-6 * (1 + abs(r.real)):
            continue
        guess = r.real * lc
        if not math.isfinite(guess):
            continue
        base = round(guess)
        for j in (base, base - 1, base + 1):
            cand = Fraction(j, lc)
            if _ueval(c, cand) == 0:
                return cand
    return None


# ---------------------------------------------------------------------------
# linear factors


@dataclass(frozen=True)
class LinearFactorization:
    """``p == prod(factors) * residual``; ``residual`` carries the scalar."""

    factors: tuple
    residual: Poly

    @property
    def complete(self) -> bool:
        return self.residual.is_constant()

    def expand(self) -> Poly:
        out = self.residual
        for k in self.factors:
            out = out * k.to_poly()
        return out


def _directions(form: Poly) -> list[LinearForm]:
    """Distinct rational linear factors of a homogeneous form, normalized."""
    d = form.degree
    # form(r, 1) as univariate in r
    u = [Fraction(0)] * (d + 1)
    for (e1, e2), c in form._terms.items():
        u[e1] = c
    out = []
    if u[d] == 0:
        out.append(LinearForm(0, 0, 1))
    if any(u):
        for r in sorted(rational_roots(u)):
            out.append(LinearForm(0, 1, -r))
    return out


def _offsets(p: Poly, direction: LinearForm) -> list[Fraction]:
    """Offsets ``c`` such that ``direction + c`` divides ``p``."""
    c_var, s_var = X1, X2
    if direction.a1 == 0:
        # line x2 + c = 0: x1 = s, x2 = -c
        restricted = p.substitute(s_var, -c_var)
    else:
        # line x1 - r*x2 + c = 0: x1 = r*s - c, x2 = s
        r = -direction.a2
        restricted = p.substitute(s_var * r - c_var, s_var)
    by_s: dict = {}
    for (e_c, e_s), v in restricted._terms.items():
        by_s.setdefault(e_s, {})[e_c] = v
    g = None
    for e_s in sorted(by_s):
        terms = by_s[e_s]
        u = [Fraction(0)] * (max(terms) + 1)
        for e, v in terms.items():
            u[e] = v
        g = u if g is None else _ugcd(g, u)
        if len(_utrim(g)) <= 1:
            return []
    if g is None or len(_utrim(g)) <= 1:
        return []
    return sorted(rational_roots(g))


def _find_linear_factor(p: Poly) -> LinearForm | None:
    for direction in _directions(p.leading_form()):
        offsets = _offsets(p, direction)
        if offsets:
            c = offsets[0]
            return LinearForm(c, direction.a1, direction.a2)
    return None


def linear_factors(p: Poly, z=None) -> LinearFactorization:
    """All rational linear factors of ``p`` with multiplicity.

    Each factor is scaled to take the value 1 at ``z`` when given and
    nonvanishing there; otherwise the first nonzero of ``(a1, a2, a0)`` is 1.
    Factors with irrational coefficients are not found (they stay in the
    residual).
    """
    if not p:
        raise ValueError("the zero polynomial has no factorization")
    if z is not None:
        z = point(z)
    rest = p
    found = []
    while rest.degree >= 1:
        k = _find_linear_factor(rest)
        if k is None:
            break
        if z is not None:
            k = k.normalized_at(z)
        kp = k.to_poly()
        while True:
            q = exact_div(rest, kp)
            if q is None:
                break
            found.append(k)
            rest = q
    found.sort(key=LinearForm.key)
    return LinearFactorization(tuple(found), rest)


def product(polys: Iterable[Poly]) -> Poly:
    out = ONE
    for p in polys:
        out = out * p
    return out
