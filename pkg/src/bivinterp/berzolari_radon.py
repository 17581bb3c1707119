"""Berzolari-Radon construction: grow a poised set by points on a line.

A step adds ``n + 2`` distinct points of a line ``K = {k = 0}`` that avoids
all current nodes to a set poised for degree ``n``; the result is poised for
degree ``n + 1`` and its fundamental polynomials are given in closed form
from the old ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import ONE, LinearForm, Poly, evaluate, point
from .errors import ConfigurationError, DomainError, InternalCheckError
from .linalg import det
from .nodes import LagrangeBasis, NodeSet, as_nodeset, dim_pi, is_poised, lagrange_basis


def choose_m(k: LinearForm) -> LinearForm:
    """Deterministic ``m`` such that ``1, k, m`` span the linear polynomials."""
    if k.is_constant():
        raise ConfigurationError("k must be nonconstant")
    if k.a2 == 0:
        return LinearForm(0, 0, 1)
    if k.a1 == 0:
        return LinearForm(0, 1, 0)
    if k.a1 + k.a2 != 0:
        return LinearForm(0, 1, -1)
    return LinearForm(0, 1, 1)


def _independent(k: LinearForm, m: LinearForm) -> bool:
    return det([[1, 0, 0], [k.a0, k.a1, k.a2], [m.a0, m.a1, m.a2]]) != 0


@dataclass(frozen=True)
class BRStep:
    """A line ``k``, points ``T`` on it and a companion ``m``."""

    k: LinearForm
    points: NodeSet
    m: LinearForm | None = None

    def __post_init__(self):
        if self.k.is_constant():
            raise ConfigurationError(f"line equation {self.k} is constant")
        object.__setattr__(self, "points", as_nodeset(self.points))
        if self.m is None:
            object.__setattr__(self, "m", choose_m(self.k))
        elif not _independent(self.k, self.m):
            raise ConfigurationError(f"1, {self.k}, {self.m} are not a basis of Pi_1")
        for t in self.points:
            if self.k(t) != 0:
                raise ConfigurationError(f"point ({t[0]}, {t[1]}) is not on the line {self.k} = 0")


def d_poly(T, m: LinearForm, t) -> Poly:
    """``prod_{s in T, s != t} (m(x) - m(s))``."""
    t = point(t)
    T = as_nodeset(T)
    if t not in T:
        raise DomainError("t is not one of the points")
    mp = m.to_poly()
    out = ONE
    for s in T:
        if s != t:
            if m(s) == m(t):
                raise ConfigurationError("points of T must have distinct m-values (duplicate point?)")
            out = out * (mp - m(s))
    return out


def d_value(T, m: LinearForm, t) -> Fraction:
    """``d_t(t)``."""
    t = point(t)
    out = Fraction(1)
    for s in T:
        if s != t:
            out *= m(t) - m(s)
    return out


@dataclass(frozen=True)
class BRExtension:
    """One Berzolari-Radon step with everything needed downstream."""

    degree: int  # degree of the base set
    base: NodeSet
    base_basis: LagrangeBasis
    step: BRStep
    nodes: NodeSet
    basis: LagrangeBasis

    @property
    def k(self) -> LinearForm:
        return self.step.k

    @property
    def m(self) -> LinearForm:
        return self.step.m

    @property
    def T(self) -> NodeSet:
        return self.step.points

    def d(self, t) -> Poly:
        return d_poly(self.T, self.m, t)

    def d_at(self, t) -> Fraction:
        return d_value(self.T, self.m, t)


def br_extend(Yn, n: int, step: BRStep, base_basis: LagrangeBasis | None = None) -> BRExtension:
    Yn = as_nodeset(Yn)
    k, m, T = step.k, step.m, step.points
    if len(Yn) != dim_pi(n):
        raise DomainError(f"base set has {len(Yn)} nodes, expected dim Pi_{n} = {dim_pi(n)}")
    if len(T) != n + 2:
        raise ConfigurationError(f"need {n + 2} points on the line, got {len(T)}")
    for y in Yn:
        if k(y) == 0:
            raise ConfigurationError(f"line {k} = 0 passes through node ({y[0]}, {y[1]})")
    if base_basis is None:
        base_basis = lagrange_basis(Yn, n)
    elif base_basis.nodes.nodes != Yn.nodes or not base_basis.kronecker_ok():
        raise InternalCheckError("supplied base basis is not the Lagrange basis of the base set")

    kp = k.to_poly()
    ky = [k(y) for y in Yn]
    old = [kp * l / kv for l, kv in zip(base_basis.polys, ky)]
    new = []
    for t in T:
        dt = d_poly(T, m, t)
        corr = Poly()
        for y, l, kv in zip(Yn, base_basis.polys, ky):
            c = evaluate(dt, y) / kv
            if c:
                corr = corr + l * c
        new.append((dt - kp * corr) / d_value(T, m, t))
    Yn1 = Yn + T
    L = LagrangeBasis(n + 1, Yn1, tuple(old + new))
    if not L.kronecker_ok():
        raise InternalCheckError("Berzolari-Radon fundamental polynomials fail the Kronecker test")
    return BRExtension(n, Yn, base_basis, step, Yn1, L)


def br_restrict(Yn1, n1: int, k: LinearForm) -> NodeSet:
    """Drop the ``n1 + 1`` nodes on ``k = 0``; the rest is poised for ``n1 - 1``."""
    Yn1 = as_nodeset(Yn1)
    on = [y for y in Yn1 if k(y) == 0]
    if len(on) != n1 + 1:
        raise ConfigurationError(f"line {k} = 0 contains {len(on)} nodes, expected {n1 + 1}")
    rest = Yn1.minus(on)
    if not is_poised(rest, n1 - 1):
        raise InternalCheckError("restricted set is not poised")
    return rest


@dataclass
class BRChain:
    steps: list
    extensions: list = field(default_factory=list)
    nodes: NodeSet | None = None
    basis: LagrangeBasis | None = None

    @property
    def degree(self) -> int:
        return len(self.steps) - 1


def br_chain(steps: Sequence) -> BRChain:
    """Build a poised set of degree ``len(steps) - 1``.

    ``steps`` holds ``BRStep`` objects or ``(line, points)`` pairs; step ``i``
    carries ``i + 1`` points.
    """
    if not steps:
        raise ConfigurationError("empty chain")
    built = []
    for i, s in enumerate(steps):
        try:
            built.append(s if isinstance(s, BRStep) else BRStep(s[0], NodeSet(s[1])))
        except DomainError as e:
            raise type(e)(f"step {i}: {e}") from None
    first = built[0]
    if len(first.points) != 1:
        raise ConfigurationError(f"step 0: need 1 point, got {len(first.points)}")
    nodes = first.points
    basis = LagrangeBasis(0, nodes, (ONE,))
    chain = BRChain(built)
    for i, step in enumerate(built[1:], start=1):
        try:
            ext = br_extend(nodes, i - 1, step, basis)
        except DomainError as e:
            raise type(e)(f"step {i}: {e}") from None
        chain.extensions.append(ext)
        nodes, basis = ext.nodes, ext.basis
    chain.nodes, chain.basis = nodes, basis
    return chain


def random_rational(rng: random.Random, num: int = 9, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_line(rng: random.Random, avoid=(), num: int = 9, den: int = 7) -> LinearForm:
    """Random rational line through none of the points in ``avoid``."""
    while True:
        k = LinearForm(random_rational(rng, num, den), random_rational(rng, num, den), random_rational(rng, num, den))
        if not k.is_constant() and all(k(y) != 0 for y in avoid):
            return k


def random_points_on(rng: random.Random, k: LinearForm, count: int, avoid=()) -> list:
    """``count`` distinct random rational points on ``k = 0``."""
    if k.a2 != 0:
        base = (Fraction(0), -k.a0 / k.a2)
    else:
        base = (-k.a0 / k.a1, Fraction(0))
    direction = (-k.a2, k.a1)
    avoid = set(avoid)
    pts: list = []
    while len(pts) < count:
        s = random_rational(rng)
        p = (base[0] + s * direction[0], base[1] + s * direction[1])
        if p not in pts and p not in avoid:
            pts.append(p)
    return pts


def random_br_steps(degree: int, rng: random.Random) -> list[BRStep]:
    steps = []
    acc: list = []
    for i in range(degree + 1):
        k = random_line(rng, acc)
        pts = random_points_on(rng, k, i + 1)
        steps.append(BRStep(k, NodeSet(pts)))
        acc.extend(pts)
    return steps


def random_br_chain(degree: int, rng: random.Random) -> BRChain:
    return br_chain(random_br_steps(degree, rng))
