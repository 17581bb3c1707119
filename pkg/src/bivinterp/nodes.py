"""Node sets, the evaluation map on Pi_n, Lagrange bases and interpolation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .arith import Poly, evaluate, monomials_upto, point
from .errors import DomainError, NotPoisedError
from .linalg import rank, rref


def dim_pi(n: int) -> int:
    """Dimension of the space of bivariate polynomials of degree <= n."""
    if n < 0:
        raise ValueError(f"negative degree {n}")
    return (n + 1) * (n + 2) // 2


class NodeSet:
    """Ordered set of distinct rational points.

    Equality ignores order; indices (and so every matrix built from the set)
    follow the stored order.
    """

    __slots__ = ("_nodes", "_index")

    def __init__(self, nodes: Iterable):
        pts = tuple(point(p) for p in nodes)
        index = {}
        for i, p in enumerate(pts):
            if p in index:
                raise DomainError(f"duplicate node {_fmt(p)}")
            index[p] = i
        self._nodes = pts
        self._index = index

    @property
    def nodes(self) -> tuple:
        return self._nodes

    def __iter__(self):
        return iter(self._nodes)

    def __len__(self):
        return len(self._nodes)

    def __getitem__(self, i):
        return self._nodes[i]

    def __contains__(self, p):
        return point(p) in self._index

    def index(self, p) -> int:
        return self._index[point(p)]

    def __eq__(self, other):
        if not isinstance(other, NodeSet):
            return NotImplemented
        return set(self._nodes) == set(other._nodes)

    def __hash__(self):
        return hash(frozenset(self._nodes))

    def __add__(self, other) -> "NodeSet":
        return NodeSet(self._nodes + tuple(other))

    def minus(self, other) -> "NodeSet":
        drop = {point(p) for p in other}
        return NodeSet(p for p in self._nodes if p not in drop)

    def issubset(self, other: "NodeSet") -> bool:
        return all(p in other for p in self._nodes)

    def __repr__(self):
        return "NodeSet([" + ", ".join(_fmt(p) for p in self._nodes) + "])"


def _fmt(p):
    return f"({p[0]}, {p[1]})"


def as_nodeset(Y) -> NodeSet:
    return Y if isinstance(Y, NodeSet) else NodeSet(Y)


def vandermonde(Y, n: int) -> list[list[Fraction]]:
    """Rows are nodes, columns the monomials of degree <= n in canonical order."""
    if n < 0:
        raise ValueError(f"negative degree {n}")
    mons = monomials_upto(n)
    rows = []
    for x, y in Y:
        px = [Fraction(1)]
        py = [Fraction(1)]
        for _ in range(n):
            px.append(px[-1] * x)
            py.append(py[-1] * y)
        rows.append([px[a] * py[b] for a, b in mons])
    return rows


def is_independent(Y, n: int) -> bool:
    Y = as_nodeset(Y)
    if len(Y) == 0:
        return True
    if len(Y) > dim_pi(n):
        return False
    return rank(vandermonde(Y, n)) == len(Y)


def is_poised(Y, n: int) -> bool:
    Y = as_nodeset(Y)
    return len(Y) == dim_pi(n) and rank(vandermonde(Y, n)) == len(Y)


@dataclass(frozen=True)
class LagrangeBasis:
    """Fundamental polynomials of a poised node set, in node order."""

    degree: int
    nodes: NodeSet
    polys: tuple

    def __getitem__(self, y) -> Poly:
        return self.polys[self.nodes.index(y)]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def items(self):
        return zip(self.nodes, self.polys)

    def as_dict(self) -> dict:
        return dict(self.items())

    def kronecker_ok(self) -> bool:
        """Exact check of ``l_y(y') == delta(y, y')`` for all node pairs."""
        for i, p in enumerate(self.polys):
            if p.degree > self.degree:
                return False
            for j, y in enumerate(self.nodes):
                if evaluate(p, y) != (1 if i == j else 0):
                    return False
        return True


@lru_cache(maxsize=256)
def _lagrange_polys(nodes: tuple, n: int) -> tuple:
    N = dim_pi(n)
    if len(nodes) != N:
        raise NotPoisedError(f"{len(nodes)} nodes but dim Pi_{n} = {N}; not poised")
    V = vandermonde(nodes, n)
    # solve V C = I in one elimination: C = V^{-1}
    aug = [row + [Fraction(int(i == j)) for j in range(N)] for i, row in enumerate(V)]
    R, pivots = rref(aug, N)
    if pivots != list(range(N)):
        r = sum(1 for c in pivots if c < N)
        raise NotPoisedError(f"Vandermonde matrix has rank {r} < {N} (defect {N - r}); not poised for degree {n}")
    mons = monomials_upto(n)
    # column y of the inverse holds the coefficients of l_y
    return tuple(
        Poly.from_coefficients(mons, [R[a][N + y] for a in range(N)]) for y in range(N)
    )


def lagrange_basis(Y, n: int) -> LagrangeBasis:
    Y = as_nodeset(Y)
    return LagrangeBasis(n, Y, _lagrange_polys(Y.nodes, n))


def _values_list(Y: NodeSet, values) -> list:
    if isinstance(values, Mapping):
        missing = [y for y in Y if y not in values]
        if missing:
            raise DomainError(f"missing value for node {_fmt(missing[0])}")
        return [Fraction(values[y]) for y in Y]
    vals = [Fraction(v) for v in values]
    if len(vals) != len(Y):
        raise DomainError(f"{len(vals)} values for {len(Y)} nodes")
    return vals


def interpolate(Y, n: int, values, basis: LagrangeBasis | None = None) -> Poly:
    """The interpolant in Pi_n of ``values`` (mapping node -> value or a sequence)."""
    Y = as_nodeset(Y)
    L = basis if basis is not None else lagrange_basis(Y, n)
    out = Poly()
    for v, l in zip(_values_list(Y, values), L.polys):
        if v:
            out = out + l * v
    return out


def interpolate_poly(Y, n: int, p: Poly, basis: LagrangeBasis | None = None) -> Poly:
    Y = as_nodeset(Y)
    return interpolate(Y, n, [evaluate(p, y) for y in Y], basis)


def error_operator(Y, n: int, p: Poly, basis: LagrangeBasis | None = None) -> Poly:
    """``p - L_Y[p]``; vanishes on ``Y``."""
    return p - interpolate_poly(Y, n, p, basis)


def vanishes_on(p: Poly, Y: Sequence) -> bool:
    return all(evaluate(p, y) == 0 for y in Y)
