"""Maximal lines: a geometric oracle, detection from syzygy columns, and the
witness construction that exhibits a maximal line as a column ``k(x) e_{n+1}``.

A line is maximal for a set poised in degree ``n`` when it carries ``n + 1``
of its nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .arith import ONE, LinearForm, Poly, linear_factors
from .berzolari_radon import BRStep, br_extend, choose_m
from .errors import ConfigurationError, DomainError, InternalCheckError, NotPoisedError
from .hbasis import HBasis, basis_change, is_hbasis
from .linalg import SingularMatrixError, inverse, solve_left
from .nodes import NodeSet, as_nodeset, is_poised, lagrange_basis
from .syzygy import SyzygyMatrix, explicit_br_syzygy, rank_rational, signed_minors


@dataclass(frozen=True)
class LineIncidence:
    line: LinearForm
    nodes_on_line: NodeSet
    count: int

    def __post_init__(self):
        if self.count != len(self.nodes_on_line):
            raise ValueError("count does not match the listed nodes")
        for y in self.nodes_on_line:
            if self.line(y) != 0:
                raise ValueError(f"node {y} is not on {self.line}")


def _collinear_groups(Y: NodeSet) -> list[tuple]:
    """Index tuples of the maximal collinear subsets of size >= 2."""
    out = []
    N = len(Y)
    for i in range(N):
        xi, yi = Y[i]
        groups: dict = {}
        for j in range(N):
            if j != i:
                dx, dy = Y[j][0] - xi, Y[j][1] - yi
                groups.setdefault(dy / dx if dx else None, []).append(j)
        for js in groups.values():
            # report each line once, from its smallest node index
            if js[0] > i:
                out.append((i, *js))
    return out


def line_incidences(Y) -> list[LineIncidence]:
    """Every line through at least two nodes, with its incident nodes."""
    Y = as_nodeset(Y)
    out = []
    for idx in _collinear_groups(Y):
        k = LinearForm.through(Y[idx[0]], Y[idx[1]]).normalized()
        out.append(LineIncidence(k, NodeSet(Y[i] for i in idx), len(idx)))
    out.sort(key=lambda inc: inc.line.key())
    return out


def geometric_maximal_lines(Y, n: int) -> list[LineIncidence]:
    Y = as_nodeset(Y)
    out = []
    for idx in _collinear_groups(Y):
        if len(idx) == n + 1:
            k = LinearForm.through(Y[idx[0]], Y[idx[1]]).normalized()
            out.append(LineIncidence(k, NodeSet(Y[i] for i in idx), len(idx)))
    out.sort(key=lambda inc: inc.line.key())
    return out


def _common_line(entries: Sequence[Poly]) -> LinearForm | None:
    nonzero = [p for p in entries if p]
    if not nonzero or nonzero[0].degree != 1:
        return None
    k = LinearForm.from_poly(nonzero[0]).normalized()
    if k.is_constant():
        return None
    kp = k.to_poly()
    for p in nonzero:
        if p.degree != 1:
            return None
        # k is normalized, so its first nonzero coefficient fixes the scale
        lf = LinearForm.from_poly(p)
        c = next(v for v in lf.key() if v)
        if p != kp * c:
            return None
    return k


def column_line_detect(S: SyzygyMatrix) -> list[tuple]:
    """Columns of the shape ``k(x) v`` with ``k`` nonconstant, as ``(j, k)``."""
    out = []
    for j, col in enumerate(S.columns()):
        k = _common_line(col)
        if k is not None:
            out.append((j, k))
    return out


def _split_on_line(Yn: NodeSet, n: int, K: LinearForm):
    on = [y for y in Yn if K(y) == 0]
    if len(on) != n + 1:
        raise ConfigurationError(f"line {K} = 0 carries {len(on)} nodes, a maximal line needs {n + 1}")
    return Yn.minus(on), NodeSet(on)


def witness_matrix(Yn, n: int, K: LinearForm):
    """H-basis ``g`` of ``I(Yn)`` and its syzygy matrix with last column ``k e_{n+1}``.

    With ``T = Yn ∩ K`` (in node order) and ``h_t`` the fundamental
    polynomials of ``Yn``: ``g_j = k h_{t_j}``, ``g_{n+1} = -(m - m(t_0)) h_{t_0}``.
    """
    Yn = as_nodeset(Yn)
    if K.is_constant():
        raise ConfigurationError("k must be nonconstant")
    if not is_poised(Yn, n):
        raise NotPoisedError(f"node set is not poised for degree {n}")
    rest, T = _split_on_line(Yn, n, K)
    m = choose_m(K)
    kp, mp = K.to_poly(), m.to_poly()
    t0 = T[0]
    if n == 0:
        h = {t0: ONE}
        rows = []
    else:
        ext = br_extend(rest, n - 1, BRStep(K, T, m))
        h = {t: ext.basis[t] for t in T}
        rows = [explicit_br_syzygy(ext, t0, t) + (Poly(),) for t in T[1:]]
    last = [Poly() for _ in range(n + 2)]
    last[0] = mp - m(t0)
    last[n + 1] = kp
    rows.append(tuple(last))
    g = [kp * h[t] for t in T] + [-(mp - m(t0)) * h[t0]]
    G = HBasis(n, tuple(g), "witness", Yn)
    W = SyzygyMatrix(tuple(rows))
    if not W.annihilates(g):
        raise InternalCheckError("witness matrix does not annihilate its basis")
    if not is_hbasis(g, Yn, n):
        raise InternalCheckError("witness polynomials are not an H-basis")
    return G, W


@dataclass(frozen=True)
class ColumnTransform:
    """``S B`` has column ``column`` equal to ``line * v``; ``A S B`` turns it into ``line * e_{n+1}``."""

    B: list
    column: int
    line: LinearForm
    A: list


def transform_search(S: SyzygyMatrix, Y, n: int) -> list[ColumnTransform]:
    """Realize every geometric maximal line of ``Y`` as a column of a transformed ``S``."""
    Y = as_nodeset(Y)
    r, c = S.shape
    if (r, c) != (n + 1, n + 2) or rank_rational(S) != n + 1:
        raise DomainError(f"expected a {n + 1} x {n + 2} syzygy matrix of rank {n + 1}")
    H = signed_minors(S)
    out = []
    for inc in geometric_maximal_lines(Y, n):
        G, W = witness_matrix(Y, n, inc.line)
        M = basis_change(H, G.elements)  # G = M H
        try:
            B = inverse(M) if M is not None else None
        except SingularMatrixError:
            B = None
        if B is None:
            raise InternalCheckError(f"witness basis for {inc.line} does not span the ideal of S")
        # W M annihilates H, so W M = A0 S; then A S B = W with A = A0
        A = solve_left(W.right(M).flattened(), S.flattened())
        if A is None:
            raise InternalCheckError("witness rows are not in the row space of S")
        SB = S.right(B)
        if S.left(A).right(B).rows != W.rows:
            raise InternalCheckError("transform verification failed")
        j = n + 1
        k = _common_line(SB.column(j))
        if k != inc.line.normalized():
            raise InternalCheckError(f"column {j} of S B is not a multiple of {inc.line}")
        out.append(ColumnTransform(B, j, k, A))
    return out


def is_gc_set(Y, n: int, certificate: Mapping | None = None) -> bool:
    """Does every fundamental polynomial split into ``n`` rational linear factors?

    ``certificate`` optionally maps each node to ``n`` lines whose product
    vanishes on all other nodes but not on the node itself; for a poised set
    that product is a multiple of the fundamental polynomial, so checking
    it by evaluation settles the question without factoring.
    """
    Y = as_nodeset(Y)
    if not is_poised(Y, n):
        raise NotPoisedError(f"node set is not poised for degree {n}")
    if certificate is not None:
        return _check_certificate(Y, n, certificate)
    L = lagrange_basis(Y, n)
    for l in L.polys:
        f = linear_factors(l)
        if not f.complete or len(f.factors) != n:
            return False
    return True


def _check_certificate(Y: NodeSet, n: int, certificate: Mapping) -> bool:
    zeros: dict = {}
    for y in Y:
        lines = certificate.get(y)
        if lines is None or len(lines) != n:
            return False
        hit = set()
        for k in lines:
            z = zeros.get(k)
            if z is None:
                z = zeros[k] = frozenset(i for i, x in enumerate(Y) if k(x) == 0)
            hit |= z
        # the product must vanish exactly on the other nodes
        if len(hit) != len(Y) - 1 or Y.index(y) in hit:
            return False
    return True


def gasca_maeztu_sweep(*args, **kwargs):
    from .sweep import gasca_maeztu_sweep as run

    return run(*args, **kwargs)
