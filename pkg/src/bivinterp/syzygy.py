"""Linear syzygies of H-bases and the syzygy matrix.

For an H-basis ``H = (h_0, ..., h_{n+1})`` of a poised ideal the linear
syzygies form an ``(n+1)``-dimensional space.  Stacking a basis gives the
``(n+1) x (n+2)`` matrix ``S`` with ``S H = 0``; its maximal minors recover
``H`` up to one scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import X1, X2, ONE, LinearForm, Poly, evaluate, monomials_upto, point
from .errors import DomainError, InternalCheckError, NotEquivalentError
from .hbasis import HBasis, basis_change
from .linalg import inverse, nullspace, poly_det, poly_rank, solve_left, SingularMatrixError

#: order of the three coefficients of a degree <= 1 entry in flattened vectors
_LINEAR = ((1, 0), (0, 1), (0, 0))


@dataclass(frozen=True)
class SyzygyMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged syzygy matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.shape[1])]

    def max_degree(self):
        return max((p.degree for r in self.rows for p in r), default=0)

    def apply(self, H: Sequence[Poly]) -> list[Poly]:
        """``S @ H``."""
        out = []
        for r in self.rows:
            acc = Poly()
            for s, h in zip(r, H):
                if s:
                    acc = acc + s * h
            out.append(acc)
        return out

    def annihilates(self, H: Sequence[Poly]) -> bool:
        return all(not p for p in self.apply(H))

    def left(self, A) -> "SyzygyMatrix":
        """``A @ S`` for a scalar matrix ``A``."""
        return SyzygyMatrix(_combine_rows(self.rows, A))

    def right(self, B) -> "SyzygyMatrix":
        """``S @ B`` for a scalar matrix ``B``."""
        ncols = len(B[0])
        out = []
        for r in self.rows:
            row = []
            for j in range(ncols):
                acc = Poly()
                for k, s in enumerate(r):
                    if s and B[k][j]:
                        acc = acc + s * B[k][j]
                row.append(acc)
            out.append(tuple(row))
        return SyzygyMatrix(tuple(out))

    def flattened(self) -> list[list[Fraction]]:
        """Each row as a coefficient vector (per entry: x1, x2, 1)."""
        return [_flatten(r) for r in self.rows]

    def to_strings(self) -> list[list[str]]:
        return [[str(p) for p in r] for r in self.rows]

    def pretty(self) -> str:
        cells = self.to_strings()
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)


def _combine_rows(rows, A):
    out = []
    for arow in A:
        row = []
        for j in range(len(rows[0])):
            acc = Poly()
            for a, r in zip(arow, rows):
                if a and r[j]:
                    acc = acc + r[j] * a
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _flatten(syz: Sequence[Poly]) -> list[Fraction]:
    out = []
    for p in syz:
        if p.degree > 1:
            raise DomainError(f"entry {p} has degree > 1")
        out.extend(p.coefficients(_LINEAR))
    return out


def _unflatten(v: Sequence[Fraction]) -> tuple:
    return tuple(
        Poly.from_coefficients(_LINEAR, v[3 * i: 3 * i + 3]) for i in range(len(v) // 3)
    )


def _elements(H) -> list[Poly]:
    return list(H.elements if isinstance(H, HBasis) else H)


def linear_syzygies(H) -> list[tuple]:
    """Basis of the degree <= 1 syzygies of ``H``, in reduced echelon form.

    Unknowns are ordered per entry as (x1, x2, 1) coefficients, entries in
    basis order; rows come out sorted by pivot position.
    """
    elements = _elements(H)
    products = []
    for h in elements:
        products.extend([X1 * h, X2 * h, h])
    top = max((int(p.degree) for p in products if p), default=0)
    mons = monomials_upto(top)
    cols = [p.coefficients(mons) for p in products]
    rows = [list(r) for r in zip(*cols)]
    basis = nullspace(rows, len(products))
    out = [_unflatten(v) for v in basis]
    for s in out:
        if not _annihilates(s, elements):
            raise InternalCheckError("computed syzygy does not annihilate the basis")
    return out


def _annihilates(syz, H) -> bool:
    acc = Poly()
    for s, h in zip(syz, H):
        if s:
            acc = acc + s * h
    return not acc


def syzygy_matrix(H) -> SyzygyMatrix:
    """Canonical linear syzygy matrix; requires exactly ``n + 1`` syzygies."""
    elements = _elements(H)
    n = H.degree if isinstance(H, HBasis) else len(elements) - 2
    syz = linear_syzygies(elements)
    if len(syz) != n + 1:
        raise DomainError(
            f"dim S_1(H) = {len(syz)}, expected {n + 1}; H is not an H-basis of a poised ideal"
        )
    return SyzygyMatrix(tuple(syz))


def rank_rational(S: SyzygyMatrix) -> int:
    """Rank over the field of rational functions."""
    return poly_rank(S.rows)


def minor(S: SyzygyMatrix, j: int) -> Poly:
    """Determinant of ``S`` with column ``j`` removed."""
    r, c = S.shape
    if c != r + 1:
        raise DomainError(f"maximal minors need an r x (r+1) matrix, got {r} x {c}")
    if not 0 <= j < c:
        raise IndexError(f"column index {j} out of range 0..{c - 1}")
    return poly_det([row[:j] + row[j + 1:] for row in S.rows])


def minors(S: SyzygyMatrix) -> list[Poly]:
    return [minor(S, j) for j in range(S.shape[1])]


def signed_minors(S: SyzygyMatrix) -> list[Poly]:
    """``(-1)^j det S_j``; annihilated by ``S`` (Laplace expansion)."""
    return [m if j % 2 == 0 else -m for j, m in enumerate(minors(S))]


@dataclass(frozen=True)
class ReconstructionResult:
    w: Fraction
    basis: HBasis


def reconstruct_hbasis(S: SyzygyMatrix, H_reference) -> ReconstructionResult:
    """Find the scalar ``w`` with ``h_j = (-1)^j w det S_j`` for every ``j``."""
    ref = _elements(H_reference)
    signed = signed_minors(S)
    if len(ref) != len(signed):
        raise DomainError(f"reference basis has {len(ref)} elements, matrix has {len(signed)} columns")
    w = None
    for h, d in zip(ref, signed):
        if d:
            m = max(d.terms, key=lambda e: (e[0] + e[1], e[0]))
            w = h.coeff(*m) / d.coeff(*m)
            break
    if not w:
        raise DomainError("no nonzero scalar w fits; matrix is not a syzygy matrix of the reference basis")
    rebuilt = [d * w for d in signed]
    if rebuilt != ref:
        raise DomainError("no single scalar w fits; matrix is not a syzygy matrix of the reference basis")
    n = len(ref) - 2
    nodes = H_reference.nodes if isinstance(H_reference, HBasis) else None
    return ReconstructionResult(w, HBasis(n, tuple(rebuilt), "reconstructed", nodes))


def equivalence_transform(S: SyzygyMatrix, S2: SyzygyMatrix):
    """Nonsingular scalar ``(A, B)`` with ``S2 == A S B``.

    ``B`` comes from the change between the H-bases recovered from the
    maximal minors, ``A`` from identifying the row spaces.  Scaled so the
    first nonzero entry of ``A`` is 1.
    """
    if S.shape != S2.shape:
        raise NotEquivalentError(f"shapes differ: {S.shape} vs {S2.shape}")
    H = signed_minors(S)
    H2 = signed_minors(S2)
    if not all(H) or not all(H2):
        raise NotEquivalentError("a maximal minor vanishes; matrix does not have full rank")
    C = basis_change(H, H2)  # H2 = C H
    try:
        B = inverse(C) if C is not None else None
    except SingularMatrixError:
        B = None
    if B is None:
        raise NotEquivalentError("the two matrices annihilate bases of different spaces")
    # S2 C annihilates H, so its rows lie in the row space of S
    S2C = S2.right(C)
    A = solve_left(S2C.flattened(), S.flattened())
    if A is None:
        raise NotEquivalentError("row spaces differ")
    try:
        inverse(A)
    except SingularMatrixError:
        raise NotEquivalentError("row transform is singular") from None
    c = next(v for row in A for v in row if v)
    A = [[v / c for v in row] for row in A]
    B = [[v * c for v in row] for row in B]
    if S.left(A).right(B).rows != S2.rows:
        raise InternalCheckError("equivalence transform failed verification")
    return A, B


# ---------------------------------------------------------------------------
# explicit syzygies of a Berzolari-Radon H-basis


def explicit_br_syzygy(ext, ti, tj) -> tuple:
    """Closed-form linear syzygy attached to the pair ``(ti, tj)`` of added points.

    Components are indexed by the added points in order.  With
    ``c_s = sum_y (d_i(y)(m(s)-m(ti)) - d_j(y)(m(s)-m(tj))) l_y(s) / k(y)``
    they read ``-k c_s`` plus ``-d_i(ti)(m - m(ti))`` at ``ti`` and
    ``+d_j(tj)(m - m(tj))`` at ``tj``.
    """
    ti, tj = point(ti), point(tj)
    T = list(ext.T)
    if ti not in T or tj not in T:
        raise DomainError("syzygy indices must be added points of the extension")
    if ti == tj:
        return tuple(Poly() for _ in T)
    k, m = ext.k, ext.m
    kp, mp = k.to_poly(), m.to_poly()
    di, dj = ext.d(ti), ext.d(tj)
    base = list(ext.base)
    weights_i = [evaluate(di, y) / k(y) for y in base]
    weights_j = [evaluate(dj, y) / k(y) for y in base]
    lvals = {s: [evaluate(l, s) for l in ext.base_basis.polys] for s in T}
    comps = []
    for s in T:
        ms = m(s)
        c = Fraction(0)
        for wi, wj, lv in zip(weights_i, weights_j, lvals[s]):
            c += (wi * (ms - m(ti)) - wj * (ms - m(tj))) * lv
        comp = kp * (-c)
        if s == ti:
            comp = comp - (mp - m(ti)) * ext.d_at(ti)
        elif s == tj:
            comp = comp + (mp - m(tj)) * ext.d_at(tj)
        comps.append(comp)
    H = [ext.basis[t] for t in T]
    if not _annihilates(comps, H):
        raise InternalCheckError("explicit syzygy does not annihilate the H-basis")
    return tuple(comps)


def br_syzygy_matrix(ext) -> SyzygyMatrix:
    """Rows ``Sigma_{t_0, t_i}``, ``i = 1..n+1``."""
    T = list(ext.T)
    return SyzygyMatrix(tuple(explicit_br_syzygy(ext, T[0], t) for t in T[1:]))


def restrict_to_line(p: Poly, k: LinearForm) -> Poly:
    """``p`` along ``k = 0``, as a polynomial in the line parameter (variable x1)."""
    if k.a2 != 0:
        base = (Fraction(0), -k.a0 / k.a2)
    else:
        base = (-k.a0 / k.a1, Fraction(0))
    s = X1
    return p.substitute(s * (-k.a2) + base[0] * ONE, s * k.a1 + base[1] * ONE)
