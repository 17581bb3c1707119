"""H-bases of vanishing ideals of poised sets, reduction and membership.

For ``Y`` poised in degree ``n`` the space ``Pi_{n+1} ∩ I(Y)`` has dimension
``n + 2`` and any basis of it is an H-basis of ``I(Y)``; reducing modulo such
a basis leaves exactly the interpolant on ``Y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .arith import Poly, LinearForm, evaluate, monomials_of_degree, monomials_upto
from .errors import DomainError, InternalCheckError, NotPoisedError
from .linalg import inverse, rank, solve_left, SingularMatrixError
from .nodes import (
    NodeSet,
    as_nodeset,
    dim_pi,
    error_operator,
    is_poised,
    lagrange_basis,
    vandermonde,
)

ORIGINS = ("br-extension", "error-monomials", "lattice", "factorizable", "reconstructed", "witness", "given")


@dataclass(frozen=True)
class HBasis:
    degree: int
    elements: tuple
    origin: str = "given"
    nodes: NodeSet | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.origin not in ORIGINS:
            raise ValueError(f"unknown origin tag {self.origin!r}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, j):
        return self.elements[j]

    @cached_property
    def _normal_form_basis(self):
        """``(W, g)`` with ``g_alpha = sum_j W[alpha][j] h_j`` and ``g_alpha - x^alpha`` in Pi_n."""
        n = self.degree
        top = monomials_of_degree(n + 1)
        C = [h.homogeneous_part(n + 1).coefficients(top) for h in self.elements]
        if len(C) != n + 2:
            raise DomainError(f"an H-basis for degree {n} has {n + 2} elements, got {len(C)}")
        try:
            W = inverse(C)
        except SingularMatrixError:
            raise DomainError("leading forms are linearly dependent; not an H-basis") from None
        g = []
        for row in W:
            acc = Poly()
            for w, h in zip(row, self.elements):
                if w:
                    acc = acc + h * w
            g.append(acc)
        return W, top, g


@dataclass(frozen=True)
class Reduction:
    coefficients: tuple
    remainder: Poly

    def recombine(self, H: HBasis) -> Poly:
        out = self.remainder
        for c, h in zip(self.coefficients, H.elements):
            out = out + c * h
        return out


def reduce(p: Poly, H: HBasis) -> Reduction:
    """Write ``p = sum_j c_j h_j + r`` with ``deg c_j <= deg p - n - 1`` and ``r`` in Pi_n.

    Cancels the whole leading form at each degree using the basis whose
    leading forms are the monomials of degree ``n + 1``.
    """
    n = H.degree
    if p.degree <= n:
        return Reduction(tuple(Poly() for _ in H.elements), p)
    W, top, g = H._normal_form_basis
    index = {a: i for i, a in enumerate(top)}
    b = [Poly() for _ in top]
    r = p
    while r.degree > n:
        mult = {}
        for (e1, e2), a in r.homogeneous_part(r.degree).terms.items():
            a1 = min(e1, n + 1)
            alpha = (a1, n + 1 - a1)
            shift = (e1 - alpha[0], e2 - alpha[1])
            mult.setdefault(alpha, {})[shift] = a
        for alpha, terms in mult.items():
            c = Poly(terms)
            i = index[alpha]
            b[i] = b[i] + c
            r = r - c * g[i]
    coeffs = []
    for j in range(len(H.elements)):
        acc = Poly()
        for i, bi in enumerate(b):
            if bi and W[i][j]:
                acc = acc + bi * W[i][j]
        coeffs.append(acc)
    return Reduction(tuple(coeffs), r)


def ideal_membership(p: Poly, Yn, n: int, H: HBasis) -> bool:
    """Reduction-based membership test, cross-checked by evaluation on ``Yn``."""
    Yn = as_nodeset(Yn)
    by_reduction = not reduce(p, H).remainder
    by_evaluation = all(evaluate(p, y) == 0 for y in Yn)
    if by_reduction != by_evaluation:
        raise InternalCheckError("reduction and evaluation disagree on ideal membership; invalid H-basis")
    return by_reduction


def _coefficient_rows(polys: Sequence[Poly], degree: int):
    mons = monomials_upto(degree)
    return [p.coefficients(mons) for p in polys]


def is_hbasis(P: Sequence[Poly], Yn, n: int) -> bool:
    """Does ``P`` lie in and span ``Pi_{n+1} ∩ I(Yn)`` for a poised ``Yn``?"""
    Yn = as_nodeset(Yn)
    P = list(P)
    if not is_poised(Yn, n):
        return False
    for p in P:
        if p.degree > n + 1:
            return False
        if any(evaluate(p, y) != 0 for y in Yn):
            return False
    space_dim = dim_pi(n + 1) - rank(vandermonde(Yn, n + 1))
    if space_dim != n + 2:
        raise InternalCheckError("dim Pi_{n+1} ∩ I(Y) != n + 2 for a poised set")
    return bool(P) and rank(_coefficient_rows(P, n + 1)) == space_dim


def _certify(H: HBasis, Yn) -> HBasis:
    if not is_hbasis(H.elements, Yn, H.degree):
        raise InternalCheckError(f"{H.origin} elements do not form an H-basis")
    return H


def hbasis_from_extension(Yn, Yn1, n: int, basis=None) -> HBasis:
    """Fundamental polynomials of ``Yn1`` at the added nodes ``Yn1 \\ Yn``."""
    Yn, Yn1 = as_nodeset(Yn), as_nodeset(Yn1)
    if not Yn.issubset(Yn1):
        raise DomainError("base set is not contained in the extended set")
    if len(Yn1) - len(Yn) != n + 2:
        raise DomainError(f"extension must add {n + 2} nodes, adds {len(Yn1) - len(Yn)}")
    if not is_poised(Yn, n):
        raise NotPoisedError(f"base set is not poised for degree {n}")
    L = basis if basis is not None else lagrange_basis(Yn1, n + 1)
    elements = [l for y, l in zip(Yn1, L.polys) if y not in Yn]
    return _certify(HBasis(n, tuple(elements), "br-extension", Yn), Yn)


def hbasis_from_br(ext) -> HBasis:
    """H-basis ``(l_{t, Y_{n+1}} : t in T)`` of a Berzolari-Radon extension."""
    return hbasis_from_extension(ext.base, ext.nodes, ext.degree, ext.basis)


def hbasis_error_monomials(Yn, n: int) -> HBasis:
    """``h_j = E[x1^(n+1-j) x2^j]`` for ``j = 0..n+1``."""
    Yn = as_nodeset(Yn)
    L = lagrange_basis(Yn, n)
    elements = tuple(
        error_operator(Yn, n, Poly.monomial(n + 1 - j, j), L) for j in range(n + 2)
    )
    return HBasis(n, elements, "error-monomials", Yn)


def basis_change(H1: Sequence[Poly], H2: Sequence[Poly]) -> list | None:
    """Scalar matrix ``M`` with ``H2[i] = sum_j M[i][j] H1[j]``, or ``None``."""
    deg = max(max((p.degree for p in H1), default=0), max((p.degree for p in H2), default=0), 0)
    X = _coefficient_rows(H2, int(deg))
    Y = _coefficient_rows(H1, int(deg))
    return solve_left(X, Y)


def _specialized_rank_ok(elements, k: LinearForm) -> bool:
    """Sufficient test: full rank after fixing ``k`` to a few rational values.

    In coordinates ``u = k, v = m`` each element is a polynomial in ``v``
    over ``Q[u]``; full rank at one specialization ``u = u0`` implies
    independence over ``Q(u)``, hence for every degree bound.
    """
    from .berzolari_radon import choose_m

    m = choose_m(k)
    D = k.a1 * m.a2 - k.a2 * m.a1
    u, v = Poly.x1() - k.a0, Poly.x2() - m.a0
    x1 = (u * m.a2 - v * k.a2) / D
    x2 = (v * k.a1 - u * m.a1) / D
    local = [h.substitute(x1, x2) for h in elements]
    top = max(int(h.degree) for h in local)
    if len(local) > top + 1:
        return False
    for u0 in range(4):
        rows = []
        for h in local:
            row = [Fraction(0)] * (top + 1)
            for (e1, e2), c in h.terms.items():
                row[e2] += c * Fraction(u0) ** e1
            rows.append(row)
        if rank(rows) == len(local):
            return True
    return False


def check_rk_independence(H: HBasis, k: LinearForm, degree_bound: int | None = None) -> bool:
    """No nontrivial ``sum_t c_t(k) h_t = 0`` with univariate ``deg c_t <= degree_bound``.

    A finite certificate: the full statement quantifies over all degrees.
    """
    elements = list(H.elements if isinstance(H, HBasis) else H)
    if degree_bound is None:
        degree_bound = H.degree + 1 if isinstance(H, HBasis) else max(int(h.degree) for h in elements)
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    if k.is_constant():
        raise DomainError("k must be nonconstant")
    if _specialized_rank_ok(elements, k):
        return True
    kp = k.to_poly()
    powers = [Poly.const(1)]
    for _ in range(degree_bound):
        powers.append(powers[-1] * kp)
    columns = [kj * h for h in elements for kj in powers]
    top = max(int(c.degree) for c in columns if c)
    rows = _coefficient_rows(columns, top)
    return rank(rows) == len(columns)
