"""GC configurations: natural lattices, generalized principal lattices, a
line-cover family grown by Berzolari-Radon steps, and factorizable H-bases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .arith import ONE, LinearForm, Poly, evaluate, intersect, linear_factors, monomials_upto, point
from .berzolari_radon import random_line, random_rational
from .errors import ConfigurationError, DomainError, InternalCheckError, NotPoisedError
from .hbasis import HBasis, is_hbasis
from .linalg import inverse, rank, SingularMatrixError
from .maximal_line import geometric_maximal_lines
from .nodes import LagrangeBasis, NodeSet, as_nodeset, is_poised, lagrange_basis
from .syzygy import SyzygyMatrix


def _as_line(k) -> LinearForm:
    if isinstance(k, LinearForm):
        return k
    return LinearForm(*k)


def _line_product(lines, at=None) -> Poly:
    out = ONE
    for k in lines:
        out = out * (k.to_poly() if at is None else k.to_poly() / k(at))
    return out


def _cross_check(L: LagrangeBasis) -> LagrangeBasis:
    if L.polys != lagrange_basis(L.nodes, L.degree).polys:
        raise InternalCheckError("closed-form fundamental polynomials disagree with the linear solve")
    return L


# ---------------------------------------------------------------------------
# natural lattices


@dataclass(frozen=True)
class NaturalLatticeSpec:
    lines: tuple
    extension: LinearForm | None = None

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(_as_line(k) for k in self.lines))
        if self.extension is not None:
            object.__setattr__(self, "extension", _as_line(self.extension))
        for k in self.lines:
            if k.is_constant():
                raise ConfigurationError(f"line {k} is constant")

    @property
    def degree(self) -> int:
        return len(self.lines) - 2


def _natural_nodes(lines: Sequence[LinearForm]) -> dict:
    nodes = {}
    seen = {}
    for i, j in combinations(range(len(lines)), 2):
        x = intersect(lines[i], lines[j])
        if x is None:
            raise ConfigurationError(f"lines K_{i} and K_{j} are parallel")
        if x in seen:
            a, b = seen[x]
            raise ConfigurationError(f"K_{i} ∩ K_{j} coincides with K_{a} ∩ K_{b}: lines not in general position")
        seen[x] = (i, j)
        nodes[(i, j)] = x
    return nodes


def _check_count(spec_lines, n):
    if n < 0 or len(spec_lines) != n + 2:
        raise ConfigurationError(f"degree {n} needs {n + 2} lines, got {len(spec_lines)}")


def natural_lattice_nodes(spec: NaturalLatticeSpec, n: int) -> NodeSet:
    """Nodes ``x_ij = K_i ∩ K_j``, ``i < j``, in lexicographic order of ``(i, j)``."""
    _check_count(spec.lines, n)
    return NodeSet(_natural_nodes(spec.lines).values())


def natural_lattice_certificate(spec: NaturalLatticeSpec, n: int) -> dict:
    """Lines whose product is a multiple of ``l_ij``: all ``K_r``, ``r != i, j``."""
    _check_count(spec.lines, n)
    out = {}
    for (i, j), x in _natural_nodes(spec.lines).items():
        out[x] = [k for r, k in enumerate(spec.lines) if r not in (i, j)]
    return out


def natural_lattice(spec: NaturalLatticeSpec, n: int):
    _check_count(spec.lines, n)
    nodes = _natural_nodes(spec.lines)
    Y = NodeSet(nodes.values())
    polys = []
    for (i, j), x in nodes.items():
        polys.append(_line_product([k for r, k in enumerate(spec.lines) if r not in (i, j)], x))
    return Y, _cross_check(LagrangeBasis(n, Y, tuple(polys)))


def natural_lattice_hbasis(spec: NaturalLatticeSpec, n: int) -> HBasis:
    """``h_i = prod_{r != i} k_r``, ``i = 0..n+1``."""
    _check_count(spec.lines, n)
    Y = natural_lattice_nodes(spec, n)
    K = spec.extension
    if K is not None:
        ext_nodes = _natural_nodes(spec.lines + (K,))
        if len(ext_nodes) != len(Y) + n + 2:
            raise InternalCheckError("extension line produced the wrong number of nodes")
    elements = tuple(
        _line_product([k for r, k in enumerate(spec.lines) if r != i]) for i in range(n + 2)
    )
    H = HBasis(n, elements, "lattice", Y)
    if not is_hbasis(elements, Y, n):
        raise InternalCheckError("natural lattice products are not an H-basis")
    return H


def natural_lattice_pattern(spec: NaturalLatticeSpec, n: int) -> SyzygyMatrix:
    """Rows ``k_0 e_0 - k_j e_j``, ``j = 1..n+1``."""
    _check_count(spec.lines, n)
    rows = []
    for j in range(1, n + 2):
        row = [Poly() for _ in range(n + 2)]
        row[0] = spec.lines[0].to_poly()
        row[j] = -spec.lines[j].to_poly()
        rows.append(tuple(row))
    return SyzygyMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# generalized principal lattices


@dataclass(frozen=True)
class GPLSpec:
    pencils: tuple

    def __post_init__(self):
        pencils = tuple(tuple(_as_line(k) for k in p) for p in self.pencils)
        if len(pencils) != 3:
            raise ConfigurationError(f"need three pencils, got {len(pencils)}")
        object.__setattr__(self, "pencils", pencils)

    def line(self, i: int, j: int) -> LinearForm:
        return self.pencils[j][i]


def multi_indices(n: int) -> list[tuple]:
    """``beta`` with ``|beta| = n``, ordered by ``(beta0, beta1)``."""
    return [(b0, b1, n - b0 - b1) for b0 in range(n + 1) for b1 in range(n + 1 - b0)]


def _gpl_nodes(spec: GPLSpec, n: int) -> dict:
    for j, p in enumerate(spec.pencils):
        if len(p) < n + 1:
            raise ConfigurationError(f"pencil {j} has {len(p)} lines, degree {n} needs {n + 1}")
    nodes = {}
    seen = {}
    for beta in multi_indices(n):
        k0, k1, k2 = (spec.line(beta[j], j) for j in range(3))
        x = intersect(k0, k1)
        if x is None or k2(x) != 0:
            raise ConfigurationError(f"lines for beta = {beta} do not meet in a single point")
        if x in seen:
            raise ConfigurationError(f"x_beta for beta = {beta} coincides with beta = {seen[x]}")
        seen[x] = beta
        nodes[beta] = x
    return nodes


def _gpl_factor_lines(spec: GPLSpec, beta) -> list:
    return [spec.line(g, j) for j in range(3) for g in range(beta[j])]


def gpl_nodes(spec: GPLSpec, n: int) -> NodeSet:
    return NodeSet(_gpl_nodes(spec, n).values())


def gpl_certificate(spec: GPLSpec, n: int) -> dict:
    return {x: _gpl_factor_lines(spec, beta) for beta, x in _gpl_nodes(spec, n).items()}


def generalized_principal_lattice(spec: GPLSpec, n: int):
    nodes = _gpl_nodes(spec, n)
    Y = NodeSet(nodes.values())
    polys = tuple(_line_product(_gpl_factor_lines(spec, beta), x) for beta, x in nodes.items())
    return Y, _cross_check(LagrangeBasis(n, Y, polys))


def _used_pencils(omitted: int):
    if omitted not in (0, 1, 2):
        raise ValueError(f"omitted pencil must be 0, 1 or 2, got {omitted}")
    return tuple(j for j in range(3) if j != omitted)


def gpl_hbasis(spec: GPLSpec, n: int, omitted_pencil: int = 0) -> HBasis:
    """``h_j = prod_{g < j} k_{g,a} prod_{g < n+1-j} k_{g,b}``, ``{a, b}`` the used pencils."""
    a, b = _used_pencils(omitted_pencil)
    Y = gpl_nodes(spec, n)
    elements = tuple(
        _line_product([spec.line(g, a) for g in range(j)] + [spec.line(g, b) for g in range(n + 1 - j)])
        for j in range(n + 2)
    )
    if not is_hbasis(elements, Y, n):
        raise InternalCheckError("principal lattice products are not an H-basis")
    return HBasis(n, elements, "lattice", Y)


def gpl_pattern(spec: GPLSpec, n: int, omitted_pencil: int = 0) -> SyzygyMatrix:
    """Bidiagonal rows ``k_{j,a} e_j - k_{n-j,b} e_{j+1}``, ``j = 0..n``."""
    a, b = _used_pencils(omitted_pencil)
    rows = []
    for j in range(n + 1):
        row = [Poly() for _ in range(n + 2)]
        row[j] = spec.line(j, a).to_poly()
        row[j + 1] = -spec.line(n - j, b).to_poly()
        rows.append(tuple(row))
    return SyzygyMatrix(tuple(rows))


def principal_lattice_spec(n: int) -> GPLSpec:
    """``x1 + x2 = (n-i)/n``, ``x1 = i/n``, ``x2 = i/n``; nodes ``(beta1/n, beta2/n)``."""
    if n < 1:
        raise ConfigurationError("principal lattice needs degree >= 1")
    return GPLSpec((
        tuple(LinearForm(-Fraction(n - i, n), 1, 1) for i in range(n + 1)),
        tuple(LinearForm(-Fraction(i, n), 1, 0) for i in range(n + 1)),
        tuple(LinearForm(-Fraction(i, n), 0, 1) for i in range(n + 1)),
    ))


# ---------------------------------------------------------------------------
# random generators


def random_natural_lattice(n: int, rng: random.Random, with_extension: bool = True) -> NaturalLatticeSpec:
    while True:
        lines = [random_line(rng) for _ in range(n + 2 + int(with_extension))]
        try:
            _natural_nodes(lines)
        except ConfigurationError:
            continue
        if with_extension:
            return NaturalLatticeSpec(tuple(lines[:-1]), lines[-1])
        return NaturalLatticeSpec(tuple(lines))


def _random_projectivity(rng: random.Random):
    while True:
        P = [[Fraction(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        P[0][0] += 8  # keep the affine chart mostly in view
        try:
            return P, inverse(P)
        except SingularMatrixError:
            continue


def _map_line(k: LinearForm, Pinv) -> LinearForm | None:
    a = (k.a0, k.a1, k.a2)
    b = [sum(a[r] * Pinv[r][c] for r in range(3)) for c in range(3)]
    out = LinearForm(*b)
    return None if out.is_constant() else out


def random_gpl(n: int, rng: random.Random, max_tries: int = 1000) -> GPLSpec:
    """Projective image of the principal lattice; incidences are preserved."""
    base = principal_lattice_spec(n)
    for _ in range(max_tries):
        P, Pinv = _random_projectivity(rng)
        pencils = []
        for pencil in base.pencils:
            mapped = [_map_line(k, Pinv) for k in pencil]
            if any(k is None for k in mapped):
                break
            pencils.append(tuple(mapped))
        else:
            spec = GPLSpec(tuple(pencils))
            try:
                _gpl_nodes(spec, n)
            except ConfigurationError:
                continue
            return spec
    raise InternalCheckError("no admissible projectivity found")


@dataclass(frozen=True)
class CoverFamily:
    """Poised set covered by ``n + 1`` lines, each with one node on no other cover line."""

    degree: int
    nodes: NodeSet
    cover: tuple
    private: tuple
    certificate: dict


def _cover_certificate(nodes: NodeSet, cover, private) -> dict:
    cert = {}
    for y in nodes:
        on = [r for r, k in enumerate(cover) if k(y) == 0]
        others = [k for r, k in enumerate(cover) if r not in on]
        if len(on) == 1:
            cert[y] = others
        elif len(on) == 2:
            a, b = on
            cert[y] = others + [LinearForm.through(private[a], private[b])]
        else:
            raise InternalCheckError("node lies on three cover lines")
    return cert


def random_cover_family(n: int, rng: random.Random, start: int | None = None) -> CoverFamily:
    """Natural lattice of degree ``start`` grown to degree ``n`` by Berzolari-Radon steps.

    Each step adds a line ``K`` avoiding all nodes together with its
    intersections with the cover lines and one further point of ``K``; ``K``
    then joins the cover and that extra point is its private node.
    """
    if start is None:
        start = rng.randint(0, max(0, n - 1))
    start = min(start, n)
    spec = random_natural_lattice(start, rng, with_extension=False)
    lines = spec.lines
    nodes = list(natural_lattice_nodes(spec, start))
    cover = list(lines[:-1])
    private = [intersect(k, lines[-1]) for k in cover]
    for _ in range(start, n):
        while True:
            K = random_line(rng, nodes)
            T = [intersect(K, M) for M in cover]
            if any(t is None for t in T) or len(set(T)) != len(T):
                continue
            base = T[0]
            direction = (-K.a2, K.a1)
            s = random_rational(rng)
            extra = (base[0] + s * direction[0], base[1] + s * direction[1])
            if extra in T:
                continue
            break
        nodes.extend(T + [extra])
        cover.append(K)
        private.append(extra)
    Y = NodeSet(nodes)
    return CoverFamily(n, Y, tuple(cover), tuple(private), _cover_certificate(Y, cover, private))


# ---------------------------------------------------------------------------
# factorizable H-bases


def _grid_points(center, step: Fraction, rings: int):
    cx, cy = center
    yield (cx, cy)
    for r in range(1, rings + 1):
        for i in range(-r, r + 1):
            for j in range(-r, r + 1):
                if max(abs(i), abs(j)) == r:
                    yield (cx + i * step, cy + j * step)


def choose_z(L: LagrangeBasis, step: Fraction = Fraction(1, 13), rings: int = 50):
    """First grid point outward from the centroid where no ``l_y`` vanishes."""
    Y = L.nodes
    center = (sum(y[0] for y in Y) / len(Y), sum(y[1] for y in Y) / len(Y))
    for z in _grid_points(center, step, rings):
        if all(evaluate(l, z) != 0 for l in L.polys):
            return z
    raise DomainError("no admissible normalization point z found on the search grid")


def factorizable_hbasis(Y, n: int, Yprev=None, z=None) -> HBasis:
    """H-basis of ``I(Y)`` made of products of linear polynomials, for a GC set ``Y``.

    Candidates ``m l_t`` (``t`` in ``Y \\ Yprev``, ``m`` a normalized factor of
    some fundamental polynomial with ``m(t) = 0``) are scanned in a fixed
    order and kept while they enlarge the span.
    """
    Y = as_nodeset(Y)
    if n < 1:
        raise DomainError("factorizable H-basis needs degree >= 1")
    if not is_poised(Y, n):
        raise NotPoisedError(f"node set is not poised for degree {n}")
    L = lagrange_basis(Y, n)
    if z is None:
        z = choose_z(L)
    else:
        z = point(z)
        if any(evaluate(l, z) == 0 for l in L.polys):
            raise DomainError("some fundamental polynomial vanishes at z")
    factor_set = set()
    for y, l in L.items():
        f = linear_factors(l, z)
        if not f.complete or len(f.factors) != n:
            raise DomainError(f"fundamental polynomial of node {y} does not split into linear factors; not GC")
        factor_set.update(f.factors)
    factors = sorted(factor_set, key=LinearForm.key)
    if Yprev is None:
        lines = geometric_maximal_lines(Y, n)
        if not lines:
            raise DomainError("no maximal line to split off; pass Yprev explicitly")
        Yprev = Y.minus(lines[0].nodes_on_line)
    Yprev = as_nodeset(Yprev)
    if not Yprev.issubset(Y) or not is_poised(Yprev, n - 1):
        raise DomainError(f"Yprev must be a subset of Y poised for degree {n - 1}")
    T = [t for t in Y if t not in Yprev]
    mons = monomials_upto(n + 1)
    chosen: list = []
    rows: list = []
    for t in T:
        lt = L[t]
        local = []
        for m in factors:
            if m(t) != 0:
                continue
            cand = m.to_poly() * lt
            local.append(cand.coefficients(mons))
            if len(chosen) < n + 2:
                row = cand.coefficients(mons)
                if rank(rows + [row]) > len(rows):
                    rows.append(row)
                    chosen.append(cand)
        if len(local) < 2 or rank(local) < 2:
            raise InternalCheckError(f"fewer than two independent vanishing lines at node {t}")
    if len(chosen) != n + 2:
        raise InternalCheckError(f"candidates span dimension {len(chosen)}, expected {n + 2}")
    if not is_hbasis(chosen, Y, n):
        raise InternalCheckError("selected candidates are not an H-basis")
    return HBasis(n, tuple(chosen), "factorizable", Y)
