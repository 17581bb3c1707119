import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bivinterp.arith import X1, X2, LinearForm, Poly
from bivinterp.berzolari_radon import random_br_chain
from bivinterp.errors import DomainError, NotEquivalentError
from bivinterp.hbasis import HBasis, hbasis_error_monomials, hbasis_from_br
from bivinterp.linalg import solve_left
from bivinterp.syzygy import (
    SyzygyMatrix,
    br_syzygy_matrix,
    equivalence_transform,
    explicit_br_syzygy,
    linear_syzygies,
    minor,
    minors,
    rank_rational,
    reconstruct_hbasis,
    restrict_to_line,
    signed_minors,
    syzygy_matrix,
)

from conftest import TRIANGLE

KOSZUL = SyzygyMatrix(((X2, -X1),))


def _ext(n, seed=0):
    return random_br_chain(n + 1, random.Random(f"syz:{n}:{seed}")).extensions[-1]


def _flat(row):
    return [c for p in row for c in (p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0))]


def test_koszul_example():
    H = HBasis(0, (X1, X2))
    assert linear_syzygies(H) == [(X2, -X1)]
    S = syzygy_matrix(H)
    assert S.shape == (1, 2) and S.annihilates(H.elements)
    assert rank_rational(KOSZUL) == 1
    assert minor(KOSZUL, 0) == -X1 and minor(KOSZUL, 1) == X2
    assert reconstruct_hbasis(KOSZUL, H).w == -1


def test_triangle_has_two_syzygies():
    H = hbasis_error_monomials(TRIANGLE, 1)
    syz = linear_syzygies(H)
    assert len(syz) == 2
    assert all(SyzygyMatrix((s,)).annihilates(H.elements) for s in syz)


@pytest.mark.parametrize("n", range(1, 7))
def test_syzygy_count_for_br_sets(n):
    H = hbasis_from_br(_ext(n))
    assert len(linear_syzygies(H)) == n + 1


def test_syzygy_matrix_rejects_bad_count():
    with pytest.raises(DomainError):
        syzygy_matrix(HBasis(1, (X1, X2, X1)))


def test_rank_examples():
    assert rank_rational(SyzygyMatrix(((X2, -X1), (X2, -X1)))) == 1
    S = br_syzygy_matrix(_ext(3))
    assert rank_rational(S) == 4


def test_minor_errors_and_deficient_rank():
    with pytest.raises(IndexError):
        minor(KOSZUL, 2)
    dup = SyzygyMatrix(((X1, X2, X1 + 1), (X1, X2, X1 + 1)))
    assert all(not m for m in minors(dup))


def test_explicit_syzygy_identities():
    ext = _ext(2, 1)
    t0, t1, t2 = ext.T[:3]
    zero = explicit_br_syzygy(ext, t1, t1)
    assert all(not p for p in zero)
    a, b = explicit_br_syzygy(ext, t0, t1), explicit_br_syzygy(ext, t1, t0)
    assert all(x == -y for x, y in zip(a, b))
    c01, c12, c02 = (explicit_br_syzygy(ext, *pair) for pair in ((t0, t1), (t1, t2), (t0, t2)))
    assert all(x + y == z for x, y, z in zip(c01, c12, c02))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_explicit_rows_in_span(n):
    ext = _ext(n, 2)
    S = br_syzygy_matrix(ext)
    basis = [_flat(r) for r in linear_syzygies(hbasis_from_br(ext))]
    assert solve_left([_flat(r) for r in S.rows], basis) is not None
    assert rank_rational(S) == n + 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_restriction_to_line_is_diagonal(n):
    ext = _ext(n, 3)
    S = br_syzygy_matrix(ext)
    T = list(ext.T)
    m = ext.m.to_poly()
    for i, row in enumerate(S.rows, start=1):
        for j in range(1, n + 2):
            got = restrict_to_line(row[j], ext.k)
            if i == j:
                expected = restrict_to_line((m - ext.m(T[i])) * ext.d_at(T[i]), ext.k)
                assert got == expected and got
            else:
                assert not got


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_br_reconstruction_scalar(n):
    ext = _ext(n, 4)
    H = hbasis_from_br(ext)
    res = reconstruct_hbasis(br_syzygy_matrix(ext), H)
    prod = Fraction(1)
    for t in ext.T:
        prod *= ext.d_at(t)
    assert res.w == 1 / prod
    assert res.basis.elements == H.elements


@pytest.mark.parametrize("n", range(1, 6))
def test_reconstruction_from_canonical_matrix(n):
    H = hbasis_error_monomials(_ext(n, 5).base, n)
    S = syzygy_matrix(H)
    res = reconstruct_hbasis(S, H)
    assert res.w != 0 and res.basis.elements == H.elements
    for m in minors(S):
        assert m.degree == n + 1


def test_row_scaling_scales_w():
    H = hbasis_error_monomials(TRIANGLE, 1)
    S = syzygy_matrix(H)
    w = reconstruct_hbasis(S, H).w
    doubled = SyzygyMatrix((tuple(2 * p for p in S.rows[0]),) + S.rows[1:])
    assert reconstruct_hbasis(doubled, H).w == w / 2


def test_reconstruction_rejects_foreign_basis():
    H = hbasis_error_monomials(TRIANGLE, 1)
    other = hbasis_error_monomials([(0, 0), (2, 0), (0, 3)], 1)
    with pytest.raises(DomainError):
        reconstruct_hbasis(syzygy_matrix(H), other)


def test_equivalence_identity_and_permutation():
    S = syzygy_matrix(hbasis_error_monomials(TRIANGLE, 1))
    A, B = equivalence_transform(S, S)
    assert A == [[1, 0], [0, 1]] and B == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    P = SyzygyMatrix((S.rows[1], S.rows[0]))
    A, B = equivalence_transform(S, P)
    assert A == [[0, 1], [1, 0]] and B == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize("n", [2, 3])
def test_equivalence_between_bases(n):
    ext = _ext(n, 6)
    S_br = br_syzygy_matrix(ext)
    S_em = syzygy_matrix(hbasis_error_monomials(ext.base, n))
    A, B = equivalence_transform(S_em, S_br)
    assert S_em.left(A).right(B) == S_br
    assert next(v for row in A for v in row if v) == 1


def test_not_equivalent():
    S = syzygy_matrix(hbasis_error_monomials(TRIANGLE, 1))
    S2 = syzygy_matrix(hbasis_error_monomials([(0, 0), (2, 0), (0, 3)], 1))
    with pytest.raises(NotEquivalentError):
        equivalence_transform(S, S2)
    with pytest.raises(NotEquivalentError):
        equivalence_transform(S, KOSZUL)


@given(st.integers(0, 10**6))
def test_signed_minors_annihilated(seed):
    n = seed % 3 + 1
    H = hbasis_error_monomials(_ext(n, seed % 7).base, n)
    S = syzygy_matrix(H)
    assert S.annihilates(signed_minors(S))
