import itertools
import random

import pytest

from singerlab import (Matrix, Poly, Subspace, char_poly, common_fixed_space,
                       companion, enumerate_gl, enumerate_subspaces,
                       fixed_space, kernel, make_field, matrix_order,
                       stabilizes)
from singerlab.matrix import kernel_of_rows

from conftest import gaussian_binomial


def char_poly_cofactor(a):
    """Oracle: det(xI - A) by cofactor expansion over the polynomial ring."""
    n, field = a.n, a.field
    x = Poly.x(field)
    entries = [[x - Poly(field, (a[i, j],)) if i == j else -Poly(field, (a[i, j],))
                for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if len(cols) == 1:
            return rows[0][cols[0]]
        total = Poly.zero(field)
        for pos, c in enumerate(cols):
            minor = det(rows[1:], cols[:pos] + cols[pos + 1:])
            term = rows[0][c] * minor
            total = total + term if pos % 2 == 0 else total - term
        return total

    return det(entries, tuple(range(n)))


def naive_order(a, cap):
    acc = a
    for m in range(1, cap + 1):
        if acc.is_identity:
            return m
        acc = acc @ a
    raise AssertionError("order exceeded cap")


def test_mat_ops_examples(f3, f5):
    assert Matrix.from_text(f5, "3,0;0,4").det() == 2
    eye = Matrix.identity(f5, 2)
    assert eye.inverse() == eye
    c = Matrix.from_text(f3, "0,1;1,2")
    assert (c**8).is_identity and not (c**4).is_identity


def test_inverse_roundtrip_and_errors(f5):
    rng = random.Random(11)
    for _ in range(40):
        m = Matrix(f5, 3, [rng.randrange(5) for _ in range(9)])
        if m.det() == 0:
            with pytest.raises(ZeroDivisionError):
                m.inverse()
        else:
            assert (m @ m.inverse()).is_identity
            assert m ** -1 == m.inverse()


def test_matmul_associative_random(f4):
    rng = random.Random(5)
    mats = []
    while len(mats) < 6:
        m = Matrix(f4, 2, [rng.randrange(4) for _ in range(4)])
        mats.append(m)
    for a, b, c in itertools.permutations(mats, 3):
        assert (a @ b) @ c == a @ (b @ c)


def test_det_multiplicative(f3, f5):
    rng = random.Random(3)
    for field, n in [(f3, 3), (f5, 2)]:
        for _ in range(30):
            a = Matrix(field, n, [rng.randrange(field.q) for _ in range(n * n)])
            b = Matrix(field, n, [rng.randrange(field.q) for _ in range(n * n)])
            assert (a @ b).det() == field.mul(a.det(), b.det())


def test_char_poly_examples(f3, f5):
    assert char_poly(companion(Poly.from_text(f3, "2,1,1"))).to_text() == "2,1,1"
    assert char_poly(Matrix.identity(f3, 2)).to_text() == "1,1,1"  # (x-1)^2
    assert char_poly(Matrix.from_text(f5, "3,0;0,4")).to_text() == "2,3,1"


def test_char_poly_against_cofactor_oracle(f2, f3, f5):
    for m in itertools.product(range(3), repeat=4):
        a = Matrix(f3, 2, m)
        assert char_poly(a) == char_poly_cofactor(a)
    for m in itertools.product(range(2), repeat=9):
        a = Matrix(f2, 3, m)
        assert char_poly(a) == char_poly_cofactor(a)
    rng = random.Random(17)
    for _ in range(120):
        a = Matrix(f5, 3, [rng.randrange(5) for _ in range(9)])
        assert char_poly(a) == char_poly_cofactor(a)
    for _ in range(40):
        a = Matrix(f2, 4, [rng.randrange(2) for _ in range(16)])
        assert char_poly(a) == char_poly_cofactor(a)


def test_char_poly_extension_field(f4):
    rng = random.Random(23)
    for _ in range(60):
        a = Matrix(f4, 2, [rng.randrange(4) for _ in range(4)])
        assert char_poly(a) == char_poly_cofactor(a)


def test_char_poly_similarity_invariant(f5):
    rng = random.Random(29)
    for _ in range(25):
        a = Matrix(f5, 3, [rng.randrange(5) for _ in range(9)])
        while True:
            p = Matrix(f5, 3, [rng.randrange(5) for _ in range(9)])
            if p.det() != 0:
                break
        assert char_poly(p @ a @ p.inverse()) == char_poly(a)


def test_kernel_examples(f5):
    assert kernel(Matrix.identity(f5, 2)).dim == 0
    assert kernel(Matrix(f5, 2, [0, 0, 0, 0])).is_full
    k = kernel(Matrix.from_text(f5, "0,0;4,4"))
    assert k.basis == ((1, 4),)


def test_fixed_space_examples(f3, f5):
    assert fixed_space(Matrix.from_text(f5, "2,2;2,0")).basis == ((1, 2),)
    assert fixed_space(Matrix.from_text(f5, "0,2;4,3")).basis == ((1, 3),)
    singer = Matrix.from_text(f3, "0,1;1,2")
    assert fixed_space(singer).is_zero


def test_fix_dim_plus_rank_identity(f3):
    for g in enumerate_gl(2, f3):
        n_minus_rank = kernel_of_rows(
            f3, [[f3.sub(g[i, j], 1 if i == j else 0) for j in range(2)] for i in range(2)], 2).dim
        assert fixed_space(g).dim == n_minus_rank


def test_stabilizes(f3, f5):
    a = Matrix.from_text(f5, "3,0;0,4")
    assert stabilizes(a, Subspace.zero(f5, 2))
    assert stabilizes(a, Subspace.full(f5, 2))
    assert stabilizes(a, Subspace.from_vectors(f5, 2, [(1, 0)]))
    singer = Matrix.from_text(f3, "0,1;1,2")
    lines = list(enumerate_subspaces(2, f3, 1))
    assert len(lines) == 4
    assert not any(stabilizes(singer, line) for line in lines)


def test_subspace_canonical_under_row_ops(f5):
    rng = random.Random(41)
    for _ in range(40):
        vecs = [[rng.randrange(5) for _ in range(4)] for _ in range(2)]
        s1 = Subspace.from_vectors(f5, 4, vecs)
        # random invertible combinations of the same rows
        a, b, c, d = rng.randrange(1, 5), rng.randrange(5), rng.randrange(5), rng.randrange(1, 5)
        if (a * d - b * c) % 5 == 0:
            continue
        mixed = [[(a * x + b * y) % 5 for x, y in zip(*vecs)],
                 [(c * x + d * y) % 5 for x, y in zip(*vecs)]]
        assert Subspace.from_vectors(f5, 4, mixed) == s1


def test_subspace_membership_and_coordinates(f3):
    s = Subspace.from_vectors(f3, 3, [(1, 0, 2), (0, 1, 1)])
    assert s.contains((1, 1, 0))
    assert not s.contains((0, 0, 1))
    assert s.coordinates((1, 1, 0)) == (1, 1)


@pytest.mark.parametrize("n,q,r,expected", [
    (2, 3, 1, 4), (3, 2, 1, 7), (2, 5, 1, 6), (4, 2, 2, 35), (3, 3, 2, 13),
])
def test_enumerate_subspaces_counts(n, q, r, expected):
    field = make_field(q) if q in (2, 3, 5) else make_field(2, 2)
    assert expected == gaussian_binomial(n, r, q)
    subs = list(enumerate_subspaces(n, field, r))
    assert len(subs) == len(set(subs)) == expected


def test_enumerate_subspaces_all_dims(f3):
    subs = list(enumerate_subspaces(2, f3))
    assert len(subs) == sum(gaussian_binomial(2, r, 3) for r in range(3))


def test_matrix_order_examples(f3):
    assert matrix_order(Matrix.from_text(f3, "0,1;1,2")) == 8
    assert matrix_order(Matrix.identity(f3, 2)) == 1
    assert matrix_order(Matrix.from_text(f3, "1,0;2,2")) == 2
    with pytest.raises(ZeroDivisionError):
        matrix_order(Matrix(f3, 2, [0, 0, 0, 0]))


def test_matrix_order_against_naive(f3, f4):
    for g in enumerate_gl(2, f3):
        assert matrix_order(g) == naive_order(g, 3**2)
    for g in enumerate_gl(2, f4):
        assert matrix_order(g) == naive_order(g, 4**2)


def test_text_roundtrip_and_hash(f3):
    m = Matrix.from_text(f3, "0,1;1,2")
    assert Matrix.from_text(f3, m.to_text()) == m
    assert hash(Matrix.from_text(f3, "0,1;1,2")) == hash(m)
    assert Matrix.identity(f3, 2) != Matrix.identity(make_field(5), 2)
    with pytest.raises(ValueError):
        Matrix.from_text(f3, "0,1;1")


def test_common_fixed_space(f5):
    t1 = Matrix.from_text(f5, "2,2;2,0")
    t2 = Matrix.from_text(f5, "0,2;4,3")
    assert common_fixed_space([t1]).basis == ((1, 2),)
    assert common_fixed_space([t1, t2]).is_zero
