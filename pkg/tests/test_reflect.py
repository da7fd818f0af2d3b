import random

import pytest

from singerlab import (BudgetExceededError, Matrix, Subspace, companion,
                       enumerate_gl, enumerate_minimal_factorizations,
                       enumerate_reflections, factorizations_in_det_subgroup,
                       find_primitive_poly, fixed_space, is_reflection,
                       make_field, minimal_factorization, reflection_length,
                       stabilizing_factorization)
from singerlab.matrix import common_fixed_space, enumerate_subspaces, stabilizes
from singerlab.reflect import (FactorizationList, det_subgroup,
                               reflection_distances, reflection_from_params,
                               reflection_params)


def test_is_reflection_examples(f3, f5):
    assert is_reflection(Matrix.from_text(f3, "1,0;2,2"))
    assert is_reflection(Matrix.from_text(f5, "2,2;2,0"))
    assert not is_reflection(Matrix.identity(f3, 2))
    assert not is_reflection(Matrix(f3, 2, [0, 0, 0, 0]))


@pytest.mark.parametrize("n,p,k,expected", [
    (2, 3, 1, 20), (3, 2, 1, 21), (2, 2, 1, 3), (2, 5, 1, 114), (2, 2, 2, 55),
])
def test_enumerate_reflections_counts(n, p, k, expected):
    field = make_field(p, k)
    q = field.q
    refl = enumerate_reflections(n, field)
    assert len(refl) == expected
    assert expected == (q**n - 1) // (q - 1) * (q ** (n - 1) * (q - 1) - 1)


@pytest.mark.parametrize("n,p", [(2, 3), (3, 2), (2, 2)])
def test_enumerate_reflections_matches_group_scan(n, p):
    field = make_field(p)
    scanned = {g for g in enumerate_gl(n, field) if is_reflection(g)}
    assert set(enumerate_reflections(n, field)) == scanned


def test_reflection_params_roundtrip(f3, f2):
    for field, n in [(f3, 2), (f2, 3)]:
        for t in enumerate_reflections(n, field):
            phi, w = reflection_params(t)
            assert next(v for v in phi if v) == 1
            assert reflection_from_params(field, phi, w) == t


def test_reflection_from_params_rejects(f3):
    with pytest.raises(ValueError):
        reflection_from_params(f3, (0, 0), (1, 0))
    with pytest.raises(ValueError):
        reflection_from_params(f3, (1, 0), (2, 0))  # det = 1 + phi(w) = 0


def test_reflection_length_examples(f3, f5):
    assert reflection_length(Matrix.identity(f5, 2)) == 0
    assert reflection_length(Matrix.from_text(f3, "1,0;2,2")) == 1
    assert reflection_length(companion(find_primitive_poly(2, f3))) == 2
    assert reflection_length(companion(find_primitive_poly(3, make_field(2)))) == 3


def test_reflection_length_is_bfs_distance_small(f3):
    distances = reflection_distances(2, f3)
    assert len(distances) == 48
    for g, d in distances.items():
        assert reflection_length(g) == d


def test_minimal_factorization_basics(f3, f5):
    t = Matrix.from_text(f3, "1,0;2,2")
    assert minimal_factorization(t).factors == (t,)
    g = Matrix.from_text(f5, "3,0;0,4")
    fl = minimal_factorization(g)
    assert len(fl.factors) == 2 and fl.product == g


def test_minimal_factorization_fixes_fixed_space(f3):
    # every factor fixes every vector fixed by g, across the whole group
    for g in enumerate_gl(2, f3):
        fl = minimal_factorization(g)
        fix = fixed_space(g)
        for t in fl.factors:
            assert all(t.apply(v) == v for v in fix.basis)


def test_factorization_list_validates(f5):
    t1 = Matrix.from_text(f5, "2,2;2,0")
    t2 = Matrix.from_text(f5, "0,2;4,3")
    fl = FactorizationList((t1, t2), Matrix.from_text(f5, "3,0;0,4"))
    assert fl.dets() == (1, 2)
    assert f5.mul(*fl.dets()) == fl.product.det()
    with pytest.raises(ValueError):
        FactorizationList((t1, t2), Matrix.identity(f5, 2))
    with pytest.raises(ValueError):
        FactorizationList((t1, Matrix.identity(f5, 2)), t1)


def test_enumerate_identity_gives_empty(f3):
    fls = list(enumerate_minimal_factorizations(Matrix.identity(f3, 2)))
    assert len(fls) == 1 and fls[0].factors == ()


def test_singer_factorizations_gl2f2(f2):
    # brute-force oracle: ordered pairs of reflections multiplying to c
    c = companion(find_primitive_poly(2, f2))
    refl = enumerate_reflections(2, f2)
    oracle = sum(1 for t1 in refl for t2 in refl if t1 @ t2 == c)
    assert oracle == 3
    assert len(list(enumerate_minimal_factorizations(c))) == 3


def test_factorizations_are_ordered_tuples(f3):
    c = companion(find_primitive_poly(2, f3))
    fls = list(enumerate_minimal_factorizations(c))
    pairs = {fl.factors for fl in fls}
    # reversing a factorization of a Singer cycle need not multiply to c
    assert any((t2, t1) not in pairs or t1 @ t2 != t2 @ t1 for t1, t2 in pairs)
    reversed_products = {t2 @ t1 for t1, t2 in pairs}
    assert reversed_products != {c}


def test_enumerate_budget_guard(f5):
    c = companion(find_primitive_poly(2, f5))
    with pytest.raises(BudgetExceededError):
        list(enumerate_minimal_factorizations(c, budget=5))


def test_remark_invariant_gl2f2(f2):
    for g in enumerate_gl(2, f2):
        for fl in enumerate_minimal_factorizations(g):
            if fl.factors:
                assert common_fixed_space(fl.factors) == fixed_space(g)


def test_stabilizing_factorization_diagonal(f5):
    g = Matrix.from_text(f5, "3,0;0,4")
    w = Subspace.from_vectors(f5, 2, [(1, 0)])
    fl = stabilizing_factorization(g, w)
    assert len(fl.factors) == 2 and fl.product == g
    assert all(stabilizes(t, w) for t in fl.factors)


def test_stabilizing_factorization_reflection_regression(f3):
    # fix(g) not inside W: U must absorb it or the construction overshoots
    g = Matrix.from_text(f3, "2,1;0,1")
    w = Subspace.from_vectors(f3, 2, [(1, 0)])
    fl = stabilizing_factorization(g, w)
    assert len(fl.factors) == reflection_length(g) == 1


def test_stabilizing_factorization_identity_on_w(f5):
    g = Matrix.from_text(f5, "1,0;0,2")
    w = Subspace.from_vectors(f5, 2, [(1, 0)])
    fl = stabilizing_factorization(g, w)
    assert len(fl.factors) == 1
    assert all(stabilizes(t, w) for t in fl.factors)


def test_stabilizing_factorization_random_reducible(f2):
    rng = random.Random(31)
    gl3 = list(enumerate_gl(3, f2))
    subspaces = [w for d in (1, 2) for w in enumerate_subspaces(3, f2, d)]
    checked = 0
    while checked < 100:
        g = rng.choice(gl3)
        stabilized = [w for w in subspaces if stabilizes(g, w)]
        if not stabilized:
            continue
        w = rng.choice(stabilized)
        fl = stabilizing_factorization(g, w)
        assert fl.product == g
        assert len(fl.factors) == reflection_length(g)
        assert all(stabilizes(t, w) for t in fl.factors)
        checked += 1


def test_stabilizing_factorization_rejects(f5):
    g = Matrix.from_text(f5, "0,1;1,3")  # irreducible
    w = Subspace.from_vectors(f5, 2, [(1, 0)])
    with pytest.raises(ValueError):
        stabilizing_factorization(g, w)
    with pytest.raises(ValueError):
        stabilizing_factorization(g, Subspace.full(f5, 2))


def test_det_subgroup(f5):
    assert det_subgroup(f5, 4) == frozenset({1, 4})
    assert det_subgroup(f5, 2) == frozenset({1, 2, 3, 4})
    with pytest.raises(ValueError):
        det_subgroup(f5, 0)


def test_det_restricted_count_matches_brute_force(f5):
    # order-12 irreducible with det 4; X = {1, 4}
    g = Matrix.from_text(f5, "0,1;1,3")
    refl = enumerate_reflections(2, f5)
    x = det_subgroup(f5, 4)
    brute_all = 0
    brute_x = 0
    for t1 in refl:
        t2 = t1.inverse() @ g
        if is_reflection(t2):
            brute_all += 1
            if t1.det() in x and t2.det() in x:
                brute_x += 1
    assert brute_x == 12 and brute_all == 24
    restricted = factorizations_in_det_subgroup(g, 4)
    assert len(restricted) == 12
    assert all(all(d in x for d in fl.dets()) for fl in restricted)
    unrestricted = factorizations_in_det_subgroup(g, 2)  # X = all units
    assert len(unrestricted) == 24


def test_det_restricted_rejects(f5):
    g = Matrix.from_text(f5, "3,0;0,4")  # reducible
    with pytest.raises(ValueError):
        factorizations_in_det_subgroup(g, 4)
    irr = Matrix.from_text(f5, "0,1;1,3")
    with pytest.raises(ValueError):
        factorizations_in_det_subgroup(irr, 1)  # det(g) = 4 not in {1}
