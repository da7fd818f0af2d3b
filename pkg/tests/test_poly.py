import itertools
import random

import pytest

from singerlab import (Poly, char_poly, companion, enumerate_monic,
                       find_primitive_poly, gcd, invmod, is_irreducible,
                       is_primitive_poly, make_field, powmod)
from singerlab.poly import FieldExtension

from conftest import trial_phi


def brute_force_irreducible(f):
    """Trial division by every monic divisor of degree <= deg(f)/2."""
    n = f.degree
    field = f.field
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in enumerate_monic(d, field):
            if (f % g).is_zero:
                return False
    return True


def test_poly_normalization_and_text(f3):
    f = Poly(f3, (2, 1, 1, 0, 0))
    assert f.coeffs == (2, 1, 1)
    assert f.degree == 2 and f.is_monic
    assert f.to_text() == "2,1,1"
    assert Poly.from_text(f3, "2,1,1") == f
    assert Poly(f3).is_zero and Poly(f3).degree == -1


def test_ops_examples(f2, f3):
    x = Poly.x(f3)
    one = Poly.one(f3)
    assert gcd(x * x - one, x - one) == Poly.from_text(f3, "2,1")  # x + 2
    assert powmod(x, 9, Poly.from_text(f3, "2,1,1")) == x  # x^9 = x in F_9
    x2 = Poly.x(f2)
    assert (x2 + Poly.one(f2)) * (x2 + Poly.one(f2)) == Poly.from_text(f2, "1,0,1")


def test_divrem_roundtrip():
    rng = random.Random(7)
    for p in (2, 3, 5):
        field = make_field(p)
        for _ in range(60):
            f = Poly(field, [rng.randrange(p) for _ in range(rng.randrange(1, 7))])
            g = Poly(field, [rng.randrange(p) for _ in range(rng.randrange(1, 5))])
            if g.is_zero:
                continue
            quot, rem = f.divrem(g)
            assert quot * g + rem == f
            assert rem.degree < g.degree


def test_divrem_by_zero(f3):
    with pytest.raises(ZeroDivisionError):
        Poly.x(f3).divrem(Poly.zero(f3))


def test_is_irreducible_examples(f3):
    assert is_irreducible(Poly.from_text(f3, "2,1,1"))  # x^2 + x - 1
    assert is_irreducible(Poly.from_text(f3, "1,0,1"))  # x^2 + 1
    assert not is_irreducible(Poly.from_text(f3, "2,0,1"))  # x^2 - 1
    with pytest.raises(ValueError):
        is_irreducible(Poly.one(f3))


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (5, 1), (2, 2)])
def test_is_irreducible_against_brute_force(p, k):
    field = make_field(p, k)
    for n in range(1, 5):
        for f in enumerate_monic(n, field):
            assert is_irreducible(f) == brute_force_irreducible(f), f


def test_is_primitive_examples(f2, f3):
    assert is_primitive_poly(Poly.from_text(f3, "2,1,1"))
    assert not is_primitive_poly(Poly.from_text(f3, "1,0,1"))  # root i has order 4
    assert is_primitive_poly(Poly.from_text(f2, "1,1,0,1"))  # x^3 + x + 1
    with pytest.raises(ValueError):
        is_primitive_poly(Poly.from_text(f3, "1,2"))  # not monic


def test_primitive_implies_irreducible(f3, f5):
    for field in (f3, f5):
        for f in enumerate_monic(2, field):
            if is_primitive_poly(f):
                assert is_irreducible(f)


@pytest.mark.parametrize("n,p,k", [(2, 3, 1), (2, 5, 1), (3, 2, 1), (4, 2, 1), (2, 2, 2)])
def test_primitive_poly_count(n, p, k):
    field = make_field(p, k)
    count = sum(is_primitive_poly(f) for f in enumerate_monic(n, field))
    assert count == trial_phi(field.q**n - 1) // n


def test_companion_examples(f3):
    assert companion(Poly.from_text(f3, "2,1,1")).to_text() == "0,1;1,2"
    assert companion(Poly.from_text(f3, "1,0,1")).to_text() == "0,2;1,0"
    assert companion(Poly.from_text(f3, "2,1")).to_text() == "1"  # x - 1
    with pytest.raises(ValueError):
        companion(Poly.from_text(f3, "1,2"))


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (5, 1), (2, 2)])
def test_companion_char_poly_roundtrip(p, k):
    field = make_field(p, k)
    for n in range(1, 4):
        for f in enumerate_monic(n, field):
            assert char_poly(companion(f)) == f


def test_enumerate_monic_counts(f2, f3):
    assert len(list(enumerate_monic(2, f3, nonzero_constant=True))) == 6
    assert {f.to_text() for f in enumerate_monic(1, f2)} == {"0,1", "1,1"}
    assert {f.to_text() for f in enumerate_monic(2, f2, True)} == {"1,0,1", "1,1,1"}


def test_enumerate_monic_is_deterministic_lex(f3):
    texts = [f.to_text() for f in enumerate_monic(2, f3)]
    assert texts == sorted(texts, key=lambda s: [int(v) for v in s.split(",")])


def test_find_primitive_poly(f2, f3, f5):
    assert find_primitive_poly(2, f3).to_text() == "2,1,1"
    # both cubics x^3+x^2+1 and x^3+x+1 are primitive; lex picks the former
    assert find_primitive_poly(3, f2).to_text() == "1,0,1,1"
    assert find_primitive_poly(1, f5).to_text() == "2,1"  # x - 3, root of order 4
    count = sum(is_primitive_poly(f) for f in enumerate_monic(2, f3))
    assert count == 2


def test_irreducible_roots_form_frobenius_orbit():
    for p, k in [(2, 1), (3, 1), (2, 2)]:
        field = make_field(p, k)
        for n in (2, 3):
            for f in enumerate_monic(n, field):
                if not is_irreducible(f):
                    continue
                ext = FieldExtension(f, check=False)
                orbit = ext.frobenius_orbit(ext.x)
                assert len(orbit) == n
                assert len(set(orbit)) == n  # separable: distinct roots
                for root in orbit:
                    value = ext.zero
                    for c in reversed(f.coeffs):
                        value = ext.reduce(ext.mul(value, root) + Poly(field, (c,)))
                    assert value.is_zero


def test_field_extension_basics(f3):
    ext = FieldExtension(Poly.from_text(f3, "2,1,1"))
    z = ext.x
    assert ext.element_order(z) == 8
    assert ext.is_primitive(z)
    assert ext.mul(z, ext.inv(z)) == ext.one
    assert ext.minimal_poly(z) == ext.modulus
    assert ext.cast_down(ext.reduce(Poly(f3, (2,)))) == 2
    with pytest.raises(ValueError):
        FieldExtension(Poly.from_text(f3, "2,0,1"))  # reducible modulus


def test_invmod_roundtrip(f5):
    m = find_primitive_poly(2, f5)
    for coeffs in itertools.product(range(5), repeat=2):
        f = Poly(f5, coeffs)
        if f.is_zero:
            continue
        assert (f * invmod(f, m)) % m == Poly.one(f5)
