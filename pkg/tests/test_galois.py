import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdsconv.errors import DivisionByZero, FieldMismatch, NonPrimeCharacteristic, NoSuchRoot, SizeLimitExceeded
from mdsconv.galois import (
    FieldElement,
    arith,
    divisors,
    field_from_dict,
    frobenius,
    make_embedding,
    make_field,
    primitive_nth_root,
)

from oracles import element_order, first_primitive, mul_table, poly_mulmod

SMALL = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (2, 6)]


def test_prime_field_gf2():
    F = make_field(2, 1)
    assert F.q == 2 and F.mul(1, 1) == 1 and F.add(1, 1) == 0


def test_gf8_modulus_matches_bruteforce():
    assert make_field(2, 3).modulus == (1, 1, 0, 1) == first_primitive(2, 3)


def test_gf9_modulus_matches_bruteforce():
    assert make_field(3, 2).modulus == first_primitive(3, 2)


@pytest.mark.parametrize("p,t", SMALL)
def test_modulus_is_lex_first_primitive(p, t):
    assert make_field(p, t).modulus == first_primitive(p, t)


def test_gf8_mul_example():
    F = make_field(2, 3)
    assert F.mul(2, 4) == 3
    assert int(arith(F.element(2), F.element(4), "mul")) == 3


@pytest.mark.parametrize("p,t", SMALL[:8])
def test_full_multiplication_table_matches_schoolbook(p, t):
    F = make_field(p, t)
    x = F.elements()
    got = F.mul(x[:, None], x[None, :])
    assert np.array_equal(got, mul_table(p, t, F.modulus))


@pytest.mark.parametrize("p,t", [(2, 3), (3, 2), (2, 4), (2, 6), (5, 2)])
def test_field_axioms_random_triples(p, t):
    F = make_field(p, t)
    rng = np.random.default_rng(p * 100 + t)
    a, b, c = rng.integers(0, F.q, size=(3, 20000))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    assert np.array_equal(F.add(a, b), F.add(b, a))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    assert np.array_equal(F.sub(F.add(a, b), b), a)
    nz = a[a != 0]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.array_equal(F.mul(a, 1), a)


@given(st.sampled_from(SMALL), st.data())
@settings(max_examples=60, deadline=None)
def test_element_operators(pt, data):
    F = make_field(*pt)
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(1, F.q - 1))
    A, B = F.element(a), F.element(b)
    assert int((A / B) * B) == a
    assert int(A - A) == 0
    assert int(A ** (F.q - 1)) == (1 if a else 0)
    assert int(arith(B, None, "inv")) == int(F.inv(b))
    assert int(arith(A, 3, "pow")) == int(F.pow(a, 3))
    assert int(-A + A) == 0


def test_division_by_zero():
    F = make_field(2, 3)
    with pytest.raises(DivisionByZero):
        F.element(3) / F.element(0)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        make_field(2, 3).element(1) + make_field(3, 2).element(1)


def test_errors_on_construction():
    with pytest.raises(NonPrimeCharacteristic):
        make_field(4, 2)
    with pytest.raises(SizeLimitExceeded):
        make_field(2, 21)


def test_canonical_generator_is_smallest_primitive_element():
    for p, t in SMALL:
        F = make_field(p, t)
        orders = [element_order(x, p, F.modulus) if t > 1 else None for x in range(1, F.q)]
        if t > 1:
            first = 1 + next(i for i, o in enumerate(orders) if o == F.q - 1)
            assert F.generator == first


@pytest.mark.parametrize("n,p,t,e", [(9, 2, 6, 7), (17, 2, 8, 15)])
def test_primitive_root_is_generator_power(n, p, t, e):
    E = make_field(p, t)
    a = primitive_nth_root(n, E)
    assert a.value == E.pow(E.generator, e)
    assert element_order(a.value, p, E.modulus) == n


def test_primitive_root_trivial_and_error():
    assert primitive_nth_root(1, make_field(2, 3)).value == 1
    with pytest.raises(NoSuchRoot):
        primitive_nth_root(5, make_field(2, 3))


@pytest.mark.parametrize("p,t,n", [(2, 4, 5), (2, 12, 65), (3, 2, 4), (2, 8, 17), (3, 4, 10)])
def test_primitive_root_order_exact(p, t, n):
    E = make_field(p, t)
    a = primitive_nth_root(n, E).value
    assert E.pow(a, n) == 1
    assert all(E.pow(a, d) != 1 for d in divisors(n) if d < n)


@pytest.mark.parametrize("bp,bt,l", [(2, 1, 2), (2, 2, 2), (2, 3, 2), (3, 1, 2), (3, 2, 2), (2, 4, 2), (2, 2, 3)])
def test_embedding_round_trip_and_homomorphism(bp, bt, l):
    B, E = make_field(bp, bt), make_field(bp, bt * l)
    emb = make_embedding(B, E)
    x = B.elements()
    assert np.array_equal(emb.project(emb.embed(x)), x)
    X, Y = np.meshgrid(x, x)
    assert np.array_equal(emb.embed(B.mul(X, Y)), E.mul(emb.embed(X), emb.embed(Y)))
    assert np.array_equal(emb.embed(B.add(X, Y)), E.add(emb.embed(X), emb.embed(Y)))
    allx = E.elements()
    assert np.array_equal(emb.from_coords(emb.coords(allx)), allx)


def test_frobenius_properties():
    B, E = make_field(2, 3), make_field(2, 6)
    emb = make_embedding(B, E)
    x = E.elements()
    X, Y = np.meshgrid(x, x)
    fr = emb.frobenius
    assert np.array_equal(fr(E.add(X, Y)), E.add(fr(X), fr(Y)))
    assert np.array_equal(fr(E.mul(X, Y)), E.mul(fr(X), fr(Y)))
    assert np.array_equal(fr(fr(x)), x)
    fixed = x[fr(x) == x]
    assert sorted(fixed.tolist()) == sorted(emb.embed(B.elements()).tolist())


def test_frobenius_gf4():
    B, E = make_field(2, 1), make_field(2, 2)
    emb = make_embedding(B, E)
    w = E.element(E.generator)
    assert frobenius(w, emb).value == E.mul(w.value, w.value)
    with pytest.raises(FieldMismatch):
        frobenius(B.element(1), emb)


def test_field_dict_round_trip():
    F = make_field(3, 2)
    assert field_from_dict(F.to_dict()) == F
    assert F.to_dict() == {"p": 3, "t": 2, "modulus": list(first_primitive(3, 2))}


def test_large_field_tables():
    F = make_field(2, 16)
    a = np.array([3, 12345, 65535])
    b = np.array([7, 54321, 2])
    for x, y, z in zip(a, b, F.mul(a, b)):
        assert poly_mulmod(int(x), int(y), 2, F.modulus) == z


def test_element_repr_and_int():
    F = make_field(2, 3)
    e = FieldElement(5, F)
    assert int(e) == 5
