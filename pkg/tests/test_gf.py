"""Finite-field arithmetic tests.

Derived expectations are recomputed here by independent brute-force oracles
(root scans, power enumeration) rather than trusting the library's own code
paths.
"""

import random

import pytest

from powersum.gf import (
    DegreeOutOfRangeError,
    FieldMismatchError,
    GfElement,
    NotMonicError,
    NotPrimeError,
    element_order,
    factorize,
    is_irreducible,
    is_prime,
    make_field,
    primitive_element,
)


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def cubic_is_irreducible_by_roots(poly, p):
    """A monic cubic (or quadratic) over GF(p) is reducible iff it has a root."""
    assert len(poly) in (3, 4)
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    return True


def multiplicative_order_by_enumeration(a):
    one = a.field.one
    acc = a
    for t in range(1, a.field.order):
        if acc == one:
            return t
        acc = acc * a
    raise AssertionError("element of a field must have finite order")


# ---------------------------------------------------------------------------
# make_field
# ---------------------------------------------------------------------------


def test_make_field_prime_field():
    f = make_field(2, 1)
    assert f.order == 2
    assert f.p == 2 and f.k == 1


def test_make_field_gf8_modulus_is_lex_smallest_irreducible():
    # Oracle: scan all monic cubics over GF(2) in integer-encoding order and
    # keep the first irreducible one (irreducible == no root for cubics).
    expected = None
    for c in range(8):
        poly = [c & 1, (c >> 1) & 1, (c >> 2) & 1, 1]
        if cubic_is_irreducible_by_roots(poly, 2):
            expected = tuple(poly)
            break
    assert expected == (1, 1, 0, 1)  # x^3 + x + 1
    f = make_field(2, 3)
    assert f.modulus_poly == expected
    assert f.order == 8


def test_make_field_rejects_non_prime():
    with pytest.raises(NotPrimeError):
        make_field(4, 1)
    with pytest.raises(NotPrimeError):
        make_field(1, 2)


def test_make_field_rejects_bad_degree():
    with pytest.raises(DegreeOutOfRangeError):
        make_field(2, 0)
    with pytest.raises(DegreeOutOfRangeError):
        make_field(2, 16)


def test_make_field_deterministic():
    a = make_field(3, 4)
    b = make_field(3, 4)
    assert a == b
    assert a.modulus_poly == b.modulus_poly


# ---------------------------------------------------------------------------
# element arithmetic
# ---------------------------------------------------------------------------


def test_prime_field_addition():
    f = make_field(7)
    assert (f.from_int(3) + f.from_int(5)) == f.from_int(1)


def test_gf8_multiplication_reduces():
    # Oracle: x * x^2 = x^3 = x + 1 (mod x^3 + x + 1), reduced by hand.
    f = make_field(2, 3)
    x = f.element([0, 1])
    x2 = f.element([0, 0, 1])
    assert (x * x2).coeffs == (1, 1, 0)


def test_inverse_round_trip():
    rng = random.Random(7)
    for p, k in [(2, 1), (7, 1), (2, 3), (3, 2), (5, 3), (13, 1)]:
        f = make_field(p, k)
        for _ in range(20):
            a = f.from_int(rng.randrange(1, f.order))
            assert a * a.inv() == f.one


def test_field_mismatch_rejected():
    a = make_field(3).from_int(1)
    b = make_field(5).from_int(1)
    with pytest.raises(FieldMismatchError):
        _ = a + b
    with pytest.raises(FieldMismatchError):
        _ = a * b


def test_inverse_of_zero_rejected():
    f = make_field(5)
    with pytest.raises(ZeroDivisionError):
        f.zero.inv()


def test_field_axioms_on_samples():
    rng = random.Random(20240915)
    for p, k in [(2, 3), (3, 2), (5, 2), (7, 1), (2, 5)]:
        f = make_field(p, k)
        for _ in range(25):
            a = f.from_int(rng.randrange(f.order))
            b = f.from_int(rng.randrange(f.order))
            c = f.from_int(rng.randrange(f.order))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a + b == b + a
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a - b == a + (-b)


def test_frobenius_fixes_every_element():
    for p, k in [(2, 3), (3, 2), (5, 2)]:
        f = make_field(p, k)
        for a in f.elements():
            assert a ** f.order == a


# ---------------------------------------------------------------------------
# is_irreducible
# ---------------------------------------------------------------------------


def test_irreducible_examples():
    assert not is_irreducible([1, 0, 1], 2)  # x^2 + 1 has root 1 over GF(2)
    assert is_irreducible([1, 1, 0, 1], 2)  # x^3 + x + 1
    assert is_irreducible([1, 0, 1], 3)  # x^2 + 1 has no root mod 3
    # cross-check the quadratic/cubic cases against the root-scan oracle
    for p in (2, 3, 5):
        for c0 in range(p):
            for c1 in range(p):
                poly = [c0, c1, 1]
                assert is_irreducible(poly, p) == cubic_is_irreducible_by_roots(poly, p)


def test_irreducible_rejects_non_monic():
    with pytest.raises(NotMonicError):
        is_irreducible([1, 1, 2], 3)
    with pytest.raises(NotMonicError):
        is_irreducible([1], 2)


def test_irreducible_known_quartic():
    # x^4 + x + 1 is irreducible over GF(2); x^4 + x^2 + 1 = (x^2 + x + 1)^2 is not.
    assert is_irreducible([1, 1, 0, 0, 1], 2)
    assert not is_irreducible([1, 0, 1, 0, 1], 2)


# ---------------------------------------------------------------------------
# primitive_element / element_order
# ---------------------------------------------------------------------------


def test_primitive_element_gf7():
    f = make_field(7)
    g = primitive_element(f)
    assert g.to_int() == 3
    # oracle: 3 really generates all six nonzero residues, 2 does not
    assert multiplicative_order_by_enumeration(f.from_int(3)) == 6
    assert multiplicative_order_by_enumeration(f.from_int(2)) == 3


def test_primitive_element_gf2():
    f = make_field(2)
    assert primitive_element(f) == f.one


def test_primitive_element_gf8_is_x():
    f = make_field(2, 3)
    g = primitive_element(f)
    assert g.coeffs == (0, 1, 0)
    assert multiplicative_order_by_enumeration(g) == 7


def test_primitive_element_has_full_order():
    for p, k in [(2, 3), (3, 2), (5, 2), (13, 1), (2, 6)]:
        f = make_field(p, k)
        g = primitive_element(f)
        assert element_order(g) == f.order - 1


def test_element_order_examples():
    f7 = make_field(7)
    assert element_order(f7.one) == 1
    assert element_order(f7.from_int(6)) == 2  # (-1)^2 = 1
    f13 = make_field(13)
    assert element_order(f13.from_int(2)) == 12
    assert multiplicative_order_by_enumeration(f13.from_int(2)) == 12


def test_element_order_matches_enumeration():
    rng = random.Random(99)
    for p, k in [(2, 4), (3, 3), (7, 2)]:
        f = make_field(p, k)
        for _ in range(15):
            a = f.from_int(rng.randrange(1, f.order))
            assert element_order(a) == multiplicative_order_by_enumeration(a)


def test_element_order_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        element_order(make_field(5).zero)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for n in range(-2, 32):
        assert is_prime(n) == (n in primes)


def test_factorize():
    assert factorize(1) == {}
    assert factorize(12) == {2: 2, 3: 1}
    assert factorize(4095) == {3: 2, 5: 1, 7: 1, 13: 1}
    assert factorize(2**15 - 1) == {7: 1, 31: 1, 151: 1}
