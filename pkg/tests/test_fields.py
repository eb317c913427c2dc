import random
from fractions import Fraction

import pytest

from sialg.errors import BadParams
from sialg.fields import Field, Fp, QQ, is_prime, next_prime


def test_primality():
    primes = [2, 3, 5, 7, 11, 101, 7919, 104729]
    for p in primes:
        assert is_prime(p)
    for n in [0, 1, 4, 9, 100, 7917, 104730]:
        assert not is_prime(n)
    assert next_prime(14) == 17


def test_prime_field_requires_prime():
    with pytest.raises(BadParams):
        Field(6)


def test_fp_field_axioms_random():
    rng = random.Random(1)
    for p in (2, 3, 5, 13):
        f = Field(p)
        for _ in range(200):
            a, b, c = (f(rng.randrange(p)) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            if b:
                assert (a / b) * b == a
        assert f.one + (p - 1) == f.zero


def test_fp_int_interop_and_order():
    f = Field(5)
    x = f(3)
    assert 1 + x == f(4)
    assert 2 * x == f(1)
    assert 1 / x == f(2)
    assert sorted([f(4), f(1), f(3)]) == [f(1), f(3), f(4)]
    with pytest.raises(BadParams):
        x + Fp(1, 7)


def test_parse_format_round_trip():
    f = Field()
    for s in ("3", "-7/2", "0"):
        assert f.format(f.parse(s)) == str(Fraction(s))
    g = Field(7)
    assert g.parse("12 mod 7") == g(5)
    assert g.parse("12") == g(5)
    assert g.format(g(5)) == "5 mod 7"
    with pytest.raises(BadParams):
        g.parse("3 mod 11")


def test_rational_coercion():
    assert QQ(Fraction(2, 4)) == Fraction(1, 2)
    f = Field(5)
    assert f(Fraction(1, 2)) == f(3)
    with pytest.raises(BadParams):
        f(Fraction(1, 5))


def test_field_json():
    assert Field.from_json("rational") == QQ
    assert Field.from_json({"prime": 3}) == Field(3)
    assert Field(3).to_json() == {"prime": 3}
    with pytest.raises(BadParams):
        Field.from_json({"weird": 1})
