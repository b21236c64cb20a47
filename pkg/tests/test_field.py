import itertools

import pytest

from bentpds.errors import (
    InverseOfZero,
    NotADivisor,
    ReducibleModulus,
    SizeGuard,
    ZeroArgument,
    ZeroBeta,
)
from bentpds.field import Field, canonical_field, smallest_irreducible

F3 = canonical_field(3, 1)
F9 = canonical_field(3, 2)
F27 = canonical_field(3, 3)
F81 = canonical_field(3, 4)


def test_prime_field_arithmetic():
    assert F3.mul(2, 2) == 1
    assert F3.add(2, 2) == 1
    assert F3.neg(1) == 2
    assert F3.inv(2) == 2


def test_f9_uses_x_squared_plus_one():
    assert F9.modulus == (1, 0, 1)
    # rank 3 is x; x * x = x^2 = -1 = 2
    assert F9.mul(3, 3) == 2


def test_f9_inverse_of_x_found_exhaustively():
    # the only b with x*b = 1 is 2x (rank 6)
    assert [b for b in range(1, 9) if F9.mul(3, b) == 1] == [6]
    assert F9.inv(3) == 6
    assert F9.mul(3, F9.inv(3)) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(InverseOfZero):
        F9.inv(0)
    with pytest.raises(InverseOfZero):
        F9.pow(0, -1)


@pytest.mark.parametrize("field", [F3, F9, F27, canonical_field(5, 2), canonical_field(7, 2)])
def test_every_nonzero_element_has_inverse(field):
    for a in range(1, field.size):
        assert field.mul(a, field.inv(a)) == 1


@pytest.mark.parametrize("field", [F9, F27, canonical_field(5, 2)])
def test_mul_associative_commutative_sampled(field):
    sample = range(0, field.size, max(1, field.size // 7))
    for a, b, c in itertools.product(sample, repeat=3):
        assert field.mul(a, b) == field.mul(b, a)
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))


def test_trace_examples():
    assert F9.trace(1, 1) == 2          # 1 + 1
    assert F9.trace(1, 3) == 0          # x + x^3 = x - x
    for field in (F3, F9, F27):
        for a in range(field.size):
            assert field.trace(field.m, a) == a


def test_trace_requires_divisor():
    with pytest.raises(NotADivisor):
        F9.trace(3, 1)


@pytest.mark.parametrize("field,k", [(F9, 1), (F27, 1), (F81, 1), (F81, 2)])
def test_trace_is_subfield_linear(field, k):
    sub, embed, proj = field.subfield(k)
    for a in range(0, field.size, 5):
        for b in range(0, field.size, 7):
            assert sub.add(field.trace(k, a), field.trace(k, b)) == field.trace(
                k, field.add(a, b)
            )
    for c_sub in range(sub.size):
        c = embed[c_sub]
        for a in range(0, field.size, 5):
            assert field.trace(k, field.mul(c, a)) == sub.mul(c_sub, field.trace(k, a))


def test_quadratic_character_examples():
    assert F3.quadratic_character(1) == 1
    assert F3.quadratic_character(2) == -1
    assert canonical_field(5, 1).quadratic_character(4) == 1
    with pytest.raises(ZeroArgument):
        F9.quadratic_character(0)


@pytest.mark.parametrize("field", [F3, F9, F27, canonical_field(7, 1)])
def test_quadratic_character_multiplicative(field):
    for a in range(1, field.size):
        for b in range(1, field.size):
            assert field.quadratic_character(field.mul(a, b)) == (
                field.quadratic_character(a) * field.quadratic_character(b)
            )


def test_primitive_elements():
    assert F3.primitive_element == 2
    assert canonical_field(5, 1).primitive_element == 2
    assert canonical_field(7, 1).primitive_element == 3
    assert F9.primitive_element == 4  # 1 + x, the least rank of order 8
    for field in (F9, F27, F81):
        g = field.primitive_element
        assert field.multiplicative_order(g) == field.size - 1
        for r in range(1, g):
            assert field.multiplicative_order(r) < field.size - 1


def test_subgroup_cosets():
    assert canonical_field(3, 1).subgroup_coset(2, 1).members == {1}
    assert canonical_field(7, 1).subgroup_coset(3, 1).members == {1, 6}
    sq = F9.subgroup_coset(2, 1).members
    assert sq == {1, 2, 3, 6} and len(sq) == 4
    with pytest.raises(ZeroBeta):
        F9.subgroup_coset(2, 0)


@pytest.mark.parametrize("field", [F9, F27, canonical_field(5, 2), canonical_field(7, 2)])
def test_coset_sizes(field):
    import math

    q1 = field.size - 1
    for l in range(1, q1 + 1):
        assert len(field.subgroup_coset(l, 1)) == q1 // math.gcd(l, q1)


def test_cosets_partition_multiplicative_group():
    H = F81.subgroup_coset(5, 1).members
    seen = set()
    for beta in range(1, 81):
        cs = F81.subgroup_coset(5, beta).members
        assert len(cs) == len(H)
        if cs & seen:
            assert cs <= seen
        seen |= cs
    assert seen == set(range(1, 81))


def test_subfield_embedding_is_field_homomorphism():
    for big, s in [(F81, 2), (F81, 1), (canonical_field(3, 6), 2), (canonical_field(5, 4), 2)]:
        sub, embed, proj = big.subfield(s)
        assert embed[0] == 0 and embed[1] == 1
        for a in range(sub.size):
            assert proj[embed[a]] == a
            for b in range(sub.size):
                assert embed[sub.add(a, b)] == big.add(embed[a], embed[b])
                assert embed[sub.mul(a, b)] == big.mul(embed[a], embed[b])


def test_prime_subfield_embeds_as_constants():
    _, embed, _ = F9.subfield(1)
    assert embed == [0, 1, 2]


def test_modulus_selection_deterministic():
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(3, 3) == (1, 2, 0, 1)
    assert smallest_irreducible(3, 4) == (2, 1, 0, 0, 1)
    assert Field(3, 4).modulus == Field(3, 4).modulus


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        Field(3, 2, (2, 0, 1))  # x^2 + 2 = (x+1)(x+2)


def test_even_characteristic_rejected():
    with pytest.raises(ValueError):
        Field(2, 3)


def test_size_guard():
    with pytest.raises(SizeGuard):
        Field(3, 21)


def test_serialization_round_trip():
    for field in (F3, F9, canonical_field(7, 2)):
        d = field.to_dict()
        assert d == {"p": field.p, "m": field.m, "modulus": list(field.modulus)}
        assert Field.from_dict(d) == field
