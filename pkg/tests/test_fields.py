import pytest

from psl2kit.fields import (
    CUBIC_X3_X2_1,
    CUBIC_X3_X_1,
    Field,
    FieldTooLarge,
    IndexOutOfRange,
    InversionOfZero,
    NotOddPrime,
    NotPrime,
    ReduciblePolynomial,
    default_modulus,
    field_of_order,
    gf8_labeling,
    is_prime,
    poly_is_irreducible,
    primitive_root,
    quadratic_classes,
)

PRIMES_TO_101 = [p for p in range(3, 102) if is_prime(p)]

# every extension order exercised somewhere in the package, plus a spread
# of larger tables up to the q <= 512 invariant range
BUILT_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 64, 81, 121, 169, 256, 343, 512]


@pytest.fixture(scope="module", params=BUILT_ORDERS)
def built_field(request):
    return field_of_order(request.param)


def test_field_axioms_exhaustive(built_field):
    f = built_field
    q = f.order
    elements = range(q)
    for a in elements:
        for b in elements:
            assert f.mul(a, b) == f.mul(b, a)
            if a != 0:
                assert f.mul(a, f.inv(a)) == 1
    # distributivity over the full cube where it stays cheap, otherwise over
    # all pairs with a deterministic set of third operands
    third = elements if q <= 81 else [0, 1, 2, f.primitive_element(), q - 1]
    for a in elements:
        for b in elements:
            for c in third:
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_addition_group_structure(built_field):
    f = built_field
    for a in range(f.order):
        assert f.add(a, 0) == a
        assert f.add(a, f.neg(a)) == 0
        for b in range(min(f.order, 32)):
            assert f.add(a, b) == f.add(b, a)


def test_inverse_by_scan_gf7():
    f = Field(7)
    scan = next(x for x in range(1, 7) if 2 * x % 7 == 1)
    assert scan == 4
    assert f.inv(2) == scan
    assert f.neg(1) == 6


def test_gf8_generator_relations():
    f = Field(2, 3, CUBIC_X3_X_1)
    zeta = 2
    assert f.add(1, zeta) == f.pow(zeta, 3)
    assert f.add(1, f.pow(zeta, 2)) == f.pow(zeta, 6)
    assert f.add(1, f.pow(zeta, 4)) == f.pow(zeta, 5)


def test_pow_negative_exponents():
    f = Field(7)
    assert f.pow(2, -1) == f.inv(2)
    assert f.pow(3, -2) == f.inv(f.mul(3, 3))
    assert f.pow(0, 0) == 1
    assert f.pow(0, 5) == 0
    with pytest.raises(InversionOfZero):
        f.pow(0, -1)
    with pytest.raises(InversionOfZero):
        f.inv(0)


def test_index_bounds_checked():
    f = Field(5)
    with pytest.raises(IndexOutOfRange):
        f.add(1, 5)
    with pytest.raises(IndexOutOfRange):
        f.mul(-1, 2)


def test_field_construction_errors():
    with pytest.raises(NotPrime):
        Field(6)
    with pytest.raises(FieldTooLarge):
        Field(2, 17)
    with pytest.raises(ReduciblePolynomial):
        Field(2, 3, (1, 1, 1, 1))  # x^3+x^2+x+1 = (x+1)(x^2+1)
    with pytest.raises(NotPrime):
        field_of_order(12)
    with pytest.raises(NotPrime):
        field_of_order(1)


def test_default_modulus_is_lex_smallest_irreducible():
    assert default_modulus(2, 3) == CUBIC_X3_X_1
    assert default_modulus(3, 2) == (1, 0, 1)  # x^2 + 1 over GF(3)
    assert poly_is_irreducible((1, 0, 1), 3)
    assert not poly_is_irreducible((1, 2, 1), 3)  # (x+1)^2


def test_max_order_field_builds():
    f = Field(2, 16)
    g = f.primitive_element()
    assert f.multiplicative_order(g) == f.order - 1
    assert f.mul(g, f.inv(g)) == 1


def test_quadratic_classes_examples():
    qc7 = quadratic_classes(7)
    assert qc7.squares == (1, 2, 4)
    assert qc7.nonsquares == (3, 5, 6)
    qc5 = quadratic_classes(5)
    assert qc5.squares == (1, 4)
    assert qc5.nonsquares == (2, 3)
    assert quadratic_classes(13).is_square(12)  # -1 is a square, 13 = 1 mod 4


def test_quadratic_classes_oracle_by_squaring():
    for p in PRIMES_TO_101:
        squares = sorted({a * a % p for a in range(1, p)})
        qc = quadratic_classes(p)
        assert qc.squares == tuple(squares)
        assert qc.nonsquares == tuple(sorted(set(range(1, p)) - set(squares)))
        assert len(qc.squares) == len(qc.nonsquares) == (p - 1) // 2


def test_quadratic_class_multiplicativity_exhaustive():
    for p in PRIMES_TO_101:
        qc = quadratic_classes(p)
        squares = set(qc.squares)
        for a in range(1, p):
            for b in range(1, p):
                product_is_square = (a * b % p) in squares
                expected = (a in squares) == (b in squares)
                assert product_is_square == expected


def test_minus_one_square_iff_one_mod_four():
    for p in PRIMES_TO_101:
        assert quadratic_classes(p).is_square(p - 1) == (p % 4 == 1)


def test_quadratic_classes_requires_odd_prime():
    with pytest.raises(NotOddPrime):
        quadratic_classes(2)
    with pytest.raises(NotOddPrime):
        quadratic_classes(9)


def test_primitive_roots():
    assert primitive_root(7) == 3
    assert primitive_root(5) == 2
    assert primitive_root(2) == 1
    with pytest.raises(NotPrime):
        primitive_root(8)
    for p in PRIMES_TO_101[:10]:
        g = primitive_root(p)
        assert Field(p).multiplicative_order(g) == p - 1
        for smaller in range(2, g):
            assert Field(p).multiplicative_order(smaller) < p - 1


GF8_SHIFT = (1, 2, 3, 4, 5, 6, 0, 7)
GF8_DOUBLE = (0, 2, 4, 6, 1, 3, 5, 7)


@pytest.mark.parametrize(
    "modulus,expected_involution",
    [
        (CUBIC_X3_X_1, "(0 inf)(1 3)(2 6)(4 5)"),
        (CUBIC_X3_X2_1, "(0 inf)(1 5)(2 3)(4 6)"),
    ],
)
def test_gf8_labeling_transports(modulus, expected_involution, line7):
    labeling = gf8_labeling(modulus)
    addition = line7.perm(labeling.transport(labeling.add_one_map()))
    assert addition.cycle_notation() == expected_involution
    assert labeling.transport(labeling.mul_generator_map()) == GF8_SHIFT
    assert labeling.transport(labeling.frobenius_map()) == GF8_DOUBLE


def test_gf8_labeling_round_trip():
    for modulus in (CUBIC_X3_X_1, CUBIC_X3_X2_1):
        labeling = gf8_labeling(modulus)
        for field_map in (
            labeling.add_one_map(),
            labeling.mul_generator_map(),
            labeling.frobenius_map(),
        ):
            assert labeling.untransport(labeling.transport(field_map)) == field_map


def test_gf8_labeling_rejects_reducible_cubic():
    with pytest.raises(ReduciblePolynomial):
        gf8_labeling((1, 1, 1, 1))
    with pytest.raises(ValueError):
        gf8_labeling((1, 1, 1))  # not a cubic
