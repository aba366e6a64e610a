import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sidon_designs.errors import FieldTooLarge, IncompatibleFields, NotAPrimePower
from sidon_designs.finite_field import (
    PrimePower,
    _code_to_coeffs,
    _coeffs_to_code,
    _poly_mulmod,
    discrete_log,
    is_irreducible,
    is_prime_power,
    make_field,
    trace,
)

PRIME_POWERS_64 = [q for q in range(2, 65) if is_prime_power(q)]


def _brute_order(x, one):
    y, n = x, 1
    while y != one:
        y, n = y * x, n + 1
    return n


def test_is_prime_power_examples():
    assert is_prime_power(8) == PrimePower(2, 3)
    assert is_prime_power(1) is None
    assert is_prime_power(121) == PrimePower(11, 2)
    assert is_prime_power(12) is None
    assert is_prime_power(0) is None


def test_is_prime_power_matches_factor_search():
    for n in range(2, 600):
        expected = any(p**k == n for p in range(2, n + 1) if all(p % r for r in range(2, p)) for k in range(1, 11))
        assert (is_prime_power(n) is not None) == expected, n


def test_make_field_prime_examples():
    F = make_field(7)
    assert F.generator.code == 3
    # 2 is not primitive mod 7: 2^3 = 8 = 1
    assert pow(2, 3, 7) == 1
    assert make_field(2).generator.code == 1


@pytest.mark.parametrize("q", [12, 1, 0, 6, 100])
def test_make_field_rejects_non_prime_powers(q):
    with pytest.raises(NotAPrimePower):
        make_field(q)


def test_field_cap():
    with pytest.raises(FieldTooLarge):
        make_field(2**21)
    assert make_field(2**11, cap=2**11).q == 2**11


def test_gf4_examples():
    F = make_field(4)
    assert F.modulus == (1, 1, 1)  # x^2 + x + 1
    w = F.generator
    assert w.coeffs == (0, 1)
    w2 = w * w
    assert w2.coeffs == (1, 1)
    assert w * w2 == F.one
    assert w + w2 == F.one


def test_gf3_add():
    F = make_field(3)
    assert F.element(2) + F.element(2) == F.element(1)


def test_inverse_of_zero_raises():
    F = make_field(5)
    with pytest.raises(ZeroDivisionError):
        F.inv(F.zero)
    with pytest.raises(ZeroDivisionError):
        discrete_log(F.zero)


def test_discrete_log_examples():
    F = make_field(7)
    assert discrete_log(F.element(3)) == 1
    assert discrete_log(F.element(1)) == 0
    assert discrete_log(F.element(2)) == 2


@pytest.mark.parametrize("q", PRIME_POWERS_64)
def test_modulus_is_smallest_irreducible(q):
    F = make_field(q)
    pp = is_prime_power(q)
    assert len(F.modulus) == pp.k + 1 and F.modulus[-1] == 1
    assert is_irreducible(F.modulus, pp.p)
    # every monic of smaller code is reducible: brute force via root/factor search
    for low in range(_coeffs_to_code(F.modulus[:-1], pp.p)):
        f = _code_to_coeffs(low, pp.p, pp.k) + [1]
        assert not is_irreducible(f, pp.p)


@pytest.mark.parametrize("q", PRIME_POWERS_64)
def test_generator_is_smallest_primitive(q):
    F = make_field(q)
    assert _brute_order(F.generator, F.one) == q - 1
    for code in range(1, F.generator.code):
        assert _brute_order(F.element(code), F.one) < q - 1


@pytest.mark.parametrize("q", PRIME_POWERS_64)
def test_log_tables_match_polynomial_arithmetic(q):
    # table multiplication versus schoolbook multiplication mod the modulus
    F = make_field(q)
    codes = np.arange(q)
    a, b = np.meshgrid(codes, codes, indexing="ij")
    table = F.mul_codes(a, b)
    for x, y in itertools.product(range(q), repeat=2):
        prod = _poly_mulmod(_code_to_coeffs(x, F.p, F.k), _code_to_coeffs(y, F.p, F.k), F.modulus, F.p)
        assert table[x, y] == _coeffs_to_code(prod, F.p)
    assert (F.antilog[F.log[1:]] == codes[1:]).all()


@pytest.mark.parametrize("q", PRIME_POWERS_64)
def test_field_axioms_exhaustive(q):
    F = make_field(q)
    a, b, c = np.meshgrid(*(np.arange(q),) * 3, indexing="ij")
    add, mul = F.add_codes, F.mul_codes
    assert (add(add(a, b), c) == add(a, add(b, c))).all()
    assert (mul(mul(a, b), c) == mul(a, mul(b, c))).all()
    assert (mul(a, add(b, c)) == add(mul(a, b), mul(a, c))).all()
    assert (add(a, b) == add(b, a)).all() and (mul(a, b) == mul(b, a)).all()
    x = np.arange(1, q)
    assert (mul(x, F.antilog[(-F.log[x]) % (q - 1)]) == 1).all()
    assert (add(x, F.neg_codes(x)) == 0).all()


def test_trace_gf4_over_gf2():
    F4, F2 = make_field(4), make_field(2)
    w = F4.generator
    assert trace(w, F2) == F2.one
    # direct: w + w^2
    assert (w + w**2) == F4.one


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2), (5, 2), (4, 3), (7, 2), (2, 6), (8, 2), (9, 2), (16, 3)])
def test_trace_kernel_and_linearity(q, m):
    F, base = make_field(q**m), make_field(q)
    if q**m > 4096:
        pytest.skip("enumeration bound")
    codes = np.arange(F.q)
    tr = F.trace_codes(codes, base)
    assert (tr == 0).sum() == q ** (m - 1)
    assert set(tr.tolist()) == set(range(q))
    # scalar route: sum of q-power Frobenius images, then Frobenius-fixed
    emb, _ = F.embedding(base)
    for x in F.elements()[:64]:
        y = x
        acc = x
        for _ in range(m - 1):
            y = y**q
            acc = acc + y
        assert acc.code == emb[tr[x.code]]
        assert acc**q == acc
    # GF(q)-linearity on a sample
    for c in base.elements():
        cc = F.element(int(emb[c.code]))
        for x, y in [(F.element(5 % F.q), F.element(7 % F.q)), (F.generator, F.one)]:
            lhs = F.trace(cc * x + y, base)
            assert lhs == c * F.trace(x, base) + F.trace(y, base)


def test_trace_zero_is_zero():
    for q, m in [(2, 2), (3, 3), (5, 2)]:
        F, base = make_field(q**m), make_field(q)
        assert trace(F.zero, base) == base.zero


def test_gf9_trace_kernel_size():
    F9, F3 = make_field(9), make_field(3)
    assert sum(1 for x in F9.elements() if trace(x, F3) == F3.zero) == 3


def test_incompatible_fields():
    with pytest.raises(IncompatibleFields):
        make_field(8).trace(make_field(8).one, make_field(4))
    with pytest.raises(IncompatibleFields):
        make_field(9).trace(make_field(9).one, make_field(2))
    with pytest.raises(IncompatibleFields):
        make_field(9).one + make_field(3).one


def test_embedding_is_a_field_homomorphism():
    for big, small in [(16, 4), (64, 8), (64, 4), (81, 9), (27, 3)]:
        F, K = make_field(big), make_field(small)
        emb, _ = F.embedding(K)
        a, b = np.meshgrid(np.arange(small), np.arange(small), indexing="ij")
        assert (emb[K.add_codes(a, b)] == F.add_codes(emb[a], emb[b])).all()
        assert (emb[K.mul_codes(a, b)] == F.mul_codes(emb[a], emb[b])).all()


def test_deterministic_tables():
    F = make_field(3**5)
    G = type(F)(3, 5)  # rebuild outside the cache
    assert F.modulus == G.modulus
    assert (F.antilog == G.antilog).all()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([8, 9, 25, 27, 32, 49, 64, 81, 121, 128]), st.data())
def test_scalar_ops_are_consistent(q, data):
    F = make_field(q)
    x = F.element(data.draw(st.integers(0, q - 1)))
    y = F.element(data.draw(st.integers(1, q - 1)))
    assert (x - y) + y == x
    assert (x / y) * y == x
    assert x ** (q - 1) == (F.one if x else F.zero)
    assert F.element(x.coeffs) == x
    if x:
        assert F.from_log(discrete_log(x)) == x
