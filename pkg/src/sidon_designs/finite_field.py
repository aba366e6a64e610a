"""Arithmetic in GF(p^k) backed by log/antilog tables.

Elements are stored as integer codes: the polynomial
c_0 + c_1 x + ... + c_{k-1} x^{k-1} has code c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
Comparing codes is the lexicographic order on coefficient vectors read from
the leading coefficient down, which is the order used for choosing both the
modulus and the generator.

Tables are built once per (p, k) and shared; a table is never mutated after
construction.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .config import DEFAULTS
from .errors import FieldTooLarge, IncompatibleFields, NotAPrimePower


@dataclass(frozen=True)
class PrimePower:
    p: int
    k: int

    @property
    def q(self) -> int:
        return self.p**self.k


def smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1, ascending."""
    out = []
    while n > 1:
        f = smallest_prime_factor(n)
        out.append(f)
        while n % f == 0:
            n //= f
    return out


def is_prime_power(n: int) -> PrimePower | None:
    if n < 2:
        return None
    p = smallest_prime_factor(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return PrimePower(p, k) if n == 1 else None


# -- polynomials over Z_p as coefficient lists, constant term first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial f."""
    a = _trim(list(a))
    n = len(f) - 1
    while len(a) > n:
        c = a[-1]
        shift = len(a) - 1 - n
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, f, p)


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return _poly_mod(result, f, p)


def _code_to_coeffs(code: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _coeffs_to_code(coeffs: Sequence[int], p: int) -> int:
    code = 0
    for c in reversed(coeffs):
        code = code * p + c
    return code


def _monic(p: int, deg: int) -> Iterator[list[int]]:
    """Monic polynomials of exact degree deg, in code order of the lower part."""
    for low in range(p**deg):
        yield _code_to_coeffs(low, p, deg) + [1]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    n = len(f) - 1
    if n <= 1:
        return n == 1
    for deg in range(1, n // 2 + 1):
        for g in _monic(p, deg):
            if not _poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for f in _monic(p, k):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {k} over Z_{p}")


def _has_order(g: list[int], order: int, f: Sequence[int], p: int) -> bool:
    if _poly_powmod(g, order, f, p) != [1]:
        return False
    return all(_poly_powmod(g, order // r, f, p) != [1] for r in prime_factors(order))


class FieldElement:
    """An element of a FieldTable; supports + - * / ** with elements of the same field."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldTable, code: int):
        self.field = field
        self.code = int(code)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_code_to_coeffs(self.code, self.field.p, self.field.k))

    def __add__(self, other):
        return self.field.add(self, other)

    def __sub__(self, other):
        return self.field.sub(self, other)

    def __mul__(self, other):
        return self.field.mul(self, other)

    def __truediv__(self, other):
        return self.field.mul(self, self.field.inv(other))

    def __neg__(self):
        return self.field.neg(self)

    def __pow__(self, e: int):
        return self.field.power(self, e)

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.code == other.code

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.code))

    def __repr__(self):
        return f"GF({self.field.q})<{','.join(map(str, self.coeffs))}>"


class FieldTable:
    """GF(p^k) with precomputed discrete log / antilog tables.

    ``log[c]`` is the discrete log of the element with code ``c`` (``log[0] = -1``),
    ``antilog[i]`` is the code of ``generator**i`` for ``0 <= i < q - 1``.
    """

    def __init__(self, p: int, k: int):
        self.pp = PrimePower(p, k)
        self.p, self.k, self.q = p, k, p**k
        self.modulus = smallest_irreducible(p, k)
        self._pw = p ** np.arange(k, dtype=np.int64)
        gen_code = self._find_generator()
        self.antilog = self._power_table(gen_code)
        log = np.full(self.q, -1, dtype=np.int64)
        log[self.antilog] = np.arange(self.q - 1, dtype=np.int64)
        if self.q > 1 and (log[1:] < 0).any():
            raise AssertionError("generator is not primitive")
        self.log = log
        self.generator = FieldElement(self, gen_code)
        self._embeddings: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}

    def __repr__(self):
        return f"FieldTable(GF({self.q}), modulus={self.modulus})"

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        for code in range(1, self.q):
            g = _code_to_coeffs(code, self.p, self.k)
            if _has_order(g, self.q - 1, self.modulus, self.p):
                return code
        raise AssertionError("no primitive element")

    def _power_table(self, gen_code: int) -> np.ndarray:
        # Multiplication by g is Z_p-linear; walk sqrt(q) powers one at a time,
        # then jump whole blocks with M^B.
        p, k, n = self.p, self.k, self.q - 1
        g = _code_to_coeffs(gen_code, p, k)
        cols = []
        for i in range(k):
            xi = [0] * i + [1]
            cols.append(_code_to_coeffs(_coeffs_to_code(_poly_mulmod(g, xi, self.modulus, p), p), p, k))
        mat = np.array(cols, dtype=np.int64).T
        block = math.isqrt(n) + 1
        rows = np.zeros((block, k), dtype=np.int64)
        rows[0, 0] = 1
        for j in range(1, block):
            rows[j] = mat @ rows[j - 1] % p
        jump = np.eye(k, dtype=np.int64)
        for _ in range(block):
            jump = mat @ jump % p
        chunks, done = [], 0
        while done < n:
            chunks.append(rows @ self._pw)
            done += block
            rows = rows @ jump.T % p
        return np.concatenate(chunks)[:n]

    # -- construction of elements ---------------------------------------------

    def element(self, value: int | Sequence[int]) -> FieldElement:
        """Element from an integer code or a coefficient vector (constant term first)."""
        if isinstance(value, (int, np.integer)):
            code = int(value)
        else:
            coeffs = [int(c) % self.p for c in value]
            if len(coeffs) > self.k:
                coeffs = _poly_mod(coeffs, self.modulus, self.p)
            code = _coeffs_to_code(coeffs, self.p)
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for GF({self.q})")
        return FieldElement(self, code)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.q)]

    def from_log(self, i: int) -> FieldElement:
        return FieldElement(self, int(self.antilog[i % (self.q - 1)]))

    # -- vectorized code arithmetic -------------------------------------------

    def digits(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return codes[..., None] // self._pw % self.p

    def add_codes(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        return (self.digits(a) + self.digits(b)) % self.p @ self._pw

    def neg_codes(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        return (-self.digits(a)) % self.p @ self._pw

    def scale_codes(self, c: int, a) -> np.ndarray:
        """Multiply by the prime-field constant c."""
        return self.digits(a) * (c % self.p) % self.p @ self._pw

    def mul_codes(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.antilog[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_codes(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        n = self.q - 1
        out = self.antilog[self.log[a] * (e % n) % n]
        return np.where(a == 0, 0, out)

    # -- scalar arithmetic ----------------------------------------------------

    def _check(self, *xs: FieldElement) -> None:
        for x in xs:
            if x.field is not self:
                raise IncompatibleFields(f"element of GF({x.field.q}) used in GF({self.q})")

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a, b)
        return FieldElement(self, int(self.add_codes(a.code, b.code)))

    def neg(self, a: FieldElement) -> FieldElement:
        self._check(a)
        return FieldElement(self, int(self.neg_codes(a.code)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.add(a, self.neg(b))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a, b)
        return FieldElement(self, int(self.mul_codes(a.code, b.code)))

    def inv(self, a: FieldElement) -> FieldElement:
        self._check(a)
        if a.code == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.from_log(-int(self.log[a.code]))

    def power(self, a: FieldElement, e: int) -> FieldElement:
        self._check(a)
        if e < 0:
            return self.power(self.inv(a), -e)
        return FieldElement(self, int(self.pow_codes(a.code, e)))

    def discrete_log(self, x: FieldElement) -> int:
        self._check(x)
        if x.code == 0:
            raise ZeroDivisionError("discrete log of zero")
        return int(self.log[x.code])

    # -- subfields and trace --------------------------------------------------

    def embedding(self, base: FieldTable) -> tuple[np.ndarray, np.ndarray]:
        """Embed ``base`` as a subfield.

        Returns ``(emb, back)``: ``emb[c]`` is the code in this field of the base
        element with code ``c``; ``back`` inverts it (``-1`` outside the image).
        The image of x is the smallest-code root of the base modulus.
        """
        if base.p != self.p or self.k % base.k:
            raise IncompatibleFields(f"GF({base.q}) is not a subfield of GF({self.q})")
        key = (base.p, base.k)
        if key not in self._embeddings:
            everything = np.arange(self.q, dtype=np.int64)
            if base.k == 1:
                root = 0
            else:
                acc = np.zeros((self.q, self.k), dtype=np.int64)
                for i, c in enumerate(base.modulus):
                    if c:
                        acc += self.digits(self.pow_codes(everything, i)) * c
                root = int(np.flatnonzero(~(acc % self.p).any(axis=1))[0])
            powers = self.digits([int(self.pow_codes(root, i)) for i in range(base.k)])
            emb = base.digits(np.arange(base.q)) @ powers % self.p @ self._pw
            back = np.full(self.q, -1, dtype=np.int64)
            back[emb] = np.arange(base.q)
            if (back[emb] != np.arange(base.q)).any():
                raise AssertionError("subfield embedding is not injective")
            self._embeddings[key] = (emb, back)
        return self._embeddings[key]

    def trace_codes(self, codes, base: FieldTable) -> np.ndarray:
        """Relative trace to ``base`` of every code in ``codes``, as base-field codes."""
        _, back = self.embedding(base)
        codes = np.asarray(codes, dtype=np.int64)
        acc, term = codes, codes
        for _ in range(self.k // base.k - 1):
            term = self.pow_codes(term, base.q)
            acc = self.add_codes(acc, term)
        out = back[acc]
        if (out < 0).any():
            raise AssertionError("trace value outside the base field")
        return out

    def trace(self, x: FieldElement, base: FieldTable) -> FieldElement:
        """x + x^q + ... + x^(q^(m-1)) for q = |base|, returned as an element of base."""
        self._check(x)
        return FieldElement(base, int(self.trace_codes(x.code, base)))

    def frobenius(self, x: FieldElement, times: int = 1) -> FieldElement:
        return self.power(x, self.p**times)


@functools.lru_cache(maxsize=None)
def _field(p: int, k: int) -> FieldTable:
    return FieldTable(p, k)


def make_field(q: int, cap: int = DEFAULTS.field_cap) -> FieldTable:
    pp = is_prime_power(q)
    if pp is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    if q > cap:
        raise FieldTooLarge(f"GF({q}) exceeds the field cap {cap}")
    return _field(pp.p, pp.k)


def extension_field(q: int, m: int, cap: int = DEFAULTS.field_cap) -> tuple[FieldTable, FieldTable]:
    """(GF(q^m), GF(q)) as a compatible pair."""
    base = make_field(q, cap)
    return make_field(q**m, cap), base


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a.field.add(a, b)


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a.field.sub(a, b)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a.field.mul(a, b)


def inv(a: FieldElement) -> FieldElement:
    return a.field.inv(a)


def trace(x: FieldElement, base: FieldTable) -> FieldElement:
    return x.field.trace(x, base)


def discrete_log(x: FieldElement) -> int:
    return x.field.discrete_log(x)
