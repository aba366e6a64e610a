"""Dense Sidon sets from finite fields, brute-force Sidon checks, and m(d) searches.

Every construction returns its elements sorted lexicographically by group
coordinates; ``remove_points`` drops from the end of that order.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable, TextIO

import numpy as np

from .abelian_group import (
    AbelianGroup,
    GroupElement,
    additive_group_of,
    mult_group_of,
    quotient_mult_group,
)
from .config import DEFAULTS
from .errors import (
    ConstructionSelfCheckFailed,
    DTooLarge,
    EvenCharacteristic,
    KTooLarge,
    NotAPrimePower,
    QTooSmall,
)
from .finite_field import extension_field, is_prime_power, make_field, prime_factors

FAMILY_TAGS = ("ErdosTuran", "Singer", "Bose", "Spence", "Hughes", "Custom")


@dataclass(frozen=True)
class SidonSet:
    """A subset of a finite abelian group tagged with the construction it came from.

    Being Sidon is not enforced here; ``is_sidon`` is the check.
    """

    group: AbelianGroup
    elements: tuple[GroupElement, ...]
    family: str = "Custom"
    q: int | None = None
    removed: int = 0

    def __post_init__(self):
        if self.family not in FAMILY_TAGS:
            raise ValueError(f"unknown family {self.family!r}")
        elements = tuple(self.elements)
        if any(e.group != self.group for e in elements):
            raise ValueError("element outside the set's group")
        if len(set(elements)) != len(elements):
            raise ValueError("elements must be distinct")
        object.__setattr__(self, "elements", elements)

    def __len__(self):
        return len(self.elements)

    @property
    def params(self) -> tuple[int, int]:
        return self.group.order, len(self.elements)

    @property
    def label(self) -> str:
        if self.family == "Custom" or self.q is None:
            return self.family
        name = "Erdos-Turan" if self.family == "ErdosTuran" else self.family
        return f"{name}({self.q})" + (f"-{self.removed}" if self.removed else "")

    def residues(self) -> np.ndarray:
        return np.array([e.residues for e in self.elements], dtype=np.int64).reshape(len(self), self.group.rank)


def _from_residues(group: AbelianGroup, rows: Iterable[Iterable[int]], **tags) -> SidonSet:
    elements = sorted({tuple(int(v) for v in r) for r in rows})
    return SidonSet(group, tuple(GroupElement(group, r) for r in elements), **tags)


def custom_set(moduli: Iterable[int], rows: Iterable[Iterable[int] | int]) -> SidonSet:
    group = AbelianGroup(tuple(moduli))
    rows = [(r,) if isinstance(r, int) else r for r in rows]
    return _from_residues(group, [group.element(r).residues for r in rows])


# -- checks -------------------------------------------------------------------


def is_sidon(S: SidonSet) -> bool:
    """All ordered differences of distinct elements are distinct."""
    seen = set()
    for a, b in itertools.permutations(S.elements, 2):
        diff = (a - b).residues
        if diff in seen:
            return False
        seen.add(diff)
    return True


def find_violation(S: SidonSet) -> tuple[GroupElement, ...] | None:
    """First (a, b, c, d) with a + b = c + d and {a, b} != {c, d}, scanning pairs a <= b."""
    sums: dict[tuple[int, ...], tuple[GroupElement, GroupElement]] = {}
    for a, b in itertools.combinations_with_replacement(S.elements, 2):
        s = (a + b).residues
        if s in sums:
            c, d = sums[s]
            return (a, b, c, d)
        sums[s] = (a, b)
    return None


# -- the five families --------------------------------------------------------


def _prime_power(q: int):
    pp = is_prime_power(q)
    if pp is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    return pp


def erdos_turan(q: int, cap: int = DEFAULTS.field_cap) -> SidonSet:
    """{(x, x^2)} in (GF(q), +)^2; needs odd q."""
    pp = _prime_power(q)
    if pp.p == 2:
        raise EvenCharacteristic("char(q)>2 required")
    F = make_field(q, cap)
    add = additive_group_of(F)
    group = AbelianGroup(add.group.moduli * 2)
    codes = np.arange(q)
    rows = np.hstack([F.digits(codes), F.digits(F.mul_codes(codes, codes))])
    return _from_residues(group, rows, family="ErdosTuran", q=q)


def singer(q: int, cap: int = DEFAULTS.field_cap) -> SidonSet:
    """Classes of nonzero trace-zero elements of GF(q^3) in GF(q^3)^x / GF(q)^x."""
    _prime_power(q)
    F, base = extension_field(q, 3, cap)
    quot = quotient_mult_group(F, base)
    codes = np.arange(1, F.q)
    zero = codes[F.trace_codes(codes, base) == 0]
    S = _from_residues(quot.group, np.unique(quot.codes_to_residues(zero), axis=0), family="Singer", q=q)
    if len(S) != q + 1:
        raise ConstructionSelfCheckFailed(f"Singer({q}) has {len(S)} classes, expected {q + 1}")
    return S


def bose(q: int, cap: int = DEFAULTS.field_cap, literal: bool = False) -> SidonSet:
    """Discrete logs of {x in GF(q^2) : tr x = 1} in Z_{q^2-1}.

    ``literal=True`` takes the nonzero trace-zero elements instead. That set is
    a coset of GF(q)^x, has q - 1 points, and is not Sidon once q > 3; it is
    returned tagged ``Custom`` for use as a negative control.
    """
    _prime_power(q)
    F, base = extension_field(q, 2, cap)
    mult = mult_group_of(F)
    codes = np.arange(1, F.q)
    target = 0 if literal else 1
    level = codes[F.trace_codes(codes, base) == target]
    rows = mult.codes_to_residues(level)
    if literal:
        return _from_residues(mult.group, rows, family="Custom", q=q)
    S = _from_residues(mult.group, rows, family="Bose", q=q)
    if len(S) != q or not is_sidon(S):
        raise ConstructionSelfCheckFailed(f"Bose({q}) failed its size/Sidon self-check")
    return S


def spence(q: int, cap: int = DEFAULTS.field_cap) -> SidonSet:
    """{(x, x)} in GF(q)^x x (GF(q), +), coordinates (log x, coefficients of x)."""
    _prime_power(q)
    F = make_field(q, cap)
    group = AbelianGroup(mult_group_of(F).group.moduli + additive_group_of(F).group.moduli)
    codes = np.arange(1, q)
    rows = np.hstack([F.log[codes][:, None], F.digits(codes)])
    return _from_residues(group, rows, family="Spence", q=q)


def hughes(q: int, cap: int = DEFAULTS.field_cap) -> SidonSet:
    """{(x, y) : x, y != 0, x + y = 1} in (GF(q)^x)^2, coordinates by discrete log."""
    _prime_power(q)
    if q < 3:
        raise QTooSmall("Hughes needs q >= 3 (the set is empty for q = 2)")
    F = make_field(q, cap)
    group = AbelianGroup((q - 1, q - 1))
    x = np.arange(2, q)
    y = F.add_codes(1, F.neg_codes(x))
    rows = np.stack([F.log[x], F.log[y]], axis=1)
    return _from_residues(group, rows, family="Hughes", q=q)


def remove_points(S: SidonSet, k: int) -> SidonSet:
    if not 0 <= k <= len(S):
        raise KTooLarge(f"cannot remove {k} points from a set of size {len(S)}")
    return replace(S, elements=S.elements[: len(S) - k], removed=S.removed + k)


@dataclass(frozen=True)
class Family:
    tag: str
    cli_name: str
    order: Callable[[int], int]
    size: Callable[[int], int]
    valid: Callable[[int], bool]
    build: Callable[..., SidonSet] = field(repr=False)


# m_known tie-break order.
FAMILIES = (
    Family("Singer", "singer", lambda q: q * q + q + 1, lambda q: q + 1, lambda q: True, singer),
    Family("Bose", "bose", lambda q: q * q - 1, lambda q: q, lambda q: True, bose),
    Family("Spence", "spence", lambda q: q * (q - 1), lambda q: q - 1, lambda q: True, spence),
    Family("Hughes", "hughes", lambda q: (q - 1) ** 2, lambda q: q - 2, lambda q: q >= 3, hughes),
    Family("ErdosTuran", "erdos-turan", lambda q: q * q, lambda q: q, lambda q: q % 2 == 1, erdos_turan),
)
FAMILY_BY_NAME = {f.cli_name: f for f in FAMILIES} | {f.tag: f for f in FAMILIES}


def build_family(name: str, q: int, cap: int = DEFAULTS.field_cap) -> SidonSet:
    return FAMILY_BY_NAME[name].build(q, cap=cap)


# -- m(d) -----------------------------------------------------------------------


@dataclass(frozen=True)
class KnownChoice:
    """The smallest group among the five families holding a Sidon set of size >= d."""

    d: int
    order: int
    family: str
    q: int | None
    removed: int

    @property
    def label(self) -> str:
        if self.q is None:
            return "trivial"
        name = "Erdos-Turan" if self.family == "ErdosTuran" else self.family
        return f"{name}({self.q})" + (f"-{self.removed}" if self.removed else "")

    def build(self, cap: int = DEFAULTS.field_cap) -> SidonSet:
        if self.q is None:
            group = AbelianGroup((1,))
            return SidonSet(group, (group.zero,))
        S = FAMILY_BY_NAME[self.family].build(self.q, cap=cap)
        return remove_points(S, self.removed)


def _first_q(family: Family, d: int) -> int:
    q = max(2, d - 2)
    while not (is_prime_power(q) and family.valid(q) and family.size(q) >= d):
        q += 1
    return q


def m_known_choice(d: int) -> KnownChoice:
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return KnownChoice(1, 1, "Custom", None, 0)
    best = None
    for fam in FAMILIES:
        q = _first_q(fam, d)
        cand = KnownChoice(d, fam.order(q), fam.tag, q, fam.size(q) - d)
        if best is None or cand.order < best.order:
            best = cand
    return best


def m_known(d: int, cap: int = DEFAULTS.field_cap) -> tuple[int, SidonSet]:
    choice = m_known_choice(d)
    return choice.order, choice.build(cap)


def _partitions(n: int, largest: int | None = None) -> Iterable[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def abelian_groups_of_order(n: int) -> list[AbelianGroup]:
    """One group per isomorphism class, as products of prime-power cyclic groups."""
    if n == 1:
        return [AbelianGroup((1,))]
    per_prime = []
    for p in prime_factors(n):
        e, m = 0, n
        while m % p == 0:
            m //= p
            e += 1
        per_prime.append([tuple(p**part for part in lam) for lam in _partitions(e)])
    return [AbelianGroup(tuple(sum(choice, ()))) for choice in itertools.product(*per_prime)]


def _sidon_subset(group: AbelianGroup, d: int) -> tuple[int, ...] | None:
    """Backtracking search for a d-point Sidon subset containing 0 (element indices)."""
    res = group.residue_array()
    n = len(res)
    radix = np.array([math.prod(group.moduli[j + 1 :]) for j in range(group.rank)], dtype=np.int64)
    mod = np.array(group.moduli, dtype=np.int64)
    diff = ((res[:, None, :] - res[None, :, :]) % mod) @ radix

    chosen = [0]
    used: set[int] = set()

    def extend(start: int) -> bool:
        if len(chosen) == d:
            return True
        for c in range(start, n):
            new = []
            for x in chosen:
                new += [int(diff[c, x]), int(diff[x, c])]
            if len(set(new)) == len(new) and used.isdisjoint(new):
                chosen.append(c)
                used.update(new)
                if extend(c + 1):
                    return True
                chosen.pop()
                used.difference_update(new)
        return False

    return tuple(chosen) if extend(1) else None


def m_exact(d: int, cap: int = DEFAULTS.m_exact_cap) -> int:
    """True minimum order of an abelian group containing a d-point Sidon set."""
    if d > cap:
        raise DTooLarge(f"m_exact is capped at d <= {cap}")
    if d < 1:
        raise ValueError("d must be >= 1")
    n = d * d - d + 1
    while True:
        if any(_sidon_subset(G, d) is not None for G in abelian_groups_of_order(n)):
            return n
        n += 1


# -- text serialization -------------------------------------------------------


def dumps(S: SidonSet) -> str:
    out = io.StringIO()
    write(S, out)
    return out.getvalue()


def write(S: SidonSet, dest: TextIO | str | Path) -> None:
    if not hasattr(dest, "write"):
        with open(dest, "w") as fh:
            write(S, fh)
        return
    moduli = " x ".join(map(str, S.group.moduli))
    q = "none" if S.q is None else S.q
    dest.write(f"group: {moduli}; family: {S.family}; q: {q}; removed: {S.removed}\n")
    for e in S.elements:
        dest.write(",".join(map(str, e.residues)) + "\n")


def loads(text: str) -> SidonSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty Sidon set file")
    header = {}
    for part in lines[0].split(";"):
        key, _, value = part.partition(":")
        header[key.strip()] = value.strip()
    try:
        moduli = tuple(int(n) for n in header["group"].split("x"))
        family = header["family"]
        q = None if header["q"] == "none" else int(header["q"])
        removed = int(header["removed"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed header: {lines[0]!r}") from exc
    group = AbelianGroup(moduli)
    elements = []
    for ln in lines[1:]:
        vals = tuple(int(v) for v in ln.split(","))
        if len(vals) != len(moduli) or any(not 0 <= v < n for v, n in zip(vals, moduli)):
            raise ValueError(f"bad element line {ln!r} for group {group}")
        elements.append(GroupElement(group, vals))
    return SidonSet(group, tuple(elements), family=family, q=q, removed=removed)


def read(src: TextIO | str | Path) -> SidonSet:
    if hasattr(src, "read"):
        return loads(src.read())
    return loads(Path(src).read_text())
