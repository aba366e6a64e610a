"""Finite abelian groups presented as Z_{n_1} x ... x Z_{n_r}, and their characters.

The character with exponent vector m sends s to exp(2 pi i sum_j m_j s_j / n_j).
Phases are reduced modulo 1 with integer arithmetic over lcm(n_1, ..., n_r)
before the exponential is taken, so equal roots of unity come out bitwise
equal however large the group is.

Elements and characters are both enumerated in lexicographic order of their
coordinate vectors.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULTS
from .errors import GroupMismatch, GroupTooLarge
from .finite_field import FieldElement, FieldTable


@dataclass(frozen=True)
class AbelianGroup:
    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(n) for n in self.moduli))
        if any(n < 1 for n in self.moduli):
            raise ValueError(f"cyclic factors must have order >= 1, got {self.moduli}")

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def __str__(self):
        return " x ".join(f"Z_{n}" for n in self.moduli) or "Z_1"

    def element(self, residues: Iterable[int]) -> GroupElement:
        residues = tuple(int(r) for r in residues)
        if len(residues) != self.rank:
            raise GroupMismatch(f"{residues} has the wrong length for {self}")
        return GroupElement(self, tuple(r % n for r, n in zip(residues, self.moduli)))

    @property
    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self, r) for r in itertools.product(*(range(n) for n in self.moduli))]

    def residue_array(self) -> np.ndarray:
        """All elements as an (order, rank) array, lexicographic."""
        return _lex_grid(self.moduli)

    def characters(self, cap: int = DEFAULTS.group_cap) -> list[CharacterIndex]:
        if self.order > cap:
            raise GroupTooLarge(f"|G| = {self.order} exceeds the cap {cap}")
        return [CharacterIndex(self, m) for m in itertools.product(*(range(n) for n in self.moduli))]


@dataclass(frozen=True, order=False)
class GroupElement:
    group: AbelianGroup
    residues: tuple[int, ...]

    def _same(self, other: GroupElement) -> None:
        if self.group != other.group:
            raise GroupMismatch(f"elements of {self.group} and {other.group}")

    def __add__(self, other: GroupElement) -> GroupElement:
        return g_add(self, other)

    def __neg__(self) -> GroupElement:
        return g_neg(self)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return g_add(self, g_neg(other))

    def __lt__(self, other: GroupElement) -> bool:
        self._same(other)
        return self.residues < other.residues

    def __str__(self):
        return ",".join(map(str, self.residues))


@dataclass(frozen=True)
class CharacterIndex:
    group: AbelianGroup
    exponents: tuple[int, ...]


def g_add(a: GroupElement, b: GroupElement) -> GroupElement:
    a._same(b)
    return GroupElement(a.group, tuple((x + y) % n for x, y, n in zip(a.residues, b.residues, a.group.moduli)))


def g_neg(a: GroupElement) -> GroupElement:
    return GroupElement(a.group, tuple(-x % n for x, n in zip(a.residues, a.group.moduli)))


def _lex_grid(moduli: Sequence[int]) -> np.ndarray:
    if not moduli:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*(np.arange(n, dtype=np.int64) for n in moduli), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def phase_numerators(moduli: Sequence[int], exponents, residues) -> tuple[np.ndarray, int]:
    """Integer phases: (N, L) with character value exp(2 pi i N / L), 0 <= N < L.

    ``exponents`` is (a, r) and ``residues`` is (b, r); N has shape (a, b).
    """
    lcm = math.lcm(*moduli) if moduli else 1
    scale = np.array([lcm // n for n in moduli], dtype=np.int64)
    exponents = np.asarray(exponents, dtype=np.int64).reshape(-1, len(moduli))
    residues = np.asarray(residues, dtype=np.int64).reshape(-1, len(moduli))
    num = np.zeros((exponents.shape[0], residues.shape[0]), dtype=np.int64)
    for j in range(len(moduli)):
        num = (num + np.outer(exponents[:, j] * scale[j] % lcm, residues[:, j]) % lcm) % lcm
    return num, lcm


def character_values(group: AbelianGroup, exponents, residues) -> np.ndarray:
    num, lcm = phase_numerators(group.moduli, exponents, residues)
    return np.exp(2j * np.pi * (num / lcm))


def char_eval(m: CharacterIndex, s: GroupElement) -> complex:
    if m.group != s.group:
        raise GroupMismatch(f"character of {m.group} evaluated on {s.group}")
    lcm = math.lcm(*m.group.moduli) if m.group.moduli else 1
    num = sum(e * r * (lcm // n) for e, r, n in zip(m.exponents, s.residues, m.group.moduli)) % lcm
    return cmath.exp(2j * math.pi * (num / lcm))


def characters(group: AbelianGroup, cap: int = DEFAULTS.group_cap) -> list[CharacterIndex]:
    return group.characters(cap)


# -- groups attached to finite fields ----------------------------------------


@dataclass(frozen=True)
class FieldGroupMap:
    """A map from (nonzero) field elements into a group, with a section back."""

    field: FieldTable
    group: AbelianGroup
    kind: str

    def to_group(self, x: FieldElement) -> GroupElement:
        if x.field is not self.field:
            raise GroupMismatch(f"element of GF({x.field.q}) mapped with GF({self.field.q})")
        if self.kind == "additive":
            return GroupElement(self.group, x.coeffs)
        return GroupElement(self.group, (self.field.discrete_log(x) % self.group.moduli[0],))

    def from_group(self, g: GroupElement) -> FieldElement:
        """Inverse for the bijections; the coset representative generator**i for quotients."""
        if g.group != self.group:
            raise GroupMismatch(f"element of {g.group} mapped back from {self.group}")
        if self.kind == "additive":
            return self.field.element(g.residues)
        return self.field.from_log(g.residues[0])

    def codes_to_residues(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if self.kind == "additive":
            return self.field.digits(codes)
        return (self.field.log[codes] % self.group.moduli[0])[:, None]


def additive_group_of(field: FieldTable) -> FieldGroupMap:
    return FieldGroupMap(field, AbelianGroup((field.p,) * field.k), "additive")


def mult_group_of(field: FieldTable) -> FieldGroupMap:
    return FieldGroupMap(field, AbelianGroup((field.q - 1,)), "multiplicative")


def quotient_mult_group(field: FieldTable, base: FieldTable) -> FieldGroupMap:
    """GF(Q)^x / GF(q)^x as Z_{(Q-1)/(q-1)}; the class of generator**i is i mod (Q-1)/(q-1).

    The subgroup GF(q)^x is generated by generator**((Q-1)/(q-1)), so the
    class map is well defined.
    """
    field.embedding(base)
    return FieldGroupMap(field, AbelianGroup(((field.q - 1) // (base.q - 1),)), "quotient")
