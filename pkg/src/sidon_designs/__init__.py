"""Dense Sidon sets, Bodmann-Haas weighted projective 2-designs, and bounds on n(d)."""

__version__ = "0.1.0"

from .abelian_group import AbelianGroup, CharacterIndex, GroupElement
from .bh_design import WeightedDesign, bodmann_haas, verify_direct, verify_frame_potential
from .finite_field import FieldElement, FieldTable, PrimePower, is_prime_power, make_field
from .sidon import SidonSet, bose, erdos_turan, hughes, is_sidon, m_exact, m_known, singer, spence

__all__ = [
    "AbelianGroup",
    "CharacterIndex",
    "FieldElement",
    "FieldTable",
    "GroupElement",
    "PrimePower",
    "SidonSet",
    "WeightedDesign",
    "bodmann_haas",
    "bose",
    "erdos_turan",
    "hughes",
    "is_prime_power",
    "is_sidon",
    "m_exact",
    "m_known",
    "make_field",
    "singer",
    "spence",
    "verify_direct",
    "verify_frame_potential",
]
