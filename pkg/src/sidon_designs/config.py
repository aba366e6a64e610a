"""Default caps and tolerances.

Every value here is surfaced as a CLI flag; library functions take them as
keyword arguments with these defaults.
"""

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Limits:
    field_cap: int = 2**20
    group_cap: int = 2**20
    dense_dim_cap: int = 48
    m_exact_cap: int = 6
    bound_b_kmax: int = 16
    # residual <= direct_rtol * d
    direct_rtol: float = 1e-9
    # |trace - d(d+1)/2| and |potential - d(d+1)/2| <= potential_rtol * d**2
    potential_rtol: float = 1e-8
    pattern_samples: int = 100_000
    seed: int = 0

    def as_dict(self):
        return asdict(self)


DEFAULTS = Limits()
