"""Upper bounds on the entanglement-breaking rank n(d) and the comparison table.

Previously known bounds (each applies only under its condition):

* sic:     d^2 when an exact SIC is known in dimension d
* b:       min_k k d^2 + 2d over k <= kmax with k d + 1 a prime power
* c:       d^2 + 1 when d - 1 is a prime power
* d_bound: d^2 + d - 1 when d is a prime power
* e:       C(d+1, 2)^2, always

The Sidon bound is m(d) + d with m(d) replaced by the smallest group among
the five dense families that holds a d-point Sidon set.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .config import DEFAULTS
from .finite_field import is_prime, is_prime_power
from .sidon import KnownChoice, m_known_choice

SIC_DATA_ENV = "SIDON_DESIGNS_SIC_DATA"
REQUIRED_SIC_DIMS = frozenset({23, 52, 67, 103})
CSV_COLUMNS = ("d", "lower", "sic", "b", "c", "d_bound", "e", "sidon", "sidon_witness", "best", "best_source")
PREVIOUS = ("sic", "b", "c", "d_bound", "e")


def smallest_prime_geq(d: int) -> int:
    n = max(d, 2)
    while not is_prime(n):
        n += 1
    return n


def bound_b_k(d: int, kmax: int = DEFAULTS.bound_b_kmax) -> int | None:
    """Smallest k <= kmax with k d + 1 a prime power (kd^2 + 2d is increasing in k)."""
    for k in range(1, kmax + 1):
        if is_prime_power(k * d + 1):
            return k
    return None


def bound_b(d: int, kmax: int = DEFAULTS.bound_b_kmax) -> int | None:
    k = bound_b_k(d, kmax)
    return None if k is None else k * d * d + 2 * d


def bound_c(d: int) -> int | None:
    return d * d + 1 if is_prime_power(d - 1) else None


def bound_d(d: int) -> int | None:
    return d * d + d - 1 if is_prime_power(d) else None


def bound_e(d: int) -> int:
    return math.comb(d + 1, 2) ** 2


def bound_sic(d: int, data: SicDimensionData) -> int | None:
    return d * d if d in data.dims else None


def bound_sidon(d: int) -> tuple[int, KnownChoice]:
    choice = m_known_choice(d)
    return choice.order + d, choice


@dataclass(frozen=True)
class SicDimensionData:
    dims: frozenset[int]
    notes: dict[int, str] = field(default_factory=dict, compare=False)
    sha256: str = ""
    source: str = ""


def default_sic_path() -> Path | None:
    env = os.environ.get(SIC_DATA_ENV)
    return Path(env) if env else None


def parse_sic_data(text: str, source: str = "") -> SicDimensionData:
    dims, notes = set(), {}
    for raw in text.splitlines():
        body, _, comment = raw.partition("#")
        body = body.strip()
        if not body:
            continue
        d = int(body)
        dims.add(d)
        notes[d] = comment.strip()
    data = SicDimensionData(frozenset(dims), notes, hashlib.sha256(text.encode()).hexdigest(), source)
    missing = REQUIRED_SIC_DIMS - data.dims
    if missing:
        raise ValueError(f"SIC data must include {sorted(REQUIRED_SIC_DIMS)}; missing {sorted(missing)}")
    return data


def load_sic_data(path: str | Path | None = None) -> SicDimensionData:
    """Read a SIC dimension file; falls back to $SIDON_DESIGNS_SIC_DATA, then the bundled list."""
    path = path or default_sic_path()
    if path is None:
        text = resources.files("sidon_designs").joinpath("data/sic_dimensions.txt").read_text()
        return parse_sic_data(text, "bundled:sic_dimensions.txt")
    return parse_sic_data(Path(path).read_text(), str(path))


@dataclass(frozen=True)
class BoundRecord:
    d: int
    lower: int
    sic: int | None
    b: int | None
    c: int | None
    d_bound: int | None
    e: int
    sidon: int
    witness: KnownChoice
    best: int
    best_source: str

    @property
    def previous(self) -> int:
        return min(v for v in (self.sic, self.b, self.c, self.d_bound, self.e) if v is not None)

    @property
    def verdict(self) -> str:
        """'sic', 'tie', 'sidon' (strictly better), or 'previous' (strictly worse)."""
        if self.sic is not None:
            return "sic"
        if self.sidon == self.previous:
            return "tie"
        return "sidon" if self.sidon < self.previous else "previous"

    def as_row(self) -> dict:
        row = {k: getattr(self, k) for k in CSV_COLUMNS if k != "sidon_witness"}
        row["sidon_witness"] = self.witness.label
        return {k: ("" if row[k] is None else row[k]) for k in CSV_COLUMNS}


def bound_record(d: int, data: SicDimensionData, kmax: int = DEFAULTS.bound_b_kmax) -> BoundRecord:
    values = {
        "sic": bound_sic(d, data),
        "b": bound_b(d, kmax),
        "c": bound_c(d),
        "d_bound": bound_d(d),
        "e": bound_e(d),
    }
    sidon, witness = bound_sidon(d)
    values["sidon"] = sidon
    best = min(v for v in values.values() if v is not None)
    winners = [k for k, v in values.items() if v == best]
    source = winners[0] if len(winners) == 1 else "tie:" + "+".join(winners)
    return BoundRecord(d, d * d, witness=witness, best=best, best_source=source, **values)


def table(d_max: int = 150, data: SicDimensionData | None = None, kmax: int = DEFAULTS.bound_b_kmax) -> list[BoundRecord]:
    if d_max > 2000:
        raise ValueError("d_max is capped at 2000")
    data = load_sic_data() if data is None else data
    return [bound_record(d, data, kmax) for d in range(2, d_max + 1)]


def to_csv(records: list[BoundRecord], data: SicDimensionData) -> str:
    out = io.StringIO()
    out.write(f"# sic_data={data.source} sha256={data.sha256}\n")
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(rec.as_row())
    return out.getvalue()


def _bold(v, on: bool) -> str:
    return f"**{v}**" if on else str(v)


def to_markdown(records: list[BoundRecord], data: SicDimensionData) -> str:
    """d^2 | best previous bound | Sidon bound; the better upper bound (both on a tie)
    is bold, and d^2 is bold too when it is attained."""
    lines = [
        f"<!-- sic_data={data.source} sha256={data.sha256} -->",
        "| d | d^2 | previous | source | m(d)+d | Sidon set |",
        "|---:|---:|---:|:---|---:|:---|",
    ]
    for rec in records:
        prev = rec.previous
        src = "+".join(k for k in PREVIOUS if getattr(rec, k) == prev)
        lines.append(
            "| {} | {} | {} | {} | {} | {} |".format(
                rec.d,
                _bold(rec.lower, rec.best == rec.lower),
                _bold(prev, prev <= rec.sidon),
                src,
                _bold(rec.sidon, rec.sidon <= prev),
                rec.witness.label,
            )
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AsymptoticReport:
    d_max: int
    max_ratio: float
    argmax: int
    below_prime_square: bool
    above_pigeonhole: bool


def asymptotic_check(d_max: int) -> AsymptoticReport:
    """Sweep r(d) = (m(d) + d - d^2) / d^1.525 with m(d) from the known families.

    Also checks m(d) <= p(d)^2 (p(d) the smallest prime >= d) and m(d) >= d^2 - d + 1.
    """
    best_r, arg = -math.inf, 0
    below, above = True, True
    for d in range(2, d_max + 1):
        m = m_known_choice(d).order
        r = (m + d - d * d) / d**1.525
        if r > best_r:
            best_r, arg = r, d
        below &= m <= smallest_prime_geq(d) ** 2
        above &= m >= d * d - d + 1
    return AsymptoticReport(d_max, best_r, arg, below, above)
