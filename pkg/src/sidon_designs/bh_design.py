"""Bodmann-Haas vectors from a subset S of a finite abelian group, and 2-design checks.

For S in G the construction returns, in this order,

* one vector per character a of G (lexicographic exponents), x_a(s) = a(s) / sqrt|S|,
  with weight |S|^2 / (2 |G|);
* one standard basis vector e_r per r in S (canonical order), with weight 1/2.

Coordinates are indexed by S in canonical order. When S is Sidon the weighted
sum of (x x^*)^{(x)2} equals the projector onto symmetric tensors.

Two independent checks are provided. ``verify_direct`` assembles the d^2 x d^2
operator and compares it with the projector entrywise. ``verify_frame_potential``
only needs tr M and tr M^2 = sum_jk w_j w_k |<x_j, x_k>|^4: M lives on the
symmetric subspace, so ||M - P||_F^2 = tr M^2 - 2 tr M + d(d+1)/2 and both
traces equal to d(d+1)/2 is equivalent to M = P.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple, TextIO

import numpy as np

from .abelian_group import character_values
from .config import DEFAULTS
from .errors import DimensionTooLarge, EmptySet, GroupTooLarge
from .sidon import SidonSet


@dataclass(frozen=True, eq=False)
class WeightedDesign:
    dim: int
    vectors: np.ndarray
    weights: np.ndarray
    labels: tuple | None = None
    exact_weights: tuple[Fraction, ...] | None = None
    source: SidonSet | None = None

    def __post_init__(self):
        if self.vectors.shape != (len(self.weights), self.dim):
            raise ValueError(f"vectors {self.vectors.shape} do not match {len(self.weights)} weights in dim {self.dim}")
        if (self.weights < 0).any():
            raise ValueError("weights must be nonnegative")

    def __len__(self):
        return len(self.weights)

    @property
    def target_trace(self) -> int:
        return self.dim * (self.dim + 1) // 2

    def exact_weight_sum(self) -> Fraction:
        if self.exact_weights is None:
            raise ValueError("design carries no exact weights")
        return sum(self.exact_weights, Fraction(0))


def bodmann_haas(S: SidonSet, cap: int = DEFAULTS.group_cap) -> WeightedDesign:
    """The Bodmann-Haas vectors and weights for S (Sidon or not)."""
    d = len(S)
    if d == 0:
        raise EmptySet("the construction needs at least one point")
    G = S.group
    if G.order > cap:
        raise GroupTooLarge(f"|G| = {G.order} exceeds the cap {cap}")
    chars = G.residue_array()
    x = character_values(G, chars, S.residues()) / math.sqrt(d)
    vectors = np.vstack([x, np.eye(d, dtype=complex)])
    w_char = Fraction(d * d, 2 * G.order)
    w_point = Fraction(1, 2)
    exact = (w_char,) * G.order + (w_point,) * d
    weights = np.array([float(w_char)] * G.order + [0.5] * d)
    labels = tuple(("char", tuple(int(v) for v in m)) for m in chars) + tuple(("point", e.residues) for e in S.elements)
    return WeightedDesign(d, vectors, weights, labels, exact, S)


# -- dense check ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SymmetricProjector:
    dim: int
    matrix: np.ndarray


def _dense_guard(d: int, cap: int) -> None:
    if d > cap:
        raise DimensionTooLarge(f"dense d^2 x d^2 matrices need d <= {cap}, got d = {d}")


def symmetric_projector(d: int, cap: int = DEFAULTS.dense_dim_cap) -> SymmetricProjector:
    """P[(s,s'),(t,t')] = (delta_{s,t} delta_{s',t'} + delta_{s,t'} delta_{s',t}) / 2, row index s*d + s'."""
    _dense_guard(d, cap)
    idx = np.arange(d)
    s, sp, t, tp = np.meshgrid(idx, idx, idx, idx, indexing="ij")
    P = 0.5 * ((s == t) & (sp == tp)).astype(float) + 0.5 * ((s == tp) & (sp == t)).astype(float)
    return SymmetricProjector(d, P.reshape(d * d, d * d))


def tensor_square_sum(vectors: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """sum_k w_k (x_k (x) x_k)(x_k (x) x_k)^*."""
    n, d = vectors.shape
    V = (vectors[:, :, None] * vectors[:, None, :]).reshape(n, d * d)
    return (V.T * weights) @ V.conj()


def design_operator(D: WeightedDesign, cap: int = DEFAULTS.dense_dim_cap) -> np.ndarray:
    _dense_guard(D.dim, cap)
    return tensor_square_sum(D.vectors, D.weights)


def verify_direct(D: WeightedDesign, cap: int = DEFAULTS.dense_dim_cap) -> float:
    """Frobenius distance between the weighted tensor-square sum and the projector."""
    M = design_operator(D, cap)
    return float(np.linalg.norm(M - symmetric_projector(D.dim, cap).matrix))


def direct_tolerance(d: int, rtol: float = DEFAULTS.direct_rtol) -> float:
    return rtol * d


# -- frame potential --------------------------------------------------------------


class PotentialReport(NamedTuple):
    trace: float
    potential: float
    certified: bool


def potential_tolerance(d: int, rtol: float = DEFAULTS.potential_rtol) -> float:
    return rtol * d * d


def _is_bh_layout(D: WeightedDesign) -> bool:
    S = D.source
    return S is not None and D.labels is not None and len(D) == S.group.order + len(S)


def _potential_bh(D: WeightedDesign) -> float:
    # <x_a, x_b> = (1/d) sum_s (b - a)(s), so the character block of the Gram
    # matrix is a function of b - a and its |.|^4 sum is |G| * sum_c f(c).
    S = D.source
    G, d = S.group, D.dim
    n_char = G.order
    w_char = D.weights[:n_char]
    w_point = D.weights[n_char:]
    if np.ptp(w_char) or np.ptp(w_point):
        return _potential_gram(D)
    wa, we = float(w_char[0]), float(w_point[0])
    res = S.residues()
    block = max(1, 2_000_000 // max(d, 1))
    chars = G.residue_array()
    f_sums = []
    for i in range(0, n_char, block):
        vals = character_values(G, chars[i : i + block], res)
        f_sums.append(math.fsum(np.abs(vals.sum(axis=1) / d) ** 4))
    char_char = G.order * math.fsum(f_sums)
    cross = math.fsum((np.abs(D.vectors[:n_char]) ** 4).ravel())
    return math.fsum([wa * wa * char_char, 2 * wa * we * cross, we * we * d])


def _potential_gram(D: WeightedDesign, threads: int = 1) -> float:
    V, w = D.vectors, D.weights
    n = len(w)
    block = max(1, 4_000_000 // max(n, 1))
    starts = range(0, n, block)

    def part(i):
        gram = V[i : i + block].conj() @ V.T
        a = np.abs(gram) ** 4
        return math.fsum(w[i : i + block] * (a @ w))

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(part, starts))
    else:
        parts = [part(i) for i in starts]
    return math.fsum(parts)


def verify_frame_potential(
    D: WeightedDesign,
    tol: float | None = None,
    method: str = "auto",
    threads: int = 1,
) -> PotentialReport:
    """tr M and tr M^2 for the design, certified when both are within tol of d(d+1)/2.

    ``method="gram"`` forces the O(n^2 d) Gram sum; ``"auto"`` uses character
    sums for designs built by ``bodmann_haas``.
    """
    tol = potential_tolerance(D.dim) if tol is None else tol
    norms = np.sum(np.abs(D.vectors) ** 2, axis=1)
    trace = math.fsum(D.weights * norms**2)
    if method == "auto" and _is_bh_layout(D):
        potential = _potential_bh(D)
    else:
        potential = _potential_gram(D, threads)
    target = D.target_trace
    ok = abs(trace - target) <= tol and abs(potential - target) <= tol
    return PotentialReport(trace, potential, bool(ok))


class Agreement(NamedTuple):
    residual: float
    direct_certified: bool
    potential: PotentialReport
    consistency_gap: float

    @property
    def agree(self) -> bool:
        return self.direct_certified == self.potential.certified and self.consistency_gap <= 1e-6


def agreement(D: WeightedDesign, cap: int = DEFAULTS.dense_dim_cap) -> Agreement:
    """Run both checks and test residual^2 = tr M^2 - 2 Re tr(MP) + tr P."""
    M = design_operator(D, cap)
    P = symmetric_projector(D.dim, cap).matrix
    residual = float(np.linalg.norm(M - P))
    rep = verify_frame_potential(D)
    expected = rep.potential - 2 * float(np.real(np.trace(M @ P))) + float(np.trace(P))
    return Agreement(residual, residual <= direct_tolerance(D.dim), rep, abs(residual**2 - expected))


# -- proof lemmas, checked numerically ----------------------------------------------


def x_pattern_deviation(D: WeightedDesign, samples: int | None = None, seed: int = DEFAULTS.seed) -> float:
    """Max |X - |G|/|S|^2 [s+s' = t+t']| over entries of the unweighted character part.

    Exhaustive when ``samples`` is None, otherwise over random index quadruples.
    """
    S = D.source
    if S is None:
        raise ValueError("design has no source set")
    G, d = S.group, D.dim
    x = D.vectors[: G.order]
    res = S.residues()
    mod = np.array(G.moduli, dtype=np.int64)
    if samples is None:
        idx = np.indices((d, d, d, d)).reshape(4, -1)
    else:
        idx = np.random.default_rng(seed).integers(0, d, size=(4, samples))
    s, sp, t, tp = idx
    X = np.einsum("ai,ai,ai,ai->i", x[:, s], x[:, sp], x[:, t].conj(), x[:, tp].conj())
    same = (((res[s] + res[sp] - res[t] - res[tp]) % mod) == 0).all(axis=1)
    expected = np.where(same, G.order / d**2, 0.0)
    return float(np.abs(X - expected).max())


def e_pattern_deviation(D: WeightedDesign) -> float:
    """Max deviation of the basis part from [s = s' = t = t']."""
    S = D.source
    d = D.dim
    E = tensor_square_sum(D.vectors[S.group.order :], np.ones(d))
    idx = np.arange(d)
    expected = np.zeros((d * d, d * d))
    expected[idx * d + idx, idx * d + idx] = 1.0
    return float(np.abs(E - expected).max())


# -- text serialization ---------------------------------------------------------------


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def write(D: WeightedDesign, dest: TextIO | str | Path) -> None:
    if not hasattr(dest, "write"):
        with open(dest, "w") as fh:
            write(D, fh)
        return
    dest.write(f"dim: {D.dim}; count: {len(D)}\n")
    for w, v in zip(D.weights, D.vectors):
        coords = "; ".join(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in v)
        dest.write(f"{_fmt(w)}; {coords}\n")


def dumps(D: WeightedDesign) -> str:
    out = io.StringIO()
    write(D, out)
    return out.getvalue()


def loads(text: str) -> WeightedDesign:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty design file")
    header = {}
    for part in lines[0].split(";"):
        key, _, value = part.partition(":")
        header[key.strip()] = value.strip()
    try:
        d, n = int(header["dim"]), int(header["count"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed header: {lines[0]!r}") from exc
    if len(lines) - 1 != n:
        raise ValueError(f"header says {n} vectors, found {len(lines) - 1}")
    weights = np.empty(n)
    vectors = np.empty((n, d), dtype=complex)
    for i, ln in enumerate(lines[1:]):
        fields = [f.strip() for f in ln.split(";")]
        if len(fields) != d + 1:
            raise ValueError(f"line {i + 2}: expected {d} coordinates")
        weights[i] = float(fields[0])
        for j, f in enumerate(fields[1:]):
            re, im = f.split(",")
            vectors[i, j] = complex(float(re), float(im))
    return WeightedDesign(d, vectors, weights)


def read(src: TextIO | str | Path) -> WeightedDesign:
    if hasattr(src, "read"):
        return loads(src.read())
    return loads(Path(src).read_text())
