"""Problem instance definition and rate/power evaluation.

A transmissive-RIS transmitter with N elements serves K single-antenna
users split into G multicast groups.  One beamformer f_g in C^N is sent
per group; the stacked variable is stored as a (G, N) complex array, so
row g is the group beamformer f_g and column n is the per-element
subvector (element n's weight across all groups).  Each element has its
own power budget: ||F[:, n]||^2 <= P_t for every n.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

LN2 = math.log(2.0)


@dataclass(frozen=True)
class SystemConfig:
    """Dimensions, grouping and solver tolerances of one problem instance."""

    N: int                      # transmissive elements
    G: int                      # multicast groups
    group_of: tuple             # user index -> group index, length K
    P_t: float                  # per-element power budget (watts)
    epsilon: float = 1e-4      # convergence threshold on objective change
    max_outer_iters: int = 100
    rng_seed: int = 0

    def __post_init__(self):
        if self.N < 1 or self.G < 1:
            raise ValueError("need N >= 1 and G >= 1")
        if self.P_t <= 0:
            raise ValueError("per-element power budget must be positive")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.K < self.G:
            raise ValueError("need at least one user per group (K >= G)")
        seen = set(self.group_of)
        if not all(0 <= g < self.G for g in seen):
            raise ValueError("group indices must lie in [0, G)")
        if len(seen) != self.G:
            raise ValueError("every group must be non-empty")

    @property
    def K(self):
        return len(self.group_of)


@lru_cache(maxsize=None)
def group_members(cfg):
    """Users of each group as index arrays, cached per config."""
    gof = np.asarray(cfg.group_of)
    return tuple(np.flatnonzero(gof == g) for g in range(cfg.G))


@dataclass(frozen=True)
class ChannelSet:
    """Downlink channels h_k in C^N (linear scale) and noise powers (watts)."""

    h: np.ndarray       # (K, N) complex
    sigma2: np.ndarray  # (K,) positive reals

    def __post_init__(self):
        h = np.asarray(self.h, dtype=complex)
        s2 = np.asarray(self.sigma2, dtype=float)
        if h.ndim != 2 or s2.shape != (h.shape[0],):
            raise ValueError("h must be (K, N) and sigma2 (K,)")
        if not np.all(np.isfinite(h.view(float))) or not np.all(np.isfinite(s2)):
            raise ValueError("channel entries must be finite")
        if np.any(s2 <= 0):
            raise ValueError("noise powers must be positive")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "sigma2", s2)


def as_matrix(f, N, G):
    """Reshape a stacked group-major vector [f_1; ...; f_G] into (G, N)."""
    f = np.asarray(f, dtype=complex)
    if f.size != N * G:
        raise ValueError(f"expected length {N * G}, got {f.size}")
    return f.reshape(G, N)


def as_vector(F):
    """Flatten a (G, N) beamformer back to its stacked group-major vector."""
    return np.asarray(F, dtype=complex).reshape(-1)


def group_gains(ch, F):
    """Inner products h_k^H f_g for all users and groups, shape (K, G)."""
    return ch.h.conj() @ np.asarray(F).T


def sinr(cfg, ch, F, k):
    """SINR of user k: |h_k^H f_g|^2 / (sum_{i != g} |h_k^H f_i|^2 + sigma_k^2)."""
    if not 0 <= k < cfg.K:
        raise IndexError(f"user index {k} out of range")
    v = ch.h[k].conj() @ np.asarray(F).T
    p = np.abs(v) ** 2
    own = p[cfg.group_of[k]]
    return own / (p.sum() - own + ch.sigma2[k])


def user_rate(cfg, ch, F, k):
    """Achievable rate ln(1 + SINR_k) in nats."""
    return math.log1p(sinr(cfg, ch, F, k))


def user_rates(cfg, ch, F):
    """All K user rates in nats."""
    return _rates_from_gains(cfg, ch.sigma2, group_gains(ch, F))


def objective(cfg, ch, F):
    """Sum over groups of the worst user rate in the group (nats)."""
    return _objective_from_gains(cfg, ch.sigma2, group_gains(ch, F))


def _rates_from_gains(cfg, sigma2, V):
    p = np.abs(V) ** 2
    own = p[np.arange(len(sigma2)), list(cfg.group_of)]
    return np.log1p(own / (p.sum(axis=1) - own + sigma2))


def _objective_from_gains(cfg, sigma2, V):
    rates = _rates_from_gains(cfg, sigma2, V)
    return float(sum(rates[idx].min() for idx in group_members(cfg)))


def element_power(F, n):
    """Power drawn by element n: ||F[:, n]||^2."""
    return float(np.sum(np.abs(np.asarray(F)[:, n]) ** 2))


def element_powers(F):
    """Per-element powers, shape (N,)."""
    return np.sum(np.abs(np.asarray(F)) ** 2, axis=0)


def is_feasible(cfg, F, tol=1e-9):
    """True iff every element satisfies its power budget up to tol."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return bool(np.all(element_powers(F) <= cfg.P_t + tol))


def nats_to_bits(x):
    """Presentation helper: rates are computed in nats internally."""
    return np.asarray(x) / LN2
