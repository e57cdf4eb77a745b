"""WMMSE reformulation: auxiliary closed forms and the rate quadratic.

The variational identity ln(1 + SINR_k) = max_{omega_k >= 0, beta_k}
Rv_k(F, omega_k, beta_k) turns each rate into a concave quadratic in the
beamformer once (beta, omega) are fixed.  Both optimizers have closed
forms, so block coordinate ascent never calls a solver for them.
"""

from dataclasses import dataclass

import numpy as np

from .model import group_gains


@dataclass(frozen=True)
class AuxiliaryState:
    """Per-user receive scalars beta and rate weights omega (omega >= 1)."""

    beta: np.ndarray   # (K,) complex
    omega: np.ndarray  # (K,) >= 1


@dataclass(frozen=True)
class QuadCoeffs:
    """Coefficients of Rv_k as a quadratic in F.

    Rv_k(F) = -w[k] * sum_g |h_k^H f_g|^2 + 2 Re{b[k]^H f_{g(k)}} + c[k].

    The quadratic's matrix is block diagonal with G identical PSD blocks
    w_k h_k h_k^H; only (w, h) are stored, never the stacked matrix.
    """

    w: np.ndarray  # (K,) nonnegative
    b: np.ndarray  # (K, N) complex, the nonzero block of the linear term
    c: np.ndarray  # (K,)


def update_beta(cfg, ch, F):
    """MMSE receive scalars: beta_k = h_k^H f_{g(k)} / (sum_i |h_k^H f_i|^2 + sigma_k^2)."""
    V = group_gains(ch, F)
    own = V[np.arange(cfg.K), list(cfg.group_of)]
    total = np.sum(np.abs(V) ** 2, axis=1)
    return own / (total + ch.sigma2)


def update_omega(cfg, ch, F):
    """Rate weights: omega_k = 1 + SINR_k (interference excludes the own group)."""
    V = group_gains(ch, F)
    p = np.abs(V) ** 2
    own = p[np.arange(cfg.K), list(cfg.group_of)]
    return 1.0 + own / (p.sum(axis=1) - own + ch.sigma2)


def update_aux(cfg, ch, F):
    """Both closed-form updates at the current beamformer."""
    return AuxiliaryState(beta=update_beta(cfg, ch, F), omega=update_omega(cfg, ch, F))


def variational_rate(cfg, ch, F, aux, k):
    """Rv_k = ln(omega) - omega * mse + 1, with mse the scalar-receiver MSE.

    mse = 1 - 2 Re{beta^* h_k^H f_{g(k)}} + |beta|^2 (sum_i |h_k^H f_i|^2 + sigma_k^2).
    Equals the true rate when (beta, omega) are at their optimizers and is
    never above it otherwise.
    """
    v = ch.h[k].conj() @ np.asarray(F).T
    beta, omega = aux.beta[k], aux.omega[k]
    total = np.sum(np.abs(v) ** 2) + ch.sigma2[k]
    mse = 1.0 - 2.0 * np.real(np.conj(beta) * v[cfg.group_of[k]]) + np.abs(beta) ** 2 * total
    return float(np.log(omega) - omega * mse + 1.0)


def quad_coeffs(cfg, ch, F, aux):
    """Quadratic form of Rv_k at fixed (beta, omega).

    w_k = omega_k |beta_k|^2, b_k = omega_k beta_k h_k, and the constant
    c_k = ln(omega_k) - omega_k - w_k sigma_k^2 + 1 collects every term of
    Rv_k that does not involve F, so the identity with variational_rate
    holds for any beamformer, not just the expansion point.
    """
    w = aux.omega * np.abs(aux.beta) ** 2
    b = (aux.omega * aux.beta)[:, None] * ch.h
    c = np.log(aux.omega) - aux.omega - w * ch.sigma2 + 1.0
    return QuadCoeffs(w=w, b=b, c=c)
