"""Solver-free max-min beamforming via per-element block updates.

The rate quadratic produced by the WMMSE step is block diagonal, and the
power constraint couples exactly one weight per group, so the beamformer
splits into N independent G-dimensional subvectors.  For each element:

  1. freeze the other elements and collect the per-user concave quadratic
     Ru_k(x) = -quad_k ||x||^2 + 2 Re{linear_k^H x} + offset_k;
  2. smooth the per-group min with a log-sum-exp lower bound (bias at most
     ln|group|/mu);
  3. minorize the smoothed objective by a quadratic with curvature bound
     alpha derived from the feasible ball, giving a tangent surrogate;
  4. maximize the surrogate over the ball ||x||^2 <= P_t in closed form.

Steps 2-4 define a fixed-point map; the outer loop extrapolates through
two of its applications and backtracks on the true objective, so the
reported objective never decreases.
"""

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .model import (
    _objective_from_gains,
    group_gains,
    group_members,
    is_feasible,
)
from .wmmse import update_aux

logger = logging.getLogger(__name__)

_TINY = 1e-15


@dataclass(frozen=True)
class MMOptions:
    """Smoothing continuation and safeguard knobs of the outer loop.

    The smoothing parameter starts coarse (bias_start nats of log-sum-exp
    bias), is multiplied by mu_growth each outer iteration until it reaches
    the target bias, and once the per-iteration objective gain falls below
    tighten_trigger it keeps growing toward mu_max so the smoothed and true
    objectives coincide and the stopping rule can fire.  Set mu_growth to
    1.0 for a constant smoothing parameter at the target bias.
    """

    smoothing_bias: float = 0.01    # target log-sum-exp bias (nats)
    bias_start: float = 0.5         # coarse-phase bias; larger means bigger early steps
    mu_growth: float = 2.0
    tighten_trigger: float = 0.02   # nats of per-iteration gain that count as a plateau
    mu_max: float = 1e12
    max_backtracks: int = 20


@dataclass(frozen=True)
class ElementSubproblem:
    """Per-user quadratics in one element subvector, other elements frozen.

    Ru_k(x) = -quad[k] * ||x||^2 + 2 Re{linear[k]^H x} + offset[k] for
    x in C^G; recomposing with the current subvector recovers the full
    variational rate of user k.
    """

    n: int
    quad: np.ndarray      # (K,) nonnegative curvature w_k |h_k(n)|^2
    linear: np.ndarray    # (K, G) complex
    offset: np.ndarray    # (K,)
    mu: np.ndarray        # (G,) smoothing parameters, positive
    P_t: float
    groups: tuple         # user index arrays per group


@dataclass(frozen=True)
class SurrogateCoeffs:
    """Tangent quadratic minorant of the smoothed objective at one element.

    Per group g the minorant is offset[g] + 2 Re{linear[g]^H x}
    + alpha[g] ||x||^2 with alpha[g] <= 0; the *_total fields aggregate
    over groups for the ball subproblem.
    """

    alpha: np.ndarray         # (G,) nonpositive
    linear: np.ndarray        # (G, G) complex, row g for group g
    offset: np.ndarray        # (G,)
    alpha_total: float
    linear_total: np.ndarray  # (G,)
    offset_total: float


@dataclass(frozen=True)
class SolverReport:
    objective_trace: np.ndarray  # nats, one entry per outer iteration (plus the start)
    iterations: int
    converged: bool
    wall_time: float
    final_f: np.ndarray = field(repr=False)


def default_mu(cfg, smoothing_bias=0.01):
    """Per-group smoothing so the log-sum-exp bias is at most the given nats.

    Singleton groups are smoothed exactly for any mu; they get the
    two-user value to keep mu positive.
    """
    sizes = np.array([max(len(idx), 2) for idx in group_members(cfg)], dtype=float)
    return np.log(sizes) / smoothing_bias


def element_subproblem(cfg, ch, F, aux, n, mu=None):
    """Coefficients of every user's rate quadratic in element n's subvector."""
    if not 0 <= n < cfg.N:
        raise IndexError(f"element index {n} out of range")
    F = np.asarray(F, dtype=complex)
    V = group_gains(ch, F)
    hn = ch.h[:, n]
    rest = V - np.conj(hn)[:, None] * F[:, n][None, :]
    return _element_from_pieces(cfg, ch, aux, n, hn, rest, mu)


def _element_from_pieces(cfg, ch, aux, n, hn, rest, mu=None):
    # rest[k, g] = h_k^H f_g minus element n's contribution
    if mu is None:
        mu = default_mu(cfg)
    mu = np.broadcast_to(np.asarray(mu, dtype=float), (cfg.G,)).copy()
    if np.any(mu <= 0):
        raise ValueError("smoothing parameters must be positive")

    users = np.arange(cfg.K)
    gof = list(cfg.group_of)
    w = aux.omega * np.abs(aux.beta) ** 2
    wb = aux.omega * aux.beta

    quad = w * np.abs(hn) ** 2
    linear = -w[:, None] * hn[:, None] * rest      # cross terms with the frozen elements
    linear[users, gof] += wb * hn                  # own-group linear term
    own_rest = rest[users, gof]
    offset = (
        np.log(aux.omega) - aux.omega - w * ch.sigma2 + 1.0
        - w * np.sum(np.abs(rest) ** 2, axis=1)
        + 2.0 * np.real(np.conj(wb) * own_rest)
    )
    return ElementSubproblem(
        n=n, quad=quad, linear=linear, offset=offset, mu=mu,
        P_t=cfg.P_t, groups=group_members(cfg),
    )


def per_user_rates(sub, x):
    """Ru_k(x) for all users, shape (K,)."""
    x = np.asarray(x, dtype=complex)
    return (
        -sub.quad * np.real(np.vdot(x, x))
        + 2.0 * np.real(np.conj(sub.linear) @ x)
        + sub.offset
    )


def _lse_min(vals, mu):
    # -(1/mu) ln sum exp(-mu v), max-shifted
    a = -mu * np.asarray(vals)
    shift = a.max()
    return float(-(shift + math.log(np.sum(np.exp(a - shift)))) / mu)


def _softmin(vals, mu):
    a = -mu * np.asarray(vals)
    e = np.exp(a - a.max())
    return e / e.sum()


def smoothed_min_rate(sub, x, g):
    """Log-sum-exp lower bound of the worst rate in group g at subvector x."""
    return _lse_min(per_user_rates(sub, x)[sub.groups[g]], sub.mu[g])


def softmin_weights(sub, x0, g):
    """Normalized exp(-mu Ru_k) weights over group g; concentrate on the min."""
    return _softmin(per_user_rates(sub, x0)[sub.groups[g]], sub.mu[g])


def surrogate(sub, x0):
    """Quadratic minorant of the smoothed objective, tangent at x0.

    The curvature per group is bounded through the feasible ball:
    alpha_g = -max_k quad_k - 2 mu_g max_k tp_k with
    tp_k = quad_k^2 P_t + ||linear_k||^2 + 2 sqrt(P_t) quad_k ||linear_k||,
    which keeps the minorant below the smoothed objective everywhere on
    the ball while matching value and gradient at x0.
    """
    x0 = np.asarray(x0, dtype=complex)
    p0 = float(np.real(np.vdot(x0, x0)))
    if p0 > sub.P_t * (1.0 + 1e-9) + 1e-12:
        raise ValueError("expansion point violates the element power budget")

    n_groups = len(sub.groups)
    lin_norm = np.linalg.norm(sub.linear, axis=1)
    tp = sub.quad**2 * sub.P_t + lin_norm**2 + 2.0 * math.sqrt(sub.P_t) * sub.quad * lin_norm
    rates0 = per_user_rates(sub, x0)

    alpha = np.empty(n_groups)
    linear = np.empty((n_groups, x0.size), dtype=complex)
    offset = np.empty(n_groups)
    for g, idx in enumerate(sub.groups):
        alpha[g] = -np.max(sub.quad[idx]) - 2.0 * sub.mu[g] * np.max(tp[idx])
        wts = _softmin(rates0[idx], sub.mu[g])
        grad = wts @ (sub.linear[idx] - np.outer(sub.quad[idx], x0))
        linear[g] = grad - alpha[g] * x0
        offset[g] = (
            _lse_min(rates0[idx], sub.mu[g])
            - 2.0 * np.real(np.vdot(grad, x0))
            + alpha[g] * p0
        )
    return SurrogateCoeffs(
        alpha=alpha, linear=linear, offset=offset,
        alpha_total=float(alpha.sum()),
        linear_total=linear.sum(axis=0),
        offset_total=float(offset.sum()),
    )


def surrogate_value(sc, x):
    x = np.asarray(x, dtype=complex)
    return float(
        sc.alpha_total * np.real(np.vdot(x, x))
        + 2.0 * np.real(np.vdot(sc.linear_total, x))
        + sc.offset_total
    )


def max_quadratic_on_ball(alpha, b, P_t):
    """Maximizer of alpha ||x||^2 + 2 Re{b^H x} over ||x||^2 <= P_t, alpha <= 0.

    Interior case: the stationary point b / (-alpha) when it fits in the
    ball; otherwise the maximizer sits on the boundary along b.
    """
    if alpha > 0:
        raise ValueError("curvature must be nonpositive")
    b = np.asarray(b, dtype=complex)
    if alpha < 0:
        x = b / (-alpha)
        if np.real(np.vdot(x, x)) <= P_t:
            return x
    nb = float(np.linalg.norm(b))
    if nb > 0:
        return math.sqrt(P_t) * b / nb
    logger.warning("degenerate ball subproblem (zero linear term on the boundary branch)")
    return np.zeros_like(b)


def solve_ball_quadratic(sc, P_t):
    """Exact maximizer of the aggregated surrogate over the element power ball."""
    return max_quadratic_on_ball(sc.alpha_total, sc.linear_total, P_t)


def fixed_point_step(cfg, ch, F, aux, n, mu=None):
    """One plain minorize-maximize update of element n's subvector."""
    sub = element_subproblem(cfg, ch, F, aux, n, mu)
    return solve_ball_quadratic(surrogate(sub, np.asarray(F)[:, n]), cfg.P_t)


def _accelerated(sub, x0, true_obj, max_backtracks):
    """Two fixed-point steps, extrapolation, and objective-safeguarded backtracking."""
    P_t = sub.P_t
    x1 = solve_ball_quadratic(surrogate(sub, x0), P_t)
    j1 = x1 - x0
    if np.linalg.norm(j1) <= _TINY * (1.0 + np.linalg.norm(x0)):
        return x0
    x2 = solve_ball_quadratic(surrogate(sub, x1), P_t)
    j2 = x2 - x1 - j1

    obj0 = true_obj(x0)
    if np.linalg.norm(j2) <= _TINY * (1.0 + np.linalg.norm(j1)):
        # extrapolation undefined; fall back to the plain double step
        return x2 if true_obj(x2) >= obj0 else x0

    tau = -np.linalg.norm(j1) / np.linalg.norm(j2)
    for _ in range(max_backtracks + 1):
        x = x0 - 2.0 * tau * j1 + tau * tau * j2
        p = float(np.real(np.vdot(x, x)))
        if p > P_t:
            x = x * math.sqrt(P_t / p)
        if true_obj(x) >= obj0:
            return x
        tau = (tau - 1.0) / 2.0
    if true_obj(x2) >= obj0:
        return x2
    return x0  # keep the current subvector rather than accept a decrease


def accelerated_step(cfg, ch, F, aux, n, mu=None, max_backtracks=20):
    """Extrapolated update of element n, monotone in the true objective."""
    F = np.asarray(F, dtype=complex)
    hn = ch.h[:, n]
    rest = group_gains(ch, F) - np.conj(hn)[:, None] * F[:, n][None, :]
    sub = _element_from_pieces(cfg, ch, aux, n, hn, rest, mu)

    def true_obj(x):
        return _objective_from_gains(cfg, ch.sigma2, rest + np.conj(hn)[:, None] * x[None, :])

    return _accelerated(sub, F[:, n].copy(), true_obj, max_backtracks)


def initial_beamformer(cfg, ch):
    """Full-power start: equal split across groups, phase-matched per element
    to the strongest user's channel."""
    k_star = int(np.argmax(np.linalg.norm(ch.h, axis=1)))
    phases = np.exp(1j * np.angle(ch.h[k_star]))
    return math.sqrt(cfg.P_t / cfg.G) * np.tile(phases, (cfg.G, 1))


def solve(cfg, ch, f0=None, options=None):
    """Run the full alternating scheme until the objective change is below
    cfg.epsilon or cfg.max_outer_iters is hit.

    Each outer iteration refreshes (beta, omega) in closed form and sweeps
    the elements with accelerated updates.  The returned trace is the true
    max-min objective and is non-decreasing by construction.
    """
    opts = options if options is not None else MMOptions()
    F = initial_beamformer(cfg, ch) if f0 is None else np.array(f0, dtype=complex)
    if F.shape != (cfg.G, cfg.N):
        raise ValueError(f"beamformer must have shape {(cfg.G, cfg.N)}")
    if not is_feasible(cfg, F):
        raise ValueError("initial beamformer violates element power budgets")

    t_start = time.perf_counter()
    mu_target = default_mu(cfg, opts.smoothing_bias)
    annealing = opts.mu_growth > 1.0
    mu = default_mu(cfg, max(opts.bias_start, opts.smoothing_bias)) if annealing else mu_target
    V = group_gains(ch, F)
    trace = [_objective_from_gains(cfg, ch.sigma2, V)]
    converged = False
    tightening = False
    iterations = 0

    for _ in range(cfg.max_outer_iters):
        iterations += 1
        aux = update_aux(cfg, ch, F)
        for n in range(cfg.N):
            hn = ch.h[:, n]
            rest = V - np.conj(hn)[:, None] * F[:, n][None, :]
            sub = _element_from_pieces(cfg, ch, aux, n, hn, rest, mu)

            def true_obj(x, rest=rest, hn=hn):
                return _objective_from_gains(cfg, ch.sigma2, rest + np.conj(hn)[:, None] * x[None, :])

            x_new = _accelerated(sub, F[:, n].copy(), true_obj, opts.max_backtracks)
            F[:, n] = x_new
            V = rest + np.conj(hn)[:, None] * x_new[None, :]
        trace.append(_objective_from_gains(cfg, ch.sigma2, V))
        delta = abs(trace[-1] - trace[-2])
        if delta <= cfg.epsilon:
            converged = True
            break
        if annealing:
            if np.any(mu < mu_target):
                mu = np.minimum(mu * opts.mu_growth, mu_target)
            elif tightening or delta <= opts.tighten_trigger:
                tightening = True
                mu = np.minimum(mu * opts.mu_growth, opts.mu_max)

    return SolverReport(
        objective_trace=np.asarray(trace),
        iterations=iterations,
        converged=converged,
        wall_time=time.perf_counter() - t_start,
        final_f=F,
    )
