"""Block-coordinate WMMSE solver with a conic program for the beamformer.

Each iteration refreshes the scalar receivers and rate weights in closed
form (re-derived here, independent of the primary package) and then
maximizes the sum of per-group worst-case rate quadratics by solving a
second-order cone program over the per-element power balls.
"""

import time

import cvxpy as cp
import numpy as np

from trtcbeam.model import group_members, objective

from ._common import BaselineReport, normalized_channels, solve_conic


def wmmse_closed_forms(gains, sigma2, group_of):
    """Receive scalars, rate weights and the rate-quadratic coefficients.

    gains[k, g] = h_k^H f_g.  Returns (beta, omega, w, c) with
    beta = own-gain / (total power + noise), omega = 1 + SINR, w = omega
    |beta|^2 and c the constant completing the quadratic identity.
    """
    K = gains.shape[0]
    idx = np.arange(K)
    own = gains[idx, group_of]
    power = np.abs(gains) ** 2
    own_p = power[idx, group_of]
    total = power.sum(axis=1)
    beta = own / (total + sigma2)
    omega = 1.0 + own_p / (total - own_p + sigma2)
    w = omega * np.abs(beta) ** 2
    c = np.log(omega) - omega - w * sigma2 + 1.0
    return beta, omega, w, c


def rate_quadratic(gains, sigma2, group_of, beta, omega):
    """Per-user value of the quadratic rate lower bound at the given gains."""
    K = gains.shape[0]
    idx = np.arange(K)
    w = omega * np.abs(beta) ** 2
    c = np.log(omega) - omega - w * sigma2 + 1.0
    lin = 2.0 * np.real(np.conj(omega * beta) * gains[idx, group_of])
    return -w * np.sum(np.abs(gains) ** 2, axis=1) + lin + c


def _beamformer_subproblem(h, w, b, c, group_of, G, N):
    """One conic solve: maximize sum of per-group slacks under the rate
    quadratics and unit element power balls (normalized units)."""
    K = h.shape[0]
    Fv = cp.Variable((G, N), complex=True)
    slack = cp.Variable(G)
    constraints = [cp.norm(Fv[:, n]) <= 1.0 for n in range(N)]
    for k in range(K):
        gains = cp.hstack([cp.sum(cp.multiply(np.conj(h[k]), Fv[g])) for g in range(G)])
        constraints.append(
            w[k] * cp.sum_squares(gains)
            - 2.0 * cp.real(cp.sum(cp.multiply(np.conj(b[k]), Fv[group_of[k]])))
            - c[k] + slack[group_of[k]] <= 0
        )
    problem = cp.Problem(cp.Maximize(cp.sum(slack)), constraints)
    solve_conic(problem)
    return Fv.value


def _project_columns(F):
    """Clip per-element powers back into the unit balls; exact solutions
    are untouched, inaccurate conic returns are made feasible."""
    norms = np.linalg.norm(F, axis=0)
    return F / np.maximum(norms, 1.0)[None, :]


def socp_solve(cfg, ch, f0, epsilon=1e-4, max_iters=100):
    """Alternate closed-form auxiliary updates with conic beamformer solves.

    The exact iteration never decreases the true max-min objective (the
    previous beamformer stays feasible for every subproblem), so a
    candidate from an inaccurate conic solve that would decrease it is
    discarded and the previous iterate kept.  Stops when the objective
    changes by at most epsilon.
    """
    start = time.perf_counter()
    h = normalized_channels(cfg, ch)
    scale = np.sqrt(cfg.P_t)
    F = _project_columns(np.array(f0, dtype=complex) / scale)
    gof = list(cfg.group_of)

    trace = [objective(cfg, ch, F * scale)]
    converged = False
    iterations = 0
    for _ in range(max_iters):
        iterations += 1
        gains = h.conj() @ F.T
        beta, omega, w, c = wmmse_closed_forms(gains, np.ones(cfg.K), gof)
        b = (omega * beta)[:, None] * h
        candidate = _project_columns(_beamformer_subproblem(h, w, b, c, gof, cfg.G, cfg.N))
        if objective(cfg, ch, candidate * scale) >= trace[-1]:
            F = candidate
        trace.append(objective(cfg, ch, F * scale))
        if abs(trace[-1] - trace[-2]) <= epsilon:
            converged = True
            break

    return BaselineReport(
        objective_trace=np.asarray(trace),
        iterations=iterations,
        converged=converged,
        wall_time=time.perf_counter() - start,
        final_f=F * scale,
    )


def smoothable_group_objective(cfg, gains, sigma2, group_of, beta, omega):
    """Sum over groups of the worst rate quadratic; the quantity each
    beamformer subproblem maximizes."""
    rates = rate_quadratic(gains, sigma2, group_of, beta, omega)
    return float(sum(rates[idx].min() for idx in group_members(cfg)))
