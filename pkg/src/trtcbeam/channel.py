"""Instance generation: geometry, path loss, Rician fading, unit conversion."""

from dataclasses import dataclass

import numpy as np

from .model import ChannelSet


@dataclass(frozen=True)
class GeometryConfig:
    """Cell geometry and propagation parameters."""

    trtc_position: tuple = (0.0, 0.0, 4.5)  # meters
    cell_radius: float = 100.0              # users fall in a half disc of this radius
    user_height: float = 1.5                # meters
    placement: str = "half_disc"
    rician_K_dB: float = 5.0
    pathloss_exponent: float = 3.6
    C0_dB: float = -30.0                    # reference path loss at d0
    d0: float = 1.0                         # reference distance (meters)
    noise_dbm: float = -90.0
    array_layout: str = "ula"               # element grid for the LOS response: ula | upa

    def __post_init__(self):
        if self.cell_radius <= 0 or self.d0 <= 0:
            raise ValueError("cell_radius and d0 must be positive")
        if self.pathloss_exponent <= 0:
            raise ValueError("pathloss_exponent must be positive")
        if self.placement != "half_disc":
            raise ValueError(f"unknown placement rule {self.placement!r}")
        if self.array_layout not in ("ula", "upa"):
            raise ValueError(f"unknown array layout {self.array_layout!r}")


@dataclass(frozen=True)
class InstanceDraw:
    """One sampled problem instance, reproducible from its seed."""

    user_positions: np.ndarray  # (K, 3)
    channels: ChannelSet
    seed_used: int


def db_to_linear(x):
    return 10.0 ** (np.asarray(x, dtype=float) / 10.0)


def dbm_to_watts(x):
    return 10.0 ** ((np.asarray(x, dtype=float) - 30.0) / 10.0)


def path_loss(geo, d):
    """Large-scale gain C0 * (d / d0)^(-alpha), linear scale."""
    if np.any(np.asarray(d) <= 0):
        raise ValueError("distance must be positive")
    return float(db_to_linear(geo.C0_dB)) * (np.asarray(d) / geo.d0) ** (-geo.pathloss_exponent)


def _los_response(geo, n_elems, rng):
    # Half-wavelength spacing; the element grid is not pinned down by the
    # transceiver hardware, so the layout is configurable.
    if geo.array_layout == "ula":
        theta = rng.uniform(-np.pi / 2, np.pi / 2)
        return np.exp(1j * np.pi * np.arange(n_elems) * np.sin(theta))
    # near-square planar grid, row-major
    rows = int(np.floor(np.sqrt(n_elems)))
    while n_elems % rows:
        rows -= 1
    cols = n_elems // rows
    theta = rng.uniform(-np.pi / 2, np.pi / 2)
    phi = rng.uniform(-np.pi / 2, np.pi / 2)
    r, c = np.divmod(np.arange(n_elems), cols)
    return np.exp(1j * np.pi * (r * np.sin(theta) * np.cos(phi) + c * np.sin(phi)))


def draw_rician(geo, n_elems, rng):
    """Small-scale fading vector with unit average power per entry.

    Mixes a unit-modulus steering vector with an i.i.d. circular Gaussian
    component according to the (linear) Rician factor kappa:
    sqrt(kappa/(1+kappa)) * los + sqrt(1/(1+kappa)) * nlos.
    """
    if n_elems < 1:
        raise ValueError("need at least one element")
    kappa = float(db_to_linear(geo.rician_K_dB))
    los = _los_response(geo, n_elems, rng)
    nlos = (rng.standard_normal(n_elems) + 1j * rng.standard_normal(n_elems)) / np.sqrt(2.0)
    return np.sqrt(kappa / (1.0 + kappa)) * los + np.sqrt(1.0 / (1.0 + kappa)) * nlos


def build_instance(cfg, geo):
    """Sample user positions on the half disc and draw their channels.

    Deterministic given (cfg, geo): the RNG is seeded from cfg.rng_seed.
    """
    rng = np.random.default_rng(cfg.rng_seed)
    K = cfg.K

    # r = R*sqrt(u) gives uniform areal density; angles span the right half circle
    radius = geo.cell_radius * np.sqrt(rng.uniform(size=K))
    angle = rng.uniform(-np.pi / 2, np.pi / 2, size=K)
    center = np.asarray(geo.trtc_position)
    positions = np.stack(
        [
            center[0] + radius * np.cos(angle),
            center[1] + radius * np.sin(angle),
            np.full(K, geo.user_height),
        ],
        axis=1,
    )

    h = np.empty((K, cfg.N), dtype=complex)
    for k in range(K):
        d = float(np.linalg.norm(positions[k] - center))
        h[k] = np.sqrt(path_loss(geo, d)) * draw_rician(geo, cfg.N, rng)
    sigma2 = np.full(K, float(dbm_to_watts(geo.noise_dbm)))

    return InstanceDraw(
        user_positions=positions,
        channels=ChannelSet(h=h, sigma2=sigma2),
        seed_used=cfg.rng_seed,
    )
