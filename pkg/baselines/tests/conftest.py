import numpy as np
import pytest

from trtcbeam.channel import GeometryConfig, build_instance
from trtcbeam.mm import initial_beamformer
from trtcbeam.model import SystemConfig


def desk_instance(seed=0, N=4, G=2, users_per_group=2, P_t=0.01):
    cfg = SystemConfig(
        N=N, G=G,
        group_of=tuple(int(g) for g in np.repeat(np.arange(G), users_per_group)),
        P_t=P_t, rng_seed=seed,
    )
    ch = build_instance(cfg, GeometryConfig()).channels
    return cfg, ch, initial_beamformer(cfg, ch)


@pytest.fixture
def rng():
    return np.random.default_rng(77)
