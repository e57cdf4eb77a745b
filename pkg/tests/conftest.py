import numpy as np
import pytest

from trtcbeam.model import ChannelSet, SystemConfig


def random_instance(rng, N=4, G=2, users_per_group=2, P_t=1.0, sigma2=1.0):
    """Unit-scale random instance; channels CN(0, I) per entry."""
    group_of = tuple(int(g) for g in np.repeat(np.arange(G), users_per_group))
    K = len(group_of)
    cfg = SystemConfig(N=N, G=G, group_of=group_of, P_t=P_t)
    h = (rng.standard_normal((K, N)) + 1j * rng.standard_normal((K, N))) / np.sqrt(2)
    ch = ChannelSet(h=h, sigma2=np.full(K, sigma2))
    return cfg, ch


def random_feasible(rng, cfg, fraction=1.0):
    """Random beamformer with every element at `fraction` of its power budget."""
    F = rng.standard_normal((cfg.G, cfg.N)) + 1j * rng.standard_normal((cfg.G, cfg.N))
    scale = np.sqrt(fraction * cfg.P_t) / np.linalg.norm(F, axis=0)
    return F * scale


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
