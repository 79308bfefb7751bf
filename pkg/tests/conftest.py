import dataclasses

import numpy as np
import pytest

from sqbattery import BatteryParams
from sqbattery.sweep import PRESET_NAMES, figure_preset


def preset_param_sets() -> list[BatteryParams]:
    """All sixteen parameter sets spanned by the figure presets."""
    out = []
    for name in PRESET_NAMES:
        cfg = figure_preset(name)
        vary, values = cfg.varied[0]
        for v in values:
            out.append(dataclasses.replace(cfg.base, **{vary: v}))
    return out


@pytest.fixture(scope="session")
def preset_params():
    return preset_param_sets()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_params(rng, count):
    """Random parameter cloud: xi in [0, 3], T in [0.05, 5]."""
    for _ in range(count):
        x1, x2, xc = rng.uniform(0.0, 3.0, 3)
        yield BatteryParams(
            xi1=float(x1), xi2=float(x2), xic=float(xc),
            temperature=float(rng.uniform(0.05, 5.0)),
        )


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2.0


def random_density(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = a @ a.conj().T
    return m / np.trace(m).real
