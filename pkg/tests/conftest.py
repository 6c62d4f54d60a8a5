import numpy as np
import pytest

from wellbarrier import PotentialSpec, transform


@pytest.fixture(scope="session")
def default_spec():
    """The shipped well-barrier configuration."""
    return PotentialSpec(v1=10.0, v2=4.0, a=1.0, b=2.0, c=1.0)


@pytest.fixture(scope="session")
def well_spec():
    """Pure well with a single bound state (sqrt(c V1) a ~ 3.16)."""
    return PotentialSpec(v1=10.0, v2=0.0, a=1.0, b=2.0, c=1.0)


@pytest.fixture(scope="session")
def free_spec():
    """Numerically free potential (v1 = 0 skips validate on purpose)."""
    return PotentialSpec(v1=0.0, v2=0.0, a=1.0, b=2.0, c=1.0)


@pytest.fixture(scope="session")
def wide_grid(default_spec):
    """Verification-grade continuum grid: truncation error below 1e-6."""
    return transform.energy_grid(default_spec, k_max=180.0, nodes=8192)


def random_energy(rng, spec, allow_negative=True, im_max=4.0):
    """A complex energy safely off the singular set {E=V2, E=0, E=-V1}."""
    while True:
        re = rng.uniform(-spec.v1 if allow_negative else 0.05, 3.0 * (spec.v1 + spec.v2 + 1))
        im = rng.uniform(-im_max, im_max)
        e = complex(re, im)
        if min(abs(e), abs(e - spec.v2), abs(e + spec.v1)) > 1e-3:
            return e


def random_spec(rng):
    a = rng.uniform(0.3, 1.5)
    return PotentialSpec(
        v1=rng.uniform(0.5, 20.0),
        v2=rng.uniform(0.0, 20.0),
        a=a,
        b=a + rng.uniform(0.3, 2.0),
        c=rng.uniform(0.5, 2.0),
    )
