"""Shared fixtures.

The two progressions used throughout: alpha = 1 (every scaled exponential
e^{2*pi*ell} is irrational, so no discrete correction), and the symbolic
alpha = 2*pi/ln 2 (e^{2*pi*ell/alpha} = 2^ell, the fully rational case).
"""
import numpy as np
import pytest

from zetaprog import ProgressionSpec, SmoothWindow


@pytest.fixture(scope="session")
def window():
    return SmoothWindow()


@pytest.fixture(scope="session")
def unit_spec():
    return ProgressionSpec(alpha=1.0)


@pytest.fixture(scope="session")
def sym_spec():
    return ProgressionSpec.from_rational(1, 2, 1)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260814)
