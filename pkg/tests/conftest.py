from __future__ import annotations

import numpy as np
import pytest
from hypothesis import assume, settings
from hypothesis import strategies as st

from irrcorr.core import OscillatorParams, build_drift, is_stable

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# acceptance results collected for the end-of-session summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@st.composite
def stable_params(draw, n_max: float = 10.0):
    p = OscillatorParams(
        omega_a=draw(st.floats(0.0, 3.0)),
        G=draw(st.floats(0.0, 2.0)),
        kappa_a=draw(st.floats(0.05, 1.0)),
        kappa_b=draw(st.floats(0.05, 1.0)),
        N_a=draw(st.floats(0.0, n_max)),
        N_b=draw(st.floats(0.0, n_max)),
    )
    assume(is_stable(build_drift(p), 1e-3))
    return p


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
