import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slkweights import _accel

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@given(st.lists(st.integers(0, 6), min_size=3, max_size=5), st.data())
@settings(max_examples=50, deadline=None)
def test_gt_backends_agree(raw, data):
    lam = sorted(raw, reverse=True)
    beta = [data.draw(st.integers(0, max(lam))) for _ in range(len(lam) - 1)]
    beta.append(sum(lam) - sum(beta))
    assert _accel.count_gt(lam, beta, use_numba=True) == _accel.count_gt(lam, beta, use_numba=False)


@needs_numba
@given(st.lists(st.integers(-2, 8), min_size=3, max_size=3))
@settings(max_examples=50, deadline=None)
def test_box_backends_agree(b):
    A = np.array([[1, 1], [-1, 0], [0, -1], [1, -2]])
    bb = list(b) + [3]
    args = (A, bb, [-10, -10], [10, 10])
    assert _accel.count_points_box(*args, use_numba=True) == _accel.count_points_box(*args, use_numba=False)


def test_box_count_simple():
    # triangle x, y >= 0, x + y <= 4
    assert _accel.count_points_box([[1, 1], [-1, 0], [0, -1]], [4, 0, 0], [0, 0], [4, 4]) == 15


def test_env_flag_selects_python():
    env = dict(os.environ, SLKWEIGHTS_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", "from slkweights import _accel; print(_accel.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
