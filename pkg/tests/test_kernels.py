"""Backend parity for the hot kernels (numba vs pure numpy)."""

import json
import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest

from btzgeo import _kernels
from btzgeo.causal import btz_causal_future
from btzgeo._kernels import (
    BACKEND,
    _count_members_np,
    _min_delta_np,
    count_causal_members,
    min_delta_scan,
)


def random_pool(rng, n, line_fraction=0.1):
    tau = rng.uniform(-2.0, 2.0, n)
    r = rng.uniform(0.0, 2.0, n)
    r[rng.uniform(0.0, 1.0, n) < line_fraction] = 0.0
    th = rng.uniform(0.0, 20.0, n)
    return tau, r, th


class TestCountKernel:
    def test_matches_scalar_classifier(self):
        rng = np.random.default_rng(31)
        tau, r, th = random_pool(rng, 400)
        for q in [(0.3, 0.7, 1.0), (0.0, 0.0, 0.0), (-1.0, 1.5, 9.0)]:
            for future in (True, False):
                got = count_causal_members(tau, r, th, *q, future)
                want = 0
                for p in zip(tau, r, th):
                    a, b = (q, p) if future else (p, q)
                    if btz_causal_future(a, b) != "outside":
                        want += 1
                # the kernel applies the inequalities exactly while the
                # classifier keeps a tolerance fence; random pools do not
                # land inside the fence
                assert got == want

    def test_backend_parity(self):
        if BACKEND != "numba":
            pytest.skip("numba backend not active")
        rng = np.random.default_rng(32)
        tau, r, th = random_pool(rng, 2000)
        for q in [(0.5, 1.0, 2.0), (0.0, 0.0, 5.0), (1.2, 0.2, -3.0)]:
            for future in (True, False):
                nb = count_causal_members(tau, r, th, *q, future)
                np_ = _count_members_np(tau, r, th, *map(float, q), future)
                assert nb == np_

    def test_angle_wrap_many_turns(self):
        # same physical point, angles separated by whole turns
        tau = np.array([1.0])
        r = np.array([1.0])
        for k in range(-3, 4):
            th = np.array([2.0 * np.pi * k])
            assert count_causal_members(tau, r, th, 0.0, 1.0, 0.0, True) == 1

    def test_empty_pool(self):
        z = np.zeros(0)
        assert count_causal_members(z, z, z, 0.0, 1.0, 0.0, True) == 0


class TestMinDeltaKernel:
    def test_known_values(self):
        r = np.array([0.5, 1.0, 2.0])
        f_r = np.zeros((3, 4))
        f_th = np.zeros((3, 4))
        d, r2 = min_delta_scan(r, f_r, f_th)
        assert d == 1.0
        assert r2 == 0.25

    def test_backend_parity(self):
        if BACKEND != "numba":
            pytest.skip("numba backend not active")
        rng = np.random.default_rng(33)
        r = rng.uniform(0.01, 3.0, 64)
        f_r = rng.normal(size=(64, 48))
        f_th = rng.normal(size=(64, 48))
        got = min_delta_scan(r, f_r, f_th)
        want = _min_delta_np(r, f_r, f_th)
        assert got[0] == pytest.approx(want[0], abs=1e-12)
        assert got[1] == pytest.approx(want[1], abs=1e-12)

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(ValueError):
            min_delta_scan(np.array([0.0, 1.0]), np.zeros((2, 2)), np.zeros((2, 2)))

    def test_negative_slack_detected(self):
        r = np.array([1.0])
        f_r = np.array([[0.9]])
        f_th = np.array([[0.0]])
        d, r2 = min_delta_scan(r, f_r, f_th)
        assert d < 0.0 and r2 < 0.0


class TestBackendSelection:
    def test_active_backend_reports(self):
        assert BACKEND in ("numba", "numpy")
        assert _kernels.BACKEND == BACKEND

    def test_env_flag_forces_numpy(self):
        script = textwrap.dedent(
            """
            import json
            import numpy as np
            from btzgeo._kernels import BACKEND, count_causal_members, min_delta_scan

            rng = np.random.default_rng(34)
            tau = rng.uniform(-2.0, 2.0, 500)
            r = rng.uniform(0.0, 2.0, 500)
            r[rng.uniform(0.0, 1.0, 500) < 0.1] = 0.0
            th = rng.uniform(0.0, 20.0, 500)
            counts = [
                count_causal_members(tau, r, th, 0.3, 0.7, 1.0, True),
                count_causal_members(tau, r, th, 0.3, 0.7, 1.0, False),
                count_causal_members(tau, r, th, 0.0, 0.0, 0.0, True),
            ]
            scan = min_delta_scan(
                rng.uniform(0.01, 3.0, 32),
                rng.normal(size=(32, 16)),
                rng.normal(size=(32, 16)),
            )
            print(json.dumps({"backend": BACKEND, "counts": counts, "scan": scan}))
            """
        )

        def run(disable):
            env = dict(os.environ)
            if disable:
                env["BTZGEO_DISABLE_NUMBA"] = "1"
            else:
                env.pop("BTZGEO_DISABLE_NUMBA", None)
            out = subprocess.run(
                [sys.executable, "-c", script],
                capture_output=True, text=True, env=env, check=True,
            )
            return json.loads(out.stdout)

        forced = run(disable=True)
        default = run(disable=False)
        assert forced["backend"] == "numpy"
        assert forced["counts"] == default["counts"]
        assert forced["scan"] == pytest.approx(default["scan"], abs=1e-12)
