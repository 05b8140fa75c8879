import os
import subprocess
import sys

import pytest

from quartshape import _pure, kernels

compiled = pytest.importorskip("quartshape._kernel")


def test_backend_selected():
    assert kernels.BACKEND == ("python" if os.environ.get("QUARTSHAPE_PURE") == "1" else "compiled")


def test_pure_fallback_env_switch():
    out = subprocess.run([sys.executable, "-c", "import quartshape.kernels as k; print(k.BACKEND)"],
                         env={**os.environ, "QUARTSHAPE_PURE": "1"}, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_scan_parity():
    assert compiled.scan_ball(9, 10 ** 4) == _pure.scan_ball(9, 10 ** 4)


def test_kernel_parity(rng):
    for _ in range(200):
        c = tuple(rng.randint(-4, 4) for _ in range(12))
        assert compiled.disc_of(c) == _pure.disc_of(c)
        assert compiled.sp_min(c) == _pure.sp_min(c)
        assert compiled.is_locally_minimal(c) == _pure.is_locally_minimal(c)
        assert compiled.canonical(c, 256, 2000) == _pure.canonical(c, 256, 2000)


def test_disc_matches_exact_formula(rng):
    from quartshape.forms import Pair, disc_pair
    for _ in range(200):
        c = tuple(rng.randint(-5, 5) for _ in range(12))
        assert kernels.disc_of(c) == disc_pair(Pair.from_coeffs(c))
