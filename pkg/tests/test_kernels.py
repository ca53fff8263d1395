import os
import subprocess
import sys

import numpy as np
import pytest

from lueroth_kit import _kernels
from lueroth_kit.instances import random_quartic
from lueroth_kit.scorza import _integer_tensor

needs_numba = pytest.mark.skipif(_kernels._fast_jit is None, reason="numba not available")


def tensors(n=3):
    return [_integer_tensor(random_quartic(s, bound=3))[0] for s in range(n)]


def test_levi_civita():
    eps = _kernels.levi_civita()
    assert eps[0, 1, 2] == 1 and eps[1, 0, 2] == -1 and eps[0, 0, 1] == 0
    assert int(np.abs(eps).sum()) == 6


def test_numpy_fast_equals_numpy_naive():
    for F in tensors(2):
        assert np.array_equal(_kernels.fast_numpy(F), _kernels.naive_numpy(F))


@needs_numba
def test_backends_bit_identical():
    for F in tensors():
        ref = _kernels.contract_fast(F, "numpy")
        assert np.array_equal(_kernels.contract_fast(F, "numba"), ref)
        assert np.array_equal(_kernels.contract_naive(F, "numba"), ref)


def test_output_is_symmetric():
    S = _kernels.contract_fast(tensors(1)[0])
    assert np.array_equal(S, S.transpose(1, 0, 2, 3))
    assert np.array_equal(S, S.transpose(3, 1, 2, 0))


def test_bad_arguments():
    F = tensors(1)[0]
    with pytest.raises(ValueError):
        _kernels.contract_fast(F, "cuda")
    with pytest.raises(TypeError):
        _kernels.contract_fast(F.astype(float), "numpy")


def test_env_flag_selects_numpy():
    env = dict(os.environ, LUEROTH_KIT_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from lueroth_kit import _kernels; print(_kernels.default_backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
