"""Integer epsilon-contraction kernels for the Scorza covariant.

Both kernels take an integer (3,3,3,3) symmetric tensor ``F`` and return the
(3,3,3,3) tensor ``S[a4,b4,c4,d4]`` of the contraction

    eps(a1,b1,c1) eps(a2,b2,d1) eps(a3,c2,d2) eps(b3,c3,d3)
    * F[a1,a2,a3,a4] F[b1,b2,b3,b4] F[c1,c2,c3,c4] F[d1,d2,d3,d4]

summed over the twelve bracket indices.  Numba is used when importable
unless ``LUEROTH_KIT_DISABLE_NUMBA`` is set to a non-empty value other than
``0``; the numpy paths are bit-identical.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None

NUMBA_DISABLED = os.environ.get("LUEROTH_KIT_DISABLE_NUMBA", "") not in ("", "0")
HAVE_NUMBA = numba is not None and not NUMBA_DISABLED


def default_backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def levi_civita(dtype=np.int64) -> np.ndarray:
    eps = np.zeros((3, 3, 3), dtype=dtype)
    for (i, j, k), s in EPS_NONZERO:
        eps[i, j, k] = s
    return eps


EPS_NONZERO = (
    ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
    ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1),
)
_EPS_IDX = np.array([t for t, _ in EPS_NONZERO], dtype=np.int64)
_EPS_SGN = np.array([s for _, s in EPS_NONZERO], dtype=np.int64)


# ---------------------------------------------------------------------------
# naive: all 3^16 index assignments
# ---------------------------------------------------------------------------

def _naive_loops(F, eps):
    out = np.zeros((3, 3, 3, 3), dtype=F.dtype)
    for a1 in range(3):
        for b1 in range(3):
            for c1 in range(3):
                for a2 in range(3):
                    for b2 in range(3):
                        for d1 in range(3):
                            for a3 in range(3):
                                for c2 in range(3):
                                    for d2 in range(3):
                                        for b3 in range(3):
                                            for c3 in range(3):
                                                for d3 in range(3):
                                                    for a4 in range(3):
                                                        for b4 in range(3):
                                                            for c4 in range(3):
                                                                for d4 in range(3):
                                                                    out[a4, b4, c4, d4] += (
                                                                        eps[a1, b1, c1]
                                                                        * eps[a2, b2, d1]
                                                                        * eps[a3, c2, d2]
                                                                        * eps[b3, c3, d3]
                                                                        * F[a1, a2, a3, a4]
                                                                        * F[b1, b2, b3, b4]
                                                                        * F[c1, c2, c3, c4]
                                                                        * F[d1, d2, d3, d4]
                                                                    )
    return out


NAIVE_SUBSCRIPTS = "aei,bfm,cjn,gko,abcd,efgh,ijkl,mnop->dhlp"


def naive_numpy(F: np.ndarray) -> np.ndarray:
    # unoptimized einsum iterates the full 16-index product in C
    eps = levi_civita(F.dtype)
    return np.einsum(NAIVE_SUBSCRIPTS, eps, eps, eps, eps, F, F, F, F, optimize=False)


# ---------------------------------------------------------------------------
# fast: only the 6^4 nonzero bracket assignments
# ---------------------------------------------------------------------------

def _fast_loops(F, eps_idx, eps_sgn):
    out = np.zeros((3, 3, 3, 3), dtype=F.dtype)
    for p in range(6):
        a1, b1, c1 = eps_idx[p, 0], eps_idx[p, 1], eps_idx[p, 2]
        for q in range(6):
            a2, b2, d1 = eps_idx[q, 0], eps_idx[q, 1], eps_idx[q, 2]
            for r in range(6):
                a3, c2, d2 = eps_idx[r, 0], eps_idx[r, 1], eps_idx[r, 2]
                spq_r = eps_sgn[p] * eps_sgn[q] * eps_sgn[r]
                for s in range(6):
                    b3, c3, d3 = eps_idx[s, 0], eps_idx[s, 1], eps_idx[s, 2]
                    sign = spq_r * eps_sgn[s]
                    for a4 in range(3):
                        fa = sign * F[a1, a2, a3, a4]
                        if fa == 0:
                            continue
                        for b4 in range(3):
                            fab = fa * F[b1, b2, b3, b4]
                            if fab == 0:
                                continue
                            for c4 in range(3):
                                fabc = fab * F[c1, c2, c3, c4]
                                if fabc == 0:
                                    continue
                                for d4 in range(3):
                                    out[a4, b4, c4, d4] += fabc * F[d1, d2, d3, d4]
    return out


def _assignment_arrays():
    grid = np.array(np.meshgrid(*[np.arange(6)] * 4, indexing="ij")).reshape(4, -1)
    p, q, r, s = grid
    idx, sgn = _EPS_IDX, _EPS_SGN
    a = np.stack([idx[p, 0], idx[q, 0], idx[r, 0]])
    b = np.stack([idx[p, 1], idx[q, 1], idx[s, 0]])
    c = np.stack([idx[p, 2], idx[r, 1], idx[s, 1]])
    d = np.stack([idx[q, 2], idx[r, 2], idx[s, 2]])
    sign = sgn[p] * sgn[q] * sgn[r] * sgn[s]
    return a, b, c, d, sign


_ASSIGN = _assignment_arrays()


def fast_numpy(F: np.ndarray) -> np.ndarray:
    """Vectorized over the 1296 nonzero bracket assignments.

    Works for int64 and for object arrays of exact scalars.
    """
    a, b, c, d, sign = _ASSIGN
    A = F[a[0], a[1], a[2]]  # (1296, 3)
    B = F[b[0], b[1], b[2]]
    C = F[c[0], c[1], c[2]]
    D = F[d[0], d[1], d[2]]
    if F.dtype == object:
        sign = sign.astype(object)
    A = A * sign[:, None]
    AB = A[:, :, None] * B[:, None, :]
    ABC = AB[:, :, :, None] * C[:, None, None, :]
    ABCD = ABC[:, :, :, :, None] * D[:, None, None, None, :]
    return ABCD.sum(axis=0)


if HAVE_NUMBA:
    _naive_jit = numba.njit(cache=True)(_naive_loops)
    _fast_jit = numba.njit(cache=True)(_fast_loops)
else:
    _naive_jit = _fast_jit = None


def contract_naive(F: np.ndarray, backend: str | None = None) -> np.ndarray:
    backend = backend or default_backend()
    if F.dtype != np.int64:
        raise TypeError("kernels take int64 tensors")
    if backend == "numba":
        if _naive_jit is None:
            raise RuntimeError("numba backend unavailable")
        return _naive_jit(F, levi_civita())
    if backend == "numpy":
        return naive_numpy(F)
    raise ValueError(f"unknown backend {backend!r}")


def contract_fast(F: np.ndarray, backend: str | None = None) -> np.ndarray:
    backend = backend or default_backend()
    if F.dtype != np.int64:
        raise TypeError("kernels take int64 tensors")
    if backend == "numba":
        if _fast_jit is None:
            raise RuntimeError("numba backend unavailable")
        return _fast_jit(F, _EPS_IDX, _EPS_SGN)
    if backend == "numpy":
        return fast_numpy(F)
    raise ValueError(f"unknown backend {backend!r}")
