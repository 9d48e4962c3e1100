"""Batch kernel dispatch: compiled extension if built, numpy fallback otherwise.

Both backends expose ``wedge3_many``, ``conorm_many`` and
``conorm_wedge3_many`` over (n, 4, 4) float64 batches; results agree to
roundoff and the active backend is reported by :func:`backend`.
"""

import numpy as np

try:
    from . import _extcore
except ImportError:  # pure checkout or failed build: fall back to numpy
    _extcore = None

HAVE_EXT = _extcore is not None

# index triples of the ordered Lambda^3 basis (e012, e013, e023, e123)
_SUBSETS = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def _det3_cols(m, rows, cols):
    r0, r1, r2 = rows
    c0, c1, c2 = cols
    a, b, c = m[:, r0, c0], m[:, r0, c1], m[:, r0, c2]
    d, e, f = m[:, r1, c0], m[:, r1, c1], m[:, r1, c2]
    g, h, i = m[:, r2, c0], m[:, r2, c1], m[:, r2, c2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def wedge3_many_np(mats):
    mats = np.ascontiguousarray(mats, dtype=float)
    n = mats.shape[0]
    out = np.empty((n, 4, 4))
    for i, rows in enumerate(_SUBSETS):
        for j, cols in enumerate(_SUBSETS):
            out[:, i, j] = _det3_cols(mats, rows, cols)
    return out


def conorm_many_np(mats):
    sv = np.linalg.svd(np.asarray(mats, dtype=float), compute_uv=False)
    return sv[:, -1]


def conorm_wedge3_many_np(mats):
    return conorm_many_np(wedge3_many_np(mats))


def _as_batch(mats):
    m = np.ascontiguousarray(mats, dtype=float)
    if m.ndim != 3 or m.shape[1:] != (4, 4):
        raise ValueError(f"expected (n, 4, 4) batch, got {m.shape}")
    return m


def wedge3_many(mats):
    m = _as_batch(mats)
    return _extcore.wedge3_many(m) if HAVE_EXT else wedge3_many_np(m)


def conorm_many(mats):
    m = _as_batch(mats)
    return _extcore.conorm_many(m) if HAVE_EXT else conorm_many_np(m)


def conorm_wedge3_many(mats):
    m = _as_batch(mats)
    return _extcore.conorm_wedge3_many(m) if HAVE_EXT else conorm_wedge3_many_np(m)


def backend():
    return "compiled" if HAVE_EXT else "numpy"
