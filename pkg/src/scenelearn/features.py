"""Raster features for primitive groups.

A group is normalized to its bounding box (translation and uniform-scale
invariant), drawn onto a supersampled grid, downsampled to 24x24, smoothed
with a Gaussian, and peak-normalized.  The extractor sits behind this one
function so a richer descriptor can be swapped in later.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.ndimage import gaussian_filter

from .scene import Primitive

GRID = 24
SUPERSAMPLE = 4
SMOOTH_SIGMA = 1.0
FEATURE_DIM = GRID * GRID
_EPS = 1e-6


def extract(group: Sequence[Primitive]) -> np.ndarray:
    """Feature vector of length 576 with entries in [0, 1]."""
    if len(group) == 0:
        raise ValueError("empty primitive group")
    all_pts = np.vstack([p.points for p in group])
    lo = all_pts.min(axis=0)
    hi = all_pts.max(axis=0)
    side = max(float((hi - lo).max()), _EPS)
    center = (lo + hi) / 2.0

    fine = GRID * SUPERSAMPLE
    img = np.zeros((fine, fine), dtype=np.float64)
    for p in group:
        # normalize into the unit box, longest bbox side spanning it
        pts = (p.points - center) / side + 0.5
        a = pts[:-1]
        b = pts[1:]
        seg_len = np.linalg.norm(b - a, axis=1)
        steps = np.maximum(2, np.ceil(seg_len * fine * 2).astype(int))
        for i in range(len(a)):
            t = np.linspace(0.0, 1.0, steps[i])[:, None]
            pts_i = a[i] * (1 - t) + b[i] * t
            cells = np.clip((pts_i * fine).astype(int), 0, fine - 1)
            img[cells[:, 1], cells[:, 0]] = 1.0

    coarse = img.reshape(GRID, SUPERSAMPLE, GRID, SUPERSAMPLE).mean(axis=(1, 3))
    coarse = gaussian_filter(coarse, sigma=SMOOTH_SIGMA, mode="constant")
    peak = coarse.max()
    if peak > 0:
        coarse = coarse / peak
    return coarse.ravel()
