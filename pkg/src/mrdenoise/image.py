"""8-bit grayscale images: validation, padding, windows, and quality metrics.

Images are plain 2-D ``numpy.uint8`` arrays, row-major with the origin at
the top-left corner. All functions treat their inputs as read-only and
return fresh arrays, so they are safe to call concurrently.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "INTENSITY_LEVELS",
    "PEAK",
    "as_gray",
    "pad_replicate",
    "window3",
    "window5",
    "sort9",
    "mse",
    "psnr",
]

INTENSITY_LEVELS = 256
PEAK = INTENSITY_LEVELS - 1


def as_gray(img) -> np.ndarray:
    """Validate *img* as an 8-bit grayscale image and return it as uint8.

    Accepts any 2-D array-like of integers in [0, 255]. A uint8 array
    passes through unchanged (no copy); other integer dtypes are
    range-checked and converted.
    """
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D grayscale image, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image must contain at least one pixel")
    if arr.dtype == np.uint8:
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"expected integer intensities, got dtype {arr.dtype}")
    if int(arr.min()) < 0 or int(arr.max()) > PEAK:
        raise ValueError(f"intensities must lie in [0, {PEAK}]")
    return arr.astype(np.uint8)


def pad_replicate(img, margin: int) -> np.ndarray:
    """Pad *img* on all sides by *margin* pixels, replicating edge values."""
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    arr = as_gray(img)
    if margin == 0:
        return arr.copy()
    return np.pad(arr, margin, mode="edge")


def window3(img, row: int, col: int) -> np.ndarray:
    """Extract the 3x3 neighborhood centered at (row, col).

    Returns the nine pixels P1..P9 as a flat array in row-major order;
    index 4 is the center. The full window must lie inside the image.
    """
    arr = as_gray(img)
    h, w = arr.shape
    if not (1 <= row < h - 1 and 1 <= col < w - 1):
        raise ValueError(f"3x3 window at ({row}, {col}) exceeds {h}x{w} image bounds")
    return arr[row - 1 : row + 2, col - 1 : col + 2].reshape(9).copy()


def window5(img, row: int, col: int) -> np.ndarray:
    """Extract the 5x5 neighborhood centered at (row, col).

    Returns the 25 pixels P1..P25 as a flat array in row-major order;
    index 12 is the center. The full window must lie inside the image.
    """
    arr = as_gray(img)
    h, w = arr.shape
    if not (2 <= row < h - 2 and 2 <= col < w - 2):
        raise ValueError(f"5x5 window at ({row}, {col}) exceeds {h}x{w} image bounds")
    return arr[row - 2 : row + 3, col - 2 : col + 3].reshape(25).copy()


def sort9(window) -> np.ndarray:
    """Sort the nine values of a 3x3 window into nondecreasing order F1..F9."""
    arr = np.asarray(window).reshape(-1)
    if arr.size != 9:
        raise ValueError(f"expected 9 window values, got {arr.size}")
    return np.sort(arr)


def mse(a, b) -> float:
    """Mean squared error between two same-sized images.

    The squared differences are accumulated exactly in integers; the only
    floating-point step is the final division, so the result is
    bit-reproducible.
    """
    x = as_gray(a)
    y = as_gray(b)
    if x.shape != y.shape:
        raise ValueError(f"image dimensions differ: {x.shape} vs {y.shape}")
    diff = x.astype(np.int64) - y.astype(np.int64)
    return int(np.sum(diff * diff)) / x.size


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in decibels, with peak fixed at 255.

    Identical images have zero error and are reported as infinite PSNR.
    """
    err = mse(a, b)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / err)
