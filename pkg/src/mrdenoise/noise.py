"""Seeded impulse-noise injection with ground-truth corruption masks.

Two impulse models are provided: random-valued corruption, which replaces
a pixel by a uniform draw over the full intensity range, and fixed-valued
corruption, which replaces a pixel by a value near 0 or near 255 (the
margin 0 special case is classic salt-and-pepper noise).

Randomness is drawn from ``numpy.random.Generator`` backed by the PCG64
bit generator. Each pixel consumes exactly two uniform doubles in raster
order: first the replace/keep decision, then the replacement value. This
fixed draw order makes corrupted corpora reproducible bit-for-bit from
(image, spec) alone.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .image import INTENSITY_LEVELS, PEAK, as_gray
from .pgm import read_pgm, write_pgm

__all__ = [
    "NoiseSpec",
    "inject_rvin",
    "inject_fvin",
    "mask_to_gray",
    "gray_to_mask",
    "write_mask",
    "read_mask",
]


@dataclass(frozen=True)
class NoiseSpec:
    """Parameters of an impulse-noise injection.

    kind is ``"rvin"`` (random-valued, uses ``p``) or ``"fvin"``
    (fixed-valued, uses ``p1``/``p2``/``m``; total density is p1 + p2).
    """

    kind: str
    p: float = 0.0
    p1: float = 0.0
    p2: float = 0.0
    m: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("rvin", "fvin"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.p1 < 0.0 or self.p2 < 0.0 or self.p1 + self.p2 > 1.0:
            raise ValueError("p1 and p2 must be nonnegative with p1 + p2 <= 1")
        if not 0 <= self.m <= 127:
            raise ValueError(f"margin m must lie in [0, 127], got {self.m}")

    @classmethod
    def rvin(cls, p: float, seed: int = 0) -> "NoiseSpec":
        return cls(kind="rvin", p=p, seed=seed)

    @classmethod
    def fvin(cls, p1: float, p2: float, m: int = 0, seed: int = 0) -> "NoiseSpec":
        return cls(kind="fvin", p1=p1, p2=p2, m=m, seed=seed)

    @property
    def density(self) -> float:
        """Total corruption probability."""
        return self.p if self.kind == "rvin" else self.p1 + self.p2


def _draws(spec: NoiseSpec, shape: tuple[int, int]) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    # (h, w, 2) doubles, filled in C order = two draws per pixel, raster order
    return rng.random(shape + (2,))


def inject_rvin(img, spec: NoiseSpec) -> tuple[np.ndarray, np.ndarray]:
    """Corrupt each pixel independently with probability ``spec.p``.

    A corrupted pixel takes a value drawn uniformly from [0, 255]; it may
    coincide with the original value, and the mask records it as corrupted
    regardless. Returns ``(noisy, mask)`` with a boolean mask of replaced
    pixels.
    """
    if spec.kind != "rvin":
        raise ValueError(f"inject_rvin requires an rvin spec, got {spec.kind!r}")
    arr = as_gray(img)
    draws = _draws(spec, arr.shape)
    mask = draws[..., 0] < spec.p
    # floor(u * 256) is exactly uniform over 0..255 for 53-bit doubles
    values = (draws[..., 1] * INTENSITY_LEVELS).astype(np.int64)
    np.minimum(values, PEAK, out=values)
    noisy = np.where(mask, values.astype(np.uint8), arr)
    return noisy, mask


def inject_fvin(img, spec: NoiseSpec) -> tuple[np.ndarray, np.ndarray]:
    """Corrupt pixels toward the intensity extremes.

    With probability ``p1`` a pixel is replaced by a uniform draw from
    [0, m], with probability ``p2`` by a uniform draw from [255 - m, 255]
    (both ranges inclusive), otherwise it is kept. Returns ``(noisy, mask)``.
    """
    if spec.kind != "fvin":
        raise ValueError(f"inject_fvin requires an fvin spec, got {spec.kind!r}")
    arr = as_gray(img)
    draws = _draws(spec, arr.shape)
    decision = draws[..., 0]
    low = decision < spec.p1
    high = ~low & (decision < spec.p1 + spec.p2)
    span = spec.m + 1
    offsets = (draws[..., 1] * span).astype(np.int64)
    np.minimum(offsets, spec.m, out=offsets)
    noisy = np.where(
        low, offsets, np.where(high, PEAK - spec.m + offsets, arr)
    ).astype(np.uint8)
    return noisy, low | high


def mask_to_gray(mask) -> np.ndarray:
    """Render a boolean corruption mask as a {0, 255} grayscale image."""
    m = np.asarray(mask)
    if m.ndim != 2 or m.dtype != np.bool_:
        raise ValueError("mask must be a 2-D boolean array")
    return np.where(m, np.uint8(PEAK), np.uint8(0))


def gray_to_mask(img) -> np.ndarray:
    """Recover a boolean mask from its {0, 255} grayscale rendering."""
    arr = as_gray(img)
    if not np.isin(arr, (0, PEAK)).all():
        raise ValueError("mask image must contain only the values 0 and 255")
    return arr == PEAK


def write_mask(path: str | os.PathLike, mask) -> None:
    """Serialize a corruption mask as a binary PGM with values {0, 255}."""
    write_pgm(path, mask_to_gray(mask))


def read_mask(path: str | os.PathLike) -> np.ndarray:
    """Read a corruption mask previously written by :func:`write_mask`."""
    return gray_to_mask(read_pgm(path))
