"""Lifting raster images into Lie group space, and image-plane resampling.

Pixel (row r, col c) of an H x W image maps to normalized coordinates

    x = (c - (W-1)/2) * 2/max(H, W)
    y = ((H-1)/2 - r) * 2/max(H, W)

i.e. centered, y-up, longest side spanning [-1, 1]. Each pixel becomes one
group element (one coset representative per pixel): for SE(2)/SIM(2) the pure
translation carrying the origin to (x, y); for SO(2) the rotation
atan2(y, x) carrying the positive-x ray toward the pixel (the center pixel,
where the angle is undefined, gets 0). Intensities are copied unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groups
from .errors import KindMismatch
from .groups import GroupElement, GroupKind, SimilarityTransform


@dataclass(frozen=True)
class PixelGrid:
    """An H x W x C image with intensities in [0, 1]."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim == 2:
            v = v[:, :, np.newaxis]
        if v.ndim != 3 or v.shape[2] not in (1, 3):
            raise ValueError(f"expected (H, W) or (H, W, C in {{1,3}}), got {v.shape}")
        if v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError("image must have at least one pixel")
        if not np.all(np.isfinite(v)):
            raise ValueError("intensities must be finite")
        if v.min() < 0.0 or v.max() > 1.0:
            raise ValueError("intensities must lie in [0, 1]")
        object.__setattr__(self, "values", v)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def channels(self) -> int:
        return self.values.shape[2]


@dataclass(frozen=True)
class LiftedSet:
    """Ordered (algebra vector, feature vector) pairs representing an image."""

    kind: GroupKind
    vectors: np.ndarray  # (n, l) float64
    features: np.ndarray  # (n, C) float64

    def __post_init__(self):
        vecs = np.asarray(self.vectors, dtype=np.float64)
        feats = np.asarray(self.features, dtype=np.float64)
        if vecs.ndim != 2 or vecs.shape[1] != self.kind.algebra_dim:
            raise ValueError(f"vectors must be (n, {self.kind.algebra_dim})")
        if feats.ndim != 2 or feats.shape[0] != vecs.shape[0]:
            raise ValueError("features must be (n, C) matching vectors")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "features", feats)

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def subset(self, indices) -> "LiftedSet":
        idx = np.asarray(indices, dtype=np.intp)
        return LiftedSet(self.kind, self.vectors[idx], self.features[idx])


def pixel_coordinates(height: int, width: int) -> tuple[np.ndarray, np.ndarray]:
    """Normalized (x, y) coordinates of every pixel, row-major."""
    pitch = 2.0 / max(height, width)
    cols = (np.arange(width) - (width - 1) / 2.0) * pitch
    rows = ((height - 1) / 2.0 - np.arange(height)) * pitch
    x = np.broadcast_to(cols[np.newaxis, :], (height, width))
    y = np.broadcast_to(rows[:, np.newaxis], (height, width))
    return x.reshape(-1), y.reshape(-1)


def lift(img: PixelGrid, kind: GroupKind) -> LiftedSet:
    """Lift an image to one canonical group element per pixel (K = 1)."""
    x, y = pixel_coordinates(img.height, img.width)
    n = x.shape[0]
    feats = img.values.reshape(n, img.channels).copy()
    if kind is GroupKind.SO2:
        theta = np.arctan2(y, x)
        theta[(x == 0.0) & (y == 0.0)] = 0.0
        return LiftedSet(kind, theta[:, np.newaxis], feats)
    vecs = np.zeros((n, kind.algebra_dim))
    vecs[:, 0] = x
    vecs[:, 1] = y
    return LiftedSet(kind, vecs, feats)


def left_transform(a: GroupElement, s: LiftedSet) -> LiftedSet:
    """Replace each group element g_i by a g_i; features and order unchanged."""
    if a.kind is not s.kind:
        raise KindMismatch(f"cannot act with {a.kind.value} on a {s.kind.value} set")
    mats = groups.exp_mats(s.kind, s.vectors)
    moved = a.m @ mats if s.kind is GroupKind.SO2 else np.einsum(
        "ij,njk->nik", a.m, mats)
    return LiftedSet(s.kind, groups.log_mats(s.kind, moved), s.features.copy())


def bilinear_sample(values: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Sample an (H, W, C) array at fractional (row, col) positions.

    Out-of-bounds reads contribute 0 (zero padding).
    """
    h, w, c = values.shape
    r0 = np.floor(rows).astype(np.int64)
    c0 = np.floor(cols).astype(np.int64)
    fr = (rows - r0)[:, np.newaxis]
    fc = (cols - c0)[:, np.newaxis]

    def fetch(ri, ci):
        valid = (ri >= 0) & (ri < h) & (ci >= 0) & (ci < w)
        out = np.zeros((rows.shape[0], c))
        out[valid] = values[ri[valid], ci[valid]]
        return out

    top = fetch(r0, c0) * (1 - fc) + fetch(r0, c0 + 1) * fc
    bot = fetch(r0 + 1, c0) * (1 - fc) + fetch(r0 + 1, c0 + 1) * fc
    return top * (1 - fr) + bot * fr


def resample_transform(img: PixelGrid, st: SimilarityTransform) -> PixelGrid:
    """Resample an image under a similarity transform about its center.

    output(x) = input(A^-1 x) in normalized coordinates, bilinear
    interpolation, zero padding, output resolution unchanged.
    """
    if not 0.25 <= st.s <= 4.0:
        raise ValueError(f"scale must lie in [0.25, 4], got {st.s}")
    h, w = img.height, img.width
    x, y = pixel_coordinates(h, w)
    # invert p = s R q + t
    px, py = x - st.t[0], y - st.t[1]
    ct, sn = np.cos(st.theta), np.sin(st.theta)
    qx = (ct * px + sn * py) / st.s
    qy = (-sn * px + ct * py) / st.s
    pitch = 2.0 / max(h, w)
    cols = qx / pitch + (w - 1) / 2.0
    rows = (h - 1) / 2.0 - qy / pitch
    out = bilinear_sample(img.values, rows, cols).reshape(h, w, img.channels)
    # bilinear mixing of [0, 1] values can overshoot by one ulp
    return PixelGrid(np.clip(out, 0.0, 1.0))


LIFT_CSV_COLUMNS = {
    GroupKind.SO2: ["theta"],
    GroupKind.SE2: ["u", "w", "theta"],
    GroupKind.SIM2: ["u", "w", "theta", "lambda"],
}


def write_lifted_csv(s: LiftedSet, path) -> None:
    """Dump a lifted set as CSV: algebra columns for the group, then f0[,f1,f2]."""
    cols = LIFT_CSV_COLUMNS[s.kind] + [f"f{i}" for i in range(s.features.shape[1])]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(cols) + "\n")
        data = np.concatenate([s.vectors, s.features], axis=1)
        for row in data:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")
