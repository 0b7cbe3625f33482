"""Lie group and Lie algebra arithmetic for SO(2), SE(2), and SIM(2).

Conventions
-----------
* Algebra coordinates: SO(2) ``(theta,)``; SE(2) ``(u, w, theta)``;
  SIM(2) ``(u, w, theta, lam)`` with ``u, w`` translation components,
  ``theta`` in radians and ``lam`` the (dimensionless) log-scale.
* Group elements are the exponential images of algebra vectors:
  SO(2) rotation matrices; SE(2) ``[[R, t], [0, 1]]``; SIM(2)
  ``[[R, B(theta,lam) @ (u,w)], [0, exp(-lam)]]`` where the projective
  action of the SIM(2) form scales points by ``s = exp(lam)``.
* All logarithms use the principal branch ``theta in (-pi, pi]``.
  SE(2)/SIM(2) logarithms within ``BRANCH_CUT_TOL`` of ``|theta| = pi``
  raise :class:`~lgcn.errors.AngleAtBranchCut`.
* Everything here is float64. Functions suffixed ``_mats`` are the
  vectorized core and accept stacked inputs with arbitrary leading axes;
  the dataclass API wraps single elements for convenience and validation.

The distance between two elements is the Euclidean norm of the algebra
coordinates of ``g1^-1 g2`` (equivalently, the Frobenius norm of the
coordinate vector). It is exactly invariant under left multiplication.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import AngleAtBranchCut, KindMismatch, NonPositiveScale, NotInGroup

BRANCH_CUT_TOL = 1e-6
_B_DET_TOL = 1e-12
_ELEMENT_TOL = 1e-9
_MEMBERSHIP_TOL = 1e-6
_SMALL = 1e-4  # scalar-factor Taylor cutoff
_ORIGIN_SQ = 1e-8  # bivariate Taylor cutoff on theta^2 + lam^2


class GroupKind(enum.Enum):
    """The three supported matrix groups."""

    SO2 = "SO2"
    SE2 = "SE2"
    SIM2 = "SIM2"

    @property
    def algebra_dim(self) -> int:
        return {GroupKind.SO2: 1, GroupKind.SE2: 3, GroupKind.SIM2: 4}[self]

    @property
    def mat_dim(self) -> int:
        return 2 if self is GroupKind.SO2 else 3


def wrap_angle(theta):
    """Wrap angles to the principal range (-pi, pi]."""
    theta = np.asarray(theta, dtype=np.float64)
    out = np.mod(theta + np.pi, 2.0 * np.pi) - np.pi
    return np.where(out == -np.pi, np.pi, out)


# ---------------------------------------------------------------------------
# scalar factors of the closed-form exponential, stable near their 0/0 points
# ---------------------------------------------------------------------------

def _piecewise(x: np.ndarray, cutoff: float, exact, taylor) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    small = np.abs(x) < cutoff
    if small.any():
        xs = x[small]
        out[small] = taylor(xs)
    big = ~small
    if big.any():
        xb = x[big]
        out[big] = exact(xb)
    return out


def _sinc(t):
    # sin(t)/t
    return _piecewise(t, _SMALL,
                      lambda x: np.sin(x) / x,
                      lambda x: 1.0 - x * x / 6.0 + x ** 4 / 120.0)


def _versine_ratio(t):
    # (1 - cos t)/t^2 == 0.5 * sinc(t/2)^2, stable for all t
    half = np.asarray(t, dtype=np.float64) / 2.0
    s = _sinc(half)
    return 0.5 * s * s


def _cubic_ratio(t):
    # (t - sin t)/t^3
    return _piecewise(t, 1e-3,
                      lambda x: (x - np.sin(x)) / x ** 3,
                      lambda x: 1.0 / 6.0 - x * x / 120.0 + x ** 4 / 5040.0)


def _expm1_ratio(m):
    # (1 - exp(-m))/m
    return _piecewise(m, _SMALL,
                      lambda x: -np.expm1(-x) / x,
                      lambda x: 1.0 - x / 2.0 + x * x / 6.0 - x ** 3 / 24.0)


def _expm1_ratio2(m):
    # (exp(-m) - 1 + m)/m^2
    return _piecewise(m, _SMALL,
                      lambda x: (np.expm1(-x) + x) / (x * x),
                      lambda x: 0.5 - x / 6.0 + x * x / 24.0 - x ** 3 / 120.0)


def translation_coeffs(theta, lam):
    """Coefficients (C, D) of the translation block B = [[C, -theta*D], [theta*D, C]].

    Evaluated from the factored closed form away from the origin; inside
    ``theta^2 + lam^2 < 1e-8`` a degree-3 bivariate Taylor expansion is used
    (validated against extended-precision quadrature to ~1e-18).
    """
    theta = np.asarray(theta, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    theta, lam = np.broadcast_arrays(theta, lam)
    shape = theta.shape
    theta = np.atleast_1d(np.ascontiguousarray(theta))
    lam = np.atleast_1d(np.ascontiguousarray(lam))
    c = np.empty_like(theta)
    d = np.empty_like(theta)

    rho2 = theta * theta + lam * lam
    origin = rho2 < _ORIGIN_SQ
    if origin.any():
        th, lm = theta[origin], lam[origin]
        th2 = th * th
        c[origin] = (1.0 - lm / 2.0 - th2 / 6.0 + lm * lm / 6.0
                     + lm * th2 / 24.0 - lm ** 3 / 24.0)
        d[origin] = (0.5 - lm / 6.0 - th2 / 24.0 + lm * lm / 24.0
                     + lm * th2 / 120.0 - lm ** 3 / 120.0)
    rest = ~origin
    if rest.any():
        th, lm = theta[rest], lam[rest]
        w_lam = lm * lm / rho2[rest]
        w_theta = th * th / rho2[rest]
        vr = _versine_ratio(th)
        c[rest] = w_lam * _expm1_ratio(lm) + w_theta * (_sinc(th) - lm * vr)
        d[rest] = w_lam * _expm1_ratio2(lm) + w_theta * (vr - lm * _cubic_ratio(th))
    return c.reshape(shape), d.reshape(shape)


# ---------------------------------------------------------------------------
# vectorized core: stacked matrices with arbitrary leading axes
# ---------------------------------------------------------------------------

def _rotations(theta):
    ct, st = np.cos(theta), np.sin(theta)
    r = np.empty(np.shape(theta) + (2, 2))
    r[..., 0, 0] = ct
    r[..., 0, 1] = -st
    r[..., 1, 0] = st
    r[..., 1, 1] = ct
    return r


def hat_mats(kind: GroupKind, vecs) -> np.ndarray:
    """Map algebra coordinates (..., l) to algebra matrices (..., d, d)."""
    vecs = np.asarray(vecs, dtype=np.float64)
    lead = vecs.shape[:-1]
    if kind is GroupKind.SO2:
        theta = vecs[..., 0]
        out = np.zeros(lead + (2, 2))
        out[..., 0, 1] = -theta
        out[..., 1, 0] = theta
        return out
    out = np.zeros(lead + (3, 3))
    out[..., 0, 2] = vecs[..., 0]
    out[..., 1, 2] = vecs[..., 1]
    out[..., 0, 1] = -vecs[..., 2]
    out[..., 1, 0] = vecs[..., 2]
    if kind is GroupKind.SIM2:
        out[..., 2, 2] = -vecs[..., 3]
    return out


def exp_mats(kind: GroupKind, vecs) -> np.ndarray:
    """Closed-form exponential of algebra coordinates (..., l) -> (..., d, d)."""
    vecs = np.asarray(vecs, dtype=np.float64)
    if kind is GroupKind.SO2:
        return _rotations(vecs[..., 0])
    theta = vecs[..., 2]
    lam = vecs[..., 3] if kind is GroupKind.SIM2 else np.zeros_like(theta)
    c, d = translation_coeffs(theta, lam)
    td = theta * d
    u, w = vecs[..., 0], vecs[..., 1]
    out = np.zeros(vecs.shape[:-1] + (3, 3))
    out[..., :2, :2] = _rotations(theta)
    out[..., 0, 2] = c * u - td * w
    out[..., 1, 2] = td * u + c * w
    out[..., 2, 2] = np.exp(-lam) if kind is GroupKind.SIM2 else 1.0
    return out


def _check_membership(kind: GroupKind, mats: np.ndarray, tol: float) -> None:
    d = kind.mat_dim
    if mats.shape[-2:] != (d, d):
        raise NotInGroup(f"expected trailing shape ({d}, {d}), got {mats.shape[-2:]}")
    if not np.all(np.isfinite(mats)):
        raise NotInGroup("matrix entries must be finite")
    r = mats[..., :2, :2]
    gram = np.einsum("...ij,...ik->...jk", r, r)
    eye = np.eye(2)
    if kind is not GroupKind.SO2:
        bottom = mats[..., 2, :]
        if np.max(np.abs(bottom[..., :2])) > tol:
            raise NotInGroup("bottom row must be (0, 0, m33)")
        if kind is GroupKind.SE2:
            if np.max(np.abs(bottom[..., 2] - 1.0)) > tol:
                raise NotInGroup("SE(2) bottom-right entry must be 1")
        elif np.min(bottom[..., 2]) <= 0.0:
            raise NotInGroup("SIM(2) bottom-right entry must be positive")
    if np.max(np.abs(gram - eye)) > tol:
        raise NotInGroup("rotation block is not orthonormal within tolerance")
    det = r[..., 0, 0] * r[..., 1, 1] - r[..., 0, 1] * r[..., 1, 0]
    if np.min(det) <= 0.0:
        raise NotInGroup("rotation block must have positive determinant")


def log_mats(kind: GroupKind, mats, *, validate: bool = True) -> np.ndarray:
    """Principal logarithm of group matrices (..., d, d) -> (..., l).

    Raises AngleAtBranchCut when any SE(2)/SIM(2) rotation angle lies within
    BRANCH_CUT_TOL of pi, or when the translation block B is numerically
    singular (det below 1e-12); raises NotInGroup when ``validate`` is set and
    a matrix violates group membership beyond 1e-6.
    """
    mats = np.asarray(mats, dtype=np.float64)
    if validate:
        _check_membership(kind, mats, _MEMBERSHIP_TOL)
    theta = np.arctan2(mats[..., 1, 0], mats[..., 0, 0])
    if kind is GroupKind.SO2:
        return np.where(theta == -np.pi, np.pi, theta)[..., np.newaxis]
    if np.min(np.pi - np.abs(theta)) < BRANCH_CUT_TOL:
        raise AngleAtBranchCut("rotation angle within 1e-6 of the +/-pi branch cut")
    if kind is GroupKind.SIM2:
        lam = -np.log(mats[..., 2, 2])
    else:
        lam = np.zeros_like(theta)
    c, d = translation_coeffs(theta, lam)
    td = theta * d
    det = c * c + td * td
    if np.min(det) < _B_DET_TOL:
        raise AngleAtBranchCut("translation block is numerically singular")
    tu, tw = mats[..., 0, 2], mats[..., 1, 2]
    u = (c * tu + td * tw) / det
    w = (-td * tu + c * tw) / det
    cols = [u, w, theta] + ([lam] if kind is GroupKind.SIM2 else [])
    return np.stack(cols, axis=-1)


def inverse_mats(kind: GroupKind, mats) -> np.ndarray:
    """Closed-form group inverse of stacked matrices."""
    mats = np.asarray(mats, dtype=np.float64)
    rt = np.swapaxes(mats[..., :2, :2], -1, -2)
    if kind is GroupKind.SO2:
        return np.ascontiguousarray(rt)
    out = np.zeros_like(mats)
    out[..., :2, :2] = rt
    m33 = mats[..., 2, 2]
    out[..., 2, 2] = 1.0 / m33
    t = mats[..., :2, 2]
    out[..., :2, 2] = -np.einsum("...ij,...j->...i", rt, t) / m33[..., np.newaxis]
    return out


def act_points(kind: GroupKind, mats, points) -> np.ndarray:
    """Apply group matrices to 2-D points via homogeneous coordinates.

    For the SIM(2) exponential form the homogeneous weight is exp(-lam), so
    dehomogenizing realizes the scale factor s = exp(lam).
    """
    mats = np.asarray(mats, dtype=np.float64)
    points = np.asarray(points, dtype=np.float64)
    if kind is GroupKind.SO2:
        return np.einsum("...ij,...j->...i", mats, points)
    xy = np.einsum("...ij,...j->...i", mats[..., :2, :2], points) + mats[..., :2, 2]
    return xy / mats[..., 2, 2][..., np.newaxis]


# ---------------------------------------------------------------------------
# single-element API
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraVector:
    """Algebra coordinates of one group element."""

    kind: GroupKind
    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=np.float64).reshape(-1)
        if v.shape != (self.kind.algebra_dim,):
            raise ValueError(
                f"{self.kind.value} algebra vectors have length "
                f"{self.kind.algebra_dim}, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("algebra coordinates must be finite")
        object.__setattr__(self, "v", v)


@dataclass(frozen=True)
class GroupElement:
    """A group matrix tagged with its kind; validated on construction."""

    kind: GroupKind
    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=np.float64)
        d = self.kind.mat_dim
        if m.shape != (d, d):
            raise NotInGroup(f"{self.kind.value} matrices are {d}x{d}, got {m.shape}")
        _check_membership(self.kind, m, _ELEMENT_TOL)
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class BasisSet:
    """The constant basis matrices e_1..e_l of one algebra."""

    kind: GroupKind
    e: tuple


@dataclass(frozen=True)
class SimilarityTransform:
    """Scale-rotation-translation in the standard form [[s R, t], [0, 1]]."""

    s: float
    theta: float
    t: np.ndarray

    def __post_init__(self):
        if not (self.s > 0.0 and np.isfinite(self.s)):
            raise NonPositiveScale(f"scale must be positive, got {self.s}")
        t = np.asarray(self.t, dtype=np.float64).reshape(-1)
        if t.shape != (2,):
            raise ValueError("translation must be a 2-vector")
        object.__setattr__(self, "t", t)

    def matrix(self) -> np.ndarray:
        """Standard homogeneous 3x3 form."""
        out = np.eye(3)
        out[:2, :2] = self.s * _rotations(np.float64(self.theta))
        out[:2, 2] = self.t
        return out

    def apply(self, points) -> np.ndarray:
        """Transform points (..., 2)."""
        points = np.asarray(points, dtype=np.float64)
        r = _rotations(np.float64(self.theta))
        return self.s * np.einsum("ij,...j->...i", r, points) + self.t


def basis(kind: GroupKind) -> BasisSet:
    """Basis matrices in coordinate order (translation-x, translation-y, rotation, scale)."""
    mats = [hat_mats(kind, row) for row in np.eye(kind.algebra_dim)]
    return BasisSet(kind, tuple(m.copy() for m in mats))


def identity(kind: GroupKind) -> GroupElement:
    return GroupElement(kind, np.eye(kind.mat_dim))


def hat(v: AlgebraVector) -> np.ndarray:
    """Algebra matrix sum(v_i e_i) of a coordinate vector."""
    return hat_mats(v.kind, v.v)


def exp_map(v: AlgebraVector) -> GroupElement:
    """Group element exp(hat(v))."""
    return GroupElement(v.kind, exp_mats(v.kind, v.v))


def log_map(g: GroupElement) -> AlgebraVector:
    """Principal-branch algebra coordinates of a group element."""
    return AlgebraVector(g.kind, log_mats(g.kind, g.m, validate=True))


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Group product g1 g2."""
    if g1.kind is not g2.kind:
        raise KindMismatch(f"cannot compose {g1.kind.value} with {g2.kind.value}")
    return GroupElement(g1.kind, g1.m @ g2.m)


def inverse(g: GroupElement) -> GroupElement:
    """Group inverse, computed in closed form."""
    return GroupElement(g.kind, inverse_mats(g.kind, g.m))


def distance(g1: GroupElement, g2: GroupElement) -> float:
    """Left-invariant distance: norm of the algebra coordinates of g1^-1 g2.

    On generic non-commuting elements this is a quasi-metric (the triangle
    inequality can fail by BCH correction terms); restricted to a lifted image
    set it coincides with the Euclidean metric on the translation plane.
    """
    if g1.kind is not g2.kind:
        raise KindMismatch(f"cannot measure {g1.kind.value} against {g2.kind.value}")
    if g1.m is g2.m or np.array_equal(g1.m, g2.m):
        return 0.0
    rel = inverse_mats(g1.kind, g1.m) @ g2.m
    return float(np.linalg.norm(log_mats(g1.kind, rel, validate=False)))


def distance_algebra_diff(v1: AlgebraVector, v2: AlgebraVector) -> float:
    """Fast metric: Euclidean norm of v2 - v1 with the angle difference wrapped."""
    if v1.kind is not v2.kind:
        raise KindMismatch(f"cannot measure {v1.kind.value} against {v2.kind.value}")
    return float(np.linalg.norm(algebra_diffs(v1.kind, v1.v, v2.v)))


def algebra_diffs(kind: GroupKind, vecs1, vecs2) -> np.ndarray:
    """Componentwise v2 - v1 with the angle coordinate wrapped to (-pi, pi]."""
    diff = np.asarray(vecs2, dtype=np.float64) - np.asarray(vecs1, dtype=np.float64)
    axis = 0 if kind is GroupKind.SO2 else 2
    diff[..., axis] = wrap_angle(diff[..., axis])
    return diff


def act_on_point(g: GroupElement, p) -> np.ndarray:
    """Apply a group element to one 2-D point."""
    return act_points(g.kind, g.m, np.asarray(p, dtype=np.float64))


def to_similarity(g: GroupElement) -> SimilarityTransform:
    """Convert a SIM(2) exponential-form matrix to the standard similarity form.

    Both forms define the same projective action; the exponential form is the
    standard form divided by its scale, so s = 1/m33 = exp(lam) and the
    standard translation is s times the stored translation block.
    """
    if g.kind is not GroupKind.SIM2:
        raise KindMismatch("to_similarity expects a SIM(2) element")
    s = 1.0 / g.m[2, 2]
    theta = float(np.arctan2(g.m[1, 0], g.m[0, 0]))
    return SimilarityTransform(s=float(s), theta=theta, t=s * g.m[:2, 2])


def from_similarity(st: SimilarityTransform) -> GroupElement:
    """Inverse of :func:`to_similarity`."""
    out = np.zeros((3, 3))
    out[:2, :2] = _rotations(np.float64(st.theta))
    out[:2, 2] = st.t / st.s
    out[2, 2] = 1.0 / st.s
    return GroupElement(GroupKind.SIM2, out)
