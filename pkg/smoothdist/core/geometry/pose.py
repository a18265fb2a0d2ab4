"""
Rigid poses in 2-D and 3-D and the rotation helpers the gradient code needs.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.spatial.transform import Rotation

ORTHONORMAL_TOL = 1e-10

RotationLike = Union[float, np.ndarray]


def rotation_matrix(dim: int, rotvec: RotationLike) -> np.ndarray:
    """
    Build a rotation matrix from a rotation vector.

    In 2-D the rotation vector is a single angle; in 3-D it is an axis
    scaled by the angle (scipy's rotvec convention).

    Args:
        dim: Ambient dimension (2 or 3)
        rotvec: Angle (2-D) or rotation vector (3-D)

    Returns:
        dim x dim rotation matrix

    Raises:
        ValueError: For unsupported dimensions or malformed vectors
    """
    arr = np.atleast_1d(np.asarray(rotvec, dtype=float))
    if dim == 2:
        if arr.size != 1:
            raise ValueError("2-D rotations take a single angle")
        c, s = np.cos(arr[0]), np.sin(arr[0])
        return np.array([[c, -s], [s, c]])
    if dim == 3:
        if arr.size != 3:
            raise ValueError("3-D rotations take a 3-vector")
        return Rotation.from_rotvec(arr).as_matrix()
    raise ValueError(f"Rotations are supported in 2-D and 3-D, got dim={dim}")


def rotation_dof(dim: int) -> int:
    """Number of rotational parameters in dimension ``dim``."""
    if dim == 2:
        return 1
    if dim == 3:
        return 3
    raise ValueError(f"Rotations are supported in 2-D and 3-D, got dim={dim}")


def torque(gradient: np.ndarray, lever: np.ndarray) -> np.ndarray:
    """
    Derivative of a scalar field w.r.t. a world-frame rotation of its body.

    If a body rotates by exp([w]x) about its origin, a function of the
    body-frame point q = R^T exp(-[w]x)(p - t) changes at rate
    (gradient x lever) . w, with lever = p - t.

    Args:
        gradient: World-frame gradient of the field at p
        lever: p minus the body origin

    Returns:
        Array of shape (rotation_dof(dim),)
    """
    if gradient.shape[0] == 2:
        return np.array([gradient[0] * lever[1] - gradient[1] * lever[0]])
    return np.cross(gradient, lever)


@dataclass(frozen=True, eq=False)
class RigidPose:
    """Proper rigid transformation p -> R p + t."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self) -> None:
        rot = np.array(self.rotation, dtype=float)
        trans = np.array(self.translation, dtype=float).reshape(-1)
        if rot.ndim != 2 or rot.shape[0] != rot.shape[1]:
            raise ValueError("rotation must be a square matrix")
        if rot.shape[0] != trans.shape[0]:
            raise ValueError("rotation and translation dimensions differ")
        if not np.allclose(rot.T @ rot, np.eye(rot.shape[0]), atol=ORTHONORMAL_TOL, rtol=0.0):
            raise ValueError("rotation is not orthonormal")
        if np.linalg.det(rot) < 0.0:
            raise ValueError("rotation must have determinant +1")
        rot.setflags(write=False)
        trans.setflags(write=False)
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation", trans)

    @property
    def dim(self) -> int:
        return int(self.translation.shape[0])

    @classmethod
    def identity(cls, dim: int) -> "RigidPose":
        return cls(np.eye(dim), np.zeros(dim))

    @classmethod
    def from_rotvec(cls, rotvec: RotationLike, translation: np.ndarray) -> "RigidPose":
        """
        Build a pose from a rotation vector and a translation.

        Args:
            rotvec: Angle (2-D) or rotation vector (3-D)
            translation: Translation vector, fixes the dimension

        Returns:
            RigidPose instance
        """
        translation = np.asarray(translation, dtype=float).reshape(-1)
        return cls(rotation_matrix(translation.shape[0], rotvec), translation)

    @classmethod
    def from_angle(cls, angle: float, translation: np.ndarray) -> "RigidPose":
        """Planar pose: counter-clockwise rotation by ``angle`` then translation."""
        translation = np.asarray(translation, dtype=float).reshape(-1)
        if translation.shape[0] != 2:
            raise ValueError("from_angle builds 2-D poses only")
        return cls(rotation_matrix(2, angle), translation)

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Map a point or an (N, n) array of points into the world frame."""
        points = np.asarray(points, dtype=float)
        return points @ self.rotation.T + self.translation

    def inverse(self) -> "RigidPose":
        rot_t = self.rotation.T
        return RigidPose(rot_t, -rot_t @ self.translation)

    def compose(self, other: "RigidPose") -> "RigidPose":
        """Return the pose p -> self(other(p))."""
        return RigidPose(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
        )

    def perturbed(self, dt: np.ndarray, drot: RotationLike) -> "RigidPose":
        """
        Apply a world-frame perturbation about the body origin.

        The rotation becomes exp([drot]x) R and the translation t + dt, which
        matches the parametrization used by the envelope gradient.

        Args:
            dt: Translation increment
            drot: Rotation increment (angle in 2-D, rotvec in 3-D)

        Returns:
            Perturbed pose
        """
        delta = rotation_matrix(self.dim, drot)
        return RigidPose(delta @ self.rotation, self.translation + np.asarray(dt, dtype=float))
