"""The involutive cone map psi(x, y) = ((x+y)^-1, x^-1 - (x+y)^-1).

The map sends pairs of open-cone points to pairs of open-cone points and is
its own inverse.  This module also provides the nested-inverse rewrite of
its second component (Hua's identity) and the change-of-variables Jacobian
of the map, both in closed form and as a finite-difference oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraDescriptor,
    Element,
    NotInConeError,
    _require_same,
    batch_in_cone,
    batch_inverse,
    det,
    in_cone,
    inverse,
    quad_apply,
)


@dataclass(frozen=True, eq=False)
class ConePair:
    """Two elements of the same algebra, both in the open cone."""

    first: Element
    second: Element

    def __post_init__(self):
        _require_same(self.first, self.second)
        if not in_cone(self.first) or not in_cone(self.second):
            raise NotInConeError("both members of a ConePair must be in the open cone")


def my_map(x: Element, y: Element) -> ConePair:
    """Map (x, y) to (u, v) = ((x+y)^-1, x^-1 - (x+y)^-1).

    Both inputs must lie in the open cone; the outputs then do as well, and
    applying the map twice returns the original pair.
    """
    if not in_cone(x) or not in_cone(y):
        raise NotInConeError("my_map requires open-cone inputs")
    u = inverse(x + y)
    v = inverse(x) - u
    return ConePair(u, v)


def hua_rhs(a: Element, b: Element) -> Element:
    """Evaluate (a + P(a) b^-1)^-1, the single-inversion form of a^-1 - (a+b)^-1."""
    if not in_cone(a):
        raise NotInConeError("hua_rhs requires a in the open cone")
    return inverse(a + quad_apply(a, inverse(b)))


def jacobian_det_formula(u: Element, v: Element) -> float:
    """Closed-form Jacobian of the map at (u, v): (det u * det(u+v))^(-2 dim / rank)."""
    if not in_cone(u) or not in_cone(v):
        raise NotInConeError("jacobian requires open-cone inputs")
    alg = u.algebra
    return float((det(u) * det(u + v)) ** (-2.0 * alg.dim / alg.rank))


def _psi_coords(alg: AlgebraDescriptor, z: np.ndarray) -> np.ndarray:
    """Apply the map to stacked coordinates z = (u, v), shape (..., 2*dim)."""
    d = alg.dim
    u, v = z[..., :d], z[..., d:]
    if not (np.all(batch_in_cone(alg, u)) and np.all(batch_in_cone(alg, v))):
        raise NotInConeError("perturbed point left the open cone; reduce the step")
    x = batch_inverse(alg, u + v)
    y = batch_inverse(alg, u) - x
    return np.concatenate([x, y], axis=-1)


def jacobian_fd_matrix(u: Element, v: Element, step: float = 1e-5) -> np.ndarray:
    """Central finite-difference matrix of the map at (u, v), shape (2 dim, 2 dim).

    The step for coordinate k is scaled by (1 + |z_k|).  Raises
    NotInConeError when a perturbed point exits the cone; callers should
    then retry with a smaller step.
    """
    alg = _require_same(u, v)
    z = np.concatenate([u.coords, v.coords])
    m = z.size
    h = step * (1.0 + np.abs(z))
    plus = z[None, :] + np.diag(h)
    minus = z[None, :] - np.diag(h)
    fp = _psi_coords(alg, plus)
    fm = _psi_coords(alg, minus)
    # column k of the Jacobian = d(psi)/d(z_k)
    return (fp - fm).T / (2.0 * h)[None, :]


def jacobian_det_numeric(
    u: Element,
    v: Element,
    step: float = 1e-5,
    richardson: bool = False,
) -> float:
    """|det| of the finite-difference Jacobian matrix of the map at (u, v).

    With ``richardson=True`` the central-difference matrices at steps h and
    h/2 are combined as (4 A_{h/2} - A_h) / 3 before taking the determinant,
    buying two extra orders of accuracy when the plain estimate is too
    coarse.
    """
    a = jacobian_fd_matrix(u, v, step)
    if richardson:
        a = (4.0 * jacobian_fd_matrix(u, v, step / 2.0) - a) / 3.0
    return float(abs(np.linalg.det(a)))
