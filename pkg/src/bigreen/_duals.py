"""Vectorized forward-mode dual numbers carrying value, gradient, Hessian.

Used to differentiate the scalar potentials of the bimaterial fundamental
solution.  A Dual carries a value array v of shape S, a gradient g of shape
S + (3,) and, in second-order mode, a Hessian h of shape S + (3, 3); h is
None in first-order mode and all rules skip Hessian propagation.
"""

from __future__ import annotations

import numpy as np


def _outer(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., :, None] * b[..., None, :]


class Dual:
    __slots__ = ("v", "g", "h")

    # defer mixed ndarray <op> Dual expressions to the reflected methods below
    __array_ufunc__ = None

    def __init__(self, v, g, h=None):
        self.v = v
        self.g = g
        self.h = h

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def seeds(x: np.ndarray, order: int = 2) -> tuple["Dual", "Dual", "Dual"]:
        """Coordinate seeds (X, Y, Z) from points of shape (..., 3)."""
        x = np.asarray(x, dtype=float)
        shape = x.shape[:-1]
        out = []
        for k in range(3):
            g = np.zeros(shape + (3,))
            g[..., k] = 1.0
            h = np.zeros(shape + (3, 3)) if order >= 2 else None
            out.append(Dual(x[..., k].copy(), g, h))
        return tuple(out)

    def _const(self, c) -> "Dual":
        c = np.asarray(c, dtype=float)
        v = np.broadcast_to(c, np.broadcast_shapes(c.shape, self.v.shape))
        shape = v.shape
        g = np.zeros(shape + (3,))
        h = np.zeros(shape + (3, 3)) if self.h is not None else None
        return Dual(v.copy(), g, h)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, o):
        if not isinstance(o, Dual):
            return Dual(self.v + o, self.g.copy(), None if self.h is None else self.h.copy())
        h = None if self.h is None else self.h + o.h
        return Dual(self.v + o.v, self.g + o.g, h)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.v, -self.g, None if self.h is None else -self.h)

    def __sub__(self, o):
        return self + (-o if isinstance(o, Dual) else -np.asarray(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Dual):
            o = np.asarray(o, dtype=float)
            on = o[..., None] if o.ndim else o
            onn = o[..., None, None] if o.ndim else o
            return Dual(self.v * o, self.g * on,
                        None if self.h is None else self.h * onn)
        v = self.v * o.v
        g = self.g * o.v[..., None] + o.g * self.v[..., None]
        h = None
        if self.h is not None:
            h = (self.h * o.v[..., None, None] + o.h * self.v[..., None, None]
                 + _outer(self.g, o.g) + _outer(o.g, self.g))
        return Dual(v, g, h)

    __rmul__ = __mul__

    def reciprocal(self) -> "Dual":
        iv = 1.0 / self.v
        g = -self.g * (iv * iv)[..., None]
        h = None
        if self.h is not None:
            h = (-self.h * (iv * iv)[..., None, None]
                 + 2.0 * _outer(self.g, self.g) * (iv * iv * iv)[..., None, None])
        return Dual(iv, g, h)

    def __truediv__(self, o):
        if isinstance(o, Dual):
            return self * o.reciprocal()
        return self * (1.0 / np.asarray(o, dtype=float))

    def __rtruediv__(self, o):
        return self.reciprocal() * o

    def sqrt(self) -> "Dual":
        s = np.sqrt(self.v)
        inv2s = 0.5 / s
        g = self.g * inv2s[..., None]
        h = None
        if self.h is not None:
            h = (self.h * inv2s[..., None, None]
                 - _outer(self.g, self.g) * (0.25 / (s * s * s))[..., None, None])
        return Dual(s, g, h)

    def log(self) -> "Dual":
        iv = 1.0 / self.v
        g = self.g * iv[..., None]
        h = None
        if self.h is not None:
            h = self.h * iv[..., None, None] - _outer(self.g, self.g) * (iv * iv)[..., None, None]
        return Dual(np.log(self.v), g, h)
