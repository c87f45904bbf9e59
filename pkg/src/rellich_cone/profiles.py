"""Smooth compactly supported test profiles with analytic derivatives.

Every profile here is built from the standard bump

    b(t) = exp(-1/(1 - t^2))  on (-1, 1),   b = 0 outside,

which is C-infinity on the whole line and vanishes with all derivatives at
the support boundary.  Profiles come in two flavours:

* line profiles ``g(s)`` used on the cylinder axis, and
* radial profiles ``R(r)`` on (0, infinity) used in x-space, supported away
  from both the origin and infinity.

All profiles expose ``value``, ``d1``, ``d2`` (analytic first and second
derivatives) and a ``support`` interval.  Derivatives are exact formulas,
not finite differences; quadratures downstream rely on that accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "bump",
    "bump_d1",
    "bump_d2",
    "LineBump",
    "ScaledLineBump",
    "SampledLineProfile",
    "RadialBump",
    "RadialLogBump",
    "DilatedRadialProfile",
]


def bump(t):
    """Standard bump b(t) = exp(-1/(1-t^2)) on (-1, 1), zero outside."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ti * ti))
    return out


def bump_d1(t):
    """First derivative of the standard bump."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    w = 1.0 - ti * ti
    out[inside] = np.exp(-1.0 / w) * (-2.0 * ti / (w * w))
    return out


def bump_d2(t):
    """Second derivative of the standard bump."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    w = 1.0 - ti * ti
    p1 = -2.0 * ti / (w * w)
    p2 = -2.0 / (w * w) - 8.0 * ti * ti / (w * w * w)
    out[inside] = np.exp(-1.0 / w) * (p2 + p1 * p1)
    return out


@dataclass(frozen=True)
class LineBump:
    """Bump on the line: g(s) = b((s - center)/width), support [c-W, c+W]."""

    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("width must be positive")

    @property
    def support(self):
        return (self.center - self.width, self.center + self.width)

    def value(self, s):
        return bump((np.asarray(s, dtype=float) - self.center) / self.width)

    def d1(self, s):
        return bump_d1((np.asarray(s, dtype=float) - self.center) / self.width) / self.width

    def d2(self, s):
        return bump_d2((np.asarray(s, dtype=float) - self.center) / self.width) / self.width**2


@dataclass(frozen=True)
class ScaledLineBump:
    """The scaling family g(s) = b(eps * s), support [-1/eps, 1/eps]."""

    eps: float

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    @property
    def support(self):
        return (-1.0 / self.eps, 1.0 / self.eps)

    def value(self, s):
        return bump(self.eps * np.asarray(s, dtype=float))

    def d1(self, s):
        return self.eps * bump_d1(self.eps * np.asarray(s, dtype=float))

    def d2(self, s):
        return self.eps**2 * bump_d2(self.eps * np.asarray(s, dtype=float))


class SampledLineProfile:
    """Line profile known only through samples on a uniform grid.

    Derivatives are not available analytically; consumers fall back to
    second-order central differences on the sample grid (the samples are
    zero-padded, so differences at the support edge are well defined).
    """

    def __init__(self, s0: float, step: float, samples):
        if not step > 0:
            raise ValueError("step must be positive")
        self.s0 = float(s0)
        self.step = float(step)
        self.samples = np.asarray(samples, dtype=float).copy()
        if self.samples.ndim != 1 or self.samples.size < 3:
            raise ValueError("need a 1-d array of at least 3 samples")

    @property
    def support(self):
        return (self.s0, self.s0 + self.step * (self.samples.size - 1))


# ---------------------------------------------------------------------------
# radial profiles (x-space)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialBump:
    """Radial profile R(r) = b((r - center)/width), supported in (0, inf)."""

    center: float
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("width must be positive")
        if not self.center - self.width > 0:
            raise ValueError("support must stay away from the origin")

    @property
    def support(self):
        return (self.center - self.width, self.center + self.width)

    def value(self, r):
        return bump((np.asarray(r, dtype=float) - self.center) / self.width)

    def d1(self, r):
        return bump_d1((np.asarray(r, dtype=float) - self.center) / self.width) / self.width

    def d2(self, r):
        return bump_d2((np.asarray(r, dtype=float) - self.center) / self.width) / self.width**2


@dataclass(frozen=True)
class RadialLogBump:
    """Radial profile R(r) = r^power * b((s - center)/width) with s = -log r.

    The log-radius parametrization makes the profile natural for the
    cylinder change of variables: the transformed profile is again a bump.
    Support is [exp(-(center+width)), exp(-(center-width))].
    """

    power: float = 0.0
    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("width must be positive")

    @property
    def support(self):
        return (math.exp(-(self.center + self.width)), math.exp(-(self.center - self.width)))

    def _g(self, s, order=0):
        t = (np.asarray(s, dtype=float) - self.center) / self.width
        if order == 0:
            return bump(t)
        if order == 1:
            return bump_d1(t) / self.width
        return bump_d2(t) / self.width**2

    def value(self, r):
        r = np.asarray(r, dtype=float)
        s = -np.log(r)
        return r**self.power * self._g(s)

    def d1(self, r):
        # R' = r^(p-1) (p G - G') with G(s) evaluated at s = -log r
        r = np.asarray(r, dtype=float)
        s = -np.log(r)
        p = self.power
        return r ** (p - 1) * (p * self._g(s) - self._g(s, 1))

    def d2(self, r):
        r = np.asarray(r, dtype=float)
        s = -np.log(r)
        p = self.power
        return r ** (p - 2) * (
            p * (p - 1) * self._g(s) - (2 * p - 1) * self._g(s, 1) + self._g(s, 2)
        )


class DilatedRadialProfile:
    """R_t(r) = R(t r): the dilation u(x) -> u(t x) acting on the profile."""

    def __init__(self, base, t: float):
        if not t > 0:
            raise ValueError("dilation factor must be positive")
        self.base = base
        self.t = float(t)

    @property
    def support(self):
        lo, hi = self.base.support
        return (lo / self.t, hi / self.t)

    def value(self, r):
        return self.base.value(self.t * np.asarray(r, dtype=float))

    def d1(self, r):
        return self.t * self.base.d1(self.t * np.asarray(r, dtype=float))

    def d2(self, r):
        return self.t**2 * self.base.d2(self.t * np.asarray(r, dtype=float))
