"""Supersignature: a partial Conway algebra on (R u iR) x (Z u {inf}).

The first coordinate ``r`` obeys ``-u r(L+) + v r(L-) = i r(L_o)``, which is
HOMFLY at ``x = iu, y = -iv``.  The second coordinate ``z`` is pushed up
the resolving tree: it must satisfy ``i^z = r/|r|``, differ by one from the
smoothing child's ``z``, copy the switch child's ``z`` when the smoothing
has ``r = 0``, and is infinite exactly when ``r = 0``.

Arithmetic is exact by default: ``u`` and ``v`` become fractions through
their decimal representation and ``r`` is a Gaussian rational, so zero
tests never guess.  A floating mode with an epsilon band is available for
comparison; values too close to zero to call raise
:class:`NumericallyAmbiguousError`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .conway import ConwayAlgebra, UndefinedOperationError, evaluate, homfly
from .diagram import LinkDiagram
from .poly import LaurentPoly

__all__ = [
    "AxisDriftError",
    "NumericallyAmbiguousError",
    "BaseOrderMismatchError",
    "AxisValue",
    "SupersigValue",
    "SupersigAlgebra",
    "supersig_r",
    "supersignature",
    "jones_supersignature",
    "jones_parameters",
    "disjoint_epsilon",
    "TABLE_PARAMETERS",
]

INF = None  # the value of z when r = 0


class AxisDriftError(ArithmeticError):
    """r left R u iR."""


class NumericallyAmbiguousError(ArithmeticError):
    """A floating r is too close to zero to decide."""


class BaseOrderMismatchError(ArithmeticError):
    """Different base-point choices gave different supersignatures."""


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class AxisValue:
    """A point of R u iR: ``magnitude`` on the real or imaginary axis (signed)."""

    magnitude: object  # Fraction (exact) or float
    axis: str  # "real" or "imag"

    @property
    def is_zero(self) -> bool:
        return self.magnitude == 0

    @property
    def phase_power(self):
        """The residue ``z mod 4`` with ``i^z = r/|r|``; None at zero."""
        if self.is_zero:
            return None
        pos = self.magnitude > 0
        if self.axis == "real":
            return 0 if pos else 2
        return 1 if pos else 3

    def __complex__(self):
        m = float(self.magnitude)
        return complex(m, 0) if self.axis == "real" else complex(0, m)

    def __str__(self):
        if self.is_zero:
            return "0"
        return f"{self.magnitude}" + ("i" if self.axis == "imag" else "")


@dataclass(frozen=True)
class SupersigValue:
    r: AxisValue
    z: int | None

    @property
    def signature(self):
        return self.z

    def __str__(self):
        return f"({self.r}, {'inf' if self.z is None else self.z})"


def _axis_of(re, im, tol=0):
    """Split a Gaussian number into an AxisValue; raise if it is off both axes."""
    re_zero = abs(re) <= tol
    im_zero = abs(im) <= tol
    if re_zero and im_zero:
        return AxisValue(0 * re, "real")
    if im_zero:
        return AxisValue(re, "real")
    if re_zero:
        return AxisValue(im, "imag")
    raise AxisDriftError(f"r = {re} + {im}i is on neither axis")


class SupersigAlgebra(ConwayAlgebra):
    """The partial algebra for fixed ``u, v`` with ``u v > 0``.

    Elements are tuples ``(re, im, z)`` with ``z`` None for infinity.  With
    ``exact=False`` the coordinates are floats and ``epsilon`` is the
    relative zero threshold; anything in ``(eps, 1000 eps]`` is ambiguous.
    """

    partial = True

    def __init__(self, u, v, *, exact: bool = True, epsilon: float = 1e-9):
        if exact:
            u, v = _exact(u), _exact(v)
        else:
            u, v = float(u), float(v)
        if not u * v > 0:
            raise ValueError("supersignature needs u*v > 0")
        self.u, self.v = u, v
        self.exact = exact
        self.epsilon = epsilon
        self.name = f"supersig({u},{v})"
        self._scale = 1.0

    # a zero test that respects the floating mode
    def _is_zero(self, re, im) -> bool:
        if self.exact:
            return re == 0 and im == 0
        mag = math.hypot(re, im)
        scale = max(self._scale, 1.0)
        if mag <= self.epsilon * scale:
            return True
        if mag <= 1e3 * self.epsilon * scale:
            raise NumericallyAmbiguousError(f"|r| = {mag:.3e} is within the ambiguity band")
        self._scale = max(self._scale, mag)
        return False

    def _clean(self, re, im):
        if self._is_zero(re, im):
            return 0 * re, 0 * im, True
        if self.exact:
            if re != 0 and im != 0:
                raise AxisDriftError(f"r = {re} + {im}i is on neither axis")
            return re, im, False
        tol = self.epsilon * max(self._scale, 1.0) * 1e3
        if abs(re) > tol and abs(im) > tol:
            raise AxisDriftError(f"r = {re} + {im}i is on neither axis")
        return (re, 0.0, False) if abs(re) > tol else (0.0, im, False)

    @staticmethod
    def _phase(re, im) -> int:
        if im == 0:
            return 0 if re > 0 else 2
        return 1 if im > 0 else 3

    def constant(self, n):
        u, v = self.u, self.v
        # (i (u - v))^(n - 1)
        d = u - v
        k = n - 1
        mag = d ** k
        re, im = [(mag, 0 * mag), (0 * mag, mag), (-mag, 0 * mag), (0 * mag, -mag)][k % 4]
        if d == 0 and k > 0:
            return (re, im, INF)
        z = 0 if k == 0 else (k if u > v else -k)
        return (re, im, z)

    def _check_domain(self, op, a, b):
        ra, rb = (a[0], a[1]), (b[0], b[1])
        a_zero = a[2] is INF
        b_zero = b[2] is INF
        if not a_zero:
            a_real = ra[1] == 0
            if a_real and rb[0] != 0:
                raise UndefinedOperationError(op, a, b, "first operand real, second not imaginary")
            if not a_real and rb[1] != 0:
                raise UndefinedOperationError(op, a, b, "first operand imaginary, second not real")
        if not a_zero and not b_zero and abs(a[2] - b[2]) != 1:
            raise UndefinedOperationError(op, a, b, "|z1 - z2| != 1")

    def _finish(self, op, re, im, switch, smooth):
        re, im, zero = self._clean(re, im)
        if zero:
            return (re, im, INF)
        target = self._phase(re, im)
        if smooth[2] is INF:
            z = switch[2]
            if z is INF or z % 4 != target:
                raise UndefinedOperationError(op, switch, smooth, "switch-child z does not match the phase of r")
            return (re, im, z)
        for z in (smooth[2] - 1, smooth[2] + 1):
            if z % 4 == target:
                return (re, im, z)
        raise UndefinedOperationError(op, switch, smooth, "no z with |z - z0| = 1 matches the phase of r")

    def bar(self, a, b):
        # L+ from L- = a and L_o = b:  r1 = (v r2 - i r0)/u
        self._check_domain("|", a, b)
        u, v = self.u, self.v
        re = (v * a[0] + b[1]) / u
        im = (v * a[1] - b[0]) / u
        return self._finish("|", re, im, a, b)

    def star(self, a, b):
        # L- from L+ = a and L_o = b:  r2 = (u r1 + i r0)/v
        self._check_domain("*", a, b)
        u, v = self.u, self.v
        re = (u * a[0] - b[1]) / v
        im = (u * a[1] + b[0]) / v
        return self._finish("*", re, im, a, b)

    def to_value(self, e) -> SupersigValue:
        return SupersigValue(_axis_of(e[0], e[1]), e[2])


def _gauss(r: AxisValue):
    m = r.magnitude
    return (m, 0 * m) if r.axis == "real" else (0 * m, m)


def _eval_homfly_gauss(p: LaurentPoly, u, v):
    """HOMFLY at x = iu, y = -iv, as a Gaussian number (exact if u, v are Fractions)."""
    re = im = 0 * u
    units = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    for (ex, ey), c in p.terms.items():
        # (iu)^ex (-iv)^ey = i^(ex + 3 ey) u^ex v^ey
        mag = c * (u ** ex) * (v ** ey)
        ur, ui = units[(ex + 3 * ey) % 4]
        re += ur * mag
        im += ui * mag
    return re, im


def supersig_r(d: LinkDiagram, u, v, *, exact: bool = True, homfly_poly: LaurentPoly | None = None) -> AxisValue:
    """r_L(u, v) = HOMFLY(L)(iu, -iv)."""
    if exact:
        u, v = _exact(u), _exact(v)
    else:
        u, v = float(u), float(v)
    p = homfly_poly if homfly_poly is not None else homfly(d)
    re, im = _eval_homfly_gauss(p, u, v)
    tol = 0 if exact else 1e-9 * max(1.0, math.hypot(re, im))
    return _axis_of(re, im, tol)


def supersignature(d: LinkDiagram, u, v, *, exact: bool = True, epsilon: float = 1e-9,
                   experimental_checks: int = 3, seed: int = 0) -> SupersigValue:
    """sigma_{u,v}(d) with its r coordinate.

    Raises :class:`UndefinedOperationError` when the partial algebra is not
    defined somewhere on the resolving tree.  For ``u != v`` (where the
    algebra is only conjectured to give an invariant) the value is
    recomputed under ``experimental_checks`` random base-point choices and
    any disagreement raises :class:`BaseOrderMismatchError`.
    """
    alg = SupersigAlgebra(u, v, exact=exact, epsilon=epsilon)
    raw = evaluate(d, alg, cache=d.n_crossings >= 10)
    val = alg.to_value(raw)
    r_check = supersig_r(d, u, v, exact=exact)
    if exact and (raw[0], raw[1]) != _gauss(r_check):
        raise AxisDriftError(f"tree r {val.r} disagrees with HOMFLY r {r_check}")
    if alg.u != alg.v and experimental_checks:
        rng = random.Random(seed)
        for _ in range(experimental_checks):
            other = evaluate(d, SupersigAlgebra(u, v, exact=exact, epsilon=epsilon), rng=rng)
            if other[2] != raw[2]:
                raise BaseOrderMismatchError(f"z = {raw[2]} at canonical base points but {other[2]} elsewhere")
    return val


def jones_parameters(w):
    """(u, v) = (w^2, w^-2) / (w + 1/w); exact when w is rational."""
    w = _exact(w)
    if w == 0 or w + 1 / w == 0:
        raise ValueError("w must be nonzero with w + 1/w != 0")
    s = w + 1 / w
    return w * w / s, 1 / (w * w * s)


def jones_supersignature(d: LinkDiagram, w, **kw) -> SupersigValue:
    u, v = jones_parameters(w)
    return supersignature(d, u, v, **kw)


def disjoint_epsilon(u, v):
    """sigma of the two-component unlink: 1, inf (None) or -1."""
    u, v = _exact(u), _exact(v)
    return None if u == v else (1 if u > v else -1)


# the four signature columns of the knot table: classical signature, u = v = 2, and w = 2, 1/2
TABLE_PARAMETERS = (
    (Fraction(1, 2), Fraction(1, 2)),
    (Fraction(2), Fraction(2)),
    (Fraction(8, 5), Fraction(1, 10)),
    (Fraction(1, 10), Fraction(8, 5)),
)
