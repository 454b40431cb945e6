"""Reflection probabilities of the typical object by numerical integration.

The object's line is ``x cos(a) + y sin(a) = p`` with ``a`` uniform on
``[0, 2pi)`` and ``v = p / r_net`` distributed with density ``2v`` on
``[0, 1]``.  Every event below reduces, for fixed ``a``, to ``v`` falling in an
interval, whose probability is ``hi**2 - lo**2``.  What remains is a 1-D
integral over ``a``, evaluated with :func:`metareflect.quadrature.integrate`.

Two independent formulations are provided for the metasurface event (Tx and
Rx on the same side of the object's line):

* :func:`pr_event1_approach1` integrates the probability that the object line
  crosses the Tx-Rx segment and subtracts it from one;
* :func:`pr_event1_approach2` integrates the probability that both terminals
  are above, or both below, the object line.

:func:`pr_event2` gives the probability that the Tx-Rx mid-perpendicular hits
the object segment (the specular condition), and :func:`pr_event3_upper` the
Frechet bound on the probability of a Snell-law reflection.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateConfig, InvalidParameter, VerticalLine
from .geometry import TWO_PI, Point2, SlopeLine, line_through, mid_perpendicular
from .quadrature import QuadratureSpec, integrate

log = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi
QUADRANTS = (0.0, HALF_PI, math.pi, 1.5 * math.pi, TWO_PI)

# Slopes outside [SLOPE_MIN, SLOPE_MAX] in magnitude are rotated away.
SLOPE_MIN = 1e-6
SLOPE_MAX = 1e6
ROTATIONS = (0.0, math.pi / 7, math.pi / 11)

CLAMP_WARN = 1e-7
GATE_SCAN_POINTS = 4096


@dataclass(frozen=True)
class NetworkConfig:
    r_net: float
    tx: Point2
    rx: Point2

    def __post_init__(self):
        if not self.r_net > 0.0:
            raise InvalidParameter(f"r_net must be positive, got {self.r_net}")
        slack = 1e-12 * self.r_net
        for name, pt in (("tx", self.tx), ("rx", self.rx)):
            if pt.norm > self.r_net + slack:
                raise InvalidParameter(f"{name}={tuple(pt)} lies outside the disk of radius {self.r_net}")
        if self.tx == self.rx:
            raise InvalidParameter("tx and rx must differ")

    def rotated(self, angle: float) -> NetworkConfig:
        return NetworkConfig(self.r_net, self.tx.rotated(angle), self.rx.rotated(angle))

    def swapped(self) -> NetworkConfig:
        return NetworkConfig(self.r_net, self.rx, self.tx)


@dataclass(frozen=True)
class IntegrationLimits:
    """Zeros of ``m sin(a) + cos(a)`` on ``(0, 2pi)``; the sum is non-negative outside ``(delta1, delta2)``."""

    delta1: float
    delta2: float

    @classmethod
    def for_slope(cls, m: float) -> IntegrationLimits:
        r = math.sqrt(1.0 + m * m)
        return cls(2.0 * math.atan(m + r), TWO_PI + 2.0 * math.atan(m - r))


@dataclass(frozen=True)
class ReflectionReport:
    pr_event1_a1: float
    pr_event1_a2: float
    pr_event2: float
    pr_event3_upper: float


def heaviside(x):
    """Unit step with ``H(0) = 1``."""
    out = np.where(np.asarray(x) >= 0.0, 1.0, 0.0)
    return int(out) if out.ndim == 0 else out


def heaviside_c(x):
    """Complementary step ``1 - H(x)``, so ``Hc(0) = 0``."""
    out = np.where(np.asarray(x) >= 0.0, 0.0, 1.0)
    return int(out) if out.ndim == 0 else out


def theta_kernel(mu1, mu2, mu3, mu4):
    """Mass of density ``2v`` on ``[max(mu3, mu4, 0), min(mu1, mu2, 1)]``; zero if empty."""
    hi = np.minimum(np.minimum(mu1, mu2), 1.0)
    lo = np.maximum(np.maximum(mu3, mu4), 0.0)
    return np.where(hi - lo >= 0.0, hi * hi - lo * lo, 0.0)


def usable_slope_frame(cfg: NetworkConfig) -> tuple[NetworkConfig, float, SlopeLine]:
    """Rotate ``cfg`` about the origin until the Tx-Rx slope is well conditioned.

    Returns the (possibly rotated) config, the rotation angle and the Tx-Rx
    line.  The object law is rotation invariant, so probabilities computed in
    the rotated frame are those of the original one.
    """
    for angle in ROTATIONS:
        rc = cfg.rotated(angle) if angle else cfg
        try:
            line = line_through(rc.tx, rc.rx)
        except VerticalLine:
            continue
        if SLOPE_MIN <= abs(line.m) <= SLOPE_MAX:
            if angle:
                log.debug("rotated configuration by %.6f rad (slope %.3g)", angle, line.m)
            return rc, angle, line
    raise DegenerateConfig(f"no usable Tx-Rx slope for tx={tuple(cfg.tx)}, rx={tuple(cfg.rx)}")


def _clamp(value: float, label: str) -> float:
    if value < -CLAMP_WARN or value > 1.0 + CLAMP_WARN:
        warnings.warn(f"{label} = {value!r} is outside [0, 1] by more than {CLAMP_WARN}", RuntimeWarning, stacklevel=3)
    return min(1.0, max(0.0, value))


def _quad(quad: QuadratureSpec | None) -> QuadratureSpec:
    return quad if quad is not None else QuadratureSpec()


def _wrap(angles) -> list[float]:
    return [a % TWO_PI for a in angles]


# ---------------------------------------------------------------------------
# Metasurface event, formulation 1: 1 - Pr{object line crosses Tx-Rx segment}
# ---------------------------------------------------------------------------

def _approach1_integrands(cfg: NetworkConfig, line: SlopeLine):
    m, z, r = line.m, line.z, cfg.r_net
    xmin, xmax = sorted((cfg.tx.x, cfg.rx.x))
    ymin, ymax = sorted((cfg.tx.y, cfg.rx.y))
    h_m, hc_m = heaviside(m), heaviside_c(m)

    def f(a, xi):
        return ((m * np.sin(a) + np.cos(a)) * xi + z * np.sin(a)) / r

    def g(a, w):
        return ((m * np.sin(a) + np.cos(a)) * (w - z) / m + z * np.sin(a)) / r

    def theta1(a):
        return theta_kernel(f(a, xmax), g(a, ymax), f(a, xmin), g(a, ymin)) * h_m

    def theta2(a):
        return theta_kernel(f(a, xmax), g(a, ymin), f(a, xmin), g(a, ymax)) * hc_m

    def theta3(a):
        return theta_kernel(f(a, xmin), g(a, ymin), f(a, xmax), g(a, ymax)) * h_m

    def theta4(a):
        return theta_kernel(f(a, xmin), g(a, ymax), f(a, xmax), g(a, ymin)) * hc_m

    return theta1, theta2, theta3, theta4


def pr_event1_approach1(cfg: NetworkConfig, quad: QuadratureSpec | None = None) -> float:
    """Probability that Tx and Rx are on the same side of the object's line.

    Computed as one minus the probability that the object's infinite line
    meets the Tx-Rx segment, split by the signs of ``m sin(a) + cos(a)`` and
    of the Tx-Rx slope ``m``.  Degenerate slopes are handled by rotating the
    configuration first.
    """
    quad = _quad(quad)
    rc, _, line = usable_slope_frame(cfg)
    lim = IntegrationLimits.for_slope(line.m)
    q = quad.with_breakpoints(QUADRANTS + (lim.delta1, lim.delta2))
    theta1, theta2, theta3, theta4 = _approach1_integrands(rc, line)
    crossing = (
        integrate(theta1, 0.0, lim.delta1, q)
        + integrate(theta1, lim.delta2, TWO_PI, q)
        + integrate(theta2, 0.0, lim.delta1, q)
        + integrate(theta2, lim.delta2, TWO_PI, q)
        + integrate(theta3, lim.delta1, lim.delta2, q)
        + integrate(theta4, lim.delta1, lim.delta2, q)
    ) / TWO_PI
    return _clamp(1.0 - crossing, "pr_event1_approach1")


# ---------------------------------------------------------------------------
# Metasurface event, formulation 2: both above or both below the object line
# ---------------------------------------------------------------------------

def _projections(cfg: NetworkConfig):
    r = cfg.r_net

    def s_tx(a):
        return (cfg.tx.x * np.cos(a) + cfg.tx.y * np.sin(a)) / r

    def s_rx(a):
        return (cfg.rx.x * np.cos(a) + cfg.rx.y * np.sin(a)) / r

    return s_tx, s_rx


def _approach2_breakpoints(cfg: NetworkConfig) -> list[float]:
    # Kinks: each projection changes sign, and the two projections swap order.
    pts = []
    for vx, vy in ((cfg.tx.x, cfg.tx.y), (cfg.rx.x, cfg.rx.y), (cfg.tx.x - cfg.rx.x, cfg.tx.y - cfg.rx.y)):
        if vx or vy:
            phi = math.atan2(vy, vx)
            pts += [phi + HALF_PI, phi - HALF_PI]
    return _wrap(pts) + list(QUADRANTS)


def pr_event1_approach2(cfg: NetworkConfig, quad: QuadratureSpec | None = None) -> float:
    """Probability that Tx and Rx are on the same side of the object's line.

    Both terminals are "above" the line when ``v`` is below both projections
    ``(x cos a + y sin a) / r_net``, and "below" when ``v`` exceeds both.  Only
    the terminal coordinates enter, so no rotation is ever needed.
    """
    quad = _quad(quad)
    s_tx, s_rx = _projections(cfg)

    def rho1(a):
        lo = np.minimum(np.minimum(s_tx(a), s_rx(a)), 1.0)
        return lo * lo * heaviside(lo)

    def rho2(a):
        hi = np.maximum(np.maximum(s_tx(a), s_rx(a)), 0.0)
        return (1.0 - hi * hi) * heaviside(1.0 - hi)

    q = quad.with_breakpoints(_approach2_breakpoints(cfg))
    total = (integrate(rho1, 0.0, TWO_PI, q) + integrate(rho2, 0.0, TWO_PI, q)) / TWO_PI
    return _clamp(total, "pr_event1_approach2")


# ---------------------------------------------------------------------------
# Specular event: the Tx-Rx mid-perpendicular hits the object segment
# ---------------------------------------------------------------------------

# Arguments of the interval kernel for each quadrant and sub-case.  A tuple
# (f1, g1, f3, g3) of signs means
#   mu1 = F(a, f1*L/2*sin a), mu2 = G(a, g1*L/2*cos a),
#   mu3 = F(a, f3*L/2*sin a), mu4 = G(a, g3*L/2*cos a).
# Sub-cases a..d carry the gates H(A)H(B), H(A)Hc(B), Hc(A)H(B), Hc(A)Hc(B)
# with A = 1/D - cos a, B = m_p/D - sin a and D = m_p sin a + cos a.
_GAMMA_TABLE = {
    # quadrant index -> sub-cases a, b, c, d
    1: ((-1, +1, +1, -1), (-1, -1, +1, +1), (+1, +1, -1, -1), (+1, -1, -1, +1)),  # [3pi/2, 2pi]
    2: ((-1, -1, +1, +1), (-1, +1, +1, -1), (+1, -1, -1, +1), (+1, +1, -1, -1)),  # [pi, 3pi/2]
    3: ((+1, +1, -1, -1), (+1, -1, -1, +1), (-1, +1, +1, -1), (-1, -1, +1, +1)),  # [0, pi/2]
    4: ((+1, -1, -1, +1), (+1, +1, -1, -1), (-1, -1, +1, +1), (-1, +1, +1, -1)),  # [pi/2, pi]
}
_GAMMA_RANGE = {
    1: (1.5 * math.pi, TWO_PI),
    2: (math.pi, 1.5 * math.pi),
    3: (0.0, HALF_PI),
    4: (HALF_PI, math.pi),
}


class _SpecularModel:
    """Auxiliary functions of the specular-event integrand for one config."""

    def __init__(self, cfg: NetworkConfig, length: float, perp: SlopeLine):
        self.r = cfg.r_net
        self.half = 0.5 * length
        self.mp = perp.m
        self.zp = perp.z

    def denom(self, a):
        return self.mp * np.sin(a) + np.cos(a)

    def gate_x(self, a):
        return 1.0 / self.denom(a) - np.cos(a)

    def gate_y(self, a):
        return self.mp / self.denom(a) - np.sin(a)

    def F(self, a, t):
        s, d = np.sin(a), self.denom(a)
        return (t + self.zp * s / d) / (self.r * self.gate_x(a))

    def G(self, a, v):
        s, d = np.sin(a), self.denom(a)
        return (v + self.mp * self.zp * s / d - self.zp) / (self.r * self.gate_y(a))

    def gamma(self, quadrant: int):
        cases = _GAMMA_TABLE[quadrant]

        def fn(a):
            with np.errstate(divide="ignore", invalid="ignore"):
                ts = self.half * np.sin(a)
                vs = self.half * np.cos(a)
                hx, hy = heaviside(self.gate_x(a)), heaviside(self.gate_y(a))
                gates = (hx * hy, hx * (1 - hy), (1 - hx) * hy, (1 - hx) * (1 - hy))
                total = np.zeros_like(a, dtype=float)
                for (f1, g1, f3, g3), gate in zip(cases, gates):
                    k = theta_kernel(self.F(a, f1 * ts), self.G(a, g1 * vs),
                                     self.F(a, f3 * ts), self.G(a, g3 * vs))
                    total += np.where(gate > 0.0, k, 0.0)
            # 0/0 only occurs exactly on a gate switch point (measure zero).
            return np.nan_to_num(total, nan=0.0)

        return fn

    def breakpoints(self) -> list[float]:
        r = math.sqrt(1.0 + self.mp * self.mp)
        pts = [2.0 * math.atan(self.mp + r), TWO_PI + 2.0 * math.atan(self.mp - r)]
        grid = np.linspace(0.0, TWO_PI, GATE_SCAN_POINTS + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            for gate in (self.gate_x, self.gate_y):
                pts += _sign_changes(gate, grid)
        return pts + list(QUADRANTS)


def _sign_changes(fn, grid, iters: int = 60) -> list[float]:
    vals = np.sign(fn(grid))
    out = []
    for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        lo, hi = grid[i], grid[i + 1]
        slo = vals[i]
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            sm = np.sign(fn(mid))
            if sm == slo:
                lo = mid
            else:
                hi = mid
        out.append(0.5 * (lo + hi))
    # Exact zeros on the grid itself are switch points as well.
    out += [float(grid[i]) for i in np.nonzero(vals == 0)[0]]
    return out


def pr_event2(cfg: NetworkConfig, length: float, quad: QuadratureSpec | None = None) -> float:
    """Probability that the Tx-Rx mid-perpendicular intersects the object segment."""
    if not length > 0.0:
        raise InvalidParameter(f"length must be positive, got {length}")
    quad = _quad(quad)
    rc, _, _ = usable_slope_frame(cfg)
    model = _SpecularModel(rc, length, mid_perpendicular(rc.tx, rc.rx))
    q = quad.with_breakpoints(model.breakpoints())
    total = sum(integrate(model.gamma(k), *_GAMMA_RANGE[k], q) for k in (1, 2, 3, 4))
    return _clamp(total / TWO_PI, "pr_event2")


def pr_event3_upper(cfg: NetworkConfig, length: float, quad: QuadratureSpec | None = None) -> float:
    """Frechet upper bound ``min(Pr{same side}, Pr{specular hit})``."""
    return min(pr_event1_approach2(cfg, quad), pr_event2(cfg, length, quad))


def reflection_report(cfg: NetworkConfig, length: float, quad: QuadratureSpec | None = None) -> ReflectionReport:
    a1 = pr_event1_approach1(cfg, quad)
    a2 = pr_event1_approach2(cfg, quad)
    e2 = pr_event2(cfg, length, quad)
    return ReflectionReport(a1, a2, e2, min(a2, e2))
