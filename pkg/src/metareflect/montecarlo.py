"""Monte Carlo reference estimates of the three reflection events.

Samples are indexed; sample ``i`` of seed ``s`` always consumes the doubles
``2i`` and ``2i + 1`` of the Philox stream keyed by ``s``.  Work is cut into
fixed-size chunks, so the result does not depend on how chunks are spread over
worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import NetworkConfig, usable_slope_frame
from .errors import InvalidParameter, ParallelLines
from .geometry import (
    PARALLEL_EPS,
    TWO_PI,
    SegmentObject,
    intersect_slope_polar,
    mid_perpendicular,
    object_from_params,
    same_side,
    within_bbox,
)

CHUNK = 1 << 16  # must stay even: two doubles per sample, four per Philox block
DEFAULT_SAMPLES = 10**6


@dataclass(frozen=True)
class SampleSpec:
    n_samples: int = DEFAULT_SAMPLES
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.n_samples < 1:
            raise InvalidParameter("n_samples must be at least 1")
        if self.workers < 1:
            raise InvalidParameter("workers must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidParameter("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class EventTriple:
    event1: bool
    event2: bool
    event3: bool | None = None

    def __post_init__(self):
        both = bool(self.event1 and self.event2)
        if self.event3 is None:
            object.__setattr__(self, "event3", both)
        elif bool(self.event3) != both:
            raise InvalidParameter("event3 must equal event1 and event2")


@dataclass(frozen=True)
class ProbabilityEstimate:
    value: float
    std_err: float
    n: int

    @classmethod
    def from_count(cls, count: int, n: int) -> ProbabilityEstimate:
        v = count / n
        return cls(v, math.sqrt(v * (1.0 - v) / n), n)

    def interval(self, z: float = 1.96) -> tuple[float, float]:
        return self.value - z * self.std_err, self.value + z * self.std_err


@dataclass(frozen=True)
class McReport:
    e1: ProbabilityEstimate
    e2: ProbabilityEstimate
    e3: ProbabilityEstimate
    counts: tuple[int, int, int]
    seed: int


def sample_object(draw: tuple[float, float], length: float, r_net: float) -> SegmentObject:
    u, alpha = draw
    return object_from_params(u, alpha, length, r_net)


def check_event1(cfg: NetworkConfig, obj: SegmentObject) -> bool:
    """Tx and Rx strictly on the same side of the object's infinite line."""
    return same_side(cfg.tx, cfg.rx, obj.line)


def check_event2(cfg: NetworkConfig, obj: SegmentObject) -> bool:
    """The Tx-Rx mid-perpendicular crosses the object segment (closed ends)."""
    rc, angle, _ = usable_slope_frame(cfg)
    if angle:
        obj = obj.rotated(angle)
    perp = mid_perpendicular(rc.tx, rc.rx)
    try:
        hit = intersect_slope_polar(perp, obj.line)
    except ParallelLines:
        return False
    return within_bbox(hit, obj.end1, obj.end2)


def check_events(cfg: NetworkConfig, obj: SegmentObject) -> EventTriple:
    return EventTriple(check_event1(cfg, obj), check_event2(cfg, obj))


def draws(seed: int, start: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """``(u, alpha)`` for samples ``start .. start + count - 1`` of ``seed``."""
    if start % 2:
        raise InvalidParameter("start index must be even")
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(start // 2)
    raw = np.random.Generator(bitgen).random(2 * count)
    return raw[0::2], raw[1::2] * TWO_PI


def _indicators(frame: NetworkConfig, angle: float, length: float, u, alpha):
    r = frame.r_net
    p = r * np.sqrt(u)
    a = alpha + angle
    c, s = np.cos(a), np.sin(a)

    off_tx = frame.tx.x * c + frame.tx.y * s - p
    off_rx = frame.rx.x * c + frame.rx.y * s - p
    e1 = off_tx * off_rx > 0.0

    perp = mid_perpendicular(frame.tx, frame.rx)
    denom = perp.m * s + c
    ok = np.abs(denom) > PARALLEL_EPS
    with np.errstate(divide="ignore", invalid="ignore"):
        xs = (p - perp.z * s) / denom
    ys = perp.m * xs + perp.z
    h = 0.5 * length
    xo, yo = p * c, p * s
    x1, x2 = xo - h * s, xo + h * s
    y1, y2 = yo + h * c, yo - h * c
    e2 = (ok
          & (np.minimum(x1, x2) <= xs) & (xs <= np.maximum(x1, x2))
          & (np.minimum(y1, y2) <= ys) & (ys <= np.maximum(y1, y2)))
    return e1, e2


def event_indicators(cfg: NetworkConfig, length: float, u, alpha):
    """Vectorised per-sample ``(event1, event2)`` indicators for given draws."""
    frame, angle, _ = usable_slope_frame(cfg)
    return _indicators(frame, angle, length, np.asarray(u, float), np.asarray(alpha, float))


def estimate(cfg: NetworkConfig, length: float, spec: SampleSpec | None = None) -> McReport:
    """Frequency estimates of the three events with binomial standard errors."""
    if not length > 0.0:
        raise InvalidParameter(f"length must be positive, got {length}")
    spec = spec or SampleSpec()
    frame, angle, _ = usable_slope_frame(cfg)
    starts = range(0, spec.n_samples, CHUNK)

    def work(start):
        u, alpha = draws(spec.seed, start, min(CHUNK, spec.n_samples - start))
        e1, e2 = _indicators(frame, angle, length, u, alpha)
        return np.array([e1.sum(), e2.sum(), (e1 & e2).sum()], dtype=np.int64)

    if spec.workers == 1:
        parts = [work(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            parts = list(pool.map(work, starts))
    k1, k2, k3 = (int(v) for v in np.sum(parts, axis=0))
    n = spec.n_samples
    return McReport(
        ProbabilityEstimate.from_count(k1, n),
        ProbabilityEstimate.from_count(k2, n),
        ProbabilityEstimate.from_count(k3, n),
        (k1, k2, k3),
        spec.seed,
    )

