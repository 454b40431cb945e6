"""Sweeps over object length and transmitter position, and a self-check run.

Each row pairs the analytic probabilities with Monte Carlo frequencies.  Row
``i`` uses seed ``seed + i`` so rows are independent yet reproducible.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import analytic, montecarlo
from .analytic import NetworkConfig
from .errors import InvalidParameter, MetareflectError
from .geometry import Point2
from .montecarlo import SampleSpec
from .quadrature import QuadratureSpec

FIELDS = (
    "sweep_value", "pr_e1_a1", "pr_e1_a2", "pr_e2", "pr_e3_upper",
    "mc_e1", "mc_e1_se", "mc_e2", "mc_e2_se", "mc_e3", "mc_e3_se", "n", "seed",
)

REFERENCE_CONFIG = NetworkConfig(30.0, Point2(0.0, 3.0), Point2(20.0, 20.0))
DEFAULT_LENGTHS = (1.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)
DEFAULT_TX_X = tuple(float(x) for x in range(2, 21, 2))
SWEEP_TX_Y = 3.0
SWEEP_TX_RX = Point2(0.0, 0.0)

# Thresholds used by the validate run.
FORMULATION_TOL = 1e-6
N_SIGMA = 4.0


class Mode(enum.Enum):
    SWEEP_LENGTH = "sweep-length"
    SWEEP_TX = "sweep-tx"
    POINT = "point"
    VALIDATE = "validate"


class RowError(MetareflectError):
    """A row failed to compute; the message names the row."""


@dataclass(frozen=True)
class ExperimentSpec:
    mode: Mode
    cfg: NetworkConfig = REFERENCE_CONFIG
    lengths: tuple[float, ...] = DEFAULT_LENGTHS
    tx_x_values: tuple[float, ...] = DEFAULT_TX_X
    sample_spec: SampleSpec = field(default_factory=SampleSpec)
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    output_path: str | None = None
    length: float = 5.0
    tx_y: float = SWEEP_TX_Y
    n_configs: int = 100

    def __post_init__(self):
        if self.mode is Mode.SWEEP_LENGTH and not self.lengths:
            raise InvalidParameter("sweep-length needs at least one length")
        if self.mode is Mode.SWEEP_TX and not self.tx_x_values:
            raise InvalidParameter("sweep-tx needs at least one x_Tx value")
        if self.mode is Mode.VALIDATE and self.n_configs < 1:
            raise InvalidParameter("validate needs at least one configuration")
        if any(not v > 0 for v in self.lengths) or not self.length > 0:
            raise InvalidParameter("object lengths must be positive")


@dataclass(frozen=True)
class ResultRow:
    sweep_value: float
    pr_e1_a1: float
    pr_e1_a2: float
    pr_e2: float
    pr_e3_upper: float
    mc_e1: float
    mc_e1_se: float
    mc_e2: float
    mc_e2_se: float
    mc_e3: float
    mc_e3_se: float
    n: int
    seed: int


def compute_row(cfg: NetworkConfig, length: float, sweep_value: float,
                quad: QuadratureSpec, samples: SampleSpec) -> ResultRow:
    rep = analytic.reflection_report(cfg, length, quad)
    mc = montecarlo.estimate(cfg, length, samples)
    return ResultRow(
        sweep_value,
        rep.pr_event1_a1, rep.pr_event1_a2, rep.pr_event2, rep.pr_event3_upper,
        mc.e1.value, mc.e1.std_err, mc.e2.value, mc.e2.std_err, mc.e3.value, mc.e3.std_err,
        samples.n_samples, samples.seed,
    )


def _row_spec(spec: ExperimentSpec, i: int) -> SampleSpec:
    return replace(spec.sample_spec, seed=spec.sample_spec.seed + i)


def _guarded(label, fn, *args):
    try:
        return fn(*args)
    except MetareflectError as exc:
        raise RowError(f"{label}: {exc}") from exc


def run_sweep_length(spec: ExperimentSpec) -> list[ResultRow]:
    return [
        _guarded(f"row {i} (L={L:g})", compute_row, spec.cfg, L, L, spec.quad, _row_spec(spec, i))
        for i, L in enumerate(spec.lengths)
    ]


def sweep_tx_configs(spec: ExperimentSpec) -> list[NetworkConfig]:
    """Configurations with Tx at ``(x, tx_y)`` and Rx fixed, one per x value."""
    r = spec.cfg.r_net
    out = []
    for x in spec.tx_x_values:
        if math.hypot(x, spec.tx_y) > r:
            raise InvalidParameter(f"x_Tx={x:g} puts the transmitter outside the disk of radius {r:g}")
        out.append(NetworkConfig(r, Point2(x, spec.tx_y), spec.cfg.rx))
    return out


def run_sweep_tx(spec: ExperimentSpec) -> list[ResultRow]:
    cfgs = sweep_tx_configs(spec)
    return [
        _guarded(f"row {i} (x_Tx={x:g})", compute_row, cfg, spec.length, x, spec.quad, _row_spec(spec, i))
        for i, (x, cfg) in enumerate(zip(spec.tx_x_values, cfgs))
    ]


def run_point(spec: ExperimentSpec) -> list[ResultRow]:
    return [_guarded("point", compute_row, spec.cfg, spec.length, spec.length, spec.quad, _row_spec(spec, 0))]


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConfigCheck:
    index: int
    cfg: NetworkConfig
    row: ResultRow
    formulation_gap: float
    e1_sigmas: float
    e2_sigmas: float
    e3_excess: float
    passed: bool

    def describe(self) -> str:
        tx, rx = self.cfg.tx, self.cfg.rx
        status = "PASS" if self.passed else "FAIL"
        return (f"config {self.index:3d} {status} tx=({tx.x:.4f},{tx.y:.4f}) rx=({rx.x:.4f},{rx.y:.4f}) "
                f"|a1-a2|={self.formulation_gap:.2e} e1_dev={self.e1_sigmas:.2f}se "
                f"e2_dev={self.e2_sigmas:.2f}se e3_excess={self.e3_excess:+.2e}")


@dataclass(frozen=True)
class ValidationSummary:
    checks: list[ConfigCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def rows(self) -> list[ResultRow]:
        return [c.row for c in self.checks]

    def lines(self) -> list[str]:
        n_fail = sum(not c.passed for c in self.checks)
        return [c.describe() for c in self.checks] + [
            f"summary: {len(self.checks) - n_fail}/{len(self.checks)} configurations passed"
        ]


def random_configs(r_net: float, count: int, seed: int) -> list[NetworkConfig]:
    """Uniform Tx/Rx pairs in the disk, skipping near-horizontal or near-vertical pairs."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        rad = r_net * np.sqrt(rng.random(2))
        ang = rng.random(2) * 2.0 * math.pi
        tx = Point2(float(rad[0] * math.cos(ang[0])), float(rad[0] * math.sin(ang[0])))
        rx = Point2(float(rad[1] * math.cos(ang[1])), float(rad[1] * math.sin(ang[1])))
        dx = tx.x - rx.x
        if dx == 0.0:
            continue
        m = abs((tx.y - rx.y) / dx)
        if analytic.SLOPE_MIN <= m <= analytic.SLOPE_MAX:
            out.append(NetworkConfig(r_net, tx, rx))
    return out


def check_row(index: int, cfg: NetworkConfig, row: ResultRow) -> ConfigCheck:
    def sigmas(diff, se):
        if se > 0:
            return abs(diff) / se
        return 0.0 if diff == 0 else math.inf

    gap = abs(row.pr_e1_a1 - row.pr_e1_a2)
    s1 = sigmas(row.pr_e1_a2 - row.mc_e1, row.mc_e1_se)
    s2 = sigmas(row.pr_e2 - row.mc_e2, row.mc_e2_se)
    excess = row.mc_e3 - (row.pr_e3_upper + N_SIGMA * max(row.mc_e1_se, row.mc_e2_se))
    ok = gap < FORMULATION_TOL and s1 < N_SIGMA and s2 < N_SIGMA and excess <= 0.0
    return ConfigCheck(index, cfg, row, gap, s1, s2, excess, ok)


def run_validate(spec: ExperimentSpec) -> ValidationSummary:
    cfgs = random_configs(spec.cfg.r_net, spec.n_configs, spec.sample_spec.seed)
    checks = []
    for i, cfg in enumerate(cfgs):
        row = _guarded(f"config {i}", compute_row, cfg, spec.length, float(i), spec.quad, _row_spec(spec, i))
        checks.append(check_row(i, cfg, row))
    return ValidationSummary(checks)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return f"{float(v):.12g}"


def rows_to_csv(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for row in rows:
        d = asdict(row)
        w.writerow([_fmt(d[k]) for k in FIELDS])
    return buf.getvalue()


def rows_to_json(rows: list[ResultRow]) -> str:
    records = [{k: json.loads(_fmt(v)) for k, v in asdict(row).items()} for row in rows]
    return json.dumps(records, indent=2) + "\n"


def read_csv(text: str) -> list[ResultRow]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != FIELDS:
        raise InvalidParameter(f"unexpected header {reader.fieldnames}")
    out = []
    for rec in reader:
        vals = {k: float(v) for k, v in rec.items()}
        vals["n"], vals["seed"] = int(rec["n"]), int(rec["seed"])
        out.append(ResultRow(**vals))
    return out
