"""Voltage sweeps, dynamics runs and their CSV/manifest output."""

import csv
import dataclasses
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig
from .liouvillian import build_generator, default_time_grid, evolve, steady_state
from .observables import concurrence, current, populations
from .system import initial_state

__all__ = [
    "SWEEP_COLUMNS",
    "DYNAMICS_COLUMNS",
    "SweepRow",
    "DynamicsRow",
    "RunResult",
    "resonances",
    "refine_grid",
    "voltage_grid",
    "generator_at",
    "sweep",
    "dynamics",
    "resonance_biases",
    "run",
]

log = logging.getLogger(__name__)

SWEEP_COLUMNS = ("v", "current", "concurrence", "p_gg", "p_ge", "p_eg", "p_ee", "status")
DYNAMICS_COLUMNS = ("t", "concurrence", "p_gg", "p_ge", "p_eg", "p_ee", "trace_err", "min_eig")

REFINE_HALF_WIDTH = 0.2
REFINE_POINTS = 41
RESONANCE_OFFSET = 0.01
DEDUP_TOL = 1e-12
CONSERVATION_TOL = 1e-9


@dataclass
class SweepRow:
    v: float
    current: float = math.nan
    concurrence: float = math.nan
    populations: tuple = (math.nan,) * 4
    status: str = "ok"

    @property
    def ok(self):
        return self.status == "ok"

    def as_record(self):
        return [self.v, self.current, self.concurrence, *self.populations, self.status]


@dataclass
class DynamicsRow:
    t: float
    concurrence: float
    populations: tuple
    trace_err: float
    min_eig: float

    def as_record(self):
        return [self.t, self.concurrence, *self.populations, self.trace_err, self.min_eig]


@dataclass
class RunResult:
    files: list = field(default_factory=list)
    n_failed: int = 0


def resonances(cfg: RunConfig, delta_l=None, delta_r=None):
    """Bias values where a dot level meets a gap edge or a Fermi level."""
    dl = cfg.lead_left.delta if delta_l is None else delta_l
    dr = cfg.lead_right.delta if delta_r is None else delta_r
    ea, eb = cfg.eps_a, cfg.eps_b
    cands = {ea + dl, eb + dr, ea + dr, eb + dl, ea, eb}
    return sorted(r for r in cands if cfg.v_min <= r <= cfg.v_max)


def refine_grid(base, resonance_list, half_width=REFINE_HALF_WIDTH, n_extra=REFINE_POINTS):
    """Base grid plus ``n_extra`` points clustered geometrically around each
    resonance, sorted and de-duplicated.

    The cluster is the resonance itself and ``(n_extra - 1) / 2`` points on
    each side at offsets ``half_width * geomspace(1e-3, 1)``.
    """
    base = np.asarray(base, dtype=float)
    lo, hi = base.min(), base.max()
    n_side = (n_extra - 1) // 2
    offsets = half_width * np.geomspace(1e-3, 1.0, n_side)
    extra = []
    for r in resonance_list:
        pts = np.concatenate([r - offsets[::-1], [r], r + offsets])
        extra.append(pts[(pts >= lo) & (pts <= hi)])
    if not extra:
        return base
    extra = np.unique(np.concatenate(extra))
    # drop cluster points that only differ by round-off from a base point or
    # from each other, so base values always survive unchanged
    ref = np.sort(base)
    pos = np.clip(np.searchsorted(ref, extra), 1, ref.size - 1)
    gap = np.minimum(np.abs(extra - ref[pos - 1]), np.abs(extra - ref[pos]))
    extra = extra[gap > DEDUP_TOL]
    if extra.size:
        extra = extra[np.concatenate([[True], np.diff(extra) > DEDUP_TOL])]
    return np.sort(np.concatenate([base, extra]))


def voltage_grid(cfg: RunConfig, delta_l=None, delta_r=None):
    base = np.linspace(cfg.v_min, cfg.v_max, cfg.n_points)
    if not cfg.refine_near_resonances:
        return base
    return refine_grid(base, resonances(cfg, delta_l, delta_r))


def generator_at(cfg: RunConfig, v):
    return build_generator(cfg.system, cfg.leads(v), cfg.couplings,
                           include_coherent=cfg.include_coherent,
                           cross_terms=cfg.cross_terms)


def _sweep_point(cfg, v):
    try:
        g = generator_at(cfg, v)
        rho = steady_state(g)
        i_left = current(g, "left", rho)
        i_right = current(g, "right", rho)
        c = concurrence(rho)
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        log.warning("sweep point V=%g failed: %s", v, exc)
        return SweepRow(float(v), status=f"failed:{type(exc).__name__}")
    if abs(i_left - i_right) > CONSERVATION_TOL * cfg.gamma0:
        return SweepRow(float(v), status="failed:CurrentImbalance")
    return SweepRow(float(v), i_left, c, tuple(populations(rho)))


def sweep(cfg: RunConfig):
    """Steady-state rows over the (refined) voltage grid of a single-series config."""
    return [_sweep_point(cfg, v) for v in voltage_grid(cfg)]


def dynamics(cfg: RunConfig, v=None, initial=None):
    """Time trace of the state at fixed bias ``v`` (default ``cfg.bias``)."""
    v = cfg.bias if v is None else v
    rho0 = initial_state(initial or cfg.resolved_initial())
    traj = evolve(generator_at(cfg, v), rho0, default_time_grid(cfg.t_max, cfg.t_points))
    rows = []
    for t, rho in zip(traj.times, traj.states):
        rows.append(DynamicsRow(
            float(t), concurrence(rho), tuple(populations(rho)),
            float(abs(np.trace(rho) - 1.0)), float(np.linalg.eigvalsh(rho)[0]),
        ))
    return rows


def resonance_biases(cfg: RunConfig):
    """Named bias values probed around the two gap-shifted resonances.

    The first resonance pairs dot A with the left gap, the second dot B with
    the right gap.  ``res1_minus_gap`` is the voltage ``eps_A - delta_L - 0.01``
    kept alongside ``res1_left`` because both readings of the left side of
    the first resonance are in use.
    """
    d = RESONANCE_OFFSET
    r1 = cfg.eps_a + cfg.lead_left.delta
    r2 = cfg.eps_b + cfg.lead_right.delta
    high = cfg.high_bias if cfg.high_bias is not None else cfg.v_max
    return {
        "res1_left": r1 - d,
        "res1_right": r1 + d,
        "res2_left": r2 - d,
        "res2_right": r2 + d,
        "high_bias": high,
        "res1_minus_gap": cfg.eps_a - cfg.lead_left.delta - d,
    }


def _fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def write_csv(path, columns, records):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_fmt(x) for x in rec])


def write_manifest(path, items):
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in items:
            fh.write(f"{key} = {_fmt(value) if value is not None else 'none'}\n")


def _output_base(cfg: RunConfig, out):
    if out is not None:
        return Path(out)
    if cfg.output:
        return Path(cfg.output)
    return Path(f"{cfg.name}.csv")


def _suffixed(base: Path, *tags):
    tags = [t for t in tags if t]
    if not tags:
        return base
    suffix = base.suffix or ".csv"
    return base.with_name(base.stem + "_" + "_".join(tags) + suffix)


def _gap_tag(dl, dr):
    return f"dl{_fmt(dl)}_dr{_fmt(dr)}"


def run(cfg: RunConfig, out=None) -> RunResult:
    """Execute ``cfg`` and write CSV files plus a manifest next to each.

    A config with several gap pairs in ``series`` writes one file per pair,
    tagged with the gaps; resonance dynamics writes one file per probed bias.
    """
    cfg.validate()
    base = _output_base(cfg, out)
    pairs = cfg.gap_pairs()
    result = RunResult()
    for dl, dr in pairs:
        sub = cfg.for_gaps(dl, dr)
        gap_tag = _gap_tag(dl, dr) if len(pairs) > 1 else ""
        if cfg.mode in ("iv_sweep", "cv_sweep"):
            rows = sweep(sub)
            failed = sum(not r.ok for r in rows)
            path = _suffixed(base, gap_tag)
            write_csv(path, SWEEP_COLUMNS, (r.as_record() for r in rows))
            extra = [("rows", len(rows)), ("failed_points", failed),
                     ("resonances", " ".join(_fmt(r) for r in resonances(sub)))]
            result.n_failed += failed
            outputs = [(path, extra, sub)]
        elif cfg.mode == "dynamics":
            rows = dynamics(sub)
            path = _suffixed(base, gap_tag)
            write_csv(path, DYNAMICS_COLUMNS, (r.as_record() for r in rows))
            outputs = [(path, [("rows", len(rows))], sub)]
        else:
            outputs = []
            for label, v in resonance_biases(sub).items():
                at_v = dataclasses.replace(sub, bias=v)
                rows = dynamics(at_v)
                path = _suffixed(base, gap_tag, label)
                write_csv(path, DYNAMICS_COLUMNS, (r.as_record() for r in rows))
                outputs.append((path, [("trace", label), ("rows", len(rows))], at_v))
        for path, extra, used in outputs:
            manifest = path.with_suffix(".manifest.txt")
            items = [("package_version", __version__)] + used.manifest_items() + extra
            write_manifest(manifest, items)
            result.files += [path, manifest]
            log.info("wrote %s", path)
    return result
