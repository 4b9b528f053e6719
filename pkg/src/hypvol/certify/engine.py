"""Deterministic evaluation of campaigns.

Each block is cut into fixed partitions of consecutive cells whose
boundaries do not depend on the worker count. Workers reduce a partition
to its minimum and failing cells; one reducer then merges the partitions
of each block in order. Minima, argmins (first occurrence in row-major
order, i.e. the lexicographically smallest index tuple) and failure lists
are therefore identical for any number of workers.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from multiprocessing import get_all_start_methods, get_context

import numpy as np

from ..capvol import kappa
from ..errors import ConfigError, EvaluationError
from ..packing import density
from ..scalarfun import LOG8, ball_volume, f_n, g_k
from ..volbounds import drill_bound, tail_large_d, w_dr, w_vsg
from . import kernels
from .report import CampaignReport, CheckRecord, ConditionResult
from .schedule import validate_schedule

#: Cells per partition. Fixed so results never depend on the worker count.
PARTITION_SIZE = 16384

#: Failing records kept per block (in index order) when continuing past failures.
MAX_FAILURES_KEPT = 100

_GRID_KINDS = {
    "C2_wdr": kernels.WDR_ROW,
    "MONSTER_C2": kernels.WDR_ROW,
    "C3a_chi_grid": kernels.CHI_GRID,
    "MONSTER_C3_grid": kernels.CHI_GRID,
    "C4a_psi_grid": kernels.PSI_GRID,
    "C4b_wsg_tail": kernels.WSG_ROW,
}


@dataclass
class BlockPlan:
    condition_id: str
    kind: str
    threshold: float
    # Gridded blocks: kernel code, first row/column index, shape, and the arrays
    # handed to the kernel. Scalar blocks: ``scalar`` holds the value thunk.
    code: int = -1
    row_lo: int = 1
    col_lo: int = 1
    nrows: int = 1
    ncols: int = 1
    two_d: bool = False
    arrays: tuple = ()
    scalar: object = None

    @property
    def size(self):
        return self.nrows * self.ncols

    def indices(self, flat):
        a = self.row_lo + flat // self.ncols
        if not self.two_d:
            return (int(a),)
        return (int(a), int(self.col_lo + flat % self.ncols))


def _require(cond, message):
    if not cond:
        raise ConfigError(message)


def _axis_ranges(spec, default):
    """Apply a block's index_ranges to the default inclusive (lo, hi) axes."""
    if spec.index_ranges is None:
        return default
    _require(len(spec.index_ranges) == len(default),
             f"{spec.condition_id}: expected {len(default)} index ranges")
    out = []
    for (lo, hi), (dlo, dhi) in zip(spec.index_ranges, default):
        _require(dlo <= lo <= hi <= dhi,
                 f"{spec.condition_id}: index range [{lo}, {hi}] outside [{dlo}, {dhi}]")
        out.append((lo, hi))
    return tuple(out)


def _cell_mu(spec, sched):
    if spec.mu is not None:
        return np.full(sched.m + 1, spec.mu)
    if spec.kind.startswith("MONSTER"):
        _require(sched.mu_table is not None, f"{spec.condition_id}: needs schedule.mu_table")
    else:
        _require(sched.script_h is not None, f"{spec.condition_id}: needs schedule.script_h")
    return sched.cell_mu()


def _scalar_thunk(spec, campaign):
    sched = campaign.schedule
    k = campaign.k
    lam0 = float(sched.lam[0])
    delta_m = float(sched.delta[-1])
    x = spec.extra
    if spec.kind == "C1_density":
        r = 0.5 * f_n(3, lam0)
        return lambda: ball_volume(r) / density(r)
    if spec.kind == "C3b_tail":
        half = 0.5 * LOG8
        return lambda: (ball_volume(0.5 * lam0) - 2.0 * kappa(half, delta_m)
                        - 2.0 * kappa(half, 1.5 * delta_m))
    if spec.kind == "C5_vsg":
        _require(sched.delta_hat is not None, f"{spec.condition_id}: needs schedule.delta_hat")
        if spec.mu is not None:
            mu = spec.mu
        else:
            _require(sched.script_h is not None, f"{spec.condition_id}: needs schedule.script_h")
            mu = sched.script_h(delta_m)
        return lambda: w_vsg(k, sched.delta_hat[0], mu)
    if spec.kind == "MONSTER_TAIL":
        return lambda: tail_large_d(lam0, LOG8, delta_m)
    if spec.kind == "DRILL_VAD":
        return lambda: drill_bound(x["delta"], x["eta"], x["v_cusped"])
    if spec.kind == "DRILL_WDR_POINT":
        mu0 = x["mu0"]
        return lambda: w_dr(x["radius"], g_k(k, mu0), f_n(1, mu0))
    raise ConfigError(f"unhandled kind {spec.kind}")


def plan_block(spec, campaign):
    """Resolve a ConditionSpec against its campaign into an evaluable plan."""
    sched = campaign.schedule
    threshold = campaign.v0 if spec.threshold is None else spec.threshold
    plan = BlockPlan(spec.condition_id, spec.kind, threshold)
    if spec.kind not in _GRID_KINDS:
        _require(spec.index_ranges is None, f"{spec.condition_id}: scalar block takes no index_ranges")
        plan.scalar = _scalar_thunk(spec, campaign)
        plan.row_lo = 0
        return plan

    code = _GRID_KINDS[spec.kind]
    empty = kernels.empty_grid()
    lam, delta, e_grid = sched.lam, sched.delta, sched.e_grid
    mu_cell = mu_zeta = h_grid = zeta = empty
    if code in (kernels.WDR_ROW, kernels.CHI_GRID):
        mu_cell = _cell_mu(spec, sched)
        axes = [(1, sched.m)] + ([(1, sched.n)] if code == kernels.CHI_GRID else [])
    else:
        _require(sched.zeta is not None and sched.h_grid is not None,
                 f"{spec.condition_id}: needs schedule.zeta and schedule.h_grid")
        h_grid, zeta = sched.h_grid, sched.zeta
        axes = [(1, sched.q)] + ([(1, sched.p)] if code == kernels.PSI_GRID else [])
        if code == kernels.PSI_GRID:
            if spec.mu is not None:
                mu_zeta = np.full(sched.q + 1, spec.mu)
            else:
                _require(sched.script_h is not None,
                         f"{spec.condition_id}: needs schedule.script_h or a block mu")
                # Row s uses H(zeta_{s-1}); entry 0 is never read.
                mu_zeta = np.array([sched.script_h(zeta[max(s - 1, 0)])
                                    for s in range(sched.q + 1)])
    axes = _axis_ranges(spec, tuple(axes))
    plan.code = code
    plan.two_d = len(axes) == 2
    plan.row_lo, plan.nrows = axes[0][0], axes[0][1] - axes[0][0] + 1
    if plan.two_d:
        plan.col_lo, plan.ncols = axes[1][0], axes[1][1] - axes[1][0] + 1
    plan.arrays = tuple(np.ascontiguousarray(a, dtype=np.float64)
                        for a in (lam, delta, mu_cell, e_grid, h_grid, zeta, mu_zeta))
    return plan


# ------------------------------------------------------------------- workers


@dataclass
class _Partial:
    evaluated: int
    min_value: float
    min_flat: int
    fail_flats: list
    fail_values: list
    fail_count: int
    stopped: bool


def _sweep(plan, k, start, stop, abort, out):
    return kernels.sweep(plan.code, start, stop, plan.row_lo, plan.col_lo, plan.ncols,
                         k, *plan.arrays, plan.threshold, abort, out)


def _locate_error(plan, k, start, stop):
    """Re-run cells one at a time to find the first one that raises."""
    one = np.empty(1)
    for flat in range(start, stop):
        try:
            _sweep(plan, k, flat, flat + 1, False, one)
        except Exception as exc:  # noqa: BLE001 - reported with its index
            return flat, exc
    return start, None


def _evaluate_partition(job):
    plan, k, start, stop, abort = job
    if plan.scalar is not None:
        try:
            values = np.array([float(plan.scalar())])
        except Exception as exc:  # noqa: BLE001
            raise EvaluationError(plan.condition_id, (), repr(exc)) from None
    else:
        out = np.empty(stop - start)
        try:
            written = _sweep(plan, k, start, stop, abort, out)
        except Exception as exc:  # noqa: BLE001
            flat, cause = _locate_error(plan, k, start, stop)
            raise EvaluationError(plan.condition_id, plan.indices(flat),
                                  repr(cause if cause is not None else exc)) from None
        values = out[:written]

    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        flat = start + int(bad[0])
        idx = plan.indices(flat) if plan.scalar is None else ()
        raise EvaluationError(plan.condition_id, idx, f"non-finite value {values[bad[0]]!r}")
    failing = np.flatnonzero(~(values > plan.threshold))
    pos = int(np.argmin(values))
    return _Partial(
        evaluated=int(values.size),
        min_value=float(values[pos]),
        min_flat=start + pos,
        fail_flats=[start + int(i) for i in failing[:MAX_FAILURES_KEPT]],
        fail_values=[float(values[i]) for i in failing[:MAX_FAILURES_KEPT]],
        fail_count=int(failing.size),
        stopped=bool(abort and failing.size),
    )


def _jobs(plan, k, abort):
    if plan.scalar is not None:
        return [(plan, k, 0, 1, abort)]
    return [(plan, k, s, min(s + PARTITION_SIZE, plan.size), abort)
            for s in range(0, plan.size, PARTITION_SIZE)]


def _record(plan, flat, value):
    idx = () if plan.scalar is not None else plan.indices(flat)
    return CheckRecord(plan.condition_id, idx, value, value - plan.threshold)


def _reduce(plan, partials):
    """Merge a block's partition results in partition order."""
    count = 0
    best = None
    failures = []
    fail_count = 0
    aborted = False
    for part in partials:
        count += part.evaluated
        # Strict comparison keeps the earliest partition on ties.
        if best is None or part.min_value < best[1]:
            best = (part.min_flat, part.min_value)
        fail_count += part.fail_count
        room = MAX_FAILURES_KEPT - len(failures)
        failures.extend(_record(plan, f, v)
                        for f, v in zip(part.fail_flats[:room], part.fail_values[:room]))
        if part.stopped:
            aborted = count < plan.size
            break
    return ConditionResult(
        condition_id=plan.condition_id,
        kind=plan.kind,
        threshold=plan.threshold,
        count=count,
        min_record=_record(plan, *best),
        passed=fail_count == 0,
        aborted=aborted,
        failure_count=fail_count,
        failures=failures,
    )


def _pool_context():
    # fork avoids re-importing the caller's main module in every worker; the
    # compiled kernels hold no threads, so forking after they load is safe.
    method = "fork" if "fork" in get_all_start_methods() else "spawn"
    return get_context(method)


def default_workers():
    """Worker count from CERTIFY_WORKERS, else 1."""
    raw = os.environ.get("CERTIFY_WORKERS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"CERTIFY_WORKERS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"CERTIFY_WORKERS must be a positive integer, got {raw!r}")
    return n


def run_campaign(campaign, workers=1, continue_on_fail=False):
    """Validate the schedule and evaluate every block.

    By default a block stops at its first failing check; with
    ``continue_on_fail`` every check is evaluated and up to
    MAX_FAILURES_KEPT failing records per block are kept.
    """
    if workers < 1:
        raise ConfigError(f"workers must be positive, got {workers}")
    t0 = time.perf_counter()
    structural = validate_schedule(campaign.schedule, campaign.k)
    plans = [plan_block(spec, campaign) for spec in campaign.blocks]
    abort = not continue_on_fail
    results = []
    if workers == 1:
        for plan in plans:
            partials = (_evaluate_partition(job) for job in _jobs(plan, campaign.k, abort))
            results.append(_reduce(plan, partials))
    else:
        # Partitions of all gridded blocks are queued up front; each block's
        # results are consumed in order, so an early abort ignores the rest.
        # Scalar blocks are single cheap checks and run here.
        pool = ProcessPoolExecutor(max_workers=workers, mp_context=_pool_context())
        try:
            pending = [None if plan.scalar is not None
                       else pool.map(_evaluate_partition, _jobs(plan, campaign.k, abort))
                       for plan in plans]
            for plan, partials in zip(plans, pending):
                if partials is None:
                    partials = map(_evaluate_partition, _jobs(plan, campaign.k, abort))
                results.append(_reduce(plan, partials))
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
    return CampaignReport(label=campaign.label, k=campaign.k, v0=campaign.v0,
                          conditions=results, structural_checks=structural,
                          wall_time=time.perf_counter() - t0)


def run_drilling_chain(workers=1, continue_on_fail=False):
    from .builtins import builtin_campaign

    return run_campaign(builtin_campaign("drilling-3.69"), workers, continue_on_fail)


def eval_condition(spec, campaign):
    """Evaluate one block in-process; returns ``(min CheckRecord, count)``."""
    plan = plan_block(spec, campaign)
    result = _reduce(plan, (_evaluate_partition(job) for job in _jobs(plan, campaign.k, False)))
    return result.min_record, result.count
