"""Trial runner: executes selectors and estimators against the exact
oracle, records auditable per-trial reports, and aggregates success
statistics.  Trials are deterministic per seed and embarrassingly
parallel; reports are always merged in seed order.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import median
from typing import Dict, List, Optional, Tuple

from . import oracle
from .core import Instance
from .estimator import EstimatorConfig, GeneralAlphaEstimator, estimate_oracle_mode
from .estimator_samelen import SamelenAlphaEstimator, SamelenConfig, samelen_estimate_oracle
from .selector import PartitionSelector
from .selector_samelen import ShiftedGridSelector

ALGORITHMS = ("select-general", "select-samelen",
              "estimate-general", "estimate-general-oracle",
              "estimate-samelen", "estimate-samelen-oracle")


@dataclass
class TrialReport:
    instance_id: str
    algorithm: str
    params: Dict
    output: float
    alpha: int
    success: bool
    peak_memory_units: int
    wall_time_s: Optional[float] = None
    details: Dict = field(default_factory=dict)

    def to_json(self) -> str:
        obj = {"kind": "trial", "instance_id": self.instance_id,
               "algorithm": self.algorithm, "params": self.params,
               "output": self.output, "alpha": self.alpha,
               "success": self.success,
               "peak_memory_units": self.peak_memory_units,
               "wall_time_s": self.wall_time_s, "details": self.details}
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def trial_success(algorithm: str, output: float, alpha: int, eps: float = 0.0) -> bool:
    """Recompute the success flag from the stored fields."""
    if algorithm == "select-general":
        return output > alpha / 2.0 or output == alpha == 0
    if algorithm == "select-samelen":
        return output >= math.ceil(2.0 * alpha / 3.0)
    if algorithm == "estimate-general":
        return 0.5 * (1.0 - eps) * alpha <= output <= alpha
    if algorithm == "estimate-general-oracle":
        eps1 = eps / 6.0
        return (0.5 - eps1) / (1.0 + eps1) ** 2 * alpha <= output <= alpha
    if algorithm in ("estimate-samelen", "estimate-samelen-oracle"):
        return (2.0 / 3.0) * (1.0 - eps) * alpha <= output <= alpha
    raise ValueError(f"unknown algorithm {algorithm!r}")


def run_single(algorithm: str, inst: Instance, seed: int, eps: float = 0.25,
               lam: int = 1, scale: float = 1.0, counter: str = "exact",
               instance_id: str = "instance", alpha: Optional[int] = None,
               timing: bool = False) -> TrialReport:
    if alpha is None:
        alpha = oracle.alpha(inst)
    params = {"seed": seed, "eps": eps, "lambda": lam, "scale": scale,
              "counter": counter}
    details: Dict = {}
    start = time.perf_counter()

    if algorithm == "select-general":
        sel = PartitionSelector()
        for iv in inst:
            sel.process(iv)
        output = float(sel.window_count)
        units = sel.peak_windows
        details["disjoint"] = _pairwise_disjoint(sel.solution())
    elif algorithm == "select-samelen":
        sel = ShiftedGridSelector(lam)
        for iv in inst:
            sel.process(iv)
        output = float(len(sel.solution()))
        units = sel.peak_windows
        details["best_shift"] = sel.best_shift()
        details["disjoint"] = _pairwise_disjoint(sel.solution())
    elif algorithm == "estimate-general":
        est = GeneralAlphaEstimator(EstimatorConfig(
            n=inst.n, user_eps=eps, seed=seed, counter_kind=counter, scale=scale))
        for iv in inst:
            est.process(iv)
        res = est.estimate()
        output = res.value
        units = res.peak_units
        details.update(branch=res.branch, degraded=res.degraded,
                       rho_available=res.rho_available)
    elif algorithm == "estimate-general-oracle":
        output = estimate_oracle_mode(inst, eps)
        units = 0
    elif algorithm == "estimate-samelen":
        est = SamelenAlphaEstimator(SamelenConfig(
            n=inst.n, lam=lam, user_eps=eps, seed=seed, counter_kind=counter))
        for iv in inst:
            est.process(iv)
        res = est.estimate()
        output = res.value
        units = res.units
        details.update(type2_counts=res.type2_counts, k=res.k)
    elif algorithm == "estimate-samelen-oracle":
        output = samelen_estimate_oracle(inst, lam, eps)
        units = 0
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")

    wall = time.perf_counter() - start
    return TrialReport(instance_id=instance_id, algorithm=algorithm, params=params,
                       output=output, alpha=alpha,
                       success=trial_success(algorithm, output, alpha, eps),
                       peak_memory_units=units,
                       wall_time_s=wall if timing else None,
                       details=details)


def _pairwise_disjoint(intervals) -> bool:
    from .core import intersects
    for i, a in enumerate(intervals):
        for b in intervals[i + 1:]:
            if intersects(a, b):
                return False
    return True


def _trial_task(args) -> TrialReport:
    return run_single(**args)


def run_trials(algorithm: str, inst: Instance, trials: int, base_seed: int,
               eps: float = 0.25, lam: int = 1, scale: float = 1.0,
               counter: str = "exact", instance_id: str = "instance",
               workers: int = 1, groups: Optional[int] = None,
               timing: bool = False) -> Tuple[List[TrialReport], Dict]:
    """Run independent seeded trials and summarize them.

    Seeds are base_seed + index; reports come back in seed order regardless
    of worker count.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    alpha = oracle.alpha(inst)
    tasks = [dict(algorithm=algorithm, inst=inst, seed=base_seed + t, eps=eps,
                  lam=lam, scale=scale, counter=counter, instance_id=instance_id,
                  alpha=alpha, timing=timing)
             for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_trial_task, tasks))
    else:
        reports = [_trial_task(t) for t in tasks]

    outputs = [r.output for r in reports]
    summary = {
        "kind": "summary",
        "instance_id": instance_id,
        "algorithm": algorithm,
        "trials": trials,
        "alpha": alpha,
        "success_fraction": sum(r.success for r in reports) / trials,
        "median_output": median(outputs),
        "min_output": min(outputs),
        "max_output": max(outputs),
        "ratio_median": median(outputs) / alpha if alpha else None,
        "peak_memory_units": max(r.peak_memory_units for r in reports),
    }
    if groups:
        summary["group_medians"] = median_of_groups(outputs, groups)
        summary["median_of_groups"] = median(summary["group_medians"])
    return reports, summary


def median_of_groups(values: List[float], groups: int) -> List[float]:
    """Split values into contiguous groups and take each group's median."""
    if groups < 1 or groups > len(values):
        raise ValueError(f"groups must be in [1, {len(values)}], got {groups}")
    size = len(values) // groups
    return [median(values[g * size:(g + 1) * size]) for g in range(groups)]


def summary_to_json(summary: Dict) -> str:
    return json.dumps(summary, sort_keys=True, separators=(",", ":"))
