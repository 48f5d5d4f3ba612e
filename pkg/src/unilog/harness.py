"""Benchmark runner and CSV output for the logarithm algorithms."""

from dataclasses import dataclass, field
import math
from pathlib import Path
from typing import Optional

import numpy as np

from unilog import ensembles
from unilog.core import LinAlgError
from unilog.logs import GENERAL_ALGORITHMS, deviation_from_unitary
from unilog.selfdual import SELFDUAL_ALGORITHMS

CSV_HEADER = "n,noise_base,deviation,alg,backward_error,wall_time_s"

# table name -> (noise_base, structured)
TABLES = {
    "1": (1e-15, False),
    "3": (1e-5, False),
    "5": (0.3, False),
    "dual-small": (1e-15, True),
    "dual-med": (1e-5, True),
    "dual-large": (0.3, True),
}
DEFAULT_SIZES = (8, 16, 32, 64, 128, 256)


@dataclass(frozen=True)
class ExperimentRecord:
    """One trial (``trial`` is an index) or a per-size average (``trial`` is None).

    ``failures`` maps algorithm labels to error messages; failed algorithms
    are absent from ``backward_error`` and ``wall_time``.
    """

    n: int
    noise_base: float
    deviation: float
    backward_error: dict
    wall_time: dict
    trial: Optional[int] = None
    failures: dict = field(default_factory=dict)

    @property
    def is_average(self):
        return self.trial is None


def algorithms_for(spec):
    return SELFDUAL_ALGORITHMS if spec.structured else GENERAL_ALGORITHMS


def run_trial(spec, trial, algorithms=None):
    algorithms = algorithms or algorithms_for(spec)
    u = ensembles.generate(spec, trial)
    errors, times, failures = {}, {}, {}
    for alg, fn in algorithms.items():
        label = str(alg)
        try:
            result = fn(u)
        except (LinAlgError, ValueError, ArithmeticError) as exc:
            failures[label] = f"{type(exc).__name__}: {exc}"
            continue
        errors[label] = result.backward_error
        times[label] = result.wall_time
    return ExperimentRecord(
        n=spec.n,
        noise_base=spec.noise_base,
        deviation=deviation_from_unitary(u),
        backward_error=errors,
        wall_time=times,
        trial=trial,
        failures=failures,
    )


def average(records):
    """Average a list of trial records of one configuration."""
    first = records[0]
    labels = []
    for r in records:
        labels += [a for a in list(r.backward_error) + list(r.failures) if a not in labels]
    errors, times = {}, {}
    for label in labels:
        ok = [r for r in records if label in r.backward_error]
        if ok:
            errors[label] = float(np.mean([r.backward_error[label] for r in ok]))
            times[label] = float(np.mean([r.wall_time[label] for r in ok]))
    failures = {
        label: f"failed in {sum(label in r.failures for r in records)} of {len(records)} trials"
        for label in labels
        if any(label in r.failures for r in records)
    }
    return ExperimentRecord(
        n=first.n,
        noise_base=first.noise_base,
        deviation=float(np.mean([r.deviation for r in records])),
        backward_error=errors,
        wall_time=times,
        trial=None,
        failures=failures,
    )


_warm = False


def warm_up():
    """Run every algorithm once on a tiny matrix so JIT compilation stays
    out of the timings."""
    global _warm
    if _warm:
        return
    spec = ensembles.EnsembleSpec(n=4, noise_base=1e-3, trials=1, structured=True)
    u = ensembles.generate(spec, 0)
    for fn in list(GENERAL_ALGORITHMS.values()) + list(SELFDUAL_ALGORITHMS.values()):
        fn(u)
    _warm = True


def run_experiment(spec, algorithms=None):
    """Run ``spec.trials`` trials; return the trial records followed by
    their average.

    Trial ``k`` draws from a generator seeded with ``(spec.seed, k)``, so the
    result depends only on ``spec`` (timings aside). Trials run
    sequentially; only the algorithm call itself is timed.
    """
    warm_up()
    trials = [run_trial(spec, k, algorithms) for k in range(spec.trials)]
    return trials + [average(trials)]


def run_table(table, sizes=DEFAULT_SIZES, trials=30, seed=0, progress=None):
    noise_base, structured = TABLES[table]
    records = []
    for n in sizes:
        spec = ensembles.EnsembleSpec(
            n=n, noise_base=noise_base, trials=trials, seed=seed, structured=structured
        )
        records += run_experiment(spec)
        if progress:
            progress(records[-1])
    return records


def _fmt(x):
    return "nan" if x is None or math.isnan(x) else f"{x:.5e}"


def _rows(record, timing):
    for label in list(record.backward_error) + list(record.failures):
        if label in record.backward_error:
            err = record.backward_error[label]
            wall = record.wall_time[label] if timing else None
        elif record.is_average:
            continue
        else:
            err = wall = None
        yield ",".join(
            [str(record.n), _fmt(record.noise_base), _fmt(record.deviation), label, _fmt(err), _fmt(wall)]
        )


def emit_csv(records, destination, comments=(), timing=True):
    """Write ``records`` as CSV.

    One row per (trial, algorithm) under ``CSV_HEADER``; averaged records
    become rows prefixed with ``#avg,``. Failed trials are written with
    ``nan`` fields. With ``timing=False`` the wall-time column is ``nan`` so
    that reruns with the same seed produce byte-identical files.
    ``comments`` are written first as ``# ...`` lines.
    """
    records = list(records)
    if not records:
        raise ValueError("no records to write")
    lines = [f"# {c}" for c in comments]
    lines.append(CSV_HEADER)
    for record in records:
        prefix = "#avg," if record.is_average else ""
        lines += [prefix + row for row in _rows(record, timing)]
    text = "\n".join(lines) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text)
