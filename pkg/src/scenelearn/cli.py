"""Experiment runner and command line interface.

Subcommands:
  gen <config>      write scene files, one per repeat per split
  run <config>      full multi-repeat experiment -> curves.csv,
                    deficiency.csv, summary.txt
  report <dir>      recompute summary.txt from the CSVs
  selftest          run the built-in oracle suites

Exit status: 0 success, 1 config error, 2 runtime error, 3 selftest failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import evaluation, scenegen, segmentation, strategies
from .classifier import LabeledExample, TrainConfig, fit, loss_and_grad
from .evaluation import AccuracyCurve, curve_from_logs, deficiency, top_accuracy
from .scene import validate_scene, write_scenes
from .scenegen import generate_repeats
from .strategies import STRATEGIES, FeatureStore, TrialConfig, run_trial

POOL_OBJECTS_TOLERANCE = 0.01  # "reached top accuracy" band for savings


@dataclass(frozen=True)
class ExperimentConfig:
    master_seed: int
    class_count: int = 10
    samples_per_class: int = 250
    n_repeats: int = 5
    seeds_per_class: int = 4
    scenes_per_size: int = 20
    rounds: int = 25
    batch_scenes: int = 3
    batch_objects: int = 12
    strategies: tuple[str, ...] = STRATEGIES
    measure: str = "least_confidence"
    max_span: int = 8
    max_train_iters: int = 300
    output_dir: str = "results"

    def __post_init__(self):
        for name in ("class_count", "samples_per_class", "n_repeats",
                     "seeds_per_class", "scenes_per_size", "rounds",
                     "batch_scenes", "batch_objects", "max_span",
                     "max_train_iters"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not self.strategies:
            raise ValueError("strategies must be non-empty")
        for s in self.strategies:
            if s not in STRATEGIES:
                raise ValueError(f"unknown strategy {s!r}")
        if self.measure not in strategies.MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")

    def trial_config(self) -> TrialConfig:
        return TrialConfig(
            rounds=self.rounds, batch_scenes=self.batch_scenes,
            batch_objects=self.batch_objects, measure=self.measure,
            max_span=self.max_span,
            classifier=TrainConfig(max_iters=self.max_train_iters))


_INT_KEYS = {"master_seed", "class_count", "samples_per_class", "n_repeats",
             "seeds_per_class", "scenes_per_size", "rounds", "batch_scenes",
             "batch_objects", "max_span", "max_train_iters"}
_STR_KEYS = {"measure", "output_dir"}


def load_config(path) -> ExperimentConfig:
    """Parse a line-oriented ``key = value`` file; '#' starts a comment."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: malformed line {raw.strip()!r}")
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key in _INT_KEYS:
                try:
                    values[key] = int(val)
                except ValueError:
                    raise ValueError(f"line {lineno}: {key} expects an integer")
            elif key in _STR_KEYS:
                values[key] = val
            elif key == "strategies":
                values[key] = tuple(s.strip() for s in val.split(",") if s.strip())
            else:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
    if "master_seed" not in values:
        raise ValueError("master_seed missing")
    return ExperimentConfig(**values)


def save_config(config: ExperimentConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for f in fields(config):
            v = getattr(config, f.name)
            if f.name == "strategies":
                v = ", ".join(v)
            fh.write(f"{f.name} = {v}\n")


def _generate(config: ExperimentConfig):
    return generate_repeats(
        master_seed=config.master_seed, class_count=config.class_count,
        samples_per_class=config.samples_per_class, n_repeats=config.n_repeats,
        seeds_per_class=config.seeds_per_class,
        scenes_per_size=config.scenes_per_size)


def gen_scenes(config: ExperimentConfig) -> list[Path]:
    outdir = Path(config.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for rep in _generate(config):
        for split, scenes in (("train", rep.train_scenes),
                              ("test", rep.test_scenes)):
            path = outdir / f"repeat{rep.repeat_index}_{split}.scenes"
            write_scenes(scenes, path)
            paths.append(path)
    return paths


@dataclass
class ExperimentResult:
    curves: dict[tuple[int, str], AccuracyCurve]  # (repeat, strategy)
    top_accuracies: dict[int, float]
    pool_objects: dict[int, int]
    seed_counts: dict[int, int]
    reports: list[tuple[int, object]]  # (repeat, DeficiencyReport)
    logs: dict[tuple[int, str], list] | None = None  # per-trial RoundLogs


def run_experiment(config: ExperimentConfig, log=lambda msg: None) -> ExperimentResult:
    """Run every configured strategy on every repeat and write curves.csv,
    deficiency.csv, and summary.txt.  Deterministic given master_seed."""
    outdir = Path(config.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    tcfg = config.trial_config()
    repeats = _generate(config)

    curves: dict[tuple[int, str], AccuracyCurve] = {}
    all_logs: dict[tuple[int, str], list] = {}
    tops: dict[int, float] = {}
    pool_objects: dict[int, int] = {}
    seed_counts: dict[int, int] = {}
    for rep in repeats:
        r = rep.repeat_index
        store = FeatureStore(config.max_span)  # shared across strategies
        pool_objects[r] = sum(len(s.objects) for s in rep.train_scenes)
        seed_counts[r] = len(rep.seed_set)
        t0 = time.time()
        tops[r] = top_accuracy(rep, tcfg, store)
        log(f"repeat {r}: top accuracy {tops[r]:.4f} ({time.time() - t0:.1f}s)")
        for strat in config.strategies:
            t0 = time.time()
            logs = run_trial(rep, strat, tcfg,
                             seed=config.master_seed * 1000 + r, store=store)
            curves[(r, strat)] = curve_from_logs(logs)
            all_logs[(r, strat)] = logs
            log(f"repeat {r} {strat}: final accuracy {logs[-1].accuracy:.4f} "
                f"({time.time() - t0:.1f}s)")

    reports = []
    if "random" in config.strategies:
        for r in sorted(tops):
            for strat in config.strategies:
                if strat == "random":
                    continue
                rep_d = deficiency(curves[(r, strat)], curves[(r, "random")], tops[r])
                reports.append((r, rep_d))

    _write_curves(outdir / "curves.csv", curves)
    _write_deficiency(outdir / "deficiency.csv", reports)
    result = ExperimentResult(curves, tops, pool_objects, seed_counts, reports,
                              all_logs)
    (outdir / "summary.txt").write_text(summarize(result))
    return result


def _write_curves(path, curves) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["repeat", "strategy", "round", "labeled_objects", "accuracy"])
        for (r, strat) in sorted(curves, key=lambda k: (k[0], k[1])):
            for rnd, (labels, acc) in enumerate(curves[(r, strat)].points):
                w.writerow([r, strat, rnd, labels, f"{acc:.6f}"])


def _write_deficiency(path, reports) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["repeat", "strategy", "baseline", "acc_max",
                    "deficiency", "deficiency_unclamped"])
        for r, d in sorted(reports, key=lambda x: (x[0], x[1].method_a)):
            w.writerow([r, d.method_a, d.method_b, f"{d.acc_max:.6f}",
                        f"{d.deficiency:.6f}", f"{d.deficiency_unclamped:.6f}"])


def _savings(curve: AccuracyCurve, top: float, seed_count: int,
             pool: int) -> float | None:
    """Fraction of the pool left unlabeled when the curve first comes
    within POOL_OBJECTS_TOLERANCE of the top accuracy; None if it never
    does."""
    for labels, acc in curve.points:
        if acc >= top - POOL_OBJECTS_TOLERANCE:
            return 1.0 - (labels - seed_count) / pool
    return None


def summarize(result: ExperimentResult) -> str:
    lines = ["# experiment summary", ""]
    tops = result.top_accuracies
    lines.append(f"mean top accuracy: {np.mean(list(tops.values())):.4f}")
    lines.append("")
    by_strat: dict[str, list[float]] = {}
    for r, d in result.reports:
        by_strat.setdefault(d.method_a, []).append(d.deficiency)
    if by_strat:
        lines.append("mean deficiency vs random (lower is better):")
        for strat in sorted(by_strat):
            vals = by_strat[strat]
            lines.append(f"  {strat}: {np.mean(vals):.4f} "
                         f"(per repeat: {', '.join(f'{v:.3f}' for v in vals)})")
        lines.append("")
    lines.append("annotation savings to reach top accuracy - 0.01:")
    strat_names = sorted({s for (_, s) in result.curves})
    for strat in strat_names:
        vals = []
        for r in sorted(tops):
            if (r, strat) not in result.curves:
                continue
            s = _savings(result.curves[(r, strat)], tops[r],
                         result.seed_counts[r], result.pool_objects[r])
            if s is not None:
                vals.append(s)
        if vals:
            lines.append(f"  {strat}: mean {np.mean(vals) * 100:.1f}% "
                         f"of pool unlabeled ({len(vals)}/{len(tops)} repeats reached)")
        else:
            lines.append(f"  {strat}: top accuracy band not reached")
    lines.append("")
    return "\n".join(lines)


def report_from_csv(results_dir) -> str:
    """Rebuild summary.txt from curves.csv and deficiency.csv."""
    results_dir = Path(results_dir)
    curves: dict[tuple[int, str], list[tuple[int, float]]] = {}
    with open(results_dir / "curves.csv", newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            key = (int(row["repeat"]), row["strategy"])
            curves.setdefault(key, []).append(
                (int(row["labeled_objects"]), float(row["accuracy"])))
    acc_curves = {k: AccuracyCurve(k[1], tuple(v)) for k, v in curves.items()}
    reports = []
    tops: dict[int, float] = {}
    with open(results_dir / "deficiency.csv", newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            r = int(row["repeat"])
            tops[r] = float(row["acc_max"])
            reports.append((r, evaluation.DeficiencyReport(
                row["strategy"], row["baseline"], float(row["acc_max"]),
                float(row["deficiency"]), float(row["deficiency_unclamped"]))))
    seed_counts = {r: min(acc_curves[(r2, s)].points[0][0]
                          for (r2, s) in acc_curves if r2 == r)
                   for (r, _) in acc_curves}
    pool = {r: max(acc_curves[(r2, s)].points[-1][0] - seed_counts[r]
                   for (r2, s) in acc_curves if r2 == r)
            for (r, _) in acc_curves}
    # pool size is not recoverable exactly from the CSV; use the largest
    # labeled count as a lower bound so savings stay conservative
    result = ExperimentResult(acc_curves, tops, pool, seed_counts, reports)
    summary = summarize(result)
    (results_dir / "summary.txt").write_text(summary)
    return summary


# --- selftest ----------------------------------------------------------

def _selftest_dp(rng) -> bool:
    from .segmentation import brute_force_best, segment, weights_from_array
    from .scene import GroundTruthObject, Primitive, Scene
    ok = True
    for _ in range(100):
        n = int(rng.integers(1, 9))
        w = np.triu(rng.uniform(size=(n, n)))
        scene = _dummy_scene(n)
        res = segment(scene, weights_from_array(w))
        best = brute_force_best(w)
        if abs(res.interpretation_probability - best) > 1e-12:
            ok = False
        prod = 1.0
        for c in res.candidates:
            prod *= c.weight
        if abs(prod - res.interpretation_probability) > 1e-12:
            ok = False
    return ok


def _dummy_scene(n: int):
    from .scene import GroundTruthObject, Primitive, Scene
    prims = tuple(Primitive(i, "line", np.array([[0.0, 0.0], [1.0, 1.0]]) + i)
                  for i in range(n))
    objs = (GroundTruthObject(0, 0, n - 1),)
    return Scene(f"dummy-{n}", prims, objs)


def _selftest_aggregators(rng) -> bool:
    from .strategies import score_arm, score_gm, score_mos
    ok = abs(score_arm([0.2, 0.4, 0.6]) - 0.4) < 1e-12
    ok &= abs(score_gm([0.25, 1.0]) - 0.5) < 1e-12
    ok &= score_gm([0.9, 0.0]) == 0.0
    ok &= score_mos([0.2, 0.4, 0.6]) == 0.6
    for _ in range(200):
        s = rng.uniform(size=int(rng.integers(1, 8))).tolist()
        ok &= score_mos(s) >= score_arm(s) - 1e-12
        ok &= score_arm(s) >= score_gm(s) - 1e-12
    return bool(ok)


def _selftest_deficiency() -> bool:
    a = AccuracyCurve("a", ((0, 0.5), (10, 0.7), (20, 0.9)))
    b = AccuracyCurve("b", ((0, 0.5), (10, 0.6), (20, 0.7)))
    ok = deficiency(a, a, 0.9).deficiency == 1.0
    ok &= abs(deficiency(a, b, 0.9).deficiency - 2.0 / 3.0) < 1e-12
    return bool(ok)


def _selftest_generator() -> bool:
    reps = generate_repeats(master_seed=7, class_count=5, samples_per_class=20,
                            n_repeats=2, seeds_per_class=2,
                            sizes=(2, 3), scenes_per_size=2)
    ok = len(reps) == 2
    for rep in reps:
        for scene in rep.train_scenes + rep.test_scenes:
            ok &= validate_scene(scene) is None
        used = [sid for ids in rep.provenance.values() for sid in ids]
        used += [s.sample_id for s in rep.seed_set]
        ok &= len(used) == len(set(used))
    return bool(ok)


def _selftest_classifier(rng) -> bool:
    W = rng.normal(size=(3, 6))
    X = np.hstack([rng.normal(size=(12, 5)), np.ones((12, 1))])
    y = rng.integers(0, 3, size=12)
    _, grad = loss_and_grad(W, X, y, 1e-3)
    num = np.zeros_like(W)
    eps = 1e-6
    for i in range(W.shape[0]):
        for j in range(W.shape[1]):
            Wp, Wm = W.copy(), W.copy()
            Wp[i, j] += eps
            Wm[i, j] -= eps
            num[i, j] = (loss_and_grad(Wp, X, y, 1e-3)[0]
                         - loss_and_grad(Wm, X, y, 1e-3)[0]) / (2 * eps)
    rel = np.abs(grad - num) / np.maximum(1e-8, np.abs(grad) + np.abs(num))
    return bool(rel.max() < 1e-4)


def selftest(out=None) -> bool:
    out = out if out is not None else sys.stdout
    rng = np.random.default_rng(12345)
    suites = [
        ("dp-oracle", lambda: _selftest_dp(rng)),
        ("aggregators", lambda: _selftest_aggregators(rng)),
        ("deficiency", _selftest_deficiency),
        ("generator", _selftest_generator),
        ("classifier-gradient", lambda: _selftest_classifier(rng)),
    ]
    all_ok = True
    for name, func in suites:
        ok = func()
        all_ok &= ok
        print(f"{name}: {'pass' if ok else 'FAIL'}", file=out)
    return all_ok


# --- entry point -------------------------------------------------------

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="scenelearn")
    sub = parser.add_subparsers(dest="command", required=True)
    p_gen = sub.add_parser("gen", help="write scene files per repeat per split")
    p_gen.add_argument("config")
    p_run = sub.add_parser("run", help="run the full experiment")
    p_run.add_argument("config")
    p_rep = sub.add_parser("report", help="recompute summary from CSVs")
    p_rep.add_argument("results_dir")
    sub.add_parser("selftest", help="run the built-in oracle suites")
    args = parser.parse_args(argv)

    if args.command == "selftest":
        return 0 if selftest() else 3

    try:
        if args.command in ("gen", "run"):
            config = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "gen":
            for path in gen_scenes(config):
                print(path)
        elif args.command == "run":
            run_experiment(config, log=print)
            print(f"results written to {config.output_dir}")
        elif args.command == "report":
            print(report_from_csv(args.results_dir))
    except Exception as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
