"""Run a reduced end-to-end experiment and print its summary.

Same pipeline as ``scenelearn run configs/regression.cfg`` (multi-repeat,
all strategies, CSV + summary artifacts) with smaller counts so it
finishes in well under a minute.  Results land in ``demo_results/``.
"""

from scenelearn import ExperimentConfig, run_experiment
from scenelearn.cli import summarize

config = ExperimentConfig(
    master_seed=5,
    class_count=8,
    samples_per_class=60,
    n_repeats=3,
    seeds_per_class=2,
    scenes_per_size=4,
    rounds=8,
    max_train_iters=150,
    output_dir="demo_results",
)

result = run_experiment(config, log=print)
print()
print(summarize(result))
print(f"artifacts: {config.output_dir}/curves.csv, deficiency.csv, summary.txt")
