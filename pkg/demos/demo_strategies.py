"""Compare selection strategies on a small generated problem.

Runs every strategy for a few rounds on one repeat and prints the
accuracy trajectory and the deficiency of each informed strategy versus
the random baseline.
"""

from scenelearn import (STRATEGIES, FeatureStore, TrainConfig, TrialConfig,
                        curve_from_logs, deficiency, generate_repeats,
                        run_trial, top_accuracy)

repeat = generate_repeats(master_seed=5, class_count=10, samples_per_class=60,
                          n_repeats=2, seeds_per_class=1,
                          sizes=(2, 3, 4, 5), scenes_per_size=5)[0]
config = TrialConfig(rounds=8, batch_scenes=2, batch_objects=8, max_span=6,
                     classifier=TrainConfig(max_iters=200))
store = FeatureStore(config.max_span)  # features shared across strategies

pool = sum(len(s.objects) for s in repeat.train_scenes)
top = top_accuracy(repeat, config, store)
print(f"pool: {len(repeat.train_scenes)} scenes / {pool} objects, "
      f"seeds: {len(repeat.seed_set)}, top accuracy: {top:.3f}\n")

curves = {}
header = "strategy  " + "  ".join(f"r{i}" for i in range(config.rounds + 1))
print(header)
for strategy in STRATEGIES:
    logs = run_trial(repeat, strategy, config, seed=5, store=store)
    curves[strategy] = curve_from_logs(logs)
    accs = "  ".join(f"{l.accuracy:.2f}" for l in logs)
    print(f"{strategy:<9} {accs}")

print("\ndeficiency vs random (lower is better, < 1 beats the baseline):")
for strategy in STRATEGIES:
    if strategy == "random":
        continue
    d = deficiency(curves[strategy], curves["random"], top)
    print(f"  {strategy:<4} {d.deficiency:.3f}")
