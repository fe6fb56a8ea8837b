"""Active learning over unsegmented multi-object scenes.

Simulates pool-based active learning where unlabeled drawings must first
be segmented: a DP model partitions each scene into candidate objects,
selection strategies score and pick scenes or segments for (simulated)
annotation, and annotation savings are measured via the deficiency metric.
"""

from .scene import (ARC, LINE, CandidateObject, GroundTruthObject, Primitive,
                    Scene, intersecting_objects, is_correctly_segmented,
                    read_scenes, validate_scene, write_scenes)
from .scenegen import (IsolatedSample, JitterSpec, RepeatData, SymbolTemplate,
                       default_templates, generate_repeats, synth_symbol)
from .features import FEATURE_DIM, extract
from .classifier import (ClassifierModel, LabeledExample, TrainConfig, fit,
                         predict_proba, predict_proba_batch)
from .segmentation import (SceneIntervalFeatures, SegmentationResult,
                           WeightMatrix, brute_force_best, build_weights,
                           segment)
from .strategies import (MEASURES, STRATEGIES, FeatureStore, PoolState,
                         RoundLog, SceneScore, TrialConfig, informativeness,
                         measure_distribution,
                         run_trial, score_arm, score_gm, score_mos, score_sp,
                         select_scenes, select_segments, simulated_annotator)
from .evaluation import (AccuracyCurve, DeficiencyReport, curve_from_logs,
                         deficiency, interpolate_curve, scene_accuracy,
                         top_accuracy)
from .cli import ExperimentConfig, load_config, run_experiment, save_config

__version__ = "0.1.0"
