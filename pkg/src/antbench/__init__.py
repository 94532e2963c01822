"""
antbench - ant-colony rule classifiers and their evaluation.

This package provides an Ant-Miner style sequential-covering rule learner,
a bagged ensemble of such learners with majority voting, the repeated
cross-validation and hold-out protocols used to compare them, and the
Friedman / step-down post hoc statistics for multi-dataset comparisons.

Usage:
    from antbench import AntMinerLearner, BaggedLearner, load_dataset, cross_validate

    data = load_dataset("tests/fixtures/iris.csv")
    report, sizes = cross_validate(data, AntMinerLearner(), k=10, iterations=10, seed=1)
"""

# Version must be defined before importing .cli to avoid circular import
__version__ = "1.0.0"
__description__ = "Ant-colony rule induction, bagging and nonparametric comparison"

from .antminer import AntMinerLearner, MajorityClassLearner, train
from .config import AntMinerParams, EnsembleParams, ExperimentConfig
from .dataset import load_dataset
from .ensemble import BaggedLearner, EnsembleModel, train_ensemble
from .evaluation import cross_validate, evaluate_ensemble, holdout_evaluate, stability_curve
from .models import DatasetTable, Rule, RuleListModel, Term
from .validators import BenchValidator
from .cli import main

__all__ = [
    'AntMinerLearner',
    'MajorityClassLearner',
    'train',
    'AntMinerParams',
    'EnsembleParams',
    'ExperimentConfig',
    'load_dataset',
    'BaggedLearner',
    'EnsembleModel',
    'train_ensemble',
    'cross_validate',
    'evaluate_ensemble',
    'holdout_evaluate',
    'stability_curve',
    'DatasetTable',
    'Rule',
    'RuleListModel',
    'Term',
    'BenchValidator',
    'main',
]
