"""
Bagged ensembles of rule-list learners with majority voting.
"""

from .bagging import (
    BaggedLearner,
    EnsembleModel,
    PredictionVector,
    ReplicaTrainingError,
    majority_vote,
    predict,
    train_ensemble,
    vote_counts,
)
from .manifest import dump_ensemble, load_ensemble, parse_ensemble, save_ensemble

__all__ = [
    'BaggedLearner',
    'EnsembleModel',
    'PredictionVector',
    'ReplicaTrainingError',
    'majority_vote',
    'predict',
    'train_ensemble',
    'vote_counts',
    'dump_ensemble',
    'load_ensemble',
    'parse_ensemble',
    'save_ensemble',
]
