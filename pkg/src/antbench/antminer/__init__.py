"""
Ant-colony rule-list classifier.

Heuristics and discretization, the construction graph with its pheromone
trails, the sequential-covering trainer and the plain-text model format.
"""

from .colony import (
    AntMinerLearner,
    MajorityClassLearner,
    classify,
    construct_rule,
    run_colony,
    train,
)
from .heuristics import (
    NoSplitAvailable,
    class_entropy,
    discretize_threshold,
    heuristic,
    prune_rule,
    rule_quality,
)
from .pheromone import (
    ConstructionGraph,
    PheromoneState,
    Vertex,
    selection_probabilities,
    update_pheromone,
)
from .serialize import dump_rule_list, load_rule_list, parse_rule_list, save_rule_list

__all__ = [
    'AntMinerLearner',
    'MajorityClassLearner',
    'classify',
    'construct_rule',
    'run_colony',
    'train',
    'NoSplitAvailable',
    'class_entropy',
    'discretize_threshold',
    'heuristic',
    'prune_rule',
    'rule_quality',
    'ConstructionGraph',
    'PheromoneState',
    'Vertex',
    'selection_probabilities',
    'update_pheromone',
    'dump_rule_list',
    'load_rule_list',
    'parse_rule_list',
    'save_rule_list',
]
