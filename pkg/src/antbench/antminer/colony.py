"""
Sequential-covering rule induction with an ant colony.

Each outer iteration runs one colony on the rows not yet covered: every ant
builds a rule term by term, prunes it and reinforces the trail with it. The
colony's best rule is appended to the list and its covered rows removed.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import AntMinerParams
from ..models import DatasetTable, InstanceRow, Rule, RuleListModel, Term
from ..utils.decorators import requires_rows
from .heuristics import NoSplitAvailable, best_split, gain_from_mask, majority_code, prune_rule, rule_quality
from .pheromone import ConstructionGraph, PheromoneState, selection_probabilities, update_pheromone

logger = logging.getLogger(__name__)

SplitCache = Dict[Tuple[int, bytes], Optional[Term]]


@dataclass
class _ColonyContext:
    """Per-colony precomputations shared by every ant."""
    graph: ConstructionGraph
    data: DatasetTable
    nominal_masks: np.ndarray
    eta: np.ndarray
    splits: SplitCache = field(default_factory=dict)

    @classmethod
    def prepare(cls, graph: ConstructionGraph, data: DatasetTable) -> '_ColonyContext':
        matrix, codes = data.matrix, data.class_codes
        n_classes = len(data.class_domain)
        masks = np.zeros((len(graph), len(data)), dtype=bool)
        context = cls(graph, data, masks, np.zeros(len(graph)))
        everything = np.ones(len(data), dtype=bool)
        for v, vertex in enumerate(graph.vertices):
            if vertex.is_continuous:
                term = context.continuous_term(v, everything)
                if term is not None:
                    context.eta[v] = gain_from_mask(term.mask(matrix), codes, n_classes)
            else:
                masks[v] = vertex.term().mask(matrix)
                context.eta[v] = gain_from_mask(masks[v], codes, n_classes)
        return context

    def continuous_term(self, v: int, covered: np.ndarray) -> Optional[Term]:
        """Threshold term for a continuous vertex on the currently covered rows."""
        vertex = self.graph.vertices[v]
        key = (vertex.index, np.packbits(covered).tobytes())
        if key not in self.splits:
            values = self.data.matrix[covered, vertex.index]
            try:
                threshold, direction, _ = best_split(
                    values, self.data.class_codes[covered], len(self.data.class_domain)
                )
                self.splits[key] = Term(vertex.attribute, vertex.index, direction, threshold)
            except NoSplitAvailable:
                self.splits[key] = None
        return self.splits[key]


def construct_rule(graph: ConstructionGraph, pheromone: PheromoneState, data: DatasetTable,
                   params: AntMinerParams, rng: np.random.Generator,
                   eta: Optional[np.ndarray] = None,
                   context: Optional[_ColonyContext] = None) -> Rule:
    """
    Let one ant assemble a rule on the construction graph.

    Terms are added one at a time. A vertex is legal when its attribute is not
    yet used and the rule would still cover at least `min_covered_per_rule`
    rows; legal vertices are drawn with probability proportional to
    tau^alpha * eta^beta. Continuous vertices are thresholded on the rows the
    partial rule covers at the moment they are considered.

    Args:
        graph: Vertices built from the table's schema
        pheromone: Current trails
        data: Rows the rule is built on
        params: Learner parameters
        rng: Random stream of the colony
        eta: Heuristic per vertex; computed on `data` when omitted

    Returns:
        Rule predicting the majority class of the rows it covers, scored on `data`
    """
    if context is None:
        context = _ColonyContext.prepare(graph, data)
    eta = context.eta if eta is None else np.asarray(eta, dtype=float)
    matrix, codes = data.matrix, data.class_codes
    alpha, beta = params.pheromone_exponent, params.heuristic_exponent

    covered = np.ones(len(data), dtype=bool)
    used = set()
    terms: List[Term] = []
    while True:
        legal: List[int] = []
        candidates: List[Tuple[Term, np.ndarray]] = []
        for v, vertex in enumerate(graph.vertices):
            if vertex.index in used:
                continue
            if vertex.is_continuous:
                term = context.continuous_term(v, covered)
                if term is None:
                    continue
                narrowed = covered & term.mask(matrix)
            else:
                term = None
                narrowed = covered & context.nominal_masks[v]
            if np.count_nonzero(narrowed) < params.min_covered_per_rule:
                continue
            legal.append(v)
            candidates.append((term or vertex.term(), narrowed))
        if not legal:
            break
        probabilities = selection_probabilities(pheromone.tau[legal], eta[legal], alpha, beta)
        pick = int(rng.choice(len(legal), p=probabilities))
        term, covered = candidates[pick]
        terms.append(term)
        used.add(term.index)

    code = majority_code(codes[covered], len(data.class_domain))
    label = data.class_domain[code] if code is not None else data.majority_class()
    rule = Rule(terms=tuple(terms), predicted_class=label)
    return replace(rule, quality=rule_quality(rule, data))


def run_colony(graph: ConstructionGraph, data: DatasetTable, params: AntMinerParams,
               rng: np.random.Generator) -> Tuple[Rule, int]:
    """
    Run ants until `num_ants` is exhausted or the last `convergence_rules`
    rules are identical.

    Returns:
        (best rule, ants run); the best rule is the highest-quality one seen,
        the earliest on ties
    """
    pheromone = PheromoneState.initial(graph, params.evaporation_factor)
    context = _ColonyContext.prepare(graph, data)
    best: Optional[Rule] = None
    previous: Optional[Rule] = None
    streak = 0
    ants = 0
    for _ in range(params.num_ants):
        rule = construct_rule(graph, pheromone, data, params, rng, context=context)
        if rule.terms:
            rule = prune_rule(rule, data)
        ants += 1
        if best is None or rule.quality > best.quality:
            best = rule
        pheromone = update_pheromone(pheromone, rule)
        streak = streak + 1 if previous is not None and rule.same_as(previous) else 1
        previous = rule
        if streak >= params.convergence_rules:
            break
    return best, ants


@requires_rows
def train(data: DatasetTable, params: AntMinerParams, seed: int) -> RuleListModel:
    """
    Induce an ordered rule list by sequential covering.

    Stops when at most `max_uncovered` rows remain, when the remaining rows
    share one class, or when the colony cannot find a rule with positive
    quality covering at least `min_covered_per_rule` rows.

    Raises:
        ValueError: If the table has fewer than `min_covered_per_rule` rows
    """
    if len(data) < params.min_covered_per_rule:
        raise ValueError(
            f"'{data.name}' has {len(data)} rows, fewer than min_covered_per_rule={params.min_covered_per_rule}"
        )
    rng = np.random.default_rng(seed)
    graph = ConstructionGraph.from_schema(data.schema)
    remaining = np.arange(len(data))
    rules: List[Rule] = []
    colony_sizes: List[int] = []

    while len(remaining) > params.max_uncovered:
        current = data.subset(remaining)
        if np.unique(current.class_codes).size < 2:
            break
        best, ants = run_colony(graph, current, params, rng)
        covered = best.mask(current.matrix)
        if not best.terms or best.quality <= 0 or np.count_nonzero(covered) < params.min_covered_per_rule:
            logger.debug(f"{data.name}: no acceptable rule after {ants} ants, stopping")
            break
        rules.append(best)
        colony_sizes.append(ants)
        remaining = remaining[~covered]
        logger.debug(f"{data.name}: rule {len(rules)} '{best}' (q={best.quality:.4f}, ants={ants}), "
                     f"{len(remaining)} rows left")

    rest = data.subset(remaining) if len(remaining) else data
    return RuleListModel(
        rules=tuple(rules),
        default_class=rest.majority_class(),
        schema=data.schema,
        class_attribute=data.class_attribute,
        colony_sizes=tuple(colony_sizes),
    )


def classify(model: RuleListModel, instance: InstanceRow) -> str:
    """First-match label of a rule list; the default class if no rule fires."""
    return model.classify(instance)


class AntMinerLearner:
    """Learner adapter for the colony rule inducer."""

    name = "antminer"

    def __init__(self, params: Optional[AntMinerParams] = None):
        self.params = params or AntMinerParams()

    def fit(self, data: DatasetTable, seed: int) -> RuleListModel:
        return train(data, self.params, seed)

    def __repr__(self) -> str:
        return f"AntMinerLearner({self.params})"


class MajorityClassLearner:
    """Baseline predicting the training majority class (an empty rule list)."""

    name = "majority"

    @requires_rows
    def fit(self, data: DatasetTable, seed: int) -> RuleListModel:
        return RuleListModel(
            rules=(),
            default_class=data.majority_class(),
            schema=data.schema,
            class_attribute=data.class_attribute,
        )
