"""
Construction graph and pheromone trails of the ant colony.

The graph holds one vertex per nominal (attribute, value) pair and one vertex
per continuous attribute; continuous vertices receive their threshold when an
ant selects them. Trails are kept normalised so they sum to the vertex count.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..models import EQ, AttributeSpec, Rule, Term
from ..validators import BenchValidator

logger = logging.getLogger(__name__)

# Selection weights summing below this fall back to a uniform choice.
WEIGHT_FLOOR = 1e-12

VertexKey = Tuple[int, Optional[str]]


@dataclass(frozen=True)
class Vertex:
    """
    Candidate term of the construction graph.

    Attributes:
        index: Schema column of the attribute
        attribute: Attribute tested by the vertex
        value: Category label, or None for a continuous attribute
    """
    index: int
    attribute: AttributeSpec
    value: Optional[str] = None

    @property
    def key(self) -> VertexKey:
        return (self.index, self.value)

    @property
    def is_continuous(self) -> bool:
        return self.value is None

    def term(self) -> Term:
        """The `=` term of a nominal vertex."""
        if self.value is None:
            raise ValueError(f"Continuous vertex '{self.attribute.name}' has no fixed term")
        return Term(self.attribute, self.index, EQ, self.value)


@dataclass(frozen=True)
class ConstructionGraph:
    """Vertices in schema order; nominal values in domain order."""
    vertices: Tuple[Vertex, ...]

    @classmethod
    def from_schema(cls, schema: Sequence[AttributeSpec]) -> 'ConstructionGraph':
        vertices = []
        for index, spec in enumerate(schema):
            if spec.is_nominal:
                vertices.extend(Vertex(index, spec, label) for label in spec.domain)
            else:
                vertices.append(Vertex(index, spec))
        return cls(tuple(vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def keys(self) -> Tuple[VertexKey, ...]:
        return tuple(v.key for v in self.vertices)


def vertex_key(term: Term) -> VertexKey:
    """Graph vertex a term was built from."""
    return (term.index, term.value if term.operator == EQ else None)


@dataclass(frozen=True, eq=False)
class PheromoneState:
    """
    Per-vertex trail levels.

    Attributes:
        tau: Positive trail per vertex, aligned with `keys`
        keys: Vertex keys (column, label or None) in graph order
        evaporation_factor: Multiplier for vertices outside the reinforced rule
    """
    tau: np.ndarray
    keys: Tuple[VertexKey, ...]
    evaporation_factor: float = 0.9

    def __post_init__(self) -> None:
        tau = np.asarray(self.tau, dtype=float)
        if tau.shape != (len(self.keys),):
            raise ValueError("Pheromone vector does not match the vertex count")
        if not np.all(tau > 0):
            raise ValueError("Pheromone levels must be positive")
        BenchValidator.validate_open_unit("evaporation_factor", self.evaporation_factor)
        tau.setflags(write=False)
        object.__setattr__(self, "tau", tau)

    @classmethod
    def initial(cls, graph: ConstructionGraph, evaporation_factor: float = 0.9) -> 'PheromoneState':
        """Uniform trail of 1 on every vertex."""
        return cls(np.ones(len(graph)), graph.keys, evaporation_factor)

    @property
    def positions(self) -> Dict[VertexKey, int]:
        return {key: i for i, key in enumerate(self.keys)}


def update_pheromone(state: PheromoneState, best_rule: Rule) -> PheromoneState:
    """
    Reinforce the vertices of a rule and evaporate the rest.

    tau is multiplied by (1 + quality) on the rule's vertices and by the
    evaporation factor elsewhere, then rescaled to sum to the vertex count.

    Raises:
        ValueError: If the rule quality is outside [0, 1]
    """
    if not 0.0 <= best_rule.quality <= 1.0:
        raise ValueError(f"Rule quality must lie in [0, 1], got {best_rule.quality}")
    positions = state.positions
    reinforced = np.zeros(len(state.keys), dtype=bool)
    for term in best_rule.terms:
        reinforced[positions[vertex_key(term)]] = True

    tau = np.where(reinforced, state.tau * (1.0 + best_rule.quality), state.tau * state.evaporation_factor)
    tau *= len(tau) / tau.sum()
    return PheromoneState(tau, state.keys, state.evaporation_factor)


def selection_probabilities(tau: np.ndarray, eta: np.ndarray, alpha: float = 1.0,
                            beta: float = 1.0) -> np.ndarray:
    """
    Probability of picking each legal vertex: tau^alpha * eta^beta, normalised.

    Args:
        tau: Trails of the legal vertices
        eta: Heuristic values of the legal vertices
        alpha: Pheromone exponent
        beta: Heuristic exponent

    Returns:
        Probabilities summing to 1; uniform when every weight vanishes
    """
    tau = np.asarray(tau, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if tau.size == 0:
        raise ValueError("No legal vertex to choose from")
    weights = np.power(tau, alpha) * np.power(eta, beta)
    total = weights.sum()
    if not np.isfinite(total) or total < WEIGHT_FLOOR:
        return np.full(tau.size, 1.0 / tau.size)
    return weights / total
