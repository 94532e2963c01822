"""
Bootstrap aggregation of base learners with majority voting.

Replica t is trained on bootstrap_sample(train, derive_seed(seed, t, 0)) with
learner seed derive_seed(seed, t, 1), so every member depends only on the
master seed and its index, whether replicas run sequentially or in a pool.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from ..config import EnsembleParams
from ..dataset.sampling import bootstrap_sample
from ..models import AttributeSpec, Classifier, DatasetTable, InstanceRow, Learner, check_instance
from ..utils.decorators import requires_rows
from ..utils.seeding import derive_seed

logger = logging.getLogger(__name__)

PredictionVector = Tuple[str, ...]


class ReplicaTrainingError(RuntimeError):
    """The base learner failed on one bootstrap replica."""

    def __init__(self, replica: int, reason: str):
        self.replica = replica
        self.reason = reason
        super().__init__(f"Base learner failed on replica {replica}: {reason}")

    def __reduce__(self):
        return (type(self), (self.replica, self.reason))


def majority_vote(votes: Sequence[str], training_priors: Sequence[float],
                  class_domain: Sequence[str]) -> str:
    """
    Most voted label.

    Ties go to the label with the larger training prior, then to the label
    earliest in the class domain.

    Raises:
        ValueError: If there are no votes or a vote is outside the domain
    """
    if not votes:
        raise ValueError("majority_vote needs at least one vote")
    order = {label: i for i, label in enumerate(class_domain)}
    counts = Counter(votes)
    unknown = [label for label in counts if label not in order]
    if unknown:
        raise ValueError(f"Votes outside the class domain: {', '.join(unknown)}")
    return max(counts, key=lambda label: (counts[label], training_priors[order[label]], -order[label]))


@dataclass(frozen=True)
class EnsembleModel:
    """
    T stored base models and their majority-vote predictor.

    Attributes:
        members: Base models in replica order
        class_domain: Class labels in schema order
        training_priors: Class frequencies of the un-resampled training table
        master_seed: Seed the replicas were derived from
        schema: Training schema shared by every member
        class_attribute: Class attribute of the training table
    """
    members: Tuple[Classifier, ...]
    class_domain: Tuple[str, ...]
    training_priors: Tuple[float, ...]
    master_seed: int
    schema: Tuple[AttributeSpec, ...]
    class_attribute: AttributeSpec

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("An ensemble needs at least one member")
        if len(self.training_priors) != len(self.class_domain):
            raise ValueError("Training priors do not match the class domain")

    def __len__(self) -> int:
        return len(self.members)

    @property
    def term_count(self) -> int:
        """Terms summed over every member."""
        return sum(member.term_count for member in self.members)

    @property
    def mean_member_terms(self) -> float:
        return self.term_count / len(self.members)

    def prediction_vector(self, instance: InstanceRow) -> PredictionVector:
        check_instance(self.schema, instance)
        return tuple(member.classify(instance) for member in self.members)

    def classify(self, instance: InstanceRow) -> str:
        return majority_vote(self.prediction_vector(instance), self.training_priors, self.class_domain)

    def predict(self, table: DatasetTable) -> List[str]:
        if table.schema != self.schema:
            raise ValueError(f"Schema mismatch between ensemble and table '{table.name}'")
        columns = [member.predict(table) for member in self.members]
        return [majority_vote(votes, self.training_priors, self.class_domain) for votes in zip(*columns)]


def predict(model: EnsembleModel, instance: InstanceRow) -> str:
    """Majority vote of every member on one instance."""
    return model.classify(instance)


def _fit_replica(train: DatasetTable, base_learner: Learner, master_seed: int, replica: int) -> Classifier:
    sample = bootstrap_sample(train, derive_seed(master_seed, replica, 0))
    try:
        member = base_learner.fit(sample, derive_seed(master_seed, replica, 1))
    except Exception as e:
        raise ReplicaTrainingError(replica, f"{type(e).__name__}: {e}") from e
    logger.debug(f"{train.name}: replica {replica} trained ({member.term_count} terms)")
    return member


@requires_rows
def train_ensemble(train: DatasetTable, base_learner: Learner, params: EnsembleParams,
                   n_jobs: int = 1) -> EnsembleModel:
    """
    Train T members on bootstrap replicas of `train`.

    Args:
        train: Training table (non-empty)
        base_learner: Any Learner; fitted once per replica
        params: Replica count and master seed
        n_jobs: joblib workers; the member order is the replica order either way

    Returns:
        EnsembleModel whose priors come from `train` itself

    Raises:
        ReplicaTrainingError: Naming the first replica whose training failed
    """
    members = Parallel(n_jobs=n_jobs)(
        delayed(_fit_replica)(train, base_learner, params.seed, t) for t in range(params.replicas)
    )
    counts = train.class_counts()
    priors = tuple(float(c) for c in counts / counts.sum())
    return EnsembleModel(
        members=tuple(members),
        class_domain=train.class_domain,
        training_priors=priors,
        master_seed=params.seed,
        schema=train.schema,
        class_attribute=train.class_attribute,
    )


class BaggedLearner:
    """
    Learner adapter that bags another learner.

    Lets the ensemble run under any protocol that accepts a Learner; the
    seed passed to fit becomes the ensemble's master seed.
    """

    name = "bagged"

    def __init__(self, base_learner: Learner, replicas: int = 10, n_jobs: int = 1):
        EnsembleParams(replicas=replicas)
        self.base_learner = base_learner
        self.replicas = replicas
        self.n_jobs = n_jobs

    def fit(self, data: DatasetTable, seed: int) -> EnsembleModel:
        return train_ensemble(data, self.base_learner, EnsembleParams(self.replicas, seed), self.n_jobs)

    def __repr__(self) -> str:
        return f"BaggedLearner({self.base_learner!r}, replicas={self.replicas})"


def vote_counts(votes: Sequence[str], class_domain: Sequence[str]) -> np.ndarray:
    """Votes per label, in domain order."""
    counts = Counter(votes)
    return np.array([counts.get(label, 0) for label in class_domain], dtype=int)
