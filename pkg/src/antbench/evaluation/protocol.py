"""
Experimental protocols.

- cross_validate: repeated stratified k-fold CV (single classifiers)
- evaluate_ensemble: repeated stratified hold-out with a bagged ensemble
- holdout_evaluate: the same hold-out splits for any learner
- stability_curve: per-fold errors of one CV run

Seeds: iteration i uses derive_seed(seed, i) for its fold plan or split and
derive_seed(seed, i, j) for the learner of fold or run j, so reports are a
pure function of (data, learner, parameters, seed) and independent of n_jobs.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from ..config import EnsembleParams
from ..dataset.sampling import holdout_split, stratified_folds
from ..ensemble.bagging import train_ensemble
from ..models import Classifier, DatasetTable, ErrorReport, Learner, ModelSizeReport, StabilityCurve
from ..utils.decorators import logged_stage, requires_rows
from ..utils.seeding import derive_seed

logger = logging.getLogger(__name__)

RunOutcome = Tuple[float, float, float]


@requires_rows
def test_error(model: Classifier, test: DatasetTable) -> float:
    """Fraction of rows whose predicted label differs from the actual one."""
    predicted = np.asarray(model.predict(test), dtype=object)
    actual = np.asarray([row.class_label for row in test.rows], dtype=object)
    return float(np.mean(predicted != actual))


def model_size(model: Classifier) -> Tuple[float, float]:
    """(terms per member, total terms); equal for single classifiers."""
    per_member = getattr(model, "mean_member_terms", model.term_count)
    return float(per_member), float(model.term_count)


def _fit_and_score(learner: Learner, train: DatasetTable, test: DatasetTable, seed: int) -> RunOutcome:
    model = learner.fit(train, seed)
    per_member, total = model_size(model)
    return test_error(model, test), per_member, total


def _reports(data: DatasetTable, algorithm: str, protocol: str,
             outcomes: Sequence[Sequence[RunOutcome]]) -> Tuple[ErrorReport, ModelSizeReport]:
    errors = tuple(tuple(o[0] for o in row) for row in outcomes)
    terms = tuple(tuple(o[1] for o in row) for row in outcomes)
    totals = tuple(tuple(o[2] for o in row) for row in outcomes)
    report = ErrorReport(dataset=data.name, algorithm=algorithm, per_run_errors=errors, protocol=protocol)
    return report, ModelSizeReport(per_run_terms=terms, per_run_total_terms=totals)


@logged_stage
@requires_rows
def cross_validate(data: DatasetTable, learner: Learner, k: int = 10, iterations: int = 10,
                   seed: int = 1, n_jobs: int = 1) -> Tuple[ErrorReport, ModelSizeReport]:
    """
    Repeated stratified k-fold cross-validation.

    Args:
        data: Table to evaluate on
        learner: Learner fitted once per fold
        k: Folds per iteration (at least 2)
        iterations: Fresh fold plans drawn
        seed: Master seed
        n_jobs: joblib workers over (iteration, fold) runs

    Returns:
        (ErrorReport, ModelSizeReport) with an iterations x k matrix each

    Raises:
        ValueError: If k < 2 or k exceeds the row count
    """
    if k < 2:
        raise ValueError(f"Cross-validation needs at least 2 folds, got k={k}")
    plans = [stratified_folds(data, k, derive_seed(seed, i)) for i in range(iterations)]
    tasks = []
    for i, plan in enumerate(plans):
        for fold in range(k):
            train = data.subset(plan.train_indices(fold))
            test = data.subset(plan.test_indices(fold))
            tasks.append((train, test, derive_seed(seed, i, fold)))
    flat = Parallel(n_jobs=n_jobs)(
        delayed(_fit_and_score)(learner, train, test, run_seed) for train, test, run_seed in tasks
    )
    outcomes = [flat[i * k:(i + 1) * k] for i in range(iterations)]
    report, sizes = _reports(data, learner.name, "cv", outcomes)
    logger.info(f"{data.name}/{learner.name}: {iterations}x{k} CV mean error {report.mean_error:.4f}")
    return report, sizes


def _holdout_parts(data: DatasetTable, iterations: int, seed: int,
                   train_fraction: float) -> List[Tuple[DatasetTable, DatasetTable]]:
    return [holdout_split(data, train_fraction, derive_seed(seed, i)) for i in range(iterations)]


def _ensemble_run(train: DatasetTable, test: DatasetTable, base_learner: Learner,
                  replicas: int, seed: int) -> RunOutcome:
    model = train_ensemble(train, base_learner, EnsembleParams(replicas=replicas, seed=seed))
    per_member, total = model_size(model)
    return test_error(model, test), per_member, total


@logged_stage
@requires_rows
def evaluate_ensemble(data: DatasetTable, base_learner: Learner, T: int = 10, iterations: int = 10,
                      seed: int = 1, train_fraction: float = 0.7,
                      n_jobs: int = 1) -> Tuple[ErrorReport, ModelSizeReport]:
    """
    Repeated stratified hold-out evaluation of a bagged ensemble.

    Every iteration redraws the split, trains T members on bootstrap replicas
    of the training part and scores the voted predictions on the test part.
    Model size is the per-member mean; the total is kept alongside.

    Returns:
        (ErrorReport, ModelSizeReport) with one run per iteration
    """
    parts = _holdout_parts(data, iterations, seed, train_fraction)
    flat = Parallel(n_jobs=n_jobs)(
        delayed(_ensemble_run)(train, test, base_learner, T, derive_seed(seed, i, 1))
        for i, (train, test) in enumerate(parts)
    )
    report, sizes = _reports(data, "bagged", "holdout", [[o] for o in flat])
    logger.info(f"{data.name}/bagged(T={T}): {iterations} hold-out runs, mean error {report.mean_error:.4f}")
    return report, sizes


@logged_stage
@requires_rows
def holdout_evaluate(data: DatasetTable, learner: Learner, iterations: int = 10, seed: int = 1,
                     train_fraction: float = 0.7, n_jobs: int = 1) -> Tuple[ErrorReport, ModelSizeReport]:
    """
    Repeated stratified hold-out evaluation of any learner.

    Uses the split and learner seeds of evaluate_ensemble, so
    holdout_evaluate(data, BaggedLearner(base, T), ...) reproduces
    evaluate_ensemble(data, base, T, ...) run for run.
    """
    parts = _holdout_parts(data, iterations, seed, train_fraction)
    flat = Parallel(n_jobs=n_jobs)(
        delayed(_fit_and_score)(learner, train, test, derive_seed(seed, i, 1))
        for i, (train, test) in enumerate(parts)
    )
    report, sizes = _reports(data, learner.name, "holdout", [[o] for o in flat])
    logger.info(f"{data.name}/{learner.name}: {iterations} hold-out runs, mean error {report.mean_error:.4f}")
    return report, sizes


def stability_curve(data: DatasetTable, learner: Learner, seed: int = 1, k: int = 10,
                    n_jobs: int = 1) -> StabilityCurve:
    """
    Per-fold test errors of a single k-fold CV run, in fold order.

    The folds are those of the first iteration of cross_validate with the
    same seed, so curves of different learners share their folds.
    """
    report, _ = cross_validate(data, learner, k=k, iterations=1, seed=seed, n_jobs=n_jobs)
    return curve_from_report(report)


def curve_from_report(report: ErrorReport) -> StabilityCurve:
    """Stability curve of the first iteration of a CV report."""
    return StabilityCurve(dataset=report.dataset, algorithm=report.algorithm,
                          per_fold_errors=report.per_run_errors[0])


# not a pytest test
test_error.__test__ = False
