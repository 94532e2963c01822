"""
Configuration management for antbench.

This module provides the learner parameter sets, the experiment
configuration with YAML file support, named profiles, and the precedence
rules used by the command line (flags > config file > profile > defaults).
"""

import logging
import os
from dataclasses import asdict, dataclass, field, fields, replace
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import yaml

from .validators import BenchValidator

logger = logging.getLogger(__name__)

DATA_DIR_ENV = "ANTBENCH_DATA_DIR"

ALGORITHMS = ("antminer", "bagged", "both")
PROTOCOLS = ("auto", "cv", "holdout", "stability")

# Values applied on top of the dataclass defaults before the config file.
PROFILES: Dict[str, Dict[str, Any]] = {
    "paper": {"iterations": 10, "antminer": {"num_ants": 3000}},
    "desk": {"iterations": 3, "antminer": {"num_ants": 200}},
}


def get_default_config_path() -> Path:
    """Get the default config file path."""
    return Path.home() / '.antbench' / 'config.yaml'


def get_data_directory() -> Optional[Path]:
    """Directory named by ANTBENCH_DATA_DIR, if set."""
    value = os.environ.get(DATA_DIR_ENV)
    return Path(value).expanduser() if value else None


def get_template_config() -> str:
    """
    Get the template config content from package data.

    Returns:
        Template config.yaml content as string
    """
    try:
        return resources.files('antbench').joinpath('config.yaml.example').read_text()
    except (FileNotFoundError, TypeError, ModuleNotFoundError, AttributeError):
        template_path = Path(__file__).parent / 'config.yaml.example'
        if template_path.exists():
            return template_path.read_text()
        return yaml.dump(ExperimentConfig().to_dict(), default_flow_style=False, sort_keys=False)


def ensure_config_exists(config_path: Optional[Path] = None) -> Path:
    """
    Ensure config.yaml exists, creating it from the template if needed.

    Args:
        config_path: Path to config file. If None, uses default.

    Returns:
        Path to the config file
    """
    if config_path is None:
        config_path = get_default_config_path()
    config_path.parent.mkdir(parents=True, exist_ok=True)
    if not config_path.exists():
        config_path.write_text(get_template_config())
    return config_path


@dataclass(frozen=True)
class AntMinerParams:
    """
    Parameters of the base ant-colony rule learner.

    Attributes:
        num_ants: Rule constructions per colony
        min_covered_per_rule: Minimum training rows a rule must cover
        max_uncovered: Stop once this many rows or fewer remain uncovered
        convergence_rules: Stop a colony after this many identical rules in a row
        heuristic_exponent: beta, weight of the heuristic in vertex selection
        pheromone_exponent: alpha, weight of the pheromone in vertex selection
        evaporation_factor: Multiplier applied to trails outside the reinforced rule
    """
    num_ants: int = 3000
    min_covered_per_rule: int = 5
    max_uncovered: int = 10
    convergence_rules: int = 10
    heuristic_exponent: float = 1.0
    pheromone_exponent: float = 1.0
    evaporation_factor: float = 0.9

    def __post_init__(self) -> None:
        BenchValidator.validate_positive_int("num_ants", self.num_ants)
        BenchValidator.validate_positive_int("min_covered_per_rule", self.min_covered_per_rule)
        BenchValidator.validate_positive_int("max_uncovered", self.max_uncovered)
        BenchValidator.validate_positive_int("convergence_rules", self.convergence_rules)
        BenchValidator.validate_non_negative("heuristic_exponent", self.heuristic_exponent)
        BenchValidator.validate_non_negative("pheromone_exponent", self.pheromone_exponent)
        BenchValidator.validate_open_unit("evaporation_factor", self.evaporation_factor)


@dataclass(frozen=True)
class EnsembleParams:
    """
    Bagging parameters.

    Attributes:
        replicas: Number of bootstrap replicas T
        seed: Master seed from which replica seeds are derived
    """
    replicas: int = 10
    seed: int = 1

    def __post_init__(self) -> None:
        BenchValidator.validate_positive_int("replicas", self.replicas)
        BenchValidator.validate_seed(self.seed)


@dataclass
class ExperimentConfig:
    """
    Configuration of a batch of experiments.

    Attributes:
        datasets: Dataset paths, or names resolved in ANTBENCH_DATA_DIR
        algorithm: 'antminer', 'bagged' or 'both'
        protocol: 'auto' picks cv for antminer and holdout for bagged
        folds: Cross-validation folds
        iterations: Repetitions of the protocol
        train_fraction: Training share of the hold-out split
        seed: Master seed
        alpha: Significance level for statistics
        output_dir: Where report files are written
        workers: Worker processes for folds and replicas (1 = sequential)
        profile: Name of the applied profile
        antminer: Base learner parameters
        ensemble: Bagging parameters; only 'replicas' is configurable, replica
            seeds are derived from 'seed' for every iteration
    """
    datasets: List[str] = field(default_factory=list)
    algorithm: str = "antminer"
    protocol: str = "auto"
    folds: int = 10
    iterations: int = 10
    train_fraction: float = 0.7
    seed: int = 1
    alpha: float = 0.05
    output_dir: str = "results"
    workers: int = 1
    profile: str = "paper"
    antminer: AntMinerParams = field(default_factory=AntMinerParams)
    ensemble: EnsembleParams = field(default_factory=EnsembleParams)

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        BenchValidator.validate_choice("algorithm", self.algorithm, ALGORITHMS)
        BenchValidator.validate_choice("protocol", self.protocol, PROTOCOLS)
        BenchValidator.validate_choice("profile", self.profile, PROFILES)
        BenchValidator.validate_positive_int("folds", self.folds)
        BenchValidator.validate_positive_int("iterations", self.iterations)
        BenchValidator.validate_open_unit("train_fraction", self.train_fraction)
        BenchValidator.validate_seed(self.seed)
        BenchValidator.validate_alpha(self.alpha)
        BenchValidator.validate_positive_int("workers", self.workers)

    @classmethod
    def build(
        cls,
        file_data: Optional[Mapping[str, Any]] = None,
        overrides: Optional[Mapping[str, Any]] = None,
    ) -> 'ExperimentConfig':
        """
        Assemble a configuration with flags > file > profile > defaults.

        Args:
            file_data: Mapping loaded from a YAML config file
            overrides: Non-None command-line values; nested learner keys use
                the same shape as the file ({'antminer': {'num_ants': 50}})

        Returns:
            ExperimentConfig with every layer applied

        Raises:
            ValueError: On unknown keys or invalid values
        """
        file_data = dict(file_data or {})
        overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
        profile = overrides.get("profile") or file_data.get("profile") or "paper"
        BenchValidator.validate_choice("profile", profile, PROFILES)

        merged: Dict[str, Any] = {"profile": profile}
        for layer in (PROFILES[profile], file_data, overrides):
            _merge(merged, layer)
        return cls.from_dict(merged)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'ExperimentConfig':
        data = dict(data)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}")
        antminer = _nested(AntMinerParams, data.pop("antminer", None), "antminer")
        ensemble_data = data.pop("ensemble", None)
        if isinstance(ensemble_data, Mapping) and "seed" in ensemble_data:
            raise ValueError("'ensemble.seed' is not configurable; replica seeds derive from 'seed'")
        ensemble = _nested(EnsembleParams, ensemble_data, "ensemble")
        if "datasets" in data and data["datasets"] is not None:
            data["datasets"] = [str(d) for d in data["datasets"]]
        return cls(**data, antminer=antminer, ensemble=ensemble)

    @classmethod
    def load_from_yaml(
        cls,
        config_path: Optional[Path] = None,
        overrides: Optional[Mapping[str, Any]] = None,
    ) -> 'ExperimentConfig':
        """
        Load configuration from a YAML file and apply overrides.

        Args:
            config_path: Path to config file. If None, uses the default path
                when it exists and plain defaults otherwise.
            overrides: Command-line values taking precedence over the file

        Returns:
            ExperimentConfig instance

        Raises:
            ValueError: If the file is not a YAML mapping or holds invalid values
        """
        explicit = config_path is not None
        if config_path is None:
            config_path = get_default_config_path()
        if not config_path.exists():
            if explicit:
                raise FileNotFoundError(f"Config file not found: {config_path}")
            return cls.build(None, overrides)

        with open(config_path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"Config file {config_path} must contain a mapping")
        logger.info(f"Loaded configuration from {config_path}")
        return cls.build(data, overrides)

    def save_to_yaml(self, config_path: Optional[Path] = None) -> None:
        """
        Save configuration to YAML file.

        Args:
            config_path: Path to config file. If None, uses ~/.antbench/config.yaml
        """
        if config_path is None:
            config_path = get_default_config_path()
        config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(config_path, 'w', encoding='utf-8') as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, sort_keys=False)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        del data["ensemble"]["seed"]
        return data

    def with_seed(self, seed: int) -> 'ExperimentConfig':
        return replace(self, seed=seed)

    def describe(self) -> str:
        """
        Stable one-line rendering of every setting that affects results.

        Dataset paths, output directory and worker count are excluded so two
        runs of the same experiment embed the same string.
        """
        flat = _flatten(self.to_dict())
        for key in ("datasets", "output_dir", "workers"):
            flat.pop(key, None)
        return ";".join(f"{key}={flat[key]}" for key in sorted(flat))


def _merge(target: Dict[str, Any], layer: Mapping[str, Any]) -> None:
    for key, value in layer.items():
        if isinstance(value, Mapping):
            nested = target.setdefault(key, {})
            if not isinstance(nested, dict):
                raise ValueError(f"Configuration key '{key}' must be a mapping")
            _merge(nested, value)
        else:
            target[key] = value


def _nested(cls, data: Optional[Mapping[str, Any]], section: str):
    if data is None:
        return cls()
    if not isinstance(data, Mapping):
        raise ValueError(f"Configuration section '{section}' must be a mapping")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValueError(f"Unknown keys in '{section}': {', '.join(unknown)}")
    return cls(**data)


def _flatten(data: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(_flatten(value, f"{name}."))
        else:
            flat[name] = value
    return flat
