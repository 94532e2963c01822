"""
Ensemble manifest: a header with T, the master seed and the training priors,
followed by the T member rule lists, each introduced by a separator line.
"""

import logging
from pathlib import Path
from typing import List, Sequence, Union

from ..antminer.serialize import dump_rule_list, parse_rule_list
from ..models import AttributeSpec, RuleListModel
from .bagging import EnsembleModel

logger = logging.getLogger(__name__)

HEADER = "# antbench ensemble"
SEPARATOR = "--- member "


def dump_ensemble(model: EnsembleModel) -> str:
    """
    Render an ensemble of rule-list members.

    Raises:
        TypeError: If a member is not a RuleListModel
    """
    lines = [
        HEADER,
        f"replicas={len(model)}",
        f"master_seed={model.master_seed}",
        "priors=" + ",".join(repr(p) for p in model.training_priors),
    ]
    for t, member in enumerate(model.members):
        if not isinstance(member, RuleListModel):
            raise TypeError(f"Member {t} is a {type(member).__name__}, only rule lists can be serialized")
        lines.append(f"{SEPARATOR}{t}")
        lines.append(dump_rule_list(member).rstrip("\n"))
    return "\n".join(lines) + "\n"


def parse_ensemble(text: str, schema: Sequence[AttributeSpec],
                   class_attribute: AttributeSpec) -> EnsembleModel:
    """
    Read a manifest written by dump_ensemble.

    Raises:
        ValueError: On a malformed header or a member count differing from T
    """
    header, *chunks = text.split(f"\n{SEPARATOR}")
    fields = {}
    for line in header.splitlines():
        if line.startswith("#") or not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"Malformed manifest header line: '{line}'")
        fields[key.strip()] = value.strip()
    missing = [k for k in ("replicas", "master_seed", "priors") if k not in fields]
    if missing:
        raise ValueError(f"Manifest header lacks: {', '.join(missing)}")

    members: List[RuleListModel] = []
    for chunk in chunks:
        _, _, body = chunk.partition("\n")
        members.append(parse_rule_list(body, schema, class_attribute))
    if len(members) != int(fields["replicas"]):
        raise ValueError(f"Manifest declares {fields['replicas']} replicas but holds {len(members)}")
    return EnsembleModel(
        members=tuple(members),
        class_domain=class_attribute.domain,
        training_priors=tuple(float(p) for p in fields["priors"].split(",")),
        master_seed=int(fields["master_seed"]),
        schema=tuple(schema),
        class_attribute=class_attribute,
    )


def save_ensemble(model: EnsembleModel, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_ensemble(model), encoding="utf-8")


def load_ensemble(path: Union[str, Path], schema: Sequence[AttributeSpec],
                  class_attribute: AttributeSpec) -> EnsembleModel:
    return parse_ensemble(Path(path).read_text(encoding="utf-8"), schema, class_attribute)
