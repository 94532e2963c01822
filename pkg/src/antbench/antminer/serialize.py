"""
Plain-text rule-list format.

    # colony_sizes=41,17
    IF petal_length < 2.45 THEN setosa (q=1.0)
    IF petal_width >= 1.75 AND sepal_length >= 5.95 THEN virginica (q=0.87...)
    DEFAULT versicolor

Thresholds and qualities are written with repr() so a model read back is
equal to the one written.
"""

import logging
import re
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from ..models import EQ, GE, LT, AttributeSpec, Rule, RuleListModel, Term

logger = logging.getLogger(__name__)

RULE_PATTERN = re.compile(r"^IF (?P<antecedent>.+) THEN (?P<label>.+) \(q=(?P<quality>[^)]+)\)$")
COLONY_PREFIX = "# colony_sizes="
OPERATORS = (GE, LT, EQ)


def dump_rule(rule: Rule) -> str:
    return f"{rule} (q={rule.quality!r})"


def dump_rule_list(model: RuleListModel) -> str:
    lines: List[str] = []
    if model.colony_sizes:
        lines.append(COLONY_PREFIX + ",".join(str(s) for s in model.colony_sizes))
    lines.extend(dump_rule(rule) for rule in model.rules)
    lines.append(f"DEFAULT {model.default_class}")
    return "\n".join(lines) + "\n"


def _parse_term(text: str, schema: Sequence[AttributeSpec]) -> Term:
    # longest names first so 'a b' wins over 'a'
    for index, spec in sorted(enumerate(schema), key=lambda item: -len(item[1].name)):
        prefix = spec.name + " "
        if not text.startswith(prefix):
            continue
        operator, _, raw = text[len(prefix):].partition(" ")
        if operator not in OPERATORS:
            raise ValueError(f"Unknown operator '{operator}' in term '{text}'")
        value = raw if operator == EQ else float(raw)
        return Term(spec, index, operator, value)
    raise ValueError(f"Term '{text}' does not name a schema attribute")


def parse_rule(line: str, schema: Sequence[AttributeSpec], class_attribute: AttributeSpec) -> Rule:
    match = RULE_PATTERN.match(line.strip())
    if match is None:
        raise ValueError(f"Malformed rule line: '{line.strip()}'")
    antecedent = match.group("antecedent")
    terms: Tuple[Term, ...] = ()
    if antecedent != "TRUE":
        terms = tuple(_parse_term(part, schema) for part in antecedent.split(" AND "))
    label = match.group("label")
    class_attribute.code(label)
    return Rule(terms=terms, predicted_class=label, quality=float(match.group("quality")))


def parse_rule_list(text: str, schema: Sequence[AttributeSpec],
                    class_attribute: AttributeSpec) -> RuleListModel:
    """
    Read a rule list written by dump_rule_list.

    Raises:
        ValueError: On malformed lines, unknown attributes or labels, or a
            missing DEFAULT line
    """
    rules: List[Rule] = []
    colony_sizes: Tuple[int, ...] = ()
    default = None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith(COLONY_PREFIX):
            colony_sizes = tuple(int(s) for s in stripped[len(COLONY_PREFIX):].split(",") if s)
        elif stripped.startswith("#"):
            continue
        elif default is not None:
            raise ValueError(f"Line {number}: content after the DEFAULT line")
        elif stripped.startswith("DEFAULT "):
            default = stripped[len("DEFAULT "):]
            class_attribute.code(default)
        else:
            try:
                rules.append(parse_rule(stripped, schema, class_attribute))
            except ValueError as e:
                raise ValueError(f"Line {number}: {e}") from None
    if default is None:
        raise ValueError("Rule list has no DEFAULT line")
    return RuleListModel(
        rules=tuple(rules),
        default_class=default,
        schema=tuple(schema),
        class_attribute=class_attribute,
        colony_sizes=colony_sizes,
    )


def save_rule_list(model: RuleListModel, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_rule_list(model), encoding="utf-8")


def load_rule_list(path: Union[str, Path], schema: Sequence[AttributeSpec],
                   class_attribute: AttributeSpec) -> RuleListModel:
    return parse_rule_list(Path(path).read_text(encoding="utf-8"), schema, class_attribute)
