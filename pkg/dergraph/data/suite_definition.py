from enum import Enum
from pathlib import Path
from ruamel.yaml import YAML
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple, Union


"""
Verification suites
-------------------

A suite file is a YAML file with a `checks` key. Its value maps arbitrary
labels (for humans, not used by the parsing code) to check specifications.
A specification is either (a) a "Literal Check", naming a check and the
degrees to run it at, or (b) a "Recursive Check", `defn_path`, pointing to
another suite file whose checks are included.

```yaml
checks:
    exact traces:                # a Literal Check
        check: traces
        degrees: [4, 5, 6]
        k_max: 3
    lemma inequalities:          # a Literal Check over a range of degrees
        check: lemmas
        from: 6
        to: 20
    the slow ones:               # a Recursive Check
        defn_path: slow.yml
```

Check names are

    derangement-identities   D_n identities and cross-checks up to n
    nearest-integer          D_n is the nearest integer to n!/e
    certify                  every non-identity non-derangement of S_n factors
    diameter                 BFS diameter of the graph is 2
    matrix-identity          the distance matrix is 2J - A
    traces                   tr(d^k) matches the spectrum for k <= k_max
    characters               the recurrence matches the character sum
    closed-forms             the closed forms match the recurrence at n
    extremal                 the extremal eigenvalues sit where claimed
    lemmas                   the |η| inequalities hold at n
    sign                     η_λ alternates in sign for λ ⊢ n

`degrees` is a list of integers; `from`, `to` and `k_max` are integers.

Recursive paths can be relative, in which case they're relative to the
directory of the file that includes them. Includes must form a tree: a cycle
is rejected, as is the same literal check reached twice.
"""


class InvalidSuiteDefinitionFile(Exception): ...


class CheckName(Enum):
    DERANGEMENT_IDENTITIES = "derangement-identities"
    NEAREST_INTEGER = "nearest-integer"
    CERTIFY = "certify"
    DIAMETER = "diameter"
    MATRIX_IDENTITY = "matrix-identity"
    TRACES = "traces"
    CHARACTERS = "characters"
    CLOSED_FORMS = "closed-forms"
    EXTREMAL = "extremal"
    LEMMAS = "lemmas"
    SIGN = "sign"


def _as_int(value: Any, key: str) -> int:
    # YAML booleans are ints to isinstance
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidSuiteDefinitionFile(f"'{key}' should hold integers, got {value!r}")
    return value


@dataclass(frozen=True)
class LiteralCheck:
    """
    one check at a list of degrees. Frozen, so duplicates can be found with
    set operations.
    """

    check: CheckName
    degrees: Tuple[int, ...]
    k_max: Optional[int] = None

    @classmethod
    def from_dict(cls, dct: Dict[str, Any]) -> "LiteralCheck":
        if "check" not in dct:
            hint = " ('defn_path' mixed with other keys?)" if "defn_path" in dct else ""
            raise InvalidSuiteDefinitionFile(f"a literal check needs a 'check' key{hint}")

        if unknown := set(dct) - {"check", "degrees", "from", "to", "k_max"}:
            raise InvalidSuiteDefinitionFile(f"unknown keys {sorted(unknown)} in {dct}")

        try:
            check = CheckName(dct["check"])
        except ValueError:
            raise InvalidSuiteDefinitionFile(
                f"unknown check '{dct['check']}'; "
                f"choose from {[c.value for c in CheckName]}"
            )

        if "degrees" in dct:
            if "from" in dct or "to" in dct:
                raise InvalidSuiteDefinitionFile(
                    "give either 'degrees' or 'from'/'to', not both"
                )
            if not isinstance(dct["degrees"], list):
                raise InvalidSuiteDefinitionFile(
                    f"'degrees' should be a list, got {dct['degrees']!r}"
                )
            degrees = tuple(_as_int(n, "degrees") for n in dct["degrees"])
        elif "from" in dct and "to" in dct:
            degrees = tuple(
                range(_as_int(dct["from"], "from"), _as_int(dct["to"], "to") + 1)
            )
        else:
            raise InvalidSuiteDefinitionFile(
                f"check '{check.value}' needs 'degrees' or both 'from' and 'to'"
            )

        if not degrees:
            raise InvalidSuiteDefinitionFile(f"check '{check.value}' has no degrees")

        k_max = dct.get("k_max")
        if k_max is not None and check is not CheckName.TRACES:
            raise InvalidSuiteDefinitionFile("'k_max' only applies to 'traces'")

        return cls(check, degrees, None if k_max is None else _as_int(k_max, "k_max"))

    def to_dict(self) -> Dict[str, Any]:
        dct: Dict[str, Any] = {"check": self.check.value, "degrees": list(self.degrees)}
        if self.k_max is not None:
            dct["k_max"] = self.k_max
        return dct


@dataclass
class SuiteDefinition:
    """
    the flattened suite; its representation on disc is recursive, this isn't
    """

    checks: List[LiteralCheck]

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "SuiteDefinition":
        path = Path(path)
        return cls(cls._load_checks(path, exclude_ymls=[path.resolve()]))

    @staticmethod
    def _read_specs(yml_path: Path) -> List[Dict[str, Any]]:
        with open(yml_path, "r") as f:
            yaml = YAML(typ="safe")
            data = yaml.load(f)

        if not isinstance(data, dict) or "checks" not in data:
            raise InvalidSuiteDefinitionFile(f"missing 'checks' in {yml_path}")
        if not isinstance(data["checks"], dict):
            raise InvalidSuiteDefinitionFile(
                f"'checks' in {yml_path} must map labels to check specifications"
            )
        return list(data["checks"].values())

    @staticmethod
    def _load_checks(yml_path: Path, exclude_ymls: List[Path]) -> List[LiteralCheck]:
        checks: List[LiteralCheck] = []

        for spec in SuiteDefinition._read_specs(yml_path):
            if not isinstance(spec, dict):
                raise InvalidSuiteDefinitionFile(f"invalid spec in {yml_path}: {spec}")

            if "defn_path" in spec:
                if len(spec) != 1:
                    raise InvalidSuiteDefinitionFile(
                        f"'defn_path' can't be combined with other keys: {spec}"
                    )
                new_yml_path = Path(spec["defn_path"])
                if not new_yml_path.is_absolute():
                    new_yml_path = yml_path.parent / new_yml_path
                new_yml_path = new_yml_path.resolve()

                if new_yml_path in exclude_ymls:
                    raise InvalidSuiteDefinitionFile(
                        f"cycle found: {spec['defn_path']} includes itself"
                    )

                child_checks = SuiteDefinition._load_checks(
                    new_yml_path, exclude_ymls=[new_yml_path, *exclude_ymls]
                )
                SuiteDefinition._check_for_duplicates(checks, child_checks)
                checks.extend(child_checks)
            else:
                literal = LiteralCheck.from_dict(spec)
                SuiteDefinition._check_for_duplicates(checks, [literal])
                checks.append(literal)

        return checks

    @staticmethod
    def _check_for_duplicates(
        existing: List[LiteralCheck], new: List[LiteralCheck]
    ) -> None:
        if duplicates := set(existing) & set(new):
            raise InvalidSuiteDefinitionFile(
                f"duplicate checks found: {[d.to_dict() for d in duplicates]}"
            )
