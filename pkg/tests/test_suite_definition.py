import pytest

from pathlib import Path

from dergraph.data.suite_definition import (
    CheckName,
    LiteralCheck,
    SuiteDefinition,
    InvalidSuiteDefinitionFile,
)


TEST_DIR = Path(__file__).parent
SUITES_PATH = TEST_DIR / "fake-data" / "suites"


TRACES = LiteralCheck(CheckName.TRACES, (4, 5), 3)
LEMMAS = LiteralCheck(CheckName.LEMMAS, (6, 7, 8, 9))


def test_basic_load() -> None:
    """each literal file loads to its checks"""
    assert SuiteDefinition.from_yaml(SUITES_PATH / "literal_traces.yml").checks == [TRACES]
    assert SuiteDefinition.from_yaml(SUITES_PATH / "literal_lemmas.yml").checks == [LEMMAS]
    assert SuiteDefinition.from_yaml(SUITES_PATH / "literal_both.yml").checks == [
        TRACES,
        LEMMAS,
    ]


def test_range_equals_degrees() -> None:
    """from/to is shorthand for the inclusive list of degrees"""
    ranged = LiteralCheck.from_dict({"check": "lemmas", "from": 6, "to": 9})
    listed = LiteralCheck.from_dict({"check": "lemmas", "degrees": [6, 7, 8, 9]})
    assert ranged == listed


def test_recursive_load_0() -> None:
    """
    loading a recursive suite that includes one literal suite
    should be equivalent to loading the literal suite
    """
    literal = SuiteDefinition.from_yaml(SUITES_PATH / "literal_traces.yml")
    recursive = SuiteDefinition.from_yaml(SUITES_PATH / "recursive_traces.yml")
    assert literal == recursive


def test_recursive_load_1() -> None:
    """a recursive and a literal check can share one file"""
    recursive = SuiteDefinition.from_yaml(
        SUITES_PATH / "recursive_traces_literal_lemmas.yml"
    )
    assert recursive.checks == [TRACES, LEMMAS]


def test_recursive_load_2() -> None:
    """should be able to recur more than once"""
    recursive = SuiteDefinition.from_yaml(SUITES_PATH / "recursive_rec.yml")
    literal = SuiteDefinition.from_yaml(SUITES_PATH / "literal_both.yml")
    assert recursive == literal


def test_recursive_cycle() -> None:
    """should detect a cycle, from either end"""
    with pytest.raises(InvalidSuiteDefinitionFile):
        SuiteDefinition.from_yaml(SUITES_PATH / "cycle_1.yml")

    with pytest.raises(InvalidSuiteDefinitionFile):
        SuiteDefinition.from_yaml(SUITES_PATH / "cycle_2.yml")


def test_recursive_cycle_self() -> None:
    with pytest.raises(InvalidSuiteDefinitionFile):
        SuiteDefinition.from_yaml(SUITES_PATH / "cycle_self.yml")


def test_duplicate_checks() -> None:
    """the same literal check reached through an include and directly"""
    with pytest.raises(InvalidSuiteDefinitionFile):
        SuiteDefinition.from_yaml(SUITES_PATH / "duplicate_checks.yml")


@pytest.mark.parametrize(
    "bad_file",
    [
        "unknown_check.yml",
        "bad_keys.yml",
        "mixed_defn_path.yml",
        "degrees_and_range.yml",
        "k_max_misplaced.yml",
        "no_checks.yml",
        "scalar_degrees.yml",
        "non_integer_degrees.yml",
        "string_range.yml",
    ],
)
def test_invalid_files(bad_file) -> None:
    with pytest.raises(InvalidSuiteDefinitionFile):
        SuiteDefinition.from_yaml(SUITES_PATH / bad_file)


def test_literal_check_needs_degrees() -> None:
    with pytest.raises(InvalidSuiteDefinitionFile):
        LiteralCheck.from_dict({"check": "sign"})
    with pytest.raises(InvalidSuiteDefinitionFile):
        LiteralCheck.from_dict({"check": "sign", "from": 4})
    with pytest.raises(InvalidSuiteDefinitionFile):
        LiteralCheck.from_dict({"check": "sign", "from": 6, "to": 4})


def test_to_dict() -> None:
    assert TRACES.to_dict() == {"check": "traces", "degrees": [4, 5], "k_max": 3}
    assert LEMMAS.to_dict() == {"check": "lemmas", "degrees": [6, 7, 8, 9]}
    assert LiteralCheck.from_dict(TRACES.to_dict()) == TRACES


def test_every_check_name_is_loadable() -> None:
    suite = SuiteDefinition.from_yaml(SUITES_PATH / "small.yml")
    assert {c.check for c in suite.checks} == set(CheckName)


@pytest.mark.parametrize(
    "dct",
    [
        {"check": "sign", "degrees": 5},
        {"check": "sign", "degrees": "4"},
        {"check": "sign", "degrees": [4, 5.5]},
        {"check": "sign", "degrees": [True]},
        {"check": "sign", "from": "4", "to": 6},
        {"check": "sign", "from": 4, "to": None},
        {"check": "traces", "degrees": [4], "k_max": "3"},
    ],
)
def test_literal_check_rejects_non_integers(dct) -> None:
    with pytest.raises(InvalidSuiteDefinitionFile):
        LiteralCheck.from_dict(dct)
