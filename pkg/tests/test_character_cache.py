import json

import pytest

from dergraph.characters import CharacterTable, character_table
from dergraph.data.character_cache import (
    InvalidCharacterCacheFile,
    cache_dir,
    cache_path,
    check_character_table,
    table_from_dict,
    table_to_dict,
    load_character_table,
    save_character_table,
)


def test_cache_dir_from_env(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("DERGRAPH_CACHE_DIR", str(tmp_path))
    assert cache_dir() == tmp_path
    assert cache_path(5) == tmp_path / "character_table_5.json"
    assert cache_dir(tmp_path / "other") == tmp_path / "other"


def test_save_then_load(tmp_path) -> None:
    table = CharacterTable.compute(5)
    path = save_character_table(table, tmp_path)
    assert path == tmp_path / "character_table_5.json"
    assert load_character_table(5, tmp_path) == table
    # nothing left behind from the write
    assert [p.name for p in tmp_path.iterdir()] == ["character_table_5.json"]


def test_load_missing_is_none(tmp_path) -> None:
    assert load_character_table(4, tmp_path) is None


def test_corrupt_file_warns(tmp_path) -> None:
    cache_path(4, tmp_path).write_text("{ not json")
    with pytest.warns(UserWarning):
        assert load_character_table(4, tmp_path) is None


def test_wrong_degree_warns(tmp_path) -> None:
    dct = table_to_dict(CharacterTable.compute(3))
    cache_path(4, tmp_path).write_text(json.dumps(dct))
    with pytest.warns(UserWarning):
        assert load_character_table(4, tmp_path) is None


def test_character_table_recomputes_corrupt_cache(tmp_path) -> None:
    cache_path(4, tmp_path).write_text("[]")
    with pytest.warns(UserWarning):
        table = character_table(4, cache_dir=tmp_path)
    assert table == CharacterTable.compute(4)
    assert load_character_table(4, tmp_path) == table


def test_character_table_without_cache(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("DERGRAPH_CACHE_DIR", str(tmp_path))
    assert character_table(4, use_cache=False) == CharacterTable.compute(4)
    assert list(tmp_path.iterdir()) == []


def test_values_are_strings() -> None:
    dct = table_to_dict(CharacterTable.compute(4))
    assert dct["partitions"][0] == [4]
    assert all(isinstance(v, str) for row in dct["values"] for v in row)


@pytest.mark.parametrize(
    "dct",
    [
        {"n": 2},
        {"n": "four", "classes": [], "partitions": [], "values": []},
        {"n": True, "classes": [[1]], "partitions": [[1]], "values": [["1"]]},
        {"n": 2, "classes": 5, "partitions": [[2], [1, 1]], "values": []},
        {"n": 2, "classes": [[2], [1, 1]], "partitions": [[2], [1, 1]], "values": [["1"]]},
        {"n": 2, "classes": [[2], [1, 1]], "partitions": [[1, 2], [2]], "values": []},
        {"n": 3, "classes": [[2], [1, 1]], "partitions": [[2], [1, 1]], "values": []},
        {
            "n": 2,
            "classes": [[2], [1, 1]],
            "partitions": [[2], [1, 1]],
            "values": [["1", "x"], ["1", "1"]],
        },
    ],
)
def test_table_from_dict_rejects(dct) -> None:
    with pytest.raises(InvalidCharacterCacheFile):
        table_from_dict(dct)


@pytest.mark.parametrize("payload", [5, '"table"', "null", "[[4]]"])
def test_table_from_dict_rejects_non_objects(payload) -> None:
    with pytest.raises(InvalidCharacterCacheFile):
        table_from_dict(json.loads(str(payload)))


@pytest.mark.parametrize(
    "payload",
    ["5", '{"n": "four", "classes": [], "partitions": [], "values": []}'],
)
def test_character_table_recomputes_malformed_json(tmp_path, payload) -> None:
    cache_path(4, tmp_path).write_text(payload)
    with pytest.warns(UserWarning):
        assert load_character_table(4, tmp_path) is None
    with pytest.warns(UserWarning):
        table = character_table(4, cache_dir=tmp_path)
    assert table == CharacterTable.compute(4)
    assert load_character_table(4, tmp_path) == table


def _tampered(n: int, i: int, j: int, value: str) -> dict:
    dct = table_to_dict(CharacterTable.compute(n))
    dct["values"][i][j] = value
    return dct


@pytest.mark.parametrize(
    "dct",
    [
        # f_(4) is 1, not 7
        _tampered(4, 0, -1, "7"),
        # the identity column is right, the (4) column isn't orthogonal to the rest
        _tampered(4, 0, 0, "7"),
        # rows out of order
        {
            **table_to_dict(CharacterTable.compute(4)),
            "partitions": [[1, 1, 1, 1], [2, 1, 1], [2, 2], [3, 1], [4]],
        },
    ],
)
def test_check_character_table_rejects(dct) -> None:
    table = table_from_dict(dct)
    with pytest.raises(InvalidCharacterCacheFile):
        check_character_table(table, 4)


def test_check_character_table_accepts_computed() -> None:
    for n in range(1, 7):
        check_character_table(CharacterTable.compute(n), n)


def test_character_table_recomputes_tampered_cache(tmp_path) -> None:
    cache_path(4, tmp_path).write_text(json.dumps(_tampered(4, 0, 0, "7")))
    with pytest.warns(UserWarning, match="orthogonal"):
        table = character_table(4, cache_dir=tmp_path)
    assert table == CharacterTable.compute(4)
    assert table.value(table.partitions[0], table.classes[0]) == 1
    assert load_character_table(4, tmp_path) == table
