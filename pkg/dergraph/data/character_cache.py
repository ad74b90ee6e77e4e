import os
import json
import warnings

from pathlib import Path
from typing import Any, Dict, Optional, Union

from dergraph.partitions import Partition, InvalidPartition, dim_f, partitions_of
from dergraph.characters import CharacterTable
from dergraph.utils.default_params import DefaultParams as dp


"""
Character table cache
---------------------

One JSON file per degree, `character_table_<n>.json`, in the directory named
by the environment variable DERGRAPH_CACHE_DIR (default `./.dergraph-cache`).

```json
{
    "n": 4,
    "classes": [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]],
    "partitions": [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]],
    "values": [["1", "1", "1", "1", "1"], ...]
}
```

`values` is row-major, one row per partition, one column per class. Values
are decimal strings, so no reader loses precision on large entries.

A file that can't be read, or that disagrees with the degree it's named for,
is reported with a warning and recomputed. So is a table whose rows and
columns aren't the partitions of n in order, whose identity column isn't f_λ,
or whose columns aren't orthogonal.
"""

PathLike = Union[str, Path]


class InvalidCharacterCacheFile(Exception): ...


def cache_dir(override: Optional[PathLike] = None) -> Path:
    if override is not None:
        return Path(override)
    return Path(os.getenv(dp.CACHE_ENV_VAR, dp.CACHE_DIR))


def cache_path(n: int, directory: Optional[PathLike] = None) -> Path:
    return cache_dir(directory) / f"character_table_{n}.json"


def table_to_dict(table: CharacterTable) -> Dict[str, Any]:
    return {
        "n": table.n,
        "classes": [list(mu.parts) for mu in table.classes],
        "partitions": [list(lam.parts) for lam in table.partitions],
        "values": [[str(v) for v in row] for row in table.values],
    }


def table_from_dict(dct: Any) -> CharacterTable:
    if not isinstance(dct, dict):
        raise InvalidCharacterCacheFile(
            f"expected a JSON object, got {type(dct).__name__}"
        )
    missing = {"n", "classes", "partitions", "values"} - set(dct)
    if missing:
        raise InvalidCharacterCacheFile(f"missing keys {sorted(missing)}")

    try:
        n = dct["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValueError(f"n must be a non-negative integer, got {n!r}")
        partitions = tuple(Partition(tuple(p)) for p in dct["partitions"])
        classes = tuple(Partition(tuple(p)) for p in dct["classes"])
        values = tuple(tuple(int(v) for v in row) for row in dct["values"])
    except (InvalidPartition, TypeError, ValueError, KeyError) as e:
        raise InvalidCharacterCacheFile(f"malformed entry: {e}") from e

    if any(p.n != n for p in partitions + classes):
        raise InvalidCharacterCacheFile(f"partition sizes don't match n = {n}")
    if len(values) != len(partitions) or any(len(r) != len(classes) for r in values):
        raise InvalidCharacterCacheFile(
            f"values should be {len(partitions)} x {len(classes)}"
        )

    return CharacterTable(n=n, partitions=partitions, classes=classes, values=values)


def check_character_table(table: CharacterTable, n: int) -> None:
    """
    a table read from disc must be the table of S_n: every partition of n as
    rows and columns, f_λ on the identity class, orthogonal columns
    """
    if table.n != n:
        raise InvalidCharacterCacheFile(f"it holds n={table.n}, not n={n}")

    shapes = tuple(partitions_of(n))
    if table.partitions != shapes or table.classes != shapes:
        raise InvalidCharacterCacheFile(f"rows and columns aren't the partitions of {n}")

    identity_class = Partition((1,) * n)
    if wrong := [
        lam for lam in shapes if table.value(lam, identity_class) != dim_f(lam)
    ]:
        raise InvalidCharacterCacheFile(
            f"degrees disagree with the hook length formula at {wrong[0].compact()}"
        )

    if violations := table.orthogonality_violations():
        mu, nu = violations[0]
        raise InvalidCharacterCacheFile(
            f"columns {mu.compact()} and {nu.compact()} aren't orthogonal"
        )


def load_character_table(
    n: int, directory: Optional[PathLike] = None
) -> Optional[CharacterTable]:
    path = cache_path(n, directory)
    if not path.exists():
        return None

    try:
        with open(path, "r") as f:
            table = table_from_dict(json.load(f))
        check_character_table(table, n)
    except (
        OSError,
        UnicodeDecodeError,
        json.JSONDecodeError,
        InvalidCharacterCacheFile,
    ) as e:
        warnings.warn(f"ignoring character table cache {path}: {e}")
        return None

    return table


def save_character_table(
    table: CharacterTable, directory: Optional[PathLike] = None
) -> Optional[Path]:
    path = cache_path(table.n, directory)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        # readers see either the old file or the new one
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        with open(tmp, "w") as f:
            json.dump(table_to_dict(table), f, indent=4)
        tmp.replace(path)
    except OSError as e:
        warnings.warn(f"could not write character table cache {path}: {e}")
        return None
    return path
