import json

from typing import Any, List, Sequence

from dergraph.characters import CharacterTable
from dergraph.spectra import Extremal, SpectrumEntry


def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """right-aligned plain text columns"""
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def format_spectrum(entries: List[SpectrumEntry]) -> str:
    return format_table(
        ("partition", "eta", "gamma", "multiplicity"),
        [(e.lam.compact(), e.eta, e.gamma, e.multiplicity) for e in entries],
    )


def format_extremal(ext: Extremal) -> str:
    return format_table(
        ("rank", "gamma", "partitions"),
        [
            (rank.replace("_", " "), ev.value, " ".join(p.compact() for p in ev.partitions))
            for rank, ev in ext.ranks().items()
        ],
    )


def extremal_to_dict(ext: Extremal) -> dict:
    return {
        "n": ext.n,
        **{
            rank: {
                "value": str(ev.value),
                "partitions": [list(p.parts) for p in ev.partitions],
            }
            for rank, ev in ext.ranks().items()
        },
    }


def format_character_table(table: CharacterTable) -> str:
    return format_table(
        ["λ \\ μ"] + [mu.compact() for mu in table.classes],
        [[lam.compact(), *table.row(lam)] for lam in table.partitions],
    )


def to_json(obj: Any) -> str:
    return json.dumps(obj, indent=2)
