"""
Irreducible characters of S_n by the Murnaghan-Nakayama rule.

Shapes are handled through their beta-numbers (first column hook lengths);
removing a rim hook of size r is moving one beta-number b down to b - r, onto
an unoccupied position, with sign (-1)^(number of beta-numbers strictly
between).

https://en.wikipedia.org/wiki/Murnaghan%E2%80%93Nakayama_rule
"""

import math

from pathlib import Path
from functools import lru_cache
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from dergraph.partitions import Partition, partitions_of
from dergraph.permutations import CycleType, class_size


class SizeMismatch(ValueError): ...


@lru_cache(maxsize=None)
def _murnaghan_nakayama(shape: Tuple[int, ...], cycles: Tuple[int, ...]) -> int:
    """`cycles` is sorted non-increasing, and the largest cycle is stripped first"""
    if not cycles:
        return 1 if not shape else 0

    r, rest = cycles[0], cycles[1:]
    length = len(shape)
    beta = [part + (length - 1 - i) for i, part in enumerate(shape)]
    occupied = set(beta)

    total = 0
    for b in beta:
        moved = b - r
        if moved < 0 or moved in occupied:
            continue
        height = sum(1 for c in beta if moved < c < b)
        new_beta = sorted((occupied - {b}) | {moved}, reverse=True)
        new_shape = tuple(
            p for p in (nb - (length - 1 - i) for i, nb in enumerate(new_beta)) if p > 0
        )
        value = _murnaghan_nakayama(new_shape, rest)
        total += -value if height % 2 else value
    return total


def character(lam: Partition, mu: CycleType) -> int:
    """χ_λ evaluated on the class of cycle type μ"""
    if lam.n != mu.n:
        raise SizeMismatch(f"|{lam}| = {lam.n} but |{mu}| = {mu.n}")
    return _murnaghan_nakayama(lam.parts, tuple(sorted(mu.parts, reverse=True)))


@dataclass(frozen=True)
class CharacterTable:
    """rows are indexed by `partitions` (characters), columns by `classes`"""

    n: int
    partitions: Tuple[Partition, ...]
    classes: Tuple[Partition, ...]
    values: Tuple[Tuple[int, ...], ...]

    @classmethod
    def compute(cls, n: int) -> "CharacterTable":
        shapes = tuple(partitions_of(n))
        return cls(
            n=n,
            partitions=shapes,
            classes=shapes,
            values=tuple(tuple(character(lam, mu) for mu in shapes) for lam in shapes),
        )

    def value(self, lam: Partition, mu: CycleType) -> int:
        return self.values[self.partitions.index(lam)][self.classes.index(mu)]

    def row(self, lam: Partition) -> Tuple[int, ...]:
        return self.values[self.partitions.index(lam)]

    def column(self, mu: CycleType) -> Tuple[int, ...]:
        j = self.classes.index(mu)
        return tuple(row[j] for row in self.values)

    def orthogonality_violations(self) -> List[Tuple[Partition, Partition]]:
        """
        column pairs (μ, ν) breaking sum_λ χ_λ(μ) χ_λ(ν) = δ_{μν} n! / |C_μ|
        """
        violations = []
        n_fact = math.factorial(self.n)
        columns = [self.column(mu) for mu in self.classes]
        for a, mu in enumerate(self.classes):
            for b in range(a, len(self.classes)):
                inner = sum(x * y for x, y in zip(columns[a], columns[b]))
                expected = n_fact // class_size(mu) if a == b else 0
                if inner != expected:
                    violations.append((mu, self.classes[b]))
        return violations


def character_table(
    n: int,
    use_cache: bool = True,
    cache_dir: Optional[Union[str, Path]] = None,
) -> CharacterTable:
    """the character table of S_n, read from and written to the on-disc cache"""
    if not use_cache:
        return CharacterTable.compute(n)

    # lazy-import
    from dergraph.data.character_cache import load_character_table, save_character_table

    table = load_character_table(n, cache_dir)
    if table is None:
        table = CharacterTable.compute(n)
        save_character_table(table, cache_dir)
    return table
