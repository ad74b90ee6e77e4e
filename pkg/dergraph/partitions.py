import math

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterator, List, Tuple, Sequence


class InvalidPartition(ValueError): ...


@total_ordering
@dataclass(frozen=True)
class Partition:
    """
    A weakly decreasing tuple of positive integers. Partitions index the
    irreducible characters of S_n, and (as cycle types) its conjugacy classes.

    Ordering is reverse-lexicographic within a size, so that `(n)` sorts first
    and `(1^n)` sorts last - the same order `partitions_of` produces.
    """

    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(not isinstance(p, int) or p <= 0 for p in parts):
            raise InvalidPartition(f"parts must be positive integers, got {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidPartition(f"parts must be non-increasing, got {parts}")

    @classmethod
    def from_list(cls, lst: Sequence[int]) -> "Partition":
        """accepts parts in any order, drops zeros"""
        return cls(tuple(sorted((int(p) for p in lst if p != 0), reverse=True)))

    @classmethod
    def empty(cls) -> "Partition":
        return cls(())

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, idx: int) -> int:
        return self.parts[idx]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        # reverse-lexicographic, larger first parts sort first
        return (-self.n, self.parts) > (-other.n, other.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def count(self, part: int) -> int:
        return self.parts.count(part)

    def multiplicities(self) -> List[Tuple[int, int]]:
        """(part, multiplicity) pairs, largest part first"""
        counts: List[Tuple[int, int]] = []
        for p in self.parts:
            if counts and counts[-1][0] == p:
                counts[-1] = (p, counts[-1][1] + 1)
            else:
                counts.append((p, 1))
        return counts

    def compact(self) -> str:
        """exponential notation, e.g. (4,1^2) or (2^3)"""
        if not self.parts:
            return "()"
        chunks = [f"{p}" if m == 1 else f"{p}^{m}" for p, m in self.multiplicities()]
        return "(" + ",".join(chunks) + ")"

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(
            tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))
        )

    def principal_hook_size(self) -> int:
        """h = λ_1 + ℓ(λ) - 1, the number of cells in the hook of the corner cell"""
        if not self.parts:
            raise InvalidPartition("the empty partition has no principal hook")
        return self.parts[0] + self.length - 1

    def remove_principal_hook(self) -> "Partition":
        """delete the first row and the first column: (λ_2 - 1, λ_3 - 1, ...)"""
        if not self.parts:
            raise InvalidPartition("the empty partition has no principal hook")
        return Partition.from_list([p - 1 for p in self.parts[1:]])

    def remove_first_column(self) -> "Partition":
        """λ - 1 = (λ_1 - 1, λ_2 - 1, ...)"""
        if not self.parts:
            raise InvalidPartition("the empty partition has no first column")
        return Partition.from_list([p - 1 for p in self.parts])

    def add_first_column(self, length: int) -> "Partition":
        """inverse of remove_first_column when `length` >= ℓ(λ)"""
        if length < self.length:
            raise InvalidPartition(
                f"a column of length {length} cannot be prepended to {self}"
            )
        padded = list(self.parts) + [0] * (length - self.length)
        return Partition(tuple(p + 1 for p in padded))

    def hook_lengths(self) -> List[List[int]]:
        conj = self.conjugate()
        return [
            [
                (row_len - j - 1) + (conj.parts[j] - i - 1) + 1
                for j in range(row_len)
            ]
            for i, row_len in enumerate(self.parts)
        ]

    def is_hook(self) -> bool:
        """shape (n - i, 1^i)"""
        return self.length <= 1 or self.parts[1] == 1

    def is_near_hook(self) -> bool:
        """shape (n - 2 - i, 2, 1^i)"""
        return (
            self.length >= 2
            and self.parts[1] == 2
            and all(p == 1 for p in self.parts[2:])
        )


def partitions_of(n: int) -> List[Partition]:
    """every partition of n exactly once, in reverse-lexicographic order"""
    if n < 0:
        raise InvalidPartition(f"cannot partition a negative number ({n})")
    return [Partition(p) for p in _descending_parts(n, n)]


def _descending_parts(n: int, max_part: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _descending_parts(n - first, first):
            yield (first,) + rest


def dim_f(lam: Partition) -> int:
    """
    number of standard Young tableaux of shape λ, i.e. χ_λ(1), by the hook
    length formula. f_∅ = 1.
    """
    denominator = 1
    for row in lam.hook_lengths():
        for h in row:
            denominator *= h
    d, rem = divmod(math.factorial(lam.n), denominator)
    assert rem == 0, f"hook product does not divide {lam.n}! for {lam}"
    return d
