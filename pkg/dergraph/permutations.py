"""
Permutations of {1, ..., n} in one-line form.

Products are read right to left: (p * q)(x) = p(q(x)). This is the convention
under which the factorization identities in `dergraph.factorize` hold, e.g.

    (1)(2 3)(4 5) = (1 4 3 5 2) * (1 2 4 3 5)

Text grammar
------------

Cycle notation, `(a b c)(d e)`, with 1-based points separated by spaces or
commas. Cycles must be disjoint, and unlisted points are fixed. The degree is
either given explicitly or inferred as the largest listed point. One-line
notation, `[w(1), w(2), ..., w(n)]`, is also accepted.
"""

import re
import math
import itertools

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from dergraph.partitions import Partition


# a cycle type is a partition of n; its parts equal to 1 are the fixed points
CycleType = Partition

Cycle = Tuple[int, ...]


class InvalidPermutation(ValueError): ...


class DegreeMismatch(ValueError): ...


@dataclass(frozen=True, order=True)
class Permutation:
    image: Tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(self.image)
        object.__setattr__(self, "image", image)
        if len(image) == 0:
            raise InvalidPermutation("a permutation must have positive degree")
        if sorted(image) != list(range(1, len(image) + 1)):
            raise InvalidPermutation(
                f"image {image} is not a bijection of {{1..{len(image)}}}"
            )

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __str__(self) -> str:
        return format_cycles(self)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        image = list(range(1, n + 1))
        seen: set = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= n:
                    raise InvalidPermutation(
                        f"point {point} is outside {{1..{n}}}"
                    )
                if point in seen:
                    raise InvalidPermutation(f"repeated point {point}")
                seen.add(point)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                image[a - 1] = b
        return cls(tuple(image))

    @classmethod
    def from_mapping(cls, mapping: Dict[int, int], n: int) -> "Permutation":
        """points missing from `mapping` are fixed"""
        image = list(range(1, n + 1))
        for a, b in mapping.items():
            image[a - 1] = b
        return cls(tuple(image))

    def is_identity(self) -> bool:
        return all(w == i for i, w in enumerate(self.image, start=1))


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.n != q.n:
        raise DegreeMismatch(f"cannot combine permutations of degree {p.n} and {q.n}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p * q)(x) = p(q(x))"""
    _check_degrees(p, q)
    return Permutation(tuple(p.image[x - 1] for x in q.image))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * w.n
    for i, x in enumerate(w.image, start=1):
        inv[x - 1] = i
    return Permutation(tuple(inv))


def conjugate(w: Permutation, u: Permutation) -> Permutation:
    """u * w * u^-1"""
    return compose(u, compose(w, inverse(u)))


def cycle_decomposition(w: Permutation) -> List[Cycle]:
    """
    disjoint cycles covering {1..n}, fixed points included as 1-cycles.
    Each cycle starts at its minimum and cycles are sorted by minimum.
    """
    seen = [False] * (w.n + 1)
    cycles: List[Cycle] = []
    for start in range(1, w.n + 1):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = w(x)
        cycles.append(tuple(cycle))
    return cycles


def cycle_type(w: Permutation) -> CycleType:
    return Partition.from_list([len(c) for c in cycle_decomposition(w)])


def fixed_points(w: Permutation) -> FrozenSet[int]:
    return frozenset(i for i, x in enumerate(w.image, start=1) if i == x)


def support(w: Permutation) -> FrozenSet[int]:
    """points moved by w"""
    return frozenset(i for i, x in enumerate(w.image, start=1) if i != x)


def is_derangement(w: Permutation) -> bool:
    return all(i != x for i, x in enumerate(w.image, start=1))


def sign(w: Permutation) -> int:
    return -1 if (w.n - len(cycle_decomposition(w))) % 2 else 1


def z_value(mu: CycleType) -> int:
    """z_μ = prod_i i^{m_i} m_i!, the centraliser order of the class"""
    z = 1
    for part, mult in mu.multiplicities():
        z *= part**mult * math.factorial(mult)
    return z


def class_size(mu: CycleType) -> int:
    """|C_μ| = n! / z_μ"""
    size, rem = divmod(math.factorial(mu.n), z_value(mu))
    assert rem == 0
    return size


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in canonical (lexicographic one-line) order"""
    for image in itertools.permutations(range(1, n + 1)):
        yield Permutation(image)


def derangements(n: int) -> Iterator[Permutation]:
    """D_n in canonical order"""
    for w in all_permutations(n):
        if is_derangement(w):
            yield w


_CYCLE_GROUP = re.compile(r"\(([^()]*)\)")
_CYCLE_NOTATION = re.compile(r"\s*(\([^()]*\)\s*)+")
_ONE_LINE = re.compile(r"\s*\[([^\[\]]*)\]\s*")
_SEPARATOR = re.compile(r"[,\s]+")


def _parse_points(text: str, source: str) -> List[int]:
    points = []
    for token in _SEPARATOR.split(text.strip()):
        if token == "":
            continue
        try:
            point = int(token)
        except ValueError:
            raise InvalidPermutation(f"'{token}' is not an integer in '{source}'")
        if point < 1:
            raise InvalidPermutation(f"points are 1-based, got {point} in '{source}'")
        points.append(point)
    return points


def parse_permutation(s: str, n_hint: Optional[int] = None) -> Permutation:
    """
    parse cycle notation `(1 2)(3 6 5 4)` or one-line notation `[2,1,6,3,4,5]`.

    The degree is `n_hint` if given (listed points may not exceed it), else
    the largest listed point.
    """
    if n_hint is not None and n_hint < 1:
        raise InvalidPermutation(f"degree must be positive, got {n_hint}")

    one_line = _ONE_LINE.fullmatch(s)
    if one_line is not None:
        image = _parse_points(one_line.group(1), s)
        if n_hint is not None:
            if n_hint < len(image):
                raise InvalidPermutation(
                    f"'{s}' has {len(image)} entries, more than the degree {n_hint}"
                )
            image += list(range(len(image) + 1, n_hint + 1))
        if not image:
            raise InvalidPermutation(f"cannot infer a degree from '{s}'")
        return Permutation(tuple(image))

    if _CYCLE_NOTATION.fullmatch(s) is None:
        raise InvalidPermutation(
            f"'{s}' is neither cycle notation '(a b c)(d e)' nor one-line '[a,b,...]'"
        )

    cycles = [_parse_points(group, s) for group in _CYCLE_GROUP.findall(s)]
    listed = [p for cycle in cycles for p in cycle]
    repeated = sorted({p for p in listed if listed.count(p) > 1})
    if repeated:
        raise InvalidPermutation(f"repeated point(s) {repeated} in '{s}'")

    if n_hint is not None:
        beyond = [p for p in listed if p > n_hint]
        if beyond:
            raise InvalidPermutation(
                f"point(s) {beyond} in '{s}' exceed the degree {n_hint}"
            )
        n = n_hint
    elif listed:
        n = max(listed)
    else:
        raise InvalidPermutation(f"cannot infer a degree from '{s}'; give n")

    return Permutation.from_cycles(cycles, n)


def format_cycles(w: Permutation, include_fixed: bool = False) -> str:
    """canonical cycle notation; the identity without fixed points is '()'"""
    cycles = [
        c for c in cycle_decomposition(w) if include_fixed or len(c) > 1
    ]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)


def format_one_line(w: Permutation) -> str:
    return "[" + ",".join(str(x) for x in w.image) + "]"
