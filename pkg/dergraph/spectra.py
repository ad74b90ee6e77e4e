"""
Distance spectrum of the derangement graph.

The derangement graph is a normal Cayley graph, so its adjacency eigenvalue
on the isotypic component of χ_λ is

    η_λ = (1/f_λ) sum_{μ ⊢ n, no part 1} |C_μ| χ_λ(μ)

with multiplicity f_λ^2. For n >= 4 the graph has diameter two and the
distance matrix is 2J - A, whence the distance eigenvalues

    γ_(n) = 2(n! - 1) - D_n,    γ_λ = -2 - η_λ otherwise.

η_λ is computed by the recurrence

    η_∅ = 1,    η_λ = (-1)^h (η_{λ-h} + (-1)^{λ_1} h η_{λ-1})

where h is the size of the principal hook, λ-h is λ without its principal
hook and λ-1 is λ without its first column. The character sum is kept as an
independent cross-check.
"""

import math

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from dergraph.characters import character
from dergraph.derangements import derangement_count
from dergraph.factorize import UnsupportedDegree
from dergraph.partitions import Partition, dim_f, partitions_of
from dergraph.permutations import class_size


class ClosedFormRangeError(ValueError): ...


class ClosedForm(Enum):
    HOOK = "hook"
    NEAR_HOOK = "near-hook"
    TWO_ROW_2 = "two-row-2"
    TWO_ROW_3 = "two-row-3"


@lru_cache(maxsize=None)
def eta(lam: Partition) -> int:
    if not lam.parts:
        return 1
    h = lam.principal_hook_size()
    inner = eta(lam.remove_principal_hook()) + (-1) ** lam[0] * h * eta(
        lam.remove_first_column()
    )
    return (-1) ** h * inner


def closed_form_partition(family: ClosedForm, n: int, i: Optional[int] = None) -> Partition:
    """the partition whose η `eta_closed_form(family, n, i)` evaluates"""
    _check_closed_form_range(family, n, i)
    if family is ClosedForm.HOOK:
        assert i is not None
        return Partition.from_list([n - 1 - i]).add_first_column(i + 1)
    if family is ClosedForm.NEAR_HOOK:
        assert i is not None
        return Partition.from_list([n - 3 - i, 1]).add_first_column(i + 2)
    if family is ClosedForm.TWO_ROW_2:
        return Partition((n - 2, 2))
    return Partition((n - 3, 3))


def closed_form_of(lam: Partition) -> Optional[Tuple[ClosedForm, Optional[int]]]:
    """the (family, i) with closed_form_partition(family, n, i) == λ, if any"""
    n = lam.n
    if lam.is_hook() and lam.length >= 2:
        return ClosedForm.HOOK, lam.length - 1
    if lam.is_near_hook():
        if lam.length == 2:
            return ClosedForm.TWO_ROW_2, None
        return ClosedForm.NEAR_HOOK, lam.length - 2
    if lam.length == 2 and lam[1] == 3 and n >= 6:
        return ClosedForm.TWO_ROW_3, None
    return None


def closed_form_violations(n: int) -> List[str]:
    """partitions of n whose closed form disagrees with the recurrence"""
    violations = []
    for lam in partitions_of(n):
        if (found := closed_form_of(lam)) is None:
            continue
        family, i = found
        if (closed := eta_closed_form(family, n, i)) != (value := eta(lam)):
            violations.append(f"{lam.compact()} ({family.value}): {closed} != {value}")
    return violations


def _check_closed_form_range(family: ClosedForm, n: int, i: Optional[int]) -> None:
    if family in (ClosedForm.HOOK, ClosedForm.NEAR_HOOK):
        if i is None:
            raise ClosedFormRangeError(f"the {family.value} family needs an index i")
        hi = n - 1 if family is ClosedForm.HOOK else n - 4
        if not 1 <= i <= hi:
            raise ClosedFormRangeError(
                f"{family.value} index must satisfy 1 <= i <= {hi} for n={n}, got i={i}"
            )
    elif family is ClosedForm.TWO_ROW_2 and n < 4:
        raise ClosedFormRangeError(f"(n-2,2) needs n >= 4, got n={n}")
    elif family is ClosedForm.TWO_ROW_3 and n < 6:
        raise ClosedFormRangeError(f"(n-3,3) needs n >= 6, got n={n}")


def eta_closed_form(family: ClosedForm, n: int, i: Optional[int] = None) -> int:
    """
    hook (n-i, 1^i):          (-1)^n + (-1)^i n D_{n-1-i}
    near hook (n-2-i, 2, 1^i): (n-1)((-1)^{n-1} + (-1)^i (n-i-2) D_{n-i-4})
    (n-2, 2):                  (n-1)((-1)^{n-1} + (n-2) D_{n-4})
    (n-3, 3):                  (-1)^n - (n-2)(n-3) D_{n-4} / (n-5)
    """
    _check_closed_form_range(family, n, i)
    D = derangement_count

    if family is ClosedForm.HOOK:
        assert i is not None
        return (-1) ** n + (-1) ** i * n * D(n - 1 - i)
    if family is ClosedForm.NEAR_HOOK:
        assert i is not None
        return (n - 1) * ((-1) ** (n - 1) + (-1) ** i * (n - i - 2) * D(n - i - 4))
    if family is ClosedForm.TWO_ROW_2:
        return (n - 1) * ((-1) ** (n - 1) + (n - 2) * D(n - 4))

    q, rem = divmod((n - 2) * (n - 3) * D(n - 4), n - 5)
    assert rem == 0, f"(n-5) does not divide (n-2)(n-3)D_(n-4) for n={n}"
    return (-1) ** n - q


def _check_degree(n: int) -> None:
    if n < 4:
        raise UnsupportedDegree(f"distance spectra are defined here for n >= 4, got n={n}")


def gamma(lam: Partition) -> int:
    n = lam.n
    _check_degree(n)
    if lam.parts == (n,):
        return 2 * (math.factorial(n) - 1) - eta(lam)
    return -2 - eta(lam)


def _exact(value: Fraction, what: str) -> int:
    assert value.denominator == 1, f"{what} = {value} is not an integer"
    return int(value)


def eta_from_characters(lam: Partition) -> int:
    """η_λ as the normalised character sum over the derangement classes"""
    total = sum(
        class_size(mu) * character(lam, mu)
        for mu in partitions_of(lam.n)
        if mu.count(1) == 0
    )
    return _exact(Fraction(total, dim_f(lam)), f"eta{lam}")


def gamma_from_characters(lam: Partition) -> int:
    """
    γ_λ = (1/f_λ) sum_{w != 1} ℓ(w) χ_λ(w), classwise: ℓ is 1 on the
    derangement classes and 2 on every other non-identity class
    """
    _check_degree(lam.n)
    total = 0
    for mu in partitions_of(lam.n):
        fixed = mu.count(1)
        if fixed == lam.n:
            continue
        ell = 1 if fixed == 0 else 2
        total += ell * class_size(mu) * character(lam, mu)
    return _exact(Fraction(total, dim_f(lam)), f"gamma{lam}")


@dataclass(frozen=True)
class SpectrumEntry:
    lam: Partition
    eta: int
    gamma: int
    multiplicity: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "partition": list(self.lam.parts),
            "eta": str(self.eta),
            "gamma": str(self.gamma),
            "multiplicity": str(self.multiplicity),
        }


@lru_cache(maxsize=None)
def _spectrum_table(n: int) -> Tuple[SpectrumEntry, ...]:
    return tuple(
        SpectrumEntry(lam=lam, eta=eta(lam), gamma=gamma(lam), multiplicity=dim_f(lam) ** 2)
        for lam in partitions_of(n)
    )


def spectrum_table(n: int) -> List[SpectrumEntry]:
    """one entry per partition of n, in canonical order"""
    _check_degree(n)
    return list(_spectrum_table(n))


@dataclass(frozen=True)
class DistancePolynomial:
    """
    factored characteristic polynomial prod (q - root)^multiplicity, roots
    strictly decreasing
    """

    n: int
    factors: Tuple[Tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    @property
    def trace(self) -> int:
        return sum(r * m for r, m in self.factors)

    @property
    def roots(self) -> List[int]:
        return [r for r, _ in self.factors]

    def moment(self, k: int) -> int:
        return sum(m * r**k for r, m in self.factors)

    def render(self, var: str = "q") -> str:
        """e.g. (q-37)(q-1)^10(q+3)^9(q+5)^4"""
        chunks = []
        for root, mult in self.factors:
            if root > 0:
                base = f"({var}-{root})"
            elif root < 0:
                base = f"({var}+{-root})"
            else:
                base = var
            chunks.append(base if mult == 1 else f"{base}^{mult}")
        return "".join(chunks)

    def __str__(self) -> str:
        return self.render()


def _group(n: int, values: List[Tuple[int, int]]) -> DistancePolynomial:
    grouped: Dict[int, int] = defaultdict(int)
    for root, mult in values:
        grouped[root] += mult
    return DistancePolynomial(n, tuple(sorted(grouped.items(), reverse=True)))


def distance_polynomial(n: int) -> DistancePolynomial:
    return _group(n, [(e.gamma, e.multiplicity) for e in spectrum_table(n)])


def adjacency_polynomial(n: int) -> DistancePolynomial:
    """the adjacency spectrum, grouped the same way"""
    return _group(n, [(e.eta, e.multiplicity) for e in spectrum_table(n)])


def spectral_moment(n: int, k: int, adjacency: bool = False) -> int:
    """sum_λ f_λ^2 γ_λ^k, or with η_λ when `adjacency`; equals tr(d^k) or tr(A^k)"""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return sum(
        e.multiplicity * (e.eta if adjacency else e.gamma) ** k for e in spectrum_table(n)
    )


@dataclass(frozen=True)
class ExtremalValue:
    value: int
    partitions: Tuple[Partition, ...]

    def __str__(self) -> str:
        return f"{self.value} at {', '.join(p.compact() for p in self.partitions)}"


@dataclass(frozen=True)
class Extremal:
    n: int
    largest: ExtremalValue
    second_largest: ExtremalValue
    third_largest: ExtremalValue
    smallest: ExtremalValue
    second_smallest: ExtremalValue

    def ranks(self) -> Dict[str, ExtremalValue]:
        return {
            "largest": self.largest,
            "second_largest": self.second_largest,
            "third_largest": self.third_largest,
            "smallest": self.smallest,
            "second_smallest": self.second_smallest,
        }

    def theorem_violations(self) -> List[str]:
        """
        For n >= 6 the largest three distance eigenvalues sit at (n), (n-1,1)
        and (n-3,3), and the smallest two at (n-2,2) and (n-2,1^2). For n = 5
        the smallest, -6, is shared by (3,2), (3,1^2) and (1^5), and the third
        largest is at (2^2,1). For n = 4 the smallest is at (2,2) and the second
        smallest at (2,1^2).
        """
        n = self.n
        P = Partition

        if n >= 6:
            expected = {
                "largest": P((n,)),
                "second_largest": P((n - 1, 1)),
                "third_largest": P((n - 3, 3)),
                "smallest": P((n - 2, 2)),
                "second_smallest": P((n - 2, 1, 1)),
            }
            return [
                f"n={n}: {rank} is {ev}, not at {expected[rank].compact()}"
                for rank, ev in self.ranks().items()
                if expected[rank] not in ev.partitions
            ]

        violations = []
        if n == 5:
            if self.smallest != ExtremalValue(-6, (P((3, 2)), P((3, 1, 1)), P((1,) * 5))):
                violations.append(f"n=5: smallest is {self.smallest}")
            if self.third_largest != ExtremalValue(2, (P((2, 2, 1)),)):
                violations.append(f"n=5: third largest is {self.third_largest}")
        elif n == 4:
            if self.smallest != ExtremalValue(-5, (P((2, 2)),)):
                violations.append(f"n=4: smallest is {self.smallest}")
            if self.second_smallest != ExtremalValue(-3, (P((2, 1, 1)),)):
                violations.append(f"n=4: second smallest is {self.second_smallest}")
        return violations


def extremal(n: int) -> Extremal:
    """ranked over distinct eigenvalues; tied partitions are all reported"""
    achieving: Dict[int, List[Partition]] = defaultdict(list)
    for e in spectrum_table(n):
        achieving[e.gamma].append(e.lam)
    values = sorted(achieving, reverse=True)

    def at(idx: int) -> ExtremalValue:
        v = values[idx]
        return ExtremalValue(v, tuple(sorted(achieving[v])))

    return Extremal(
        n=n,
        largest=at(0),
        second_largest=at(1),
        third_largest=at(2),
        smallest=at(-1),
        second_smallest=at(-2),
    )


@dataclass
class LemmaViolation:
    n: int
    family: str
    lam: Partition
    detail: str

    def __str__(self) -> str:
        return f"n={self.n} {self.family} {self.lam.compact()}: {self.detail}"


@dataclass
class SweepReport:
    n_from: int
    n_to: int
    checked: int = 0
    violations: List[LemmaViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _lemma_instances(n: int) -> List[Tuple[str, Partition, int, int, str]]:
    """(family, λ, lhs, rhs, text) with the claim lhs < rhs"""
    P = Partition
    e = eta
    top = e(P((n - 2, 1, 1)))
    t3 = e(P((n - 3, 3)))
    instances = []

    for i in range(4, n // 2 + 1):
        lam, prev = P((n - i, i)), P((n + 1 - i, i - 1))
        instances.append(("two-row", lam, abs(e(lam)), abs(e(prev)), f"|eta| < |eta{prev}|"))
        instances.append(("two-row", prev, abs(e(prev)), top, "|eta| < eta(n-2,1^2)"))

    for i in range(3, n):
        lam = P((n - i,) + (1,) * i)
        instances.append(("hook", lam, abs(e(lam)), top, "|eta| < eta(n-2,1^2)"))
        instances.append(("hook", lam, t3, -abs(e(lam)), "eta(n-3,3) < -|eta|"))

    for i in range(1, n - 3):
        lam = P((n - 2 - i, 2) + (1,) * i)
        instances.append(("near-hook", lam, abs(e(lam)), top, "|eta| < eta(n-2,1^2)"))
        instances.append(("near-hook", lam, t3, -abs(e(lam)), "eta(n-3,3) < -|eta|"))

    if n >= 7:
        for i in range(3, (n - 1) // 2 + 1):
            lam = P((n - i - 1, i, 1))
            instances.append(("length-three", lam, abs(e(lam)), -t3, "|eta| < -eta(n-3,3)"))

    for i in range(2, (n - 2) // 2 + 1):
        for j in range(2, i + 1):
            if n - i - j < i:
                continue
            lam = P((n - i - j, i, j))
            instances.append(("length-three", lam, abs(e(lam)), -t3, "|eta| < -eta(n-3,3)"))

    return instances


def lemma_sweep(n_from: int, n_to: int, use_tqdm: bool = False) -> SweepReport:
    """
    check the inequalities between |η_λ| for two-row shapes, hooks, near hooks
    and length three shapes that pin down the extremal distance eigenvalues
    """
    if n_from < 6:
        raise ValueError(f"the sweep starts at n >= 6, got {n_from}")
    report = SweepReport(n_from, n_to)
    for n in tqdm(range(n_from, n_to + 1), desc="lemma sweep", disable=not use_tqdm):
        for family, lam, lhs, rhs, text in _lemma_instances(n):
            report.checked += 1
            if not lhs < rhs:
                report.violations.append(
                    LemmaViolation(n, family, lam, f"{text} fails: {lhs} >= {rhs}")
                )
    return report


@dataclass
class SignReport:
    n_max: int
    checked: int = 0
    violations: List[Tuple[Partition, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def sign_check(n_max: int) -> SignReport:
    """η_λ is nonzero with sign (-1)^(n - λ_1), for 2 <= n <= n_max"""
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")
    report = SignReport(n_max)
    for n in range(2, n_max + 1):
        for lam in partitions_of(n):
            report.checked += 1
            value = eta(lam)
            expected = 1 if (n - lam[0]) % 2 == 0 else -1
            if value == 0 or (value > 0) != (expected > 0):
                report.violations.append((lam, value))
    return report
