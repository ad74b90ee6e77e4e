"""
Exact derangement numbers D_n.

The main path is the recurrence D_n = n D_{n-1} + (-1)^n. Inclusion-exclusion,
the two term recurrence D_n = (n - 1)(D_{n-1} + D_{n-2}) and the truncated
series n! sum_k (-1)^k / k! are kept as independent cross-checks.
"""

import math
import threading
import warnings

from fractions import Fraction
from dataclasses import dataclass, field
from typing import Dict, List, Tuple


_TABLE: List[int] = [1, 0, 1]
_TABLE_LOCK = threading.Lock()


def derangement_count(n: int) -> int:
    """D_n, from a monotone append-only table"""
    if n < 0:
        raise ValueError(f"D_n is undefined for negative n ({n})")
    if n < len(_TABLE):
        return _TABLE[n]
    with _TABLE_LOCK:
        # another thread may have extended the table while we waited
        while len(_TABLE) <= n:
            m = len(_TABLE)
            _TABLE.append(m * _TABLE[m - 1] + (-1) ** m)
    return _TABLE[n]


def derangements_by_inclusion_exclusion(n: int) -> int:
    return sum((-1) ** k * math.comb(n, k) * math.factorial(n - k) for k in range(n + 1))


def derangements_by_two_term(n: int) -> int:
    """D_n = (n - 1)(D_{n-1} + D_{n-2}), computed without the shared table"""
    if n < 0:
        raise ValueError(f"D_n is undefined for negative n ({n})")
    prev, cur = 1, 0  # D_0, D_1
    if n == 0:
        return prev
    for m in range(2, n + 1):
        prev, cur = cur, (m - 1) * (cur + prev)
    return cur


def derangements_by_series(n: int) -> int:
    """n! sum_{k <= n} (-1)^k / k!, term by term as the integers n!/k!"""
    if n < 0:
        raise ValueError(f"D_n is undefined for negative n ({n})")
    n_fact = math.factorial(n)
    return sum((-1) ** k * (n_fact // math.factorial(k)) for k in range(n + 1))


@dataclass
class DerangementTable:
    values: Dict[int, int] = field(default_factory=dict)

    @classmethod
    def up_to(cls, n_max: int) -> "DerangementTable":
        return cls({n: derangement_count(n) for n in range(n_max + 1)})

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def check_invariants(self) -> List[Tuple[int, str]]:
        """(n, identity) pairs for every stored value breaking an identity"""
        violations = []
        for n, expected in ((0, 1), (1, 0), (2, 1)):
            if n in self.values and self.values[n] != expected:
                violations.append((n, f"D_{n} = {expected}"))
        for n, d_n in sorted(self.values.items()):
            if n >= 1 and n - 1 in self.values:
                if d_n != n * self.values[n - 1] + (-1) ** n:
                    violations.append((n, "D_n = n D_{n-1} + (-1)^n"))
            if n >= 2 and n - 1 in self.values and n - 2 in self.values:
                if d_n != (n - 1) * (self.values[n - 1] + self.values[n - 2]):
                    violations.append((n, "D_n = (n-1)(D_{n-1} + D_{n-2})"))
            # equality at n = 3, D_3 = 2 D_2
            if n >= 4 and n - 1 in self.values and d_n <= (n - 1) * self.values[n - 1]:
                violations.append((n, "D_n > (n-1) D_{n-1}"))
        return violations


@dataclass
class IdentityReport:
    n_max: int
    violations: List[Tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_identities(n_max: int, cross_check: bool = True) -> IdentityReport:
    """
    check both induction identities for n <= n_max, and (if cross_check) that
    the recurrence, inclusion-exclusion, two term and truncated series
    formulas agree
    """
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")

    report = IdentityReport(n_max)
    report.violations.extend(DerangementTable.up_to(n_max).check_invariants())

    if cross_check:
        for n in range(n_max + 1):
            d_n = derangement_count(n)
            if derangements_by_inclusion_exclusion(n) != d_n:
                report.violations.append((n, "inclusion-exclusion"))
            if derangements_by_two_term(n) != d_n:
                report.violations.append((n, "two term recurrence"))
            if derangements_by_series(n) != d_n:
                report.violations.append((n, "truncated series"))
    return report


def e_inverse_interval(terms: int) -> Tuple[Fraction, Fraction]:
    """
    rational enclosure of 1/e from sum_{k <= terms} (-1)^k / k!. The series
    alternates with decreasing terms, so the tail is bounded by 1/(terms + 1)!.
    """
    partial = sum(Fraction((-1) ** k, math.factorial(k)) for k in range(terms + 1))
    tail = Fraction(1, math.factorial(terms + 1))
    return partial - tail, partial + tail


def nearest_integer_characterization(n: int, initial_terms: int = 8) -> bool:
    """
    True iff D_n is the nearest integer to n!/e and |D_n - n!/e| < 1/(n+1).

    Decided with interval arithmetic; the number of series terms doubles
    until the enclosure of n!/e settles the question.
    """
    if n < 3:
        raise ValueError(f"the characterization is stated for n >= 3, got {n}")

    d_n = derangement_count(n)
    bound = Fraction(1, n + 1)
    n_fact = math.factorial(n)
    terms = initial_terms

    while True:
        lo, hi = e_inverse_interval(terms)
        lo, hi = n_fact * lo, n_fact * hi

        # both predicates are monotone in the distance |D_n - x|, so deciding
        # at the interval endpoints decides for every x in between
        inside_bound = d_n - bound < lo and hi < d_n + bound
        nearest = d_n - Fraction(1, 2) < lo and hi < d_n + Fraction(1, 2)
        if inside_bound and nearest:
            return True

        outside_bound = hi <= d_n - bound or lo >= d_n + bound
        not_nearest = hi <= d_n - Fraction(1, 2) or lo >= d_n + Fraction(1, 2)
        if outside_bound or not_nearest:
            return False

        if terms >= 4 * (n + initial_terms):
            warnings.warn(
                f"n!/e enclosure for n={n} still undecided with {terms} terms"
            )
        terms *= 2
