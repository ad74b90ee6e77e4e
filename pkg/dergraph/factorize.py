"""
Factorizations of permutations into two derangements.

Every non-identity permutation w of {1..n}, n >= 4, with a fixed point is a
product sigma * tau of two derangements, which makes the derangement graph a
graph of diameter two. `factorize_two` builds such a pair from identities on
small supports and glues the pieces together:

    (i)(j)            = (i j) * (i j)
    (i)(j)(k l)       = (i k)(j l) * (i k j l)
    (i j)(k l)        = (i k)(j l) * (i l)(j k)
    (l_1 ... l_r)     = (l_1 ... l_r)^2 * (l_r ... l_1)
    (i)(j k)(l m)     = (i l k m j) * (i j l k m)
    (i)(j k)(l m)(n p) = (i n j)(l k m p) * (i j l k n m p)
    (i)(j k)(l_1 ... l_r), r >= 3, see `fixed_point_transposition_cycle`
    (1)(2 3 ... n), n >= 5, see `single_cycle_factorization`

Anything these don't cover is found by a search over derangements of a small
support. Every certificate is re-verified before it's returned.
"""

from enum import Enum
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple
from collections import Counter

from tqdm import tqdm

from dergraph.permutations import (
    Permutation,
    DegreeMismatch,
    compose,
    inverse,
    identity,
    format_cycles,
    format_one_line,
    is_derangement,
    all_permutations,
    cycle_decomposition,
    sign,
    support as moved_points,
)
from dergraph.utils.default_params import DefaultParams as dp


class UnsupportedDegree(ValueError): ...


class FactorizationRejected(ValueError): ...


class FactorizationError(RuntimeError): ...


class Method(Enum):
    PAIRED_FIXED_POINTS = "paired-fixed-points"
    FIXED_PAIR_REDUCTION = "fixed-pair-reduction"
    SINGLE_CYCLE_CONSTRUCTION = "single-cycle-construction"
    TWO_CYCLE_IDENTITY = "two-cycle-identity"
    MIXED_IDENTITY = "mixed-identity"
    EXHAUSTIVE_FALLBACK = "exhaustive-fallback"


# when blocks built by different methods are assembled, the certificate
# reports the first of these that occurs
METHOD_PRIORITY = (
    Method.EXHAUSTIVE_FALLBACK,
    Method.SINGLE_CYCLE_CONSTRUCTION,
    Method.MIXED_IDENTITY,
    Method.FIXED_PAIR_REDUCTION,
    Method.PAIRED_FIXED_POINTS,
    Method.TWO_CYCLE_IDENTITY,
)


@dataclass(frozen=True)
class FactorizationCertificate:
    """
    A witness that w = sigma * tau with sigma and tau derangements of
    `support`. Outside the support all three permutations are the identity.
    A certificate for the whole of {1..n} has the default support.
    """

    w: Permutation
    sigma: Permutation
    tau: Permutation
    method: Method
    support: FrozenSet[int] = field(default=frozenset())

    def __post_init__(self) -> None:
        if not self.support:
            object.__setattr__(self, "support", frozenset(range(1, self.w.n + 1)))

    @property
    def n(self) -> int:
        return self.w.n

    def verify(self) -> bool:
        if not (self.w.n == self.sigma.n == self.tau.n):
            return False
        if compose(self.sigma, self.tau) != self.w:
            return False
        return moved_points(self.sigma) == self.support == moved_points(self.tau)

    def to_dict(self) -> Dict[str, object]:
        return {
            "w": format_cycles(self.w),
            "sigma": format_cycles(self.sigma),
            "tau": format_cycles(self.tau),
            "method": self.method.value,
            "verified": self.verify(),
            "sign": sign(self.w),
            "one_line": {
                "w": format_one_line(self.w),
                "sigma": format_one_line(self.sigma),
                "tau": format_one_line(self.tau),
            },
        }


def _block(
    n: int,
    sigma_cycles: Sequence[Sequence[int]],
    tau_cycles: Sequence[Sequence[int]],
    method: Method,
) -> FactorizationCertificate:
    sigma = Permutation.from_cycles(sigma_cycles, n)
    tau = Permutation.from_cycles(tau_cycles, n)
    points = frozenset(p for c in sigma_cycles for p in c)
    return FactorizationCertificate(
        w=compose(sigma, tau), sigma=sigma, tau=tau, method=method, support=points
    )


def pair_fixed_points(
    n: int, i: int, j: int, method: Method = Method.PAIRED_FIXED_POINTS
) -> FactorizationCertificate:
    """(i)(j) = (i j) * (i j)"""
    return _block(n, [(i, j)], [(i, j)], method)


def pair_fixed_points_with_transposition(
    n: int, i: int, j: int, kl: Tuple[int, int]
) -> FactorizationCertificate:
    """(i)(j)(k l) = (i k)(j l) * (i k j l)"""
    k, l = kl
    return _block(n, [(i, k), (j, l)], [(i, k, j, l)], Method.PAIRED_FIXED_POINTS)


def pair_transpositions(
    n: int, ij: Tuple[int, int], kl: Tuple[int, int]
) -> FactorizationCertificate:
    """(i j)(k l) = (i k)(j l) * (i l)(j k)"""
    (i, j), (k, l) = ij, kl
    return _block(n, [(i, k), (j, l)], [(i, l), (j, k)], Method.TWO_CYCLE_IDENTITY)


def square_and_reverse(n: int, cycle: Sequence[int]) -> FactorizationCertificate:
    """(l_1 ... l_r) = (l_1 ... l_r)^2 * (l_r ... l_1), r >= 3"""
    if len(cycle) < 3:
        raise FactorizationRejected(
            f"square and reverse needs a cycle of length >= 3, got {tuple(cycle)}"
        )
    c = Permutation.from_cycles([cycle], n)
    sigma = compose(c, c)
    tau = inverse(c)
    return FactorizationCertificate(
        w=c,
        sigma=sigma,
        tau=tau,
        method=Method.TWO_CYCLE_IDENTITY,
        support=frozenset(cycle),
    )


def fixed_point_two_transpositions(
    n: int, i: int, jk: Tuple[int, int], lm: Tuple[int, int]
) -> FactorizationCertificate:
    """(i)(j k)(l m) = (i l k m j) * (i j l k m)"""
    (j, k), (l, m) = jk, lm
    return _block(n, [(i, l, k, m, j)], [(i, j, l, k, m)], Method.MIXED_IDENTITY)


def fixed_point_three_transpositions(
    n: int,
    i: int,
    jk: Tuple[int, int],
    lm: Tuple[int, int],
    np_: Tuple[int, int],
) -> FactorizationCertificate:
    """(i)(j k)(l m)(n p) = (i n j)(l k m p) * (i j l k n m p)"""
    (j, k), (l, m), (q, p) = jk, lm, np_
    return _block(
        n, [(i, q, j), (l, k, m, p)], [(i, j, l, k, q, m, p)], Method.MIXED_IDENTITY
    )


def fixed_point_transposition_cycle(
    n: int, i: int, jk: Tuple[int, int], ls: Sequence[int]
) -> FactorizationCertificate:
    """
    (i)(j k)(l_1 ... l_r) = sigma * (i j l_r ... l_1 k), with

        sigma = (i j)(l_1 l_3 ... l_r k l_2 l_4 ... l_{r-1})       r odd
        sigma = (i j)(l_1 l_3 ... l_{r-1})(l_2 l_4 ... l_r k)      r even
    """
    j, k = jk
    ls = tuple(ls)
    if len(ls) < 3:
        raise FactorizationRejected(f"needs a cycle of length >= 3, got {ls}")
    odds, evens = ls[0::2], ls[1::2]
    if len(ls) % 2:
        sigma_cycles = [(i, j), odds + (k,) + evens]
    else:
        sigma_cycles = [(i, j), odds, evens + (k,)]
    tau_cycles = [(i, j) + tuple(reversed(ls)) + (k,)]
    return _block(n, sigma_cycles, tau_cycles, Method.MIXED_IDENTITY)


def valid_single_cycle_p(m: int, p: int) -> bool:
    """p is usable for (1)(2 ... m) iff m - 2 divides neither p nor p + 1"""
    return p >= 1 and p % (m - 2) != 0 and (p + 1) % (m - 2) != 0


def smallest_single_cycle_p(m: int) -> Optional[int]:
    for p in range(1, m - 1):
        if valid_single_cycle_p(m, p):
            return p
    return None


def _single_cycle_block(
    n: int, labels: Sequence[int], p: int
) -> FactorizationCertificate:
    """
    the construction for (1)(2 3 ... m), carried onto `labels`: label x-1 of
    `labels` plays the role of x. tau sends 1 -> 2, j+1 -> k_j, m -> 1 and
    sigma sends 2 -> 1, k_j -> j+2, 1 -> 2, where k_j is the element of
    {3..m} congruent to j + p + 2 mod m - 2.
    """
    m = len(labels)
    k = {j: 3 + (j + p - 1) % (m - 2) for j in range(1, m - 1)}

    tau_std = {1: 2, m: 1, **{j + 1: k[j] for j in range(1, m - 1)}}
    sigma_std = {2: 1, 1: 2, **{k[j]: j + 2 for j in range(1, m - 1)}}

    def relabel(mapping: Dict[int, int]) -> Permutation:
        return Permutation.from_mapping(
            {labels[a - 1]: labels[b - 1] for a, b in mapping.items()}, n
        )

    sigma, tau = relabel(sigma_std), relabel(tau_std)
    return FactorizationCertificate(
        w=compose(sigma, tau),
        sigma=sigma,
        tau=tau,
        method=Method.SINGLE_CYCLE_CONSTRUCTION,
        support=frozenset(labels),
    )


def single_cycle_factorization(n: int, p: Optional[int] = None) -> FactorizationCertificate:
    """
    factor (1)(2 3 ... n) as sigma * tau, sigma and tau derangements, by the
    residue construction. p defaults to the smallest valid choice.
    """
    if n < 5:
        raise FactorizationRejected(
            f"the single cycle construction needs n >= 5 (n - 2 >= 3), got n={n}"
        )
    if p is None:
        p = smallest_single_cycle_p(n)
        assert p is not None
    elif not valid_single_cycle_p(n, p):
        raise FactorizationRejected(
            f"p={p} is invalid for n={n}: n - 2 = {n - 2} must divide neither p nor p + 1"
        )

    cert = _single_cycle_block(n, list(range(1, n + 1)), p)
    if not cert.verify():
        raise FactorizationError(f"single cycle construction failed for n={n}, p={p}")
    return cert


def search_factorization(
    w: Permutation, support: FrozenSet[int]
) -> Optional[FactorizationCertificate]:
    """
    first sigma in canonical order with sigma(x) not in {x, w(x)} on the
    support; then tau = sigma^-1 w is a derangement of the support as well.
    `w` must map the support to itself.
    """
    if len(support) > dp.FALLBACK_SEARCH_MAX_SUPPORT:
        raise FactorizationRejected(
            f"refusing to search a support of {len(support)} points "
            f"(at most {dp.FALLBACK_SEARCH_MAX_SUPPORT})"
        )
    points = sorted(support)
    assignment: Dict[int, int] = {}
    used: set = set()

    def extend(idx: int) -> bool:
        if idx == len(points):
            return True
        x = points[idx]
        for y in points:
            if y in used or y == x or y == w(x):
                continue
            assignment[x] = y
            used.add(y)
            if extend(idx + 1):
                return True
            used.discard(y)
            del assignment[x]
        return False

    if not extend(0):
        return None

    sigma = Permutation.from_mapping(assignment, w.n)
    restricted = Permutation.from_mapping({x: w(x) for x in points}, w.n)
    tau = compose(inverse(sigma), restricted)
    return FactorizationCertificate(
        w=restricted,
        sigma=sigma,
        tau=tau,
        method=Method.EXHAUSTIVE_FALLBACK,
        support=frozenset(points),
    )


def assemble_blocks(
    blocks: Sequence[FactorizationCertificate], method: Optional[Method] = None
) -> FactorizationCertificate:
    """
    combine certificates on disjoint supports covering {1..n} into one
    certificate; sigma and tau are the products of the block sigmas and taus
    """
    if not blocks:
        raise FactorizationRejected("no blocks to assemble")

    n = blocks[0].n
    covered: set = set()
    for b in blocks:
        if b.n != n:
            raise DegreeMismatch(f"blocks of degree {n} and {b.n} can't be assembled")
        if overlap := covered & b.support:
            raise FactorizationRejected(f"overlapping supports at {sorted(overlap)}")
        covered |= b.support

    if covered != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - covered)
        raise FactorizationRejected(f"blocks don't cover the points {missing}")

    sigma, tau, w = identity(n), identity(n), identity(n)
    for b in blocks:
        sigma = compose(sigma, b.sigma)
        tau = compose(tau, b.tau)
        w = compose(w, b.w)

    if method is None:
        present = {b.method for b in blocks}
        method = next(m for m in METHOD_PRIORITY if m in present)

    return FactorizationCertificate(w=w, sigma=sigma, tau=tau, method=method)


def _check_degree(n: int) -> None:
    if n < 4:
        raise UnsupportedDegree(
            f"n={n}: the derangement graph has diameter two only for n >= 4 "
            "(it is disconnected for n = 3 and degenerate below)"
        )


def factorize_two(w: Permutation) -> FactorizationCertificate:
    """
    w = sigma * tau with sigma, tau derangements, for w a non-identity
    permutation with at least one fixed point, n >= 4.
    """
    n = w.n
    if n < 4:
        raise FactorizationRejected(f"unsupported degree n={n}; need n >= 4")
    if w.is_identity():
        raise FactorizationRejected("w is the identity; it is the empty product")
    if is_derangement(w):
        raise FactorizationRejected(f"w = {format_cycles(w)} is already a derangement")

    cycles = cycle_decomposition(w)
    fixed = [c[0] for c in cycles if len(c) == 1]
    twos: List[Tuple[int, int]] = [(c[0], c[1]) for c in cycles if len(c) == 2]
    longs = [c for c in cycles if len(c) >= 3]

    blocks: List[FactorizationCertificate] = []

    if len(fixed) % 2 == 0:
        i, j = fixed[0], fixed[1]
        if len(twos) % 2:
            blocks.append(pair_fixed_points_with_transposition(n, i, j, twos.pop(0)))
        else:
            blocks.append(pair_fixed_points(n, i, j))
        for a, b in zip(fixed[2::2], fixed[3::2]):
            blocks.append(pair_fixed_points(n, a, b, Method.FIXED_PAIR_REDUCTION))
    else:
        leftover = fixed[-1]
        for a, b in zip(fixed[:-1:2], fixed[1:-1:2]):
            blocks.append(pair_fixed_points(n, a, b, Method.FIXED_PAIR_REDUCTION))

        if len(twos) >= 2 and len(twos) % 2 == 0:
            blocks.append(fixed_point_two_transpositions(n, leftover, twos[0], twos[1]))
            twos = twos[2:]
        elif len(twos) >= 3:
            blocks.append(
                fixed_point_three_transpositions(n, leftover, *twos[:3])
            )
            twos = twos[3:]
        elif len(twos) == 1 and longs:
            blocks.append(
                fixed_point_transposition_cycle(n, leftover, twos.pop(0), longs.pop(0))
            )
        elif len(twos) == 1:
            # (i)(j k) alone has no factorization; join it to a neighbouring block
            residual = frozenset((leftover,) + twos.pop(0))
            if blocks:
                residual |= blocks.pop().support
            blocks.append(_searched_block(w, residual))
        else:
            cycle = longs.pop(0)
            labels = (leftover,) + tuple(cycle)
            if len(labels) >= 5:
                p = smallest_single_cycle_p(len(labels))
                assert p is not None
                blocks.append(_single_cycle_block(n, labels, p))
            else:
                # (i)(j k l): n - 2 = 2 admits no p
                blocks.append(_searched_block(w, frozenset(labels)))

    assert len(twos) % 2 == 0
    for ij, kl in zip(twos[0::2], twos[1::2]):
        blocks.append(pair_transpositions(n, ij, kl))
    for cycle in longs:
        blocks.append(square_and_reverse(n, cycle))

    cert = assemble_blocks(blocks)
    if cert.w != w or not cert.verify():
        raise FactorizationError(
            f"assembled certificate for {format_cycles(w)} failed verification: "
            f"sigma={format_cycles(cert.sigma)}, tau={format_cycles(cert.tau)}"
        )
    return cert


def _searched_block(w: Permutation, support: FrozenSet[int]) -> FactorizationCertificate:
    cert = search_factorization(w, support)
    if cert is None:
        raise FactorizationError(
            f"no derangement pair on {sorted(support)} for {format_cycles(w)}"
        )
    return cert


def ell_D(w: Permutation) -> int:
    """
    the least number of derangements whose product is w: 0 for the identity,
    1 for a derangement, 2 otherwise (n >= 4)
    """
    _check_degree(w.n)
    if w.is_identity():
        return 0
    if is_derangement(w):
        return 1
    return 2


def distance(u: Permutation, v: Permutation) -> int:
    """graph distance in the derangement graph, ell_D(v u^-1)"""
    if u.n != v.n:
        raise DegreeMismatch(f"cannot compare permutations of degree {u.n} and {v.n}")
    return ell_D(compose(v, inverse(u)))


@dataclass
class CertificationReport:
    n: int
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    methods: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.failures


def certify_all(n: int, use_tqdm: bool = False) -> CertificationReport:
    """factor and verify every non-identity, non-derangement permutation of S_n"""
    _check_degree(n)
    report = CertificationReport(n)
    for w in tqdm(
        all_permutations(n), desc=f"certifying S_{n}", disable=not use_tqdm, leave=False
    ):
        if w.is_identity() or is_derangement(w):
            continue
        report.checked += 1
        try:
            cert = factorize_two(w)
        except FactorizationError as e:
            report.failures.append(str(e))
            continue
        if cert.w != w or not cert.verify():
            report.failures.append(format_cycles(w))
        report.methods[cert.method] += 1
    return report
