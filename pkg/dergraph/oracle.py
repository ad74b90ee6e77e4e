"""
Brute force ground truth for small n.

Γ_n is built explicitly as a Cayley graph on S_n: w is adjacent to s*w for
every derangement s. Vertices are indexed by their lexicographic rank, so the
identity is vertex 0. Since w -> w u^-1 is a graph automorphism, one BFS from
the identity gives every distance, d(u, v) = row[rank(v u^-1)].

All exact computations use int64 tensors; a bound is checked before anything
could overflow.
"""

import math
import warnings

from dataclasses import dataclass, field
from typing import List, Optional

import torch

from tqdm import tqdm

from dergraph.factorize import UnsupportedDegree
from dergraph.permutations import Permutation, all_permutations, derangements
from dergraph.spectra import spectral_moment, spectrum_table
from dergraph.utils import iter_in_chunks
from dergraph.utils.default_params import DefaultParams as dp


def lex_rank(perms: torch.Tensor) -> torch.Tensor:
    """
    lexicographic rank of each row of `perms` (0-based images, shape (..., n))
    by its Lehmer code
    """
    n = perms.shape[-1]
    after = torch.ones(n, n, dtype=torch.bool).triu(1)
    # [..., i, j] is p[j] < p[i] for j > i
    smaller_after = (perms.unsqueeze(-2) < perms.unsqueeze(-1)) & after
    weights = torch.tensor(
        [math.factorial(n - 1 - i) for i in range(n)], dtype=torch.int64
    )
    return (smaller_after.sum(-1) * weights).sum(-1)


def _to_tensor(perms: List[Permutation]) -> torch.Tensor:
    return torch.tensor([p.image for p in perms], dtype=torch.int64) - 1


@dataclass
class CayleyGraph:
    """
    `vertices` holds S_n as 0-based images in lexicographic order,
    `connection` the derangements; `neighbours[v]` is the sorted list of
    vertex indices adjacent to v, built for n <= 7 only.
    """

    n: int
    vertices: torch.Tensor
    connection: torch.Tensor
    neighbours: Optional[torch.Tensor] = None

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def degree(self) -> int:
        return self.connection.shape[0]

    def vertex(self, idx: int) -> Permutation:
        return Permutation(tuple(int(x) + 1 for x in self.vertices[idx]))

    def index(self, w: Permutation) -> int:
        if w.n != self.n:
            raise ValueError(f"{w} is not in S_{self.n}")
        return int(lex_rank(torch.tensor(w.image, dtype=torch.int64) - 1))

    def neighbours_of(self, idx: torch.Tensor) -> torch.Tensor:
        """neighbour indices of each vertex in `idx`, shape (len(idx), degree)"""
        if self.neighbours is not None:
            return self.neighbours[idx]
        # (s w)(x) = s(w(x))
        products = self.connection[:, self.vertices[idx]]
        return lex_rank(products).T


def build_graph(n: int, use_tqdm: bool = False) -> CayleyGraph:
    if not dp.MIN_GRAPH_DEGREE <= n <= dp.MAX_GRAPH_DEGREE:
        raise UnsupportedDegree(
            f"the graph is built for {dp.MIN_GRAPH_DEGREE} <= n <= "
            f"{dp.MAX_GRAPH_DEGREE}, got n={n}"
        )

    g = CayleyGraph(
        n=n,
        vertices=_to_tensor(list(all_permutations(n))),
        connection=_to_tensor(list(derangements(n))),
    )
    if n > dp.MAX_MATRIX_DEGREE:
        return g

    table = torch.empty(g.num_vertices, g.degree, dtype=torch.int64)
    all_idx = torch.arange(g.num_vertices)
    for chunk in tqdm(
        iter_in_chunks(all_idx, 256),
        desc=f"neighbours of S_{n}",
        disable=not use_tqdm,
        total=math.ceil(g.num_vertices / 256),
    ):
        table[chunk] = g.neighbours_of(chunk)
    g.neighbours = table.sort(dim=1).values
    return g


@dataclass
class DistanceRow:
    """
    distances from `source`; unreachable vertices hold -1. By vertex
    transitivity every component has the same size.
    """

    source: int
    distances: torch.Tensor
    disconnected: bool = field(init=False)
    components: int = field(init=False)

    def __post_init__(self) -> None:
        reached = int((self.distances >= 0).sum())
        self.disconnected = reached < self.distances.shape[0]
        self.components = self.distances.shape[0] // reached

    @property
    def diameter(self) -> float:
        """eccentricity of the source, inf when the graph is disconnected"""
        if self.disconnected:
            return math.inf
        return int(self.distances.max())

    def histogram(self) -> List[int]:
        return torch.bincount(self.distances[self.distances >= 0]).tolist()


def bfs_from(g: CayleyGraph, source: int = 0, use_tqdm: bool = False) -> DistanceRow:
    N = g.num_vertices
    chunk_size = 512 if g.neighbours is not None else 64

    distances = torch.full((N,), -1, dtype=torch.int64)
    distances[source] = 0
    frontier = torch.tensor([source], dtype=torch.int64)
    level = 0

    while frontier.numel() > 0:
        level += 1
        reached = torch.zeros(N, dtype=torch.bool)
        for chunk in tqdm(
            iter_in_chunks(frontier, chunk_size),
            desc=f"bfs level {level}",
            disable=not use_tqdm,
            total=math.ceil(frontier.numel() / chunk_size),
            leave=False,
        ):
            reached[g.neighbours_of(chunk).flatten()] = True
            if bool(((distances >= 0) | reached).all()):
                break
        reached &= distances < 0
        distances[reached] = level
        frontier = reached.nonzero().flatten()

    return DistanceRow(source, distances)


def bfs_distances(g: CayleyGraph, use_tqdm: bool = False) -> DistanceRow:
    """distances from the identity; row[rank(v u^-1)] is d(u, v)"""
    return bfs_from(g, 0, use_tqdm=use_tqdm)


def distance_matrix(
    g: CayleyGraph, row: Optional[DistanceRow] = None, use_tqdm: bool = False
) -> torch.Tensor:
    """the full (n! x n!) distance matrix as int8, -1 between components"""
    if g.n > dp.MAX_MATRIX_DEGREE:
        raise UnsupportedDegree(
            f"the distance matrix is materialised for n <= {dp.MAX_MATRIX_DEGREE}"
        )
    row = row if row is not None else bfs_distances(g)
    N = g.num_vertices
    inverses = torch.argsort(g.vertices, dim=1)

    matrix = torch.empty(N, N, dtype=torch.int8)
    for chunk in tqdm(
        iter_in_chunks(torch.arange(N), 64),
        desc="distance matrix",
        disable=not use_tqdm,
        total=math.ceil(N / 64),
    ):
        # [v, a, x] = v(u_a^-1(x))
        quotients = g.vertices[:, inverses[chunk]]
        matrix[chunk] = row.distances[lex_rank(quotients)].T.to(torch.int8)
    return matrix


def adjacency_matrix(g: CayleyGraph) -> torch.Tensor:
    if g.neighbours is None:
        raise UnsupportedDegree(
            f"the adjacency matrix is materialised for n <= {dp.MAX_MATRIX_DEGREE}"
        )
    N = g.num_vertices
    A = torch.zeros(N, N, dtype=torch.bool)
    A.scatter_(1, g.neighbours, True)
    return A


def _graph_for(n: int, g: Optional[CayleyGraph], use_tqdm: bool) -> CayleyGraph:
    if g is None:
        return build_graph(n, use_tqdm=use_tqdm)
    if g.n != n:
        raise ValueError(f"got the graph of S_{g.n} for n={n}")
    return g


def check_matrix_degree(n: int) -> None:
    if not dp.MIN_DISTANCE_DEGREE <= n <= dp.MAX_MATRIX_DEGREE:
        raise UnsupportedDegree(
            f"matrix checks need {dp.MIN_DISTANCE_DEGREE} <= n <= "
            f"{dp.MAX_MATRIX_DEGREE}, got n={n}"
        )


def matrix_identity_check(
    n: int,
    g: Optional[CayleyGraph] = None,
    d: Optional[torch.Tensor] = None,
    use_tqdm: bool = False,
) -> bool:
    """
    the BFS distance matrix equals 2J - A, J zero on the diagonal. `g` and `d`
    are built when not given.
    """
    check_matrix_degree(n)
    g = _graph_for(n, g, use_tqdm)
    d = d if d is not None else distance_matrix(g, use_tqdm=use_tqdm)
    A = adjacency_matrix(g).to(torch.int8)
    J = (~torch.eye(g.num_vertices, dtype=torch.bool)).to(torch.int8)
    return (
        bool(torch.equal(d, d.T))
        and bool((d.diagonal() == 0).all())
        and bool(torch.equal(d, 2 * J - A))
    )


def _trace_powers(
    g: CayleyGraph,
    k_max: int,
    adjacency: bool = False,
    d: Optional[torch.Tensor] = None,
    use_tqdm: bool = False,
) -> List[int]:
    """
    [tr(M^0), ..., tr(M^k_max)] for M = d or A. By vertex transitivity
    tr(M^k) = n! (M^k)[id, id], and the identity's row of M^k takes k
    row-times-matrix products.
    """
    assert g.neighbours is not None
    N = g.num_vertices

    if adjacency:
        d = None
        row_max = g.degree
    else:
        d = d if d is not None else distance_matrix(g, use_tqdm=use_tqdm)
        row_max = int(d.max()) * (N - 1)
    if row_max**k_max >= 2**63:
        raise OverflowError(f"traces up to power {k_max} for n={g.n} may exceed int64")

    r = torch.zeros(N, dtype=torch.int64)
    r[0] = 1
    traces = [N]
    for _ in range(k_max):
        if d is None:
            r = r[g.neighbours].sum(1)
        else:
            nxt = torch.zeros(N, dtype=torch.int64)
            for chunk in iter_in_chunks(torch.arange(N), 256):
                nxt += (d[chunk].to(torch.int64) * r[chunk].unsqueeze(1)).sum(0)
            r = nxt
        traces.append(N * int(r[0]))
    return traces


def trace_power(
    n: int,
    k: int,
    adjacency: bool = False,
    g: Optional[CayleyGraph] = None,
    use_tqdm: bool = False,
) -> int:
    """tr(d^k), or tr(A^k) when `adjacency`, exactly"""
    check_matrix_degree(n)
    if not 0 <= k <= dp.MAX_TRACE_POWER:
        raise ValueError(f"k must satisfy 0 <= k <= {dp.MAX_TRACE_POWER}, got {k}")
    g = _graph_for(n, g, use_tqdm)
    return _trace_powers(g, k, adjacency=adjacency, use_tqdm=use_tqdm)[k]


@dataclass
class TraceCheck:
    k: int
    trace: int
    predicted: int

    @property
    def ok(self) -> bool:
        return self.trace == self.predicted


@dataclass
class SpectrumReport:
    """exact trace checks gate `ok`; the numeric eigenvalue check is advisory"""

    n: int
    k_max: int
    checks: List[TraceCheck] = field(default_factory=list)
    numeric_max_error: Optional[float] = None
    numeric_tolerance: Optional[float] = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def numeric_ok(self) -> Optional[bool]:
        if self.numeric_max_error is None or self.numeric_tolerance is None:
            return None
        return self.numeric_max_error <= self.numeric_tolerance


def verify_spectrum(
    n: int,
    k_max: int = dp.TRACE_POWER,
    numeric: bool = False,
    g: Optional[CayleyGraph] = None,
    d: Optional[torch.Tensor] = None,
    use_tqdm: bool = False,
) -> SpectrumReport:
    """tr(d^k) against the spectral moments for k <= k_max, and optionally eigvalsh"""
    check_matrix_degree(n)
    if not 0 <= k_max <= dp.MAX_TRACE_POWER:
        raise ValueError(
            f"k_max must satisfy 0 <= k_max <= {dp.MAX_TRACE_POWER}, got {k_max}"
        )
    g = _graph_for(n, g, use_tqdm)
    d = d if d is not None else distance_matrix(g, use_tqdm=use_tqdm)

    report = SpectrumReport(n, k_max)
    traces = _trace_powers(g, k_max, d=d, use_tqdm=use_tqdm)
    for k, trace in enumerate(traces):
        report.checks.append(TraceCheck(k, trace, spectral_moment(n, k)))

    if numeric:
        computed = torch.linalg.eigvalsh(d.to(torch.float64))
        predicted = torch.tensor(
            sorted(
                float(e.gamma)
                for e in spectrum_table(n)
                for _ in range(e.multiplicity)
            ),
            dtype=torch.float64,
        )
        report.numeric_max_error = float((computed - predicted).abs().max())
        report.numeric_tolerance = dp.NUMERIC_RTOL * float(predicted.abs().max())
        if not report.numeric_ok:
            warnings.warn(
                f"numeric eigenvalues of d for n={n} are off by "
                f"{report.numeric_max_error:.3g} (tolerance {report.numeric_tolerance:.3g})"
            )
    return report


def vertex_transitivity_check(
    g: CayleyGraph,
    samples: int = dp.TRANSITIVITY_SAMPLES,
    seed: int = 0,
    row: Optional[DistanceRow] = None,
) -> bool:
    """distance histograms from random sources all match the identity's"""
    expected = (row if row is not None else bfs_distances(g)).histogram()
    gen = torch.Generator().manual_seed(seed)
    sources = torch.randint(g.num_vertices, (samples,), generator=gen)
    return all(bfs_from(g, int(s)).histogram() == expected for s in sources)
