import math

import pytest
import torch

from dergraph.partitions import Partition, InvalidPartition, partitions_of, dim_f
from dergraph.characters import SizeMismatch, CharacterTable, character
from dergraph.permutations import all_permutations, compose, cycle_type, fixed_points


PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


@pytest.mark.parametrize("n,expected", enumerate(PARTITION_COUNTS))
def test_partition_counts(n, expected) -> None:
    parts = partitions_of(n)
    assert len(parts) == expected
    assert len(set(parts)) == expected
    assert all(p.n == n for p in parts)


def test_partition_order() -> None:
    assert partitions_of(4) == [
        Partition((4,)),
        Partition((3, 1)),
        Partition((2, 2)),
        Partition((2, 1, 1)),
        Partition((1, 1, 1, 1)),
    ]
    assert partitions_of(6) == sorted(partitions_of(6))


def test_invalid_partitions() -> None:
    with pytest.raises(InvalidPartition):
        Partition((1, 2))
    with pytest.raises(InvalidPartition):
        Partition((2, 0))
    with pytest.raises(InvalidPartition):
        partitions_of(-1)
    assert Partition.from_list([1, 0, 3, 2]) == Partition((3, 2, 1))


def test_compact() -> None:
    assert Partition((4, 1, 1)).compact() == "(4,1^2)"
    assert Partition((2, 2, 2)).compact() == "(2^3)"
    assert Partition.empty().compact() == "()"
    assert str(Partition((4, 1, 1))) == "(4,1,1)"


def test_conjugate() -> None:
    assert Partition((4, 2, 1)).conjugate() == Partition((3, 2, 1, 1))
    for lam in partitions_of(7):
        assert lam.conjugate().conjugate() == lam
        assert dim_f(lam.conjugate()) == dim_f(lam)


def test_hooks() -> None:
    lam = Partition((4, 3))
    assert lam.principal_hook_size() == 5
    assert lam.remove_principal_hook() == Partition((2,))
    assert lam.remove_first_column() == Partition((3, 2))
    assert Partition((3, 2)).add_first_column(2) == lam
    assert Partition((1, 1, 1)).remove_principal_hook() == Partition.empty()
    assert lam.hook_lengths() == [[5, 4, 3, 1], [3, 2, 1]]

    with pytest.raises(InvalidPartition):
        Partition.empty().principal_hook_size()
    with pytest.raises(InvalidPartition):
        Partition((2, 2, 1)).add_first_column(2)


def test_shape_families() -> None:
    assert Partition((5,)).is_hook()
    assert Partition((3, 1, 1)).is_hook()
    assert not Partition((3, 2)).is_hook()
    assert Partition((3, 2)).is_near_hook()
    assert Partition((2, 2, 1, 1)).is_near_hook()
    assert not Partition((3, 3)).is_near_hook()


@pytest.mark.parametrize("n", range(0, 11))
def test_dim_f_sum_of_squares(n) -> None:
    assert sum(dim_f(lam) ** 2 for lam in partitions_of(n)) == math.factorial(n)


def test_dim_f_values() -> None:
    assert dim_f(Partition.empty()) == 1
    assert dim_f(Partition((3, 2))) == 5
    assert dim_f(Partition((4, 2))) == 9
    assert dim_f(Partition((3, 3))) == 5


def test_character_table_s3() -> None:
    table = CharacterTable.compute(3)
    assert table.values == ((1, 1, 1), (-1, 0, 2), (1, -1, 1))


def test_character_size_mismatch() -> None:
    with pytest.raises(SizeMismatch):
        character(Partition((2, 1)), Partition((2, 2)))


@pytest.mark.parametrize(
    "n", [*range(1, 9), pytest.param(9, marks=pytest.mark.slow)]
)
def test_orthogonality(n) -> None:
    assert CharacterTable.compute(n).orthogonality_violations() == []


@pytest.mark.parametrize("n", range(1, 9))
def test_identity_column_is_dimension(n) -> None:
    table = CharacterTable.compute(n)
    identity_class = Partition((1,) * n)
    for lam in table.partitions:
        assert table.value(lam, identity_class) == dim_f(lam)
        # sign character is the conjugate twist
        assert table.row(lam.conjugate()) == tuple(
            v * (-1) ** (n - mu.length) for v, mu in zip(table.row(lam), table.classes)
        )


def _permutation_matrix(w) -> torch.Tensor:
    """column x holds e_{w(x)}"""
    n = w.n
    m = torch.zeros(n, n, dtype=torch.int64)
    m[torch.tensor(w.image) - 1, torch.arange(n)] = 1
    return m


@pytest.mark.parametrize("n", range(2, 7))
def test_standard_character_is_fixed_points_minus_one(n) -> None:
    perms = list(all_permutations(n))
    matrices = {w: _permutation_matrix(w) for w in perms}
    standard = Partition((n - 1, 1))
    for w in perms:
        # permutation representation = trivial + standard
        trace = int(matrices[w].trace()) - 1
        assert trace == len(fixed_points(w)) - 1
        assert character(standard, cycle_type(w)) == trace
    for p in perms[:: max(1, len(perms) // 20)]:
        for q in perms:
            assert torch.equal(matrices[compose(p, q)], matrices[p] @ matrices[q])
