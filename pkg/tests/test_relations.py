import pytest
from hypothesis import given, settings, strategies as st

from cubelab.models.relations.finset import FinSet, FinMap, equal_up_to_codomain_iso
from cubelab.models.relations.eqrel import (
    EqRel, BinaryRelation, compose_rel, is_permutable, meet_rel, join_rel, kernel_pair, coequaliser, all_partitions,
)
from cubelab.models.relations.forks import ReflexiveGraph, eq_fork, coeq_fork, is_exact_fork
from cubelab.models.relations.limits import pullback, pair_into_pullback, Square, is_regular_pushout, is_pushout_square

SIZE = 5


def eqrels(size=SIZE):
    return st.lists(st.integers(0, size - 1), min_size=size, max_size=size).map(
        lambda labels: EqRel.from_labels(size, labels))


@pytest.mark.unit_test
def test_blocks_are_canonical():
    assert EqRel(4, [[3, 1], [2, 0]]) == EqRel(4, [[0, 2], [1, 3]])
    assert EqRel(4, [[3, 1], [2, 0]]).blocks == ((0, 2), (1, 3))


@pytest.mark.unit_test
@pytest.mark.parametrize("blocks", [[[0, 1], [1, 2]], [[0, 1]], [[0, 1, 2], []], [[0, 5], [1, 2]]])
def test_invalid_blocks(blocks):
    with pytest.raises(ValueError):
        EqRel(3, blocks)


@pytest.mark.unit_test
def test_join_of_overlapping_relations_is_full():
    R = EqRel(3, [[0, 1], [2]])
    S = EqRel(3, [[0], [1, 2]])
    assert join_rel(R, S) == EqRel.full(3)
    assert meet_rel(R, S) == EqRel.discrete(3)


@pytest.mark.unit_test
def test_composite_need_not_be_an_equivalence():
    R = EqRel(3, [[0, 1], [2]])
    S = EqRel(3, [[0], [1, 2]])
    composite = compose_rel(R, S)
    assert (0, 2) in composite
    assert (2, 0) not in composite
    assert not composite.is_equivalence()
    assert not is_permutable(R, S)


@pytest.mark.unit_test
def test_permutable_relations():
    R = EqRel(4, [[0, 1], [2, 3]])
    S = EqRel(4, [[0, 2], [1, 3]])
    assert is_permutable(R, S)
    assert compose_rel(R, S) == join_rel(R, S).to_relation()


@pytest.mark.unit_test
def test_binary_relation_round_trip():
    R = EqRel(4, [[0, 3], [1], [2]])
    assert R.to_relation().to_eqrel() == R
    with pytest.raises(ValueError):
        BinaryRelation(3, [(0, 1)]).to_eqrel()


@pytest.mark.unit_test
@pytest.mark.parametrize("size, bell", [(0, 1), (1, 1), (3, 5), (4, 15), (5, 52)])
def test_partition_counts(size, bell):
    partitions = list(all_partitions(size))
    assert len(partitions) == bell
    assert len(set(partitions)) == bell


@pytest.mark.unit_test
def test_kernel_pair_and_coequaliser():
    f = FinMap(FinSet(4), FinSet(2), [0, 1, 0, 1])
    R = kernel_pair(f)
    assert R == EqRel(4, [[0, 2], [1, 3]])
    assert kernel_pair(coequaliser(R)) == R
    assert coequaliser(R).is_surjective()


@pytest.mark.unit_test
def test_equal_up_to_codomain_iso():
    f = FinMap(FinSet(3), FinSet(2), [0, 1, 0])
    g = FinMap(FinSet(3), FinSet(2), [1, 0, 1])
    h = FinMap(FinSet(3), FinSet(2), [0, 0, 1])
    assert equal_up_to_codomain_iso(f, g)
    assert not equal_up_to_codomain_iso(f, h)


@pytest.mark.unit_test
def test_pullback_is_lexicographic():
    f = FinMap(FinSet(3), FinSet(2), [0, 1, 0])
    P, p1, p2 = pullback(f, f)
    assert P.size == 5
    assert list(zip(p1.table, p2.table)) == [(0, 0), (0, 2), (1, 1), (2, 0), (2, 2)]
    diagonal = pair_into_pullback(p1, p2, FinMap.identity(FinSet(3)), FinMap.identity(FinSet(3)))
    assert diagonal.table == (0, 2, 4)


@pytest.mark.unit_test
def test_exact_forks():
    f = FinMap(FinSet(4), FinSet(2), [0, 1, 1, 0])
    assert is_exact_fork(eq_fork(f))
    graph = ReflexiveGraph.from_eqrel(EqRel(3, [[0, 1], [2]]))
    assert graph.is_relation()
    assert is_exact_fork(coeq_fork(graph))


@pytest.mark.unit_test
def test_squares_of_quotients():
    R = EqRel(4, [[0, 1], [2, 3]])
    S = EqRel(4, [[0, 2], [1, 3]])
    r, s = coequaliser(R), coequaliser(S)
    # both quotients collapse further onto a point
    u = FinMap(r.codomain, FinSet(1), [0, 0])
    v = FinMap(s.codomain, FinSet(1), [0, 0])
    square = Square(r, s, u, v)
    assert square.commutes()
    assert is_pushout_square(square)
    assert is_regular_pushout(square)


@pytest.mark.unit_test
def test_square_that_is_not_a_regular_pushout():
    R = EqRel(3, [[0, 1], [2]])
    S = EqRel(3, [[0], [1, 2]])
    r, s = coequaliser(R), coequaliser(S)
    u = FinMap(r.codomain, FinSet(1), [0, 0])
    v = FinMap(s.codomain, FinSet(1), [0, 0])
    report = is_regular_pushout(Square(r, s, u, v))
    assert not report.verdict
    assert report.witness["pullback_size"] == 4


@pytest.mark.unit_test
@given(eqrels(), eqrels())
def test_lattice_laws(R, S):
    assert meet_rel(R, S) == meet_rel(S, R)
    assert join_rel(R, S) == join_rel(S, R)
    assert meet_rel(R, join_rel(R, S)) == R
    assert join_rel(R, meet_rel(R, S)) == R
    assert meet_rel(R, S) <= R <= join_rel(R, S)


@pytest.mark.unit_test
@given(eqrels(), eqrels(), eqrels())
def test_join_is_least_upper_bound(R, S, Q):
    if R <= Q and S <= Q:
        assert join_rel(R, S) <= Q


@pytest.mark.unit_test
@given(eqrels(4), eqrels(4), eqrels(4))
def test_composite_is_associative(R, S, Q):
    left = compose_rel(R, S).compose(Q.to_relation())
    right = R.to_relation().compose(compose_rel(S, Q))
    assert left == right
    assert compose_rel(R, S) == R.to_relation().compose(S.to_relation())


def labels_on_small_carriers(max_size=8):
    return st.integers(1, max_size).flatmap(
        lambda size: st.lists(st.integers(0, size - 1), min_size=size, max_size=size))


@pytest.mark.unit_test
@settings(max_examples=1000, derandomize=True)
@given(labels_on_small_carriers())
def test_kernel_pair_of_coequaliser(labels):
    R = EqRel.from_labels(len(labels), labels)
    q = coequaliser(R)
    assert q.is_surjective()
    assert kernel_pair(q) == R


@pytest.mark.unit_test
@settings(max_examples=1000, derandomize=True)
@given(labels_on_small_carriers())
def test_coequaliser_of_kernel_pair(labels):
    # relabel onto an initial segment so f is a surjection, keeping the order of the values
    values = sorted(set(labels))
    f = FinMap(FinSet(len(labels)), FinSet(len(values)), [values.index(x) for x in labels])
    assert equal_up_to_codomain_iso(coequaliser(kernel_pair(f)), f)


def quotient_square(R, S, T):
    r, s = coequaliser(R), coequaliser(S)
    target = FinSet(len(T.blocks))
    u = FinMap(r.codomain, target, [T.labels[block[0]] for block in R.blocks])
    v = FinMap(s.codomain, target, [T.labels[block[0]] for block in S.blocks])
    return Square(r, s, u, v)


def regular_pushouts_match_composites(size):
    partitions = list(all_partitions(size))
    squares = 0
    for R in partitions:
        for S in partitions:
            lower = join_rel(R, S)
            # every T above R ∨ S, as a partition of the blocks of R ∨ S
            for P in all_partitions(len(lower.blocks)):
                T = EqRel.from_labels(size, [P.labels[lower.labels[x]] for x in range(size)])
                report = is_regular_pushout(quotient_square(R, S, T))
                composites = compose_rel(R, S) == T.to_relation() == compose_rel(S, R)
                assert report.verdict == composites, (R, S, T)
                assert report.trace[1]["holds"] == composites
                squares += 1
    return squares


@pytest.mark.integration_test
@pytest.mark.parametrize("size, squares", [(1, 1), (2, 5)])
def test_regular_pushouts_on_tiny_carriers(size, squares):
    assert regular_pushouts_match_composites(size) == squares


@pytest.mark.integration_test
@pytest.mark.parametrize("size", [3, 4, 5])
def test_regular_pushouts_on_small_carriers(size):
    assert regular_pushouts_match_composites(size) > 0


@pytest.mark.system_test
def test_regular_pushouts_on_six_elements():
    assert regular_pushouts_match_composites(6) > 0
