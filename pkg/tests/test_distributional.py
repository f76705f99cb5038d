import numpy as np
import pytest
from hypothesis import given, strategies as st

from pregroup_lab import demo
from pregroup_lab.distributional import (ClusterMap, CooccurrenceTable, DistributionalError,
                                         build_cooccurrence, cluster_columns, format_table,
                                         learn_linear_map, ppmi, read_corpus, read_table)

RAW_CONTEXTS = ("pawn", "bank", "furniture", "log", "wood", "saw", "tree", "shirt", "boot", "beard")
CLUSTERS = ClusterMap.from_groups({"bank": ["pawn", "bank", "furniture"],
                                   "wood": ["log", "wood", "saw", "tree"],
                                   "fashion": ["shirt", "boot", "beard"]})


def test_hand_counted_window():
    t = build_cooccurrence([["the", "lumberjack", "saw", "the", "tree"]], ["lumberjack"],
                           ["saw", "tree"], 5)
    assert t.counts.tolist() == [[1, 1]]


def test_empty_corpus():
    t = build_cooccurrence([], ["a", "b"], ["c"], 5)
    assert not t.counts.any() and t.counts.shape == (2, 1)


def test_self_pair_convention():
    assert build_cooccurrence([["wood", "wood"]], ["wood"], ["wood"], 1).counts.tolist() == [[2]]


def test_window_stays_in_document():
    t = build_cooccurrence([["a"], ["b"]], ["a"], ["b"], 5)
    assert t.counts.tolist() == [[0]]


def test_window_radius_validated():
    with pytest.raises(DistributionalError):
        build_cooccurrence([["a"]], ["a"], ["a"], 0)


docs = st.lists(st.lists(st.sampled_from("abcd"), max_size=12), max_size=4)


@given(docs, st.integers(1, 4))
def test_symmetric_when_targets_are_contexts(corpus, k):
    c = build_cooccurrence(corpus, list("abcd"), list("abcd"), k).counts
    assert np.array_equal(c, c.T)


@given(docs, st.integers(1, 4))
def test_window_monotone(corpus, k):
    a = build_cooccurrence(corpus, list("ab"), list("cd"), k).counts
    b = build_cooccurrence(corpus, list("ab"), list("cd"), k + 1).counts
    assert np.all(a <= b)


def test_ppmi_examples():
    one = CooccurrenceTable(["t"], ["c"], [[5]])
    assert ppmi(one).counts.tolist() == [[0]]
    diag = ppmi(CooccurrenceTable("ab", "cd", [[1, 0], [0, 1]])).counts
    assert np.allclose(diag, [[np.log(2), 0], [0, np.log(2)]])
    assert not ppmi(CooccurrenceTable("ab", "cd", [[1, 1], [1, 1]])).counts.any()
    with pytest.raises(DistributionalError):
        ppmi(CooccurrenceTable("a", "c", [[0]]))


@given(st.lists(st.lists(st.integers(0, 9), min_size=3, max_size=3), min_size=1, max_size=4))
def test_ppmi_non_negative(rows):
    t = CooccurrenceTable([str(k) for k in range(len(rows))], "xyz", rows)
    if t.counts.sum() == 0:
        return
    out = ppmi(t).counts
    assert np.all(out >= 0) and np.all(out[t.counts == 0] == 0)


def test_table_validation():
    with pytest.raises(DistributionalError):
        CooccurrenceTable("aa", "c", [[1], [2]])
    with pytest.raises(DistributionalError):
        CooccurrenceTable("a", "c", [[-1]])


def test_lumberjack_clusters():
    raw = demo.Fixtures.load().raw
    assert raw.contexts == RAW_CONTEXTS
    out = cluster_columns(raw, CLUSTERS)
    assert out.contexts == ("bank", "wood", "fashion")
    assert out.row("lumberjack").tolist() == [0, 91, 6]
    assert out.row("lombard").tolist() == [42, 0, 0]


def test_printed_lombard_row_differs():
    fx = demo.Fixtures.load()
    assert fx.printed.row("lombard").tolist() == [16, 26, 0]
    assert "42" in demo.lombard_mismatch(fx, cluster_columns(fx.raw, fx.clusters))


def test_identity_clustering():
    t = CooccurrenceTable("ab", "cd", [[1, 2], [3, 4]])
    assert cluster_columns(t, ClusterMap.from_groups({"c": ["c"], "d": ["d"]})) == t


def test_unmapped_context_named():
    t = CooccurrenceTable("a", ["c", "e"], [[1, 2]])
    with pytest.raises(DistributionalError, match="'e'"):
        cluster_columns(t, ClusterMap.from_groups({"x": ["c"]}))


@given(st.lists(st.lists(st.integers(0, 50), min_size=10, max_size=10), min_size=1, max_size=3))
def test_clustering_preserves_row_sums(rows):
    t = CooccurrenceTable([str(k) for k in range(len(rows))], RAW_CONTEXTS, rows)
    assert np.array_equal(cluster_columns(t, CLUSTERS).counts.sum(axis=1), t.counts.sum(axis=1))


def test_single_pair_learning():
    m = learn_linear_map([((0, 91, 6), (0, 16, 73))])
    assert np.max(np.abs(m @ [0, 91, 6] - [0, 16, 73])) < 1e-9
    # minimum norm: nothing outside the span of the input
    assert np.allclose(m @ [1, 0, 0], 0) and np.allclose(m @ [0, 6, -91], 0)


def test_basis_pairs_give_identity():
    eye = np.eye(3)
    assert np.allclose(learn_linear_map([(e, e) for e in eye]), eye)


def test_overdetermined_matches_normal_equations():
    rng = np.random.default_rng(11)
    X, Y = rng.normal(size=(5, 3)), rng.normal(size=(5, 2))
    oracle = np.linalg.solve(X.T @ X, X.T @ Y).T
    assert np.max(np.abs(learn_linear_map(list(zip(X, Y))) - oracle)) <= 1e-6


def residual(pairs, m):
    return sum(float(np.sum((m @ x - y) ** 2)) for x, y in pairs)


@given(st.integers(0, 10_000))
def test_removing_a_pair_never_raises_residual(seed):
    rng = np.random.default_rng(seed)
    pairs = list(zip(rng.normal(size=(6, 3)), rng.normal(size=(6, 2))))
    fewer = pairs[:-1]
    assert residual(fewer, learn_linear_map(fewer)) <= residual(fewer, learn_linear_map(pairs)) + 1e-9


def test_learning_errors():
    with pytest.raises(DistributionalError):
        learn_linear_map([])
    with pytest.raises(DistributionalError):
        learn_linear_map([((1, 2), (1,)), ((1, 2, 3), (1,))])


def test_table_file_round_trip(tmp_path):
    t = CooccurrenceTable(["a b", "c"], ["x", "y"], [[1, 2.5], [0, 3]])
    (tmp_path / "t.tsv").write_text(format_table(t))
    assert read_table(tmp_path / "t.tsv") == t


def test_read_corpus(tmp_path):
    (tmp_path / "c.txt").write_text("The Cat\nsat\n\n\nA dog\n")
    assert read_corpus(tmp_path / "c.txt") == [["the", "cat", "sat"], ["a", "dog"]]
