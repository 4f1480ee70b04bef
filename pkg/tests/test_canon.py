import numpy as np
from hypothesis import given, settings, strategies as st

from regconn.canon import canonical_form, canonical_key, key_digest
from regconn.graph import Multigraph, complete_graph, cycle_graph, from_edges, path_graph, petersen_graph


def _random_graph(n, seed, max_mult=3):
    rng = np.random.default_rng(seed)
    a = np.triu(rng.integers(0, max_mult + 1, size=(n, n)), 1)
    return Multigraph(a + a.T)


def test_relabelled_triangle():
    g = complete_graph(3)
    assert canonical_key(g) == canonical_key(g.permute([2, 0, 1]))


def test_path_vs_triangle():
    assert canonical_key(path_graph(3)) != canonical_key(complete_graph(3))


def test_multiplicity_matters():
    a = from_edges(3, [(0, 1, 2), (1, 2, 1)])
    b = from_edges(3, [(0, 1, 1), (1, 2, 1)])
    assert canonical_key(a) != canonical_key(b)


def test_regular_nonisomorphic_pair():
    # C6 and two disjoint triangles share every degree-based invariant
    two_triangles = from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert canonical_key(cycle_graph(6)) != canonical_key(two_triangles)


def test_symmetric_matchings_give_one_key():
    # doubling either end edge of a path yields isomorphic multigraphs
    p = path_graph(3)
    a, b = p.with_edge_delta(0, 1, 1), p.with_edge_delta(1, 2, 1)
    assert canonical_key(a) == canonical_key(b)


def test_colours_distinguish():
    g = path_graph(3)
    assert canonical_key(g, [1, 0, 0]) != canonical_key(g, [0, 1, 0])
    assert canonical_key(g, [1, 0, 0]) == canonical_key(g, [0, 0, 1])


def test_canonical_form_is_fixed_point():
    g = petersen_graph().permute([3, 1, 4, 0, 9, 2, 6, 5, 8, 7])
    f = canonical_form(g)
    assert canonical_form(f) == f
    assert canonical_form(petersen_graph()) == f


def test_digest_shape():
    k = key_digest(canonical_key(complete_graph(4)))
    assert len(k) == 24 and int(k, 16) >= 0


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 9), seed=st.integers(0, 10**6), pseed=st.integers(0, 10**6))
def test_key_invariant_under_permutation(n, seed, pseed):
    g = _random_graph(n, seed)
    perm = np.random.default_rng(pseed).permutation(n).tolist()
    assert canonical_key(g) == canonical_key(g.permute(perm))


@settings(max_examples=80, deadline=None)
@given(n=st.integers(2, 6), s1=st.integers(0, 10**6), s2=st.integers(0, 10**6))
def test_equal_keys_imply_isomorphic(n, s1, s2):
    import itertools

    g, h = _random_graph(n, s1, 1), _random_graph(n, s2, 1)
    iso = any(g.permute(list(p)) == h for p in itertools.permutations(range(n)))
    assert (canonical_key(g) == canonical_key(h)) == iso
