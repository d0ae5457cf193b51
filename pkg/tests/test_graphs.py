import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sandpile_srg.errors import BadOrder, ComplementDegenerate
from sandpile_srg.gf import GF, lowest_irreducible
from sandpile_srg.graphs import (
    FAMILIES,
    Graph,
    NotSrg,
    build_family,
    complement,
    complete,
    cycle,
    kneser,
    laplacian,
    paley,
    petersen,
    rook,
    schlafli,
    shrikhande,
    srg_parameters,
    triangular,
)
from sandpile_srg.srg import SrgParams, complement_params

from conftest import BUILTIN


def _nx(G):
    return nx.from_numpy_array(G.to_array())


@pytest.mark.parametrize("G, expected", [
    (petersen(), (10, 3, 0, 1)),
    (shrikhande(), (16, 6, 2, 2)),
    (rook(4), (16, 6, 2, 2)),
    (paley(25), (25, 12, 5, 6)),
    (schlafli(), (27, 16, 10, 8)),
    (kneser(8, 2), (28, 15, 6, 10)),
    (triangular(8), (28, 12, 6, 4)),
    (paley(9), (9, 4, 1, 2)),
])
def test_generator_parameters(G, expected):
    assert srg_parameters(G) == SrgParams(*expected)


def test_rook_and_shrikhande_not_isomorphic():
    assert not nx.is_isomorphic(_nx(rook(4)), _nx(shrikhande()))


def test_kneser_5_2_is_petersen():
    assert nx.is_isomorphic(_nx(kneser(5, 2)), _nx(petersen()))


def test_paley_9_is_rook_3():
    assert nx.is_isomorphic(_nx(paley(9)), _nx(rook(3)))


def test_not_srg():
    res = srg_parameters(cycle(6))
    assert isinstance(res, NotSrg) and not res
    assert not srg_parameters(complete(5))
    assert not srg_parameters(Graph.from_edges(4, [(0, 1), (1, 2)]))
    assert srg_parameters(cycle(5)) == SrgParams(5, 2, 0, 1)


def test_laplacian_basic():
    assert laplacian(Graph.from_edges(3, [])).to_lists() == [[0] * 3] * 3
    L = laplacian(complete(4))
    assert L.to_lists() == (3 * np.eye(4, dtype=int) - (np.ones((4, 4), dtype=int) - np.eye(4, dtype=int))).tolist()


def test_bad_orders():
    for fn, args in [(rook, (1,)), (kneser, (4, 2)), (triangular, (3,)), (paley, (7,)), (paley, (21,))]:
        with pytest.raises(BadOrder):
            fn(*args)
    with pytest.raises(BadOrder):
        build_family("nope")
    with pytest.raises(BadOrder):
        build_family("rook")


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, [[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        Graph(2, [[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        Graph(2, [[0, 2], [2, 0]])


@pytest.mark.parametrize("name, args", BUILTIN)
def test_complement_relations(name, args):
    G = build_family(name, *args)
    assert complement(complement(G)) == G
    params = srg_parameters(G)
    try:
        co = complement_params(params)
    except ComplementDegenerate:
        assert not srg_parameters(complement(G))
        return
    assert srg_parameters(complement(G)) == co
    assert build_family(name, *args, complemented=True) == complement(G)


def test_families_table():
    assert set(FAMILIES) == {"petersen", "rook", "kneser", "triangular", "shrikhande", "schlafli", "paley"}


# finite fields

def test_lowest_irreducible():
    assert lowest_irreducible(5, 2) == [2, 0, 1]       # x^2 + 2
    assert lowest_irreducible(3, 2) == [1, 0, 1]       # x^2 + 1
    assert lowest_irreducible(2, 3) == [1, 1, 0, 1]    # x^3 + x + 1
    assert lowest_irreducible(7, 1) == [0, 1]


@settings(max_examples=200)
@given(st.sampled_from([9, 25, 27, 49, 13]), st.data())
def test_field_axioms(q, data):
    F = GF(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.pow(a, q - 1) == 1


@pytest.mark.parametrize("q", [5, 9, 13, 25, 27, 49])
def test_squares_are_half(q):
    F = GF(q)
    squares = {F.mul(x, x) for x in range(1, q)}
    assert len(squares) == (q - 1) // 2
    assert all(F.is_square(x) == (x in squares) for x in range(q))


def test_gf_rejects_non_prime_power():
    with pytest.raises(BadOrder):
        GF(12)
