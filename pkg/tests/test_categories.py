import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from catca.categories import (FINPOSET, FINSET, REL, PosetObj, RelObj, SetObj, chain, finvect,
                              translation_iso)
from catca.errors import CapabilityError, TypingError
from catca.sampling import INSTANCES, SMALL_POSETS, category, random_morphism, random_object

F2, F3 = finvect(2), finvect(3)


# -- composition and identities -------------------------------------------------------

def test_finset_swap_is_involution():
    A = SetObj(2)
    f = FINSET.morphism(A, A, [1, 0])
    assert (f @ f).data.tolist() == [0, 1]
    assert FINSET.compose(f, f) == FINSET.identity(A)


def test_finvect_matrix_product_mod2():
    V = F2.obj(2)
    f = F2.morphism(V, V, [[1, 1], [0, 1]])
    assert F2.compose(f, f).data.tolist() == [[1, 0], [0, 1]]


def test_rel_boolean_product():
    A = RelObj(2)
    f = REL.morphism(A, A, pairs=[(0, 0), (0, 1)])
    g = REL.morphism(A, A, pairs=[(1, 0)])
    assert REL.pairs(REL.compose(g, f)) == [(0, 0)]


def test_identities():
    assert FINSET.identity(SetObj(3)).data.tolist() == [0, 1, 2]
    assert (F3.identity(F3.obj(2)).data == np.eye(2, dtype=int)).all()
    assert REL.pairs(REL.identity(RelObj(3))) == [(0, 0), (1, 1), (2, 2)]


def test_compose_type_mismatch():
    f = FINSET.morphism(SetObj(2), SetObj(3), [0, 2])
    with pytest.raises(TypingError):
        FINSET.compose(f, f)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(INSTANCES), st.integers(0, 2**32 - 1))
def test_category_laws(name, seed):
    cat = category(name)
    rng = np.random.default_rng(seed)
    A, B, C, D = (random_object(cat, rng, max_size=4, max_dim=2) for _ in range(4))
    f, g, h = random_morphism(A, B, rng), random_morphism(B, C, rng), random_morphism(C, D, rng)
    assert cat.compose(h, cat.compose(g, f)) == cat.compose(cat.compose(h, g), f)
    assert cat.compose(cat.identity(B), f) == f == cat.compose(f, cat.identity(A))


# -- products -------------------------------------------------------------------

def test_product_carriers():
    P, pA, pB = FINSET.product(SetObj(2), SetObj(3))
    assert P.size == 6
    P, pA, pB = REL.product(RelObj(2), RelObj(3))
    assert P.size == 5
    P, pA, pB = F2.product(F2.obj(2), F2.obj(3))
    assert P.dim == 5
    assert (pA.data == np.eye(5, dtype=int)[:2]).all()
    assert (pB.data == np.eye(5, dtype=int)[2:]).all()


@pytest.mark.parametrize("name", INSTANCES)
def test_pair_of_projections_is_identity(name):
    cat = category(name)
    rng = np.random.default_rng(0)
    A, B = random_object(cat, rng), random_object(cat, rng)
    P, pA, pB = cat.product(A, B)
    assert cat.pair(pA, pB) == cat.identity(P)


def test_pair_of_constants():
    X, A, B = SetObj(2), SetObj(2), SetObj(2)
    f = FINSET.constant(X, A, 0)
    g = FINSET.constant(X, B, 1)
    h = FINSET.pair(f, g)
    P, pA, pB = FINSET.product(A, B)
    assert len(set(h.data.tolist())) == 1
    assert FINSET.compose(pA, h) == f and FINSET.compose(pB, h) == g


def test_rel_pair_is_summandwise_union():
    X, A, B = RelObj(1), RelObj(2), RelObj(3)
    f = REL.morphism(X, A, pairs=[(0, 0)])
    g = REL.morphism(X, B, pairs=[(0, 2)])
    h = REL.pair(f, g)
    assert REL.pairs(h) == [(0, 0), (0, 2 + 2)]       # (L,0) and (R,2)
    P, pA, pB = REL.product(A, B)
    # converse injections: composing with them recovers each component
    hm = h.data.astype(int)
    assert ((hm @ pA.data.astype(int)) > 0).tolist() == f.data.tolist()
    assert ((hm @ pB.data.astype(int)) > 0).tolist() == g.data.tolist()


def _all_tables(n, m):
    return itertools.product(range(m), repeat=n)


@pytest.mark.parametrize("x,a,b", list(itertools.product(range(1, 4), repeat=3)))
def test_finset_product_up_exhaustive(x, a, b):
    X, A, B = SetObj(x), SetObj(a), SetObj(b)
    P, pA, pB = FINSET.product(A, B)
    keys = {}
    for t in _all_tables(x, a * b):
        h = FINSET.morphism(X, P, list(t))
        keys[(FINSET.compose(pA, h), FINSET.compose(pB, h))] = h
    # one mediator per pair of maps
    assert len(keys) == a ** x * b ** x
    for f_t in _all_tables(x, a):
        for g_t in _all_tables(x, b):
            f, g = FINSET.morphism(X, A, list(f_t)), FINSET.morphism(X, B, list(g_t))
            assert keys[(f, g)] == FINSET.pair(f, g)


def test_finvect_uniqueness_by_rank():
    # h -> (pA h, pB h) is linear; injective iff [pA; pB] has full column rank
    for da, db in itertools.product(range(1, 3), repeat=2):
        P, pA, pB = F3.product(F3.obj(da), F3.obj(db))
        stacked = np.vstack([pA.data, pB.data])
        assert np.linalg.matrix_rank(stacked) == P.dim


# -- powers, restriction, pullback, pushforward -------------------------------------------

def test_power_digit_extraction():
    A = SetObj(2)
    P = FINSET.power(A, ("a", "b", "c"))
    assert P.carrier.size == 8
    assert FINSET.projection(P, "a").data[6] == 1       # 6 = 110 in base 2
    assert FINSET.projection(P, "c").data[6] == 0
    res = FINSET.restriction(A, ("a", "b", "c"), ("b",))
    assert res.data[6] == 1


def test_singleton_power_is_alphabet():
    for name in INSTANCES:
        cat = category(name)
        A = random_object(cat, np.random.default_rng(1), max_size=3, max_dim=2)
        P = cat.power(A, ("i",))
        assert cat.projection(P, "i") == cat.identity(A)


def test_rel_power_size():
    assert REL.power(RelObj(2), (0, 1)).carrier.size == 4


@pytest.mark.parametrize("name", INSTANCES)
def test_empty_power(name):
    cat = category(name)
    A = random_object(cat, np.random.default_rng(2))
    P = cat.power(A, ())
    expected = {"finset": 1, "finposet": 1, "rel": 0}
    if name.startswith("finvect"):
        assert P.carrier.dim == 0
    else:
        assert P.carrier.size == expected[name]


@pytest.mark.parametrize("name", INSTANCES)
def test_tuple_of_projections_is_identity(name):
    cat = category(name)
    A = random_object(cat, np.random.default_rng(3), max_size=2)
    P = cat.power(A, (0, 1, 2))
    assert cat.tuple([cat.projection(P, i) for i in P.index], P) == cat.identity(P.carrier)


def test_finvect_tuple_stacks_rows():
    V = F3.obj(2)
    rng = np.random.default_rng(4)
    fam = [random_morphism(V, V, rng) for _ in range(3)]
    P = F3.power(V, ("x", "y", "z"))
    h = F3.tuple(fam, P)
    assert (h.data == np.vstack([f.data for f in fam])).all()
    for i, f in zip(P.index, fam):
        assert F3.compose(F3.projection(P, i), h) == f


def test_index_pullback_swap():
    A = SetObj(2)
    swap = {0: 1, 1: 0}
    f = FINSET.index_pullback(swap.__getitem__, A, (0, 1), (0, 1))
    assert f.data[1] == 2          # 01 -> 10
    assert f.data[2] == 1


def test_index_pullback_identity():
    for name in INSTANCES:
        cat = category(name)
        A = random_object(cat, np.random.default_rng(5))
        I = ("p", "q")
        assert cat.index_pullback(lambda i: i, A, I, I) == cat.identity(cat.power(A, I).carrier)


def test_pushforward_block_diagonal():
    f = F2.morphism(F2.obj(2), F2.obj(1), [[1, 1]])
    g = F2.pushforward(f, (0, 1))
    assert g.data.tolist() == [[1, 1, 0, 0], [0, 0, 1, 1]]
    assert F2.pushforward(F2.identity(F2.obj(2)), (0, 1)) == F2.identity(F2.obj(4))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(INSTANCES), st.integers(0, 2**32 - 1))
def test_pushforward_and_pullback_functorial(name, seed):
    cat = category(name)
    rng = np.random.default_rng(seed)
    A, B, C = (random_object(cat, rng) for _ in range(3))
    f, g = random_morphism(A, B, rng), random_morphism(B, C, rng)
    I = (0, 1, 2)
    assert cat.pushforward(cat.compose(g, f), I) == cat.compose(cat.pushforward(g, I), cat.pushforward(f, I))
    u = dict(enumerate(rng.integers(0, 2, 3).tolist()))      # I -> J
    v = dict(enumerate(rng.integers(0, 4, 2).tolist()))      # J -> K
    J, K = (0, 1), (0, 1, 2, 3)
    lhs = cat.index_pullback(lambda i: v[u[i]], A, I, K)
    rhs = cat.compose(cat.index_pullback(u.__getitem__, A, I, J), cat.index_pullback(v.__getitem__, A, J, K))
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(INSTANCES), st.integers(0, 2**32 - 1))
def test_restriction_projection_equations(name, seed):
    cat = category(name)
    rng = np.random.default_rng(seed)
    A = random_object(cat, rng)
    I = ("a", "b", "c", "d")
    S = tuple(i for i in I if rng.random() < 0.5)
    res = cat.restriction(A, I, S)
    PI, PS = cat.power(A, I), cat.power(A, S)
    for s in S:
        assert cat.compose(cat.projection(PS, s), res) == cat.projection(PI, s)


def test_translation_iso_reindexes():
    from catca.groups import Subset, ZPower
    Z = ZPower(1)
    A = SetObj(2)
    S = Subset(Z, [(0,), (1,)])
    T = translation_iso(A, S, (1,))           # A^{{1,2}} -> A^{{0,1}}
    assert T.data.tolist() == [0, 1, 2, 3]     # same digit positions, relabelled indices
    assert translation_iso(A, S, (0,)) == FINSET.identity(FINSET.power(A, S).carrier)


# -- element layer -------------------------------------------------------------------

def test_elements_and_apply():
    assert FINSET.elements(SetObj(3)) == [0, 1, 2]
    assert len(F2.elements(F2.obj(2))) == 4
    assert FINPOSET.elements(chain(2)) == [0, 1]
    assert FINSET.apply(FINSET.morphism(SetObj(3), SetObj(3), [2, 0, 1]), 0) == 2
    m = F3.morphism(F3.obj(2), F3.obj(2), [[1, 2], [0, 1]])
    assert F3.apply(m, (1, 1)) == (0, 1)


def test_rel_has_no_points():
    with pytest.raises(CapabilityError):
        REL.elements(RelObj(2))


@pytest.mark.parametrize("name", ["finset", "finvect2", "finvect3", "finposet"])
def test_element_layer_consistent(name):
    cat = category(name)
    rng = np.random.default_rng(6)
    for _ in range(20):
        A, B, C = (random_object(cat, rng, max_size=4, max_dim=2) for _ in range(3))
        f, g = random_morphism(A, B, rng), random_morphism(B, C, rng)
        gf = cat.compose(g, f)
        for x in cat.elements(A):
            assert cat.apply(gf, x) == cat.apply(g, cat.apply(f, x))


# -- posets --------------------------------------------------------------------------

def test_poset_validation():
    with pytest.raises(TypingError):
        PosetObj([[1, 1], [1, 1]])          # not antisymmetric
    with pytest.raises(TypingError):
        PosetObj([[1, 1, 0], [0, 1, 1], [0, 0, 1]])   # not transitive
    with pytest.raises(TypingError):
        FINPOSET.morphism(chain(2), chain(2), [1, 0])


def test_poset_power_is_product_order():
    P = SMALL_POSETS[4]           # V shape
    pw = FINPOSET.power(P, (0, 1))
    for x, y in itertools.product(range(pw.carrier.size), repeat=2):
        xs, ys = FINPOSET.unpack(pw, x), FINPOSET.unpack(pw, y)
        assert pw.carrier.leq[x, y] == all(P.leq[a, b] for a, b in zip(xs, ys))


def test_monotone_majority():
    two = chain(2)
    P = FINPOSET.power(two, (0, 1, 2))
    table = [int(sum(FINPOSET.unpack(P, c)) >= 2) for c in range(8)]
    FINPOSET.morphism(P.carrier, two, table)   # validator passes
    assert FINPOSET.is_monotone(P.carrier, two, np.array(table))
