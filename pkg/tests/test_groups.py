import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from catca.errors import MembershipError, TypingError
from catca.groups import (LEFT, RIGHT, FiniteGroup, FreeProduct, GeneratorHom, MatrixHom, PairHom,
                          Subset, TableHom, ZPower, ball, check_hom_law, compose_homs, cyclic,
                          embedding, homomorphisms, identity_hom, right_translation, subset_image,
                          subset_product, subset_translate, symmetric, trivial_hom)

Z = ZPower(1)
Z2 = ZPower(2)
F23 = FreeProduct(cyclic(2), cyclic(3))


def z(*xs):
    return Subset(Z, [(x,) for x in xs])


# -- finite tables -------------------------------------------------------------

@pytest.mark.parametrize("G", [cyclic(n) for n in range(1, 7)] + [symmetric(3)])
def test_group_axioms_exhaustive(G):
    e = G.identity
    for a, b, c in itertools.product(G.elements(), repeat=3):
        assert G.op(G.op(a, b), c) == G.op(a, G.op(b, c))
    for a in G.elements():
        assert G.op(a, e) == G.op(e, a) == a
        assert G.op(a, G.inv(a)) == e


def test_z4_product():
    assert cyclic(4).op(2, 3) == 1


def test_s3_transposition_squares_to_identity():
    S3 = symmetric(3)
    # brute-force the permutations back out of lexicographic order
    perms = list(itertools.permutations(range(3)))
    for i, p in enumerate(perms):
        if sum(p[k] != k for k in range(3)) == 2:
            assert S3.op(i, i) == S3.identity
    # the table is the composition table of the permutations
    for i, j in itertools.product(range(6), repeat=2):
        comp = tuple(perms[i][perms[j][k]] for k in range(3))
        assert perms[S3.op(i, j)] == comp


@pytest.mark.parametrize("table", [
    [[0, 1], [1, 1]],                      # not a latin square
    [[0, 1, 2], [1, 0, 2], [2, 2, 0]],     # repeated entries
    [[1, 0], [0, 1]],                      # 0 is not the identity
])
def test_bad_tables_rejected(table):
    with pytest.raises(TypingError):
        FiniteGroup(table)


def test_nonassociative_latin_square_rejected():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(TypingError):
        FiniteGroup(t)


def test_membership():
    with pytest.raises(MembershipError):
        cyclic(3).check(3)
    assert not F23.contains(((LEFT, 1), (LEFT, 1)))     # not reduced
    assert F23.contains(((LEFT, 1), (RIGHT, 2)))


# -- free products ---------------------------------------------------------------

def test_free_product_cancellation():
    a = ((LEFT, 1),)
    assert F23.op(a, a) == ()
    assert F23.op(((RIGHT, 1),), ((RIGHT, 1),)) == ((RIGHT, 2),)


def _naive_reduce(letters, F):
    """Stack-based reduction, written independently of FreeProduct.op."""
    out = []
    for side, v in letters:
        if out and out[-1][0] == side:
            w = F.factor(side).op(out[-1][1], v)
            out.pop()
            if w != F.factor(side).identity:
                out.append((side, w))
        elif v != F.factor(side).identity:
            out.append((side, v))
    return tuple(out)


words = st.lists(st.tuples(st.sampled_from([LEFT, RIGHT]), st.integers(0, 5)), max_size=6)


@settings(max_examples=1000, deadline=None)
@given(words, words)
def test_reduction_confluent(u, v):
    F = F23
    fix = lambda w: [(s, x % (2 if s == LEFT else 3)) for s, x in w]
    u, v = fix(u), fix(v)
    ru, rv = _naive_reduce(u, F), _naive_reduce(v, F)
    assert F.op(ru, rv) == _naive_reduce(u + v, F)


@settings(max_examples=200, deadline=None)
@given(words, words, words)
def test_free_product_associative(u, v, w):
    F = F23
    fix = lambda x: _naive_reduce([(s, t % (2 if s == LEFT else 3)) for s, t in x], F)
    a, b, c = fix(u), fix(v), fix(w)
    assert F.op(F.op(a, b), c) == F.op(a, F.op(b, c))
    assert F.op(a, F.inv(a)) == ()


def test_free_product_coerce_accepts_json_letters():
    w = F23.coerce([{"side": "L", "id": 1}, {"side": "R", "id": 2}])
    assert w == ((LEFT, 1), (RIGHT, 2))


# -- translations and subsets -------------------------------------------------------

def test_right_translation():
    R = right_translation(cyclic(4), 1)
    assert R(0) == 1 and R(3) == 0
    R = right_translation(Z2, (1, 0))
    assert R((3, 5)) == (4, 5)
    G = symmetric(3)
    Re = right_translation(G, G.identity)
    assert all(Re(x) == x for x in G.elements())


def test_subset_product_over_z():
    T = S = z(-1, 0, 1)
    sums = {(a + b,) for a in (-1, 0, 1) for b in (-1, 0, 1)}
    assert set(subset_product(T, S)) == sums == set(z(-2, -1, 0, 1, 2))


def test_subset_product_z4_and_identity():
    Z4 = cyclic(4)
    assert subset_product(Subset(Z4, [1, 2]), Subset(Z4, [2])).elements == (0, 3)
    S = Subset(Z4, [1, 3])
    E = Subset(Z4, [0])
    assert subset_product(E, S) == S == subset_product(S, E)


def test_subset_translate():
    assert subset_translate(z(-1, 0, 1), (2,)) == z(1, 2, 3)
    Z4 = cyclic(4)
    assert subset_translate(Subset(Z4, [0, 2]), 2).elements == (0, 2)
    S = Subset(symmetric(3), [1, 4])
    assert subset_translate(S, 0) == S


def test_subset_image():
    parity = GeneratorHom(Z, cyclic(2), [1])
    assert subset_image(z(0, 1, 2), parity).elements == (0, 1)
    assert subset_image(z(0, 1, 2), identity_hom(Z)) == z(0, 1, 2)
    assert subset_image(z(0, 5, 7), trivial_hom(Z, cyclic(3))).elements == (0,)


# -- balls ------------------------------------------------------------------------

def test_ball_z():
    assert ball(Z, 2) == z(-2, -1, 0, 1, 2)


def test_ball_free_product_enumeration():
    expected = {(), ((LEFT, 1),), ((RIGHT, 1),), ((RIGHT, 2),),
                ((LEFT, 1), (RIGHT, 1)), ((LEFT, 1), (RIGHT, 2)),
                ((RIGHT, 1), (LEFT, 1)), ((RIGHT, 2), (LEFT, 1))}
    B = ball(F23, 2)
    assert len(B) == 8 and set(B) == expected


def test_ball_radius_zero_and_growth():
    for G in [cyclic(5), symmetric(3), Z2, F23]:
        assert ball(G, 0).elements == (G.identity,)
        for r in range(3):
            small, big = ball(G, r), ball(G, r + 1)
            assert small <= big
            for x in small:
                for s in G.generators:
                    assert G.op(x, s) in big


# -- homomorphisms ---------------------------------------------------------------------

def test_pair_hom_on_words():
    K = cyclic(6)
    phi = TableHom(cyclic(2), K, [0, 3])
    psi = TableHom(cyclic(3), K, [0, 2, 4])
    gamma = PairHom(phi, psi)
    assert gamma(()) == 0
    for g, h in itertools.product(range(2), range(3)):
        w = F23.op(F23.embed(LEFT, g), F23.embed(RIGHT, h))
        assert gamma(w) == K.op(phi(g), psi(h))
    assert check_hom_law(gamma, 3) is None


def test_matrix_hom():
    m = MatrixHom(Z, Z, [[2]])
    assert m((3,)) == (6,)
    assert check_hom_law(m, 3) is None


def test_table_hom_rejects_non_hom():
    with pytest.raises(TypingError):
        TableHom(cyclic(2), cyclic(4), [0, 1])


def test_generator_hom_needs_commuting_images():
    S3 = symmetric(3)
    with pytest.raises(TypingError):
        GeneratorHom(Z2, S3, [1, 2])


def _count_homs_bruteforce(H, G):
    n = 0
    for images in itertools.product(G.elements(), repeat=H.order):
        if all(images[H.op(a, b)] == G.op(images[a], images[b])
               for a in H.elements() for b in H.elements()):
            n += 1
    return n


@pytest.mark.parametrize("H,G", [(cyclic(2), cyclic(6)), (cyclic(3), cyclic(6)), (symmetric(3), symmetric(3)),
                                 (cyclic(4), cyclic(2)), (cyclic(6), symmetric(3))])
def test_homomorphisms_enumeration(H, G):
    homs = homomorphisms(H, G)
    assert len(homs) == _count_homs_bruteforce(H, G)
    assert len(set(tuple(h.images) for h in homs)) == len(homs)


def test_compose_and_embedding():
    K = cyclic(6)
    phi = TableHom(cyclic(2), K, [0, 3])
    iota = embedding(F23, LEFT)
    assert iota(1) == ((LEFT, 1),)
    gamma = PairHom(phi, TableHom(cyclic(3), K, [0, 2, 4]))
    assert compose_homs(gamma, iota) == phi


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_random_homs_respect_law(seed):
    rng = np.random.default_rng(seed)
    groups = [cyclic(n) for n in (2, 3, 4, 6)] + [symmetric(3)]
    H, G = groups[rng.integers(len(groups))], groups[rng.integers(len(groups))]
    homs = homomorphisms(H, G)
    phi = homs[rng.integers(len(homs))]
    for a, b in itertools.product(H.elements(), repeat=2):
        assert phi(H.op(a, b)) == G.op(phi(a), phi(b))
