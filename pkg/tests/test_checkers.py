import itertools
import json

import numpy as np
import pytest

from catca.ca import (CellularAutomaton, elementary_ca, identity_ca, make_ca, realize,
                      shift_ca, shift_morphism)
from catca.categories import FINSET, FINPOSET, REL, Morphism, RelObj, SetObj, finvect
from catca.checkers import (Rejection, check_equivariance, check_local, check_uniform, chl_extract,
                            essential_coordinates, minimal_neighborhood)
from catca.groups import FreeProduct, Subset, ZPower, cyclic, symmetric
from catca.sampling import category, perturb, random_ca, random_object

Z = ZPower(1)
Z2, Z4 = cyclic(2), cyclic(4)
F2 = finvect(2)
A2 = SetObj(2)


def table(cat, A, I, B, fn):
    """Table morphism ``A^I -> B`` from a python function of the dict ``{i: a_i}``."""
    P = cat.power(A, I)
    data = [fn(dict(zip(P.index, cat.unpack(P, code)))) for code in range(cat.size(P.carrier))]
    return Morphism(cat, P.carrier, B, np.array(data, dtype=np.int64))


def rule110(v, left, mid, right):
    return (110 >> (4 * v[left] + 2 * v[mid] + v[right])) & 1


# -- check_local ---------------------------------------------------------------------

def test_projection_is_local_on_its_coordinate():
    I = Subset(Z, [(-1,), (0,), (1,)])
    P = FINSET.power(A2, I.elements)
    for s in I:
        ok, mu = check_local(FINSET.projection(P, s), A2, I, [s])
        assert ok and mu == FINSET.identity(A2)


def test_rule90_row_in_finvect():
    I = Subset(Z, [(-1,), (0,), (1,)])
    A = F2.obj(1)
    P = F2.power(A, I.elements)
    h = Morphism(F2, P.carrier, A, np.array([[1, 0, 1]]))
    ok, mu = check_local(h, A, I, [(-1,), (1,)])
    assert ok and mu.data.tolist() == [[1, 1]]
    # middle column is the zero block, so {0} alone cannot carry h
    assert check_local(h, A, I, [(0,)]) == (False, None)


def test_xor_is_not_local_on_one_coordinate():
    I = (0, 1)
    h = table(FINSET, A2, I, A2, lambda v: v[0] ^ v[1])
    for s in I:
        ok, mu = check_local(h, A2, I, [s])
        assert not ok and mu is None
    # fiber violation: (0,0) and (0,1) restrict to the same value but disagree
    assert h.data[0] != h.data[1]
    assert check_local(h, A2, I, I)[0]


def test_rel_locality():
    A = RelObj(2)
    I = (0, 1)
    P = REL.power(A, I)
    pi1 = REL.projection(P, 1)
    assert check_local(pi1, A, I, [1])[0]
    assert not check_local(pi1, A, I, [0])[0]


# -- minimal neighborhoods --------------------------------------------------------------

def test_minimal_neighborhood_examples():
    I = Subset(Z, [(-1,), (0,), (1,)])
    const = table(FINSET, A2, I.elements, A2, lambda v: 1)
    assert minimal_neighborhood(const, A2, I).elements == ()
    r110 = table(FINSET, A2, I.elements, A2, lambda v: rule110(v, (-1,), (0,), (1,)))
    assert set(minimal_neighborhood(r110, A2, I)) == set(I)
    P = FINSET.power(A2, I.elements)
    assert minimal_neighborhood(FINSET.projection(P, (1,)), A2, I).elements == ((1,),)


@pytest.mark.parametrize("name", ["finset", "finvect2", "finvect3", "rel"])
def test_minimal_neighborhood_is_minimal(name):
    cat = category(name)
    rng = np.random.default_rng(0)
    G = cyclic(3)
    full = Subset(G, G.elements())
    for _ in range(30):
        A, B = random_object(cat, rng, max_size=2), random_object(cat, rng, max_size=2)
        tau = random_ca(G, A, B, rng)
        R = realize(tau)
        h = cat.compose(cat.projection(cat.power(B, G.elements()), G.identity), R)
        S = minimal_neighborhood(h, A, full)
        assert check_local(h, A, full, S)[0]
        for s in S:
            smaller = [t for t in S if t != s]
            assert not check_local(h, A, full, smaller)[0]


def test_minimal_neighborhood_finposet_verified():
    rng = np.random.default_rng(1)
    G = cyclic(3)
    full = Subset(G, G.elements())
    for _ in range(30):
        A, B = random_object(FINPOSET, rng, max_size=2), random_object(FINPOSET, rng, max_size=2)
        R = realize(random_ca(G, A, B, rng))
        h = FINPOSET.compose(FINPOSET.projection(FINPOSET.power(B, G.elements()), 0), R)
        S = minimal_neighborhood(h, A, full)
        assert check_local(h, A, full, S)[0]


def test_essential_coordinates_bruteforce():
    # independent scan: flip each coordinate of each input by hand
    rng = np.random.default_rng(2)
    I = (0, 1, 2)
    A = SetObj(3)
    for _ in range(20):
        vals = rng.integers(0, 2, size=27)
        vals[rng.integers(27)] = 1
        h = Morphism(FINSET, FINSET.power(A, I).carrier, A2, vals)
        ess = set()
        for x in itertools.product(range(3), repeat=3):
            for k in range(3):
                for v in range(3):
                    y = list(x)
                    y[k] = v
                    code = lambda t: 9 * t[0] + 3 * t[1] + t[2]
                    if vals[code(x)] != vals[code(y)]:
                        ess.add(I[k])
        assert set(essential_coordinates(h, A, I)) == ess


# -- equivariance -------------------------------------------------------------------------

def test_make_ca_is_equivariant():
    rng = np.random.default_rng(3)
    for G in [Z4, symmetric(3)]:
        tau = random_ca(G, A2, A2, rng)
        assert check_equivariance(tau).passed


def test_hand_built_non_equivariant_table_over_z2():
    # identity on A^{Z2} except that (0,1) maps to (1,1): 4-element table
    P = FINSET.power(A2, Z2.elements())
    data = np.arange(4)
    data[1] = 3
    f = Morphism(FINSET, P.carrier, P.carrier, data)
    tau_like = chl_extract(f, Z2, A2, A2)
    assert isinstance(tau_like, Rejection) and tau_like.g == 1
    lhs = FINSET.compose(f, shift_morphism(Z2, A2, 1))
    rhs = FINSET.compose(shift_morphism(Z2, A2, 1), f)
    assert lhs != rhs


def test_shift_ca_passes_equivariance():
    assert check_equivariance(shift_ca(Z4, A2, 1)).passed
    assert check_equivariance(shift_ca(Z, A2, (1,)), mode="ball", radius=2, samples=3).passed


def test_ball_mode_over_free_product():
    rng = np.random.default_rng(4)
    F = FreeProduct(Z2, cyclic(3))
    tau = random_ca(F, A2, A2, rng)
    rep = check_equivariance(tau, mode="ball", radius=2, samples=3)
    assert rep.passed and rep.cases == 3 * 8


def test_equivariance_report_json():
    rep = check_equivariance(elementary_ca(110), mode="ball", radius=2, samples=2, seed=5)
    d = json.loads(rep.to_json())
    assert d["verdict"] == "pass" and d["seed"] == 5 and d["check"] == "equivariance"
    with pytest.raises(ValueError):
        check_equivariance(elementary_ca(110), mode="sideways")


# -- uniformity and extraction ---------------------------------------------------------------

def test_uniform_reports_shift_neighborhood():
    rep = check_uniform(realize(shift_ca(Z4, A2, 1)), Z4, A2, A2)
    assert rep.passed
    assert rep.details["neighborhoods"][0] == (1,)
    assert all(rep.details["translates"].values())


def test_uniform_arbitrary_morphism_passes():
    P = FINSET.power(A2, Z2.elements())
    data = np.arange(4)
    data[1] = 3
    rep = check_uniform(Morphism(FINSET, P.carrier, P.carrier, data), Z2, A2, A2)
    assert rep.passed and not all(rep.details["translates"].values())


def test_chl_extract_rule110_over_z4():
    S = Subset(Z4, [3, 0, 1])
    P = FINSET.power(A2, S.elements)
    mu = table(FINSET, A2, S.elements, A2, lambda v: rule110(v, 3, 0, 1))
    tau = make_ca(Z4, A2, A2, S, mu)
    f = realize(tau)
    out = chl_extract(f, Z4, A2, A2)
    assert isinstance(out, CellularAutomaton)
    assert set(out.S) == {3, 0, 1}
    assert realize(out) == f


def test_chl_extract_identity():
    for cat, A in [(FINSET, SetObj(3)), (F2, F2.obj(2)), (REL, RelObj(2))]:
        G = cyclic(3)
        f = cat.identity(cat.power(A, G.elements()).carrier)
        out = chl_extract(f, G, A, A)
        assert out.S.elements == (0,)
        assert realize(out) == realize(identity_ca(G, A))


def test_chl_extract_rejects_perturbation():
    rng = np.random.default_rng(6)
    rejected = 0
    for _ in range(20):
        R = realize(random_ca(Z4, A2, A2, rng))
        bad = perturb(R, rng, avoid=lambda x: x in (0, 15))    # constant configs are shift-fixed
        out = chl_extract(bad, Z4, A2, A2)
        assert isinstance(out, Rejection)
        g = out.g
        assert FINSET.compose(bad, shift_morphism(Z4, A2, g)) != FINSET.compose(shift_morphism(Z4, A2, g), bad)
        rejected += 1
    assert rejected == 20
