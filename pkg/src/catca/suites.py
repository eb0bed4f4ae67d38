"""Named verification suites, one per structural result about CA in categories with products.

Every suite is a pure function of ``(params, seed)``: it draws its cases from a
seeded generator, checks exact morphism equalities over finite groups (or
pointwise equalities on balls over infinite ones) and returns a CheckReport.
A failing verdict always indicates an implementation bug.
"""
from __future__ import annotations

import itertools
from typing import Callable

import numpy as np

from .ca import (CellularAutomaton, SparseConfig, apply, cell_morphism, compose_ca, identity_ca,
                 make_ca, product_ca, pushforward_ca, realize, shift_ca, shift_morphism)
from .categories import FinPoset, FinVect, Morphism, Rel, TableCategory, translation_iso
from .checkers import (CheckReport, Rejection, check_uniform, chl_extract,
                       equivariance_counterexample, report)
from .errors import CatCAError
from .gca import (as_gca, compose_gca, factorize, make_gca, pullback_gca, realize_gca,
                  weak_product, weak_product_mediator)
from .groups import (FreeProduct, Subset, ZPower, ball, compose_homs, cyclic, homomorphisms,
                     identity_hom, right_translation, subset_translate, symmetric, trivial_hom,
                     TableHom, LEFT, RIGHT)
from .sampling import (INSTANCES, category, perturb, random_ca, random_dense_config, random_hom,
                       random_morphism, random_object, random_sparse_config, random_subset)

SUITES: dict[str, Callable] = {}
DEFAULTS: dict[str, dict] = {}


class Failure(Exception):
    def __init__(self, counterexample):
        super().__init__(counterexample)
        self.counterexample = counterexample


def suite(name: str, **defaults):
    def deco(fn):
        SUITES[name] = fn
        DEFAULTS[name] = defaults
        return fn
    return deco


def expect(cond: bool, **counterexample):
    if not cond:
        raise Failure(counterexample)


def named_group(name: str):
    if name == "Z":
        return ZPower(1)
    if name.startswith("Z^"):
        return ZPower(int(name[2:]))
    if name.startswith("Z"):
        return cyclic(int(name[1:]))
    if name.startswith("S"):
        return symmetric(int(name[1:]))
    raise ValueError(f"unknown group name {name!r}")


def run_suite(name: str, params: dict | None = None, seed: int = 0) -> CheckReport:
    if name not in SUITES:
        raise KeyError(name)
    p = {**DEFAULTS[name], **(params or {})}
    rng = np.random.default_rng(seed)
    try:
        cases, details = SUITES[name](rng, p)
    except Failure as exc:
        return report(name, p, seed, -1, exc.counterexample)
    return report(name, p, seed, cases, None, **details)


def run_all(seed: int = 0, params: dict | None = None) -> list[CheckReport]:
    return [run_suite(name, (params or {}).get(name), seed) for name in SUITES]


# helpers -----------------------------------------------------------------------

def _cats(p, concrete_only=False):
    names = [n for n in p["instances"] if not (concrete_only and n == "rel")]
    return [(n, category(n)) for n in names]


def _pick_group(rng, p):
    names = p["groups"]
    return named_group(names[rng.integers(len(names))])


def _alphabet(cat, rng, p):
    return random_object(cat, rng, max_size=p.get("max_alphabet", 3), max_dim=p.get("max_dim", 1))


def _case(**kw):
    return {k: repr(v) if not isinstance(v, (int, str, float, list, tuple, dict)) else v
            for k, v in kw.items()}


# -- categories ------------------------------------------------------------------

def _rel_candidates(x: int, n: int):
    """Every relation ``x -> n`` as a stacked boolean array."""
    bits = (np.arange(2 ** (x * n), dtype=np.int64)[:, None] >> np.arange(x * n)) & 1
    return bits.astype(bool).reshape(-1, x, n)


def _check_product_up(cat, X, A, B, rng, pair_samples):
    """Existence and uniqueness of pairing, by enumerating every candidate ``X -> A x B``."""
    P, pA, pB = cat.product(A, B)
    if isinstance(cat, Rel):
        cand = _rel_candidates(X.size, P.size).astype(np.int64)
        ka = ((cand @ pA.data.astype(np.int64)) > 0).reshape(len(cand), -1)
        kb = ((cand @ pB.data.astype(np.int64)) > 0).reshape(len(cand), -1)
        keys = np.unique(np.hstack([ka, kb]), axis=0)
        n_cand, n_keys = len(cand), len(keys)
        n_pairs = 2 ** (X.size * A.size) * 2 ** (X.size * B.size)
    else:
        seen = set()
        n_cand = 0
        for h in cat.all_morphisms(X, P):
            n_cand += 1
            seen.add((cat.compose(pA, h), cat.compose(pB, h)))
        n_keys = len(seen)
        n_pairs = sum(1 for _ in cat.all_morphisms(X, A)) * sum(1 for _ in cat.all_morphisms(X, B))
    # injective and onto Hom(X,A) x Hom(X,B): every pair has exactly one mediator
    expect(n_cand == n_keys == n_pairs, what="product-uniqueness", X=repr(X), A=repr(A), B=repr(B),
           candidates=n_cand, distinct=n_keys, pairs=n_pairs)
    for _ in range(pair_samples):
        f, g = random_morphism(X, A, rng), random_morphism(X, B, rng)
        h = cat.pair(f, g)
        expect(cat.compose(pA, h) == f and cat.compose(pB, h) == g, what="pair-equations",
               X=repr(X), A=repr(A), B=repr(B))
    return n_cand


def _small_objects(cat, max_size):
    if isinstance(cat, FinVect):
        return [cat.obj(d) for d in range(1, 3)]
    if isinstance(cat, FinPoset):
        from .sampling import SMALL_POSETS
        return [P for P in SMALL_POSETS if P.size <= max_size]
    return [cat.obj(n) for n in range(1, max_size + 1)]


@suite("category-laws", instances=list(INSTANCES), samples=200, max_size=3, pair_samples=5)
def _category_laws(rng, p):
    cases = 0
    for name, cat in _cats(p):
        objs = _small_objects(cat, p["max_size"])
        pick = lambda: objs[rng.integers(len(objs))]
        for _ in range(p["samples"]):
            A, B, C, D = pick(), pick(), pick(), pick()
            f, g, h = random_morphism(A, B, rng), random_morphism(B, C, rng), random_morphism(C, D, rng)
            expect(cat.compose(h, cat.compose(g, f)) == cat.compose(cat.compose(h, g), f),
                   what="associativity", instance=name)
            expect(cat.compose(cat.identity(B), f) == f == cat.compose(f, cat.identity(A)),
                   what="identity", instance=name)
            cases += 1
        for X, A, B in itertools.product(objs, repeat=3):
            cases += _check_product_up(cat, X, A, B, rng, p["pair_samples"])
    return cases, {}


# -- configuration-object lemmas ------------------------------------------------------

LEMMA_GROUPS = ["Z2", "Z3", "Z4", "S3"]


def _lemma_setup(p):
    for gname in p["groups"]:
        for name, cat in _cats(p):
            yield gname, named_group(gname), name, cat


@suite("restriction-transitivity", instances=list(INSTANCES), groups=LEMMA_GROUPS, samples=10,
       max_alphabet=3)
def _res_transitivity(rng, p):
    cases = 0
    for gname, G, name, cat in _lemma_setup(p):
        for _ in range(p["samples"]):
            A = _alphabet(cat, rng, p)
            T = random_subset(G, rng, len(G), 0)
            S = Subset(G, [t for t in T if rng.random() < 0.5])
            I = G.elements()
            lhs = cat.restriction(A, I, S)
            rhs = cat.compose(cat.restriction(A, T, S), cat.restriction(A, I, T))
            expect(lhs == rhs, group=gname, instance=name, S=S.elements, T=T.elements)
            expect(cat.restriction(A, I, I) == cat.identity(cat.power(A, I).carrier),
                   group=gname, instance=name, what="Res^I_I = id")
            cases += 1
    return cases, {}


@suite("translation-restriction", instances=list(INSTANCES), groups=LEMMA_GROUPS, samples=10,
       max_alphabet=3)
def _translation_restriction(rng, p):
    cases = 0
    for gname, G, name, cat in _lemma_setup(p):
        for _ in range(p["samples"]):
            A = _alphabet(cat, rng, p)
            S = random_subset(G, rng, len(G), 0)
            I = G.elements()
            for g in I:
                lhs = cat.compose(translation_iso(A, S, g), cat.restriction(A, I, subset_translate(S, g)))
                rhs = cat.compose(cat.restriction(A, I, S), shift_morphism(G, A, g))
                expect(lhs == rhs, group=gname, instance=name, S=S.elements, g=g)
                cases += 1
    return cases, {}


@suite("pullback-contravariance", instances=list(INSTANCES), groups=LEMMA_GROUPS, samples=10,
       max_alphabet=3)
def _pullback_contravariance(rng, p):
    cases = 0
    for gname, G, name, cat in _lemma_setup(p):
        I = G.elements()
        for _ in range(p["samples"]):
            A = _alphabet(cat, rng, p)
            # arbitrary functions I -> J -> K between index sets
            J = tuple(range(int(rng.integers(1, 5))))
            K = tuple(f"k{i}" for i in range(int(rng.integers(1, 5))))
            f = dict(zip(I, rng.choice(len(J), len(I)).tolist()))
            g = {j: K[k] for j, k in zip(J, rng.choice(len(K), len(J)).tolist())}
            gf = cat.index_pullback(lambda i: g[f[i]], A, I, K)
            fg = cat.compose(cat.index_pullback(f.__getitem__, A, I, J),
                             cat.index_pullback(g.__getitem__, A, J, K))
            expect(gf == fg, group=gname, instance=name, f=f, g=g)
            expect(cat.index_pullback(lambda i: i, A, I, I) == cat.identity(cat.power(A, I).carrier),
                   group=gname, instance=name, what="id^* = id")
            cases += 1
    return cases, {}


@suite("shift-action", instances=list(INSTANCES), groups=LEMMA_GROUPS, samples=2, max_alphabet=3)
def _shift_action(rng, p):
    cases = 0
    for gname, G, name, cat in _lemma_setup(p):
        for _ in range(p["samples"]):
            A = _alphabet(cat, rng, p)
            P = cat.power(A, G.elements())
            shifts = {g: shift_morphism(G, A, g) for g in G.elements()}
            for g, h in itertools.product(G.elements(), repeat=2):
                expect(shifts[G.op(g, h)] == cat.compose(shifts[g], shifts[h]),
                       group=gname, instance=name, what="shift_gh = shift_g o shift_h", g=g, h=h)
                expect(cat.projection(P, G.op(h, g)) == cat.compose(cat.projection(P, h), shifts[g]),
                       group=gname, instance=name, what="pi_hg = pi_h o shift_g", g=g, h=h)
                cases += 1
    return cases, {}


@suite("pushforward-functor", instances=list(INSTANCES), groups=LEMMA_GROUPS, samples=10,
       max_alphabet=3)
def _pushforward_functor(rng, p):
    cases = 0
    for gname, G, name, cat in _lemma_setup(p):
        I = G.elements()
        for _ in range(p["samples"]):
            A, B, C = (_alphabet(cat, rng, p) for _ in range(3))
            f, g = random_morphism(A, B, rng), random_morphism(B, C, rng)
            expect(cat.pushforward(cat.compose(g, f), I)
                   == cat.compose(cat.pushforward(g, I), cat.pushforward(f, I)),
                   group=gname, instance=name, what="(g f)_* = g_* f_*")
            expect(cat.pushforward(cat.identity(A), I) == cat.identity(cat.power(A, I).carrier),
                   group=gname, instance=name, what="id_* = id")
            cases += 1
    return cases, {}


@suite("pullback-pushforward-square", instances=list(INSTANCES), groups=LEMMA_GROUPS, samples=3,
       max_alphabet=3)
def _tn_square(rng, p):
    cases = 0
    names = p["groups"]
    for gname, hname in itertools.product(names, repeat=2):
        G, H = named_group(gname), named_group(hname)
        homs = homomorphisms(H, G)
        for name, cat in _cats(p):
            for _ in range(p["samples"]):
                A, B = _alphabet(cat, rng, p), _alphabet(cat, rng, p)
                f = random_morphism(A, B, rng)
                phi = homs[rng.integers(len(homs))]
                lhs = cat.compose(cat.index_pullback(phi, B, H.elements(), G.elements()),
                                  cat.pushforward(f, G.elements()))
                rhs = cat.compose(cat.pushforward(f, H.elements()),
                                  cat.index_pullback(phi, A, H.elements(), G.elements()))
                expect(lhs == rhs, G=gname, H=hname, instance=name, phi=list(phi.images))
                cases += 1
    return cases, {}


# -- CA over one universe ----------------------------------------------------------

CA_GROUPS = ["Z2", "Z3", "Z4", "Z5", "Z6", "S3"]


@suite("defining-equation", instances=list(INSTANCES), groups=CA_GROUPS, samples=20, max_alphabet=3)
def _defining_equation(rng, p):
    cases = 0
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            G = _pick_group(rng, p)
            A, B = _alphabet(cat, rng, p), _alphabet(cat, rng, p)
            tau = random_ca(G, A, B, rng)
            R = realize(tau)
            PB = cat.power(B, G.elements())
            for g in G.elements():
                expect(cat.compose(cat.projection(PB, g), R) == cell_morphism(G, tau.rule, g),
                       instance=name, group=repr(G), g=g, S=tau.S.elements)
            g = equivariance_counterexample(R, G, A, B)
            expect(g is None, instance=name, group=repr(G), what="equivariance", g=g)
            cases += 1
    return cases, {}


@suite("equivariant-uniqueness", instances=list(INSTANCES), groups=CA_GROUPS, samples=20,
       max_alphabet=3)
def _equivariant_uniqueness(rng, p):
    """Equivariant morphisms agreeing at the identity cell are equal."""
    cases = 0
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            G = _pick_group(rng, p)
            A, B = _alphabet(cat, rng, p), _alphabet(cat, rng, p)
            tau = random_ca(G, A, B, rng)
            others = [random_ca(G, A, B, rng)]
            mu2 = perturb(tau.mu, rng)
            if mu2 is not None:
                others.append(make_ca(G, A, B, tau.S, mu2))
            big = Subset(G, G.elements())
            others.append(make_ca(G, A, B, big, cat.compose(
                tau.mu, cat.restriction(A, big, tau.S))))   # same CA, larger window
            Rt = realize(tau)
            pe = cat.projection(cat.power(B, G.elements()), G.identity)
            for sigma in others:
                Rs = realize(sigma)
                expect((cat.compose(pe, Rt) == cat.compose(pe, Rs)) == (Rt == Rs),
                       instance=name, group=repr(G))
                cases += 1
    return cases, {}


@suite("composition", instances=list(INSTANCES), groups=CA_GROUPS, samples=100, max_alphabet=3,
       max_nbhd=2, infinite_samples=100, radius=3)
def _composition(rng, p):
    cases = 0
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            G = _pick_group(rng, p)
            A, B, C = (_alphabet(cat, rng, p) for _ in range(3))
            tau = random_ca(G, A, B, rng, p["max_nbhd"])
            sigma = random_ca(G, B, C, rng, p["max_nbhd"])
            comp = compose_ca(sigma, tau)
            TS = {G.op(t, s) for t in tau.S for s in sigma.S}
            expect(set(comp.S) == TS, instance=name, group=repr(G), what="neighborhood TS")
            expect(realize(comp) == cat.compose(realize(sigma), realize(tau)),
                   instance=name, group=repr(G), T=tau.S.elements, S=sigma.S.elements)
            cases += 1
    Z = ZPower(1)
    window = ball(Z, p["radius"])
    for name, cat in _cats(p, concrete_only=True):
        for _ in range(p["infinite_samples"]):
            A, B, C = (_alphabet(cat, rng, p) for _ in range(3))
            tau = random_ca(Z, A, B, rng, p["max_nbhd"])
            sigma = random_ca(Z, B, C, rng, p["max_nbhd"])
            comp = compose_ca(sigma, tau)
            c = random_sparse_config(Z, A, rng, p["radius"] + 4)
            lhs, rhs = apply(comp, c), apply(sigma, apply(tau, c))
            for x in window:
                expect(lhs.at(x) == rhs.at(x), instance=name, group="Z", cell=x,
                       T=tau.S.elements, S=sigma.S.elements)
            cases += 1
    return cases, {}


def _constant_code(cat, P, x) -> bool:
    digits = cat.unpack(P, x)
    return len(set(digits)) <= 1


@suite("chl-roundtrip", instances=list(INSTANCES), groups=CA_GROUPS, samples=100, perturbations=50,
       max_alphabet=3)
def _chl_roundtrip(rng, p):
    cases = 0
    rejected = {}
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            G = _pick_group(rng, p)
            A, B = _alphabet(cat, rng, p), _alphabet(cat, rng, p)
            tau = random_ca(G, A, B, rng)
            R = realize(tau)
            out = chl_extract(R, G, A, B)
            expect(isinstance(out, CellularAutomaton), instance=name, group=repr(G),
                   what="equivariant morphism rejected")
            expect(realize(out) == R, instance=name, group=repr(G), what="roundtrip")
            expect(set(out.S) <= set(tau.S), instance=name, what="extracted window not minimal")
            rep = check_uniform(R, G, A, B)
            expect(all(rep.details["translates"].values()), instance=name, what="S_g = S_e g")
            cases += 1
        count, attempts = 0, 0
        while count < p["perturbations"] and attempts < 20 * p["perturbations"]:
            attempts += 1
            G = _pick_group(rng, p)
            A, B = _alphabet(cat, rng, p), _alphabet(cat, rng, p)
            R = realize(random_ca(G, A, B, rng))
            avoid = None
            if isinstance(cat, TableCategory):
                P = cat.power(A, G.elements())
                avoid = lambda x: _constant_code(cat, P, x)
            bad = perturb(R, rng, avoid)
            if bad is None:
                continue
            out = chl_extract(bad, G, A, B)
            expect(isinstance(out, Rejection), instance=name, group=repr(G), what="perturbation accepted")
            g = out.g
            # re-verify the counterexample independently of the extractor
            expect(cat.compose(bad, shift_morphism(G, A, g)) != cat.compose(shift_morphism(G, B, g), bad),
                   instance=name, what="counterexample does not witness", g=g)
            count += 1
            cases += 1
        rejected[name] = count
        expect(count == p["perturbations"], instance=name, what="not enough perturbations",
               produced=count)
    return cases, {"rejected": rejected}


@suite("pushforward-ca", instances=list(INSTANCES), groups=CA_GROUPS, samples=20, max_alphabet=3)
def _pushforward_ca(rng, p):
    cases = 0
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            G = _pick_group(rng, p)
            A, B, C = (_alphabet(cat, rng, p) for _ in range(3))
            f, g = random_morphism(A, B, rng), random_morphism(B, C, rng)
            Rf = realize(pushforward_ca(f, G))
            expect(Rf == cat.pushforward(f, G.elements()), instance=name, what="f_*^G is a CA")
            expect(realize(pushforward_ca(cat.compose(g, f), G))
                   == cat.compose(realize(pushforward_ca(g, G)), Rf), instance=name, what="functor")
            expect(realize(pushforward_ca(cat.identity(A), G)) == realize(identity_ca(G, A)),
                   instance=name, what="id_*")
            cases += 1
    return cases, {}


@suite("product", instances=list(INSTANCES), groups=CA_GROUPS, samples=50, candidates=20,
       max_alphabet=3, max_factor=2)
def _product(rng, p):
    cases = 0
    rejected = dict.fromkeys(p["instances"], 0)
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            G = _pick_group(rng, p)
            C = _alphabet(cat, rng, p)
            # factors stay small: (A x B)^G is the carrier everything is realized on.  A
            # one-element product admits no second candidate, so redraw until it has two.
            while True:
                A, B = (_alphabet(cat, rng, {**p, "max_alphabet": p["max_factor"]}) for _ in range(2))
                if not isinstance(cat, TableCategory) or cat.size(cat.product(A, B)[0]) > 1:
                    break
            alpha, beta = random_ca(G, C, A, rng), random_ca(G, C, B, rng)
            tau, pa, pb = product_ca(alpha, beta)
            Ra, Rb = realize(pa), realize(pb)
            Rt = realize(tau)
            expect(cat.compose(Ra, Rt) == realize(alpha) and cat.compose(Rb, Rt) == realize(beta),
                   instance=name, group=repr(G), what="projection equations")
            RA, RB = realize(alpha), realize(beta)
            found, tries = 0, 0
            while found < p["candidates"] and tries < 20 * p["candidates"]:
                tries += 1
                if tries % 2:
                    nu = perturb(tau.mu, rng)
                    if nu is None:
                        continue
                    sigma = make_ca(G, C, tau.B, tau.S, nu)
                else:
                    sigma = random_ca(G, C, tau.B, rng)
                Rs = realize(sigma)
                both = cat.compose(Ra, Rs) == RA and cat.compose(Rb, Rs) == RB
                expect(both == (Rs == Rt), instance=name, group=repr(G), what="uniqueness")
                if Rs != Rt:
                    found += 1
                    rejected[name] += 1
                cases += 1
            expect(found == p["candidates"], instance=name, what="not enough distinct candidates",
                   produced=found)
    return cases, {"rejected_candidates": rejected}


# -- generalized CA ----------------------------------------------------------------

GCA_GROUPS = ["Z2", "Z3", "Z4", "Z6", "S3"]


def _random_gca(rng, p, cat, G=None, H=None, A=None, B=None, phi=None):
    G = G or _pick_group(rng, p)
    H = H or _pick_group(rng, p)
    phi = phi or random_hom(H, G, rng)
    A = A or _alphabet(cat, rng, p)
    B = B or _alphabet(cat, rng, p)
    S = random_subset(G, rng, 2)
    return make_gca(G, H, phi, A, B, S, random_morphism(cat.power(A, S).carrier, B, rng))


@suite("phi-equivariance", instances=list(INSTANCES), groups=GCA_GROUPS, samples=30, max_alphabet=3)
def _phi_equivariance(rng, p):
    cases = 0
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            tau = _random_gca(rng, p, cat)
            R = realize_gca(tau)
            for h in tau.H.elements():
                expect(cat.compose(R, shift_morphism(tau.G, tau.A, tau.phi(h)))
                       == cat.compose(shift_morphism(tau.H, tau.B, h), R),
                       instance=name, G=repr(tau.G), H=repr(tau.H), h=h)
                cases += 1
    return cases, {}


@suite("gca-composition", instances=list(INSTANCES), groups=GCA_GROUPS, samples=30, max_alphabet=3)
def _gca_composition(rng, p):
    cases = 0
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            tau = _random_gca(rng, p, cat)
            sigma = _random_gca(rng, p, cat, G=tau.H, A=tau.B)
            comp = compose_gca(sigma, tau)
            G = tau.G
            expected = {G.op(t, tau.phi(s)) for t in tau.S for s in sigma.S}
            expect(set(comp.S) == expected, instance=name, what="neighborhood T phi(S)")
            expect(comp.phi == compose_homs(tau.phi, sigma.phi), instance=name, what="hom phi o psi")
            expect(realize_gca(comp) == cat.compose(realize_gca(sigma), realize_gca(tau)),
                   instance=name, G=repr(tau.G), H=repr(tau.H), K=repr(sigma.H))
            cases += 1
    return cases, {}


@suite("pullback-ca", instances=list(INSTANCES), groups=GCA_GROUPS, samples=20, max_alphabet=3)
def _pullback_ca(rng, p):
    cases = 0
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            G, H, K = (_pick_group(rng, p) for _ in range(3))
            phi, psi = random_hom(H, G, rng), random_hom(K, H, rng)
            A = _alphabet(cat, rng, p)
            R = realize_gca(pullback_gca(phi, A))
            expect(R == cat.index_pullback(phi, A, H.elements(), G.elements()),
                   instance=name, what="phi^* is a phi-CA")
            expect(realize_gca(pullback_gca(compose_homs(phi, psi), A))
                   == cat.compose(realize_gca(pullback_gca(psi, A)), R),
                   instance=name, what="contravariance")
            cases += 1
    return cases, {}


@suite("factorization", instances=list(INSTANCES), groups=GCA_GROUPS, samples=30, candidates=10,
       max_alphabet=3)
def _factorization(rng, p):
    cases = 0
    for name, cat in _cats(p):
        for _ in range(p["samples"]):
            tau = _random_gca(rng, p, cat)
            tau_G, phi = factorize(tau)
            pull = realize_gca(pullback_gca(phi, tau.B))
            Rt = realize_gca(tau)
            RG = realize(tau_G)
            expect(Rt == cat.compose(pull, RG), instance=name, what="tau = phi^* o tau_G")
            for k in range(p["candidates"]):
                mu = perturb(tau_G.mu, rng) if k % 2 == 0 else None
                sigma = (make_ca(tau.G, tau.A, tau.B, tau_G.S, mu) if mu is not None
                         else random_ca(tau.G, tau.A, tau.B, rng))
                Rs = realize(sigma)
                expect((cat.compose(pull, Rs) == Rt) == (Rs == RG), instance=name,
                       what="uniqueness of tau_G")
                cases += 1
    # constant automata factor through every homomorphism
    witnesses = 0
    for name, cat in _cats(p, concrete_only=True):
        G = H = named_group("Z4")
        homs = homomorphisms(H, G)
        A, B = _alphabet(cat, rng, p), _alphabet(cat, rng, p)
        S = Subset(G, [G.identity])
        src = cat.power(A, S).carrier
        b = cat.elements(B)[-1]
        const = _constant_morphism(cat, src, B, b)
        taus = [make_gca(G, H, phi, A, B, S, const) for phi in homs[:2]]
        expect(taus[0].phi != taus[1].phi, instance=name, what="need two distinct homs")
        R0 = realize_gca(taus[0])
        for t in taus:
            tau_G, phi = factorize(t)
            expect(realize_gca(t) == R0, instance=name, what="constant GCA differs")
            expect(cat.compose(realize_gca(pullback_gca(phi, B)), realize(tau_G)) == R0,
                   instance=name, what="constant factorization")
        witnesses += 1
    return cases, {"constant_witnesses": witnesses}


def _constant_morphism(cat, X, B, b) -> Morphism:
    if isinstance(cat, TableCategory):
        return Morphism(cat, X, B, np.full(cat.size(X), b, dtype=np.int64))
    if isinstance(cat, FinVect):
        return cat.morphism(X, B, np.zeros((B.dim, X.dim), dtype=np.int64))   # only 0 is linear
    raise CatCAError("constant maps need an element layer")


# -- weak product -------------------------------------------------------------------

def _all_configs(K, C):
    cat = C.category
    elems = cat.elements(C)
    from .ca import DenseConfig
    for values in itertools.product(elems, repeat=len(K.elements())):
        yield DenseConfig(K, C, list(values))


def _check_mediator(alpha, beta, configs, radius, name):
    cat = alpha.category
    m = weak_product_mediator(alpha, beta)
    iota_A, iota_B = weak_product(alpha.B, beta.B, alpha.H, beta.H)
    F = m.H
    AB, pA, pB = cat.product(alpha.B, beta.B)
    alpha_K, _ = factorize(alpha)
    beta_K, _ = factorize(beta)
    window = ball(F, radius)
    n = 0
    for c in configs:
        mc = apply(m, c)
        ac, bc = apply(alpha, c), apply(beta, c)
        la, lb = apply(iota_A, mc), apply(iota_B, mc)
        for g in alpha.H.elements():
            expect(la.at(g) == ac.at(g), instance=name, what="iota_A o tau = alpha", g=g)
        for h in beta.H.elements():
            expect(lb.at(h) == bc.at(h), instance=name, what="iota_B o tau = beta", h=h)
        aK, bK = apply(alpha_K, c), apply(beta_K, c)
        for w in window:
            v = mc.at(w)
            k = m.phi(w)
            expect(cat.apply(pA, v) == aK.at(k) and cat.apply(pB, v) == bK.at(k),
                   instance=name, what="mediator cell", word=w)
        n += 1
    return n


@suite("weak-product", instances=["finset"], radius=2, max_c=4, random_pairs=2, after_ca=50)
def _weak_product(rng, p):
    G, H, K = cyclic(2), cyclic(3), cyclic(6)
    phi = TableHom(G, K, [0, 3])
    psi = TableHom(H, K, [0, 2, 4])
    cases = 0
    findings = {}
    for name, cat in _cats(p, concrete_only=True):
        A = B = _two(cat)
        for size in range(1, p["max_c"] + 1):
            C = _sized(cat, size)
            if C is None:
                continue
            pairs = [(_random_gca(rng, p, cat, G=K, H=G, A=C, B=A, phi=phi),
                      _random_gca(rng, p, cat, G=K, H=H, A=C, B=B, phi=psi))
                     for _ in range(p["random_pairs"])]
            AB, pA, pB = cat.product(A, B)
            if C == AB:
                # identity-based pair: project the cell value onto each factor
                S = Subset(K, [K.identity])
                pe = cat.projection(cat.power(C, S), K.identity)
                pairs.append((make_gca(K, G, phi, C, A, S, cat.compose(pA, pe)),
                              make_gca(K, H, psi, C, B, S, cat.compose(pB, pe))))
            configs = list(_all_configs(K, C))
            for alpha, beta in pairs:
                cases += _check_mediator(alpha, beta, configs, p["radius"], name)
        # the equations survive precomposition with an arbitrary CA on C^K
        C = _sized(cat, 2) or A
        for _ in range(p["after_ca"]):
            alpha = _random_gca(rng, p, cat, G=K, H=G, A=C, B=A, phi=phi)
            beta = _random_gca(rng, p, cat, G=K, H=H, A=C, B=B, phi=psi)
            rho = as_gca(random_ca(K, C, C, rng))
            configs = [random_dense_config(K, C, rng) for _ in range(4)]
            cases += _check_mediator(compose_gca(alpha, rho), compose_gca(beta, rho), configs,
                                     p["radius"], name)
        # a second mediator for constant automata: another hom G*H -> K works too
        S = Subset(K, [K.identity])
        X = cat.power(A, S).carrier
        const_a = make_gca(K, G, phi, A, A, S, _constant_morphism(cat, X, A, cat.elements(A)[-1]))
        const_b = make_gca(K, H, psi, A, B, S, _constant_morphism(cat, X, B, cat.elements(B)[0]))
        m1 = weak_product_mediator(const_a, const_b)
        F = m1.H
        m2 = make_gca(K, F, trivial_hom(F, K), A, m1.B, m1.S, m1.mu)
        iota_A, iota_B = weak_product(A, B, G, H)
        for c in [random_dense_config(K, A, rng) for _ in range(4)]:
            for m in (m1, m2):
                mc = apply(m, c)
                expect(all(apply(iota_A, mc).at(g) == apply(const_a, c).at(g) for g in G.elements()),
                       instance=name, what="second mediator")
                expect(all(apply(iota_B, mc).at(h) == apply(const_b, c).at(h) for h in H.elements()),
                       instance=name, what="second mediator")
        findings[name] = {"distinct_homs": m1.phi != m2.phi}
    return cases, {"second_mediator": findings}


def _two(cat):
    return _sized(cat, 2)


def _sized(cat, n):
    """An object with exactly ``n`` elements, if the instance has one."""
    if isinstance(cat, FinVect):
        for d in range(0, 4):
            if cat.p ** d == n:
                return cat.obj(d)
        return None
    if isinstance(cat, FinPoset):
        from .categories import chain
        return chain(n)
    return cat.obj(n)
