"""Seeded random generation of objects, morphisms, automata and configurations."""
from __future__ import annotations

import numpy as np

from .ca import DenseConfig, SparseConfig, make_ca
from .categories import (FINPOSET, FINSET, REL, FinPoset, FinVect, Morphism, PosetObj, Rel,
                         TableCategory, antichain, chain, finvect)
from .groups import FiniteGroup, Group, Subset, ball, cyclic, homomorphisms, symmetric

SMALL_POSETS = (
    chain(1), chain(2), chain(3), antichain(2),
    PosetObj([[1, 1, 1], [0, 1, 0], [0, 0, 1]]),   # V: 0 below 1 and 2
    PosetObj([[1, 0, 0], [1, 1, 0], [1, 0, 1]]),   # Lambda: 1 and 2 below 0
)

SMALL_GROUPS = (cyclic(2), cyclic(3), cyclic(4), cyclic(5), cyclic(6), symmetric(3))

INSTANCES = ("finset", "finvect2", "finvect3", "finposet", "rel")


def category(name: str):
    return {"finset": FINSET, "finposet": FINPOSET, "rel": REL,
            "finvect2": finvect(2), "finvect3": finvect(3)}[name]


def random_object(cat, rng, max_size: int = 3, min_size: int = 1, max_dim: int = 1):
    """Alphabet with ``min_size..max_size`` elements; FinVect uses ``1..max_dim`` instead."""
    if isinstance(cat, FinVect):
        return cat.obj(int(rng.integers(1, max_dim + 1)))
    if isinstance(cat, FinPoset):
        pool = [P for P in SMALL_POSETS if min_size <= P.size <= max_size]
        return pool[rng.integers(len(pool))]
    return cat.obj(int(rng.integers(min_size, max_size + 1)))


def random_monotone(A: PosetObj, B: PosetObj, rng, tries: int = 20) -> np.ndarray:
    """A random monotone table ``A -> B``, built along a linear extension of ``A``."""
    order = np.argsort(A.leq.sum(axis=0), kind="stable")   # fewer elements below first
    for _ in range(tries):
        t = np.full(A.size, -1, dtype=np.int64)
        for x in order:
            below = np.flatnonzero(A.leq[:, x])
            below = below[below != x]
            ok = np.ones(B.size, dtype=bool)
            for y in below:
                ok &= B.leq[t[y]]
            cand = np.flatnonzero(ok)
            if not len(cand):
                break
            t[x] = cand[rng.integers(len(cand))]
        else:
            return t
    return np.full(A.size, int(rng.integers(B.size)), dtype=np.int64)


def random_morphism(A, B, rng) -> Morphism:
    cat = A.category
    if isinstance(cat, FinPoset):
        return Morphism(cat, A, B, random_monotone(A, B, rng))
    if isinstance(cat, TableCategory):
        return Morphism(cat, A, B, rng.integers(0, B.size, A.size) if B.size else
                        np.zeros(A.size, dtype=np.int64))
    if isinstance(cat, FinVect):
        return cat.morphism(A, B, rng.integers(0, cat.p, (B.dim, A.dim)))
    if isinstance(cat, Rel):
        return cat.morphism(A, B, matrix=rng.random((A.size, B.size)) < 0.5)
    raise NotImplementedError(cat)  # pragma: no cover


def random_subset(G: Group, rng, max_size: int = 2, min_size: int = 1, radius: int = 2) -> Subset:
    pool = G.elements() if G.is_finite else ball(G, radius).elements
    k = int(rng.integers(min_size, min(max_size, len(pool)) + 1))
    idx = rng.choice(len(pool), size=k, replace=False)
    return Subset(G, [pool[i] for i in idx])


def random_ca(G: Group, A, B, rng, max_nbhd: int = 2, min_nbhd: int = 1, radius: int = 2):
    S = random_subset(G, rng, max_nbhd, min_nbhd, radius)
    cat = A.category
    return make_ca(G, A, B, S, random_morphism(cat.power(A, S).carrier, B, rng))


def random_element(A, rng):
    elems = A.category.elements(A)
    return elems[rng.integers(len(elems))]


def random_sparse_config(G: Group, A, rng, radius: int = 3) -> SparseConfig:
    return SparseConfig(G, A, {g: random_element(A, rng) for g in ball(G, radius)},
                        random_element(A, rng))


def random_dense_config(G: FiniteGroup, A, rng) -> DenseConfig:
    return DenseConfig(G, A, [random_element(A, rng) for _ in G.elements()])


def random_hom(H: FiniteGroup, G: FiniteGroup, rng):
    homs = homomorphisms(H, G)
    return homs[rng.integers(len(homs))]


def perturb(f: Morphism, rng, avoid=None, tries: int = 200) -> Morphism | None:
    """A valid morphism differing from ``f`` in exactly one entry, or ``None``.

    ``avoid(x)`` may veto the position (e.g. constant configurations).
    """
    cat = f.category
    data = f.data
    for _ in range(tries):
        new = data.copy()
        if isinstance(cat, TableCategory):
            if f.target.size < 2 or not len(data):
                return None
            x = int(rng.integers(len(data)))
            if avoid is not None and avoid(x):
                continue
            choices = [v for v in range(f.target.size) if v != data[x]]
            new[x] = choices[rng.integers(len(choices))]
            if isinstance(cat, FinPoset) and not FinPoset.is_monotone(f.source, f.target, new):
                continue
        elif isinstance(cat, FinVect):
            if not new.size:
                return None
            i, j = int(rng.integers(new.shape[0])), int(rng.integers(new.shape[1]))
            if avoid is not None and avoid((i, j)):
                continue
            new[i, j] = (new[i, j] + int(rng.integers(1, cat.p))) % cat.p
        else:
            if not new.size:
                return None
            i, j = int(rng.integers(new.shape[0])), int(rng.integers(new.shape[1]))
            if avoid is not None and avoid((i, j)):
                continue
            new[i, j] = not new[i, j]
        return Morphism(cat, f.source, f.target, new)
    return None
