"""Executable checks: locality, minimal neighborhoods, equivariance, uniformity and
constructive extraction of a CA from an equivariant morphism over a finite group.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .ca import (CellularAutomaton, _require_finite, apply, make_ca, realize, shift_config,
                 shift_morphism)
from .categories import FinPoset, FinVect, Morphism, Rel, TableCategory
from .groups import Group, Subset, ball
from .sampling import random_sparse_config


@dataclass
class CheckReport:
    check: str
    params: dict
    seed: int | None
    cases: int
    verdict: str
    counterexample: Any = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        out = {"check": self.check, "params": jsonable(self.params), "seed": self.seed,
               "cases": self.cases, "verdict": self.verdict}
        if self.counterexample is not None:
            out["counterexample"] = jsonable(self.counterexample)
        if self.details:
            out["details"] = jsonable(self.details)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def jsonable(x):
    """Recursively convert tuples, numpy scalars and reprs into JSON-friendly values."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, str)) or x is None:
        return x
    if isinstance(x, Subset):
        return jsonable(x.elements)
    return repr(x)


def report(check, params, seed, cases, counterexample=None, **details) -> CheckReport:
    return CheckReport(check, params, seed, cases,
                       "pass" if counterexample is None else "fail", counterexample, details)


# -- locality -----------------------------------------------------------------

def _index(I) -> tuple:
    return tuple(I.elements) if isinstance(I, Subset) else tuple(I)


def check_local(h: Morphism, A, I, S) -> tuple[bool, Morphism | None]:
    """Decide whether ``h: A^I -> B`` factors as ``mu' o Res^I_S``; return ``(ok, mu')``."""
    cat = h.category
    PI, PS = cat.power(A, _index(I)), cat.power(A, _index(S))
    if h.source != PI.carrier:
        raise TypeError("h does not start at A^I")
    res = cat.restriction(A, PI.index, PS.index)
    B = h.target
    if isinstance(cat, TableCategory):
        vals = np.zeros(cat.size(PS.carrier), dtype=np.int64)
        vals[res.data] = h.data
        if not np.array_equal(vals[res.data], h.data):
            return False, None
        if isinstance(cat, FinPoset) and not FinPoset.is_monotone(PS.carrier, B, vals):
            return False, None
        mu = Morphism(cat, PS.carrier, B, vals)
    elif isinstance(cat, FinVect):
        d = A.dim
        cols = [np.arange(PI.position(s) * d, (PI.position(s) + 1) * d) for s in PS.index]
        keep = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
        rest = np.setdiff1d(np.arange(PI.carrier.dim), keep)
        if h.data[:, rest].any():
            return False, None
        mu = Morphism(cat, PS.carrier, B, h.data[:, keep])
    elif isinstance(cat, Rel):
        n = A.size
        rows = [np.arange(PI.position(s) * n, (PI.position(s) + 1) * n) for s in PS.index]
        keep = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
        rest = np.setdiff1d(np.arange(PI.carrier.size), keep)
        if h.data[rest].any():
            return False, None
        mu = Morphism(cat, PS.carrier, B, h.data[keep])
    else:  # pragma: no cover
        raise NotImplementedError(cat)
    # the witness must reproduce h exactly
    if cat.compose(mu, res) != h:
        return False, None
    return True, mu


def essential_coordinates(h: Morphism, A, I) -> tuple:
    """Indices on which ``h: A^I -> B`` genuinely depends, in the order of ``I``."""
    cat = h.category
    P = cat.power(A, _index(I))
    if isinstance(cat, TableCategory):
        n = cat.size(A)
        codes = np.arange(cat.size(P.carrier), dtype=np.int64)
        out = []
        for k, i in enumerate(P.index):
            w = n ** (len(P.index) - 1 - k)
            digit = (codes // w) % n
            if any((h.data[codes + (v - digit) * w] != h.data).any() for v in range(n)):
                out.append(i)
        return tuple(out)
    if isinstance(cat, FinVect):
        d = A.dim
        return tuple(i for k, i in enumerate(P.index) if h.data[:, k * d:(k + 1) * d].any())
    if isinstance(cat, Rel):
        n = A.size
        return tuple(i for k, i in enumerate(P.index) if h.data[k * n:(k + 1) * n].any())
    raise NotImplementedError(cat)  # pragma: no cover


class LocalityError(RuntimeError):
    """The essential-coordinate candidate failed to witness locality (finposet only)."""


def minimal_neighborhood(h: Morphism, A, I):
    """Smallest window ``h`` factors through, as a Subset when ``I`` is one."""
    ess = essential_coordinates(h, A, I)
    ok, _ = check_local(h, A, I, ess)
    if not ok:
        raise LocalityError(f"essential coordinates {ess!r} do not witness locality")
    return Subset(I.group, ess) if isinstance(I, Subset) else ess


# -- equivariance -------------------------------------------------------------

def equivariance_counterexample(f: Morphism, G: Group, A, B):
    """First ``g`` (canonical order) with ``f o shift_g != shift_g o f``, else ``None``."""
    _require_finite(G)
    cat = f.category
    for g in G.elements():
        if cat.compose(f, shift_morphism(G, A, g)) != cat.compose(shift_morphism(G, B, g), f):
            return g
    return None


def check_equivariance(tau: CellularAutomaton, mode: str = "morphism", radius: int = 3,
                       samples: int = 10, seed: int = 0) -> CheckReport:
    params = {"group": repr(tau.G), "instance": tau.category.name, "mode": mode}
    if mode == "morphism":
        g = equivariance_counterexample(realize(tau), tau.G, tau.A, tau.B)
        return report("equivariance", params, None, len(tau.G.elements()),
                      None if g is None else {"g": g})
    if mode != "ball":
        raise ValueError(f"unknown mode {mode!r}")
    params["radius"] = radius
    rng = np.random.default_rng(seed)
    window = ball(tau.G, radius)
    cases = 0
    for _ in range(samples):
        c = random_sparse_config(tau.G, tau.A, rng, 2 * radius)
        out = apply(tau, c)
        for g in window:
            lhs = apply(tau, shift_config(c, g))
            rhs = shift_config(out, g)
            cases += 1
            for x in window:
                if lhs.at(x) != rhs.at(x):
                    return report("equivariance", params, seed, cases, {"g": g, "cell": x})
    return report("equivariance", params, seed, cases)


# -- uniformity and CHL -------------------------------------------------------

def check_uniform(f: Morphism, G: Group, A, B) -> CheckReport:
    """Per-cell minimal neighborhoods of ``f: A^G -> B^G`` and whether ``S_g = S_e g``."""
    _require_finite(G)
    cat = f.category
    PB = cat.power(B, G.elements())
    full = Subset(G, G.elements())
    nbhds, translates = {}, {}
    S_e = None
    for g in G.elements():
        S_g = minimal_neighborhood(cat.compose(cat.projection(PB, g), f), A, full)
        nbhds[g] = S_g.elements
        if g == G.identity:
            S_e = S_g
    for g in G.elements():
        translates[g] = Subset(G, nbhds[g]) == Subset(G, [G.op(s, g) for s in S_e])
    return report("uniform", {"group": repr(G), "instance": cat.name}, None, len(nbhds),
                  neighborhoods=nbhds, translates=translates)


@dataclass
class Rejection:
    """``chl_extract`` refusal: ``f`` does not commute with the shift by ``g``."""

    g: Any
    reason: str = "not equivariant"


def chl_extract(f: Morphism, G: Group, A, B) -> CellularAutomaton | Rejection:
    """Recover a CA from an equivariant ``f: A^G -> B^G`` (finite ``G``)."""
    g = equivariance_counterexample(f, G, A, B)
    if g is not None:
        return Rejection(g)
    cat = f.category
    full = Subset(G, G.elements())
    h = cat.compose(cat.projection(cat.power(B, full), G.identity), f)
    S_e = minimal_neighborhood(h, A, full)
    _, mu = check_local(h, A, full, S_e)
    return make_ca(G, A, B, S_e, mu)
