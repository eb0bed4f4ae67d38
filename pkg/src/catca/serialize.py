"""JSON formats for groups, homomorphisms, alphabets, morphisms, automata and configurations."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .ca import CellularAutomaton, DenseConfig, SparseConfig, make_ca
from .categories import (FINPOSET, FINSET, REL, FinPoset, FinSet, FinVect, Morphism, PosetObj,
                         Rel, RelObj, SetObj, VectObj, finvect)
from .errors import TypingError
from .gca import GeneralizedCA, make_gca
from .groups import (ComposedHom, FiniteGroup, FreeProduct, GeneratorHom, MatrixHom, PairHom,
                     TableHom, ZPower, cyclic, symmetric)


class FormatError(ValueError):
    """Malformed JSON document (CLI exit code 2)."""


def load(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _need(d: dict, *keys):
    for k in keys:
        if k not in d:
            raise FormatError(f"missing key {k!r} in {sorted(d)}")


# -- groups ------------------------------------------------------------------

def group_to_json(G) -> dict:
    if isinstance(G, FiniteGroup):
        return {"kind": "finite-table", "table": [list(r) for r in G.table],
                "identity": G.identity, "name": G.name}
    if isinstance(G, ZPower):
        return {"kind": "z-power", "d": G.d}
    if isinstance(G, FreeProduct):
        return {"kind": "free-product", "left": group_to_json(G.left), "right": group_to_json(G.right)}
    raise TypeError(G)


def group_from_json(d: dict):
    kind = d.get("kind")
    if kind == "finite-table":
        _need(d, "table")
        return FiniteGroup(d["table"], d.get("identity", 0), d.get("generators"), d.get("name"))
    if kind == "cyclic":
        return cyclic(int(d["n"]))
    if kind == "symmetric":
        return symmetric(int(d["k"]))
    if kind == "z-power":
        return ZPower(int(d.get("d", 1)))
    if kind == "free-product":
        _need(d, "left", "right")
        return FreeProduct(group_from_json(d["left"]), group_from_json(d["right"]))
    raise FormatError(f"unknown group kind {kind!r}")


def elem_to_json(G, x):
    if isinstance(G, FiniteGroup):
        return int(x)
    if isinstance(G, ZPower):
        return [int(v) for v in x]
    return [{"side": side, "id": int(v)} for side, v in x]


def elem_from_json(G, v):
    return G.coerce(v)


# -- homomorphisms --------------------------------------------------------------

def hom_to_json(phi) -> dict:
    base = {"source": group_to_json(phi.source), "target": group_to_json(phi.target)}
    if isinstance(phi, TableHom):
        return {"rule": "table", **base, "map": [elem_to_json(phi.target, x) for x in phi.images]}
    if isinstance(phi, PairHom):
        return {"rule": "pair", "left": hom_to_json(phi.left), "right": hom_to_json(phi.right)}
    if isinstance(phi, MatrixHom):
        return {"rule": "matrix", **base, "matrix": [list(r) for r in phi.matrix]}
    if isinstance(phi, GeneratorHom):
        return {"rule": "generators", **base,
                "images": [elem_to_json(phi.target, x) for x in phi.images]}
    if isinstance(phi, ComposedHom):
        return {"rule": "compose", "outer": hom_to_json(phi.outer), "inner": hom_to_json(phi.inner)}
    raise TypeError(phi)


def hom_from_json(d: dict, source=None, target=None):
    rule = d.get("rule")
    if rule == "pair":
        return PairHom(hom_from_json(d["left"]), hom_from_json(d["right"]))
    if rule == "compose":
        from .groups import compose_homs
        return compose_homs(hom_from_json(d["outer"]), hom_from_json(d["inner"]))
    source = group_from_json(d["source"]) if "source" in d else source
    target = group_from_json(d["target"]) if "target" in d else target
    if source is None or target is None:
        raise FormatError("homomorphism needs source and target groups")
    if rule == "table":
        return TableHom(source, target, [target.coerce(v) for v in d["map"]])
    if rule == "matrix":
        return MatrixHom(source, target, d["matrix"])
    if rule == "generators":
        return GeneratorHom(source, target, d["images"])
    raise FormatError(f"unknown homomorphism rule {rule!r}")


# -- alphabets and morphisms ------------------------------------------------------

def object_to_json(A) -> dict:
    if isinstance(A, SetObj):
        return {"instance": "finset", "size": A.size}
    if isinstance(A, VectObj):
        return {"instance": "finvect", "p": A.p, "dim": A.dim}
    if isinstance(A, PosetObj):
        return {"instance": "finposet", "order": A.leq.astype(int).tolist()}
    if isinstance(A, RelObj):
        return {"instance": "rel", "size": A.size}
    raise TypeError(A)


def object_from_json(d: dict):
    inst = d.get("instance")
    if inst == "finset":
        return SetObj(int(d["size"]))
    if inst == "finvect":
        return finvect(int(d["p"])).obj(int(d["dim"]))
    if inst == "finposet":
        return PosetObj(d["order"])
    if inst == "rel":
        return RelObj(int(d["size"]))
    raise FormatError(f"unknown instance {inst!r}")


def morphism_to_json(f: Morphism) -> dict:
    cat = f.category
    if isinstance(cat, FinPoset):
        return {"instance": "finposet", "order": f.target.leq.astype(int).tolist(),
                "source_order": f.source.leq.astype(int).tolist(), "table": f.data.tolist()}
    if isinstance(cat, FinSet):
        return {"instance": "finset", "source": f.source.size, "target": f.target.size,
                "table": f.data.tolist()}
    if isinstance(cat, FinVect):
        return {"instance": "finvect", "p": cat.p, "source": f.source.dim, "target": f.target.dim,
                "matrix": f.data.tolist()}
    if isinstance(cat, Rel):
        return {"instance": "rel", "source": f.source.size, "target": f.target.size,
                "pairs": [list(p) for p in Rel.pairs(f)]}
    raise TypeError(cat)


def morphism_from_json(d: dict, source=None, target=None) -> Morphism:
    """Parse a morphism; ``source``/``target`` objects override sizes found in ``d``."""
    inst = d.get("instance")
    if inst == "finset":
        table = d["table"]
        source = source or SetObj(int(d.get("source", len(table))))
        target = target or SetObj(int(d["target"]) if "target" in d else max(table, default=-1) + 1)
        return FINSET.morphism(source, target, table)
    if inst == "finposet":
        target = target or PosetObj(d["order"])
        source = source or PosetObj(d.get("source_order", d["order"]))
        return FINPOSET.morphism(source, target, d["table"])
    if inst == "finvect":
        cat = finvect(int(d["p"]))
        m = np.asarray(d["matrix"], dtype=np.int64)
        source = source or cat.obj(int(d.get("source", m.shape[1] if m.ndim == 2 else 0)))
        target = target or cat.obj(int(d.get("target", m.shape[0] if m.ndim == 2 else 0)))
        return cat.morphism(source, target, m.reshape(target.dim, source.dim))
    if inst == "rel":
        source = source or RelObj(int(d["source"]))
        target = target or RelObj(int(d["target"]))
        return REL.morphism(source, target, pairs=[tuple(p) for p in d["pairs"]])
    raise FormatError(f"unknown instance {inst!r}")


def alphabet_elem_to_json(A, x):
    return list(x) if isinstance(A, VectObj) else int(x)


def alphabet_elem_from_json(A, v):
    x = tuple(int(c) for c in v) if isinstance(A, VectObj) else int(v)
    if not A.category.is_element(A, x):
        raise TypingError(f"{v!r} is not an element of {A!r}")
    return x


# -- automata -------------------------------------------------------------------

def ca_to_json(tau) -> dict:
    d = {"group": group_to_json(tau.G), "instance": tau.category.name,
         "A": object_to_json(tau.A), "B": object_to_json(tau.B),
         "S": [elem_to_json(tau.G, s) for s in tau.S], "mu": morphism_to_json(tau.mu)}
    if isinstance(tau, GeneralizedCA):
        d["target_group"] = group_to_json(tau.H)
        d["hom"] = hom_to_json(tau.phi)
    return d


def ca_from_json(d: dict):
    """Parse a CA, or a generalized CA when ``target_group``/``hom`` are present."""
    try:
        _need(d, "group", "A", "B", "S", "mu")
        G = group_from_json(d["group"])
        A, B = object_from_json(d["A"]), object_from_json(d["B"])
        S = [G.coerce(s) for s in d["S"]]
        from .groups import Subset
        P = A.category.power(A, Subset(G, S))
        mu = morphism_from_json(d["mu"], source=P.carrier, target=B)
        if "hom" in d:
            H = group_from_json(d["target_group"]) if "target_group" in d else None
            phi = hom_from_json(d["hom"], source=H, target=G)
            return make_gca(G, phi.source, phi, A, B, S, mu)
        return make_ca(G, A, B, S, mu)
    except (KeyError, IndexError, TypeError) as exc:
        if isinstance(exc, TypingError):
            raise
        raise FormatError(f"malformed automaton: {exc!r}") from exc


def config_to_json(c) -> dict:
    G, A = c.group, c.alphabet
    if isinstance(c, DenseConfig):
        return {"kind": "dense", "values": [alphabet_elem_to_json(A, v) for v in c.values]}
    if isinstance(c, SparseConfig):
        support = sorted(c.support.items(), key=lambda kv: G.sort_key(kv[0]))
        return {"kind": "sparse", "default": alphabet_elem_to_json(A, c.default),
                "support": [[elem_to_json(G, g), alphabet_elem_to_json(A, v)] for g, v in support]}
    raise TypeError(type(c))


def config_from_json(d: dict, G, A):
    kind = d.get("kind")
    if kind == "dense":
        return DenseConfig(G, A, [alphabet_elem_from_json(A, v) for v in d["values"]])
    if kind == "sparse":
        support = d.get("support", [])
        if isinstance(support, dict):   # JSON object keyed by serialized element
            support = [[json.loads(k), v] for k, v in support.items()]
        return SparseConfig(G, A, {G.coerce(g): alphabet_elem_from_json(A, v) for g, v in support},
                            alphabet_elem_from_json(A, d["default"]))
    raise FormatError(f"unknown configuration kind {kind!r}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
