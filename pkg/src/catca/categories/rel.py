"""Rel: finite sets and binary relations, a non-concrete category with products.

The product of a family is the disjoint union, with projections the converse
relations of the canonical injections.  A relation ``X -> Y`` is a boolean
``|X| x |Y|`` matrix.  There is no element layer.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import TypingError
from .base import Category, Morphism


@dataclass(frozen=True)
class RelObj:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise TypingError("set size must be non-negative")

    @property
    def category(self):
        return REL

    def __repr__(self):
        return f"RelSet({self.size})"


def _bool_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


class Rel(Category):
    name = "rel"
    has_elements = False

    def obj(self, n: int) -> RelObj:
        return RelObj(n)

    def check_object(self, A):
        if not isinstance(A, RelObj):
            raise TypingError(f"{A!r} is not a Rel object")

    def morphism(self, A, B, pairs=None, matrix=None) -> Morphism:
        """Build from a collection of related ``(source, target)`` pairs or a boolean matrix."""
        self.check_object(A)
        self.check_object(B)
        if matrix is not None:
            m = np.asarray(matrix, dtype=bool).reshape(A.size, B.size)
        else:
            m = np.zeros((A.size, B.size), dtype=bool)
            for s, t in pairs or ():
                if not (0 <= s < A.size and 0 <= t < B.size):
                    raise TypingError(f"pair {(s, t)} out of range")
                m[s, t] = True
        return Morphism(self, A, B, m)

    @staticmethod
    def pairs(f: Morphism) -> list:
        return [(int(s), int(t)) for s, t in zip(*np.nonzero(f.data))]

    def identity(self, A):
        self.check_object(A)
        return Morphism(self, A, A, np.eye(A.size, dtype=bool))

    def _compose(self, g, f):
        return Morphism(self, f.source, g.target, _bool_product(f.data, g.data))

    def product(self, A, B):
        self.check_object(A)
        self.check_object(B)
        P = RelObj(A.size + B.size)
        eye = np.eye(P.size, dtype=bool)
        return P, Morphism(self, P, A, eye[:, :A.size]), Morphism(self, P, B, eye[:, A.size:])

    def pair(self, f, g):
        if f.source != g.source:
            raise TypingError("pair needs a common source")
        P, _, _ = self.product(f.target, g.target)
        return Morphism(self, f.source, P, np.hstack([f.data, g.data]))

    def _power_carrier(self, A, n):
        return RelObj(A.size * n)

    def _projection(self, P, k):
        n = P.base.size
        eye = np.eye(P.carrier.size, dtype=bool)
        return Morphism(self, P.carrier, P.base, eye[:, k * n:(k + 1) * n])

    def _tuple(self, family, P, source):
        data = (np.hstack([m.data for m in family]) if family
                else np.zeros((source.size, 0), dtype=bool))
        return Morphism(self, source, P.carrier, data)

    def summand(self, P, k: int, a: int) -> int:
        """Carrier element ``(index position k, base element a)``."""
        return k * P.base.size + a

    def all_morphisms(self, A, B):
        for bits in itertools.product((False, True), repeat=A.size * B.size):
            yield Morphism(self, A, B, np.array(bits, dtype=bool).reshape(A.size, B.size))


REL = Rel()
