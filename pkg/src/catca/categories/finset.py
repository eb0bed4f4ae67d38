"""FinSet: finite sets ``{0..n-1}`` and total functions stored as lookup tables.

Power carriers use mixed-radix codes with the first index as the most
significant digit, so restriction is digit extraction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import TypingError
from .base import Category, Morphism, PowerObject


@dataclass(frozen=True)
class SetObj:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise TypingError("set size must be non-negative")

    @property
    def category(self):
        return FINSET

    def __repr__(self):
        return f"Set({self.size})"


class TableCategory(Category):
    """Shared machinery for categories whose morphisms are function tables."""

    def size(self, A) -> int:
        return A.size

    def make_object(self, n: int):
        raise NotImplementedError

    def morphism(self, A, B, table) -> Morphism:
        """Validated constructor."""
        self.check_object(A)
        self.check_object(B)
        t = np.asarray(table, dtype=np.int64).reshape(-1)
        if len(t) != self.size(A):
            raise TypingError(f"table length {len(t)} != |source| = {self.size(A)}")
        if len(t) and (t.min() < 0 or t.max() >= self.size(B)):
            raise TypingError("table entry out of range")
        return Morphism(self, A, B, t)

    def identity(self, A) -> Morphism:
        self.check_object(A)
        return Morphism(self, A, A, np.arange(self.size(A), dtype=np.int64))

    def constant(self, A, B, b: int) -> Morphism:
        return self.morphism(A, B, [b] * self.size(A))

    def _compose(self, g, f):
        return Morphism(self, f.source, g.target, g.data[f.data])

    def _product_object(self, A, B):
        return self.make_object(self.size(A) * self.size(B))

    def product(self, A, B):
        self.check_object(A)
        self.check_object(B)
        P = self._product_object(A, B)
        nb = self.size(B)
        codes = np.arange(self.size(P), dtype=np.int64)
        return (P, Morphism(self, P, A, codes // nb), Morphism(self, P, B, codes % nb))

    def pair(self, f, g):
        if f.source != g.source:
            raise TypingError("pair needs a common source")
        P, _, _ = self.product(f.target, g.target)
        return Morphism(self, f.source, P, f.data * self.size(g.target) + g.data)

    def _power_carrier(self, A, n):
        return self.make_object(self.size(A) ** n)

    def _weight(self, P: PowerObject, k: int) -> int:
        return self.size(P.base) ** (len(P.index) - 1 - k)

    def _projection(self, P, k):
        n = self.size(P.base)
        codes = np.arange(self.size(P.carrier), dtype=np.int64)
        return Morphism(self, P.carrier, P.base, (codes // self._weight(P, k)) % n)

    def _tuple(self, family, P, source):
        code = np.zeros(self.size(source), dtype=np.int64)
        for k, m in enumerate(family):
            code += m.data * self._weight(P, k)
        return Morphism(self, source, P.carrier, code)

    # element layer
    def is_element(self, A, x) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.size(A)

    def _apply(self, f, x):
        if not self.is_element(f.source, x):
            raise TypingError(f"{x!r} is not an element of {f.source!r}")
        return int(f.data[x])

    def _elements(self, A):
        return list(range(self.size(A)))

    def _pack(self, P, values):
        n = self.size(P.base)
        code = 0
        for v in values:
            code = code * n + int(v)
        return code

    def _unpack(self, P, x):
        n = self.size(P.base)
        out = []
        for _ in P.index:
            x, d = divmod(x, n)
            out.append(d)
        return out[::-1]

    def all_morphisms(self, A, B):
        for t in itertools.product(range(self.size(B)), repeat=self.size(A)):
            yield Morphism(self, A, B, np.array(t, dtype=np.int64))


class FinSet(TableCategory):
    name = "finset"

    def make_object(self, n):
        return SetObj(n)

    def obj(self, n: int) -> SetObj:
        return SetObj(n)

    def check_object(self, A):
        if not isinstance(A, SetObj):
            raise TypingError(f"{A!r} is not a FinSet object")


FINSET = FinSet()
