"""FinPoset: finite posets with monotone maps; products carry the product order."""
from __future__ import annotations

import itertools

import numpy as np

from ..errors import TypingError
from .base import Morphism
from .finset import TableCategory

# user-supplied orders are validated exhaustively up to this size
MAX_VALIDATED = 6


class PosetObj:
    """A poset on ``{0..n-1}``; ``leq[x, y]`` means ``x <= y``."""

    __slots__ = ("leq", "size", "_hash")

    def __init__(self, leq, validate: bool = True):
        leq = np.array(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise TypingError("order relation must be a square boolean matrix")
        n = leq.shape[0]
        if validate:
            if n > MAX_VALIDATED:
                raise TypingError(f"posets larger than {MAX_VALIDATED} are not accepted")
            if not leq.diagonal().all():
                raise TypingError("order is not reflexive")
            if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
                raise TypingError("order is not antisymmetric")
            two_step = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
            if (two_step & ~leq).any():
                raise TypingError("order is not transitive")
        leq.setflags(write=False)
        self.leq = leq
        self.size = n
        self._hash = None

    @property
    def category(self):
        return FINPOSET

    def __eq__(self, other):
        return (isinstance(other, PosetObj) and self.size == other.size
                and np.array_equal(self.leq, other.leq))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.size, self.leq.tobytes()))
        return self._hash

    def __repr__(self):
        return f"Poset({self.size})"


def chain(n: int) -> PosetObj:
    return PosetObj(np.tri(n, dtype=bool).T)


def antichain(n: int) -> PosetObj:
    return PosetObj(np.eye(n, dtype=bool))


class FinPoset(TableCategory):
    name = "finposet"

    def obj(self, leq) -> PosetObj:
        return PosetObj(leq)

    def check_object(self, A):
        if not isinstance(A, PosetObj):
            raise TypingError(f"{A!r} is not a FinPoset object")

    def make_object(self, n):
        raise TypingError("finposet objects need an order")

    def _product_object(self, A, B):
        return PosetObj(np.kron(A.leq, B.leq), validate=False)

    def _power_carrier(self, A, n):
        leq = np.ones((1, 1), dtype=bool)
        for _ in range(n):
            leq = np.kron(leq, A.leq)
        return PosetObj(leq, validate=False)

    @staticmethod
    def is_monotone(A: PosetObj, B: PosetObj, table) -> bool:
        t = np.asarray(table, dtype=np.int64)
        return bool((~A.leq | B.leq[np.ix_(t, t)]).all())

    def morphism(self, A, B, table) -> Morphism:
        m = super().morphism(A, B, table)
        if not self.is_monotone(A, B, m.data):
            raise TypingError("table is not monotone")
        return m

    def all_morphisms(self, A, B):
        for m in super().all_morphisms(A, B):
            if self.is_monotone(A, B, m.data):
                yield m

    def leq(self, A, x, y) -> bool:
        return bool(A.leq[x, y])


FINPOSET = FinPoset()
