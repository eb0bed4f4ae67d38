"""FinVect(F_p): spaces F_p^k and linear maps as ``target_dim x source_dim`` matrices mod p."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import TypingError
from .base import Category, Morphism


@dataclass(frozen=True)
class VectObj:
    dim: int
    p: int

    def __post_init__(self):
        if self.dim < 0:
            raise TypingError("dimension must be non-negative")

    @property
    def category(self):
        return finvect(self.p)

    def __repr__(self):
        return f"F{self.p}^{self.dim}"


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


class FinVect(Category):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise TypingError(f"{p} is not prime")
        super().__init__()
        self.p = p
        self.name = f"finvect({p})"

    def _key(self):
        return (self.p,)

    def obj(self, dim: int) -> VectObj:
        return VectObj(dim, self.p)

    def check_object(self, A):
        if not (isinstance(A, VectObj) and A.p == self.p):
            raise TypingError(f"{A!r} is not an object of {self.name}")

    def morphism(self, A, B, matrix) -> Morphism:
        self.check_object(A)
        self.check_object(B)
        m = np.asarray(matrix, dtype=np.int64).reshape(B.dim, A.dim) % self.p
        return Morphism(self, A, B, m)

    def identity(self, A):
        self.check_object(A)
        return Morphism(self, A, A, np.eye(A.dim, dtype=np.int64))

    def _compose(self, g, f):
        return Morphism(self, f.source, g.target, (g.data @ f.data) % self.p)

    def product(self, A, B):
        self.check_object(A)
        self.check_object(B)
        P = self.obj(A.dim + B.dim)
        eye = np.eye(P.dim, dtype=np.int64)
        return P, Morphism(self, P, A, eye[:A.dim]), Morphism(self, P, B, eye[A.dim:])

    def pair(self, f, g):
        if f.source != g.source:
            raise TypingError("pair needs a common source")
        P, _, _ = self.product(f.target, g.target)
        return Morphism(self, f.source, P, np.vstack([f.data, g.data]))

    def _power_carrier(self, A, n):
        return self.obj(A.dim * n)

    def _projection(self, P, k):
        d = P.base.dim
        eye = np.eye(P.carrier.dim, dtype=np.int64)
        return Morphism(self, P.carrier, P.base, eye[k * d:(k + 1) * d])

    def _tuple(self, family, P, source):
        data = (np.vstack([m.data for m in family]) if family
                else np.zeros((0, source.dim), dtype=np.int64))
        return Morphism(self, source, P.carrier, data)

    # element layer: vectors are tuples of ints in range(p)
    def is_element(self, A, x) -> bool:
        return (isinstance(x, tuple) and len(x) == A.dim
                and all(isinstance(v, (int, np.integer)) and 0 <= v < self.p for v in x))

    def _apply(self, f, x):
        if not self.is_element(f.source, x):
            raise TypingError(f"{x!r} is not a vector of {f.source!r}")
        v = (f.data @ np.array(x, dtype=np.int64).reshape(-1)) % self.p
        return tuple(int(c) for c in v)

    def _elements(self, A):
        return list(itertools.product(range(self.p), repeat=A.dim))

    def _pack(self, P, values):
        return tuple(int(c) for v in values for c in v)

    def _unpack(self, P, x):
        d = P.base.dim
        return [tuple(x[k * d:(k + 1) * d]) for k in range(len(P.index))]

    def all_morphisms(self, A, B):
        for entries in itertools.product(range(self.p), repeat=A.dim * B.dim):
            yield Morphism(self, A, B, np.array(entries, dtype=np.int64).reshape(B.dim, A.dim))


@functools.lru_cache(maxsize=None)
def finvect(p: int) -> FinVect:
    return FinVect(p)
