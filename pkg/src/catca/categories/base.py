"""The "category with products" interface shared by every alphabet instance.

An instance supplies composition, identities, binary products with pairing,
power objects ``A^I`` with projections and tupling.  Restriction, index
pullback, pushforward and translation morphisms are then derived here purely
from projections and tupling, so each is the unique morphism satisfying its
defining projection equations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from ..errors import CapabilityError, TypingError


class Morphism:
    """A morphism of an alphabet category, stored in canonical form.

    ``data`` is a read-only numpy array whose meaning depends on the instance
    (function table, matrix over F_p, or boolean relation matrix).
    """

    __slots__ = ("category", "source", "target", "data", "_hash")

    def __init__(self, category: "Category", source, target, data: np.ndarray):
        data = np.ascontiguousarray(data)
        data.setflags(write=False)
        self.category = category
        self.source = source
        self.target = target
        self.data = data
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.category == other.category and self.source == other.source
                and self.target == other.target and self.data.shape == other.data.shape
                and np.array_equal(self.data, other.data))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.category, self.source, self.target, self.data.tobytes()))
        return self._hash

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return self.category.compose(self, other)

    def __call__(self, x):
        return self.category.apply(self, x)

    def __repr__(self):
        return f"Morphism[{self.category.name}]({self.source!r} -> {self.target!r})"


@dataclass(frozen=True, eq=False)
class PowerObject:
    """``A^I`` for an ordered index list ``I``; ``carrier`` is the underlying object."""

    base: object
    index: tuple
    carrier: object
    positions: dict = field(repr=False)

    def position(self, i) -> int:
        try:
            return self.positions[i]
        except KeyError:
            raise TypingError(f"{i!r} is not an index of this power object") from None

    def __len__(self):
        return len(self.index)


def _index_tuple(I) -> tuple:
    if hasattr(I, "elements"):
        return tuple(I.elements)
    return tuple(I)


class Category:
    """Base class of the four alphabet instances."""

    name: str = "?"
    has_elements: bool = True

    def __init__(self):
        self._powers: dict = {}

    # -- instance hooks ---------------------------------------------------
    def check_object(self, A):
        raise NotImplementedError

    def identity(self, A) -> Morphism:
        raise NotImplementedError

    def _compose(self, g: Morphism, f: Morphism) -> Morphism:
        raise NotImplementedError

    def product(self, A, B) -> tuple:
        """Return ``(A x B, pi_A, pi_B)``."""
        raise NotImplementedError

    def pair(self, f: Morphism, g: Morphism) -> Morphism:
        raise NotImplementedError

    def _power_carrier(self, A, n: int):
        raise NotImplementedError

    def _projection(self, P: PowerObject, k: int) -> Morphism:
        raise NotImplementedError

    def _tuple(self, family: Sequence[Morphism], P: PowerObject, source) -> Morphism:
        raise NotImplementedError

    # -- shared operations ------------------------------------------------
    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """``g o f``."""
        if f.category != self or g.category != self:
            raise TypingError("morphisms from a different category")
        if f.target != g.source:
            raise TypingError(f"cannot compose: {f.target!r} != {g.source!r}")
        return self._compose(g, f)

    def compose_all(self, *ms: Morphism) -> Morphism:
        """``ms[0] o ms[1] o ... o ms[-1]``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def equal(self, f: Morphism, g: Morphism) -> bool:
        if (f.source, f.target) != (g.source, g.target):
            raise TypingError("comparing morphisms of different types")
        return f == g

    def power(self, A, I) -> PowerObject:
        self.check_object(A)
        index = _index_tuple(I)
        key = (A, index)
        P = self._powers.get(key)
        if P is None:
            positions = {i: k for k, i in enumerate(index)}
            if len(positions) != len(index):
                raise TypingError("power index has duplicates")
            P = PowerObject(A, index, self._power_carrier(A, len(index)), positions)
            self._powers[key] = P
        return P

    def projection(self, P: PowerObject, i) -> Morphism:
        return self._projection(P, P.position(i))

    def tuple(self, family, P: PowerObject, source=None) -> Morphism:
        """The unique ``h: X -> A^I`` with ``pi_i o h = family[i]``.

        ``family`` is a sequence aligned with ``P.index`` or a mapping keyed by index.
        """
        if isinstance(family, dict):
            family = [family[i] for i in P.index]
        family = list(family)
        if len(family) != len(P.index):
            raise TypingError("family size differs from index size")
        if family:
            source = family[0].source
        elif source is None:
            raise TypingError("empty family needs an explicit source")
        for m in family:
            if m.source != source or m.target != P.base:
                raise TypingError("family members must share source and map into the base")
        return self._tuple(family, P, source)

    def restriction(self, A, I, S) -> Morphism:
        """``Res^I_S : A^I -> A^S``."""
        PI, PS = self.power(A, I), self.power(A, S)
        missing = [s for s in PS.index if s not in PI.positions]
        if missing:
            raise TypingError(f"restriction index not a subset: {missing!r}")
        return self.tuple([self.projection(PI, s) for s in PS.index], PS, PI.carrier)

    def index_pullback(self, f: Callable, A, I, J) -> Morphism:
        """``f*_A : A^J -> A^I`` for a function ``f: I -> J``."""
        PI, PJ = self.power(A, I), self.power(A, J)
        return self.tuple([self.projection(PJ, f(i)) for i in PI.index], PI, PJ.carrier)

    def pushforward(self, f: Morphism, I) -> Morphism:
        """``f^I_* : A^I -> B^I``, applying ``f`` in every coordinate."""
        PA, PB = self.power(f.source, I), self.power(f.target, I)
        return self.tuple([self.compose(f, self.projection(PA, i)) for i in PA.index],
                          PB, PA.carrier)

    # -- element layer ----------------------------------------------------
    def _require_elements(self):
        if not self.has_elements:
            raise CapabilityError(f"{self.name} has no element layer")

    def apply(self, f: Morphism, x):
        self._require_elements()
        return self._apply(f, x)

    def elements(self, A) -> list:
        self._require_elements()
        return self._elements(A)

    def pack(self, P: PowerObject, values: Sequence):
        """Encode a tuple of base elements (in index order) as a carrier element."""
        self._require_elements()
        return self._pack(P, values)

    def unpack(self, P: PowerObject, x) -> list:
        self._require_elements()
        return self._unpack(P, x)

    def is_element(self, A, x) -> bool:
        raise NotImplementedError

    def _apply(self, f, x):
        raise NotImplementedError

    def _elements(self, A):
        raise NotImplementedError

    def _pack(self, P, values):
        raise NotImplementedError

    def _unpack(self, P, x):
        raise NotImplementedError

    # -- enumeration (for exhaustive checks) --------------------------------
    def all_morphisms(self, A, B):
        """Iterate over every morphism ``A -> B``; only sensible at tiny sizes."""
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()

    def __repr__(self):
        return self.name


def translation_iso(A, S, g, group=None) -> Morphism:
    """The reindexing ``A^{Sg} -> A^S`` with ``pi^S_s o it = pi^{Sg}_{sg}``."""
    from ..groups import Subset, subset_translate

    cat = A.category
    if not isinstance(S, Subset):
        S = Subset(group, S)
    group = S.group
    Sg = subset_translate(S, g)
    PS, PSg = cat.power(A, S), cat.power(A, Sg)
    return cat.tuple([cat.projection(PSg, group.op(s, g)) for s in PS.index], PS, PSg.carrier)
