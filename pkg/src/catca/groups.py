"""Group universes: finite Cayley-table groups, Z^d and free products of finite groups.

Elements are plain hashable Python values:

* finite-table group: ``int`` id in ``range(n)``
* ``Z^d``: ``tuple`` of ``d`` ints
* free product ``G * H``: ``tuple`` of ``(side, id)`` letters, ``side`` in ``{"L", "R"}``,
  always in reduced alternating form (no identity letters, no two adjacent
  letters on the same side).

Every group carries a canonical total order (``sort_key``) that fixes the
coordinate order of power objects built over its subsets.
"""
from __future__ import annotations

import itertools
from collections import deque
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import MembershipError, TypingError

LEFT, RIGHT = "L", "R"


class Group:
    """Common interface of the three kinds of universe."""

    kind: str
    identity: object
    generators: tuple

    is_finite = False

    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def sort_key(self, a):
        raise NotImplementedError

    def coerce(self, x):
        """Turn a loosely typed value (list, int, JSON letter dicts) into an element."""
        return x

    def check(self, a):
        if not self.contains(a):
            raise MembershipError(f"{a!r} is not an element of {self!r}")
        return a

    def mul(self, *elems):
        out = self.identity
        for x in elems:
            out = self.op(out, x)
        return out

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        out, base = self.identity, a
        while n:
            if n & 1:
                out = self.op(out, base)
            base = self.op(base, base)
            n >>= 1
        return out

    def sorted(self, elems: Iterable) -> tuple:
        return tuple(sorted(set(elems), key=self.sort_key))


class FiniteGroup(Group):
    """A finite group given by its Cayley table; validated exhaustively."""

    kind = "finite-table"
    is_finite = True

    def __init__(self, table, identity: int = 0, generators=None, name: str | None = None):
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise TypingError("Cayley table must be a non-empty square array")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise TypingError("Cayley table entries out of range")
        if not 0 <= identity < n:
            raise TypingError("identity id out of range")
        idx = np.arange(n)
        if not (np.array_equal(arr[identity], idx) and np.array_equal(arr[:, identity], idx)):
            raise TypingError("identity law fails")
        # (ab)c == a(bc) for every triple
        if not np.array_equal(arr[arr], arr[:, arr]):
            raise TypingError("associativity fails")
        inverse = []
        for a in range(n):
            hits = np.flatnonzero(arr[a] == identity)
            if len(hits) != 1 or arr[hits[0], a] != identity:
                raise TypingError(f"element {a} has no two-sided inverse")
            inverse.append(int(hits[0]))
        self.order = n
        self.identity = identity
        self._table = tuple(tuple(int(v) for v in row) for row in arr)
        self._inverse = tuple(inverse)
        if generators is None:
            generators = [a for a in range(n) if a != identity]
        self.generators = tuple(self.check(g) for g in generators)
        self.name = name or f"G{n}"

    @property
    def table(self):
        return self._table

    def op(self, a, b):
        return self._table[a][b]

    def inv(self, a):
        return self._inverse[a]

    def contains(self, a) -> bool:
        return isinstance(a, (int, np.integer)) and not isinstance(a, bool) and 0 <= a < self.order

    def coerce(self, x):
        return self.check(int(x))

    def sort_key(self, a):
        return a

    def elements(self) -> tuple:
        return tuple(range(self.order))

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup) and self._table == other._table
                and self.identity == other.identity)

    def __hash__(self):
        return hash((self.kind, self._table, self.identity))

    def __repr__(self):
        return self.name


class ZPower(Group):
    """The free abelian group Z^d with generators the signed unit vectors."""

    kind = "z-power"

    def __init__(self, d: int = 1):
        if d < 1:
            raise TypingError("dimension must be positive")
        self.d = d
        self.identity = (0,) * d
        units = [tuple(int(i == k) for i in range(d)) for k in range(d)]
        self.generators = tuple(units + [tuple(-v for v in u) for u in units])

    def op(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def contains(self, a) -> bool:
        return (isinstance(a, tuple) and len(a) == self.d
                and all(isinstance(x, (int, np.integer)) and not isinstance(x, bool) for x in a))

    def coerce(self, x):
        if isinstance(x, (int, np.integer)):
            x = (x,)
        return self.check(tuple(int(v) for v in x))

    def sort_key(self, a):
        return a

    def __eq__(self, other):
        return isinstance(other, ZPower) and other.d == self.d

    def __hash__(self):
        return hash((self.kind, self.d))

    def __repr__(self):
        return "Z" if self.d == 1 else f"Z^{self.d}"


class FreeProduct(Group):
    """Free product of two finite groups; elements are reduced alternating words."""

    kind = "free-product"

    def __init__(self, left: FiniteGroup, right: FiniteGroup):
        if not (isinstance(left, FiniteGroup) and isinstance(right, FiniteGroup)):
            raise TypingError("free product factors must be finite-table groups")
        self.left, self.right = left, right
        self.identity = ()
        self.generators = (tuple(((LEFT, g),) for g in left.generators)
                           + tuple(((RIGHT, h),) for h in right.generators))

    def factor(self, side):
        return self.left if side == LEFT else self.right

    def embed(self, side, a):
        """The canonical embedding of a factor element as a word."""
        f = self.factor(side)
        f.check(a)
        return () if a == f.identity else ((side, a),)

    def op(self, a, b):
        out = list(a)
        for side, x in b:
            if out and out[-1][0] == side:
                f = self.factor(side)
                y = f.op(out[-1][1], x)
                if y == f.identity:
                    out.pop()
                else:
                    out[-1] = (side, y)
            else:
                out.append((side, x))
        return tuple(out)

    def inv(self, a):
        return tuple((side, self.factor(side).inv(x)) for side, x in reversed(a))

    def contains(self, a) -> bool:
        if not isinstance(a, tuple):
            return False
        prev = None
        for letter in a:
            if not (isinstance(letter, tuple) and len(letter) == 2):
                return False
            side, x = letter
            if side not in (LEFT, RIGHT) or side == prev:
                return False
            f = self.factor(side)
            if not f.contains(x) or x == f.identity:
                return False
            prev = side
        return True

    def coerce(self, x):
        letters = []
        for letter in x:
            if isinstance(letter, dict):
                letters.append((letter["side"], int(letter["id"])))
            else:
                side, v = letter
                letters.append((side, int(v)))
        # accept unreduced input, return the reduced word
        word = ()
        for side, v in letters:
            self.factor(side).check(v)
            word = self.op(word, self.embed(side, v))
        return word

    def sort_key(self, a):
        return (len(a), a)

    def __eq__(self, other):
        return isinstance(other, FreeProduct) and (self.left, self.right) == (other.left, other.right)

    def __hash__(self):
        return hash((self.kind, self.left, self.right))

    def __repr__(self):
        return f"({self.left!r} * {self.right!r})"


def cyclic(n: int) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, 0, name=f"Z{n}")


def symmetric(k: int) -> FiniteGroup:
    """Symmetric group on k points; ids follow lexicographic order of permutations.

    The product is composition ``(a*b)(i) = a(b(i))``.
    """
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[b[i]] for i in range(k))] for b in perms] for a in perms]
    return FiniteGroup(table, 0, name=f"S{k}")


# -- finite subsets -----------------------------------------------------------

class Subset:
    """A finite subset of a group, kept sorted in the group's canonical order."""

    __slots__ = ("group", "elements")

    def __init__(self, group: Group, elements: Iterable = ()):
        self.group = group
        self.elements = group.sorted(group.coerce(x) for x in elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __eq__(self, other):
        return (isinstance(other, Subset) and self.group == other.group
                and self.elements == other.elements)

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other):
        return set(self.elements) <= set(other.elements)

    def __or__(self, other):
        _same_owner(self, other)
        return Subset(self.group, self.elements + other.elements)

    def __repr__(self):
        return f"Subset({self.group!r}, {list(self.elements)})"


def _same_owner(S: Subset, T: Subset):
    if S.group != T.group:
        raise TypingError("subsets belong to different groups")


def subset_product(S: Subset, T: Subset) -> Subset:
    """All products ``s*t`` with the left factor from ``S``."""
    _same_owner(S, T)
    G = S.group
    return Subset(G, (G.op(s, t) for s in S for t in T))


def subset_translate(S: Subset, g) -> Subset:
    G = S.group
    G.check(g)
    return Subset(G, (G.op(s, g) for s in S))


def subset_image(S: Subset, phi: "GroupHom") -> Subset:
    if S.group != phi.source:
        raise TypingError("subset does not live in the homomorphism's source")
    return Subset(phi.target, (phi(s) for s in S))


def right_translation(G: Group, g) -> Callable:
    G.check(g)
    return lambda x: G.op(x, g)


def ball(G: Group, r: int) -> Subset:
    """Elements reachable from the identity by at most ``r`` generator steps."""
    seen = {G.identity}
    frontier = [G.identity]
    for _ in range(r):
        nxt = []
        for x in frontier:
            for s in G.generators:
                y = G.op(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    return Subset(G, seen)


# -- homomorphisms --------------------------------------------------------------

class GroupHom:
    """A group homomorphism ``source -> target``; call it on elements."""

    rule: str

    def __init__(self, source: Group, target: Group):
        self.source = source
        self.target = target

    def __call__(self, h):
        return self._eval(self.source.check(h))

    def _eval(self, h):
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        if (self.source, self.target) != (other.source, other.target):
            return False
        if self.source.is_finite:
            return all(self._eval(x) == other._eval(x) for x in self.source.elements())
        # homomorphisms agree iff they agree on generators
        return all(self._eval(x) == other._eval(x) for x in self.source.generators)

    def __hash__(self):
        return hash((self.source, self.target))

    def __repr__(self):
        return f"{type(self).__name__}({self.source!r} -> {self.target!r})"


class TableHom(GroupHom):
    """Homomorphism out of a finite group, stored as an image table."""

    rule = "table"

    def __init__(self, source: FiniteGroup, target: Group, images: Sequence, validate: bool = True):
        if not isinstance(source, FiniteGroup):
            raise TypingError("table homomorphisms need a finite source")
        super().__init__(source, target)
        if len(images) != source.order:
            raise TypingError("image table has wrong length")
        self.images = tuple(target.coerce(x) for x in images)
        if validate:
            for a in range(source.order):
                for b in range(source.order):
                    if self.images[source.op(a, b)] != target.op(self.images[a], self.images[b]):
                        raise TypingError(f"not a homomorphism: fails at ({a}, {b})")

    def _eval(self, h):
        return self.images[h]


class PairHom(GroupHom):
    """The mediator ``[phi, psi]: G * H -> K`` of the coproduct of groups."""

    rule = "pair"

    def __init__(self, left: GroupHom, right: GroupHom, source: FreeProduct | None = None):
        if left.target != right.target:
            raise TypingError("pair components must share a target")
        source = source or FreeProduct(left.source, right.source)
        if (source.left, source.right) != (left.source, right.source):
            raise TypingError("pair components do not match the free-product factors")
        super().__init__(source, left.target)
        self.left, self.right = left, right

    def _eval(self, word):
        K = self.target
        out = K.identity
        for side, x in word:
            out = K.op(out, (self.left if side == LEFT else self.right)._eval(x))
        return out


class MatrixHom(GroupHom):
    """Linear map ``Z^d -> Z^e`` given by an integer ``e x d`` matrix."""

    rule = "matrix"

    def __init__(self, source: ZPower, target: ZPower, matrix):
        super().__init__(source, target)
        m = np.asarray(matrix, dtype=np.int64).reshape(target.d, source.d)
        self.matrix = tuple(tuple(int(v) for v in row) for row in m)

    def _eval(self, x):
        return tuple(sum(c * v for c, v in zip(row, x)) for row in self.matrix)


class GeneratorHom(GroupHom):
    """Homomorphism ``Z^d -> G`` fixed by the images of the unit vectors.

    The images must commute pairwise.
    """

    rule = "generators"

    def __init__(self, source: ZPower, target: Group, images: Sequence):
        super().__init__(source, target)
        if len(images) != source.d:
            raise TypingError("need one image per unit vector")
        self.images = tuple(target.coerce(x) for x in images)
        for a, b in itertools.combinations(self.images, 2):
            if target.op(a, b) != target.op(b, a):
                raise TypingError("generator images must commute")

    def _eval(self, x):
        T = self.target
        return T.mul(*(T.pow(g, n) for g, n in zip(self.images, x)))


class ComposedHom(GroupHom):
    """``outer o inner``."""

    rule = "compose"

    def __init__(self, outer: GroupHom, inner: GroupHom):
        if inner.target != outer.source:
            raise TypingError("homomorphisms are not composable")
        super().__init__(inner.source, outer.target)
        self.outer, self.inner = outer, inner

    def _eval(self, x):
        return self.outer._eval(self.inner._eval(x))


def identity_hom(G: Group) -> GroupHom:
    if isinstance(G, FiniteGroup):
        return TableHom(G, G, G.elements(), validate=False)
    if isinstance(G, ZPower):
        return MatrixHom(G, G, np.eye(G.d, dtype=np.int64))
    return PairHom(embedding(G, LEFT), embedding(G, RIGHT), G)


def trivial_hom(source: Group, target: Group) -> GroupHom:
    e = target.identity
    if isinstance(source, FiniteGroup):
        return TableHom(source, target, [e] * source.order, validate=False)
    if isinstance(source, ZPower):
        return GeneratorHom(source, target, [e] * source.d)
    return PairHom(trivial_hom(source.left, target), trivial_hom(source.right, target), source)


def embedding(F: FreeProduct, side: str) -> TableHom:
    """Canonical embedding of a factor into the free product."""
    f = F.factor(side)
    return TableHom(f, F, [F.embed(side, a) for a in f.elements()], validate=False)


def compose_homs(outer: GroupHom, inner: GroupHom) -> GroupHom:
    """``outer o inner``; tabulated when the source is finite."""
    if inner.target != outer.source:
        raise TypingError("homomorphisms are not composable")
    if isinstance(inner.source, FiniteGroup):
        return TableHom(inner.source, outer.target,
                        [outer._eval(inner._eval(x)) for x in inner.source.elements()],
                        validate=False)
    return ComposedHom(outer, inner)


def check_hom_law(phi: GroupHom, radius: int = 3) -> tuple | None:
    """Return a pair ``(x, y)`` violating ``phi(xy) = phi(x)phi(y)``, or ``None``.

    Exhaustive for finite sources, otherwise all pairs in ``ball(source, radius)``.
    """
    H, G = phi.source, phi.target
    pool = H.elements() if H.is_finite else ball(H, radius).elements
    for x in pool:
        for y in pool:
            if phi(H.op(x, y)) != G.op(phi(x), phi(y)):
                return (x, y)
    return None


def _generating_set(G: FiniteGroup) -> list:
    """A small generating set, chosen greedily in canonical order."""
    gens, span = [], {G.identity}
    for a in G.elements():
        if a in span:
            continue
        gens.append(a)
        span = set(ball(FiniteGroup(G.table, G.identity, gens), G.order).elements)
    return gens


def homomorphisms(H: FiniteGroup, G: Group) -> list[TableHom]:
    """All homomorphisms from a finite group ``H`` into a finite group ``G``."""
    gens = _generating_set(H)
    out = []
    for imgs in itertools.product(G.elements(), repeat=len(gens)):
        table = {H.identity: G.identity}
        queue = deque([H.identity])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for s, t in zip(gens, imgs):
                y, v = H.op(x, s), G.op(table[x], t)
                if y in table:
                    if table[y] != v:
                        ok = False
                        break
                else:
                    table[y] = v
                    queue.append(y)
        if not ok:
            continue
        try:
            out.append(TableHom(H, G, [table[x] for x in H.elements()]))
        except TypingError:
            pass
    return out
