"""Cellular automata over a single group universe.

A CA is stored as its local data ``(S, mu)`` bound to a universe ``G``.  Over a
finite ``G`` it can be realized as the morphism ``A^G -> B^G`` obtained by
tupling the family ``mu o Res^G_S o shift_g``; in categories with an element
layer it also acts lazily on configurations over any universe, with
``(tau c)(g) = mu((c(s g))_{s in S})``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .categories import Morphism, translation_iso
from .errors import CapabilityError, InfiniteUniverseError, TypingError
from .groups import (FiniteGroup, Group, Subset, ball, right_translation, subset_product)


@dataclass(frozen=True)
class LocalRule:
    """A neighborhood ``S`` together with a local defining morphism ``mu: A^S -> B``."""

    A: object
    B: object
    S: Subset
    mu: Morphism

    def __post_init__(self):
        cat = self.mu.category
        if self.A.category != cat or self.B.category != cat:
            raise TypingError("alphabets and local morphism live in different categories")
        P = cat.power(self.A, self.S)
        if self.mu.source != P.carrier:
            raise TypingError(f"local morphism source {self.mu.source!r} is not A^S = {P.carrier!r}")
        if self.mu.target != self.B:
            raise TypingError("local morphism target is not B")

    @property
    def category(self):
        return self.mu.category

    @property
    def power(self):
        return self.category.power(self.A, self.S)

    def evaluate(self, values: Sequence):
        """``mu`` applied to the window values listed in the order of ``S``."""
        cat = self.category
        return cat.apply(self.mu, cat.pack(self.power, values))


@dataclass(frozen=True)
class CellularAutomaton:
    G: Group
    rule: LocalRule

    def __post_init__(self):
        if self.rule.S.group != self.G:
            raise TypingError("neighborhood is not a subset of the universe")

    A = property(lambda self: self.rule.A)
    B = property(lambda self: self.rule.B)
    S = property(lambda self: self.rule.S)
    mu = property(lambda self: self.rule.mu)
    category = property(lambda self: self.rule.category)
    source_group = property(lambda self: self.G)
    target_group = property(lambda self: self.G)

    def sources(self, g) -> list:
        """Cells of the input read when evaluating cell ``g``."""
        op = self.G.op
        return [op(s, g) for s in self.rule.S.elements]

    def __call__(self, c: "Configuration") -> "Configuration":
        return apply(self, c)


def make_ca(G: Group, A, B, S, mu: Morphism) -> CellularAutomaton:
    S = S if isinstance(S, Subset) else Subset(G, S)
    return CellularAutomaton(G, LocalRule(A, B, S, mu))


def identity_ca(G: Group, A) -> CellularAutomaton:
    cat = A.category
    S = Subset(G, [G.identity])
    return make_ca(G, A, A, S, cat.projection(cat.power(A, S), G.identity))


def shift_ca(G: Group, A, g) -> CellularAutomaton:
    """The CA with neighborhood ``{g}`` and rule ``pi_g``: ``(tau c)(x) = c(g x)``.

    For central ``g`` (e.g. any ``g`` in an abelian group) this is the shift
    ``c -> c(. g)``.  Otherwise the shift by ``g`` is not equivariant and so is
    not a CA at all; use ``shift_config`` / ``shift_morphism`` for it.
    """
    cat = A.category
    S = Subset(G, [g])
    return make_ca(G, A, A, S, cat.projection(cat.power(A, S), S.elements[0]))


def pushforward_ca(f: Morphism, G: Group) -> CellularAutomaton:
    """Cellwise application of ``f``; local rule ``f o pi_e``."""
    cat = f.category
    S = Subset(G, [G.identity])
    return make_ca(G, f.source, f.target, S,
                   cat.compose(f, cat.projection(cat.power(f.source, S), G.identity)))


# -- morphism level (finite universes) ------------------------------------------

def _require_finite(G: Group):
    if not isinstance(G, FiniteGroup):
        raise InfiniteUniverseError(f"{G!r} is infinite; morphism-level realization needs a finite group")


def shift_morphism(G: Group, A, g) -> Morphism:
    """``shift_g = (R_g)^*_A : A^G -> A^G``."""
    _require_finite(G)
    elems = G.elements()
    return A.category.index_pullback(right_translation(G, g), A, elems, elems)


def cell_morphism(G: Group, rule: LocalRule, g) -> Morphism:
    """``mu o Res^G_S o shift_g``: what the defining equation requires at cell ``g``."""
    cat = rule.category
    res = cat.restriction(rule.A, G.elements(), rule.S)
    return cat.compose_all(rule.mu, res, shift_morphism(G, rule.A, g))


def realize(tau: CellularAutomaton) -> Morphism:
    """The unique morphism ``A^G -> B^G`` whose ``g``-th projection is ``cell_morphism(g)``."""
    G = tau.G
    _require_finite(G)
    cat = tau.category
    return cat.tuple([cell_morphism(G, tau.rule, g) for g in G.elements()],
                     cat.power(tau.B, G.elements()))


def compose_ca(sigma: CellularAutomaton, tau: CellularAutomaton) -> CellularAutomaton:
    """``sigma o tau`` with neighborhood ``TS`` (``T`` from ``tau``) and rule ``nu o Phi``.

    ``Phi: A^{TS} -> B^S`` tuples ``mu o translation_iso(s) o Res^{TS}_{Ts}`` over ``s in S``.
    """
    if sigma.G != tau.G:
        raise TypingError("automata over different universes")
    if tau.B != sigma.A or tau.category != sigma.category:
        raise TypingError("alphabets do not compose")
    G, cat = tau.G, tau.category
    T, S = tau.S, sigma.S
    TS = subset_product(T, S)
    PB = cat.power(sigma.A, S)
    family = []
    for s in S:
        Ts = [G.op(t, s) for t in T]
        res = cat.restriction(tau.A, TS, Subset(G, Ts))
        family.append(cat.compose_all(tau.mu, translation_iso(tau.A, T, s, G), res))
    Phi = cat.tuple(family, PB, cat.power(tau.A, TS).carrier)
    return make_ca(G, tau.A, sigma.B, TS, cat.compose(sigma.mu, Phi))


def product_ca(alpha: CellularAutomaton, beta: CellularAutomaton):
    """Product in the category of CA over ``G``.

    Returns ``(tau, pi_A^G, pi_B^G)`` where ``tau`` has neighborhood ``S u T`` and
    local rule ``pair(mu o Res^V_S, eta o Res^V_T)``.
    """
    if alpha.G != beta.G or alpha.A != beta.A or alpha.category != beta.category:
        raise TypingError("product needs a shared universe and source alphabet")
    G, cat, C = alpha.G, alpha.category, alpha.A
    V = alpha.S | beta.S
    nu = cat.pair(cat.compose(alpha.mu, cat.restriction(C, V, alpha.S)),
                  cat.compose(beta.mu, cat.restriction(C, V, beta.S)))
    AB, pA, pB = cat.product(alpha.B, beta.B)
    return make_ca(G, C, AB, V, nu), pushforward_ca(pA, G), pushforward_ca(pB, G)


# -- configurations (concrete instances) ------------------------------------------

class Configuration:
    """A total assignment ``G -> A``; subclasses differ in representation."""

    group: Group
    alphabet: object

    def at(self, g):
        raise NotImplementedError

    def __call__(self, g):
        return self.at(self.group.coerce(g))

    def window(self, cells) -> list:
        return [self.at(g) for g in cells]


class DenseConfig(Configuration):
    """Values over a finite group, listed in canonical element order."""

    def __init__(self, group: FiniteGroup, alphabet, values: Sequence):
        _require_finite(group)
        if len(values) != group.order:
            raise TypingError("dense configuration needs one value per group element")
        cat = alphabet.category
        for v in values:
            if not cat.is_element(alphabet, v):
                raise TypingError(f"{v!r} is not an element of {alphabet!r}")
        self.group, self.alphabet = group, alphabet
        self.values = tuple(values)

    def at(self, g):
        return self.values[g]


class SparseConfig(Configuration):
    """Finitely many explicit cells on top of a constant default."""

    def __init__(self, group: Group, alphabet, support: Mapping, default):
        cat = alphabet.category
        cat._require_elements()
        self.group, self.alphabet = group, alphabet
        self.default = default
        self.support = {group.coerce(g): v for g, v in dict(support).items()}
        for v in [default, *self.support.values()]:
            if not cat.is_element(alphabet, v):
                raise TypingError(f"{v!r} is not an element of {alphabet!r}")

    def at(self, g):
        return self.support.get(g, self.default)


class FunctionConfig(Configuration):
    def __init__(self, group: Group, alphabet, fn: Callable):
        self.group, self.alphabet, self.fn = group, alphabet, fn

    def at(self, g):
        return self.fn(g)


class DerivedConfig(Configuration):
    """The image of ``inner`` under an automaton, evaluated on demand and memoized.

    Evaluation is iterative, so long chains of derived configurations do not hit
    the recursion limit.  The memo is a plain dict; evaluation is single-threaded.
    """

    def __init__(self, automaton, inner: Configuration):
        self.automaton = automaton
        self.inner = inner
        self.group = automaton.target_group
        self.alphabet = automaton.B
        self.memo: dict = {}

    def at(self, g):
        if g in self.memo:
            return self.memo[g]
        stack = [(self, g)]
        while stack:
            cfg, x = stack[-1]
            if x in cfg.memo:
                stack.pop()
                continue
            cells = cfg.automaton.sources(x)
            inner = cfg.inner
            if isinstance(inner, DerivedConfig):
                missing = [(inner, y) for y in cells if y not in inner.memo]
                if missing:
                    stack.extend(missing)
                    continue
                values = [inner.memo[y] for y in cells]
            else:
                values = [inner.at(y) for y in cells]
            cfg.memo[x] = cfg.automaton.rule.evaluate(values)
            stack.pop()
        return self.memo[g]


def shift_config(c: Configuration, g) -> Configuration:
    """The shifted configuration ``x -> c(x g)``."""
    G = c.group
    g = G.coerce(g)
    return FunctionConfig(G, c.alphabet, lambda x: c.at(G.op(x, g)))


def apply(tau, c: Configuration) -> DerivedConfig:
    """Point-level action of a CA (or generalized CA) on a configuration."""
    if not tau.category.has_elements:
        raise CapabilityError(f"{tau.category.name} has no points; use the morphism level")
    if c.group != tau.source_group:
        raise TypingError("configuration lives over a different universe")
    if c.alphabet != tau.A:
        raise TypingError("configuration alphabet differs from the automaton's input alphabet")
    return DerivedConfig(tau, c)


def iterate(tau: CellularAutomaton, c: Configuration, steps: int) -> list[Configuration]:
    """``[c, tau c, tau^2 c, ...]`` with ``steps + 1`` entries."""
    out = [c]
    for _ in range(steps):
        out.append(apply(tau, out[-1]))
    return out


def agree(c1: Configuration, c2: Configuration, radius: int = 3, cells=None) -> bool:
    """Equality test on a ball (or explicit cells); exact for finite groups given a large radius."""
    if c1.group != c2.group:
        return False
    cells = cells if cells is not None else ball(c1.group, radius)
    return all(c1.at(g) == c2.at(g) for g in cells)


def dense_from(c: Configuration) -> DenseConfig:
    _require_finite(c.group)
    return DenseConfig(c.group, c.alphabet, c.window(c.group.elements()))


def elementary_ca(number: int) -> CellularAutomaton:
    """Wolfram elementary rule over ``Z`` with window ``(-1, 0, 1)``, as a finset CA."""
    from .categories import FINSET
    from .groups import ZPower
    if not 0 <= number < 256:
        raise ValueError("elementary rules are numbered 0..255")
    Z = ZPower(1)
    two = FINSET.obj(2)
    S = Subset(Z, [(-1,), (0,), (1,)])
    # codes are base-2 with the leftmost cell most significant, as in Wolfram's numbering
    table = [(number >> code) & 1 for code in range(8)]
    return make_ca(Z, two, two, S, FINSET.morphism(FINSET.power(two, S).carrier, two, table))


def linear_ca(G: Group, p: int, S, coeffs) -> CellularAutomaton:
    """Scalar linear rule ``x -> sum_s coeffs[s] * c(s g)`` over ``F_p``.

    ``coeffs`` is listed in the same order as ``S``.
    """
    from .categories import finvect
    cat = finvect(p)
    one = cat.obj(1)
    cells = [G.coerce(s) for s in S]
    weight = dict(zip(cells, coeffs))
    S = Subset(G, cells)
    P = cat.power(one, S)
    return make_ca(G, one, one, S, cat.morphism(P.carrier, one, [[weight[s] for s in S]]))
