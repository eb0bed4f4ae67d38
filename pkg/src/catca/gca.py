"""Generalized cellular automata ``A^G -> B^H`` driven by a group homomorphism ``phi: H -> G``.

Point semantics: ``(tau c)(h) = mu((c(s phi(h)))_{s in S})``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ca import (CellularAutomaton, LocalRule, _require_finite, make_ca, product_ca,
                 shift_morphism)
from .categories import Morphism, translation_iso
from .errors import CapabilityError, TypingError
from .groups import (FreeProduct, Group, GroupHom, LEFT, PairHom, RIGHT, Subset,
                     compose_homs, embedding, identity_hom, subset_image, subset_product)


@dataclass(frozen=True, eq=False)
class GeneralizedCA:
    G: Group          # universe of the input configurations
    H: Group          # universe of the output configurations
    phi: GroupHom     # H -> G
    rule: LocalRule   # neighborhood inside G

    def __post_init__(self):
        if self.phi.source != self.H or self.phi.target != self.G:
            raise TypingError("homomorphism must map the output universe into the input universe")
        if self.rule.S.group != self.G:
            raise TypingError("neighborhood is not a subset of the input universe")

    A = property(lambda self: self.rule.A)
    B = property(lambda self: self.rule.B)
    S = property(lambda self: self.rule.S)
    mu = property(lambda self: self.rule.mu)
    category = property(lambda self: self.rule.category)
    source_group = property(lambda self: self.G)
    target_group = property(lambda self: self.H)

    def sources(self, h) -> list:
        x = self.phi._eval(h)
        op = self.G.op
        return [op(s, x) for s in self.rule.S.elements]

    def __call__(self, c):
        from .ca import apply
        return apply(self, c)

    def __repr__(self):
        return f"GeneralizedCA({self.G!r} <- {self.H!r}, |S|={len(self.S)})"


def make_gca(G: Group, H: Group, phi: GroupHom, A, B, S, mu: Morphism) -> GeneralizedCA:
    S = S if isinstance(S, Subset) else Subset(G, S)
    return GeneralizedCA(G, H, phi, LocalRule(A, B, S, mu))


def as_gca(tau: CellularAutomaton) -> GeneralizedCA:
    """A CA over ``G`` seen as an ``id``-cellular automaton."""
    return GeneralizedCA(tau.G, tau.G, identity_hom(tau.G), tau.rule)


def realize_gca(tau: GeneralizedCA) -> Morphism:
    """``A^G -> B^H`` tupling ``mu o Res^G_S o shift_{phi(h)}`` over ``h in H``."""
    _require_finite(tau.G)
    _require_finite(tau.H)
    cat, G = tau.category, tau.G
    res = cat.restriction(tau.A, G.elements(), tau.S)
    local = cat.compose(tau.mu, res)
    family = [cat.compose(local, shift_morphism(G, tau.A, tau.phi(h))) for h in tau.H.elements()]
    return cat.tuple(family, cat.power(tau.B, tau.H.elements()))


def compose_gca(sigma: GeneralizedCA, tau: GeneralizedCA) -> GeneralizedCA:
    """``sigma o tau`` for a phi-CA ``tau: A^G -> B^H`` and psi-CA ``sigma: B^H -> C^K``.

    The result is a ``phi o psi``-CA with neighborhood ``T phi(S)``.
    """
    if tau.H != sigma.G:
        raise TypingError("universes do not compose")
    if tau.B != sigma.A or tau.category != sigma.category:
        raise TypingError("alphabets do not compose")
    cat, G, phi = tau.category, tau.G, tau.phi
    T, S = tau.S, sigma.S
    nbhd = subset_product(T, subset_image(S, phi))
    family = []
    for s in S:
        x = phi(s)
        Tx = Subset(G, [G.op(t, x) for t in T])
        res = cat.restriction(tau.A, nbhd, Tx)
        family.append(cat.compose_all(tau.mu, translation_iso(tau.A, T, x), res))
    Phi = cat.tuple(family, cat.power(sigma.A, S), cat.power(tau.A, nbhd).carrier)
    return make_gca(G, sigma.H, compose_homs(phi, sigma.phi), tau.A, sigma.B, nbhd,
                    cat.compose(sigma.mu, Phi))


def pullback_gca(phi: GroupHom, A) -> GeneralizedCA:
    """``phi^*_A : A^G -> A^H`` as a phi-CA with neighborhood ``{e}``."""
    cat, G = A.category, phi.target
    S = Subset(G, [G.identity])
    return make_gca(G, phi.source, phi, A, A, S, cat.projection(cat.power(A, S), G.identity))


def factorize(tau: GeneralizedCA) -> tuple[CellularAutomaton, GroupHom]:
    """``(tau_G, phi)`` with ``tau = phi^*_B o tau_G``; ``tau_G`` reuses the local data."""
    return CellularAutomaton(tau.G, tau.rule), tau.phi


def weak_product(A, B, G, H) -> tuple[GeneralizedCA, GeneralizedCA]:
    """The two projections out of ``(A x B)^{G*H}`` onto ``A^G`` and ``B^H``.

    Each samples the configuration along one embedded factor and projects the
    cell value onto its alphabet.
    """
    cat = A.category
    if not cat.has_elements:
        raise CapabilityError("the weak product is checked pointwise and needs an element layer")
    F = FreeProduct(G, H)
    AB, pA, pB = cat.product(A, B)
    S = Subset(F, [F.identity])
    pe = cat.projection(cat.power(AB, S), F.identity)
    iota_A = make_gca(F, G, embedding(F, LEFT), AB, A, S, cat.compose(pA, pe))
    iota_B = make_gca(F, H, embedding(F, RIGHT), AB, B, S, cat.compose(pB, pe))
    return iota_A, iota_B


def weak_product_mediator(alpha: GeneralizedCA, beta: GeneralizedCA) -> GeneralizedCA:
    """A ``[phi, psi]``-CA ``C^K -> (A x B)^{G*H}`` through which ``alpha`` and ``beta`` factor.

    Built as ``gamma^* o tau_K`` where ``tau_K`` pairs the factorizations of
    ``alpha`` and ``beta`` over ``K``.  It is not unique in general.
    """
    if alpha.G != beta.G:
        raise TypingError("alpha and beta must share their input universe")
    alpha_K, phi = factorize(alpha)
    beta_K, psi = factorize(beta)
    tau_K, _, _ = product_ca(alpha_K, beta_K)
    gamma = PairHom(phi, psi)
    return GeneralizedCA(alpha.G, gamma.source, gamma, tau_K.rule)
