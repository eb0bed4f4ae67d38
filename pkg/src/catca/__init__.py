"""Cellular automata ``A^G -> B^G`` whose alphabets live in a category with finite products.

Four alphabet categories are provided: finite sets, finite-dimensional vector
spaces over a prime field, finite posets and relations.  Universes are finite
groups given by Cayley tables, ``Z^d`` and free products of finite groups.
"""
from .ca import (CellularAutomaton, DenseConfig, FunctionConfig, LocalRule, SparseConfig, agree,
                 apply, compose_ca, elementary_ca, identity_ca, iterate, linear_ca, make_ca,
                 product_ca, pushforward_ca, realize, shift_ca)
from .categories import (FINPOSET, FINSET, REL, Morphism, PosetObj, RelObj, SetObj, VectObj,
                         finvect, translation_iso)
from .checkers import (CheckReport, Rejection, check_equivariance, check_local, check_uniform,
                       chl_extract, minimal_neighborhood)
from .errors import (CapabilityError, CatCAError, InfiniteUniverseError, MembershipError,
                     TypingError)
from .gca import (GeneralizedCA, as_gca, compose_gca, factorize, make_gca, pullback_gca,
                  realize_gca, weak_product, weak_product_mediator)
from .groups import (FiniteGroup, FreeProduct, Subset, ZPower, ball, cyclic, homomorphisms,
                     symmetric)
from .suites import SUITES, run_suite

__version__ = "0.1.0"
