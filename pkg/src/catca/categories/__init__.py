from .base import Category, Morphism, PowerObject, translation_iso
from .finposet import FINPOSET, FinPoset, PosetObj, antichain, chain
from .finset import FINSET, FinSet, SetObj, TableCategory
from .finvect import FinVect, VectObj, finvect
from .rel import REL, Rel, RelObj


def category_of(A) -> Category:
    """The alphabet category an object belongs to."""
    return A.category


__all__ = [
    "Category", "Morphism", "PowerObject", "translation_iso", "category_of",
    "FINSET", "FinSet", "SetObj", "TableCategory",
    "FINPOSET", "FinPoset", "PosetObj", "chain", "antichain",
    "finvect", "FinVect", "VectObj",
    "REL", "Rel", "RelObj",
]
