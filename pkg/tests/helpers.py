"""Shared builders for the test suite, cached so repeated use is cheap.

Caches are fill-once and idempotent, so sharing them across tests cannot
change any computed value.
"""

from functools import lru_cache

from heckedual import (
    CoxeterMatrix,
    GroupContext,
    HeckeAlgebra,
    KLBasis,
    ProjectiveBasis,
    build,
)


@lru_cache(maxsize=None)
def context(spec: str, bound=None, engine: str = "auto") -> GroupContext:
    return build(CoxeterMatrix.from_shorthand(spec), length_bound=bound, engine=engine)


@lru_cache(maxsize=None)
def algebra(spec: str, bound=None, engine: str = "auto") -> HeckeAlgebra:
    return HeckeAlgebra(context(spec, bound, engine))


@lru_cache(maxsize=None)
def kl(spec: str, bound=None, engine: str = "auto") -> KLBasis:
    return KLBasis(algebra(spec, bound, engine))


@lru_cache(maxsize=None)
def proj(spec: str, engine: str = "auto") -> ProjectiveBasis:
    return ProjectiveBasis(kl(spec, None, engine))


def gen(spec: str, s: int, bound=None):
    """The element id of generator s (0-based) in the given group."""
    return context(spec, bound).element_of_word((s,))
