"""Memoized corpus objects shared across test modules.

Tensor spaces compare by factor identity, so every test must reuse the same
quasi-Hopf algebra object; building each structure once also keeps the suite fast.
"""

from functools import lru_cache

from quasihopf.corpus import QUASI_HOPF, regular_module_algebra, trivial_module_algebra
from quasihopf.fields import QQ
from quasihopf.representations import smash_product
from quasihopf.structure_theorem import decompose

NAMES = tuple(QUASI_HOPF)
PAIRS = tuple((name, kind) for name in NAMES for kind in ("triv", "id"))


@lru_cache(maxsize=None)
def algebra(name, field=QQ):
    return QUASI_HOPF[name](field)


@lru_cache(maxsize=None)
def module_algebra(name, kind, field=QQ):
    build = trivial_module_algebra if kind == "triv" else regular_module_algebra
    return build(algebra(name, field))


@lru_cache(maxsize=None)
def smash(name, kind, field=QQ):
    return smash_product(module_algebra(name, kind, field))


@lru_cache(maxsize=None)
def decomposition(name, kind, field=QQ):
    CA, j = smash(name, kind, field)
    return decompose(CA, j)
