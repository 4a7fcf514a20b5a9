"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

from functools import lru_cache

import pytest

from psl2kit.groups import PermGroup
from psl2kit.projline import ProjLine
from psl2kit.psl2 import psl2_perm_group
from psl2kit.verify import build_exceptional


def brute_closure(gen_images):
    """Dict-based product closure, written independently of the library's
    frontier closure: the order oracle for the stabilizer chain."""
    n = len(gen_images[0])
    identity = tuple(range(n))
    elements = {identity}
    pending = [identity]
    while pending:
        current = pending.pop()
        for g in gen_images:
            product = tuple(current[g[i]] for i in range(n))
            if product not in elements:
                elements.add(product)
                pending.append(product)
    return elements


@lru_cache(maxsize=None)
def line_over(p: int) -> ProjLine:
    return ProjLine.over_prime(p)


@lru_cache(maxsize=None)
def psl2_cached(q: int) -> PermGroup:
    return psl2_perm_group(q)


@lru_cache(maxsize=None)
def exceptional_cached(variant: int) -> PermGroup:
    return build_exceptional(variant)


@pytest.fixture
def line7() -> ProjLine:
    return line_over(7)


@pytest.fixture
def line5() -> ProjLine:
    return line_over(5)
