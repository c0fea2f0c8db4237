"""Shared generators and enumeration helpers for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache

import pytest

from infogreedy import InfoGraph, build_wsc, make_instance


def all_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[InfoGraph, ...]:
    """Every admissible graph on n labeled agents (direction is forced by order)."""
    pairs = all_pairs(n)
    out = []
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        out.append(InfoGraph(n, edges))
    return tuple(out)


@lru_cache(maxsize=None)
def unlabeled_classes(n: int) -> tuple[InfoGraph, ...]:
    """One representative per isomorphism class of the undirected shadows.

    Labeled quantities (the sibling property, in-neighborhoods) are not
    preserved by relabeling, but alpha, k, omega, and the fractional numbers
    are, so shadow classes are enough wherever only those are asserted.
    """
    import numpy as np
    from itertools import permutations

    pairs = all_pairs(n)
    index = {p: i for i, p in enumerate(pairs)}
    perms = []
    for perm in permutations(range(1, n + 1)):
        table = [0] * len(pairs)
        for slot, (i, j) in enumerate(pairs):
            a, b = perm[i - 1], perm[j - 1]
            table[slot] = index[(min(a, b), max(a, b))]
        perms.append(table)
    perms = np.array(perms, dtype=np.int64)

    count = 1 << len(pairs)
    bits = np.zeros((count, len(pairs)), dtype=bool)
    for slot in range(len(pairs)):
        bits[:, slot] = (np.arange(count) >> slot & 1).astype(bool)
    weights = 1 << np.arange(len(pairs), dtype=np.int64)
    canon = np.full(count, np.iinfo(np.int64).max, dtype=np.int64)
    for table in perms:
        remapped = np.zeros(count, dtype=np.int64)
        for slot in range(len(pairs)):
            remapped += bits[:, slot] * weights[table[slot]]
        np.minimum(canon, remapped, out=canon)
    reps = sorted(set(int(c) for c in canon))
    out = []
    for mask in reps:
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        out.append(InfoGraph(n, edges))
    return tuple(out)


def random_graph(rng: random.Random, n: int, p: float | None = None) -> InfoGraph:
    if p is None:
        p = rng.choice((0.2, 0.4, 0.6, 0.8))
    return InfoGraph(n, [e for e in all_pairs(n) if rng.random() < p])


def random_wsc_instance(
    rng: random.Random,
    n: int,
    max_targets: int = 10,
    max_actions: int = 4,
    max_value: int = 3,
):
    """A weighted-cover instance with at least one reachable positive target."""
    n_targets = rng.randint(1, max_targets)
    values = [rng.randint(0, max_value) for _ in range(n_targets)]
    actions = []
    for _ in range(n):
        acts = set()
        for _ in range(rng.randint(1, max_actions)):
            size = 1 if rng.random() < 0.7 else 2
            acts.add(frozenset(rng.sample(range(n_targets), min(size, n_targets))))
        actions.append(sorted(acts, key=sorted))
    covered = set().union(*(a for acts in actions for a in acts))
    if not any(values[t] for t in covered):
        values[min(covered)] = 1
    return make_instance(build_wsc(values), actions)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
