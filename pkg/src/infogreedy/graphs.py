"""Ordered information graphs and their exact combinatorial statistics.

Agents are labeled 1..n and decide in label order; an edge (j, i) with j < i
means agent i observes agent j's decision.  Only this admissible class is
representable: the constructor rejects any edge that points backward.

Cliques, independence numbers, and clique covers are computed exactly on the
undirected shadow of the graph (clique membership ignores edge direction).
Vertices map to bits: agent i occupies bit i-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AdmissibilityError, GuardRefusal, InputError, InternalConsistencyError

EXACT_GUARD = 16
CLIQUE_ROW_GUARD = 10000


class InfoGraph:
    """Immutable ordered DAG on agents 1..n with edges from lower to higher index."""

    __slots__ = ("n", "edges", "in_masks", "adj_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise InputError("agent count must be nonnegative")
        edge_set = set()
        for edge in edges:
            i, j = edge
            if not (1 <= i <= n and 1 <= j <= n):
                raise InputError(f"edge {edge} mentions an agent outside 1..{n}")
            if i >= j:
                raise AdmissibilityError(
                    f"edge {edge} violates the agent order (need i < j)"
                )
            edge_set.add((i, j))
        self.n = n
        self.edges = frozenset(edge_set)
        in_masks = [0] * (n + 1)
        adj_masks = [0] * (n + 1)
        for i, j in edge_set:
            in_masks[j] |= 1 << (i - 1)
            adj_masks[i] |= 1 << (j - 1)
            adj_masks[j] |= 1 << (i - 1)
        self.in_masks = tuple(in_masks)
        self.adj_masks = tuple(adj_masks)

    def in_neighbors(self, i: int) -> frozenset[int]:
        """Agents whose decisions agent i observes; empty for agent 1."""
        if not 1 <= i <= self.n:
            raise InputError(f"agent {i} outside 1..{self.n}")
        return _vertices(self.in_masks[i])

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj_masks[i] >> (j - 1) & 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other):
        return (
            isinstance(other, InfoGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"InfoGraph(n={self.n}, edges={self.sorted_edges()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> InfoGraph:
    return InfoGraph(n, edges)


def complete_graph(n: int) -> InfoGraph:
    return InfoGraph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def edgeless_graph(n: int) -> InfoGraph:
    return InfoGraph(n, [])


def is_complete(g: InfoGraph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def _vertices(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


# ---------------------------------------------------------------------------
# Cliques
# ---------------------------------------------------------------------------


def _maximal_clique_masks(adj: Sequence[int], allowed: int) -> list[int]:
    """Pivoting Bron-Kerbosch over the induced subgraph on ``allowed``."""
    found: list[int] = []
    nbr = [a & allowed for a in adj]

    def expand(r: int, p: int, x: int):
        if p == 0 and x == 0:
            found.append(r)
            return
        # pivot eliminating the most candidates, lowest bit on ties
        pivot, best = -1, -1
        px = p | x
        while px:
            u = px & -px
            deg = bin(p & nbr[u.bit_length()]).count("1")
            if deg > best:
                best, pivot = deg, u.bit_length()
            px &= px - 1
        cand = p & ~nbr[pivot]
        while cand:
            v = cand & -cand
            vb = v.bit_length()
            expand(r | v, p & nbr[vb], x & nbr[vb])
            p &= ~v
            x |= v
            cand &= cand - 1

    expand(0, allowed, 0)
    return found


def maximal_cliques(g: InfoGraph) -> list[frozenset[int]]:
    """All inclusion-maximal cliques of the undirected shadow, sorted."""
    if g.n == 0:
        return []
    masks = _maximal_clique_masks(g.adj_masks, (1 << g.n) - 1)
    cliques = [_vertices(m) for m in masks]
    return sorted(cliques, key=lambda c: (len(c), sorted(c)))


def all_clique_masks(g: InfoGraph, guard: int = CLIQUE_ROW_GUARD) -> list[int]:
    """Every nonempty clique as a bitmask; refuses past the row guard."""
    out: list[int] = []

    def grow(clique: int, candidates: int):
        while candidates:
            v = candidates & -candidates
            candidates &= candidates - 1
            ext = clique | v
            out.append(ext)
            if len(out) > guard:
                raise GuardRefusal(
                    f"more than {guard} cliques; use the maximal-clique LP path"
                )
            grow(ext, candidates & g.adj_masks[v.bit_length()])

    grow(0, (1 << g.n) - 1)
    return out


@dataclass(frozen=True)
class CliqueMatrix:
    """Binary clique-membership matrix, one row per clique (singletons included)."""

    rows: tuple[tuple[int, ...], ...]
    cliques: tuple[frozenset[int], ...]


def clique_matrix(g: InfoGraph, guard: int = CLIQUE_ROW_GUARD) -> CliqueMatrix:
    masks = all_clique_masks(g, guard)
    cliques = sorted((_vertices(m) for m in masks), key=lambda c: (len(c), sorted(c)))
    rows = tuple(
        tuple(1 if v in c else 0 for v in range(1, g.n + 1)) for c in cliques
    )
    return CliqueMatrix(rows, tuple(cliques))


# ---------------------------------------------------------------------------
# Independence number, clique cover, clique number
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactNumbers:
    alpha: int
    k: int
    omega: int
    max_independent_sets: tuple[frozenset[int], ...]


def _independent(mask: int, adj: Sequence[int]) -> bool:
    m = mask
    while m:
        v = m & -m
        if adj[v.bit_length()] & mask:
            return False
        m &= m - 1
    return True


def _max_independent_masks(g: InfoGraph) -> tuple[int, list[int]]:
    best, sets = 0, [0]
    for mask in range(1, 1 << g.n):
        size = bin(mask).count("1")
        if size < best or not _independent(mask, g.adj_masks):
            continue
        if size > best:
            best, sets = size, [mask]
        else:
            sets.append(mask)
    return best, sets


def _min_clique_cover(g: InfoGraph) -> int:
    """Exact minimum clique cover via subset DP over maximal cliques.

    Some optimal cover has its block through the lowest uncovered vertex equal
    to a clique maximal within the remaining vertices, so only those blocks
    are branched on.
    """
    memo = {0: 0}

    def solve(mask: int) -> int:
        got = memo.get(mask)
        if got is not None:
            return got
        v = (mask & -mask).bit_length()
        best = None
        for c in _maximal_clique_masks(g.adj_masks, mask):
            if not c >> (v - 1) & 1:
                continue
            sub = 1 + solve(mask & ~c)
            if best is None or sub < best:
                best = sub
        memo[mask] = best
        return best

    return solve((1 << g.n) - 1)


def exact_numbers(g: InfoGraph, guard: int = EXACT_GUARD) -> ExactNumbers:
    """alpha, minimum clique cover, clique number, and all maximum independent sets."""
    if g.n > guard:
        raise GuardRefusal(f"n={g.n} exceeds exhaustive guard {guard}")
    if g.n == 0:
        return ExactNumbers(0, 0, 0, (frozenset(),))
    alpha, ind_masks = _max_independent_masks(g)
    k = _min_clique_cover(g)
    omega = max(len(c) for c in maximal_cliques(g))
    sets = tuple(
        sorted((_vertices(m) for m in ind_masks), key=lambda s: sorted(s))
    )
    return ExactNumbers(alpha, k, omega, sets)


# ---------------------------------------------------------------------------
# Sibling property
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SiblingVerdict:
    has_property: bool
    witness: tuple[frozenset[int], int, int] | None  # (J, member of J, observer w)
    witnesses: tuple[tuple[frozenset[int], int, int], ...]  # every (J, w) pair
    audit: dict | None  # structural audit, filled when the property is absent

    def __bool__(self) -> bool:
        return self.has_property


def sibling_property(g: InfoGraph, guard: int = EXACT_GUARD) -> SiblingVerdict:
    """Does some maximum independent set J have a member observed from outside?

    Returns every witness triple (J, i, w) with i in J observed by w outside
    J, ordered by (J, w); ``witness`` is the first.  When the property is
    absent, the four structural consequences are audited (unique maximum J;
    agents n and n-1 belong to J; removing J strictly drops the independence
    number; every outside agent sends at least two edges into J) and any
    violation raises an internal-consistency failure.  If J = V there is no
    outside vertex at all, so the property is absent and the audit of the
    outside-facing consequences is vacuous.
    """
    nums = exact_numbers(g, guard)
    witnesses: list[tuple[frozenset[int], int, int]] = []
    for jset in nums.max_independent_sets:
        jmask = _mask(jset)
        for w in range(1, g.n + 1):
            if jmask >> (w - 1) & 1:
                continue
            hit = g.in_masks[w] & jmask
            if hit:
                witnesses.append((jset, (hit & -hit).bit_length(), w))
    if witnesses:
        return SiblingVerdict(True, witnesses[0], tuple(witnesses), None)

    audit: dict = {"unique_maximum": len(nums.max_independent_sets) == 1}
    jmask = _mask(nums.max_independent_sets[0])
    outside = [v for v in range(1, g.n + 1) if not jmask >> (v - 1) & 1]
    if not outside:
        audit["vacuous"] = True
    else:
        audit["contains_last_two"] = (
            bool(jmask >> (g.n - 1) & 1) and (g.n < 2 or bool(jmask >> (g.n - 2) & 1))
        )
        sub = _induced(g, outside)
        audit["alpha_drops"] = exact_numbers(sub, guard).alpha < nums.alpha
        audit["outside_double_links"] = all(
            bin(_out_mask(g, w) & jmask).count("1") >= 2 for w in outside
        )
        if not all(v for k, v in audit.items()):
            raise InternalConsistencyError(
                f"graph lacks the sibling property but fails its structural audit: {audit}"
            )
    return SiblingVerdict(False, None, (), audit)


def _out_mask(g: InfoGraph, v: int) -> int:
    # every edge points up, so out-neighbors are the adjacent higher indices
    return g.adj_masks[v] & ~((1 << v) - 1)


def _induced(g: InfoGraph, vertices: Sequence[int]) -> InfoGraph:
    order = {v: idx + 1 for idx, v in enumerate(sorted(vertices))}
    edges = [
        (order[i], order[j]) for i, j in g.edges if i in order and j in order
    ]
    return InfoGraph(len(vertices), edges)


# ---------------------------------------------------------------------------
# Whole-graph analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphAnalysis:
    alpha: int
    k: int
    omega: int
    alpha_star: Fraction
    k_star: Fraction
    max_independent_sets: tuple[frozenset[int], ...]
    maximal_cliques: tuple[frozenset[int], ...]
    sibling: SiblingVerdict


def analyze_graph(g: InfoGraph, guard: int = EXACT_GUARD) -> GraphAnalysis:
    from .lp import alpha_star, k_star  # deferred; lp imports this module

    nums = exact_numbers(g, guard)
    a_star = alpha_star(g)
    kk_star = k_star(g)
    return GraphAnalysis(
        alpha=nums.alpha,
        k=nums.k,
        omega=nums.omega,
        alpha_star=a_star,
        k_star=kk_star,
        max_independent_sets=nums.max_independent_sets,
        maximal_cliques=tuple(maximal_cliques(g)),
        sibling=sibling_property(g, guard),
    )


def to_dot(g: InfoGraph, clusters: Sequence[Sequence[int]] | None = None) -> str:
    """DOT export; optional vertex clusters (one subgraph per block)."""
    lines = ["digraph info {", "  rankdir=LR;"]
    if clusters:
        for b, block in enumerate(clusters):
            lines.append(f"  subgraph cluster_{b} {{")
            for v in block:
                lines.append(f"    {v};")
            lines.append("  }")
    else:
        for v in range(1, g.n + 1):
            lines.append(f"  {v};")
    for i, j in g.sorted_edges():
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
