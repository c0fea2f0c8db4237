"""Valuation oracles: normalized monotone submodular set functions.

All values are exact rationals (fractions.Fraction).  Floats never enter the
pipeline; tie-breaking in the greedy engine and the bound-achieving
constructions are destroyed by floating-point ties.

Ground-set elements are dense integer ids 0..m-1.  Subsets travel through the
public API as iterables of ids and internally as bitmasks, with per-oracle
memoization of evaluated masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import GuardRefusal, InputError

AUDIT_GUARD = 16


def mask_of(subset: Iterable[int], ground_size: int) -> int:
    """Pack element ids into a bitmask, validating the range."""
    mask = 0
    for e in subset:
        if not 0 <= e < ground_size:
            raise InputError(f"element {e} outside ground set of size {ground_size}")
        mask |= 1 << e
    return mask


def set_of(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


class ValuationOracle:
    """Base class: a normalized monotone submodular f: 2^S -> Q>=0.

    Subclasses implement ``_value_mask`` for a validated bitmask.  Instances
    are immutable after construction and safe to share across threads; the
    value cache is append-only.
    """

    kind = "abstract"

    def __init__(self, ground_size: int):
        if ground_size < 0:
            raise InputError("ground size must be nonnegative")
        self.ground_size = ground_size
        self._cache: dict[int, Fraction] = {0: Fraction(0)}

    def _value_mask(self, mask: int) -> Fraction:
        raise NotImplementedError

    def value_mask(self, mask: int) -> Fraction:
        got = self._cache.get(mask)
        if got is None:
            got = self._value_mask(mask)
            self._cache[mask] = got
        return got

    def value(self, subset: Iterable[int]) -> Fraction:
        return self.value_mask(mask_of(subset, self.ground_size))

    def marginal_mask(self, action: int, base: int) -> Fraction:
        return self.value_mask(action | base) - self.value_mask(base)

    def to_params(self) -> dict:
        """JSON-ready parameters; inverse of serialize.oracle_from_obj."""
        raise NotImplementedError


class WeightedSetCoverOracle(ValuationOracle):
    """f(A) = sum of target values over covered targets, each counted once."""

    kind = "wsc"

    def __init__(self, values: Sequence[Fraction]):
        values = tuple(Fraction(v) for v in values)
        for t, v in enumerate(values):
            if v < 0:
                raise InputError(f"target {t} has negative value {v}")
        super().__init__(len(values))
        self.values = values

    def _value_mask(self, mask: int) -> Fraction:
        total = Fraction(0)
        t = 0
        while mask:
            if mask & 1:
                total += self.values[t]
            mask >>= 1
            t += 1
        return total

    def to_params(self) -> dict:
        return {"kind": self.kind, "values": list(self.values)}


class TargetAssignmentOracle(ValuationOracle):
    """Success-probability coverage over agent-target pairs.

    Element (a, t) is the event "agent a engages target t" and has dense id
    a * T + t.  A covered target t pays v_t * (1 - prod over engaged agents of
    (1 - p_a)), so distinct agents covering the same target remain distinct
    ground elements and action sets stay disjoint across agents.
    """

    kind = "vta"

    def __init__(self, values: Sequence[Fraction], probs: Sequence[Fraction]):
        values = tuple(Fraction(v) for v in values)
        probs = tuple(Fraction(p) for p in probs)
        for t, v in enumerate(values):
            if v < 0:
                raise InputError(f"target {t} has negative value {v}")
        for a, p in enumerate(probs):
            if not 0 <= p <= 1:
                raise InputError(f"agent {a} has success probability {p} outside [0, 1]")
        super().__init__(len(values) * len(probs))
        self.values = values
        self.probs = probs

    def element_id(self, agent: int, target: int) -> int:
        return agent * len(self.values) + target

    def _value_mask(self, mask: int) -> Fraction:
        T = len(self.values)
        miss: list[Fraction] = [Fraction(1)] * T
        covered = [False] * T
        e = 0
        while mask:
            if mask & 1:
                a, t = divmod(e, T)
                covered[t] = True
                miss[t] *= 1 - self.probs[a]
            mask >>= 1
            e += 1
        total = Fraction(0)
        for t in range(T):
            if covered[t]:
                total += self.values[t] * (1 - miss[t])
        return total

    def to_params(self) -> dict:
        return {"kind": self.kind, "values": list(self.values), "probs": list(self.probs)}


class CappedSumOracle(ValuationOracle):
    """Two-block ground set {u_1..u_n, v_1..v_n} with per-agent weights w.

    f(A) = min(1, sum of w_i over u_i in A) + sum of w_i over v_i in A.
    The u block shares a unit of capacity; the v block is modular, so the
    marginal of any v_i is w_i against every base.
    """

    kind = "capped_sum"

    def __init__(self, weights: Sequence[Fraction]):
        weights = tuple(Fraction(w) for w in weights)
        for i, w in enumerate(weights):
            if w < 0:
                raise InputError(f"agent {i} has negative weight {w}")
        super().__init__(2 * len(weights))
        self.weights = weights

    @property
    def n_agents(self) -> int:
        return len(self.weights)

    def u_id(self, agent: int) -> int:
        return agent

    def v_id(self, agent: int) -> int:
        return self.n_agents + agent

    def _value_mask(self, mask: int) -> Fraction:
        n = self.n_agents
        capped = Fraction(0)
        modular = Fraction(0)
        for i in range(n):
            if mask >> i & 1:
                capped += self.weights[i]
            if mask >> (n + i) & 1:
                modular += self.weights[i]
        return min(Fraction(1), capped) + modular

    def to_params(self) -> dict:
        return {"kind": self.kind, "weights": list(self.weights)}


class TwoBlockOracle(ValuationOracle):
    """Ground set {u_1..u_n, v_1..v_n}: tabulated u-block plus modular v-block.

    f(A) = table[A restricted to u block] + sum of w_i over v_i in A.  The
    capped sum is the special case table[M] = min(1, sum of w_i over M); the
    general table is produced by the bound-achieving synthesis for graphs
    whose clique LP optimum is fractional.
    """

    kind = "two_block"

    def __init__(self, u_table: Mapping[int, Fraction], weights: Sequence[Fraction]):
        weights = tuple(Fraction(w) for w in weights)
        n = len(weights)
        if len(u_table) != 1 << n:
            raise InputError(
                f"u table has {len(u_table)} entries, expected {1 << n}"
            )
        for i, w in enumerate(weights):
            if w < 0:
                raise InputError(f"agent {i} has negative weight {w}")
        super().__init__(2 * n)
        self.weights = weights
        self.u_table = {m: Fraction(v) for m, v in u_table.items()}
        if self.u_table[0] != 0:
            raise InputError("u table must map the empty set to 0")

    @property
    def n_agents(self) -> int:
        return len(self.weights)

    def u_id(self, agent: int) -> int:
        return agent

    def v_id(self, agent: int) -> int:
        return self.n_agents + agent

    def _value_mask(self, mask: int) -> Fraction:
        n = self.n_agents
        modular = Fraction(0)
        for i in range(n):
            if mask >> (n + i) & 1:
                modular += self.weights[i]
        return self.u_table[mask & ((1 << n) - 1)] + modular

    def to_params(self) -> dict:
        return {
            "kind": self.kind,
            "weights": list(self.weights),
            "u_table": dict(self.u_table),
        }


class TableOracle(ValuationOracle):
    """Explicit table of values, one per subset; used by synthesized instances."""

    kind = "table"

    def __init__(self, ground_size: int, table: Mapping[int, Fraction]):
        super().__init__(ground_size)
        if table.get(0, Fraction(0)) != 0:
            raise InputError("table oracle must map the empty set to 0")
        if len(table) != 1 << ground_size:
            raise InputError(
                f"table has {len(table)} entries, expected {1 << ground_size}"
            )
        self._table = {m: Fraction(v) for m, v in table.items()}

    def _value_mask(self, mask: int) -> Fraction:
        return self._table[mask]

    def to_params(self) -> dict:
        return {
            "kind": self.kind,
            "ground": self.ground_size,
            "table": dict(self._table),
        }


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def evaluate(oracle: ValuationOracle, subset: Iterable[int]) -> Fraction:
    """f(subset), with f(empty) = 0 by construction."""
    return oracle.value(subset)


def marginal(oracle: ValuationOracle, action: Iterable[int], base: Iterable[int]) -> Fraction:
    """f(action | base) = f(action + base) - f(base)."""
    a = mask_of(action, oracle.ground_size)
    b = mask_of(base, oracle.ground_size)
    return oracle.marginal_mask(a, b)


def build_wsc(values: Sequence[Fraction]) -> WeightedSetCoverOracle:
    return WeightedSetCoverOracle(values)


def build_vta(values: Sequence[Fraction], probs: Sequence[Fraction]) -> TargetAssignmentOracle:
    return TargetAssignmentOracle(values, probs)


def build_capped_sum(weights: Sequence[Fraction], graph=None) -> CappedSumOracle:
    """Capped-sum oracle; with a graph, enforce per-clique weight budgets.

    Precondition (checked when ``graph`` is given): every clique of the graph
    has total weight at most 1, so the shared u-capacity never runs out inside
    a clique.  Violations name the offending clique.
    """
    oracle = CappedSumOracle(weights)
    if graph is not None:
        from .graphs import maximal_cliques

        if graph.n != oracle.n_agents:
            raise InputError(
                f"graph has {graph.n} agents, weights have {oracle.n_agents}"
            )
        for clique in maximal_cliques(graph):
            total = sum((oracle.weights[i - 1] for i in clique), Fraction(0))
            if total > 1:
                raise InputError(
                    f"clique {sorted(clique)} has total weight {total} > 1"
                )
    return oracle


def capped_sum_tie_safe(weights: Sequence[Fraction], graph) -> bool:
    """True when the capped sum keeps full in-neighborhood marginals.

    The capped sum satisfies "the marginal of u_i over any subset of its
    in-neighborhood equals w_i" exactly when each positive-weight agent fits
    together with its whole in-neighborhood under the unit cap.  Graphs whose
    clique LP optimum is fractional (an induced 5-cycle is the smallest case)
    can violate this even though every clique respects the cap.
    """
    weights = [Fraction(w) for w in weights]
    for i in range(1, graph.n + 1):
        w = weights[i - 1]
        if w == 0:
            continue
        if w + sum((weights[j - 1] for j in graph.in_neighbors(i)), Fraction(0)) > 1:
            return False
    return True


@dataclass(frozen=True)
class AuditReport:
    normalized: bool
    monotone: bool
    submodular: bool
    witnesses: dict

    @property
    def ok(self) -> bool:
        return self.normalized and self.monotone and self.submodular


def audit_properties(oracle: ValuationOracle, guard: int = AUDIT_GUARD) -> AuditReport:
    """Exhaustively audit normalization, monotonicity, and diminishing returns.

    Refuses (rather than samples) above the guard: a sampled pass would be a
    false certificate.  Monotonicity is checked on all single-element
    extensions, which by transitivity covers every nested pair.  Diminishing
    returns is checked in the equivalent pair form
    f(A+x) + f(A+y) >= f(A+x+y) + f(A), whose failure yields the witness
    triple (A, B=A+y, x).
    """
    m = oracle.ground_size
    if m > guard:
        raise GuardRefusal(
            f"ground set of size {m} exceeds exhaustive audit guard {guard}"
        )
    witnesses: dict = {}
    normalized = oracle.value_mask(0) == 0
    if not normalized:
        witnesses["normalized"] = {"value_of_empty": oracle.value_mask(0)}

    values = [oracle.value_mask(mask) for mask in range(1 << m)]

    monotone = True
    for mask in range(1 << m):
        for x in range(m):
            if mask >> x & 1:
                continue
            if values[mask | (1 << x)] < values[mask]:
                monotone = False
                witnesses["monotone"] = {
                    "A": sorted(set_of(mask)),
                    "B": sorted(set_of(mask | (1 << x))),
                }
                break
        if not monotone:
            break

    submodular = True
    for mask in range(1 << m):
        free = [x for x in range(m) if not mask >> x & 1]
        for x, y in combinations(free, 2):
            lhs = values[mask | (1 << x)] + values[mask | (1 << y)]
            rhs = values[mask | (1 << x) | (1 << y)] + values[mask]
            if lhs < rhs:
                submodular = False
                witnesses["submodular"] = {
                    "A": sorted(set_of(mask)),
                    "B": sorted(set_of(mask | (1 << y))),
                    "x": x,
                }
                break
        if not submodular:
            break

    return AuditReport(normalized, monotone, submodular, witnesses)


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """A valuation oracle plus one action set per agent."""

    oracle: ValuationOracle
    actions: tuple[tuple[frozenset[int], ...], ...]

    def __post_init__(self):
        if not self.actions:
            raise InputError("instance needs at least one agent")
        for i, acts in enumerate(self.actions):
            if not acts:
                raise InputError(f"agent {i + 1} has an empty action set")
            for a in acts:
                mask_of(a, self.oracle.ground_size)

    @property
    def n(self) -> int:
        return len(self.actions)

    def action_masks(self) -> list[list[int]]:
        g = self.oracle.ground_size
        return [[mask_of(a, g) for a in acts] for acts in self.actions]


def make_instance(oracle: ValuationOracle, actions: Sequence[Sequence[Iterable[int]]]) -> Instance:
    return Instance(oracle, tuple(tuple(frozenset(a) for a in acts) for acts in actions))
