"""The distributed greedy algorithm under an information graph.

Agents decide in index order.  Agent i maximizes the objective evaluated on
its own action joined with the decisions of its in-neighborhood; under the
complete graph this is the classic distributed greedy.

Tie handling is the whole story for worst-case analysis: the efficiency ratio
is defined against the worst candidate solution over every chain of argmax
tie breaks, so the "worst" policy enumerates all branches exhaustively (with
memoization on what the future can still observe) rather than sampling.
All comparisons are exact rationals; there are no epsilon ties.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateInstanceError, GuardRefusal, InputError
from .graphs import InfoGraph, is_complete
from .oracles import Instance

BRANCH_GUARD = 10 ** 6
PROFILE_GUARD = 10 ** 7

POLICIES = ("worst", "first", "random")


@dataclass(frozen=True)
class AgentTrace:
    agent: int
    observed: frozenset[int]  # union of observed decisions (element ids)
    marginals: tuple[Fraction, ...]  # one per action, in action-set order
    tied: tuple[int, ...]  # indices of the argmax actions
    chosen: int  # index of the chosen action


@dataclass(frozen=True)
class GreedyOutcome:
    profile: tuple[frozenset[int], ...]
    value: Fraction
    branches_explored: int
    trace: tuple[AgentTrace, ...]


@dataclass(frozen=True)
class OptResult:
    value: Fraction
    profile: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class EfficiencyReport:
    gamma: Fraction
    opt_value: Fraction
    sol_value: Fraction
    opt_profile: tuple[frozenset[int], ...]
    sol_profile: tuple[frozenset[int], ...]


def _argmax_actions(oracle, actions: Sequence[int], observed: int):
    values = [oracle.value_mask(a | observed) for a in actions]
    best = max(values)
    tied = [idx for idx, v in enumerate(values) if v == best]
    base = oracle.value_mask(observed)
    return tied, [v - base for v in values]


def run_generalized_greedy(
    inst: Instance,
    g: InfoGraph,
    policy: str = "worst",
    seed: int = 0,
    max_branches: int = BRANCH_GUARD,
) -> GreedyOutcome:
    """Execute the greedy pass under graph g with the given tie policy.

    worst   minimize the final value over every argmax branch (exhaustive)
    first   break ties toward the earliest action in the listed order
    random  break ties uniformly with a seeded generator
    """
    if policy not in POLICIES:
        raise InputError(f"unknown tie policy {policy!r}")
    if g.n != inst.n:
        raise InputError(f"graph has {g.n} agents but instance has {inst.n}")
    oracle = inst.oracle
    masks = inst.action_masks()
    n = inst.n

    if policy == "worst":
        choice_idx, explored = _worst_case_choices(inst, g, masks, max_branches)
    else:
        rng = random.Random(seed)
        choice_idx = []
        chosen_masks: list[int] = []
        for i in range(1, n + 1):
            observed = 0
            for j_bit in _bits(g.in_masks[i]):
                observed |= chosen_masks[j_bit]
            tied, _ = _argmax_actions(oracle, masks[i - 1], observed)
            pick = tied[0] if policy == "first" else rng.choice(tied)
            choice_idx.append(pick)
            chosen_masks.append(masks[i - 1][pick])
        explored = 1

    return _replay(inst, g, masks, choice_idx, explored)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask &= mask - 1


def _worst_case_choices(inst, g, masks, max_branches) -> tuple[list[int], int]:
    """DFS over all argmax branches; returns the minimizing choice vector.

    State collapsing: the future depends only on the choices still observable
    by some later agent plus the running union of selections, so branches are
    memoized on that pair.
    """
    oracle = inst.oracle
    n = inst.n
    # choices of agent j that some agent >= i still observes
    visible_after: list[int] = [0] * (n + 2)
    for i in range(n, 0, -1):
        visible_after[i] = visible_after[i + 1] | g.in_masks[i]

    memo: dict = {}
    counter = [0]

    def visit(i: int, chosen: tuple[int, ...], union: int):
        if i > n:
            counter[0] += 1
            if counter[0] > max_branches:
                raise GuardRefusal(
                    f"worst-case exploration exceeded {max_branches} branches"
                )
            return oracle.value_mask(union), ()
        vis = visible_after[i] & ((1 << (i - 1)) - 1)  # decided and still observable
        key = (i, tuple(chosen[j] for j in _bits(vis)), union)
        got = memo.get(key)
        if got is not None:
            return got
        observed = 0
        for j_bit in _bits(g.in_masks[i]):
            observed |= masks[j_bit][chosen[j_bit]]
        tied, _ = _argmax_actions(oracle, masks[i - 1], observed)
        best_val, best_tail = None, None
        for idx in tied:
            val, tail = visit(
                i + 1,
                chosen + (idx,),
                union | masks[i - 1][idx],
            )
            if best_val is None or val < best_val:
                best_val, best_tail = val, (idx,) + tail
        memo[key] = (best_val, best_tail)
        return best_val, best_tail

    value, choice_vec = visit(1, (), 0)
    return list(choice_vec), counter[0]


def _replay(inst, g, masks, choice_idx, explored) -> GreedyOutcome:
    """Rebuild the per-agent trace for a fixed choice vector."""
    oracle = inst.oracle
    trace = []
    union = 0
    chosen_masks = []
    for i in range(1, inst.n + 1):
        observed = 0
        for j_bit in _bits(g.in_masks[i]):
            observed |= chosen_masks[j_bit]
        tied, margs = _argmax_actions(oracle, masks[i - 1], observed)
        pick = choice_idx[i - 1]
        trace.append(
            AgentTrace(
                agent=i,
                observed=frozenset(_bits(observed)),
                marginals=tuple(margs),
                tied=tuple(tied),
                chosen=pick,
            )
        )
        chosen_masks.append(masks[i - 1][pick])
        union |= masks[i - 1][pick]
    profile = tuple(inst.actions[i][choice_idx[i]] for i in range(inst.n))
    return GreedyOutcome(profile, oracle.value_mask(union), explored, tuple(trace))


def brute_force_opt(inst: Instance, max_profiles: int = PROFILE_GUARD) -> OptResult:
    """Exhaustive maximum over the action-set product, first maximizer kept."""
    total = 1
    for acts in inst.actions:
        total *= len(acts)
        if total > max_profiles:
            raise GuardRefusal(
                f"profile space exceeds brute-force guard {max_profiles}"
            )
    oracle = inst.oracle
    masks = inst.action_masks()
    n = inst.n
    best_val = None
    best_idx: tuple[int, ...] = ()

    idx = [0] * n
    while True:
        union = 0
        for i in range(n):
            union |= masks[i][idx[i]]
        val = oracle.value_mask(union)
        if best_val is None or val > best_val:
            best_val, best_idx = val, tuple(idx)
        pos = n - 1
        while pos >= 0:
            idx[pos] += 1
            if idx[pos] < len(masks[pos]):
                break
            idx[pos] = 0
            pos -= 1
        if pos < 0:
            break
    profile = tuple(inst.actions[i][best_idx[i]] for i in range(n))
    return OptResult(best_val, profile)


def efficiency(
    inst: Instance,
    g: InfoGraph,
    max_branches: int = BRANCH_GUARD,
    max_profiles: int = PROFILE_GUARD,
) -> EfficiencyReport:
    """Worst-case greedy value divided by the brute-force optimum."""
    opt = brute_force_opt(inst, max_profiles)
    if opt.value == 0:
        raise DegenerateInstanceError(
            "optimum value is 0, efficiency ratio undefined"
        )
    sol = run_generalized_greedy(inst, g, "worst", max_branches=max_branches)
    return EfficiencyReport(
        gamma=sol.value / opt.value,
        opt_value=opt.value,
        sol_value=sol.value,
        opt_profile=opt.profile,
        sol_profile=sol.profile,
    )


def clique_marginal_identity_check(
    inst: Instance, g: InfoGraph, samples: int = 100, seed: int = 0
) -> bool:
    """On a complete graph, marginals along the agent order telescope to f(x).

    Samples random profiles with a seeded generator and verifies
    sum_i [f(x_1..x_i) - f(x_1..x_{i-1})] = f(x) exactly for each.
    """
    if not is_complete(g):
        raise InputError("identity check requires the complete information graph")
    if g.n != inst.n:
        raise InputError(f"graph has {g.n} agents but instance has {inst.n}")
    oracle = inst.oracle
    masks = inst.action_masks()
    rng = random.Random(seed)
    for _ in range(samples):
        picks = [rng.randrange(len(m)) for m in masks]
        prefix = 0
        total = Fraction(0)
        for i in range(inst.n):
            a = masks[i][picks[i]]
            total += oracle.value_mask(prefix | a) - oracle.value_mask(prefix)
            prefix |= a
        if total != oracle.value_mask(prefix):
            return False
    return True
