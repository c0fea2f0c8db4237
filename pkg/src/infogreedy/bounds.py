"""Worst-case efficiency bounds and the instances that achieve them.

For a graph G with fractional independence number a* the worst-case
efficiency of the constrained greedy lies in [1/(a*+1), 1/a*].  This module
computes that bracket, constructs certified instances realizing 1/a* (always)
and 1/(1+alpha) (whenever the sibling property holds), and runs a budgeted
adversarial probe over a small weighted-cover family.

The 1/a* construction pairs each agent i with a shared-capacity element u_i
and a private element v_i of equal weight and lets the worst tie chain send
everyone to the shared side.  The plain capped sum realizes this only when
every positive-weight agent fits under the cap together with its whole
in-neighborhood; otherwise (fractional LP optimum, smallest case an induced
5-cycle) a valid u-block table is synthesized by exact interval propagation
over all submodularity constraints, with an exact-LP fallback.  Either way
the returned instance is certified by actually running the greedy engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DegenerateInstanceError,
    GuardRefusal,
    InfeasibleLpError,
    InputError,
    InternalConsistencyError,
)
from .graphs import InfoGraph, _mask, _out_mask, exact_numbers, sibling_property
from .greedy import EfficiencyReport, efficiency
from .lp import alpha_star_solution
from .oracles import (
    Instance,
    TwoBlockOracle,
    build_capped_sum,
    build_wsc,
    capped_sum_tie_safe,
    make_instance,
)

ZERO = Fraction(0)
ONE = Fraction(1)

SYNTHESIS_GUARD = 10


@dataclass(frozen=True)
class BoundsReport:
    lower: Fraction  # 1 / (a* + 1)
    upper: Fraction  # 1 / a*
    alpha_star: Fraction
    sibling_upper: Fraction | None  # 1 / (1 + alpha) when the property holds
    tight: dict  # {"lower": bool, "upper": bool} certified-tight flags


@dataclass(frozen=True)
class WorstCaseInstance:
    instance: Instance
    graph: InfoGraph
    predicted_gamma: Fraction
    construction: str  # "canonical_upper" | "sibling_lower" | "handcrafted"
    realized: EfficiencyReport


def _is_clique_minus_last_edge(g: InfoGraph) -> bool:
    if g.n < 2:
        return False
    missing = [(i, j) for i in range(1, g.n + 1) for j in range(i + 1, g.n + 1)
               if (i, j) not in g.edges]
    return missing == [(g.n - 1, g.n)]


def efficiency_bounds(g: InfoGraph) -> BoundsReport:
    """The [1/(a*+1), 1/a*] bracket plus certified-tightness flags.

    The lower end is certified tight when the sibling property holds and
    alpha = k (the sibling instance then realizes it).  The upper end is
    certified tight for a single agent and for the complete graph missing
    exactly the (n-1, n) edge, where no instance can fall below 1/2.
    """
    if g.n < 1:
        raise InputError("bounds need at least one agent")
    a_star = alpha_star_solution(g)[0]
    nums = exact_numbers(g)
    verdict = sibling_property(g)
    sibling_upper = Fraction(1, 1 + nums.alpha) if verdict else None
    tight = {
        "lower": bool(verdict) and nums.alpha == nums.k,
        "upper": g.n == 1 or _is_clique_minus_last_edge(g),
    }
    return BoundsReport(
        lower=1 / (a_star + 1),
        upper=1 / a_star,
        alpha_star=a_star,
        sibling_upper=sibling_upper,
        tight=tight,
    )


# ---------------------------------------------------------------------------
# Upper-bound instance: gamma = 1/a* exactly
# ---------------------------------------------------------------------------


def upper_bound_instance(g: InfoGraph) -> WorstCaseInstance:
    """Certified instance with worst-case efficiency exactly 1/a*(G).

    Preferred shape: each agent i owns a shared-capacity element u_i and a
    private element v_i of equal weight, weights an optimal vertex of the
    clique LP.  Every agent then ties between its two options in every
    branch, the worst tie chain selects every u_i for a value of 1, and the
    optimum selects every v_i for a*(G).

    The tie requirement is not always satisfiable: some orientations force a
    shared element to overlap two mutually disjoint observed elements at
    once (the in-neighborhood of one observer crosses an edge watched by
    another).  Those graphs always admit something stronger, a sibling
    instance at 1/(1+alpha) <= 1/a*, which is lifted to exactly 1/a* by
    granting agent 1 a constant always-covered bonus target.
    """
    if g.n < 1:
        raise InputError("construction needs at least one agent")
    a_star, z = alpha_star_solution(g)
    if sum(z, ZERO) != a_star or a_star < 1:
        raise InternalConsistencyError("clique LP returned a non-optimal point")
    if not capped_sum_tie_safe(z, g):
        nums = exact_numbers(g)
        if nums.alpha == a_star:
            # the LP landed on a fractional vertex of a degenerate optimal
            # face; the indicator of a maximum independent set is optimal
            # too and always tie-safe
            jmask = _mask(nums.max_independent_sets[0])
            z = tuple(
                ONE if jmask >> i & 1 else ZERO for i in range(g.n)
            )

    if capped_sum_tie_safe(z, g):
        oracle = build_capped_sum(z, g)
    else:
        try:
            table = synthesize_shared_table(g, z)
            oracle = TwoBlockOracle(table, z)
        except InfeasibleLpError:
            return _padded_sibling_upper(g, a_star)
    n = g.n
    actions = [[[i - 1], [n + i - 1]] for i in range(1, n + 1)]
    inst = make_instance(oracle, actions)
    predicted = 1 / a_star
    realized = efficiency(inst, g)
    if realized.gamma != predicted:
        raise InternalConsistencyError(
            f"upper-bound instance realized {realized.gamma}, predicted {predicted}"
        )
    return WorstCaseInstance(inst, g, predicted, "canonical_upper", realized)


def _padded_sibling_upper(g: InfoGraph, a_star: Fraction) -> WorstCaseInstance:
    """Lift a sibling instance from 1/(1+alpha) to exactly 1/a*.

    Joining a fresh target of value beta = (1+alpha-a*)/(a*-1) to every
    action of agent 1 shifts the worst value and the optimum by the same
    beta without disturbing any decision, moving the ratio to 1/a*.
    """
    nums = exact_numbers(g)
    if not sibling_property(g) or a_star > nums.alpha + 1 or a_star <= 1:
        raise InternalConsistencyError(
            "no certified construction reaches 1/a* on this graph"
        )
    base = sibling_instance(g)
    beta = (1 + nums.alpha - a_star) / (a_star - 1)
    old = base.instance.oracle
    values = list(old.values) + [beta]
    pad = len(old.values)
    oracle = build_wsc(values)
    actions = [
        [sorted(a | {pad}) for a in base.instance.actions[0]]
    ] + [[sorted(a) for a in acts] for acts in base.instance.actions[1:]]
    inst = make_instance(oracle, actions)
    predicted = 1 / a_star
    realized = efficiency(inst, g)
    if realized.gamma != predicted:
        raise InternalConsistencyError(
            f"padded upper-bound instance realized {realized.gamma}, predicted {predicted}"
        )
    return WorstCaseInstance(inst, g, predicted, "canonical_upper", realized)


def synthesize_shared_table(g: InfoGraph, weights) -> dict[int, Fraction]:
    """A u-block table making every in-neighborhood marginal stay full.

    Finds g_u: 2^[n] -> [0, 1] with g_u(empty) = 0, g_u({i}) = w_i,
    g_u(U) = 1, monotone, submodular, and g_u(A + i) = g_u(A) + w_i for every
    A inside the in-neighborhood of i.  The capped sum violates the last
    family exactly when some positive-weight in-neighborhood overflows the
    cap, so the table is completed by exact interval propagation over the
    constraint consequences; if the propagated upper envelope fails
    verification, an exact feasibility LP finishes the job.

    Zero-weight agents are invisible to the table (their elements add
    nothing anywhere), which also drops them from every tie base.  Raises
    InfeasibleLpError when the requirement system provably has no solution.
    """
    w_full = [Fraction(x) for x in weights]
    support = [i for i in range(1, g.n + 1) if w_full[i - 1] != 0]
    if len(support) < g.n:
        from .graphs import _induced

        sub = _induced(g, support)
        sub_table = _synthesize_dense(sub, [w_full[i - 1] for i in support])
        table: dict[int, Fraction] = {}
        pos = {i: idx for idx, i in enumerate(support)}
        for mask in range(1 << g.n):
            proj = 0
            for i in support:
                if mask >> (i - 1) & 1:
                    proj |= 1 << pos[i]
            table[mask] = sub_table[proj]
        return table
    return _synthesize_dense(g, w_full)


def _synthesize_dense(g: InfoGraph, w: list[Fraction]) -> dict[int, Fraction]:
    n = g.n
    if n > SYNTHESIS_GUARD:
        raise GuardRefusal(f"table synthesis guarded at n <= {SYNTHESIS_GUARD}")
    full = (1 << n) - 1

    def wsum(mask: int) -> Fraction:
        total = ZERO
        m = mask
        while m:
            total += w[(m & -m).bit_length() - 1]
            m &= m - 1
        return total

    # exact ties g(A | i) - g(A) = w_i for A inside the in-neighborhood of i
    ties: list[tuple[int, int, Fraction]] = []
    for i in range(1, n + 1):
        nbr = g.in_masks[i]
        sub = nbr
        while True:
            ties.append((sub, sub | (1 << (i - 1)), w[i - 1]))
            if sub == 0:
                break
            sub = (sub - 1) & nbr

    lo = [ZERO] * (1 << n)
    hi = [min(ONE, wsum(m)) for m in range(1 << n)]
    lo[full] = hi[full] = ONE
    for i in range(n):
        lo[1 << i] = hi[1 << i] = w[i]
    lo[0] = hi[0] = ZERO

    singles = [1 << i for i in range(n)]
    changed = True
    passes = 0
    while changed and passes < 200:
        changed = False
        passes += 1
        for a, b, d in ties:
            if lo[a] + d > lo[b]:
                lo[b] = lo[a] + d
                changed = True
            if hi[a] + d < hi[b]:
                hi[b] = hi[a] + d
                changed = True
            if lo[b] - d > lo[a]:
                lo[a] = lo[b] - d
                changed = True
            if hi[b] - d < hi[a]:
                hi[a] = hi[b] - d
                changed = True
        for mask in range(1 << n):
            for s in singles:
                if mask & s:
                    continue
                sup = mask | s
                if lo[mask] > lo[sup]:
                    lo[sup] = lo[mask]
                    changed = True
                if hi[sup] < hi[mask]:
                    hi[mask] = hi[sup]
                    changed = True
        for mask in range(1 << n):
            free = [s for s in singles if not mask & s]
            for sx, sy in combinations(free, 2):
                ax, ay, axy = mask | sx, mask | sy, mask | sx | sy
                cap = hi[ax] + hi[ay] - lo[mask]
                if cap < hi[axy]:
                    hi[axy] = cap
                    changed = True
                floor = lo[axy] + lo[mask] - hi[ay]
                if floor > lo[ax]:
                    lo[ax] = floor
                    changed = True
                floor = lo[axy] + lo[mask] - hi[ax]
                if floor > lo[ay]:
                    lo[ay] = floor
                    changed = True
    for mask in range(1 << n):
        if lo[mask] > hi[mask]:
            raise InfeasibleLpError(
                "no shared-capacity table satisfies the tie requirements"
            )

    table = {mask: hi[mask] for mask in range(1 << n)}
    if _table_valid(n, w, ties, table):
        return table
    table = _synthesize_by_lp(n, w, ties, lo, hi)
    if not _table_valid(n, w, ties, table):
        raise InternalConsistencyError("LP completion produced an invalid table")
    return table


def _table_valid(n, w, ties, table) -> bool:
    full = (1 << n) - 1
    if table[0] != 0 or table[full] != 1:
        return False
    for i in range(n):
        if table[1 << i] != w[i]:
            return False
    for a, b, d in ties:
        if table[b] - table[a] != d:
            return False
    singles = [1 << i for i in range(n)]
    for mask in range(1 << n):
        free = [s for s in singles if not mask & s]
        for s in free:
            if table[mask | s] < table[mask]:
                return False
        for sx, sy in combinations(free, 2):
            if table[mask | sx] + table[mask | sy] < table[mask | sx | sy] + table[mask]:
                return False
    return True


def _synthesize_by_lp(n, w, ties, lo, hi) -> dict[int, Fraction]:
    """Exact feasibility LP over the still-free subset values."""
    from .lp import LinearProgram, solve_lp

    free_masks = [m for m in range(1 << n) if lo[m] != hi[m]]
    col = {m: j for j, m in enumerate(free_masks)}
    nvar = len(free_masks)
    rows, senses, rhs = [], [], []

    def add(coeffs: dict[int, Fraction], sense: str, b: Fraction):
        row = [ZERO] * nvar
        const = ZERO
        for mask, c in coeffs.items():
            if mask in col:
                row[col[mask]] += c
            else:
                const += c * lo[mask]  # pinned: lo == hi
        rows.append(tuple(row))
        senses.append(sense)
        rhs.append(b - const)

    singles = [1 << i for i in range(n)]
    for mask in range(1 << n):
        free = [s for s in singles if not mask & s]
        for s in free:
            add({mask | s: ONE, mask: -ONE}, ">=", ZERO)
        for sx, sy in combinations(free, 2):
            add(
                {mask | sx: ONE, mask | sy: ONE, mask | sx | sy: -ONE, mask: -ONE},
                ">=",
                ZERO,
            )
    for a, b, d in ties:
        add({b: ONE, a: -ONE}, "<=", d)
        add({b: ONE, a: -ONE}, ">=", d)
    for m in free_masks:
        add({m: ONE}, "<=", hi[m])
        add({m: ONE}, ">=", lo[m])

    lp = LinearProgram.build([ZERO] * nvar, rows, senses, rhs, "max")
    sol = solve_lp(lp)
    table = {m: (lo[m] if lo[m] == hi[m] else sol.point[col[m]]) for m in range(1 << n)}
    return table


# ---------------------------------------------------------------------------
# Sibling instance: gamma = 1/(1 + alpha) exactly
# ---------------------------------------------------------------------------


def sibling_instance(g: InfoGraph) -> WorstCaseInstance:
    """Weighted-cover instance realizing 1/(1 + alpha) on a sibling graph.

    One unit-value target per member of a maximum independent set J plus one
    for an outside observer w; members of J choose between w's target and
    their own, w and everyone else are pinned.  The worst tie chain piles all
    of J onto w's target.  That chain survives only if no member of J after w
    observes w (otherwise w's pinned pick reveals the pile-up and the
    observer defects), so the witness search prefers such a (J, w); when
    every witness is observed by later J-members, w instead receives a
    worthless decoy action, which keeps its observers indifferent in the
    piling branch without changing either side of the ratio.
    """
    verdict = sibling_property(g)
    if not verdict:
        raise InputError("graph lacks the sibling property")
    nums = exact_numbers(g)
    alpha = nums.alpha

    chosen = None
    for jset, _, w in verdict.witnesses:
        if _out_mask(g, w) & _mask(jset) == 0:
            chosen = (jset, w, False)
            break
    if chosen is None:
        jset, _, w = verdict.witnesses[0]
        chosen = (jset, w, True)
    jset, w, decoy = chosen

    n = g.n
    values = [ONE if (i in jset or i == w) else ZERO for i in range(1, n + 1)]
    if decoy:
        values.append(ZERO)
    oracle = build_wsc(values)
    actions = []
    for i in range(1, n + 1):
        if i in jset:
            actions.append([[w - 1], [i - 1]])
        elif i == w:
            actions.append([[w - 1], [n]] if decoy else [[w - 1]])
        else:
            actions.append([[i - 1]])
    inst = make_instance(oracle, actions)
    predicted = Fraction(1, 1 + alpha)
    realized = efficiency(inst, g)
    if realized.gamma != predicted:
        raise InternalConsistencyError(
            f"sibling instance realized {realized.gamma}, predicted {predicted}"
        )
    return WorstCaseInstance(inst, g, predicted, "sibling_lower", realized)


# ---------------------------------------------------------------------------
# Adversarial probe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    min_gamma: Fraction
    witness: Instance
    evaluated: int


def adversarial_search(g: InfoGraph, budget: int = 2000, seed: int = 0) -> SearchResult:
    """Budgeted empirical probe of the worst efficiency over small instances.

    Samples weighted-cover instances with at most n+2 targets, values in
    0..3, and at most 3 actions per agent (the family containing every known
    tight example), always including the two constructed certificates.  The
    returned minimum can never fall below 1/(a*+1); seeing it would be an
    internal-consistency failure, not a discovery.
    """
    if g.n < 1:
        raise InputError("search needs at least one agent")
    rng = random.Random(seed)
    floor = efficiency_bounds(g).lower

    best: tuple[Fraction, Instance] | None = None
    evaluated = 0

    def consider(inst: Instance, gamma: Fraction):
        nonlocal best, evaluated
        evaluated += 1
        if gamma < floor:
            raise InternalConsistencyError(
                f"observed efficiency {gamma} below the proven floor {floor}"
            )
        if best is None or gamma < best[0]:
            best = (gamma, inst)

    cert = upper_bound_instance(g)
    consider(cert.instance, cert.realized.gamma)
    if sibling_property(g):
        sib = sibling_instance(g)
        consider(sib.instance, sib.realized.gamma)

    n = g.n
    for _ in range(budget):
        n_targets = rng.randint(1, n + 2)
        values = [rng.randint(0, 3) for _ in range(n_targets)]
        if not any(values):
            values[rng.randrange(n_targets)] = 1
        actions = []
        for _ in range(n):
            k = rng.randint(1, min(3, n_targets))
            acts = set()
            while len(acts) < k:
                if rng.random() < 0.8:
                    acts.add(frozenset([rng.randrange(n_targets)]))
                else:
                    acts.add(
                        frozenset(rng.sample(range(n_targets), min(2, n_targets)))
                    )
            actions.append(sorted(acts, key=sorted))
        inst = make_instance(build_wsc(values), actions)
        try:
            report = efficiency(inst, g)
        except DegenerateInstanceError:
            continue  # actions only reach worthless targets; ratio undefined
        consider(inst, report.gamma)

    return SearchResult(best[0], best[1], evaluated)
