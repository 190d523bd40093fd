"""Fractional hypergraph matching and its deterministic rounding.

The pipeline: a greedy doubling pass builds a fractional matching that is
a (2*rank)-approximation of the maximum matching; a defective-coloring
based pass rounds it coarsely (losing 2*rank); a square-root recursion
composes such passes to round by a large factor while losing only 4*rank;
a driver extracts integral matchings and iterates to maximality.

Every intermediate assignment is a valid fractional matching and the
checks below are exact rational arithmetic, so a violated bound raises
instead of drifting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .coloring import VertexColoring, defective_coloring, edge_coloring_init
from .core import (
    HALF,
    ONE,
    ZERO,
    FractionalAssignment,
    Hypergraph,
    Matching,
    build_fractional_assignment,
    build_graph,
    induced_subhypergraph,
    is_power_of_two,
    next_power_of_two,
    unblocked_edges,
    validate_fractional_matching,
    validate_matching,
    vertex_loads,
)
from .ledger import RoundLedger


@dataclass(frozen=True)
class RoundingParams:
    """Rounding factor and input denominator, both powers of two.

    The output of a rounding step is (factor/denom)-fractional.  The
    recursive cascade additionally needs factor * log2(factor)^2 <= denom.
    """

    factor: int
    denom: int
    iteration_cap: int | None = None

    def validate(self, recursive: bool = False) -> None:
        if not is_power_of_two(self.factor):
            raise ValueError(f"factor must be a power of two, got {self.factor}")
        if not is_power_of_two(self.denom):
            raise ValueError(f"denom must be a power of two, got {self.denom}")
        if self.factor > self.denom:
            raise ValueError(f"factor {self.factor} exceeds denom {self.denom}")
        if recursive:
            j = self.factor.bit_length() - 1
            if self.factor * j * j > self.denom:
                raise ValueError(
                    f"recursive rounding needs factor*log2(factor)^2 <= denom, "
                    f"got {self.factor}*{j}^2 > {self.denom}"
                )


def _check_floor(x: FractionalAssignment, denom: int) -> None:
    floor = Fraction(1, denom)
    for eid, val in x.values.items():
        if val < floor:
            raise ValueError(f"edge {eid} has value {val} below 1/{denom}")


def greedy_doubling_step(
    h: Hypergraph, x: FractionalAssignment
) -> FractionalAssignment:
    """One freeze-and-double round, a pure radius-1 update.

    An edge keeps its value when some endpoint already carries load at
    least 1/2 and doubles otherwise.  Loads only ever grow under this
    update, so iterating it is exactly the greedy driver's sticky
    freezing.
    """
    loads = vertex_loads(h, x)
    new_values: dict[int, Fraction] = {}
    for eid, val in x.values.items():
        if any(loads[v] >= HALF for v in h.edges[eid]):
            new_values[eid] = val
        else:
            new_values[eid] = val * 2
    return build_fractional_assignment(new_values, x.floor)


def greedy_fractional_matching(
    h: Hypergraph,
    denom: int | None = None,
    ledger: RoundLedger | None = None,
) -> FractionalAssignment:
    """Uniform start at 1/denom, then freeze-and-double for log2(denom) rounds.

    An edge freezes once an endpoint is half-tight (load >= 1/2); all other
    values double.  Afterwards every edge has a half-tight endpoint, which
    pins the total at a (2*rank)-approximation of the maximum matching.
    ``denom`` defaults to the smallest power of two >= max_degree and may
    only be overridden upwards.
    """
    if h.max_degree < 1:
        raise ValueError("hypergraph has no edges")
    base = next_power_of_two(h.max_degree)
    if denom is None:
        denom = base
    if not is_power_of_two(denom) or denom < base:
        raise ValueError(f"denom must be a power of two >= {base}, got {denom}")
    rounds = denom.bit_length() - 1
    x = build_fractional_assignment(
        {eid: Fraction(1, denom) for eid in range(h.m)}, Fraction(1, denom)
    )
    for _ in range(rounds):
        x = greedy_doubling_step(h, x)
    verdict = validate_fractional_matching(h, x)
    if not verdict:
        raise RuntimeError(f"greedy produced an invalid matching: {verdict.reason}")
    for eid in range(h.m):
        if not any(v in verdict.half_tight for v in h.edges[eid]):
            raise RuntimeError(f"edge {eid} ended without a half-tight endpoint")
    if ledger is not None:
        ledger.charge("greedy", rounds, "log2(denom)")
    return x


def _support_line_graph(h: Hypergraph, support: tuple[int, ...]):
    """Line graph restricted to the support edges, ids relabeled 0..s-1."""
    pos = {eid: i for i, eid in enumerate(support)}
    pairs: set[tuple[int, int]] = set()
    for inc in h.incidence:
        here = [pos[eid] for eid in inc if eid in pos]
        for i in range(len(here)):
            for j in range(i + 1, len(here)):
                a, b = here[i], here[j]
                pairs.add((a, b) if a < b else (b, a))
    return build_graph(len(support), sorted(pairs))


def _assert_valid(h: Hypergraph, values: dict[int, Fraction], where: str) -> None:
    loads = [ZERO] * h.n
    for eid, val in values.items():
        if val < ZERO or val > ONE:
            raise RuntimeError(f"{where}: edge {eid} value {val} outside [0,1]")
        for v in h.edges[eid]:
            loads[v] += val
    for v, load in enumerate(loads):
        if load > ONE:
            raise RuntimeError(f"{where}: vertex {v} overloaded to {load}")


def basic_round(
    h: Hypergraph,
    x: FractionalAssignment,
    params: RoundingParams,
    edge_coloring: VertexColoring | None = None,
    ledger: RoundLedger | None = None,
) -> FractionalAssignment:
    """Round a (1/denom)-fractional matching up to floor factor/denom.

    Defective-colors the support line graph with defect denom/(2*factor)-1,
    sweeps the color classes raising unfrozen edges to factor/denom (then
    freezing around newly half-tight vertices), and finishes with doubling
    rounds.  Keeps at least a 1/(2*rank) share of the input total and only
    shrinks the support.
    """
    params.validate()
    factor, denom = params.factor, params.denom
    _check_floor(x, denom)
    pre = validate_fractional_matching(h, x)
    if not pre:
        raise ValueError(f"input is not a fractional matching: {pre.reason}")
    support = x.support()
    target = Fraction(factor, denom)
    if not support:
        return FractionalAssignment(values={}, floor=target)
    if edge_coloring is None:
        edge_coloring = edge_coloring_init(h, ledger)
    sub = _support_line_graph(h, support)
    restricted = VertexColoring(
        colors=tuple(edge_coloring.colors[eid] for eid in support),
        palette_size=edge_coloring.palette_size,
    )
    defect = max(0, denom // (2 * factor) - 1)
    dcol = defective_coloring(sub, restricted, defect, ledger=ledger)

    y: dict[int, Fraction] = {}
    loads = [ZERO] * h.n

    def half_tight(eid: int) -> bool:
        return any(loads[v] >= HALF for v in h.edges[eid])

    by_color: dict[int, list[int]] = {}
    for i, eid in enumerate(support):
        by_color.setdefault(dcol.colors[i], []).append(eid)
    for color in sorted(by_color):
        raised = [eid for eid in by_color[color] if not half_tight(eid)]
        for eid in raised:
            y[eid] = target
            for v in h.edges[eid]:
                loads[v] += target
        _assert_valid(h, y, "basic_round color sweep")
    doubling = 0
    cap = (denom // factor).bit_length() - 1
    while True:
        movable = [eid for eid in support if eid in y and not half_tight(eid)]
        for eid in support:
            if eid not in y and not half_tight(eid):
                raise RuntimeError(f"edge {eid} skipped its color class")
        if not movable:
            break
        for eid in movable:
            for v in h.edges[eid]:
                loads[v] += y[eid]
            y[eid] *= 2
        doubling += 1
        if doubling > cap:
            raise RuntimeError(f"doubling exceeded log2(denom/factor) = {cap}")
        _assert_valid(h, y, "basic_round doubling")
    for eid in support:
        if not half_tight(eid):
            raise RuntimeError(f"support edge {eid} has no half-tight endpoint")
    out = build_fractional_assignment(y, target)
    r = max(1, h.rank)
    if out.total() * 2 * r < x.total():
        raise RuntimeError("basic rounding lost more than a 1/(2*rank) share")
    if ledger is not None:
        ledger.charge(
            "basic_round",
            dcol.palette_size + doubling,
            "palette(L^2 r^2) + log2(denom/factor)",
        )
    return out


def _split_factor(factor: int) -> tuple[int, int]:
    """Power-of-two pair (s1, s2) with s1*s2 = 2*factor and s1 >= s2.

    These are the two nested rounding factors standing in for sqrt(2L);
    the asymmetric split keeps the product exact so the recursion
    preconditions survive.
    """
    j = factor.bit_length()  # log2(2*factor)
    s1 = 1 << ((j + 1) // 2)
    s2 = 1 << (j // 2)
    return s1, s2


def recursive_round(
    h: Hypergraph,
    x: FractionalAssignment,
    params: RoundingParams,
    edge_coloring: VertexColoring | None = None,
    ledger: RoundLedger | None = None,
) -> FractionalAssignment:
    """Round by a large factor, losing at most 3/4 of the input total.

    Factors <= 4 delegate to basic_round.  Otherwise each iteration drops
    the edges already blocked by a half-tight vertex, rounds the rest by
    two nested factors multiplying to 2*factor, and adds half of the
    result; it stops as soon as the running total reaches a 1/(4*rank)
    share of the input.
    """
    params.validate(recursive=True)
    factor, denom = params.factor, params.denom
    _check_floor(x, denom)
    pre = validate_fractional_matching(h, x)
    if not pre:
        raise ValueError(f"input is not a fractional matching: {pre.reason}")
    if factor <= 4:
        return basic_round(h, x, params, edge_coloring, ledger)
    if edge_coloring is None:
        edge_coloring = edge_coloring_init(h, ledger)
    r = max(1, h.rank)
    cap = params.iteration_cap if params.iteration_cap is not None else 16 * r
    total_x = x.total()
    target = Fraction(total_x, 4 * r)
    floor_out = Fraction(factor, denom)
    s1, s2 = _split_factor(factor)
    y: dict[int, Fraction] = {}
    running = ZERO
    iterations = 0
    while running < target and iterations < cap:
        loads = [ZERO] * h.n
        for eid, val in y.items():
            for v in h.edges[eid]:
                loads[v] += val
        z_vals = {
            eid: val
            for eid, val in x.values.items()
            if all(loads[v] < HALF for v in h.edges[eid])
        }
        if not z_vals:
            break
        z = build_fractional_assignment(z_vals, x.floor)
        z1 = recursive_round(
            h, z, RoundingParams(s1, denom), edge_coloring, ledger
        )
        z2 = recursive_round(
            h, z1, RoundingParams(s2, denom // s1), edge_coloring, ledger
        )
        gain = z2.total() / 2
        if running < target and gain * 64 * r * r < total_x:
            raise RuntimeError(
                f"iteration gain {gain} below total/(64 rank^2) while behind"
            )
        for eid, val in z2.values.items():
            y[eid] = y.get(eid, ZERO) + val / 2
        running += gain
        iterations += 1
        _assert_valid(h, y, "recursive_round accumulate")
    if running < target:
        raise RuntimeError(
            f"recursive rounding kept {running} < {target} after {iterations} iterations"
        )
    if ledger is not None:
        ledger.charge("recursive_round", iterations, "16*rank iterations")
    return build_fractional_assignment(y, floor_out)


def approx_max_matching(
    h: Hypergraph,
    ledger: RoundLedger | None = None,
    edge_coloring: VertexColoring | None = None,
) -> Matching:
    """Integral matching of size at least OPT / (32 * rank^3).

    Greedy start, a recursive rounding stage when the degree allows a
    factor >= 2, and one basic rounding stage down to integrality.
    """
    if h.m == 0:
        return Matching(edges=frozenset())
    denom = next_power_of_two(h.max_degree)
    x = greedy_fractional_matching(h, denom, ledger)
    if denom > 1:
        if edge_coloring is None:
            edge_coloring = edge_coloring_init(h, ledger)
        lg = denom.bit_length() - 1
        stage = denom // (lg * lg)
        left = 1 << (stage.bit_length() - 1) if stage >= 1 else 1
        if left >= 2:
            x = recursive_round(
                h, x, RoundingParams(left, denom), edge_coloring, ledger
            )
        remaining = denom // left
        if remaining > 1:
            x = basic_round(
                h,
                x,
                RoundingParams(remaining, remaining),
                edge_coloring,
                ledger,
            )
    chosen = frozenset(eid for eid, val in x.values.items() if val == ONE)
    m = Matching(edges=chosen)
    verdict = validate_matching(h, m)
    if not verdict:
        raise RuntimeError(f"extracted edges are not disjoint: {verdict.reason}")
    return m


def _driver_iteration_cap(h: Hypergraph) -> int:
    r = max(1, h.rank)
    return math.ceil(32 * r**3 * math.log2(max(2, h.n))) + 1


def maximal_matching(
    h: Hypergraph, ledger: RoundLedger | None = None
) -> Matching:
    """Repeat approx_max_matching on the unblocked remainder until empty."""
    picked: set[int] = set()
    alive = tuple(range(h.m))
    iterations = 0
    cap = _driver_iteration_cap(h)
    while alive:
        sub, old_ids = induced_subhypergraph(h, alive)
        found = approx_max_matching(sub, ledger)
        if not found.edges:
            raise RuntimeError("approximate matching came back empty on a nonempty instance")
        picked.update(old_ids[i] for i in found.edges)
        alive = tuple(sorted(unblocked_edges(h, Matching(edges=frozenset(picked)))))
        iterations += 1
        if iterations > cap:
            raise RuntimeError(f"driver exceeded {cap} iterations")
    m = Matching(edges=frozenset(picked))
    verdict = validate_matching(h, m, require_maximal=True)
    if not verdict:
        raise RuntimeError(f"driver output invalid: {verdict.reason}")
    if ledger is not None:
        ledger.charge("maximal_driver", iterations, "32 rank^3 log2(n) iterations")
    return m


def almost_maximal_matching(
    h: Hypergraph, slack: Fraction, ledger: RoundLedger | None = None
) -> tuple[Matching, frozenset[int]]:
    """Run enough driver iterations to block all but a ``slack`` share.

    Returns the matching and the hyperedges still unblocked by it; their
    maximum matching is at most a slack fraction of the original optimum.
    """
    if not 0 < slack < 1:
        raise ValueError(f"slack must be in (0,1), got {slack}")
    r = max(1, h.rank)
    rounds = math.ceil(32 * r**3 * math.log(1 / slack))
    picked: set[int] = set()
    alive = tuple(range(h.m))
    iterations = 0
    while alive and iterations < rounds:
        sub, old_ids = induced_subhypergraph(h, alive)
        found = approx_max_matching(sub, ledger)
        if not found.edges:
            raise RuntimeError("approximate matching came back empty on a nonempty instance")
        picked.update(old_ids[i] for i in found.edges)
        alive = tuple(sorted(unblocked_edges(h, Matching(edges=frozenset(picked)))))
        iterations += 1
    m = Matching(edges=frozenset(picked))
    verdict = validate_matching(h, m)
    if not verdict:
        raise RuntimeError(f"driver output invalid: {verdict.reason}")
    if ledger is not None:
        ledger.charge("maximal_driver", iterations, "32 rank^3 ln(1/slack) iterations")
    return m, frozenset(alive)
