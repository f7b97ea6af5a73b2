"""Exact decision and optimization of derangement representability.

A graph has a width-k representation exactly when it embeds as an induced
subgraph of the graph on S_k whose edges join permutations differing in every
position (a Cayley graph with the derangements as connection set).  The
solver searches for such an embedding by backtracking over vertices with
bitset candidate propagation, under two standard symmetry reductions:

* left translation: composing every image on the left by a fixed permutation
  preserves cellwise disagreement, so the first processed vertex can be
  pinned to the identity.  (If pi is a solution, so is t o pi for any t; pick
  t = inverse of the first vertex's image.)
* conjugation: conjugating every image by t fixes the identity and maps
  cellwise disagreement to cellwise disagreement (positions are permuted by
  t, values by t^-1, both bijectively).  Hence once the first vertex is the
  identity, the second processed vertex may be restricted to one
  representative per conjugacy class, the lexicographically least element;
  only classes consistent with its adjacency to the first vertex apply
  (fixed-point-free classes when adjacent, classes with a fixed point, minus
  the identity itself, when not).

Refutations are exhaustive under exactly these two reductions.  Candidate
sets are bitsets over lexicographic ranks for k <= 7 with a precomputed
adjacency table; k = 8 tests the disagreement relation per candidate on the
fly.  Widths above 8 are out of scope.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations as iter_permutations
from math import factorial

from drn.graphs import Graph, graph6_encode
from drn.matrices import RepresentationMatrix, verify
from drn.perms import (
    Perm,
    all_perms,
    cycle_type,
    disagree_everywhere,
    identity,
    is_derangement,
)

WIDTH_CAP = 8
BITSET_WIDTH_CAP = 7
DEFAULT_NODE_LIMIT = 10**9
DEFAULT_TIME_LIMIT_MS = 15 * 60 * 1000


class BudgetExhaustedError(RuntimeError):
    """A width could not be decided within the node/time budget."""


class WidthCapError(ValueError):
    pass


@dataclass
class SearchStats:
    nodes: int = 0
    millis: float = 0.0
    verdict: str = ""


@dataclass(frozen=True)
class SolveResult:
    drn: int
    witness: RepresentationMatrix
    lower_bound_used: int
    ks_refuted: tuple[int, ...]
    stats: dict[int, SearchStats] = field(default_factory=dict)
    upper_bound_used: int = 0
    witness_source: str = ""


@dataclass(frozen=True)
class SurveyResult:
    order: int | None
    total: int
    not_representable_count: int
    refuted_graph6: tuple[str, ...]

    def __post_init__(self):
        assert self.not_representable_count == len(self.refuted_graph6) <= self.total


@lru_cache(maxsize=None)
def _tables(k: int) -> tuple[list[Perm], list[int], int]:
    """(perms in rank order, Cayley adjacency bitset per rank, derangement mask) for k <= 7."""
    perms = all_perms(k)
    index = {p: r for r, p in enumerate(perms)}
    ders = [p for p in perms if is_derangement(p)]
    der_mask = 0
    for d in ders:
        der_mask |= 1 << index[d]
    rows = []
    for p in perms:
        row = 0
        for d in ders:
            row |= 1 << index[tuple(p[x - 1] for x in d)]  # p o d
        rows.append(row)
    return perms, rows, der_mask


@lru_cache(maxsize=None)
def _class_representatives(k: int) -> list[Perm]:
    """Lexicographically least element of every conjugacy class of S_k."""
    best: dict[tuple[int, ...], Perm] = {}
    for p in all_perms(k):
        t = cycle_type(p)
        if t not in best or p < best[t]:
            best[t] = p
    return sorted(best.values())


def _static_order(g: Graph) -> list[int]:
    return sorted(range(g.n), key=lambda v: (-g.degree(v), v))


class _Budget:
    def __init__(self, node_limit: int, time_limit_ms: float):
        self.node_limit = node_limit
        self.deadline = time.monotonic() + time_limit_ms / 1000.0
        self.nodes = 0

    def spend(self) -> bool:
        """Count one node; False once the budget is gone."""
        self.nodes += 1
        if self.nodes > self.node_limit:
            return False
        if self.nodes % 2048 == 0 and time.monotonic() > self.deadline:
            return False
        return True


def _search_bitset(g: Graph, k: int, v2: int, v2_rep_ranks: list[int],
                   budget: _Budget) -> tuple[str, dict[int, int] | None]:
    """DFS with rank-bitset candidates (k <= 7). Returns (verdict, assignment)."""
    perms, cayley, der_mask = _tables(k)
    full = (1 << factorial(k)) - 1
    order = _static_order(g)
    v1 = order[0]
    id_rank = 0  # identity is lexicographically first

    assigned: dict[int, int] = {v1: id_rank}
    cands: dict[int, int] = {}
    for u in range(g.n):
        if u == v1:
            continue
        if g.has_edge(u, v1):
            cands[u] = der_mask
        else:
            cands[u] = (full ^ cayley[id_rank]) & ~(1 << id_rank)

    static_rank = {v: i for i, v in enumerate(order)}

    def pick_next() -> int:
        best_v, best_key = -1, (-1, 0)
        for u in cands:
            cnt = sum(1 for w in assigned if g.has_edge(u, w))
            key = (cnt, -static_rank[u])
            if key > best_key:
                best_v, best_key = u, key
        return best_v

    def assign(u: int, r: int) -> dict[int, int]:
        """Prune candidate masks of the unassigned vertices; returns the saved masks."""
        saved = {}
        row = cayley[r]
        non = (full ^ row) & ~(1 << r)
        for w in cands:
            saved[w] = cands[w]
            cands[w] &= row if g.has_edge(u, w) else non
        return saved

    def dfs(forced: int | None, rep_mask: int | None) -> str:
        u = pick_next() if forced is None else forced
        my_cands = cands.pop(u)
        bits = my_cands if rep_mask is None else my_cands & rep_mask
        while bits:
            low = bits & -bits
            r = low.bit_length() - 1
            bits ^= low
            if not budget.spend():
                cands[u] = my_cands
                return "unknown"
            assigned[u] = r
            saved = assign(u, r)
            if all(cands[w] for w in cands):
                if not cands:
                    return "yes"
                sub = dfs(None, None)
                if sub != "no":
                    return sub
            for w, m in saved.items():
                cands[w] = m
            del assigned[u]
        cands[u] = my_cands
        return "no"

    if not cands:
        return "yes", dict(assigned)
    rep_mask = 0
    for r in v2_rep_ranks:
        rep_mask |= 1 << r
    verdict = dfs(v2, rep_mask)
    return verdict, (dict(assigned) if verdict == "yes" else None)


def _search_plain(g: Graph, k: int, v2: int, v2_reps: list[Perm],
                  budget: _Budget) -> tuple[str, dict[int, Perm] | None]:
    """Set-based DFS for k = 8 (no precomputed adjacency table)."""
    order = _static_order(g)
    v1 = order[0]
    ident = identity(k)
    assigned: dict[int, Perm] = {v1: ident}
    static_rank = {v: i for i, v in enumerate(order)}

    all_s = all_perms(k)
    cands: dict[int, list[Perm]] = {}
    for u in range(g.n):
        if u == v1:
            continue
        if g.has_edge(u, v1):
            cands[u] = [p for p in all_s if is_derangement(p)]
        else:
            cands[u] = [p for p in all_s if p != ident and not is_derangement(p)]

    def pick_next() -> int:
        best_v, best_key = -1, (-1, 0)
        for u in cands:
            cnt = sum(1 for w in assigned if g.has_edge(u, w))
            key = (cnt, -static_rank[u])
            if key > best_key:
                best_v, best_key = u, key
        return best_v

    def dfs(forced: int | None, first_reps: list[Perm] | None) -> str:
        u = pick_next() if forced is None else forced
        my = cands.pop(u)
        if first_reps is not None:
            keep = set(first_reps)
            pool = [p for p in my if p in keep]
        else:
            pool = my
        for p in pool:
            if not budget.spend():
                cands[u] = my
                return "unknown"
            assigned[u] = p
            saved = {}
            ok = True
            for w, lst in cands.items():
                want = g.has_edge(u, w)
                saved[w] = lst
                cands[w] = [q for q in lst if disagree_everywhere(q, p) == want and q != p]
                if not cands[w]:
                    ok = False
            if ok:
                if not cands:
                    return "yes"
                sub = dfs(None, None)
                if sub != "no":
                    return sub
            for w, lst in saved.items():
                cands[w] = lst
            del assigned[u]
        cands[u] = my
        return "no"

    if not cands:
        return "yes", dict(assigned)
    verdict = dfs(v2, v2_reps)
    return verdict, (dict(assigned) if verdict == "yes" else None)


def _reps_for_second_vertex(g: Graph, k: int) -> tuple[int, list[Perm]]:
    """(second processed vertex, admissible class representatives)."""
    order = _static_order(g)
    v1 = order[0]
    static_rank = {v: i for i, v in enumerate(order)}
    rest = [u for u in range(g.n) if u != v1]
    v2 = max(rest, key=lambda u: (1 if g.has_edge(u, v1) else 0, -static_rank[u]))
    adjacent = g.has_edge(v2, v1)
    reps = []
    for p in _class_representatives(k):
        if p == identity(k):
            continue
        if is_derangement(p) == adjacent:
            reps.append(p)
    return v2, reps


def _assignment_to_matrix(g: Graph, k: int, assigned_perms: dict[int, Perm]) -> RepresentationMatrix:
    return RepresentationMatrix(tuple(assigned_perms[v] for v in range(g.n)))


def _run_search(g: Graph, k: int, v2: int, rep_subset: list[Perm],
                budget_args: tuple[int, float]):
    """Worker entry: search with the second processed vertex restricted to rep_subset."""
    budget = _Budget(*budget_args)
    if k <= BITSET_WIDTH_CAP:
        perms, _, _ = _tables(k)
        index = {p: r for r, p in enumerate(perms)}
        verdict, assignment = _search_bitset(g, k, v2, [index[p] for p in rep_subset], budget)
        if assignment is not None:
            assignment_perms = {v: perms[r] for v, r in assignment.items()}
        else:
            assignment_perms = None
    else:
        verdict, assignment_perms = _search_plain(g, k, v2, rep_subset, budget)
    return verdict, assignment_perms, budget.nodes


def is_k_representable(
    g: Graph,
    k: int,
    node_limit: int = DEFAULT_NODE_LIMIT,
    time_limit_ms: float = DEFAULT_TIME_LIMIT_MS,
    workers: int = 1,
) -> tuple[str, RepresentationMatrix | None, SearchStats]:
    """Decide width-k representability: ("yes", witness), ("no", None) or
    ("unknown", None) when the budget ran out.

    A "no" is an exhaustive refutation under the two symmetry reductions in
    the module docstring.  Workers split the second vertex's class
    representatives; refutation requires every worker to exhaust its share.
    """
    if k < 1:
        raise ValueError("width must be >= 1")
    if k > WIDTH_CAP:
        raise WidthCapError(f"width cap exceeded: k={k} > {WIDTH_CAP}")
    start = time.monotonic()
    stats = SearchStats()

    def done(verdict: str, witness: RepresentationMatrix | None, nodes: int):
        stats.nodes = nodes
        stats.millis = (time.monotonic() - start) * 1000.0
        stats.verdict = verdict
        return verdict, witness, stats

    if g.n > factorial(k):
        return done("no", None, 0)
    if g.n == 1:
        return done("yes", RepresentationMatrix((identity(k),)), 0)

    v2, reps = _reps_for_second_vertex(g, k)
    if not reps:
        return done("no", None, 0)

    budget_args = (node_limit, time_limit_ms)
    shares = [reps[i::workers] for i in range(workers)] if workers > 1 else [reps]
    shares = [s for s in shares if s]

    results = []
    if len(shares) == 1:
        results.append(_run_search(g, k, v2, shares[0], budget_args))
    else:
        with ProcessPoolExecutor(max_workers=len(shares)) as pool:
            futs = [pool.submit(_run_search, g, k, v2, s, budget_args) for s in shares]
            results = [f.result() for f in futs]

    total_nodes = sum(r[2] for r in results)
    witnesses = []
    for verdict, assignment, _ in results:
        if verdict == "yes":
            m = _assignment_to_matrix(g, k, assignment)
            rep = verify(g, m)
            if not rep.valid:  # soundness guard; must never happen
                raise RuntimeError(f"internal error: search produced an invalid witness: {rep.violations}")
            witnesses.append(m)
    if witnesses:
        return done("yes", min(witnesses, key=lambda m: m.rows), total_nodes)
    if any(r[0] == "unknown" for r in results):
        return done("unknown", None, total_nodes)
    return done("no", None, total_nodes)


def solve_drn(
    g: Graph,
    node_limit: int = DEFAULT_NODE_LIMIT,
    time_limit_ms: float = DEFAULT_TIME_LIMIT_MS,
    workers: int = 1,
    max_k: int | None = None,
) -> SolveResult:
    """Exact representation number: iterate widths from the lower bound up,
    stopping at the certified upper bound where a construction witness exists.
    Raises BudgetExhaustedError instead of guessing when a width cannot be
    decided within budget.
    """
    from drn.constructions import best_certificate, bounds

    if g.n > 32:
        raise ValueError("order cap for the solver is 32")
    rep = bounds(g)
    refuted: list[int] = []
    stats: dict[int, SearchStats] = {}
    for k in range(rep.lower, rep.upper):
        if max_k is not None and k > max_k:
            raise BudgetExhaustedError(
                f"drn undecided: widths {refuted} refuted, stopped at max-k {max_k}")
        if k > WIDTH_CAP:
            raise BudgetExhaustedError(
                f"drn undecided: widths {refuted} refuted, next width {k} exceeds the solver cap {WIDTH_CAP}")
        verdict, witness, st = is_k_representable(g, k, node_limit, time_limit_ms, workers)
        stats[k] = st
        if verdict == "yes":
            return SolveResult(k, witness, rep.lower, tuple(refuted), stats,
                               rep.upper, "search")
        if verdict == "unknown":
            raise BudgetExhaustedError(
                f"budget exhausted at width {k} after {st.nodes} nodes; "
                f"widths refuted so far: {refuted}")
        refuted.append(k)
    cert = best_certificate(g)
    return SolveResult(rep.upper, cert.matrix, rep.lower, tuple(refuted), stats,
                       rep.upper, cert.theorem)


def survey(
    corpus,
    k: int,
    node_limit: int = DEFAULT_NODE_LIMIT,
    time_limit_ms: float = DEFAULT_TIME_LIMIT_MS,
    workers: int = 1,
    order: int | None = None,
) -> SurveyResult:
    """Count corpus graphs that are not width-k representable.

    Any undecided graph fails the whole run (budget error), so a returned
    count is exact.
    """
    graphs = list(corpus)
    refuted = []
    for g in graphs:
        verdict, _, st = is_k_representable(g, k, node_limit, time_limit_ms, workers)
        if verdict == "unknown":
            raise BudgetExhaustedError(
                f"survey undecided for {graph6_encode(g)} at width {k} after {st.nodes} nodes")
        if verdict == "no":
            refuted.append(graph6_encode(g))
    return SurveyResult(order, len(graphs), len(refuted), tuple(refuted))


def brute_force_oracle(g: Graph, k: int) -> bool:
    """Ground-truth decision by enumerating all injective maps into S_k.

    No symmetry reduction and no propagation; only feasible for g.n <= 4 and
    k <= 4.  Used to validate the search.
    """
    if g.n > 4 or k > 4:
        raise ValueError("oracle caps: n <= 4 and k <= 4")
    perms = all_perms(k)
    pairs = [(i, j) for i in range(g.n) for j in range(i + 1, g.n)]
    for chosen in iter_permutations(perms, g.n):
        if all(disagree_everywhere(chosen[i], chosen[j]) == g.has_edge(i, j) for i, j in pairs):
            return True
    return False
