"""Exact optimal play for the Builder-Blocker general position game.

Positions are bit masks of chosen vertices.  The player to move follows from
the parity of the chosen set and who opened, so a position's value is
memoised under its mask alone (one table per opening player).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

from .graph import DistanceMatrix, Graph, GraphError, VertexLike, VertexSet, VERTEX_CAP, all_pairs_distances, bits, popcount
from .position import closure_is_general_position, geodesic_blockers, is_general_position

DEFAULT_NODE_BUDGET = 10**8
BUDGET_ENV = "GPGAME_NODE_BUDGET"


class Player(str, Enum):
    BUILDER = "builder"
    BLOCKER = "blocker"

    @property
    def other(self) -> "Player":
        return Player.BLOCKER if self is Player.BUILDER else Player.BUILDER


class SearchBudgetExceeded(RuntimeError):
    """The node budget ran out before the search finished."""

    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} node expansions exhausted")
        self.budget = budget


def default_node_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_NODE_BUDGET


@dataclass
class SearchStats:
    nodes: int = 0
    memo_hits: int = 0
    closure_cutoffs: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.memo_hits += other.memo_hits
        self.closure_cutoffs += other.closure_cutoffs


@dataclass(frozen=True)
class GameState:
    chosen: VertexSet
    first_player: Player

    @property
    def to_move(self) -> Player:
        return self.first_player if len(self.chosen) % 2 == 0 else self.first_player.other

    def play(self, v: int) -> "GameState":
        return GameState(self.chosen.add(v), self.first_player)


@dataclass(frozen=True)
class GameOutcome:
    value: int
    first_player: Player
    principal_variation: Tuple[int, ...]
    stats: SearchStats = field(default_factory=SearchStats, compare=False)


class GameSolver:
    """Memoised minimax over general position sets of one graph.

    ``order`` fixes the sequence in which moves are expanded (default:
    ascending ids); it affects speed only.  Reported moves always use the
    lowest-id tie-break.
    """

    def __init__(
        self,
        g: Graph,
        dist: Optional[DistanceMatrix] = None,
        *,
        node_budget: Optional[int] = None,
        order: Optional[Sequence[int]] = None,
    ):
        if g.n < 1:
            raise GraphError("the game needs at least one vertex")
        if g.n > VERTEX_CAP:
            raise GraphError(f"graph has {g.n} vertices; the cap is {VERTEX_CAP}")
        self.g = g
        self.dist = dist if dist is not None else all_pairs_distances(g)
        self.blockers = geodesic_blockers(self.dist)
        self.node_budget = default_node_budget() if node_budget is None else node_budget
        if order is None:
            order = range(g.n)
        self.order = tuple(order)
        if sorted(self.order) != list(range(g.n)):
            raise ValueError("order must be a permutation of the vertices")
        self.memo: Dict[Player, Dict[int, int]] = {Player.BUILDER: {}, Player.BLOCKER: {}}
        self.stats = SearchStats()

    # -- core search ---------------------------------------------------------

    def _forbidden(self, chosen: int) -> int:
        out = 0
        members = list(bits(chosen))
        blockers = self.blockers
        for i, a in enumerate(members):
            row = blockers[a]
            for b in members[i + 1:]:
                out |= row[b]
        return out

    def _search(self, chosen: int, forbidden: int, maximize: bool, memo: Dict[int, int]) -> int:
        stats = self.stats
        stats.nodes += 1
        if stats.nodes > self.node_budget:
            raise SearchBudgetExceeded(self.node_budget)
        size = popcount(chosen)
        playable = self.g.all_mask & ~chosen & ~forbidden
        if not playable:
            memo[chosen] = size
            return size
        if closure_is_general_position(self.blockers, chosen, playable):
            stats.closure_cutoffs += 1
            value = size + popcount(playable)
            memo[chosen] = value
            return value
        # no line of play can beat these, so reaching one ends the scan
        target = size + popcount(playable) if maximize else size + 1
        members = list(bits(chosen))
        blockers = self.blockers
        best = None
        for v in self.order:
            if not playable >> v & 1:
                continue
            child = chosen | 1 << v
            value = memo.get(child)
            if value is None:
                row = blockers[v]
                f = forbidden
                for c in members:
                    f |= row[c]
                value = self._search(child, f, not maximize, memo)
            else:
                stats.memo_hits += 1
            if best is None or (value > best if maximize else value < best):
                best = value
                if best == target:
                    break
        memo[chosen] = best
        return best

    def value(self, chosen: VertexLike, first_player: Player) -> int:
        """Optimal final size from ``chosen`` in the game opened by ``first_player``."""
        mask = VertexSet.of(chosen).mask
        memo = self.memo[first_player]
        cached = memo.get(mask)
        if cached is not None:
            self.stats.memo_hits += 1
            return cached
        self._check_position(mask)
        to_move = first_player if popcount(mask) % 2 == 0 else first_player.other
        return self._search(mask, self._forbidden(mask), to_move is Player.BUILDER, memo)

    def _check_position(self, mask: int) -> None:
        if mask >> self.g.n:
            raise GraphError("position contains vertices outside the graph")
        if self._forbidden(mask) & mask:
            raise ValueError(f"{VertexSet(mask)} is not in general position")

    # -- move extraction -----------------------------------------------------

    def playable(self, chosen: VertexLike) -> VertexSet:
        mask = VertexSet.of(chosen).mask
        self._check_position(mask)
        return VertexSet(self.g.all_mask & ~mask & ~self._forbidden(mask))

    def best_move(self, state: GameState) -> int:
        """Lowest-id move that attains the minimax value of ``state``."""
        playable = self.playable(state.chosen)
        if not playable:
            raise ValueError("no playable vertex: the game is over")
        target = self.value(state.chosen, state.first_player)
        for v in playable:
            if self.value(state.chosen.add(v), state.first_player) == target:
                return v
        raise AssertionError("no move attains the position value")  # pragma: no cover

    def principal_variation(self, first_player: Player, start: VertexLike = ()) -> Tuple[int, ...]:
        state = GameState(VertexSet.of(start), first_player)
        line = []
        while self.playable(state.chosen):
            v = self.best_move(state)
            line.append(v)
            state = state.play(v)
        return tuple(line)

    def solve(self, first_player: Player, workers: int = 1) -> GameOutcome:
        first_player = Player(first_player)
        if workers > 1 and self.g.n > 1 and 0 not in self.memo[first_player]:
            self._solve_root_parallel(first_player, workers)
        value = self.value((), first_player)
        pv = self.principal_variation(first_player)
        return GameOutcome(value, first_player, pv, self.stats)

    def _solve_root_parallel(self, first_player: Player, workers: int) -> None:
        children = [v for v in self.order]
        chunks = [children[i::workers] for i in range(workers)]
        jobs = [(self.g, first_player, chunk, self.node_budget, self.order) for chunk in chunks if chunk]
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            results = list(pool.map(_root_worker, jobs))
        memo = self.memo[first_player]
        values = {}
        for child_values, worker_memo, stats in results:
            memo.update(worker_memo)
            values.update(child_values)
            self.stats.merge(stats)
        pick = max if first_player is Player.BUILDER else min
        memo[0] = pick(values.values())


def _root_worker(job) -> Tuple[Dict[int, int], Dict[int, int], SearchStats]:
    g, first_player, chunk, budget, order = job
    solver = GameSolver(g, node_budget=budget, order=order)
    values = {v: solver.value((v,), first_player) for v in chunk}
    return values, solver.memo[first_player], solver.stats


def solve_game(
    g: Graph,
    first_player: Player,
    *,
    node_budget: Optional[int] = None,
    order: Optional[Sequence[int]] = None,
    workers: int = 1,
) -> GameOutcome:
    """gpg(G) when Builder opens, gpg'(G) when Blocker opens, with one
    optimal line of play.  Raises :class:`SearchBudgetExceeded` rather than
    returning an unproven value."""
    return GameSolver(g, node_budget=node_budget, order=order).solve(Player(first_player), workers=workers)


def best_move(g: Graph, state: GameState, *, node_budget: Optional[int] = None) -> int:
    return GameSolver(g, node_budget=node_budget).best_move(state)


def game_values(g: Graph, *, node_budget: Optional[int] = None) -> Tuple[int, int]:
    """``(gpg, gpg')`` from a single solver instance."""
    solver = GameSolver(g, node_budget=node_budget)
    return solver.value((), Player.BUILDER), solver.value((), Player.BLOCKER)


# -- static set searches ------------------------------------------------------


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget)


def largest_general_position_set(
    g: Graph, dist: Optional[DistanceMatrix] = None, *, node_budget: Optional[int] = None
) -> VertexSet:
    """A maximum general position set, by include/exclude branch and bound
    on the lowest remaining candidate."""
    dist = dist if dist is not None else all_pairs_distances(g)
    blockers = geodesic_blockers(dist)
    counter = _Counter(default_node_budget() if node_budget is None else node_budget)
    best = [0, 0]  # size, mask

    def grow(chosen: int, size: int, candidates: int) -> None:
        counter.tick()
        if size + popcount(candidates) <= best[0]:
            return
        if not candidates:
            best[0], best[1] = size, chosen
            return
        v = (candidates & -candidates).bit_length() - 1
        rest = candidates & ~(1 << v)
        row = blockers[v]
        newly = 0
        for c in bits(chosen):
            newly |= row[c]
        grow(chosen | 1 << v, size + 1, rest & ~newly)
        grow(chosen, size, rest)

    grow(0, 0, g.all_mask)
    return VertexSet(best[1])


def gp_number(g: Graph, dist: Optional[DistanceMatrix] = None, *, node_budget: Optional[int] = None) -> int:
    return len(largest_general_position_set(g, dist, node_budget=node_budget))


def smallest_maximal_general_position_set(
    g: Graph, dist: Optional[DistanceMatrix] = None, *, node_budget: Optional[int] = None
) -> VertexSet:
    """A smallest maximal general position set, found by trying sizes in
    ascending order."""
    if g.n == 0:
        return VertexSet()
    dist = dist if dist is not None else all_pairs_distances(g)
    blockers = geodesic_blockers(dist)
    counter = _Counter(default_node_budget() if node_budget is None else node_budget)
    full = g.all_mask

    def find(chosen: int, forbidden: int, remaining: int, start: int) -> Optional[int]:
        counter.tick()
        if remaining == 0:
            return chosen if not full & ~chosen & ~forbidden else None
        for v in range(start, g.n):
            if (chosen | forbidden) >> v & 1:
                continue
            row = blockers[v]
            f = forbidden
            for c in bits(chosen):
                f |= row[c]
            found = find(chosen | 1 << v, f, remaining - 1, v + 1)
            if found is not None:
                return found
        return None

    for size in range(1, g.n + 1):
        found = find(0, 0, size, 0)
        if found is not None:
            return VertexSet(found)
    raise AssertionError("V(G) itself failed to be reached")  # pragma: no cover


def gp_lower_number(g: Graph, dist: Optional[DistanceMatrix] = None, *, node_budget: Optional[int] = None) -> int:
    return len(smallest_maximal_general_position_set(g, dist, node_budget=node_budget))


# -- independent oracle -------------------------------------------------------


def oracle_solve(g: Graph, first_player: Player) -> int:
    """Plain minimax over move sequences: no memo, no closure shortcut,
    no move ordering beyond ascending ids.  Exponential; meant for n <= ~10.
    """
    first_player = Player(first_player)
    d = all_pairs_distances(g).d
    n = g.n

    def between(x: int, y: int, z: int) -> bool:
        # y strictly inside an x-z geodesic
        return -1 not in (d[x][y], d[y][z], d[x][z]) and d[x][z] == d[x][y] + d[y][z]

    def legal(chosen: list, v: int) -> bool:
        for i, a in enumerate(chosen):
            for b in chosen[i + 1:]:
                if between(a, v, b) or between(v, a, b) or between(a, b, v):
                    return False
        return True

    def rec(chosen: list, builder_to_move: bool) -> int:
        values = [
            rec(chosen + [v], not builder_to_move)
            for v in range(n)
            if v not in chosen and legal(chosen, v)
        ]
        if not values:
            return len(chosen)
        return max(values) if builder_to_move else min(values)

    return rec([], first_player is Player.BUILDER)


def replay_is_sound(g: Graph, moves: Sequence[int], dist: Optional[DistanceMatrix] = None) -> bool:
    """Each prefix of ``moves`` is in general position and the final set is maximal."""
    dist = dist if dist is not None else all_pairs_distances(g)
    chosen = VertexSet()
    for v in moves:
        if v in chosen or not 0 <= v < g.n:
            return False
        chosen = chosen.add(v)
        if not is_general_position(g, dist, chosen):
            return False
    return all(not is_general_position(g, dist, chosen.add(v)) for v in range(g.n) if v not in chosen)
