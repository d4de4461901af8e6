"""Countdown game solvers streaming level sets through a sliding window.

In a countdown game every rule strictly decreases the counter, so the
set W(j) of control states winning for Eve at counter value j depends
only on the previous M levels, where M is the largest decrement.  The
solvers below stream W(0), W(1), W(2), ... keeping just that window:
membership of p0 in W(n0) answers the countdown game, and a repeat of
the M-level segment without p0 ever appearing answers the existential
variant negatively (the level stream is eventually periodic, so a
clean segment repeat proves p0 never wins).  The theoretical repeat
bound M + 2^(|Q|*M) is astronomically larger than desk instances need.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .rgame import EVE, GameError, SocnRGame


class CountdownGame(SocnRGame):
    """A counter game whose rules all strictly decrease the counter."""

    def __post_init__(self):
        super().__post_init__()
        for frm, z, to in self.rules:
            if z >= 0:
                raise GameError(
                    f"countdown rule ({frm!r},{z},{to!r}) must have negative delta")

    @property
    def max_decrement(self) -> int:
        """M: the largest decrement magnitude (0 for a game with no rules)."""
        return max((-z for _, z, _ in self.rules), default=0)


@dataclass
class LevelWindow:
    """Ring buffer of the most recent level sets.

    Holds W(j-width .. j-1) as frozensets, where j is the index of the
    next level to be produced.  Width is min(M, j); lookups outside the
    retained range raise, which would indicate a solver bug.
    """

    width: int
    levels: deque
    j: int

    @classmethod
    def start(cls, width: int) -> "LevelWindow":
        return cls(width, deque(maxlen=max(width, 1)), 0)

    def push(self, level: frozenset):
        self.levels.append(level)
        self.j += 1

    def get(self, i: int) -> frozenset:
        offset = i - (self.j - len(self.levels))
        if not 0 <= offset < len(self.levels):
            raise IndexError(f"level {i} outside window at j={self.j}")
        return self.levels[offset]

    def segment(self) -> tuple:
        """The last ``width`` levels as a hashable tuple (needs j >= width)."""
        return tuple(self.levels)[-self.width:] if self.width else ()


def win_levels_stream(game: CountdownGame):
    """Yield (j, W(j)) in increasing j, keeping only an M-level window.

    W(0) contains exactly the target state.  For j >= 1 a state q is in
    W(j) iff q is Eve's and some rule (q,z,q') with j+z >= 0 lands in
    W(j+z), or q is Adam's, has at least one enabled rule at level j,
    and every enabled rule lands in the corresponding winning set.  An
    Adam state with no enabled rule is not winning (stalemate favours
    Adam unless the target configuration is already reached).
    """
    m = game.max_decrement
    window = LevelWindow.start(m)
    level0 = frozenset({game.target})
    yield 0, level0
    window.push(level0)
    while True:
        j = window.j
        won = set()
        for q in game.states:
            eve = game.owner(q) == EVE
            enabled = 0
            good = 0
            for z, to in game.rules_from(q):
                if j + z < 0:
                    continue
                enabled += 1
                if to in window.get(j + z):
                    good += 1
                    if eve:
                        break
            if eve:
                if good:
                    won.add(q)
            else:
                if enabled and enabled == good:
                    won.add(q)
        level = frozenset(won)
        yield j, level
        window.push(level)


def solve_cg(game: CountdownGame, p0: str, n0: int) -> bool:
    """True iff Eve wins the countdown game from p0 with initial counter n0."""
    if p0 not in set(game.states):
        raise GameError(f"unknown state {p0!r}")
    if n0 < 0:
        raise GameError("initial counter must be nonnegative")
    for j, level in win_levels_stream(game):
        if j == n0:
            return p0 in level
    raise AssertionError("unreachable: level stream is infinite")


@dataclass
class EcgAnswer:
    """Outcome of the existential countdown game.

    kind is "yes" (with n the least winning counter value), "no" (with
    ``repeat`` the witness pair j1 < j2 of indices whose M-segments are
    identical while p0 never appeared in W(0..j2)), or "inconclusive"
    (the user-supplied cap was reached first).
    """

    kind: str
    n: int | None = None
    repeat: tuple[int, int] | None = None
    cap: int | None = None


def solve_ecg(game: CountdownGame, p0: str, cap: int | None = None,
              low_memory: bool = False) -> EcgAnswer:
    """Is there any n with p0 in W(n)?

    Streams the level sets, answering Yes at the first hit.  A repeat of
    the M-level segment proves the stream periodic from the first of the
    two indices on, so if p0 has not appeared by then it never will: No.
    With ``low_memory`` the repeat is found by Brent's cycle finding
    over the segment orbit instead of a hash table of all segments seen,
    trading a second streaming pass for O(M) memory.
    """
    if p0 not in set(game.states):
        raise GameError(f"unknown state {p0!r}")
    if low_memory:
        return _solve_ecg_brent(game, p0, cap)
    m = game.max_decrement
    # For j < record_from the segment is not yet j-independent
    # (enabledness thresholds still bite), so recording starts after it.
    record_from = max(m - 1, 1)
    seen: dict[tuple, int] = {}
    window = LevelWindow.start(m)
    for j, level in win_levels_stream(game):
        if p0 in level:
            return EcgAnswer("yes", n=j)
        if cap is not None and j >= cap:
            return EcgAnswer("inconclusive", cap=cap)
        window.push(level)
        if j >= record_from:
            seg = window.segment()
            first = seen.get(seg)
            if first is not None:
                return EcgAnswer("no", repeat=(first, j))
            seen[seg] = j
    raise AssertionError("unreachable")


def _next_level(game: CountdownGame, segment: tuple) -> tuple:
    """Advance the segment orbit one level, valid once all rules are enabled.

    For level indices j > M every rule satisfies j+z >= 0, so the next
    level is a pure function of the last M levels; segment[-1] is level
    j-1 and segment[k] is level j - M + k.
    """
    m = game.max_decrement
    won = set()
    for q in game.states:
        eve = game.owner(q) == EVE
        rules = game.rules_from(q)
        if not rules:
            continue
        good = 0
        for z, to in rules:
            if to in segment[m + z]:
                good += 1
                if eve:
                    break
        if (eve and good) or (not eve and good == len(rules)):
            won.add(q)
    return segment[1:] + (frozenset(won),) if m else ()


def _solve_ecg_brent(game: CountdownGame, p0: str, cap: int | None) -> EcgAnswer:
    m = game.max_decrement
    # Prefix pass with j-dependent enabledness; x0 is the segment at level s0.
    s0 = max(m, 1)
    window = LevelWindow.start(m)
    for j, level in win_levels_stream(game):
        if p0 in level:
            return EcgAnswer("yes", n=j)
        if cap is not None and j >= cap:
            return EcgAnswer("inconclusive", cap=cap)
        window.push(level)
        if j == s0:
            break
    x0 = window.segment()

    def advance(seg: tuple, j: int) -> tuple[tuple, int] | EcgAnswer:
        nxt = _next_level(game, seg)
        latest = nxt[-1] if m else frozenset()
        if p0 in latest:
            return EcgAnswer("yes", n=j + 1)
        if cap is not None and j + 1 >= cap:
            return EcgAnswer("inconclusive", cap=cap)
        return nxt, j + 1

    # Brent: the hare streams forward; the tortoise only teleports.
    power = lam = 1
    tortoise, hare, hare_j = x0, None, s0
    step = advance(x0, hare_j)
    if isinstance(step, EcgAnswer):
        return step
    hare, hare_j = step
    while hare != tortoise:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        step = advance(hare, hare_j)
        if isinstance(step, EcgAnswer):
            return step
        hare, hare_j = step
        lam += 1
    # Find the first repeat start mu by advancing two segments lam apart.
    ahead = x0
    ahead_j = s0
    for _ in range(lam):
        ahead = _next_level(game, ahead)
        ahead_j += 1
    back = x0
    back_j = s0
    while back != ahead:
        back = _next_level(game, back)
        back_j += 1
        ahead = _next_level(game, ahead)
        ahead_j += 1
    return EcgAnswer("no", repeat=(back_j, ahead_j))
