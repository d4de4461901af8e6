import random

import pytest

from ocn_gamelab import (ADAM, EVE, GameError, RGame, SocnRGame, expand_region,
                         winning_area)

from oracles import random_countdown, recursive_cg


def test_target_has_rank_zero():
    g = RGame(vertices=["t"], owner={"t": ADAM}, edges=[], targets={"t"})
    wa = winning_area(g)
    assert wa.rank("t") == 0
    assert wa.is_winning("t")


def test_eve_one_step_to_target():
    g = RGame(vertices=["s", "t", "x"], owner={"s": EVE, "t": ADAM, "x": ADAM},
              edges=[("s", "t"), ("s", "x")], targets={"t"})
    wa = winning_area(g)
    assert wa.rank("s") == 1
    assert not wa.is_winning("x")


def test_adam_can_dodge():
    # Adam picks between the target and a dead end, so he dodges.
    g = RGame(vertices=["s", "t", "d"], owner={"s": ADAM, "t": ADAM, "d": ADAM},
              edges=[("s", "t"), ("s", "d")], targets={"t"})
    wa = winning_area(g)
    assert not wa.is_winning("s")


def test_adam_deadlock_is_not_winning():
    # Deadlocked Adam vertex off target: the play stalls, Eve never arrives.
    g = RGame(vertices=["s"], owner={"s": ADAM}, edges=[], targets=set())
    assert not winning_area(g).is_winning("s")


def test_adam_forced_rank_counts_rounds():
    g = RGame(vertices=["s", "m", "t"],
              owner={"s": ADAM, "m": ADAM, "t": ADAM},
              edges=[("s", "m"), ("m", "t")], targets={"t"})
    wa = winning_area(g)
    assert wa.rank("s") == 2
    assert wa.rank("m") == 1


def test_eve_rank_is_shortest_forced_distance():
    g = RGame(vertices=["s", "a", "b", "t"],
              owner={"s": EVE, "a": EVE, "b": EVE, "t": EVE},
              edges=[("s", "a"), ("a", "b"), ("b", "t"), ("s", "t")],
              targets={"t"})
    assert winning_area(g).rank("s") == 1


def test_duplicate_vertices_rejected():
    with pytest.raises(GameError):
        RGame(vertices=["v", "v"], owner={"v": EVE}, edges=[], targets=set())


def test_edge_to_unknown_vertex_rejected():
    with pytest.raises(GameError):
        RGame(vertices=["v"], owner={"v": EVE}, edges=[("v", "w")],
              targets=set())


def test_expand_region_vertex_and_edge_shape():
    g = SocnRGame(states=["q", "p_win"], eve={"q"},
                  rules=[("q", -5, "p_win")], target="p_win")
    rg = expand_region(g, 6)
    assert len(rg.vertices) == 2 * 7
    assert (("q", 5), ("p_win", 0)) in rg.edges
    assert not [e for e in rg.edges if e[0] == ("q", 3)]


def test_expand_region_negative_bound_rejected():
    g = SocnRGame(states=["q"], eve=set(), rules=[], target="q")
    with pytest.raises(GameError):
        expand_region(g, -1)


def test_expansion_decides_countdown_games_exactly():
    rng = random.Random(2024)
    for _ in range(40):
        game = random_countdown(rng)
        bound = rng.randrange(0, 25)
        wa = winning_area(expand_region(game, bound))
        for q in game.states:
            for n in range(bound + 1):
                assert wa.is_winning((q, n)) == recursive_cg(game, q, n), (
                    game, q, n)


def test_truncation_is_monotone_for_countdown_rules():
    # With every delta <= 0 no edge ever leaves the box, so growing the
    # bound only adds isolated higher slices: verdicts never flip.  (For
    # general rules this fails: an Eve edge with delta +1 that is her only
    # route to the target is cut by a tight box, flipping her verdict.)
    rng = random.Random(77)
    for _ in range(20):
        game = random_countdown(rng)
        small = winning_area(expand_region(game, 10))
        large = winning_area(expand_region(game, 20))
        for q in game.states:
            for n in range(11):
                assert small.is_winning((q, n)) == large.is_winning((q, n))
                if small.is_winning((q, n)):
                    assert small.rank((q, n)) == large.rank((q, n))


def test_truncation_not_monotone_in_general():
    # Eve must climb to 2 before dropping to the target at 0.
    g = SocnRGame(states=["s", "h", "t"], eve={"s", "h"},
                  rules=[("s", 1, "h"), ("h", -2, "t")], target="t")
    tight = winning_area(expand_region(g, 1))
    roomy = winning_area(expand_region(g, 2))
    assert not tight.is_winning(("s", 1))
    assert roomy.is_winning(("s", 1))
