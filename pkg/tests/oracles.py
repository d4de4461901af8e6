"""Brute-force oracles and random instance generators for the test suite.

Everything here is deliberately naive: definitional fixpoints over
explicit pair sets, memoized recursion, literal machine stepping.  The
package must agree with these on small instances; none of this code
shares logic with the implementation under test.
"""

from ocn_gamelab import (ADAM, EVE, Config, CountdownGame, Lts, RGame,
                         SeqDescription, SocnRGame, head_symbol, successors,
                         winning_area)

# ---------------------------------------------------------------------------
# Relation oracles


def brute_simulation(lts: Lts) -> set:
    """Greatest simulation by shrinking the full pair set to a fixpoint."""
    states = list(lts.states)
    rel = {(s, t) for s in states for t in states}

    def supported(s, t):
        for a in lts.enabled_actions(s):
            for s2 in lts.successors(s, a):
                if not any((s2, t2) in rel for t2 in lts.successors(t, a)):
                    return False
        return True

    changed = True
    while changed:
        changed = False
        for pair in sorted(rel):
            if not supported(*pair):
                rel.discard(pair)
                changed = True
    return rel


def brute_bisimulation(lts: Lts) -> set:
    """Greatest bisimulation, same scheme with the symmetric condition."""
    states = list(lts.states)
    rel = {(s, t) for s in states for t in states}

    def supported(s, t):
        for a in lts.enabled_actions(s):
            for s2 in lts.successors(s, a):
                if not any((s2, t2) in rel for t2 in lts.successors(t, a)):
                    return False
        for a in lts.enabled_actions(t):
            for t2 in lts.successors(t, a):
                if not any((s2, t2) in rel for s2 in lts.successors(s, a)):
                    return False
        return True

    changed = True
    while changed:
        changed = False
        for pair in sorted(rel):
            if not supported(*pair):
                rel.discard(pair)
                changed = True
    return rel


def brute_rank(lts: Lts, s: str, t: str):
    """Stratified simulation rank: least r with (s,t) outside the r-th
    approximant, or None when the pair survives to the fixpoint."""
    states = list(lts.states)
    rel = {(a, b) for a in states for b in states}
    r = 0
    while True:
        r += 1
        nxt = set()
        for a, b in rel:
            ok = True
            for act in lts.enabled_actions(a):
                for a2 in lts.successors(a, act):
                    if not any((a2, b2) in rel for b2 in lts.successors(b, act)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                nxt.add((a, b))
        if (s, t) not in nxt:
            return r
        if nxt == rel:
            return None
        rel = nxt


# ---------------------------------------------------------------------------
# Countdown oracle


def recursive_cg(game: CountdownGame, p0: str, n0: int) -> bool:
    """Memoized recursion on the level: the definitional winning set."""
    memo = {}
    eve = set(game.eve)

    def win(q, j):
        key = (q, j)
        if key in memo:
            return memo[key]
        if j == 0:
            memo[key] = q == game.target
            return memo[key]
        enabled = [(z, to) for frm, z, to in game.rules
                   if frm == q and j + z >= 0]
        if q in eve:
            out = any(win(to, j + z) for z, to in enabled)
        else:
            out = bool(enabled) and all(win(to, j + z) for z, to in enabled)
        memo[key] = out
        return out

    return win(p0, n0)


# ---------------------------------------------------------------------------
# Turing machine stepping


def tm_rows(machine, m: int, rows: int, start_marker: str | None = None):
    """Row-major serialization of `machine` run on the empty length-m tape.

    Cell j of each row is the plain tape symbol, or head_symbol(...) when
    the head sits on j.  The marker state for "#" defaults to the
    machine's own start.  Raises if the head ever leaves [0, m).
    """
    marker = machine.start if start_marker is None else start_marker
    tape = [machine.blank] * m
    q = machine.start
    head = 0
    out = []
    for _ in range(rows):
        row = [head_symbol(marker, machine.blank, q, g) if j == head else g
               for j, g in enumerate(tape)]
        out.append(row)
        q2, g2, mv = machine.delta[(q, tape[head])]
        tape[head] = g2
        q = q2
        head += mv
        if not 0 <= head < m:
            raise AssertionError("head left the row: border normal form broken")
    return out


# ---------------------------------------------------------------------------
# Expected transitions of the game-to-net construction


def _prime(s: str) -> str:
    return s + "'"


def expected_net_successors(game: SocnRGame, bound: int) -> dict:
    """Expected successor lists of the constructed net's configuration
    LTS, per construction clause, for every counter value <= bound.

    `game` must already have at most one rule per ordered state pair.
    Keys are Config tuples over plain/primed/challenge/commitment state
    names; values are sets of (action, Config).
    """
    out = {}

    def add(state, k, action, state2, k2):
        if k2 < 0:
            return
        out.setdefault(Config(state, k), set()).add((action, Config(state2, k2)))

    for q in game.states:
        moves = game.rules_from(q)
        for k in range(bound + 1):
            out.setdefault(Config(q, k), set())
            out.setdefault(Config(_prime(q), k), set())
        if game.owner(q) == EVE:
            for z, to in moves:
                act = f"a[{q}->{to}]"
                for k in range(bound + 1):
                    add(q, k, act, to, k + z)
                    add(_prime(q), k, act, _prime(to), k + z)
        elif moves:
            ch = f"ch[{q}]"
            for k in range(bound + 1):
                add(q, k, "a_c", ch, k)
                out.setdefault(Config(ch, k), set())
            for z, to in moves:
                act = f"a[{q}->{to}]"
                zlo, zhi = min(z, 0), max(z, 0)
                pr = f"pr[{q}|{to}]"
                for k in range(bound + 1):
                    add(ch, k, act, to, k + z)
                    add(q, k, "a_c", pr, k + zlo)
                    add(_prime(q), k, "a_c", pr, k + zlo)
                    out.setdefault(Config(pr, k), set())
                    add(pr, k, act, _prime(to), k + zhi)
                    for z2, to2 in moves:
                        if to2 != to:
                            add(pr, k, f"a[{q}->{to2}]", to2, k + z2 - zlo)
    for k in range(bound + 1):
        add(game.target, k, "a_win", game.target, k)
    return out


# ---------------------------------------------------------------------------
# Sound winning area for counter games with arbitrary deltas


def sink_winning_area(game: SocnRGame, bound: int) -> dict:
    """Eve-winning configurations with rank upper bounds.

    Built on the truncation to counters [0, bound] with an extra losing
    sink: Adam rules leaving the box feed the sink (pessimizing every
    escape to an immediate loss for Eve), Eve rules leaving the box are
    dropped.  Membership is therefore sound for the untruncated game
    and the rank of a certified configuration bounds its true rank
    from above.
    """
    sink = ("__sink__", -1)
    vertices = [sink]
    owner = {sink: ADAM}
    edges = [(sink, sink)]
    for q in game.states:
        for k in range(bound + 1):
            v = (q, k)
            vertices.append(v)
            owner[v] = EVE if game.owner(q) == EVE else ADAM
    for q in game.states:
        for k in range(bound + 1):
            for z, to in game.rules_from(q):
                if k + z < 0:
                    continue
                if k + z > bound:
                    if game.owner(q) != EVE:
                        edges.append(((q, k), sink))
                    continue
                edges.append(((q, k), (to, k + z)))
    rg = RGame(tuple(vertices), owner, tuple(edges),
               frozenset({(game.target, 0)}))
    area = winning_area(rg)
    return {v: r for v, r in area.rank_of.items() if v != sink}


# ---------------------------------------------------------------------------
# PGM parsing


def parse_pgm(data: bytes):
    """(width, height, maxval, values) of a plain P2 image."""
    tokens = data.decode("ascii").split()
    if tokens[0] != "P2":
        raise AssertionError("not a P2 file")
    width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    values = [int(tok) for tok in tokens[4:]]
    if len(values) != width * height:
        raise AssertionError("pixel count mismatch")
    return width, height, maxval, values


# ---------------------------------------------------------------------------
# Random instances


def random_lts(rng, max_states: int = 6, max_actions: int = 3,
               density: float = 0.3) -> Lts:
    n = rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    actions = tuple("abc"[:rng.randint(1, max_actions)])
    transitions = []
    for s in states:
        for a in actions:
            for t in states:
                if rng.random() < density:
                    transitions.append((s, a, t))
    return Lts(states=states, actions=actions, transitions=tuple(transitions))


def random_rgame(rng, max_vertices: int = 8, max_out: int = 3) -> RGame:
    n = rng.randint(1, max_vertices)
    names = tuple(f"v{i}" for i in range(n))
    owner = {v: rng.choice([EVE, ADAM]) for v in names}
    edges = []
    for v in names:
        for w in rng.sample(names, k=min(len(names), rng.randint(0, max_out))):
            edges.append((v, w))
    targets = frozenset(v for v in names if rng.random() < 0.3)
    return RGame(names, owner, tuple(edges), targets)


def random_countdown(rng, max_states: int = 6, max_dec: int = 5,
                     max_rules: int = 10) -> CountdownGame:
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    eve = {s for s in states if rng.random() < 0.5}
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        rules.append((rng.choice(states), -rng.randint(1, max_dec),
                      rng.choice(states)))
    return CountdownGame(states, eve, rules, rng.choice(states))


def random_socnrgame(rng, max_states: int = 5, max_delta: int = 4,
                     max_rules: int = 8) -> SocnRGame:
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    eve = {s for s in states if rng.random() < 0.5}
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        rules.append((rng.choice(states), rng.randint(-max_delta, max_delta),
                      rng.choice(states)))
    return SocnRGame(states, eve, rules, rng.choice(states))


def random_unary_net(rng, max_states: int = 3, max_rules: int = 4):
    from ocn_gamelab import Rule, Socn
    n = rng.randint(1, max_states)
    states = tuple(f"p{i}" for i in range(n))
    actions = tuple("ab"[:rng.randint(1, 2)])
    rules = []
    seen = set()
    for _ in range(rng.randint(1, max_rules)):
        rule = Rule(rng.choice(states), rng.choice(actions),
                    rng.choice([-1, 0, 1]), rng.choice(states))
        key = (rule.frm, rule.action, rule.delta, rule.to)
        if key not in seen:
            seen.add(key)
            rules.append(rule)
    return Socn(states=states, actions=actions, rules=tuple(rules))


def random_seqdesc(rng, max_extra: int = 2, m_lo: int = 3,
                   m_hi: int = 6) -> SeqDescription:
    extra = ["A", "B"][:rng.randint(0, max_extra)]
    alphabet = tuple(["#", " "] + extra)
    m = rng.randint(m_lo, m_hi)
    rules = {}
    for _ in range(rng.randint(0, 3 * len(alphabet))):
        triple = tuple(rng.choice(alphabet) for _ in range(3))
        rules[triple] = rng.choice(alphabet)
    default = rng.choice(alphabet)
    return SeqDescription(alphabet, "#", " ", rules, default, m)


def mimicking_bisim_witness(game: RGame, ml, losing: set) -> set:
    """Symmetric relation witnessing v ~ v' for every Eve-losing vertex.

    Pairs each losing vertex's two copies, and each losing Adam
    vertex's open challenge state with the commitment to one losing
    successor (Adam's dodge).  Returns the relation including the
    identity; check it with `is_one_step_closed`.
    """
    rel = {(s, s) for s in ml.lts.states}
    for v in losing:
        rel.add((ml.plain[v], ml.primed[v]))
        rel.add((ml.primed[v], ml.plain[v]))
        if game.owner[v] == ADAM and game.successors(v):
            dodge = next(t for t in game.successors(v) if t in losing)
            rel.add((ml.choice[v], ml.pair[(v, dodge)]))
            rel.add((ml.pair[(v, dodge)], ml.choice[v]))
    return rel


def is_one_step_closed(lts: Lts, rel: set) -> bool:
    """Does every pair survive one round of the simulation condition?

    A symmetric one-step-closed relation is a bisimulation.
    """
    for s, t in rel:
        for a in lts.enabled_actions(s):
            for s2 in lts.successors(s, a):
                if not any((s2, t2) in rel for t2 in lts.successors(t, a)):
                    return False
    return True
