"""Simulation preorder on one-counter nets via plane coloring and belts.

Each pair of control states (p,q) spans a plane of cells (m,n), black
when p(m) is simulated by q(n) and white otherwise.  White cells carry
the rank at which the attacker wins.  The plane is computed bottom-up
to a rank bound K on a grid padded by K * Dmax so that the reported
interior is exact: a cell's rank-r status only depends on cells within
distance r * Dmax.

Black cells of an interior are never asserted to be truly black; they
are candidates.  The honest positive answers come from certificates:
a periodic frontier description per plane whose black region is closed
under the one-step simulation game, hence a simulation.  The decision
procedure refutes with the exact attacker rank, certifies with a
verified certificate, or says Unknown.

All belt geometry uses exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lts import bounded_attacker_search
from .socn import Config, NetError, Socn, config_oracle

INF = math.inf

DEFAULT_CELL_BUDGET = 16_000_000


class ResourceGuardError(RuntimeError):
    """The requested coloring exceeds the configured cell budget."""


class UnstableFitError(ValueError):
    """No frontier repetition fits the upper half of the view.

    The residuals wander beyond any fixed band, which normally means
    the view is too small for the belt structure to stabilize.
    """


class MalformedCertificateError(ValueError):
    """Certificate shape errors, reported distinctly from verification failure."""


class InvariantError(RuntimeError):
    """A computed coloring contradicts a theorem; indicates a bug."""


# ---------------------------------------------------------------------------
# Plane coloring


@dataclass
class PlaneColoring:
    """White ranks for one plane (p,q) on a padded grid.

    ``white[m,n]`` is 0 for a black candidate and r >= 1 when the
    attacker wins from (p(m), q(n)) in exactly r rounds.  Only the
    interior [0,R) x [0,R) is exact for ranks up to K; the padding up
    to ``grid`` absorbs boundary effects.
    """

    p: str
    q: str
    white: np.ndarray
    interior: int
    rank_bound: int
    max_delta: int

    @property
    def grid(self) -> int:
        return self.white.shape[0]

    def interior_view(self) -> np.ndarray:
        r = self.interior
        return self.white[:r, :r]

    def is_white(self, m: int, n: int) -> bool:
        return bool(self.white[m, n] > 0)

    def rank(self, m: int, n: int) -> int | None:
        r = int(self.white[m, n])
        return r if r > 0 else None

    def cell_exact(self, m: int, n: int, r: int) -> bool:
        """Whether round-r information at (m,n) is unaffected by the grid edge."""
        reach = r * max(self.max_delta, 0)
        g = self.grid
        return m + reach <= g - 1 and n + reach <= g - 1


def _shift_bool(a: np.ndarray, dm: int, dn: int) -> np.ndarray:
    """out[m,n] = a[m+dm, n+dn] where defined, False outside the grid."""
    g = a.shape[0]
    out = np.zeros_like(a)
    m0, m1 = max(0, -dm), min(g, g - dm)
    n0, n1 = max(0, -dn), min(g, g - dn)
    if m0 < m1 and n0 < n1:
        out[m0:m1, n0:n1] = a[m0 + dm:m1 + dm, n0 + dn:n1 + dn]
    return out


def _assert_interior_monotone(colorings: dict) -> None:
    # Black-cell monotonicity (smaller m, larger n stays black) must hold
    # cell-exactly on every exact interior; a violation is a solver bug.
    for (p, q), col in colorings.items():
        black = col.interior_view() == 0
        if black[1:, :].any() and not np.all(black[:-1, :] | ~black[1:, :]):
            raise InvariantError(f"black not left-closed in plane ({p},{q})")
        if black[:, :-1].any() and not np.all(black[:, 1:] | ~black[:, :-1]):
            raise InvariantError(f"black not up-closed in plane ({p},{q})")


def color_planes(net: Socn, rank_bound: int, view: int,
                 cell_budget: int | None = None) -> dict:
    """Rank-bounded coloring of every plane; interior [0,view)^2 is exact.

    Starts all cells black and recolors to white rank by rank: at round
    r a cell turns white when some enabled attacker rule has every
    enabled defender response already white (out-of-grid targets count
    as black, which is the conservative direction and is exactly what
    the margin absorbs).  Stops early once a round changes nothing.
    """
    if rank_bound < 1 or view < 1:
        raise NetError("rank_bound and view must be >= 1")
    budget = DEFAULT_CELL_BUDGET if cell_budget is None else cell_budget
    dmax = net.max_delta
    g = view + rank_bound * dmax
    cells = g * g * len(net.states) ** 2
    if cells > budget:
        raise ResourceGuardError(
            f"coloring needs {cells} cells (grid {g}, {len(net.states)} states), "
            f"budget is {budget}")
    white = {(p, q): np.zeros((g, g), dtype=np.int32)
             for p in net.states for q in net.states}
    mvec = np.arange(g).reshape(-1, 1)
    nvec = np.arange(g).reshape(1, -1)
    for r in range(1, rank_bound + 1):
        newly = {}
        changed = False
        for p in net.states:
            for q in net.states:
                win = np.zeros((g, g), dtype=bool)
                for ra in net.rules_from(p):
                    move_ok = np.broadcast_to((mvec + ra.delta >= 0)
                                              & (mvec + ra.delta < g), (g, g)).copy()
                    if not move_ok.any():
                        continue
                    for rd in net.rules_from(q):
                        if rd.action != ra.action:
                            continue
                        target_white = _shift_bool(
                            white[(ra.to, rd.to)] > 0, ra.delta, rd.delta)
                        disabled = nvec + rd.delta < 0
                        move_ok &= target_white | disabled
                        if not move_ok.any():
                            break
                    win |= move_ok
                fresh = win & (white[(p, q)] == 0)
                if fresh.any():
                    newly[(p, q)] = fresh
                    changed = True
        if not changed:
            break
        for key, fresh in newly.items():
            white[key][fresh] = r
    colorings = {(p, q): PlaneColoring(p, q, white[(p, q)], view, rank_bound, dmax)
                 for p in net.states for q in net.states}
    _assert_interior_monotone(colorings)
    return colorings


# ---------------------------------------------------------------------------
# Frontiers and belt fitting


@dataclass
class Frontier:
    """Rightmost black cell per interior row.

    values[n] is -1 when the whole row is white, math.inf when the row
    is black out to the exactness limit (an infinity *candidate*: a
    finite view cannot witness a true infinite row), and otherwise the
    largest black m.
    """

    plane: tuple
    values: list

    @property
    def height(self) -> int:
        return len(self.values)


def frontier(coloring: PlaneColoring) -> Frontier:
    interior = coloring.interior_view()
    r = coloring.interior
    if r <= 0:
        raise NetError("empty interior")
    vals = []
    for n in range(r):
        blacks = int(np.count_nonzero(interior[:, n] == 0))
        vals.append(INF if blacks == r else blacks - 1)
    return Frontier((coloring.p, coloring.q), vals)


@dataclass
class BeltFit:
    """Classification of one plane's frontier.

    kind HF: some row is black to the exactness limit (view-relative
    judgment); VF: the frontier is constant over the upper half of the
    view; SF: the frontier repeats with a vector (dx, dy), slope
    alpha = dx/dy, and every upper-half residual f(n) - alpha*n lies in
    the offset band [c_lo, c_hi].
    """

    plane: tuple
    kind: str
    alpha: Fraction | None = None
    band: tuple | None = None
    period_hint: tuple | None = None
    level: int | None = None
    inf_from: int | None = None

    @property
    def step(self) -> Fraction:
        """Horizontal growth per unit of slope descent: 1 + 1/alpha (SF only)."""
        if self.alpha is None:
            raise ValueError("step is defined for SF fits only")
        return 1 + Fraction(1, 1) / self.alpha


def _sf_fit(plane: tuple, vals: list, half: int, t: int, width: int):
    """SF fit over the uncensored rows [half, t); None when no single
    repetition vector explains them, or when extrapolating it over a
    censored row [t, len) would re-enter the view (the row could not
    then be fully black, so the fit contradicts the observation)."""
    if t - half < 2:
        return None
    found = None
    for dy in range(1, t - half):
        diffs = {vals[n + dy] - vals[n] for n in range(half, t - dy)}
        if len(diffs) == 1:
            dx = diffs.pop()
            if dx >= 1:
                found = (dx, dy)
            break  # a smaller dy dominates any multiple of itself
    if found is None:
        return None
    dx, dy = found
    ext = list(vals[:t])
    for n in range(t, len(vals)):
        pred = ext[n - dy] + dx
        if pred < width - 1:
            return None
        ext.append(pred)
    alpha = Fraction(dx, dy)
    residuals = [vals[n] - alpha * n for n in range(half, t)]
    return BeltFit(plane, "SF", alpha=alpha,
                   band=(min(residuals), max(residuals)), period_hint=(dx, dy))


def classify_and_fit(frontiers: dict) -> dict:
    """BeltFit per plane; raises UnstableFitError when nothing fits.

    A fully black row is ambiguous in a finite view: either the plane
    really is all black from there on, or a steep belt's frontier left
    the view (censoring).  Monotonicity makes such rows a terminal run,
    so the belt reading is tried on the rows below the run first and HF
    is kept only for what that cannot explain.
    """
    fits = {}
    for plane, fr in frontiers.items():
        vals = fr.values
        h = len(vals)
        half = h // 2
        t = next((i for i, v in enumerate(vals) if v == INF), h)
        if t < h:
            # Steep belts saturate early, so fit on the half of the
            # uncensored rows closest to the run.
            fit = _sf_fit(plane, vals, t // 2, t, h)
            fits[plane] = fit if fit is not None else BeltFit(plane, "HF",
                                                              inf_from=t)
            continue
        upper = vals[half:]
        if all(v == upper[0] for v in upper):
            fits[plane] = BeltFit(plane, "VF", level=upper[0])
            continue
        fit = _sf_fit(plane, vals, half, h, h)
        if fit is None:
            raise UnstableFitError(
                f"plane {plane}: no frontier repetition over rows [{half},{h}); "
                "enlarge the view")
        fits[plane] = fit
    return fits


def detect_belt_period(coloring: PlaneColoring, fit: BeltFit):
    """Smallest multiple of the repetition vector shifting the belt onto itself.

    Compares whole interior rows above a threshold, which for
    prefix-shaped rows is the same as frontier periodicity.  The
    threshold is the half view, lowered to half the uncensored height
    when the belt saturates the view early (fully black rows compare
    trivially, so the window must keep rows whose frontier is visible).
    Needs at least one full period of fresh rows; returns None when the
    view has too few.  An all-black plane is a degenerate belt with
    period (1,1).
    """
    r = coloring.interior
    black = coloring.interior_view() == 0
    if fit.kind == "HF":
        if black.all():
            return (1, 1)
        raise NetError("period detection needs an SF fit")
    if fit.kind != "SF":
        raise NetError("period detection needs an SF fit")
    dx, dy = fit.period_hint
    t = next((n for n in range(r) if bool(black[:, n].all())), r)
    n0 = t // 2 if t < r else r // 2
    k = 1
    while True:
        px, py = k * dx, k * dy
        if py > (r - n0) // 2 or px >= r:
            return None
        if np.array_equal(black[:r - px, n0:r - py], black[px:, n0 + py:]):
            return (px, py)
        k += 1


# ---------------------------------------------------------------------------
# Certificates


@dataclass
class PlaneBelt:
    """Periodic frontier description of one plane.

    ``base`` lists frontier values for rows [0, H) (SF, VF) or
    [0, inf_from) (HF).  Extension beyond the base: SF adds period
    steps, VF repeats the last value, HF rows at or above ``inf_from``
    are fully black.
    """

    kind: str
    base: list
    period: tuple | None = None
    inf_from: int | None = None


@dataclass
class BeltCertificate:
    """Frontier descriptions for the planes of one net.

    The certified black set B is, per plane, all cells (m,n) with
    m <= fB(n) for the extended frontier fB.  A verified certificate's
    B is a simulation, so certified pairs truly satisfy p(m) <= q(n)
    in the simulation preorder.
    """

    height: int
    planes: dict = field(default_factory=dict)

    def frontier_at(self, plane: tuple, n: int):
        belt = self.planes.get(plane)
        if belt is None:
            return -1
        h = self.height
        if belt.kind == "HF":
            return INF if n >= belt.inf_from else belt.base[n]
        if n < h:
            return belt.base[n]
        if belt.kind == "VF":
            return belt.base[-1]
        px, py = belt.period
        k = -((h - 1 - n) // py)  # ceil((n - h + 1) / py)
        return belt.base[n - k * py] + k * px

    def covers(self, p: str, m: int, q: str, n: int) -> bool:
        f = self.frontier_at((p, q), n)
        return f == INF or m <= f


def build_certificate(colorings: dict, periods: dict) -> BeltCertificate:
    """Package frontiers and detected periods into a certificate.

    ``periods`` maps the SF planes to their detected vectors; planes
    with an infinity-candidate row become HF entries, everything else
    VF.  Deterministic: derived from the colorings alone.
    """
    height = None
    planes = {}
    for plane, col in sorted(colorings.items()):
        fr = frontier(col)
        h = fr.height
        if height is None:
            height = h
        elif height != h:
            raise NetError("colorings disagree on interior size")
        vals = fr.values
        if plane in periods:
            px, py = periods[plane]
            base = []
            for n, v in enumerate(vals):
                if v != INF:
                    base.append(int(v))
                    continue
                # Censored row: the black prefix fills the view, so the
                # frontier value is not observable; continue the period.
                if n - py < 0:
                    raise NetError(
                        f"plane {plane}: row {n} is fully black with no "
                        "earlier row one period below it")
                base.append(base[n - py] + px)
            planes[plane] = PlaneBelt("SF", base, period=(px, py))
        elif any(v == INF for v in vals):
            first = next(i for i, v in enumerate(vals) if v == INF)
            planes[plane] = PlaneBelt("HF", [int(v) for v in vals[:first]],
                                      inf_from=first)
        else:
            planes[plane] = PlaneBelt("VF", [int(v) for v in vals])
    return BeltCertificate(height, planes)


def _validate_certificate(net: Socn, cert: BeltCertificate) -> None:
    states = set(net.states)
    if not isinstance(cert.height, int) or cert.height < 1:
        raise MalformedCertificateError("height must be a positive integer")
    h = cert.height
    for plane, belt in cert.planes.items():
        p, q = plane
        if p not in states or q not in states:
            raise MalformedCertificateError(f"plane {plane} references unknown states")
        if belt.kind not in ("SF", "VF", "HF"):
            raise MalformedCertificateError(f"plane {plane}: unknown kind {belt.kind!r}")
        if belt.kind == "HF":
            if belt.inf_from is None or not 0 <= belt.inf_from <= h:
                raise MalformedCertificateError(f"plane {plane}: bad inf_from")
            if len(belt.base) != belt.inf_from:
                raise MalformedCertificateError(
                    f"plane {plane}: base length must equal inf_from")
        else:
            if len(belt.base) != h:
                raise MalformedCertificateError(
                    f"plane {plane}: base length must equal certificate height")
        if belt.kind == "SF":
            if (belt.period is None or len(belt.period) != 2
                    or belt.period[0] < 1 or belt.period[1] < 1):
                raise MalformedCertificateError(f"plane {plane}: period must be positive")
            if belt.period[1] > h:
                raise MalformedCertificateError(
                    f"plane {plane}: base too small to contain one full period")
        for v in belt.base:
            if not isinstance(v, int) or v < -1:
                raise MalformedCertificateError(f"plane {plane}: bad frontier value {v!r}")
        # Dominance closure: the extended frontier must be nondecreasing,
        # checked across the seam into the periodic regime.
        horizon = h + (belt.period[1] if belt.kind == "SF" else 1)
        prev = cert.frontier_at(plane, 0)
        for n in range(1, horizon + 1):
            cur = cert.frontier_at(plane, n)
            if (prev == INF and cur != INF) or (cur != INF and cur < prev):
                raise MalformedCertificateError(
                    f"plane {plane}: frontier decreases at row {n}")
            prev = cur


def _plane_slope(belt: PlaneBelt | None):
    if belt is None:
        return Fraction(0)
    if belt.kind == "SF":
        return Fraction(belt.period[0], belt.period[1])
    return Fraction(0)  # VF; HF targets are handled via infinite rows


def _plane_stab_row(belt: PlaneBelt | None, h: int) -> int:
    """Row from which the extended frontier is shift-covariant."""
    if belt is None:
        return 0
    if belt.kind == "SF":
        return h - belt.period[1]
    if belt.kind == "VF":
        return h - 1
    return belt.inf_from


def verify_certificate_explain(net: Socn, cert: BeltCertificate):
    """Closure check of the certified black set; returns (ok, failures).

    Finitely many checks suffice:

    * rows [0, H+L) per plane, where L is the lcm of the SF periods:
      for a finite frontier value only the frontier cell is checked
      (any cell left of it enables fewer attacker rules and the same
      defender response lands deeper inside B by dominance);
    * rows in the transfer window [H, H+L) additionally require the
      chosen response to be *stable*: it must land at or above the
      target plane's covariant regime with slope(target) >= slope(source)
      (or in an infinite row), which transports the check to every
      higher row since both frontiers then shift in lockstep;
    * infinite rows get a two-regime check: explicit small m up to the
      largest delta (transfers upward because membership at fixed m is
      monotone in n), plus, for unbounded m, a defender response into
      an infinite row of the target plane.
    """
    _validate_certificate(net, cert)
    failures = []
    h = cert.height
    lcm = 1
    for belt in cert.planes.values():
        if belt.kind == "SF":
            lcm = lcm * belt.period[1] // math.gcd(lcm, belt.period[1])
    horizon = h + lcm
    dmax = net.max_delta

    def in_b(p: str, m: int, q: str, n: int) -> bool:
        return n >= 0 and m >= 0 and cert.covers(p, m, q, n)

    for plane, belt in sorted(cert.planes.items()):
        p, q = plane
        slope = _plane_slope(belt)
        for n in range(horizon):
            f = cert.frontier_at(plane, n)
            if f == -1:
                continue
            if f == INF:
                # Small-m regime: explicit cells, transferring upward by
                # dominance since m stays fixed.
                for m in range(dmax + 1):
                    for ra in net.rules_from(p):
                        if m + ra.delta < 0:
                            continue
                        if not any(rd.action == ra.action
                                   and in_b(ra.to, m + ra.delta, rd.to, n + rd.delta)
                                   for rd in net.rules_from(q)):
                            failures.append(
                                f"plane {plane} row {n}: infinite row, m={m}, "
                                f"rule ({ra.frm},{ra.action},{ra.delta},{ra.to}) unanswered")
                # Large-m regime: every rule needs a response into an
                # infinite row of the target plane.
                for ra in net.rules_from(p):
                    ok = any(
                        rd.action == ra.action and n + rd.delta >= 0
                        and cert.frontier_at((ra.to, rd.to), n + rd.delta) == INF
                        for rd in net.rules_from(q))
                    if not ok:
                        failures.append(
                            f"plane {plane} row {n}: infinite row, large m, "
                            f"rule ({ra.frm},{ra.action},{ra.delta},{ra.to}) has no "
                            "response into an infinite row")
                continue
            in_window = n >= h
            for ra in net.rules_from(p):
                virtual = f + ra.delta
                if virtual < 0 and not (in_window and slope > 0):
                    # Disabled at the frontier cell; below the window that
                    # is final, inside it a growing frontier re-enables the
                    # rule at higher rows unless the plane is not growing.
                    continue
                answered = False
                for rd in net.rules_from(q):
                    if rd.action != ra.action or n + rd.delta < 0:
                        continue
                    tgt_plane = (ra.to, rd.to)
                    tgt_f = cert.frontier_at(tgt_plane, n + rd.delta)
                    if tgt_f != INF and virtual > tgt_f:
                        continue
                    if in_window:
                        tgt_belt = cert.planes.get(tgt_plane)
                        if tgt_f == INF:
                            stable = True
                        else:
                            stable = (n + rd.delta >= _plane_stab_row(tgt_belt, h)
                                      and _plane_slope(tgt_belt) >= slope)
                        if not stable:
                            continue
                    answered = True
                    break
                if not answered:
                    failures.append(
                        f"plane {plane} row {n}: frontier cell m={f}, rule "
                        f"({ra.frm},{ra.action},{ra.delta},{ra.to}) unanswered")
    return not failures, failures


def verify_certificate(net: Socn, cert: BeltCertificate) -> bool:
    """True iff the certified black set is closed under the game step."""
    ok, _ = verify_certificate_explain(net, cert)
    return ok


# ---------------------------------------------------------------------------
# Decision procedure


@dataclass
class SimDecision:
    """Outcome of decide_sim: "no" with the exact attacker rank, "yes"
    with a verified certificate, or "unknown" with diagnostics."""

    kind: str
    rank: int | None = None
    certificate: BeltCertificate | None = None
    diagnostics: dict = field(default_factory=dict)


def decide_sim(net: Socn, p: str, m: int, q: str, n: int,
               budget: int | None = None, view: int | None = None,
               rank_bound: int | None = None,
               cell_budget: int | None = None) -> SimDecision:
    """Does q(n) simulate p(m)?  Sound in both directions, else Unknown.

    The refutation direction searches the simulation game exactly up to
    ``budget`` rounds.  The positive direction colors the planes,
    classifies the frontiers, detects belt periods, and builds and
    verifies a periodic certificate; Yes only when the verified
    certificate covers the queried cell.
    """
    if p not in set(net.states) or q not in set(net.states):
        raise NetError("unknown state in query")
    if view is None:
        view = max(m, n) + 10
    if rank_bound is None:
        rank_bound = 2 * view
    if budget is None:
        budget = rank_bound
    if budget > 0:
        r = bounded_attacker_search(config_oracle(net), config_oracle(net),
                                    (Config(p, m), Config(q, n)), budget)
        if r is not None:
            return SimDecision("no", rank=r)
    diagnostics = {}
    colorings = color_planes(net, rank_bound, view, cell_budget=cell_budget)
    frontiers = {plane: frontier(col) for plane, col in colorings.items()}
    try:
        fits = classify_and_fit(frontiers)
    except UnstableFitError as exc:
        diagnostics["unstable_fit"] = str(exc)
        return SimDecision("unknown", diagnostics=diagnostics)
    diagnostics["fits"] = fits
    periods = {}
    for plane, fit in sorted(fits.items()):
        if fit.kind != "SF":
            continue
        period = detect_belt_period(colorings[plane], fit)
        if period is None:
            diagnostics["period_not_found"] = plane
            return SimDecision("unknown", diagnostics=diagnostics)
        periods[plane] = period
    diagnostics["periods"] = periods
    cert = build_certificate(colorings, periods)
    ok, failures = verify_certificate_explain(net, cert)
    if not ok:
        diagnostics["verification_failures"] = failures
        return SimDecision("unknown", diagnostics=diagnostics)
    if cert.covers(p, m, q, n):
        return SimDecision("yes", certificate=cert, diagnostics=diagnostics)
    diagnostics["uncovered"] = (p, m, q, n)
    return SimDecision("unknown", diagnostics=diagnostics)


# ---------------------------------------------------------------------------
# Vector travel


@dataclass
class TravelStep:
    plane: tuple
    start: tuple
    end: tuple
    white_rank: int
    action: str


@dataclass
class TravelResult:
    """Travel trace; ``mismatch_action`` names the unanswerable action
    when the final white end has rank 1."""

    steps: list
    mismatch_action: str | None = None


def trace_vector_travel(net: Socn, colorings: dict, plane: tuple,
                        start: tuple, end: tuple) -> TravelResult:
    """Walk a black-white vector to an axis with decreasing white ranks.

    At each step the attacker fixes a rule from the white end's left
    state whose every enabled response lands white with a smaller rank,
    and the defender answers it from the black start into a black
    candidate; both endpoints shift by the common rule offsets, landing
    in the defended plane.  The walk continues while one of the three
    side conditions holds (start off the vertical axis with the end off
    the horizontal axis, or the degenerate on-axis variants) and ends
    with the start on the vertical axis or the end on the horizontal
    axis.  Horizontal vectors end on the vertical axis, vertical ones
    on the horizontal axis.

    Stuck searches inside the exact interior are invariant breaches:
    for truly black starts the step lemma guarantees progress.
    """
    if not net.unary:
        raise NetError("vector travel requires a unary net")
    p, q = plane
    if (p, q) not in colorings:
        raise NetError(f"no coloring for plane {plane}")
    col = colorings[(p, q)]
    (m, n), (m2, n2) = start, end
    r0 = col.interior
    for x, y in (start, end):
        if not (0 <= x < r0 and 0 <= y < r0):
            raise NetError(f"cell ({x},{y}) outside the exact interior")
    if col.white[m, n] != 0:
        raise NetError(f"start cell {start} is not a black candidate")
    rank = int(col.white[m2, n2])
    if rank == 0:
        raise NetError(f"end cell {end} is not white")

    steps = []
    while True:
        keep_going = ((m > 0 and n2 > 0)
                      or (m > 0 and n == n2 == 0)
                      or (m == m2 == 0 and n2 > 0))
        if not keep_going:
            break
        attacker = None
        for ra in net.rules_from(p):
            if m2 + ra.delta < 0:
                continue
            responses = [rd for rd in net.rules_from(q)
                         if rd.action == ra.action and n2 + rd.delta >= 0]
            if all(0 < colorings[(ra.to, rd.to)].white[m2 + ra.delta, n2 + rd.delta] < rank
                   for rd in responses):
                attacker = ra
                break
        if attacker is None:
            raise InvariantError(
                f"no rank-reducing attacker rule at white ({p},{q})({m2},{n2}) rank {rank}")
        if m + attacker.delta < 0:
            raise InvariantError("attacker rule disabled at the black start")
        defender = None
        for rd in net.rules_from(q):
            if rd.action != attacker.action or n + rd.delta < 0:
                continue
            if colorings[(attacker.to, rd.to)].white[m + attacker.delta, n + rd.delta] == 0:
                defender = rd
                break
        if defender is None:
            raise InvariantError(
                f"black start ({p},{q})({m},{n}) has no black-preserving response "
                f"to action {attacker.action}")
        if n2 + defender.delta < 0:
            raise InvariantError("defender rule disabled at the white end")
        p, q = attacker.to, defender.to
        m, m2 = m + attacker.delta, m2 + attacker.delta
        n, n2 = n + defender.delta, n2 + defender.delta
        new_rank = int(colorings[(p, q)].white[m2, n2])
        if not 0 < new_rank < rank:
            raise InvariantError("white rank did not decrease")
        rank = new_rank
        steps.append(TravelStep((p, q), (m, n), (m2, n2), new_rank, attacker.action))

    mismatch = None
    if rank == 1:
        for ra in net.rules_from(p):
            if m2 + ra.delta < 0:
                continue
            if not any(rd.action == ra.action and n2 + rd.delta >= 0
                       for rd in net.rules_from(q)):
                mismatch = ra.action
                break
    return TravelResult(steps, mismatch_action=mismatch)
