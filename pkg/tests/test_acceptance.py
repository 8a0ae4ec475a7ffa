"""End-to-end acceptance checks.

One test per shipped guarantee, each printing a visible PASS/FAIL line
with the measured numbers so a suite transcript doubles as a report.
"""

import math
import time

import pytest

import oracles
from peaceable.battle import Battle, counts, is_peaceful, swap_on
from peaceable.board import lines, make_board, parse_line
from peaceable.bounds_nlp import ModelKind, build_model, solve_multistart
from peaceable.constructions import (
    PLAID_RATIO,
    ainley,
    argyle,
    best_plaid,
    plaid,
)
from peaceable.exact import exact_value
from peaceable.rng import SplitMix64
from peaceable.svg import render_svg
from peaceable.swap_search import SearchConfig, run
from peaceable import boardfile

NLP_SEED = 20260816
NLP_STARTS = 8  # documented in README; every number below is at 8 starts


def _report(capsys, ok: bool, text: str) -> None:
    with capsys.disabled():
        print(f"{'PASS' if ok else 'FAIL'} {text}", flush=True)
    assert ok, text


def _plaid_window(m: int):
    half = m // 2
    lo_a = math.floor(PLAID_RATIO * m)
    lo_b = math.ceil(PLAID_RATIO * m)
    for a in range(max(1, lo_a - 2), min(half, lo_a + 2) + 1):
        for b in range(max(1, lo_b - 2), min(half, lo_b + 2) + 1):
            yield a, b


def test_construction_sweep(capsys):
    t0 = time.monotonic()
    bad = []
    for m in range(2, 201, 2):
        for a, b in _plaid_window(m):
            if not is_peaceful(plaid(m, a, b)).peaceful:
                bad.append(("plaid", m, a, b))
    for n in range(1, 202, 2):
        if not is_peaceful(argyle(n)).peaceful:
            bad.append(("argyle", n))
    for n in range(5, 101):
        if not is_peaceful(ainley(n)).peaceful:
            bad.append(("ainley", n))
    elapsed = time.monotonic() - t0
    ok = not bad and elapsed < 60.0
    _report(
        capsys, ok,
        f"construction sweep: plaid m<=200 (full window), argyle n<=201, "
        f"ainley n<=100 all peaceful in {elapsed:.1f}s"
        + (f"; failures {bad[:3]}" if bad else ""),
    )


def test_ainley_counts(capsys):
    c33 = counts(ainley(33))
    c48 = counts(ainley(48))
    floor48 = 7 * 48 * 48 // 48
    ok = c33.min == 158 and c48.min >= floor48
    _report(
        capsys, ok,
        f"ainley counts: n=33 min={c33.min} (want 158 exactly), "
        f"n=48 min={c48.min} (want >= {floor48})",
    )


def test_even_torus_density(capsys):
    t0 = time.monotonic()
    _, b1000 = best_plaid(1000)
    m1000 = counts(b1000).min
    _, b2000 = best_plaid(2000)
    ratio = counts(b2000).min / 2000**2
    limit = (2 - math.sqrt(3)) / 2
    elapsed = time.monotonic() - t0
    ok = m1000 >= 133900 and abs(ratio - limit) < 1e-3 and elapsed < 10.0
    _report(
        capsys, ok,
        f"even-torus density: best_plaid(1000) min={m1000} (>= 133900), "
        f"best_plaid(2000)/n^2 = {ratio:.6f} vs {limit:.6f} "
        f"(|diff|={abs(ratio - limit):.2e} < 1e-3), {elapsed:.1f}s",
    )


def test_odd_torus_density(capsys):
    t0 = time.monotonic()
    ratio = counts(argyle(2001)).min / 2001**2
    elapsed = time.monotonic() - t0
    ok = abs(ratio - 1 / 12) < 1e-3 and elapsed < 10.0
    _report(
        capsys, ok,
        f"odd-torus density: argyle(2001)/n^2 = {ratio:.6f} vs "
        f"{1 / 12:.6f} (|diff|={abs(ratio - 1 / 12):.2e} < 1e-3), {elapsed:.1f}s",
    )


def test_bound_model_optima(capsys):
    expectations = (
        (ModelKind.ODD_TORUS, 0.125, 1e-6),
        (ModelKind.EVEN_TORUS, 0.140132, 1e-4),
        (ModelKind.REGULAR, 0.171573, 1e-4),
    )
    rows = []
    ok = True
    for kind, want, tol in expectations:
        t0 = time.monotonic()
        report = solve_multistart(
            build_model(kind), seed=NLP_SEED, n_starts=NLP_STARTS
        )
        elapsed = time.monotonic() - t0
        got = report.best_objective
        here = report.feasible and abs(got - want) <= tol and elapsed <= 300.0
        if kind is ModelKind.REGULAR:
            here = here and abs(got - (3 - 2 * math.sqrt(2))) <= 1e-4
        ok = ok and here
        rows.append(
            f"{kind.value} {got:.9f} (want {want} +- {tol:g}, "
            f"{report.converged_starts}/{NLP_STARTS} converged, {elapsed:.1f}s)"
        )
    _report(
        capsys, ok,
        "bound models at seed %d: %s; regular also within 1e-4 of 3-2*sqrt(2)"
        % (NLP_SEED, "; ".join(rows)),
    )


def test_exact_solver(capsys):
    t0 = time.monotonic()
    ok = True
    notes = []
    for n in (1, 2, 3):
        for topology in ("grid", "torus"):
            got = exact_value(make_board(n, topology)).value
            want = oracles.brute_exact(topology, n)
            if got != want:
                ok = False
                notes.append(f"{topology} n={n}: {got} != brute {want}")
    a = {n: exact_value(make_board(n, "grid")).value for n in range(1, 9)}
    t = {n: exact_value(make_board(n, "torus")).value for n in range(1, 10)}
    if not (a[1] == a[2] == t[3] == 0):
        ok = False
        notes.append("small-board zeros missing")
    if any(a[n] < t[n] for n in range(1, 9)):
        ok = False
        notes.append("grid value fell below torus value")
    if any(a[n] > a[n + 1] for n in range(1, 8)):
        ok = False
        notes.append("grid values not non-decreasing")
    if not t[8] > t[9]:
        ok = False
        notes.append(f"expected torus 8 > torus 9, got {t[8]} vs {t[9]}")
    elapsed = time.monotonic() - t0
    _report(
        capsys, ok,
        f"exact solver: matches 3^(n^2) enumeration for n<=3; "
        f"grid {list(a.values())}, torus {list(t.values())}; "
        f"torus n=8 ({t[8]}) > n=9 ({t[9]}); {elapsed:.1f}s"
        + ("; " + "; ".join(notes) if notes else ""),
    )


def test_search_targets(capsys):
    budget = 60.0
    t13 = make_board(13, "torus")
    hits13 = sum(
        run(SearchConfig(board=t13, target=16, seed=s, time_budget=budget)
            ).reached_target
        for s in range(5)
    )

    g5 = make_board(5, "grid")
    optimum = exact_value(g5).value
    hits5 = sum(
        run(SearchConfig(board=g5, target=optimum, seed=s, time_budget=budget)
            ).reached_target
        for s in range(5)
    )

    battle = plaid(24, 6, 8)
    start = counts(battle)
    for name in ("col 3", "col 1", "row 1"):
        battle = swap_on(battle, parse_line(name))
    final = counts(battle)

    ok = (
        hits13 >= 1
        and hits5 >= 4
        and start == (84, 72, 72)
        and final == (74, 74, 74)
    )
    _report(
        capsys, ok,
        f"search targets: torus 13 min>=16 in {hits13}/5 seeds (need >=1), "
        f"grid 5 optimum {optimum} in {hits5}/5 seeds (need >=4), "
        f"scripted three-swap plaid(24,6,8) {tuple(start)} -> {tuple(final)} "
        f"(want (84, 72, 72) -> (74, 74, 74))",
    )


def test_torus_ceiling_evidence(capsys):
    """Evidence only: swapping away from the best plaid never gains more
    than 2 over its min in this budget.  Logged, never asserted."""
    walks, steps = 8, 60
    rows = []
    worst = 0
    covered = 0
    for m in range(2, 61, 2):
        covered += 1
        _, battle0 = best_plaid(m)
        base = counts(battle0).min
        board = battle0.board
        all_lines = list(lines(board))
        rng = SplitMix64(m)
        peak = base
        for _ in range(walks):
            b = battle0
            for _ in range(steps):
                if len(b.white) > len(b.black):
                    b = Battle(board, b.white, b.black)
                b = swap_on(b, all_lines[rng.next_below(len(all_lines))])
                peak = max(peak, counts(b).min)
        worst = max(worst, peak - base)
        if peak > base:
            rows.append(f"m={m}: {base}->{peak} (+{peak - base})")
    with capsys.disabled():
        print(
            f"INFO torus ceiling evidence ({walks} walks x {steps} swaps per "
            f"even m <= 60): largest gain over best-plaid min is +{worst}; "
            f"gains seen at [{', '.join(rows)}]",
            flush=True,
        )
    verdict = "consistent with" if worst <= 2 else "EXCEEDS"
    _report(
        capsys, covered == 30,
        f"torus ceiling harness ran for all even m <= 60 "
        f"(evidence logged above, not asserted; +{worst} {verdict} "
        f"the min+2 ceiling)",
    )


def test_determinism(capsys):
    config = dict(
        board=make_board(9, "torus"), target=81, seed=77, max_restarts=4
    )

    def stream():
        events = []
        run(SearchConfig(**config), progress_sink=events.append)
        return events

    streams_equal = stream() == stream()

    battle = ainley(12)
    svg1 = render_svg(battle)
    svg2 = render_svg(boardfile.parse(boardfile.serialize(battle)))
    svg_equal = svg1 == svg2 and render_svg(battle) == svg1

    ok = streams_equal and svg_equal
    _report(
        capsys, ok,
        f"determinism: identical configs replay identical event streams "
        f"({streams_equal}); SVG bytes stable across renders and a "
        f"save/load round trip ({svg_equal})",
    )


def test_runs_without_ui(capsys):
    import sys

    ui_modules = [m for m in sys.modules if m.startswith("frontend")]
    _report(
        capsys, not ui_modules,
        "library and this whole suite run with no UI built or loaded "
        f"(frontend modules in sys.modules: {ui_modules or 'none'})",
    )


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
