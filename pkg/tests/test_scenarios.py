import pytest

from dodecagrid.catalog import golden_tokens, load_golden_trace
from dodecagrid.engine import context_of, format_trace, trace_tokens
from dodecagrid.pentagrid import fibonacci_word
from dodecagrid.railway import Side, SwitchKind
from dodecagrid.rules import B, R, W, context_from_letters, minimal_context
from dodecagrid.scenarios import (
    LEFT_BRANCH,
    RIGHT_BRANCH,
    SCENARIOS,
    CrossingMode,
    build_bridge,
    build_corner,
    build_horizontal_segment,
    build_straight_element,
    build_switch,
    build_vertical_segment,
    crossing_start,
    drive_crossing,
    horizontal_exit_faces,
)

GOLDEN_NAMES = [name for name, e in SCENARIOS.items() if e.golden_name is not None]


def ctx(text):
    return context_from_letters(text.split())


def idle_context(kind, lat, cell):
    scenario = build_switch(kind, lat)
    return context_of(scenario.graph, scenario.initial, cell)


# --- track element templates -------------------------------------------------


def test_straight_template_milestones():
    template = build_straight_element((1, 3))
    assert template.blue == (2, 5, 6, 7)
    assert set(template.open_faces) == {1, 3}


def test_straight_variants_share_conservative_orbit():
    # whichever exit pair is used, the idle context canonicalizes identically
    base = minimal_context(ctx("W W W B W W B B B W W W W"))
    for pair in ((1, 3), (1, 4), (1, 8), (1, 10)):
        template = build_straight_element(pair)
        ports = template.ports({})
        neighbors = tuple(p.state for p in ports)
        assert minimal_context(ctx("W " + " ".join(s.letter for s in neighbors))) == base


def test_straight_rejects_corner_pair():
    with pytest.raises(ValueError):
        build_straight_element((1, 2))


def test_corner_template():
    template = build_corner()
    assert template.blue == (3, 5, 6, 7, 8, 10, 11)
    assert set(template.open_faces) == {1, 2}
    ports = template.ports({})
    assert ports[0].state is W  # the corner's back stays white


def test_corner_front_arrival_rule(catalog):
    template = build_corner()
    neighbors = [p.state for p in template.ports({})]
    neighbors[1] = B
    assert catalog.lookup(ctx("W " + " ".join(s.letter for s in neighbors))) is B


def test_template_rejects_link_on_closed_face():
    with pytest.raises(ValueError):
        build_corner().ports({5: 1})


# --- segments ----------------------------------------------------------------


def test_vertical_rejects_short():
    with pytest.raises(ValueError):
        build_vertical_segment(2)


def test_horizontal_rejects_short():
    with pytest.raises(ValueError):
        build_horizontal_segment(1)


def test_vertical_round_trip_to_idle(catalog):
    scenario = build_vertical_segment(7)
    trace = scenario.run(catalog, 10)
    final = trace.states_at(10)
    assert all(final[c] is W for c in scenario.segment_cells)


def test_vertical_reverse_runs(catalog):
    scenario = build_vertical_segment(7, forward=False)
    trace = scenario.run(catalog)
    first = trace.states_at(0)
    assert first[scenario.segment_cells[-1]] is R
    final = trace.states_at(trace.rows[-1][0])
    assert all(final[c] is W for c in scenario.segment_cells)


def test_horizontal_exit_sequence_follows_word():
    faces = horizontal_exit_faces(8)
    letters = "".join("a" if f == 4 else "b" for f in faces)
    assert letters == fibonacci_word(8)
    assert set(faces) == {4, 10}


def test_horizontal_node_kind_tags():
    scenario = build_horizontal_segment(6)
    kinds = scenario.meta["node_kinds"]
    assert all(kind == "black" for element, kind in kinds if element == "corner")
    straights = [kind for element, kind in kinds if element == "straight"]
    assert straights == ["white" if c == "a" else "black" for c in fibonacci_word(6)]


def test_horizontal_traverses_both_directions(catalog):
    for forward in (True, False):
        scenario = build_horizontal_segment(5, forward=forward)
        trace = scenario.run(catalog)  # EngineError here would mean a rule miss
        final = trace.states_at(trace.rows[-1][0])
        assert all(final[c] is W for c in scenario.segment_cells)


# --- bridge ------------------------------------------------------------------


def test_bridge_tracks_do_not_interact(catalog):
    for track in ("v0", "v1"):
        scenario = build_bridge(track)
        trace = scenario.run(catalog)
        other = scenario.meta["other_track"]
        for _, states in trace.rows:
            row = dict(zip(trace.cell_ids, states))
            assert all(row[c] is W for c in other)


def test_bridge_idle_restored_both_directions(catalog):
    for forward in (True, False):
        scenario = build_bridge("v1", forward=forward)
        final = scenario.run(catalog).states_at(scenario.default_steps)
        assert all(final[c] is W for c in scenario.segment_cells)


def test_bridge_rejects_unknown_track():
    with pytest.raises(ValueError):
        build_bridge("v2")


# --- switch graphs -----------------------------------------------------------


def test_memory_idle_contexts_match_conservative_rows():
    rows = {
        7: "W B W B W W B B B W W W B",
        12: "W R W B W W B B B W W W B",
        17: "B W W B W W W W W W R R R",
        18: "R W W W W W B W W R R W R",
        19: "B B W R B R R R R W W W R",
        20: "B B W R W W R R R R W B R",
        21: "R B W W W W W W W W R R R",
        22: "B B W W W W W W W W R R R",
    }
    for cell, expected in rows.items():
        assert idle_context(SwitchKind.MEMORY, Side.LEFT, cell) == ctx(expected), f"cell {cell}"


def test_memory_right_swaps_sensor_and_marker_colours():
    assert idle_context(SwitchKind.MEMORY, Side.RIGHT, 19) == ctx("B B W R R B R R R W W W R")
    assert idle_context(SwitchKind.MEMORY, Side.RIGHT, 20) == ctx("B B W R W W R R R B W R R")


def test_flipflop_sensor_ring_of_five():
    assert idle_context(SwitchKind.FLIPFLOP, Side.LEFT, 17) == ctx("B W W B W W W R R R R R B")
    assert idle_context(SwitchKind.FLIPFLOP, Side.LEFT, 18) == ctx("R W W W W W B R R R R R B")
    assert idle_context(SwitchKind.FLIPFLOP, Side.LEFT, 19) == ctx("B W W R B R R R R W W W R")


def test_fixed_switch_idle_contexts():
    assert idle_context(SwitchKind.FIXED, Side.LEFT, 20) == ctx("B W W R W W R R R R W B R")
    assert idle_context(SwitchKind.FIXED, Side.LEFT, 19) == ctx("W W W W W W W W W W W W W")
    scenario = build_switch(SwitchKind.FIXED, Side.LEFT)
    assert scenario.initial.states[19] is W


def test_fixed_right_rejected():
    with pytest.raises(ValueError):
        build_switch(SwitchKind.FIXED, Side.RIGHT)


def test_idle_switch_is_stationary(catalog):
    scenario = build_switch(SwitchKind.MEMORY, Side.LEFT)
    trace = scenario.run(catalog, 7)
    assert all(states == trace.rows[0][1] for _, states in trace.rows)


def test_flipflop_passive_rejected():
    scenario = build_switch(SwitchKind.FLIPFLOP, Side.LEFT)
    with pytest.raises(ValueError):
        crossing_start(scenario, CrossingMode.PASSIVE_SELECTED)


def test_crossing_start_positions():
    memory = build_switch(SwitchKind.MEMORY, Side.LEFT)
    assert crossing_start(memory, CrossingMode.ACTIVE) == {2: R, 3: B}
    assert crossing_start(memory, CrossingMode.PASSIVE_SELECTED) == {9: B, 10: R}
    assert crossing_start(memory, CrossingMode.PASSIVE_NONSELECTED) == {14: B, 15: R}
    right = build_switch(SwitchKind.MEMORY, Side.RIGHT)
    assert crossing_start(right, CrossingMode.PASSIVE_SELECTED) == {14: B, 15: R}


# --- golden runs -------------------------------------------------------------


@pytest.mark.parametrize("name", GOLDEN_NAMES)
def test_golden_trace_token_for_token(name, catalog):
    entry = SCENARIOS[name]
    got = trace_tokens(format_trace(entry.trace(catalog)))
    assert got == golden_tokens(entry.golden_name)


def test_golden_files_have_expected_shape():
    for name in GOLDEN_NAMES:
        trace = load_golden_trace(SCENARIOS[name].golden_name)
        assert trace.cell_ids == tuple(range(1, 23))
        assert [t for t, _ in trace.rows] == list(range(8))


# --- switch end-state semantics ----------------------------------------------


def final_row(name, catalog):
    trace = SCENARIOS[name].trace(catalog)
    return trace, trace.states_at(7)


def test_memory_nonselected_crossing_flips_switch(catalog):
    trace, final = final_row("memo-left-nonsel", catalog)
    right_idle = build_switch(SwitchKind.MEMORY, Side.RIGHT).initial
    assert {c: final[c] for c in range(17, 23)} == {c: right_idle.states[c] for c in range(17, 23)}
    at5 = trace.states_at(5)
    assert [at5[c].letter for c in range(17, 23)] == list("RBBBBR")


def test_memory_toggle_is_involution_at_state_level(catalog):
    # left --nonsel--> right pattern, and the right switch --nonsel--> left
    _, after_left = final_row("memo-left-nonsel", catalog)
    _, after_right = final_row("memo-right-nonsel", catalog)
    left_idle = build_switch(SwitchKind.MEMORY, Side.LEFT).initial
    right_idle = build_switch(SwitchKind.MEMORY, Side.RIGHT).initial
    mech = range(17, 23)
    assert {c: after_left[c] for c in mech} == {c: right_idle.states[c] for c in mech}
    assert {c: after_right[c] for c in mech} == {c: left_idle.states[c] for c in mech}


def test_memory_selected_crossing_keeps_switch(catalog):
    _, final = final_row("memo-left-sel", catalog)
    left_idle = build_switch(SwitchKind.MEMORY, Side.LEFT).initial
    assert {c: final[c] for c in range(17, 23)} == {c: left_idle.states[c] for c in range(17, 23)}


def test_flipflop_toggles_and_alternates_exits(catalog):
    trace_left, final_left = final_row("flipflop-left-active", catalog)
    trace_right, final_right = final_row("flipflop-right-active", catalog)
    assert (final_left[17], final_left[18]) == (R, B)  # now right-handed
    assert (final_right[17], final_right[18]) == (B, R)  # now left-handed
    # alternate exit tracks: first crossing leaves through 8.., second through 13..
    assert any(final_left[c] is not W for c in LEFT_BRANCH[1:])
    assert any(final_right[c] is not W for c in RIGHT_BRANCH[1:])


def test_fixed_switch_mechanism_unchanged_in_all_modes(catalog):
    for name in ("fixed-active", "fixed-sel", "fixed-nonsel"):
        trace = SCENARIOS[name].trace(catalog)
        first = trace.states_at(0)
        last = trace.states_at(7)
        assert all(first[c] == last[c] for c in range(17, 23)), name


def test_active_crossing_never_enters_nonselected_branch(catalog):
    guard_cells = {
        "memo-left-active": 13,
        "memo-right-active": 8,
        "fixed-active": 13,
        "flipflop-left-active": 13,
        "flipflop-right-active": 8,
    }
    for name, guard in guard_cells.items():
        trace = SCENARIOS[name].trace(catalog)
        assert all(s is W for s in trace.column(guard)), name


def test_drive_crossing_returns_eight_rows(catalog):
    scenario = build_switch(SwitchKind.MEMORY, Side.LEFT)
    trace = drive_crossing(scenario, CrossingMode.ACTIVE, catalog)
    assert len(trace.rows) == 8
    assert trace.cell_ids == tuple(range(1, 23))


def test_scenario_catalog_names():
    assert list(SCENARIOS) == [
        "vertical",
        "horizontal",
        "bridge",
        "memo-left-active",
        "memo-left-sel",
        "memo-left-nonsel",
        "memo-right-active",
        "memo-right-sel",
        "memo-right-nonsel",
        "fixed-active",
        "fixed-sel",
        "fixed-nonsel",
        "flipflop-left-active",
        "flipflop-right-active",
    ]
