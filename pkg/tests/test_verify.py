from __future__ import annotations

import numpy as np
import pytest

from trajadapt.core import (
    BlendMode,
    Scene,
    SceneObject,
    Trajectory,
    enforce_min_distance,
    resample,
    scale_speed_near,
    translate_blend,
    truncate_at_nearest,
)
from trajadapt.verify import (
    CHECK_TYPES,
    DirectionalShift,
    GoalDisplaced,
    GoalFixed,
    MaxSpeedWithin,
    MinClearance,
    MinSpeedWithin,
    ShapeSimilarity,
    Smoothness,
    SpeedIncreasedWithin,
    SpeedReducedWithin,
    StartFixed,
    StopsAtEnd,
    TruncatedNear,
    check_from_dict,
    evaluate,
)

from conftest import line_traj


def straight(n=21, v=1.0):
    return line_traj([(0, y, 0) for y in np.linspace(0, 20, n)], v=v)


BOX_SCENE = Scene((SceneObject("box", (2.0, 10.0, 0.0)),))


def test_goal_displaced_fails_on_identity():
    traj = straight()
    report = evaluate(traj, traj, Scene(), [GoalDisplaced((1, 0, 0), 20, 0.5)])
    assert not report.passed
    assert report.results[0].measured == pytest.approx(20.0)


def test_translate_then_both_displacement_checks_pass():
    traj = straight()
    adapted = translate_blend(traj, (20, 0, 0), BlendMode.UNIFORM)
    report = evaluate(
        traj,
        adapted,
        Scene(),
        [GoalDisplaced((1, 0, 0), 20, 0.5), DirectionalShift((1, 0, 0), 15)],
    )
    assert report.passed
    assert report.results[1].measured == pytest.approx(20.0)


def test_min_clearance_from_transform_postcondition():
    traj = straight()
    adapted = enforce_min_distance(traj, BOX_SCENE.objects[0].position, 10)
    report = evaluate(traj, adapted, BOX_SCENE, [MinClearance("box", 10, 1e-5)])
    assert report.passed


def test_stops_at_end_on_truncation():
    traj = straight()
    adapted = truncate_at_nearest(traj, BOX_SCENE.objects[0].position, 3)
    report = evaluate(
        traj, adapted, BOX_SCENE, [StopsAtEnd(1e-9), TruncatedNear("box", 1e-6)]
    )
    assert report.passed
    assert report.results[0].measured == 0.0


def test_identity_passes_conservation_fails_change_checks():
    traj = straight()
    checks = [
        StartFixed(1e-9),
        GoalFixed(1e-9),
        ShapeSimilarity(1e-6),
        DirectionalShift((1, 0, 0), 0.5),
        GoalDisplaced((1, 0, 0), 5, 0.5),
        SpeedReducedWithin("box", 8),
        SpeedIncreasedWithin("box", 8),
    ]
    report = evaluate(traj, traj, BOX_SCENE, checks)
    outcomes = [r.passed for r in report.results]
    assert outcomes == [True, True, True, False, False, False, False]
    assert not report.passed
    assert report.counts == (3, 7)


def test_unknown_label_is_config_error():
    traj = straight()
    with pytest.raises(ValueError, match="ghost"):
        evaluate(traj, traj, BOX_SCENE, [MinClearance("ghost", 1, 0)])


def test_speed_region_checks():
    traj = straight(v=2.0)
    center = BOX_SCENE.objects[0].position
    slowed = scale_speed_near(traj, center, 4, 0.25, False)
    report = evaluate(
        traj,
        slowed,
        BOX_SCENE,
        [
            SpeedReducedWithin("box", 4),
            MaxSpeedWithin("box", 3, 0.51),
            MinSpeedWithin("box", 3, 0.49),
        ],
    )
    assert report.passed, [r.to_dict() for r in report.results]


def test_vacuous_speed_region_fails():
    traj = straight()
    far_scene = Scene((SceneObject("box", (100.0, 100.0, 100.0)),))
    report = evaluate(
        traj,
        traj,
        far_scene,
        [MaxSpeedWithin("box", 1, 10), MinSpeedWithin("box", 1, 0), SpeedReducedWithin("box", 1)],
    )
    assert [r.passed for r in report.results] == [False, False, False]
    assert all(r.measured is None for r in report.results)


def test_resampling_decouples_from_waypoint_count():
    traj = straight()
    adapted = resample(translate_blend(traj, (5, 0, 0), BlendMode.UNIFORM), 173)
    report = evaluate(
        traj, adapted, Scene(), [DirectionalShift((1, 0, 0), 4.9), ShapeSimilarity(0.3)]
    )
    assert report.passed


def test_smoothness_check_uses_resampled_adapted():
    traj = straight()
    report = evaluate(traj, traj, Scene(), [Smoothness(0.01)])
    assert report.passed
    jagged_rows = traj.to_rows()
    jagged_rows[10][0] += 4.0  # a hard spike
    jagged = Trajectory.from_rows(jagged_rows)
    report = evaluate(traj, jagged, Scene(), [Smoothness(0.01)])
    assert not report.passed


def test_check_serialization_round_trip():
    specs = [
        StartFixed(1e-6),
        GoalDisplaced((0, 1, 0), 5, 0.1),
        MinClearance("box", 10, 0.001),
        ShapeSimilarity(0.25),
    ]
    for spec in specs:
        data = spec.to_dict()
        again = check_from_dict(data)
        assert again == spec
        assert again.to_dict() == data


def test_check_from_dict_rejects_bad_specs():
    with pytest.raises(ValueError, match="unknown check type"):
        check_from_dict({"type": "levitation"})
    with pytest.raises(ValueError, match="missing field"):
        check_from_dict({"type": "min_clearance", "label": "box", "d": 1})
    with pytest.raises(ValueError, match="dir"):
        check_from_dict({"type": "directional_shift", "dir": [0, 0, 0], "min_amount": 1})
    with pytest.raises(ValueError):
        check_from_dict({"type": "start_fixed", "tol": -1})


def test_all_registered_types_have_handlers():
    from trajadapt.verify import _HANDLERS

    assert set(CHECK_TYPES) == set(_HANDLERS)


def test_reference_transform_check_pairs_on_random_instances():
    # transforms paired with the check their postcondition guarantees,
    # evaluated on 200 random seeded (trajectory, scene) instances each
    from trajadapt.core import append_spiral, nearest_index, radial_rescale, smooth

    rng = np.random.default_rng(20240818)

    def random_case():
        n = int(rng.integers(4, 12))
        pos = rng.uniform(-10, 10, size=(n, 3))
        spd = rng.uniform(0.1, 3.0, size=n)
        traj = Trajectory.from_arrays(pos, spd)
        anchor = pos[int(rng.integers(0, n))] + rng.uniform(-1, 1, 3)
        scene = Scene((SceneObject("obj", tuple(anchor)),))
        return traj, scene

    pairs = [
        (
            lambda t, s: translate_blend(t, rng.uniform(-5, 5, 3), BlendMode.FIX_START),
            lambda t, s: [StartFixed(1e-9)],
        ),
        (
            lambda t, s: translate_blend(t, (0, 0, 3.5), BlendMode.UNIFORM),
            lambda t, s: [GoalDisplaced((0, 0, 1), 3.5, 1e-6)],
        ),
        (
            lambda t, s: enforce_min_distance(t, s.objects[0].position, 2.0),
            lambda t, s: [MinClearance("obj", 2.0, 1e-5)],
        ),
        (
            lambda t, s: truncate_at_nearest(t, s.objects[0].position, 2),
            lambda t, s: [StopsAtEnd(1e-9), TruncatedNear("obj", 1e-6)],
            # the truncated_near pairing holds only for interior cuts: a cut at
            # the very first waypoint keeps two points to stay a valid trajectory
            lambda t, s: nearest_index(t, s.objects[0].position)[0] >= 1,
        ),
        (
            lambda t, s: scale_speed_near(t, t.positions()[1], 2.0, 0.5, False),
            lambda t, s: [SpeedReducedWithin("obj", 1e9)],
        ),
        (
            lambda t, s: scale_speed_near(t, s.objects[0].position, 2.0, 4.0, True),
            lambda t, s: [MaxSpeedWithin("obj", 2.0, 4.0 + 1e-9), MinSpeedWithin("obj", 2.0, 4.0 - 1e-9)],
        ),
        (
            lambda t, s: radial_rescale(t, s.objects[0].position, 1.5, True),
            lambda t, s: [StartFixed(1e-9), GoalFixed(1e-9)],
        ),
        (
            lambda t, s: append_spiral(t, 1.5, 1.0, 8),
            lambda t, s: [GoalDisplaced((1, 0, 0), 1.5, 1e-6)],
        ),
        (
            lambda t, s: smooth(t, 3),
            lambda t, s: [StartFixed(1e-9), GoalFixed(1e-9)],
        ),
    ]
    for entry in pairs:
        transform, checks_for = entry[0], entry[1]
        admissible = entry[2] if len(entry) > 2 else (lambda t, s: True)
        done = 0
        attempts = 0
        while done < 200:
            attempts += 1
            assert attempts < 2000, "could not draw enough admissible cases"
            traj, scene = random_case()
            if not admissible(traj, scene):
                continue
            adapted = transform(traj, scene)
            report = evaluate(traj, adapted, scene, checks_for(traj, scene))
            assert report.passed, [r.to_dict() for r in report.results]
            done += 1
