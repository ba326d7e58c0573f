from __future__ import annotations

import json

import numpy as np
import pytest

from trajadapt.core import Scene, Trajectory
from trajadapt.llm import LlmConfig, MockTransport
from trajadapt.session import (
    APPROVED,
    AWAITING_LLM,
    FAILED,
    PROPOSED,
    InvalidStateError,
    SessionConfig,
    generate_proposal,
    new_session,
    save_session,
    start,
    submit_verdict,
)

from conftest import DATA_DIR, line_traj

FIXTURES = DATA_DIR / "fixtures"


def mock_transport(tmp_path=None, files=None):
    if files is None:
        return MockTransport(FIXTURES)
    for name, text in files.items():
        (tmp_path / name).write_text(text, encoding="utf-8")
    return MockTransport(tmp_path)


def make_traj(n=41):
    return line_traj([(0, i, 0) for i in np.linspace(0, 40, n)])


def config(repairs=1, max_iterations=8):
    return SessionConfig(
        llm=LlmConfig(transport="mock", fixtures_dir=str(FIXTURES)),
        auto_repair_budget=repairs,
        max_iterations=max_iterations,
    )


def test_start_with_valid_fixture_proposes():
    session = start(
        "Go left", Scene(), make_traj(), config(), transport=mock_transport(), fixture_id="go_left"
    )
    assert session.state == PROPOSED
    assert len(session.iterations) == 1
    it = session.iterations[0]
    assert it.proposal is not None
    assert it.outcome is not None and it.outcome.ok
    assert it.verdict == "pending"
    assert session.latest_plan() is not None


def test_malformed_fixture_with_zero_budget_fails(tmp_path):
    transport = mock_transport(tmp_path, {"bad.0.resp.txt": "no json here"})
    session = start(
        "Go left", Scene(), make_traj(), config(repairs=0), transport=transport, fixture_id="bad"
    )
    assert session.state == FAILED
    assert "parse" in session.error.lower() or "parsed" in session.error.lower()
    assert len(session.iterations) == 1


def test_auto_repair_recovers_on_second_fixture():
    session = start(
        "Go left",
        Scene(),
        make_traj(),
        config(repairs=1),
        transport=mock_transport(),
        fixture_id="repair_demo",
    )
    assert session.state == PROPOSED
    assert len(session.iterations) == 2
    assert session.iterations[0].verdict == "auto_repair"
    assert "name" in session.iterations[0].verdict_message
    # the repair round's prompt carries the execution error as feedback
    assert "EXECUTION ERROR:" in session.iterations[1].prompt


def test_parse_failure_repair_path():
    session = start(
        "Go left",
        Scene(),
        make_traj(),
        config(repairs=1),
        transport=mock_transport(),
        fixture_id="parse_fail_demo",
    )
    assert session.state == PROPOSED
    assert session.iterations[0].parse_error is not None
    assert session.iterations[0].outcome is None


def test_script_error_with_zero_budget_records_kind(tmp_path):
    text = json.dumps({"high_level_plan": "p", "code": "x = 1"})
    transport = mock_transport(tmp_path, {"s.0.resp.txt": text})
    session = start(
        "Go left", Scene(), make_traj(), config(repairs=0), transport=transport, fixture_id="s"
    )
    assert session.state == FAILED
    assert "missing_output" in session.error


def test_fixture_miss_fails_session():
    session = start(
        "Go left",
        Scene(),
        make_traj(),
        config(),
        transport=mock_transport(),
        fixture_id="nonexistent_sample",
    )
    assert session.state == FAILED
    assert "no fixture" in session.error
    assert session.iterations == []


def test_approve_locks_in_preview():
    session = start(
        "Go left", Scene(), make_traj(), config(), transport=mock_transport(), fixture_id="go_left"
    )
    preview = session.adapted_trajectory()
    submit_verdict(session, approve=True)
    assert session.state == APPROVED
    assert session.adapted_trajectory() == preview
    assert session.iterations[-1].verdict == "approved"


def test_second_verdict_is_invalid_state():
    session = start(
        "Go left", Scene(), make_traj(), config(), transport=mock_transport(), fixture_id="go_left"
    )
    submit_verdict(session, approve=True)
    with pytest.raises(InvalidStateError):
        submit_verdict(session, approve=True)


def test_feedback_loop_two_iterations():
    transport = mock_transport()
    session = start(
        "Go left",
        Scene(),
        make_traj(),
        config(),
        transport=transport,
        fixture_id="feedback_demo",
    )
    assert session.state == PROPOSED
    first_preview = session.adapted_trajectory()
    assert first_preview.waypoints[-1].x < 0  # wrong direction on purpose

    submit_verdict(
        session,
        approve=False,
        feedback="you moved it right; left is +X",
        transport=transport,
    )
    assert session.state == PROPOSED
    assert len(session.iterations) == 2
    second_prompt = session.iterations[1].prompt
    assert "you moved it right; left is +X" in second_prompt
    assert "Go left" in second_prompt
    assert session.adapted_trajectory().waypoints[-1].x > 0

    submit_verdict(session, approve=True)
    assert session.state == APPROVED
    assert [it.verdict for it in session.iterations] == ["feedback", "approved"]


def test_feedback_requires_text():
    session = start(
        "Go left", Scene(), make_traj(), config(), transport=mock_transport(), fixture_id="go_left"
    )
    with pytest.raises(ValueError):
        submit_verdict(session, approve=False, feedback="  ")


def test_original_never_mutated():
    traj = make_traj()
    rows = traj.to_rows()
    session = start(
        "Go left", Scene(), traj, config(), transport=mock_transport(), fixture_id="go_left"
    )
    submit_verdict(session, approve=True)
    assert session.original.to_rows() == rows


def test_iteration_cap_fails_closed(tmp_path):
    # every iteration errors; budget large enough to keep retrying past the cap
    text = json.dumps({"high_level_plan": "p", "code": "x = 1"})
    files = {f"s.{i}.resp.txt": text for i in range(10)}
    transport = mock_transport(tmp_path, files)
    session = start(
        "Go left",
        Scene(),
        make_traj(),
        SessionConfig(
            llm=LlmConfig(transport="mock", fixtures_dir=str(tmp_path)),
            auto_repair_budget=99,
            max_iterations=3,
        ),
        transport=transport,
        fixture_id="s",
    )
    assert session.state == FAILED
    assert len(session.iterations) == 3
    assert "iteration cap" in session.error


def test_replay_reproduces_iterations_byte_for_byte():
    transport = mock_transport()

    def run():
        session = start(
            "Go left",
            Scene(),
            make_traj(),
            config(),
            transport=transport,
            session_id="replay",
            fixture_id="feedback_demo",
        )
        submit_verdict(session, approve=False, feedback="left is +X", transport=transport)
        submit_verdict(session, approve=True)
        return json.dumps(session.to_dict(), sort_keys=True)

    assert run() == run()


def test_session_export_round_trip(tmp_path):
    session = start(
        "Go left", Scene(), make_traj(), config(), transport=mock_transport(), fixture_id="go_left"
    )
    submit_verdict(session, approve=True)
    out = tmp_path / "session.json"
    save_session(session, out)
    data = json.loads(out.read_text())
    assert data["state"] == APPROVED
    assert data["instruction"] == "Go left"
    assert data["iterations"][0]["verdict"] == "approved"
    assert data["iterations"][0]["adapted"]["waypoints"]
    assert Trajectory.from_dict(data["original"]) == session.original


def test_state_machine_transitions_random_verdicts():
    # brute: random verdict sequences only ever see the documented transitions
    rng = np.random.default_rng(7)
    transitions = set()
    for _ in range(25):
        transport = mock_transport()
        session = new_session(
            "Go left", Scene(), make_traj(), config(), fixture_id="feedback_demo"
        )
        state = session.state
        assert state == AWAITING_LLM
        generate_proposal(session, transport=transport)
        transitions.add((state, session.state))
        for _ in range(int(rng.integers(1, 4))):
            if session.state != PROPOSED:
                break
            state = session.state
            if rng.random() < 0.5:
                submit_verdict(session, approve=True)
            else:
                submit_verdict(session, approve=False, feedback="tweak", transport=transport)
                # feedback moves through awaiting_llm before the next proposal
                transitions.add((state, AWAITING_LLM))
                state = AWAITING_LLM
            transitions.add((state, session.state))
    allowed = {
        (AWAITING_LLM, PROPOSED),
        (AWAITING_LLM, FAILED),
        (PROPOSED, APPROVED),
        (PROPOSED, AWAITING_LLM),
    }
    assert transitions <= allowed


def test_generate_requires_awaiting_state():
    session = start(
        "Go left", Scene(), make_traj(), config(), transport=mock_transport(), fixture_id="go_left"
    )
    with pytest.raises(InvalidStateError):
        generate_proposal(session, transport=mock_transport())


def test_prompts_accumulate_all_feedback(tmp_path):
    text = json.dumps(
        {
            "high_level_plan": "1) shift left",
            "code": 't = get_trajectory()\nmodified_trajectory = translate_blend(t, [5, 0, 0], "fix_start")\n',
        }
    )
    transport = mock_transport(tmp_path, {f"s.{i}.resp.txt": text for i in range(3)})
    session = start(
        "Go left", Scene(), make_traj(), config(), transport=transport, fixture_id="s"
    )
    submit_verdict(session, approve=False, feedback="first correction", transport=transport)
    submit_verdict(session, approve=False, feedback="second correction", transport=transport)
    final_prompt = session.iterations[-1].prompt
    assert "first correction" in final_prompt
    assert "second correction" in final_prompt
    assert final_prompt.index("first correction") < final_prompt.index("second correction")
    assert "Go left" in final_prompt
