"""CLI subcommands, exit codes, determinism, env cap overrides."""

import io
import json
import pathlib

from chronosynth.cli import EXIT_CAP, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE, main

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_usage_error_exit_code():
    code, _, _ = run_cli("synth", str(FIXTURES / "psi_copy.json"))
    assert code == EXIT_USAGE
    code, _, _ = run_cli("no-such-command")
    assert code == EXIT_USAGE


def test_synth_copy_fv_realizable():
    code, out, _ = run_cli("synth", "--semantics", "fv", str(FIXTURES / "psi_copy.json"))
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["realizable"] is True
    assert data["witness"]


def test_synth_indet_unrealizable():
    code, out, _ = run_cli("synth", "--semantics", "fv", str(FIXTURES / "psi_indet_fv.json"))
    assert code == EXIT_OK
    assert json.loads(out)["realizable"] is False


def test_definable_jump_answers_no():
    code, out, _ = run_cli("definable", str(FIXTURES / "psi_jump_d.json"))
    assert code == EXIT_OK
    assert json.loads(out)["definable"] is False


def test_definable_copy_answers_yes():
    code, out, _ = run_cli("definable", str(FIXTURES / "psi_copy_d.json"))
    assert code == EXIT_OK
    assert json.loads(out)["definable"] is True


def test_monoid_one_state_counts():
    code, out, _ = run_cli("monoid", str(FIXTURES / "one_state.json"))
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["classes"] == 2
    assert data["d_Q"] == 2
    assert data["up_members"] == 1


def test_monoid_full_listing():
    code, out, _ = run_cli("monoid", "--full", str(FIXTURES / "one_state.json"))
    data = json.loads(out)
    assert data["representatives"] == ["q", "qq"]


def test_arena_dot_and_json():
    code, out, _ = run_cli("arena", "--semantics", "rc", "--dot", str(FIXTURES / "one_state.json"))
    assert code == EXIT_OK and out.startswith("digraph")
    code, out, _ = run_cli("arena", "--semantics", "fv", str(FIXTURES / "one_state.json"))
    data = json.loads(out)
    assert data["semantics"] == "fv"
    assert data["nodes"] and data["edges"]


def test_solve_discrete_machine_output(tmp_path):
    dot = tmp_path / "machine.dot"
    code, out, _ = run_cli("solve-discrete", str(FIXTURES / "predict_next.json"), "--dot", str(dot))
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["winner"] == "input"
    assert data["machine"]["kind"] == "moore_counter"
    assert dot.read_text().startswith("digraph")


def test_play_scripted_replay(tmp_path):
    script = tmp_path / "moves.txt"
    script.write_text("start 0\nlate 1\nlate 0\naccept\n")
    code, out, _ = run_cli(
        "play", "--semantics", "rc", "--script", str(script), str(FIXTURES / "psi_copy.json")
    )
    assert code == EXIT_OK
    assert "outcome: O wins (accepted_final)" in out
    assert "transcript:" in out
    # byte-identical on replay
    code2, out2, _ = run_cli(
        "play", "--semantics", "rc", "--script", str(script), str(FIXTURES / "psi_copy.json")
    )
    assert out == out2


def test_play_undecided_exit_code(tmp_path):
    script = tmp_path / "moves.txt"
    script.write_text("start 0\nlate 1\nlate 0\nlate 1\n")
    code, _, err = run_cli(
        "--round-cap", "2",
        "play", "--semantics", "rc", "--script", str(script), str(FIXTURES / "psi_copy.json"),
    )
    assert code == EXIT_UNDECIDED
    assert "undecided" in err


def test_play_unrealizable_spec_reports():
    code, out, _ = run_cli(
        "play", "--semantics", "fv", str(FIXTURES / "psi_indet_fv.json")
    )
    assert code == EXIT_OK
    assert "unrealizable" in out


def test_resource_cap_exit_code(monkeypatch):
    monkeypatch.setenv("CHRONOSYNTH_CAP_MONOID", "1")
    code, _, err = run_cli("synth", "--semantics", "fv", str(FIXTURES / "psi_copy.json"))
    assert code == EXIT_CAP
    assert "cap" in err
    monkeypatch.delenv("CHRONOSYNTH_CAP_MONOID")
    code, _, _ = run_cli("synth", "--semantics", "fv", str(FIXTURES / "psi_copy.json"))
    assert code == EXIT_OK


def test_output_determinism():
    args = ("synth", "--semantics", "fv", "--stats", str(FIXTURES / "psi_jump_fv.json"))
    assert run_cli(*args) == run_cli(*args)


def test_solve_discrete_run_lasso():
    code, out, _ = run_cli(
        "solve-discrete", str(FIXTURES / "predict_next.json"), "--run", "0(1)^w"
    )
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["run"]["output"] == "0(1)^w"
    assert data["run"]["input"]  # the counter machine's reply, as a lasso


def test_check_fixtures_passes():
    code, out, _ = run_cli("check-fixtures")
    assert code == EXIT_OK
    assert "all checks passed" in out
    assert out.count("ok ") >= 9
