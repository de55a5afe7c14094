"""Command line behavior: output shapes, exit codes, file handling."""

import json

import pytest

from hmalab.cli import main
from hmalab.states import parse_state_text

FREE_STATE = (
    "class: FREE\nalphabet: a,b\ndepth: 2\n"
    "a = T\nb = F\na.a = F\na.b = T\nb.a = F\nb.b = F\n"
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --------------------------------------------------------------- normalize


def test_normalize_default_class(capsys):
    code, out, _ = run(capsys, "normalize", "a && b")
    assert code == 0
    assert out == "(T <| b |> F) <| a |> F\n"


def test_normalize_st_with_order(capsys):
    code, out, _ = run(capsys, "normalize", "b && a", "-c", "st", "--order", "a,b")
    assert code == 0
    assert out == "(T <| b |> F) <| a |> (F <| b |> F)\n"


def test_normalize_order_rejected_outside_st(capsys):
    code, out, err = run(capsys, "normalize", "a", "--order", "a,b")
    assert code == 2
    assert "st" in err


def test_normalize_json(capsys):
    code, out, _ = run(capsys, "normalize", "a && b", "--output", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema_version"] == 1
    assert payload["normal_form"] == "(T <| b |> F) <| a |> F"


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "normalize", "a <| b |> c <| d |> e")
    assert code == 2
    assert "parse error" in err


def test_parse_error_json_goes_to_stdout(capsys):
    code, out, err = run(
        capsys, "normalize", "a <|", "--output", "json"
    )
    assert code == 2
    payload = json.loads(out)
    assert payload["exit_code"] == 2
    assert "parse error" in payload["error"]


# ------------------------------------------------------------------- equiv


def test_equiv_equivalent_exits_zero(capsys):
    code, out, _ = run(capsys, "equiv", "F && a", "F")
    assert code == 0
    assert "equivalent: yes" in out
    assert "method: oracle" in out


def test_equiv_inequivalent_exits_one(capsys):
    code, out, _ = run(capsys, "equiv", "a && F", "F")
    assert code == 1
    assert "equivalent: no" in out


def test_equiv_witness_inline(capsys):
    code, out, _ = run(capsys, "equiv", "a && F", "F", "--witness")
    assert code == 1
    assert "witness:" in out
    body = out.split("witness:\n", 1)[1]
    text = "\n".join(line.removeprefix("  ") for line in body.splitlines())
    state, probe = parse_state_text(text)
    assert state.congruence.value == "free"
    assert probe is not None


def test_equiv_witness_to_file(capsys, tmp_path):
    target = tmp_path / "separator.state"
    code, out, _ = run(capsys, "equiv", "a && F", "F", "--witness", str(target))
    assert code == 1
    assert f"witness written to {target}" in out
    state, probe = parse_state_text(target.read_text())
    assert probe is not None


def test_equiv_witness_silent_when_equivalent(capsys):
    code, out, _ = run(capsys, "equiv", "F && a", "F", "--witness")
    assert code == 0
    assert "witness" not in out


def test_equiv_guard_falls_back_to_canonical(capsys):
    deep = " && ".join(["a"] * 13)
    code, out, _ = run(capsys, "equiv", deep, deep)
    assert code == 0
    assert "method: canonical_form" in out


def test_equiv_profile(capsys):
    code, out, _ = run(capsys, "equiv", "(T <| a |> F) <| a |> F", "a", "--profile")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "free: no (both_agree)"
    assert lines[1] == "rp: no (both_agree)"
    assert lines[2] == "cr: yes (both_agree)"
    assert lines[5] == "st: yes (both_agree)"
    assert lines[6] == "equivalent under all classes: no"


def test_equiv_profile_json(capsys):
    code, out, _ = run(
        capsys, "equiv", "a", "a", "--profile", "--output", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["equivalent"] is True
    assert set(payload["profile"]) == {"free", "rp", "cr", "wm", "mem", "st"}


# -------------------------------------------------------------------- eval


def test_eval_reports_reply_and_post_state(capsys, tmp_path):
    state_file = tmp_path / "free.state"
    state_file.write_text(FREE_STATE)
    code, out, _ = run(capsys, "eval", "a && b", "--state", str(state_file))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "reply: T"
    assert lines[1] == "post-state:"
    assert "  class: FREE" in lines
    assert "  depth: 0" in lines


def test_eval_insufficient_depth(capsys, tmp_path):
    state_file = tmp_path / "free.state"
    state_file.write_text(FREE_STATE)
    code, _, err = run(
        capsys, "eval", "(a && b) && a", "--state", str(state_file)
    )
    assert code == 4
    assert "depth" in err


def test_eval_bad_state_file(capsys, tmp_path):
    state_file = tmp_path / "broken.state"
    state_file.write_text("class: FREE\nalphabet: a\ndepth: 1\na == T\n")
    code, _, err = run(capsys, "eval", "a", "--state", str(state_file))
    assert code == 3
    assert "bad state file" in err


def test_eval_missing_state_file(capsys, tmp_path):
    code, _, err = run(capsys, "eval", "a", "--state", str(tmp_path / "nope"))
    assert code == 3


# --------------------------------------------------------------------- trs


def test_trs_trace(capsys):
    code, out, _ = run(capsys, "trs", "--term", "T <| (T <| a |> F) |> F")
    assert code == 0
    assert out.splitlines() == [
        "pos=cond rule=CP3 w_before=4294967296 w_after=16",
        "pos=root rule=CP3 w_before=16 w_after=2",
        "normal form: a",
    ]


def test_trs_critical_pairs_cp(capsys):
    code, out, _ = run(capsys, "trs", "--critical-pairs")
    assert code == 0
    assert "pairs: 7" in out
    assert "all joinable: yes" in out
    assert out.count("joinable=yes") == 7


def test_trs_critical_pairs_cpt_json(capsys):
    code, out, _ = run(
        capsys, "trs", "--critical-pairs", "--system", "cpt", "--output", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["pair_count"] == 11
    assert payload["all_joinable"] is True


def test_trs_trace_json_weights_are_strings(capsys):
    code, out, _ = run(
        capsys, "trs", "--term", "T <| (T <| a |> F) |> F", "--output", "json"
    )
    payload = json.loads(out)
    assert payload["steps"][0]["w_before"] == "4294967296"
    assert payload["steps"][0]["pos"] == "cond"
    assert payload["steps"][1]["pos"] == "root"


# ------------------------------------------------------------------- count


def test_count_closed_forms(capsys):
    code, out, _ = run(capsys, "count", "--mem", "3")
    assert (code, out) == (0, "16430\n")
    code, out, _ = run(capsys, "count", "--core", "5")
    assert (code, out) == (0, "325\n")


def test_count_enumerate_mem(capsys):
    code, out, _ = run(capsys, "count", "--enumerate-mem", "a,b")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "count: 74 (matches recurrence)"
    assert len(lines) == 75
    assert "T" in lines and "F" in lines


def test_count_enumerate_mem_guard(capsys):
    code, _, err = run(capsys, "count", "--enumerate-mem", "a,b,c,d")
    assert code == 3
    assert "atoms" in err


def test_count_negative_rejected(capsys):
    code, _, err = run(capsys, "count", "--mem", "-1")
    assert code == 2


# ------------------------------------------------------------------ axioms


def test_axioms_lists_all_tables(capsys):
    code, out, _ = run(capsys, "axioms")
    assert code == 0
    for table_id in ("CP", "CPrp", "CPcr", "CPwm", "CPmem", "CPst"):
        assert f"table {table_id}\n" in out
    assert "  CP1: x <| T |> y = x" in out
    assert "  CP4: x <| (y <| z |> u) |> v = (x <| y |> v) <| z |> (x <| u |> v)" in out


def test_axioms_json(capsys):
    code, out, _ = run(capsys, "axioms", "--output", "json")
    payload = json.loads(out)
    names = [t["name"] for t in payload["tables"]]
    assert names == ["CP", "CPrp", "CPcr", "CPwm", "CPmem", "CPst"]
