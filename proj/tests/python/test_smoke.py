import os
import pathlib

import trsdiamond as td

MACHINES = pathlib.Path(
    os.environ.get("TRSD_MACHINES", pathlib.Path(__file__).resolve().parents[2] / "machines")
)


def read(name):
    return (MACHINES / name).read_text()


def test_compile_emits_the_expected_rules():
    trs = td.compile_machine(read("halt1.tm"))
    assert trs.splitlines()[0] == "(VAR l r x xs y ys)"
    assert "  init -> st_s(nil,nil)" in trs
    assert "  st_e(x,y) -> term" in trs


def test_simulate_halting_and_cycling():
    halt = td.simulate(read("count3.tm"), 10)
    assert halt["status"] == "halted"
    assert halt["steps"] == 3
    assert halt["final_config"] == "e@3:0=one,1=one,2=one"

    loop = td.simulate(read("loop2.tm"), 10)
    assert loop["status"] == "cycled"
    assert loop["cycle"] == {"prefix": 0, "period": 2}


def test_encode_decode_round_trip():
    machine = read("count3.tm")
    term = td.encode_config(machine, "q1@1:0=one")
    assert term == "st_q1(cons(blank,cons(one,nil)),nil)"
    assert td.decode_term(machine, term) == "q1@0:-1=one"
    assert td.decode_term(machine, "term") is None


def test_reachable_closure_and_successors():
    trs = td.compile_machine(read("halt1.tm"))
    cone = td.reachable(trs, "init")
    assert cone["complete"]
    assert len(cone["terms"]) == 8
    assert "term" in cone["terms"]
    assert td.successors(trs, "init") == ["st_s(nil,nil)"]


def test_terminates_three_ways():
    assert td.terminates(read("halt1.tm"))["decision"] == "yes"
    no = td.terminates(read("loop2.tm"))
    assert no["decision"] == "no"
    assert no["cycle"] == {"prefix": 0, "period": 2}
    unknown = td.terminates(read("loop1.tm"), steps=200, terms=500)
    assert unknown["decision"] == "unknown"


def test_joinable_and_shape_checks():
    r2 = "(VAR )\n(RULES\n  b -> a\n  b -> c\n  a -> d\n  c -> d\n)\n"
    join = td.joinable(r2, ["a", "c"], "1,1")
    assert join["decision"] == "yes"
    assert join["witness"] == "d"

    holds = td.check_trs(r2, "local-confluence", ["a", "b", "c", "d"])
    assert holds["verdict"] == "holds"
    assert not holds["exact"]

    failed = td.check_trs(r2, "diamond", ["a", "b", "c", "d"])
    assert failed["verdict"] == "counterexample"
    assert failed["counterexample"]["peak"] == "a"


def test_check_machine_verdicts():
    assert td.check_machine(read("halt1.tm"), "diamond", cross_check=True)["verdict"] == "holds"
    report = td.check_machine(read("loop2.tm"), "local-confluence")
    assert report["verdict"] == "counterexample"
    assert report["exact"]
    assert report["counterexample"]["peak"] == "init"
    assert td.check_machine(read("loop1.tm"), "diamond", steps=200, terms=500)["verdict"] == "unknown"


def test_cli_in_process():
    code, out, err = td.run_command(
        ["check", "--machine", str(MACHINES / "loop2.tm"), "--shape", "successor"]
    )
    assert code == 1
    assert "verdict: counterexample (exact)" in out
    assert err == ""

    code, out, _ = td.run_command(["graph", "--help"])
    assert code == 0
    assert "--seed" in out


def test_export_graph_is_deterministic():
    trs = td.compile_machine(read("halt1.tm"))
    first = td.export_graph(trs, "init")
    assert first == td.export_graph(trs, "init")
    assert first.count(" -> ") == 9
    assert 'label="term"' in first


def test_named_shapes_table():
    assert dict(td.named_shapes()) == {
        "local-confluence": "*,*",
        "strong-confluence": "*,=",
        "diamond": "1,1",
        "subcommutative": "=,=",
        "successor": "1",
    }
