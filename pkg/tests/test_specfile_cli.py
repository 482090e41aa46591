import json

import pytest

from qabn.cli import main
from qabn.errors import SpecParseError
from qabn.presets import PRESET_NAMES, all_presets, preset
from qabn.specfile import parse_spec_text, write_spec


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_preset_round_trip(name):
    spec = preset(name)
    assert parse_spec_text(write_spec(spec)) == spec


def test_all_presets_valid():
    assert set(all_presets()) == {"or_cycle", "fig5_text", "fig5_caption", "fig6", "fig7",
                                  "fig9_text", "fig9_caption", "fig1_classical"}


def test_spec_file_comments_and_steps():
    s = parse_spec_text("""
        # comment
        functions = OR:2   # trailing
        wiring = [ 0, 1, 2 ]
        input = ( 11 , 0 )
        steps = 4
    """)
    assert s.steps == 4 and s.network.wiring == (0, 1, 2)


@pytest.mark.parametrize("text,line", [
    ("functions = OR:2\nwiring = [0,1,2]\ninput = (1,0)", 3),
    ("functions = OR:2\nwiring = [0,1,1]\ninput = (11,0)", 2),
    ("functions = FOO:2\nwiring = [0,1,2]\ninput = (11,0)", 1),
    ("functions = OR:2\nbogus line\n", 2),
    ("\n\nsteps = -1\nfunctions = OR:2\nwiring = [0,1,2]\ninput = (11,0)", 3),
    ("cvar 0 = AND(0,1)\ncvar 0 = OR(0,0)", 2),
    ("functions = OR:2\nwiring = [0,1,2]", 1),
])
def test_spec_errors_have_lines(text, line):
    with pytest.raises(SpecParseError) as exc:
        parse_spec_text(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_or_cycle(capsys):
    code, out, _ = run_cli(capsys, "run", "--preset", "or_cycle", "--steps", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "step,value"
    assert [l.split(",")[1] for l in lines[1:]] == ["0"] * 5


def test_run_zero_steps(capsys):
    _, out, _ = run_cli(capsys, "run", "--preset", "fig7", "--steps", "0")
    assert out.strip().splitlines() == ["step,value", "0,0"]


def test_run_outputs(tmp_path, capsys):
    out, summ, rho = tmp_path / "im.csv", tmp_path / "s.json", tmp_path / "rho.csv"
    code, _, _ = run_cli(capsys, "run", "--preset", "fig5_caption", "--steps", "3", "--out", str(out),
                         "--summary", str(summ), "--rho-out", str(rho))
    assert code == 0
    assert len(out.read_text().splitlines()) == 5
    assert json.loads(summ.read_text())["final_norm"] == pytest.approx(1)
    rows = rho.read_text().splitlines()
    assert rows[0] == "step,qubit,rho00_re,rho01_re,rho01_im,rho11_re" and len(rows) == 1 + 4 * 5


def test_cycle_or(capsys):
    _, out, _ = run_cli(capsys, "cycle", "--preset", "or_cycle")
    d = json.loads(out)
    assert d["state_period"] == 2 and d["preperiod"] == 0 and d["iterative_agrees"]


def test_cycle_fig9_fast(capsys):
    code, out, _ = run_cli(capsys, "cycle", "--preset", "fig9_text")
    d = json.loads(out)
    assert code == 0 and d["state_period"] == 9300 and d["iterative_agrees"]


def test_frozen_fig7(capsys):
    _, out, _ = run_cli(capsys, "frozen", "--preset", "fig7")
    d = json.loads(out)
    assert d["frozen"] == [1, 5] and d["islands"] == [[0], [2, 3, 4], [6, 7]]
    assert d["qubit_names"][5] == "x3a"


def test_perturb_cli(capsys):
    _, out, _ = run_cli(capsys, "perturb", "--preset", "fig7", "--perturb-step", "11",
                        "--perturb-qubit", "0")
    d = json.loads(out)
    assert d["island_crossing"] and d["im_cycle_preserved"]
    assert d["first_divergence"]["0"] == 11


def test_spectrum_cli(capsys):
    _, out, _ = run_cli(capsys, "spectrum", "--preset", "fig5_caption", "--steps", "59")
    lines = out.strip().splitlines()
    assert lines[0] == "frequency,magnitude" and len(lines) == 1 + 31


def test_classical_cli(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    _, out, _ = run_cli(capsys, "classical", "--preset", "fig1_classical", "--dot", str(dot))
    assert json.loads(out)["attractors"] == [["000"], ["001", "010"], ["111"]]
    assert dot.read_text().startswith("digraph")
    _, out, _ = run_cli(capsys, "classical", "--ensemble", "8", "--samples", "20", "--seed", "3")
    assert json.loads(out)["samples"] == 20


def test_enumerate_cli(capsys):
    _, out, _ = run_cli(capsys, "enumerate", "--qubits", "9")
    d = json.loads(out)
    assert d["functions"]["1"]["count"] == 4 and d["functions"]["2"]["count"] == 16
    assert d["wirings"]["count"] == "362880" and "81" in d["wirings"]["note"]


def test_sweep_parallel_matches_serial(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(capsys, "sweep", "--seeds", "0:12", "--out", str(a))
    run_cli(capsys, "sweep", "--seeds", "0:12", "--workers", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 13


def test_write_cli(capsys):
    _, out, _ = run_cli(capsys, "write", "--preset", "fig7")
    assert parse_spec_text(out) == preset("fig7")


@pytest.mark.parametrize("cmd", [["run", "--steps", "30"], ["cycle"], ["frozen"], ["spectrum", "--steps", "40"]])
def test_byte_identical(tmp_path, capsys, cmd):
    outs = []
    for i in range(2):
        p = tmp_path / f"{i}.out"
        assert main(cmd + ["--preset", "fig7", "--out", str(p)]) == 0
        outs.append(p.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.spec"
    bad.write_text("functions = OR:2\nwiring = [0,1,2]\ninput = (1,0)\n")
    code, _, err = run_cli(capsys, "run", "--spec", str(bad))
    assert code == 2 and "line 3" in err
    assert run_cli(capsys, "run")[0] == 2
    assert run_cli(capsys, "run", "--spec", str(tmp_path / "missing.spec"))[0] == 2
    assert run_cli(capsys, "classical", "--preset", "fig7")[0] == 2
    assert run_cli(capsys, "classical", "--ensemble", "25")[0] == 3
    big = tmp_path / "big.spec"
    big.write_text("functions = " + ",".join(["AND:2"] * 8) + "\nwiring = [" +
                   ",".join(map(str, range(24))) + "]\ninput = " + "(00,0)" * 8 + "\n")
    assert run_cli(capsys, "cycle", "--spec", str(big))[0] == 3
