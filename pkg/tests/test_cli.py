import subprocess
import sys

import pytest

from ubg.cli import main

HOSPITAL_CSV = """case_id,event_id,activities,t_min,t_max,indeterminate
ID327,e1,NightSweats,5,5,?
ID327,e2,PrTP|SecTP,8,8,!
ID327,e3,Splenomeg,4,10,!
ID327,e4,Adm,12,12,!
"""


@pytest.fixture
def hospital_csv(tmp_path):
    p = tmp_path / "h.csv"
    p.write_text(HOSPITAL_CSV)
    return p


@pytest.fixture
def dfg_csv(tmp_path, dfg_log):
    from ubg.logio import write_log

    p = tmp_path / "dfg.csv"
    write_log(dfg_log, p)
    return p


def test_validate(hospital_csv, tmp_path, capsys):
    assert main(["validate", str(hospital_csv)]) == 0
    bad = tmp_path / "bad.csv"
    bad.write_text(HOSPITAL_CSV + "ID327,e1,Adm,3,1,!\n")
    assert main(["validate", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "ID327" in err and "e1" in err
    assert main(["validate", str(tmp_path / "missing.csv")]) == 2


def test_build_both_algorithms(hospital_csv, tmp_path):
    assert main(["build", str(hospital_csv), "-o", str(tmp_path / "s")]) == 0
    assert main(["build", str(hospital_csv), "-o", str(tmp_path / "b"), "--algorithm", "baseline"]) == 0
    s = (tmp_path / "s" / "variant_0001.dot").read_bytes()
    assert s == (tmp_path / "b" / "variant_0001.dot").read_bytes()
    assert s.count(b"->") == 3
    report = (tmp_path / "s" / "variants.csv").read_text().splitlines()
    assert report == ["variant_index,multiplicity,num_events,num_edges", "1,1,4,3"]


def test_unknown_flag_is_error(hospital_csv, capsys):
    with pytest.raises(SystemExit) as err:
        main(["build", str(hospital_csv), "-o", "x", "--frobnicate"])
    assert err.value.code == 1


def test_help_lists_flags(capsys):
    with pytest.raises(SystemExit) as err:
        main(["generate", "--help"])
    assert err.value.code == 0
    out = capsys.readouterr().out
    for flag in ("--n", "--l", "--p", "--p-act", "--p-indet", "--seed", "--worst-case"):
        assert flag in out


def test_udfg(dfg_csv, tmp_path):
    prefix = tmp_path / "u"
    assert main(["udfg", str(dfg_csv), "-o", str(prefix)]) == 0
    rows = (tmp_path / "u.csv").read_text().splitlines()
    assert "a,b,80,100" in rows and "g,j,0,5" in rows
    assert '"a" -> "b" [label="[80, 100]"];' in (tmp_path / "u.dot").read_text()
    assert main(["udfg", str(dfg_csv), "-o", str(prefix), "--min-filter", "1", "--policy", "by_min"]) == 0
    kept = (tmp_path / "u.csv").read_text().splitlines()[1:]
    assert all(int(r.split(",")[2]) >= 1 for r in kept) and len(kept) == 9


def test_udfg_empty_and_skipped(tmp_path, capsys):
    empty = tmp_path / "e.jsonl"
    empty.write_text("")
    assert main(["udfg", str(empty), "-o", str(tmp_path / "e")]) == 0
    assert (tmp_path / "e.csv").read_text() == "source,target,min,max\n"
    wide = tmp_path / "w.csv"
    assert main(["generate", "-o", str(wide), "--n", "2", "--l", "5", "--p", "1", "--seed", "1"]) == 0
    assert main(["udfg", str(wide), "--max-events", "3"]) == 1
    assert "skipped case c0" in capsys.readouterr().err


def test_generate(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for p in (a, b):
        assert main(["generate", "-o", str(p), "--n", "100", "--l", "20", "--p", "0.5", "--seed", "7"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["generate", "-o", str(a), "--p", "1.5"]) == 1
    capsys.readouterr()
    assert main(["generate", "-o", str(a), "--n", "1", "--l", "1"]) == 0
    assert "seed=" in capsys.readouterr().out
    w = tmp_path / "w.csv"
    assert main(["generate", "-o", str(w), "--worst-case", "4"]) == 0
    assert main(["variants", str(w), "-o", str(tmp_path / "v.csv")]) == 0
    assert (tmp_path / "v.csv").read_text().splitlines()[1] == "1,1,8,16"


def test_realizations_and_export(hospital_csv, capsys):
    assert main(["realizations", str(hospital_csv), "--orders"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "# case ID327: 3" and "e3,e1,e2,e4" in out
    assert main(["realizations", str(hospital_csv), "--case", "nope"]) == 1
    capsys.readouterr()
    assert main(["export-dot", str(hospital_csv), "--case", "ID327"]) == 0
    assert "style=dashed" in capsys.readouterr().out


def test_bench_argument_errors(capsys):
    assert main(["bench", "--sweep", "bogus"]) == 1
    assert main(["bench", "--reps", "0"]) == 1


def test_bench_writes_footer(tmp_path):
    out = tmp_path / "b.csv"
    code = main(["bench", "--sweep", "l", "--l-values", "5,10", "--reps", "1", "-o", str(out)])
    text = out.read_text()
    assert text.startswith("sweep,param,value,baseline_s,improved_s,ratio\n")
    assert "# slope baseline=" in text
    assert code == (0 if "[FAIL]" not in text else 1)


def test_threads_env(monkeypatch, hospital_csv, tmp_path):
    monkeypatch.setenv("UBG_THREADS", "2")
    from ubg.cli import build_parser

    assert build_parser().parse_args(["validate", "x"]).threads == 2
    assert main(["build", str(hospital_csv), "-o", str(tmp_path / "t")]) == 0


def test_module_entry_point(hospital_csv):
    proc = subprocess.run([sys.executable, "-m", "ubg", "validate", str(hospital_csv)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("ok:")
