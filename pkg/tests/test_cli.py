import csv
import json

from cellblocks import report, verify
from cellblocks.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_cells_command(capsys):
    code, doc = _run(capsys, "cells", "A2")
    assert code == 0
    assert doc["type"] == "A2"
    assert sorted(c["a_value"] for c in doc["cells"]) == [0, 1, 3]


def test_decomp_command(capsys):
    code, doc = _run(capsys, "decomp", "A1", "3", "2")
    assert code == 0
    assert doc["entries"] == [[1], [1]]
    assert doc["triangularity"]["a"]["ok"]
    assert doc["triangularity"]["cell"]["injection"] == {"M1": "2"}


def test_degrees_check_command(capsys):
    code, doc = _run(capsys, "degrees", "check", "(A1,id)", "5", "1,3,6")
    assert code == 0 and doc["ok"]
    assert all(r["members"] for r in doc["results"])
    code, doc = _run(capsys, "degrees", "check", "(A1,id)", "5", "7")
    assert code == 1 and not doc["ok"]


def test_degrees_check_twisted(capsys):
    code, doc = _run(capsys, "degrees", "check", "(C2,twisted)", "sqrt2^3",
                     "14,63", "--extended")
    assert code == 0 and doc["ok"]
    code, doc = _run(capsys, "degrees", "check", "(C2,twisted)", "sqrt2^3",
                     "63")
    assert code == 1  # t^4 - 1 lives only in the extended registry


def test_support_command(capsys):
    code, doc = _run(capsys, "support", "GL", "2", "3")
    assert code == 0
    by_degree = {}
    for row in doc["characters"]:
        by_degree.setdefault(row["degree"], set()).add(tuple(row["support"]))
    assert by_degree[1] == {(2,)}
    assert by_degree[3] == {(1, 1)}


def test_pseries_command(capsys):
    code, doc = _run(capsys, "pseries", "GL", "2", "3", "2")
    assert code == 0
    flags = {(f["dim"], f["in_principal_series"]) for f in doc["factors"]}
    assert flags == {(1, True), (2, False)}


def test_group_command(capsys):
    code, doc = _run(capsys, "group", "SL", "2", "3", "chars")
    assert code == 0
    assert doc["order"] == 24 and doc["degrees"] == [1, 1, 1, 2, 2, 2, 3]
    code, doc = _run(capsys, "group", "GL", "2", "3", "classes")
    assert code == 0 and sum(c["size"] for c in doc["classes"]) == 48


def test_verify_command_with_report(tmp_path, capsys):
    out_dir = tmp_path / "report"
    cfg = tmp_path / "cfg.toml"
    cfg.write_text(
        'types = ["A1"]\nq = [3]\nell = [2, 5]\nseed = 1\n'
        f'output = "{out_dir}"\ngroups = [["GL", 2, 3]]\n')
    code, doc = _run(capsys, "verify", "--config", str(cfg))
    assert code == 0
    assert doc["summary"]["ok"]
    assert (out_dir / "report.json").exists()
    assert (out_dir / "report.csv").exists()
    assert (out_dir / "decompositions.csv").exists()
    figs = list((out_dir / "figures").glob("*.png"))
    assert any(p.name.startswith("cells-") for p in figs)
    assert any(p.name.startswith("decomp-") for p in figs)
    with open(out_dir / "report.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["key", "check", "ok", "control", "violations"]
    assert all(r[2] == "1" for r in rows[1:])


def test_report_writer_without_figures(tmp_path):
    rep = verify.run_verification(types=("A1",), qs=(3,), ells=(2,),
                                  groups=())
    manifest = report.write_report(rep, str(tmp_path / "r"), figures=False)
    assert manifest["figures"] == []
    with open(manifest["json"]) as fh:
        doc = json.load(fh)
    assert doc["summary"]["ok"]
    with open(manifest["decomp_csv"]) as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "key" and len(rows) > 1
