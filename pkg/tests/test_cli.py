import json
import subprocess
import sys

import pytest

from mdsconv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_csv_row(capsys):
    code, out, _ = run(capsys, "build", "--family", "thm_main", "--q", "16", "--i", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "family,q,n,k,gamma,memory,d_f,certificate,mds"
    assert lines[1] == "thm_main,16,17,13,2,1,7,exact,true"


def test_build_invalid_q(capsys):
    code, out, err = run(capsys, "build", "--family", "thm_main", "--q", "6", "--i", "1")
    assert code == 1 and "q must be 2^t, t ≥ 3" in err and out == ""


def test_bad_flags(capsys):
    assert run(capsys, "build", "--family", "thm_main")[0] == 1
    assert run(capsys, "build", "--family", "nope", "--q", "8", "--i", "1")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1


def test_quantum_substring(capsys):
    code, out, _ = run(capsys, "build", "--family", "thm_main1", "--q", "8", "--i", "2", "--no-search")
    assert code == 0
    assert '"quantum": {"n":65,"k":57,"m":1,"gamma":2,"d_f":7}' in out
    assert json.loads(out)["quantum"]["d_f"] == 7


def test_deterministic_output(capsys):
    args = ("build", "--family", "thm_mainI", "--q", "9", "--i", "3")
    a = run(capsys, *args)[1]
    b = run(capsys, *args)[1]
    assert a == b


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "thm_main", "--q-list", "8")
    assert code == 0 and len(out.strip().splitlines()) == 3
    code, out, _ = run(capsys, "enumerate", "--family", "thm_main1", "--q-list", "16", "--no-search",
                       "--format", "csv")
    rows = out.strip().splitlines()[1:]
    assert code == 0 and len(rows) == 5
    assert [r.split(",")[3] for r in rows] == ["249", "245", "241", "237", "233"]
    assert all(r.endswith(",pure-assumed,true") for r in rows)


def test_enumerate_errors(capsys):
    assert run(capsys, "enumerate", "--family", "thm_main", "--q-list", "")[0] == 1
    assert run(capsys, "enumerate", "--family", "thm_main", "--q-list", "x")[0] == 1
    code, out, _ = run(capsys, "enumerate", "--family", "thm_main", "--q-list", "6")
    assert code == 2 and json.loads(out)["status"] == "error"


@pytest.fixture
def exported(tmp_path, capsys):
    def make(*args):
        d = tmp_path / "out"
        code, _, _ = run(capsys, "build", *args, "--export-matrices", str(d))
        assert code == 0
        return d
    return make


def test_export_and_verify(exported, capsys):
    d = exported("--family", "thm_main", "--q", "8", "--i", "2")
    names = sorted(p.name for p in d.iterdir())
    assert names == ["G_V.txt", "G_dual.txt", "H_C.txt", "H_C1.txt", "H_C2.txt", "record.json"]
    code, out, _ = run(capsys, "verify", str(d / "record.json"))
    assert code == 0 and json.loads(out)["status"] == "ok"


def test_export_quantum_and_verify(exported, capsys):
    d = exported("--family", "thm_main1", "--q", "16", "--i", "2", "--no-search")
    assert (d / "X.txt").exists() and (d / "Z.txt").exists()
    code, out, _ = run(capsys, "verify", str(d / "record.json"))
    assert code == 0 and "symplectic" in json.loads(out)["checks"]


def _tamper(path, fn):
    d = json.loads(path.read_text())
    fn(d)
    path.write_text(json.dumps(d))


def test_verify_detects_tampering(exported, capsys):
    d = exported("--family", "thm_main", "--q", "8", "--i", "2")
    rec = d / "record.json"
    original = rec.read_text()

    def corrupt_v(x):
        lines = x["V"]["G"].splitlines()
        first = lines[0].split(", ")
        first[0] = "[5 5]" if first[0] != "[5 5]" else "[6 6]"
        lines[0] = ", ".join(first)
        x["V"]["G"] = "\n".join(lines)

    cases = [
        (corrupt_v, "orthogonality identity failed"),
        (lambda x: x["dual"]["d_f"].update(value=x["dual"]["d_f"]["value"] - 1), "witness weight mismatch"),
        (lambda x: x["dual"].update(k=6), "parameter mismatch"),
        (lambda x: x["block_codes"]["C2"].update(reps=[4, 3, 1]), "block parity matrix mismatch"),
        (lambda x: x.update(split=[3, 3]), "split identity failed"),
        (lambda x: x["verdicts"].update(mds=False), "bound equality failed"),
    ]
    for fn, msg in cases:
        rec.write_text(original)
        _tamper(rec, fn)
        code, out, _ = run(capsys, "verify", str(rec))
        assert code == 2, msg
        assert msg in json.loads(out)["error"], (msg, out)


def test_verify_quantum_tamper(exported, capsys):
    d = exported("--family", "thm_main1", "--q", "16", "--i", "2", "--no-search")
    rec = d / "record.json"
    _tamper(rec, lambda x: x["quantum"].update(d_f=6))
    code, out, _ = run(capsys, "verify", str(rec))
    assert code == 2


def test_verify_missing_file(capsys, tmp_path):
    assert run(capsys, "verify", str(tmp_path / "none.json"))[0] == 1


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "mdsconv", "build", "--family", "thm_main", "--q", "8",
                        "--i", "1", "--format", "csv", "--no-search"], capture_output=True, text=True)
    assert p.returncode == 0
    assert p.stdout.strip().splitlines()[1] == "thm_main,8,9,7,2,1,5,exact,true"
