import io
import json
import subprocess
import sys

import pytest

from cartankit import catalog
from cartankit.cli import run


def cli(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_invert_s3_5():
    code, out, err = cli("invert", "--name", "S3_5")
    assert code == 0 and err == ""
    assert out == "scale: 1/3\n-1 -3 -2\n-3 -3 -3\n-2 -3 -1\ndet: -3\n"


def test_invert_inline_and_no_scale():
    assert cli("invert", "2,-1;-1,2")[1] == "scale: 1/3\n2 1\n1 2\ndet: 3\n"
    assert cli("invert", "--no-scale", "2,-1;-1,2")[1] == "2/3 1/3\n1/3 2/3\ndet: 3\n"


def test_fields():
    assert cli("det", "--char", "3", "0,-1;-2,1")[1] == "1\n"
    code, out, _ = cli("invert", "--char", "3", "0,-1;-2,1")
    assert out == "1 1\n2 0\ndet: 1\n"
    code, out, _ = cli("det", "--funcfield", "a", "0,1,a;-1,2,-1;-1,-1,2")
    assert code == 0 and out == "3*a+3\n"
    code, out, _ = cli("det", "--funcfield", "a", "--base-char", "2", "a,1;1,a")
    assert out == "a^2+1\n"


def test_enumerate_ag2():
    code, out, _ = cli("enumerate", "--name", "ag2-1")
    assert code == 0
    assert out.splitlines()[0] == "members: 4"
    assert out.count("parities:") == 4


def test_enumerate_osp_orbit():
    assert cli("enumerate", "--name", "osp(4|2;alpha)-1")[1].startswith("members: 4")
    assert cli("enumerate", "--osp42-orbit", "--name", "osp(4|2;alpha)-1")[1].startswith("members: 2")


def test_reflect():
    code, out, _ = cli("reflect", "--root", "1", "--parities", "o,e", "0,-1;-1,2")
    assert code == 0 and out == "parities: o,o\n0 -1\n-1 0\n"
    code, out, _ = cli("reflect", "--raw", "--inverse", "--root", "1", "0,-1;-1,2")
    assert out == "parities: o,o\n0 1\n1 0\ninverse:\n0 1\n1 0\n"
    assert cli("reflect", "--root", "2", "0,-1;-1,2")[0] == 2


def test_verify_sec6():
    code, out, _ = cli("verify", "--catalog", "catalog/sec6.jsonl")
    assert code == 0
    assert out == "11/12 ok (1 on the exceptions list)\n"
    code, out, _ = cli("verify", "-v", "--catalog", "catalog/sec6.jsonl")
    assert "ab(3)-5: inverse_mismatch" in out and "[excepted]" in out


def test_verify_everything_and_exceptions():
    code, out, _ = cli("verify")
    assert code == 0 and out.strip().endswith("(4 on the exceptions list)")
    code, out, _ = cli("verify", "--exceptions")
    assert code == 0 and out == "5/5 ok\n"


def test_verify_failure_exit_code(tmp_path):
    rec = {"name": "broken", "family": "finite_char0", "characteristic": 0,
           "matrix": [["2", "-1"], ["-1", "2"]], "parities": "e,e", "expected_scale": "1/3",
           "expected_inverse": [["2", "-1"], ["1", "2"]]}
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps(rec) + "\n", encoding="utf-8")
    code, out, err = cli("verify", "--catalog", str(path))
    assert code == 1
    assert out == "broken: inverse_mismatch at (1,2)\n0/1 ok\n"
    assert err.startswith("error:")


def test_serial():
    code, out, _ = cli("serial", "--check", "Tn:3")
    assert code == 0
    assert out.splitlines()[-4:] == ["1 1 1", "1 2 2", "1 2 3", "elimination agrees: yes"]
    code, out, _ = cli("serial", "Sl_m0n:m=1,n=2")
    assert code == 0 and "inverse:" in out
    assert cli("serial", "Tn:0")[0] == 2
    assert cli("serial", "Wn:3")[0] == 2


def test_checks():
    code, out, _ = cli("check-lt", "2,-1,-1;-1,2,0;-1,0,2")
    assert code == 0 and out == "conditions: ok\ninverse entrywise positive: yes\n"
    code, out, _ = cli("check-lt", "1,-2;-2,1")
    assert code == 1 and out.startswith("conditions: fail")
    code, out, _ = cli("check-hyperbolic", "--name", "H3_93")
    assert code == 0 and out.startswith("hyperbolic: yes")
    code, out, _ = cli("check-hyperbolic", "2,-1,0;-1,2,-1;0,-1,2")
    assert code == 1 and out.startswith("hyperbolic: no")
    code, out, _ = cli("classify", "--name", "S3_4")
    assert out == ("all_nonpositive: True\nall_negative: False\nzeros_diagonal_only: True\n"
                   "zero at: (2,2)\n")


@pytest.mark.parametrize("argv", [
    ["invert"],
    ["invert", "--name", "S3_5", "2,-1;-1,2"],
    ["invert", "2,-1;-1,x"],
    ["invert", "2,-1;-1"],
    ["invert", "--name", "no-such-entry"],
    ["invert", "--matrix", "/nonexistent/file"],
    ["reflect", "--root", "1", "3,-1;-1,2"],
    ["frobnicate"],
    ["invert", "--char", "4", "1"],
    ["verify", "--catalog", "catalog/none.jsonl"],
    ["classify", "--char", "3", "1,0;0,1"],
])
def test_usage_errors(argv):
    code, out, err = cli(*argv)
    assert code == 2
    assert err


def test_math_errors():
    code, out, err = cli("invert", "1,2;2,4")
    assert code == 1 and out == "" and "singular" in err
    assert cli("enumerate", "--limit", "2", "--name", "ag(2)-1")[0] == 1


def test_matrix_file_and_stdin(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("2 -1\n-1 2\n", encoding="utf-8")
    assert cli("det", "--matrix", str(p))[1] == "3\n"
    assert cli("det", "--matrix", "-", stdin="2,-1\n-1,2\n")[1] == "3\n"


@pytest.mark.parametrize("name", ["S3_5", "ag(2)-3", "H4_12", "g(4,3)-5", "osp(4|2;alpha)-2",
                                  "NS3_85-4", "wk(4;a)-1"])
def test_invert_round_trip(name, tmp_path):
    e = catalog.find_entry(name)
    field = []
    if e.variable:
        field = ["--funcfield", e.variable, "--base-char", str(e.characteristic)]
    elif e.characteristic:
        field = ["--char", str(e.characteristic)]
    code, first, _ = cli("invert", "--name", name)
    assert code == 0
    p = tmp_path / "inv.txt"
    p.write_text(first, encoding="utf-8")
    code, second, _ = cli("invert", "--matrix", str(p), *field)
    assert code == 0
    from cartankit.matrix import content_split
    scale, N = content_split(e.matrix)
    want = ([f"scale: {e.field.render(scale)}"] if scale != 1 else []) + \
        [" ".join(r) for r in N.to_strings()]
    assert second.splitlines()[:-1] == want


def test_output_is_deterministic():
    for argv in (["enumerate", "--name", "g(4,3)-1"], ["verify", "-v"], ["invert", "--name", "H10_1"]):
        assert cli(*argv) == cli(*argv)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cartankit", "det", "2,-1;-1,2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "3\n"
    res = subprocess.run([sys.executable, "-m", "cartankit"], capture_output=True, text=True)
    assert res.returncode == 2
