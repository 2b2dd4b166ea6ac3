import io

from barkoszul.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue().strip(), err.getvalue().strip()


def test_apply_psi_example():
    code, out, _ = run("apply", "psi", "1|v1*v2|v2^3|1")
    assert code == 0
    assert out == "(v2^3 | 1 | wedge(v1,v2)) + (v2^2 | v2 | wedge(v1,v2)) + (v2 | v2^2 | wedge(v1,v2))"


def test_apply_upsilon_symbolic():
    assert run("apply", "upsilon", "--form", "[h](f)^dv1^dv2", "--args", "v1,v2")[:2] == (0, "f*[h]")
    assert run("apply", "upsilon", "--form", "[h](f)^dv1^dv2", "--args", "v2,v1")[:2] == (0, "0")
    assert run("apply", "psistar", "--form", "[h](v3)^dv1^dv2", "--args", "v1,v2")[:2] == (0, "v3*[h]")


def test_apply_cochain_maps():
    assert run("apply", "dstar", "--form", "[1](v1)^dv1")[:2] == (0, "0")
    assert run("apply", "dstar", "--form", "[h]")[1] == "[h] (2*v1) ^ dv1 + [h] (2*v2) ^ dv2"
    assert run("apply", "dstar", "--form", "[h](f)")[1] == "[h] (2*v1)*f ^ dv1 + [h] (2*v2)*f ^ dv2"
    assert run("apply", "reynolds", "--form", "[1](v1)")[1] == "0"
    assert run("apply", "act", "--by", "g", "--form", "[h](v2)^dv1")[1] == "[h] (-v2) ^ dv1"
    assert run("apply", "phistar", "--form", "[h](v3)^dv1^dv2")[1] == "[h] (v3) ^ dv1 ^ dv2"
    assert run("apply", "phi", "1|1|wedge(v1,v2)")[1] == "(1 | v1 | v2 | 1) - (1 | v2 | v1 | 1)"
    assert run("apply", "homology", "[h] 1 | v1")[1] == "[h] (1) ^ v1"


def test_apply_on_other_groups():
    code, out, _ = run("apply", "upsilon", "--group", "cyclic-4-2d", "--form", "[g1]^dv1", "--args", "v1^2")
    assert code == 0 and out == "(z + 1)*v1*[g1]"


def test_error_codes():
    code, _, err = run("apply", "psi", "1|v1+|1")
    assert code == 2 and "column 6" in err
    assert run("verify", "--suite", "nosuch")[0] == 2
    assert run("verify", "--group", "nosuch")[0] == 2
    assert run("apply", "upsilon", "--form", "[q]^dv1", "--args", "v1")[0] == 2
    assert run("apply", "reynolds", "--form", "[h](f)")[0] == 2
    assert run("apply", "upsilon", "--form", "[h]^dv1", "--args", "v1,v2")[0] == 2
    assert run("apply", "psi", "1|v1|v2|v3|v1|v2|1", "--max-p", "4")[0] == 1


def test_verify_is_deterministic():
    args = ("verify", "--group", "klein4-3d", "--suite", "chainmap", "--max-p", "4", "--seed", "7", "--cases", "50")
    a, b = run(*args), run(*args)
    assert a == b and a[0] == 0
    assert "seed: 7" in a[1]


def test_dims_tables():
    code, out, _ = run("dims", "--g", "1", "--p", "1", "--D", "0", "--format", "rows")
    assert code == 0 and out.splitlines() == ["component,p,D,dim", "1,1,0,9"]
    code, out, _ = run("dims", "--p", "2:1")
    assert code == 0 and len(out.splitlines()) == 2
    code, out, _ = run("dims", "--invariant", "--p", "0:1", "--D=-1:0", "--format", "rows")
    assert code == 0 and "total,0,0,1" in out
    assert run("dims", "--p=-1:1")[0] == 2
    assert run("dims", "--g", "1", "--D", "9", "--max-block", "5")[0] == 2


def test_group_file(tmp_path):
    path = tmp_path / "c3.txt"
    path.write_text("dim 2; order_hint 3;\nz, 0\n0, z^2\n")
    code, out, _ = run("apply", "upsilon", "--group", str(path), "--form", "[g1]^dv1", "--args", "v1^2")
    assert (code, out) == (0, "(z + 1)*v1*[g1]")
    bad = tmp_path / "bad.txt"
    bad.write_text("dim 2; order_hint 3;\nz, 0\n")
    code, _, err = run("verify", "--group", str(bad))
    assert code == 2 and "line" in err
