import json
import math
from fractions import Fraction

import pytest

from polyface import files
from polyface.cli import main, parse_nats
from polyface.entropy import JointDistribution, matus_boundary_dist
from polyface.matroid import uniform

from conftest import U


@pytest.fixture
def wd(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
        return str(path)
    write.dir = tmp_path
    write("u23.json", {"n": 3, "circuits": [[1, 2, 3]]})
    write("u24.json", {"n": 4, "ranks": [min(2, bin(m).count("1")) for m in range(16)]})
    write("u11.json", files.rank_vector_to_dict(U(1, [1], 3)))
    write("u13.json", files.rank_vector_to_dict(U(1, [1, 2, 3], 3)))
    return write


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_rank_vector_round_trip():
    h = U(2, [1, 2, 3], 3).scale(Fraction(1, 3))
    assert files.vector_from_dict(files.rank_vector_to_dict(h)) == h


def test_matroid_round_trip(cat):
    for M in cat[::7]:
        assert files.matroid_from_dict(files.matroid_to_dict(M)) == M


def test_matroid_fields_must_agree():
    with pytest.raises(files.FormatError, match="disagree"):
        files.matroid_from_dict({"n": 3, "circuits": [[1, 2, 3]], "ranks": [0, 1, 1, 2, 1, 2, 2, 3]})
    with pytest.raises(files.FormatError, match="'circuits' or 'ranks'"):
        files.matroid_from_dict({"n": 3})


def test_distribution_round_trip():
    D = JointDistribution((2, 3), {(0, 0): "1/3", (1, 2): "2/3"})
    assert files.distribution_from_dict(files.distribution_to_dict(D)) == D


def test_certificate_round_trip():
    c = matus_boundary_dist(uniform(2, 3), 0b011, 3, 0.8)
    back = files.certificate_from_dict(json.loads(files.dump_json(files.certificate_to_dict(c))))
    assert back.valid and back.residual == pytest.approx(c.residual, abs=1e-15)
    assert (back.a, back.b, back.v) == (c.a, c.b, 3)


def test_tampered_certificate_fails():
    c = matus_boundary_dist(uniform(2, 3), 0b011, 2, 0.4)
    d = files.certificate_to_dict(c)
    d["point"]["a"] = 0.5
    assert not files.certificate_from_dict(d).valid


def test_parse_nats():
    assert parse_nats("ln:3") == math.log(3)
    assert parse_nats("0.25") == 0.25
    with pytest.raises(ValueError):
        parse_nats("ln:0")


def test_cli_face_dim(wd, capsys):
    d = wd.dir
    assert run(["face-dim", "--h1", f"{d}/u23.json", "--h2", f"{d}/u11.json"], capsys)[:2] == (0, "2\n")
    assert run(["face-dim", "--h", f"{d}/u23.json"], capsys)[:2] == (0, "1\n")


def test_cli_is_extreme_and_two_face(wd, capsys):
    d = wd.dir
    assert run(["is-extreme", "--h", f"{d}/u13.json"], capsys)[:2] == (0, "true\n")
    assert run(["is-extreme", "--h1", f"{d}/u23.json", "--h2", f"{d}/u11.json"], capsys)[0] == 1
    assert run(["is-two-face", "--h1", f"{d}/u23.json", "--h2", f"{d}/u11.json"], capsys)[0] == 0
    assert run(["is-two-face", "--h1", f"{d}/u23.json", "--h2", f"{d}/u13.json"], capsys)[0] == 1


def test_cli_check_polymatroid(wd, capsys):
    bad = wd("bad.json", {"n": 2, "values": ["0", "1", "1", "3"]})
    rc, out, _ = run(["check-polymatroid", "--h", bad], capsys)
    assert rc == 1 and "F(1;2|)" in out
    assert run(["check-polymatroid", "--h", f"{wd.dir}/u23.json"], capsys)[0] == 0


def test_cli_circuits(wd, capsys):
    rc, out, _ = run(["circuits", "--matroid", f"{wd.dir}/u24.json", "--format", "json"], capsys)
    data = json.loads(out)
    assert rc == 0 and len(data["circuits"]) == 4 and data["connected_after_loop_deletion"]


def test_cli_classify(wd, capsys):
    rc, out, _ = run(["classify", "--matroid", f"{wd.dir}/u23.json", "--alpha", "1,2"], capsys)
    assert rc == 0 and json.loads(out)["face_type"] == "Matus"
    rc, out, _ = run(["classify", "--matroid", f"{wd.dir}/u24.json", "--alpha", "1,2",
                      "--format", "text"], capsys)
    assert (rc, out) == (0, "ChenYeung\n")
    rc, out, _ = run(["classify", "--matroid", f"{wd.dir}/u23.json", "--alpha", "1,2,3"], capsys)
    assert rc == 1 and json.loads(out)["face_type"] == "Uncovered"


def test_cli_certify_and_verify(wd, capsys):
    out_path = str(wd.dir / "cert.json")
    rc, _, _ = run(["certify", "--matroid", f"{wd.dir}/u23.json", "--alpha", "1,2", "--v", "2",
                    "--a", "0.4", "-o", out_path], capsys)
    assert rc == 0
    data = json.loads(open(out_path).read())
    assert data["point"]["a"] == 0.4
    assert abs(data["point"]["b"] - (math.log(2) - 0.4)) < 1e-15
    assert data["residual"] < 1e-9
    rc, out, _ = run(["certify", "--verify", out_path, "--format", "text"], capsys)
    assert rc == 0 and out.startswith("valid")


def test_cli_certify_domain_failure(wd, capsys):
    rc, _, err = run(["certify", "--matroid", f"{wd.dir}/u24.json", "--alpha", "1,2,3",
                      "--v", "2", "--a", "0.3"], capsys)
    assert rc == 1 and "not certified" in err


def test_cli_region(wd, capsys):
    rc, out, _ = run(["region", "--matroid", f"{wd.dir}/u23.json", "--alpha", "1,2",
                      "--a-max", "ln:4"], capsys)
    lines = out.splitlines()
    assert rc == 0 and lines[0] == "label,kind,x1,y1,x2,y2"
    assert sum(",strip," in line for line in lines) == 3
    rc, out, _ = run(["region", "--matroid", f"{wd.dir}/u23.json", "--alpha", "1",
                      "--point", "ln:3,1.0", "--format", "text"], capsys)
    assert (rc, out) == (0, "Entropic\n")


def test_cli_deterministic(wd, capsys):
    argv = ["classify", "--matroid", f"{wd.dir}/u24.json", "--alpha", "1,2,3", "--certify"]
    first = run(argv, capsys)[1]
    assert run(argv, capsys)[1] == first


def test_cli_sweep(capsys):
    rc, out, _ = run(["sweep-catalog", "--max-n", "4"], capsys)
    assert rc == 0 and "FAIL" not in out and out.count("PASS") == 8


@pytest.mark.parametrize("content", ["{not json", "[1, 2]", '{"n": 3}',
                                     '{"n": 3, "circuits": [[1, 2], [2, 3, 1]]}',
                                     '{"n": 2, "ranks": [0, 2, 1, 2]}'])
def test_cli_malformed_input(wd, capsys, content):
    path = wd("m.json", content)
    rc, _, err = run(["circuits", "--matroid", path], capsys)
    assert rc == 2 and err.startswith("error:")


def test_cli_missing_file(capsys):
    assert run(["circuits", "--matroid", "/nonexistent.json"], capsys)[0] == 2
