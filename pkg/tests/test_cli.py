import json
from pathlib import Path


from heisenberg_sc.cli import main
from heisenberg_sc.fock import injected_fault

GOLDEN = Path(__file__).parent / "golden"


def write(tmp_path, data, name="in.json"):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return str(path)


def qv(A, B=None, Lambda=None):
    d = len(A)
    return {"d": d, "A": A, "B": B or [0] * d, "Lambda": Lambda or [0] * d}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_check_accepts_identity(tmp_path, capsys):
    code, out = run(capsys, "check", "--in", write(tmp_path, qv([[1, 0], [0, 1]])))
    assert code == 0
    data = json.loads(out)
    assert data["central_charge"] == "2" and data["routes_agree"]


def test_check_rejects_swap(tmp_path, capsys):
    code, out = run(capsys, "check", "--in", write(tmp_path, qv([[0, 1], [1, 0]])))
    assert code == 1
    assert json.loads(out)["failures"]


def test_check_malformed_json(tmp_path, capsys):
    assert run(capsys, "check", "--in", write(tmp_path, '{"d": 2, "A": [[1, 0], [0'))[0] == 64
    assert run(capsys, "check", "--in", write(tmp_path, {"d": 2, "A": [[1, 2], [0, 1]]}))[0] == 64
    assert run(capsys, "check", "--in", str(tmp_path / "missing.json"))[0] == 64


def test_check_route_disagreement_exit_code(tmp_path, capsys):
    path = write(tmp_path, qv([[1]]))
    with injected_fault():
        code, out = run(capsys, "check", "--in", path)
    assert code == 2
    assert json.loads(out)["routes_agree"] is False


def test_unknown_command_and_bad_flag(capsys):
    assert main(["frobnicate"]) == 64
    assert main(["poly", "--d", "x"]) == 64
    assert main(["poly", "--d", "2", "--lambda", "1"]) == 64
    capsys.readouterr()


def test_poly_golden_bytes(tmp_path, capsys):
    out = tmp_path / "poly.txt"
    assert main(["poly", "--d", "1", "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / "poly_d1_lambda0.txt").read_bytes()
    code, text = run(capsys, "poly", "--d", "2")
    assert code == 0 and len(text.splitlines()) == 8
    code, text = run(capsys, "poly", "--d", "1", "--lambda", "1")
    assert "2*a_1_1 - b_1" in text.splitlines()


def test_commutant_table_and_csv(tmp_path, capsys):
    path = write(tmp_path, qv([[1, 0], [0, 0]]))
    code, out = run(capsys, "commutant", "--in", path, "--degree-bound", "5")
    assert code == 0
    table = json.loads(out)["table"]
    assert [r["commutant"]["actual"] for r in table] == [1, 1, 2, 3, 5, 7]
    code, out = run(capsys, "commutant", "--in", path, "--degree-bound", "5", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n,dim_V,commutant")
    assert [int(line.split(",")[2]) for line in lines[1:]] == [1, 1, 2, 3, 5, 7]


def test_commutant_top_and_rank_two_of_three(tmp_path, capsys):
    code, out = run(capsys, "commutant", "--in", write(tmp_path, qv([[1, 0], [0, 1]])), "--degree-bound", "4")
    assert code == 0
    assert [r["commutant"]["actual"] for r in json.loads(out)["table"]] == [1, 0, 0, 0, 0]
    A = [[1, 0, 0], [0, 1, 0], [0, 0, 0]]
    code, out = run(capsys, "commutant", "--in", write(tmp_path, qv(A)), "--degree-bound", "5")
    assert code == 0 and json.loads(out)["tensor_identity_holds"]


def test_commutant_unsupported_lambda(tmp_path, capsys):
    path = write(tmp_path, qv([[1, 0], [0, 0]], B=[1, 0], Lambda=[1, 0]))
    assert run(capsys, "commutant", "--in", path)[0] == 65


def test_commutant_non_point_rejected(tmp_path, capsys):
    assert run(capsys, "commutant", "--in", write(tmp_path, qv([[0, 1], [1, 0]])))[0] == 1


def test_order(tmp_path, capsys):
    lo, hi = qv([[1, 0], [0, 0]]), qv([[1, 0], [0, 1]])
    code, out = run(capsys, "order", "--in", write(tmp_path, {"lo": lo, "hi": hi}))
    assert code == 0 and json.loads(out)["leq_direct"]
    half = qv([["1/2", "1/2"], ["1/2", "1/2"]])
    assert run(capsys, "order", "--in", write(tmp_path, {"lo": lo, "hi": half}))[0] == 1
    assert run(capsys, "order", "--in", write(tmp_path, {"lo": lo}))[0] == 64


def test_involution(tmp_path, capsys):
    code, out = run(capsys, "involution", "--in", write(tmp_path, qv([[1, 0, 0], [0, 0, 0], [0, 0, 0]])))
    assert code == 0
    data = json.loads(out)
    assert data["involution"]["rank"] == 2 and data["class"] == "maximal"


def test_chain(capsys):
    code, out = run(capsys, "chain", "--d", "3")
    assert code == 0
    data = json.loads(out)
    assert data["length"] == 3 and data["complete"]
    assert main(["chain"]) == 64


def test_orbit(tmp_path, capsys):
    payload = {"point": qv([[1, 0], [0, 0]]), "o": [["3/5", "-4/5"], ["4/5", "3/5"]]}
    code, out = run(capsys, "orbit", "--in", write(tmp_path, payload))
    assert code == 0
    data = json.loads(out)
    assert data["image"]["A"] == [["9/25", "12/25"], ["12/25", "16/25"]] and data["rank_preserved"]
    bad = {"point": qv([[1, 0], [0, 0]]), "o": [[1, 1], [0, 1]]}
    assert run(capsys, "orbit", "--in", write(tmp_path, bad))[0] == 64
    code, out = run(capsys, "orbit", "--d", "3", "--seed", "4")
    assert code == 0 and json.loads(out)["classes"] == 4
    code, out = run(capsys, "orbit", "--d", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "rank,class,A"


def _suite(tmp_path, name, *extra):
    out = tmp_path / name
    code = main(["verify-suite", "--d-max", "1", "--out", str(out), *extra])
    return code, out.read_bytes()


def test_verify_suite_is_bit_reproducible(tmp_path, capsys):
    c1, b1 = _suite(tmp_path, "a.json")
    c2, b2 = _suite(tmp_path, "b.json")
    capsys.readouterr()
    assert c1 == c2 == 0
    assert b1 == b2


def test_verify_suite_seed_variation_keeps_verdicts(tmp_path, capsys):
    _, b1 = _suite(tmp_path, "a.json", "--seed", "1")
    _, b2 = _suite(tmp_path, "b.json", "--seed", "2")
    capsys.readouterr()
    v1 = [c["passed"] for c in json.loads(b1)["criteria"]]
    v2 = [c["passed"] for c in json.loads(b2)["criteria"]]
    assert v1 == v2 and all(v1)


def test_verify_suite_injected_fault_fails(tmp_path, capsys):
    code, data = _suite(tmp_path, "f.json", "--inject-fault")
    capsys.readouterr()
    assert code != 0
    assert json.loads(data)["passed"] is False


def test_verify_suite_csv_with_timings(tmp_path, capsys):
    code, data = _suite(tmp_path, "s.csv", "--format", "csv", "--timings")
    capsys.readouterr()
    lines = data.decode().splitlines()
    assert code == 0 and lines[0] == "id,name,passed,seconds" and len(lines) == 11
