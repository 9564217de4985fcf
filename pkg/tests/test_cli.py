import json

import pytest

from hzneck import cli, ramanujan, suites
from hzneck.series import RatPoly


def run(*argv):
    return cli.run(list(argv))


def test_documented_examples():
    assert run("ramanujan", "--n", "0", "--k", "6") == (0, "2\n")
    assert run("count-cohen", "--n", "0", "--k", "2", "--r", "2", "--m", "1") == (0, "5\n")
    assert run("count-cohen", "--n", "0", "--k", "2", "--r", "2", "--m", "1", "--brute") == (0, "5\n")
    status, _ = run("verify", "all", "--level", "smoke")
    assert status == 0


def test_polynomial_json_roundtrip():
    status, text = run("beta", "--k", "4", "--d", "2", "--output", "json")
    assert status == 0
    assert RatPoly.from_json(text) == RatPoly([0, 0, 1, -2])
    status, text = run("necklace", "--n", "1", "--k", "2", "--output", "json")
    assert RatPoly.from_json(text) == RatPoly.from_json('{"offset": 0, "coeffs": ["0/1", "-1/2", "1/2"]}')


def test_csv_output_uses_rational_strings():
    status, text = run("necklace", "--n", "1", "--k", "6", "--output", "csv")
    assert status == 0
    lines = text.splitlines()
    assert lines[0] == "exp,coeff" and "1,1/6" in lines


def test_cycle_index_json():
    status, text = run("cycle-index", "--k", "2", "--chi", "1", "--output", "json")
    data = json.loads(text)
    assert {(json.dumps(m["cycles"]), m["coeff"]) for m in data["monomials"]} == {
        ('{"1": 2}', "1/2"), ('{"2": 1}', "-1/2")}


def test_invalid_input_exit_code():
    assert run("count-linear", "--k", "6", "--b", "1", "--l", "4")[0] == 2
    assert run("verify", "dirichlet", "--which", "Q", "--n", "1", "--p", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run("ramanujan", "--n", "-1", "--k", "3")
    assert exc.value.code == 2


def test_inconclusive_exit_code():
    status, text = run("euler-char", "--punctured", "--max-genus", "5", "--cutoff", "9")
    assert status == 3


def test_euler_char_table_and_compare(tmp_path):
    status, text = run("euler-char", "--punctured", "--max-genus", "3", "--output", "json")
    assert status == 0
    data = json.loads(text)
    assert [row["g"] for row in data["table"]] == [1, 2, 3]
    assert all(row["stabilized"] for row in data["table"])
    ref = tmp_path / "ref.csv"
    ref.write_text("g,value\n1,1\n2,2\n")
    assert run("euler-char", "--punctured", "--max-genus", "3", "--compare", str(ref))[0] == 0
    ref.write_text("g,value\n1,1\n2,5\n")
    assert run("euler-char", "--punctured", "--max-genus", "3", "--compare", str(ref))[0] == 1


def test_closed_euler_char_csv():
    status, text = run("euler-char", "--closed", "--max-genus", "4", "--output", "csv")
    assert status == 0
    assert text.splitlines()[1].startswith("2,1/1,")


def test_dirichlet_report():
    status, text = run("verify", "dirichlet", "--which", "M", "--n", "4", "--p", "3",
                       "--t=-1/2", "--output", "json")
    assert status == 0
    report = json.loads(text)
    assert report["pass"] is True
    assert float(report["discrepancy"]) <= float(report["tail_bound"])


def test_dirichlet_fails_when_tolerance_unreachable():
    args = ["--which", "Q", "--n", "1", "--p", "3", "--K", "10", "--tol", "1e-12"]
    assert run("verify", "dirichlet", *args)[0] == 1
    assert run("dirichlet", *args)[0] == 0


def test_verify_packing():
    status, text = run("verify", "packing", "--k", "6", "--s", "2", "--output", "json")
    assert status == 0 and json.loads(text)["pass"]


def test_config_overrides(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("# shrink one grid\nkld.max_k = 3\n")
    status, text = run("verify", "all", "--suite", "kld", "--config", str(cfg), "--output", "json")
    assert status == 0
    assert json.loads(text)["suites"][0]["cells"] == 1 + 4 + 4
    cfg.write_text("no_such.key = 1\n")
    assert run("verify", "all", "--suite", "kld", "--config", str(cfg))[0] == 2


def test_seed_determinism():
    a = run("verify", "all", "--suite", "ramanujan_oracle", "--seed", "7", "--output", "json")
    b = run("verify", "all", "--suite", "ramanujan_oracle", "--seed", "7", "--output", "json")
    assert a == b


@pytest.fixture
def fresh_caches():
    ramanujan.cohen_c.cache_clear()
    yield
    ramanujan.cohen_c.cache_clear()


def test_injected_fault_flips_verify_all(monkeypatch, fresh_caches):
    real = ramanujan.ramanujan_c

    def faulty(n, k):
        return real(n, k) + (1 if (n, k) == (3, 9) else 0)

    monkeypatch.setattr(ramanujan, "ramanujan_c", faulty)
    status, text = run("verify", "all", "--level", "smoke", "--suite", "ramanujan_oracle",
                       "--suite", "multiplicative", "--output", "json")
    assert status == 1
    report = json.loads(text)
    oracle = next(s for s in report["suites"] if s["suite"] == "ramanujan_oracle")
    assert not oracle["pass"]
    assert {"n": 3, "k": 9} in [c["params"] for c in oracle["counterexamples"]]


def test_every_suite_detects_its_own_fault(monkeypatch, fresh_caches):
    real = ramanujan.ramanujan_c
    monkeypatch.setattr(ramanujan, "ramanujan_c", lambda n, k: real(n, k) + (k == 4 and n % 4 == 2))
    results = suites.run_all("smoke", only=["kld", "beta_necklace", "cycle_index", "linear_counts"])
    assert all(not r.passed for r in results)
