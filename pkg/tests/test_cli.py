import json

from asailocal.cli import main
from asailocal.factors import factor_from_json


MU_JSON = '{"field":"E","conductor":1,"unit_part":["1/2"],"t":{"angle":"1/3"}}'
TRIV_F = '{"field":"F","conductor":0,"unit_part":[],"t":{"angle":"0"}}'


def test_tate_trivial(capsys):
    rc = main(["tate", "--field", '{"p":5}', "--char", "trivial"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    L = factor_from_json(out["L"])
    assert abs(L.eval(1) - 1.25) < 1e-12  # (1 - 1/5)^{-1}
    eps = factor_from_json(out["eps"])
    assert abs(eps.eval(0.5) - 1) < 1e-12


def test_tate_json_round_trip(capsys):
    rc = main(
        ["tate", "--field", '{"p":3,"ext":"ramified-p"}', "--char", MU_JSON]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    gamma = factor_from_json(out["gamma"])
    # the emitted table must match re-evaluation of the re-ingested factor
    for re_s, im_s, re_v, im_v in out["gamma_table"]:
        v = gamma.eval(complex(re_s, im_s))
        assert abs(v - complex(re_v, im_v)) < 1e-12


def test_asai_and_exit_codes(capsys):
    rc = main(
        [
            "asai",
            "--field",
            '{"p":3,"ext":"unramified"}',
            "--char",
            MU_JSON,
            "--char2",
            "trivial",
        ]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["galois_comparison"]["ok"]


def test_twisted_asai(capsys):
    tau = json.dumps(
        {
            "mu2": json.loads(TRIV_F),
            "nu2": json.loads(TRIV_F),
            "v2": [0.25, 0.1],
        }
    )
    rc = main(
        [
            "twisted-asai",
            "--field",
            '{"p":3,"ext":"ramified-p"}',
            "--char",
            MU_JSON,
            "--char2",
            "trivial",
            "--tau",
            tau,
        ]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["assemblies"]["ok"]


def test_dichotomy_cli(capsys):
    tau = json.dumps({"mu2": json.loads(TRIV_F), "nu2": json.loads(TRIV_F), "v2": 0})
    rc = main(
        [
            "dichotomy",
            "--field",
            '{"p":5,"ext":"unramified"}',
            "--char",
            "trivial",
            "--char2",
            "trivial",
            "--tau",
            tau,
        ]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["sign"] == "+1"


def test_arch_zeta_cli(capsys):
    rc = main(["arch-zeta", "--n1", "2", "--n2", "1", "--lam1", "0.1", "--lam2", "-0.05"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["case"] == 3 and out["ok"]


def test_malformed_input_exits_2(capsys):
    assert main(["tate", "--field", "not json", "--char", "trivial"]) == 2
    assert main(["tate", "--field", "{}", "--char", "trivial"]) == 2
    assert (
        main(["asai", "--field", '{"p":3}', "--char", "trivial", "--char2", "trivial"])
        == 2
    )


def test_supercuspidal_rejected(capsys):
    rc = main(
        [
            "asai",
            "--field",
            '{"p":3,"ext":"unramified"}',
            "--char",
            '{"supercuspidal": true}',
            "--char2",
            "trivial",
        ]
    )
    assert rc == 2
    assert "supercuspidal" in capsys.readouterr().err


def test_verify_single_suite(capsys):
    rc = main(["verify", "--suite", "combinatorial"])
    assert rc == 0
    assert "PASS" in capsys.readouterr().err


def test_precision_env_override(capsys, monkeypatch):
    monkeypatch.setenv("ASAI_PRECISION", "9")
    rc = main(["tate", "--field", '{"p":5}', "--char", "trivial"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["input"]["field"]["precision"] == 9


def test_out_file(tmp_path, capsys):
    target = tmp_path / "result.json"
    rc = main(["tate", "--field", '{"p":5}', "--char", "legendre", "--out", str(target)])
    assert rc == 0
    data = json.loads(target.read_text())
    eps = factor_from_json(data["eps"])
    assert abs(abs(eps.eval(0.5)) - 1) < 1e-10
