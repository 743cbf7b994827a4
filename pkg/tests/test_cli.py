import io
import json

import pytest

from glvoronoi.cli import load_config_file, main, parse_alphas


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


def test_kl_both_agree(capsys):
    code, reports = run_cli(["kl", "--k", "2", "--m", "1", "--q", "5"], capsys)
    assert code == 0
    assert reports[0]["verdict"] == "pass"
    assert reports[0]["abs_err"] <= 1e-10


def test_lemma_all(capsys):
    code, reports = run_cli(["lemma", "--all", "--nmax", "8"], capsys)
    assert code == 0
    assert len(reports) == 28
    assert all(r["verdict"] == "pass" for r in reports)


def test_chars_table(capsys):
    code, reports = run_cli(["chars", "--q", "5"], capsys)
    assert code == 0
    assert len(reports) == 4


def test_fe_subcommand(capsys):
    code, reports = run_cli(["fe", "--kind", "odd", "--n", "2", "--k", "1",
                             "--q", "5", "--a", "2", "--points", "5"], capsys)
    assert code == 0
    assert all(r["verdict"] == "pass" for r in reports)


def test_coeffs_hecke(capsys):
    code, reports = run_cli(["coeffs", "--n", "3", "--hecke-check",
                             "--q", "3", "--mmax", "50"], capsys)
    assert code == 0


def test_usage_errors(capsys):
    assert main(["kl", "--k", "2", "--m", "1", "--q", "6"]) == 2  # composite q
    assert main(["verify", "--n", "3", "--k", "3", "--q", "5"]) == 2  # k out of range
    assert main(["nonsense"]) == 2
    assert main(["verify", "--q", "5", "--a", "5"]) == 2  # (a, q) != 1
    assert main(["verify", "--sigma", "0.5", "--q", "5"]) == 2


def test_reports_have_schema(capsys):
    _, reports = run_cli(["kl", "--k", "3", "--m", "2", "--q", "7"], capsys)
    keys = {"check", "params", "lhs", "rhs", "correction", "abs_err",
            "rel_err", "verdict", "diagnostics"}
    assert set(reports[0]) == keys


def test_determinism(capsys):
    code1 = main(["fe", "--kind", "even", "--n", "2", "--points", "4",
                  "--seed", "9"])
    out1 = capsys.readouterr().out
    code2 = main(["fe", "--kind", "even", "--n", "2", "--points", "4",
                  "--seed", "9"])
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical


def test_config_file_merge(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nk = 2\nm = 1\n")
    code, reports = run_cli(["kl", "--q", "5", "--m", "3", "--k", "1",
                             "--config", str(cfg)], capsys)
    assert code == 0
    # explicit flags win over config values
    assert reports[0]["params"]["m"] == 3
    assert reports[0]["params"]["k"] == 1


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus_key = 3\n")
    assert main(["kl", "--q", "5", "--m", "1", "--k", "1",
                 "--config", str(cfg)]) == 2
    assert "bogus_key" in capsys.readouterr().err


def test_config_malformed_line(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("k = 2\nthis line has no equals\n")
    assert main(["kl", "--q", "5", "--m", "1", "--k", "1",
                 "--config", str(cfg)]) == 2
    assert ":2" in capsys.readouterr().err


def test_empty_config_means_defaults(tmp_path, capsys):
    cfg = tmp_path / "empty.cfg"
    cfg.write_text("")
    code, _ = run_cli(["kl", "--q", "5", "--m", "1", "--k", "2",
                       "--config", str(cfg)], capsys)
    assert code == 0


def test_parse_alphas():
    vals = parse_alphas("0,0.5;0,-0.5")
    assert vals == (0.5j, -0.5j)


def test_load_config_file_direct(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("q = 7  # inline comment\n")
    assert load_config_file(str(cfg), {"q"}) == {"q": "7"}
    with pytest.raises(ValueError, match="unknown config key"):
        load_config_file(str(cfg), {"k"})


def test_json_out_file(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    code = main(["kl", "--k", "2", "--m", "1", "--q", "5",
                 "--json", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1
    json.loads(lines[0])
