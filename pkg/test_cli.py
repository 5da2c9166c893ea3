import io

import pandas as pd
import pytest

from covprior import __version__
from covprior.cli import EXIT_DOMAIN, EXIT_INPUT, EXIT_OK, build_parser, main, resolve_config
from covprior.records import DEFAULT_DATA, EvidenceSource, load_records, parse_records, serialize_records

HEADER = "id,label,sublabel,discovery_beta,discovery_se,replication_beta,replication_se\n"


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def _table(text, sep="\t"):
    return pd.read_csv(io.StringIO(text), sep=sep, dtype=str, keep_default_na=False, comment="#")


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_rank_table_markers(capsys):
    code, out = _run(capsys, "rank")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "# covprior {}".format(__version__)
    table = _table(out).set_index("id")
    assert len(table) == 17
    assert table.loc["CRP", "CP"] == "1.00*"
    assert table.loc["RORA", "dlogp"] == "--"
    assert table.loc["CRP", "BFDR"] == "1-1"
    assert table.loc["LEPR", "BFDR"] == "1-0"
    assert table.loc["SALL1", "BFDR"] == "0-0"
    assert table.loc["LEPR", "replication"] == "0.045 (0.009)"


def test_rank_is_byte_identical_across_runs(capsys):
    _, first = _run(capsys, "rank")
    _, second = _run(capsys, "rank")
    assert first == second


def test_rank_formats(capsys):
    _, md = _run(capsys, "rank", "--format", "md")
    assert md.startswith("<!-- covprior")
    assert "| CRP " in md

    _, csv = _run(capsys, "rank", "--format", "csv", "--no-header")
    assert csv.startswith("id,sublabel,")
    assert len(_table(csv, sep=",")) == 17


def test_rank_orders(capsys):
    code, out = _run(capsys, "rank", "--orders")
    assert code == EXIT_OK
    orders = _table(out)
    top = set(orders.loc[orders["top_set"] == "1", "id"])
    assert top == {"LEPR", "IL6R", "IL1F10"}
    cp = orders[orders["criterion"] == "CP"]
    assert set(cp["rank"].astype(int)) == set(range(1, len(cp) + 1))


def test_output_file(tmp_path, capsys):
    target = tmp_path / "table.tsv"
    code, out = _run(capsys, "rank", "-o", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("# covprior")


def test_classify_with_alpha_override(capsys):
    code, out = _run(capsys, "classify", "--alpha", "0.05")
    assert code == EXIT_OK
    table = _table(out).set_index("id")
    for cov_id in ("CRP", "APOC1", "HNF1A"):
        assert table.loc[cov_id, "CP"] == "I"
    assert set(table.columns) >= {"CP", "DLOGP", "LCL", "KL", "DE", "BF", "BFDR"}


def test_single_covariate(tmp_path, capsys):
    path = _write(tmp_path, "one.csv", HEADER + "LEPR,LEPR,rs4420065 (C),0.111,0.007,0.045,0.009\n")
    code, out = _run(capsys, "rank", "-i", path)
    assert code == EXIT_OK
    table = _table(out)
    assert list(table["id"]) == ["LEPR"]
    assert table.loc[0, "BFDR"] == "1-0"


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "no records"),
        (HEADER, "no records"),
        (HEADER + "A,A,x,0.1,0.01,0.1,0.01\nA,A,y,0.1,0.01,0.1,0.01\n", "duplicate id 'A'"),
        ("id,label,discovery_beta\nA,A,0.1\n", "missing required columns"),
        (HEADER + "A,A,x,0.1,0.01,abc,0.01\n", "line 2"),
        (HEADER + "A,A,x,0.1,0.01,0.1,-0.01\n", "replication_se"),
    ],
)
def test_bad_input_files(tmp_path, capsys, caplog, text, message):
    path = _write(tmp_path, "bad.csv", text)
    code, out = _run(capsys, "rank", "-i", path)
    assert code == EXIT_INPUT
    assert out == ""
    assert message in caplog.text


def test_input_file_not_utf8(tmp_path, capsys, caplog):
    path = tmp_path / "latin.csv"
    path.write_bytes(HEADER.encode("utf-8") + b"A\xff,A,x,0.1,0.01,0.1,0.01\n")
    code, out = _run(capsys, "rank", "-i", str(path))
    assert code == EXIT_INPUT
    assert out == ""
    assert "not UTF-8" in caplog.text


def test_missing_input_file(tmp_path, capsys):
    code, _ = _run(capsys, "rank", "-i", str(tmp_path / "absent.csv"))
    assert code == EXIT_INPUT


def test_config_file_and_flag_precedence(tmp_path):
    path = _write(tmp_path, "run.cfg", "# test\nalpha = 0.05\npi0 = 1e-4\n")
    args = build_parser().parse_args(["rank", "-c", path, "--alpha", "0.01"])
    config = resolve_config(args)
    assert config.criteria.alpha == 0.01
    assert config.criteria.pi0 == 1e-4
    assert config.criteria.delta == 0.03


def test_bundled_config_matches_defaults(tmp_path):
    from covprior.config import DEFAULT_CONFIG, RunConfig, load_config

    assert load_config(DEFAULT_CONFIG) == RunConfig()


@pytest.mark.parametrize(
    "text, message",
    [
        ("colour = blue\n", "unknown configuration key 'colour'"),
        ("alpha = lots\n", "line 1"),
        ("alpha = 2\n", "alpha"),
        ("alpha = 0.1\nalpha = 0.2\n", "duplicate key"),
        ("evidence_source = both\n", "evidence_source"),
    ],
)
def test_bad_config_files(tmp_path, capsys, caplog, text, message):
    path = _write(tmp_path, "bad.cfg", text)
    code, _ = _run(capsys, "rank", "-c", path)
    assert code == EXIT_INPUT
    assert message in caplog.text


def test_invalid_grid_is_a_domain_error(capsys):
    code, out = _run(capsys, "sweep-n", "--grid", "2000,1000")
    assert code == EXIT_DOMAIN
    assert out == ""


def test_sweep_n_one_point(capsys):
    code, out = _run(capsys, "sweep-n", "--grid", "16540", "--criterion", "cp")
    assert code == EXIT_OK
    table = _table(out)
    assert list(table.columns) == ["covariate_id", "axis_value", "criterion_value", "category"]
    assert len(table) == 17
    assert list(table["covariate_id"]) == sorted(table["covariate_id"])
    assert set(table["axis_value"]) == {"16540"}


def test_sweep_prior(capsys):
    code, out = _run(capsys, "sweep-prior", "--grid", "1e-16,1e-6,0.999999")
    assert code == EXIT_OK
    table = _table(out)
    assert len(table) == 17 * 3
    crp = table[table["covariate_id"] == "CRP"]
    assert list(crp["category"]) == ["II", "I", "I"]
    assert set(table.loc[table["axis_value"] == "0.999999", "category"]) == {"I"}


def test_min_n(capsys):
    code, out = _run(capsys, "min-n", "--target", "0.01", "--ids", "SALL1,RGS6")
    assert code == EXIT_OK
    table = _table(out).set_index("covariate_id")
    assert 21000 <= int(table.loc["SALL1", "sample_size"]) <= 23000
    assert table.loc["RGS6", "sample_size"] == "NA"
    assert table.loc["RGS6", "attainable"] == "0"


def test_min_n_unknown_id(capsys):
    code, _ = _run(capsys, "min-n", "--target", "0.01", "--ids", "NOPE")
    assert code == EXIT_INPUT


def test_pooled_evidence_source(capsys):
    _, replication = _run(capsys, "rank", "--no-header")
    code, pooled = _run(capsys, "rank", "--no-header", "--evidence_source", "pooled")
    assert code == EXIT_OK
    assert pooled != replication
    assert len(_table(pooled)) == 17


def test_records_round_trip(tmp_path):
    records = load_records()
    path = tmp_path / "copy.csv"
    serialize_records(records, path)
    assert load_records(path) == records
    assert parse_records(DEFAULT_DATA.read_text(encoding="utf-8")) == records

    pooled = load_records(path, EvidenceSource.POOLED)
    assert pooled[0].stage1.variance < records[0].stage1.variance
