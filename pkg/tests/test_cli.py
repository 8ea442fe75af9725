from pathlib import Path

import pytest

from kindex.cli import main

from refdata import KRATING

DATA = Path(__file__).parent / "data"
FILTER_CORPUS = str(DATA / "corpus_filter.txt")
YEARLY_CORPUS = str(DATA / "corpus_yearly.txt")
BAD_CORPUS = str(DATA / "corpus_bad.txt")
KRATING_SUMMARY = str(DATA / "krating_summary.tsv")
NATSCI_SUMMARY = str(DATA / "natsci_top_sample.tsv")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_well_formed_corpus(self, capsys):
        code, out, err = run(capsys, "validate", FILTER_CORPUS)
        assert code == 0
        assert "12 publications" in out
        assert err == ""

    def test_dangling_citation_exits_1_naming_id(self, capsys):
        code, out, err = run(capsys, "validate", BAD_CORPUS)
        assert code == 1
        assert "GHOST" in err
        assert "line 2" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "validate", "/nonexistent/corpus.txt")
        assert code == 2
        assert err != ""


class TestMetrics:
    def test_summary_rows_match_reference_rating(self, capsys):
        code, out, _ = run(capsys, "metrics", "--summary", KRATING_SUMMARY,
                           "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        header = lines[0].split(",")
        rows = [line.split(",") for line in lines[1:]]
        assert len(rows) == len(KRATING)
        k_col = header.index("k_display")
        name_col = header.index("name")
        for row, (name, _cpd, _wfci, _kr, k_expected) in zip(rows, KRATING):
            assert row[name_col] == name
            assert int(row[k_col]) == k_expected

    def test_corpus_path_single_publication(self, tmp_path, capsys):
        corpus = tmp_path / "one.txt"
        corpus.write_text("type=pub\tpub_id=p1\tyear=2020\tauthors=solo\n")
        code, out, _ = run(capsys, "metrics", "--corpus", str(corpus),
                           "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 2
        header = lines[0].split(",")
        row = lines[1].split(",")
        assert row[header.index("h_index")] in ("0", "1")

    def test_author_filter_selects_one_row(self, capsys):
        code, out, _ = run(capsys, "metrics", "--corpus", FILTER_CORPUS,
                           "--author", "t", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 2
        assert lines[1].startswith("t,")

    def test_unknown_author_exits_1(self, capsys):
        code, _, err = run(capsys, "metrics", "--corpus", FILTER_CORPUS,
                           "--author", "nobody")
        assert code == 1
        assert "nobody" in err

    def test_both_inputs_rejected(self, capsys):
        code, _, _ = run(capsys, "metrics", "--corpus", FILTER_CORPUS,
                         "--summary", KRATING_SUMMARY)
        assert code == 2

    def test_plotdata_not_supported(self, capsys):
        code, _, err = run(capsys, "metrics", "--summary", KRATING_SUMMARY,
                           "--format", "plotdata")
        assert code == 2
        assert "plotdata" in err

    def test_config_changes_corpus_counts(self, tmp_path, capsys):
        config = tmp_path / "rules.cfg"
        config.write_text(
            "require_indexed_source=false\ndedupe_per_document=false\n"
            "exclude_self_citations=false\nexclude_close_associates=false\n"
            "one_per_author_per_source=false\nexclude_flagged=false\n"
        )
        _, strict_out, _ = run(capsys, "metrics", "--corpus", FILTER_CORPUS,
                               "--author", "t", "--format", "csv")
        _, raw_out, _ = run(capsys, "metrics", "--corpus", FILTER_CORPUS,
                            "--author", "t", "--format", "csv",
                            "--config", str(config))
        cit_strict = int(strict_out.strip().split("\n")[1].split(",")[3])
        cit_raw = int(raw_out.strip().split("\n")[1].split(",")[3])
        assert (cit_strict, cit_raw) == (5, 15)

    def test_out_writes_file(self, tmp_path, capsys):
        target = tmp_path / "rows.csv"
        code, out, _ = run(capsys, "metrics", "--summary", KRATING_SUMMARY,
                           "--format", "csv", "--out", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("author,")


class TestRank:
    def test_k_display_rank_on_reference_rating(self, capsys):
        code, out, _ = run(capsys, "rank", "--summary", KRATING_SUMMARY,
                           "--key", "k_display", "--format", "csv")
        assert code == 0
        rows = [line.split(",") for line in out.strip().split("\n")[1:]]
        assert rows[0][2] == "Konarov Aishuak"
        assert rows[0][3] == "58"
        assert rows[1][2] == "Zhautykov Bulat"
        assert rows[1][3] == "47"

    def test_h_rank_on_reference_sample(self, capsys):
        code, out, _ = run(capsys, "rank", "--summary", NATSCI_SUMMARY,
                           "--key", "h_index", "--format", "csv")
        assert code == 0
        top = out.strip().split("\n")[1].split(",")
        assert top[2] == "Myrzakulov Ratbay"
        assert top[3] == "48"

    def test_unknown_key_exits_2(self, capsys):
        code, _, _ = run(capsys, "rank", "--summary", KRATING_SUMMARY,
                         "--key", "fame")
        assert code == 2

    def test_plotdata_series(self, capsys):
        code, out, _ = run(capsys, "rank", "--summary", KRATING_SUMMARY,
                           "--key", "k_display", "--format", "plotdata")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "series\tx\ty"
        assert lines[1] == "k_display\t1\t58"


class TestCorrelate:
    def test_h_vs_fa_matches_direct_formula(self, capsys):
        code, out, _ = run(capsys, "correlate", NATSCI_SUMMARY,
                           "--x", "H", "--y", "FA", "--format", "csv")
        assert code == 0
        row = out.strip().split("\n")[1].split(",")
        assert row[:3] == ["H", "FA", "21"]
        assert float(row[3]) == pytest.approx(-0.5501, abs=1e-4)

    def test_self_correlation_is_one(self, capsys):
        code, out, _ = run(capsys, "correlate", NATSCI_SUMMARY,
                           "--x", "H", "--y", "H", "--format", "csv")
        assert code == 0
        assert float(out.strip().split("\n")[1].split(",")[3]) == 1.0

    def test_missing_column_exits_2(self, capsys):
        code, _, err = run(capsys, "correlate", NATSCI_SUMMARY,
                           "--x", "H", "--y", "NOPE")
        assert code == 2
        assert "NOPE" in err

    def test_constant_column_exits_1(self, tmp_path, capsys):
        table = tmp_path / "flat.tsv"
        table.write_text(
            "Author\tH\tDOC\tCIT\nA\t5\t10\t10\nB\t5\t20\t30\nC\t5\t30\t60\n"
        )
        code, _, err = run(capsys, "correlate", str(table), "--x", "H", "--y", "CIT")
        assert code == 1
        assert "undefined correlation" in err

    def test_plotdata_has_points_and_trend(self, capsys):
        code, out, _ = run(capsys, "correlate", NATSCI_SUMMARY,
                           "--x", "H", "--y", "FA", "--format", "plotdata")
        assert code == 0
        series = {line.split("\t")[0] for line in out.strip().split("\n")[1:]}
        assert series == {"points", "trend"}


class TestYearly:
    def test_23_year_fixture(self, capsys):
        code, out, _ = run(capsys, "yearly", YEARLY_CORPUS, "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 24
        first = lines[1].split(",")
        assert first[0] == "2000"
        assert first[3] == "3"      # two links, one with 2 mentions
        second = lines[2].split(",")
        assert second[4] == "1"     # one 2001 link is a self-citation

    def test_empty_corpus_header_only(self, tmp_path, capsys):
        empty = tmp_path / "empty.txt"
        empty.write_text("")
        code, out, _ = run(capsys, "yearly", str(empty), "--format", "csv")
        assert code == 0
        assert out.strip() == "year,doc,cited_doc,cit,self_cit,cit_per_doc"

    def test_corrupt_line_exits_1(self, tmp_path, capsys):
        corrupt = tmp_path / "corrupt.txt"
        corrupt.write_text("type=pub\tpub_id=p1\tyear=MCMXCIX\tauthors=a\n")
        code, _, err = run(capsys, "yearly", str(corrupt))
        assert code == 1
        assert "line 1" in err


class TestDeterminism:
    def test_metrics_byte_identical_across_runs(self, capsys):
        first = run(capsys, "metrics", "--summary", KRATING_SUMMARY)
        second = run(capsys, "metrics", "--summary", KRATING_SUMMARY)
        assert first == second
        assert first[0] == 0

    def test_commands_do_not_mutate_inputs(self, capsys):
        before = Path(KRATING_SUMMARY).read_bytes()
        run(capsys, "metrics", "--summary", KRATING_SUMMARY)
        run(capsys, "rank", "--summary", KRATING_SUMMARY)
        assert Path(KRATING_SUMMARY).read_bytes() == before


class TestPrecision:
    def test_precision_flag_controls_decimals(self, capsys):
        _, out_default, _ = run(capsys, "metrics", "--summary", KRATING_SUMMARY,
                                "--format", "csv")
        _, out_wide, _ = run(capsys, "metrics", "--summary", KRATING_SUMMARY,
                             "--format", "csv", "--precision", "4")
        row_default = out_default.strip().split("\n")[1].split(",")
        row_wide = out_wide.strip().split("\n")[1].split(",")
        assert row_default[4] == "51.83"
        assert row_wide[4] == "51.8300"
