import csv
import filecmp
import json

import pytest

from triagesim import cli
from triagesim.synthetic import SyntheticSpec, generate_corpus

CONFIG_YAML = """\
boundary_date: 2024-01-06
device_tpf: 0.906
device_specificity: 0.899
"""


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    spec = SyntheticSpec(
        seed=5,
        n_days=10,
        readers_per_day=5,
        closures_per_reader_day=45,
        closure_mix=(0.15, 0.25, 0.60),
        boundary_day=5,
    )
    truth = generate_corpus(root, spec)
    (root / "config.yaml").write_text(CONFIG_YAML)
    return root, truth


@pytest.fixture(scope="module")
def params_file(corpus, tmp_path_factory):
    root, _ = corpus
    out = tmp_path_factory.mktemp("estimate")
    code = cli.main(
        [
            "estimate",
            "--exam-log",
            str(root / "exam_log.csv"),
            "--closure-log",
            str(root / "closure_log.csv"),
            "--config",
            str(root / "config.yaml"),
            "--out",
            str(out),
        ]
    )
    assert code == 0
    return out / "params.json"


def read_table(path):
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


class TestEstimate:
    def test_full_document(self, corpus, params_file):
        _, truth = corpus
        doc = json.loads(params_file.read_text())
        assert doc["missing"] == []
        assert doc["prevalence"] == pytest.approx(truth["expected"]["prevalence"], rel=1e-12)
        assert doc["device"]["tpf"] == 0.906
        assert doc["device"]["fpf_adjusted"] > 0
        assert doc["interarrival"]["work"]["mean"] == pytest.approx(2.17, rel=0.15)
        assert doc["read_time"]["pe_positive"]["n_readers"] >= 5
        assert doc["diagnostics"]["exam_log"]["n_excluded_negative_tat"] == 25

    def test_partial_without_closure_log(self, corpus, tmp_path):
        root, _ = corpus
        code = cli.main(
            ["estimate", "--exam-log", str(root / "exam_log.csv"), "--out", str(tmp_path)]
        )
        assert code == 0
        doc = json.loads((tmp_path / "params.json").read_text())
        assert doc["prevalence"] is None
        assert "prevalence" in doc["missing"]
        assert "device.tpf" in doc["missing"]
        assert doc["interarrival"]["work"] is not None

    def test_bad_header_exits_2(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("x,y\n1,2\n")
        assert cli.main(["estimate", "--exam-log", str(bad), "--out", str(tmp_path)]) == 2


class TestSweep:
    def run_sweep(self, params_file, out, extra=()):
        return cli.main(
            [
                "sweep",
                "--params",
                str(params_file),
                "--interarrival",
                "2.5,14",
                "--radiologists",
                "1,4",
                "--trials",
                "3",
                "--patients",
                "2000",
                "--out",
                str(out),
                *extra,
            ]
        )

    def test_rows_and_feasibility(self, params_file, tmp_path):
        assert self.run_sweep(params_file, tmp_path) == 0
        rows = read_table(tmp_path / "sweep.csv")
        assert len(rows) == 4
        by_key = {(r["interarrival"], r["n_radiologists"]): r for r in rows}
        infeasible = by_key[("2.5", "1")]
        assert infeasible["feasible"] == "false"
        assert infeasible["mean_savings"] == ""
        feasible = by_key[("14", "4")]
        assert feasible["feasible"] == "true"
        assert float(feasible["mean_savings"]) == float(feasible["mean_savings"])
        meta = json.loads((tmp_path / "sweep_meta.json").read_text())
        assert meta["seed"] == 42 and meta["n_trials"] == 3

    def test_byte_identical_reruns_and_workers(self, params_file, tmp_path):
        a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
        assert self.run_sweep(params_file, a) == 0
        assert self.run_sweep(params_file, b) == 0
        assert self.run_sweep(params_file, c, extra=("--workers", "3")) == 0
        assert filecmp.cmp(a / "sweep.csv", b / "sweep.csv", shallow=False)
        assert filecmp.cmp(a / "sweep.csv", c / "sweep.csv", shallow=False)

    def test_all_infeasible_exits_3(self, params_file, tmp_path):
        code = cli.main(
            [
                "sweep",
                "--params",
                str(params_file),
                "--interarrival",
                "1.0",
                "--radiologists",
                "1",
                "--trials",
                "2",
                "--patients",
                "500",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 3

    def test_missing_params_field_exits_3(self, corpus, tmp_path):
        root, _ = corpus
        out = tmp_path / "partial"
        assert (
            cli.main(
                ["estimate", "--exam-log", str(root / "exam_log.csv"), "--out", str(out)]
            )
            == 0
        )
        code = cli.main(
            [
                "sweep",
                "--params",
                str(out / "params.json"),
                "--trials",
                "2",
                "--patients",
                "500",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 3


class TestRocSweep:
    def test_endpoints_and_determinism(self, params_file, tmp_path):
        args = [
            "roc-sweep",
            "--params",
            str(params_file),
            "--points",
            "3",
            "--radiologists",
            "3",
            "--interarrival",
            "12",
            "--trials",
            "3",
            "--patients",
            "2000",
        ]
        assert cli.main(args + ["--out", str(tmp_path / "a")]) == 0
        assert cli.main(args + ["--out", str(tmp_path / "b")]) == 0
        assert filecmp.cmp(
            tmp_path / "a" / "roc_sweep.csv", tmp_path / "b" / "roc_sweep.csv", shallow=False
        )
        rows = read_table(tmp_path / "a" / "roc_sweep.csv")
        assert len(rows) == 3
        assert float(rows[0]["fpf_adjusted"]) == 0.0 and float(rows[0]["tpf"]) == 0.0
        assert float(rows[-1]["fpf_adjusted"]) == 1.0 and float(rows[-1]["tpf"]) == 1.0
        # Flagging nothing or everything leaves the order unchanged.
        assert float(rows[0]["mean_savings"]) == 0.0
        assert float(rows[-1]["mean_savings"]) == 0.0
        assert float(rows[1]["mean_savings"]) > 0.0


class TestOracle:
    def test_single_class_equals_fifo(self, tmp_path):
        code = cli.main(
            [
                "oracle",
                "--arrival-rates",
                "0.1",
                "--service-rate",
                "0.16666666666666666",
                "--servers",
                "1",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 0
        rows = read_table(tmp_path / "oracle.csv")
        fifo = next(r for r in rows if r["class"] == "fifo")
        class1 = next(r for r in rows if r["class"] == "class1")
        assert fifo["wq_analytic"] == class1["wq_analytic"]
        assert float(fifo["wq_analytic"]) == pytest.approx(9.0, rel=1e-9)
        assert float(class1["savings_vs_fifo"]) == 0.0

    def test_compare_z_scores(self, tmp_path):
        code = cli.main(
            [
                "oracle",
                "--arrival-rates",
                "0.06,0.14",
                "--service-rate",
                "0.16666666666666666",
                "--servers",
                "2",
                "--compare",
                "--patients",
                "60000",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 0
        rows = read_table(tmp_path / "oracle.csv")
        assert set(r["class"] for r in rows) == {"fifo", "class1", "class2"}
        for row in rows:
            assert abs(float(row["z_score"])) <= 4.0

    def test_unstable_load_exits_3(self, tmp_path):
        code = cli.main(
            [
                "oracle",
                "--arrival-rates",
                "0.4",
                "--service-rate",
                "0.1",
                "--servers",
                "2",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 3


class TestCompare:
    def test_layout_and_shift_recovery(self, corpus, tmp_path):
        root, truth = corpus
        code = cli.main(
            [
                "compare",
                "--exam-log",
                str(root / "exam_log.csv"),
                "--config",
                str(root / "config.yaml"),
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 0
        with open(tmp_path / "compare.csv", newline="") as handle:
            header = tuple(next(csv.reader(handle)))
        assert header == cli.COMPARE_COLUMNS
        rows = read_table(tmp_path / "compare.csv")
        assert [r["cohort"] for r in rows] == ["work", "off"]
        shift = truth["expected"]["tat_shift"]
        for row in rows:
            low, high = float(row["savings_ci_low"]), float(row["savings_ci_high"])
            assert low <= shift <= high

    def test_missing_boundary_exits_3(self, corpus, tmp_path):
        root, _ = corpus
        (tmp_path / "cfg.yaml").write_text("device_tpf: 0.9\n")
        code = cli.main(
            [
                "compare",
                "--exam-log",
                str(root / "exam_log.csv"),
                "--config",
                str(tmp_path / "cfg.yaml"),
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 3

    def test_empty_period_exits_4(self, corpus, tmp_path):
        root, _ = corpus
        (tmp_path / "cfg.yaml").write_text("boundary_date: 2030-01-01\n")
        code = cli.main(
            [
                "compare",
                "--exam-log",
                str(root / "exam_log.csv"),
                "--config",
                str(tmp_path / "cfg.yaml"),
                "--out",
                str(tmp_path),
            ]
        )
        assert code == 4
