"""Command-line harness: estimate, sweep, roc-sweep, oracle, compare.

Every command writes delimiter-separated tables plus a JSON metadata
companion (seed, grids, version) so a run can be reproduced exactly. Output
is byte-identical for identical inputs and seed, regardless of worker count;
nothing time- or host-dependent goes into the files.

Exit codes: 0 success, 2 input-format error, 3 infeasible parameters,
4 insufficient data.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .config import AnalysisConfig
from .core import (
    Cohort,
    DeviceOperatingPoint,
    Diagnosis,
    ExamClass,
    WorkflowParams,
    trial_stream,
)
from .errors import (
    FormatError,
    InfeasibleParametersError,
    InsufficientDataError,
    ParameterError,
    TriageSimError,
)
from .estimation import (
    assign_cohort,
    daily_interarrival_fits,
    adjusted_fpf,
    effective_nondiseased_read_time,
    estimate_read_times,
    ingest_closure_log,
    ingest_exam_log,
    queue_prevalence,
    summarize_interarrival,
)
from .oracle import PriorityLoad, mmc_fifo_wait, mmc_priority_wait
from .paramfile import empty_document, load_parameters, save_parameters, workflow_params_from_doc
from .roc import fit_from_point, sample_operating_points
from .simulator import (
    QueueDiscipline,
    batch_mean_se,
    generate_stream,
    replay_stream,
    run_replications,
)
from .stats import tat_summary, time_savings_test

log = logging.getLogger("triagesim")

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_INFEASIBLE = 3
EXIT_INSUFFICIENT = 4

FULL_TRIALS = 100
FULL_PATIENTS = 100_000
QUICK_TRIALS = 20
QUICK_PATIENTS = 20_000
FULL_ROC_POINTS = 1000
QUICK_ROC_POINTS = 51

DEFAULT_INTERARRIVAL_GRID = [k * 0.25 for k in range(5, 17)]  # 1.25 .. 4.0
DEFAULT_RADIOLOGIST_GRID = [2, 3, 4, 5]


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def _write_table(path: Path, header: tuple[str, ...], rows: list[tuple]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(str(cell) for cell in row) + "\n")


def _write_metadata(path: Path, payload: dict) -> None:
    payload = dict(payload, triagesim_version=__version__)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _load_config(args) -> AnalysisConfig:
    if getattr(args, "config", None):
        return AnalysisConfig.from_yaml(args.config)
    return AnalysisConfig()


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _parse_grid(text: str, cast=float) -> list:
    """Accept '1.25,1.5,2' or 'start:stop:step' (stop inclusive)."""
    text = text.strip()
    if ":" in text:
        start, stop, step = (float(part) for part in text.split(":"))
        if step <= 0:
            raise ParameterError(f"grid step must be > 0 in {text!r}")
        values = []
        k = 0
        while True:
            value = start + k * step
            if value > stop + 1e-9:
                break
            values.append(cast(round(value, 10)))
            k += 1
        return values
    return [cast(part) for part in text.split(",") if part.strip()]


# --------------------------------------------------------------------------
# estimate


def _interarrival_block(fits, cohort: Cohort):
    summary = summarize_interarrival(fits, cohort)
    cohort_fits = [f for f in fits if f.cohort is cohort]
    r2 = [f.r2 for f in cohort_fits if f.r2 == f.r2]  # drop NaN
    n = len(cohort_fits)
    mean_r2 = sum(r2) / len(r2) if r2 else None
    sd_r2 = (
        (sum((value - mean_r2) ** 2 for value in r2) / (len(r2) - 1)) ** 0.5
        if r2 and len(r2) > 1
        else None
    )
    return {
        "mean": summary.mean,
        "sigma": summary.sigma,
        "range68": list(summary.range68),
        "n_days": n,
        "r2_mean": mean_r2,
        "r2_sd": sd_r2,
    }


def cmd_estimate(args) -> int:
    cfg = _load_config(args)
    out = _out_dir(args)
    doc = empty_document()
    missing: list[str] = []

    exam = ingest_exam_log(args.exam_log)
    n_positive = sum(1 for r in exam.records if r.diagnosis is Diagnosis.POSITIVE)
    doc["diagnostics"]["exam_log"] = {
        "n_rows": exam.n_rows,
        "n_excluded_negative_tat": exam.n_excluded_negative,
        "n_malformed": exam.n_malformed,
        "n_retained": len(exam.records),
        "n_positive": n_positive,
    }

    fits = daily_interarrival_fits(
        exam.records,
        cfg.holidays,
        bin_minutes=cfg.interarrival_bin_minutes,
        min_gaps=cfg.min_daily_gaps,
        weighted=cfg.weighted_fits,
        work_start=cfg.work_start,
        work_end=cfg.work_end,
    )
    for cohort, key in ((Cohort.WORK_HOUR, "work"), (Cohort.OFF_HOUR, "off")):
        try:
            doc["interarrival"][key] = _interarrival_block(fits, cohort)
        except InsufficientDataError as exc:
            log.warning("inter-arrival summary unavailable for %s: %s", key, exc)
            missing.append(f"interarrival.{key}")

    if args.closure_log:
        closures = ingest_closure_log(args.closure_log)
        roles = {r.reader_id: r.reader_role for r in exam.records}
        readtimes = estimate_read_times(
            closures.records,
            roles,
            max_gap_minutes=cfg.max_read_gap_minutes,
            min_daily_closures=cfg.min_daily_closures,
            min_gaps=cfg.min_gaps_per_fit,
            bin_minutes=cfg.readtime_bin_minutes,
            weighted=cfg.weighted_fits,
        )
        class_counts = {c.value: 0 for c in ExamClass}
        for record in closures.records:
            class_counts[record.exam_class.value] += 1
        n_queue_total = len(closures.records)
        doc["counts"] = {
            "n_diseased": n_positive,
            "n_queue_total": n_queue_total,
            "n_non_pe_positive": class_counts[ExamClass.NON_PE_POSITIVE.value],
            "n_non_chest_ct": class_counts[ExamClass.NON_CHEST_CT.value],
        }
        doc["prevalence"] = queue_prevalence(n_positive, n_queue_total)
        for exam_class in ExamClass:
            agg = readtimes.per_class.get(exam_class)
            if agg is None:
                missing.append(f"read_time.{exam_class.value}")
                continue
            doc["read_time"][exam_class.value] = {
                "mean": agg.mean,
                "n_readers": agg.n_readers,
                "min": agg.min_mean,
                "max": agg.max_mean,
            }
        pe = readtimes.per_class.get(ExamClass.PE_POSITIVE)
        npp = readtimes.per_class.get(ExamClass.NON_PE_POSITIVE)
        ncct = readtimes.per_class.get(ExamClass.NON_CHEST_CT)
        if pe is not None:
            doc["read_time_diseased"] = pe.mean
        else:
            missing.append("read_time_diseased")
        if npp is not None and ncct is not None:
            doc["effective_nondiseased_read_time"] = effective_nondiseased_read_time(
                npp.mean,
                ncct.mean,
                class_counts[ExamClass.NON_PE_POSITIVE.value],
                class_counts[ExamClass.NON_CHEST_CT.value],
            )
        else:
            missing.append("effective_nondiseased_read_time")
        doc["diagnostics"]["closure_log"] = {
            "n_rows": closures.n_rows,
            "n_malformed": closures.n_malformed,
            "per_class": class_counts,
            "exclusions": dataclasses.asdict(readtimes.exclusions),
            "per_reader_fits": [
                {
                    "reader_id": fit.reader_id,
                    "exam_class": fit.exam_class.value,
                    "mean": fit.mean,
                    "n": fit.n,
                    "r2": fit.r2,
                }
                for fit in readtimes.per_reader
            ],
        }
    else:
        missing.extend(
            [
                "counts",
                "prevalence",
                "read_time.pe_positive",
                "read_time.non_pe_positive",
                "read_time.non_chest_ct",
                "read_time_diseased",
                "effective_nondiseased_read_time",
            ]
        )

    if cfg.device_tpf is not None:
        doc["device"]["tpf"] = cfg.device_tpf
    else:
        missing.append("device.tpf")
    if cfg.device_specificity is not None:
        doc["device"]["specificity"] = cfg.device_specificity
        counts = doc["counts"]
        if counts.get("n_non_pe_positive") and counts.get("n_non_chest_ct") is not None:
            doc["device"]["fpf_adjusted"] = adjusted_fpf(
                cfg.device_specificity,
                counts["n_non_chest_ct"],
                counts["n_non_pe_positive"],
            )
        else:
            missing.append("device.fpf_adjusted")
    else:
        missing.extend(["device.specificity", "device.fpf_adjusted"])

    doc["missing"] = sorted(set(missing))
    path = out / "params.json"
    save_parameters(doc, path)
    print(f"wrote {path}")
    if doc["missing"]:
        print("missing fields: " + ", ".join(doc["missing"]))
    return EXIT_OK


# --------------------------------------------------------------------------
# sweep


def _resolve_protocol(args) -> tuple[int, int]:
    trials = args.trials if args.trials is not None else (QUICK_TRIALS if args.quick else FULL_TRIALS)
    patients = args.patients if args.patients is not None else (
        QUICK_PATIENTS if args.quick else FULL_PATIENTS
    )
    return trials, patients


def cmd_sweep(args) -> int:
    out = _out_dir(args)
    doc = load_parameters(args.params)
    interarrival_grid = (
        _parse_grid(args.interarrival) if args.interarrival else DEFAULT_INTERARRIVAL_GRID
    )
    radiologist_grid = (
        _parse_grid(args.radiologists, int) if args.radiologists else DEFAULT_RADIOLOGIST_GRID
    )
    if not interarrival_grid or not radiologist_grid:
        raise ParameterError("sweep grids must be non-empty")
    trials, patients = _resolve_protocol(args)

    rows = []
    n_feasible = 0
    for interarrival in interarrival_grid:
        for c in radiologist_grid:
            try:
                params = workflow_params_from_doc(doc, interarrival, c)
            except InfeasibleParametersError:
                rows.append((_fmt(interarrival), c, "", "", "", "false"))
                continue
            estimate = run_replications(
                params, trials, patients, args.seed, burn_in=args.burn_in, workers=args.workers
            )
            n_feasible += 1
            rows.append(
                (
                    _fmt(interarrival),
                    c,
                    _fmt(estimate.mean_savings),
                    _fmt(estimate.range95[0]),
                    _fmt(estimate.range95[1]),
                    "true",
                )
            )
    if n_feasible == 0:
        raise InfeasibleParametersError(
            "every grid point has utilization >= 1; add radiologists or widen "
            "the inter-arrival grid"
        )
    table = out / "sweep.csv"
    _write_table(
        table,
        ("interarrival", "n_radiologists", "mean_savings", "range95_low", "range95_high", "feasible"),
        rows,
    )
    _write_metadata(
        out / "sweep_meta.json",
        {
            "command": "sweep",
            "seed": args.seed,
            "n_trials": trials,
            "n_patients": patients,
            "burn_in": args.burn_in,
            "interarrival_grid": interarrival_grid,
            "radiologist_grid": radiologist_grid,
            "params_file": os.path.basename(args.params),
            "quick": bool(args.quick),
        },
    )
    print(f"wrote {table} ({n_feasible}/{len(rows)} feasible grid points)")
    return EXIT_OK


# --------------------------------------------------------------------------
# roc-sweep


def cmd_roc_sweep(args) -> int:
    out = _out_dir(args)
    doc = load_parameters(args.params)
    cfg = _load_config(args)
    trials, patients = _resolve_protocol(args)
    n_points = args.points if args.points is not None else (
        QUICK_ROC_POINTS if args.quick else FULL_ROC_POINTS
    )
    tpf_device = doc.get("device", {}).get("tpf")
    fpf_device = doc.get("device", {}).get("fpf_adjusted")
    if tpf_device is None or fpf_device is None:
        raise ParameterError(
            "parameter file lacks a device operating point (device.tpf / "
            "device.fpf_adjusted)"
        )
    if args.interarrival is not None:
        interarrival = args.interarrival
    else:
        block = doc.get("interarrival", {}).get("work")
        if not block:
            raise ParameterError(
                "no --interarrival given and the parameter file has no "
                "work-hour inter-arrival summary"
            )
        interarrival = float(block["mean"])

    # The sweep curve lives in queue-adjusted FPF space: it passes through
    # the device's adjusted operating point, and its endpoints correspond to
    # flagging nothing and flagging the whole queue. The raw target-modality
    # FPF is reported alongside for reference.
    curve = fit_from_point(float(tpf_device), float(fpf_device), slope=cfg.roc_slope)
    counts = doc.get("counts", {})
    ratio = None
    if counts.get("n_non_pe_positive") and counts.get("n_non_chest_ct") is not None:
        ratio = counts["n_non_chest_ct"] / counts["n_non_pe_positive"]
    base = workflow_params_from_doc(doc, interarrival, args.radiologists)

    points = sample_operating_points(curve, n_points)
    rows = []
    for fpf_adjusted, tpf in points:
        params = dataclasses.replace(
            base, device=DeviceOperatingPoint(tpf=tpf, fpf_adjusted=fpf_adjusted)
        )
        estimate = run_replications(
            params, trials, patients, args.seed, burn_in=args.burn_in, workers=args.workers
        )
        fpf_raw = "" if ratio is None else _fmt(min(1.0, fpf_adjusted * (1.0 + ratio)))
        rows.append(
            (
                fpf_raw,
                _fmt(fpf_adjusted),
                _fmt(tpf),
                _fmt(estimate.mean_savings),
                _fmt(estimate.range95[0]),
                _fmt(estimate.range95[1]),
            )
        )
    table = out / "roc_sweep.csv"
    _write_table(
        table,
        ("fpf_raw", "fpf_adjusted", "tpf", "mean_savings", "range95_low", "range95_high"),
        rows,
    )
    _write_metadata(
        out / "roc_sweep_meta.json",
        {
            "command": "roc-sweep",
            "seed": args.seed,
            "n_trials": trials,
            "n_patients": patients,
            "burn_in": args.burn_in,
            "n_points": n_points,
            "n_radiologists": args.radiologists,
            "interarrival": interarrival,
            "roc_slope": cfg.roc_slope,
            "curve_a": curve.a,
            "params_file": os.path.basename(args.params),
            "quick": bool(args.quick),
        },
    )
    print(f"wrote {table}")
    return EXIT_OK


# --------------------------------------------------------------------------
# oracle


def cmd_oracle(args) -> int:
    out = _out_dir(args)
    arrival_rates = tuple(_parse_grid(args.arrival_rates))
    load = PriorityLoad(
        arrival_rates=arrival_rates, service_rate=args.service_rate, servers=args.servers
    )
    fifo = mmc_fifo_wait(load.total_rate, load.service_rate, load.servers)
    waits = mmc_priority_wait(load)

    simulated: dict[str, tuple[float, float]] = {}
    if args.compare:
        if len(arrival_rates) > 2:
            raise ParameterError("--compare supports at most two priority classes")
        simulated = _oracle_compare(args, load, fifo, waits)

    header = ["class", "arrival_rate", "wq_analytic", "savings_vs_fifo"]
    if args.compare:
        header += ["wq_simulated", "z_score"]
    rows = []
    fifo_row = ["fifo", _fmt(load.total_rate), _fmt(fifo), _fmt(0.0)]
    if args.compare:
        sim, z = simulated["fifo"]
        fifo_row += [_fmt(sim), _fmt(z)]
    rows.append(tuple(fifo_row))
    for k, (lam, wq) in enumerate(zip(arrival_rates, waits), start=1):
        row = [f"class{k}", _fmt(lam), _fmt(wq), _fmt(fifo - wq)]
        if args.compare:
            sim, z = simulated[f"class{k}"]
            row += [_fmt(sim), _fmt(z)]
        rows.append(tuple(row))
    table = out / "oracle.csv"
    _write_table(table, tuple(header), rows)
    _write_metadata(
        out / "oracle_meta.json",
        {
            "command": "oracle",
            "seed": args.seed,
            "arrival_rates": list(arrival_rates),
            "service_rate": args.service_rate,
            "servers": args.servers,
            "compare": bool(args.compare),
            "n_patients": args.patients,
        },
    )
    print(f"wrote {table}")
    return EXIT_OK


def _oracle_compare(args, load: PriorityLoad, fifo: float, waits) -> dict:
    """Matched simulation for the analytic table: class 1 maps to flagged
    exams (tpf=1, fpf=0, prevalence = class-1 share), common service mean."""
    mean_service = 1.0 / load.service_rate
    total = load.total_rate
    share = load.arrival_rates[0] / total if len(load.arrival_rates) == 2 else 1.0
    params = WorkflowParams(
        prevalence=share,
        mean_interarrival=1.0 / total,
        n_radiologists=load.servers,
        read_time_diseased=mean_service,
        read_time_nondiseased_effective=mean_service,
        device=DeviceOperatingPoint(tpf=1.0, fpf_adjusted=0.0),
    )
    stream = generate_stream(params, args.patients, trial_stream(args.seed, 0))
    fifo_out = replay_stream(stream, load.servers, QueueDiscipline.FIFO)
    result = {}
    wait_all = fifo_out.wait
    se = batch_mean_se(wait_all)
    result["fifo"] = (float(wait_all.mean()), float((wait_all.mean() - fifo) / se))
    if len(load.arrival_rates) == 1:
        prio_out = fifo_out
    else:
        prio_out = replay_stream(stream, load.servers, QueueDiscipline.AI_PRIORITY)
    masks = [prio_out.flagged, ~prio_out.flagged][: len(load.arrival_rates)]
    for k, (mask, wq) in enumerate(zip(masks, waits), start=1):
        values = prio_out.wait[mask]
        se = batch_mean_se(values)
        result[f"class{k}"] = (float(values.mean()), float((values.mean() - wq) / se))
    return result


# --------------------------------------------------------------------------
# compare


def cmd_compare(args) -> int:
    cfg = _load_config(args)
    out = _out_dir(args)
    if cfg.boundary_date is None:
        raise ParameterError(
            "config must supply boundary_date (first day of the post period)"
        )
    exam = ingest_exam_log(args.exam_log)
    positives = [r for r in exam.records if r.diagnosis is Diagnosis.POSITIVE]

    rows = []
    for cohort, key in ((Cohort.WORK_HOUR, "work"), (Cohort.OFF_HOUR, "off")):
        in_cohort = [
            r
            for r in positives
            if assign_cohort(r.scan_completed_at, cfg.holidays, cfg.work_start, cfg.work_end)
            is cohort
        ]
        pre = [r.tat_minutes for r in in_cohort if r.scan_completed_at.date() < cfg.boundary_date]
        post = [r.tat_minutes for r in in_cohort if r.scan_completed_at.date() >= cfg.boundary_date]
        if len(pre) < 2 or len(post) < 2:
            raise InsufficientDataError(
                f"cohort {key}: need >= 2 diseased exams in each period, got "
                f"{len(pre)} pre / {len(post)} post"
            )
        s_pre = tat_summary(pre)
        s_post = tat_summary(post)
        welch = time_savings_test(pre, post)
        rows.append(
            (
                key,
                s_pre.n,
                _fmt(s_pre.mean),
                _fmt(s_pre.ci95[0]),
                _fmt(s_pre.ci95[1]),
                _fmt(s_pre.percentiles[0]),
                _fmt(s_pre.percentiles[1]),
                _fmt(s_pre.percentiles[2]),
                s_post.n,
                _fmt(s_post.mean),
                _fmt(s_post.ci95[0]),
                _fmt(s_post.ci95[1]),
                _fmt(s_post.percentiles[0]),
                _fmt(s_post.percentiles[1]),
                _fmt(s_post.percentiles[2]),
                _fmt(welch.diff_of_means),
                _fmt(welch.ci95[0]),
                _fmt(welch.ci95[1]),
                _fmt(welch.p_one_sided),
            )
        )
    table = out / "compare.csv"
    _write_table(table, COMPARE_COLUMNS, rows)
    _write_metadata(
        out / "compare_meta.json",
        {
            "command": "compare",
            "boundary_date": cfg.boundary_date.isoformat(),
            "exam_log": os.path.basename(args.exam_log),
            "n_rows": exam.n_rows,
            "n_excluded_negative_tat": exam.n_excluded_negative,
        },
    )
    print(f"wrote {table}")
    return EXIT_OK


COMPARE_COLUMNS = (
    "cohort",
    "n_pre",
    "pre_mean_tat",
    "pre_ci_low",
    "pre_ci_high",
    "pre_p2_5",
    "pre_p50",
    "pre_p97_5",
    "n_post",
    "post_mean_tat",
    "post_ci_low",
    "post_ci_high",
    "post_p2_5",
    "post_p50",
    "post_p97_5",
    "observed_savings",
    "savings_ci_low",
    "savings_ci_high",
    "p_one_sided",
)


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triagesim",
        description="Queueing simulation and estimation for AI-triage worklist prioritization",
    )
    parser.add_argument("--version", action="version", version=f"triagesim {__version__}")
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=42, help="master random seed")
    shared.add_argument("--config", help="YAML analysis configuration")
    shared.add_argument(
        "--quick", action="store_true", help="desk-scale protocol (20 trials x 20,000 patients)"
    )
    shared.add_argument("--out", default=".", help="output directory")
    sim = argparse.ArgumentParser(add_help=False)
    sim.add_argument("--trials", type=int, default=None, help="trials per grid point")
    sim.add_argument("--patients", type=int, default=None, help="patients per trial")
    sim.add_argument("--burn-in", type=int, default=0, help="exams excluded from statistics")
    sim.add_argument("--workers", type=int, default=1, help="parallel trial workers")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", parents=[shared], help="estimate workflow parameters from logs")
    p.add_argument("--exam-log", required=True)
    p.add_argument("--closure-log", default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sweep", parents=[shared, sim], help="time-savings over an inter-arrival x staffing grid")
    p.add_argument("--params", required=True, help="parameter file from estimate")
    p.add_argument("--interarrival", default=None, help="grid: comma list or start:stop:step")
    p.add_argument("--radiologists", default=None, help="grid: comma list or start:stop:step")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("roc-sweep", parents=[shared, sim], help="time-savings along the device ROC curve")
    p.add_argument("--params", required=True)
    p.add_argument("--points", type=int, default=None, help="operating points along the curve")
    p.add_argument("--radiologists", type=int, default=3)
    p.add_argument("--interarrival", type=float, default=None, help="defaults to the work-hour estimate")
    p.set_defaults(func=cmd_roc_sweep)

    p = sub.add_parser("oracle", parents=[shared], help="closed-form waits, optionally checked by simulation")
    p.add_argument("--arrival-rates", required=True, help="per-class rates per minute, class 1 first")
    p.add_argument("--service-rate", type=float, required=True, help="common service rate per minute")
    p.add_argument("--servers", type=int, required=True)
    p.add_argument("--compare", action="store_true", help="run a matched simulation and report z-scores")
    p.add_argument("--patients", type=int, default=100_000)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", parents=[shared], help="observed pre/post TAT comparison")
    p.add_argument("--exam-log", required=True)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FormatError as exc:
        log.error("input format error: %s", exc)
        return EXIT_FORMAT
    except InsufficientDataError as exc:
        log.error("insufficient data: %s", exc)
        return EXIT_INSUFFICIENT
    except (InfeasibleParametersError, ParameterError) as exc:
        log.error("infeasible or invalid parameters: %s", exc)
        return EXIT_INFEASIBLE
    except TriageSimError as exc:  # pragma: no cover - safety net
        log.error("%s", exc)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
