"""Command-line front end: fit custom data and run the four error studies.

Subcommands
-----------
exp1  max-error table over evaluation grids of growing resolution
exp2  L1-error decay against node count, for several local degrees
exp3  noisy-data reconstruction with least-squares local fits
exp4  max-error decay for smooth (jump-free) benchmark functions
fit   build from a CSV of samples and evaluate

All outputs are plain CSV series plus a JSON summary per experiment; reruns
with identical configuration and seeds are byte-identical.  Exit codes: 0
success, 2 bad input, 3 mesh precondition violated, 4 internal invariant
broken.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .errors import InternalInvariantError, InvalidInputError, MeshConditionError
from .error_analysis import EvaluationGrid, e_l1, e_max
from .grid import GapSpec, read_samples_csv
from .quasi_interp import build, eval_batch
from .testfns import TEST_FUNCTIONS, NoiseSpec, sample_on_grid

__all__ = ["main"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4

DEFAULTS = {
    "exp1": {
        "functions": ["f1", "f2", "f3", "f4"],
        "n": 1024,
        "d": 3,
        "mu": 4,
        "K": 10,
        "ne": [500, 1000, 2000, 3000, 4000],
        "scheme": "auto",
    },
    "exp2": {
        "functions": ["f1", "f2", "f3", "f4"],
        "n": list(range(100, 1501, 200)),
        "d": [1, 3, 5],
        "mu": 4,
        "K": 10,
        "scheme": "auto",
    },
    "exp3": {
        "functions": ["f1"],
        "n": 1024,
        "d": 6,
        "ls_degree": 3,
        "mu": 4,
        "K": 10,
        "ne": [2000],
        "amplitude": 0.5,
        "seed": 42,
        "scheme": "auto",
    },
    "exp4": {
        "functions": ["f5", "f6"],
        "n": list(range(200, 2001, 200)),
        "d": [1, 3, 5],
        "mu": 4,
        "K": 10,
        "ne": [2000],
        "scheme": "auto",
    },
}


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in str(text).split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints: {text!r}")


def _str_list(text: str) -> list[str]:
    return [tok.strip() for tok in str(text).split(",") if tok.strip()]


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=False)
        fh.write("\n")


def _merge_config(args: argparse.Namespace, experiment: str) -> dict:
    """Resolve each setting as: explicit flag > config file > default."""
    cfg = dict(DEFAULTS.get(experiment, {}))
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        unknown = set(file_cfg) - set(cfg)
        if unknown:
            raise InvalidInputError(
                f"config keys {sorted(unknown)} not valid for {experiment}; "
                f"valid keys: {sorted(cfg)}"
            )
        cfg.update(file_cfg)
    for key in cfg:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    return cfg


def _scalar(cfg: dict, key: str):
    """A config value that must be a single number, also accepted as [v]."""
    val = cfg[key]
    if isinstance(val, list):
        if len(val) != 1:
            raise InvalidInputError(f"{key} takes a single value here, got {val}")
        val = val[0]
        cfg[key] = val
    return val


def _check_functions(names, allowed=None):
    for nm in names:
        if nm not in TEST_FUNCTIONS:
            raise InvalidInputError(
                f"unknown test function {nm!r}; choose from {sorted(TEST_FUNCTIONS)}"
            )
        if allowed is not None and nm not in allowed:
            raise InvalidInputError(f"{nm!r} not usable here; choose from {allowed}")


def _out_dir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


# -- experiments ----------------------------------------------------------------


def run_experiment_1(args) -> int:
    cfg = _merge_config(args, "exp1")
    _check_functions(cfg["functions"])
    out = _out_dir(args)
    n, d = _scalar(cfg, "n"), _scalar(cfg, "d")
    ne_values = list(cfg["ne"])
    results = []
    for name in cfg["functions"]:
        signal, gaps = sample_on_grid(name, n)
        q = build(
            signal, gaps, degree=d, mu=cfg["mu"],
            n_blend=cfg["K"], scheme=cfg["scheme"],
        )
        fn = TEST_FUNCTIONS[name].fn
        rows = []
        for ne in ne_values:
            r = e_max(q, fn, ne)
            rows.append({
                "n_e": ne, "e_max": r.value,
                "argmax": r.argmax, "in_gap": r.argmax_in_gap,
            })
        results.append({"function": name, "rows": rows})

    header = (
        ["function"]
        + [f"e_max_ne{ne}" for ne in ne_values]
        + [f"argmax_ne{ne}" for ne in ne_values]
        + [f"in_gap_ne{ne}" for ne in ne_values]
    )
    table_rows = []
    for entry in results:
        rows = entry["rows"]
        table_rows.append(
            [entry["function"]]
            + [r["e_max"] for r in rows]
            + [r["argmax"] for r in rows]
            + [r["in_gap"] for r in rows]
        )
    _write_csv(out / "exp1_table.csv", header, table_rows)
    _write_json(out / "exp1_summary.json", {
        "experiment": "exp1",
        "config": cfg,
        "results": results,
    })
    return EXIT_OK


def run_experiment_2(args) -> int:
    cfg = _merge_config(args, "exp2")
    _check_functions(cfg["functions"])
    out = _out_dir(args)
    d_values = cfg["d"] if isinstance(cfg["d"], list) else [cfg["d"]]
    n_values = cfg["n"] if isinstance(cfg["n"], list) else [cfg["n"]]
    results = []
    combined = []
    for name in cfg["functions"]:
        fn = TEST_FUNCTIONS[name].fn
        for d in d_values:
            series = []
            for n in n_values:
                signal, gaps = sample_on_grid(name, n)
                q = build(
                    signal, gaps, degree=d, mu=cfg["mu"],
                    n_blend=cfg["K"], scheme=cfg["scheme"],
                )
                value = e_l1(q, fn)
                series.append({"n": n, "e_l1": value})
                combined.append([name, d, n, value])
            _write_csv(
                out / f"exp2_{name}_d{d}.csv",
                ["n", "e_l1"],
                [[s["n"], s["e_l1"]] for s in series],
            )
            results.append({"function": name, "d": d, "series": series})
    _write_csv(out / "exp2_el1.csv", ["function", "d", "n", "e_l1"], combined)
    _write_json(out / "exp2_summary.json", {
        "experiment": "exp2",
        "config": cfg,
        "results": results,
    })
    return EXIT_OK


def run_experiment_3(args) -> int:
    cfg = _merge_config(args, "exp3")
    _check_functions(cfg["functions"])
    out = _out_dir(args)
    name = cfg["functions"][0]
    fn = TEST_FUNCTIONS[name].fn
    n, d = _scalar(cfg, "n"), _scalar(cfg, "d")
    noise = NoiseSpec(cfg["amplitude"], cfg["seed"])
    signal, gaps = sample_on_grid(name, n, noise)
    q = build(
        signal, gaps, degree=d, mu=cfg["mu"], n_blend=cfg["K"],
        scheme=cfg["scheme"], ls_degree=cfg["ls_degree"],
    )
    ne = cfg["ne"][0] if isinstance(cfg["ne"], list) else cfg["ne"]
    xs = EvaluationGrid(q.a, q.b, ne).points()
    approx, _ = eval_batch(q, xs)
    truth = fn(xs)
    in_gap = q.in_gap(xs)
    sup_outside = float(np.max(np.abs(truth - approx)[~in_gap]))

    _write_csv(
        out / "exp3_samples.csv", ["x", "y_noisy"],
        zip(signal.nodes, signal.values),
    )
    _write_csv(
        out / "exp3_reconstruction.csv",
        ["x", "f", "q", "in_gap"],
        zip(xs, truth, approx, in_gap),
    )
    _write_json(out / "exp3_summary.json", {
        "experiment": "exp3",
        "config": cfg,
        "sup_deviation_outside_gaps": sup_outside,
        "within_noise_amplitude": bool(sup_outside <= cfg["amplitude"]),
    })
    return EXIT_OK


def run_experiment_4(args) -> int:
    cfg = _merge_config(args, "exp4")
    _check_functions(cfg["functions"], allowed=("f5", "f6"))
    out = _out_dir(args)
    d_values = cfg["d"] if isinstance(cfg["d"], list) else [cfg["d"]]
    n_values = cfg["n"] if isinstance(cfg["n"], list) else [cfg["n"]]
    ne = cfg["ne"][0] if isinstance(cfg["ne"], list) else cfg["ne"]
    results = []
    for name in cfg["functions"]:
        fn = TEST_FUNCTIONS[name].fn
        for d in d_values:
            series = []
            for n in n_values:
                signal, gaps = sample_on_grid(name, n)
                q = build(
                    signal, gaps, degree=d, mu=cfg["mu"],
                    n_blend=cfg["K"], scheme=cfg["scheme"],
                )
                r = e_max(q, fn, ne)
                series.append({"n": n, "e_max": r.value})
            _write_csv(
                out / f"exp4_{name}_d{d}.csv",
                ["n", "e_max"],
                [[s["n"], s["e_max"]] for s in series],
            )
            results.append({"function": name, "d": d, "series": series})
    _write_json(out / "exp4_summary.json", {
        "experiment": "exp4",
        "config": cfg,
        "results": results,
    })
    return EXIT_OK


def run_fit(args) -> int:
    signal = read_samples_csv(args.input)
    gaps = GapSpec(tuple(args.gaps) if args.gaps else ())
    d = args.d
    if isinstance(d, list):
        if len(d) != 1:
            raise InvalidInputError("fit takes a single --d value")
        d = d[0]
    q = build(
        signal, gaps,
        degree=d if d is not None else 3,
        mu=args.mu if args.mu is not None else 4,
        n_blend=args.K if args.K is not None else 10,
        scheme=args.scheme if args.scheme is not None else "auto",
        mode=args.mode if args.mode is not None else "interpolating",
        ls_degree=args.ls_degree,
    )
    out = _out_dir(args)

    if args.dump_covering:
        _write_json(out / "covering.json", q.covering.to_json_dict())

    if args.eval_points:
        pts = read_samples_csv(args.eval_points).nodes
    else:
        ne = args.ne[0] if args.ne else 1000
        pts = EvaluationGrid(q.a, q.b, ne).points()
    values, extrapolating = eval_batch(q, pts)
    in_gap = q.in_gap(pts)
    _write_csv(
        out / "fit_eval.csv",
        ["x", "q", "extrapolation", "in_gap"],
        zip(pts, values, extrapolating, in_gap),
    )
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=_int_list, default=None,
                   help="node-span count(s), comma separated where a sweep applies")
    p.add_argument("--d", type=_int_list, default=None,
                   help="local degree(s)")
    p.add_argument("--mu", type=int, default=None, help="even blending exponent")
    p.add_argument("--K", type=int, default=None, help="blend points per interval")
    p.add_argument("--ne", type=_int_list, default=None,
                   help="evaluation grid resolution(s)")
    p.add_argument("--seed", type=int, default=None, help="noise seed")
    p.add_argument("--amplitude", type=float, default=None,
                   help="noise peak amplitude (stddev is amplitude/3)")
    p.add_argument("--scheme", choices=["auto", "equispaced", "general"],
                   default=None)
    p.add_argument("--mode", choices=["interpolating", "least_squares"],
                   default=None)
    p.add_argument("--ls-degree", dest="ls_degree", type=int, default=None)
    p.add_argument("--functions", type=_str_list, default=None,
                   help="test function ids, comma separated")
    p.add_argument("--gaps", type=_int_list, default=None,
                   help="gap indices for custom data, comma separated")
    p.add_argument("--out-dir", dest="out_dir", default="shepqi_out")
    p.add_argument("--dump-covering", dest="dump_covering", action="store_true")
    p.add_argument("--config", default=None, help="JSON file with settings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shepqi",
        description="Jump-aware smooth quasi-interpolation and its error studies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    specs = [
        ("exp1", run_experiment_1, "max-error table on growing evaluation grids"),
        ("exp2", run_experiment_2, "L1-error decay against node count"),
        ("exp3", run_experiment_3, "noisy-data reconstruction with least squares"),
        ("exp4", run_experiment_4, "max-error decay for smooth functions"),
    ]
    for name, fn, help_text in specs:
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("fit", help="fit a CSV of samples and evaluate")
    _add_common(p)
    p.add_argument("--input", required=True, help="CSV of x,y samples")
    p.add_argument("--eval-points", dest="eval_points", default=None,
                   help="CSV of evaluation abscissas (first column)")
    p.set_defaults(func=run_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"shepqi: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MeshConditionError as exc:
        print(f"shepqi: mesh condition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalInvariantError as exc:
        print(f"shepqi: internal invariant broken: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
