"""Command-line front end: ``expand``, ``verify``, ``table`` and ``report``.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on a
usage or configuration error.  Output is deterministic; only report JSON
carries timings (``elapsed_ms``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import conf, identities
from .cross_effects import cr2_structural_check
from .layers import LayerInput, a_k_recurrence
from .lie import WittTable
from .models import FunctorKind, UnsupportedModelError, closed_form, hilbert_model
from .reports import ReportDocument
from .series import Series, SeriesError, format_rational, parse_rational
from .suite import criteria, run_criteria

CONFIG_ENV = "TAYLORTOWER_CONFIG"
FORMATS = ("pretty", "json", "tsv")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class CliUsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    default_order: int = 12
    n_range: tuple[int, int] = (1, 5)
    k_range: tuple[int, int] = (2, 12)
    output_format: str = "pretty"
    parallelism: int = 1

    def __post_init__(self):
        for name in ("n_range", "k_range"):
            lo, hi = getattr(self, name)
            if lo > hi or lo < 1:
                raise CliUsageError(f"{name} must be a non-empty range of positive integers")
        if self.default_order < 1:
            raise CliUsageError("default_order must be positive")
        if self.output_format not in FORMATS:
            raise CliUsageError(f"output_format must be one of {', '.join(FORMATS)}")
        if self.parallelism < 1:
            raise CliUsageError("parallelism must be positive")

    @classmethod
    def load(cls, path: str | os.PathLike | None) -> "RunConfig":
        if not path:
            return cls()
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CliUsageError(f"cannot read config {path}: {exc}") from exc
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise CliUsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for name in ("n_range", "k_range"):
            if name in data:
                data[name] = tuple(data[name])
        try:
            return cls(**data)
        except TypeError as exc:
            raise CliUsageError(f"bad config: {exc}") from exc


# -- rendering ------------------------------------------------------------------


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def series_tsv(s: Series) -> str:
    names = [f"x{i}" for i in range(1, s.num_vars + 1)] if s.num_vars > 1 else ["x"]
    lines = ["\t".join(names + ["q", "c"])]
    for m, c in s.sorted_terms():
        lines.append("\t".join([*map(str, m.x), str(m.q), format_rational(c)]))
    return "\n".join(lines)


def render_series(s: Series, fmt: str, names=None) -> str:
    if fmt == "json":
        return dump_json(s.to_json())
    if fmt == "tsv":
        return series_tsv(s)
    return s.format(names)


def render_reports(reports: list[ReportDocument], fmt: str, groups=None) -> str:
    if fmt == "json":
        status = "pass" if all(r.passed for r in reports) else "fail"
        return dump_json({"status": status, "reports": [r.to_json() for r in reports]})
    if fmt == "tsv":
        lines = ["identity\tparameters\torder\tstatus"]
        for r in reports:
            params = ",".join(f"{k}={v}" for k, v in sorted(r.parameters.items()))
            lines.append(f"{r.identity_name}\t{params}\t{r.order_checked}\t{r.status}")
        return "\n".join(lines)
    lines = []
    if groups:
        for crit, reps in groups:
            ok = all(r.passed for r in reps)
            lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {crit.number}: {crit.title}")
            lines.extend("    " + r.summary() for r in reps if not r.passed)
    else:
        lines.extend(r.summary() for r in reports)
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} checks passed")
    return "\n".join(lines)


def _q_rows_tsv(rows: list[dict], key: str) -> str:
    if rows and "value" in rows[0]:
        lines = [f"{key}\tk\tvalue"]
        lines += [f"{r[key]}\t{r['k']}\t{format_rational(r['value'])}" for r in rows]
        return "\n".join(lines)
    width = max(len(r["coefficients"]) for r in rows)
    lines = ["\t".join([key, "k"] + [f"q{j}" for j in range(width)])]
    for r in rows:
        cells = r["coefficients"] + [0] * (width - len(r["coefficients"]))
        lines.append("\t".join([str(r[key]), str(r["k"])] + [str(c) for c in cells]))
    return "\n".join(lines)


def _q_rows_pretty(rows: list[dict], key: str) -> str:
    if rows and "value" in rows[0]:
        lines = []
        for v in dict.fromkeys(r[key] for r in rows):
            vals = [str(r["value"]) for r in rows if r[key] == v]
            lines.append(f"{key}={v}: " + ", ".join(vals))
        return "\n".join(lines)
    return "\n".join(f"{key}={r[key]} k={r['k']}: " + ", ".join(map(str, r["coefficients"]))
                     for r in rows)


def _q_rows_json(rows: list[dict], table: str) -> str:
    out = []
    for r in rows:
        r = dict(r)
        if "value" in r:
            r["value"] = format_rational(r["value"])
        out.append(r)
    return dump_json({"table": table, "rows": out})


# -- commands -------------------------------------------------------------------


def _given(value, default):
    return default if value is None else value


def _kind(args) -> FunctorKind:
    if not args.kind:
        raise CliUsageError("--kind is required")
    try:
        return FunctorKind.parse(args.kind, args.n if args.n is not None else 1)
    except ValueError as exc:
        raise CliUsageError(str(exc)) from exc


def _rational(text: str | None, default: int = 1) -> Fraction:
    if text is None:
        return Fraction(default)
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliUsageError(f"not a rational number: {text!r}") from exc


def cmd_expand(args, cfg: RunConfig) -> int:
    kind = _kind(args)
    order = _given(args.order, cfg.default_order)
    if order < 1:
        raise CliUsageError("--order must be at least 1")
    if args.model == "hilbert":
        if args.d is None:
            raise CliUsageError("--d is required for the hilbert model")
        try:
            s = hilbert_model(kind, args.d, order)
        except UnsupportedModelError as exc:
            raise CliUsageError(str(exc)) from exc
        print(render_series(s, args.format or cfg.output_format, ["w"]))
    else:
        s = closed_form(kind, _rational(args.a), order)
        print(render_series(s, args.format or cfg.output_format))
    return EXIT_OK


def _verify_reports(args, cfg: RunConfig):
    name = args.identity
    order = _given(args.order, cfg.default_order)
    k_max = _given(args.k_max, cfg.k_range[1])
    seed = args.seed if args.seed is not None else 0
    if name == "all":
        groups = run_criteria(criteria(args.order, seed), cfg.parallelism)
        return [r for _, reps in groups for r in reps], groups
    n_values = [args.n] if args.n is not None else list(range(cfg.n_range[0], cfg.n_range[1] + 1))
    if name == "functional-eq":
        return [identities.functional_equation_check(_kind(args), _rational(args.a), order)], None
    if name == "solver":
        return [identities.solver_check(_kind(args), _rational(args.a), order)], None
    if name == "difhom":
        if k_max < 2:
            raise CliUsageError("--k-max must be at least 2")
        return [conf.verify_difhom(n, k_max) for n in n_values], None
    if name == "e-infinity":
        return [conf.e_infinity_check(k_max)], None
    if name == "e-one":
        return [conf.e_one_check(k_max)], None
    if name == "pbw":
        return [identities.pbw_functional_identity(order)], None
    if name == "pbw-dimension":
        ds = [args.d] if args.d is not None else [1, 2, 3]
        return [identities.pbw_dimension_check(d, order) for d in ds], None
    if name == "fn-composition":
        ns = [args.n] if args.n is not None else [1, 2, 3, 4]
        return [identities.fn_composition_check(n, order) for n in ns], None
    if name == "witt-lyndon":
        return [identities.witt_lyndon_check(_given(args.d, 3), k_max)], None
    if name == "cross-effects":
        return [identities.cross_effect_oracle_check(args.samples, 5, min(order, 8), seed)], None
    if name == "cr2":
        kind = _kind(args)
        try:
            dx = _given(args.d, 1)
            return [cr2_structural_check(kind, dx, _given(args.dy, dx), order)], None
        except UnsupportedModelError as exc:
            raise CliUsageError(str(exc)) from exc
    if name == "layers":
        return [identities.layer_check(min(k_max, 8), _given(args.d, 3))], None
    if name == "fn-limit":
        return [identities.fn_limit_check()], None
    if name == "hilbert-log":
        dx = _given(args.d, 1)
        return [identities.hilbert_log_equation_check(dx, _given(args.dy, dx), order)], None
    if name == "negative-controls":
        return [identities.negative_control_pbw(), identities.negative_control_recurrence()], None
    raise CliUsageError(f"unknown identity {name!r}")


def cmd_verify(args, cfg: RunConfig) -> int:
    reports, groups = _verify_reports(args, cfg)
    print(render_reports(reports, args.format or cfg.output_format, groups))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_table(args, cfg: RunConfig) -> int:
    fmt = args.format or cfg.output_format
    k_max = _given(args.k_max, cfg.k_range[1])
    at_q = _rational(args.at_q) if args.at_q is not None else None
    if args.which == "witt":
        table = WittTable.build(_given(args.d, 2), k_max)
        if fmt == "json":
            print(dump_json(table.to_json()))
        elif fmt == "tsv":
            print(table.to_tsv(), end="")
        else:
            print(f"d={table.alphabet_dim}: " + ", ".join(str(v) for _, v in sorted(table.entries.items())))
        return EXIT_OK
    n_values = [args.n] if args.n is not None else list(range(cfg.n_range[0], cfg.n_range[1] + 1))
    if args.which == "conf":
        rows = conf.conf_table(n_values, list(range(1, k_max + 1)), at_q)
    elif args.which == "layers":
        if k_max < 2:
            raise CliUsageError("layer tables need --k-max >= 2")
        rows = []
        for n in n_values:
            table = a_k_recurrence(LayerInput.ones(n), k_max)
            if fmt == "json" and at_q is None:
                rows.append(table.to_json())
                continue
            for k, s in sorted(table.entries.items()):
                if at_q is None:
                    top = (k - 1) * (n - 1)
                    rows.append({"n": n, "k": k,
                                 "coefficients": [int(s.coefficient((0,), j)) for j in range(top + 1)]})
                else:
                    rows.append({"n": n, "k": k, "value": s.at_q(at_q).coefficient((0,))})
        if fmt == "json" and at_q is None:
            print(dump_json({"table": "layers", "tables": rows}))
            return EXIT_OK
    else:
        raise CliUsageError(f"unknown table {args.which!r}")
    if fmt == "json":
        print(_q_rows_json(rows, args.which))
    elif fmt == "tsv":
        print(_q_rows_tsv(rows, "n"))
    else:
        print(_q_rows_pretty(rows, "n"))
    return EXIT_OK


def _load_reports(path: str) -> list[ReportDocument]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliUsageError(f"cannot read report {path}: {exc}") from exc
    if isinstance(data, dict) and "reports" in data:
        data = data["reports"]
    if isinstance(data, dict):
        data = [data]
    try:
        return [ReportDocument.from_json(d) for d in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise CliUsageError(f"malformed report in {path}: {exc}") from exc


def cmd_report(args, cfg: RunConfig) -> int:
    fmt = args.format or cfg.output_format
    if args.files:
        reports = [r for p in args.files for r in _load_reports(p)]
        groups = None
    else:
        groups = run_criteria(criteria(args.order, _given(args.seed, 0)), cfg.parallelism)
        reports = [r for _, reps in groups for r in reps]
    text = render_reports(reports, fmt, groups)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


IDENTITIES = ("all", "functional-eq", "solver", "difhom", "e-infinity", "e-one", "pbw",
              "pbw-dimension", "fn-composition", "witt-lyndon", "cross-effects", "cr2", "layers",
              "fn-limit", "hilbert-log", "negative-controls")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", help="exponential | geometric | logarithmic | type_f")
    common.add_argument("--a", help="scale of the closed form, as p/q (default 1)")
    common.add_argument("--n", type=int, help="type f_n index or ambient dimension")
    common.add_argument("--k-max", type=int, dest="k_max")
    common.add_argument("--order", type=int, help="truncation order (total degree)")
    common.add_argument("--d", type=int, help="input dimension")
    common.add_argument("--dy", type=int, help="second input dimension (cr2, hilbert-log)")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--at-q", dest="at_q", help="specialize q to this rational")
    common.add_argument("--seed", type=int, help="seed for randomized oracle sampling")
    common.add_argument("--parallelism", type=int)
    common.add_argument("--config", help=f"JSON RunConfig file (default: ${CONFIG_ENV})")

    parser = argparse.ArgumentParser(
        prog="taylortower",
        description="Exact series models of functors defined by functional equations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="print a closed-form series")
    p.add_argument("--model", choices=("analytic", "hilbert"), default="analytic")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="check an identity")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="tabulate conf, layers or witt")
    p.add_argument("which", choices=("conf", "layers", "witt"))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("report", parents=[common],
                       help="summarize saved JSON reports, or run the whole suite")
    p.add_argument("files", nargs="*")
    p.add_argument("--output", help="write the summary here instead of stdout")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig.load(args.config or os.environ.get(CONFIG_ENV))
        if args.parallelism is not None:
            cfg = replace(cfg, parallelism=args.parallelism)
        return args.func(args, cfg)
    except (CliUsageError, SeriesError, ValueError) as exc:
        print(f"taylortower: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
