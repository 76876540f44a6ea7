"""Batch interface: parse problem documents, run cohomology, classification,
search, deficiency and ledger commands, emit deterministic tables.

A problem is one declarative YAML document (key-value with nested lists);
unknown fields are rejected.  Exit codes: 0 for success/Yes, 1 for a No
verdict, 3 for Unknown, 2 for parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from . import __version__
from .classify import (
    deficiency_table,
    is_acm,
    is_tacm,
    one_degree_buchsbaum,
    search,
)
from .errors import EngineError, InputError, IntervalPresent, WindowNotFound
from .exactseq import default_evaluator
from .intervals import pad_vec
from .logbundles import cotangent_tangent_pair, ledger_checks, log_pair
from .varieties import (
    Arrangement,
    VarietyModel,
    abelian_surface,
    arrangement,
    blowup_p2,
    component_from_class,
    component_from_degree,
    hirzebruch,
    projective_space,
    quadric_surface,
    surface_in_p3,
)

_VARIETY_KEYS = {"kind", "n", "e", "points", "degree", "polarization_square"}
_SPEC_KEYS = {
    "variety",
    "polarization",
    "arrangement",
    "sheaf",
    "line_class",
    "window",
    "cap",
    "degree",
    "side",
    "class_bound",
    "m_bound",
    "ledger",
    "format",
}
_ARR_KEYS = {"components", "span_rank", "snc"}
_SHEAVES = ("line", "cotangent", "tangent", "log_cotangent", "log_tangent")


@dataclass
class ProblemSpec:
    variety: dict = field(default_factory=dict)
    polarization: list | int | None = None
    arrangement: dict | None = None
    sheaf: str | None = None
    line_class: list | int | None = None
    window: list = field(default_factory=lambda: [-4, 4])
    cap: int = 8
    degree: int = 1
    side: str = "cot"
    class_bound: int = 4
    m_bound: int = 6
    ledger: str | None = None
    format: str | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "ProblemSpec":
        if not isinstance(data, dict):
            raise InputError("problem document must be a mapping")
        unknown = set(data) - _SPEC_KEYS
        if unknown:
            raise InputError(f"unknown fields: {sorted(unknown)}")
        if "variety" not in data and "ledger" not in data:
            raise InputError("a problem document needs a variety (or a ledger name)")
        var = data.get("variety", {})
        if var:
            bad = set(var) - _VARIETY_KEYS
            if bad:
                raise InputError(f"unknown variety fields: {sorted(bad)}")
        arr = data.get("arrangement")
        if arr is not None:
            bad = set(arr) - _ARR_KEYS
            if bad:
                raise InputError(f"unknown arrangement fields: {sorted(bad)}")
        sheaf = data.get("sheaf")
        if sheaf is not None and sheaf not in _SHEAVES:
            raise InputError(f"sheaf must be one of {_SHEAVES}")
        return cls(**{k: v for k, v in data.items() if k in _SPEC_KEYS})

    def to_dict(self) -> dict:
        return asdict(self)


def build_variety(spec: ProblemSpec) -> VarietyModel:
    var = spec.variety
    kind = var.get("kind")
    if kind == "projective_space":
        return projective_space(int(var["n"]))
    if kind == "quadric":
        return quadric_surface()
    if kind == "hirzebruch":
        return hirzebruch(int(var["e"]))
    if kind == "blowup_p2":
        return blowup_p2(int(var["points"]))
    if kind == "surface_p3":
        return surface_in_p3(int(var["degree"]))
    if kind == "abelian":
        return abelian_surface(int(var["polarization_square"]))
    raise InputError(f"unknown variety kind {kind!r}")


def _as_class(x: VarietyModel, raw) -> tuple:
    if isinstance(raw, int):
        raw = [raw]
    return x.check_class(tuple(int(v) for v in raw))


def build_arrangement(x: VarietyModel, spec: ProblemSpec) -> Arrangement:
    raw = spec.arrangement
    if raw is None:
        return arrangement(x, [])
    comps = []
    for entry in raw.get("components", []):
        if isinstance(entry, dict):
            bad = set(entry) - {"degree", "genus", "class"}
            if bad:
                raise InputError(f"unknown component fields: {sorted(bad)}")
            if "class" in entry:
                comps.append(component_from_class(x, _as_class(x, entry["class"])))
            else:
                comps.append(component_from_degree(x, int(entry["degree"]), int(entry.get("genus", 0))))
        else:
            comps.append(component_from_class(x, _as_class(x, entry)))
    return arrangement(x, comps, span_rank=raw.get("span_rank"), snc=raw.get("snc", True))


def load_problem(path: Path) -> ProblemSpec:
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise InputError(f"{path}: bad YAML ({exc})")
    return ProblemSpec.from_dict(data or {})


# -- table rendering ----------------------------------------------------------


def render_table(header: list[str], rows: list[list[str]], fmt: str, out):
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row)
        return
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    out.write("  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    for row in rows:
        out.write("  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _banner(out, args):
    if not args.no_header:
        out.write(f"# logacm {__version__}\n")


# -- subcommands ---------------------------------------------------------------


def _sheaf_expr(x: VarietyModel, arr: Arrangement, spec: ProblemSpec):
    from .exactseq import LineE

    name = spec.sheaf or "log_cotangent"
    if name == "line":
        if spec.line_class is None:
            raise InputError("sheaf 'line' needs line_class")
        return LineE(x, _as_class(x, spec.line_class))
    if name == "cotangent":
        return cotangent_tangent_pair(x)[0]
    if name == "tangent":
        return cotangent_tangent_pair(x)[1]
    pair = log_pair(x, arr)
    return pair.cotangent_log if name == "log_cotangent" else pair.tangent_log


def cmd_cohom(spec: ProblemSpec, args, out) -> int:
    x = build_variety(spec)
    arr = build_arrangement(x, spec)
    expr = _sheaf_expr(x, arr, spec)
    if spec.polarization is None:
        raise InputError("cohom needs a polarization to generate twists")
    h = _as_class(x, spec.polarization)
    lo, hi = (args.window if args.window else spec.window)
    ev = default_evaluator()
    rows = []
    from .varieties import vscale

    for t in range(int(lo), int(hi) + 1):
        v = pad_vec(ev.cohom(expr, vscale(t, h)), x.dim + 1)
        rows.append([str(t)] + [str(c) for c in v])
    render_table(["t"] + [f"h{i}" for i in range(x.dim + 1)], rows, _fmt(spec, args), out)
    return 0


def _fmt(spec: ProblemSpec, args) -> str:
    return args.format or spec.format or "md"


def classify_one(spec: ProblemSpec, cap: int):
    x = build_variety(spec)
    arr = build_arrangement(x, spec)
    if spec.polarization is None:
        raise InputError("classify needs a polarization")
    h = _as_class(x, spec.polarization)
    fn = is_tacm if spec.side == "tan" else is_acm
    return fn(x, h, arr, cap=cap)


def cmd_classify(spec: ProblemSpec, args, out) -> int:
    verdict = classify_one(spec, args.cap or spec.cap)
    out.write(f"verdict: {verdict.status}\n")
    if verdict.witness is not None:
        i, t, val = verdict.witness
        out.write(f"witness: h^{i} at t={t} is {val}\n")
    else:
        out.write("witness: -\n")
    for c in verdict.certificates:
        out.write(f"certificate: {c}\n")
    return {"Yes": 0, "No": 1, "Unknown": 3}[verdict.status]


def cmd_search(spec: ProblemSpec, args, out) -> int:
    x = build_variety(spec)
    if spec.polarization is None:
        raise InputError("search needs a polarization")
    h = _as_class(x, spec.polarization)
    results = search(x, h, spec.class_bound, spec.m_bound, side=spec.side, cap=args.cap or spec.cap)
    rows = []
    for combo, verdict, first_rule in results:
        rows.append(["+".join(str(list(c)) for c in combo), verdict.status, first_rule or "-"])
    render_table(["arrangement", "verdict", "first_failing_rule"], rows, _fmt(spec, args), out)
    return 0


def cmd_deficiency(spec: ProblemSpec, args, out) -> int:
    x = build_variety(spec)
    arr = build_arrangement(x, spec)
    if spec.polarization is None:
        raise InputError("deficiency needs a polarization")
    h = _as_class(x, spec.polarization)
    try:
        table = deficiency_table(x, h, arr, spec.degree, cap=args.cap or spec.cap, side=spec.side)
    except WindowNotFound as exc:
        # fall back to an uncertified scan over the requested window
        from .exactseq import default_evaluator
        from .varieties import vscale

        out.write(f"window: not certified ({exc}); scanning without tail certificates\n")
        lo, hi = (args.window if args.window else spec.window)
        pair = log_pair(x, arr)
        expr = pair.cotangent_log if spec.side == "cot" else pair.tangent_log
        ev = default_evaluator()
        rows = []
        for t in range(int(lo), int(hi) + 1):
            v = pad_vec(ev.cohom(expr, vscale(t, h)), x.dim + 1)
            rows.append([str(t), str(v[spec.degree])])
        render_table(["t", f"h{spec.degree}"], rows, _fmt(spec, args), out)
        return 0
    rows = [[str(t), str(v)] for t, v in sorted(table.entries.items())]
    render_table(["t", f"h{spec.degree}"], rows, _fmt(spec, args), out)
    try:
        if one_degree_buchsbaum(table):
            out.write("certificate: 1-Buchsbaum (one-degree rule)\n")
    except IntervalPresent:
        out.write("certificate: none (inexact entries)\n")
    return 0


def cmd_ledger(spec: ProblemSpec, args, out) -> int:
    name = spec.ledger
    if name is None:
        raise InputError("ledger command needs a ledger name")
    kwargs = {}
    if name == "thm_pn_reduction":
        kwargs = {"n": int(spec.variety.get("n", 3)), "d": int(spec.variety.get("degree", 2))}
    report = ledger_checks(name, **kwargs)
    out.write(f"chain: {report.name}\n")
    for line in report.lines:
        out.write(f"  {line}\n")
    out.write(f"values: {report.values}\n")
    out.write(f"contradiction: {'yes' if report.contradiction else 'no'}\n")
    return 0


def _classify_file(path: Path, cap: int):
    try:
        spec = load_problem(path)
        verdict = classify_one(spec, cap)
    except (EngineError, OSError, KeyError, TypeError, ValueError) as exc:
        return [path.name, "Error", "", str(exc)]
    wit = ""
    if verdict.witness is not None:
        i, t, val = verdict.witness
        wit = f"h^{i}@t={t}:{val}"
    first = verdict.certificates[0] if verdict.certificates else ""
    return [path.name, verdict.status, wit, first]


def cmd_classify_dir(directory: Path, args, out) -> int:
    files = sorted(p for p in directory.iterdir() if p.suffix in (".yaml", ".yml"))
    jobs = max(1, args.jobs)
    if jobs == 1:
        rows = [_classify_file(p, args.cap or 8) for p in files]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda p: _classify_file(p, args.cap or 8), files))
    render_table(["file", "verdict", "witness", "first_certificate"], rows, "csv", out)
    return 0


COMMANDS = {
    "cohom": cmd_cohom,
    "classify": cmd_classify,
    "search": cmd_search,
    "deficiency": cmd_deficiency,
    "ledger": cmd_ledger,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logacm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("problem", help="problem document (YAML); for classify, a directory runs a suite")
        p.add_argument("--window", type=int, nargs=2, default=None, metavar=("LO", "HI"))
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--format", choices=("csv", "md"), default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--no-header", action="store_true")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    out = sys.stdout
    path = Path(args.problem)
    try:
        if args.command == "classify" and path.is_dir():
            _banner(out, args)
            return cmd_classify_dir(path, args, out)
        spec = load_problem(path)
        _banner(out, args)
        return COMMANDS[args.command](spec, args, out)
    except (InputError, OSError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
