"""Command-line front end.

Model files are line-oriented: `generator <name> <degree>` declarations
followed by `d <name> = <polynomial>` lines ('#' starts a comment, omitted
d-lines mean zero).  Every command emits deterministic `key = value` pairs;
`--format human` adds a header and a timing line, `--format structured`
emits the bare pairs for golden-file comparison.

Exit codes: 0 success, 1 usage or input error, 2 mathematical precondition
failure (non-elliptic model, wrong k), 3 internal inconsistency (method
disagreement or a failed verification).
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .algebra import format_element, parse_element
from .cohomology import (
    cohomology_basis,
    formal_dimension,
    is_elliptic,
    require_elliptic,
    toomer_oracle,
    top_class,
)
from .algebra import build_algebra
from .differential import SullivanModel, build_differential, build_model, is_pure
from .errors import (
    InternalInconsistencyError,
    ModelError,
    ParseError,
    PreconditionError,
)
from .murillo import coefficient_matrix, murillo_fundamental_class
from .spectral import delta_cohomology, spectral_run
from . import selftest as selftest_mod


@dataclass
class ModelFile:
    path: str
    model: SullivanModel
    source: str


def parse_model_file(path: str) -> ModelFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc}") from exc
    model = parse_model_text(source)
    return ModelFile(path=path, model=model, source=source)


def parse_model_text(source: str) -> SullivanModel:
    gen_specs: List[Tuple[str, int]] = []
    d_lines: List[Tuple[int, str, str, int]] = []  # line no, name, poly, col
    seen_d = False
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        if tokens[0] == "generator":
            if seen_d:
                raise ParseError(
                    "generator declarations must precede d-lines", line=lineno
                )
            if len(tokens) != 3:
                raise ParseError(
                    "expected `generator <name> <degree>`", line=lineno
                )
            try:
                degree = int(tokens[2])
            except ValueError:
                raise ParseError(
                    f"degree {tokens[2]!r} is not an integer", line=lineno
                ) from None
            gen_specs.append((tokens[1], degree))
        elif tokens[0] == "d":
            seen_d = True
            if "=" not in line:
                raise ParseError("expected `d <name> = <polynomial>`", line=lineno)
            head, _, poly = line.partition("=")
            head_tokens = head.split()
            if len(head_tokens) != 2:
                raise ParseError("expected `d <name> = <polynomial>`", line=lineno)
            d_lines.append((lineno, head_tokens[1], poly, line.index("=") + 2))
        else:
            raise ParseError(
                f"unrecognized statement {tokens[0]!r}", line=lineno
            )
    if not gen_specs:
        raise ParseError("model file declares no generators")
    algebra = build_algebra(gen_specs)
    images = {}
    for lineno, name, poly, col0 in d_lines:
        if not algebra.has_generator(name):
            raise ParseError(f"d-line for unknown generator {name!r}", line=lineno)
        if name in images:
            raise ParseError(f"duplicate d-line for {name!r}", line=lineno)
        try:
            images[name] = parse_element(poly, algebra)
        except ParseError as exc:
            col = (exc.column + col0) if exc.column is not None else None
            raise ParseError(exc.message, line=lineno, column=col) from None
    differential = build_differential(algebra, images)
    return build_model(algebra, differential)


# ---------------------------------------------------------------------------
# report assembly

Pairs = List[Tuple[str, object]]


def _fmt_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    return str(value)


def _emit(pairs: Pairs, header: str, fmt: str, started: float) -> None:
    out = sys.stdout
    if fmt == "human":
        print(f"== {header} ==", file=out)
    for key, value in pairs:
        print(f"{key} = {_fmt_value(value)}", file=out)
    if fmt == "human":
        print(f"elapsed_seconds = {time.perf_counter() - started:.3f}", file=out)


def _info_pairs(mf: ModelFile) -> Pairs:
    model = mf.model
    alg = model.algebra
    return [
        ("model.path", mf.path),
        ("model.generators", alg.ngens),
        ("model.dim_v_even", len(alg.even_indices)),
        ("model.dim_v_odd", len(alg.odd_indices)),
        ("model.k", model.k),
        ("model.formal_dimension", formal_dimension(model)),
        ("model.pure", is_pure(model)),
    ]


def _elliptic_pairs(model: SullivanModel, bound: Optional[int]) -> Pairs:
    res = is_elliptic(model, bound)
    pairs: Pairs = [
        ("elliptic.status", res.status),
        ("elliptic.formal_dimension", res.formal_dimension),
        ("elliptic.bound", res.bound),
        ("elliptic.window_width", res.window_width),
    ]
    if res.status == "elliptic":
        pairs.append(("elliptic.vanishing_from", res.window_start))
    else:
        shown = ",".join(str(d) for d in res.nonvanishing_degrees[:12])
        if len(res.nonvanishing_degrees) > 12:
            shown += ",..."
        pairs.append(("elliptic.nonvanishing_degrees", shown))
    return pairs


def _cohomology_pairs(
    model: SullivanModel, lo: int, hi: int, with_reps: bool
) -> Pairs:
    pairs: Pairs = []
    for n in range(lo, hi + 1):
        space = cohomology_basis(model, n)
        pairs.append((f"cohomology.dim.{n}", space.dimension))
        if with_reps:
            for i, rep in enumerate(space.representatives):
                pairs.append((f"cohomology.rep.{n}.{i}", format_element(rep)))
    return pairs


def _top_class_pairs(model: SullivanModel) -> Pairs:
    degree, space = top_class(model)
    return [
        ("top_class.degree", degree),
        ("top_class.representative", format_element(space.representatives[0])),
    ]


def _murillo_pairs(model: SullivanModel) -> Pairs:
    matrix = coefficient_matrix(model)
    pairs: Pairs = [
        ("murillo.rows", len(matrix.odd_gens)),
        ("murillo.cols", len(matrix.even_gens)),
    ]
    for j, row in enumerate(matrix.entries, start=1):
        for i, entry in enumerate(row, start=1):
            pairs.append((f"murillo.entry.{j}.{i}", format_element(entry)))
    omega = murillo_fundamental_class(model)
    pairs.append(("murillo.class", format_element(omega)))
    return pairs


def _delta_pairs(model: SullivanModel, degree: int, with_reps: bool) -> Pairs:
    classes = delta_cohomology(model, degree)
    by_p: Dict[int, int] = {}
    for cls in classes:
        by_p[cls.p] = by_p.get(cls.p, 0) + 1
    pairs: Pairs = [
        ("delta.degree", degree),
        ("delta.dim_total", len(classes)),
    ]
    for p in sorted(by_p):
        pairs.append((f"delta.dim.p{p}", by_p[p]))
    if with_reps:
        for i, cls in enumerate(classes):
            pairs.append((f"delta.class.{i}.p", cls.p))
            pairs.append((f"delta.class.{i}.u", format_element(cls.representative.u)))
            pairs.append((f"delta.class.{i}.v", format_element(cls.representative.v)))
    return pairs


def _toomer_pairs(model: SullivanModel, method: str) -> Tuple[Pairs, bool]:
    """Returns the pairs and whether the run is consistent."""
    pairs: Pairs = []
    agree = True
    oracle = spectral = None
    if method in ("oracle", "both"):
        oracle = toomer_oracle(model)
        pairs.append(("toomer.oracle.e0", oracle.e0))
        pairs.append(
            ("toomer.oracle.representative", format_element(oracle.representative))
        )
    if method in ("spectral", "both"):
        spectral = spectral_run(model).result
        pairs.append(("toomer.spectral.e0", spectral.e0))
        pairs.append(
            ("toomer.spectral.representative", format_element(spectral.representative))
        )
        pairs.append(("toomer.spectral.witness.p", spectral.witness[0]))
        pairs.append(("toomer.spectral.witness.parity", spectral.witness[1]))
    if method == "both":
        agree = oracle.e0 == spectral.e0
        pairs.append(("toomer.agree", agree))
    return pairs, agree


def _spectral_trace_pairs(model: SullivanModel) -> Pairs:
    run = spectral_run(model)
    pairs: Pairs = []
    for i, outcome in enumerate(run.outcomes):
        trace = outcome.trace
        prefix = f"delta.class.{i}"
        pairs.append((f"{prefix}.p", outcome.delta_class.p))
        pairs.append((f"{prefix}.depth", outcome.depth))
        pairs.append((f"{prefix}.lift.outcome", trace.outcome))
        pairs.append((f"{prefix}.lift.iterations", trace.iterations))
        pairs.append((f"{prefix}.lift.t_bound", trace.t_bound))
        final = format_element(trace.final) if trace.final is not None else None
        pairs.append((f"{prefix}.lift.final", final))
    return pairs


# ---------------------------------------------------------------------------
# commands


def _cmd_info(args) -> int:
    mf = parse_model_file(args.model)
    _emit(_info_pairs(mf), f"info: {args.model}", args.format, args.started)
    return 0


def _cmd_validate(args) -> int:
    mf = parse_model_file(args.model)
    pairs: Pairs = [("validate.ok", True), ("model.k", mf.model.k)]
    _emit(pairs, f"validate: {args.model}", args.format, args.started)
    return 0


def _cmd_cohomology(args) -> int:
    mf = parse_model_file(args.model)
    lo = args.degree
    hi = args.to if args.to is not None else lo
    if lo < 0 or hi < lo:
        raise PreconditionError("degree range must satisfy 0 <= degree <= to")
    pairs = _cohomology_pairs(mf.model, lo, hi, with_reps=args.format == "human")
    _emit(pairs, f"cohomology: {args.model}", args.format, args.started)
    return 0


def _cmd_elliptic(args) -> int:
    mf = parse_model_file(args.model)
    pairs = _elliptic_pairs(mf.model, args.max_degree)
    _emit(pairs, f"elliptic: {args.model}", args.format, args.started)
    return 0


def _cmd_top_class(args) -> int:
    mf = parse_model_file(args.model)
    require_elliptic(mf.model, args.max_degree)
    _emit(_top_class_pairs(mf.model), f"top-class: {args.model}", args.format, args.started)
    return 0


def _cmd_murillo(args) -> int:
    mf = parse_model_file(args.model)
    require_elliptic(mf.model, args.max_degree)
    _emit(_murillo_pairs(mf.model), f"murillo: {args.model}", args.format, args.started)
    return 0


def _cmd_delta_cohomology(args) -> int:
    mf = parse_model_file(args.model)
    pairs = _delta_pairs(mf.model, args.degree, with_reps=True)
    _emit(pairs, f"delta-cohomology: {args.model}", args.format, args.started)
    return 0


def _cmd_toomer(args) -> int:
    mf = parse_model_file(args.model)
    require_elliptic(mf.model, args.max_degree)
    pairs, agree = _toomer_pairs(mf.model, args.method)
    _emit(pairs, f"toomer: {args.model}", args.format, args.started)
    if not agree:
        print("error: oracle and spectral methods disagree", file=sys.stderr)
        return 3
    return 0


def _cmd_report(args) -> int:
    mf = parse_model_file(args.model)
    model = mf.model
    pairs: Pairs = [("command", "report"), ("engine.version", __version__)]
    pairs += _info_pairs(mf)
    pairs += _elliptic_pairs(model, args.max_degree)
    elliptic = is_elliptic(model, args.max_degree)
    agree = True
    if elliptic.is_elliptic:
        n = formal_dimension(model)
        pairs += _cohomology_pairs(model, 0, n, with_reps=False)
        pairs += _top_class_pairs(model)
        if is_pure(model):
            pairs += _murillo_pairs(model)
        if model.k == 3:
            toomer_pairs, agree = _toomer_pairs(model, "both")
            pairs += toomer_pairs
            pairs += _delta_pairs(model, n, with_reps=False)
            pairs += _spectral_trace_pairs(model)
        else:
            toomer_pairs, _ = _toomer_pairs(model, "oracle")
            pairs += toomer_pairs
    _emit(pairs, f"report: {args.model}", args.format, args.started)
    return 0 if agree else 3


def _cmd_selftest(args) -> int:
    results = selftest_mod.run_all(seed=args.seed, cases=args.cases)
    pairs: Pairs = [("selftest.seed", args.seed)]
    failed = False
    for res in results:
        pairs.append((f"selftest.{res.name}.cases", res.cases))
        pairs.append((f"selftest.{res.name}.ok", res.ok))
        if not res.ok:
            failed = True
            pairs.append((f"selftest.{res.name}.detail", res.detail))
    _emit(pairs, "selftest", args.format, args.started)
    return 3 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; this front end reserves
    2 for mathematical preconditions, so usage errors exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="sullivan", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, with_model: bool = True):
        p = sub.add_parser(name)
        p.set_defaults(handler=handler)
        if with_model:
            p.add_argument("model", help="path to a model file")
            p.add_argument(
                "--max-degree",
                type=int,
                default=None,
                help="override the ellipticity scan bound",
            )
        p.add_argument(
            "--format",
            choices=("human", "structured"),
            default="human",
        )
        return p

    add("info", _cmd_info)
    add("validate", _cmd_validate)
    p = add("cohomology", _cmd_cohomology)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--to", type=int, default=None)
    add("elliptic", _cmd_elliptic)
    add("top-class", _cmd_top_class)
    add("murillo", _cmd_murillo)
    p = add("delta-cohomology", _cmd_delta_cohomology)
    p.add_argument("--degree", type=int, required=True)
    p = add("toomer", _cmd_toomer)
    p.add_argument(
        "--method", choices=("oracle", "spectral", "both"), default="both"
    )
    add("report", _cmd_report)
    p = add("selftest", _cmd_selftest, with_model=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=200)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.started = time.perf_counter()
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistencyError as exc:
        print(f"error: internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
