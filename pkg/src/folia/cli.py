"""Command-line front end.

    folia check <file>
    folia report <file> [--format text|json] [--tolerance X]
    folia example <carriere|hrw7|heisenberg> [--trace N] [--coshk X] [--n1 X] [--n2 X] [--emit FILE]
    folia rescale <file> --factor X --emit FILE

Exit codes: 0 all identities pass, 1 input validation failure, 2 identity
residual beyond tolerance, 3 parse or I/O failure.  ``FOLIA_TOLERANCE``
replaces the built-in default tolerance; a document's ``tolerance`` field and
``--tolerance`` take precedence over it, in that order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import transverse as tg
from .diagnostics import TautnessReport, critical_metric_residual, ricci_tautness_pairing, tautness_report
from .document import EXAMPLES, InputDocument, generate_example, parse_input
from .errors import FoliaError, InconsistentCriteria, InvalidFactor, ParseError, ValidationError
from .lie_frame import DEFAULT_TOL, rescale_transverse_metric, validate_algebra

EXIT_OK, EXIT_INVALID, EXIT_IDENTITY, EXIT_PARSE = 0, 1, 2, 3
ENV_TOLERANCE = "FOLIA_TOLERANCE"


def fmt(x: float) -> str:
    # + 0.0 folds -0.0 into 0.0
    return format(float(x) + 0.0, ".12g")


def default_tolerance() -> float:
    value = os.environ.get(ENV_TOLERANCE)
    if value is None:
        return DEFAULT_TOL
    try:
        tol = float(value)
    except ValueError:
        raise ParseError(f"{ENV_TOLERANCE}={value!r} is not a number") from None
    if not tol > 0:
        raise ParseError(f"{ENV_TOLERANCE} must be positive")
    return tol


def resolve_tolerance(doc: InputDocument, override: float | None = None) -> float:
    if override is not None:
        return override
    if doc.tolerance is not None:
        return doc.tolerance
    return default_tolerance()


def build_geometry(doc: InputDocument, tol: float) -> tg.TransverseGeometry:
    """Validate algebra, foliation and standing assumptions; raise ValidationError on failure."""
    alg = validate_algebra(doc.to_algebra(), tol)
    geom = tg.compute_geometry(alg, doc.to_foliation(), tol)
    geom.check_standing_assumptions()
    return geom


def derived_tensors(geom: tg.TransverseGeometry) -> dict[str, np.ndarray]:
    alg, fol, kappa = geom.algebra, geom.foliation, geom.kappa
    lam, crit = critical_metric_residual(geom)
    return {
        "kappa_b": kappa,
        "tau_b": geom.tau_b.entries,
        "riemann_q": geom.riemann_q.entries,
        "ricci_q": geom.ricci,
        "nabla_kappa": geom.nabla_kappa.entries,
        "t_kappa": geom.tautness,
        "div_b_t_kappa": tg.div_b_sym2(alg, fol, geom.tautness),
        "ricci_tau": geom.ricci @ kappa,
        "rough_laplacian_kappa": tg.rough_laplacian(alg, fol, kappa),
        "jacobi_kappa": tg.jacobi_operator(alg, fol, kappa),
        "a_tau_kappa": tg.a_tau_operator(alg, fol, kappa),
        "hr_laplacian_kappa": tg.hr_twisted_laplacian(alg, fol, kappa),
        "critical_residual": crit,
    }


def derived_scalars(geom: tg.TransverseGeometry) -> dict[str, float]:
    lam, _ = critical_metric_residual(geom)
    return {
        "scalar_q": geom.scalar_q,
        "critical_lambda": lam,
        "div_b_kappa": geom.div_b_kappa,
        "ricci_tautness_pairing": ricci_tautness_pairing(geom),
    }


def report_exit_code(report: TautnessReport) -> int:
    return EXIT_IDENTITY if report.failed_identities else EXIT_OK


def _error_payload(exc: FoliaError, code: int) -> dict:
    status = {EXIT_INVALID: "validation_failure", EXIT_IDENTITY: "identity_failure", EXIT_PARSE: "parse_failure"}
    return {"index_base": 1, "status": status[code], "exit_code": code, "error": exc.to_dict()}


def run_report(doc: InputDocument, format: str = "text", tolerance: float | None = None) -> tuple[str, int]:
    """Run validation, geometry and diagnostics; return ``(rendered report, exit code)``."""
    try:
        tol = resolve_tolerance(doc, tolerance)
        geom = build_geometry(doc, tol)
        report = tautness_report(geom, tol)
    except ParseError as exc:
        return _render_error(exc, EXIT_PARSE, format)
    except ValidationError as exc:
        return _render_error(exc, EXIT_INVALID, format)
    except InconsistentCriteria as exc:
        return _render_error(exc, EXIT_IDENTITY, format)
    code = report_exit_code(report)
    if format == "json":
        return render_json(doc, geom, report, code), code
    return render_text(doc, geom, report, code), code


def _render_error(exc: FoliaError, code: int, format: str) -> tuple[str, int]:
    if format == "json":
        return json.dumps(_error_payload(exc, code), indent=2) + "\n", code
    return f"error [{exc.kind}]: {exc}\n", code


def render_json(doc, geom, report, code) -> str:
    normal = [x + 1 for x in geom.foliation.normal]
    payload = {
        "index_base": 1,
        "status": "ok" if code == EXIT_OK else "identity_failure",
        "exit_code": code,
        "input": doc.to_dict(),
        "foliation": {
            "leaf": [a + 1 for a in geom.foliation.leaf],
            "normal": normal,
            "p": geom.foliation.p,
            "q": geom.foliation.q,
        },
        "report": report.to_dict(),
        "scalars": derived_scalars(geom),
        "tensors": {
            name: {"indices": normal, "rank": int(arr.ndim), "entries": arr.tolist()}
            for name, arr in derived_tensors(geom).items()
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def _matrix_lines(label, m, normal):
    head = f"{label} over normal frame {normal}:"
    rows = ["    [" + ", ".join(fmt(v) for v in row) + "]" for row in m]
    return [head, *rows]


def render_text(doc, geom, report: TautnessReport, code: int) -> str:
    normal = [x + 1 for x in geom.foliation.normal]
    tensors = derived_tensors(geom)
    vec = lambda name: "[" + ", ".join(fmt(v) for v in tensors[name]) + "]"
    lines = [
        "folia transverse geometry report (frame indices are 1-based)",
        f"dimension = {doc.dimension}",
        f"leaf = {[a + 1 for a in geom.foliation.leaf]}  normal = {normal}",
        f"tolerance = {fmt(report.tolerance)}",
        "",
        f"kappa_b {normal} = {vec('kappa_b')}",
        *_matrix_lines("Ric^Q", tensors["ricci_q"], normal),
        f"scalar_q = {fmt(geom.scalar_q)}",
        *_matrix_lines("T_kappa", tensors["t_kappa"], normal),
        f"div_B T_kappa {normal} = {vec('div_b_t_kappa')}",
        f"Ric^Q(tau_b) {normal} = {vec('ricci_tau')}",
        f"J^Q(kappa_b) {normal} = {vec('jacobi_kappa')}",
        "",
        f"verdict: {report.verdict} (taut={str(report.taut).lower()})",
    ]
    for name, ok in report.criteria.items():
        lines.append(f"  criterion {name}: {'taut' if ok else 'nontaut'}")
    scalars = {
        "kappa_norm": report.kappa_norm,
        "t_kappa_norm": report.t_kappa_norm,
        "ric_tau_tau": report.ric_tau_tau,
        "jacobi_kappa_norm": report.jacobi_kappa_norm,
        "jacobi_eigenvalue": report.jacobi_eigenvalue,
        "lambda_q": report.lambda_q,
        "critical_residual_norm": report.critical_residual_norm,
        "critical_lambda": derived_scalars(geom)["critical_lambda"],
        "ricci_tautness_pairing": derived_scalars(geom)["ricci_tautness_pairing"],
        "div_b_kappa": geom.div_b_kappa,
    }
    for name, value in scalars.items():
        lines.append(f"{name} = {'none' if value is None else fmt(value)}")
    lines.append(f"einstein = {str(report.einstein).lower()}")
    lines.append(f"critical = {str(report.critical).lower()}")
    lines += ["", "standing assumptions:"]
    for name, value in report.standing_assumptions.items():
        lines.append(f"  {'PASS' if value <= report.tolerance else 'FAIL'} {name} = {fmt(value)}")
    lines.append("identity residuals:")
    for name, value in report.identity_residuals.items():
        lines.append(f"  {'PASS' if value <= report.tolerance else 'FAIL'} {name} = {fmt(value)}")
    lines.append(f"exit code {code}")
    return "\n".join(lines) + "\n"


def _read_document(path: str) -> InputDocument:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_input(text)


def _write(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ParseError(f"cannot write {path}: {exc}") from exc


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="folia", description="Transverse geometry of homogeneous Riemannian foliations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a document only")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--tolerance", type=_positive_float)

    p = sub.add_parser("report", help="compute the full report")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--tolerance", type=_positive_float)

    p = sub.add_parser("example", help="emit a built-in fixture document")
    p.add_argument("name", choices=EXAMPLES)
    p.add_argument("--trace", type=int)
    p.add_argument("--coshk", type=float)
    p.add_argument("--n1", type=float)
    p.add_argument("--n2", type=float)
    p.add_argument("--emit")

    p = sub.add_parser("rescale", help="rescale the transverse metric by a constant factor")
    p.add_argument("file")
    p.add_argument("--factor", type=float, required=True)
    p.add_argument("--emit", required=True)
    return parser


def _cmd_check(args) -> int:
    doc = _read_document(args.file)
    try:
        tol = resolve_tolerance(doc, args.tolerance)
        build_geometry(doc, tol)
    except ValidationError as exc:
        text, code = _render_error(exc, EXIT_INVALID, args.format)
        sys.stdout.write(text)
        return code
    if args.format == "json":
        sys.stdout.write(json.dumps({"index_base": 1, "status": "ok", "exit_code": 0}) + "\n")
    else:
        sys.stdout.write("OK\n")
    return EXIT_OK


def _cmd_report(args) -> int:
    text, code = run_report(_read_document(args.file), args.format, args.tolerance)
    sys.stdout.write(text)
    return code


def _cmd_example(args) -> int:
    params = {key: getattr(args, key) for key in ("trace", "coshk", "n1", "n2") if getattr(args, key) is not None}
    doc = generate_example(args.name, **params)
    _write(args.emit, doc.to_json())
    return EXIT_OK


def _cmd_rescale(args) -> int:
    doc = _read_document(args.file)
    try:
        tol = resolve_tolerance(doc)
        alg = validate_algebra(doc.to_algebra(), tol)
        fol = tg.validate_foliation(alg, doc.to_foliation(), tol)
        scaled = rescale_transverse_metric(alg, fol, args.factor)
    except (ValidationError, InvalidFactor) as exc:
        sys.stderr.write(f"error [{exc.kind}]: {exc}\n")
        return EXIT_INVALID
    _write(args.emit, InputDocument.from_algebra(scaled, fol, doc.tolerance).to_json())
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"check": _cmd_check, "report": _cmd_report, "example": _cmd_example, "rescale": _cmd_rescale}
    try:
        return handler[args.command](args)
    except ParseError as exc:
        if getattr(args, "format", "text") == "json":
            sys.stdout.write(json.dumps(_error_payload(exc, EXIT_PARSE), indent=2) + "\n")
        else:
            sys.stderr.write(f"error [{exc.kind}]: {exc}\n")
        return EXIT_PARSE
    except FoliaError as exc:
        sys.stderr.write(f"error [{exc.kind}]: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
