"""Command-line front end.

Every subcommand prints one JSON object.  Failures print a JSON object on
stderr and exit with 2 (bad input), 3 (formula mismatch) or 4 (numerical
or precision failure).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .curve import CurvePoint, HyperellipticCurve, curve_from_json, point_from_json
from .errors import FormulaMismatch, InputError, KPError, NumericError, SeriesError
from .rrspace import Divisor, divisor_from_json, h0
from .vanishing import gap_sequence, order_report

COMMANDS = ("h0", "gaps", "weight", "order", "theta-order", "verify", "selftest")
NEEDS = {
    "h0": ("divisor",),
    "gaps": ("divisor", "point"),
    "weight": ("divisor", "point"),
    "order": ("divisor", "point"),
    "theta-order": ("divisor", "point"),
    "verify": ("divisor", "point"),
    "selftest": (),
}


@dataclass
class JobConfig:
    command: str
    curve: HyperellipticCurve | None = None
    divisor: Divisor | None = None
    point: CurvePoint | None = None
    n: int | None = None
    eps: float = 1e-12
    r: float = 1e-2
    quad_points: int = 256
    threads: int = 1
    output: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.command != "selftest" and self.curve is None:
            raise InputError("--curve is required")
        for name in NEEDS[self.command]:
            if getattr(self, name) is None:
                raise InputError(f"--{name} is required for {self.command}")
        if not (self.eps > 0 and self.r > 0 and self.quad_points > 0 and self.threads > 0):
            raise InputError("numeric parameters must be positive")
        if self.n is not None and self.n <= 0:
            raise InputError("--n must be positive")


def _numeric(cfg: JobConfig) -> dict:
    from .thetanum import ThetaParams, order_numeric_detail, period_matrix

    RD = period_matrix(cfg.curve, cfg.quad_points)
    res = order_numeric_detail(RD, cfg.curve, cfg.divisor, cfg.point, cfg.r, ThetaParams(cfg.eps))
    return {"numeric": res.order, "defect": res.defect, "samples": res.samples}


def run(cfg: JobConfig) -> dict:
    cfg.validate()
    C, D, P = cfg.curve, cfg.divisor, cfg.point
    if cfg.command == "h0":
        return {"h0": h0(C, D)}
    if cfg.command in ("gaps", "weight"):
        seq = gap_sequence(C, D, P, cfg.threads)
        out = {"weight": seq.weight}
        if cfg.command == "gaps":
            out = {"gaps": list(seq.gaps), **out}
        return out
    if cfg.command == "order":
        return order_report(C, D, P, cfg.n, cfg.threads).to_json()
    if cfg.command == "theta-order":
        return _numeric(cfg)
    if cfg.command == "verify":
        out = order_report(C, D, P, cfg.n, cfg.threads).to_json()
        out.update(_numeric(cfg))
        out["agree"] = out["numeric"] == out["order"]
        return out
    from .selftest import run_selftest

    return run_selftest()


def _parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kpvanish", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--curve", help='JSON {"f": [coefficients, constant term first]}')
    ap.add_argument("--divisor", help='JSON list of {"point": ..., "mult": k}')
    ap.add_argument("--point", help='"infinity" or JSON {"x": "p/q", "y": "p/q"}')
    ap.add_argument("--n", type=int)
    ap.add_argument("--eps", type=float, default=1e-12)
    ap.add_argument("--radius", type=float, default=1e-2)
    ap.add_argument("--quad-points", type=int, default=256)
    ap.add_argument("--json-out", metavar="PATH")
    ap.add_argument("--threads", type=int, default=1)
    return ap


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    C = curve_from_json(_parse_json_arg(ns.curve, "--curve")) if ns.curve else None
    D = divisor_from_json(_parse_json_arg(ns.divisor, "--divisor"), C) if ns.divisor is not None else None
    P = point_from_json(ns.point, C) if ns.point is not None else None
    return JobConfig(
        ns.command, C, D, P, ns.n, ns.eps, ns.radius, ns.quad_points, ns.threads, ns.json_out
    )


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, InputError):
        return 2
    if isinstance(exc, FormulaMismatch):
        return 3
    if isinstance(exc, (NumericError, SeriesError)):
        return 4
    return 1


def _error_payload(exc: Exception) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    trace = getattr(exc, "trace", None)
    if trace:
        out["trace"] = json.loads(json.dumps(trace, default=str))
    return out


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        result = run(cfg)
    except KPError as exc:
        print(json.dumps(_error_payload(exc)), file=sys.stderr)
        return exit_code_for(exc)
    text = json.dumps(result)
    if cfg.output:
        Path(cfg.output).write_text(text + "\n")
    else:
        print(text)
    if cfg.command == "selftest" and result["failed"]:
        return 1
    if cfg.command == "verify" and not result["agree"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
