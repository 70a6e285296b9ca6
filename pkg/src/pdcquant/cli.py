"""Command-line interface.

Thin client over the service-layer functions (no HTTP round trip):

  pdcquant quantify  --family thermal --sa 1 --sb 1 --gain 0.5
  pdcquant threshold --family coherent --sa 0.8 --sb 0.4 --phase-r 3.1416
  pdcquant scan      --family thermal --sa-range 0:2:41 --sb-range 1 \
                     --gain-range 0:1:21 --out region.csv
  pdcquant verify    --family squeezed --sa 0.5 --sb 0.5 --gain 0.3
  pdcquant serve     --host 127.0.0.1 --port 8000

Exit codes: 0 success, 1 verification failed, 2 usage error,
3 quantifier undefined (no light in either beam), 4 I/O error,
5 truncation inadequate at the configured bound.
"""

from __future__ import annotations

import argparse
import sys

from pydantic import ValidationError

from . import __version__
from .errors import (InvalidConfigError, TruncationInadequateError,
                     UndefinedQuantifierError)
from .scan import parse_axis, run_scan, to_csv_text, write_csv, write_json
from .schemas import (AxisModel, PointRequest, ScanRequest, ScanResponse,
                      ThresholdRequest, VerifyRequest)
from .service import quantify_point, threshold_point, verify_config

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNDEFINED = 3
EXIT_IO = 4
EXIT_TRUNCATION = 5


def _point_flags(p: argparse.ArgumentParser, with_gain: bool = True):
    p.add_argument("--family", required=True,
                   choices=["vacuum", "thermal", "coherent", "squeezed"])
    p.add_argument("--sa", type=float, default=0.0,
                   help="seed intensity, beam A (mean photons)")
    p.add_argument("--sb", type=float, default=0.0,
                   help="seed intensity, beam B (mean photons)")
    if with_gain:
        p.add_argument("--gain", type=float, required=True,
                       help="pair gain N = sinh^2|kappa|")
    p.add_argument("--phase-r", type=float, default=0.0,
                   help="coherent interference phase r")
    if with_gain:
        p.add_argument("--zeta-a", type=float, default=0.0,
                       help="squeezed orientation, beam A")
        p.add_argument("--zeta-b", type=float, default=0.0,
                       help="squeezed orientation, beam B")
        p.add_argument("--phi", type=float, default=0.0, help="pump phase")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdcquant",
        description="Nonclassicality quantifiers for seeded parametric "
                    "pair sources")
    parser.add_argument("--version", action="version",
                        version=f"pdcquant {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quantify",
                       help="quantifiers, flags and label for one point")
    _point_flags(q)

    t = sub.add_parser("threshold",
                       help="gain thresholds for a seed pair")
    _point_flags(t, with_gain=False)

    s = sub.add_parser("scan", help="label a grid of configurations")
    s.add_argument("--family", required=True,
                   choices=["thermal", "coherent", "squeezed"])
    s.add_argument("--sa-range", required=True, metavar="AXIS",
                   help="VALUE or START:STOP:COUNT for beam A intensity")
    s.add_argument("--sb-range", required=True, metavar="AXIS")
    s.add_argument("--gain-range", required=True, metavar="AXIS")
    s.add_argument("--phase-r", type=float, default=0.0)
    s.add_argument("--out", default=None,
                   help="output path (stdout when omitted)")
    s.add_argument("--format", choices=["csv", "json"], default="csv")

    v = sub.add_parser("verify",
                       help="check closed forms against the Fock oracle")
    _point_flags(v)
    v.add_argument("--dim", type=int, default=25,
                   help="initial Fock truncation per mode")
    v.add_argument("--tail-bound", type=float, default=1e-8,
                   help="max tolerated top-two-level population")
    v.add_argument("--no-auto-dim", action="store_true",
                   help="fail instead of growing dim when the tail "
                        "bound is violated")

    r = sub.add_parser("serve", help="run the HTTP service")
    r.add_argument("--host", default="127.0.0.1")
    r.add_argument("--port", type=int, default=8000)
    return parser


def _cmd_quantify(args) -> int:
    req = PointRequest(family=args.family, s_a=args.sa, s_b=args.sb,
                       n_pdc=args.gain, phase_r=args.phase_r,
                       zeta_a=args.zeta_a, zeta_b=args.zeta_b, phi=args.phi)
    print(quantify_point(req).model_dump_json(indent=2))
    return EXIT_OK


def _cmd_threshold(args) -> int:
    req = ThresholdRequest(family=args.family, s_a=args.sa, s_b=args.sb,
                           phase_r=args.phase_r)
    print(threshold_point(req).model_dump_json(indent=2))
    return EXIT_OK


def _axis_model(text: str) -> AxisModel:
    return AxisModel.from_axis(parse_axis(text))


def _cmd_scan(args) -> int:
    req = ScanRequest(family=args.family,
                      s_a=_axis_model(args.sa_range),
                      s_b=_axis_model(args.sb_range),
                      n_pdc=_axis_model(args.gain_range),
                      phase_r=args.phase_r)
    result = run_scan(req.to_spec())
    if args.out is None or args.out == "-":
        if args.format == "csv":
            sys.stdout.write(to_csv_text(result))
        else:
            print(ScanResponse.from_result(result).model_dump_json(indent=2))
    elif args.format == "csv":
        write_csv(result, args.out)
    else:
        write_json(result, args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    req = VerifyRequest(family=args.family, s_a=args.sa, s_b=args.sb,
                        n_pdc=args.gain, phase_r=args.phase_r,
                        zeta_a=args.zeta_a, zeta_b=args.zeta_b,
                        phi=args.phi, dim=args.dim,
                        tail_bound=args.tail_bound,
                        auto_dim=not args.no_auto_dim)
    resp = verify_config(req)
    print(resp.model_dump_json(indent=2))
    return EXIT_OK if resp.passed else EXIT_FAILED


def _cmd_serve(args) -> int:
    try:
        import uvicorn
    except ImportError:
        print("error: the 'serve' command needs uvicorn "
              "(pip install pdcquant[serve])", file=sys.stderr)
        return EXIT_FAILED
    uvicorn.run("pdcquant.service:app", host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "quantify": _cmd_quantify,
    "threshold": _cmd_threshold,
    "scan": _cmd_scan,
    "verify": _cmd_verify,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UndefinedQuantifierError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except TruncationInadequateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (InvalidConfigError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
