"""Command-line front end.

Subcommands: lang, special, cover, rokhlin, towerdim, amen, dad, bounds,
certify (full chain), verify (re-check a certificate file).  Exit codes:
0 pass, 1 fail (witnesses in the certificate), 2 inconclusive at this
depth, 3 usage or configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys as _sys

from .certificates import Certificate, parse_rational
from .config import spec_from_file
from .errors import ConfigError, DepthInsufficient, ShiftDimError
from .pipeline import (
    PipelineParams,
    recheck_certificate,
    run_amen,
    run_bounds,
    run_certify,
    run_cover,
    run_dad,
    run_lang,
    run_rokhlin,
    run_special,
    run_towerdim,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", required=True, help="subshift presentation file")
    p.add_argument("--out", default=None, help="artifact directory")
    p.add_argument("--depth", type=int, default=24, help="prefix length k / report depth")
    p.add_argument("--past-len", type=int, default=6, help="past length l")
    p.add_argument("--cover-horizon", type=int, default=None, help="cover horizon (default k + l)")
    p.add_argument("--horizon", type=int, default=20, help="language horizon")
    p.add_argument("--height", type=int, default=5, help="tower height N")
    p.add_argument("--big-n", type=int, default=37, help="map resolution N")
    p.add_argument("--epsilon", default="2", help="target epsilon as P/Q")
    p.add_argument("--window", default="-1,0,1", help="window set E, comma-separated")
    p.add_argument("--exponent-bound", type=int, default=2, help="groupoid witness bound")
    p.add_argument("--seed", type=int, default=0, help="seed for fuzz-style runs")


def _window(arg: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in arg.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"bad window set {arg!r}")


def _emit(cert: Certificate, out: str | None, name: str):
    text = cert.canonical_json()
    if out:
        os.makedirs(out, exist_ok=True)
        with open(os.path.join(out, f"{name}.json"), "w") as fh:
            fh.write(text)
    _sys.stdout.write(text)


def _exit_for(cert: Certificate) -> int:
    if cert.verdict == "pass":
        return EXIT_PASS
    if cert.verdict == "inconclusive-at-depth":
        return EXIT_INCONCLUSIVE
    return EXIT_FAIL


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="shiftdim")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (
        "lang",
        "special",
        "cover",
        "rokhlin",
        "towerdim",
        "amen",
        "dad",
        "certify",
    ):
        _add_common(sub.add_parser(name))
    bounds_p = sub.add_parser("bounds")
    bounds_p.add_argument("--q", type=int, required=True)
    bounds_p.add_argument("--dim-x", type=int, default=0)
    bounds_p.add_argument("--out", default=None)
    verify_p = sub.add_parser("verify")
    verify_p.add_argument("certificate", help="certificate file to re-check")
    args = parser.parse_args(argv)

    try:
        if args.command == "bounds":
            report, cert = run_bounds(args.q, args.dim_x)
            _emit(cert, args.out, "bounds")
            print(
                f"(rokhlin <= {report.rokhlin}, tower <= {report.tower}, "
                f"amenability <= {report.amenability}, dad <= {report.dad}, "
                f"nuclear <= {report.nuclear})"
            )
            return _exit_for(cert)
        if args.command == "verify":
            with open(args.certificate) as fh:
                cert = Certificate.from_json(fh.read())
            ok, why = recheck_certificate(cert)
            if ok and cert.verdict == "pass":
                print(f"verified: {cert.kind} (pass)")
                return EXIT_PASS
            if not ok:
                print(f"verification failed: {why or cert.first_failure()}")
                return EXIT_FAIL
            print(f"certificate is genuine but records verdict {cert.verdict}: "
                  f"{cert.first_failure()}")
            return _exit_for(cert)

        spec, _ = spec_from_file(args.config)
        epsilon = parse_rational(args.epsilon)
        window = _window(args.window)
        if args.command == "lang":
            _, cert = run_lang(spec, args.horizon, args.out)
            _emit(cert, args.out, "lang")
            return _exit_for(cert)
        if args.command == "special":
            _, cert = run_special(spec, max(args.depth, 4))
            _emit(cert, args.out, "special")
            return _exit_for(cert)
        if args.command == "cover":
            _, cert = run_cover(spec, args.depth, args.past_len, args.cover_horizon)
            _emit(cert, args.out, "cover")
            return _exit_for(cert)
        graph, cover_cert = run_cover(spec, args.depth, args.past_len, args.cover_horizon)
        if args.command == "rokhlin":
            _, cert = run_rokhlin(graph, args.height)
            _emit(cert, args.out, "rokhlin")
            return _exit_for(cert)
        cover, _ = run_rokhlin(graph, args.height)
        if args.command == "towerdim":
            _, cert = run_towerdim(graph, cover, window)
            _emit(cert, args.out, "towerdim")
            return _exit_for(cert)
        if args.command == "amen":
            _, _, _, pair_cert, cert = run_amen(graph, cover, window, args.big_n, epsilon)
            _emit(pair_cert, args.out, "amen_pairs")
            _emit(cert, args.out, "amen")
            return _exit_for(cert)
        if args.command == "dad":
            emap, _, orbit, _, _ = run_amen(graph, cover, window, args.big_n, epsilon)
            _, cert = run_dad(graph, emap, orbit, window, args.exponent_bound, epsilon)
            _emit(cert, args.out, "dad")
            return _exit_for(cert)
        if args.command == "certify":
            with open(args.config) as fh:
                config_text = fh.read()
            params = PipelineParams(
                config_text=config_text,
                out_dir=args.out,
                horizon=args.horizon,
                depth=args.depth,
                past_len=args.past_len,
                cover_horizon=args.cover_horizon,
                height=args.height,
                window_set=window,
                big_n=args.big_n,
                epsilon=epsilon,
                exponent_bound=args.exponent_bound,
            )
            certs, overall = run_certify(params)
            for name, cert in certs.items():
                print(f"{name}: {cert.verdict}")
            print(f"overall: {overall}")
            if overall == "pass":
                return EXIT_PASS
            return EXIT_INCONCLUSIVE if overall == "inconclusive-at-depth" else EXIT_FAIL
        parser.error(f"unhandled command {args.command}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=_sys.stderr)
        return EXIT_USAGE
    except DepthInsufficient as exc:
        print(f"inconclusive at this depth: {exc}", file=_sys.stderr)
        return EXIT_INCONCLUSIVE
    except ShiftDimError as exc:
        print(f"failed: {exc}", file=_sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"io error: {exc}", file=_sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
