"""Command-line interface.

Two subcommands:

  superkron verify --suites fay,aybe --n 2,3 --tau 0.1+1.2i \\
      --samples 100 --seed 7 --tol 1e-9 --output report.json --format json
  superkron scan-coefficients --samples 500 --seed 11

Flags may also be given in a flat key=value config file (--config);
command-line flags override file entries.  Exit codes: 0 when every
suite passes, 1 on any failure, 2 on configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .ansatz import CANONICAL, TRUNCATED, AnsatzCoefficients, HeatParams, constraint_scan
from .elliptic import EllipticContext
from .errors import ConfigError
from .verifier import SUITES, RunConfig, emit, run


def parse_complex(text: str) -> complex:
    """Parse '0.1+1.2i' or '0.1+1.2j' (also plain reals)."""
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number {text!r}") from exc


def parse_coeffs(text: str) -> AnsatzCoefficients:
    name = text.strip().lower()
    if name == "canonical":
        return CANONICAL
    if name == "truncated":
        return TRUNCATED
    parts = [parse_complex(p) for p in text.split(",")]
    if len(parts) != 5:
        raise ConfigError("coeffs must be 'canonical', 'truncated' or five values")
    return AnsatzCoefficients(*parts)


def read_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"bad config line {raw.rstrip()!r}")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _merge(cli_value, file_values: dict[str, str], key: str, default, convert):
    if cli_value is not None:
        return cli_value
    if key in file_values:
        return convert(file_values[key])
    return default


def _build_config(args: argparse.Namespace, suites_default: Optional[str]) -> RunConfig:
    file_values = read_config_file(args.config) if args.config else {}

    suites_text = _merge(args.suites, file_values, "suites", suites_default, str)
    if suites_text is None:
        raise ConfigError("no suites requested")
    n_text = _merge(args.n, file_values, "n", "2,3", str)
    tau_text = _merge(args.tau, file_values, "tau", None, str)
    coeffs_text = _merge(args.coeffs, file_values, "coeffs", "canonical", str)
    b_text = _merge(args.b, file_values, "b", None, str)

    return RunConfig(
        suites=tuple(s.strip() for s in suites_text.split(",") if s.strip()),
        n_list=tuple(int(p) for p in n_text.split(",") if p.strip()),
        tau=parse_complex(tau_text) if tau_text is not None else None,
        samples=_merge(args.samples, file_values, "samples", 100, int),
        seed=_merge(args.seed, file_values, "seed", 0, int),
        cutoff=_merge(args.cutoff, file_values, "cutoff", 20, int),
        tol=_merge(args.tol, file_values, "tol", 1e-9, float),
        pole_margin=_merge(args.pole_margin, file_values, "pole_margin", 1e-3, float),
        coeffs=parse_coeffs(coeffs_text),
        b=parse_complex(b_text) if b_text is not None else None,
        heat=HeatParams(
            _merge(args.heat_k, file_values, "heat_k", 1.0 + 0j, parse_complex),
            _merge(args.heat_kappa, file_values, "heat_kappa", 1.0 + 0j, parse_complex),
        ),
        output_format=_merge(args.format, file_values, "format", "json", str),
        output_path=_merge(args.output, file_values, "output", None, str),
    )


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file; flags override it")
    p.add_argument("--tau", help="modulus, e.g. 0.1+1.2i (default: drawn per sample)")
    p.add_argument("--samples", type=int, help="samples per suite (default 100)")
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--cutoff", type=int, help="theta series cutoff (default 20)")
    p.add_argument("--tol", type=float, help="relative residual tolerance (default 1e-9)")
    p.add_argument("--pole-margin", dest="pole_margin", type=float,
                   help="minimum lattice distance (default 1e-3)")
    p.add_argument("--format", choices=("json", "text"), help="report format (default json)")
    p.add_argument("--output", help="report path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superkron", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suites",
                        help="comma-separated suite names (default: all); "
                             f"known: {', '.join(sorted(SUITES))}")
    verify.add_argument("--n", help="comma-separated matrix sizes (default 2,3)")
    verify.add_argument("--coeffs",
                        help="'canonical', 'truncated' or five comma-separated values")
    verify.add_argument("--b", help="basis-function constant B (default: A3)")
    verify.add_argument("--heat-k", dest="heat_k", help="heat parameter k (default 1)")
    verify.add_argument("--heat-kappa", dest="heat_kappa",
                        help="heat parameter kappa (default 1)")
    _add_common_flags(verify)

    scan = sub.add_parser("scan-coefficients", help="scan the coefficient space")
    _add_common_flags(scan)
    return parser


def _cmd_verify(args: argparse.Namespace) -> int:
    config = _build_config(args, suites_default=",".join(SUITES))
    report = run(config)
    emit(report, config.output_format, config.output_path)
    return 0 if report.verdict == "pass" else 1


def _cmd_scan(args: argparse.Namespace) -> int:
    args.suites = None
    args.n = None
    args.coeffs = None
    args.b = None
    args.heat_k = None
    args.heat_kappa = None
    config = _build_config(args, suites_default="scan")
    tau = config.tau if config.tau is not None else 0.1 + 1.2j
    ctx = EllipticContext(tau, config.cutoff, config.tol, config.pole_margin)
    report = constraint_scan(ctx, config.samples, config.seed)
    text = json.dumps(report.to_jsonable(), sort_keys=True, indent=2) + "\n"
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        with open(config.output_path, "wb") as fh:
            fh.write(text.encode())
    counts = report.pass_counts()
    expected = all(counts[fam][check] == config.samples
                   for fam, check in (("fay", "fay"), ("heat", "heat"),
                                      ("heat", "fay"), ("boundary", "boundary")))
    return 0 if expected else 1


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_scan(args)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
