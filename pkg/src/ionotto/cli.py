"""Command-line interface: sweep, validate, steadystate.

Exit codes: 0 on success, 2 on configuration errors, 3 when --strict is
set and any sweep row failed numerically.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .cycle import CycleMode
from .lindblad import liouvillian_matrix, LindbladModel, steady_state
from .operators import SpaceLayout
from .reservoirs import (
    ADIABATIC_RATIO_FLOOR,
    BathKind,
    ReservoirSpec,
    channels_from_settings,
    effective_collapse_channels,
    gibbs_state,
    match_rabi_frequencies,
    spec_theta,
    squeezed_gibbs_state,
)
from .sweep import ConfigError, apply_overrides, emit_csv, load_config, run_sweep

_MODE_BY_NAME = {mode.value: mode for mode in CycleMode}


def _parse_modes(text: str) -> tuple[CycleMode, ...]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    modes = []
    for name in names:
        if name not in _MODE_BY_NAME:
            raise ConfigError(
                f"unknown mode {name!r} (expected one of {sorted(_MODE_BY_NAME)})"
            )
        modes.append(_MODE_BY_NAME[name])
    if not modes:
        raise ConfigError("--modes selected nothing")
    return tuple(dict.fromkeys(modes))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ionotto",
        description=(
            "Trapped-ion quantum Otto engine: reservoir synthesis, cycle "
            "simulation and efficiency sweeps"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a transition-probability sweep")
    sweep.add_argument("config", type=Path)
    sweep.add_argument(
        "--modes",
        type=str,
        default=None,
        help="comma-separated subset of closed_form,effective,full",
    )
    sweep.add_argument("--xi-points", type=int, default=None)
    sweep.add_argument("--output", type=Path, default=None)
    sweep.add_argument("--fock-dim", type=int, default=None)
    sweep.add_argument(
        "--strict",
        action="store_true",
        help="exit with code 3 if any row fails numerically",
    )

    validate = sub.add_parser(
        "validate", help="run the configuration and regime checks only"
    )
    validate.add_argument("config", type=Path)

    steady = sub.add_parser(
        "steadystate",
        help="print bath steady states from the analytic formulas and the "
        "null-space solver",
    )
    steady.add_argument("config", type=Path)
    return parser


def _bath_report(label: str, spec: ReservoirSpec, lamb: float, kappa: float) -> list[str]:
    theta = spec_theta(spec)
    settings = match_rabi_frequencies(spec, lamb, kappa)
    matched = channels_from_settings(settings, lamb, kappa)
    target = effective_collapse_channels(spec)
    layout = SpaceLayout((2,))
    h0 = np.zeros((2, 2), dtype=complex)
    defect = np.abs(
        liouvillian_matrix(LindbladModel(h0, matched, layout))
        - liouvillian_matrix(LindbladModel(h0, target, layout))
    ).max()
    ratio_ok = "ok" if settings.regime_ratio >= ADIABATIC_RATIO_FLOOR else "LOW"
    return [
        f"[{label}] kind={spec.kind.value} n={spec.n_occupation} r={spec.squeezing}",
        f"[{label}] theta={theta.theta:+.6f} ({theta.sign})",
        f"[{label}] rabi (x1, x2, y1, y2) rad/us = "
        f"({settings.rabi_x1:.6g}, {settings.rabi_x2:.6g}, "
        f"{settings.rabi_y1:.6g}, {settings.rabi_y2:.6g})",
        f"[{label}] kappa/(lambda*maxOmega) = {settings.regime_ratio:.1f} [{ratio_ok}]",
        f"[{label}] matching identity defect = {defect:.3e}",
    ]


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    modes = _parse_modes(args.modes) if args.modes else None
    config = apply_overrides(
        config,
        modes=modes,
        xi_points=args.xi_points,
        output=args.output,
        fock_dim=args.fock_dim,
    )
    result = run_sweep(config)
    output = config.output_path or Path("sweep.csv")
    emit_csv(result.rows, output)
    print(f"wrote {len(result.rows)} rows to {output}")
    if result.flags:
        print("validity flags: " + "; ".join(result.flags))
    for key in sorted(result.diagnostics):
        print(f"  {key} = {result.diagnostics[key]:.6g}")
    failed = result.failed_rows
    if failed:
        for row in failed:
            print(
                f"row (mode={row.mode.value}, xi={row.xi:.6g}) failed: {row.error}",
                file=sys.stderr,
            )
        if args.strict:
            return 3
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    cycle = config.cycle
    lines = [
        f"config ok: {args.config}",
        f"frequency ratio omega_h/omega_c = {cycle.frequency_ratio:.6f}",
        f"xi grid: {len(config.xi_grid)} points in "
        f"[{config.xi_grid[0]:.4g}, {config.xi_grid[-1]:.4g}]",
        f"modes: {', '.join(mode.value for mode in config.modes)}",
    ]
    lines += _bath_report("cold", cycle.cold, cycle.lamb, cycle.kappa)
    lines += _bath_report("hot", cycle.hot, cycle.lamb, cycle.kappa)
    print("\n".join(lines))
    return 0


def _analytic_bath_state(spec: ReservoirSpec) -> np.ndarray:
    theta = spec_theta(spec)
    if spec.kind is BathKind.SQUEEZED_THERMAL:
        return squeezed_gibbs_state(theta, spec.squeezing)
    return gibbs_state(theta)


def _cmd_steadystate(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    cycle = config.cycle
    for label, spec in (("cold", cycle.cold), ("hot", cycle.hot)):
        analytic = _analytic_bath_state(spec)
        layout = SpaceLayout((2,))
        model = LindbladModel(
            np.zeros((2, 2), dtype=complex),
            effective_collapse_channels(spec),
            layout,
        )
        solved = steady_state(model)
        deviation = float(np.abs(analytic - solved).max())
        print(f"[{label}] analytic populations (g, e) = "
              f"({analytic[0, 0].real:.9f}, {analytic[1, 1].real:.9f})")
        print(f"[{label}] null-space populations (g, e) = "
              f"({solved[0, 0].real:.9f}, {solved[1, 1].real:.9f})")
        print(f"[{label}] max deviation = {deviation:.3e}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "steadystate":
            return _cmd_steadystate(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command}")  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
