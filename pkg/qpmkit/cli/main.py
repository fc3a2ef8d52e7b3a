"""
Command-line front end.

    python -m qpmkit mismatch --process zzz --lambda-nm 1560 --temp-c 25
    python -m qpmkit calibrate --temp-c 40
    python -m qpmkit design --processes zzz zyy --split 0.6206 --output design.yaml
    python -m qpmkit render --period-um 46.3 --length-mm 5
    python -m qpmkit fourier --design design.yaml --processes zzz zyy
    python -m qpmkit sweep --crystal crystal.yaml --process yzy --start 5 --stop 65
    python -m qpmkit report --crystal crystal.yaml

Units at the boundary: nm, deg C, um for periods and tiles, mm for lengths,
1/m for mismatches. Exit codes: 0 success, 1 computation error, 2 usage error.
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import ValidationError

from qpmkit import __version__
from qpmkit.config import settings
from qpmkit.dispersion import DispersionModel, expansion_factor, group_index, load_coefficient_library
from qpmkit.dualgrid import (
    DualGridDesign, build_tiling, duality_tile_lengths, load_design, optimize_design,
    save_design, solve_basis
)
from qpmkit.errors import QPMError
from qpmkit.grating import (
    DomainSequence, PeriodicGrating, fourier_coefficient, peak_fourier_coefficient
)
from qpmkit.qpm import (
    YZY_1560_CALIBRATION, CalibrationPoint, Process, SellmeierMismatch, calibrate_from_two_points,
    calibrated_yzy_mismatch, mismatch_slope, phase_mismatch, qpm_period, qpm_temperature
)
from qpmkit.shg import (
    CouplingSet, ProcessTarget, SweepSpec, peak_efficiency, plot_curves, sweep, write_curve_csv
)
from .crystal import CrystalSetup, load_crystal
from .models import ChannelReport, CommandResponse

logger = logging.getLogger(__name__)

REPORT_PROCESSES = ("ZZZ", "ZYY", "YZY")


class UsageError(Exception):
    """Argument combination argparse cannot express."""


def _process(value: str) -> Process:
    try:
        return Process.from_label(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _calibration_point(value: str) -> CalibrationPoint:
    try:
        temperature, mismatch = (float(v) for v in value.split(","))
        return CalibrationPoint(temperature_c=temperature, design_mismatch=mismatch)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"Invalid calibration point '{value}'. Use T_C,DK_PER_M e.g. 248.7,1.398e5"
        )


def _configure_logging(verbosity: int) -> None:
    level = {0: settings.LOG_LEVEL, 1: "INFO"}.get(verbosity, "DEBUG")
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        logger.info("Wrote %s", path)
    else:
        sys.stdout.write(text)


def _dispersion(args) -> DispersionModel:
    library = load_coefficient_library(args.coeff_file)
    return library.dispersion(
        args.coeff_set or settings.DEFAULT_PROFILE, args.expansion_set or settings.EXPANSION_SET
    )


def _coupling(args) -> CouplingSet:
    library = load_coefficient_library(args.coeff_file)
    return CouplingSet.from_library(args.coupling_set, library)


def _mismatch_provider(args, dispersion: DispersionModel):
    if getattr(args, "calibrated", False):
        return calibrated_yzy_mismatch(dispersion)
    return SellmeierMismatch(dispersion)


def _load_crystal(args) -> CrystalSetup:
    return load_crystal(
        args.crystal, profile=args.coeff_set, expansion=args.expansion_set, coeff_file=args.coeff_file
    )


def _structures(args) -> Tuple[List[Tuple[str, DomainSequence]], Optional[CrystalSetup]]:
    """(name, sequence) pairs named by --crystal/--channel, --design or --period-um."""
    if getattr(args, "crystal", None):
        setup = _load_crystal(args)
        crystal = setup.crystal
        names = [args.channel] if args.channel else crystal.channel_names()
        try:
            return [(name, crystal.channel_sequence(name)) for name in names], setup
        except KeyError as e:
            raise UsageError(e.args[0])
    if getattr(args, "design", None):
        _, sequence = load_design(args.design)
        return [(Path(args.design).stem, sequence)], None
    if getattr(args, "period_um", None):
        grating = PeriodicGrating(
            period=args.period_um * 1e-6,
            duty=args.duty,
            length=args.length_mm * 1e-3,
            phase_offset=args.phase_offset,
        )
        return [(f"periodic-{args.period_um:g}um", grating.render())], None
    raise UsageError("Name a structure with --crystal, --design or --period-um")


# Commands

def cmd_mismatch(args) -> int:
    dispersion = _dispersion(args)
    provider = _mismatch_provider(args, dispersion)
    wavelength = args.lambda_nm * 1e-9
    delta_k = provider(args.process, wavelength, args.temp_c)
    slope = mismatch_slope(args.process, wavelength, args.temp_c, dispersion=dispersion)
    lines = [
        f"process: {args.process.label}",
        f"model: {'calibrated' if args.calibrated else 'sellmeier'} ({dispersion.name})",
        f"wavelength_nm: {args.lambda_nm:.3f}",
        f"temperature_c: {args.temp_c:.3f}",
        f"delta_k_per_m: {delta_k:.6e}",
        f"abs_delta_k_per_m: {abs(delta_k):.4e}",
        f"period_um (order {args.order}): {qpm_period(abs(delta_k), args.order) * 1e6:.4f}",
        f"sellmeier_slope_per_m_per_k: {slope:.4f}",
    ]
    pump = dispersion.for_axis(args.process.pump_axis)
    lines.append(f"group_index_sh ({pump.axis.value}): "
                 f"{group_index(pump, wavelength / 2, args.temp_c):.5f}")
    for axis in sorted({a.value for a in args.process.signal_axes}, reverse=True):
        model = dispersion.for_axis(axis)
        lines.append(f"group_index_fundamental ({axis}): "
                     f"{group_index(model, wavelength, args.temp_c):.5f}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_calibrate(args) -> int:
    dispersion = _dispersion(args)
    points = args.point or list(YZY_1560_CALIBRATION)
    if len(points) != 2:
        raise UsageError("Give exactly two --point values")
    expansion = None if args.no_expansion else dispersion.expansion
    calibration = calibrate_from_two_points(points[0], points[1], expansion)
    delta_k = calibration.extrapolate(args.temp_c)
    lines = [f"expansion_set: {expansion.name if expansion else 'none'}"]
    lines += [
        f"corrected_point: {t:.2f} C {k:.6e} 1/m" for t, k in calibration.corrected_points
    ]
    lines += [
        f"slope_per_m_per_k: {calibration.slope:.4f}",
        f"temperature_c: {args.temp_c:.3f}",
        f"delta_k_per_m: {delta_k:.6e}",
        f"period_um: {qpm_period(abs(delta_k)) * 1e6:.4f}",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_design(args) -> int:
    dispersion = _dispersion(args)
    coupling = _coupling(args)
    processes = args.processes or []
    if args.targets:
        targets = list(args.targets)
    elif processes:
        targets = [
            abs(phase_mismatch(p, args.lambda_nm * 1e-9, args.temp_c, dispersion)) for p in processes
        ]
    else:
        raise UsageError("Give --targets or --processes")

    if args.couplings:
        couplings = list(args.couplings)
    elif processes and len(processes) == len(targets):
        couplings = [coupling.d_eff(p) for p in processes]
    else:
        couplings = [1.0] * len(targets)
    if len(couplings) != len(targets):
        raise UsageError(f"{len(targets)} targets but {len(couplings)} couplings")

    convention = args.convention or ("sum" if len(targets) == 2 else "search")
    length = args.length_mm * 1e-3
    basis = solve_basis(targets, max_order=args.max_order, convention=convention)

    if args.split:
        duties = args.duties or [1.0] + [0.0] * (basis.dimension - 1)
        design = DualGridDesign(
            basis=basis,
            tile_lengths=duality_tile_lengths(basis, args.split),
            duties=duties,
            total_length=length,
        )
    else:
        design = optimize_design(targets, couplings, total_length=length, basis=basis).design

    sequence = build_tiling(design)
    coefficients = np.abs(fourier_coefficient(sequence, np.asarray(targets)))
    weighted = [d * g for d, g in zip(couplings, coefficients)]

    lines = [
        f"basis_per_m: {' '.join(f'{k:.6e}' for k in basis.basis_vectors)}",
        f"orders: {basis.order_matrix}",
        f"split: {' '.join(f'{t:.6f}' for t in design.split())}",
        f"tile_lengths_um: {' '.join(f'{a * 1e6:.4f}' for a in design.tile_lengths)}",
        f"duties: {' '.join(f'{d:g}' for d in design.duties)}",
        f"duality_sum: {design.duality_sum():.9f}",
        f"length_mm: {sequence.total_length * 1e3:.6f}",
        f"domains: {len(sequence)}",
    ]
    for m, (target, g, w) in enumerate(zip(targets, coefficients, weighted)):
        label = processes[m].label if m < len(processes) else f"target{m + 1}"
        _, peak = peak_fourier_coefficient(sequence, target)
        lines.append(
            f"{label}: delta_k_per_m {target:.6e} |G| {g:.12f} peak_|G| {peak:.6f} "
            f"d_|G|_pm_per_v {w:.6f}"
        )
    balance = min(weighted) / max(weighted) if max(weighted) > 0 else 0.0
    lines.append(f"balance: {balance:.4f}")

    if args.output:
        save_design(args.output, design, sequence, metadata={
            "processes": [p.label for p in processes],
            "couplings_pm_per_v": couplings,
            "coefficient_profile": dispersion.name,
        })
        lines.append(f"design_file: {args.output}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_render(args) -> int:
    structures, _ = _structures(args)
    if len(structures) != 1:
        raise UsageError("render writes one structure; pick a --channel")
    _, sequence = structures[0]
    frame = pd.DataFrame({
        "length_nm": sequence.lengths * 1e9,
        "sign": sequence.signs,
    })
    _emit(frame.to_csv(index=False, float_format="%.6f", lineterminator="\n"), args.output)
    return 0


def cmd_fourier(args) -> int:
    structures, setup = _structures(args)
    dispersion = setup.dispersion if setup else _dispersion(args)
    wavelength = (args.lambda_nm or (setup.spec.wavelength_nm if setup else 1560.0)) * 1e-9
    points = [(f"{k:.6e}", float(k)) for k in args.k or []]
    points += [
        (p.label, abs(phase_mismatch(p, wavelength, args.temp_c, dispersion)))
        for p in args.processes or []
    ]
    if not points:
        raise UsageError("Give --k values or --processes")

    lines = []
    for name, sequence in structures:
        for label, k in points:
            g = fourier_coefficient(sequence, k)
            line = f"{name} {label}: k_per_m {k:.6e} |G| {abs(g):.12f} arg {math.atan2(g.imag, g.real):.6f}"
            if args.peak:
                k_peak, peak = peak_fourier_coefficient(sequence, k)
                line += f" peak_|G| {peak:.6f} at {k_peak:.6e}"
            lines.append(line)
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_sweep(args) -> int:
    structures, setup = _structures(args)
    dispersion = setup.dispersion if setup else _dispersion(args)
    coupling = setup.coupling if setup else _coupling(args)
    provider = _mismatch_provider(args, dispersion)

    if args.variable == "temperature":
        step = args.step if args.step is not None else settings.TEMPERATURE_STEP_C
        spec = SweepSpec(variable="temperature", start=args.start, stop=args.stop, step=step)
        default_fixed = setup.spec.wavelength_nm if setup else 1560.0
        fixed = (args.fixed if args.fixed is not None else default_fixed) * 1e-9
    else:
        step = args.step if args.step is not None else settings.WAVELENGTH_STEP_NM
        spec = SweepSpec(
            variable="wavelength", start=args.start * 1e-9, stop=args.stop * 1e-9, step=step * 1e-9
        )
        fixed = args.fixed if args.fixed is not None else 25.0

    texts = []
    for name, sequence in structures:
        curve = sweep(
            sequence, args.process, coupling, spec, fixed, mismatch=provider,
            metadata={
                "structure": f"{setup.spec.name}:{name}" if setup else name,
                "coefficient_profile": dispersion.name,
                "expansion_set": dispersion.expansion.name,
                "mismatch_model": "calibrated" if args.calibrated else "sellmeier",
            },
        )
        if args.output:
            path = Path(args.output) / f"{name}_{args.process.label}.csv"
            write_curve_csv(curve, path)
            texts.append(f"wrote {path}")
        else:
            texts.append(write_curve_csv(curve))
    sys.stdout.write("\n".join(texts) + ("\n" if args.output else ""))
    return 0


def _channel_report(setup: CrystalSetup, name: str, sequence: DomainSequence, args) -> ChannelReport:
    provider = _mismatch_provider(args, setup.dispersion)
    report = ChannelReport(channel=name, length_mm=sequence.total_length * 1e3)
    expansion = getattr(provider, "expansion", None)
    factor = expansion_factor(expansion, args.temp_c) if expansion is not None else 1.0
    for label in REPORT_PROCESSES:
        process = Process.from_label(label)
        target = ProcessTarget(sequence=sequence, process=process)
        delta_k = provider(process, setup.wavelength_m, args.temp_c)
        report.peak_efficiencies[label] = peak_efficiency(
            target, setup.coupling, setup.wavelength_m, args.temp_c, mismatch=provider,
            window=args.window_per_m,
        )
        # same stretched frame as peak_efficiency
        _, report.peak_coefficients[label] = peak_fourier_coefficient(
            sequence, abs(delta_k) * factor, args.window_per_m * factor
        )

    reference = report.peak_efficiencies["ZZZ"]
    report.ratios_to_zzz = {
        label: (eta / reference if reference > 0 else math.nan)
        for label, eta in report.peak_efficiencies.items()
    }

    channel = setup.crystal.channel(name)
    for section in channel.sections:
        if section.kind != "periodic":
            continue
        for label in REPORT_PROCESSES:
            report.qpm_temperatures_c[f"{section.name}:{label}"] = qpm_temperature(
                Process.from_label(label), section.parameters["period_um"] * 1e-6,
                setup.wavelength_m, window=(args.t_min, args.t_max), mismatch=provider,
            )
    return report


def cmd_report(args) -> int:
    setup = _load_crystal(args)
    reports = [
        _channel_report(setup, name, sequence, args)
        for name, sequence in setup.crystal.iter_sequences()
    ]

    if args.plots:
        spec = SweepSpec(variable="temperature", start=args.t_min, stop=args.t_max,
                         step=settings.TEMPERATURE_STEP_C)
        provider = _mismatch_provider(args, setup.dispersion)
        for report in reports:
            sequence = setup.crystal.channel_sequence(report.channel)
            curves = [
                sweep(sequence, Process.from_label(label), setup.coupling, spec,
                      setup.wavelength_m, mismatch=provider)
                for label in REPORT_PROCESSES
            ]
            path = plot_curves(
                curves, Path(args.plots) / f"{report.channel}.png",
                title=f"{setup.spec.name} {report.channel}",
            )
            report.plots.append(str(path))

    response = CommandResponse(
        success=True,
        data={"crystal": setup.spec.name, "channels": [r.model_dump() for r in reports]},
        metadata={
            "coefficient_profile": setup.dispersion.name,
            "expansion_set": setup.dispersion.expansion.name,
            "coupling_set": setup.coupling.name,
            "wavelength_nm": setup.spec.wavelength_nm,
            "temperature_c": args.temp_c,
            "mismatch_model": "calibrated" if args.calibrated else "sellmeier",
            "units": {"efficiency": "(pm/V m)^2", "temperature": "C"},
        },
    )
    _emit(response.to_json() + "\n", args.output)
    return 0


# Parser

def _add_structure_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("structure")
    group.add_argument("--crystal", help="Crystal description file")
    group.add_argument("--channel", help="Channel of the crystal (default: all)")
    group.add_argument("--design", help="Design file written by the design command")
    group.add_argument("--period-um", type=float, help="Period of a single periodic grating")
    group.add_argument("--duty", type=float, default=0.5, help="Duty of the periodic grating")
    group.add_argument("--length-mm", type=float, default=5.0, help="Length of the periodic grating")
    group.add_argument("--phase-offset", type=float, default=0.0, help="Phase offset in periods")


def _add_common_args(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    """Options accepted both before and after the command name."""
    # a subcommand only overrides the top-level value when given explicitly
    default = {"default": argparse.SUPPRESS} if suppress else {}
    count_default = argparse.SUPPRESS if suppress else 0
    parser.add_argument("--coeff-set", help=f"Coefficient profile (default {settings.DEFAULT_PROFILE})",
                        **default)
    parser.add_argument("--coeff-file", help="Coefficient YAML file", **default)
    parser.add_argument("--expansion-set", help=f"Expansion set (default {settings.EXPANSION_SET})",
                        **default)
    parser.add_argument("--coupling-set", help=f"Coupling set (default {settings.COUPLING_SET})",
                        **default)
    parser.add_argument("--output", "-o", help="Output file (directory for sweep)", **default)
    parser.add_argument("-v", "--verbose", action="count", default=count_default,
                        help="-v info, -vv debug")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common_args(common, suppress=True)

    parser = argparse.ArgumentParser(
        prog="qpmkit", description="Concurrent quasi-phasematching design toolkit"
    )
    _add_common_args(parser)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mismatch", parents=[common], help="Phase mismatch and first-order period")
    p.add_argument("--process", type=_process, required=True, help="ZZZ, ZYY, YZY or YYZ")
    p.add_argument("--lambda-nm", type=float, default=1560.0)
    p.add_argument("--temp-c", type=float, default=25.0)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--calibrated", action="store_true",
                   help="Take YZY/YYZ from the bundled two-point calibration")
    p.set_defaults(func=cmd_mismatch)

    p = sub.add_parser("calibrate", parents=[common], help="Two-point temperature calibration")
    p.add_argument("--point", type=_calibration_point, action="append",
                   help="T_C,DK_PER_M (twice; default: bundled YZY points)")
    p.add_argument("--temp-c", type=float, default=40.0, help="Extrapolation temperature")
    p.add_argument("--no-expansion", action="store_true", help="Ignore thermal expansion")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("design", parents=[common], help="Dual-grid design synthesis")
    p.add_argument("--targets", type=float, nargs="+", help="Target |dk| in 1/m")
    p.add_argument("--processes", type=_process, nargs="+", help="Processes whose |dk| are targets")
    p.add_argument("--lambda-nm", type=float, default=1560.0)
    p.add_argument("--temp-c", type=float, default=25.0)
    p.add_argument("--couplings", type=float, nargs="+", help="d_m in pm/V per target")
    p.add_argument("--length-mm", type=float, default=settings.DESIGN_LENGTH_M * 1e3)
    p.add_argument("--split", type=float, nargs="+", help="t_j (optimized when omitted)")
    p.add_argument("--duties", type=float, nargs="+", help="Duty per family")
    p.add_argument("--convention", choices=["sum", "search"],
                   help="Basis convention (default: sum for two targets)")
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("render", parents=[common], help="Write a structure's domains as CSV")
    _add_structure_args(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("fourier", parents=[common], help="|G| of a structure")
    _add_structure_args(p)
    p.add_argument("--k", type=float, nargs="+", help="Spatial frequencies in 1/m")
    p.add_argument("--processes", type=_process, nargs="+")
    p.add_argument("--lambda-nm", type=float, default=None)
    p.add_argument("--temp-c", type=float, default=25.0)
    p.add_argument("--peak", action="store_true", help="Also report the nearby |G| maximum")
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("sweep", parents=[common], help="SHG efficiency curves as CSV")
    _add_structure_args(p)
    p.add_argument("--process", type=_process, required=True)
    p.add_argument("--variable", choices=["temperature", "wavelength"], default="temperature")
    p.add_argument("--start", type=float, required=True, help="C or nm")
    p.add_argument("--stop", type=float, required=True, help="C or nm")
    p.add_argument("--step", type=float, default=None, help="C or nm")
    p.add_argument("--fixed", type=float, default=None, help="Wavelength in nm or temperature in C")
    p.add_argument("--calibrated", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", parents=[common], help="Concurrence summary of a crystal (JSON)")
    p.add_argument("--crystal", default=settings.EXAMPLE_CRYSTAL,
                   help="Crystal description file (default: the bundled two-section crystal)")
    p.add_argument("--temp-c", type=float, default=37.0)
    p.add_argument("--t-min", type=float, default=5.0)
    p.add_argument("--t-max", type=float, default=65.0)
    p.add_argument("--window-per-m", type=float, default=1e4,
                   help="Search half-width for peak |G| around each mismatch")
    p.add_argument("--plots", help="Directory for per-channel PNG plots")
    p.add_argument("--calibrated", action="store_true")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"qpmkit {args.command}: error: {e}", file=sys.stderr)
        return 2
    except (QPMError, FileNotFoundError, ValidationError) as e:
        print(f"qpmkit {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
