"""Batch front end: single-point shifts, (z, T) scans, and mode tables.

Outputs are deterministic: identical configuration produces bit-identical
files (floats are emitted with repr, which round-trips losslessly).
"""

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .atoms import load_atom
from .errors import ParseError, PhysicsError, PolshiftError
from .material import find_polariton_modes, load_material
from .potentials import Environment, MatsubaraConfig, total_shift
from .units import CM1, HBAR

SCHEMA_VERSION = 1

#: fixed scan/point CSV header (all shift columns are E/hbar in s^-1)
SCAN_COLUMNS = (
    "z_m", "T_K", "nr_matsubara_s^-1", "nr_resonant_photon_s^-1",
    "u_eff_s^-1", "thermal_factor", "r_shift_s^-1", "total_s^-1", "error",
)

MODES_COLUMNS = (
    "index", "omega_center_rad_s", "omega_center_cm^-1", "linewidth_rad_s",
    "linewidth_cm^-1", "band_lo_rad_s", "band_hi_rad_s", "narrow",
    "im_rp_peak", "strong_coupling",
)

#: diagnostic threshold: a mode counts as strongly coupled when the peak of
#: Im r_p exceeds this value
STRONG_COUPLING_IM_RP = 100.0


@dataclass
class RunConfig:
    material: str
    atom: str = None
    upper: str = None
    lower: str = None
    z_values: tuple = ()
    T_values: tuple = ()
    green_mode: str = "nonretarded"
    closed_form: bool = False
    fmt: str = "json"
    output: str = None
    resonance_tol: float = 1.0
    matsubara_cutoff: int = None

    def validate_point(self):
        self._validate_common()
        if len(self.z_values) != 1 or len(self.T_values) != 1:
            raise ValueError("point needs exactly one z and one T")

    def validate_scan(self):
        self._validate_common()

    def _validate_common(self):
        if not self.atom or not self.upper or not self.lower:
            raise ValueError("--atom, --upper and --lower are required")
        if not self.z_values or not self.T_values:
            raise ValueError("need at least one z and one T value")
        if any(v <= 0 for v in self.z_values):
            raise ValueError("z values must be > 0")
        if any(v <= 0 for v in self.T_values):
            raise ValueError("T values must be > 0")

    def matsubara_config(self):
        if self.matsubara_cutoff is not None:
            return MatsubaraConfig(cutoff=self.matsubara_cutoff)
        return MatsubaraConfig()


def parse_values(single, rng, what):
    """Merge --<what> (comma list) and --<what>-range (lo:hi:Nlog|Nlin)."""
    vals = []
    if single:
        try:
            vals.extend(float(tok) for tok in single.split(","))
        except ValueError:
            raise ValueError(f"bad --{what} list {single!r}") from None
    if rng:
        parts = rng.split(":")
        if len(parts) != 3:
            raise ValueError(f"--{what}-range must be lo:hi:COUNT[log|lin]")
        try:
            lo, hi = float(parts[0]), float(parts[1])
        except ValueError:
            raise ValueError(f"bad bounds in --{what}-range {rng!r}") from None
        tail = parts[2]
        if tail.endswith("log"):
            kind, count_s = "log", tail[:-3]
        elif tail.endswith("lin"):
            kind, count_s = "lin", tail[:-3]
        else:
            raise ValueError(
                f"--{what}-range count must end in 'log' or 'lin'")
        try:
            n = int(count_s)
        except ValueError:
            raise ValueError(f"bad count in --{what}-range {rng!r}") from None
        if n < 1 or lo <= 0 or hi < lo:
            raise ValueError(f"empty or invalid --{what}-range {rng!r}")
        if kind == "log":
            vals.extend(float(v) for v in np.geomspace(lo, hi, n))
        else:
            vals.extend(float(v) for v in np.linspace(lo, hi, n))
    return tuple(vals)


def _report_row(z, T, report):
    return {
        "z_m": z,
        "T_K": T,
        "nr_matsubara_s^-1": report.nr_matsubara / HBAR,
        "nr_resonant_photon_s^-1": report.nr_resonant_photon / HBAR,
        "u_eff_s^-1": report.u_eff / HBAR,
        "thermal_factor": report.thermal_factor,
        "r_shift_s^-1": report.r_shift / HBAR,
        "total_s^-1": report.total / HBAR,
        "error": "",
    }


def _error_row(z, T, exc):
    row = {c: "" for c in SCAN_COLUMNS}
    row["z_m"] = z
    row["T_K"] = T
    row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_point(cfg):
    """Compute a single ShiftReport from a validated RunConfig."""
    cfg.validate_point()
    m = load_material(cfg.material)
    atom = load_atom(cfg.atom)
    env = Environment(z=cfg.z_values[0], T=cfg.T_values[0])
    return total_shift(
        atom, cfg.upper, cfg.lower, m, env, cfg=cfg.matsubara_config(),
        green_mode=cfg.green_mode, resonance_tol=cfg.resonance_tol,
        use_closed_form=cfg.closed_form)


def run_scan(cfg):
    """One row per (z, T) pair, in deterministic input order.

    A physics failure at one point fills that row's error column instead of
    aborting the scan; configuration-level failures still propagate.
    """
    cfg.validate_scan()
    m = load_material(cfg.material)
    atom = load_atom(cfg.atom)
    modes = find_polariton_modes(m)
    rows = []
    for z in cfg.z_values:
        for T in cfg.T_values:
            try:
                rep = total_shift(
                    atom, cfg.upper, cfg.lower, m,
                    Environment(z=z, T=T), cfg=cfg.matsubara_config(),
                    green_mode=cfg.green_mode,
                    resonance_tol=cfg.resonance_tol,
                    use_closed_form=cfg.closed_form, modes=modes)
                rows.append(_report_row(z, T, rep))
            except PhysicsError as exc:
                rows.append(_error_row(z, T, exc))
    return rows


def modes_report(material_path):
    """Mode table rows for a material file."""
    m = load_material(material_path)
    modes = find_polariton_modes(m)
    rows = []
    for i, mode in enumerate(modes):
        rows.append({
            "index": i,
            "omega_center_rad_s": mode.omega_center,
            "omega_center_cm^-1": mode.omega_center / CM1,
            "linewidth_rad_s": mode.linewidth,
            "linewidth_cm^-1": mode.linewidth / CM1,
            "band_lo_rad_s": mode.band_lo,
            "band_hi_rad_s": mode.band_hi,
            "narrow": mode.narrow,
            "im_rp_peak": mode.im_rp_peak,
            "strong_coupling": bool(mode.im_rp_peak > STRONG_COUPLING_IM_RP),
        })
    return rows


# --- output formatting ----------------------------------------------------------

def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(columns, rows):
    import io
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return str(v).lower()
    return v


def _json_text(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _point_output(cfg, report):
    if cfg.fmt == "csv":
        row = _report_row(cfg.z_values[0], cfg.T_values[0], report)
        return _csv_text(SCAN_COLUMNS, [row])
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "point",
        "inputs": {
            "material": os.path.basename(cfg.material),
            "atom": os.path.basename(cfg.atom),
            "upper": cfg.upper, "lower": cfg.lower,
            "z": cfg.z_values[0], "T": cfg.T_values[0],
            "green_mode": cfg.green_mode, "closed_form": cfg.closed_form,
        },
        "report": report.to_dict(),
    }
    return _json_text(doc)


def _scan_output(cfg, rows):
    if cfg.fmt == "csv":
        return _csv_text(SCAN_COLUMNS, rows)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "scan",
        "columns": list(SCAN_COLUMNS),
        "rows": rows,
    }
    return _json_text(doc)


def _modes_output(fmt, rows):
    if fmt == "csv":
        return _csv_text(MODES_COLUMNS, rows)
    return _json_text({
        "schema_version": SCHEMA_VERSION,
        "command": "modes",
        "modes": rows,
    })


# --- argument parsing -------------------------------------------------------------

def _add_common(p, with_scan_ranges):
    p.add_argument("--material", required=True, help="material JSON file")
    p.add_argument("--atom", required=True, help="atom JSON file")
    p.add_argument("--upper", required=True, help="upper state label")
    p.add_argument("--lower", required=True, help="lower state label")
    p.add_argument("--green", choices=("nonretarded", "full"),
                   default="nonretarded", dest="green_mode",
                   help="Green-tensor evaluation mode")
    p.add_argument("--closed-form", action="store_true",
                   help="use the two-resonance closed form for the "
                        "resonant amplitude")
    p.add_argument("--resonance-tol", type=float, default=1.0,
                   help="resonance window in units of (gamma1+gamma2)")
    p.add_argument("--format", choices=("json", "csv"), default="json",
                   dest="fmt")
    p.add_argument("--output", default=None, help="output file (default stdout)")
    if with_scan_ranges:
        p.add_argument("--z", default=None, help="comma list of z values (m)")
        p.add_argument("--z-range", default=None,
                       help="lo:hi:COUNTlog or lo:hi:COUNTlin (m)")
        p.add_argument("--T", default=None, help="comma list of T values (K)")
        p.add_argument("--T-range", default=None,
                       help="lo:hi:COUNTlog or lo:hi:COUNTlin (K)")
    else:
        p.add_argument("--z", required=True, type=float,
                       help="atom-surface distance (m)")
        p.add_argument("--T", required=True, type=float,
                       help="temperature (K)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shift",
        description="Atom-surface dispersion shifts near a planar dielectric")
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="single (z, T) shift report")
    _add_common(p_point, with_scan_ranges=False)

    p_scan = sub.add_parser("scan", help="shift table over z and T")
    _add_common(p_scan, with_scan_ranges=True)

    p_modes = sub.add_parser("modes", help="surface-polariton mode table")
    p_modes.add_argument("--material", required=True)
    p_modes.add_argument("--format", choices=("json", "csv"),
                         default="json", dest="fmt")
    p_modes.add_argument("--output", default=None)
    return parser


def _env_cutoff():
    raw = os.environ.get("SHIFT_MATSUBARA_CUTOFF")
    if raw is None:
        return None
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(
            f"SHIFT_MATSUBARA_CUTOFF must be an integer, got {raw!r}") from None
    if val < 1:
        raise ValueError("SHIFT_MATSUBARA_CUTOFF must be >= 1")
    return val


def _config_from_args(args, scan):
    if scan:
        z_values = parse_values(args.z, args.z_range, "z")
        T_values = parse_values(args.T, args.T_range, "T")
    else:
        z_values = (args.z,)
        T_values = (args.T,)
    return RunConfig(
        material=args.material, atom=args.atom,
        upper=args.upper, lower=args.lower,
        z_values=z_values, T_values=T_values,
        green_mode=args.green_mode, closed_form=args.closed_form,
        fmt=args.fmt, output=args.output,
        resonance_tol=args.resonance_tol,
        matsubara_cutoff=_env_cutoff())


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    op = args.command
    try:
        if op == "point":
            cfg = _config_from_args(args, scan=False)
            report = run_point(cfg)
            _emit(_point_output(cfg, report), cfg.output)
        elif op == "scan":
            cfg = _config_from_args(args, scan=True)
            rows = run_scan(cfg)
            _emit(_scan_output(cfg, rows), cfg.output)
        elif op == "modes":
            rows = modes_report(args.material)
            _emit(_modes_output(args.fmt, rows), args.output)
        else:  # pragma: no cover - argparse enforces the choices
            raise ValueError(f"unknown command {op!r}")
    except (ParseError, ValueError, OSError) as exc:
        print(f"error in {op}: {exc}", file=sys.stderr)
        return 2
    except PhysicsError as exc:
        print(f"error in {op}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
