"""Command-line front end.

Usage:
    spinorinv spectrum --Z 1 --nmax 3 --format csv
    spinorinv algebra --seed 42
    spinorinv rotate --n 2 --j 1/2 --Z 1 --theta 0.3 --phi 1.1 --psi 0.7
    spinorinv oracle --Z 92 --nmax 2 --format json

Exit codes: 0 success, 1 identity violation or tolerance exceeded,
2 invalid input or supercritical coupling, 3 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import clifford, frame, ledger, oracle
from .errors import InvalidQuantumNumbers, SolverError, SupercriticalError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2
EXIT_SOLVER = 3

FORMATS = ("json", "csv", "plain")
FAULT_TARGETS = tuple(tag.name.lower() for tag in clifford.BasisId)
FAULT_SIZE = 1e-3


class _Invalid(Exception):
    """Input rejected by the front end itself; maps to exit code 2."""


@dataclass(frozen=True)
class CliConfig:
    Z: int = 1
    alpha: float | None = None
    n_max: int = 1
    format: str = "plain"
    tol: float = 1e-12
    seed: int = 0

    def __post_init__(self):
        if self.Z < 0:
            raise _Invalid(f"Z must be >= 0, got {self.Z}")
        if self.n_max < 1:
            raise _Invalid(f"--nmax must be >= 1, got {self.n_max}")
        if self.format not in FORMATS:
            raise _Invalid(f"format must be one of {FORMATS}, got {self.format!r}")
        if not self.tol > 0:
            raise _Invalid(f"tol must be positive, got {self.tol}")

    def constants(self) -> ledger.PhysicalConstants:
        base = ledger.PhysicalConstants.from_env()
        if self.alpha is None:
            return base
        return ledger.PhysicalConstants(alpha=self.alpha, rest_energy=base.rest_energy)


def _cx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _render(rows: list[dict], fields, fmt: str, payload=None) -> str:
    """Rows as CSV or an aligned text table; JSON dumps ``payload`` (default: rows)."""
    if fmt == "json":
        return json.dumps(rows if payload is None else payload, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")

    def cell(v):
        if isinstance(v, float):
            return f"{v:.12g}"
        return str(v)

    table = [list(fields)] + [[cell(r[f]) for f in fields] for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(fields))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in table)


# spectrum ---------------------------------------------------------------

def cmd_spectrum(cfg: CliConfig) -> tuple[int, str]:
    lines = ledger.spectrum_table(cfg.Z, cfg.n_max, cfg.constants())
    rows = [ln.to_dict() for ln in lines]
    return EXIT_OK, _render(rows, ledger.SPECTRAL_LINE_FIELDS, cfg.format)


# algebra ----------------------------------------------------------------

def _faulty_basis(target: str | None):
    basis = clifford.build_basis()
    if target:
        tag = clifford.BasisId[target.upper()]
        m = basis[tag].copy()
        m[0, 0] += FAULT_SIZE
        basis[tag] = m
    return basis


def algebra_report(seed: int, samples: int, tol: float, alpha: float,
                   fault: str | None = None) -> tuple[bool, list[dict]]:
    basis = _faulty_basis(fault)
    worst: dict[str, float] = {}

    def record(res):
        for name, value in res.items():
            worst[name] = max(worst.get(name, 0.0), value)

    record({f"clifford: {k}": v for k, v in clifford.verify_products(basis).items()})
    record({f"clifford: {k}": v for k, v in clifford.clifford_residuals(basis).items()})
    gram = clifford.gram_matrix(basis)
    record({"clifford: Gram = Id": float(np.max(np.abs(gram - np.eye(16))))})
    record({"clifford: basis Hermitian": max(float(np.max(np.abs(m - m.conj().T))) for m in basis.values())})

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        s = ledger.sample_invariants(rng, alpha)
        psi, chi = rng.uniform(-2 * math.pi, 2 * math.pi, 2)
        angles = frame.EulerAngles(*rng.uniform(-math.pi, math.pi, 3))
        record({f"frame: {k}": v for k, v in frame.identity_residuals(s).items()})
        record({f"frame: {k}": v for k, v in frame.rotation_residuals(s, psi, chi, angles).items()})

    rows = [{"identity": name, "max_residual": float(value), "pass": bool(value <= tol)}
            for name, value in worst.items()]
    return all(r["pass"] for r in rows), rows


def cmd_algebra(cfg: CliConfig, samples: int, fault: str | None) -> tuple[int, str]:
    if samples < 1:
        raise _Invalid(f"--samples must be >= 1, got {samples}")
    ok, rows = algebra_report(cfg.seed, samples, cfg.tol, cfg.constants().alpha, fault)
    payload = {"seed": cfg.seed, "samples": samples, "tol": cfg.tol, "fault": fault,
               "ok": ok, "identities": rows}
    if cfg.format == "plain":
        body = "\n".join(
            f"{'PASS' if r['pass'] else 'FAIL'}  {r['max_residual']:.3e}  {r['identity']}" for r in rows
        )
        text = f"{body}\n{'ok' if ok else 'VIOLATION'}: {len(rows)} identities, seed={cfg.seed}, samples={samples}"
    else:
        text = _render(rows, ("identity", "max_residual", "pass"), cfg.format, payload)
    return (EXIT_OK if ok else EXIT_VIOLATION), text


# rotate -----------------------------------------------------------------

def rotate_report(s: ledger.ScalarInvariants, theta: float, phi: float, psi: float,
                  nr: int | None) -> dict:
    gen = frame.general_invariant(theta, phi, s)
    phi0, theta0 = frame.eigen_axis(s)
    _, c1, c2 = frame.su2_rotation(psi, s)
    out = {
        "g": [s.g1, s.g2, s.g3],
        "coeffs": {"C_K": gen.coeffs[0], "C_A": gen.coeffs[1], "C_I": gen.coeffs[2]},
        "eps_gen": gen.value,
        "eigenvalues": list(gen.eigenvalues),
        "eigen_axis": {"phi0": phi0, "theta0": theta0},
        "c_eig": list(frame.c_eig(s)),
        "c1": _cx(c1),
        "c2": _cx(c2),
        "norm": abs(c1) ** 2 + abs(c2) ** 2,
    }
    if s.g2 <= frame.COLLAPSE_TOL:
        st = frame.collapse_nr0(s)
        out["collapsed"] = True
        out["surviving_state"] = {"c_plus": _cx(st.c_plus), "c_minus": _cx(st.c_minus)}
    else:
        out["collapsed"] = False
        out["A_basis"] = {("+" if sg > 0 else "-"): [_cx(v) for v in frame.transform_A_basis(sg, s).as_array()]
                          for sg in (1, -1)}
        out["I_basis"] = {("+" if sg > 0 else "-"): [_cx(v) for v in frame.transform_I_basis(sg, s).as_array()]
                          for sg in (1, -1)}
    if nr is not None:
        out["nr"] = nr
    return out


def cmd_rotate(cfg: CliConfig, n: int | None, j: str, eps: float | None,
               theta: float, phi: float, psi: float) -> tuple[int, str]:
    alpha = cfg.constants().alpha
    if cfg.Z <= 0:
        raise _Invalid("rotate needs Z >= 1")
    for name, v in (("theta", theta), ("phi", phi), ("psi", psi)):
        if not math.isfinite(v):
            raise _Invalid(f"{name} must be finite")
    nr = None
    if n is not None:
        s = ledger.on_shell(n, j, cfg.Z, alpha)
        nr = n - ledger.kappa(j)
        head = {"Z": cfg.Z, "n": n, "j": str(Fraction(j)), "eps": s.eps}
    else:
        if not 0 < eps < 1:
            raise _Invalid(f"eps must lie in (0, 1), got {eps}")
        s = ledger.scalar_invariants(eps, j, cfg.Z, alpha)
        head = {"Z": cfg.Z, "j": str(Fraction(j)), "eps": eps}
    head["angles"] = {"theta": theta, "phi": phi, "psi": psi}
    report = {**head, **rotate_report(s, theta, phi, psi, nr)}
    if cfg.format == "json":
        return EXIT_OK, json.dumps(report, indent=2)
    return EXIT_OK, "\n".join(f"{k}: {json.dumps(v)}" for k, v in report.items())


# oracle -----------------------------------------------------------------

ORACLE_FIELDS = ("Z", "n", "kappa_d", "nr", "label", "eps_oracle", "eps_ledger",
                 "binding_eV", "rel_dev", "nodes", "residual")


def _label(n: int, kappa_d: int) -> str:
    return ledger.spectroscopic_label(n, 2 * abs(kappa_d) - 1, -1 if kappa_d > 0 else 1)


def cmd_oracle(cfg: CliConfig, solver: oracle.SolverConfig, workers: int) -> tuple[int, str]:
    const = cfg.constants()
    rows = []
    for c in oracle.compare_states(cfg.Z, cfg.n_max, solver, const.alpha, workers):
        rows.append({
            "Z": cfg.Z, "n": c.n, "kappa_d": c.kappa_d, "nr": c.nr, "label": _label(c.n, c.kappa_d),
            "eps_oracle": float(c.eps_oracle), "eps_ledger": float(c.eps_ledger),
            "binding_eV": float(1.0 - c.eps_oracle) * const.rest_energy,
            "rel_dev": float(c.rel_dev), "nodes": c.nodes, "residual": float(c.residual),
        })
    max_dev = max((r["rel_dev"] for r in rows), default=0.0)
    ok = max_dev <= cfg.tol
    payload = {"Z": cfg.Z, "n_max": cfg.n_max, "tol": cfg.tol, "max_rel_dev": max_dev,
               "ok": ok, "states": rows}
    text = _render(rows, ORACLE_FIELDS, cfg.format, payload)
    if cfg.format == "plain":
        text += f"\nmax relative deviation {max_dev:.3e} (tol {cfg.tol:g}): {'ok' if ok else 'EXCEEDED'}"
    return (EXIT_OK if ok else EXIT_VIOLATION), text


# argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spinorinv", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="plain"):
        sp.add_argument("--alpha", type=float, default=None,
                        help=f"fine-structure constant (overrides ${ledger.CONSTANTS_ENV_VAR})")
        sp.add_argument("--format", choices=FORMATS, default=fmt_default)

    sp = sub.add_parser("spectrum", help="closed-form bound-state table")
    sp.add_argument("--Z", type=int, required=True)
    sp.add_argument("--nmax", type=int, default=3)
    common(sp)

    sp = sub.add_parser("algebra", help="Clifford and invariant identity suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--inject-fault", choices=FAULT_TARGETS, default=None,
                    help="perturb one basis matrix (negative control)")
    common(sp)

    sp = sub.add_parser("rotate", help="general invariant and SU(2) rotation for one state")
    sp.add_argument("--Z", type=int, required=True)
    sp.add_argument("--j", required=True, help="half-odd-integer, e.g. 1/2 or 1.5")
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=int, help="principal quantum number (on-shell state)")
    which.add_argument("--eps", type=float, help="dimensionless energy (off-shell)")
    sp.add_argument("--theta", type=float, default=0.0)
    sp.add_argument("--phi", type=float, default=0.0)
    sp.add_argument("--psi", type=float, default=0.0)
    common(sp, fmt_default="json")

    sp = sub.add_parser("oracle", help="radial shooting solver vs closed form")
    sp.add_argument("--Z", type=int, required=True)
    sp.add_argument("--nmax", type=int, default=3)
    sp.add_argument("--steps", type=int, default=oracle.SolverConfig.steps)
    sp.add_argument("--rmin", type=float, default=oracle.SolverConfig.r_min)
    sp.add_argument("--rmax", type=float, default=None, help="default 40 n^2 / (Z alpha)")
    sp.add_argument("--tol", type=float, default=1e-4, help="max relative binding deviation")
    sp.add_argument("--bisect-tol", type=float, default=oracle.SolverConfig.tol)
    sp.add_argument("--bracket", choices=("ledger", "bohr"), default="ledger",
                    help="seed the energy window from the closed form or the Bohr pattern")
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    return p


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "spectrum":
            cfg = CliConfig(Z=args.Z, alpha=args.alpha, n_max=args.nmax, format=args.format)
            return cmd_spectrum(cfg)
        if args.command == "algebra":
            cfg = CliConfig(alpha=args.alpha, format=args.format, tol=args.tol, seed=args.seed)
            return cmd_algebra(cfg, args.samples, args.inject_fault)
        if args.command == "rotate":
            cfg = CliConfig(Z=args.Z, alpha=args.alpha, format=args.format)
            return cmd_rotate(cfg, args.n, args.j, args.eps, args.theta, args.phi, args.psi)
        cfg = CliConfig(Z=args.Z, alpha=args.alpha, n_max=args.nmax, format=args.format, tol=args.tol)
        solver = oracle.SolverConfig(r_min=args.rmin, r_max=args.rmax, steps=args.steps,
                                     tol=args.bisect_tol, seed=args.bracket)
        return cmd_oracle(cfg, solver, max(1, args.workers))
    except SolverError as exc:
        return EXIT_SOLVER, f"solver error: {exc}"
    except SupercriticalError as exc:
        return EXIT_INVALID, f"supercritical: {exc}"
    except (_Invalid, InvalidQuantumNumbers, ValueError, OSError) as exc:
        return EXIT_INVALID, f"invalid input: {exc}"


def main(argv=None) -> int:
    code, text = run(argv)
    print(text, file=sys.stdout if code in (EXIT_OK, EXIT_VIOLATION) else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
