"""Command line front end: ``su3euler verify`` and ``su3euler emit``.

Settings resolve as flag > environment variable (SU3EULER_TOL, SU3EULER_GAUSS_ORDER,
SU3EULER_MC_SAMPLES, SU3EULER_SEED, SU3EULER_OUT) > default. Exit status is
0 on success, 1 when a verification check fails and 2 on a configuration error.
"""
import argparse
import csv
import io
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import cg, euler, haar, irreps, verify
from .euler import FundamentalRep

ENV_PREFIX = "SU3EULER_"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
EMIT_TARGETS = ("dmatrix", "irrep", "cg", "volume")
REPS = ("3", "3*", "adjoint")
# commands whose results come out of the quadrature; only these reject off-range angles
QUADRATURE_BOUND = ("irrep",)


class ConfigError(ValueError):
    pass


# ------------------------------------------------------------------ serialization

def _fmt_float(v):
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    s = f"{v:.17g}"
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _quote(s):
    out = ['"']
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def dumps(obj, indent=2, _level=0):
    """JSON text with every float written at 17 significant digits, keys in insertion order."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return _quote(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_quote(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in seq) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def matrix_json(m):
    """Row-major nested list of [re, im] pairs."""
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


# ------------------------------------------------------------------ config

@dataclass(frozen=True)
class RunConfig:
    command: str
    target: str
    angles: np.ndarray = None
    rep: str = "3"
    label: tuple = None
    factors: tuple = None
    coupled: tuple = None
    mult: int = 0
    fmt: str = None
    mode: str = "separable"
    tol: float = None
    gauss_order: int = 24
    mc_samples: int = 10**6
    seed: int = 0
    out: str = None

    @property
    def verify_config(self):
        return verify.VerifyConfig(tol=self.tol, gauss_order=self.gauss_order, mc_samples=self.mc_samples,
                                   seed=self.seed)

    @property
    def spec(self):
        return haar.QuadratureSpec(mode=self.mode, gauss_order=self.gauss_order, mc_samples=self.mc_samples,
                                   seed=self.seed)


def _parse_angles(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(f"angles must be comma-separated reals, got {text!r}")
    if len(vals) != 8:
        raise ConfigError(f"expected 8 angles (alpha,beta,gamma,theta,a,b,c,phi), got {len(vals)}")
    if not all(map(math.isfinite, vals)):
        raise ConfigError("angles must be finite")
    return np.array(vals)


def _parse_label(text):
    try:
        p, q = (int(v) for v in text.split(","))
    except ValueError:
        raise ConfigError(f"irrep labels are written p,q, got {text!r}")
    if p < 0 or q < 0:
        raise ConfigError(f"irrep labels must be non-negative, got {text!r}")
    return irreps.IrrepLabel(p, q)


def _setting(args, name, cast, default):
    v = getattr(args, name, None)
    if v is not None:
        return v
    env = os.environ.get(ENV_PREFIX + name.upper())
    if env is not None and env != "":
        try:
            return cast(env)
        except ValueError:
            raise ConfigError(f"{ENV_PREFIX}{name.upper()}={env!r} is not a valid {cast.__name__}")
    return default


def build_config(args):
    tol = _setting(args, "tol", float, None)
    gauss_order = _setting(args, "gauss_order", int, 24)
    mc_samples = _setting(args, "mc_samples", int, 10**6)
    seed = _setting(args, "seed", int, 0)
    out = _setting(args, "out", str, None)
    if tol is not None and not (tol > 0 and math.isfinite(tol)):
        raise ConfigError("tol must be a positive finite number")
    if gauss_order < 1 or mc_samples < 1:
        raise ConfigError("gauss-order and mc-samples must be positive")
    if seed < 0:
        raise ConfigError("seed must be non-negative")
    kw = dict(command=args.command, tol=tol, gauss_order=gauss_order, mc_samples=mc_samples, seed=seed, out=out)
    if args.command == "verify":
        return RunConfig(target=args.suite, **kw)
    angles = _parse_angles(args.angles) if args.angles is not None else None
    if angles is not None and args.what in QUADRATURE_BOUND and not euler.in_canonical_ranges(angles):
        raise ConfigError("angles outside the canonical ranges")
    cfg = RunConfig(
        target=args.what,
        angles=angles,
        rep=args.rep,
        label=_parse_label(args.label) if args.label else None,
        factors=tuple(_parse_label(f) for f in args.factors) if args.factors else None,
        coupled=_parse_label(args.target) if args.target else None,
        mult=args.mult,
        fmt=args.format,
        mode=args.mode,
        **kw,
    )
    if cfg.target == "dmatrix" and cfg.angles is None:
        raise ConfigError("emit dmatrix needs --angles")
    if cfg.target == "irrep" and cfg.label is None:
        raise ConfigError("emit irrep needs --label p,q")
    if cfg.target == "cg" and cfg.factors is None:
        raise ConfigError("emit cg needs --factors p1,q1 p2,q2")
    if cfg.mult < 0:
        raise ConfigError("--mult must be non-negative")
    if cfg.fmt == "csv" and cfg.target in ("irrep", "volume"):
        raise ConfigError(f"emit {cfg.target} only supports json")
    if cfg.fmt == "csv" and cfg.target == "cg" and cfg.coupled is None:
        raise ConfigError("csv output of emit cg needs --target")
    return cfg


# ------------------------------------------------------------------ commands

def run_verify(cfg):
    """(exit status, report dict)."""
    results = verify.run(cfg.target, cfg.verify_config)
    rep = verify.report(results, cfg.verify_config)
    return (EXIT_OK if rep["passed"] else EXIT_FAIL), rep


def _dmatrix(cfg):
    if cfg.rep == "adjoint":
        m = euler.adjoint_closed(cfg.angles)
    else:
        m = euler.closed_rep(cfg.angles, FundamentalRep(cfg.rep))
    if cfg.fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["row", "col", "re", "im"])
        for i, row in enumerate(np.asarray(m, dtype=complex)):
            for j, z in enumerate(row):
                wr.writerow([i, j, _fmt_float(z.real), _fmt_float(z.imag)])
        return buf.getvalue()
    return {"rep": cfg.rep, "angles": [float(v) for v in cfg.angles], "matrix": matrix_json(m)}


def _irrep(cfg):
    irr = irreps.generate_irrep(cfg.label)
    out = irr.to_json()
    if cfg.angles is not None:
        D = irr.matrix_functions()
        out["angles"] = [float(v) for v in cfg.angles]
        out["matrix"] = matrix_json([[f(cfg.angles) for f in row] for row in D])
    return out


def _cg(cfg):
    r1, r2 = cfg.factors
    if cfg.coupled is not None:
        table = cg.wcg_coefficients(r1, r2, cfg.coupled, cfg.mult)
        return table.to_csv() if (cfg.fmt or "csv") == "csv" else table.to_json()
    decomp = cg.tensor_decompose(r1, r2)
    return {
        "factors": [[r1.p, r1.q], [r2.p, r2.q]],
        "decomposition": [{"target": [t.p, t.q], "multiplicity": m} for t, m in decomp],
        "tables": [t.to_json() for t in cg.all_couplings(r1, r2)],
    }


def _volume(cfg):
    spec = cfg.spec
    if spec.mode is haar.Mode.MONTE_CARLO:
        v, err = haar.group_volume_mc(spec)
        return {"v0": v, "stderr": err, "mode": spec.mode.value, "mc_samples": spec.mc_samples, "seed": spec.seed,
                "exact": haar.V0}
    v = haar.group_volume(spec)
    return {"v0": v, "mode": spec.mode.value, "gauss_order": spec.gauss_order, "exact": haar.V0,
            "rel_err": abs(v - haar.V0) / haar.V0}


_EMITTERS = {"dmatrix": _dmatrix, "irrep": _irrep, "cg": _cg, "volume": _volume}


def emit(cfg):
    """Text to write for ``emit``."""
    out = _EMITTERS[cfg.target](cfg)
    return out if isinstance(out, str) else dumps(out) + "\n"


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ------------------------------------------------------------------ parser

def _add_common(p):
    p.add_argument("--tol", type=float, help="override every check tolerance")
    p.add_argument("--gauss-order", type=int, help="Gauss-Legendre points per polar angle (default 24)")
    p.add_argument("--mc-samples", type=int, help="Monte Carlo sample count (default 1e6)")
    p.add_argument("--seed", type=int, help="seed for probe points and sampling (default 0)")
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="su3euler", description="SU(3) Euler-angle representations and checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    pv = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    pv.add_argument("suite", choices=(*verify.SUITES, "all"))
    _add_common(pv)
    pe = sub.add_parser("emit", help="write a matrix, irrep basis, coupling table or volume")
    pe.add_argument("what", choices=EMIT_TARGETS)
    pe.add_argument("--rep", choices=REPS, default="3")
    pe.add_argument("--angles", help="alpha,beta,gamma,theta,a,b,c,phi in radians")
    pe.add_argument("--label", help="irrep label p,q")
    pe.add_argument("--factors", nargs=2, metavar="P,Q", help="two factor labels")
    pe.add_argument("--target", help="coupled irrep label p,q")
    pe.add_argument("--mult", type=int, default=0, help="multiplicity copy (0-based)")
    pe.add_argument("--format", choices=("json", "csv"))
    pe.add_argument("--mode", choices=[m.value for m in haar.Mode], default="separable")
    _add_common(pe)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        cfg = build_config(args)
        if cfg.command == "verify":
            status, rep = run_verify(cfg)
            _write(dumps(rep) + "\n", cfg.out)
            return status
        _write(emit(cfg), cfg.out)
        return EXIT_OK
    except (ConfigError, cg.MultiplicityError, cg.DecompositionError, irreps.GenerationError) as exc:
        print(f"su3euler: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"su3euler: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
