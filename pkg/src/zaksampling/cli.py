"""Command-line front end: ``zaksampling {zak,sample,lattice,wigner,poisson}``.

Every command reads an optional JSON or TOML config, resolves it against the
built-in defaults, runs the pipeline and writes a ``report.json`` that embeds
the resolved config, the seed and the library version.

Exit codes: 0 when every check passes, 1 for usage, config or I/O errors,
2 when a verification check fails.
"""
from __future__ import annotations

import argparse
import copy
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from . import states
from .errors import (
    BandOutOfRange,
    BandwidthTooLarge,
    EpsilonTooLarge,
    GridMismatch,
    IllConditioned,
    LatticeSpecError,
    NonCommensurateDisplacement,
    NonCommensurateOffset,
    NonvanishingViolated,
    OutOfRectangle,
)
from .grid import GridSpec, Signal, fourier_forward
from .io import (
    FormatError,
    read_config,
    read_samples_csv,
    read_signal,
    write_json,
    write_samples_csv,
    write_signal_csv,
    write_singular_values,
    write_wigner,
    zak_to_json,
)
from .lattice import (
    FiducialVector,
    LatticeSpec,
    build_lattice,
    factorization_residual,
    gram_analysis,
    orthonormality_test,
    projected_inner_products,
    projected_reconstruct,
    totality_test,
)
from .sampling import (
    BandSpec,
    bandlimit_project,
    consistency_residual,
    dependence_residual,
    extract_samples,
    poisson_residual,
    reconstruct_cauchy,
    reconstruct_sinc,
)
from .wigner import comb_wigner_check, marginals, wigner_imag_residual, wigner_transform
from .zak import geometric_phase, locate_zero, quasiperiodicity_residual, zak_forward, zak_forward_round, zak_to_signal

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

SQRT_2PI = math.sqrt(2 * math.pi)

DEFAULTS = {
    "zak": {
        "grid": {"q0": SQRT_2PI, "L": 32, "M": 32},
        "signal": {"kind": "gaussian", "params": {}},
        "tol": 1e-10,
    },
    "sample": {
        "grid": {"q0": 1.0, "L": 8, "M": 128},
        "band": {"p0_factor": 0.5, "m": 0},
        "signal": {"kind": "bandlimited_mixture", "params": {}},
        "q_offset": 0.25,
        "tol": 1e-8,
    },
    "lattice": {
        "grid": {"q0": SQRT_2PI, "L": 16, "M": 16},
        "lattice": {"p0_factor": 1.0, "n_min": -4, "n_max": 3, "m_min": -4, "m_max": 3},
        "fiducial": {"kind": "gaussian", "params": {}},
        "reconstruct": {"m_min": -1, "m_max": 1},
        "tol": 1e-6,
    },
    "wigner": {
        "grid": {"q0": SQRT_2PI, "L": 32, "M": 16},
        "signal": {"kind": "coherent", "params": {"q": 0.0, "p": 0.0}},
        "comb": None,
        "tol": 1e-10,
    },
    "poisson": {
        "grid": {"q0": SQRT_2PI, "L": 32, "M": 32},
        "signal": {"kind": "gaussian_mixture", "params": {}},
        "n_points": 50,
        "tol": 1e-10,
    },
}


class ConfigError(ValueError):
    pass


def _merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


def resolve_config(command: str, cfg: dict | None, tol: float | None) -> dict:
    resolved = _merge(DEFAULTS[command], cfg or {})
    if tol is not None:
        resolved["tol"] = tol
    return resolved


def grid_from_config(d: dict) -> GridSpec:
    try:
        if "dq" in d:
            return GridSpec(int(d["L"]), int(d["M"]), float(d["dq"]))
        return GridSpec.from_cell(float(d["q0"]), int(d["L"]), int(d["M"]))
    except KeyError as e:
        raise ConfigError(f"grid is missing {e}") from e


def band_from_config(d: dict, g: GridSpec) -> BandSpec:
    if "p0" in d:
        p0 = float(d["p0"])
    else:
        p0 = float(d.get("p0_factor", 1.0)) * g.p_cell
    return BandSpec(p0, int(d.get("m", 0)))


def _factory(g: GridSpec, kind: str, params: dict, rng: np.random.Generator, band: BandSpec | None) -> Signal:
    if kind == "gaussian":
        return states.gaussian(g, **params)
    if kind == "coherent":
        return states.standard_cs(g, float(params.get("q", 0.0)), float(params.get("p", 0.0)))
    if kind == "gaussian_mixture":
        return states.gaussian_mixture(g, rng, **params)
    if kind == "bandlimited_mixture":
        if band is None:
            raise ConfigError("bandlimited_mixture needs a band")
        return states.bandlimited_mixture(g, band, rng, **params)
    if kind == "box":
        return states.box(g)
    if kind == "comb":
        return states.comb(g)
    if kind == "smoothed_comb":
        return states.smoothed_comb(g, float(params["epsilon"]))
    if kind == "sech":
        return states.sech_momentum(g, **params)
    if kind == "bandlimited_fiducial":
        return states.bandlimited_fiducial(g, float(params.get("p0_factor", 0.5)) * g.p_cell,
                                           float(params.get("width", 1.0)))
    if kind == "notched":
        return states.notched_momentum(g, **params)
    if kind == "pure_phase":
        return states.pure_phase_fiducial(g, rng=rng)
    if kind == "two_tone":
        return states.two_tone(g, **params)
    if kind == "cat":
        return states.cat_state(g, **params)
    raise ConfigError(f"unknown signal kind {kind!r}")


def signal_from_config(d: dict, g: GridSpec, rng: np.random.Generator, band: BandSpec | None = None) -> Signal:
    if "file" in d:
        s = read_signal(d["file"], L=d.get("L", g.L))
        if s.grid.N != g.N or abs(s.grid.dq - g.dq) > 1e-12 * g.dq:
            raise GridMismatch(f"signal file grid {s.grid} does not match configured grid {g}")
        return s
    try:
        return _factory(g, d["kind"], dict(d.get("params", {})), rng, band)
    except TypeError as e:
        raise ConfigError(f"bad parameters for {d.get('kind')!r}: {e}") from e


class Checks:
    """Named pass/fail checks collected into the report."""

    def __init__(self):
        self.items = {}

    def le(self, name: str, value: float, tol: float):
        self.items[name] = {"value": float(value), "tol": float(tol), "pass": bool(value <= tol)}

    def true(self, name: str, value: bool):
        self.items[name] = {"value": bool(value), "pass": bool(value)}

    @property
    def ok(self) -> bool:
        return all(v["pass"] for v in self.items.values())


def _finish(out: Path, command: str, cfg: dict, seed: int, checks: Checks, results: dict) -> int:
    report = {
        "command": command,
        "version": __version__,
        "seed": seed,
        "config": cfg,
        "checks": checks.items,
        "results": results,
        "passed": checks.ok,
    }
    write_json(out / "report.json", report)
    return EXIT_OK if checks.ok else EXIT_VERIFY


def cmd_zak(cfg: dict, out: Path, rng: np.random.Generator, seed: int) -> int:
    g = grid_from_config(cfg["grid"])
    s = signal_from_config(cfg["signal"], g, rng)
    tol = float(cfg["tol"])
    z = zak_forward(s)
    zr = zak_forward_round(s)
    zero = locate_zero(z)
    checks = Checks()
    checks.le("norm", abs(z.norm() - s.norm()), tol)
    checks.le("roundtrip", float(np.abs(zak_to_signal(z).values - s.values).max()), tol)
    checks.le("geometric_phase", float(np.abs(zr.values - np.conj(geometric_phase(g)) * z.values).max()), tol)
    checks.le("quasiperiodicity", quasiperiodicity_residual(z), tol)
    write_json(out / "zak.json", zak_to_json(z))
    write_json(out / "zak_round.json", zak_to_json(zr))
    results = {"zero": {"location": zero.location, "index": zero.index, "min_abs": zero.min_abs,
                        "max_abs": zero.max_abs, "winding": zero.winding, "continuous": zero.continuous}}
    return _finish(out, "zak", cfg, seed, checks, results)


def cmd_sample(cfg: dict, out: Path, rng: np.random.Generator, seed: int) -> int:
    g = grid_from_config(cfg["grid"])
    band = band_from_config(cfg["band"], g)
    if band.p0 > g.p_cell * (1 + 1e-12):
        raise BandwidthTooLarge(f"p0={band.p0:.6g} exceeds 2 pi/q0={g.p_cell:.6g}")
    tol = float(cfg["tol"])
    s = bandlimit_project(signal_from_config(cfg["signal"], g, rng, band), band)
    if cfg.get("samples"):
        samples = read_samples_csv(cfg["samples"], g)
    else:
        samples = extract_samples(s, float(cfg["q_offset"]))
    write_samples_csv(out / "samples.csv", samples)

    checks = Checks()
    results = {}
    ref = s.wavefunction
    scale = np.abs(ref).max()
    sinc = reconstruct_sinc(samples, band)
    cauchy = reconstruct_cauchy(samples)
    for name, rec in (("sinc", sinc), ("cauchy", cauchy)):
        err = float(np.abs(rec.wavefunction - ref).max() / scale)
        l2 = float((rec - s).norm() / s.norm())
        results[name] = {"formula": name, "p0": band.p0, "q0": g.q0, "q_offset": samples.q_offset,
                         "max_error": err, "l2_error": l2}
        write_json(out / f"reconstruction_{name}.json", results[name])
        write_signal_csv(out / f"reconstruction_{name}.csv", rec)
        checks.le(f"{name}_error", err, tol)
    checks.le("sinc_vs_cauchy", float(np.abs(sinc.wavefunction - cauchy.wavefunction).max() / scale), tol)
    checks.le("consistency", consistency_residual(samples, band) / np.abs(samples.values).max(), tol)
    for deg in range(4):
        checks.le(f"dependence_z{deg}", dependence_residual(samples, [0.0] * deg + [1.0]), max(tol, 1e-6))
    return _finish(out, "sample", cfg, seed, checks, results)


def cmd_lattice(cfg: dict, out: Path, rng: np.random.Generator, seed: int) -> int:
    g = grid_from_config(cfg["grid"])
    lc = cfg["lattice"]
    p0 = float(lc["p0"]) if "p0" in lc else float(lc.get("p0_factor", 1.0)) * g.p_cell
    spec = LatticeSpec(float(lc.get("q0", g.q0)), p0, (int(lc["n_min"]), int(lc["n_max"])),
                       (int(lc["m_min"]), int(lc["m_max"])))
    f = FiducialVector(signal_from_config(cfg["fiducial"], g, rng))
    tol = float(cfg["tol"])
    lat = build_lattice(f, spec)
    total, min_chi = totality_test(f)
    ortho, ortho_dev = orthonormality_test(f)
    gram = gram_analysis(lat, interior=g.N <= 1024)
    write_json(out / "gram.json", gram.to_dict())
    write_singular_values(out / "singular_values.csv", gram.singular_values)

    checks = Checks()
    checks.true("orthonormal_implies_total", total or not ortho)
    results = {
        "spec": spec.to_dict(),
        "von_neumann": spec.is_von_neumann,
        "total": total,
        "min_abs_chi0": min_chi,
        "orthonormal": ortho,
        "orthonormality_deviation": ortho_dev,
        "gram": gram.to_dict(),
    }
    if spec.is_von_neumann:
        checks.le("factorization", factorization_residual(lat), tol)
    rc = cfg.get("reconstruct")
    if rc:
        # the reconstruction needs every position cell of the torus
        full = LatticeSpec(spec.q0, spec.p0, (0, int(round(g.Q / spec.q0)) - 1),
                           (int(rc["m_min"]), int(rc["m_max"])))
        rlat = build_lattice(f, full)
        psi = Signal(g, np.zeros(g.N, dtype=complex))
        for m in full.ms:
            psi = psi + states.bandlimited_mixture(g, BandSpec(spec.p0, int(m)), rng)
        psi = psi.normalized()
        try:
            rec = projected_reconstruct(rlat, projected_inner_products(rlat, psi))
            err = float((rec - psi).norm())
            results["reconstruction"] = {"l2_error": err}
        except IllConditioned as e:
            err = float((e.partial - psi).norm())
            results["reconstruction"] = {"l2_error": err, "ill_conditioned": str(e)}
            checks.true("well_conditioned", False)
        checks.le("reconstruction", err, tol)
    return _finish(out, "lattice", cfg, seed, checks, results)


def cmd_wigner(cfg: dict, out: Path, rng: np.random.Generator, seed: int) -> int:
    g = grid_from_config(cfg["grid"])
    s = signal_from_config(cfg["signal"], g, rng)
    tol = float(cfg["tol"])
    w = wigner_transform(s)
    pos, mom = marginals(w)
    checks = Checks()
    checks.le("imaginary_part", wigner_imag_residual(s), tol)
    checks.le("position_marginal", float(np.abs(pos - np.abs(s.wavefunction) ** 2).max()), tol)
    checks.le("momentum_marginal", float(np.abs(mom - np.abs(fourier_forward(s).wavefunction) ** 2).max()), tol)
    checks.le("total", abs(w.total() - s.norm() ** 2), tol)
    write_wigner(out / "wigner.csv", w)
    results = {"min": float(w.values.min()), "max": float(w.values.max()), "origin": w.at(0.0, 0.0)}
    cc = cfg.get("comb")
    if cc:
        rep = comb_wigner_check(float(cc["epsilon"]), float(cc.get("q0", SQRT_2PI)), int(cc.get("L", 64)),
                                int(cc.get("M", 8)))
        results["comb"] = rep.to_dict()
        checks.true("comb_located", rep.located)
        checks.true("comb_signs", rep.signs_ok)
        checks.le("comb_q_periodicity", rep.q_periodicity, float(cc.get("tol", 1e-8)))
        checks.le("comb_p_periodicity", rep.p_periodicity, float(cc.get("tol", 1e-8)))
    return _finish(out, "wigner", cfg, seed, checks, results)


def cmd_poisson(cfg: dict, out: Path, rng: np.random.Generator, seed: int) -> int:
    g = grid_from_config(cfg["grid"])
    s = signal_from_config(cfg["signal"], g, rng)
    tol = float(cfg["tol"])
    n = int(cfg["n_points"])
    j = rng.integers(-g.L // 2, g.L // 2, size=n)
    k = rng.integers(-g.M // 2, g.M // 2, size=n)
    res = np.array([poisson_residual(s, a * g.dq, b * g.dp) for a, b in zip(j, k)])
    checks = Checks()
    checks.le("poisson", float(res.max()), tol)
    results = {"points": [[float(a * g.dq), float(b * g.dp)] for a, b in zip(j, k)], "residuals": res}
    return _finish(out, "poisson", cfg, seed, checks, results)


COMMANDS = {
    "zak": cmd_zak,
    "sample": cmd_sample,
    "lattice": cmd_lattice,
    "wigner": cmd_wigner,
    "poisson": cmd_poisson,
}

# raised before any verification: the request itself is invalid
_USAGE_ERRORS = (
    ConfigError,
    FormatError,
    OSError,
    GridMismatch,
    LatticeSpecError,
    NonCommensurateDisplacement,
    NonCommensurateOffset,
    OutOfRectangle,
    BandOutOfRange,
    EpsilonTooLarge,
    KeyError,
    TypeError,
)
# the computation ran but a mathematical hypothesis failed
_VERIFY_ERRORS = (BandwidthTooLarge, NonvanishingViolated, IllConditioned)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zaksampling", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, help="JSON or TOML file overriding the defaults")
        p.add_argument("--out", type=Path, default=Path("out"), help="output directory")
        p.add_argument("--seed", type=int, required=True, help="seed for all random draws")
        p.add_argument("--tol", type=float, help="tolerance for the verification checks")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed < 0 or args.seed >= 2**64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        user = read_config(args.config) if args.config else {}
        cfg = resolve_config(args.command, user, args.tol)
        args.out.mkdir(parents=True, exist_ok=True)
        rng = np.random.default_rng(args.seed)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code = COMMANDS[args.command](cfg, args.out, rng, args.seed)
    except _VERIFY_ERRORS as e:
        print(f"verification failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except _USAGE_ERRORS as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    status = "ok" if code == EXIT_OK else "verification failed"
    print(f"{args.command}: {status} (report in {args.out / 'report.json'})")
    return code


if __name__ == "__main__":
    sys.exit(main())
