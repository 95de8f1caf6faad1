"""Readers and writers for signals, Zak arrays, samples, configs and reports.

Arrays of complex numbers are written as ``[re, im]`` pairs in JSON and as
``re,im`` columns in CSV.  Reports are written with sorted keys so that equal
inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np
import tomli

from .grid import GridSpec, Signal
from .sampling import SampleSet
from .wigner import WignerArray
from .zak import Convention, ZakArray


class FormatError(ValueError):
    """Malformed or inconsistent input file."""


def _pairs(z: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in np.ravel(z)]


def _from_pairs(rows) -> np.ndarray:
    a = np.asarray(rows, dtype=float)
    if a.ndim != 2 or a.shape[1] != 2:
        raise FormatError("values must be a list of [re, im] pairs")
    return a[:, 0] + 1j * a[:, 1]


def _to_jsonable(x):
    if isinstance(x, dict):
        return {str(k): _to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_to_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _to_jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, float) and not np.isfinite(x):
        return str(x)
    return x


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(_to_jsonable(obj), indent=2, sort_keys=True) + "\n")


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from e


# signals


def signal_to_json(s: Signal) -> dict:
    return {"grid": {"N": s.grid.N, "L": s.grid.L, "dq": s.grid.dq}, "values": _pairs(s.wavefunction)}


def signal_from_json(d: dict) -> Signal:
    try:
        g = GridSpec.from_dict(d["grid"])
        psi = _from_pairs(d["values"])
    except KeyError as e:
        raise FormatError(f"signal JSON is missing {e}") from e
    if psi.size != g.N:
        raise FormatError(f"signal has {psi.size} values, grid expects {g.N}")
    return Signal.from_wavefunction(g, psi)


def write_signal_csv(path, s: Signal) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "q", "re", "im"])
        for j, (q, v) in enumerate(zip(s.grid.q, s.wavefunction)):
            w.writerow([j, repr(float(q)), repr(float(v.real)), repr(float(v.imag))])


def read_signal_csv(path, L: int) -> Signal:
    """Signal CSV needs ``L`` to recover the cell structure; ``dq`` comes from ``q``."""
    rows = _read_rows(path, ["index", "q", "re", "im"])
    if len(rows) < 2:
        raise FormatError(f"{path}: need at least two rows")
    q = np.array([float(r["q"]) for r in rows])
    psi = np.array([float(r["re"]) + 1j * float(r["im"]) for r in rows])
    dq = float(q[1] - q[0])
    if psi.size % L:
        raise FormatError(f"{path}: {psi.size} rows is not a multiple of L={L}")
    return Signal.from_wavefunction(GridSpec(L, psi.size // L, dq), psi)


def write_signal(path, s: Signal) -> None:
    if str(path).endswith(".csv"):
        write_signal_csv(path, s)
    else:
        write_json(path, signal_to_json(s))


def read_signal(path, L: int | None = None) -> Signal:
    if str(path).endswith(".csv"):
        if L is None:
            raise FormatError("reading a signal CSV needs the cell length L")
        return read_signal_csv(path, L)
    return signal_from_json(read_json(path))


def _read_rows(path, header: list[str]) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or list(reader.fieldnames) != header:
            raise FormatError(f"{path}: expected header {','.join(header)}")
        return list(reader)


# Zak arrays


def zak_to_json(z: ZakArray) -> dict:
    return {
        "convention": z.convention.value,
        "L": z.grid.L,
        "M": z.grid.M,
        "q0": z.grid.q0,
        "values": _pairs(z.values),
    }


def zak_from_json(d: dict) -> ZakArray:
    try:
        g = GridSpec.from_cell(float(d["q0"]), int(d["L"]), int(d["M"]))
        chi = _from_pairs(d["values"])
        conv = Convention(d["convention"])
    except (KeyError, ValueError) as e:
        raise FormatError(f"bad Zak JSON: {e}") from e
    if chi.size != g.L * g.M:
        raise FormatError(f"Zak array has {chi.size} values, expected {g.L * g.M}")
    return ZakArray(g, conv, chi.reshape(g.L, g.M))


# samples


def write_samples_csv(path, s: SampleSet) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "q", "re", "im"])
        for n, q, v in zip(s.n, s.q_offset + s.n * s.grid.q0, s.values):
            w.writerow([int(n), repr(float(q)), repr(float(v.real)), repr(float(v.imag))])


def read_samples_csv(path, g: GridSpec) -> SampleSet:
    rows = _read_rows(path, ["n", "q", "re", "im"])
    if not rows:
        raise FormatError(f"{path}: no samples")
    if len(rows) != g.M:
        raise FormatError(f"{path}: {len(rows)} samples, grid has {g.M} cells")
    rows.sort(key=lambda r: int(r["n"]))
    q_offset = float(rows[0]["q"]) - int(rows[0]["n"]) * g.q0
    values = np.array([float(r["re"]) + 1j * float(r["im"]) for r in rows])
    return SampleSet(g, q_offset, values)


# Wigner


def write_wigner(path, w: WignerArray) -> None:
    """Matrix CSV (rows are positions) with a ``.json`` sidecar holding the axes."""
    path = Path(path)
    np.savetxt(path, w.values, delimiter=",", fmt="%.17g")
    write_json(path.with_suffix(".json"), {"N": w.grid.N, "L": w.grid.L, "dq": w.grid.dq, "dp": w.grid.dp,
                                           "rows": "q = (a - N) dq/2", "cols": "p = (c - N) dp/2"})


def read_wigner(path) -> WignerArray:
    path = Path(path)
    meta = read_json(path.with_suffix(".json"))
    g = GridSpec.from_dict(meta)
    values = np.loadtxt(path, delimiter=",")
    if values.shape != (2 * g.N, 2 * g.N):
        raise FormatError(f"{path}: expected {2 * g.N}x{2 * g.N}, got {values.shape}")
    return WignerArray(g, values)


# singular values


def write_singular_values(path, sv: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "sigma"])
        for i, s in enumerate(sv):
            w.writerow([i, repr(float(s))])


# configs


def read_config(path) -> dict:
    """JSON or TOML config, chosen by file extension."""
    path = Path(path)
    if not path.exists():
        raise FormatError(f"{path}: no such file")
    if path.suffix == ".toml":
        try:
            return tomli.loads(path.read_text())
        except tomli.TOMLDecodeError as e:
            raise FormatError(f"{path}: invalid TOML ({e})") from e
    cfg = read_json(path)
    if not isinstance(cfg, dict):
        raise FormatError(f"{path}: config must be an object")
    return cfg
