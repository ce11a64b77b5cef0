"""JSON and CSV file formats.

JSON is written UTF-8 with sorted keys.  Floats go through ``repr``, which
is the shortest string that round-trips to the identical double, so a
write/read cycle is bit-exact.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .billiard import Box
from .exceptions import TorusXrayError
from .lattice import DirectionTuple
from .spectral import GridFunction, TrigPolynomial
from .tensor import SymmetricTensorField
from .xray import RadonData


def trig_to_json(f: TrigPolynomial) -> dict:
    return {
        "n": f.n,
        "K": f.K,
        "coeffs": [{"k": [int(c) for c in k], "re": float(v.real), "im": float(v.imag)}
                   for k, v in zip(f.keys, f.values)],
    }


def trig_from_json(obj: dict) -> TrigPolynomial:
    n = int(obj["n"])
    coeffs = obj.get("coeffs", [])
    keys = np.array([c["k"] for c in coeffs], dtype=np.int64).reshape(-1, n)
    vals = np.array([complex(c["re"], c["im"]) for c in coeffs], dtype=np.complex128)
    return TrigPolynomial(n, keys, vals, int(obj["K"]))


def radon_to_json(data: RadonData) -> dict:
    return {
        "n": data.n,
        "d": data.d,
        "K": data.K,
        "entries": [{"A": A.tolist(), "f": trig_to_json(F)}
                    for A, F in data.entries.items()],
    }


def radon_from_json(obj: dict) -> RadonData:
    entries = {DirectionTuple.of(e["A"]): trig_from_json(e["f"]) for e in obj["entries"]}
    return RadonData(int(obj["n"]), int(obj["d"]), int(obj["K"]), entries)


def tensor_to_json(f: SymmetricTensorField) -> dict:
    return {
        "n": f.n,
        "m": f.m,
        "K": f.K,
        "components": [{"index": list(I), "f": trig_to_json(p)}
                       for I, p in f.components.items()],
    }


def tensor_from_json(obj: dict) -> SymmetricTensorField:
    comps = {tuple(c["index"]): trig_from_json(c["f"]) for c in obj["components"]}
    return SymmetricTensorField(int(obj["n"]), int(obj["m"]), int(obj["K"]), comps)


def tuples_from_json(obj) -> list[DirectionTuple]:
    """A tuple list file: a JSON list of tuples, each a list of vectors."""
    return sorted(DirectionTuple.of(A) for A in obj)


def box_to_json(box: Box) -> dict:
    return {"L": list(box.L)}


def box_from_json(obj: dict) -> Box:
    return Box(tuple(obj["L"]))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def grid_to_csv(g: GridFunction) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"index_{i + 1}" for i in range(g.n)] + ["re", "im"])
    for idx in np.ndindex(*g.samples.shape):
        z = complex(g.samples[idx])
        w.writerow([*idx, repr(z.real), repr(z.imag)])
    return buf.getvalue()


def grid_from_csv(text: str) -> GridFunction:
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    n = len(header) - 2
    if header != [f"index_{i + 1}" for i in range(n)] + ["re", "im"]:
        raise TorusXrayError(f"unexpected grid CSV header {header}")
    N = round(len(body) ** (1.0 / n)) if body else 0
    samples = np.zeros((N,) * n, dtype=np.complex128)
    for r in body:
        samples[tuple(int(c) for c in r[:n])] = complex(float(r[n]), float(r[n + 1]))
    return GridFunction(n, N, samples)


def broken_rows_to_csv(rows, n: int) -> str:
    """Rows of (x0, v, value) as ``x0_1..x0_n,v_1..v_n,re,im``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x0_{i + 1}" for i in range(n)] + [f"v_{i + 1}" for i in range(n)]
               + ["re", "im"])
    for x0, v, val in rows:
        val = complex(val)
        w.writerow([repr(float(c)) for c in x0] + [repr(float(c)) for c in v]
                   + [repr(val.real), repr(val.imag)])
    return buf.getvalue()


def broken_rows_from_csv(text: str):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    n = (len(header) - 2) // 2
    out = []
    for r in body:
        x0 = np.array([float(c) for c in r[:n]])
        v = np.array([float(c) for c in r[n:2 * n]])
        out.append((x0, v, complex(float(r[2 * n]), float(r[2 * n + 1]))))
    return n, out


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
