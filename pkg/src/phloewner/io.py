"""Model JSON, signal CSV and frequency-data CSV formats."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from phloewner.errors import InvalidParameter
from phloewner.freqest import FrequencySample
from phloewner.lti import DescriptorSystem, PHForm, SignalRecord

SIGNAL_HEADER = ["k", "t", "u_re", "u_im", "y_re", "y_im"]
FREQ_HEADER = ["q_re", "q_im", "H_re", "H_im"]
PH_KEYS = ("J", "R", "Q", "F", "P", "S", "N")
SS_KEYS = ("E", "A", "B", "C", "D")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _matrix(a) -> list[list[float]]:
    a = np.asarray(a)
    if np.iscomplexobj(a):
        if np.abs(a.imag).max(initial=0.0) > 0:
            raise InvalidParameter("model JSON stores real matrices only")
        a = a.real
    return [[float(x) for x in row] for row in a]


def model_to_dict(model) -> dict:
    if isinstance(model, PHForm):
        d = {"kind": "ph", "clock": "continuous", "n": model.n, "m": model.m, "p": model.m}
        d.update({k: _matrix(getattr(model, k)) for k in PH_KEYS})
        return d
    if isinstance(model, DescriptorSystem):
        d = {"kind": "descriptor", "clock": "discrete" if model.is_discrete else "continuous"}
        if model.is_discrete:
            d["Ts"] = model.Ts
        d.update({"n": model.n, "m": model.m, "p": model.p})
        d.update({k: _matrix(getattr(model, k)) for k in SS_KEYS})
        return d
    raise TypeError(f"cannot serialize {type(model).__name__}")


def _load_matrix(obj, key, shape):
    a = np.array(obj[key], dtype=float)
    return a.reshape(shape)


def model_from_dict(d: dict):
    n, m, p = int(d["n"]), int(d["m"]), int(d["p"])
    kind = d.get("kind")
    if kind == "ph":
        shapes = {"J": (n, n), "R": (n, n), "Q": (n, n), "F": (n, m), "P": (n, m), "S": (m, m), "N": (m, m)}
        return PHForm(**{k: _load_matrix(d, k, s) for k, s in shapes.items()})
    if kind == "descriptor":
        shapes = {"E": (n, n), "A": (n, n), "B": (n, m), "C": (p, n), "D": (p, m)}
        Ts = d.get("Ts") if d.get("clock") == "discrete" else None
        if d.get("clock") == "discrete" and Ts is None:
            raise InvalidParameter("discrete model JSON needs Ts")
        return DescriptorSystem(**{k: _load_matrix(d, k, s) for k, s in shapes.items()}, Ts=Ts)
    raise InvalidParameter(f"unknown model kind {kind!r}")


def write_model(path, model) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=1) + "\n")


def read_model(path):
    return model_from_dict(json.loads(Path(path).read_text()))


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def write_signal_csv(path, record: SignalRecord) -> None:
    u = record.u.reshape(-1)
    y = record.y.reshape(-1)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SIGNAL_HEADER)
        for k in range(record.K):
            w.writerow([k, _fmt(k * record.Ts), _fmt(u[k].real), _fmt(u[k].imag),
                        _fmt(y[k].real), _fmt(y[k].imag)])


def read_signal_csv(path, Ts: float | None = None) -> SignalRecord:
    """Read a signal CSV; ``Ts`` defaults to the spacing of the ``t`` column."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    with open(path) as fh:
        header = fh.readline().strip().split(",")
    if header != SIGNAL_HEADER:
        raise InvalidParameter(f"unexpected signal CSV header {header}")
    if Ts is None:
        Ts = float(data[1, 1] - data[0, 1])
    return SignalRecord(Ts, data[:, 2] + 1j * data[:, 3], data[:, 4] + 1j * data[:, 5])


def write_freq_csv(path, samples: list[FrequencySample]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(FREQ_HEADER)
        for s in samples:
            w.writerow([_fmt(s.point.real), _fmt(s.point.imag), _fmt(s.value.real), _fmt(s.value.imag)])


def read_freq_csv(path) -> list[FrequencySample]:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return [FrequencySample(complex(a, b), complex(c, d)) for a, b, c, d in data]


def write_rows_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(float(x)) for x in row])
