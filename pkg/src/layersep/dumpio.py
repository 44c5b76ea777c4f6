"""Binary layer-dump format (LSD1) and report serialization.

LSD1 layout, all integers little-endian::

    offset        size      field
    0             4         magic "LSD1"
    4             2         version, u16 (currently 1)
    6             2         layer count L, u16
    8             8         point count n, u64
    16            4 * L     per-layer dimensionality, u32 each
    16 + 4L       2         name length, u16
    18 + 4L       name_len  dataset name, UTF-8
    ...           n         labels, one byte each, 0 or 1
    ...           n*d_j*4   layer blocks, float32 LE, row-major, ascending

The file length must equal the exact sum implied by the header. Floats are
stored in 32 bits (halving dump size at d around 768) and widened to 64
bits for analysis on read.

Reports are serialized as JSON or CSV with a stable field order, floats at
17 significant digits (enough to round-trip a double exactly), and the
infinite sentinel rendered as the string ``"inf"``, never a bare number.
"""

from __future__ import annotations

import struct
from typing import BinaryIO, Sequence, Union

import numpy as np

from .analysis import CorrelationReport, Recommendation, SeparabilityReport
from .errors import (
    BadMagicError,
    DimensionMismatchError,
    InvalidHeaderError,
    InvalidLabelError,
    NonFiniteValueError,
    TrailingDataError,
    TruncatedFileError,
    UnsupportedVersionError,
)
from .measures import Measure, MeasureValue
from .pointset import LayerStack, build_layer_stack, build_point_set

MAGIC = b"LSD1"
VERSION = 1

_FIXED = struct.Struct("<4sHHQ")  # magic, version, L, n


def _take(data: bytes, offset: int, size: int, what: str) -> bytes:
    if offset + size > len(data):
        raise TruncatedFileError(
            f"stream ends inside {what}: need {offset + size} bytes, have {len(data)}"
        )
    return data[offset : offset + size]


def read_dump(source: Union[bytes, bytearray, BinaryIO]) -> LayerStack:
    """Parse a complete LSD1 stream into a validated LayerStack.

    Every size is bounds-checked against the actual stream length before
    any array proportional to a header field is allocated.
    """
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    magic = _take(data, 0, 4, "magic")
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    _, version, layer_count, n = _FIXED.unpack(_take(data, 0, _FIXED.size, "header"))
    if version != VERSION:
        raise UnsupportedVersionError(f"version {version}, reader supports {VERSION}")
    if layer_count < 1:
        raise InvalidHeaderError("layer count is 0")
    if n < 2:
        raise InvalidHeaderError(f"point count {n} is below 2")
    offset = _FIXED.size
    dims_raw = _take(data, offset, 4 * layer_count, "dimension table")
    dims = struct.unpack(f"<{layer_count}I", dims_raw)
    offset += 4 * layer_count
    if any(d < 1 for d in dims):
        raise InvalidHeaderError(f"zero dimensionality in {dims}")
    (name_len,) = struct.unpack("<H", _take(data, offset, 2, "name length"))
    offset += 2
    try:
        name = _take(data, offset, name_len, "name").decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidHeaderError(f"name is not valid UTF-8: {exc}") from exc
    offset += name_len

    expected = offset + n + sum(n * d * 4 for d in dims)
    if len(data) < expected:
        raise TruncatedFileError(
            f"header implies {expected} bytes, stream has {len(data)}"
        )
    if len(data) > expected:
        raise TrailingDataError(
            f"header implies {expected} bytes, stream has {len(data)}"
        )

    labels = np.frombuffer(data, dtype=np.uint8, count=n, offset=offset)
    offset += n
    if labels.max(initial=0) > 1:
        bad = int(np.flatnonzero(labels > 1)[0])
        raise InvalidLabelError(f"label byte {labels[bad]} at row {bad} is not 0 or 1")
    layers = []
    for d in dims:
        block = np.frombuffer(data, dtype="<f4", count=n * d, offset=offset)
        offset += n * d * 4
        if not np.isfinite(block).all():
            raise NonFiniteValueError(f"non-finite float in layer {len(layers) + 1}")
        layers.append(
            build_point_set(block.astype(np.float64).reshape(n, d), labels)
        )
    return build_layer_stack(layers, range(1, layer_count + 1), name)


def write_dump(stack: LayerStack, sink: BinaryIO) -> int:
    """Encode a stack as LSD1 bytes; returns the byte count written.

    Coordinates are narrowed to float32 (round-to-nearest-even). Values
    whose magnitude exceeds the float32 range would decode as infinities,
    so they are rejected here instead.
    """
    name = stack.dataset_name.encode("utf-8")
    if len(name) > 0xFFFF:
        raise DimensionMismatchError(f"dataset name is {len(name)} bytes, max 65535")
    if stack.layer_count > 0xFFFF:
        raise DimensionMismatchError(f"{stack.layer_count} layers, max 65535")
    out = bytearray()
    out += _FIXED.pack(MAGIC, VERSION, stack.layer_count, stack.n)
    out += struct.pack(
        f"<{stack.layer_count}I", *(layer.d for layer in stack.layers)
    )
    out += struct.pack("<H", len(name))
    out += name
    out += stack.labels.astype(np.uint8).tobytes()
    for idx, layer in zip(stack.layer_indices, stack.layers):
        with np.errstate(over="ignore"):  # overflow reported as typed error
            narrowed = layer.points.astype("<f4")
        if not np.isfinite(narrowed).all():
            raise NonFiniteValueError(
                f"layer {idx} has coordinates beyond float32 range"
            )
        out += narrowed.tobytes()
    sink.write(bytes(out))
    return len(out)


# --- report rendering -----------------------------------------------------


def _fmt(value: float) -> str:
    """17-significant-digit decimal; infinities as bare 'inf'/'-inf'."""
    if value == float("inf"):
        return "inf"
    if value == float("-inf"):
        return "-inf"
    return format(value, ".17g")


def _json_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value in (float("inf"), float("-inf")):
            return f'"{_fmt(value)}"'  # string, never a JSON number
        return _fmt(value)
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot render {type(value)!r}")


def _json(value, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f'{inner}"{k}": {_json(v, indent + 1)}' for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        rendered = [_json(v, indent + 1) for v in value]
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            return "[" + ", ".join(rendered) + "]"
        return (
            "[\n" + ",\n".join(inner + r for r in rendered) + "\n" + pad + "]"
        )
    return _json_scalar(value)


def _flag_names(mv: MeasureValue) -> list[str]:
    return sorted(flag.value for flag in mv.flags)


def _sample_dict(report: SeparabilityReport):
    if report.sample_info is None:
        return None
    si = report.sample_info
    return {"fraction": si.fraction, "seed": si.seed, "sampled_n": si.sampled_n}


def _single_layer_rows(report: SeparabilityReport) -> list[dict]:
    rows = []
    for idx, mv in report.per_layer:
        row: dict = {"layer": idx, "value": mv.value}
        if mv.measure is Measure.HM:
            row["per_point"] = mv.per_point
        row["flags"] = _flag_names(mv)
        rows.append(row)
    return rows


def _merged_layer_rows(reports: Sequence[SeparabilityReport]) -> list[dict]:
    indices = reports[0].layer_indices()
    for r in reports[1:]:
        if r.layer_indices() != indices:
            raise DimensionMismatchError("reports cover different layers")
    rows = []
    for pos, idx in enumerate(indices):
        row: dict = {"layer": idx}
        flags: set[str] = set()
        for r in reports:
            mv = r.per_layer[pos][1]
            row[r.measure.value] = mv.value
            flags.update(_flag_names(mv))
        row["flags"] = sorted(flags)
        rows.append(row)
    return rows


def _report_dict(
    obj: SeparabilityReport | Sequence[SeparabilityReport],
    recommendation: Recommendation | None,
) -> dict:
    reports = [obj] if isinstance(obj, SeparabilityReport) else list(obj)
    doc: dict = {"dataset": reports[0].dataset_name}
    if len(reports) == 1:
        doc["measure"] = reports[0].measure.value
        doc["sample"] = _sample_dict(reports[0])
        doc["layers"] = _single_layer_rows(reports[0])
    else:
        doc["measures"] = [r.measure.value for r in reports]
        doc["sample"] = _sample_dict(reports[0])
        doc["layers"] = _merged_layer_rows(reports)
    if recommendation is not None:
        doc["recommendation"] = _recommendation_dict(recommendation)
    return doc


def _recommendation_dict(rec: Recommendation) -> dict:
    return {
        "chosen_layer": rec.chosen_layer,
        "winning_value": rec.winning_value,
        "ties": list(rec.ties),
    }


def _report_csv(
    obj: SeparabilityReport | Sequence[SeparabilityReport],
    recommendation: Recommendation | None,
) -> str:
    reports = [obj] if isinstance(obj, SeparabilityReport) else list(obj)
    lines = []
    if len(reports) == 1:
        report = reports[0]
        lines.append(f"layer,{report.measure.value},flags")
        for idx, mv in report.per_layer:
            lines.append(f"{idx},{_fmt(mv.value)},{'|'.join(_flag_names(mv))}")
    else:
        names = [r.measure.value for r in reports]
        lines.append("layer," + ",".join(names) + ",flags")
        for row in _merged_layer_rows(reports):
            cells = [str(row["layer"])]
            cells += [_fmt(row[name]) for name in names]
            cells.append("|".join(row["flags"]))
            lines.append(",".join(cells))
    if recommendation is not None:
        lines.append("")
        lines.append("chosen_layer,winning_value,ties")
        lines.append(
            f"{recommendation.chosen_layer},{_fmt(recommendation.winning_value)},"
            + "|".join(str(t) for t in recommendation.ties)
        )
    return "\n".join(lines) + "\n"


def write_report(
    obj: Union[
        SeparabilityReport,
        Sequence[SeparabilityReport],
        Recommendation,
        CorrelationReport,
    ],
    format: str = "json",
    recommendation: Recommendation | None = None,
) -> str:
    """Render a report, recommendation or correlation result as text.

    ``format`` is ``"json"`` or ``"csv"``. When ``obj`` is a report (or a
    sequence of reports over the same layers) and ``recommendation`` is
    given, the recommendation is embedded after the per-layer table.
    """
    if format not in ("json", "csv"):
        raise ValueError(f"unknown format {format!r}")
    if isinstance(obj, Recommendation):
        if format == "json":
            return _json(_recommendation_dict(obj)) + "\n"
        return (
            "chosen_layer,winning_value,ties\n"
            f"{obj.chosen_layer},{_fmt(obj.winning_value)},"
            + "|".join(str(t) for t in obj.ties)
            + "\n"
        )
    if isinstance(obj, CorrelationReport):
        if format == "json":
            doc = {
                "dataset": obj.dataset_name,
                "units": obj.units,
                "pcc": {m.value: r for m, r in obj.entries},
            }
            return _json(doc) + "\n"
        lines = ["measure,pcc"]
        lines += [f"{m.value},{_fmt(r)}" for m, r in obj.entries]
        return "\n".join(lines) + "\n"
    if format == "json":
        return _json(_report_dict(obj, recommendation)) + "\n"
    return _report_csv(obj, recommendation)
