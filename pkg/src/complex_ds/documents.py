"""JSON document formats, CSV/text emitters and fixture access."""

from __future__ import annotations

import json
import os
import tempfile
from importlib import resources
from pathlib import Path

from .complex_scalar import Complex
from .evidence import CBBA, EPS_SUM, Frame, validate_cbba
from .fitting import ObservedDataset, Report
from .reference import COLUMNS, PUBLISHED


class DocumentError(ValueError):
    """Malformed document (bad JSON, missing fields, unknown labels)."""


class ValidationFailed(ValueError):
    """Document parsed but its CBBA violates the mass constraints."""

    def __init__(self, source, violations):
        self.violations = violations
        super().__init__(f"{source}: " + "; ".join(violations))


DATASET_FIELDS = ("p_g", "p_a_given_g", "p_b", "p_a_given_b", "p_t", "p_a")


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("complex_ds") / "data" / name))


def _read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: top level must be an object")
    return doc


def _number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"{what} must be a number, got {value!r}")
    return float(value)


def parse_cbba(doc: dict, source: str = "<document>") -> tuple[CBBA, float]:
    """Parse a CBBA document into ``(cbba, tolerance)``; validates it."""
    try:
        frame_labels = doc["frame"]
        entries = doc["masses"]
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"{source}: missing field {exc}") from None
    if not isinstance(frame_labels, list) or not isinstance(entries, list):
        raise DocumentError(f"{source}: 'frame' and 'masses' must be lists")
    tolerance = _number(doc.get("tolerance", EPS_SUM), "tolerance")
    try:
        frame = Frame(tuple(frame_labels))
        masses = {}
        for entry in entries:
            focal = entry["focal"]
            if not isinstance(focal, list) or not focal:
                raise DocumentError(f"{source}: focal sets must be non-empty label lists")
            mask = frame.subset(focal)
            if mask in masses:
                raise DocumentError(f"{source}: focal set {focal} listed twice")
            masses[mask] = Complex(_number(entry["re"], "re"), _number(entry.get("im", 0.0), "im"))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"{source}: malformed mass entry ({exc})") from None
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"{source}: {exc}") from None
    cbba = CBBA(frame, masses)
    violations = validate_cbba(cbba, tolerance)
    if violations:
        raise ValidationFailed(source, violations)
    return cbba, tolerance


def load_cbba(path) -> tuple[CBBA, float]:
    return parse_cbba(_read_json(path), str(path))


def cbba_document(m: CBBA, tolerance: float = EPS_SUM) -> dict:
    return {
        "frame": list(m.frame.elements),
        "tolerance": tolerance,
        "masses": [
            {"focal": list(m.frame.labels(mask)), "re": value.re, "im": value.im}
            for mask, value in m.masses.items()
        ],
    }


def dumps_cbba(m: CBBA, tolerance: float = EPS_SUM) -> str:
    doc = cbba_document(m, tolerance)
    masses = ",\n".join("    " + json.dumps(e) for e in doc["masses"])
    return (f'{{\n  "frame": {json.dumps(doc["frame"])},\n'
            f'  "tolerance": {json.dumps(tolerance)},\n'
            f'  "masses": [\n{masses}\n  ]\n}}\n')


def parse_dataset(doc: dict, source: str = "<document>") -> ObservedDataset:
    try:
        values = {k: _number(doc[k], k) for k in DATASET_FIELDS}
        name = str(doc.get("name", Path(source).stem))
        return ObservedDataset(name=name, **values)
    except KeyError as exc:
        raise DocumentError(f"{source}: missing field {exc}") from None
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"{source}: {exc}") from None


def load_dataset(path) -> ObservedDataset:
    return parse_dataset(_read_json(path), str(path))


def dataset_document(obs: ObservedDataset) -> dict:
    return {"name": obs.name, **{k: getattr(obs, k) for k in DATASET_FIELDS}}


def atomic_write(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fmt(value: float, digits: int = 6) -> str:
    text = f"{value:.{digits}f}"
    # avoid "-0.000000"
    return text[1:] if text.startswith("-") and float(text) == 0.0 else text


def fmt_complex(z: Complex, digits: int = 6) -> str:
    im = fmt(z.im, digits)
    sign = "-" if im.startswith("-") else "+"
    return f"{fmt(z.re, digits)} {sign} {im.lstrip('-')}i"


def surface_csv(rows) -> str:
    lines = ["x,y,k_abs"] + [f"{fmt(x)},{fmt(y)},{fmt(k)}" for x, y, k in rows]
    return "\n".join(lines) + "\n"


REPORT_HEADER = ("dataset", "method", "P(G)", "P(A|G)", "P(B)", "P(A|B)", "P_T", "P(A)", "P(A)-P_T")


def _report_table(report: Report, with_reference: bool) -> list[tuple[str, ...]]:
    table = []
    for row in report.rows:
        values = [getattr(row, c) for c in COLUMNS]
        table.append((row.dataset, row.method, *[fmt(v, 4) for v in values], fmt(row.interference, 4)))
        if with_reference and row.method == "Fitted" and row.dataset in PUBLISHED:
            for method, ref in PUBLISHED[row.dataset].items():
                if method == "Obs":
                    continue
                table.append((row.dataset, f"published:{method}", *[fmt(v, 2) for v in ref],
                              fmt(ref[5] - ref[4], 2)))
    return table


def report_csv(report: Report, with_reference: bool = False) -> str:
    lines = [",".join(REPORT_HEADER)]
    lines += [",".join(r) for r in _report_table(report, with_reference)]
    return "\n".join(lines) + "\n"


def report_text(report: Report, with_reference: bool = True) -> str:
    table = [REPORT_HEADER] + _report_table(report, with_reference)
    widths = [max(len(r[i]) for r in table) for i in range(len(REPORT_HEADER))]
    out = []
    for i, r in enumerate(table):
        out.append("  ".join(c.ljust(w) if j < 2 else c.rjust(w) for j, (c, w) in enumerate(zip(r, widths))))
        if i == 0:
            out.append("-" * len(out[0]))
    return "\n".join(out) + "\n"
