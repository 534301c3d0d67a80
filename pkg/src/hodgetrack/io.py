"""File parsing and deterministic text output.

Numbers are always written with the %.10g format so that repeated runs
produce byte-identical files; parsing an emitted file and emitting it
again reproduces the bytes.  Harmonic generators are printed in the
compact signed form

    0.5 [0, 1]-0.5 [0, 2]+ 0.5 [1, 3]-0.5 [2, 3] and
    ...

one row per generator, coefficients rounded to a fixed number of
decimals, zero terms suppressed.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .complexes import PointCloud
from .digraphs import Digraph
from .hypergraphs import Hypergraph
from .hyperdigraphs import Hyperdigraph

__all__ = [
    "ParseError",
    "InputError",
    "CurveRecord",
    "parse_point_cloud",
    "parse_combinatorial",
    "emit_curves",
    "read_curves",
    "normalize_generators",
    "format_generators",
    "fmt",
]

CURVE_FIELDS = ("threshold", "betti0", "betti1", "gap0", "gap1")


class ParseError(ValueError):
    """A file could not be interpreted; carries path and line context."""

    category = "parse"

    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = "%s: " % path
        if line is not None:
            where += "line %d: " % line
        super().__init__(where + message)
        self.path = path
        self.line = line


class InputError(ValueError):
    """Parsed fine but the values cannot be used for the request."""

    category = "input"


def fmt(x):
    """Deterministic float formatting used in all emitted text."""
    return "%.10g" % float(x)


@dataclass
class CurveRecord:
    """One row of a threshold sweep: Betti numbers and spectral gaps."""

    threshold: float
    betti0: int
    betti1: int
    gap0: float = None
    gap1: float = None


def _data_lines(path):
    """(line_number, stripped_text) for nonblank, non-comment lines."""
    out = []
    text = Path(path).read_text()
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def _split_fields(line):
    return line.replace(",", " ").split()


def parse_point_cloud(path, format=None):
    """Read a point cloud from a delimited text file or an XYZ file.

    format is "csv", "xyz", or None to infer from the extension.  CSV
    rows are coordinates separated by commas or whitespace, one point
    per line, all with the same dimension; blank lines and #-comments
    are skipped.  XYZ is the chemistry format: atom count, comment
    line, then "element x y z" rows; element symbols become labels.
    """
    path = Path(path)
    if format is None:
        format = "xyz" if path.suffix.lower() == ".xyz" else "csv"
    if format not in ("csv", "xyz"):
        raise InputError("unknown point cloud format %r" % (format,))
    if not path.exists():
        raise ParseError("file does not exist", path=path)

    if format == "xyz":
        return _parse_xyz(path)

    rows = []
    width = None
    for i, line in _data_lines(path):
        fields = _split_fields(line)
        try:
            row = [float(x) for x in fields]
        except ValueError:
            raise ParseError("expected numbers, got %r" % line, path=path, line=i)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(
                "row has %d coordinates, expected %d" % (len(row), width),
                path=path,
                line=i,
            )
        rows.append(row)
    if not rows:
        raise ParseError("no points in file", path=path)
    return PointCloud(np.array(rows))


def _parse_xyz(path):
    lines = path.read_text().splitlines()
    if not lines:
        raise ParseError("empty file", path=path)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError("first line must be the atom count", path=path, line=1)
    body = lines[2 : 2 + n]
    if len(body) < n:
        raise ParseError(
            "expected %d atom lines, found %d" % (n, len(body)), path=path
        )
    labels = []
    coords = []
    for k, raw in enumerate(body):
        fields = raw.split()
        if len(fields) < 4:
            raise ParseError("expected 'element x y z'", path=path, line=k + 3)
        try:
            coords.append([float(x) for x in fields[1:4]])
        except ValueError:
            raise ParseError("bad coordinates %r" % raw, path=path, line=k + 3)
        labels.append(fields[0])
    if not coords:
        raise ParseError("no atoms in file", path=path)
    return PointCloud(np.array(coords), labels=labels)


def parse_combinatorial(path, kind):
    """Read a hypergraph, digraph, or directed hypergraph from text.

    One edge per line, vertex ids separated by commas or whitespace.
    Digraph lines must have exactly two distinct vertices and may not
    repeat an earlier edge; hypergraph lines are vertex sets;
    hyperdigraph lines are sequences of distinct vertices.
    """
    if kind not in ("hypergraph", "digraph", "hyperdigraph"):
        raise InputError("unknown combinatorial kind %r" % (kind,))
    path = Path(path)
    if not path.exists():
        raise ParseError("file does not exist", path=path)
    edges = []
    lines = _data_lines(path)
    for i, line in lines:
        fields = _split_fields(line)
        try:
            edge = tuple(int(x) for x in fields)
        except ValueError:
            raise ParseError("expected integers, got %r" % line, path=path, line=i)
        if not edge:
            continue
        if kind == "digraph":
            if len(edge) != 2:
                raise ParseError("a digraph edge needs exactly 2 vertices", path=path, line=i)
            if edge[0] == edge[1]:
                raise ParseError("loop edge %r" % (line,), path=path, line=i)
            if edge in edges:
                raise ParseError("duplicate edge %r" % (line,), path=path, line=i)
        elif len(set(edge)) != len(edge):
            raise ParseError("repeated vertex in %r" % (line,), path=path, line=i)
        edges.append(edge)
    if not edges:
        raise ParseError("no edges in file", path=path)
    if kind == "digraph":
        return Digraph(edges)
    if kind == "hypergraph":
        return Hypergraph(edges)
    return Hyperdigraph(edges)


def _record_text(r, format):
    b0, b1 = int(r.betti0), int(r.betti1)
    if format == "csv":
        g0 = fmt(r.gap0) if r.gap0 is not None else ""
        g1 = fmt(r.gap1) if r.gap1 is not None else ""
        return "%s,%d,%d,%s,%s" % (fmt(r.threshold), b0, b1, g0, g1)
    g0 = fmt(r.gap0) if r.gap0 is not None else "null"
    g1 = fmt(r.gap1) if r.gap1 is not None else "null"
    return '{"threshold": %s, "betti0": %d, "betti1": %d, "gap0": %s, "gap1": %s}' % (
        fmt(r.threshold),
        b0,
        b1,
        g0,
        g1,
    )


def emit_curves(records, path=None, format="csv"):
    """Write curve records as CSV or a JSON array; returns the text.

    CSV has the fixed header threshold,betti0,betti1,gap0,gap1 with
    empty fields where no spectral gap exists (JSON uses null).  The
    record list must be nonempty.
    """
    records = list(records)
    if not records:
        raise InputError("no curve records to emit")
    if format not in ("csv", "json-like"):
        raise InputError("unknown output format %r" % (format,))
    if format == "csv":
        lines = [",".join(CURVE_FIELDS)]
        lines += [_record_text(r, "csv") for r in records]
        text = "\n".join(lines) + "\n"
    else:
        body = ",\n".join("  " + _record_text(r, "json-like") for r in records)
        text = "[\n" + body + "\n]\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def read_curves(path):
    """Parse a CSV file written by emit_curves back into records."""
    path = Path(path)
    if not path.exists():
        raise ParseError("file does not exist", path=path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", path=path)
        if tuple(header) != CURVE_FIELDS:
            raise ParseError("unexpected header %r" % (header,), path=path, line=1)
        out = []
        for i, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise ParseError("expected 5 fields", path=path, line=i)
            try:
                out.append(
                    CurveRecord(
                        threshold=float(row[0]),
                        betti0=int(row[1]),
                        betti1=int(row[2]),
                        gap0=float(row[3]) if row[3] else None,
                        gap1=float(row[4]) if row[4] else None,
                    )
                )
            except ValueError:
                raise ParseError("bad numeric field in %r" % (row,), path=path, line=i)
    return out


def normalize_generators(w):
    """Scale rows to unit norm with a positive leading coefficient.

    The leading coefficient is the first entry that is significant for
    a unit vector; zero rows are left alone.
    """
    w = np.array(w, dtype=float, copy=True)
    if w.ndim == 1:
        w = w.reshape(1, -1)
    for row in w:
        n = np.linalg.norm(row)
        if n == 0.0:
            continue
        row /= n
        sig = np.nonzero(np.abs(row) > 1e-9)[0]
        if sig.size and row[sig[0]] < 0:
            row *= -1.0
    return w


def format_generators(basis, w, decimals=7):
    """Human-readable rendering of generator rows over a labelled basis.

    Each row is printed as a signed combination of basis cells with
    coefficients rounded to `decimals`; terms that round to zero are
    dropped, rows are normalized first, and multiple rows are joined
    with " and".  Returns "none" when there is nothing to print.
    """
    w = normalize_generators(w)
    basis = [list(s) for s in basis]
    if w.shape[1] not in (0, len(basis)):
        raise InputError(
            "generator width %d does not match basis size %d" % (w.shape[1], len(basis))
        )
    rows = []
    for row in w:
        terms = []
        for c, cell in zip(row, basis):
            c = round(float(c), decimals)
            if c == 0.0:
                continue
            if terms and c > 0:
                terms.append("+ %s %s" % (c, cell))
            else:
                terms.append("%s %s" % (c, cell))
        if terms:
            rows.append("".join(terms))
    if not rows:
        return "none"
    return " and\n".join(rows)
