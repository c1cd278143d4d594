"""Text formats for signatures, matrices and grids.

Signature file lines::

    sig f [3, 0, 1, 0, 3]

Grid file lines (signatures declared with ``sig``)::

    vertex a f        # optional trailing 0/1 puts the vertex on a side
    edge a:0 b:1
    dangle a:3

Blank lines and ``#`` comments are ignored everywhere.
"""
from __future__ import annotations

from .cyclo import CycloParseError, format_cyclo, parse_cyclo
from .grid import SigGrid
from .sigalg import SymSig
from .xform import Mat2, named

__all__ = [
    "FormatError",
    "split_top",
    "parse_sig_literal",
    "format_sig",
    "parse_sig_file",
    "format_sig_file",
    "parse_matrix",
    "format_matrix",
    "parse_grid_file",
    "format_grid",
]


class FormatError(ValueError):
    pass


def split_top(text: str) -> list[str]:
    """Split on commas that are not nested inside brackets or parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise FormatError(f"unbalanced brackets in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise FormatError(f"unbalanced brackets in {text!r}")
    parts.append("".join(cur).strip())
    return parts


def _strip_brackets(text: str) -> str:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise FormatError(f"expected a bracketed list, got {text!r}")
    return text[1:-1]


def parse_sig_literal(text: str) -> SymSig:
    body = _strip_brackets(text)
    items = split_top(body)
    if not items or any(not x for x in items):
        raise FormatError(f"empty entry in signature {text!r}")
    try:
        return SymSig(parse_cyclo(x) for x in items)
    except CycloParseError as exc:
        raise FormatError(str(exc)) from exc


def format_sig(f: SymSig) -> str:
    return "[" + ", ".join(format_cyclo(x) for x in f.entries) + "]"


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_sig_line(lineno: int, line: str):
    parts = line.split(None, 2)
    if len(parts) != 3:
        raise FormatError(f"line {lineno}: expected 'sig <name> [...]'")
    try:
        return parts[1], parse_sig_literal(parts[2])
    except FormatError as exc:
        raise FormatError(f"line {lineno}: {exc}") from exc


def parse_sig_file(text: str) -> dict:
    out: dict = {}
    for lineno, line in _lines(text):
        if not line.startswith("sig "):
            raise FormatError(f"line {lineno}: expected a 'sig' line")
        name, s = _parse_sig_line(lineno, line)
        if name in out:
            raise FormatError(f"line {lineno}: signature {name!r} declared twice")
        out[name] = s
    return out


def format_sig_file(sigs: dict) -> str:
    return "".join(f"sig {name} {format_sig(s)}\n" for name, s in sigs.items())


def parse_matrix(text: str) -> Mat2:
    """``[[a, b], [c, d]]`` or one of the names Z, Zinv, H2, D, X, I."""
    text = text.strip()
    if not text.startswith("["):
        try:
            return named(text)
        except KeyError as exc:
            raise FormatError(f"unknown matrix {text!r}") from exc
    rows = split_top(_strip_brackets(text))
    if len(rows) != 2:
        raise FormatError("a 2x2 matrix needs two rows")
    entries = []
    for row in rows:
        cells = split_top(_strip_brackets(row))
        if len(cells) != 2:
            raise FormatError("each matrix row needs two entries")
        try:
            entries += [parse_cyclo(c) for c in cells]
        except CycloParseError as exc:
            raise FormatError(str(exc)) from exc
    return Mat2(*entries)


def format_matrix(T: Mat2) -> str:
    e = [format_cyclo(x) for x in T.entries()]
    return f"[[{e[0]}, {e[1]}], [{e[2]}, {e[3]}]]"


def _port(lineno: int, text: str):
    vid, sep, port = text.rpartition(":")
    if not sep or not vid:
        raise FormatError(f"line {lineno}: expected <vertex>:<port>, got {text!r}")
    try:
        return vid, int(port)
    except ValueError as exc:
        raise FormatError(f"line {lineno}: bad port in {text!r}") from exc


def parse_grid_file(text: str) -> SigGrid:
    sigs: dict = {}
    vertices, edges, dangling, sides = [], [], [], {}
    for lineno, line in _lines(text):
        head = line.split(None, 1)[0]
        if head == "sig":
            name, s = _parse_sig_line(lineno, line)
            sigs[name] = s
            continue
        parts = line.split()
        if head == "vertex" and len(parts) in (3, 4):
            vertices.append((parts[1], parts[2]))
            if len(parts) == 4:
                if parts[3] not in ("0", "1"):
                    raise FormatError(f"line {lineno}: side must be 0 or 1")
                sides[parts[1]] = int(parts[3])
        elif head == "edge" and len(parts) == 3:
            edges.append((_port(lineno, parts[1]), _port(lineno, parts[2])))
        elif head == "dangle" and len(parts) == 2:
            dangling.append(_port(lineno, parts[1]))
        else:
            raise FormatError(f"line {lineno}: cannot parse {line!r}")
    if not vertices:
        raise FormatError("grid file declares no vertices")
    if sides and len(sides) != len(vertices):
        raise FormatError("either every vertex has a side or none does")
    try:
        return SigGrid(sigs, vertices, edges, dangling, sides or None)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _token(x) -> str:
    if isinstance(x, tuple):
        return "_".join(_token(y) for y in x)
    return str(x)


def _vertex_names(grid: SigGrid) -> dict:
    """Printable ids; non-string ids are flattened, falling back to v0, v1, ... on clashes."""
    names = {vid: _token(vid) for vid, _ in grid.vertices}
    ok = all(n and not any(c.isspace() or c in ":#" for c in n) for n in names.values())
    if not ok or len(set(names.values())) != len(names):
        names = {vid: f"v{k}" for k, (vid, _) in enumerate(grid.vertices)}
    return names


def format_grid(grid: SigGrid) -> str:
    """Only symmetric signatures can be written; string vertex ids survive a round trip."""
    for name, s in grid.sigs.items():
        if not isinstance(s, SymSig):
            raise FormatError(f"signature {name!r} is not symmetric")
        if not name or any(c.isspace() or c == "#" for c in name):
            raise FormatError(f"signature name {name!r} cannot be written")
    vn = _vertex_names(grid)
    lines = [f"sig {name} {format_sig(s)}" for name, s in grid.sigs.items()]
    for vid, name in grid.vertices:
        side = "" if grid.sides is None else f" {grid.sides[vid]}"
        lines.append(f"vertex {vn[vid]} {name}{side}")
    lines += [f"edge {vn[u]}:{pu} {vn[v]}:{pv}" for (u, pu), (v, pv) in grid.edges]
    lines += [f"dangle {vn[v]}:{p}" for v, p in grid.dangling]
    return "\n".join(lines) + "\n"
