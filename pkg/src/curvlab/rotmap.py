"""Text serialisation of rotation systems and Graphviz export.

File layout::

    rotmap 1
    # comments and blank lines are ignored
    0: 1 2 3
    1: 0 3 2
    ...

Each vertex line lists its neighbours counterclockwise. Ids are decimal
integers; an optional ``v`` prefix on the id before the colon is accepted.
"""

from __future__ import annotations

import re
from pathlib import Path

from curvlab.core_map import PlanarMap, build_map
from curvlab.errors import ParseError, WriteError

HEADER = "rotmap 1"
_ID = re.compile(r"v?(\d+)")


def parse_rotmap(text: str) -> PlanarMap:
    rows: dict[int, list[int]] = {}
    where: dict[int, int] = {}
    positions: dict[tuple[int, int], tuple[int, int]] = {}
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if not header_seen:
            if body.strip() != HEADER:
                col = len(body) - len(body.lstrip()) + 1
                raise ParseError(f"expected header {HEADER!r}", lineno, col)
            header_seen = True
            continue
        if ":" not in body:
            raise ParseError("expected 'id: neighbours'", lineno, len(body.rstrip()) + 1)
        head, tail = body.split(":", 1)
        match = _ID.fullmatch(head.strip())
        if match is None:
            raise ParseError(f"bad vertex id {head.strip()!r}", lineno, len(head) - len(head.lstrip()) + 1)
        v = int(match.group(1))
        if v in rows:
            raise ParseError(f"vertex {v} defined twice (first on line {where[v]})", lineno, 1)
        nbrs: list[int] = []
        offset = len(head) + 1
        for tok in re.finditer(r"\S+", tail):
            col = offset + tok.start() + 1
            if not tok.group().isdigit():
                raise ParseError(f"vertex {v}: bad neighbour {tok.group()!r}", lineno, col)
            w = int(tok.group())
            positions[(v, len(nbrs))] = (lineno, col)
            nbrs.append(w)
        rows[v] = nbrs
        where[v] = lineno
    if not header_seen:
        raise ParseError(f"missing header {HEADER!r}", 1, 1)
    if not rows:
        raise ParseError("no vertices", None, None)
    for v, nbrs in rows.items():
        for i, w in enumerate(nbrs):
            if w not in rows:
                line, col = positions[(v, i)]
                raise ParseError(f"vertex {v} lists undeclared neighbour {w}", line, col)
    return build_map({v: rows[v] for v in sorted(rows)})


def import_rotmap(path: str | Path) -> PlanarMap:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_rotmap(text)


def format_rotmap(m: PlanarMap, comment: str | None = None) -> str:
    labels = m.labels
    lines = [HEADER]
    if comment:
        lines += [f"# {line}" for line in comment.splitlines()]
    order = sorted(m.vertices(), key=lambda v: labels[v])
    for v in order:
        nbrs = " ".join(str(labels[w]) for w in m.rotation(v))
        lines.append(f"{labels[v]}: {nbrs}")
    return "\n".join(lines) + "\n"


def _write(path: str | Path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise WriteError(f"cannot write {path}: {exc.strerror or exc}") from exc


def export_rotmap(m: PlanarMap, path: str | Path, comment: str | None = None) -> None:
    _write(path, format_rotmap(m, comment))


def format_dot(m: PlanarMap, name: str = "G") -> str:
    labels = m.labels
    lines = [f"graph {name} {{", "  node [shape=point];"]
    for v in m.vertices():
        lines.append(f'  {labels[v]} [tooltip="{",".join(map(str, m.vtype(v)))}"];')
    for u, w in m.edges:
        lines.append(f"  {labels[u]} -- {labels[w]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(m: PlanarMap, path: str | Path, name: str = "G") -> None:
    _write(path, format_dot(m, name))
