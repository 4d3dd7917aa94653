"""Line-oriented text format for open parity games.

::

    opg <mR> <mL> <nR> <nL> <M>
    pos <name> <E|A> <prio>
    edge <src> <dst>

Open ends are written ``in<i>`` and ``out<j>``, counting from 1.  Blank
lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import re

from .opg import In, OpenParityGame, Out, _edge_key, make_game, validation_errors

_END = re.compile(r"(in|out)(\d+)")


class GameFileError(ValueError):
    pass


def dumps(g: OpenParityGame) -> str:
    lines = [f"opg {g.m_r} {g.m_l} {g.n_r} {g.n_l} {g.max_rank}"]
    names = {p.name: _name(p.name) for p in g.positions}
    lines += [f"pos {names[p.name]} {p.role.value} {p.prio}" for p in g.positions]
    for s, t in sorted(g.edges, key=_edge_key):
        lines.append(f"edge {names.get(s, s)} {names.get(t, t)}")
    return "\n".join(lines) + "\n"


def _name(x) -> str:
    return f"q{x}" if isinstance(x, int) else str(x)


def loads(text: str) -> OpenParityGame:
    header = None
    positions, edges, seen = [], [], set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "opg":
                if header is not None:
                    raise GameFileError("duplicate header")
                if len(parts) != 6:
                    raise GameFileError("header needs five numbers: mR mL nR nL M")
                header = tuple(int(x) for x in parts[1:])
                if min(header) < 0:
                    raise GameFileError("header numbers must be non-negative")
            elif header is None:
                raise GameFileError("missing 'opg' header")
            elif parts[0] == "pos":
                if len(parts) != 4 or parts[2] not in ("E", "A"):
                    raise GameFileError("expected 'pos <name> <E|A> <prio>'")
                name = parts[1]
                if _END.fullmatch(name):
                    raise GameFileError(f"position name {name} is reserved for open ends")
                if name in seen:
                    raise GameFileError(f"duplicate position {name}")
                seen.add(name)
                positions.append((name, parts[2], int(parts[3])))
            elif parts[0] == "edge":
                if len(parts) != 3:
                    raise GameFileError("expected 'edge <src> <dst>'")
                edges.append((_node(parts[1]), _node(parts[2])))
            else:
                raise GameFileError(f"unknown directive {parts[0]!r}")
        except (GameFileError, ValueError) as exc:
            raise GameFileError(f"line {lineno}: {exc}") from None
    if header is None:
        raise GameFileError("missing 'opg' header")
    m_r, m_l, n_r, n_l, max_rank = header
    g = make_game((m_r, m_l, n_r, n_l), max_rank, positions, edges)
    errors = validation_errors(g)
    if errors:
        raise GameFileError("invalid game: " + "; ".join(errors))
    return g


def _node(token: str):
    m = _END.fullmatch(token)
    if m:
        index = int(m.group(2))
        if index < 1:
            raise GameFileError(f"open ends count from 1: {token}")
        return In(index - 1) if m.group(1) == "in" else Out(index - 1)
    return token
