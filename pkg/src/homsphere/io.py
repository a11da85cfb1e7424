"""Plain-text file formats.

``.sc``   one facet per line, vertex ids separated by spaces.
``.csc``  a ``.sc`` line followed by ``| colour``.
``.g``    first line the vertex count ``n``, then one ``u v`` edge per line.
cycles    one closed walk per line (vertex ids, the repeat of the first
          vertex optional).
``.mf``   ``dim d``, facet legend lines ``facet <id> : <vertices>``, then
          ``<s> <t> <j>`` lines of the missing vertex function.
plans     the text produced by :meth:`HandlePlan.dump`.

Everywhere ``#`` starts a comment and blank lines are ignored.  Emitters
write canonical, sorted text, so ``emit(parse(text))`` is a normal form.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .colorcodec import ColoredComplex
from .complex import Complex
from .dualcodec import MissingFunction
from .errors import InvalidComplex, InvalidGraph, ParseError
from .graphkit.cycles import Cycle
from .graphkit.graph import Graph
from .handleplan import HandlePlan
from .linalg import require_prime

FORMAT_VERSION = "1"


@dataclass(frozen=True)
class RunConfig:
    p: int = 2
    seed: int = 0
    version: str = FORMAT_VERSION
    verbosity: int = 0

    def __post_init__(self):
        require_prime(self.p)
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ints(line: str, no: int, path=None) -> list[int]:
    try:
        vals = [int(t) for t in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", no, path) from None
    if any(v < 0 for v in vals):
        raise ParseError("negative id", no, path)
    return vals


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=os.fspath(path)) from None


def write_text(path, text: str) -> None:
    Path(path).write_text(text)


# -- .sc ---------------------------------------------------------------------


def _build_complex(rows: list[tuple[int, list[int]]], path=None) -> Complex:
    seen: dict[tuple, int] = {}
    for no, f in rows:
        key = tuple(sorted(f))
        if len(set(key)) != len(key):
            raise ParseError(f"repeated vertex in facet {key}", no, path)
        if key in seen:
            raise ParseError(f"duplicate facet {key} (first on line {seen[key]})", no, path)
        seen[key] = no
    try:
        return Complex(f for _, f in rows)
    except InvalidComplex as exc:
        # locate the offending line for antichain failures
        keys = [(no, set(f)) for no, f in rows]
        for no, a in keys:
            if any(a < b for _, b in keys):
                raise ParseError(f"facet {sorted(a)} is contained in another facet", no, path) from None
        raise ParseError(str(exc), None, path) from None


def parse_sc(text: str, path=None) -> Complex:
    rows = [(no, _ints(line, no, path)) for no, line in _lines(text)]
    return _build_complex(rows, path)


def emit_sc(c: Complex) -> str:
    return "".join(" ".join(map(str, f)) + "\n" for f in sorted(c.facets))


# -- .csc --------------------------------------------------------------------


def parse_csc(text: str, path=None) -> ColoredComplex:
    rows, colors = [], {}
    for no, line in _lines(text):
        if "|" not in line:
            raise ParseError("missing '| colour'", no, path)
        left, right = line.split("|", 1)
        f = _ints(left, no, path)
        col = _ints(right, no, path)
        if len(col) != 1 or col[0] < 1:
            raise ParseError("colour must be one positive integer", no, path)
        rows.append((no, f))
        colors[tuple(sorted(f))] = col[0]
    c = _build_complex(rows, path)
    return ColoredComplex(c, colors)


def emit_csc(x: ColoredComplex) -> str:
    return "".join(
        " ".join(map(str, f)) + f" | {x.colors[f]}\n" for f in sorted(x.complex.facets)
    )


# -- .g ----------------------------------------------------------------------


def parse_g(text: str, path=None) -> Graph:
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty graph file", None, path) from None
    vals = _ints(head, no, path)
    if len(vals) != 1:
        raise ParseError("first line must be the vertex count", no, path)
    n = vals[0]
    edges, seen = [], {}
    for no, line in it:
        e = _ints(line, no, path)
        if len(e) != 2:
            raise ParseError("edge lines need exactly two ids", no, path)
        u, v = e
        if u == v:
            raise ParseError(f"loop at {u}", no, path)
        if u >= n or v >= n:
            raise ParseError(f"vertex id out of range 0..{n - 1}", no, path)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key} (first on line {seen[key]})", no, path)
        seen[key] = no
        edges.append(key)
    return Graph(n, edges)


def emit_g(g: Graph) -> str:
    return f"{g.n}\n" + "".join(f"{u} {v}\n" for u, v in g.edge_list)


# -- cycles ------------------------------------------------------------------


def parse_cycles(text: str, path=None) -> list[Cycle]:
    out = []
    for no, line in _lines(text):
        vs = _ints(line, no, path)
        if not vs:
            raise ParseError("empty cycle", no, path)
        out.append(Cycle(vs))
    return out


def emit_cycles(cycles: Iterable[Cycle]) -> str:
    return "".join(" ".join(map(str, c.vertices)) + "\n" for c in cycles)


def check_cycles_in(g: Graph, cycles: list[Cycle], path=None) -> None:
    for i, c in enumerate(cycles):
        try:
            c.check_in(g)
        except InvalidGraph as exc:
            raise ParseError(f"cycle {i}: {exc}", i + 1, path) from None


# -- .mf ---------------------------------------------------------------------


@dataclass
class MFFile:
    d: int
    legend: dict[int, tuple[int, ...]]
    mf: MissingFunction

    def dual_graph(self) -> Graph:
        n = max((max(k) for k in self.mf.entries), default=-1) + 1
        n = max(n, len(self.legend))
        return Graph(n, {(min(s, t), max(s, t)) for s, t in self.mf.entries})


def parse_mf(text: str, path=None) -> MFFile:
    d, legend, entries = None, {}, {}
    for no, line in _lines(text):
        if line.startswith("dim"):
            vals = _ints(line[3:], no, path)
            if len(vals) != 1:
                raise ParseError("dim line needs one integer", no, path)
            d = vals[0]
        elif line.startswith("facet"):
            m = re.fullmatch(r"facet\s+(\d+)\s*:\s*(.*)", line)
            if not m:
                raise ParseError("facet legend must read 'facet <id> : <vertices>'", no, path)
            legend[int(m.group(1))] = tuple(_ints(m.group(2), no, path))
        else:
            vals = _ints(line, no, path)
            if len(vals) != 3:
                raise ParseError("entries need 's t j'", no, path)
            s, t, j = vals
            if (s, t) in entries:
                raise ParseError(f"duplicate entry for ({s}, {t})", no, path)
            entries[(s, t)] = j
    if d is None:
        raise ParseError("missing 'dim' line", None, path)
    return MFFile(d, legend, MissingFunction(entries))


def emit_mf(d: int, mf: MissingFunction, legend: dict[int, tuple] | None = None) -> str:
    out = [f"dim {d}\n"]
    for i in sorted(legend or {}):
        out.append(f"facet {i} : {' '.join(map(str, legend[i]))}\n")
    for (s, t), j in sorted(mf.entries.items()):
        out.append(f"{s} {t} {j}\n")
    return "".join(out)


# -- plan dumps --------------------------------------------------------------


def emit_plan(plan: HandlePlan) -> str:
    return plan.dump()


def parse_plan(text: str, path=None) -> HandlePlan:
    k = None
    edge_orient, slot, orient_flag, tri_order, path_choice = {}, {}, {}, {}, {}
    verts, tris = set(), set()
    for no, line in _lines(text):
        head, _, rest = line.partition(" ")
        try:
            if head == "k":
                k = int(rest)
            elif head == "vertex":
                verts.add(int(rest))
            elif head == "edge":
                a, b = map(int, rest.split())
                edge_orient[(min(a, b), max(a, b))] = (a, b)
                verts.update((a, b))
            elif head == "slot":
                m = re.fullmatch(r"(\d+) (\d+) (\d+) -> (\d+) flip=([01])", rest)
                v, a, b, i, fl = (int(x) for x in m.groups())
                slot[(v, (a, b))] = i
                orient_flag[(v, (a, b))] = bool(fl)
                verts.add(v)
            elif head == "track":
                m = re.fullmatch(r"(\d+) (\d+) \| ([\d ]+) -> (\d+)", rest)
                e = (int(m.group(1)), int(m.group(2)))
                s = tuple(map(int, m.group(3).split()))
                tri_order[(e, s)] = int(m.group(4))
                tris.add(s)
            elif head == "path":
                m = re.fullmatch(r"([\d ]+) @ (\d+) -> \((\d+),(\d+)\) \((\d+),(\d+)\)", rest)
                s = tuple(map(int, m.group(1).split()))
                v = int(m.group(2))
                i1, j1, i2, j2 = (int(m.group(x)) for x in range(3, 7))
                path_choice[(s, v)] = frozenset({(i1, j1), (i2, j2)})
                tris.add(s)
            else:
                raise ParseError(f"unknown record {head!r}", no, path)
        except (AttributeError, ValueError):
            raise ParseError(f"malformed {head} record", no, path) from None
    if k is None:
        raise ParseError("missing 'k' line", None, path)
    return HandlePlan(k, edge_orient, slot, tri_order, path_choice, orient_flag,
                      sorted(verts), sorted(edge_orient), sorted(tris))


# -- convenience readers -----------------------------------------------------


def read_sc(path) -> Complex:
    return parse_sc(read_text(path), os.fspath(path))


def read_csc(path) -> ColoredComplex:
    return parse_csc(read_text(path), os.fspath(path))


def read_g(path) -> Graph:
    return parse_g(read_text(path), os.fspath(path))


def read_cycles(path) -> list[Cycle]:
    return parse_cycles(read_text(path), os.fspath(path))


def read_mf(path) -> MFFile:
    return parse_mf(read_text(path), os.fspath(path))
