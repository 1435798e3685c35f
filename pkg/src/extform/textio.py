"""Line-oriented text format for polyhedra, LPs, affine maps and coupling specs.

::

    hpoly P
    vars x:2 y:1
    1 -1 0 >= 6
    1/3 0 2 <= 7/2
    end

``vpoly`` files hold ``vertex c1 c2 ...`` lines, ``lp`` files put a ``min ...``
line before their rows.  ``map`` files have ``from`` and ``to`` declarations,
one matrix row per target coordinate, and an optional ``offset`` line.
``augspec`` files list ``b1``/``b2`` rows and ``c1``/``c2`` diagonals.
A ``columns x[1,2] x[1,3] ...`` line right after ``vars`` keeps non-default
variable indices.  ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import EQ, LE, AffineMapSpec, HPoly, VarSpace, VPoly
from .ef import AugmentationSpec
from .lp import LinProgram
from .rational import format_rational, parse_rational

KINDS = ("hpoly", "vpoly", "lp", "map", "augspec")
Model = Union[HPoly, VPoly, LinProgram, AffineMapSpec, AugmentationSpec]


class TextFormatError(ValueError):
    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class ModelFile:
    name: str
    kind: str
    model: Model


@dataclass
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[list[_Tok]]:
    lines = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks, col = [], 0
        for part in body.split():
            col = body.index(part, col)
            toks.append(_Tok(part, ln, col + 1))
            col += len(part)
        if toks:
            lines.append(toks)
    return lines


def _num(t: _Tok):
    try:
        return parse_rational(t.text)
    except ValueError:
        raise TextFormatError(f"not a rational number: {t.text!r}", t.line, t.col) from None


def _decls(toks: list[_Tok]) -> VarSpace:
    if len(toks) < 2:
        raise TextFormatError("declaration needs at least one class:count", toks[0].line, toks[0].col)
    pairs, seen = [], set()
    for t in toks[1:]:
        label, sep, count = t.text.partition(":")
        if not sep or not label or not count.isdigit() or int(count) < 1:
            raise TextFormatError(f"expected class:count, got {t.text!r}", t.line, t.col)
        if label in seen:
            raise TextFormatError(f"duplicate class {label!r}", t.line, t.col)
        seen.add(label)
        pairs.append((label, int(count)))
    return VarSpace.of(*pairs)


_COLUMN = re.compile(r"^([^\[\]:]+)\[(\d+(?:,\d+)*)\]$")


def _vars(body, end_line) -> tuple[VarSpace, int]:
    """The ``vars`` declaration plus optional ``columns`` line; returns rows consumed."""
    space = _decls(_need(body, 0, "vars", end_line))
    if len(body) < 2 or body[1][0].text != "columns":
        return space, 1
    toks = body[1][1:]
    if len(toks) != len(space):
        raise TextFormatError(f"columns line needs {len(space)} names", body[1][0].line,
                              body[1][0].col)
    named = []
    for t, (label, _) in zip(toks, space.variables):
        m = _COLUMN.match(t.text)
        if not m or m.group(1) != label:
            raise TextFormatError(f"expected a {label}[i,...] column name, got {t.text!r}",
                                  t.line, t.col)
        named.append((label, tuple(int(i) for i in m.group(2).split(","))))
    try:
        return VarSpace(tuple(named)), 2
    except ValueError as exc:
        raise TextFormatError(str(exc), body[1][0].line, body[1][0].col) from None


def _expect(toks: list[_Tok], word: str):
    if toks[0].text != word:
        raise TextFormatError(f"expected {word!r}, got {toks[0].text!r}", toks[0].line, toks[0].col)


def _numbers(toks: list[_Tok], n: int, what: str, at: _Tok | None = None) -> tuple:
    if len(toks) != n:
        t = toks[0] if toks else at
        raise TextFormatError(f"{what} needs {n} entries, got {len(toks)}", t.line, t.col)
    return tuple(_num(t) for t in toks)


def parse_model(text: str) -> ModelFile:
    """Parse one model; raises :class:`TextFormatError` with a line and column."""
    lines = _tokenize(text)
    if not lines:
        raise TextFormatError("empty input", 1)
    head = lines[0]
    kind = head[0].text
    if kind not in KINDS:
        raise TextFormatError(f"unknown model kind {kind!r}", head[0].line, head[0].col)
    if len(head) != 2:
        raise TextFormatError(f"expected '{kind} <name>'", head[0].line, head[0].col)
    name = head[1].text
    last = lines[-1]
    if last[0].text != "end" or len(last) != 1:
        raise TextFormatError("missing 'end'", last[0].line, last[0].col)
    for toks in lines[1:-1]:
        if toks[0].text == "end":
            raise TextFormatError("text after 'end'", toks[0].line, toks[0].col)
    body = lines[1:-1]
    end_line = last[0].line
    parser = {"hpoly": _parse_hpoly, "vpoly": _parse_vpoly, "lp": _parse_lp,
              "map": _parse_map, "augspec": _parse_augspec}[kind]
    return ModelFile(name, kind, parser(body, end_line))


def _need(body, k, word, end_line):
    if k >= len(body):
        raise TextFormatError(f"expected '{word}' line", end_line)
    _expect(body[k], word)
    return body[k]


def _parse_rows(body, space):
    n = len(space)
    a, b, senses = [], [], []
    for toks in body:
        ops = [i for i, t in enumerate(toks) if t.text in ("<=", ">=", "=")]
        if len(ops) != 1 or ops[0] != len(toks) - 2:
            t = toks[0]
            raise TextFormatError("row must be '<coeffs> <op> <rhs>' with op in <=, >=, =",
                                  t.line, t.col)
        coeffs = _numbers(toks[:-2], n, "constraint row", toks[0])
        rhs = _num(toks[-1])
        op = toks[-2].text
        if op == ">=":
            coeffs, rhs, op = tuple(-c for c in coeffs), -rhs, "<="
        a.append(coeffs)
        b.append(rhs)
        senses.append(EQ if op == "=" else LE)
    return HPoly(space, tuple(a), tuple(b), tuple(senses))


def _parse_hpoly(body, end_line):
    space, k = _vars(body, end_line)
    return _parse_rows(body[k:], space)


def _parse_vpoly(body, end_line):
    space, k = _vars(body, end_line)
    verts = []
    for toks in body[k:]:
        _expect(toks, "vertex")
        verts.append(_numbers(toks[1:], len(space), "vertex", toks[0]))
    if not verts:
        raise TextFormatError("vpoly needs at least one vertex", end_line)
    return VPoly(space, tuple(verts))


def _parse_lp(body, end_line):
    space, k = _vars(body, end_line)
    obj = _need(body, k, "min", end_line)
    c = _numbers(obj[1:], len(space), "objective", obj[0])
    return LinProgram(c, _parse_rows(body[k + 1:], space))


def _parse_map(body, end_line):
    dom = _decls(_need(body, 0, "from", end_line))
    cod = _decls(_need(body, 1, "to", end_line))
    rest = body[2:]
    offset = (0,) * len(cod)
    if rest and rest[-1][0].text == "offset":
        offset = _numbers(rest[-1][1:], len(cod), "offset", rest[-1][0])
        rest = rest[:-1]
    if len(rest) != len(cod):
        raise TextFormatError(f"map needs {len(cod)} matrix rows, got {len(rest)}",
                              rest[0][0].line if rest else end_line)
    matrix = tuple(_numbers(toks, len(dom), "matrix row") for toks in rest)
    return AffineMapSpec(matrix, offset, dom, cod)


def _parse_augspec(body, end_line):
    parts = {"b1": [], "b2": [], "c1": None, "c2": None}
    for toks in body:
        key = toks[0].text
        if key not in parts:
            raise TextFormatError(f"unknown augspec line {key!r}", toks[0].line, toks[0].col)
        vals = tuple(_num(t) for t in toks[1:])
        if key in ("b1", "b2"):
            parts[key].append(vals)
        elif parts[key] is not None:
            raise TextFormatError(f"duplicate {key!r} line", toks[0].line, toks[0].col)
        else:
            parts[key] = vals
    for key in ("c1", "c2"):
        if parts[key] is None:
            raise TextFormatError(f"missing {key!r} line", end_line)
    try:
        return AugmentationSpec(**parts)
    except ValueError as exc:
        raise TextFormatError(str(exc), end_line) from None


# ---------------------------------------------------------------- printing

def _fmt(v) -> str:
    return " ".join(format_rational(x) for x in v)


def _decl_text(word: str, space: VarSpace) -> str:
    return word + " " + " ".join(f"{c}:{k}" for c, k in space.block_counts())


def _rows_text(p: HPoly) -> list[str]:
    return [f"{_fmt(r)} {s} {format_rational(rhs)}" for r, s, rhs in p.rows()]


def _columns_line(space: VarSpace) -> list[str]:
    """Record original indices when they are not simply 1..count."""
    if VarSpace.of(*space.block_counts()) == space:
        return []
    return ["columns " + " ".join(space.names())]


def kind_of(model: Model) -> str:
    for kind, cls in (("hpoly", HPoly), ("vpoly", VPoly), ("lp", LinProgram),
                      ("map", AffineMapSpec), ("augspec", AugmentationSpec)):
        if isinstance(model, cls):
            return kind
    raise TypeError(f"cannot print {type(model).__name__}")


def format_model(model: Model, name: str = "model") -> str:
    kind = kind_of(model)
    out = [f"{kind} {name}"]
    if kind in ("hpoly", "vpoly", "lp"):
        space = model.constraints.space if kind == "lp" else model.space
        out.append(_decl_text("vars", space))
        out += _columns_line(space)
    if kind == "hpoly":
        out += _rows_text(model)
    elif kind == "vpoly":
        out += [f"vertex {_fmt(v)}" for v in model.vertices]
    elif kind == "lp":
        out.append(f"min {_fmt(model.objective)}")
        out += _rows_text(model.constraints)
    elif kind == "map":
        out.append(_decl_text("from", model.domain))
        out.append(_decl_text("to", model.codomain))
        out += [_fmt(r) for r in model.matrix]
        if any(model.offset):
            out.append(f"offset {_fmt(model.offset)}")
    else:
        out += [f"b1 {_fmt(r)}" for r in model.b1]
        out += [f"b2 {_fmt(r)}" for r in model.b2]
        out.append(f"c1 {_fmt(model.c1)}")
        out.append(f"c2 {_fmt(model.c2)}")
    out.append("end")
    return "\n".join(out) + "\n"


def format_file(mf: ModelFile) -> str:
    return format_model(mf.model, mf.name)
