"""Text file formats for rings, modules, and complexes.

All three use one brace-block syntax, UTF-8, `#` comments:

    ring { char = 2; vars = [x, y]; relations = ["x^2", "y^2"]; degree_bound = 12 }

    module { ring = "cifiber.ring"; generators = [0]; relations = [["x", "y"]] }

    complex {
      ring = "cifiber.ring";
      modules = [[0], [1], [2]];
      differentials = [ d1 = [["x"]], d2 = [["y"]] ];
      maps = { eta = { shift = 2, twist = -2, components = [[], [], [["1"]]] } };
    }

Lists accept `name = value` entries whose names are ignored (the `d1 =`
style).  Paths are resolved relative to the referencing file.
"""

import os
import re

from . import freemod
from .complexes import ChainMap, FreeComplex
from .errors import ParseError, SyzkitError
from .modules import module_from_strings
from .rings import ring_from_strings

_TOKEN = re.compile(
    r"""\s*(?:(?P<comment>\#[^\n]*)
          |(?P<string>"(?:[^"\\]|\\.)*")
          |(?P<number>-?\d+)
          |(?P<ident>[A-Za-z_][\w.^*+-]*)
          |(?P<punct>[{}\[\]=;,]))""",
    re.VERBOSE,
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        if m.lastgroup == "comment":
            continue
        if m.lastgroup == "string":
            out.append(("string", m.group("string")[1:-1]))
        elif m.lastgroup == "number":
            out.append(("number", int(m.group("number"))))
        elif m.lastgroup == "ident":
            out.append(("ident", m.group("ident")))
        else:
            out.append(("punct", m.group("punct")))
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tk, tv = self.next()
        if tk != kind or (value is not None and tv != value):
            raise ParseError(f"expected {value or kind}, got {tv!r}")
        return tv

    def value(self):
        tk, tv = self.peek()
        if tk == "punct" and tv == "{":
            return self.block()
        if tk == "punct" and tv == "[":
            return self.list()
        if tk in ("string", "number"):
            self.next()
            return tv
        if tk == "ident":
            self.next()
            return tv
        raise ParseError(f"unexpected token {tv!r}")

    def list(self):
        self.expect("punct", "[")
        out = []
        while True:
            tk, tv = self.peek()
            if tk == "punct" and tv == "]":
                self.next()
                return out
            # allow `name = value` entries, names discarded
            if tk == "ident" and self.i + 1 < len(self.tokens) and self.tokens[self.i + 1] == ("punct", "="):
                self.next()
                self.next()
            out.append(self.value())
            tk, tv = self.peek()
            if tk == "punct" and tv == ",":
                self.next()
            elif tk == "punct" and tv == "]":
                continue
            elif tk is None:
                raise ParseError("unterminated list")

    def block(self):
        self.expect("punct", "{")
        out = {}
        while True:
            tk, tv = self.peek()
            if tk == "punct" and tv == "}":
                self.next()
                return out
            if tk is None:
                raise ParseError("unterminated block")
            key = self.expect("ident")
            self.expect("punct", "=")
            out[key] = self.value()
            tk, tv = self.peek()
            if tk == "punct" and tv in (";", ","):
                self.next()


def parse_document(text):
    p = _Parser(_tokenize(text))
    kind = p.expect("ident")
    body = p.block()
    if p.peek()[0] is not None:
        raise ParseError("trailing content after top-level block")
    return kind, body


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def read_ring_file(path, degree_bound_override=None):
    kind, body = parse_document(_read(path))
    if kind != "ring":
        raise ParseError(f"{path}: expected a ring block, found {kind!r}")
    try:
        char = int(body["char"])
        var_names = [str(v) for v in body.get("vars", [])]
        relations = [str(r) for r in body.get("relations", [])]
        bound = int(body.get("degree_bound", 12))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed ring block ({exc})") from exc
    if degree_bound_override is not None:
        bound = degree_bound_override
    try:
        return ring_from_strings(char, var_names, relations, degree_bound=bound)
    except SyzkitError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _resolve_ring(body, path, degree_bound_override, ring_cache):
    ref = body.get("ring")
    if not isinstance(ref, str):
        raise ParseError(f"{path}: missing ring reference")
    ring_path = os.path.normpath(os.path.join(os.path.dirname(path), ref))
    key = (ring_path, degree_bound_override)
    if ring_cache is not None and key in ring_cache:
        return ring_cache[key]
    ring = read_ring_file(ring_path, degree_bound_override)
    if ring_cache is not None:
        ring_cache[key] = ring
    return ring


def read_module_file(path, degree_bound_override=None, ring_cache=None):
    kind, body = parse_document(_read(path))
    if kind != "module":
        raise ParseError(f"{path}: expected a module block, found {kind!r}")
    ring = _resolve_ring(body, path, degree_bound_override, ring_cache)
    try:
        gens = [int(g) for g in body.get("generators", [])]
        rel_cols = [[str(e) for e in col] for col in body.get("relations", [])]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed module block ({exc})") from exc
    try:
        return module_from_strings(ring, gens, rel_cols)
    except SyzkitError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def read_complex_file(path, degree_bound_override=None, ring_cache=None):
    """Returns (FreeComplex, ChainMap or None)."""
    kind, body = parse_document(_read(path))
    if kind != "complex":
        raise ParseError(f"{path}: expected a complex block, found {kind!r}")
    ring = _resolve_ring(body, path, degree_bound_override, ring_cache)
    try:
        gens = [tuple(int(g) for g in row) for row in body.get("modules", [])]
        diff_blocks = body.get("differentials", [])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed complex block ({exc})") from exc
    if len(diff_blocks) != max(0, len(gens) - 1):
        raise ParseError(
            f"{path}: need {max(0, len(gens) - 1)} differentials for "
            f"{len(gens)} terms, found {len(diff_blocks)}"
        )
    diffs = [None]
    for j in range(1, len(gens)):
        rows = diff_blocks[j - 1]
        if not gens[j] or not gens[j - 1]:
            diffs.append(freemod.FreeMap.zero(ring, gens[j], gens[j - 1]))
            continue
        if len(rows) != len(gens[j - 1]) or any(len(r) != len(gens[j]) for r in rows):
            raise ParseError(
                f"{path}: differential {j} must be {len(gens[j - 1])} x {len(gens[j])}"
            )
        try:
            entries = [[ring.base.parse(str(e)) for e in row] for row in rows]
            diffs.append(
                freemod.FreeMap.from_poly_matrix(ring, gens[j - 1], gens[j], entries)
            )
        except SyzkitError as exc:
            raise ParseError(f"{path}: differential {j}: {exc}") from exc
    cx = FreeComplex(ring, gens, diffs)
    if not cx.verify():
        raise ParseError(f"{path}: differentials do not compose to zero")
    eta = None
    maps = body.get("maps", {})
    if isinstance(maps, dict) and "eta" in maps:
        eta_block = maps["eta"]
        try:
            shift = int(eta_block["shift"])
            twist = int(eta_block.get("twist", -shift))
            comp_blocks = eta_block.get("components", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{path}: malformed eta map ({exc})") from exc
        comps = []
        for j in range(cx.window + 1):
            src = cx.gen_degrees(j)
            tgt = cx.gen_degrees(j - shift)
            rows = comp_blocks[j] if j < len(comp_blocks) else []
            if not src or not tgt or not rows:
                comps.append(freemod.FreeMap.zero(ring, src, tgt, twist))
                continue
            if len(rows) != len(tgt) or any(len(r) != len(src) for r in rows):
                raise ParseError(
                    f"{path}: eta component {j} must be {len(tgt)} x {len(src)}"
                )
            try:
                entries = [[ring.base.parse(str(e)) for e in row] for row in rows]
                comps.append(
                    freemod.FreeMap.from_poly_matrix(ring, tgt, src, entries, twist)
                )
            except SyzkitError as exc:
                raise ParseError(f"{path}: eta component {j}: {exc}") from exc
        eta = ChainMap(cx, cx, shift, twist, comps)
        if not eta.verify():
            raise ParseError(f"{path}: eta is not a chain map")
    return cx, eta


def write_ring_file(path, ring):
    rels = ", ".join(f'"{ring.base.format(g)}"' for g in ring.ideal_gens)
    vars_s = ", ".join(ring.vars)
    text = (
        "ring {\n"
        f"  char = {ring.char};\n"
        f"  vars = [{vars_s}];\n"
        f"  relations = [{rels}];\n"
        f"  degree_bound = {ring.degree_bound};\n"
        "}\n"
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def module_relation_strings(module):
    ring = module.ring
    cols = []
    for d, v in module.relations:
        offs = freemod.component_offsets(ring, module.gen_degrees, d)
        col = []
        for s, g in enumerate(module.gen_degrees):
            col.append(ring.format_vector(v[offs[s]:offs[s + 1]], d - g))
        cols.append(col)
    return cols


def write_module_file(path, module, ring_ref):
    gens = ", ".join(str(g) for g in module.gen_degrees)
    cols = module_relation_strings(module)
    rel_lines = ",\n    ".join(
        "[" + ", ".join(f'"{e}"' for e in col) + "]" for col in cols
    )
    rels = f"[\n    {rel_lines}\n  ]" if cols else "[]"
    text = (
        "module {\n"
        f'  ring = "{ring_ref}";\n'
        f"  generators = [{gens}];\n"
        f"  relations = {rels};\n"
        "}\n"
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
