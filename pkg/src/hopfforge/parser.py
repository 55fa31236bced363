"""Line-oriented definition-file format (.hopf) and its parser.

Grammar (one declaration per line, '#' starts a comment, UTF-8):

    hopf <name>
    gen <Name> weight <int>
    rel [A,B] = <poly>              # A must be declared after B
    coprod <Name> = <tensor-poly>   # terms like  coef*mono@mono ; 1@G, G@1
    counit <Name> = 0               # optional, must be 0
    antipode <Name> = <poly>        # optional
    sub <name> side <left|right|hopf> {
        gen ... ; rel ... ;
        embed <Name> = <poly of host generators>
    }

Monomials are written X, X^2, X^2*Y; rationals as p/q or integers.
Parsed polynomials keep their generator names, so a definition file can
be printed back and reparsed into an equal structure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Presentation
from .hopf import PresentedHopfAlgebra

# a polynomial is {mono-key: Fraction}; a mono-key is a tuple of
# (generator name, exponent) pairs in declaration order, () meaning 1
Poly = dict
MonoKey = tuple


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int = 0):
        super().__init__(f"line {line}, column {col}: {message}"
                         if col else f"line {line}: {message}")
        self.line = line
        self.col = col


@dataclass
class SubBlock:
    name: str
    side: str
    generators: list = field(default_factory=list)   # (name, weight)
    relations: list = field(default_factory=list)    # (gj, gi, Poly)
    embeds: dict = field(default_factory=dict)       # name -> host Poly


@dataclass
class DefinitionFile:
    name: str
    generators: list = field(default_factory=list)   # (name, weight)
    relations: list = field(default_factory=list)    # (gj, gi, Poly)
    coproducts: dict = field(default_factory=dict)   # name -> {(mk, mk): Fraction}
    counits: dict = field(default_factory=dict)      # name -> Fraction(0)
    antipodes: dict = field(default_factory=dict)    # name -> Poly
    subs: list = field(default_factory=list)


_TOKEN = re.compile(r"[A-Za-z_][A-Za-z_0-9]*|\d+|[\[\],=@^*/{}+-]|\S")


def _tokenize(text: str, lineno: int):
    out = []
    for m in _TOKEN.finditer(text):
        tok = m.group(0)
        if tok not in "[],=@^*/{}+-" and not tok.isdigit() \
                and not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
            raise ParseError(f"unexpected character {tok!r}", lineno,
                             m.start() + 1)
        out.append((tok, m.start() + 1))
    return out


class _TokenStream:
    def __init__(self, tokens, lineno):
        self.tokens = tokens
        self.lineno = lineno
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def col(self):
        return (self.tokens[self.pos][1] if self.pos < len(self.tokens)
                else (self.tokens[-1][1] + 1 if self.tokens else 1))

    def next(self, expect=None):
        if self.pos >= len(self.tokens):
            raise ParseError(f"unexpected end of line"
                             + (f", expected {expect!r}" if expect else ""),
                             self.lineno, self.col())
        tok, col = self.tokens[self.pos]
        if expect is not None and tok != expect:
            raise ParseError(f"expected {expect!r}, found {tok!r}",
                             self.lineno, col)
        self.pos += 1
        return tok

    def done(self):
        if self.pos < len(self.tokens):
            tok, col = self.tokens[self.pos]
            raise ParseError(f"trailing input {tok!r}", self.lineno, col)


def _parse_number(ts: _TokenStream) -> Fraction:
    num = ts.next()
    if not num.isdigit():
        raise ParseError(f"expected a number, found {num!r}", ts.lineno, ts.col())
    value = Fraction(int(num))
    if ts.peek() == "/":
        ts.next("/")
        den = ts.next()
        if not den.isdigit() or int(den) == 0:
            raise ParseError("expected a nonzero integer denominator",
                             ts.lineno, ts.col())
        value /= int(den)
    return value


def _parse_term(ts: _TokenStream, declared, allow_tensor: bool):
    """One signed term: returns (coeff, left mono dict, right mono dict or None)."""
    sign = Fraction(1)
    while ts.peek() in ("+", "-"):
        if ts.next() == "-":
            sign = -sign
    coeff = sign
    sides: list[dict] = [{}]
    saw_factor = False
    while True:
        tok = ts.peek()
        if tok is None or tok in ("+", "-") or tok in (",", "]", "}"):
            break
        if tok == "@":
            if not allow_tensor:
                raise ParseError("tensor syntax not allowed in relations",
                                 ts.lineno, ts.col())
            if len(sides) > 1:
                raise ParseError("more than one tensor separator in a term",
                                 ts.lineno, ts.col())
            ts.next("@")
            sides.append({})
            saw_factor = False
            continue
        if tok == "*":
            ts.next("*")
            continue
        if tok.isdigit():
            coeff *= _parse_number(ts)
            saw_factor = True
            continue
        if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
            name = ts.next()
            if name not in declared:
                raise ParseError(f"undeclared generator {name!r}",
                                 ts.lineno, ts.col())
            exp = 1
            if ts.peek() == "^":
                ts.next("^")
                e = ts.next()
                if not e.isdigit():
                    raise ParseError("expected an integer exponent",
                                     ts.lineno, ts.col())
                exp = int(e)
            mono = sides[-1]
            mono[name] = mono.get(name, 0) + exp
            saw_factor = True
            continue
        raise ParseError(f"unexpected token {tok!r} in a polynomial",
                         ts.lineno, ts.col())
    if not saw_factor and len(sides) == 1 and not sides[0]:
        raise ParseError("empty term", ts.lineno, ts.col())
    if allow_tensor and len(sides) == 1:
        raise ParseError("expected a tensor term mono@mono", ts.lineno, ts.col())
    return coeff, sides


def _mono_key(mono: dict, order: dict) -> MonoKey:
    return tuple(sorted(((n, e) for n, e in mono.items() if e),
                        key=lambda p: order[p[0]]))


def _parse_poly(ts: _TokenStream, declared, order, tensor: bool):
    out: dict = {}
    while True:
        coeff, sides = _parse_term(ts, declared, tensor)
        if tensor:
            key = (_mono_key(sides[0], order), _mono_key(sides[1], order))
        else:
            key = _mono_key(sides[0], order)
        acc = out.get(key, Fraction(0)) + coeff
        if acc:
            out[key] = acc
        else:
            out.pop(key, None)
        if ts.peek() is None or ts.peek() in (",", "]", "}"):
            break
        if ts.peek() not in ("+", "-"):
            raise ParseError(f"expected + or - between terms, found "
                             f"{ts.peek()!r}", ts.lineno, ts.col())
    return out


def parse(text: str) -> DefinitionFile:
    df: DefinitionFile | None = None
    sub: SubBlock | None = None
    host_order: dict = {}
    sub_order: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        ts = _TokenStream(_tokenize(line, lineno), lineno)
        head = ts.next()
        if df is None:
            if head != "hopf":
                raise ParseError("no algebra header: the first declaration "
                                 "must be 'hopf <name>'", lineno)
            df = DefinitionFile(name=ts.next())
            ts.done()
            continue
        if head == "hopf":
            raise ParseError("duplicate algebra header", lineno)
        if head == "sub":
            if sub is not None:
                raise ParseError("nested sub blocks are not allowed", lineno)
            name = ts.next()
            ts.next("side")
            side = ts.next()
            if side not in ("left", "right", "hopf"):
                raise ParseError(f"unknown side {side!r}", lineno, ts.col())
            ts.next("{")
            ts.done()
            sub = SubBlock(name=name, side=side)
            sub_order = {}
            continue
        if head == "}":
            if sub is None:
                raise ParseError("stray closing brace", lineno)
            ts.done()
            df.subs.append(sub)
            sub = None
            continue
        block = sub if sub is not None else df
        order = sub_order if sub is not None else host_order
        if head == "gen":
            name = ts.next()
            if name in order:
                raise ParseError(f"duplicate declaration of {name!r}", lineno)
            ts.next("weight")
            w = ts.next()
            if not w.isdigit() or int(w) == 0:
                raise ParseError("weight must be a positive integer", lineno,
                                 ts.col())
            ts.done()
            order[name] = len(order)
            block.generators.append((name, int(w)))
            continue
        if head == "rel":
            ts.next("[")
            gj = ts.next()
            ts.next(",")
            gi = ts.next()
            ts.next("]")
            for g in (gj, gi):
                if g not in order:
                    raise ParseError(f"undeclared generator {g!r}", lineno)
            if order[gj] <= order[gi]:
                raise ParseError(
                    f"relation [{gj},{gi}] must list the later-declared "
                    "generator first", lineno)
            ts.next("=")
            poly = _parse_poly(ts, order, order, tensor=False)
            ts.done()
            block.relations.append((gj, gi, poly))
            continue
        if head == "embed":
            if sub is None:
                raise ParseError("embed lines belong inside a sub block", lineno)
            name = ts.next()
            if name not in sub_order:
                raise ParseError(f"undeclared generator {name!r}", lineno)
            ts.next("=")
            poly = _parse_poly(ts, host_order, host_order, tensor=False)
            ts.done()
            sub.embeds[name] = poly
            continue
        if sub is not None:
            raise ParseError(f"unexpected declaration {head!r} in a sub block",
                             lineno)
        if head == "coprod":
            name = ts.next()
            if name not in host_order:
                raise ParseError(f"undeclared generator {name!r}", lineno)
            ts.next("=")
            poly = _parse_poly(ts, host_order, host_order, tensor=True)
            ts.done()
            df.coproducts[name] = poly
            continue
        if head == "counit":
            name = ts.next()
            if name not in host_order:
                raise ParseError(f"undeclared generator {name!r}", lineno)
            ts.next("=")
            value = ts.next()
            ts.done()
            if value != "0":
                raise ParseError("counit of a generator must be 0 "
                                 "(normalize generators into the counit "
                                 "kernel first)", lineno)
            df.counits[name] = Fraction(0)
            continue
        if head == "antipode":
            name = ts.next()
            if name not in host_order:
                raise ParseError(f"undeclared generator {name!r}", lineno)
            ts.next("=")
            poly = _parse_poly(ts, host_order, host_order, tensor=False)
            ts.done()
            df.antipodes[name] = poly
            continue
        raise ParseError(f"unknown declaration {head!r}", lineno)
    if df is None:
        raise ParseError("no algebra header", 1)
    if sub is not None:
        raise ParseError("unterminated sub block", len(text.splitlines()))
    missing = [g for g, _ in df.generators if g not in df.coproducts]
    if missing:
        raise ParseError("missing coproduct lines for: " + ", ".join(missing),
                         len(text.splitlines()))
    return df


# -- conversion to working objects --------------------------------------------


def _exponent_vector(key: MonoKey, names) -> tuple:
    index = {n: i for i, n in enumerate(names)}
    vec = [0] * len(names)
    for name, e in key:
        vec[index[name]] += e
    return tuple(vec)


def _poly_terms(poly: Poly, names) -> dict:
    return {_exponent_vector(k, names): c for k, c in poly.items()}


def build_algebra(df: DefinitionFile) -> tuple[PresentedHopfAlgebra, list[SubBlock]]:
    """Instantiate the parsed definition (uncertified; certify separately)."""
    names = [g for g, _ in df.generators]
    table = {(gj, gi): _poly_terms(p, names) for gj, gi, p in df.relations}
    pres = Presentation(df.generators, table)
    coproducts = {}
    for g, terms in df.coproducts.items():
        coproducts[g] = {
            (_exponent_vector(k1, names), _exponent_vector(k2, names)): c
            for (k1, k2), c in terms.items()}
    antipodes = None
    if df.antipodes:
        missing = [g for g in names if g not in df.antipodes]
        if missing:
            raise ValueError("antipode lines must cover all generators or "
                             "none; missing: " + ", ".join(missing))
        antipodes = {g: _poly_terms(p, names) for g, p in df.antipodes.items()}
    H = PresentedHopfAlgebra(pres, coproducts, antipodes, name=df.name)
    return H, df.subs


def sub_arguments(host: PresentedHopfAlgebra, block: SubBlock) -> dict:
    """Keyword arguments for register_subalgebra from a parsed sub block."""
    names = [g for g, _ in block.generators]
    host_names = host.presentation.names
    missing = [g for g in names if g not in block.embeds]
    if missing:
        raise ValueError(f"sub {block.name}: missing embed lines for "
                         + ", ".join(missing))
    return dict(
        host=host, name=block.name, generators=block.generators,
        commutators={(gj, gi): _poly_terms(p, names)
                     for gj, gi, p in block.relations},
        embedding={g: host.presentation.element(_poly_terms(p, host_names))
                   for g, p in block.embeds.items()},
        side=block.side)


# -- printing ------------------------------------------------------------------


def _format_number(c: Fraction) -> str:
    return str(c)


def _format_mono_key(key: MonoKey) -> str:
    if not key:
        return "1"
    return "*".join(f"{n}^{e}" if e > 1 else n for n, e in key)


def _format_poly(poly: Poly, order: dict, tensor: bool = False) -> str:
    if not poly:
        return "0"
    def sort_key(k):
        if tensor:
            return tuple(tuple((order[n], e) for n, e in side) for side in k)
        return tuple((order[n], e) for n, e in k)
    parts = []
    for key in sorted(poly, key=sort_key):
        c = poly[key]
        body = ("@".join(_format_mono_key(s) for s in key) if tensor
                else _format_mono_key(key))
        if body == "1" and not tensor:
            piece = _format_number(abs(c))
        elif abs(c) == 1:
            piece = body
        else:
            piece = f"{_format_number(abs(c))}*{body}"
        if not parts:
            parts.append(piece if c > 0 else f"-{piece}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {piece}")
    return " ".join(parts)


def format_definition(df: DefinitionFile) -> str:
    """Canonical text form; parsing it back yields an equal DefinitionFile."""
    order = {g: i for i, (g, _) in enumerate(df.generators)}
    lines = [f"hopf {df.name}"]
    for g, w in df.generators:
        lines.append(f"gen {g} weight {w}")
    for gj, gi, poly in df.relations:
        lines.append(f"rel [{gj},{gi}] = {_format_poly(poly, order)}")
    for g, _ in df.generators:
        if g in df.coproducts:
            lines.append(
                f"coprod {g} = {_format_poly(df.coproducts[g], order, True)}")
    for g in df.counits:
        lines.append(f"counit {g} = 0")
    for g, _ in df.generators:
        if g in df.antipodes:
            lines.append(f"antipode {g} = {_format_poly(df.antipodes[g], order)}")
    for sub in df.subs:
        lines.append(f"sub {sub.name} side {sub.side} {{")
        sub_order = {g: i for i, (g, _) in enumerate(sub.generators)}
        for g, w in sub.generators:
            lines.append(f"  gen {g} weight {w}")
        for gj, gi, poly in sub.relations:
            lines.append(f"  rel [{gj},{gi}] = {_format_poly(poly, sub_order)}")
        for g, _ in sub.generators:
            if g in sub.embeds:
                lines.append(f"  embed {g} = {_format_poly(sub.embeds[g], order)}")
        lines.append("}")
    return "\n".join(lines) + "\n"
