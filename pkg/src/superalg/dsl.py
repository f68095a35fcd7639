"""Text format for superalgebra presentations, derivations, points and
pairs, plus the polynomial expression grammar used everywhere on the
command line.

Example document::

    superalgebra A
      even x
      odd y1 y2
      rel x*y1y2
    end

Identifiers made of concatenated odd names (the canonical rendering,
e.g. ``y1y2``) are resolved greedily into products of odd generators.
"""

from __future__ import annotations

import re
from fractions import Fraction

from superalg.groebner import SuperAlgebra
from superalg.superpoly import StructureError, SuperPoly, VarSet


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = "line %d, column %d: %s" % (line, col, message)
        super().__init__(message)
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[-+*^/();=:,\[\]])
    """,
    re.VERBOSE,
)

KEYWORDS = {
    "superalgebra",
    "hcpair",
    "derivation",
    "point",
    "even",
    "odd",
    "rel",
    "end",
    "on",
    "size",
    "odd-dim",
    "odddim",
    "rho",
    "bracket",
}


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return "Token(%s, %r)" % (self.kind, self.text)


def tokenize(text):
    tokens = []
    line = 1
    linestart = 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                "unexpected character %r" % text[pos], line, pos - linestart + 1
            )
        kind = m.lastgroup
        value = m.group()
        col = pos - linestart + 1
        if kind in ("ws", "comment"):
            for i, ch in enumerate(value):
                if ch == "\n":
                    line += 1
                    linestart = pos + i + 1
        else:
            tokens.append(Token(kind, value, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, len(text) - linestart + 1))
    return tokens


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead=0):
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self):
        t = self.peek()
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text):
        t = self.peek()
        if t.text != text:
            raise ParseError("expected %r, found %r" % (text, t.text or "end of input"), t.line, t.col)
        return self.next()

    def at_keyword(self):
        t = self.peek()
        return t.kind == "ident" and t.text in KEYWORDS

    def error(self, message):
        t = self.peek()
        raise ParseError(message, t.line, t.col)


# ---------------------------------------------------------------------------
# polynomial expressions


def resolve_name(vs, name, tok=None):
    """A generator name, or a greedy concatenation of odd names."""
    if name in vs.even or name in vs.odd:
        return vs.gen(name)
    # greedy longest-match split into odd generator names
    parts = []
    rest = name
    while rest:
        for cand in sorted(vs.odd, key=len, reverse=True):
            if rest.startswith(cand):
                parts.append(cand)
                rest = rest[len(cand) :]
                break
        else:
            raise ParseError(
                "unknown generator %r" % name,
                tok.line if tok else None,
                tok.col if tok else None,
            )
    out = vs.one()
    for p in parts:
        out = out * vs.gen(p)
    return out


class PolyParser:
    """Recursive-descent parser for `3*x^2*y1y2 - 1/2*y1 + (x - 1)^3`."""

    STOPPERS = {";", ",", ")", "]", "end", "rel", "even", "odd", "rho", "bracket", ""}

    def __init__(self, stream, vs):
        self.s = stream
        self.vs = vs

    def parse(self):
        return self._sum()

    def _sum(self):
        t = self.s.peek()
        negate = False
        if t.text in ("+", "-"):
            self.s.next()
            negate = t.text == "-"
        acc = self._product()
        if negate:
            acc = -acc
        while True:
            t = self.s.peek()
            if t.text == "+":
                self.s.next()
                acc = acc + self._product()
            elif t.text == "-":
                self.s.next()
                acc = acc - self._product()
            else:
                return acc

    def _product(self):
        acc = self._power()
        while True:
            t = self.s.peek()
            if t.text == "*":
                self.s.next()
                acc = acc * self._power()
            else:
                return acc

    def _power(self):
        base = self._atom()
        t = self.s.peek()
        if t.text == "^":
            self.s.next()
            e = self.s.peek()
            if e.kind != "int":
                self.s.error("expected an integer exponent")
            self.s.next()
            return base ** int(e.text)
        return base

    def _atom(self):
        t = self.s.peek()
        if t.text in ("+", "-"):
            self.s.next()
            inner = self._power()
            return -inner if t.text == "-" else inner
        if t.kind == "int":
            self.s.next()
            num = int(t.text)
            if self.s.peek().text == "/":
                self.s.next()
                d = self.s.peek()
                if d.kind != "int":
                    self.s.error("expected an integer denominator")
                self.s.next()
                return self.vs.const(Fraction(num, int(d.text)))
            return self.vs.const(num)
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.s.next()
            return resolve_name(self.vs, t.text, t)
        if t.text == "(":
            self.s.next()
            inner = self._sum()
            self.s.expect(")")
            return inner
        self.s.error("expected a polynomial, found %r" % (t.text or "end of input"))


def parse_poly(text, vs):
    stream = TokenStream(tokenize(text))
    p = PolyParser(stream, vs).parse()
    if stream.peek().kind != "eof":
        stream.error("trailing input after polynomial")
    return p


# ---------------------------------------------------------------------------
# documents


class SuperAlgebraDecl:
    def __init__(self, name, algebra):
        self.name = name
        self.algebra = algebra

    def render(self):
        vs = self.algebra.vs
        lines = ["superalgebra %s" % self.name]
        if vs.even:
            lines.append("  even " + " ".join(vs.even))
        if vs.odd:
            lines.append("  odd " + " ".join(vs.odd))
        for r in self.algebra.relations:
            lines.append("  rel " + r.render())
        lines.append("end")
        return "\n".join(lines) + "\n"


class DerivationDecl:
    def __init__(self, name, images):
        self.name = name
        self.images = images  # generator name -> source text / SuperPoly

    def render(self):
        lines = ["derivation %s" % self.name]
        for gen_name, img in self.images.items():
            lines.append("  %s -> %s" % (gen_name, img.render()))
        lines.append("end")
        return "\n".join(lines) + "\n"


class PointDecl:
    def __init__(self, name, values):
        self.name = name
        self.values = values  # even generator name -> scalar

    def render(self, field):
        lines = ["point %s" % self.name]
        for gen_name, v in self.values.items():
            lines.append("  %s = %s" % (gen_name, field.render(v)))
        lines.append("end")
        return "\n".join(lines) + "\n"


class Manifest:
    def __init__(self, algebra_decl=None, derivations=None, points=None):
        self.algebra_decl = algebra_decl
        self.derivations = derivations or {}
        self.points = points or {}

    @property
    def algebra(self):
        if self.algebra_decl is None:
            raise ParseError("document declares no superalgebra")
        return self.algebra_decl.algebra

    def render(self):
        out = []
        if self.algebra_decl:
            out.append(self.algebra_decl.render())
        for d in self.derivations.values():
            out.append(d.render())
        field = self.algebra_decl.algebra.vs.field if self.algebra_decl else None
        for p in self.points.values():
            out.append(p.render(field))
        return "\n".join(out)


def parse_document(text, field=None):
    """Parse a .salg document: one superalgebra block followed by any
    number of derivation and point blocks."""
    from superalg.scalars import QQ

    field = field or QQ
    stream = TokenStream(tokenize(text))
    manifest = Manifest()
    while stream.peek().kind != "eof":
        t = stream.peek()
        if t.text == "superalgebra":
            if manifest.algebra_decl is not None:
                stream.error("only one superalgebra block per document")
            manifest.algebra_decl = _parse_superalgebra(stream, field)
        elif t.text == "derivation":
            if manifest.algebra_decl is None:
                stream.error("derivation block before the superalgebra block")
            d = _parse_derivation(stream, manifest.algebra.vs)
            manifest.derivations[d.name] = d
        elif t.text == "point":
            if manifest.algebra_decl is None:
                stream.error("point block before the superalgebra block")
            p = _parse_point(stream, manifest.algebra.vs)
            manifest.points[p.name] = p
        else:
            stream.error("expected a superalgebra, derivation or point block")
    return manifest


def _parse_name(stream, what):
    t = stream.peek()
    if t.kind != "ident" or t.text in KEYWORDS:
        stream.error("expected a %s name" % what)
    stream.next()
    return t.text


def _parse_superalgebra(stream, field):
    stream.expect("superalgebra")
    name = _parse_name(stream, "superalgebra")
    even = []
    odd = []
    rel_sources = []
    while True:
        t = stream.peek()
        if t.text == "end":
            stream.next()
            break
        if t.text == "even":
            stream.next()
            while stream.peek().kind == "ident" and not stream.at_keyword():
                even.append(stream.next().text)
        elif t.text == "odd":
            stream.next()
            while stream.peek().kind == "ident" and not stream.at_keyword():
                odd.append(stream.next().text)
        elif t.text == "rel":
            stream.next()
            rel_sources.append(stream.i)
            _skip_expression(stream)
            while stream.peek().text == ";":
                stream.next()
                rel_sources.append(stream.i)
                _skip_expression(stream)
        else:
            stream.error("expected even, odd, rel or end")
    try:
        vs = VarSet(tuple(even), tuple(odd), field)
    except StructureError as e:
        raise ParseError(str(e))
    rels = []
    for start in rel_sources:
        sub = TokenStream(stream.tokens)
        sub.i = start
        rels.append(PolyParser(sub, vs).parse())
    return SuperAlgebraDecl(name, SuperAlgebra(vs, rels))


def _skip_expression(stream):
    """Advance past one polynomial expression without interpreting it."""
    depth = 0
    while True:
        t = stream.peek()
        if t.kind == "eof":
            stream.error("unterminated expression")
        if depth == 0 and (t.text in (";", ",") or (t.kind == "ident" and t.text in KEYWORDS)):
            return
        if t.text in ("(", "["):
            depth += 1
        elif t.text in (")", "]"):
            if depth == 0:
                return
            depth -= 1
        stream.next()


def _parse_derivation(stream, vs):
    stream.expect("derivation")
    name = _parse_name(stream, "derivation")
    if stream.peek().text == ":":
        stream.next()
    images = {}
    while True:
        t = stream.peek()
        if t.text == "end":
            stream.next()
            break
        if t.text == ";":
            stream.next()
            continue
        if t.kind != "ident" or t.text in KEYWORDS:
            stream.error("expected a generator name or end")
        gen_name = stream.next().text
        if gen_name not in vs.even and gen_name not in vs.odd:
            raise ParseError("unknown generator %r" % gen_name, t.line, t.col)
        stream.expect("->")
        images[gen_name] = PolyParser(stream, vs).parse()
    return DerivationDecl(name, images)


def _parse_point(stream, vs):
    stream.expect("point")
    name = _parse_name(stream, "point")
    if stream.peek().text == ":":
        stream.next()
    values = {}
    while True:
        t = stream.peek()
        if t.text == "end":
            stream.next()
            break
        if t.text == ";":
            stream.next()
            continue
        if t.kind != "ident" or t.text in KEYWORDS:
            stream.error("expected a generator name or end")
        gen_name = stream.next().text
        if gen_name not in vs.even:
            raise ParseError("%r is not an even generator" % gen_name, t.line, t.col)
        stream.expect("=")
        values[gen_name] = _parse_scalar(stream, vs.field)
    return PointDecl(name, values)


def _parse_scalar(stream, field):
    sign = 1
    if stream.peek().text == "-":
        stream.next()
        sign = -1
    t = stream.peek()
    if t.kind != "int":
        stream.error("expected a rational scalar")
    stream.next()
    num = int(t.text)
    den = 1
    if stream.peek().text == "/":
        stream.next()
        d = stream.peek()
        if d.kind != "int":
            stream.error("expected an integer denominator")
        stream.next()
        den = int(d.text)
    return field.of(Fraction(sign * num, den))


# ---------------------------------------------------------------------------
# inline fragments used by CLI flags


def parse_assignments(text, vs):
    """``x = 2; y = -1/3`` -> {name: scalar}; used by --point."""
    stream = TokenStream(tokenize(text))
    values = {}
    while stream.peek().kind != "eof":
        if stream.peek().text in (";", ","):
            stream.next()
            continue
        t = stream.peek()
        if t.kind != "ident" or t.text in KEYWORDS:
            stream.error("expected an even generator name")
        gen_name = stream.next().text
        if gen_name not in vs.even:
            raise ParseError("%r is not an even generator" % gen_name, t.line, t.col)
        stream.expect("=")
        values[gen_name] = _parse_scalar(stream, vs.field)
    return values


def parse_images(text, vs):
    """``x -> 0; y -> x`` -> {name: SuperPoly}; used by --derivation."""
    stream = TokenStream(tokenize(text))
    images = {}
    while stream.peek().kind != "eof":
        if stream.peek().text in (";", ","):
            stream.next()
            continue
        t = stream.peek()
        if t.kind != "ident" or t.text in KEYWORDS:
            stream.error("expected a generator name")
        gen_name = stream.next().text
        if gen_name not in vs.even and gen_name not in vs.odd:
            raise ParseError("unknown generator %r" % gen_name, t.line, t.col)
        stream.expect("->")
        images[gen_name] = PolyParser(stream, vs).parse()
    return images


def parse_poly_list(text, vs):
    """``y1, y2`` or ``y1; y2`` -> [SuperPoly]; used by --seq."""
    stream = TokenStream(tokenize(text))
    out = []
    while stream.peek().kind != "eof":
        if stream.peek().text in (";", ","):
            stream.next()
            continue
        out.append(PolyParser(stream, vs).parse())
    return out


# ---------------------------------------------------------------------------
# pair documents (.shc)


def parse_pair_document(text, field=None):
    """Parse an hcpair block::

        hcpair name
          size 2
          odd-dim 1
          rel g11 - 1; g21; g22 - 1
          rho 1
          bracket 1 1: 0, 2; 0, 0
        end

    rho rows are ';'-separated, entries ','-separated polynomials in the
    matrix entries g11..gNN and d; bracket blocks give scalar matrices.
    """
    from superalg.hcgroup import EvenGroupSpec, HCPair, group_varset
    from superalg.scalars import QQ

    field = field or QQ
    stream = TokenStream(tokenize(text))
    stream.expect("hcpair")
    name = _parse_name(stream, "hcpair")
    size = None
    odd_dim = None
    rel_starts = []
    rho_start = None
    brackets = []  # (i, j, start index)
    while True:
        t = stream.peek()
        if t.text == "end":
            stream.next()
            break
        if t.text == "size":
            stream.next()
            size = int(stream.next().text)
        elif t.text in ("odd-dim", "odddim"):
            stream.next()
            odd_dim = int(stream.next().text)
        elif t.text == "odd":
            # tolerate "odd - dim" tokenization of "odd-dim"
            stream.next()
            if stream.peek().text == "-":
                stream.next()
                if stream.peek().text == "dim":
                    stream.next()
            odd_dim = int(stream.next().text)
        elif t.text == "rel":
            stream.next()
            rel_starts.append(stream.i)
            _skip_expression(stream)
            while stream.peek().text == ";":
                stream.next()
                rel_starts.append(stream.i)
                _skip_expression(stream)
        elif t.text == "rho":
            stream.next()
            rho_start = stream.i
            _skip_matrix(stream)
        elif t.text == "bracket":
            stream.next()
            i = int(stream.next().text)
            j = int(stream.next().text)
            stream.expect(":")
            brackets.append((i, j, stream.i))
            _skip_matrix(stream)
        else:
            stream.error("expected size, odd-dim, rel, rho, bracket or end")
    if size is None or odd_dim is None:
        raise ParseError("hcpair needs both size and odd-dim")
    vs = group_varset(size, field)
    rels = []
    for start in rel_starts:
        sub = TokenStream(stream.tokens)
        sub.i = start
        rels.append(PolyParser(sub, vs).parse())
    group = EvenGroupSpec(size, rels, field=field)
    if rho_start is None:
        raise ParseError("hcpair needs a rho block")
    sub = TokenStream(stream.tokens)
    sub.i = rho_start
    rho = _parse_matrix(sub, vs)
    if len(rho) != odd_dim or any(len(r) != odd_dim for r in rho):
        raise ParseError("rho must be a %d x %d matrix" % (odd_dim, odd_dim))
    bracket = {}
    for i, j, start in brackets:
        sub = TokenStream(stream.tokens)
        sub.i = start
        rows = _parse_matrix(sub, vs)
        if len(rows) != size or any(len(r) != size for r in rows):
            raise ParseError("bracket %d %d must be a %d x %d matrix" % (i, j, size, size))
        scalar_rows = []
        for row in rows:
            srow = []
            for e in row:
                if e.total_degree() > 0:
                    raise ParseError("bracket entries must be scalars, got %s" % e)
                srow.append(e.constant_coeff())
            scalar_rows.append(srow)
        bracket[(min(i, j) - 1, max(i, j) - 1)] = scalar_rows
    return HCPair(group, odd_dim, rho, bracket, name=name)


def _skip_matrix(stream):
    while True:
        _skip_expression(stream)
        if stream.peek().text in (",", ";"):
            stream.next()
            continue
        return


def _parse_matrix(stream, vs):
    rows = [[]]
    while True:
        rows[-1].append(PolyParser(stream, vs).parse())
        t = stream.peek()
        if t.text == ",":
            stream.next()
        elif t.text == ";":
            stream.next()
            rows.append([])
        else:
            return rows
