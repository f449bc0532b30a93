"""Text grammar, parser and printer for satellite trees.

    knot := "unknot" | "torus(" int "," int ")" | "cable(" int "," int ";" knot ")"
          | "sum(" knot { "," knot } ")" | "hyp(" geom [ ";" knot { "," knot } ] ")"
    geom := identifier | inline
    inline := "{" "sys" "=" decimal [ "," "mu" "=" "[" decimal { "," decimal } "]" ]
              [ "," "lk" "=" "[" int { "," int } "]" ] "}"

Whitespace between tokens is insignificant.  ``hyp{...}`` is accepted as
shorthand for ``hyp({...})``.  The parser performs no validation beyond
syntax: a one-element ``sum`` parses fine and is rejected later by
``tree.validate``, so syntax errors and semantic errors stay distinct.

Every failure is a positioned ``KnotSyntaxError``; arbitrary input never
raises anything else.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal

from .errors import KnotSyntaxError
from .geometry import HyperbolicGeometry
from .tree import (CableNode, ComposingNode, HyperbolicNode, TorusLeaf,
                   UnknotLeaf)

__all__ = ["KnotExpression", "parse", "parse_expression", "render", "load_knot_file"]

_TOKEN_RE = re.compile(r"""
      (?P<ident>[A-Za-z_][A-Za-z0-9_-]*)
    | (?P<number>-?\d+(?:\.\d+)?)
    | (?P<punct>[(){}\[\],;=])
    | (?P<space>\s+)
    | (?P<bad>.)
""", re.VERBOSE | re.DOTALL)

_MAX_DEPTH = 200


@dataclass(frozen=True)
class _Token:
    kind: str        # ident | number | punct | end
    text: str
    offset: int
    line: int
    column: int


@dataclass(frozen=True)
class KnotExpression:
    """A parsed expression together with its source and node spans.

    ``spans`` maps each node path to the (start, end) offsets of the text
    that produced it, so later diagnostics can point back into the source.
    """

    source: str
    tree: object
    spans: dict = field(default_factory=dict)


def _tokenize(text):
    tokens = []
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        offset = match.start()
        column = offset - line_start + 1
        if match.lastgroup == "space":
            chunk = match.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = offset + chunk.rfind("\n") + 1
            continue
        if match.lastgroup == "bad":
            raise KnotSyntaxError(
                "unexpected character %r" % match.group(), line, column)
        tokens.append(_Token(match.lastgroup, match.group(), offset, line, column))
    tokens.append(_Token("end", "", len(text), line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.spans = {}

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, expected=()):
        tok = self.peek()
        found = tok.text if tok.kind != "end" else "end of input"
        raise KnotSyntaxError(message, tok.line, tok.column,
                              expected=expected, found=found)

    def expect_punct(self, char):
        tok = self.peek()
        if tok.kind != "punct" or tok.text != char:
            self.fail("expected %r" % char, expected=(repr(char),))
        return self.advance()

    def expect_int(self):
        tok = self.peek()
        if tok.kind != "number" or "." in tok.text:
            self.fail("expected an integer", expected=("integer",))
        self.advance()
        return int(tok.text)

    def expect_decimal(self):
        tok = self.peek()
        if tok.kind != "number" or tok.text.startswith("-"):
            self.fail("expected an unsigned decimal", expected=("decimal",))
        self.advance()
        return float(tok.text)

    def expect_ident(self):
        tok = self.peek()
        if tok.kind != "ident":
            self.fail("expected an identifier", expected=("identifier",))
        self.advance()
        return tok.text

    # -- grammar ------------------------------------------------------------

    def parse_knot(self, path, depth):
        if depth > _MAX_DEPTH:
            tok = self.peek()
            raise KnotSyntaxError("expression nested too deeply",
                                  tok.line, tok.column)
        start = self.peek().offset
        tok = self.peek()
        if tok.kind != "ident":
            self.fail("expected a knot expression",
                      expected=("unknot", "torus", "cable", "sum", "hyp"))
        head = self.advance().text
        if head == "unknot":
            node = UnknotLeaf()
        elif head == "torus":
            self.expect_punct("(")
            a = self.expect_int()
            self.expect_punct(",")
            b = self.expect_int()
            self.expect_punct(")")
            node = TorusLeaf(a, b)
        elif head == "cable":
            self.expect_punct("(")
            r = self.expect_int()
            self.expect_punct(",")
            s = self.expect_int()
            self.expect_punct(";")
            child = self.parse_knot(path + (0,), depth + 1)
            self.expect_punct(")")
            node = CableNode(r, s, child)
        elif head == "sum":
            self.expect_punct("(")
            kids = [self.parse_knot(path + (0,), depth + 1)]
            while self.peek().text == ",":
                self.advance()
                kids.append(self.parse_knot(path + (len(kids),), depth + 1))
            self.expect_punct(")")
            node = ComposingNode(tuple(kids))
        elif head == "hyp":
            node = self.parse_hyp(path, depth)
        else:
            self.pos -= 1
            self.fail("unknown knot form %r" % head,
                      expected=("unknot", "torus", "cable", "sum", "hyp"))
        self.spans[path] = (start, self.tokens[self.pos - 1].offset
                            + len(self.tokens[self.pos - 1].text))
        return node

    def parse_hyp(self, path, depth):
        if self.peek().text == "{":          # hyp{...} shorthand, no children
            return HyperbolicNode(self.parse_inline(), ())
        self.expect_punct("(")
        if self.peek().text == "{":
            geometry = self.parse_inline()
        else:
            geometry = self.expect_ident()
        kids = []
        if self.peek().text == ";":
            self.advance()
            kids.append(self.parse_knot(path + (0,), depth + 1))
            while self.peek().text == ",":
                self.advance()
                kids.append(self.parse_knot(path + (len(kids),), depth + 1))
        self.expect_punct(")")
        return HyperbolicNode(geometry, tuple(kids))

    def parse_inline(self):
        self.expect_punct("{")
        key = self.expect_ident()
        if key != "sys":
            self.fail("inline geometry starts with sys", expected=("sys",))
        self.expect_punct("=")
        systole = self.expect_decimal()
        merids = None
        links = None
        while self.peek().text == ",":
            self.advance()
            key = self.expect_ident()
            if key == "mu" and merids is None and links is None:
                self.expect_punct("=")
                merids = tuple(self.parse_list(self.expect_decimal))
            elif key == "lk" and links is None:
                self.expect_punct("=")
                links = tuple(self.parse_list(self.expect_int))
            else:
                self.pos -= 1
                self.fail("unexpected inline key %r" % key,
                          expected=("mu", "lk"))
        self.expect_punct("}")
        m = 1 + max(len(merids) if merids is not None else 0,
                    len(links) if links is not None else 0)
        if merids is None:
            merids = () if m == 1 else None
        if links is None:
            links = () if m == 1 else None
        return HyperbolicGeometry(components=m, systole=systole,
                                  meridian_lengths=merids,
                                  linking_numbers=links)

    def parse_list(self, element):
        self.expect_punct("[")
        items = [element()]
        while self.peek().text == ",":
            self.advance()
            items.append(element())
        self.expect_punct("]")
        return items


def parse_expression(text):
    """Parse ``text`` into a KnotExpression (tree plus source spans)."""
    if not isinstance(text, str):
        text = text.decode("utf-8", errors="replace")
    parser = _Parser(text)
    tree = parser.parse_knot((), 0)
    if parser.peek().kind != "end":
        parser.fail("trailing input after expression", expected=("end of input",))
    return KnotExpression(source=text, tree=tree, spans=parser.spans)


def parse(text):
    """Parse ``text`` into a satellite tree.  No validation is applied."""
    return parse_expression(text).tree


def load_knot_file(path):
    """Parse a .knot file: one expression, optional trailing newline."""
    with open(path, "rb") as fh:
        return parse(fh.read().decode("utf-8").strip())


# -- printing -----------------------------------------------------------------

def _decimal_text(x):
    # repr of a float round-trips, but may use exponent notation which the
    # grammar does not allow; fall back to the exact expansion then.
    s = repr(float(x))
    if "e" not in s and "E" not in s:
        return s
    return format(Decimal(float(x)), "f")


def _render_geometry(g):
    parts = ["sys=%s" % _decimal_text(g.systole)]
    if g.meridian_lengths:
        parts.append("mu=[%s]" % ",".join(_decimal_text(l)
                                          for l in g.meridian_lengths))
    if g.linking_numbers:
        parts.append("lk=[%s]" % ",".join(str(n) for n in g.linking_numbers))
    return "{%s}" % ",".join(parts)


def render(tree):
    """Canonical text for a tree; ``parse(render(t))`` returns ``t``."""
    if isinstance(tree, UnknotLeaf):
        return "unknot"
    if isinstance(tree, TorusLeaf):
        return "torus(%d,%d)" % (tree.a, tree.b)
    if isinstance(tree, CableNode):
        return "cable(%d,%d;%s)" % (tree.r, tree.s, render(tree.child))
    if isinstance(tree, ComposingNode):
        return "sum(%s)" % ",".join(render(k) for k in tree.children)
    if isinstance(tree, HyperbolicNode):
        if isinstance(tree.geometry, str):
            head = tree.geometry
        else:
            head = _render_geometry(tree.geometry)
        if tree.children:
            return "hyp(%s;%s)" % (head, ",".join(render(k) for k in tree.children))
        return "hyp(%s)" % head
    raise TypeError("not a satellite tree: %r" % (tree,))
