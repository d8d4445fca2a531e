"""Problem-file parsing: a small line-oriented format for germ and family data.

Grammar (bit-exact public surface):

* ``#`` starts a comment, anywhere on a line; blank lines are ignored.
* Each remaining line is ``key: value`` with keys
  ``vars``, ``param``, ``arcparam``, ``phi``, ``f``, ``g``, ``F``, ``Phi``,
  ``arc``.  Only ``arc`` may repeat.
* ``phi``/``Phi`` (and ``arc``) take comma-separated polynomial lists.
* Polynomial grammar::

      expr   := term (('+'|'-') term)*
      term   := factor ('*' factor)*
      factor := rational | var | var '^' nat | '(' expr ')' | '-' factor

  with rationals ``a`` or ``a/b`` in base 10.  There is no implicit
  multiplication.

Exactly one configuration must result: a plain germ (``f``, optional
``phi``), a fixed-X family (``F`` or ``f``+``g``, with ``param``), or a
deformed-X family (``Phi`` and ``f``, with ``param``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arcs import Arc
from .errors import InputError, ParseError
from .invariants import FamilyDeformedX, FamilyFixedX, FunctionOnGerm, MapGerm
from .polyring import Polynomial

_SCALAR_KEYS = ("vars", "param", "arcparam", "f", "g", "F")
_LIST_KEYS = ("phi", "Phi")
_ALL_KEYS = _SCALAR_KEYS + _LIST_KEYS + ("arc",)

KIND_GERM = "germ"
KIND_FIXED = "family-fixed"
KIND_DEFORMED = "family-deformed"


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM | NAME | OP | END
    text: str
    line: int
    column: int


def _tokenize(text: str, line: int, col0: int) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = col0 + i
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == ".":
                raise ParseError("non-rational coefficient: decimal points are not allowed", line, col0 + j)
            tokens.append(_Token("NUM", text[i:j], line, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("NAME", text[i:j], line, col))
            i = j
        elif ch in "+-*^()/,":
            tokens.append(_Token("OP", ch, line, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("END", "", line, col0 + len(text)))
    return tokens


class _ExprParser:
    def __init__(self, tokens: list[_Token], vars: tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.vars = vars

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.peek()
        if tok.kind != "OP" or tok.text != op:
            raise ParseError(f"expected {op!r}", tok.line, tok.column)
        return self.next()

    def parse_expr(self) -> Polynomial:
        acc = self.parse_term()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "+-":
                self.next()
                rhs = self.parse_term()
                acc = acc + rhs if tok.text == "+" else acc - rhs
            else:
                return acc

    def parse_term(self) -> Polynomial:
        acc = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text == "*":
                self.next()
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.next()
            return -self.parse_factor()
        if tok.kind == "OP" and tok.text == "(":
            self.next()
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if tok.kind == "NUM":
            self.next()
            value = Fraction(int(tok.text))
            nxt = self.peek()
            if nxt.kind == "OP" and nxt.text == "/":
                self.next()
                den = self.peek()
                if den.kind != "NUM":
                    raise ParseError("expected denominator after '/'", den.line, den.column)
                self.next()
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.line, den.column)
                value = Fraction(int(tok.text), int(den.text))
            return Polynomial.constant(self.vars, value)
        if tok.kind == "NAME":
            self.next()
            if tok.text not in self.vars:
                raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.column)
            base = Polynomial.variable(self.vars, tok.text)
            nxt = self.peek()
            if nxt.kind == "OP" and nxt.text == "^":
                self.next()
                exp = self.peek()
                if exp.kind != "NUM":
                    raise ParseError("expected integer exponent after '^'", exp.line, exp.column)
                self.next()
                return base ** int(exp.text)
            return base
        raise ParseError(f"unexpected token {tok.text!r}" if tok.text else "unexpected end of expression",
                         tok.line, tok.column)


def parse_polynomial(text: str, vars: tuple[str, ...], line: int = 1, col0: int = 1) -> Polynomial:
    """Parse one polynomial expression over the given variables."""
    parser = _ExprParser(_tokenize(text, line, col0), vars)
    poly = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "END":
        raise ParseError(f"unexpected token {tail.text!r} after expression", tail.line, tail.column)
    return poly


def _split_commas(text: str, line: int, col0: int) -> list[tuple[str, int]]:
    """Split on top-level commas, tracking column offsets."""
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", line, col0 + i)
        elif ch == "," and depth == 0:
            parts.append((text[start:i], col0 + start))
            start = i + 1
    parts.append((text[start:], col0 + start))
    return parts


@dataclass(frozen=True)
class ProblemFile:
    """Parsed problem: variables, optional parameters, germ and family data."""

    vars: tuple[str, ...]
    param: str | None
    arcparam: str
    phi: tuple[Polynomial, ...]
    f: Polynomial | None
    g: Polynomial | None
    F: Polynomial | None
    Phi: tuple[Polynomial, ...]
    arcs: tuple[Arc, ...]
    source: str

    @property
    def kind(self) -> str:
        if self.Phi:
            return KIND_DEFORMED
        if self.F is not None or self.g is not None:
            return KIND_FIXED
        return KIND_GERM

    def germ(self) -> MapGerm:
        return MapGerm.make(self.phi, self.vars)

    def function_on_germ(self) -> FunctionOnGerm:
        """The germ at t = 0 for any configuration."""
        if self.kind == KIND_DEFORMED:
            fam = self.family_deformed()
            return FunctionOnGerm.make(fam.f, fam.germ_at(0))
        fam_f = self.f
        if self.kind == KIND_FIXED:
            fam = self.family_fixed()
            return FunctionOnGerm.make(fam.member(0), fam.germ)
        if fam_f is None:
            raise InputError("no function germ in this problem")
        return FunctionOnGerm.make(fam_f, self.germ())

    def family_fixed(self) -> FamilyFixedX:
        if self.kind != KIND_FIXED:
            raise InputError("this problem does not describe a fixed-X family")
        assert self.param is not None
        germ = self.germ()
        if self.F is not None:
            return FamilyFixedX.make(germ, self.F, self.param)
        assert self.f is not None and self.g is not None
        return FamilyFixedX.from_split(germ, self.f, self.g, self.param)

    def family_deformed(self) -> FamilyDeformedX:
        if self.kind != KIND_DEFORMED:
            raise InputError("this problem does not describe a deformed-X family")
        assert self.param is not None and self.f is not None
        return FamilyDeformedX.make(self.Phi, self.f, self.vars, self.param)


def parse_problem(text: str) -> ProblemFile:
    """Parse a problem file; errors carry 1-based line and column positions."""
    raw: dict[str, tuple[str, int, int]] = {}
    arc_lines: list[tuple[str, int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if ":" not in body:
            raise ParseError("expected 'key: value'", lineno, 1)
        key, value = body.split(":", 1)
        col0 = len(key) + 2  # first column of the value text
        key = key.strip()
        if key not in _ALL_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
        if key == "arc":
            arc_lines.append((value, lineno, col0))
        else:
            if key in raw:
                raise ParseError(f"duplicate key {key!r}", lineno, 1)
            raw[key] = (value, lineno, col0)

    if "vars" not in raw:
        raise ParseError("missing 'vars' line")
    vtext, vline, vcol = raw["vars"]
    vars = tuple(vtext.split())
    if not vars:
        raise ParseError("empty variable list", vline, vcol)
    for v in vars:
        if not (v[0].isalpha() or v[0] == "_") or not all(c.isalnum() or c == "_" for c in v):
            raise ParseError(f"invalid variable name {v!r}", vline, vcol)
    if len(set(vars)) != len(vars):
        raise ParseError("duplicate variable names", vline, vcol)

    def single_name(key: str) -> str | None:
        if key not in raw:
            return None
        text_, line_, col_ = raw[key]
        name = text_.strip()
        if not name or not (name[0].isalpha() or name[0] == "_") or not all(
            c.isalnum() or c == "_" for c in name
        ):
            raise ParseError(f"invalid name for {key!r}", line_, col_)
        return name

    param = single_name("param")
    arcparam = single_name("arcparam") or "s"
    reserved = set(vars)
    if param is not None:
        if param in reserved:
            raise ParseError("'param' collides with a variable", raw["param"][1], raw["param"][2])
        reserved.add(param)
    if arcparam in reserved:
        line_, col_ = (raw["arcparam"][1], raw["arcparam"][2]) if "arcparam" in raw else (None, None)
        raise ParseError("'arcparam' collides with another name", line_, col_)

    family_vars = vars + ((param,) if param else ())

    def parse_list(key: str, ambient: tuple[str, ...]) -> tuple[Polynomial, ...]:
        if key not in raw:
            return ()
        text_, line_, col_ = raw[key]
        return tuple(
            parse_polynomial(part, ambient, line_, col_part)
            for part, col_part in _split_commas(text_, line_, col_)
        )

    def parse_single(key: str, ambient: tuple[str, ...]) -> Polynomial | None:
        if key not in raw:
            return None
        text_, line_, col_ = raw[key]
        return parse_polynomial(text_, ambient, line_, col_)

    phi = parse_list("phi", vars)
    Phi = parse_list("Phi", family_vars)
    f = parse_single("f", vars)
    g = parse_single("g", vars)
    F = parse_single("F", family_vars)

    arcs = []
    for text_, line_, col_ in arc_lines:
        parts = _split_commas(text_, line_, col_)
        expected = 1 + len(vars)
        if len(parts) != expected:
            raise ParseError(
                f"arc needs {expected} coordinates (parameter first, then variables), got {len(parts)}",
                line_, col_,
            )
        coords = [parse_polynomial(part, (arcparam,), line_, col_part) for part, col_part in parts]
        names = ((param or "t"),) + vars
        try:
            arcs.append(Arc.make(names, coords, arcparam))
        except InputError as exc:
            raise ParseError(str(exc), line_, col_) from None

    # Configuration validation: exactly one of germ / fixed-X / deformed-X.
    if Phi:
        if phi or F is not None or g is not None:
            raise ParseError("'Phi' cannot be combined with 'phi', 'F' or 'g'")
        if f is None:
            raise ParseError("a deformed-X family needs 'f'")
        if param is None:
            raise ParseError("a deformed-X family needs 'param'")
    elif F is not None:
        if f is not None or g is not None:
            raise ParseError("'F' cannot be combined with 'f' or 'g'")
        if param is None:
            raise ParseError("a family needs 'param'")
    elif g is not None:
        if f is None:
            raise ParseError("'g' needs 'f'")
        if param is None:
            raise ParseError("a family needs 'param'")
    else:
        if f is None:
            raise ParseError("a problem needs at least 'f'")

    return ProblemFile(vars, param, arcparam, phi, f, g, F, Phi, tuple(arcs), text)
