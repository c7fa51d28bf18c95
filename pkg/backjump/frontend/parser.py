"""
Parser for the native model format.

    var x in 1..3;
    var y in {1,3,5};
    constraint neq(x, y, 0);
    constraint linear([2,3], [x,y], "<=", 12);
    solve satisfy;

`#` starts a comment running to the end of the line. Parsing stops at the first
error, reported with its line and column.
"""
import re
from typing import NamedTuple, Optional

from backjump.models.model import (
    ConstraintKind, ConstraintSpec, InvalidModelError, ModelFile, SolveGoal, VariableDecl,
)


class ModelParseError(Exception):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<range>\.\.)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<punct>[;,(){}\[\]])
""", re.VERBOSE)

KEYWORDS = {"var", "in", "constraint", "solve", "satisfy", "all"}


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise ModelParseError(line, column, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "newline":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            if kind == "ident" and m.group() in KEYWORDS:
                kind = "keyword"
            tokens.append(Token(kind, m.group(), line, column))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Call(NamedTuple):
    name: Token
    args: list


class _Parser:

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.declared: dict[str, VariableDecl] = {}
        self.variables: list[VariableDecl] = []
        self.constraints: list[ConstraintSpec] = []

    # ---- token helpers ----

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, tok: Token, message: str):
        raise ModelParseError(tok.line, tok.column, message)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            wanted = f"'{text}'" if text is not None else kind
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.error(tok, f"expected {wanted}, found {found}")
        return self.advance()

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def integer(self) -> int:
        return int(self.expect("int").text)

    # ---- grammar ----

    def model(self) -> ModelFile:
        while True:
            if self.at("keyword", "var"):
                self.declaration()
            elif self.at("keyword", "constraint"):
                self.constraint()
            else:
                break
        if not self.at("keyword", "solve"):
            self.error(self.peek(), "expected 'solve'")
        self.advance()
        goal_tok = self.peek()
        if self.at("keyword", "satisfy") or self.at("keyword", "all"):
            goal = SolveGoal(self.advance().text)
        else:
            self.error(goal_tok, "expected 'satisfy' or 'all'")
        self.expect("punct", ";")
        self.expect("eof")
        return ModelFile(variables=self.variables, constraints=self.constraints, goal=goal)

    def declaration(self):
        self.advance()
        name = self.expect("ident")
        if name.text in self.declared:
            self.error(name, f"variable '{name.text}' declared twice")
        self.expect("keyword", "in")
        start = self.peek()
        if self.at("punct", "{"):
            self.advance()
            values = [self.integer()]
            while self.at("punct", ","):
                self.advance()
                values.append(self.integer())
            self.expect("punct", "}")
            is_range = False
        else:
            lo = self.integer()
            self.expect("range")
            hi = self.integer()
            if hi < lo:
                self.error(start, f"empty domain {lo}..{hi}")
            values = list(range(lo, hi + 1))
            is_range = True
        self.expect("punct", ";")
        decl = VariableDecl(name=name.text, values=values, is_range=is_range)
        self.declared[name.text] = decl
        self.variables.append(decl)

    def argument(self):
        tok = self.peek()
        if tok.kind == "int":
            return int(self.advance().text)
        if tok.kind == "ident":
            return self.advance()
        if tok.kind == "string":
            return self.advance()
        if tok.kind == "punct" and tok.text == "[":
            self.advance()
            items = []
            if not self.at("punct", "]"):
                items.append(self.argument())
                while self.at("punct", ","):
                    self.advance()
                    items.append(self.argument())
            self.expect("punct", "]")
            return items
        self.error(tok, "expected an argument")

    def constraint(self):
        self.advance()
        name = self.expect("ident")
        self.expect("punct", "(")
        args = []
        if not self.at("punct", ")"):
            args.append(self.argument())
            while self.at("punct", ","):
                self.advance()
                args.append(self.argument())
        self.expect("punct", ")")
        self.expect("punct", ";")
        spec = self.build(_Call(name, args))
        try:
            spec.check()
        except InvalidModelError as exc:
            self.error(name, str(exc))
        self.constraints.append(spec)

    # ---- argument checking ----

    def variable(self, call: _Call, arg) -> str:
        if not isinstance(arg, Token) or arg.kind != "ident":
            self.error(call.name, f"{call.name.text}: expected a variable, got {self._show(arg)}")
        if arg.text not in self.declared:
            self.error(arg, f"undeclared identifier '{arg.text}'")
        return arg.text

    def constant(self, call: _Call, arg) -> int:
        if not isinstance(arg, int):
            self.error(call.name, f"{call.name.text}: expected an integer, got {self._show(arg)}")
        return arg

    def int_list(self, call: _Call, arg) -> list[int]:
        if not isinstance(arg, list):
            self.error(call.name, f"{call.name.text}: expected a list of integers")
        return [self.constant(call, a) for a in arg]

    @staticmethod
    def _show(arg) -> str:
        if isinstance(arg, Token):
            return repr(arg.text)
        if isinstance(arg, list):
            return "a list"
        return repr(arg)

    def arity(self, call: _Call, n: int):
        if len(call.args) != n:
            self.error(call.name, f"{call.name.text} takes {n} arguments, got {len(call.args)}")

    def build(self, call: _Call) -> ConstraintSpec:
        name = call.name.text
        args = call.args
        if name in ("eq", "neq", "leq"):
            self.arity(call, 3)
            scope = [self.variable(call, args[0]), self.variable(call, args[1])]
            return ConstraintSpec(kind=ConstraintKind(name), scope=scope,
                                  constant=self.constant(call, args[2]))
        if name == "linear":
            self.arity(call, 4)
            coefficients = self.int_list(call, args[0])
            if not isinstance(args[1], list):
                self.error(call.name, "linear: expected a list of variables")
            scope = [self.variable(call, a) for a in args[1]]
            op = args[2]
            if not isinstance(op, Token) or op.kind != "string" or op.text not in ('"<="', '"="'):
                self.error(call.name, 'linear: operator must be "<=" or "="')
            kind = ConstraintKind.linear_leq if op.text == '"<="' else ConstraintKind.linear_eq
            return ConstraintSpec(kind=kind, scope=scope, coefficients=coefficients,
                                  constant=self.constant(call, args[3]))
        if name == "alldifferent":
            items = args[0] if len(args) == 1 and isinstance(args[0], list) else args
            return ConstraintSpec(kind=ConstraintKind.alldifferent,
                                  scope=[self.variable(call, a) for a in items])
        if name == "forbid":
            self.arity(call, 3)
            scope = [self.variable(call, args[0]), self.variable(call, args[1])]
            if not isinstance(args[2], list):
                self.error(call.name, "forbid: expected a list of pairs")
            tuples = []
            for pair in args[2]:
                values = self.int_list(call, pair)
                if len(values) != 2:
                    self.error(call.name, "forbid: every tuple must have 2 values")
                tuples.append((values[0], values[1]))
            return ConstraintSpec(kind=ConstraintKind.forbidden, scope=scope, tuples=tuples)
        self.error(call.name, f"unknown constraint '{name}'")


def parse_model(text: str, name: Optional[str] = None) -> ModelFile:
    """Parse model text; raises ModelParseError on the first error."""
    model = _Parser(text).model()
    model.name = name
    return model


def load_model(path: str) -> ModelFile:
    with open(path, "rb") as f:
        raw = f.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        # position of the first undecodable byte; everything before it is valid
        before = raw[:exc.start].decode("utf-8")
        line = before.count("\n") + 1
        column = len(before) - (before.rfind("\n") + 1) + 1
        raise ModelParseError(line, column, f"invalid UTF-8 byte 0x{raw[exc.start]:02x}")
    stem = path.replace("\\", "/").rsplit("/", 1)[-1]
    return parse_model(text, stem.rsplit(".", 1)[0])
