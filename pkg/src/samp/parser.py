"""Lexer and recursive descent parser for Samp.

Grammar summary:

    program    := (fn_decl | statement)*
    fn_decl    := "fn" NAME "(" [NAME ("," NAME)*] ")" block
    block      := "{" statement* "}" | statement
    statement  := "let" NAME "=" expr ";"
               | "if" "(" expr ")" block ["else" block]
               | "while" "(" expr ")" block
               | "for" "(" NAME "in" expr ")" block
               | "return" [expr] ";"
               | "print" "(" expr ")" ";"
               | target "=" expr ";"          target: name, member or index
               | NAME "+=" expr ";"
               | expr ";"

Expressions use C-like precedence: || < && < equality < comparison
< additive < multiplicative < unary < postfix (call, index, member).
Function declarations are only allowed at the top level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SampSyntaxError
from .source import SourceFile
from .syntax import (
    And,
    ArrayLit,
    Assign,
    AugAssign,
    Binary,
    Call,
    Expr,
    ExprStmt,
    FnDecl,
    For,
    If,
    Index,
    Let,
    Literal,
    Member,
    Name,
    Or,
    Param,
    Print,
    Program,
    RecordLit,
    Return,
    Span,
    Stmt,
    Unary,
    While,
)

KEYWORDS = frozenset(
    ["let", "if", "else", "while", "for", "in", "fn", "return", "print", "true", "false", "null"]
)

_TWO_CHAR_OPS = ("==", "!=", "<=", ">=", "&&", "||", "+=")
_ONE_CHAR_OPS = "+-*/%<>=!()[]{},;:."

_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "int" | "float" | "string" | "name" | "kw" | "op" | "eof"
    text: str
    value: object
    line: int
    col: int
    end_line: int
    end_col: int

    @property
    def span(self) -> Span:
        return Span(self.line, self.col, self.end_line, self.end_col)


def tokenize(source: SourceFile) -> list[Token]:
    text = source.content
    path = source.path
    tokens: list[Token] = []
    i = 0
    n = len(text)
    line = 1
    col = 1

    def err(msg: str, at_line: int, at_col: int):
        raise SampSyntaxError(path, at_line, at_col, msg)

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        start_line, start_col = line, col
        if c.isdigit():
            j = i
            is_float = False
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                if j + 1 >= n or not text[j + 1].isdigit():
                    err("expected digit after '.'", line, col + (j - i))
                is_float = True
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k >= n or not text[k].isdigit():
                    err("malformed exponent", line, col + (j - i))
                is_float = True
                j = k
                while j < n and text[j].isdigit():
                    j += 1
            lexeme = text[i:j]
            value: object = float(lexeme) if is_float else int(lexeme)
            col += j - i
            tokens.append(Token("float" if is_float else "int", lexeme, value, start_line, start_col, line, col - 1))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            lexeme = text[i:j]
            kind = "kw" if lexeme in KEYWORDS else "name"
            col += j - i
            tokens.append(Token(kind, lexeme, lexeme, start_line, start_col, line, col - 1))
            i = j
            continue
        if c == '"':
            j = i + 1
            out: list[str] = []
            while True:
                if j >= n or text[j] == "\n":
                    err("unterminated string", start_line, start_col)
                ch = text[j]
                if ch == '"':
                    j += 1
                    break
                if ch == "\\":
                    if j + 1 >= n:
                        err("unterminated string", start_line, start_col)
                    esc = text[j + 1]
                    if esc not in _ESCAPES:
                        err(f"unknown escape '\\{esc}'", line, col + (j - i))
                    out.append(_ESCAPES[esc])
                    j += 2
                    continue
                out.append(ch)
                j += 1
            lexeme = text[i:j]
            col += j - i
            tokens.append(Token("string", lexeme, "".join(out), start_line, start_col, line, col - 1))
            i = j
            continue
        two = text[i : i + 2]
        if two in _TWO_CHAR_OPS:
            col += 2
            tokens.append(Token("op", two, two, start_line, start_col, line, col - 1))
            i += 2
            continue
        if c in _ONE_CHAR_OPS:
            col += 1
            tokens.append(Token("op", c, c, start_line, start_col, line, col - 1))
            i += 1
            continue
        err(f"unexpected character {c!r}", line, col)

    tokens.append(Token("eof", "", None, line, col, line, col))
    return tokens


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    return f"'{tok.text}'"


class Parser:
    def __init__(self, source: SourceFile):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0
        self._fn_depth = 0

    # --- token helpers ---

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at_op(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text == text

    def at_kw(self, word: str) -> bool:
        t = self.peek()
        return t.kind == "kw" and t.text == word

    def expect_op(self, text: str) -> Token:
        if not self.at_op(text):
            self.fail(f"expected '{text}', found {_describe(self.peek())}")
        return self.next()

    def expect_name(self, what: str = "name") -> Token:
        t = self.peek()
        if t.kind != "name":
            self.fail(f"expected {what}, found {_describe(t)}")
        return self.next()

    def fail(self, msg: str, tok: Token | None = None):
        t = tok or self.peek()
        raise SampSyntaxError(self.source.path, t.line, t.col, msg)

    # --- entry point ---

    def parse_program(self) -> Program:
        functions: list[FnDecl] = []
        body: list[Stmt] = []
        seen: dict[str, FnDecl] = {}
        while self.peek().kind != "eof":
            if self.at_kw("fn"):
                fn = self.parse_fn_decl()
                if fn.name in seen:
                    self.fail(f"duplicate function '{fn.name}'", tok_of_span(fn.name_span))
                seen[fn.name] = fn
                functions.append(fn)
            else:
                body.append(self.parse_statement())
        if functions or body:
            first = functions[0].span if functions else body[0].span
            nodes = [*functions, *body]
            last = nodes[-1].span
            for node in nodes:
                if node.span.start_line < first.start_line or (
                    node.span.start_line == first.start_line and node.span.start_col < first.start_col
                ):
                    first = node.span
            span = Span(first.start_line, first.start_col, last.end_line, last.end_col)
        else:
            span = Span(1, 1, 1, 1)
        return Program(self.source, functions, body, span)

    def parse_fn_decl(self) -> FnDecl:
        start = self.next()  # fn
        name_tok = self.expect_name("function name")
        self.expect_op("(")
        params: list[Param] = []
        if not self.at_op(")"):
            while True:
                p = self.expect_name("parameter name")
                params.append(Param(p.text, p.span))
                if self.at_op(","):
                    self.next()
                    continue
                break
        self.expect_op(")")
        self._fn_depth += 1
        body, end = self.parse_block()
        self._fn_depth -= 1
        span = Span(start.line, start.col, end.end_line, end.end_col)
        return FnDecl(name_tok.text, name_tok.span, params, body, span)

    def parse_block(self) -> tuple[list[Stmt], Token]:
        """A braced statement list, or a single statement."""
        if self.at_op("{"):
            self.next()
            stmts: list[Stmt] = []
            while not self.at_op("}"):
                if self.peek().kind == "eof":
                    self.fail("expected '}', found end of input")
                stmts.append(self.parse_statement())
            closing = self.next()
            return stmts, closing
        stmt = self.parse_statement()
        return [stmt], _token_at_end(stmt.span)

    # --- statements ---

    def parse_statement(self) -> Stmt:
        t = self.peek()
        if t.kind == "kw":
            if t.text == "fn":
                self.fail("function declarations are only allowed at the top level")
            if t.text == "let":
                return self.parse_let()
            if t.text == "if":
                return self.parse_if()
            if t.text == "while":
                return self.parse_while()
            if t.text == "for":
                return self.parse_for()
            if t.text == "return":
                return self.parse_return()
            if t.text == "print":
                return self.parse_print()
            if t.text == "else":
                self.fail("unexpected 'else'")
        return self.parse_assign_or_expr()

    def parse_let(self) -> Let:
        start = self.next()
        name_tok = self.expect_name("variable name")
        self.expect_op("=")
        value = self.parse_expr()
        semi = self.expect_op(";")
        return Let(name_tok.text, name_tok.span, value, _span_between(start, semi))

    def parse_if(self) -> If:
        start = self.next()
        self.expect_op("(")
        cond = self.parse_expr()
        self.expect_op(")")
        then_body, end = self.parse_block()
        else_body = None
        if self.at_kw("else"):
            self.next()
            else_body, end = self.parse_block()
        return If(cond, then_body, else_body, Span(start.line, start.col, end.end_line, end.end_col))

    def parse_while(self) -> While:
        start = self.next()
        self.expect_op("(")
        cond = self.parse_expr()
        self.expect_op(")")
        body, end = self.parse_block()
        return While(cond, body, Span(start.line, start.col, end.end_line, end.end_col))

    def parse_for(self) -> For:
        start = self.next()
        self.expect_op("(")
        var_tok = self.expect_name("loop variable")
        if not self.at_kw("in"):
            self.fail(f"expected 'in', found {_describe(self.peek())}")
        self.next()
        iterable = self.parse_expr()
        self.expect_op(")")
        body, end = self.parse_block()
        return For(var_tok.text, var_tok.span, iterable, body, Span(start.line, start.col, end.end_line, end.end_col))

    def parse_return(self) -> Return:
        start = self.next()
        if self._fn_depth == 0:
            self.fail("'return' outside of a function", start)
        value = None
        if not self.at_op(";"):
            value = self.parse_expr()
        semi = self.expect_op(";")
        return Return(value, _span_between(start, semi))

    def parse_print(self) -> Print:
        start = self.next()
        self.expect_op("(")
        value = self.parse_expr()
        self.expect_op(")")
        semi = self.expect_op(";")
        return Print(value, _span_between(start, semi))

    def parse_assign_or_expr(self) -> Stmt:
        expr = self.parse_expr()
        if self.at_op("="):
            eq = self.next()
            if type(expr) not in (Name, Member, Index):
                self.fail("invalid assignment target", eq)
            value = self.parse_expr()
            semi = self.expect_op(";")
            span = Span(expr.span.start_line, expr.span.start_col, semi.end_line, semi.end_col)
            return Assign(expr, value, span)
        if self.at_op("+="):
            plus = self.next()
            if type(expr) is not Name:
                self.fail("'+=' target must be a variable name", plus)
            value = self.parse_expr()
            semi = self.expect_op(";")
            span = Span(expr.span.start_line, expr.span.start_col, semi.end_line, semi.end_col)
            return AugAssign(expr.id, expr.span, value, span)
        semi = self.expect_op(";")
        span = Span(expr.span.start_line, expr.span.start_col, semi.end_line, semi.end_col)
        return ExprStmt(expr, span)

    # --- expressions ---

    def parse_expr(self) -> Expr:
        return self.parse_or()

    def parse_or(self) -> Expr:
        left = self.parse_and()
        while self.at_op("||"):
            self.next()
            right = self.parse_and()
            left = Or(left, right, _join(left.span, right.span))
        return left

    def parse_and(self) -> Expr:
        left = self.parse_equality()
        while self.at_op("&&"):
            self.next()
            right = self.parse_equality()
            left = And(left, right, _join(left.span, right.span))
        return left

    def parse_equality(self) -> Expr:
        left = self.parse_comparison()
        while self.at_op("==") or self.at_op("!="):
            op = self.next().text
            right = self.parse_comparison()
            left = Binary(op, left, right, _join(left.span, right.span))
        return left

    def parse_comparison(self) -> Expr:
        left = self.parse_additive()
        while self.at_op("<") or self.at_op("<=") or self.at_op(">") or self.at_op(">="):
            op = self.next().text
            right = self.parse_additive()
            left = Binary(op, left, right, _join(left.span, right.span))
        return left

    def parse_additive(self) -> Expr:
        left = self.parse_multiplicative()
        while self.at_op("+") or self.at_op("-"):
            op = self.next().text
            right = self.parse_multiplicative()
            left = Binary(op, left, right, _join(left.span, right.span))
        return left

    def parse_multiplicative(self) -> Expr:
        left = self.parse_unary()
        while self.at_op("*") or self.at_op("/") or self.at_op("%"):
            op = self.next().text
            right = self.parse_unary()
            left = Binary(op, left, right, _join(left.span, right.span))
        return left

    def parse_unary(self) -> Expr:
        if self.at_op("-") or self.at_op("!"):
            tok = self.next()
            operand = self.parse_unary()
            return Unary(tok.text, operand, Span(tok.line, tok.col, operand.span.end_line, operand.span.end_col))
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        expr = self.parse_primary()
        while True:
            if self.at_op("("):
                self.next()
                args: list[Expr] = []
                if not self.at_op(")"):
                    while True:
                        args.append(self.parse_expr())
                        if self.at_op(","):
                            self.next()
                            continue
                        break
                closing = self.expect_op(")")
                expr = Call(expr, args, Span(expr.span.start_line, expr.span.start_col, closing.end_line, closing.end_col))
            elif self.at_op("["):
                self.next()
                index = self.parse_expr()
                closing = self.expect_op("]")
                expr = Index(expr, index, Span(expr.span.start_line, expr.span.start_col, closing.end_line, closing.end_col))
            elif self.at_op("."):
                self.next()
                field_tok = self.expect_name("field name")
                expr = Member(
                    expr,
                    field_tok.text,
                    field_tok.span,
                    Span(expr.span.start_line, expr.span.start_col, field_tok.end_line, field_tok.end_col),
                )
            else:
                return expr

    def parse_primary(self) -> Expr:
        t = self.peek()
        if t.kind in ("int", "float", "string"):
            self.next()
            return Literal(t.value, t.span)
        if t.kind == "kw" and t.text in ("true", "false", "null"):
            self.next()
            value = None if t.text == "null" else (t.text == "true")
            return Literal(value, t.span)
        if t.kind == "name":
            self.next()
            return Name(t.text, t.span)
        if t.kind == "op" and t.text == "(":
            self.next()
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if t.kind == "op" and t.text == "[":
            start = self.next()
            items: list[Expr] = []
            if not self.at_op("]"):
                while True:
                    items.append(self.parse_expr())
                    if self.at_op(","):
                        self.next()
                        continue
                    break
            closing = self.expect_op("]")
            return ArrayLit(items, _span_between(start, closing))
        if t.kind == "op" and t.text == "{":
            start = self.next()
            fields: list[tuple[str, Expr]] = []
            if not self.at_op("}"):
                while True:
                    key = self.expect_name("field name")
                    self.expect_op(":")
                    fields.append((key.text, self.parse_expr()))
                    if self.at_op(","):
                        self.next()
                        continue
                    break
            closing = self.expect_op("}")
            return RecordLit(fields, _span_between(start, closing))
        self.fail(f"unexpected {_describe(t)}")
        raise AssertionError("unreachable")


def _join(a: Span, b: Span) -> Span:
    return Span(a.start_line, a.start_col, b.end_line, b.end_col)


def _span_between(start: Token, end: Token) -> Span:
    return Span(start.line, start.col, end.end_line, end.end_col)


def _token_at_end(span: Span) -> Token:
    return Token("op", "", None, span.end_line, span.end_col, span.end_line, span.end_col)


def tok_of_span(span: Span) -> Token:
    return Token("name", "", None, span.start_line, span.start_col, span.end_line, span.end_col)


def parse(source: SourceFile) -> Program:
    """Parse a whole source file; raises SampSyntaxError on any malformed input."""
    return Parser(source).parse_program()
