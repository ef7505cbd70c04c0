"""ω正規表現（ラッソ和 U.V^w）の構文木とパーサ

文法:
    omega  : lasso ('|' lasso)*
    lasso  : factor ('.' factor)*        最後の因子だけが '^w' を持つ
    factor : atom '*'* ['^w']
    atom   : IDENT | '(' regex ')'
    regex  : seq ('|' seq)*
    seq    : atom '*'* ('.' atom '*'*)*
"""

from dataclasses import dataclass
from typing import Collection, FrozenSet, List, Optional, Tuple, Union as TypingUnion

from core.errors import MalformedOmega, OmegaSyntaxError, UnknownSymbol
from core.rewriting import EPS, TOKEN_RE

# ---------- 構文木 ----------


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Concat:
    items: Tuple["RegexExpr", ...]


@dataclass(frozen=True)
class Union:
    items: Tuple["RegexExpr", ...]


@dataclass(frozen=True)
class Star:
    inner: "RegexExpr"


@dataclass(frozen=True)
class EmptyWord:
    pass


RegexExpr = TypingUnion[Symbol, Concat, Union, Star, EmptyWord]


def concat(items: List[RegexExpr]) -> RegexExpr:
    flat: List[RegexExpr] = []
    for item in items:
        if isinstance(item, Concat):
            flat.extend(item.items)
        elif not isinstance(item, EmptyWord):
            flat.append(item)
    if not flat:
        return EmptyWord()
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def union(items: List[RegexExpr]) -> RegexExpr:
    flat: List[RegexExpr] = []
    for item in items:
        parts = item.items if isinstance(item, Union) else (item,)
        for part in parts:
            if part not in flat:
                flat.append(part)
    if len(flat) == 1:
        return flat[0]
    return Union(tuple(flat))


def star(inner: RegexExpr) -> RegexExpr:
    if isinstance(inner, (Star, EmptyWord)):
        return inner
    return Star(inner)


def nullable(expr: RegexExpr) -> bool:
    """空語を導出するか"""
    if isinstance(expr, (Star, EmptyWord)):
        return True
    if isinstance(expr, Symbol):
        return False
    if isinstance(expr, Concat):
        return all(nullable(i) for i in expr.items)
    return any(nullable(i) for i in expr.items)


def symbols(expr: RegexExpr) -> FrozenSet[str]:
    if isinstance(expr, Symbol):
        return frozenset([expr.name])
    if isinstance(expr, EmptyWord):
        return frozenset()
    if isinstance(expr, Star):
        return symbols(expr.inner)
    out: FrozenSet[str] = frozenset()
    for item in expr.items:
        out |= symbols(item)
    return out


def render(expr: RegexExpr) -> str:
    if isinstance(expr, Symbol):
        return expr.name
    if isinstance(expr, EmptyWord):
        return ""
    if isinstance(expr, Star):
        return _atom(expr.inner) + "*"
    if isinstance(expr, Concat):
        return " . ".join(f"({render(i)})" if isinstance(i, Union) else render(i) for i in expr.items)
    return " | ".join(render(i) for i in expr.items)


def _atom(expr: RegexExpr) -> str:
    if isinstance(expr, (Concat, Union)):
        return f"({render(expr)})"
    return render(expr)


@dataclass(frozen=True)
class Lasso:
    prefix: RegexExpr
    cycle: RegexExpr

    def text(self) -> str:
        tail = _atom(self.cycle) + "^w"
        if isinstance(self.prefix, EmptyWord):
            return tail
        head = f"({render(self.prefix)})" if isinstance(self.prefix, Union) else render(self.prefix)
        return f"{head} . {tail}"


@dataclass(frozen=True)
class OmegaExpr:
    """ラッソの有限和 ⋃ U_i.(V_i)^w"""

    lassos: Tuple[Lasso, ...]

    def text(self) -> str:
        return " | ".join(l.text() for l in self.lassos)

    @property
    def alphabet(self) -> FrozenSet[str]:
        out: FrozenSet[str] = frozenset()
        for lasso in self.lassos:
            out |= symbols(lasso.prefix) | symbols(lasso.cycle)
        return out


def universal_omega(alphabet: List[str]) -> OmegaExpr:
    """Σ*.(Σ)^w: 全ての無限語を受理する式"""
    sigma = union([Symbol(s) for s in alphabet])
    return OmegaExpr((Lasso(star(sigma), sigma),))


# ---------- 字句解析 ----------

TT_IDENT = "IDENT"
TT_DOT = "DOT"
TT_ALT = "ALT"
TT_STAR = "STAR"
TT_OMEGA = "OMEGA"
TT_LPAREN = "LPAREN"
TT_RPAREN = "RPAREN"
TT_EOF = "EOF"

_SINGLE = {".": TT_DOT, "|": TT_ALT, "*": TT_STAR, "(": TT_LPAREN, ")": TT_RPAREN}


@dataclass(frozen=True)
class Token:
    type: str
    value: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], ch, i))
            i += 1
        elif ch == "^":
            if text[i + 1:i + 2] != "w":
                raise OmegaSyntaxError("expected 'w' after '^'", i)
            tokens.append(Token(TT_OMEGA, "^w", i))
            i += 2
        elif TOKEN_RE.match(ch):
            start = i
            while i < len(text) and TOKEN_RE.match(text[i]):
                i += 1
            tokens.append(Token(TT_IDENT, text[start:i], start))
        else:
            raise OmegaSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(Token(TT_EOF, "", len(text)))
    return tokens


# ---------- 構文解析 ----------


class OmegaParser:
    def __init__(self, text: str, known_rules: Collection[str]):
        self.tokens = tokenize(text)
        self.known = set(known_rules) | {EPS}
        self.idx = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.idx]

    def advance(self) -> Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, type_: str) -> Token:
        if self.current.type != type_:
            raise OmegaSyntaxError(f"expected {type_}, found {self.current.value or 'end of input'}", self.current.pos)
        return self.advance()

    def parse(self) -> OmegaExpr:
        lassos = [self.lasso()]
        while self.current.type == TT_ALT:
            self.advance()
            lassos.append(self.lasso())
        self.expect(TT_EOF)
        return OmegaExpr(tuple(lassos))

    def lasso(self) -> Lasso:
        start = self.current.pos
        factors: List[RegexExpr] = []
        cycle: Optional[RegexExpr] = None
        while True:
            if cycle is not None:
                raise OmegaSyntaxError("'^w' must end its lasso", self.current.pos)
            operand_pos = self.current.pos
            operand = self.starred()
            if self.current.type == TT_OMEGA:
                self.advance()
                if nullable(operand):
                    raise MalformedOmega(f"position {operand_pos}: '^w' applied to an expression deriving the empty word")
                cycle = operand
            else:
                factors.append(operand)
            if self.current.type != TT_DOT:
                break
            self.advance()
        if cycle is None:
            raise MalformedOmega(f"position {start}: lasso has no '^w' tail")
        return Lasso(concat(factors), cycle)

    def starred(self) -> RegexExpr:
        expr = self.atom()
        while self.current.type == TT_STAR:
            self.advance()
            expr = star(expr)
        return expr

    def atom(self) -> RegexExpr:
        tok = self.current
        if tok.type == TT_IDENT:
            self.advance()
            if tok.value not in self.known:
                raise UnknownSymbol(tok.value, tok.pos)
            return Symbol(tok.value)
        if tok.type == TT_LPAREN:
            self.advance()
            expr = self.regex()
            if self.current.type == TT_OMEGA:
                raise MalformedOmega(f"position {self.current.pos}: nested '^w' is not supported")
            self.expect(TT_RPAREN)
            return expr
        raise OmegaSyntaxError(f"unexpected {tok.value or 'end of input'}", tok.pos)

    def regex(self) -> RegexExpr:
        items = [self.seq()]
        while self.current.type == TT_ALT:
            self.advance()
            items.append(self.seq())
        return union(items)

    def seq(self) -> RegexExpr:
        items = [self.starred()]
        while self.current.type == TT_DOT:
            self.advance()
            items.append(self.starred())
        return concat(items)


def parse_omega(text: str, known_rules: Collection[str]) -> OmegaExpr:
    """ω正規表現テキストを解析する

    Args:
        text: 例 "(mu1 . mu2)* . mu3* . eps^w"
        known_rules: 使用可能なルールID（eps は常に可）

    Returns:
        ラッソ和 OmegaExpr
    """
    return OmegaParser(text, known_rules).parse()
