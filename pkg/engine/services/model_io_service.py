"""モデルファイル（.rmrs）とランファイル（.run）の読み書き

モデルファイルの例:

    format: 1
    elements: A B
    init: {A}
    rules:
      mu1: {A} -> {A, B}
      mu2: {A, B} -> {A}
    regulation: concurrent-free
      mu2 < mu1
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from core.errors import (
    DuplicateRule,
    MalformedOmega,
    ModelSyntaxError,
    OmegaSyntaxError,
    ReservedName,
    UnknownElement,
    UnknownRule,
    UnknownSymbol,
)
from core.multiset import Multiset
from core.rewriting import EPS, TOKEN_RE, Rule, RuleId, System
from omega.expression import parse_omega
from regulation import (
    BaseRegulation,
    ConcurrentFreeRegulation,
    ConditionalRegulation,
    OrderedRegulation,
    ProgrammedRegulation,
    RegularRegulation,
    Unregulated,
)

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
EPS_TAIL = "eps^w"
REGULATION_KEYWORDS = ("none", "regular", "ordered", "programmed", "conditional", "concurrent-free")

Span = Tuple[int, int]

_NEXT_SECTIONS: Dict[Optional[str], Tuple[str, ...]] = {
    None: ("format", "elements"),
    "format": ("elements",),
    "elements": ("init",),
    "init": ("rules",),
    "rules": ("regulation",),
    "regulation": (),
}


@dataclass
class ModelDocument:
    system: System
    regulation: BaseRegulation
    # 構成要素 → (行, 列)。等価性には含めない
    source_spans: Dict[str, Span] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class RunFile:
    labels: Tuple[RuleId, ...]
    omega_eps_tail: bool = False


class _Cursor:
    """1行分の字句走査（列は1始まり）"""

    def __init__(self, text: str, line: int, offset: int = 0):
        self.text = text
        self.line = line
        self.pos = offset

    @property
    def column(self) -> int:
        return self.pos + 1

    def error(self, message: str) -> ModelSyntaxError:
        return ModelSyntaxError(message, self.line, self.column)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self, literal: str) -> bool:
        self.skip_ws()
        return self.text.startswith(literal, self.pos)

    def expect(self, literal: str) -> None:
        if not self.peek(literal):
            found = self.text[self.pos:self.pos + 1] or "end of line"
            raise self.error(f"expected '{literal}', found '{found}'")
        self.pos += len(literal)

    def token(self, what: str = "identifier") -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and TOKEN_RE.match(self.text[self.pos]):
            self.pos += 1
        if start == self.pos:
            raise self.error(f"expected {what}")
        return self.text[start:self.pos]

    def finish(self) -> None:
        if not self.at_end():
            raise self.error(f"unexpected '{self.text[self.pos:]}'")

    def token_list(self, close: str) -> List[str]:
        """`a, b, c` を close の直前まで読む"""
        items: List[str] = []
        if self.peek(close):
            return items
        items.append(self.token())
        while self.peek(","):
            self.expect(",")
            items.append(self.token())
        return items

    def multiset(self) -> Multiset:
        self.expect("{")
        items = self.token_list("}")
        self.expect("}")
        return Multiset.of(items)


def _strip_comment(line: str) -> str:
    index = line.find("#")
    return line if index < 0 else line[:index]


def _header(text: str) -> Optional[Tuple[str, int]]:
    """`name:` で始まる行なら (name, コロン直後の位置)"""
    stripped = text.lstrip()
    indent = len(text) - len(stripped)
    for name in ("format", "elements", "init", "rules", "regulation"):
        if stripped.startswith(name + ":"):
            return name, indent + len(name) + 1
    return None


class ModelIOService:
    """モデルファイルの構文解析と正規形への直列化を行うサービス"""

    # ---------- 解析 ----------
    def parse_model(self, text: str) -> ModelDocument:
        """モデルテキストを解析する

        Raises:
            ModelSyntaxError, DuplicateRule, UnknownElement, UnknownRule, ReservedName
        """
        lines = [(number, _strip_comment(raw)) for number, raw in enumerate(text.splitlines(), start=1)]
        lines = [(number, line) for number, line in lines if line.strip()]

        spans: Dict[str, Span] = {}
        elements: Optional[FrozenSet[str]] = None
        init: Optional[Multiset] = None
        rules: List[Rule] = []
        keyword = "none"
        body: List[Tuple[int, str]] = []
        section: Optional[str] = None

        for number, line in lines:
            header = _header(line)
            # ルール・規制本体の中では、後続の見出しだけを見出しとみなす
            # `regulation: {A} -> {}` は規制見出しではなく regulation という名前のルール
            if header is not None and section == "rules" and line[header[1]:].lstrip().startswith("{"):
                header = None
            if header is not None and (section != "regulation") and (section != "rules" or header[0] == "regulation"):
                name, offset = header
                if name not in _NEXT_SECTIONS[section]:
                    expected = " or ".join(f"'{n}:'" for n in _NEXT_SECTIONS[section])
                    raise ModelSyntaxError(f"expected {expected} before '{name}:'", number)
                section = name
                spans[name] = (number, offset)
                cursor = _Cursor(line, number, offset)
                if name == "format":
                    version = cursor.token("format version")
                    cursor.finish()
                    if version != str(FORMAT_VERSION):
                        raise ModelSyntaxError(f"unsupported format version {version}", number, offset + 1)
                elif name == "elements":
                    elements = self._parse_elements(cursor)
                elif name == "init":
                    init = cursor.multiset()
                    cursor.finish()
                    self._check_elements(init, elements, number)
                elif name == "rules":
                    cursor.finish()
                elif name == "regulation":
                    keyword = self._parse_keyword(cursor)
                continue

            if section == "rules":
                rule = self._parse_rule(line, number, elements, rules)
                spans[f"rule:{rule.id}"] = (number, 1)
                rules.append(rule)
            elif section == "regulation":
                body.append((number, line))
            else:
                raise ModelSyntaxError(f"unexpected line outside any section: '{line.strip()}'", number)

        if elements is None:
            raise ModelSyntaxError("missing 'elements:' section", lines[-1][0] if lines else 1)
        if init is None:
            raise ModelSyntaxError("missing 'init:' section", lines[-1][0] if lines else 1)
        if "rules" not in spans:
            raise ModelSyntaxError("missing 'rules:' section", lines[-1][0] if lines else 1)

        system = System(elements, tuple(rules), init)
        regulation = self._parse_regulation(keyword, body, system, spans)
        logger.info("parsed model: %d rules, regulation %s", len(rules), keyword)
        return ModelDocument(system, regulation, spans)

    def _parse_elements(self, cursor: _Cursor) -> FrozenSet[str]:
        names: List[str] = []
        while not cursor.at_end():
            column = cursor.column
            name = cursor.token("element name")
            if name == EPS:
                raise ReservedName(name, cursor.line)
            if name in names:
                raise ModelSyntaxError(f"duplicate element {name}", cursor.line, column)
            names.append(name)
        return frozenset(names)

    @staticmethod
    def _check_elements(m: Multiset, elements: Optional[FrozenSet[str]], line: int) -> None:
        for element in m.sorted_elements():
            if elements is None or element not in elements:
                raise UnknownElement(element, line)

    def _parse_keyword(self, cursor: _Cursor) -> str:
        cursor.skip_ws()
        column = cursor.column
        word = cursor.text[cursor.pos:].strip()
        if word not in REGULATION_KEYWORDS:
            raise ModelSyntaxError(f"unknown regulation class '{word}'", cursor.line, column)
        return word

    def _parse_rule(self, line: str, number: int, elements: Optional[FrozenSet[str]], rules: List[Rule]) -> Rule:
        cursor = _Cursor(line, number)
        rule_id = cursor.token("rule id")
        if rule_id == EPS:
            raise ReservedName(rule_id, number)
        if any(r.id == rule_id for r in rules):
            raise DuplicateRule(rule_id, number)
        cursor.expect(":")
        lhs = cursor.multiset()
        cursor.expect("->")
        rhs = cursor.multiset()
        cursor.finish()
        self._check_elements(lhs, elements, number)
        self._check_elements(rhs, elements, number)
        return Rule(rule_id, lhs, rhs)

    def _rule_token(self, cursor: _Cursor, system: System) -> RuleId:
        rule_id = cursor.token("rule id")
        if rule_id == EPS:
            raise ReservedName(rule_id, cursor.line)
        if not system.has_rule(rule_id):
            raise UnknownRule(rule_id, cursor.line)
        return rule_id

    def _parse_regulation(
        self,
        keyword: str,
        body: List[Tuple[int, str]],
        system: System,
        spans: Dict[str, Span],
    ) -> BaseRegulation:
        if keyword == "none":
            if body:
                raise ModelSyntaxError("regulation 'none' takes no body", body[0][0])
            return Unregulated()
        if keyword == "regular":
            return self._parse_regular(body, system, spans)

        pairs: Set[Tuple[RuleId, RuleId]] = set()
        succ: Dict[RuleId, FrozenSet[RuleId]] = {}
        forbid: Dict[RuleId, Set[Multiset]] = {}
        for number, line in body:
            cursor = _Cursor(line, number)
            first = self._rule_token(cursor, system)
            if keyword in ("ordered", "concurrent-free"):
                cursor.expect("<")
                pairs.add((first, self._rule_token(cursor, system)))
            elif keyword == "programmed":
                if first in succ:
                    raise ModelSyntaxError(f"second successor set for {first}", number)
                cursor.expect("->")
                cursor.expect("{")
                targets: List[RuleId] = []
                if not cursor.peek("}"):
                    targets.append(self._rule_token(cursor, system))
                    while cursor.peek(","):
                        cursor.expect(",")
                        targets.append(self._rule_token(cursor, system))
                cursor.expect("}")
                succ[first] = frozenset(targets)
            else:
                cursor.expect(":")
                column = cursor.column
                if cursor.token("'forbid'") != "forbid":
                    raise ModelSyntaxError("expected 'forbid'", number, column)
                context = cursor.multiset()
                self._check_elements(context, system.elements, number)
                forbid.setdefault(first, set()).add(context)
            cursor.finish()
            spans.setdefault(f"zeta:{first}", (number, 1))

        if keyword == "ordered":
            return OrderedRegulation(frozenset(pairs))
        if keyword == "concurrent-free":
            return ConcurrentFreeRegulation(frozenset(pairs))
        if keyword == "programmed":
            return ProgrammedRegulation(succ)
        return ConditionalRegulation({k: frozenset(v) for k, v in forbid.items()})

    def _parse_regular(self, body: List[Tuple[int, str]], system: System, spans: Dict[str, Span]) -> RegularRegulation:
        if len(body) != 1:
            line = body[1][0] if body else spans["regulation"][0]
            raise ModelSyntaxError("regular regulation takes exactly one 'zeta = ...' line", line)
        number, line = body[0]
        cursor = _Cursor(line, number)
        if cursor.token("'zeta'") != "zeta":
            raise ModelSyntaxError("expected 'zeta'", number)
        cursor.expect("=")
        offset = cursor.pos
        spans["zeta"] = (number, offset + 1)
        try:
            expr = parse_omega(line[offset:], system.rule_ids)
        except UnknownSymbol as e:
            raise UnknownRule(e.symbol, number) from e
        except OmegaSyntaxError as e:
            raise ModelSyntaxError(str(e).split(": ", 1)[1], number, offset + e.position + 1) from e
        except MalformedOmega as e:
            raise ModelSyntaxError(str(e), number, offset + 1) from e
        return RegularRegulation(expr)

    # ---------- 直列化 ----------
    def serialize_model(self, document: ModelDocument) -> str:
        """正規形テキスト（要素はソート、ルールは宣言順）"""
        system, regulation = document.system, document.regulation
        lines = [
            f"format: {FORMAT_VERSION}",
            ("elements: " + " ".join(sorted(system.elements))).rstrip(),
            f"init: {system.init.literal()}",
            "rules:",
        ]
        lines += [f"  {rule.text()}" for rule in system.rules]
        lines.append(f"regulation: {regulation.keyword}")
        lines += [f"  {entry}" for entry in self._regulation_body(system, regulation)]
        return "\n".join(lines) + "\n"

    @staticmethod
    def _regulation_body(system: System, regulation: BaseRegulation) -> List[str]:
        if isinstance(regulation, RegularRegulation):
            return [f"zeta = {regulation.expr.text()}"]
        if isinstance(regulation, (OrderedRegulation, ConcurrentFreeRegulation)):
            return [f"{a} < {b}" for a, b in sorted(regulation.pairs, key=lambda p: (system.order_of(p[0]), system.order_of(p[1])))]
        if isinstance(regulation, ProgrammedRegulation):
            out = []
            for rule_id in system.rule_ids:
                if rule_id not in regulation.succ:
                    continue
                targets = sorted(regulation.successors(rule_id), key=system.order_of)
                out.append(f"{rule_id} -> {{ {', '.join(targets)} }}" if targets else f"{rule_id} -> {{ }}")
            return out
        if isinstance(regulation, ConditionalRegulation):
            out = []
            for rule_id in system.rule_ids:
                for context in sorted(regulation.contexts(rule_id), key=Multiset.sort_key):
                    out.append(f"{rule_id}: forbid {context.literal()}")
            return out
        return []

    # ---------- ランファイル ----------
    def parse_run(self, text: str, system: Optional[System] = None) -> RunFile:
        """空白区切りのルールID列。最後のトークンに限り eps^w を置ける"""
        tokens: List[Tuple[str, int, int]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = _strip_comment(raw)
            column = 0
            for word in line.split():
                column = line.index(word, column)
                tokens.append((word, number, column + 1))
                column += len(word)

        labels: List[RuleId] = []
        tail = False
        for index, (word, number, column) in enumerate(tokens):
            if word == EPS_TAIL:
                if index != len(tokens) - 1:
                    raise ModelSyntaxError("'eps^w' must be the last token", number, column)
                tail = True
                continue
            if not TOKEN_RE.match(word):
                raise ModelSyntaxError(f"bad rule id '{word}'", number, column)
            if system is not None and word != EPS and not system.has_rule(word):
                raise UnknownRule(word, number)
            labels.append(word)
        return RunFile(tuple(labels), tail)

    # ---------- ファイル ----------
    def load_model(self, path: str) -> ModelDocument:
        with open(path, "r", encoding="utf-8") as f:
            return self.parse_model(f.read())

    def load_run(self, path: str, system: Optional[System] = None) -> RunFile:
        with open(path, "r", encoding="utf-8") as f:
            return self.parse_run(f.read(), system)

    def write_model(self, document: ModelDocument, path: str) -> None:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.serialize_model(document))
