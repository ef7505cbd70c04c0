from typing import Optional


class RewritingError(ValueError):
    """エンジン全体で使う例外の基底クラス

    コマンド層はこのクラスを捕捉して終了コード2に変換します。
    """


class NotContained(RewritingError):
    """差集合の前提（y ⊆ x）が満たされない"""


class RuleNotEnabled(RewritingError):
    """有効でないルールを適用しようとした"""


class UnknownRule(RewritingError):
    def __init__(self, rule_id: str, line: Optional[int] = None):
        self.rule_id = rule_id
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"Unknown rule: {rule_id}{where}")


class UnknownElement(RewritingError):
    def __init__(self, element: str, line: Optional[int] = None):
        self.element = element
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"Unknown element: {element}{where}")


class DuplicateRule(RewritingError):
    def __init__(self, rule_id: str, line: Optional[int] = None):
        self.rule_id = rule_id
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"Duplicate rule: {rule_id}{where}")


class ReservedName(RewritingError):
    def __init__(self, name: str, line: Optional[int] = None):
        self.name = name
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"Reserved name cannot be declared: {name}{where}")


class ModelSyntaxError(RewritingError):
    """モデルファイル・ランファイルの構文エラー（行・列つき）"""

    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class OmegaSyntaxError(RewritingError):
    """ω正規表現の構文エラー（0始まりの文字位置つき）"""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"position {position}: {message}")


class UnknownSymbol(RewritingError):
    def __init__(self, symbol: str, position: int):
        self.symbol = symbol
        self.position = position
        super().__init__(f"position {position}: unknown symbol {symbol}")


class MalformedOmega(RewritingError):
    """^w の欠落、または空語を導出する式への ^w"""


class NotApplicable(RewritingError):
    """現在の構成で適用可能でないルールによるステップ"""


class ExplosionLimit(RewritingError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"Exploration exceeded {limit} configurations (raise --max-configs)")


class BudgetExceeded(RewritingError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"Step budget of {budget} exhausted before halt")


class ProgramSyntaxError(RewritingError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


class BadTarget(RewritingError):
    def __init__(self, target: int, line: int):
        self.target = target
        self.line = line
        super().__init__(f"line {line}: goto target l{target} out of range")


class MissingHalt(RewritingError):
    pass


class TranslationError(RewritingError):
    """変換元モデルのクラスが要求された変換と一致しない"""
