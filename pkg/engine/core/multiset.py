from collections import Counter
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import NotContained


class Multiset(Mapping[str, int]):
    """要素→重複度の有限写像（不変値）

    重複度0のエントリは保持しません（正規形）。
    等価性・ハッシュは正規形のエントリで決まります。
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Optional[Mapping[str, int]] = None):
        data: Dict[str, int] = {}
        if counts:
            for element, count in counts.items():
                if count < 0:
                    raise ValueError(f"negative multiplicity for {element}: {count}")
                if count:
                    data[element] = int(count)
        self._counts = data
        self._hash: Optional[int] = None

    @classmethod
    def of(cls, elements: Iterable[str]) -> "Multiset":
        """要素の列から構築する（繰り返し＝重複度）"""
        return cls(Counter(elements))

    # ---------- Mapping ----------
    def __getitem__(self, element: str) -> int:
        return self._counts.get(element, 0)

    def __iter__(self) -> Iterator[str]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, element: object) -> bool:
        return element in self._counts

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Multiset):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Multiset({self.literal()})"

    # ---------- 演算 ----------
    def multiplicity(self, element: str) -> int:
        return self._counts.get(element, 0)

    def is_subset(self, other: "Multiset") -> bool:
        counts = other._counts
        for element, count in self._counts.items():
            if counts.get(element, 0) < count:
                return False
        return True

    def sum_union(self, other: "Multiset") -> "Multiset":
        """加法的和集合（要素ごとの和）"""
        if not other._counts:
            return self
        if not self._counts:
            return other
        data = dict(self._counts)
        for element, count in other._counts.items():
            data[element] = data.get(element, 0) + count
        return Multiset(data)

    def __add__(self, other: "Multiset") -> "Multiset":
        return self.sum_union(other)

    def difference(self, other: "Multiset") -> "Multiset":
        """差集合。other ⊆ self を要求する（飽和させない）"""
        if not other.is_subset(self):
            raise NotContained(f"{other.literal()} is not contained in {self.literal()}")
        if not other._counts:
            return self
        data = dict(self._counts)
        for element, count in other._counts.items():
            data[element] -= count
        return Multiset(data)

    def __sub__(self, other: "Multiset") -> "Multiset":
        return self.difference(other)

    def shares_element(self, other: "Multiset") -> bool:
        return not self._counts.keys().isdisjoint(other._counts.keys())

    # ---------- 表示 ----------
    def sorted_elements(self) -> Tuple[str, ...]:
        out = []
        for element in sorted(self._counts):
            out.extend([element] * self._counts[element])
        return tuple(out)

    def sort_key(self) -> Tuple[str, ...]:
        return self.sorted_elements()

    def literal(self) -> str:
        """テキスト形式 `{A, A, B}`（空は `{}`）"""
        return "{" + ", ".join(self.sorted_elements()) + "}"


EMPTY = Multiset()


def multiplicity(m: Multiset, a: str) -> int:
    return m.multiplicity(a)


def subset(x: Multiset, y: Multiset) -> bool:
    return x.is_subset(y)


def sum_union(x: Multiset, y: Multiset) -> Multiset:
    return x.sum_union(y)


def difference(x: Multiset, y: Multiset) -> Multiset:
    return x.difference(y)
