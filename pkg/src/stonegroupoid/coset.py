"""Todd-Coxeter coset enumeration (HLT strategy with coincidence handling).

Letters are encoded as integers: generator ``i`` is ``2*i`` and its inverse
is ``2*i + 1``, so ``letter ^ 1`` inverts a letter.  A word is a sequence of
letters.  The implementation follows the HLT + COINCIDENCE procedures of Holt,
Eick & O'Brien, *Handbook of Computational Group Theory*, ch. 5.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Sequence

from .errors import EnumerationLimit

Word = Sequence[int]

DEFAULT_MAX_COSETS = 200_000


def inverse_word(word: Word) -> list[int]:
    return [letter ^ 1 for letter in reversed(word)]


class CosetTable:
    """Coset table for the subgroup generated by ``subgroup`` in
    ``< ngens generators | relators >``."""

    def __init__(self, ngens: int, relators: Iterable[Word],
                 subgroup: Iterable[Word] = (), max_cosets: int = DEFAULT_MAX_COSETS):
        self.ngens = ngens
        self.ncols = 2 * ngens
        self.relators = [list(r) for r in relators if len(r) > 0]
        self.subgroup = [list(w) for w in subgroup if len(w) > 0]
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.p: list[int] = [0]
        self._enumerated = False

    # -- primitives -------------------------------------------------------

    def _rep(self, k: int) -> int:
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self._rep(k), self._rep(l)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.p[hi] = lo
        queue.append(hi)

    def _define(self, a: int, x: int) -> int:
        if len(self.table) >= self.max_cosets:
            raise EnumerationLimit(f"coset enumeration exceeded {self.max_cosets} cosets")
        b = len(self.table)
        self.table.append([-1] * self.ncols)
        self.p.append(b)
        self.table[a][x] = b
        self.table[b][x ^ 1] = a
        return b

    def _coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                table[d][x ^ 1] = -1
                mu, nu = self._rep(g), self._rep(d)
                if table[mu][x] >= 0:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] >= 0:
                    self._merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def _scan_and_fill(self, a: int, word: list[int]) -> None:
        table = self.table
        r = len(word)
        f, b = a, a
        i, j = 0, r - 1
        while True:
            while i <= j and table[f][word[i]] >= 0:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != a:
                    self._coincidence(f, a)
                return
            while j >= i and table[b][word[j] ^ 1] >= 0:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            self._define(f, word[i])

    # -- driver -----------------------------------------------------------

    def enumerate(self) -> "CosetTable":
        if self._enumerated:
            return self
        for w in self.subgroup:
            self._scan_and_fill(0, w)
        a = 0
        while a < len(self.table):
            if self.p[a] == a:
                for rel in self.relators:
                    if self.p[a] != a:
                        break
                    self._scan_and_fill(a, rel)
                if self.p[a] == a:
                    for x in range(self.ncols):
                        if self.table[a][x] < 0:
                            self._define(a, x)
            a += 1
        self._compact()
        self._enumerated = True
        return self

    def _compact(self) -> None:
        live = [c for c in range(len(self.table)) if self.p[c] == c]
        index = {c: k for k, c in enumerate(live)}
        self.table = [[index[self._rep(d)] for d in self.table[c]] for c in live]
        self.p = list(range(len(live)))

    @property
    def index(self) -> int:
        return len(self.enumerate().table)

    def act(self, coset: int, word: Word) -> int:
        table = self.enumerate().table
        for letter in word:
            coset = table[coset][letter]
        return coset


def transversal_words(table: CosetTable) -> list[list[int]]:
    """Shortest words (BFS order) carrying coset 0 to each coset."""
    rows = table.enumerate().table
    words: list[list[int] | None] = [None] * len(rows)
    words[0] = []
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(table.ncols):
            d = rows[c][x]
            if words[d] is None:
                words[d] = words[c] + [x]
                queue.append(d)
    return words  # type: ignore[return-value]


def regular_multiplication(table: CosetTable) -> list[list[int]]:
    """Multiplication table of the group enumerated over the trivial subgroup.

    Coset ``c`` stands for the element ``w_c`` with ``0 . w_c = c``; the
    product ``c1 * c2`` is ``c1 . w_{c2}``.
    """
    words = transversal_words(table)
    n = len(words)
    return [[table.act(c1, words[c2]) for c2 in range(n)] for c1 in range(n)]


_TOKEN = re.compile(r"\[(\w),(\w)\]|(\w)(?:\^(-?\d+))?")


def parse_relators(text: str, generators: str) -> list[list[int]]:
    """Parse ``"a^4, b^2, b a b a"`` style relators into letter lists.

    ``[a,b]`` is the commutator ``a^-1 b^-1 a b``.
    """
    gens = {g: i for i, g in enumerate(generators)}
    out = []
    for chunk in re.split(r",(?![^\[]*\])", text):
        chunk = chunk.strip()
        if not chunk:
            continue
        word: list[int] = []
        for m in _TOKEN.finditer(chunk.replace(" ", "")):
            if m.group(1):
                a, b = 2 * gens[m.group(1)], 2 * gens[m.group(2)]
                word += [a ^ 1, b ^ 1, a, b]
            else:
                letter = 2 * gens[m.group(3)]
                e = int(m.group(4)) if m.group(4) else 1
                word += [letter ^ 1] * (-e) if e < 0 else [letter] * e
        out.append(word)
    return out
