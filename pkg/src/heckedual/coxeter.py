"""Coxeter systems (W, S): enumeration, lengths, descents, Bruhat order.

A :class:`GroupContext` is built by breadth-first search from the identity
over right multiplication by generators, so the length of an element is its
BFS depth and no classical length formula is ever trusted.  Specialized
engines realize the classified families cheaply (type A as permutations,
type B as signed permutations, type D as even-signed permutations, I2(m) as
rotation/flip pairs); any other matrix falls back to a generic engine whose
element identity is the ShortLex-minimal reduced word, canonicalized by
braid-move closure.

Element handles are dense integers 0..size-1, ordered by (length, ShortLex
canonical word); the identity is always 0.
"""

from __future__ import annotations

import collections
from dataclasses import dataclass
from typing import Iterable, Optional

__all__ = [
    "CoxeterMatrix",
    "GroupContext",
    "build",
    "INFINITE",
    "CoxeterError",
    "OutOfWindowError",
    "IncompleteContextError",
    "EnumerationCapError",
]

# Matrix entry encoding m_st = infinity (also used by the file format).
INFINITE = 0

# Cayley-table marker for products that leave a truncated window.
_OUT = -1

DEFAULT_ELEMENT_CAP = 10**6


class CoxeterError(Exception):
    """Base class for group-construction and query errors."""


class OutOfWindowError(CoxeterError):
    """A product left the length window of a truncated context."""


class IncompleteContextError(CoxeterError):
    """An operation needing a fully enumerated finite group got a truncated one."""


class EnumerationCapError(CoxeterError):
    """BFS exceeded the element cap before closing."""


@dataclass(frozen=True)
class CoxeterMatrix:
    """The presentation datum: m[i][j] is the order of s_i s_j, 0 meaning infinity.

    >>> CoxeterMatrix.from_shorthand("A:2").entries
    ((1, 3), (3, 1))
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise ValueError("rank must be positive")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            for j, m in enumerate(row):
                if i == j:
                    if m != 1:
                        raise ValueError(f"diagonal entry m[{i}][{i}] must be 1, got {m}")
                elif m != INFINITE and m < 2:
                    raise ValueError(f"off-diagonal entry m[{i}][{j}] must be >= 2 or 0, got {m}")
                if m != self.entries[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "CoxeterMatrix":
        return cls(tuple(tuple(int(m) for m in row) for row in rows))

    @classmethod
    def _chain(cls, rank: int, bonds: dict[tuple[int, int], int]) -> "CoxeterMatrix":
        rows = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for (i, j), m in bonds.items():
            rows[i][j] = rows[j][i] = m
        return cls.from_rows(rows)

    @classmethod
    def type_a(cls, n: int) -> "CoxeterMatrix":
        if n < 1:
            raise ValueError("type A needs rank >= 1")
        return cls._chain(n, {(i, i + 1): 3 for i in range(n - 1)})

    @classmethod
    def type_b(cls, n: int) -> "CoxeterMatrix":
        if n < 2:
            raise ValueError("type B needs rank >= 2")
        bonds = {(0, 1): 4}
        bonds.update({(i, i + 1): 3 for i in range(1, n - 1)})
        return cls._chain(n, bonds)

    @classmethod
    def type_d(cls, n: int) -> "CoxeterMatrix":
        # Generators 0 and 1 are the fork, both bonded to 2.
        if n < 3:
            raise ValueError("type D needs rank >= 3")
        bonds = {(0, 2): 3}
        bonds.update({(i, i + 1): 3 for i in range(1, n - 1)})
        return cls._chain(n, bonds)

    @classmethod
    def dihedral(cls, m: int) -> "CoxeterMatrix":
        """I2(m); m = 0 gives the infinite dihedral group."""
        if m != INFINITE and m < 2:
            raise ValueError("I2(m) needs m >= 2 (or 0 for infinity)")
        return cls.from_rows([[1, m], [m, 1]])

    @classmethod
    def type_h(cls, n: int) -> "CoxeterMatrix":
        if n not in (3, 4):
            raise ValueError("type H exists for rank 3 and 4 only")
        bonds = {(0, 1): 5}
        bonds.update({(i, i + 1): 3 for i in range(1, n - 1)})
        return cls._chain(n, bonds)

    @classmethod
    def type_f4(cls) -> "CoxeterMatrix":
        return cls._chain(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3})

    @classmethod
    def from_shorthand(cls, spec: str) -> "CoxeterMatrix":
        """Parse type shorthands: A:n, B:n, D:n, I2:m (I2:inf), H:3, H:4, F:4."""
        label, _, arg = spec.partition(":")
        label = label.strip().upper()
        arg = arg.strip().lower()
        if not arg:
            raise ValueError(f"malformed type shorthand {spec!r}")
        if label == "I2":
            m = 0 if arg in ("inf", "infinity") else int(arg)
            return cls.dihedral(m)
        n = int(arg)
        if label == "A":
            return cls.type_a(n)
        if label == "B":
            return cls.type_b(n)
        if label == "D":
            return cls.type_d(n)
        if label == "H":
            return cls.type_h(n)
        if label == "F":
            if n != 4:
                raise ValueError("type F exists for rank 4 only")
            return cls.type_f4()
        raise ValueError(f"unknown type shorthand {spec!r}")

    @classmethod
    def parse(cls, text: str) -> "CoxeterMatrix":
        """Parse the matrix file format: rank on the first line, then the rows.

        An entry 0 denotes infinity.
        """
        tokens = text.split()
        if not tokens:
            raise ValueError("empty matrix file")
        try:
            values = [int(t) for t in tokens]
        except ValueError as exc:
            raise ValueError(f"malformed matrix file: {exc}") from None
        n = values[0]
        if n < 1 or len(values) != 1 + n * n:
            raise ValueError(f"matrix file needs {n}x{n} entries after the rank line")
        rows = [values[1 + i * n: 1 + (i + 1) * n] for i in range(n)]
        return cls.from_rows(rows)

    @classmethod
    def from_file(cls, path) -> "CoxeterMatrix":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def to_text(self) -> str:
        lines = [str(self.rank)]
        lines += [" ".join(str(m) for m in row) for row in self.entries]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Engines.  Each engine exposes a hashable identity state and right
# multiplication by a generator; everything else (lengths, descents, words,
# inverses, left products) is derived uniformly from the BFS.


class _SymmetricEngine:
    """Type A_n as permutations of {1..n+1}; generator i swaps slots i, i+1."""

    name = "permutation:A"

    def __init__(self, rank: int):
        self.rank = rank
        self.n = rank + 1

    def identity(self):
        return tuple(range(1, self.n + 1))

    def right(self, w, s):
        lst = list(w)
        lst[s], lst[s + 1] = lst[s + 1], lst[s]
        return tuple(lst)


class _SignedEngine:
    """Type B_n as signed permutations; generator 0 negates the first slot."""

    name = "permutation:B"

    def __init__(self, rank: int):
        self.rank = rank

    def identity(self):
        return tuple(range(1, self.rank + 1))

    def right(self, w, s):
        lst = list(w)
        if s == 0:
            lst[0] = -lst[0]
        else:
            lst[s - 1], lst[s] = lst[s], lst[s - 1]
        return tuple(lst)


class _EvenSignedEngine:
    """Type D_n as even-signed permutations; generator 0 negate-swaps slots 1, 2."""

    name = "permutation:D"

    def __init__(self, rank: int):
        self.rank = rank

    def identity(self):
        return tuple(range(1, self.rank + 1))

    def right(self, w, s):
        lst = list(w)
        if s == 0:
            lst[0], lst[1] = -lst[1], -lst[0]
        else:
            lst[s - 1], lst[s] = lst[s], lst[s - 1]
        return tuple(lst)


class _DihedralEngine:
    """I2(m) as pairs (rotation, flip); m = 0 leaves the rotation unbounded."""

    name = "dihedral"

    def __init__(self, m: int):
        self.m = m

    def identity(self):
        return (0, 0)

    def right(self, state, s):
        a, b = state
        if s == 1:
            a += 1 if b == 0 else -1
            if self.m:
                a %= self.m
        return (a, 1 - b)


class _TitsEngine:
    """Generic engine: elements are ShortLex-minimal reduced words.

    Identity of words is decided by braid-move closure: two reduced words
    represent the same element iff they are connected by braid moves alone,
    so the closure of a reduced word is the full set of reduced words of its
    element and the ShortLex minimum is a canonical form.
    """

    name = "generic"

    def __init__(self, matrix: CoxeterMatrix):
        self.rank = matrix.rank
        # Alternating patterns, indexed by first letter: (s, t, s, ...) of
        # length m_st may be rewritten as (t, s, t, ...).
        pats: list[list[tuple[tuple[int, ...], tuple[int, ...]]]] = [[] for _ in range(self.rank)]
        for s in range(self.rank):
            for t in range(self.rank):
                if s == t:
                    continue
                m = matrix.entry(s, t)
                if m == INFINITE:
                    continue
                pat = tuple((s, t)[i % 2] for i in range(m))
                rep = tuple((t, s)[i % 2] for i in range(m))
                pats[s].append((pat, rep))
        self._pats = pats
        self._closures: dict[tuple[int, ...], frozenset] = {}

    def identity(self):
        return ()

    def right(self, word, s):
        for w in self._closure(word):
            if w and w[-1] == s:
                return min(self._closure(w[:-1]))
        return min(self._closure(word + (s,)))

    def _closure(self, word):
        cached = self._closures.get(word)
        if cached is not None:
            return cached
        seen = {word}
        stack = [word]
        while stack:
            w = stack.pop()
            for i, letter in enumerate(w):
                for pat, rep in self._pats[letter]:
                    end = i + len(pat)
                    if end <= len(w) and w[i:end] == pat:
                        w2 = w[:i] + rep + w[end:]
                        if w2 not in seen:
                            seen.add(w2)
                            stack.append(w2)
        closure = frozenset(seen)
        for w in closure:
            self._closures[w] = closure
        return closure


def _matches_chain(matrix: CoxeterMatrix, bonds: dict[tuple[int, int], int]) -> bool:
    n = matrix.rank
    for i in range(n):
        for j in range(i + 1, n):
            want = bonds.get((i, j), 2)
            if matrix.entry(i, j) != want:
                return False
    return True


def _select_engine(matrix: CoxeterMatrix, engine: str):
    if engine == "generic":
        return _TitsEngine(matrix)
    if engine != "auto":
        raise ValueError(f"unknown engine {engine!r} (expected 'auto' or 'generic')")
    n = matrix.rank
    if n == 1:
        return _SymmetricEngine(1)
    if n == 2:
        return _DihedralEngine(matrix.entry(0, 1))
    if _matches_chain(matrix, {(i, i + 1): 3 for i in range(n - 1)}):
        return _SymmetricEngine(n)
    bonds_b = {(0, 1): 4}
    bonds_b.update({(i, i + 1): 3 for i in range(1, n - 1)})
    if _matches_chain(matrix, bonds_b):
        return _SignedEngine(n)
    bonds_d = {(0, 2): 3}
    bonds_d.update({(i, i + 1): 3 for i in range(1, n - 1)})
    if _matches_chain(matrix, bonds_d):
        return _EvenSignedEngine(n)
    return _TitsEngine(matrix)


# ---------------------------------------------------------------------------


class GroupContext:
    """A built Coxeter group (possibly truncated to a length window).

    All tables are immutable after construction.  Queries are read-only and
    safe to use concurrently; the Bruhat memo is fill-once with idempotent
    entries, so concurrent queries may at worst recompute a value.
    """

    def __init__(self, matrix, engine_name, complete, length_bound,
                 words, lengths, right_table, left_table, inverse_table,
                 left_desc, right_desc):
        self.matrix = matrix
        self.engine_name = engine_name
        self.complete = complete
        self.length_bound = length_bound
        self._words = words
        self._length = lengths
        self._right = right_table
        self._left = left_table
        self._inverse = inverse_table
        self._ldesc = left_desc
        self._rdesc = right_desc
        self._bruhat_memo: dict[tuple[int, int], bool] = {}
        self._w0 = None
        if complete:
            top = max(lengths)
            tops = [x for x, l in enumerate(lengths) if l == top]
            if len(tops) != 1:
                raise CoxeterError("maximal-length element is not unique; invalid Coxeter datum")
            self._w0 = tops[0]

    @property
    def rank(self) -> int:
        return self.matrix.rank

    @property
    def size(self) -> int:
        return len(self._length)

    def __len__(self) -> int:
        return self.size

    def elements(self) -> range:
        """All element ids, in (length, ShortLex canonical word) order."""
        return range(self.size)

    def length(self, x: int) -> int:
        return self._length[x]

    def word(self, x: int) -> tuple[int, ...]:
        """The ShortLex-minimal reduced word of x (0-based generator indices)."""
        return self._words[x]

    def element_of_word(self, word: Iterable[int]) -> int:
        """Multiply out a generator word from the identity."""
        x = 0
        for s in word:
            x = self.mult_gen(x, s, "right")
        return x

    def mult_gen(self, x: int, s: int, side: str = "left") -> int:
        if side == "left":
            y = self._left[x][s]
        elif side == "right":
            y = self._right[x][s]
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        if y == _OUT:
            raise OutOfWindowError(
                f"product leaves the length-{self.length_bound} window")
        return y

    def inverse(self, x: int) -> int:
        return self._inverse[x]

    def descents(self, x: int, side: str = "left") -> frozenset[int]:
        if side == "left":
            return self._ldesc[x]
        if side == "right":
            return self._rdesc[x]
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def is_descent(self, x: int, s: int, side: str = "left") -> bool:
        return s in self.descents(x, side)

    def multiply(self, x: int, y: int) -> int:
        """The group product x*y (walks the reduced word of y)."""
        for s in self._words[y]:
            x = self.mult_gen(x, s, "right")
        return x

    def bruhat_leq(self, y: int, x: int) -> bool:
        """Whether y <= x in Bruhat order (standard descent recursion)."""
        if y == x or y == 0:
            return True
        if self._length[y] >= self._length[x]:
            return False
        key = (y, x)
        memo = self._bruhat_memo
        got = memo.get(key)
        if got is None:
            s = min(self._ldesc[x])
            sx = self._left[x][s]
            if s in self._ldesc[y]:
                got = self.bruhat_leq(self._left[y][s], sx)
            else:
                got = self.bruhat_leq(y, sx)
            memo[key] = got
        return got

    def longest_element(self) -> int:
        if not self.complete:
            raise IncompleteContextError(
                "longest element undefined for infinite/truncated groups")
        return self._w0

    def __repr__(self) -> str:
        state = "complete" if self.complete else f"truncated at {self.length_bound}"
        return (f"GroupContext(rank={self.rank}, size={self.size}, "
                f"engine={self.engine_name!r}, {state})")


def build(matrix: CoxeterMatrix,
          length_bound: Optional[int] = None,
          element_cap: int = DEFAULT_ELEMENT_CAP,
          engine: str = "auto") -> GroupContext:
    """Enumerate the group of `matrix` by BFS from the identity.

    If the group closes before `element_cap` elements the context is complete;
    otherwise enumeration stops at `length_bound` (raising if none was given).

    >>> ctx = build(CoxeterMatrix.type_a(2))
    >>> ctx.size, ctx.complete
    (6, True)
    """
    eng = _select_engine(matrix, engine)
    rank = matrix.rank
    if length_bound is not None and length_bound < 0:
        raise ValueError("length_bound must be non-negative")

    index = {eng.identity(): 0}
    states = [eng.identity()]
    lengths = [0]
    parents: list[tuple[int, int]] = [(-1, -1)]
    right: list[list[int]] = []
    truncated = False

    queue = collections.deque([0])
    while queue:
        x = queue.popleft()
        row = []
        lx = lengths[x]
        for s in range(rank):
            t = eng.right(states[x], s)
            tid = index.get(t)
            if tid is None:
                # BFS pops in length order, so an unseen neighbor is longer.
                if length_bound is not None and lx + 1 > length_bound:
                    row.append(_OUT)
                    truncated = True
                    continue
                if len(states) >= element_cap:
                    if length_bound is None:
                        raise EnumerationCapError(
                            f"no closure within {element_cap} elements: "
                            "unbounded group, bound required")
                    raise EnumerationCapError(
                        f"element cap {element_cap} exceeded at length {lx + 1}")
                tid = len(states)
                index[t] = tid
                states.append(t)
                lengths.append(lx + 1)
                parents.append((x, s))
                queue.append(tid)
            row.append(tid)
        right.append(row)

    complete = not truncated
    del index, states  # identity bookkeeping no longer needed
    n = len(lengths)

    # Witness reduced word per element from the BFS tree.
    def witness(x: int) -> list[int]:
        w = []
        while x != 0:
            x, s = parents[x]
            w.append(s)
        w.reverse()
        return w

    # Inverses: the reversed witness word is a reduced word for x^-1 and all
    # its prefixes stay inside the window.
    inverse = [0] * n
    for x in range(n):
        y = 0
        for s in reversed(witness(x)):
            y = right[y][s]
        inverse[x] = y

    # Left products via s*x = (x^-1 * s)^-1; _OUT propagates (equal lengths).
    left = []
    for x in range(n):
        inv_row = right[inverse[x]]
        left.append([_OUT if inv_row[s] == _OUT else inverse[inv_row[s]]
                     for s in range(rank)])

    def desc_set(table_row, lx):
        return frozenset(s for s in range(rank)
                         if table_row[s] != _OUT and lengths[table_row[s]] < lx)

    ldesc = [desc_set(left[x], lengths[x]) for x in range(n)]

    # ShortLex canonical word: smallest left descent first, greedily.
    words: list[Optional[tuple[int, ...]]] = [None] * n
    words[0] = ()
    def canonical(x: int) -> tuple[int, ...]:
        chain = []
        while words[x] is None:
            s = min(ldesc[x])
            chain.append((x, s))
            x = left[x][s]
        tail = words[x]
        for x, s in reversed(chain):
            tail = (s,) + tail
            words[x] = tail
        return tail

    for x in range(n):
        canonical(x)

    # Relabel ids into (length, canonical word) order; identity stays 0.
    order = sorted(range(n), key=lambda i: (lengths[i], words[i]))
    relabel = [0] * n
    for new, old in enumerate(order):
        relabel[old] = new

    def map_id(i: int) -> int:
        return _OUT if i == _OUT else relabel[i]

    new_words = [words[old] for old in order]
    new_lengths = [lengths[old] for old in order]
    new_right = [[map_id(right[old][s]) for s in range(rank)] for old in order]
    new_left = [[map_id(left[old][s]) for s in range(rank)] for old in order]
    new_inverse = [relabel[inverse[old]] for old in order]
    new_ldesc = [ldesc[old] for old in order]
    new_rdesc = [frozenset(s for s in range(rank)
                           if new_right[x][s] != _OUT
                           and new_lengths[new_right[x][s]] < new_lengths[x])
                 for x in range(n)]

    return GroupContext(
        matrix=matrix,
        engine_name=eng.name,
        complete=complete,
        length_bound=length_bound,
        words=new_words,
        lengths=new_lengths,
        right_table=new_right,
        left_table=new_left,
        inverse_table=new_inverse,
        left_desc=new_ldesc,
        right_desc=new_rdesc,
    )
