"""Exact arithmetic in Z[v, v^-1], the coefficient ring for everything else.

A polynomial is stored sparsely as an exponent -> coefficient dict with plain
Python integers as coefficients, so arithmetic never overflows or rounds.
Values are immutable and canonical (no zero coefficient is ever stored), which
makes equality structural and hashing safe.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

__all__ = ["LaurentPoly", "ZERO", "ONE", "V", "VINV"]


class LaurentPoly:
    """A Laurent polynomial in one variable v over the integers.

    >>> p = LaurentPoly({1: 1, -1: 1})
    >>> print(p * p)
    v^-2 + 2 + v^2
    >>> print(p - p)
    0
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, int], Iterable[tuple[int, int]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        store: dict[int, int] = {}
        for exp, coeff in items:
            acc = store.get(exp, 0) + coeff
            if acc:
                store[exp] = acc
            elif exp in store:
                del store[exp]
        self._terms = store

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def v(cls, power: int = 1) -> "LaurentPoly":
        """The monomial v^power."""
        return cls({power: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LaurentPoly":
        """Inverse of :meth:`to_pairs`; accepts any [exponent, coefficient] pairs."""
        return cls((int(e), int(c)) for e, c in pairs)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of :meth:`__str__`.

        >>> LaurentPoly.parse("-v^-2 + 3 - 2*v") == LaurentPoly({-2: -1, 0: 3, 1: -2})
        True
        """
        tokens = text.split()
        if tokens == ["0"] or not tokens:
            return cls.zero()
        terms = []
        sign = 1
        if tokens[0].startswith("-"):
            sign = -1
            tokens[0] = tokens[0][1:]
        pos = 0
        while pos < len(tokens):
            body = tokens[pos]
            pos += 1
            mag_str, star, pow_str = body.partition("*")
            if not star and body.startswith("v"):
                mag, pow_str = 1, body
            else:
                mag = int(mag_str)
            if pow_str == "":
                exp = 0
            elif pow_str == "v":
                exp = 1
            elif pow_str.startswith("v^"):
                exp = int(pow_str[2:])
            else:
                raise ValueError(f"malformed term {body!r} in {text!r}")
            terms.append((exp, sign * mag))
            if pos < len(tokens):
                op = tokens[pos]
                pos += 1
                if op == "+":
                    sign = 1
                elif op == "-":
                    sign = -1
                else:
                    raise ValueError(f"malformed operator {op!r} in {text!r}")
        return cls(terms)

    def to_pairs(self) -> list[list[int]]:
        """Serialized form: [exponent, coefficient] pairs sorted by exponent."""
        return [[e, self._terms[e]] for e in sorted(self._terms)]

    def coeff(self, exponent: int) -> int:
        """The coefficient of v^exponent (0 if absent)."""
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Largest exponent; raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def valuation(self) -> int:
        """Smallest exponent; raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self._terms)

    def bar(self) -> "LaurentPoly":
        """Substitute v -> v^-1 (negate every exponent)."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def twist(self) -> "LaurentPoly":
        """Substitute v -> -v^-1: the exponent flips and odd terms change sign."""
        return LaurentPoly({-e: (c if e % 2 == 0 else -c) for e, c in self._terms.items()})

    def in_strict_positive(self) -> bool:
        """True iff the polynomial lies in vZ[v] (every exponent >= 1)."""
        return all(e >= 1 for e in self._terms)

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        if k == 0:
            return self
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            acc = out.get(e, 0) + c
            if acc:
                out[e] = acc
            else:
                del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e: -c for e, c in self._terms.items()}
        return res

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                acc = out.get(e, 0) + c1 * c2
                if acc:
                    out[e] = acc
                elif e in out:
                    del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        return res

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        # constants hash like the ints they equal
        if not self._terms:
            return hash(0)
        if len(self._terms) == 1 and 0 in self._terms:
            return hash(self._terms[0])
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for e in sorted(self._terms):
            c = self._terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                pow_str = "v" if e == 1 else f"v^{e}"
                body = pow_str if mag == 1 else f"{mag}*{pow_str}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms!r})"


def _coerce(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly({0: value})
    return NotImplemented


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
V = LaurentPoly.v(1)
VINV = LaurentPoly.v(-1)
