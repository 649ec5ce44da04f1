"""Hecke algebra elements in the standard basis {H_x}.

An element is a finitely supported map from group elements to Laurent
polynomials.  The algebra object owns the group context plus the memo table
for basis inverses, which back both the duality involution (v -> v^-1,
H_x -> inverse of H_{x^-1}) and the twist involution (v -> -v^-1, H_x fixed).
General products decompose the right factor along reduced words and apply the
generator-level multiplication rules repeatedly.
"""

from __future__ import annotations

from typing import Mapping, Union

from .laurent import LaurentPoly, ONE, V, VINV

__all__ = ["HeckeAlgebra", "HeckeElement", "ConsistencyError"]

_VINV_MINUS_V = VINV - V
_V_MINUS_VINV = V - VINV


class ConsistencyError(Exception):
    """Two routes that must agree exactly produced different elements."""


class HeckeElement:
    """An element of the Hecke algebra, coordinates in the H-basis.

    Immutable; supports +, -, scalar multiplication by integers or Laurent
    polynomials, and * for the algebra product.
    """

    __slots__ = ("algebra", "_coords")

    def __init__(self, algebra: "HeckeAlgebra", coords: dict[int, LaurentPoly]):
        # Internal constructor: `coords` must already be canonical (no zero
        # polynomials).  Use HeckeAlgebra.element() to build from raw data.
        self.algebra = algebra
        self._coords = coords

    def support(self) -> list[int]:
        """Element ids carrying a nonzero coordinate, in id order."""
        return sorted(self._coords)

    def coeff(self, x: int) -> LaurentPoly:
        return self._coords.get(x, LaurentPoly.zero())

    def items(self) -> list[tuple[int, LaurentPoly]]:
        return [(x, self._coords[x]) for x in sorted(self._coords)]

    def is_zero(self) -> bool:
        return not self._coords

    def __bool__(self) -> bool:
        return bool(self._coords)

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check_same(other)
        out = dict(self._coords)
        for x, p in other._coords.items():
            _acc(out, x, p)
        return HeckeElement(self.algebra, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        self._check_same(other)
        out = dict(self._coords)
        for x, p in other._coords.items():
            _acc(out, x, -p)
        return HeckeElement(self.algebra, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.algebra, {x: -p for x, p in self._coords.items()})

    def scaled(self, factor: Union[LaurentPoly, int]) -> "HeckeElement":
        if isinstance(factor, int):
            factor = LaurentPoly({0: factor})
        out = {}
        for x, p in self._coords.items():
            q = p * factor
            if q:
                out[x] = q
        return HeckeElement(self.algebra, out)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra.mul(self, other)
        if isinstance(other, (LaurentPoly, int)):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            return self.scaled(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra.ctx is other.algebra.ctx and self._coords == other._coords

    def __hash__(self):
        return hash((id(self.algebra.ctx), frozenset(self._coords.items())))

    def _check_same(self, other: "HeckeElement"):
        if self.algebra.ctx is not other.algebra.ctx:
            raise ValueError("elements live over different group contexts")

    def __str__(self) -> str:
        if not self._coords:
            return "0"
        ctx = self.algebra.ctx
        parts = []
        for x in sorted(self._coords):
            word = ".".join(str(s + 1) for s in ctx.word(x)) or "e"
            parts.append(f"({self._coords[x]})*H[{word}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<HeckeElement {self}>"


def _acc(out: dict[int, LaurentPoly], x: int, p: LaurentPoly):
    q = out.get(x)
    q = p if q is None else q + p
    if q:
        out[x] = q
    elif x in out:
        del out[x]


class HeckeAlgebra:
    """The Hecke algebra of one group context, with its memo tables.

    Memo tables follow a fill-once contract: entries are pure values, so
    recomputing one is idempotent and concurrent reads are safe.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        self._inverse_memo: dict[int, HeckeElement] = {}

    # -- constructors ------------------------------------------------------

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def unit(self) -> HeckeElement:
        return HeckeElement(self, {0: ONE})

    def basis(self, x: int) -> HeckeElement:
        """The basis element H_x."""
        return HeckeElement(self, {x: ONE})

    def element(self, coords: Mapping[int, Union[LaurentPoly, int]]) -> HeckeElement:
        out = {}
        for x, p in coords.items():
            if isinstance(p, int):
                p = LaurentPoly({0: p})
            if p:
                out[x] = p
        return HeckeElement(self, out)

    def c_gen(self, s: int) -> HeckeElement:
        """The self-dual generator element C_s = H_s + v."""
        x = self.ctx.element_of_word((s,))
        return HeckeElement(self, {x: ONE, 0: V})

    # -- products ----------------------------------------------------------

    def mul_hs(self, a: HeckeElement, s: int, side: str = "left") -> HeckeElement:
        """Multiply by the basis element H_s on the given side.

        H_s H_x = H_{sx} when the length goes up, and H_{sx} + (v^-1 - v) H_x
        when it goes down (mirror rule on the right).
        """
        ctx = self.ctx
        out: dict[int, LaurentPoly] = {}
        for x, p in a._coords.items():
            y = ctx.mult_gen(x, s, side)
            _acc(out, y, p)
            if ctx.length(y) < ctx.length(x):
                _acc(out, x, _VINV_MINUS_V * p)
        return HeckeElement(self, out)

    def mul_cs(self, a: HeckeElement, s: int, side: str = "left") -> HeckeElement:
        """Multiply by C_s = H_s + v on the given side.

        C_s H_x = H_{sx} + v H_x when the length goes up, H_{sx} + v^-1 H_x
        when it goes down.
        """
        ctx = self.ctx
        out: dict[int, LaurentPoly] = {}
        for x, p in a._coords.items():
            y = ctx.mult_gen(x, s, side)
            _acc(out, y, p)
            _acc(out, x, (V if ctx.length(y) > ctx.length(x) else VINV) * p)
        return HeckeElement(self, out)

    def mul(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        """The algebra product a*b.

        The right factor is expanded along reduced words: a*H_x is a chain of
        generator multiplications, and bilinearity does the rest.
        """
        ctx = self.ctx
        out: dict[int, LaurentPoly] = {}
        for x, p in b.items():
            cur = a
            for s in ctx.word(x):
                cur = self.mul_hs(cur, s, "right")
            for y, q in cur._coords.items():
                _acc(out, y, q * p)
        return HeckeElement(self, out)

    def inverse_basis(self, x: int) -> HeckeElement:
        """The expansion of (H_x)^-1 in the H-basis, memoized.

        Follows H_x^-1 = H_y^-1 * H_s^-1 for x = s*y with length dropping,
        where H_s^-1 = H_s + (v - v^-1).
        """
        got = self._inverse_memo.get(x)
        if got is not None:
            return got
        if x == 0:
            inv = self.unit()
        else:
            s = min(self.ctx.descents(x, "left"))
            y = self.ctx.mult_gen(x, s, "left")
            prev = self.inverse_basis(y)
            inv = self.mul_hs(prev, s, "right") + prev.scaled(_V_MINUS_VINV)
        self._inverse_memo[x] = inv
        return inv

    # -- involutions and the form ------------------------------------------

    def dualize(self, a: HeckeElement) -> HeckeElement:
        """The duality involution: v -> v^-1 on coefficients, H_x -> (H_{x^-1})^-1."""
        ctx = self.ctx
        out: dict[int, LaurentPoly] = {}
        for x, p in a._coords.items():
            pbar = p.bar()
            for y, q in self.inverse_basis(ctx.inverse(x))._coords.items():
                _acc(out, y, pbar * q)
        return HeckeElement(self, out)

    def b_twist(self, a: HeckeElement) -> HeckeElement:
        """The twist involution: v -> -v^-1 on coefficients, every H_x fixed."""
        return HeckeElement(
            self, {x: p.twist() for x, p in a._coords.items()})

    def ext_form(self, a: HeckeElement, b: HeckeElement) -> LaurentPoly:
        """The symmetric bilinear form making {H_x} orthonormal."""
        small, big = (a._coords, b._coords) if len(a._coords) <= len(b._coords) \
            else (b._coords, a._coords)
        total = LaurentPoly.zero()
        for x, p in small.items():
            q = big.get(x)
            if q is not None:
                total = total + p * q
        return total

    # -- basis conversion ---------------------------------------------------

    def to_t_basis(self, a: HeckeElement) -> dict[int, LaurentPoly]:
        """Coordinates in the unnormalized basis {T_x}: H_x = v^len(x) T_x."""
        ctx = self.ctx
        return {x: p.shifted(ctx.length(x)) for x, p in a.items()}

    def from_t_basis(self, coords: Mapping[int, LaurentPoly]) -> HeckeElement:
        ctx = self.ctx
        return self.element({x: p.shifted(-ctx.length(x)) for x, p in coords.items()})

    # -- serialization -------------------------------------------------------

    def to_json_obj(self, a: HeckeElement) -> dict:
        """JSON form: H-basis terms keyed by canonical words (1-based indices)."""
        ctx = self.ctx
        return {
            "basis": "H",
            "terms": [
                {"word": [s + 1 for s in ctx.word(x)], "poly": p.to_pairs()}
                for x, p in a.items()
            ],
        }

    def from_json_obj(self, obj: Mapping) -> HeckeElement:
        if obj.get("basis") != "H":
            raise ValueError(f"unsupported basis {obj.get('basis')!r}")
        out: dict[int, Union[LaurentPoly, int]] = {}
        for term in obj["terms"]:
            x = self.ctx.element_of_word([s - 1 for s in term["word"]])
            out[x] = LaurentPoly.from_pairs(term["poly"])
        return self.element(out)
