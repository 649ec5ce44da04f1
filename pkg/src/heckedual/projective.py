"""The projective basis {P_x}: the basis dual to {C_x} under the Ext form.

It exists for finite groups only and is built by a descending recursion from
the top element: P_{w0} = H_{w0} and, for an ascent s of x,

    P_x = b(C_s) * P_{sx}  -  sum over y of p_y * P_y,
    p_y = <b(C_s) * P_{sx}, C_y>,

where b is the twist involution (so b(C_s) = H_s - v^-1).  All correction
coefficients are read off the fixed element b(C_s) * P_{sx}; only y strictly
longer than x can contribute.  This module also checks the two dualities tying
{P_x} to {C_x}: the self-dual quotient P_x * H_{w0}^-1 and the flagship
identity b(C_x) * H_{w0} = P_{x w0}.
"""

from __future__ import annotations

from .coxeter import IncompleteContextError
from .hecke import ConsistencyError, HeckeElement
from .klbasis import KLBasis
from .laurent import LaurentPoly

__all__ = ["ProjectiveBasis"]


class ProjectiveBasis:
    """Memo cache of P_x elements over a complete group context."""

    def __init__(self, kl: KLBasis, ascent_choice: str = "min"):
        if ascent_choice not in ("min", "max"):
            raise ValueError("ascent_choice must be 'min' or 'max'")
        ctx = kl.ctx
        if not ctx.complete:
            raise IncompleteContextError("projective basis requires a finite group")
        self.kl = kl
        self.algebra = kl.algebra
        self.ctx = ctx
        self._pick = min if ascent_choice == "min" else max
        self._w0 = ctx.longest_element()
        self._memo: dict[int, HeckeElement] = {}
        # b(C_s) = H_s - v^-1, one per generator
        self._bcs = [self.algebra.b_twist(self.algebra.c_gen(s))
                     for s in range(ctx.rank)]

    def element(self, x: int) -> HeckeElement:
        """The basis element P_x."""
        got = self._memo.get(x)
        if got is not None:
            return got
        ctx = self.ctx
        if x == self._w0:
            px = self.algebra.basis(self._w0)
        else:
            ascents = [s for s in range(ctx.rank) if not ctx.is_descent(x, s, "left")]
            s = self._pick(ascents)
            t = ctx.mult_gen(x, s, "left")  # sx, one step longer
            fixed = self.algebra.mul(self._bcs[s], self.element(t))
            lx = ctx.length(x)
            corrections = []
            for y in ctx.elements():
                if ctx.length(y) <= lx:
                    continue
                p = self.algebra.ext_form(fixed, self.kl.element(y))
                if p:
                    corrections.append((y, p))
            px = fixed
            for y, p in corrections:
                px = px - self.element(y).scaled(p)
        self._memo[x] = px
        return px

    def snapshot(self) -> dict[int, list]:
        """The memo table as plain data: x -> [[y, poly pairs], ...], id order."""
        return {x: [[y, p.to_pairs()] for y, p in px.items()]
                for x, px in sorted(self._memo.items())}

    def restore(self, snap: dict[int, list]) -> None:
        """Refill the memo table from :meth:`snapshot` output."""
        size = self.ctx.size
        for x, rows in snap.items():
            if not 0 <= x < size:
                raise ValueError(f"element id {x} out of range")
            coords = {}
            for y, pairs in rows:
                if not 0 <= y < size:
                    raise ValueError(f"element id {y} out of range")
                coords[y] = LaurentPoly.from_pairs(pairs)
            self._memo[x] = self.algebra.element(coords)

    def pairing_matrix(self) -> list[list[LaurentPoly]]:
        """The full matrix <P_x, C_y> in enumeration order (expected: identity)."""
        ctx = self.ctx
        cs = [self.kl.element(y) for y in ctx.elements()]
        return [[self.algebra.ext_form(self.element(x), cy) for cy in cs]
                for x in ctx.elements()]

    def self_dual_quotient(self, x: int) -> HeckeElement:
        """The element C^x with P_x = C^x * H_{w0}, checked to be duality-fixed."""
        quotient = self.algebra.mul(
            self.element(x), self.algebra.inverse_basis(self._w0))
        if self.algebra.dualize(quotient) != quotient:
            raise ConsistencyError(f"P_x * H_w0^-1 is not self-dual at x={x}")
        return quotient

    def tilting_duality(self, x: int) -> bool:
        """Whether b(C_x) * H_{w0} equals P_{x w0}, each side built independently."""
        lhs = self.algebra.mul(
            self.algebra.b_twist(self.kl.element(x)),
            self.algebra.basis(self._w0))
        rhs = self.element(self.ctx.multiply(x, self._w0))
        return lhs == rhs
