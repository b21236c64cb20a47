"""Finite vector spaces assembled from field factors.

A point of V_n = F_1 x ... x F_k is an integer rank in [0, p^n); factor 0
occupies the least-significant base-p digits, and within a factor the digits
are the polynomial-basis coefficients.  The base-p digits of a rank therefore
double as the GF(p)-coordinates of the point, which is what the radix-p
transform relies on.

The inner product follows the usual convention: plain product on GF(p)
factors, Tr_1^m(a b) on extension factors, summed mod p.
"""
from __future__ import annotations

from functools import lru_cache

from .field import Field, canonical_field


class Space:
    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("a space needs at least one factor")
        p = factors[0].p
        if any(f.p != p for f in factors):
            raise ValueError("all factors must share the same characteristic")
        self.p = p
        self.factors = factors
        self.dim = sum(f.m for f in factors)
        self.size = p ** self.dim
        self._blocks = [f.size for f in factors]
        # digit offset of each factor inside the global rank
        self._shifts = []
        acc = 1
        for f in factors:
            self._shifts.append(acc)
            acc *= f.size
        self._dual_blocks = [self._make_dual_block(f) for f in factors]

    # -- rank <-> coordinates ------------------------------------------------

    def split(self, rank: int) -> tuple[int, ...]:
        out = []
        for b in self._blocks:
            rank, r = divmod(rank, b)
            out.append(r)
        return tuple(out)

    def join(self, parts) -> int:
        rank = 0
        for part, shift in zip(parts, self._shifts):
            rank += part * shift
        return rank

    def digits(self, rank: int) -> tuple[int, ...]:
        p, out = self.p, []
        for _ in range(self.dim):
            rank, d = divmod(rank, p)
            out.append(d)
        return tuple(out)

    def from_digits(self, digits) -> int:
        rank = 0
        for d in reversed(digits):
            rank = rank * self.p + d
        return rank

    def points(self):
        return range(self.size)

    # -- group and scalar structure -------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def sub(self, a: int, b: int) -> int:
        p = self.p
        return self.from_digits([(x - y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def scalar_mul(self, c: int, x: int) -> int:
        p = self.p
        c %= p
        return self.from_digits([(c * d) % p for d in self.digits(x)])

    def negate(self, x: int) -> int:
        return self.scalar_mul(self.p - 1, x)

    # -- inner product ---------------------------------------------------------

    def inner_product(self, a: int, b: int) -> int:
        total = 0
        for f, ra, rb in zip(self.factors, self.split(a), self.split(b)):
            if f.m == 1:
                total += ra * rb
            else:
                total += f.trace(1, f.mul(ra, rb))
        return total % self.p

    def _make_dual_block(self, f: Field):
        """For factor rank r, the packed digits (Tr_1^m(r e_j))_j, so that
        <a, x> = sum_k dual(a)_k x_k over global digits."""
        if f.m == 1:
            return list(range(f.size))
        basis = [f.p ** j for j in range(f.m)]  # ranks of 1, x, x^2, ...
        tr = f._trace_table(1)
        out = []
        for r in range(f.size):
            packed = 0
            for j in reversed(range(f.m)):
                packed = packed * f.p + tr[f.mul(r, basis[j])]
            out.append(packed)
        return out

    def dual_rank(self, a: int) -> int:
        """Rank u with <a, x> = sum_k u_k x_k for all x (digitwise mod p)."""
        parts = [blk[r] for blk, r in zip(self._dual_blocks, self.split(a))]
        rank = 0
        for part, shift in zip(parts, self._shifts):
            rank += part * shift
        return rank

    # -- plumbing ----------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Space) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"Space({list(self.factors)})"

    def to_list(self) -> list:
        return [f.to_dict() for f in self.factors]

    @classmethod
    def from_list(cls, lst) -> "Space":
        return cls([Field.from_dict(d) for d in lst])


@lru_cache(maxsize=None)
def prime_space(p: int, n: int) -> Space:
    """GF(p)^n as n one-dimensional factors."""
    return Space([canonical_field(p, 1)] * n)
