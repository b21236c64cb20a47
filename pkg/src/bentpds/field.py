"""Exact arithmetic in GF(p^m) for odd primes p.

Elements are integer ranks in [0, p^m): the base-p digits of a rank are the
coefficients of the polynomial-basis representation, least-significant digit
first (rank 0 is the additive, rank 1 the multiplicative identity).

Multiplication runs through exp/log tables built from the least-rank
primitive element, so every operation is table-driven and exact.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    InverseOfZero,
    NotADivisor,
    ReducibleModulus,
    SizeGuard,
    ZeroArgument,
    ZeroBeta,
)
from .limits import FIELD_CAP


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over Z_p (coefficient lists, low degree first) ----

def _poly_divmod(num, den, p):
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    for i in range(len(num) - 1, dd - 1, -1):
        c = (num[i] * inv_lead) % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num  # remainder only


def _poly_is_irreducible(coeffs, p) -> bool:
    # trial division against every monic polynomial of degree <= m/2;
    # fine at desk scale, and degree-1 factors double as a root check
    m = len(coeffs) - 1
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = list(tail) + [1]
            if _poly_divmod(coeffs, den, p) == [0]:
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Coefficient sequences are compared most-significant first, which makes
    the selected modulus reproducible across runs.
    """
    if m == 1:
        return (0, 1)
    for msd in itertools.product(range(p), repeat=m):
        coeffs = tuple(reversed(msd)) + (1,)
        if _poly_is_irreducible(coeffs, p):
            return coeffs
    raise ReducibleModulus(f"no irreducible polynomial found for p={p}, m={m}")


class Field:
    """GF(p^m) with explicit exp/log tables; immutable after construction."""

    def __init__(self, p: int, m: int, modulus=None):
        if not is_prime(p) or p == 2:
            raise ValueError(f"characteristic must be an odd prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        if p ** m > FIELD_CAP:
            raise SizeGuard(f"p^m = {p**m} exceeds the explicit-table cap {FIELD_CAP}")
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not _poly_is_irreducible(list(modulus), p):
            raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.modulus = modulus
        self.size = p ** m
        self._coeffs = self._build_coeffs()
        self._exp, self._log = self._build_tables()

    # -- construction internals ------------------------------------------

    def _build_coeffs(self):
        p, m = self.p, self.m
        out = []
        for r in range(self.size):
            c, v = [], r
            for _ in range(m):
                v, d = divmod(v, p)
                c.append(d)
            out.append(tuple(c))
        return out

    def _rank(self, coeffs) -> int:
        r = 0
        for c in reversed(coeffs):
            r = r * self.p + c
        return r

    def _poly_mul(self, a, b) -> int:
        p, m = self.p, self.m
        ca, cb = self._coeffs[a], self._coeffs[b]
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        # reduce by the modulus: x^m = -(modulus minus leading term)
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * self.modulus[j]
            prod[k] = 0
        return self._rank([v % p for v in prod[:m]])

    def _build_tables(self):
        q = self.size
        # least-rank generator of the multiplicative group
        factors = _prime_factors(q - 1)
        gen = None
        for r in range(2, q):
            if all(self._raw_pow(r, (q - 1) // f) != 1 for f in factors):
                gen = r
                break
        if gen is None:  # q == 3: the only generator is 2, caught above
            gen = q - 1
        exp = [1] * (q - 1)
        log = [0] * q
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._poly_mul(cur, gen)
        self._generator = gen
        return exp, log

    def _raw_pow(self, a: int, e: int) -> int:
        r, base = 1, a
        while e:
            if e & 1:
                r = self._poly_mul(r, base)
            base = self._poly_mul(base, base)
            e >>= 1
        return r

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        return self._rank([(x + y) % p for x, y in zip(self._coeffs[a], self._coeffs[b])])

    def sub(self, a: int, b: int) -> int:
        p = self.p
        return self._rank([(x - y) % p for x, y in zip(self._coeffs[a], self._coeffs[b])])

    def neg(self, a: int) -> int:
        p = self.p
        return self._rank([(-x) % p for x in self._coeffs[a]])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        q1 = self.size - 1
        return self._exp[(self._log[a] + self._log[b]) % q1]

    def inv(self, a: int) -> int:
        if a == 0:
            raise InverseOfZero("inverse of 0 requested")
        q1 = self.size - 1
        return self._exp[(-self._log[a]) % q1]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise InverseOfZero("0 raised to a negative power")
        q1 = self.size - 1
        return self._exp[(self._log[a] * e) % q1]

    def coeffs(self, a: int) -> tuple[int, ...]:
        return self._coeffs[a]

    def from_coeffs(self, coeffs) -> int:
        return self._rank([c % self.p for c in coeffs])

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ZeroArgument("0 has no multiplicative order")
        q1 = self.size - 1
        return q1 // math.gcd(self._log[a], q1)

    @property
    def primitive_element(self) -> int:
        """Least-rank element of multiplicative order p^m - 1."""
        return self._generator

    # -- structure ---------------------------------------------------------

    def trace(self, k: int, a: int) -> int:
        """Tr_k^m(a) = sum of a^{p^{k i}}, returned as a rank of the
        canonical GF(p^k); requires k | m."""
        if self.m % k != 0:
            raise NotADivisor(f"{k} does not divide {self.m}")
        table = self._trace_table(k)
        return table[a]

    @lru_cache(maxsize=None)
    def _trace_table(self, k: int):
        sub, _, proj = self.subfield(k)
        steps = self.m // k
        frob_exp = self.p ** k
        out = []
        for a in range(self.size):
            t, x = 0, a
            for _ in range(steps):
                t = self.add(t, x)
                x = self.pow(x, frob_exp)
            out.append(proj[t])
        return out

    def quadratic_character(self, a: int) -> int:
        """+1 iff a is a nonzero square (a^{(q-1)/2} = 1), -1 otherwise."""
        if a == 0:
            raise ZeroArgument("quadratic character of 0 is undefined")
        return 1 if self._log[a] % 2 == 0 else -1

    def squares(self) -> frozenset[int]:
        return self.subgroup_coset(2, 1).members

    def nonsquares(self) -> frozenset[int]:
        return frozenset(a for a in range(1, self.size)) - self.squares()

    def subgroup_coset(self, exponent: int, beta: int) -> "CosetSet":
        """beta * H_l where H_l = { x^l : x in GF(p^m)^* }."""
        if beta == 0:
            raise ZeroBeta("coset representative must be nonzero")
        if exponent < 1:
            raise ValueError("exponent must be >= 1")
        members = frozenset(self.mul(beta, self.pow(x, exponent)) for x in range(1, self.size))
        return CosetSet(self, exponent, beta, members)

    @lru_cache(maxsize=None)
    def subfield(self, s: int):
        """Canonical copy of GF(p^s) inside this field, s | m.

        Returns (subfield, embed, project): embed[r] is the image in this
        field of the canonical GF(p^s) rank r, project the inverse map.
        The image of the canonical generator is the least-rank root of its
        minimal polynomial inside the fixed set of x -> x^{p^s}, which is
        what makes the map a field homomorphism rather than merely a
        homomorphism of the cyclic groups.
        """
        if self.m % s != 0:
            raise NotADivisor(f"{s} does not divide {self.m}")
        if s == self.m:
            # a field is its own canonical degree-m subfield copy
            embed = list(range(self.size))
            proj = {r: r for r in range(self.size)}
            return self, embed, proj
        sub = canonical_field(self.p, s)
        g = sub.primitive_element
        minpoly = _minimal_polynomial(sub, g)
        root = min(r for r in range(self.size) if _eval_in(self, minpoly, r) == 0)
        # coordinates of each subfield element in the power basis {g^j}
        basis_sub = [sub.pow(g, j) for j in range(s)]
        coords = {}
        for tup in itertools.product(range(self.p), repeat=s):
            v = 0
            for c, b in zip(tup, basis_sub):
                v = sub.add(v, sub.mul(c, b))
            coords.setdefault(v, tup)
        basis_big = [self.pow(root, j) for j in range(s)]
        embed = [0] * sub.size
        for r in range(sub.size):
            v = 0
            for c, b in zip(coords[r], basis_big):
                v = self.add(v, self.mul(c, b))
            embed[r] = v
        proj = {img: r for r, img in enumerate(embed)}
        return sub, embed, proj

    def embed_from(self, s: int, a: int) -> int:
        """Image of the canonical GF(p^s) rank a inside this field."""
        _, embed, _ = self.subfield(s)
        return embed[a]

    # -- plumbing -----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> "Field":
        return cls(int(d["p"]), int(d["m"]), d["modulus"])


def _prime_factors(n: int):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _minimal_polynomial(sub: Field, g: int):
    """Coefficients over GF(p) of prod_i (y - g^{p^i}) computed in `sub`."""
    conjugates = []
    x = g
    while x not in conjugates:
        conjugates.append(x)
        x = sub.pow(x, sub.p)
    poly = [1]  # in sub ranks, low degree first
    for c in conjugates:
        nxt = [0] * (len(poly) + 1)
        for i, coeff in enumerate(poly):
            nxt[i + 1] = sub.add(nxt[i + 1], coeff)
            nxt[i] = sub.sub(nxt[i], sub.mul(c, coeff))
        poly = nxt
    for coeff in poly:
        if coeff >= sub.p:
            raise AssertionError("minimal polynomial has non-prime-field coefficient")
    return poly


def _eval_in(field: Field, poly, x: int) -> int:
    v = 0
    for c in reversed(poly):
        v = field.add(field.mul(v, x), c)  # constants embed as constants
    return v


@dataclass(frozen=True)
class CosetSet:
    """beta * H_l inside a field's multiplicative group."""

    field: Field
    exponent: int
    beta: int
    members: frozenset[int]

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return a in self.members


@lru_cache(maxsize=None)
def canonical_field(p: int, m: int) -> Field:
    """The GF(p^m) with the auto-selected modulus; cached per (p, m)."""
    return Field(p, m)
