"""Explicit vectorial dual-bent families, emitted as lookup tables together
with the claimed dual, the claimed component permutation sigma, and (where
the family states one) the claimed per-component regularity sign.

Every constructor returns a ConstructedPair whose claims are meant to be
re-derived independently by spectral.dual_bent_certificate; the claims are
inputs to verification, never a substitute for it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    BadExponent,
    NotADivisor,
    NotPermutation,
    UnbalancedLabeling,
    ZeroArgument,
    ZeroCoefficient,
)
from .field import Field, canonical_field
from .space import Space
from .spectral import VectorialFunction


@dataclass
class ConstructedPair:
    family: str
    function: VectorialFunction
    dual: VectorialFunction
    sigma: dict[int, int]
    epsilons: dict[int, int] | None
    params: dict = dc_field(default_factory=dict)


def _epsilon_sign(p: int, dim: int, minus_one_exp: int, eps_exp: int, eta: int) -> int:
    """Sign of (-1)^{minus_one_exp} eps^{eps_exp} eta with eps = sqrt(-1)
    for p = 3 mod 4 (else 1), normalised to the classification convention:
    for odd dim one factor of eps is absorbed into the Gauss sum."""
    e = 1 if p % 4 == 3 else 0
    exp_i = 2 * minus_one_exp + e * eps_exp + (0 if eta == 1 else 2)
    exp_i -= e * (dim % 2)
    exp_i %= 4
    if exp_i not in (0, 2):
        raise AssertionError("epsilon claim is not real after normalisation")
    return 1 if exp_i == 0 else -1


def _sub_add_table(sub: Field) -> np.ndarray:
    q = sub.size
    return np.array([[sub.add(u, v) for v in range(q)] for u in range(q)], dtype=np.int64)


# ---------------------------------------------------------------------------
# Maiorana-McFarland families on GF(p^m) x GF(p^m)
# ---------------------------------------------------------------------------

def mm_power(p: int, m: int, s: int, a: int, e: int) -> ConstructedPair:
    """F(x, y) = Tr_s^m(a x y^e) with gcd(e, p^m - 1) = 1.

    Dual Tr_s^m(-a^{-u} x^u y) with e u = 1 mod p^m - 1; sigma(c) = c^{-u};
    every component is regular.
    """
    F = canonical_field(p, m)
    if m % s != 0:
        raise NotADivisor(f"{s} does not divide {m}")
    if a == 0:
        raise ZeroArgument("coefficient a must be nonzero")
    q = F.size
    if math.gcd(e, q - 1) != 1:
        raise BadExponent(f"gcd({e}, {q - 1}) != 1")
    u = pow(e, -1, q - 1)
    sub = canonical_field(p, s)
    tr = F._trace_table(s)
    dom = Space([F, F])
    table = np.empty(q * q, dtype=np.int64)
    for y in range(q):
        v = F.mul(a, F.pow(y, e))
        base = q * y
        for x in range(q):
            table[base + x] = tr[F.mul(v, x)]
    coef = F.neg(F.pow(a, -u))
    dual = np.empty(q * q, dtype=np.int64)
    for y in range(q):
        base = q * y
        for x in range(q):
            dual[base + x] = tr[F.mul(F.mul(coef, F.pow(x, u)), y)]
    sigma = {c: sub.pow(c, -u) for c in range(1, sub.size)}
    eps = {c: 1 for c in range(1, sub.size)}
    return ConstructedPair(
        "mm-power",
        VectorialFunction(dom, sub, table),
        VectorialFunction(dom, sub, dual),
        sigma,
        eps,
        {"p": p, "m": m, "s": s, "a": a, "e": e},
    )


@dataclass(frozen=True)
class QPolynomial:
    """L(x) = sum_i coeffs[i] x^{q^i} over GF(p^m), q = p^s: a GF(p^s)-linear
    map by construction."""

    field: Field
    s: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.field.m % self.s != 0:
            raise NotADivisor(f"{self.s} does not divide {self.field.m}")

    def evaluate(self, y: int) -> int:
        F, q = self.field, self.field.p ** self.s
        acc, power = 0, y
        for c in self.coeffs:
            acc = F.add(acc, F.mul(c, power))
            power = F.pow(power, q)
        return acc

    def table(self) -> list[int]:
        return [self.evaluate(y) for y in range(self.field.size)]

    def inverse_table(self) -> list[int]:
        tab = self.table()
        if len(set(tab)) != self.field.size:
            raise NotPermutation("q-polynomial does not permute the field")
        inv = [0] * self.field.size
        for y, v in enumerate(tab):
            inv[v] = y
        return inv


def mm_qpoly(p: int, m: int, s: int, a: int, l_coeffs) -> ConstructedPair:
    """F(x, y) = Tr_s^m(a x L(y)) for a permutation q-polynomial L.

    Dual Tr_s^m(-L^{-1}(a^{-1} x) y); sigma(c) = c^{-1}; components regular.
    """
    F = canonical_field(p, m)
    if a == 0:
        raise ZeroArgument("coefficient a must be nonzero")
    L = QPolynomial(F, s, tuple(int(c) for c in l_coeffs))
    ltab = L.table()
    linv = L.inverse_table()
    sub = canonical_field(p, s)
    tr = F._trace_table(s)
    q = F.size
    dom = Space([F, F])
    table = np.empty(q * q, dtype=np.int64)
    for y in range(q):
        v = F.mul(a, ltab[y])
        base = q * y
        for x in range(q):
            table[base + x] = tr[F.mul(v, x)]
    inv_a = F.inv(a)
    dual = np.empty(q * q, dtype=np.int64)
    for y in range(q):
        base = q * y
        for x in range(q):
            dual[base + x] = tr[F.mul(F.neg(linv[F.mul(inv_a, x)]), y)]
    sigma = {c: sub.inv(c) for c in range(1, sub.size)}
    eps = {c: 1 for c in range(1, sub.size)}
    return ConstructedPair(
        "mm-qpoly",
        VectorialFunction(dom, sub, table),
        VectorialFunction(dom, sub, dual),
        sigma,
        eps,
        {"p": p, "m": m, "s": s, "a": a, "l_coeffs": list(L.coeffs)},
    )


# ---------------------------------------------------------------------------
# quadratic families
# ---------------------------------------------------------------------------

def quad_trace(p: int, n: int, s: int, a: int) -> ConstructedPair:
    """F(x) = Tr_s^n(a x^2) on GF(p^n).

    Dual Tr_s^n(-x^2 / (4a)); sigma(c) = c^{-1}; component sign
    (-1)^{n-1} eps^n eta_n(a c).
    """
    F = canonical_field(p, n)
    if n % s != 0:
        raise NotADivisor(f"{s} does not divide {n}")
    if a == 0:
        raise ZeroArgument("coefficient a must be nonzero")
    sub = canonical_field(p, s)
    tr = F._trace_table(s)
    dom = Space([F])
    table = np.fromiter(
        (tr[F.mul(a, F.mul(x, x))] for x in range(F.size)), dtype=np.int64, count=F.size
    )
    minus_inv4a = F.neg(F.inv(F.mul(4 % p, a)))
    dual = np.fromiter(
        (tr[F.mul(minus_inv4a, F.mul(x, x))] for x in range(F.size)),
        dtype=np.int64,
        count=F.size,
    )
    sigma = {c: sub.inv(c) for c in range(1, sub.size)}
    _, embed, _ = F.subfield(s)
    eps = {
        c: _epsilon_sign(p, n, n - 1, n, F.quadratic_character(F.mul(a, embed[c])))
        for c in range(1, sub.size)
    }
    return ConstructedPair(
        "quad-trace",
        VectorialFunction(dom, sub, table),
        VectorialFunction(dom, sub, dual),
        sigma,
        eps,
        {"p": p, "n": n, "s": s, "a": a},
    )


def diag_quad(p: int, s: int, m: int, coeffs) -> ConstructedPair:
    """G(x_1, ..., x_m) = a_1 x_1^2 + ... + a_m x_m^2 on GF(p^s)^m.

    Dual -x_1^2/(4a_1) - ... - x_m^2/(4a_m); sigma(c) = c^{-1}; component
    sign (-1)^{(s-1)m} eps^{sm} eta_s(c^m a_1 ... a_m).
    """
    sub = canonical_field(p, s)
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) != m:
        raise ValueError(f"need {m} coefficients")
    if any(c == 0 for c in coeffs):
        raise ZeroCoefficient("diagonal coefficients must be nonzero")
    q = sub.size
    dom = Space([sub] * m)
    add_tab = _sub_add_table(sub)
    sq = [sub.mul(x, x) for x in range(q)]
    ranks = np.arange(dom.size, dtype=np.int64)

    def assemble(cs):
        acc = np.zeros(dom.size, dtype=np.int64)
        for i, ci in enumerate(cs):
            vals = np.array([sub.mul(ci, sq[x]) for x in range(q)], dtype=np.int64)
            xi = (ranks // (q ** i)) % q
            acc = add_tab[acc, vals[xi]]
        return acc

    table = assemble(coeffs)
    dual_coeffs = [sub.neg(sub.inv(sub.mul(4 % p, c))) for c in coeffs]
    dual = assemble(dual_coeffs)
    sigma = {c: sub.inv(c) for c in range(1, q)}
    prod = 1
    for c in coeffs:
        prod = sub.mul(prod, c)
    eps = {
        c: _epsilon_sign(
            p, s * m, (s - 1) * m, s * m, sub.quadratic_character(sub.mul(sub.pow(c, m), prod))
        )
        for c in range(1, q)
    }
    return ConstructedPair(
        "diag-quad",
        VectorialFunction(dom, sub, table),
        VectorialFunction(dom, sub, dual),
        sigma,
        eps,
        {"p": p, "s": s, "m": m, "coeffs": coeffs},
    )


# ---------------------------------------------------------------------------
# partial-spread family
# ---------------------------------------------------------------------------

@dataclass
class SpreadSystem:
    """The regular spread of GF(p^m) x GF(p^m): the line {0} x F at index 0,
    then the lines {(x, ax)} in rank order of a."""

    space: Space
    lines: list[tuple[int, ...]]
    perp: list[int]

    def validate(self):
        seen = set()
        for i, line in enumerate(self.lines):
            as_set = set(line)
            if 0 not in as_set:
                raise AssertionError("every spread member contains 0")
            for j in range(i):
                if set(self.lines[j]) & as_set != {0}:
                    raise AssertionError("spread members must meet only at 0")
            seen |= as_set
        if len(seen) != self.space.size:
            raise AssertionError("spread must cover the space")


def regular_spread(p: int, m: int) -> SpreadSystem:
    F = canonical_field(p, m)
    q = F.size
    dom = Space([F, F])
    lines = [tuple(dom.join((0, y)) for y in range(q))]
    for a in range(q):
        lines.append(tuple(dom.join((x, F.mul(a, x))) for x in range(q)))
    # orthogonal complement under Tr(z1 x1 + z2 x2): the infinity line and
    # the a = 0 line swap; {(x, ax)} pairs with {(x, -a^{-1} x)}
    perp = [1, 0]
    for a in range(1, q):
        perp.append(1 + F.neg(F.inv(a)))
    return SpreadSystem(dom, lines, perp)


def spread_bent(p: int, m: int, s: int, labeling=None, gamma0: int = 0) -> ConstructedPair:
    """Vectorial partial-spread function on the regular spread: constant on
    each punctured line, balanced over the p^m non-distinguished lines.

    The dual carries the same labels moved to the orthogonal-complement
    lines; sigma is the identity and every component is regular.
    """
    if s > m:
        raise ValueError("s must not exceed m")
    sub = canonical_field(p, s)
    system = regular_spread(p, m)
    q = p ** m
    if labeling is None:
        labeling = [r % sub.size for r in range(q)]
    labeling = [int(v) for v in labeling]
    if len(labeling) != q:
        raise UnbalancedLabeling(f"labeling must assign all {q} lines")
    per_value = q // sub.size
    counts = [0] * sub.size
    for v in labeling:
        counts[v] += 1
    if counts != [per_value] * sub.size:
        raise UnbalancedLabeling(f"labeling must hit every value exactly {per_value} times")
    labels = [int(gamma0)] + labeling
    dom = system.space
    table = np.empty(dom.size, dtype=np.int64)
    dual = np.empty(dom.size, dtype=np.int64)
    for i, line in enumerate(system.lines):
        val = labels[i]
        val_perp = labels[system.perp[i]]
        for z in line:
            if z != 0:
                table[z] = val
                dual[z] = val_perp
    table[0] = labels[0]
    dual[0] = labels[0]
    sigma = {c: c for c in range(1, sub.size)}
    eps = {c: 1 for c in range(1, sub.size)}
    return ConstructedPair(
        "spread",
        VectorialFunction(dom, sub, table),
        VectorialFunction(dom, sub, dual),
        sigma,
        eps,
        {"p": p, "m": m, "s": s, "labeling": labeling, "gamma0": int(gamma0)},
    )


# ---------------------------------------------------------------------------
# the three-block construction
# ---------------------------------------------------------------------------

def branched_quad_mm(
    p: int,
    n: int,
    m: int,
    s: int,
    alpha1: int,
    alpha2: int,
    alpha3: int,
    beta: int,
    gamma: int,
    l_coeffs=(1,),
) -> ConstructedPair:
    """H(x, y1, y2) on GF(p^n) x GF(p^m) x GF(p^m):

        H = Tr_s^n(alpha_b x^2) + Tr_s^m(beta y1 L(y2)),

    where the branch b is alpha1 / alpha2 / alpha3 according to whether
    Tr_s^m(gamma y2^2) is zero / a square / a non-square.  The dual swaps
    the roles of y1 and y2 through L^{-1} and replaces each alpha by
    -(4 alpha)^{-1}; sigma(c) = c^{-1}.

    gamma is accepted anywhere in GF(p^m)^*; the square/non-square branch is
    taken on the selector value inside GF(p^s).
    """
    if n % s != 0 or m % s != 0:
        raise NotADivisor(f"{s} must divide both {n} and {m}")
    for name, v in (("alpha1", alpha1), ("alpha2", alpha2), ("alpha3", alpha3)):
        if v == 0:
            raise ZeroArgument(f"{name} must be nonzero")
    if beta == 0 or gamma == 0:
        raise ZeroArgument("beta and gamma must be nonzero")
    Fn = canonical_field(p, n)
    Fm = canonical_field(p, m)
    sub = canonical_field(p, s)
    qn, qm, qs = Fn.size, Fm.size, sub.size
    L = QPolynomial(Fm, s, tuple(int(c) for c in l_coeffs))
    ltab = L.table()
    linv = L.inverse_table()
    trn = Fn._trace_table(s)
    trm = Fm._trace_table(s)
    add_tab = _sub_add_table(sub)
    squares = sub.squares()

    def branch(i: int) -> int:
        if i == 0:
            return 0
        return 1 if i in squares else 2

    def x_block(coeff: int) -> np.ndarray:
        return np.fromiter(
            (trn[Fn.mul(coeff, Fn.mul(x, x))] for x in range(qn)), dtype=np.int64, count=qn
        )

    alphas = (alpha1, alpha2, alpha3)
    xb = np.stack([x_block(a) for a in alphas])
    sel_y2 = np.fromiter(
        (branch(trm[Fm.mul(gamma, Fm.mul(y, y))]) for y in range(qm)),
        dtype=np.int64,
        count=qm,
    )
    # g[y1, y2] = Tr_s^m(beta y1 L(y2))
    g = np.empty((qm, qm), dtype=np.int64)
    for y2 in range(qm):
        v = Fm.mul(beta, ltab[y2])
        for y1 in range(qm):
            g[y1, y2] = trm[Fm.mul(v, y1)]
    dom = Space([Fn, Fm, Fm])
    table = np.empty(dom.size, dtype=np.int64)
    blk = qn * qm
    for y2 in range(qm):
        rows = add_tab[g[:, y2][:, None], xb[sel_y2[y2]][None, :]]  # (qm, qn)
        table[y2 * blk : (y2 + 1) * blk] = rows.reshape(-1)

    # dual: branch on w = L^{-1}(beta^{-1} y1), cross term -Tr(w y2)
    inv_beta = Fm.inv(beta)
    w_of_y1 = [linv[Fm.mul(inv_beta, y1)] for y1 in range(qm)]
    sel_y1 = np.fromiter(
        (branch(trm[Fm.mul(gamma, Fm.mul(w, w))]) for w in w_of_y1),
        dtype=np.int64,
        count=qm,
    )
    dual_alphas = [Fn.neg(Fn.inv(Fn.mul(4 % p, a))) for a in alphas]
    xb_star = np.stack([x_block(a) for a in dual_alphas])
    r_rows = xb_star[sel_y1]  # (qm, qn)
    gstar = np.empty((qm, qm), dtype=np.int64)
    for y1 in range(qm):
        w = w_of_y1[y1]
        for y2 in range(qm):
            gstar[y1, y2] = trm[Fm.neg(Fm.mul(w, y2))]
    dual = np.empty(dom.size, dtype=np.int64)
    for y2 in range(qm):
        rows = add_tab[gstar[:, y2][:, None], r_rows]
        dual[y2 * blk : (y2 + 1) * blk] = rows.reshape(-1)

    sigma = {c: sub.inv(c) for c in range(1, qs)}
    chars = {Fn.quadratic_character(a) for a in alphas}
    if len(chars) == 1:
        _, embed, _ = Fn.subfield(s)
        eps = {
            c: _epsilon_sign(
                p,
                n + 2 * m,
                n - 1,
                n,
                Fn.quadratic_character(Fn.mul(alpha1, embed[c])),
            )
            for c in range(1, qs)
        }
    else:
        eps = None  # mixed branch characters: components are bent but not weakly regular
    return ConstructedPair(
        "branched-quad-mm",
        VectorialFunction(dom, sub, table),
        VectorialFunction(dom, sub, dual),
        sigma,
        eps,
        {
            "p": p,
            "n": n,
            "m": m,
            "s": s,
            "alphas": list(alphas),
            "beta": beta,
            "gamma": gamma,
            "l_coeffs": list(L.coeffs),
        },
    )
