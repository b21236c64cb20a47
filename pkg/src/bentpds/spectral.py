"""Walsh spectra over Z[zeta_p], bentness classification, duals, and
vectorial dual-bent certificates.

The full transform W_f(a) = sum_x zeta^{f(x) - <a,x>} is computed by a
radix-p fast transform: n rounds of exact p-point DFTs over Z[zeta_p], one
per GF(p)-coordinate, on an integer coefficient matrix.  Coefficients stay
below p^n <= 2^32, so int64 accumulation is exact.  The naive quadratic sum
is kept alongside as a cross-check oracle.

Bentness and regularity are decided by exact candidate matching: a bent
value must equal one of the 2p ring elements +-u zeta^j, where u = p^{n/2}
for even n and u = p^{(n-1)/2} g for odd n (g the quadratic Gauss sum, an
exact square root of p^* in the ring).  There are no tolerances anywhere.
For odd n the recorded sign is relative to that Gauss-sum normalisation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclo import CyclotomicInt, gauss_sum
from .errors import (
    MatchFailure,
    NotBent,
    PreconditionF0,
    SizeGuard,
    ZeroComponent,
)
from .field import Field, canonical_field
from .limits import walsh_cap
from .space import Space, prime_space


# ---------------------------------------------------------------------------
# function tables
# ---------------------------------------------------------------------------

class PAryFunction:
    """f: V_n -> GF(p), stored as a table indexed by point rank."""

    def __init__(self, domain: Space, table):
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (domain.size,):
            raise ValueError(f"table must have length {domain.size}")
        if table.size and (table.min() < 0 or table.max() >= domain.p):
            raise ValueError("table entries must lie in [0, p)")
        self.domain = domain
        self.table = table

    @property
    def p(self) -> int:
        return self.domain.p

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        return (
            isinstance(other, PAryFunction)
            and self.domain == other.domain
            and np.array_equal(self.table, other.table)
        )

    def to_dict(self) -> dict:
        return {
            "space": self.domain.to_list(),
            "codomain": {"p": self.p, "s": 1},
            "table": self.table.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PAryFunction":
        return cls(Space.from_list(d["space"]), d["table"])


class VectorialFunction:
    """F: V_n -> GF(p^s), stored as a table of codomain ranks."""

    def __init__(self, domain: Space, codomain: Field, table):
        if codomain.p != domain.p:
            raise ValueError("domain and codomain characteristics differ")
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (domain.size,):
            raise ValueError(f"table must have length {domain.size}")
        if table.size and (table.min() < 0 or table.max() >= codomain.size):
            raise ValueError("table entries must lie in [0, p^s)")
        self.domain = domain
        self.codomain = codomain
        self.table = table

    @property
    def p(self) -> int:
        return self.domain.p

    @property
    def s(self) -> int:
        return self.codomain.m

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        return (
            isinstance(other, VectorialFunction)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.table, other.table)
        )

    def to_dict(self) -> dict:
        return {
            "space": self.domain.to_list(),
            "codomain": {"p": self.p, "s": self.s},
            "table": self.table.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VectorialFunction":
        cod = d["codomain"]
        return cls(
            Space.from_list(d["space"]),
            canonical_field(int(cod["p"]), int(cod["s"])),
            d["table"],
        )

    def as_p_ary(self) -> PAryFunction:
        if self.s != 1:
            raise ValueError("only s = 1 functions convert to p-ary")
        return PAryFunction(self.domain, self.table)


def as_vectorial(f: PAryFunction) -> VectorialFunction:
    return VectorialFunction(f.domain, canonical_field(f.p, 1), f.table)


def component(F: VectorialFunction, c: int) -> PAryFunction:
    """F_c(x) = Tr_1^s(c F(x)) for nonzero c in the codomain."""
    if c == 0:
        raise ZeroComponent("component index must be nonzero")
    cod = F.codomain
    tr1 = cod._trace_table(1)
    comp_map = np.fromiter(
        (tr1[cod.mul(c, v)] for v in range(cod.size)), dtype=np.int64, count=cod.size
    )
    return PAryFunction(F.domain, comp_map[F.table])


def flatten_domain(f: PAryFunction) -> PAryFunction:
    """Reinterpret the domain as GF(p)^n; the digit encoding makes the table
    carry over unchanged."""
    return PAryFunction(prime_space(f.p, f.domain.dim), f.table)


# ---------------------------------------------------------------------------
# the radix-p transform
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _mult_matrices(p: int):
    """mats[j][i] = coefficients of zeta^{i+j}; row-vector @ mats[j]
    multiplies a coefficient vector by zeta^j."""
    mats = []
    for j in range(p):
        m = np.zeros((p - 1, p - 1), dtype=np.int64)
        for i in range(p - 1):
            m[i] = CyclotomicInt.zeta_pow(p, i + j).coeffs
        mats.append(m)
    return tuple(mats)


_DUAL_PERMS: dict[Space, np.ndarray] = {}


def _dual_perm(space: Space) -> np.ndarray:
    perm = _DUAL_PERMS.get(space)
    if perm is None:
        perm = np.fromiter(
            (space.dual_rank(a) for a in range(space.size)),
            dtype=np.int64,
            count=space.size,
        )
        _DUAL_PERMS[space] = perm
    return perm


def _digit_transform(A: np.ndarray, p: int, dim: int) -> np.ndarray:
    """Replace A (rows = coefficient vectors indexed by rank) with
    G[u] = sum_x A[x] zeta^{-sum_k u_k x_k}, one p-point pass per digit."""
    mats = _mult_matrices(p)
    n_rows = A.shape[0]
    for k in range(dim):
        stride = p ** k
        V = A.reshape(n_rows // (p * stride), p, stride, p - 1)
        out = np.empty_like(V)
        for u in range(p):
            acc = V[:, 0] @ mats[0]
            for t in range(1, p):
                acc += V[:, t] @ mats[(-u * t) % p]
            out[:, u] = acc
        A = out.reshape(n_rows, p - 1)
    return A


@dataclass
class WalshSpectrum:
    """Exact spectrum: row a holds the Z[zeta_p] coefficients of W(a)."""

    space: Space
    coeff_rows: np.ndarray

    @property
    def p(self) -> int:
        return self.space.p

    def __getitem__(self, a: int) -> CyclotomicInt:
        return CyclotomicInt(self.p, self.coeff_rows[a])

    def values(self) -> list[CyclotomicInt]:
        return [self[a] for a in range(self.space.size)]

    def norms(self) -> np.ndarray:
        norms, ok = _row_norms(self.coeff_rows, self.p)
        return np.where(ok, norms, -1)

    def parseval_ok(self) -> bool:
        # individual |W(a)|^2 may be irrational; only the sum must equal p^{2n}
        total = _conj_products(self.coeff_rows, self.p).sum(axis=0)
        if (total[1:] != 0).any():
            return False
        return int(total[0]) == self.p ** (2 * self.space.dim)

    def to_json(self) -> list:
        return [self[a].to_dict() for a in range(self.space.size)]


def _conj_products(A: np.ndarray, p: int) -> np.ndarray:
    """Row-wise a * conj(a) as coefficient vectors."""
    mats = _mult_matrices(p)
    conj_mat = np.zeros((p - 1, p - 1), dtype=np.int64)
    for i in range(p - 1):
        conj_mat[i] = CyclotomicInt.zeta_pow(p, (-i) % p).coeffs
    conj_rows = A @ conj_mat
    prod = np.zeros_like(A)
    for i in range(p - 1):
        prod += A[:, i : i + 1] * (conj_rows @ mats[i])
    return prod


def _row_norms(A: np.ndarray, p: int):
    """(constant terms of a * conj(a), mask of rows where that product is a
    rational integer)."""
    prod = _conj_products(A, p)
    is_int = (prod[:, 1:] == 0).all(axis=1)
    return prod[:, 0].copy(), is_int


def char_weight_transform(space: Space, weight_rows: np.ndarray) -> WalshSpectrum:
    """T(a) = sum_x w(x) zeta^{-<a,x>} for per-point ring weights."""
    if space.size > walsh_cap():
        raise SizeGuard(f"p^n = {space.size} exceeds the transform cap")
    G = _digit_transform(weight_rows.astype(np.int64, copy=True), space.p, space.dim)
    return WalshSpectrum(space, G[_dual_perm(space)])


def walsh_full(f: PAryFunction) -> WalshSpectrum:
    """Exact W_f by the fast transform."""
    p, N = f.p, f.domain.size
    A = np.zeros((N, p - 1), dtype=np.int64)
    t = f.table
    low = t < p - 1
    A[np.nonzero(low)[0], t[low]] = 1
    A[~low] = -1
    return char_weight_transform(f.domain, A)


def walsh_naive(f: PAryFunction) -> list[CyclotomicInt]:
    """The O(p^{2n}) definition, kept as an independent oracle."""
    sp, p = f.domain, f.p
    table = f.table
    out = []
    for a in range(sp.size):
        counts = [0] * p
        for x in range(sp.size):
            counts[(int(table[x]) - sp.inner_product(a, x)) % p] += 1
        out.append(CyclotomicInt.from_exponent_counts(p, counts))
    return out


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass
class BentClassification:
    is_bent: bool
    weakly_regular: bool
    regular: bool
    epsilon: int | None
    dual: PAryFunction | None
    spectrum: WalshSpectrum


@lru_cache(maxsize=None)
def _candidate_map(p: int, n: int):
    """coeff tuple -> (sign, j) over the 2p values +-u zeta^j a bent Walsh
    value can take."""
    if n % 2 == 0:
        u = CyclotomicInt.from_int(p, p ** (n // 2))
    else:
        u = p ** ((n - 1) // 2) * gauss_sum(p)
    cmap = {}
    for j in range(p):
        v = u * CyclotomicInt.zeta_pow(p, j)
        cmap[v.coeffs] = (1, j)
        cmap[(-v).coeffs] = (-1, j)
    return cmap


def classify_bent(f: PAryFunction) -> BentClassification:
    """Decide bentness, extract the dual and the weak-regularity sign by
    exact matching of every spectrum value against the 2p candidates."""
    spectrum = walsh_full(f)
    p, n = f.p, f.domain.dim
    norms, is_int = _row_norms(spectrum.coeff_rows, p)
    pn = p ** n
    bent = bool(is_int.all()) and bool((norms == pn).all())
    if not bent:
        return BentClassification(False, False, False, None, None, spectrum)
    cmap = _candidate_map(p, n)
    dual = np.empty(f.domain.size, dtype=np.int64)
    signs = np.empty(f.domain.size, dtype=np.int64)
    for a, row in enumerate(spectrum.coeff_rows):
        hit = cmap.get(tuple(int(v) for v in row))
        if hit is None:
            raise MatchFailure(f"bent value at a={a} matches no candidate")
        signs[a], dual[a] = hit
    weakly = bool((signs == signs[0]).all())
    eps = int(signs[0]) if weakly else None
    return BentClassification(
        True,
        weakly,
        weakly and eps == 1,
        eps,
        PAryFunction(f.domain, dual),
        spectrum,
    )


def is_vectorial_bent(F: VectorialFunction) -> bool:
    """True iff every nonzero component function is bent."""
    pn = F.p ** F.domain.dim
    for c in range(1, F.codomain.size):
        spectrum = walsh_full(component(F, c))
        norms, is_int = _row_norms(spectrum.coeff_rows, F.p)
        if not (is_int.all() and (norms == pn).all()):
            return False
    return True


@dataclass
class DualBentCertificate:
    """Witness that Fstar is a vectorial dual of F: sigma maps each nonzero
    component index c to the index whose Fstar-component equals (F_c)^*."""

    dual: VectorialFunction
    sigma: dict[int, int]
    epsilons: dict[int, int | None]


def dual_bent_certificate(
    F: VectorialFunction, Fstar: VectorialFunction
) -> DualBentCertificate | None:
    """Check (F_c)^* = (Fstar)_{sigma(c)} component by component.

    Returns the certificate, or None when Fstar fails to certify F (which
    does not prove F is not dual-bent).  Raises NotBent if some component
    of F is not bent.
    """
    if F.domain != Fstar.domain or F.codomain != Fstar.codomain:
        raise ValueError("F and Fstar must share domain and codomain")
    q = F.codomain.size
    star_tables = {d: component(Fstar, d).table for d in range(1, q)}
    sigma: dict[int, int] = {}
    epsilons: dict[int, int | None] = {}
    for c in range(1, q):
        cl = classify_bent(component(F, c))
        if not cl.is_bent:
            raise NotBent(f"component {c} is not bent")
        matches = [d for d in range(1, q) if np.array_equal(cl.dual.table, star_tables[d])]
        if len(matches) != 1:
            return None
        sigma[c] = matches[0]
        epsilons[c] = cl.epsilon
    if len(set(sigma.values())) != q - 1:
        return None
    return DualBentCertificate(Fstar, sigma, epsilons)


# ---------------------------------------------------------------------------
# algebraic normal form
# ---------------------------------------------------------------------------

def _inverse_vandermonde(p: int) -> list[list[int]]:
    v = [[pow(i, j, p) if j else 1 for j in range(p)] for i in range(p)]
    # Gauss-Jordan over GF(p)
    aug = [row[:] + [int(i == r) for i in range(p)] for r, row in enumerate(v)]
    for col in range(p):
        piv = next(r for r in range(col, p) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [(x * inv) % p for x in aug[col]]
        for r in range(p):
            if r != col and aug[r][col]:
                fac = aug[r][col]
                aug[r] = [(x - fac * y) % p for x, y in zip(aug[r], aug[col])]
    return [row[p:] for row in aug]


def anf(f: PAryFunction) -> dict[tuple[int, ...], int]:
    """Coefficients of the unique polynomial with per-variable degree <= p-1
    agreeing with f on GF(p)^n, by iterated univariate interpolation."""
    sp = f.domain
    if any(fac.m != 1 for fac in sp.factors):
        raise ValueError("anf needs a pure GF(p)^n domain; flatten_domain() first")
    p, n = f.p, sp.dim
    vinv = np.array(_inverse_vandermonde(p), dtype=np.int64)
    # Fortran order: axis k of the cube is digit k of the rank, i.e. x_k
    cube = f.table.reshape((p,) * n, order="F")
    for axis in range(n):
        cube = np.moveaxis(np.tensordot(vinv, cube, axes=([1], [axis])), 0, axis) % p
    out = {}
    it = np.nditer(cube, flags=["multi_index"])
    for val in it:
        if int(val):
            out[it.multi_index] = int(val)
    return out


def evaluate_anf(p: int, coeffs: dict[tuple[int, ...], int], digits) -> int:
    total = 0
    for exps, c in coeffs.items():
        term = c
        for x, e in zip(digits, exps):
            if e:
                term = (term * pow(int(x), e, p)) % p
        total += term
    return total % p


# ---------------------------------------------------------------------------
# l-forms and the l-form converse check
# ---------------------------------------------------------------------------

def lform_exponents(f: PAryFunction) -> set[int]:
    """All l in [1, p-1] with f(a x) = a^l f(x) for every scalar a != 0."""
    sp, p = f.domain, f.p
    table = f.table
    perms = {}
    for a in range(2, p):
        perms[a] = np.fromiter(
            (sp.scalar_mul(a, x) for x in range(sp.size)), dtype=np.int64, count=sp.size
        )
    out = set()
    for l in range(1, p):
        if all(
            np.array_equal(table[perms[a]], (pow(a, l, p) * table) % p)
            for a in range(2, p)
        ):
            out.add(l)
    return out


@dataclass
class LformConverseReport:
    applicable: bool
    reason: str
    exponents: set[int]
    valid_exponent: int | None
    passed: bool | None
    counterexample: bool


def lform_converse_check(f: PAryFunction) -> LformConverseReport:
    """Empirical check of the l-form converse: every weakly regular
    vectorial dual-bent f with f(0) = 0 must be an l-form with
    gcd(l-1, p-1) = 1.  A certified instance with no such l would be a
    counterexample and is flagged as one."""
    if int(f.table[0]) != 0:
        raise PreconditionF0("lform_converse_check requires f(0) = 0")
    cl = classify_bent(f)
    if not cl.is_bent:
        return LformConverseReport(False, "not bent", set(), None, None, False)
    if not cl.weakly_regular:
        return LformConverseReport(False, "bent but not weakly regular", set(), None, None, False)
    FV = as_vectorial(f)
    cert = dual_bent_certificate(FV, as_vectorial(cl.dual))
    if cert is None:
        return LformConverseReport(
            False, "dual does not certify a vectorial dual", set(), None, None, False
        )
    exps = lform_exponents(f)
    valid = sorted(l for l in exps if math.gcd(l - 1, f.p - 1) == 1)
    if valid:
        return LformConverseReport(True, "certified", exps, valid[0], True, False)
    return LformConverseReport(True, "certified but no admissible l-form", exps, None, False, True)
