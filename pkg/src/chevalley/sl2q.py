"""Rank-one modified quantum algebra at generic v in the triangular basis E^(a) 1_z F^(b).

Weights are integers z (the pairing with the simple coroot); the simple root is 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .exactring import ONE, ZERO, LaurentPoly, q_binom
from .linalg import Matrix, identity, kron, matadd, matmul, scale, zeros

Mono = tuple[int, int, int]  # (a, z, b) for E^(a) 1_z F^(b)


def vpow(k: int) -> LaurentPoly:
    return LaurentPoly.mono(k)


def sign(k: int) -> int:
    return -1 if k % 2 else 1


def source(m: Mono) -> int:
    return m[1] + 2 * m[2]


def target(m: Mono) -> int:
    return m[1] + 2 * m[0]


class UdotElt:
    """Finite combination of triangular monomials with Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | Iterable = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[Mono, LaurentPoly] = {}
        for k, c in items:
            acc[k] = acc.get(k, ZERO) + c
        self.terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def mono(cls, a: int, z: int, b: int, c=ONE) -> UdotElt:
        return cls({(a, z, b): LaurentPoly._lift(c)})

    def __add__(self, other: UdotElt) -> UdotElt:
        return UdotElt(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: UdotElt) -> UdotElt:
        return self + other.scale(-ONE)

    def scale(self, c) -> UdotElt:
        return UdotElt({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: UdotElt) -> UdotElt:
        out: dict[Mono, LaurentPoly] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for m, c in mono_product(m1, m2).items():
                    out[m] = out.get(m, ZERO) + c1 * c2 * c
        return UdotElt(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, UdotElt) and self.terms == other.terms

    def __repr__(self) -> str:
        return " + ".join(f"({c})E{a}·1[{z}]·F{b}" for (a, z, b), c in sorted(self.terms.items())) or "0"

    def at_one(self) -> dict[Mono, int]:
        return {k: v.at_one() for k, v in self.terms.items() if v.at_one()}


@lru_cache(maxsize=None)
def _mono_product(m1: Mono, m2: Mono) -> tuple:
    a, z, b = m1
    c, z2, d = m2
    mid = source(m1)
    if mid != target(m2):
        return ()
    out: dict[Mono, LaurentPoly] = {}
    # F^(b) 1_mid E^(c) = sum_t [b + c - mid, t] E^(c-t) 1_{mid - 2(b+c-t)} F^(b-t)
    for t in range(min(b, c) + 1):
        coef = q_binom(b + c - mid, t)
        if not coef:
            continue
        coef = coef * q_binom(a + c - t, a) * q_binom(b - t + d, d)
        key = (a + c - t, mid - 2 * (b + c - t), b - t + d)
        out[key] = out.get(key, ZERO) + coef
    return tuple((k, v) for k, v in out.items() if v)


def mono_product(m1: Mono, m2: Mono) -> dict[Mono, LaurentPoly]:
    return dict(_mono_product(m1, m2))


def E(n: int, z: int) -> UdotElt:
    """E^(n) 1_z."""
    return UdotElt.mono(n, z, 0)


def F(n: int, z: int) -> UdotElt:
    """F^(n) 1_z = 1_{z-2n} F^(n)."""
    return UdotElt.mono(0, z - 2 * n, n)


def P(z: int) -> UdotElt:
    return UdotElt.mono(0, z, 0)


def normal_form(word: Sequence[tuple]) -> UdotElt:
    """Normal form of a word of tokens ("E", n), ("F", n), ("P", z).

    The word must contain a projector so every weight in it is determined.
    """
    anchor = next((k for k, t in enumerate(word) if t[0] == "P"), None)
    if anchor is None:
        raise ValueError("word needs at least one projector")
    shift = lambda tok: {"E": 2, "F": -2, "P": 0}[tok[0]] * (tok[1] if tok[0] != "P" else 0)
    # inp[k] is the weight entering token k (the gap on its right)
    inp = [0] * len(word)
    inp[anchor] = word[anchor][1]
    for k in range(anchor - 1, -1, -1):
        inp[k] = inp[k + 1] + shift(word[k + 1])
    for k in range(anchor + 1, len(word)):
        inp[k] = inp[k - 1] - shift(word[k])
    out = None
    for tok, z in zip(word, inp):
        if tok[0] == "E":
            m = E(tok[1], z)
        elif tok[0] == "F":
            m = F(tok[1], z)
        else:
            if tok[1] != z:
                return UdotElt()
            m = P(z)
        out = m if out is None else out * m
    return out


# --- modules ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QModule:
    """Weight module with Laurent-polynomial matrices for divided powers."""

    weights: tuple[int, ...]
    Emat: dict
    Fmat: dict
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.weights)

    def E(self, n: int) -> Matrix:
        if n == 0:
            return identity(self.dim, ONE, ZERO)
        return self.Emat.get(n) or zeros(self.dim, self.dim, ZERO)

    def F(self, n: int) -> Matrix:
        if n == 0:
            return identity(self.dim, ONE, ZERO)
        return self.Fmat.get(n) or zeros(self.dim, self.dim, ZERO)

    def proj(self, z: int) -> Matrix:
        return [[ONE if r == c and self.weights[r] == z else ZERO for c in range(self.dim)]
                for r in range(self.dim)]

    def K(self, k: int = 1) -> Matrix:
        """diag(v^(k * weight))."""
        return [[vpow(k * self.weights[r]) if r == c else ZERO for c in range(self.dim)]
                for r in range(self.dim)]

    @property
    def top(self) -> int:
        return max(list(self.Emat) + list(self.Fmat) + [0])

    def mono_matrix(self, m: Mono) -> Matrix:
        a, z, b = m
        return mul(self.E(a), mul(self.proj(z), self.F(b)))

    def elt_matrix(self, u: UdotElt) -> Matrix:
        out = zeros(self.dim, self.dim, ZERO)
        for m, c in u.terms.items():
            out = matadd(out, scale(self.mono_matrix(m), c))
        return out

    def word_matrix(self, word: Sequence[tuple]) -> Matrix:
        out = identity(self.dim, ONE, ZERO)
        for tok in word:
            kind, n = tok
            t = self.E(n) if kind == "E" else (self.F(n) if kind == "F" else self.proj(n))
            out = mul(out, t)
        return out


def mul(a: Matrix, b: Matrix) -> Matrix:
    return matmul(a, b, zero=ZERO)


@lru_cache(maxsize=None)
def qweyl_module(m: int) -> QModule:
    """Lambda_m with basis F^(k) eta, k = 0..m."""
    if m < 0:
        raise ValueError("highest weight must be non-negative")
    dim = m + 1
    weights = tuple(m - 2 * k for k in range(dim))
    Es, Fs = {}, {}
    for n in range(1, dim):
        e = zeros(dim, dim, ZERO)
        f = zeros(dim, dim, ZERO)
        for k in range(dim):
            if k - n >= 0:
                e[k - n][k] = q_binom(m - k + n, n)
            if k + n < dim:
                f[k + n][k] = q_binom(k + n, n)
        Es[n], Fs[n] = e, f
    return QModule(weights, Es, Fs, f"L{m}")


def qtensor(m1: QModule, m2: QModule) -> QModule:
    """Tensor product through the coproduct of divided powers."""
    weights = tuple(a + b for a in m1.weights for b in m2.weights)
    Es, Fs = {}, {}
    for t in range(1, m1.top + m2.top + 1):
        e = zeros(len(weights), len(weights), ZERO)
        f = zeros(len(weights), len(weights), ZERO)
        for t1 in range(t + 1):
            t2 = t - t1
            e = matadd(e, scale(kron(mul(m1.E(t1), m1.K(t2)), m2.E(t2)), vpow(t1 * t2)))
            f = matadd(f, scale(kron(m1.F(t1), mul(m2.F(t2), m2.K(-t1))), vpow(t1 * t2)))
        if any(any(r) for r in e):
            Es[t] = e
        if any(any(r) for r in f):
            Fs[t] = f
    return QModule(weights, Es, Fs, f"({m1.label}*{m2.label})")


def at_one(m: Matrix) -> list[list[int]]:
    return [[x.at_one() if isinstance(x, LaurentPoly) else x for x in row] for row in m]


# --- closed families ------------------------------------------------------------

def check_e(e: int) -> None:
    if e not in (1, -1):
        raise ValueError(f"e must be 1 or -1, got {e}")


def s_coeff(e: int, kind: str, x: int, y: int) -> LaurentPoly:
    """Coefficient of F^(x) 1_l E^(y) (with <i,l> = x + y) in s'_e or s''_e."""
    check_e(e)
    if kind not in ("prime", "dprime"):
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "prime":
        return vpow(e * y) * sign(y)
    return vpow(e * x) * sign(x)


@dataclass(frozen=True)
class HatWindowElt:
    """Window restriction of an infinite sum.

    order "FE" means terms F^(x) 1_l E^(y) keyed (x, l, y); "EF" means E^(x) 1_l F^(y).
    """

    terms: dict
    order: str
    window: int

    def on(self, mod: QModule) -> Matrix:
        return fe_matrix(mod, self.terms) if self.order == "FE" else ef_matrix(mod, self.terms)

    def omega(self) -> HatWindowElt:
        """omega swaps E and F and negates weights."""
        return HatWindowElt({(x, -lam, y): c for (x, lam, y), c in self.terms.items()},
                            "EF" if self.order == "FE" else "FE", self.window)


def s_element(e: int, kind: str, window: int) -> HatWindowElt:
    """Window restriction of the defining sum of s'_e (kind "prime") or s''_e ("dprime")."""
    out = {}
    for x in range(window + 1):
        for y in range(window + 1):
            lam = x + y
            if abs(lam) <= window:
                out[(x, lam, y)] = s_coeff(e, kind, x, y)
    return HatWindowElt(out, "FE", window)


UdotSl2Elt = UdotElt
QWeylModule = QModule


def fe_matrix(mod: QModule, terms: dict) -> Matrix:
    """Matrix of sum c F^(x) 1_l E^(y) on a module."""
    out = zeros(mod.dim, mod.dim, ZERO)
    for (x, lam, y), c in terms.items():
        if x > mod.top or y > mod.top:
            continue
        out = matadd(out, scale(mul(mod.F(x), mul(mod.proj(lam), mod.E(y))), c))
    return out


def ef_matrix(mod: QModule, terms: dict) -> Matrix:
    """Matrix of sum c E^(x) 1_l F^(y) on a module."""
    out = zeros(mod.dim, mod.dim, ZERO)
    for (x, lam, y), c in terms.items():
        if x > mod.top or y > mod.top:
            continue
        out = matadd(out, scale(mul(mod.E(x), mul(mod.proj(lam), mod.F(y))), c))
    return out


def module_window(mod: QModule) -> int:
    return 2 * max([mod.top] + [abs(z) for z in mod.weights]) + 2


def s_matrix(mod: QModule, e: int, kind: str) -> Matrix:
    return s_element(e, kind, module_window(mod)).on(mod)


def x_matrix(mod: QModule, h) -> Matrix:
    out = identity(mod.dim, ONE, ZERO)
    for c in range(1, mod.top + 1):
        out = matadd(out, scale(mod.E(c), LaurentPoly._lift(h) ** c))
    return out


def y_matrix(mod: QModule, h) -> Matrix:
    out = identity(mod.dim, ONE, ZERO)
    for c in range(1, mod.top + 1):
        out = matadd(out, scale(mod.F(c), LaurentPoly._lift(h) ** c))
    return out


def s_triple_product(mod: QModule, kind: str) -> Matrix:
    """x(1) y(-1) x(1) for kind "dprime", y(1) x(-1) y(1) for "prime"."""
    if kind == "dprime":
        return mul(x_matrix(mod, 1), mul(y_matrix(mod, -1), x_matrix(mod, 1)))
    return mul(y_matrix(mod, 1), mul(x_matrix(mod, -1), y_matrix(mod, 1)))


def proportional_unit(x: Matrix, y: Matrix) -> LaurentPoly | None:
    """The signed monomial c with x = c y, or None."""
    c = None
    for rx, ry in zip(x, y):
        for a, b in zip(rx, ry):
            if not b:
                if a:
                    return None
                continue
            if c is None:
                if not a:
                    return None
                # leading terms fix the candidate
                (ea, ca), (eb, cb) = max(a.terms()), max(b.terms())
                if ca % cb:
                    return None
                c = LaurentPoly.mono(ea - eb, ca // cb)
                if not c.is_unit():
                    return None
            if a != c * b:
                return None
    return c if c is not None else ONE


def conj_check(u: UdotElt, e: int = 1, kind: str = "prime", mmax: int = 6) -> dict:
    """Conjugate the matrix of u by the s matrix on Lambda_m for m <= mmax.

    u must be a single monomial E^(n) 1_z or F^(n) 1_z or 1_z (possibly scaled).
    Closure: the conjugate is c times the swapped monomial with c a unit that does not depend on m.
    Projectors: 1_z goes to 1_{-z}.
    """
    if len(u.terms) != 1:
        raise ValueError("conj_check takes a single monomial")
    (a, z, b), coef = next(iter(u.terms.items()))
    if a and b:
        raise ValueError("monomial must be one-sided")
    if a:
        image = UdotElt.mono(0, -z - 2 * a, a, coef)      # F^(a) 1_{-z}
    elif b:
        image = UdotElt.mono(b, -z - 2 * b, 0, coef)      # E^(b) 1_{-z-2b}... from F^(b) 1_{z+2b}
    else:
        image = UdotElt.mono(0, -z, 0, coef)
    other = "dprime" if kind == "prime" else "prime"
    units, ok = set(), True
    for m in range(mmax + 1):
        mod = qweyl_module(m)
        s, sinv = s_matrix(mod, e, kind), s_matrix(mod, -e, other)
        conj = mul(s, mul(mod.elt_matrix(u), sinv))
        target_mat = mod.elt_matrix(image)
        if not any(any(r) for r in target_mat):
            ok &= not any(any(r) for r in conj)
            continue
        c = proportional_unit(conj, target_mat)
        if c is None:
            ok = False
        else:
            units.add(c)
    return {"closed": ok and len(units) <= 1, "unit": next(iter(units)) if len(units) == 1 else None,
            "image": image}


# --- the tau sums -----------------------------------------------------------------

@lru_cache(maxsize=None)
def tau_coeff(e: int, r: int, x: int, y: int) -> LaurentPoly:
    """c_{x,y;r} for r >= 0 (the coefficient does not depend on the weight)."""
    check_e(e)
    if r < 0:
        raise ValueError("use tau_coeff_tilde for r < 0")
    total = ZERO
    for p in range(y + 1):
        for t in range(r + p + 1):
            total = total + vpow(e * (-(y - p + t) * p + x + t)) * sign(x + t) \
                * q_binom(r + p, t) * q_binom(y, p)
    return total


@lru_cache(maxsize=None)
def tau_coeff_tilde(e: int, r: int, x: int, y: int) -> LaurentPoly:
    """The mirrored coefficient for r <= 0."""
    check_e(e)
    if r > 0:
        raise ValueError("use tau_coeff for r > 0")
    total = ZERO
    for m in range(x + 1):
        for t in range(m - r + 1):
            # the sign comes from (-1)^n with n = y + t
            total = total + vpow(e * (-m * (x + t - m) + y + t)) * sign(y + t) \
                * q_binom(m - r, t) * q_binom(x, m)
    return total


def tau_table(e: int, r: int, window: int) -> dict[tuple[int, int], LaurentPoly]:
    fn = tau_coeff if r >= 0 else tau_coeff_tilde
    return {(x, y): fn(e, r, x, y) for x in range(window + 1) for y in range(window + 1)}


def tau_from_table(mod: QModule, e: int, r: int) -> Matrix:
    """tau''_r assembled from its coefficient table on a module."""
    w = mod.top
    if r >= 0:
        terms = {(x, x + y + r, y): tau_coeff(e, r, x, y) for x in range(w + 1) for y in range(w + 1)}
        return fe_matrix(mod, terms)
    terms = {(x, -x - y + r, y): tau_coeff_tilde(e, r, x, y) for x in range(w + 1) for y in range(w + 1)}
    return ef_matrix(mod, terms)


def tau_direct(mod: QModule, e: int, r: int, lower_first: bool = False) -> Matrix:
    """The defining triple sum evaluated directly on a module.

    Default: sum (-1)^n v^(e(-mp+n)) E^(m) F^(n) E^(p) 1_l, <i,l> = -m+n-p+r.
    lower_first=True gives the omega-mirrored sum F E F 1_l, <i,l> = m-n+p-r.
    """
    out = zeros(mod.dim, mod.dim, ZERO)
    w = mod.top
    for m in range(w + 1):
        for n in range(w + 1):
            for p in range(w + 1):
                lam = (m - n + p - r) if lower_first else (-m + n - p + r)
                if lam not in mod.weights:
                    continue
                c = vpow(e * (-m * p + n)) * sign(n)
                if lower_first:
                    op = mul(mod.F(m), mul(mod.E(n), mul(mod.F(p), mod.proj(lam))))
                else:
                    op = mul(mod.E(m), mul(mod.F(n), mul(mod.E(p), mod.proj(lam))))
                out = matadd(out, scale(op, c))
    return out


# --- coproduct and Hopf structure constants ----------------------------------------------

def mhat(a: Mono, b: Mono, c: Mono) -> LaurentPoly:
    """Coefficient of a (x) b in the coproduct of c."""
    a1, z1, b1 = a
    a2, z2, b2 = b
    if a1 + a2 != c[0] or b1 + b2 != c[2] or z1 + z2 != c[1]:
        return ZERO
    # mu2 is the source weight of the lowering part of b
    mu2 = z2 + 2 * b2
    return vpow(a1 * a2 + z1 * a2 + b1 * b2 - mu2 * b1)


def delta(c: Mono, window: int) -> dict[tuple[Mono, Mono], LaurentPoly]:
    """Coproduct of a monomial with both weight components restricted to |z| <= window."""
    out = {}
    a, z, b = c
    for a1 in range(a + 1):
        for b1 in range(b + 1):
            for z1 in range(-window, window + 1):
                z2 = z - z1
                if abs(z2) > window:
                    continue
                m1, m2 = (a1, z1, b1), (a - a1, z2, b - b1)
                out[(m1, m2)] = mhat(m1, m2, c)
    return out


def delta_elt(u: UdotElt, window: int) -> dict[tuple[Mono, Mono], LaurentPoly]:
    out: dict = {}
    for m, c in u.terms.items():
        for k, v in delta(m, window).items():
            out[k] = out.get(k, ZERO) + c * v
    return {k: v for k, v in out.items() if v}


def pair_matrix(m1: QModule, m2: QModule, pairs: dict) -> Matrix:
    out = zeros(m1.dim * m2.dim, m1.dim * m2.dim, ZERO)
    for (a, b), c in pairs.items():
        out = matadd(out, scale(kron(m1.mono_matrix(a), m2.mono_matrix(b)), c))
    return out


def m_const(a: Mono, b: Mono, c: Mono) -> LaurentPoly:
    return mono_product(a, b).get(c, ZERO)


def counit(u: UdotElt) -> LaurentPoly:
    return u.terms.get((0, 0, 0), ZERO)


@lru_cache(maxsize=None)
def antipode_E(n: int, lam: int) -> LaurentPoly:
    """s with S(E^(n) 1_lam) = s E^(n) 1_{-lam-2n}, solved from m(S x 1)Delta = unit counit."""
    if n == 0:
        return ONE
    total = ZERO
    for k in range(n):
        total = total + vpow(k * (n - k) + lam * (n - k)) * q_binom(n, k) * antipode_E(k, lam)
    return -total


@lru_cache(maxsize=None)
def antipode_F(n: int, mu: int) -> LaurentPoly:
    """s with S(F^(n) 1_mu) = s F^(n) 1_{-mu+2n}, solved the same way."""
    if n == 0:
        return ONE
    mu2 = 2 * n - mu
    total = ZERO
    for k in range(n):
        total = total + vpow(k * (n - k) - mu2 * k) * q_binom(n, k) * antipode_F(k, mu)
    return -total * vpow(mu2 * n)


@lru_cache(maxsize=None)
def _antipode(m: Mono) -> tuple:
    a, z, b = m
    # S(E^(a) 1_z F^(b)) = S(F^(b) 1_{z+2b}) S(E^(a) 1_z)
    mu = z + 2 * b
    fpart = UdotElt.mono(0, -mu, b, antipode_F(b, mu))  # F^(b) 1_{-mu+2b} = 1_{-mu} F^(b)
    epart = UdotElt.mono(a, -z - 2 * a, 0, antipode_E(a, z))
    return tuple((fpart * epart).terms.items())


def antipode(u: UdotElt) -> UdotElt:
    out: dict = {}
    for m, c in u.terms.items():
        for k, v in _antipode(m):
            out[k] = out.get(k, ZERO) + c * v
    return UdotElt(out)


def omega(m: Mono) -> tuple[int, int, int]:
    """omega(E^(a) 1_z F^(b)) = F^(a) 1_{-z} E^(b), returned in F-left order (a, -z, b)."""
    return (m[0], -m[1], m[2])


# --- axiom checks ----------------------------------------------------------------------

def axiom_assoc(a: Mono, b: Mono, d: Mono) -> bool:
    A, B, D = (UdotElt.mono(*x) for x in (a, b, d))
    return (A * B) * D == A * (B * D)


def axiom_coassoc(a: Mono, b: Mono, d: Mono) -> bool:
    """sum_c mhat^{a,b}_c mhat^{c,d}_e = sum_c mhat^{a,c}_e mhat^{b,d}_c with e forced by degrees."""
    e = (a[0] + b[0] + d[0], a[1] + b[1] + d[1], a[2] + b[2] + d[2])
    ab = (a[0] + b[0], a[1] + b[1], a[2] + b[2])
    bd = (b[0] + d[0], b[1] + d[1], b[2] + d[2])
    return mhat(a, b, ab) * mhat(ab, d, e) == mhat(a, bd, e) * mhat(b, d, bd)


def _splits(c: Mono, z1: int) -> Iterable[tuple[Mono, Mono]]:
    for a1 in range(c[0] + 1):
        for b1 in range(c[2] + 1):
            yield (a1, z1, b1), (c[0] - a1, c[1] - z1, c[2] - b1)


def axiom_compat(a: Mono, b: Mono, e: Mono, d: Mono) -> bool:
    """Coefficient of e (x) d in Delta(ab) equals that in Delta(a)Delta(b)."""
    lhs = ZERO
    for c, coef in mono_product(a, b).items():
        lhs = lhs + coef * mhat(e, d, c)
    rhs = ZERO
    for a1 in range(a[0] + 1):
        for b1 in range(a[2] + 1):
            z1 = target(e) - 2 * a1  # target of a' must equal target of e
            ap, bp = (a1, z1, b1), (a[0] - a1, a[1] - z1, a[2] - b1)
            h1 = mhat(ap, bp, a)
            if not h1:
                continue
            for c1 in range(b[0] + 1):
                for d1 in range(b[2] + 1):
                    zc = source(ap) - 2 * c1
                    cp, dp = (c1, zc, d1), (b[0] - c1, b[1] - zc, b[2] - d1)
                    h2 = mhat(cp, dp, b)
                    if h2:
                        rhs = rhs + h1 * h2 * m_const(ap, cp, e) * m_const(bp, dp, d)
    return lhs == rhs


def axiom_counit_unit(a: Mono, lam: int) -> bool:
    """mhat^{1_l', 1_l''}_{1_l} is 1 exactly when the weights add up."""
    l1, l2 = a[1], lam - a[1]
    c = mhat((0, l1, 0), (0, l2, 0), (0, lam, 0))
    return c == (ONE if a[0] == a[2] == 0 else c) and mhat((0, l1, 0), (0, l2 + 1, 0), (0, lam, 0)) == ZERO


def axiom_units_sum(a: Mono, c: Mono) -> bool:
    """sum_l m^c_{a,1_l} = sum_l m^c_{1_l,a} = delta_{a,c}."""
    right = m_const(a, (0, source(a), 0), c)
    left = m_const((0, target(a), 0), a, c)
    expect = ONE if a == c else ZERO
    return right == expect and left == expect


def axiom_counit(a: Mono, c: Mono) -> bool:
    """mhat^{a,1_0}_c = mhat^{1_0,a}_c = delta_{a,c}."""
    expect = ONE if a == c else ZERO
    return mhat(a, (0, 0, 0), c) == expect and mhat((0, 0, 0), a, c) == expect


def axiom_unit_product(a: Mono, b: Mono) -> bool:
    """m^{1_0}_{a,b} = delta_{a,1_0} delta_{b,1_0}."""
    expect = ONE if a == b == (0, 0, 0) else ZERO
    return m_const(a, b, (0, 0, 0)) == expect


def axiom_cocommutative_at_one(a: Mono, b: Mono, c: Mono) -> bool:
    return mhat(a, b, c).at_one() == mhat(b, a, c).at_one()


def antipode_side(a: Mono, tb: int, left: bool = True) -> dict[Mono, LaurentPoly]:
    """Terms of m(S x 1)Delta(a) (or m(1 x S)Delta(a)) whose target weight is tb."""
    total: dict[Mono, LaurentPoly] = {}
    for a1 in range(a[0] + 1):
        for b1 in range(a[2] + 1):
            if left:
                z1 = -tb - 2 * b1  # target of S(d) is -source(d)
            else:
                z1 = tb - 2 * a1   # target of d is tb
            d, e = (a1, z1, b1), (a[0] - a1, a[1] - z1, a[2] - b1)
            h = mhat(d, e, a)
            if not h:
                continue
            if left:
                prod = antipode(UdotElt.mono(*d)) * UdotElt.mono(*e)
            else:
                prod = UdotElt.mono(*d) * antipode(UdotElt.mono(*e))
            for k, c in prod.terms.items():
                if target(k) == tb:
                    total[k] = total.get(k, ZERO) + h * c
    return {k: c for k, c in total.items() if c}


def axiom_antipode(a: Mono, b: Mono, left: bool = True) -> bool:
    """Coefficient of b in m(S x 1)Delta(a) is the counit of a times that of the unit."""
    expect = ONE if a == (0, 0, 0) and b[0] == b[2] == 0 else ZERO
    return antipode_side(a, target(b), left).get(b, ZERO) == expect


def axiom_antipode_all(a: Mono, tb: int, left: bool = True) -> bool:
    """Every coefficient of target weight tb at once."""
    expect = {(0, tb, 0): ONE} if a == (0, 0, 0) else {}
    return antipode_side(a, tb, left) == expect


def window_monos(window: int) -> list[Mono]:
    return [(a, z, b) for a in range(window + 1) for z in range(-window, window + 1)
            for b in range(window + 1)]


@dataclass
class HopfReport:
    window: int
    counts: dict
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def canonical_dual_hopf(window: int, instances: int = 200, seed: int = 0,
                        budget: int | None = None) -> HopfReport:
    """Check the structure-constant axioms on seeded random windowed instances."""
    monos = window_monos(window)
    if budget is not None and len(monos) > budget:
        raise BudgetExceeded(f"{len(monos)} monomials exceed budget {budget}")
    rng = random.Random(seed)
    pick = lambda: rng.choice(monos)
    checks = {
        "associativity": lambda: axiom_assoc(pick(), pick(), pick()),
        "coassociativity": lambda: axiom_coassoc(pick(), pick(), pick()),
        "compatibility": lambda: _compat_instance(rng, monos),
        "projector-coproduct": lambda: axiom_counit_unit((0, rng.randint(-window, window), 0),
                                                         rng.randint(-window, window)),
        "projector-units": lambda: _units_instance(rng, monos),
        "counit": lambda: _counit_instance(rng, monos),
        "unit-product": lambda: _unit_product_instance(rng, monos),
        "cocommutativity-at-one": lambda: _cocomm_instance(rng, monos),
        "antipode": lambda: _antipode_instance(rng, monos),
    }
    counts, failures = {}, []
    for name, check in checks.items():
        counts[name] = instances
        for k in range(instances):
            state = rng.getstate()
            if not check():
                failures.append((name, k, state[1][0]))
    return HopfReport(window, counts, failures)


def _compat_instance(rng, monos) -> bool:
    a, b = rng.choice(monos), rng.choice(monos)
    prod = UdotElt.mono(*a) * UdotElt.mono(*b)
    if prod.terms and rng.random() < 0.8:
        c = rng.choice(sorted(prod.terms))
        a1, b1 = rng.randint(0, c[0]), rng.randint(0, c[2])
        z1 = rng.randint(-4, 4)
        e, d = (a1, z1, b1), (c[0] - a1, c[1] - z1, c[2] - b1)
    else:
        e, d = rng.choice(monos), rng.choice(monos)
    return axiom_compat(a, b, e, d)


def _units_instance(rng, monos) -> bool:
    a = rng.choice(monos)
    c = a if rng.random() < 0.5 else rng.choice(monos)
    return axiom_units_sum(a, c)


def _counit_instance(rng, monos) -> bool:
    a = rng.choice(monos)
    c = a if rng.random() < 0.5 else rng.choice(monos)
    return axiom_counit(a, c)


def _unit_product_instance(rng, monos) -> bool:
    if rng.random() < 0.3:
        return axiom_unit_product((0, 0, 0), (0, 0, 0))
    return axiom_unit_product(rng.choice(monos), rng.choice(monos))


def _cocomm_instance(rng, monos) -> bool:
    c = rng.choice(monos)
    a1, b1 = rng.randint(0, c[0]), rng.randint(0, c[2])
    z1 = rng.randint(-4, 4)
    return axiom_cocommutative_at_one((a1, z1, b1), (c[0] - a1, c[1] - z1, c[2] - b1), c)


def _antipode_instance(rng, monos) -> bool:
    # only monomials with target weight 0 give nonzero sums, so favour them
    zero_target = [m for m in monos if target(m) == 0]
    a = (0, 0, 0) if rng.random() < 0.1 else rng.choice(zero_target if rng.random() < 0.7 else monos)
    tb = rng.randint(-4, 4)
    return axiom_antipode_all(a, tb, left=rng.random() < 0.5)


def tables(window: int) -> dict:
    """Sparse structure constants on a window, JSON-ready and deterministically ordered."""
    monos = window_monos(window)
    key = lambda m: f"{m[0]},{m[1]},{m[2]}"
    mult = {}
    for a in monos:
        for b in monos:
            if source(a) != target(b):
                continue
            for c, v in sorted(mono_product(a, b).items()):
                mult[f"{key(a)}|{key(b)}|{key(c)}"] = v.to_json()
    comult = {}
    for c in monos:
        for (a, b), v in sorted(delta(c, window).items()):
            if v and a in set(monos) and b in set(monos):
                comult[f"{key(a)}|{key(b)}|{key(c)}"] = v.to_json()
    return {"window": window, "m": dict(sorted(mult.items())), "mhat": dict(sorted(comult.items()))}
