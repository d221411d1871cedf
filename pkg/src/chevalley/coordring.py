"""Coordinate Hopf algebra at v = 1 through matrix coefficients of Weyl modules."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .exactring import int_binom
from .linalg import Matrix, dual_lattice, hnf, identity, kron, matadd, matmul, scale
from .rootdatum import RootDatum, Vec
from .weylmod import (WeightModule, binom_token, build_weyl_module, dual, omega_twist,
                      tensor, theta_minus, theta_plus, trivial_module, unit_proj)


class UnknownModule(KeyError):
    pass


# --- matrix coefficients -----------------------------------------------------------

@dataclass(frozen=True)
class MatCoeffFn:
    """sum of coef * (u -> row-th coordinate of u applied to the col-th basis vector)."""

    terms: tuple  # (coef, module, row, col)

    def __add__(self, other: MatCoeffFn) -> MatCoeffFn:
        return MatCoeffFn(self.terms + other.terms)

    def scale(self, c) -> MatCoeffFn:
        return MatCoeffFn(tuple((Fraction(c) * k, m, r, s) for k, m, r, s in self.terms))

    def __mul__(self, other: MatCoeffFn) -> MatCoeffFn:
        return product(self, other)

    @property
    def modules(self) -> list[WeightModule]:
        seen = []
        for _, m, _, _ in self.terms:
            if all(m is not x for x in seen):
                seen.append(m)
        return seen


def matcoeff(rd: RootDatum, lam: Sequence[int], row: int, col: int) -> MatCoeffFn:
    lam = tuple(lam)
    if not rd.is_dominant(lam):
        raise UnknownModule(f"{lam} is not dominant")
    m = build_weyl_module(rd, lam)
    return module_coeff(m, row, col)


def module_coeff(m: WeightModule, row: int, col: int, coef=1) -> MatCoeffFn:
    if not (0 <= row < m.dim and 0 <= col < m.dim):
        raise UnknownModule(f"index ({row}, {col}) outside module of dim {m.dim}")
    return MatCoeffFn(((Fraction(coef), m, row, col),))


def unit(rd: RootDatum) -> MatCoeffFn:
    return module_coeff(trivial_module(rd), 0, 0)


def eval_on_word(f: MatCoeffFn, word: Sequence[tuple]) -> Fraction:
    total = Fraction(0)
    cache: dict[int, Matrix] = {}
    for coef, m, r, c in f.terms:
        mat = cache.get(id(m))
        if mat is None:
            mat = cache[id(m)] = m.word_matrix(word)
        total += coef * mat[r][c]
    return total


def eval_on_group(f: MatCoeffFn, g) -> object:
    ring = g.registry.ring
    total = ring.zero
    for coef, m, r, c in f.terms:
        x = g.matrix_on(m)[r][c]
        total = ring.norm(total + ring.coerce(coef) * x)
    return total


_TENSORS: dict = {}


def _tensor(m1: WeightModule, m2: WeightModule) -> WeightModule:
    key = (id(m1), id(m2))
    hit = _TENSORS.get(key)
    if hit is None or hit[0] is not m1 or hit[1] is not m2:
        hit = _TENSORS[key] = (m1, m2, tensor(m1, m2))
    return hit[2]


def product(f1: MatCoeffFn, f2: MatCoeffFn, budget: int | None = None) -> MatCoeffFn:
    """(f1 f2)(u) = (f1 x f2)(Delta u) as a coefficient on the tensor module."""
    terms = []
    for c1, m1, r1, s1 in f1.terms:
        for c2, m2, r2, s2 in f2.terms:
            if budget is not None and m1.dim * m2.dim > budget:
                raise BudgetExceeded(f"tensor dim {m1.dim * m2.dim} exceeds budget {budget}")
            t = _tensor(m1, m2)
            terms.append((c1 * c2, t, r1 * m2.dim + r2, s1 * m2.dim + s2))
    return MatCoeffFn(tuple(terms))


def coproduct(f: MatCoeffFn) -> list[tuple[MatCoeffFn, MatCoeffFn]]:
    out = []
    for coef, m, r, c in f.terms:
        for k in range(m.dim):
            out.append((module_coeff(m, r, k, coef), module_coeff(m, k, c)))
    return out


_DUALS: dict = {}


def _dual(m: WeightModule) -> WeightModule:
    hit = _DUALS.get(id(m))
    if hit is None or hit[0] is not m:
        hit = _DUALS[id(m)] = (m, dual(m))
    return hit[1]


def antipode(f: MatCoeffFn) -> MatCoeffFn:
    """f o S is the transposed coefficient on the contragredient module."""
    return MatCoeffFn(tuple((coef, _dual(m), c, r) for coef, m, r, c in f.terms))


def counit(f: MatCoeffFn) -> Fraction:
    return eval_on_word(f, [])


# --- words in the Kostant form --------------------------------------------------------

def word_counit(word: Sequence[tuple]) -> int:
    for tok in word:
        kind = tok[0]
        if kind in ("E", "F") and tok[2] != 0:
            return 0
        if kind == "B" and tok[2] != 0:
            return 0
        if kind == "P" and any(tok[1]):
            return 0
    return 1


def word_coproduct(word: Sequence[tuple], w1: set, w2: set) -> list[tuple[int, tuple, tuple]]:
    """Delta of a word as (coef, left word, right word); projector splits restricted to w1 x w2."""
    acc = [(1, (), ())]
    for tok in word:
        kind = tok[0]
        parts = []
        if kind in ("E", "F"):
            _, i, n = tok
            parts = [(1, (kind, i, a), (kind, i, n - a)) for a in range(n + 1)]
        elif kind == "B":
            # binom(y, k) on a sum of weights splits by Vandermonde
            _, y, k = tok
            parts = [(1, ("B", y, a), ("B", y, k - a)) for a in range(k + 1)]
        elif kind == "P":
            lam = tok[1]
            for l1 in sorted(w1):
                l2 = tuple(a - b for a, b in zip(lam, l1))
                if l2 in w2:
                    parts.append((1, ("P", l1), ("P", l2)))
        else:
            raise ValueError(f"unknown token {tok!r}")
        acc = [(c * d, a + (t1,), b + (t2,)) for c, a, b in acc for d, t1, t2 in parts]
    return acc


def kostant_tokens(rd: RootDatum, nmax: int) -> list[tuple]:
    toks = []
    for i in rd.nodes:
        for n in range(1, nmax + 1):
            toks += [theta_plus(i, n), theta_minus(i, n)]
    for j in range(rd.rank):
        y = tuple(int(a == j) for a in range(rd.rank))
        for k in range(1, nmax + 1):
            toks.append(binom_token(y, k))
    return toks


def random_word(rd: RootDatum, rng: random.Random, weights: Sequence[Vec], depth: int = 3,
                nmax: int = 2) -> list[tuple]:
    toks = kostant_tokens(rd, nmax)
    word = [rng.choice(toks) for _ in range(rng.randint(0, depth))]
    if weights and rng.random() < 0.5:
        word.insert(rng.randint(0, len(word)), unit_proj(rng.choice(list(weights))))
    return word


def integrality_check(f: MatCoeffFn, depth: int, nmax: int = 3) -> bool:
    """True iff f is integer-valued on all Kostant token words of length <= depth."""
    if not f.terms:
        return True
    rd = f.terms[0][1].datum
    toks = kostant_tokens(rd, nmax)
    state = tuple(tuple(int(k == r) for k in range(m.dim)) for _, m, r, _ in f.terms)

    def value(st) -> Fraction:
        return sum((coef * Fraction(v[c]) for (coef, _, _, c), v in zip(f.terms, st)), Fraction(0))

    if value(state).denominator != 1:
        return False
    level, seen = {state}, {state}
    mats = {(id(m), t): m.token_matrix(t) for _, m, _, _ in f.terms for t in toks}
    for _ in range(depth):
        nxt = set()
        for st in level:
            for t in toks:
                new = tuple(tuple(sum(v[k] * mats[(id(m), t)][k][c] for k in range(m.dim) if v[k])
                                  for c in range(m.dim))
                            for v, (_, m, _, _) in zip(st, f.terms))
                if new in seen:
                    continue
                if value(new).denominator != 1:
                    return False
                seen.add(new)
                nxt.add(new)
        level = nxt
    return True


def window_coeffs(rd: RootDatum, lams: Iterable[Sequence[int]]) -> list[MatCoeffFn]:
    out = []
    for lam in lams:
        m = build_weyl_module(rd, tuple(lam))
        out += [module_coeff(m, r, c) for r in range(m.dim) for c in range(m.dim)]
    return out


@dataclass
class CheckReport:
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, instance) -> None:
        self.counts[name] = self.counts.get(name, 0) + 1
        if not ok:
            self.failures.append((name, instance))

    @property
    def passed(self) -> bool:
        return not self.failures


def hopf_check(rd: RootDatum, lams: Sequence[Sequence[int]], instances: int = 50, seed: int = 0,
               depth: int = 3) -> CheckReport:
    """Coassociativity, counit, antipode, product and commutativity on seeded word instances."""
    rng = random.Random(seed)
    fs = window_coeffs(rd, lams)
    weights = sorted({w for f in fs for w in f.terms[0][1].weights})
    rep = CheckReport()

    def pick_word():
        return random_word(rd, rng, weights, depth)

    def ws(f):
        return set(f.terms[0][1].weights)

    def ev_pairs(pairs, u, w1, w2):
        return sum((c * eval_on_word(a, u1) * eval_on_word(b, u2)
                    for c, u1, u2 in word_coproduct(u, w1, w2) for a, b in pairs), Fraction(0))

    for k in range(instances):
        f, g = rng.choice(fs), rng.choice(fs)
        u, u2, u3 = pick_word(), pick_word(), pick_word()
        wf = ws(f)
        # product is the transpose of the coproduct of U
        fg = product(f, g)
        lhs = eval_on_word(fg, u)
        rhs = sum((c * eval_on_word(f, a) * eval_on_word(g, b)
                   for c, a, b in word_coproduct(u, wf, ws(g))), Fraction(0))
        rep.record("product", lhs == rhs, (f, g, u))
        rep.record("commutativity", lhs == eval_on_word(product(g, f), u), (f, g, u))
        # coproduct is the transpose of multiplication
        cop = coproduct(f)
        rep.record("coproduct", sum(eval_on_word(a, u) * eval_on_word(b, u2) for a, b in cop)
                   == eval_on_word(f, u + u2), (f, u, u2))
        # coassociativity on triples of words
        left = sum(eval_on_word(a1, u) * eval_on_word(a2, u2) * eval_on_word(b, u3)
                   for a, b in cop for a1, a2 in coproduct(a))
        right = sum(eval_on_word(a, u) * eval_on_word(b1, u2) * eval_on_word(b2, u3)
                    for a, b in cop for b1, b2 in coproduct(b))
        rep.record("coassociativity", left == right, (f, u, u2, u3))
        # counit on both sides
        rep.record("counit", sum(counit(a) * eval_on_word(b, u) for a, b in cop) == eval_on_word(f, u)
                   and sum(eval_on_word(a, u) * counit(b) for a, b in cop) == eval_on_word(f, u), (f, u))
        # antipode: m(S x 1) delta f = counit(f) counit(.)
        expect = counit(f) * word_counit(u)
        sl = [(antipode(a), b) for a, b in cop]
        sr = [(a, antipode(b)) for a, b in cop]
        rep.record("antipode-left", ev_pairs(sl, u, set(sl[0][0].terms[0][1].weights), wf) == expect, (f, u))
        rep.record("antipode-right", ev_pairs(sr, u, wf, set(sr[0][1].terms[0][1].weights)) == expect, (f, u))
        rep.record("antipode-involution", eval_on_word(antipode(antipode(f)), u) == eval_on_word(f, u), (f, u))
    return rep


def character_check(reg, fs: Sequence[MatCoeffFn], elements: Sequence, rng: random.Random,
                    instances: int = 20) -> CheckReport:
    """Evaluation at a group element is multiplicative and sends antipode to inverse."""
    rep = CheckReport()
    ring = reg.ring
    for _ in range(instances):
        g = rng.choice(elements)
        f1, f2 = rng.choice(fs), rng.choice(fs)
        lhs = eval_on_group(product(f1, f2), g)
        rhs = ring.norm(eval_on_group(f1, g) * eval_on_group(f2, g))
        rep.record("character", lhs == rhs, (f1, f2, g.word))
        rep.record("antipode-inverse", eval_on_group(antipode(f1), g) == eval_on_group(f1, g.inverse()),
                   (f1, g.word))
    return rep


# --- polynomials in (h-, torus, h+) ---------------------------------------------------------

class TriplePolynomial:
    """Sparse polynomial, Laurent in the torus variables; exponent tuples index the terms."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, nvars: int, c) -> TriplePolynomial:
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, k: int, power: int = 1) -> TriplePolynomial:
        e = [0] * nvars
        e[k] = power
        return cls(nvars, {tuple(e): Fraction(1)})

    def _lift(self, x) -> TriplePolynomial:
        return x if isinstance(x, TriplePolynomial) else TriplePolynomial.const(self.nvars, x)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TriplePolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return TriplePolynomial(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        if not isinstance(other, TriplePolynomial):
            if not other:
                return TriplePolynomial(self.nvars)
            return TriplePolynomial(self.nvars, {k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return TriplePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriplePolynomial):
            other = self._lift(other)
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return " + ".join(f"{v}*{k}" for k, v in sorted(self.terms.items())) or "0"

    def to_json(self, names: Sequence[str]) -> dict:
        return {"variables": list(names),
                "terms": [[list(k), _jfrac(v)] for k, v in sorted(self.terms.items())]}


def _jfrac(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


def variable_names(rd: RootDatum) -> list[str]:
    n = len(rd.longest_element.word)
    return ([f"hm_{k + 1}" for k in range(n)] + [f"u_{j + 1}" for j in range(rd.rank)]
            + [f"hp_{k + 1}" for k in range(n)])


def _pmat(m: Matrix, nvars: int) -> Matrix:
    return [[TriplePolynomial.const(nvars, x) for x in row] for row in m]


def _pmul(a: Matrix, b: Matrix, nvars: int) -> Matrix:
    zero = TriplePolynomial(nvars)
    return matmul(a, b, zero=zero)


def _s_matrix(m: WeightModule, i: int, kind: str) -> Matrix:
    """Integer matrix of s'' = x(1) y(-1) x(1) or s' = y(1) x(-1) y(1)."""
    def x(h):
        out = identity(m.dim)
        for c in range(1, m.bound(i) + 1):
            out = matadd(out, scale(m.raising(i, c), h ** c))
        return out

    def y(h):
        out = identity(m.dim)
        for c in range(1, max((n for (j, n) in m.f if j == i), default=0) + 1):
            out = matadd(out, scale(m.lowering(i, c), h ** c))
        return out

    if kind == "spp":
        return matmul(matmul(x(1), y(-1)), x(1))
    return matmul(matmul(y(1), x(-1)), y(1))


def _prefix(m: WeightModule, word: Sequence[int], k: int, kind: str) -> tuple[Matrix, Matrix]:
    other = "sp" if kind == "spp" else "spp"
    p, pinv = identity(m.dim), identity(m.dim)
    for i in word[:k]:
        p = matmul(p, _s_matrix(m, i, kind))
        pinv = matmul(_s_matrix(m, i, other), pinv)
    return p, pinv


def pbw_generator(m: WeightModule, word: Sequence[int], k: int, c: int, lower: bool = False) -> Matrix:
    """x_{c,k}: the c-th divided power of the k-th simple generator conjugated along the word prefix."""
    kind = "sp" if lower else "spp"
    p, pinv = _prefix(m, word, k, kind)
    core = m.lowering(word[k], c) if lower else m.raising(word[k], c)
    return matmul(matmul(p, core), pinv)


def pbw_operator(m: WeightModule, word: Sequence[int], cvec: Sequence[int], lower: bool = False) -> Matrix:
    out = identity(m.dim)
    for k, c in enumerate(cvec):
        if c:
            out = matmul(out, pbw_generator(m, word, k, c, lower))
    return out


def _root_subgroup_poly(m: WeightModule, word, k: int, var: TriplePolynomial, lower: bool) -> Matrix:
    nv = var.nvars
    out = _pmat(identity(m.dim), nv)
    c, power = 1, var
    while True:
        g = pbw_generator(m, word, k, c, lower)
        if not any(any(r) for r in g):
            break
        out = matadd(out, [[power * x if x else TriplePolynomial(nv) for x in row] for row in g])
        power = power * var
        c += 1
    return out


def symbolic_bigcell(m: WeightModule, word: Sequence[int] | None = None) -> Matrix:
    """Matrix of y(hm) t(u) x(hp) on m with polynomial entries."""
    rd = m.datum
    word = tuple(word or rd.longest_element.word)
    n, r = len(word), rd.rank
    nv = 2 * n + r
    lower = _pmat(identity(m.dim), nv)
    for k in range(n):
        lower = _pmul(lower, _root_subgroup_poly(m, word, k, TriplePolynomial.var(nv, k), True), nv)
    upper = _pmat(identity(m.dim), nv)
    for k in range(n):
        upper = _pmul(upper, _root_subgroup_poly(m, word, k, TriplePolynomial.var(nv, n + r + k), False), nv)
    torus = [[TriplePolynomial(nv) for _ in range(m.dim)] for _ in range(m.dim)]
    for a, w in enumerate(m.weights):
        e = [0] * nv
        for j in range(r):
            e[n + j] = w[j]
        torus[a][a] = TriplePolynomial(nv, {tuple(e): Fraction(1)})
    return _pmul(_pmul(lower, torus, nv), upper, nv)


_SYMB: dict = {}


def _symbolic(m: WeightModule, word) -> Matrix:
    key = (id(m), tuple(word) if word else None)
    hit = _SYMB.get(key)
    if hit is None or hit[0] is not m:
        hit = _SYMB[key] = (m, symbolic_bigcell(m, word))
    return hit[1]


def iota_tilde_prime(f: MatCoeffFn, word: Sequence[int] | None = None) -> TriplePolynomial:
    """f evaluated on y(hm) t(u) x(hp) as a polynomial in (hm, u, hp)."""
    if not f.terms:
        raise ValueError("empty functional")
    rd = f.terms[0][1].datum
    n = len(word) if word else len(rd.longest_element.word)
    total = TriplePolynomial(2 * n + rd.rank)
    for coef, m, r, c in f.terms:
        total = total + _symbolic(m, word)[r][c] * coef
    return total


def kappa(f: MatCoeffFn, word: Sequence[int] | None = None) -> TriplePolynomial:
    """Restriction to the raising part: f(x(hp)) as a polynomial in hp."""
    rd = f.terms[0][1].datum
    word = tuple(word or rd.longest_element.word)
    n = len(word)
    total = TriplePolynomial(n)
    for coef, m, r, c in f.terms:
        mat = _pmat(identity(m.dim), n)
        for k in range(n):
            mat = _pmul(mat, _root_subgroup_poly(m, word, k, TriplePolynomial.var(n, k), False), n)
        total = total + mat[r][c] * coef
    return total


class Echelon:
    """Incremental row echelon form over Q for sparse vectors."""

    def __init__(self):
        self.rows: dict = {}  # pivot -> row dict with row[pivot] == 1

    def reduce(self, vec: dict) -> dict:
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        changed = True
        while vec and changed:
            changed = False
            for k in sorted(vec):
                row = self.rows.get(k)
                if row is not None and vec.get(k):
                    c = vec[k]
                    for kk, vv in row.items():
                        nv = vec.get(kk, 0) - c * vv
                        if nv:
                            vec[kk] = nv
                        else:
                            vec.pop(kk, None)
                    changed = True
                    break
        return vec

    def add(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = min(vec)
        c = vec[piv]
        self.rows[piv] = {k: v / c for k, v in vec.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def poly_rank(polys: Iterable[TriplePolynomial]) -> int:
    ech = Echelon()
    for p in polys:
        ech.add(p.terms)
    return ech.rank


def iota_full_rank(rd: RootDatum, lams: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(rank of the polynomial images, dimension of the coefficient space)."""
    fs = window_coeffs(rd, lams)
    return poly_rank(iota_tilde_prime(f) for f in fs), len(fs)


def generators(rd: RootDatum) -> list[MatCoeffFn]:
    """Coefficients against the highest vector of each generator module and the lowest vector of its twist."""
    out = []
    for lam in rd.dominant_generators:
        m = build_weyl_module(rd, tuple(lam))
        tw = omega_twist(m)
        out += [module_coeff(m, r, 0) for r in range(m.dim)]
        out += [module_coeff(tw, r, 0) for r in range(tw.dim)]
    return out


@dataclass
class GenerationReport:
    passed: bool
    degree_bound: int
    generator_count: int
    span_rank: int
    window_rank: int
    missing: int


def generation_check(rd: RootDatum, lams: Sequence[Sequence[int]], degree_bound: int = 3,
                     budget: int | None = 20000) -> GenerationReport:
    """Do products of the generators up to the degree bound span the window's coefficient space?"""
    gens = [iota_tilde_prime(f) for f in generators(rd)]
    nv = gens[0].nvars
    span = Echelon()
    span.add(TriplePolynomial.const(nv, 1).terms)
    layer = [(TriplePolynomial.const(nv, 1), -1)]
    count = 0
    for _ in range(degree_bound):
        nxt = []
        for p, last in layer:
            for j in range(max(last, 0), len(gens)):
                q = p * gens[j]
                count += 1
                if budget is not None and count > budget:
                    raise BudgetExceeded(f"more than {budget} generator products")
                span.add(q.terms)
                nxt.append((q, j))
        layer = nxt
    targets = [iota_tilde_prime(f) for f in window_coeffs(rd, lams)]
    missing = sum(1 for t in targets if span.reduce(t.terms))
    return GenerationReport(missing == 0, degree_bound, len(gens), span.rank,
                            poly_rank(targets), missing)


# --- PBW functionals ---------------------------------------------------------------

@dataclass(frozen=True)
class PBWFunctional:
    """xi_c: dual to the PBW basis x_c of the raising part."""

    c: tuple

    def __call__(self, other_c: Sequence[int]) -> int:
        return int(tuple(other_c) == self.c)

    def __mul__(self, other: PBWFunctional) -> PBWFunctional:
        return xi_product(self.c, other.c)

    def monomial(self) -> TriplePolynomial:
        return TriplePolynomial(len(self.c), {self.c: Fraction(1)})


def xi_functional(c: Sequence[int]) -> PBWFunctional:
    if any(x < 0 for x in c):
        raise ValueError("exponents must be non-negative")
    return PBWFunctional(tuple(c))


def xi_product(c1: Sequence[int], c2: Sequence[int]) -> PBWFunctional:
    return PBWFunctional(tuple(a + b for a, b in zip(c1, c2)))


def exponent_vectors(n: int, total: int) -> list[tuple[int, ...]]:
    return [c for c in iproduct(range(total + 1), repeat=n) if sum(c) <= total]


def xi_product_law(rd: RootDatum, module_pairs: Sequence[tuple], max_total: int = 4,
                   word: Sequence[int] | None = None) -> CheckReport:
    """Check Delta(x_d) = sum_{c'+c''=d} x_c' (x) x_c'' on tensor modules for |d| <= max_total.

    This is the statement that xi_c' xi_c'' = xi_{c'+c''}, the product being the transpose of Delta.
    """
    word = tuple(word or rd.longest_element.word)
    rep = CheckReport()
    for m1, m2 in module_pairs:
        t = tensor(m1, m2)
        for d in exponent_vectors(len(word), max_total):
            lhs = pbw_operator(t, word, d)
            rhs = None
            for c1 in iproduct(*(range(x + 1) for x in d)):
                c2 = tuple(a - b for a, b in zip(d, c1))
                term = kron(pbw_operator(m1, word, c1), pbw_operator(m2, word, c2))
                rhs = term if rhs is None else matadd(rhs, term)
            rep.record("xi-product-law", lhs == rhs, (m1.key, m2.key, d))
    return rep


def pbw_independence(m: WeightModule, max_total: int, word: Sequence[int] | None = None) -> tuple[int, int]:
    """(rank, count) of the PBW operators with |c| <= max_total on m."""
    word = tuple(word or m.datum.longest_element.word)
    cs = exponent_vectors(len(word), max_total)
    ech = Echelon()
    for c in cs:
        mat = pbw_operator(m, word, c)
        ech.add({(r, s): x for r, row in enumerate(mat) for s, x in enumerate(row) if x})
    return ech.rank, len(cs)


def xi_evaluation_check(m: WeightModule, word: Sequence[int] | None = None) -> bool:
    """The matrix of x(h) along the word equals sum_c h^c x_c."""
    word = tuple(word or m.datum.longest_element.word)
    n = len(word)
    sym = _pmat(identity(m.dim), n)
    for k in range(n):
        sym = _pmul(sym, _root_subgroup_poly(m, word, k, TriplePolynomial.var(n, k), False), n)
    top = max([m.bound(i) for i in m.datum.nodes] + [0]) * max(1, n)
    total = _pmat(zeros_like(m), n)
    for c in exponent_vectors(n, top * n):
        op = pbw_operator(m, word, c)
        if any(any(r) for r in op):
            mono = TriplePolynomial(n, {c: Fraction(1)})
            total = matadd(total, [[mono * x if x else TriplePolynomial(n) for x in row] for row in op])
    return all(a == b for ra, rb in zip(sym, total) for a, b in zip(ra, rb))


def zeros_like(m: WeightModule) -> Matrix:
    return [[0] * m.dim for _ in range(m.dim)]


def kappa_multiplicative(f1: MatCoeffFn, f2: MatCoeffFn) -> bool:
    return kappa(product(f1, f2)) == kappa(f1) * kappa(f2)


# --- Kostant lattice versus the triangular basis (rank one) -----------------------------

@dataclass
class KostantReport:
    window: int
    rank: int
    kostant_rank: int
    triangular_rank: int
    equal: bool
    dual_equal: bool
    kostant_hnf: list
    triangular_hnf: list


def _flatten(mats: Sequence[Matrix]) -> list[int]:
    return [x for m in mats for row in m for x in row]


def kostant_compare_sl2(window: int) -> KostantReport:
    """Compare the Z-span of Kostant-basis images with that of triangular-basis images at v = 1.

    Both live in the direct sum of End(Lambda_m) for m <= window.
    """
    from .rootdatum import load_datum
    from .sl2q import at_one, qweyl_module

    rd = load_datum("A1-sc")
    mods = [build_weyl_module(rd, (m,)) for m in range(window + 1)]
    # Kostant basis F^(a) binom(H, k) E^(b)
    kos = []
    for a in range(window + 1):
        for b in range(window + 1):
            for k in range(2 * window + 2):
                w = [theta_minus(0, a), binom_token((1,), k), theta_plus(0, b)]
                kos.append(_flatten([m.word_matrix(w) for m in mods]))
    # triangular basis E^(a) 1_z F^(b), evaluated through the quantum modules at v = 1
    qmods = [qweyl_module(m) for m in range(window + 1)]
    tri = []
    for a in range(window + 1):
        for b in range(window + 1):
            for z in range(-3 * window - 2, 3 * window + 3):
                tri.append(_flatten([at_one(q.mono_matrix((a, z, b))) for q in qmods]))
    hk = _nonzero(hnf(kos))
    ht = _nonzero(hnf(tri))
    rank = sum(m.dim ** 2 for m in mods)
    full = lambda h: bool(h) and len(h) == len(h[0])
    dk = dual_lattice(hk) if full(hk) else None
    dt = dual_lattice(ht) if full(ht) else None
    return KostantReport(window, rank, len(hk), len(ht), hk == ht, dk is not None and dk == dt, hk, ht)


def _nonzero(rows):
    return [list(r) for r in rows if any(r)]
