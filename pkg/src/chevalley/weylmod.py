"""Weyl modules at v = 1 with their divided-power lattices, twists, duals and tensors."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .errors import BudgetExceeded
from .exactring import int_binom
from .linalg import (Matrix, identity, inverse, is_integral, kron, lattice_basis, matadd,
                     matmul, rref, scale, solve, to_int, transpose, zeros, _QRing)
from .rootdatum import NotDominant, RootDatum, Vec

# UWord tokens
Token = tuple


def theta_plus(i: int, n: int = 1) -> Token:
    return ("E", i, n)


def theta_minus(i: int, n: int = 1) -> Token:
    return ("F", i, n)


def unit_proj(lam: Sequence[int]) -> Token:
    return ("P", tuple(lam))


def binom_token(y: Sequence[int], k: int) -> Token:
    return ("B", tuple(y), k)


@dataclass(frozen=True, eq=False)
class WeightModule:
    """Lattice basis tagged by weights plus divided-power action matrices.

    e[(i, n)] and f[(i, n)] hold the matrices of the n-th divided powers for
    1 <= n <= the nilpotency bound; higher powers act as zero.
    """

    datum: RootDatum
    key: tuple
    weights: tuple[Vec, ...]
    e: dict = field(repr=False)
    f: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def bound(self, i: int) -> int:
        return max((n for (j, n) in self.e if j == i), default=0)

    def raising(self, i: int, n: int) -> Matrix:
        if n == 0:
            return identity(self.dim)
        return self.e.get((i, n)) or zeros(self.dim, self.dim)

    def lowering(self, i: int, n: int) -> Matrix:
        if n == 0:
            return identity(self.dim)
        return self.f.get((i, n)) or zeros(self.dim, self.dim)

    def weight_set(self) -> set[Vec]:
        return set(self.weights)

    def weight_multiplicities(self) -> dict[Vec, int]:
        out: dict[Vec, int] = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out

    def token_matrix(self, tok: Token) -> Matrix:
        kind = tok[0]
        if kind == "E":
            return self.raising(tok[1], tok[2])
        if kind == "F":
            return self.lowering(tok[1], tok[2])
        if kind == "P":
            return [[int(r == c and self.weights[r] == tok[1]) for c in range(self.dim)]
                    for r in range(self.dim)]
        if kind == "B":
            pairing = self.datum.pairing
            vals = [int_binom(_ypair(tok[1], pairing, w), tok[2]) for w in self.weights]
            return [[vals[r] if r == c else 0 for c in range(self.dim)] for r in range(self.dim)]
        raise ValueError(f"unknown token {tok!r}")

    def word_matrix(self, word: Sequence[Token]) -> Matrix:
        out = identity(self.dim)
        for tok in word:
            out = matmul(out, self.token_matrix(tok))
        return out

    def act(self, word: Sequence[Token], vec: Sequence) -> list:
        m = self.word_matrix(word)
        return [sum(x * y for x, y in zip(row, vec)) for row in m]

    def to_json(self) -> dict:
        def sparse(m):
            return [[r, c, _jnum(x)] for r, row in enumerate(m) for c, x in enumerate(row) if x]
        actions = {}
        for (i, n), m in sorted(self.e.items()):
            actions[f"e:{i}:{n}"] = sparse(m)
        for (i, n), m in sorted(self.f.items()):
            actions[f"f:{i}:{n}"] = sparse(m)
        return {"datum": self.datum.name, "key": _jkey(self.key), "dim": self.dim,
                "weights": [list(w) for w in self.weights], "actions": actions}


def _jnum(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def _jkey(key):
    return [_jkey(k) if isinstance(k, tuple) else k for k in key]


def _ypair(y: Sequence[int], pairing, lam: Sequence[int]) -> int:
    r = len(pairing)
    return sum(y[a] * pairing[a][b] * lam[b] for a in range(r) for b in range(r))


def _add(a: Vec, b: Vec, k: int = 1) -> Vec:
    return tuple(x + k * y for x, y in zip(a, b))


def _divided(ops: list[Matrix], n: int) -> Matrix:
    out = ops[0]
    for _ in range(n - 1):
        out = matmul(out, ops[0])
    return scale(out, Fraction(1, factorial(n)))


@lru_cache(maxsize=None)
def build_weyl_module(rd: RootDatum, lam: tuple[int, ...], budget: int | None = None,
                      naive: bool = False) -> WeightModule:
    """Weyl module with highest weight lam.

    The rational module is the quotient of the free lowering space by the
    radical of the contravariant form, found weight by weight as the span of
    candidate vectors f_i v modulo those killed by every e_j. The lattice is
    the Z-span of divided-power lowering monomials applied to the highest
    vector (HNF basis per weight). With naive=True the basis is the raw
    candidate basis and matrices may have non-integral entries.
    """
    lam = tuple(lam)
    if not rd.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    if budget is not None and rd.weyl_dimension(lam) > budget:
        raise BudgetExceeded(f"dim {rd.weyl_dimension(lam)} exceeds budget {budget}")
    nodes = list(rd.nodes)
    roots = [rd.simple_X[i] for i in nodes]
    dims: dict[Vec, int] = {lam: 1}
    Fq: dict[tuple[int, Vec], Matrix] = {}  # (i, source weight) -> matrix
    Eq: dict[tuple[int, Vec], Matrix] = {}
    order = [lam]
    layer = [lam]
    while layer:
        nxt = []
        for mu in layer:
            for i in nodes:
                nu = _add(mu, roots[i], -1)
                if nu not in dims and nu not in nxt:
                    nxt.append(nu)
        layer = []
        for nu in nxt:
            cands = [(i, b) for i in nodes if _add(nu, roots[i]) in dims
                     for b in range(dims[_add(nu, roots[i])])]
            cols = []
            for i, b in cands:
                src = _add(nu, roots[i])
                col = []
                for j in nodes:
                    tgt = _add(nu, roots[j])
                    dt = dims.get(tgt, 0)
                    vec = [Fraction(0)] * dt
                    if dt:
                        up = _add(src, roots[j])
                        if up in dims:
                            ej = Eq[(j, src)]
                            w = [ej[r][b] for r in range(dims[up])]
                            fi = Fq[(i, up)]
                            vec = [sum(fi[r][k] * w[k] for k in range(dims[up])) for r in range(dt)]
                        if i == j:
                            vec[b] += rd.pair(i, src)
                    col.extend(vec)
                cols.append(col)
            if not cols or not any(any(c) for c in cols):
                continue
            _, piv = rref(transpose(cols)) if cols[0] else ([], [])
            # pivot columns of the stacked e-image matrix pick a basis of M^nu
            basis = piv
            d = len(basis)
            if d == 0:
                continue
            dims[nu] = d
            order.append(nu)
            layer.append(nu)
            bmat = transpose([cols[k] for k in basis])
            for idx, (i, b) in enumerate(cands):
                src = _add(nu, roots[i])
                coords = solve(bmat, cols[idx])
                m = Fq.setdefault((i, src), zeros(d, dims[src], Fraction(0)))
                for r in range(d):
                    m[r][b] = coords[r]
            offset = 0
            for j in nodes:
                tgt = _add(nu, roots[j])
                dt = dims.get(tgt, 0)
                if dt:
                    Eq[(j, nu)] = [[cols[k][offset + r] for k in basis] for r in range(dt)]
                offset += dt
        if budget is not None and sum(dims.values()) > budget:
            raise BudgetExceeded("module exceeds budget")
    order.sort(key=lambda mu: (rd.height(_add(lam, mu, -1)), tuple(-x for x in mu)))
    return _assemble(rd, lam, order, dims, Eq, Fq, naive)


def _assemble(rd, lam, order, dims, Eq, Fq, naive) -> WeightModule:
    nodes = list(rd.nodes)
    roots = [rd.simple_X[i] for i in nodes]

    def fpow(i: int, n: int, src: Vec) -> Matrix | None:
        # rational f_i^n / n! from src to src - n alpha_i
        m = None
        cur = src
        for _ in range(n):
            nxt = _add(cur, roots[i], -1)
            if (i, cur) not in Fq or nxt not in dims:
                return None
            step = Fq[(i, cur)]
            m = step if m is None else matmul(step, m)
            cur = nxt
        return scale(m, Fraction(1, factorial(n)))

    def epow(i: int, n: int, src: Vec) -> Matrix | None:
        m = None
        cur = src
        for _ in range(n):
            nxt = _add(cur, roots[i])
            if (i, cur) not in Eq or nxt not in dims:
                return None
            step = Eq[(i, cur)]
            m = step if m is None else matmul(step, m)
            cur = nxt
        return scale(m, Fraction(1, factorial(n)))

    # lattice basis per weight as columns in candidate coordinates
    depth_order = sorted(order, key=lambda mu: rd.height(_add(lam, mu, -1)))
    P: dict[Vec, Matrix] = {}
    for mu in depth_order:
        d = dims[mu]
        if mu == lam or naive:
            P[mu] = identity(d, Fraction(1), Fraction(0))
            continue
        gens = []
        for i in nodes:
            n = 1
            while True:
                src = _add(mu, roots[i], n)
                if src not in dims:
                    break
                fm = fpow(i, n, src)
                if fm is not None:
                    gens.extend(transpose(matmul(fm, P[src])))
                n += 1
        rows = lattice_basis(gens)
        if len(rows) != d:
            raise ArithmeticError(f"lattice at weight {mu} has rank {len(rows)} != {d}")
        P[mu] = transpose(rows)
    Pinv = {mu: inverse(P[mu], _QRing) for mu in order}
    index: dict[Vec, int] = {}
    weights: list[Vec] = []
    for mu in order:
        index[mu] = len(weights)
        weights.extend([mu] * dims[mu])
    dim = len(weights)

    def global_op(power, step: Vec, sign: int) -> dict:
        out = {}
        for i in nodes:
            n = 1
            while True:
                m = zeros(dim, dim, Fraction(0))
                nonzero = False
                for mu in order:
                    tgt = _add(mu, roots[i], sign * n)
                    if tgt not in dims:
                        continue
                    local = power(i, n, mu)
                    if local is None:
                        continue
                    local = matmul(matmul(Pinv[tgt], local), P[mu])
                    r0, c0 = index[tgt], index[mu]
                    for r, row in enumerate(local):
                        for c, x in enumerate(row):
                            if x:
                                m[r0 + r][c0 + c] = x
                                nonzero = True
                if not nonzero:
                    break
                out[(i, n)] = m if naive else to_int(m)
                if naive:
                    out[(i, n)] = [[_int_if(x) for x in row] for row in m]
                n += 1
        return out

    e = global_op(epow, None, 1)
    f = global_op(fpow, None, -1)
    key = ("naive" if naive else "weyl", lam)
    return WeightModule(rd, key, tuple(weights), e, f)


def _int_if(x: Fraction):
    return int(x) if x.denominator == 1 else x


def omega_twist(m: WeightModule) -> WeightModule:
    """The same lattice with e and f swapped and weights negated."""
    key = m.key[1] if m.key[0] == "omega" else ("omega", m.key)
    return WeightModule(m.datum, key, tuple(tuple(-x for x in w) for w in m.weights),
                        dict(m.f), dict(m.e))


def dual(m: WeightModule) -> WeightModule:
    """Contragredient module: u acts by the transpose of its antipode image."""
    key = m.key[1] if m.key[0] == "dual" else ("dual", m.key)
    e = {k: scale(transpose(v), (-1) ** k[1]) for k, v in m.e.items()}
    f = {k: scale(transpose(v), (-1) ** k[1]) for k, v in m.f.items()}
    return WeightModule(m.datum, key, tuple(tuple(-x for x in w) for w in m.weights), e, f)


def tensor(m1: WeightModule, m2: WeightModule, budget: int | None = None) -> WeightModule:
    """Tensor product; divided powers act through the additive coproduct."""
    if m1.datum != m2.datum:
        raise ValueError("modules over different root data")
    if budget is not None and m1.dim * m2.dim > budget:
        raise BudgetExceeded(f"tensor dim {m1.dim * m2.dim} exceeds budget {budget}")
    weights = tuple(_add(a, b) for a in m1.weights for b in m2.weights)

    def ops(get1, get2, b1, b2):
        out = {}
        for i in m1.datum.nodes:
            for c in range(1, b1(i) + b2(i) + 1):
                total = None
                for c1 in range(max(0, c - b2(i)), min(c, b1(i)) + 1):
                    term = kron(get1(i, c1), get2(i, c - c1))
                    total = term if total is None else matadd(total, term)
                if total is not None and any(any(r) for r in total):
                    out[(i, c)] = total
        return out

    e = ops(m1.raising, m2.raising, m1.bound, m2.bound)
    f = ops(m1.lowering, m2.lowering, lambda i: _fbound(m1, i), lambda i: _fbound(m2, i))
    return WeightModule(m1.datum, ("tensor", m1.key, m2.key), weights, e, f)


def _fbound(m: WeightModule, i: int) -> int:
    return max((n for (j, n) in m.f if j == i), default=0)


def trivial_module(rd: RootDatum) -> WeightModule:
    return build_weyl_module(rd, tuple([0] * rd.rank))


def serre_operator(m: WeightModule, i: int, j: int, lowering: bool = False) -> Matrix:
    """sum_{p+p'=1-<i,j'>} (-1)^p' e_i^(p) e_j e_i^(p') as a matrix."""
    get = m.lowering if lowering else m.raising
    top = 1 - m.datum.cartan[i][j]
    total = zeros(m.dim, m.dim)
    for p in range(top + 1):
        term = matmul(matmul(get(i, p), get(j, 1)), get(i, top - p))
        total = matadd(total, scale(term, (-1) ** (top - p)))
    return total
