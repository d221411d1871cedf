"""The group of ring points at v = 1, realized by matrices on a registry of Weyl modules."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import BudgetExceeded
from .exactring import RingDescriptor
from .linalg import Matrix, identity, inverse, matmul, solve
from .rootdatum import RootDatum, Vec, WeylElt
from .weylmod import WeightModule, build_weyl_module


class RingNotVEqualsOne(ValueError):
    pass


class NotInvertible(ZeroDivisionError):
    pass


class NotInBigCell(ValueError):
    pass


@dataclass(frozen=True)
class TorusChar:
    """Homomorphism X -> units of the ring, stored by its values on the X basis."""

    ring: RingDescriptor
    values: tuple

    def __post_init__(self):
        for x in self.values:
            if not self.ring.is_unit(x):
                raise NotInvertible(f"torus value {x} is not a unit")

    def __call__(self, lam: Sequence[int]):
        out = self.ring.one
        for x, k in zip(self.values, lam):
            if k:
                out = self.ring.norm(out * self.ring.pow(x, k))
        return out

    def inverse(self) -> TorusChar:
        return TorusChar(self.ring, tuple(self.ring.inv(x) for x in self.values))

    def __mul__(self, other: TorusChar) -> TorusChar:
        return TorusChar(self.ring, tuple(self.ring.norm(a * b) for a, b in zip(self.values, other.values)))

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusChar) and all(
            self.ring.norm(a - b) == 0 for a, b in zip(self.values, other.values))

    def __hash__(self):
        return hash(self.values)

    @classmethod
    def trivial(cls, rd: RootDatum, ring: RingDescriptor) -> TorusChar:
        return cls(ring, (ring.one,) * rd.rank)

    @classmethod
    def coroot(cls, rd: RootDatum, ring: RingDescriptor, i: int, u) -> TorusChar:
        """lam -> u^<i, lam>."""
        basis = [tuple(int(a == b) for b in range(rd.rank)) for a in range(rd.rank)]
        return cls(ring, tuple(ring.pow(u, rd.pair(i, b)) for b in basis))


class ModuleRegistry:
    """Modules on which group elements are realized; equality means equality on all of them."""

    def __init__(self, datum: RootDatum, ring: RingDescriptor, modules: Sequence[WeightModule]):
        if not ring.v_is_one:
            raise RingNotVEqualsOne(f"ring {ring} does not send v to 1")
        if not modules:
            raise ValueError("registry must be nonempty")
        self.datum = datum
        self.ring = ring
        self.modules = tuple(modules)
        self._ops: dict[int, tuple] = {}

    @classmethod
    def window(cls, rd: RootDatum, ring: RingDescriptor, bound: int = 2,
               budget: int | None = None) -> ModuleRegistry:
        lams = rd.dominant_window(max(bound, 1))
        return cls(rd, ring, [build_weyl_module(rd, lam, budget) for lam in lams])

    def module_for(self, lam: Sequence[int]) -> WeightModule:
        for m in self.modules:
            if m.key == ("weyl", tuple(lam)):
                return m
        raise KeyError(f"no module with highest weight {tuple(lam)}")

    def _ring_ops(self, m: WeightModule):
        ops = self._ops.get(id(m))
        if ops is None:
            conv = lambda mat: [[self.ring.coerce(x) for x in row] for row in mat]
            ops = ({k: conv(v) for k, v in m.e.items()}, {k: conv(v) for k, v in m.f.items()}, m)
            self._ops[id(m)] = ops
        return ops

    def token_matrix(self, tok: tuple, m: WeightModule) -> Matrix:
        ring = self.ring
        kind = tok[0]
        if kind in ("x", "y"):
            e, f, _ = self._ring_ops(m)
            ops = e if kind == "x" else f
            i, h = tok[1], tok[2]
            out = identity(m.dim, ring.one, ring.zero)
            hc = ring.one
            c = 1
            while (i, c) in ops:
                hc = ring.norm(hc * h)
                if hc:
                    for r, row in enumerate(ops[(i, c)]):
                        for col, x in enumerate(row):
                            if x:
                                out[r][col] = ring.norm(out[r][col] + hc * x)
                c += 1
            return out
        if kind == "t":
            chi = tok[1]
            vals = [chi(w) for w in m.weights]
            return [[vals[r] if r == c else ring.zero for c in range(m.dim)] for r in range(m.dim)]
        if kind in ("sp", "spp"):
            return self.word_matrix(_s_word(kind, tok[1], ring), m)
        raise ValueError(f"unknown group token {tok!r}")

    def word_matrix(self, word: Sequence[tuple], m: WeightModule) -> Matrix:
        out = None
        for tok in word:
            t = self.token_matrix(tok, m)
            out = t if out is None else matmul(out, t, self.ring.norm, self.ring.zero)
        return out if out is not None else identity(m.dim, self.ring.one, self.ring.zero)


def _s_word(kind: str, i: int, ring: RingDescriptor) -> list[tuple]:
    one, mone = ring.one, ring.norm(-ring.one)
    if kind == "spp":
        return [("x", i, one), ("y", i, mone), ("x", i, one)]
    return [("y", i, one), ("x", i, mone), ("y", i, one)]


def invert_token(tok: tuple, ring: RingDescriptor) -> tuple:
    kind = tok[0]
    if kind in ("x", "y"):
        return (kind, tok[1], ring.norm(-tok[2]))
    if kind == "t":
        return ("t", tok[1].inverse())
    # s' and s'' are mutually inverse at v = 1
    return ("spp" if kind == "sp" else "sp", tok[1])


def omega_token(tok: tuple) -> tuple:
    kind = tok[0]
    if kind in ("x", "y"):
        return ("y" if kind == "x" else "x", tok[1], tok[2])
    if kind == "t":
        return ("t", tok[1].inverse())
    return ("spp" if kind == "sp" else "sp", tok[1])


@dataclass(frozen=True, eq=False)
class GroupElt:
    registry: ModuleRegistry
    word: tuple
    mats: tuple = field(repr=False)

    @classmethod
    def from_word(cls, reg: ModuleRegistry, word: Sequence[tuple]) -> GroupElt:
        word = tuple(word)
        return cls(reg, word, tuple(reg.word_matrix(word, m) for m in reg.modules))

    def __mul__(self, other: GroupElt) -> GroupElt:
        ring = self.registry.ring
        mats = tuple(matmul(a, b, ring.norm, ring.zero) for a, b in zip(self.mats, other.mats))
        return GroupElt(self.registry, self.word + other.word, mats)

    def inverse(self) -> GroupElt:
        ring = self.registry.ring
        return GroupElt.from_word(self.registry, [invert_token(t, ring) for t in reversed(self.word)])

    def omega(self) -> GroupElt:
        return GroupElt.from_word(self.registry, [omega_token(t) for t in self.word])

    def matrix_on(self, m: WeightModule) -> Matrix:
        for mod, mat in zip(self.registry.modules, self.mats):
            if mod is m:
                return mat
        return self.registry.word_matrix(self.word, m)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElt) and equals(self, other)

    __hash__ = None


def equals(g1: GroupElt, g2: GroupElt) -> bool:
    norm = g1.registry.ring.norm
    return all(norm(x - y) == 0 for a, b in zip(g1.mats, g2.mats)
               for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def compose(g1: GroupElt, g2: GroupElt) -> GroupElt:
    return g1 * g2


def invert(g: GroupElt) -> GroupElt:
    return g.inverse()


def group_identity(reg: ModuleRegistry) -> GroupElt:
    return GroupElt.from_word(reg, [])


def gen_x(reg: ModuleRegistry, i: int, h) -> GroupElt:
    return GroupElt.from_word(reg, [("x", i, reg.ring.coerce(h))])


def gen_y(reg: ModuleRegistry, i: int, h) -> GroupElt:
    return GroupElt.from_word(reg, [("y", i, reg.ring.coerce(h))])


def gen_torus(reg: ModuleRegistry, chi: TorusChar) -> GroupElt:
    return GroupElt.from_word(reg, [("t", chi)])


def t_i(reg: ModuleRegistry, i: int, u) -> GroupElt:
    u = reg.ring.coerce(u)
    if not reg.ring.is_unit(u):
        raise NotInvertible(f"{u} is not a unit")
    return gen_torus(reg, TorusChar.coroot(reg.datum, reg.ring, i, u))


def braid_lift(reg: ModuleRegistry, i: int) -> tuple[GroupElt, GroupElt]:
    """(s'_i, s''_i) = (y(1) x(-1) y(1), x(1) y(-1) x(1))."""
    return GroupElt.from_word(reg, [("sp", i)]), GroupElt.from_word(reg, [("spp", i)])


def weyl_lift(reg: ModuleRegistry, word: Sequence[int]) -> tuple[GroupElt, GroupElt]:
    return (GroupElt.from_word(reg, [("sp", i) for i in word]),
            GroupElt.from_word(reg, [("spp", i) for i in word]))


def conj_torus(rd: RootDatum, w: WeylElt, chi: TorusChar) -> TorusChar:
    """lam -> chi(w^-1 lam)."""
    winv = rd.element(tuple(reversed(w.word)))
    basis = [tuple(int(a == b) for b in range(rd.rank)) for a in range(rd.rank)]
    return TorusChar(chi.ring, tuple(chi(winv.apply(b)) for b in basis))


def torus_conj_x(reg: ModuleRegistry, chi: TorusChar, i: int, h) -> GroupElt:
    return gen_x(reg, i, reg.ring.norm(chi(reg.datum.simple_X[i]) * reg.ring.coerce(h)))


def root_subgroup_word(word: Sequence[int], k: int, h, ring: RingDescriptor,
                       lower: bool = False) -> list[tuple]:
    """Word for f_k(h) = s''_{i1}..s''_{i(k-1)} x_{ik}(h) (..)^-1, or its omega image."""
    s, gen = ("sp", "y") if lower else ("spp", "x")
    prefix = [(s, i) for i in word[:k]]
    back = [invert_token(t, ring) for t in reversed(prefix)]
    return prefix + [(gen, word[k], h)] + back


def x_vector(reg: ModuleRegistry, word: Sequence[int], hs: Sequence) -> GroupElt:
    """Ordered product f_1(h_1) ... f_n(h_n) along a reduced word."""
    toks = []
    for k, h in enumerate(hs):
        toks += root_subgroup_word(word, k, reg.ring.coerce(h), reg.ring)
    return GroupElt.from_word(reg, toks)


def y_vector(reg: ModuleRegistry, word: Sequence[int], hs: Sequence) -> GroupElt:
    toks = []
    for k, h in enumerate(hs):
        toks += root_subgroup_word(word, k, reg.ring.coerce(h), reg.ring, lower=True)
    return GroupElt.from_word(reg, toks)


# --- big cell -----------------------------------------------------------------

def _generator_combinations(rd: RootDatum) -> list[list[int]]:
    """Integer coefficients writing each X basis vector through dominant generators."""
    gens = rd.dominant_generators
    basis = [tuple(int(a == b) for b in range(rd.rank)) for a in range(rd.rank)]
    for subset in combinations(range(len(gens)), rd.rank):
        a = [[gens[j][k] for j in subset] for k in range(rd.rank)]
        rows = []
        for b in basis:
            x = solve(a, b)
            if x is None or any(c.denominator != 1 for c in x):
                break
            row = [0] * len(gens)
            for j, c in zip(subset, x):
                row[j] = int(c)
            rows.append(row)
        else:
            return rows
    raise ValueError("X basis is not an integer combination of the dominant generators")


def _ldu(a: Matrix, ring: RingDescriptor) -> tuple[Matrix, list, Matrix]:
    n = len(a)
    u = [[ring.norm(x) for x in row] for row in a]
    low = identity(n, ring.one, ring.zero)
    for c in range(n):
        if not ring.is_unit(u[c][c]):
            raise NotInBigCell("leading minor is not invertible")
        inv = ring.inv(u[c][c])
        for r in range(c + 1, n):
            if u[r][c]:
                f = ring.norm(u[r][c] * inv)
                low[r][c] = f
                u[r] = [ring.norm(x - f * y) for x, y in zip(u[r], u[c])]
    diag = [u[c][c] for c in range(n)]
    for c in range(n):
        inv = ring.inv(diag[c])
        u[c] = [ring.norm(x * inv) for x in u[c]]
    return low, diag, u


def _peel(reg: ModuleRegistry, mats: list[Matrix], word: Sequence[int], lower: bool) -> list:
    ring = reg.ring
    rd = reg.datum
    hs = []
    mats = list(mats)
    for k, i in enumerate(word):
        alpha = rd.simple_X[i]
        h = None
        for m, mat in zip(reg.modules, mats):
            ops = m.f if lower else m.e
            gen = ops.get((i, 1))
            if gen is None:
                continue
            for r in range(m.dim):
                for c in range(m.dim):
                    x = ring.coerce(gen[r][c])
                    if x and ring.is_unit(x):
                        h = ring.norm(mat[r][c] * ring.inv(x))
                        break
                if h is not None:
                    break
            if h is not None:
                break
        if h is None:
            raise NotInBigCell(f"no invertible entry for the simple root of node {i}")
        hs.append(h)
        gen_tok = ("y" if lower else "x", i, ring.norm(-h))
        s_tok = ("sp" if lower else "spp", i)
        s_inv = invert_token(s_tok, ring)
        new = []
        for m, mat in zip(reg.modules, mats):
            left = reg.word_matrix([s_inv, gen_tok], m)
            right = reg.token_matrix(s_tok, m)
            new.append(matmul(matmul(left, mat, ring.norm, ring.zero), right, ring.norm, ring.zero))
        mats = new
    return hs


def bigcell_factorize(g: GroupElt, word: Sequence[int] | None = None):
    """Return (h_minus, chi, h_plus) with g = y_{h_minus} torus(chi) x_{h_plus}."""
    reg = g.registry
    rd, ring = reg.datum, reg.ring
    word = tuple(word) if word is not None else rd.longest_element.word
    top = []
    for lam in rd.dominant_generators:
        mat = g.matrix_on(reg.module_for(lam))
        if not ring.is_unit(mat[0][0]):
            raise NotInBigCell(f"highest-weight entry on {lam} is not invertible")
        top.append(mat[0][0])
    values = []
    for row in _generator_combinations(rd):
        val = ring.one
        for c, x in zip(row, top):
            val = ring.norm(val * ring.pow(x, c))
        values.append(val)
    chi = TorusChar(ring, tuple(values))
    lows, ups = [], []
    for mat in g.mats:
        low, _, up = _ldu(mat, ring)
        lows.append(low)
        ups.append(up)
    h_plus = _peel(reg, ups, word, lower=False)
    h_minus = _peel(reg, lows, word, lower=True)
    rebuilt = y_vector(reg, word, h_minus) * gen_torus(reg, chi) * x_vector(reg, word, h_plus)
    if not equals(rebuilt, g):
        raise NotInBigCell("triangular factors do not reproduce the element")
    return tuple(h_minus), chi, tuple(h_plus)


# --- enumeration --------------------------------------------------------------

def enumerate_group(rd: RootDatum, ring: RingDescriptor, budget: int = 200000) -> int:
    """Order of the group generated by x_i(1), y_i(1) on the fundamental modules over F_p."""
    if ring.kind != "fp":
        raise ValueError("enumeration needs a prime field")
    reg = ModuleRegistry(rd, ring, [build_weyl_module(rd, lam) for lam in rd.dominant_generators])
    gens = []
    for i in rd.nodes:
        for kind in ("x", "y"):
            gens.append(tuple(_freeze(reg.token_matrix((kind, i, ring.one), m)) for m in reg.modules))
    start = tuple(_freeze(identity(m.dim, 1, 0)) for m in reg.modules)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for gen in gens:
            nxt = tuple(_freeze(matmul(list(map(list, a)), list(map(list, b)), ring.norm))
                        for a, b in zip(cur, gen))
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > budget:
                    raise BudgetExceeded(f"group has more than {budget} elements")
                queue.append(nxt)
    return len(seen)


def _freeze(m: Matrix) -> tuple:
    return tuple(tuple(row) for row in m)


# --- structural predicates ------------------------------------------------------

def is_raising_unipotent(reg: ModuleRegistry, g: GroupElt) -> bool:
    """Identity on weight blocks, nonzero entries only from a weight up by positive roots."""
    rd = reg.datum
    for m, mat in zip(reg.modules, g.mats):
        for r in range(m.dim):
            for c in range(m.dim):
                x = mat[r][c]
                wr, wc = m.weights[r], m.weights[c]
                if wr == wc:
                    if reg.ring.norm(x - (reg.ring.one if r == c else reg.ring.zero)):
                        return False
                elif x and not rd.dominance_leq(wc, wr):
                    return False
    return True


def projector(m: WeightModule, lam: Vec, ring: RingDescriptor) -> Matrix:
    return [[ring.one if r == c and m.weights[r] == lam else ring.zero for c in range(m.dim)]
            for r in range(m.dim)]


def solve_omega_scalar(reg: ModuleRegistry, w_word: Sequence[int], i: int):
    """The unit u with omega(w'' x_i(h) w''^-1) = w'' y_i(u h) w''^-1, found on the registry."""
    ring = reg.ring
    wp, wpp = weyl_lift(reg, w_word)
    lhs = (wpp * gen_x(reg, i, 1) * wpp.inverse()).omega()
    core = wpp.inverse() * lhs * wpp
    for m, mat in zip(reg.modules, core.mats):
        f = m.f.get((i, 1))
        if f is None:
            continue
        for r in range(m.dim):
            for c in range(m.dim):
                if f[r][c] and ring.is_unit(ring.coerce(f[r][c])):
                    u = ring.norm(mat[r][c] * ring.inv(ring.coerce(f[r][c])))
                    if equals(core, gen_y(reg, i, u)):
                        return u
                    return None
    return None
