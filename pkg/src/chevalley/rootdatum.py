"""Root data, Weyl groups, reduced words and positive-root sequences."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Sequence

from .linalg import solve

Vec = tuple[int, ...]


class InvalidDatum(ValueError):
    pass


class NotReduced(ValueError):
    pass


class NotDominant(ValueError):
    pass


@dataclass(frozen=True)
class WeylElt:
    """Weyl group element: images of the X basis (rows) and a shortlex-least reduced word."""

    images: tuple[Vec, ...]
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, lam: Sequence[int]) -> Vec:
        out = [0] * len(lam)
        for c, img in zip(lam, self.images):
            if c:
                for k, x in enumerate(img):
                    out[k] += c * x
        return tuple(out)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Pairing between Y and X in chosen bases plus simple coroots/roots.

    <i, lam> = simple_Y[i] . pairing . lam; i' = simple_X[i] in X coordinates.
    """

    name: str
    pairing: tuple[Vec, ...]
    simple_Y: tuple[Vec, ...]
    simple_X: tuple[Vec, ...]
    dot: tuple[Vec, ...]
    dominant_generators: tuple[Vec, ...] = field(default=())

    def __post_init__(self):
        self._validate()
        if not self.dominant_generators:
            object.__setattr__(self, "dominant_generators", self._hilbert_basis())

    @property
    def rank(self) -> int:
        return len(self.pairing)

    @property
    def nodes(self) -> range:
        return range(len(self.simple_Y))

    def pair(self, i: int, lam: Sequence[int]) -> int:
        y = self.simple_Y[i]
        return sum(y[a] * self.pairing[a][b] * lam[b]
                   for a in range(self.rank) for b in range(self.rank) if y[a] and lam[b])

    @cached_property
    def cartan(self) -> tuple[Vec, ...]:
        """cartan[i][j] = <i, j'>."""
        return tuple(tuple(self.pair(i, self.simple_X[j]) for j in self.nodes) for i in self.nodes)

    def half_length(self, i: int) -> int:
        return self.dot[i][i] // 2

    def _validate(self):
        r, n = len(self.pairing), len(self.simple_Y)
        if any(len(row) != r for row in self.pairing):
            raise InvalidDatum("pairing must be square")
        if len(self.simple_X) != n or any(len(v) != r for v in self.simple_X + self.simple_Y):
            raise InvalidDatum("simple roots/coroots have wrong shape")
        if abs(_det([list(row) for row in self.pairing])) != 1:
            raise InvalidDatum("pairing is not perfect")
        if len(self.dot) != n or any(len(row) != n for row in self.dot):
            raise InvalidDatum("dot must be |I| x |I|")
        for i in range(n):
            if self.dot[i][i] <= 0 or self.dot[i][i] % 2:
                raise InvalidDatum(f"i.i must be a positive even integer (node {i})")
            for j in range(n):
                if self.dot[i][j] != self.dot[j][i]:
                    raise InvalidDatum("dot is not symmetric")
                a = self.pair(i, self.simple_X[j])
                if i == j and a != 2:
                    raise InvalidDatum(f"<i,i'> = {a} != 2 at node {i}")
                if i != j:
                    if Fraction(2 * self.dot[i][j], self.dot[i][i]) != a:
                        raise InvalidDatum(f"<{i},{j}'> does not match 2 i.j / i.i")
                    if a > 0:
                        raise InvalidDatum(f"<{i},{j}'> = {a} is positive")
        for k in range(1, n + 1):
            if _det([list(row[:k]) for row in self.dot[:k]]) <= 0:
                raise InvalidDatum("i.j is not positive definite")

    # --- Weyl group -------------------------------------------------------

    def reflect(self, i: int, lam: Sequence[int]) -> Vec:
        a = self.pair(i, lam)
        return tuple(x - a * y for x, y in zip(lam, self.simple_X[i]))

    def reflect_Y(self, i: int, coroot: Sequence[int]) -> tuple[int, ...]:
        """s_i on the coroot lattice written in simple-coroot coordinates."""
        a = sum(c * self.cartan[j][i] for j, c in enumerate(coroot))
        out = list(coroot)
        out[i] -= a
        return tuple(out)

    def _basis(self) -> tuple[Vec, ...]:
        return tuple(tuple(int(a == b) for b in range(self.rank)) for a in range(self.rank))

    def act(self, word: Sequence[int], lam: Sequence[int]) -> Vec:
        """s_{w1} s_{w2} ... s_{wk} applied to lam."""
        lam = tuple(lam)
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    def element(self, word: Sequence[int]) -> WeylElt:
        images = tuple(self.act(word, b) for b in self._basis())
        return self._by_images[images]

    @cached_property
    def _by_images(self) -> dict[tuple[Vec, ...], WeylElt]:
        start = self._basis()
        seen = {start: WeylElt(start, ())}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            w = seen[cur]
            for i in self.nodes:
                # right multiplication by s_i: images of basis under w s_i
                nxt = tuple(w.apply(self.reflect(i, b)) for b in start)
                if nxt not in seen:
                    seen[nxt] = WeylElt(nxt, w.word + (i,))
                    queue.append(nxt)
                    if len(seen) > 10000:
                        raise InvalidDatum("Weyl group too large")
        return seen

    def weyl_group(self) -> list[WeylElt]:
        return list(self._by_images.values())

    def length(self, word: Sequence[int]) -> int:
        return self.element(word).length

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.length(word) == len(word)

    def braid_equal(self, w1: Sequence[int], w2: Sequence[int]) -> bool:
        return self.element(w1) is self.element(w2)

    @cached_property
    def longest_element(self) -> WeylElt:
        return max(self.weyl_group(), key=lambda w: (w.length, w.word))

    def reduced_words(self, w: WeylElt) -> list[tuple[int, ...]]:
        """All reduced words for w."""
        out: list[tuple[int, ...]] = []

        def extend(prefix: tuple[int, ...]):
            if len(prefix) == w.length:
                if self.element(prefix) is w:
                    out.append(prefix)
                return
            for i in self.nodes:
                cand = prefix + (i,)
                if self.is_reduced(cand) and self.length(self._left_quotient(w, cand)) == w.length - len(cand):
                    extend(cand)

        extend(())
        return out

    def _left_quotient(self, w: WeylElt, prefix: Sequence[int]) -> tuple[int, ...]:
        # word for prefix^-1 w
        return tuple(reversed(prefix)) + w.word

    def root_sequence(self, word: Sequence[int]) -> list[Vec]:
        """lambda_k = s_{i1} ... s_{i(k-1)} (i'_k) for a reduced word of w0."""
        word = tuple(word)
        if not self.is_reduced(word):
            raise NotReduced(f"word {word} is not reduced")
        if self.element(word) is not self.longest_element:
            raise ValueError(f"word {word} does not represent the longest element")
        return [self.act(word[:k], self.simple_X[word[k]]) for k in range(len(word))]

    def coroot_sequence(self, word: Sequence[int]) -> list[tuple[int, ...]]:
        """Positive coroots in simple-coroot coordinates, aligned with root_sequence."""
        out = []
        for k in range(len(word)):
            c = tuple(int(j == word[k]) for j in self.nodes)
            for i in reversed(word[:k]):
                c = self.reflect_Y(i, c)
            out.append(c)
        return out

    # --- dominance --------------------------------------------------------

    def simple_root_coords(self, lam: Sequence[int]) -> list[Fraction] | None:
        a = [[self.simple_X[i][k] for i in self.nodes] for k in range(self.rank)]
        return solve(a, list(lam))

    def dominance_leq(self, lam: Sequence[int], lam2: Sequence[int]) -> bool:
        """True iff lam2 - lam is an N-combination of simple roots (lam <= lam2)."""
        c = self.simple_root_coords([b - a for a, b in zip(lam, lam2)])
        return c is not None and all(x.denominator == 1 and x >= 0 for x in c)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(self.pair(i, lam) >= 0 for i in self.nodes)

    def weyl_dimension(self, lam: Sequence[int]) -> int:
        """Weyl dimension formula via positive coroots."""
        if not self.is_dominant(lam):
            raise NotDominant(f"{tuple(lam)} is not dominant")
        num = den = 1
        for c in self.coroot_sequence(self.longest_element.word):
            h = sum(c)
            num *= sum(k * self.pair(i, lam) for i, k in enumerate(c)) + h
            den *= h
        return num // den

    def dominant_window(self, bound: int) -> list[Vec]:
        """All N-combinations of the dominant generators with total degree <= bound."""
        gens = self.dominant_generators
        out = set()
        for coeffs in product(range(bound + 1), repeat=len(gens)):
            if sum(coeffs) <= bound:
                out.add(tuple(sum(c * g[k] for c, g in zip(coeffs, gens)) for k in range(self.rank)))
        return sorted(out, key=lambda lam: (self.height(lam), tuple(-x for x in lam)))

    def height(self, lam: Sequence[int]) -> Fraction:
        c = self.simple_root_coords(lam)
        if c is None:
            return Fraction(sum(self.pair(i, lam) for i in self.nodes))
        return sum(c, Fraction(0))

    def _hilbert_basis(self, box: int = 6) -> tuple[Vec, ...]:
        cone = [lam for lam in product(range(-box * 3, box * 3 + 1), repeat=self.rank)
                if any(lam) and self.is_dominant(lam)
                and all(self.pair(i, lam) <= box for i in self.nodes)]
        cone.sort(key=lambda lam: sum(self.pair(i, lam) for i in self.nodes))
        basis: list[Vec] = []
        reachable = {tuple([0] * self.rank)}
        for lam in cone:
            if lam not in reachable:
                basis.append(lam)
                reachable = _close(reachable, basis, self, box)
        if any(lam not in reachable for lam in cone):
            raise InvalidDatum("dominant cone generators not found in window")
        return tuple(basis)


def _close(reach: set, basis: list, rd: RootDatum, box: int) -> set:
    stack = list(reach)
    while stack:
        mu = stack.pop()
        for g in basis:
            nu = tuple(a + b for a, b in zip(mu, g))
            if nu not in reach and all(rd.pair(i, nu) <= box for i in rd.nodes):
                reach.add(nu)
                stack.append(nu)
    return reach


def _det(m: list[list[int]]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in m]
    n, d = len(m), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def _t(rows) -> tuple[Vec, ...]:
    return tuple(tuple(r) for r in rows)


def _cols(a):
    return _t(zip(*a))


_A2 = ((2, -1), (-1, 2))
_B2 = ((2, -1), (-2, 2))  # node 0 long, node 1 short

PRESETS: dict[str, dict] = {
    "A1-sc": dict(pairing=((1,),), simple_Y=((1,),), simple_X=((2,),), dot=((2,),),
                  dominant_generators=((1,),)),
    "A1-ad": dict(pairing=((1,),), simple_Y=((2,),), simple_X=((1,),), dot=((2,),),
                  dominant_generators=((1,),)),
    "A1xA1-sc": dict(pairing=((1, 0), (0, 1)), simple_Y=((1, 0), (0, 1)),
                     simple_X=((2, 0), (0, 2)), dot=((2, 0), (0, 2)),
                     dominant_generators=((1, 0), (0, 1))),
    "A2-sc": dict(pairing=((1, 0), (0, 1)), simple_Y=((1, 0), (0, 1)), simple_X=_cols(_A2),
                  dot=((2, -1), (-1, 2)), dominant_generators=((1, 0), (0, 1))),
    "A2-ad": dict(pairing=((1, 0), (0, 1)), simple_Y=_t(_A2), simple_X=((1, 0), (0, 1)),
                  dot=((2, -1), (-1, 2)), dominant_generators=((1, 1), (2, 1), (1, 2))),
    "B2-sc": dict(pairing=((1, 0), (0, 1)), simple_Y=((1, 0), (0, 1)), simple_X=_cols(_B2),
                  dot=((4, -2), (-2, 2)), dominant_generators=((1, 0), (0, 1))),
}


@lru_cache(maxsize=None)
def _preset(name: str) -> RootDatum:
    return RootDatum(name, **PRESETS[name])


def load_datum(config) -> RootDatum:
    """Build a root datum from a preset name, a mapping, or YAML/JSON text.

    Presets are built once, so repeated loads share module caches.
    """
    if isinstance(config, str) and config in PRESETS:
        return _preset(config)
    if isinstance(config, str):
        import yaml
        try:
            config = yaml.safe_load(config)
        except yaml.YAMLError as exc:
            raise InvalidDatum(f"unparseable datum config: {exc}") from None
        if not isinstance(config, dict):
            raise InvalidDatum(f"unknown preset {config!r}")
    try:
        rank = int(config["rank"])
        kw = {k: _t(config[k]) for k in ("pairing", "simple_Y", "simple_X", "dot")}
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDatum(f"malformed datum config: {exc}") from None
    if len(kw["pairing"]) != rank:
        raise InvalidDatum("rank does not match pairing size")
    gens = _t(config["dominant_generators"]) if "dominant_generators" in config else ()
    return RootDatum(config.get("name", "custom"), dominant_generators=gens, **kw)
