"""Classical based root data and their Weyl groups as signed permutations.

A datum carries an explicit list of positive (root, coroot) pairs inside
``Z^rank`` with the standard pairing, a base, and per-component metadata
(type letter, size, orbit rescaling ``t``).  Weyl elements are concrete
signed permutations, so lengths, actions and reduced words are exact
integer computations and word reduction is verification rather than
definition.

Degenerate components keep their labels: a B_1 or C_1 component is a
single root, a D_1 component is an empty root system occupying one
lattice slot, and D_2 is two orthogonal roots under one label.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]


def _vec(xs: Iterable) -> Vec:
    return tuple(Fraction(x) for x in xs)


def pair(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


# ---------------------------------------------------------------------------
# Signed permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    """A signed permutation of coordinates: e_i -> signs[i] * e_{perm[i]}."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise ValueError("not a permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1")

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(n)), (1,) * n)

    @property
    def rank(self) -> int:
        return len(self.perm)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.rank)) and all(s == 1 for s in self.signs)

    def act(self, v: Sequence) -> Vec:
        out = [Fraction(0)] * self.rank
        for i, x in enumerate(v):
            out[self.perm[i]] += self.signs[i] * Fraction(x)
        return tuple(out)

    def act_int(self, v: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.rank
        for i, x in enumerate(v):
            out[self.perm[i]] += self.signs[i] * int(x)
        return tuple(out)

    def __mul__(self, o: "WeylElement") -> "WeylElement":
        """Composition: (self*o) acts as self after o."""
        perm = tuple(self.perm[o.perm[i]] for i in range(self.rank))
        signs = tuple(o.signs[i] * self.signs[o.perm[i]] for i in range(self.rank))
        return WeylElement(perm, signs)

    def inverse(self) -> "WeylElement":
        perm = [0] * self.rank
        signs = [1] * self.rank
        for i in range(self.rank):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return WeylElement(tuple(perm), tuple(signs))

    def num_sign_flips(self) -> int:
        return sum(1 for s in self.signs if s == -1)


def reflection(root: Sequence, coroot: Sequence, rank: int) -> WeylElement:
    """The reflection v -> v - <v, coroot> root, as a signed permutation."""
    root = _vec(root)
    coroot = _vec(coroot)
    perm = [0] * rank
    signs = [1] * rank
    for i in range(rank):
        img = [Fraction(1) if j == i else Fraction(0) for j in range(rank)]
        c = coroot[i]
        img = [x - c * r for x, r in zip(img, root)]
        support = [j for j, x in enumerate(img) if x]
        if len(support) != 1 or abs(img[support[0]]) != 1:
            raise ValueError("reflection is not a signed permutation on this lattice")
        perm[i] = support[0]
        signs[i] = 1 if img[support[0]] > 0 else -1
    return WeylElement(tuple(perm), tuple(signs))


# ---------------------------------------------------------------------------
# Based root data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    letter: str          # "A", "B", "C", "D" or "empty"
    k: int               # subscript of the type label
    scale: int           # orbit rescaling t (roots are t * standard)
    slots: tuple[int, ...]

    @property
    def label(self) -> str:
        if self.letter == "empty":
            return "empty"
        return f"{self.letter}{self.k}"

    def weyl_order(self) -> int:
        if self.letter == "empty":
            return 1
        k = self.k
        if self.letter == "A":
            return _factorial(k + 1)
        if self.letter in ("B", "C"):
            return 2 ** k * _factorial(k)
        if self.letter == "D":
            return 2 ** (k - 1) * _factorial(k) if k >= 1 else 1
        raise ValueError(self.letter)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


@dataclass(frozen=True)
class BasedRootDatum:
    rank: int
    pos_roots: tuple[tuple[Vec, Vec], ...]   # (root, coroot), both in Q^rank
    base: tuple[int, ...]                    # indices into pos_roots
    components: tuple[Component, ...] = ()

    def __post_init__(self):
        for root, coroot in self.pos_roots:
            if len(root) != self.rank or len(coroot) != self.rank:
                raise ValueError("root length mismatch")
            if pair(root, coroot) != 2:
                raise ValueError(f"<a, a^> != 2 for {root}, {coroot}")
        roots = {r for r, _ in self.pos_roots}
        for r in roots:
            if tuple(2 * x for x in r) in roots or tuple(x / 2 for x in r) in roots:
                raise ValueError("root system is not reduced")
            if tuple(-x for x in r) in roots:
                raise ValueError("positive roots contain an opposite pair")
        # every positive root is a nonnegative integer combination of the base
        simples = [self.pos_roots[i][0] for i in self.base]
        if simples and _matrix_rank(simples) != len(simples):
            raise ValueError("base is not linearly independent")
        for r, _ in self.pos_roots:
            coeffs = _solve(simples, r)
            if coeffs is None or any(c < 0 or c.denominator != 1 for c in coeffs):
                raise ValueError(f"root {r} is not a nonnegative base combination")

    # -- views ---------------------------------------------------------------

    def simple_pairs(self) -> list[tuple[Vec, Vec]]:
        return [self.pos_roots[i] for i in self.base]

    def simple_reflection(self, i: int) -> WeylElement:
        root, coroot = self.pos_roots[self.base[i]]
        return reflection(root, coroot, self.rank)

    def num_simples(self) -> int:
        return len(self.base)

    def root_sign(self, v: Vec) -> int | None:
        """+1 / -1 if v is a positive/negative root of the datum, else None."""
        for r, _ in self.pos_roots:
            if r == v:
                return 1
            if tuple(-x for x in r) == v:
                return -1
        return None

    def weyl_order(self) -> int:
        out = 1
        for c in self.components:
            out *= c.weyl_order()
        return out

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "components": [
                {"type": c.label, "size": len(c.slots), "t": c.scale, "slots": list(c.slots)}
                for c in self.components
            ],
        }


@dataclass(frozen=True)
class DiagramAutomorphism:
    """An automorphism of the datum permuting the base; carried as its lattice map."""

    map: WeylElement
    datum: BasedRootDatum

    def __post_init__(self):
        simples = {r for r, _ in self.datum.simple_pairs()}
        for r, cr in self.datum.simple_pairs():
            img = self.map.act(r)
            if img not in simples:
                raise ValueError("automorphism does not permute the base")
        # pairings are preserved by any signed permutation acting on both sides

    def act_root(self, v: Vec) -> Vec:
        return self.map.act(v)


# ---------------------------------------------------------------------------
# Construction of the classical data
# ---------------------------------------------------------------------------

def _e(i: int, n: int, c=1) -> Vec:
    return tuple(Fraction(c) if j == i else Fraction(0) for j in range(n))


def _addv(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _subv(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def _scalev(a: Vec, c) -> Vec:
    return tuple(Fraction(c) * x for x in a)


def classical_datum(kind: str, size: int) -> tuple[BasedRootDatum, DiagramAutomorphism | None]:
    """Standard datum for GL_m, SO_odd(2n+1), Sp(2n), SO_even(2n), O_even(2n).

    O_even returns the SO_even datum together with the order-2 diagram
    automorphism (the outer flip); all other kinds return (datum, None).
    """
    if kind == "GL":
        m = size
        if m < 1:
            raise ValueError("GL size must be >= 1")
        n = m
        pos, base = [], []
        for i in range(n):
            for j in range(i + 1, n):
                v = _subv(_e(i, n), _e(j, n))
                pos.append((v, v))
                if j == i + 1:
                    base.append(len(pos) - 1)
        comp = Component("A", m - 1, 1, tuple(range(n))) if m >= 2 else Component("empty", 0, 1, tuple(range(n)))
        return BasedRootDatum(n, tuple(pos), tuple(base), (comp,)), None

    if kind == "SO_odd":
        if size < 1 or size % 2 == 0:
            raise ValueError("SO_odd size must be odd and >= 1")
        n = (size - 1) // 2
        return _bcd_datum(n, "B"), None

    if kind == "Sp":
        if size < 0 or size % 2:
            raise ValueError("Sp size must be even")
        n = size // 2
        return _bcd_datum(n, "C"), None

    if kind in ("SO_even", "O_even"):
        if size < 0 or size % 2:
            raise ValueError("even orthogonal size must be even")
        n = size // 2
        datum = _bcd_datum(n, "D")
        if kind == "SO_even":
            return datum, None
        if n < 1:
            raise ValueError("O_even needs size >= 2")
        flip = WeylElement(tuple(range(n)), tuple([1] * (n - 1) + [-1]))
        return datum, DiagramAutomorphism(flip, datum)

    raise ValueError(f"unknown kind {kind!r}")


def _bcd_datum(n: int, letter: str) -> BasedRootDatum:
    pos: list[tuple[Vec, Vec]] = []
    base: list[int] = []
    for i in range(n):
        for j in range(i + 1, n):
            v = _subv(_e(i, n), _e(j, n))
            pos.append((v, v))
            if j == i + 1:
                base.append(len(pos) - 1)
            w = _addv(_e(i, n), _e(j, n))
            pos.append((w, w))
            if letter == "D" and i == n - 2 and j == n - 1:
                base.append(len(pos) - 1)
    if letter == "B":
        for i in range(n):
            pos.append((_e(i, n), _e(i, n, 2)))
            if i == n - 1:
                base.append(len(pos) - 1)
    elif letter == "C":
        for i in range(n):
            pos.append((_e(i, n, 2), _e(i, n)))
            if i == n - 1:
                base.append(len(pos) - 1)
    if letter == "D" and n == 1:
        comp = Component("D", 1, 1, (0,))
        return BasedRootDatum(1, (), (), (comp,))
    comp = Component(letter, n, 1, tuple(range(n))) if n >= 1 else Component("empty", 0, 1, ())
    return BasedRootDatum(n, tuple(pos), tuple(base), (comp,))


def build_O_datum(components: Sequence[tuple[str, int, int]], ambient_rank: int,
                  explicit_roots: Sequence[tuple[Sequence, Sequence]] | None = None,
                  explicit_base: Sequence[int] | None = None) -> BasedRootDatum:
    """Assemble the rescaled datum from classified components.

    ``components`` is a list of (type_label, size, t) laid out on
    consecutive coordinate slots of Z^ambient_rank; labels are one of
    A{k-1} (on k slots), B{k}, C{k}, D{k}, B1, C1, D1, "empty".  A type-C
    component is emitted with type label B: its rescaled long root becomes
    the short root of a B-shaped system.  Roots are t * standard and
    coroots standard / t, so <a, a^> = 2 always holds.

    ``explicit_roots`` overrides the construction entirely (the lattice
    override hook): a list of positive (root, coroot) pairs, with
    ``explicit_base`` the indices of the simple ones (defaults to all);
    the result must still satisfy the datum invariants.
    """
    if explicit_roots is not None:
        pos = tuple((_vec(r), _vec(c)) for r, c in explicit_roots)
        base = tuple(explicit_base) if explicit_base is not None else tuple(range(len(pos)))
        return BasedRootDatum(ambient_rank, pos, base, ())

    pos: list[tuple[Vec, Vec]] = []
    base: list[int] = []
    comps: list[Component] = []
    offset = 0
    for label, size, t in components:
        letter, sub = _parse_label(label)
        if letter == "A" and sub != size - 1:
            raise ValueError(f"A-component {label} must occupy {sub + 1} slots, got {size}")
        if letter in ("B", "C", "D") and sub != size:
            raise ValueError(f"component {label} must occupy {sub} slots, got {size}")
        if offset + size > ambient_rank:
            raise ValueError("component supports overlap the ambient rank")
        slots = tuple(range(offset, offset + size))
        emitted_letter = "B" if letter == "C" else letter
        _emit_component(pos, base, emitted_letter, sub, t, slots, ambient_rank)
        comps.append(Component(emitted_letter, sub, t, slots))
        offset += size
    return BasedRootDatum(ambient_rank, tuple(pos), tuple(base), tuple(comps))


def datum_from_json(data) -> BasedRootDatum:
    """Load a datum from {rank, components: [{type, size, t}], roots?}.

    The optional "roots" key is the explicit-lattice override: a list of
    [root, coroot] coordinate pairs (rationals as int or "p/q") that
    replaces the component construction entirely.
    """
    rank = int(data["rank"])
    if "roots" in data and data["roots"] is not None:
        pairs = [(r, c) for r, c in data["roots"]]
        base = data.get("base")
        return build_O_datum([], rank, explicit_roots=pairs, explicit_base=base)
    comps = [(c["type"], int(c["size"]), int(c.get("t", 1))) for c in data.get("components", [])]
    return build_O_datum(comps, rank)


def _parse_label(label: str) -> tuple[str, int]:
    if label == "empty":
        return "empty", 0
    letter = label[0]
    if letter not in "ABCD":
        raise ValueError(f"bad component label {label!r}")
    return letter, int(label[1:])


def _emit_component(pos, base, letter, k, t, slots, n):
    def emb(local: Vec) -> Vec:
        out = [Fraction(0)] * n
        for idx, s in enumerate(slots):
            out[s] = local[idx]
        return tuple(out)

    if letter == "empty" or (letter == "D" and k == 1):
        return
    m = len(slots)
    if letter == "A":
        for i in range(m):
            for j in range(i + 1, m):
                v = _subv(_e(i, m), _e(j, m))
                pos.append((emb(_scalev(v, t)), emb(_scalev(v, Fraction(1, t)))))
                if j == i + 1:
                    base.append(len(pos) - 1)
        return
    for i in range(m):
        for j in range(i + 1, m):
            for v in (_subv(_e(i, m), _e(j, m)), _addv(_e(i, m), _e(j, m))):
                pos.append((emb(_scalev(v, t)), emb(_scalev(v, Fraction(1, t)))))
                if v == _subv(_e(i, m), _e(j, m)) and j == i + 1:
                    base.append(len(pos) - 1)
                if letter == "D" and v == _addv(_e(m - 2, m), _e(m - 1, m)) and i == m - 2 and j == m - 1:
                    base.append(len(pos) - 1)
    if letter == "B":
        for i in range(m):
            pos.append((emb(_scalev(_e(i, m), t)), emb(_scalev(_e(i, m), Fraction(2, t)))))
            if i == m - 1:
                base.append(len(pos) - 1)


# ---------------------------------------------------------------------------
# Weyl group operations
# ---------------------------------------------------------------------------

def weyl_length(w: WeylElement, d: BasedRootDatum) -> int:
    """Number of positive roots sent to negative roots by w."""
    if w.rank != d.rank:
        raise ValueError("rank mismatch")
    count = 0
    for r, _ in d.pos_roots:
        if d.root_sign(w.act(r)) == -1:
            count += 1
    return count


def act(w: WeylElement, lam: Sequence) -> tuple:
    """Signed-permutation action on a lattice vector."""
    out = w.act(lam)
    if all(x.denominator == 1 for x in out):
        return tuple(int(x) for x in out)
    return out


def reduced_word(w: WeylElement, d: BasedRootDatum) -> list[int]:
    """A reduced word for w in the simple reflections of d.

    Uses the descent recursion: l(w s_i) < l(w) exactly when w(alpha_i)
    is negative.  The returned list multiplies left-to-right to w and has
    length weyl_length(w, d); an element outside the Weyl group of the
    datum raises ValueError.
    """
    simples = d.simple_pairs()
    refls = [d.simple_reflection(i) for i in range(len(simples))]
    word: list[int] = []
    cur = w
    for _ in range(len(d.pos_roots) + 1):
        if cur.is_identity():
            word.reverse()
            return word
        for i, (root, _) in enumerate(simples):
            if d.root_sign(cur.act(root)) == -1:
                word.append(i)
                cur = cur * refls[i]
                break
        else:
            raise ValueError("element is not in the Weyl group of the datum")
    raise ValueError("element is not in the Weyl group of the datum")


def braid_order(i: int, j: int, d: BasedRootDatum) -> int:
    """Order of s_i s_j for two distinct simple reflections."""
    if i == j:
        raise ValueError("need two distinct simple roots")
    prod = d.simple_reflection(i) * d.simple_reflection(j)
    cur = prod
    for m in range(1, 7):
        if cur.is_identity():
            if m not in (2, 3, 4):
                raise ValueError(f"unexpected braid order {m}")
            return m
        cur = cur * prod
    raise ValueError("braid order exceeds classical bound")


def coroot_in_2Lambda(coroot: Sequence, d: BasedRootDatum) -> bool:
    """Whether the coroot lies in 2 * Z^rank (every coordinate an even integer)."""
    for x in coroot:
        x = Fraction(x)
        if x.denominator != 1 or x.numerator % 2:
            return False
    return True


WEYL_ENUM_GUARD = 10_000


def weyl_enumerate(d: BasedRootDatum) -> list[WeylElement]:
    """All elements of the Weyl group of d (guarded closure of the simples)."""
    order = d.weyl_order()
    if order > WEYL_ENUM_GUARD:
        raise ValueError(f"Weyl group of order {order} exceeds enumeration guard")
    gens = [d.simple_reflection(i) for i in range(d.num_simples())]
    return group_closure(gens, d.rank, WEYL_ENUM_GUARD)


def group_closure(gens: Sequence[WeylElement], rank: int, guard: int = WEYL_ENUM_GUARD) -> list[WeylElement]:
    seen = {WeylElement.identity(rank)}
    frontier = [WeylElement.identity(rank)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = w * g
                if x not in seen:
                    if len(seen) >= guard:
                        raise ValueError("group closure exceeds guard")
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return sorted(seen, key=lambda w: (w.perm, w.signs))


# ---------------------------------------------------------------------------
# Exact linear algebra helpers
# ---------------------------------------------------------------------------

def _solve(vectors: Sequence[Vec], target: Sequence) -> list[Fraction] | None:
    """Coefficients c with sum c_i vectors[i] == target, or None (exact)."""
    if not vectors:
        return [] if all(Fraction(x) == 0 for x in target) else None
    n = len(vectors[0])
    rows = [[Fraction(vectors[j][i]) for j in range(len(vectors))] + [Fraction(target[i])]
            for i in range(n)]
    m = len(vectors)
    piv_cols: list[int] = []
    r = 0
    for col in range(m):
        p = next((i for i in range(r, n) if rows[i][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, n):
        if rows[i][m]:
            return None
    coeffs = [Fraction(0)] * m
    for i, col in enumerate(piv_cols):
        coeffs[col] = rows[i][m]
        for j in range(m):
            if j != col and rows[i][j]:
                # free variables set to zero; inconsistent only if pivoting failed
                pass
    return coeffs


def _matrix_rank(rows: Sequence[Sequence]) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        p = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if p is None:
            continue
        mat[rank], mat[p] = mat[p], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def solve_in_span(vectors: Sequence[Vec], target: Sequence) -> list[Fraction] | None:
    """Public exact solver: coefficients over Q or None if not in the span."""
    return _solve(vectors, target)


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return _matrix_rank(rows)
