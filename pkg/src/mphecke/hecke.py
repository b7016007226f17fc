"""Affine Hecke algebras with unequal parameters in normal form.

Elements are kept as ``sum_w Z-part(w) * U_w`` with the lattice part on
the left.  Multiplication pushes lattice monomials through the ``U_s``
generators with the two-case commutation rule

    Z_lam U_s - U_s Z_{s lam} =
        (q_a - 1) (Z_lam - Z_{s lam}) / (1 - Z_{-a})            if a^ not in 2L^
        (q_a - 1 + Z_{-a}((q_a q_i)^(1/2) - (q_a / q_i)^(1/2)))
            * (Z_lam - Z_{s lam}) / (1 - Z_{-2a})               if a^ in 2L^

(both divisions are exact for lattice lam) and contracts ``U_s U_w`` by
the quadratic relation ``(U_s + 1)(U_s - q_a) = 0`` when the length drops.

Parameters are carried as exact exponents of ``q``: ``q_a = q^{a(alpha)}``
per simple root and ``q_i = q^{b(i)}`` per type-B component whose short
root has coroot in ``2 Lambda^``.  The extension by an R-group is a
twisted semidirect product: ``J_r h = (r.h) J_r`` and
``J_r J_r' = eta(r, r') J_{r r'}`` for a 2-cocycle eta.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .laurent import GroupAlgebraElement, QLaurent
from .rootdata import (
    BasedRootDatum,
    WeylElement,
    coroot_in_2Lambda,
    matrix_rank,
    pair,
    reduced_word,
    solve_in_span,
    weyl_length,
)


class InvalidParameters(ValueError):
    """Parameter table violates a structural constraint of the datum."""


def _simple_conjugacy_classes(datum: BasedRootDatum) -> list[list[int]]:
    """Simple-root indices grouped by Weyl conjugacy (per component and length)."""
    classes: dict[tuple, list[int]] = {}
    for i in range(datum.num_simples()):
        root, _ = datum.simple_pairs()[i]
        comp = next((ci for ci, c in enumerate(datum.components)
                     if any(root[s] != 0 for s in c.slots)), None)
        length = pair(root, root)
        comp_obj = datum.components[comp] if comp is not None else None
        if comp_obj is not None and comp_obj.letter == "D" and comp_obj.k == 2:
            # degenerate D_2 = A_1 x A_1: the two simple roots are not conjugate
            key = (comp, length, i)
        else:
            key = (comp, length)
        classes.setdefault(key, []).append(i)
    return list(classes.values())


@dataclass(frozen=True)
class HeckeParams:
    """Exact q-exponents: a(alpha) per simple root, b(i) per type-B component.

    ``alpha_exp[i]`` is the exponent of ``q_alpha`` for the i-th simple
    root (base order); ``qi_exp[ci]`` the exponent of ``q_i`` for component
    ci.  Validation enforces conjugation-invariance of ``alpha_exp``, that
    ``q_i`` is present exactly for components whose special simple root has
    coroot in 2 Lambda^, and that the square roots occurring in the
    commutation rule stay inside quarter-integer powers of q.
    """

    datum: BasedRootDatum
    alpha_exp: tuple[Fraction, ...]
    qi_exp: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        d = self.datum
        if len(self.alpha_exp) != d.num_simples():
            raise InvalidParameters("need one exponent per simple root")
        object.__setattr__(self, "alpha_exp", tuple(Fraction(a) for a in self.alpha_exp))
        object.__setattr__(self, "qi_exp", dict(self.qi_exp))
        for cls in _simple_conjugacy_classes(d):
            vals = {self.alpha_exp[i] for i in cls}
            if len(vals) > 1:
                raise InvalidParameters("conjugate simple roots carry unequal exponents")
        special = self._special_roots()
        for ci in self.qi_exp:
            if ci not in special:
                raise InvalidParameters(f"component {ci} admits no q_i parameter")
        for ci in special:
            if ci not in self.qi_exp:
                raise InvalidParameters(f"component {ci} requires a q_i parameter")
        for ci, si in special.items():
            a = self.alpha_exp[si]
            b = Fraction(self.qi_exp[ci])
            for e in ((a + b) / 2, (a - b) / 2):
                if (4 * e).denominator != 1:
                    raise InvalidParameters(
                        f"(a(alpha) +- b(i))/2 = {e} is not a quarter-integer")

    def _special_roots(self) -> dict[int, int]:
        """component index -> simple index of its 2Lambda^ special root."""
        d = self.datum
        out = {}
        for i in range(d.num_simples()):
            _, coroot = d.simple_pairs()[i]
            if coroot_in_2Lambda(coroot, d):
                root = d.simple_pairs()[i][0]
                ci = next(cj for cj, c in enumerate(d.components)
                          if any(root[s] != 0 for s in c.slots))
                out[ci] = i
        return out

    def q_alpha(self, i: int) -> QLaurent:
        return QLaurent.q_power(self.alpha_exp[i])

    def special_simple(self, i: int) -> bool:
        _, coroot = self.datum.simple_pairs()[i]
        return coroot_in_2Lambda(coroot, self.datum)

    def qi_for_simple(self, i: int) -> Fraction:
        root = self.datum.simple_pairs()[i][0]
        ci = next(cj for cj, c in enumerate(self.datum.components)
                  if any(root[s] != 0 for s in c.slots))
        return Fraction(self.qi_exp[ci])


# ---------------------------------------------------------------------------
# The commutation rule
# ---------------------------------------------------------------------------

def commute_zu_ga(lam: Sequence[int], i: int, d: BasedRootDatum, p: HeckeParams) -> GroupAlgebraElement:
    """The lattice-part correction Z_lam U_s - U_s Z_{s lam} for s = s_i."""
    root, coroot = d.simple_pairs()[i]
    n = pair(lam, coroot)
    if n.denominator != 1:
        raise ValueError(f"{lam} pairs non-integrally with the coroot of simple {i}")
    n = int(n)
    if n == 0:
        return GroupAlgebraElement.zero(d.rank)
    alpha = tuple(int(x) for x in root)
    lam = tuple(int(x) for x in lam)
    slam = tuple(a - n * b for a, b in zip(lam, alpha))
    diff = GroupAlgebraElement.monomial(lam) - GroupAlgebraElement.monomial(slam)
    qa = p.q_alpha(i)
    one = QLaurent.one()
    if not p.special_simple(i):
        den = GroupAlgebraElement.one(d.rank) - GroupAlgebraElement.monomial(tuple(-x for x in alpha))
        quot = diff.exact_div(den)
        return quot.scale(qa - one)
    if n % 2:
        raise ValueError("coroot in 2 Lambda^ forces even pairings; malformed lattice vector")
    a = p.alpha_exp[i]
    b = p.qi_for_simple(i)
    sqrt_plus = QLaurent.q_power((a + b) / 2)
    sqrt_minus = QLaurent.q_power((a - b) / 2)
    factor = GroupAlgebraElement.const(d.rank, qa - one) + \
        GroupAlgebraElement.monomial(tuple(-x for x in alpha), sqrt_plus - sqrt_minus)
    den = GroupAlgebraElement.one(d.rank) - GroupAlgebraElement.monomial(tuple(-2 * x for x in alpha))
    quot = diff.exact_div(den)
    return factor * quot


# ---------------------------------------------------------------------------
# Hecke elements
# ---------------------------------------------------------------------------

class HeckeElement:
    """Normal-form element ``sum_w b_w U_w`` with b_w in the lattice algebra."""

    __slots__ = ("datum", "params", "_t")

    def __init__(self, datum: BasedRootDatum, params: HeckeParams,
                 terms: Mapping[WeylElement, GroupAlgebraElement] | None = None):
        t: dict[WeylElement, GroupAlgebraElement] = {}
        if terms:
            for w, b in terms.items():
                if not b.is_zero():
                    acc = t.get(w)
                    b = b if acc is None else acc + b
                    if b.is_zero():
                        t.pop(w, None)
                    else:
                        t[w] = b
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "_t", t)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("HeckeElement is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, d, p) -> "HeckeElement":
        return cls(d, p)

    @classmethod
    def one(cls, d, p) -> "HeckeElement":
        return cls(d, p, {WeylElement.identity(d.rank): GroupAlgebraElement.one(d.rank)})

    @classmethod
    def from_z(cls, d, p, lam: Sequence[int], coeff: QLaurent | None = None) -> "HeckeElement":
        ga = GroupAlgebraElement.monomial(tuple(int(x) for x in lam),
                                          coeff or QLaurent.one())
        return cls(d, p, {WeylElement.identity(d.rank): ga})

    @classmethod
    def from_u(cls, d, p, w: WeylElement, coeff: GroupAlgebraElement | None = None) -> "HeckeElement":
        return cls(d, p, {w: coeff or GroupAlgebraElement.one(d.rank)})

    @classmethod
    def u_simple(cls, d, p, i: int) -> "HeckeElement":
        return cls.from_u(d, p, d.simple_reflection(i))

    # -- structure ----------------------------------------------------------

    def terms(self) -> list[tuple[WeylElement, GroupAlgebraElement]]:
        return sorted(self._t.items(), key=lambda kv: (kv[0].perm, kv[0].signs))

    def is_zero(self) -> bool:
        return not self._t

    def _check(self, o: "HeckeElement"):
        if self.datum is not o.datum and self.datum != o.datum:
            raise ValueError("datum mismatch")
        if self.params is not o.params and self.params != o.params:
            raise ValueError("parameter mismatch")

    def __add__(self, o: "HeckeElement") -> "HeckeElement":
        self._check(o)
        t = dict(self._t)
        for w, b in o._t.items():
            t[w] = t.get(w, GroupAlgebraElement.zero(self.datum.rank)) + b
        return HeckeElement(self.datum, self.params, t)

    def __sub__(self, o: "HeckeElement") -> "HeckeElement":
        return self + (-o)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.datum, self.params, {w: -b for w, b in self._t.items()})

    def scale(self, c: QLaurent) -> "HeckeElement":
        return HeckeElement(self.datum, self.params, {w: b.scale(c) for w, b in self._t.items()})

    def ga_mul_left(self, b: GroupAlgebraElement) -> "HeckeElement":
        return HeckeElement(self.datum, self.params, {w: b * c for w, c in self._t.items()})

    def __eq__(self, o) -> bool:
        return (isinstance(o, HeckeElement) and self.datum == o.datum
                and self._t == o._t)

    def __hash__(self):
        return hash(tuple(self.terms()))

    def __repr__(self):
        if not self._t:
            return "He(0)"
        return "He(" + " + ".join(f"[{b!r}]U{w.perm, w.signs}" for w, b in self.terms()) + ")"

    def __mul__(self, o: "HeckeElement") -> "HeckeElement":
        return he_mul(self, o)


def _u_simple_times(i: int, z: HeckeElement) -> HeckeElement:
    """Left multiplication U_{s_i} * z, renormalised."""
    d, p = z.datum, z.params
    s = d.simple_reflection(i)
    qa = p.q_alpha(i)
    qa_minus_1 = qa - QLaurent.one()
    out: dict[WeylElement, GroupAlgebraElement] = {}

    def add(w, b):
        if b.is_zero():
            return
        acc = out.get(w)
        b = b if acc is None else acc + b
        if b.is_zero():
            out.pop(w, None)
        else:
            out[w] = b

    lv_cache: dict[WeylElement, int] = {}

    def length(w):
        if w not in lv_cache:
            lv_cache[w] = weyl_length(w, d)
        return lv_cache[w]

    for v, c in z._t.items():
        sc = c.apply_lattice_map(s.act_int)
        corr = GroupAlgebraElement.zero(d.rank)
        for mu, coeff in c.terms():
            smu = s.act_int(mu)
            dmu = commute_zu_ga(smu, i, d, p)
            if not dmu.is_zero():
                corr = corr + dmu.scale(coeff)
        sv = s * v
        if length(sv) > length(v):
            add(sv, sc)
        else:
            add(v, sc.scale(qa_minus_1))
            add(sv, sc.scale(qa))
        if not corr.is_zero():
            add(v, -corr)
    return HeckeElement(d, p, out)


def he_mul(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    """Product in normal form (lattice parts pushed to the left)."""
    x._check(y)
    d, p = x.datum, x.params
    out = HeckeElement.zero(d, p)
    for w, b in x._t.items():
        word = reduced_word(w, d)
        acc = y
        for letter in reversed(word):
            acc = _u_simple_times(letter, acc)
        out = out + acc.ga_mul_left(b)
    return out


def commute_zu(lam: Sequence[int], i: int, d: BasedRootDatum, p: HeckeParams) -> HeckeElement:
    """Spec-level wrapper: the correction as a Hecke element (coefficient of U_e)."""
    ga = commute_zu_ga(lam, i, d, p)
    return HeckeElement(d, p, {WeylElement.identity(d.rank): ga})


def is_central(x: HeckeElement) -> bool:
    """Whether x commutes with every U_{s_i} and every Z_{e_j} generator."""
    d, p = x.datum, x.params
    if d.weyl_order() > 10_000:
        raise ValueError("Weyl group exceeds the enumeration guard")
    for i in range(d.num_simples()):
        u = HeckeElement.u_simple(d, p, i)
        if he_mul(x, u) != he_mul(u, x):
            return False
    for j in range(d.rank):
        e = [0] * d.rank
        e[j] = 1
        z = HeckeElement.from_z(d, p, e)
        if he_mul(x, z) != he_mul(z, x):
            return False
    return True


# ---------------------------------------------------------------------------
# Extension by the R-group
# ---------------------------------------------------------------------------

class Cocycle:
    """A 2-cocycle on a finite group of signed permutations, values in Q^x."""

    def __init__(self, group: Sequence[WeylElement], table: Mapping[tuple[WeylElement, WeylElement], Fraction] | None = None):
        self.group = tuple(group)
        if table is None:
            table = {(r, rp): Fraction(1) for r in group for rp in group}
        self.table = {k: Fraction(v) for k, v in table.items()}
        for r in self.group:
            for rp in self.group:
                if (r, rp) not in self.table:
                    raise ValueError("cocycle table is incomplete")
                if self.table[(r, rp)] == 0:
                    raise ValueError("cocycle values must be nonzero")
        for r in self.group:
            for rp in self.group:
                for rpp in self.group:
                    lhs = self.table[(r, rp)] * self.table[(r * rp, rpp)]
                    rhs = self.table[(rp, rpp)] * self.table[(r, rp * rpp)]
                    if lhs != rhs:
                        raise ValueError("2-cocycle identity fails")

    def __call__(self, r: WeylElement, rp: WeylElement) -> Fraction:
        return self.table[(r, rp)]

    def __eq__(self, o):
        return isinstance(o, Cocycle) and set(self.group) == set(o.group) and self.table == o.table


class ExtendedHeckeElement:
    """Element ``sum_r h_r J_r`` of the twisted semidirect product."""

    __slots__ = ("datum", "params", "cocycle", "_t")

    def __init__(self, datum: BasedRootDatum, params: HeckeParams, cocycle: Cocycle,
                 terms: Mapping[WeylElement, HeckeElement] | None = None):
        for r in cocycle.group:
            for root, _ in datum.pos_roots:
                if datum.root_sign(r.act(root)) != 1:
                    raise ValueError(
                        "R-group element does not preserve the positive roots")
        t: dict[WeylElement, HeckeElement] = {}
        if terms:
            for r, h in terms.items():
                if r not in cocycle.group:
                    raise ValueError("term index outside the stored R-group")
                if not h.is_zero():
                    acc = t.get(r)
                    h = h if acc is None else acc + h
                    if h.is_zero():
                        t.pop(r, None)
                    else:
                        t[r] = h
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "cocycle", cocycle)
        object.__setattr__(self, "_t", t)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("ExtendedHeckeElement is immutable")

    @classmethod
    def from_hecke(cls, h: HeckeElement, cocycle: Cocycle) -> "ExtendedHeckeElement":
        e = WeylElement.identity(h.datum.rank)
        return cls(h.datum, h.params, cocycle, {e: h})

    @classmethod
    def j_r(cls, d, p, cocycle: Cocycle, r: WeylElement) -> "ExtendedHeckeElement":
        return cls(d, p, cocycle, {r: HeckeElement.one(d, p)})

    def terms(self):
        return sorted(self._t.items(), key=lambda kv: (kv[0].perm, kv[0].signs))

    def is_zero(self):
        return not self._t

    def __eq__(self, o):
        return (isinstance(o, ExtendedHeckeElement) and self.datum == o.datum
                and self.cocycle == o.cocycle and self._t == o._t)

    def __add__(self, o):
        self._compat(o)
        t = dict(self._t)
        for r, h in o._t.items():
            t[r] = t.get(r, HeckeElement.zero(self.datum, self.params)) + h
        return ExtendedHeckeElement(self.datum, self.params, self.cocycle, t)

    def __neg__(self):
        return ExtendedHeckeElement(self.datum, self.params, self.cocycle,
                                    {r: -h for r, h in self._t.items()})

    def __sub__(self, o):
        return self + (-o)

    def _compat(self, o: "ExtendedHeckeElement"):
        if self.datum != o.datum or set(self.cocycle.group) != set(o.cocycle.group) \
                or self.cocycle.table != o.cocycle.table:
            raise ValueError("incompatible extended algebra data")

    def __repr__(self):
        return "ExtHe(" + " + ".join(f"[{h!r}]J{r.perm, r.signs}" for r, h in self.terms()) + ")"


def twist_hecke(r: WeylElement, h: HeckeElement) -> HeckeElement:
    """Conjugation action of an R-group element: U_w -> U_{r w r^-1}, Z_lam -> Z_{r lam}."""
    rinv = r.inverse()
    t = {}
    for w, b in h._t.items():
        t[r * w * rinv] = b.apply_lattice_map(r.act_int)
    return HeckeElement(h.datum, h.params, t)


def ext_mul(x: ExtendedHeckeElement, y: ExtendedHeckeElement) -> ExtendedHeckeElement:
    """Product with J_r h = (r.h) J_r and J_r J_r' = eta(r, r') J_{r r'}."""
    x._compat(y)
    out = ExtendedHeckeElement(x.datum, x.params, x.cocycle)
    for r, h in x._t.items():
        for rp, hp in y._t.items():
            eta = x.cocycle(r, rp)
            prod = he_mul(h, twist_hecke(r, hp)).scale(QLaurent.const(eta))
            out = out + ExtendedHeckeElement(x.datum, x.params, x.cocycle, {r * rp: prod})
    return out


# ---------------------------------------------------------------------------
# Module exponents: tempered / square-integrable chamber criteria
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentChar:
    """A monomial character lam -> zeta(lam) q^<lam, nu>.

    ``zeta`` is a root-of-unity tag (any hashable label; always unitary)
    and ``nu`` a rational vector.  The real part used by the chamber
    criteria is the vector -nu.
    """

    zeta: str
    nu: tuple[Fraction, ...]

    def real_part(self) -> tuple[Fraction, ...]:
        return tuple(-x for x in self.nu)


# the exponent list of a finite-dimensional module
ModuleExponents = Sequence[ExponentChar]


def tempered_check(exponents: Sequence[ExponentChar], d: BasedRootDatum) -> bool:
    """Real parts lie in the closed negative obtuse chamber spanned by the simple coroots."""
    covecs = [tuple(c) for _, c in d.simple_pairs()]
    for e in exponents:
        coeffs = solve_in_span(covecs, e.real_part())
        if coeffs is None or any(c > 0 for c in coeffs):
            return False
    return True


def sqint_check(exponents: Sequence[ExponentChar], central: Sequence[Sequence[int]],
                d: BasedRootDatum) -> bool:
    """Square-integrability modulo the central sublattice generated by ``central``.

    Requires: central generators together with the simple roots span a
    finite-index submodule of the lattice; every real part is a strictly
    negative combination of the simple coroots; and the characters are
    unitary on the central sublattice (nu orthogonal to it).
    """
    roots = [tuple(r) for r, _ in d.simple_pairs()]
    gens = [tuple(Fraction(x) for x in z) for z in central] + roots
    if d.rank > 0 and matrix_rank(gens) != d.rank:
        return False
    covecs = [tuple(c) for _, c in d.simple_pairs()]
    for e in exponents:
        coeffs = solve_in_span(covecs, e.real_part())
        if coeffs is None or any(c >= 0 for c in coeffs):
            return False
        for z in central:
            if pair(z, e.nu) != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# Presentation records and JSON
# ---------------------------------------------------------------------------

def _frac_json(x: Fraction):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def frac_from_json(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ValueError("floats are rejected; use int or 'p/q'")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise ValueError(f"cannot parse rational from {v!r}")


@dataclass(frozen=True)
class HeckePresentation:
    """Hecke algebra with parameters, plus optional R-group extension."""

    datum: BasedRootDatum
    alpha_exponents: tuple[Fraction, ...]
    qi_exponents: tuple[tuple[int, Fraction], ...] = ()   # (component, exponent)
    r_generators: tuple[WeylElement, ...] = ()
    cocycle_table: tuple[tuple[tuple, tuple, str], ...] = ()  # ((perm,signs),(perm,signs),"p/q")

    def params(self) -> HeckeParams:
        return HeckeParams(self.datum, self.alpha_exponents, dict(self.qi_exponents))

    def to_json(self) -> dict:
        return {
            "schema": "v1",
            "datum": self.datum.to_json(),
            "params": {
                "alpha_exponents": [_frac_json(a) for a in self.alpha_exponents],
                "special": [[ci, _frac_json(b)] for ci, b in self.qi_exponents],
            },
            "extended": {
                "r_group": [{"perm": list(r.perm), "signs": list(r.signs)}
                            for r in self.r_generators],
                "cocycle": [[list(a), list(b), v] for (a, b, v) in self.cocycle_table],
            },
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "HeckePresentation":
        from .rootdata import build_O_datum
        dd = data["datum"]
        datum = build_O_datum([(c["type"], c["size"], c["t"]) for c in dd["components"]],
                              dd["rank"])
        alpha = tuple(frac_from_json(a) for a in data["params"]["alpha_exponents"])
        qi = tuple((int(ci), frac_from_json(b)) for ci, b in data["params"]["special"])
        rg = tuple(WeylElement(tuple(g["perm"]), tuple(g["signs"]))
                   for g in data.get("extended", {}).get("r_group", []))
        cc = tuple((tuple(a), tuple(b), v)
                   for a, b, v in data.get("extended", {}).get("cocycle", []))
        return cls(datum, alpha, qi, rg, cc)

    def __eq__(self, o):
        return (isinstance(o, HeckePresentation) and self.to_json() == o.to_json())
