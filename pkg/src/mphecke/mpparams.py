"""Parameter calculus for metaplectic Bernstein blocks.

Inertial classes of Weil-group representations are abstract records: a
dimension d, the order t of the unramified stabiliser, self-duality, and
two type flags (whether the base point, and the other self-dual twist,
factor through the relevant classical type).  A normed parameter is a
multiplicity assignment to such classes with total dimension 2n.

From one normed parameter the module enumerates every Bernstein block:
the anchor choices S (per self-dual class a pair (a+, a-) with a
GL-multiplicity balancing the size-parity identity), the alternating
characters of the component group of the anchor parameter, the emitted
extended Hecke presentation per class, the matched classical group, and
the partition of all blocks by the central sign into the plus and minus
special orthogonal towers.

Size-parity identity.  With kappa = 1 for a type-carrying member and 0
otherwise, member (a, kappa) contributes sum_{k=1..a}(2k - kappa), i.e.
a(a+1) or a^2; a choice (a+, a-, m_gl) is admissible iff

    m - 2 m_gl = contrib(a+, kappa) + contrib(a-, kappa_minus).

Emitted parameters.  A self-dual class with at least one non-type member
or a nonempty anchor occurrence yields the odd-orthogonal datum of size
m - m_O + 1 with long exponents t, special exponent
t*(a+ + a- + 1 - (kappa + kappa_-)/2) and companion exponent
|t*(a+ - a- + (kappa_- - kappa)/2)|; both-type classes with empty anchor
occurrence give the even-orthogonal datum of size m with equal exponents
t extended by the outer involution; non-self-dual classes give the
GL_m datum with equal exponents t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping


class ParameterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Inertial classes and normed parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InertialClass:
    label: str
    d: int = 1
    t: int = 1
    self_dual: bool = False
    type_plus: bool = False
    type_minus: bool = False

    def __post_init__(self):
        if self.d < 1 or self.t < 1:
            raise ParameterError("d and t must be positive")
        if not self.self_dual and (self.type_plus or self.type_minus):
            raise ParameterError("type flags are only meaningful for self-dual classes")

    @property
    def kappa_plus(self) -> int:
        return 1 if self.type_plus else 0

    @property
    def kappa_minus(self) -> int:
        return 1 if self.type_minus else 0

    def member_of_type(self, minus: bool) -> bool:
        return self.type_minus if minus else self.type_plus


@dataclass(frozen=True)
class NormedParameter:
    """Multiplicities m(rho) per inertial class with sum of dimensions 2n.

    For a non-self-dual class the stored multiplicity counts the base
    member alone; its dual contributes the same again, so the class adds
    2*d*m to the total dimension, against d*m for a self-dual class.
    """

    n: int
    classes: tuple[InertialClass, ...]
    mult: tuple[tuple[str, int], ...]

    def __post_init__(self):
        labels = [c.label for c in self.classes]
        if len(set(labels)) != len(labels):
            raise ParameterError("duplicate class labels")
        object.__setattr__(self, "mult", tuple((str(l), int(m)) for l, m in self.mult))
        by_label = dict(self.mult)
        if set(by_label) - set(labels):
            raise ParameterError("multiplicity for unknown class")
        total = 0
        for c in self.classes:
            m = by_label.get(c.label, 0)
            if m < 0:
                raise ParameterError("multiplicities must be >= 0")
            total += c.d * m * (1 if c.self_dual else 2)
        if total != 2 * self.n:
            raise ParameterError(f"dimension identity fails: {total} != {2 * self.n}")

    def m(self, label: str) -> int:
        return dict(self.mult).get(label, 0)

    def cls(self, label: str) -> InertialClass:
        for c in self.classes:
            if c.label == label:
                return c
        raise KeyError(label)

    def support(self) -> list[InertialClass]:
        return [c for c in self.classes if self.m(c.label) > 0]

    def self_dual_support(self) -> list[InertialClass]:
        return [c for c in self.support() if c.self_dual]

    def to_json(self) -> dict:
        return {
            "schema": "v1",
            "n": self.n,
            "classes": [
                {"label": c.label, "d": c.d, "t": c.t, "self_dual": c.self_dual,
                 "type_plus": c.type_plus, "type_minus": c.type_minus,
                 "multiplicity": self.m(c.label)}
                for c in self.classes
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "NormedParameter":
        classes = []
        mult = []
        for c in data["classes"]:
            classes.append(InertialClass(
                str(c["label"]), int(c.get("d", 1)), int(c.get("t", 1)),
                bool(c.get("self_dual", False)), bool(c.get("type_plus", False)),
                bool(c.get("type_minus", False))))
            mult.append((str(c["label"]), int(c["multiplicity"])))
        return cls(int(data["n"]), tuple(classes), tuple(mult))


# ---------------------------------------------------------------------------
# Jordan data
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class JordEntry:
    label: str
    minus: bool
    a: int


@dataclass(frozen=True)
class DiscreteParameter:
    classes: tuple[InertialClass, ...]
    jord: tuple[JordEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "jord", tuple(sorted(self.jord)))
        labels = {c.label for c in self.classes}
        for e in self.jord:
            if e.label not in labels:
                raise ParameterError(f"jord entry for unknown class {e.label!r}")
            if e.a < 1:
                raise ParameterError("block sizes must be positive")

    def cls(self, label: str) -> InertialClass:
        for c in self.classes:
            if c.label == label:
                return c
        raise KeyError(label)

    def members(self) -> list[tuple[str, bool]]:
        seen = []
        for e in self.jord:
            key = (e.label, e.minus)
            if key not in seen:
                seen.append(key)
        return seen

    def member_blocks(self, label: str, minus: bool) -> list[int]:
        return sorted(e.a for e in self.jord if e.label == label and e.minus == minus)

    def member_of_type(self, label: str, minus: bool) -> bool:
        return self.cls(label).member_of_type(minus)


def without_holes(p: DiscreteParameter) -> bool:
    """Whether every member's blocks form the full staircase 2k - kappa, k = 1..a."""
    for label, minus in p.members():
        kappa = 1 if p.member_of_type(label, minus) else 0
        blocks = p.member_blocks(label, minus)
        expected = [2 * k - kappa for k in range(1, len(blocks) + 1)]
        if blocks != expected:
            return False
    return True


def jord_from_x(label: str, x, minus: bool = False) -> list[JordEntry]:
    """Jordan blocks attached to a reducibility point x: sizes 2x + 1 - 2l.

    x in {0, 1/2} contributes the empty set; 2x must be an integer.
    """
    x = Fraction(x)
    if (2 * x).denominator != 1:
        raise ParameterError(f"2x must be an integer, got x = {x}")
    if x < 0:
        raise ParameterError("x must be >= 0")
    out = []
    for ell in range(1, int(x) + 1):
        a = 2 * x + 1 - 2 * ell
        out.append(JordEntry(label, minus, int(a)))
    return out


def x_from_jord(p: DiscreteParameter, label: str, minus: bool = False) -> Fraction:
    """The nonnegative reducibility point read off a discrete parameter.

    a is the largest block of the member, falling back to 0 for an absent
    non-type member and -1 for an absent type member; x = (a + 1)/2.
    """
    blocks = p.member_blocks(label, minus)
    if blocks:
        a = max(blocks)
    else:
        a = -1 if p.member_of_type(label, minus) else 0
    return Fraction(a + 1, 2)


def first_occurrence_x(n: int, m_zeta: int) -> Fraction:
    """Reducibility point of the trivial class from a first-occurrence index."""
    if m_zeta < 1 or m_zeta % 2 == 0:
        raise ParameterError("first-occurrence index must be odd and positive")
    x = abs(Fraction(2 * n - (m_zeta - 1) + 1, 2))
    assert (x - Fraction(1, 2)).denominator == 1, "result must be a strict half-integer"
    return x


# ---------------------------------------------------------------------------
# Alternating characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AltChar:
    signs: tuple[tuple[JordEntry, int], ...]

    def sign(self, e: JordEntry) -> int:
        return dict(self.signs)[e]

    def to_json(self) -> list:
        return [[e.label, e.minus, e.a, s] for e, s in self.signs]


def enumerate_alt_chars(p: DiscreteParameter) -> list[AltChar]:
    """All alternating characters on the Jordan blocks of p.

    Within one member the signs alternate down the staircase,
    eps(block k) = (-1)^(k-1) eps(block 1), and the first sign is forced
    to -1 for a non-type member.  Each type member present therefore
    contributes one free sign, so the count is 2^(number of type members
    present).
    """
    if not without_holes(p):
        raise ParameterError("parameter has holes; characters are undefined")
    member_entries: list[tuple[tuple[str, bool], list[JordEntry]]] = []
    for label, minus in p.members():
        entries = sorted((e for e in p.jord if (e.label, e.minus) == (label, minus)),
                         key=lambda e: e.a)
        member_entries.append(((label, minus), entries))
    free = [key for key, _ in member_entries if p.member_of_type(*key)]
    chars = []
    for choice in itertools.product((1, -1), repeat=len(free)):
        first_sign = dict(zip(free, choice))
        signs = []
        for key, entries in member_entries:
            s1 = first_sign.get(key, -1)
            for idx, e in enumerate(entries):
                signs.append((e, s1 * (-1) ** idx))
        chars.append(AltChar(tuple(sorted(signs, key=lambda kv: kv[0]))))
    return chars


def epsilon_Z(e: AltChar) -> int:
    """Value of the character at the central element: product over all blocks."""
    out = 1
    for _, s in e.signs:
        out *= s
    return out


# ---------------------------------------------------------------------------
# Anchor choices S
# ---------------------------------------------------------------------------

def member_dim(a: int, kappa: int) -> int:
    """sum_{k=1..a} (2k - kappa) = a^2 (kappa = 1) or a(a+1) (kappa = 0)."""
    return a * a if kappa else a * (a + 1)


@dataclass(frozen=True)
class SChoice:
    entries: tuple[tuple[str, int, int, int], ...]   # (label, a_plus, a_minus, m_gl)

    def get(self, label: str) -> tuple[int, int, int]:
        for l, ap, am, mg in self.entries:
            if l == label:
                return ap, am, mg
        raise KeyError(label)

    def to_json(self) -> list:
        return [[l, ap, am, mg] for l, ap, am, mg in self.entries]


def _class_choices(cls: InertialClass, m: int) -> list[tuple[int, int, int]]:
    out = []
    bound = 0
    while member_dim(bound, 1) <= m:
        bound += 1
    for ap in range(bound + 1):
        for am in range(bound + 1):
            used = member_dim(ap, cls.kappa_plus) + member_dim(am, cls.kappa_minus)
            rest = m - used
            if rest >= 0 and rest % 2 == 0:
                out.append((ap, am, rest // 2))
    return sorted(out)


def enumerate_S(p0: NormedParameter) -> list[SChoice]:
    """All anchor choices: per self-dual class every (a+, a-, m_gl) solving
    the size-parity identity, combined multiplicatively across classes."""
    sd = p0.self_dual_support()
    per_class = [[(c.label,) + triple for triple in _class_choices(c, p0.m(c.label))]
                 for c in sd]
    return [SChoice(tuple(combo)) for combo in itertools.product(*per_class)]


def anchor_parameter(p0: NormedParameter, S: SChoice) -> DiscreteParameter:
    """The discrete parameter of the anchor block determined by S."""
    jord = []
    for c in p0.self_dual_support():
        ap, am, _ = S.get(c.label)
        for k in range(1, ap + 1):
            jord.append(JordEntry(c.label, False, 2 * k - c.kappa_plus))
        for k in range(1, am + 1):
            jord.append(JordEntry(c.label, True, 2 * k - c.kappa_minus))
    return DiscreteParameter(p0.classes, tuple(jord))


# ---------------------------------------------------------------------------
# Hecke presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MpHeckePresentation:
    """Presentation data for one tensor factor of a block's Hecke algebra.

    ``kind`` is one of GL, SO_odd, SO_even_ext; ``size`` the size label of
    the underlying datum; ``exponents`` the per-simple-root q-exponents;
    ``special``/``qi`` the distinguished short-root and companion
    exponents for odd-orthogonal shapes; ``scale`` the base-field
    rescaling t (already multiplied into the exponents).
    """

    kind: str
    size: int
    exponents: tuple[Fraction, ...]
    special: Fraction | None
    qi: Fraction | None
    scale: int
    extended: bool = False

    def rank(self) -> int:
        if self.kind == "GL":
            return self.size - 1
        if self.kind == "SO_odd":
            return (self.size - 1) // 2
        return self.size // 2

    def display(self) -> str:
        body = ", ".join(_q_str(e) for e in self.exponents)
        if self.qi is not None:
            return f"{body}; {_q_str(self.qi)}" if body else f"; {_q_str(self.qi)}"
        return body

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "size": self.size,
            "exponents": [_frac_str(e) for e in self.exponents],
            "special": _frac_str(self.special) if self.special is not None else None,
            "qi": _frac_str(self.qi) if self.qi is not None else None,
            "scale": self.scale,
            "extended": self.extended,
        }


def _frac_str(x: Fraction):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _q_str(e: Fraction) -> str:
    e = Fraction(e)
    if e == 1:
        return "q"
    return f"q^{_frac_str(e)}"


def hecke_for_block(p0: NormedParameter, S: SChoice, cls: InertialClass) -> MpHeckePresentation:
    """The Hecke-algebra factor attached to one inertial class of a block."""
    m = p0.m(cls.label)
    t = cls.t
    if not cls.self_dual:
        return MpHeckePresentation("GL", m, (Fraction(t),) * max(m - 1, 0), None, None, t)
    ap, am, _ = S.get(cls.label)
    kp, km = cls.kappa_plus, cls.kappa_minus
    if kp and km and ap == 0 and am == 0:
        r = m // 2
        n_simples = r if r >= 2 else 0
        return MpHeckePresentation("SO_even_ext", m, (Fraction(t),) * n_simples,
                                   None, None, t, extended=True)
    m_O = member_dim(ap, kp) + member_dim(am, km)
    if m_O > m or (m - m_O) % 2:
        raise ParameterError("anchor choice inconsistent with the multiplicity")
    size = m - m_O + 1
    r = (size - 1) // 2
    special = t * (Fraction(ap + am + 1) - Fraction(kp + km, 2))
    qi = abs(t * (Fraction(ap - am) + Fraction(km - kp, 2)))
    exponents = (Fraction(t),) * (r - 1) + (special,) if r >= 1 else ()
    return MpHeckePresentation("SO_odd", size, exponents,
                               special if r >= 1 else None,
                               qi if r >= 1 else None, t)


def classical_match(cls: InertialClass, m: int) -> tuple[str, int]:
    """The classical group whose principal-type tower matches the class."""
    if not cls.self_dual:
        return "GL", m
    if not cls.type_plus and not cls.type_minus:
        return "SO_odd", m + 1
    if cls.type_plus != cls.type_minus:
        return "U", m
    return ("O_even", m) if m % 2 == 0 else ("Sp", m - 1)


def classical_hecke(group: str, size: int, a_plus: int, a_minus: int) -> MpHeckePresentation:
    """Unequal-parameter presentations of the classical reference towers.

    SO_odd(2n+1): exponents q, ..., q, q^(a+ + a- + 1); q^|a+ - a-|.
    O_even(2n), (a+, a-) != (0, 0), and Sp(2n): q, ..., q, q^(a+ + a-);
    q^|a+ - a-|; O_even at (0, 0) is the extended even datum with equal
    exponents.  U(n): q, ..., q, q^(a+ + a- + 1/2); q^|a+ - a- +
    (-1)^n / 2|.  All on the odd-orthogonal datum of the size cut down by
    the anchor dimensions m_plus + m_minus.
    """
    ap, am = int(a_plus), int(a_minus)
    if ap < 0 or am < 0:
        raise ParameterError("a+ and a- must be >= 0")
    if group == "SO_odd":
        if size % 2 == 0:
            raise ParameterError("SO_odd size must be odd")
        m = size - 1
        mp, mm = member_dim(ap, 0), member_dim(am, 0)
        special = Fraction(ap + am + 1)
        qi = Fraction(abs(ap - am))
    elif group == "O_even":
        if size % 2:
            raise ParameterError("O_even size must be even")
        m = size
        if ap == 0 and am == 0:
            r = m // 2
            n_simples = r if r >= 2 else 0
            return MpHeckePresentation("SO_even_ext", m, (Fraction(1),) * n_simples,
                                       None, None, 1, extended=True)
        mp, mm = member_dim(ap, 1), member_dim(am, 1)
        special = Fraction(ap + am)
        qi = Fraction(abs(ap - am))
    elif group == "Sp":
        if size % 2:
            raise ParameterError("Sp size must be even")
        m = size + 1
        mp, mm = member_dim(ap, 1), member_dim(am, 1)
        special = Fraction(ap + am)
        qi = Fraction(abs(ap - am))
    elif group == "U":
        m = size
        kp, km = (1, 0) if size % 2 else (0, 1)
        mp, mm = member_dim(ap, kp), member_dim(am, km)
        special = Fraction(ap + am) + Fraction(1, 2)
        qi = abs(Fraction(ap - am) + Fraction((-1) ** size, 2))
    else:
        raise ParameterError(f"unknown classical group {group!r}")
    cut = m - mp - mm
    if cut < 0 or cut % 2:
        raise ParameterError("anchor dimensions inconsistent with the group size")
    r = cut // 2
    exponents = (Fraction(1),) * (r - 1) + (special,) if r >= 1 else ()
    return MpHeckePresentation("SO_odd", 2 * r + 1, exponents,
                               special if r >= 1 else None,
                               qi if r >= 1 else None, 1)


def _scaled(p: MpHeckePresentation, t: int) -> MpHeckePresentation:
    return MpHeckePresentation(
        p.kind, p.size, tuple(t * e for e in p.exponents),
        t * p.special if p.special is not None else None,
        t * p.qi if p.qi is not None else None,
        p.scale * t, p.extended)


def verify_match(p0: NormedParameter) -> dict:
    """Compare the emitted presentations against the matched classical towers.

    For every anchor choice and every class of the support the metaplectic
    presentation must coincide with the classical one after rescaling the
    classical exponents by t; the unitary-type comparison may need the
    argument order (a+, a-) swapped, which is recorded.  Mismatches are
    reported, never raised.
    """
    rows = []
    mismatches = 0
    for S in enumerate_S(p0):
        for cls in p0.support():
            m = p0.m(cls.label)
            group, gsize = classical_match(cls, m)
            if not cls.self_dual:
                mp = hecke_for_block(p0, S, cls)
                classical = MpHeckePresentation("GL", m, (Fraction(1),) * max(m - 1, 0),
                                                None, None, 1)
                ok = mp == _scaled(classical, cls.t)
                rows.append({"S": S.to_json(), "class": cls.label, "group": group,
                             "matched": ok, "swapped": False})
                mismatches += 0 if ok else 1
                continue
            ap, am, _ = S.get(cls.label)
            mp = hecke_for_block(p0, S, cls)
            matched, swapped = False, False
            for swap in (False, True):
                args = (am, ap) if swap else (ap, am)
                try:
                    classical = classical_hecke(group, gsize, *args)
                except ParameterError:
                    continue
                if mp == _scaled(classical, cls.t):
                    matched, swapped = True, swap
                    break
            rows.append({"S": S.to_json(), "class": cls.label, "group": group,
                         "matched": matched, "swapped": swapped})
            mismatches += 0 if matched else 1
    return {"schema": "v1", "mismatches": mismatches, "rows": rows}


# ---------------------------------------------------------------------------
# Blocks, central signs and the two orthogonal towers
# ---------------------------------------------------------------------------

def enumerate_blocks(p0: NormedParameter) -> list[dict]:
    """One record per Bernstein block: anchor choice, character, presentations."""
    out = []
    for S in enumerate_S(p0):
        anchor = anchor_parameter(p0, S)
        for eps in enumerate_alt_chars(anchor):
            presentations = {cls.label: hecke_for_block(p0, S, cls)
                             for cls in p0.support()}
            out.append({
                "S": S,
                "epsilon": eps,
                "epsilon_Z": epsilon_Z(eps),
                "hecke": presentations,
                "classical_match": {cls.label: classical_match(cls, p0.m(cls.label))
                                    for cls in p0.support()},
            })
    return out


def split_so(p0: NormedParameter) -> dict[int, list[dict]]:
    """Partition of all (S, epsilon) blocks by the central sign."""
    parts: dict[int, list[dict]] = {1: [], -1: []}
    for block in enumerate_blocks(p0):
        parts[block["epsilon_Z"]].append(block)
    return parts


# ---------------------------------------------------------------------------
# The Weil-representation blocks
# ---------------------------------------------------------------------------

TRIVIAL_CLASS = InertialClass("1", d=1, t=1, self_dual=True,
                              type_plus=False, type_minus=False)


def weil_example(n: int) -> dict:
    """The two metaplectic blocks of the rank-n Weil representation.

    The even block sits over the anchor-free choice (0, 0): the odd
    orthogonal datum of size 2n+1, exponents q (n times) and companion
    q^0, central sign +1.  The odd block sits over (1, 0): the computed
    presentation has n-2 long exponents q, special exponent q^2 and
    companion q; the commonly displayed parameter string
    "q, ..., q ((n-1) times); q^2" disagrees with that computation, and the
    report carries both with a flag instead of silently adopting either.
    """
    if n < 1:
        raise ParameterError("n must be >= 1")
    p0 = NormedParameter(n, (TRIVIAL_CLASS,), (("1", 2 * n),))

    s_plus = SChoice((("1", 0, 0, n),))
    even = hecke_for_block(p0, s_plus, TRIVIAL_CLASS)
    anchor_plus = anchor_parameter(p0, s_plus)
    eps_plus = enumerate_alt_chars(anchor_plus)[0]

    s_minus = SChoice((("1", 1, 0, n - 1),))
    odd = hecke_for_block(p0, s_minus, TRIVIAL_CLASS)
    anchor_minus = anchor_parameter(p0, s_minus)
    eps_minus = enumerate_alt_chars(anchor_minus)[0]

    even_reference = ", ".join(["q"] * n) + "; q^0"
    odd_reference = ", ".join(["q"] * (n - 1)) + "; q^2" if n >= 2 else "; q^2"

    return {
        "schema": "v1",
        "even": {
            "S": s_plus.to_json(),
            "epsilon_Z": epsilon_Z(eps_plus),
            "presentation": even.to_json(),
            "display": even.display(),
            "reference_display": even_reference,
            "display_matches_reference": even.display() == even_reference,
        },
        "odd": {
            "S": s_minus.to_json(),
            "epsilon_Z": epsilon_Z(eps_minus),
            "presentation": odd.to_json(),
            "display": odd.display(),
            "reference_display": odd_reference,
            "display_matches_reference": odd.display() == odd_reference,
        },
    }
