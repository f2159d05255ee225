"""
2-local stable stems in degrees 0..20 and the relations the Mahowald-line
arguments consume. This module is data: each row and relation carries its
provenance string.
"""
from dataclasses import dataclass, field
from math import gcd, prod

from utils.errors import ParameterError

STANDARD_TABLE = "standard 2-local table of stable stems"


@dataclass(frozen=True)
class StemElem:
    """A named element of a stable stem, with its additive order (0 for infinite)."""

    name: str
    degree: int
    order: int


@dataclass(frozen=True)
class StemGroup:
    """
    A 2-local stable stem as a sum of cyclic groups.

    ``summands`` lists cyclic orders with 0 standing for Z; the trivial
    group has no summands.
    """

    n: int
    summands: tuple
    generators: tuple
    citation: str
    notes: tuple = field(default=())

    @property
    def is_trivial(self):
        return not self.summands

    @property
    def order(self):
        if 0 in self.summands:
            return None
        return prod(self.summands)

    @property
    def exponent(self):
        if 0 in self.summands:
            return None
        return max(self.summands, default=1)

    def label(self):
        if self.is_trivial:
            return "0"
        return " ⊕ ".join("Z" if s == 0 else f"Z/{s}" for s in self.summands)


def _gens(n, *pairs):
    return tuple(StemElem(name, n, order) for name, order in pairs)


_STEMS = {
    0: StemGroup(0, (0,), _gens(0, ("1", 0)), STANDARD_TABLE),
    1: StemGroup(1, (2,), _gens(1, ("η", 2)), STANDARD_TABLE),
    2: StemGroup(2, (2,), _gens(2, ("η²", 2)), STANDARD_TABLE),
    3: StemGroup(3, (8,), _gens(3, ("ν", 8)), "cell-diagram relation: difference is 4ν = η³",
                 notes=("4ν = η³", "8ν = 0")),
    4: StemGroup(4, (), (), "π_4 = π_5 = 0"),
    5: StemGroup(5, (), (), "π_4 = π_5 = 0"),
    6: StemGroup(6, (2,), _gens(6, ("ν²", 2)), STANDARD_TABLE),
    7: StemGroup(7, (16,), _gens(7, ("σ", 16)), STANDARD_TABLE),
    8: StemGroup(8, (2, 2), _gens(8, ("ησ", 2), ("ε", 2)), "2·π_8 = 0"),
    9: StemGroup(9, (2, 2, 2), _gens(9, ("ν³", 2), ("ηε", 2), ("{Ph₁}", 2)), "2·π_9 = 0"),
    10: StemGroup(10, (2,), _gens(10, ("{Ph₁²}", 2)), "π_10 = Z/2 generated by {Ph₁²}"),
    11: StemGroup(11, (8,), _gens(11, ("{Ph₂}", 8)), STANDARD_TABLE,
                  notes=("4{Ph₂} = {Ph₁³}",)),
    12: StemGroup(12, (), (), "π_12 = π_13 = 0"),
    13: StemGroup(13, (), (), "π_12 = π_13 = 0"),
    14: StemGroup(14, (2, 2), _gens(14, ("σ²", 2), ("κ", 2)), STANDARD_TABLE),
    15: StemGroup(15, (32, 2), _gens(15, ("ρ", 32), ("ηκ", 2)), STANDARD_TABLE),
    16: StemGroup(16, (2, 2), _gens(16, ("η₄", 2), ("ηρ", 2)), "2·π_16 = 0"),
    17: StemGroup(17, (2, 2, 2, 2), _gens(17, ("ηη₄", 2), ("νκ", 2), ("η²ρ", 2), ("{P²h₁}", 2)),
                  STANDARD_TABLE),
    18: StemGroup(18, (8, 2), _gens(18, ("ν₄", 8), ("η{P²h₁}", 2)), STANDARD_TABLE),
    19: StemGroup(19, (8, 2), _gens(19, ("{P²h₂}", 8), ("σ̄", 2)), STANDARD_TABLE),
    20: StemGroup(20, (8,), _gens(20, ("κ̄", 8)), STANDARD_TABLE),
}

_MOORE_STEMS = {
    5: StemGroup(5, (), (), "π_5 C2 = 0"),
    6: StemGroup(6, (2,), (), "π_6 C2 = Z/2"),
    11: StemGroup(11, (2, 2), (), "π_11 C2 = Z/2 ⊕ Z/2"),
}

# generator products landing in a nonzero stem, with the Toda relations that evaluate them
_GENERATOR_PRODUCTS = {
    ("η²", "ησ"): ("0", "η³σ = 4νσ = 0"),
    ("η²", "ε"): ("0", "η²ε = η³σ + ην³ = 0"),
}

ETA = _STEMS[1].generators[0]
NU = _STEMS[3].generators[0]


def stem_group(n):
    """
    Looks up the 2-local stable stem π_n.

    Args:
        n (int): Stem degree, 0 <= n <= 20

    Returns:
        StemGroup: The stored row
    """
    if n not in _STEMS:
        raise ParameterError(f"Stem degree must be between 0 and 20, got {n}")
    return _STEMS[n]


def moore_group(n):
    """The stored homotopy of the mod 2 Moore spectrum C2 in degree n."""
    if n not in _MOORE_STEMS:
        raise ParameterError(f"No stored Moore-spectrum row for degree {n}")
    return _MOORE_STEMS[n]


def nu_multiple(c):
    """
    Returns c·ν in the 2-local π_3 = Z/8.

    Args:
        c (int): Integer multiple

    Returns:
        StemElem: The reduced multiple, with 4ν named η³ and 0 named "0"
    """
    c %= NU.order
    if c == 0:
        return StemElem("0", 3, 1)
    if c == 4:
        return StemElem("η³", 3, 2)
    order = NU.order // gcd(c, NU.order)
    return StemElem("ν" if c == 1 else f"{c}ν", 3, order)


def ph2_multiple_name(c):
    """Name of c·{P^(k-1)h_2} for the four Adams-filtration candidates."""
    names = {
        0: "0",
        1: "{P^{k-1}h_2}",
        2: "2{P^{k-1}h_2}",
        4: "{P^{k-1}h_1^3}",
    }
    if c not in names:
        raise ParameterError(f"No candidate class for multiple {c}")
    return names[c]


def _two_annihilates(n):
    return stem_group(n).exponent in (1, 2)


def _products_vanish(m, n):
    """Whether every product of a generator of π_m with a generator of π_n is zero."""
    if stem_group(m + n).is_trivial:
        return True
    for a in stem_group(m).generators:
        for b in stem_group(n).generators:
            product = _GENERATOR_PRODUCTS.get((a.name, b.name))
            if product is None or product[0] != "0":
                return False
    return True


def _eta_cubed_is_4nu():
    # π_3 is cyclic, so its unique element of order 2 is 4ν; η³ has order 2 and degree 3
    if len(stem_group(3).summands) != 1 or ETA.order != 2 or 3 * ETA.degree != NU.degree:
        return False
    order_two = [c for c in range(1, NU.order) if nu_multiple(c).order == 2]
    return order_two == [NU.order // 2] and "4ν = η³" in stem_group(3).notes


_RELATIONS = {
    "eta_cubed_eq_4nu": (_eta_cubed_is_4nu, "difference is 4ν = η³"),
    "eight_nu_zero": (lambda: nu_multiple(8).name == "0", "8ν = 0 in the 2-local π_3"),
    "two_annihilates_pi8": (lambda: _two_annihilates(8), "2·π_8 = 0"),
    "two_annihilates_pi9": (lambda: _two_annihilates(9), "2·π_9 = 0"),
    "two_annihilates_pi16": (lambda: _two_annihilates(16), "2·π_16 = 0"),
    "pi4_pi5_zero": (lambda: stem_group(4).is_trivial and stem_group(5).is_trivial, "π_4 = π_5 = 0"),
    "pi12_pi13_zero": (
        lambda: stem_group(12).is_trivial and stem_group(13).is_trivial,
        "π_12 = π_13 = 0",
    ),
    "pi10_generated_by_ph1sq": (
        lambda: stem_group(10).summands == (2,) and stem_group(10).generators[0].name == "{Ph₁²}",
        "π_10 = Z/2 generated by {Ph₁²}",
    ),
    "pi2_times_pi8_zero": (lambda: _products_vanish(2, 8), "π_8 · π_2 = 0"),
    "pi2_times_eta_sq_zero": (lambda: _products_vanish(2, 2), "π_2 · η² = 0"),
    "four_ph2_eq_ph1cubed": (
        lambda: stem_group(11).summands == (8,) and "4{Ph₂} = {Ph₁³}" in stem_group(11).notes
        and ph2_multiple_name(4) == "{P^{k-1}h_1^3}",
        "4{P^{k-1}h_2} = {P^{k-1}h_1^3}",
    ),
    "pi5_moore_zero": (lambda: moore_group(5).is_trivial, "π_5 C2 = 0"),
    "pi6_moore_z2": (lambda: moore_group(6).summands == (2,), "π_6 C2 = Z/2"),
    "pi11_moore_rank2": (lambda: moore_group(11).summands == (2, 2), "π_11 C2 = Z/2 ⊕ Z/2"),
}


def relation_names():
    return sorted(_RELATIONS)


def relation_citation(name):
    if name not in _RELATIONS:
        raise ParameterError(f"Unknown relation: {name}")
    return _RELATIONS[name][1]


def relation_check(name):
    """
    Evaluates a stored relation against the stem table.

    Args:
        name (str): Relation identifier, see relation_names()

    Returns:
        bool: Whether the relation holds on the stored data
    """
    if name not in _RELATIONS:
        raise ParameterError(f"Unknown relation: {name}")
    check, _ = _RELATIONS[name]
    return bool(check())


def table_is_consistent():
    """Every generator's order divides the exponent of its group."""
    for group in list(_STEMS.values()):
        for gen in group.generators:
            if gen.order == 0:
                if 0 not in group.summands:
                    return False
            elif group.exponent is None or group.exponent % gen.order:
                return False
    return True
