"""Symbolic group descriptions and exact element-order sums.

Groups are symbolic: cyclic, dihedral, the quaternion group of order 8, and
direct products of those. An order spectrum is the map "element order -> count";
it is always computed over the divisor lattice (never element lists), so direct
products combine spectra by lcm-convolution and huge cyclic factors stay cheap.

psi(G) is the sum of element orders. psi_prime(G) = psi(G)/psi(C_|G|) and
psi_double_prime(G) = psi(G)/|G|**2 are exact rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .arith import (
    DomainError,
    Factorization,
    divisor_totient_pairs,
    factor,
)

DEFAULT_SPECTRUM_LIMIT = 10_000_000


class SpectrumLimitError(DomainError):
    """Spectrum support size would exceed the configured desk-scale limit."""


class GroupSpecSyntaxError(DomainError):
    """Group DSL syntax error; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class GroupSpec:
    pass


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"cyclic group order must be positive, got {self.n}")


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    """Dihedral group of the given (even) order 2m, acting on an m-gon.

    Order 6 is the symmetric group on 3 letters; order 4 is the Klein group.
    """

    order2m: int

    def __post_init__(self):
        if self.order2m < 2 or self.order2m % 2:
            raise DomainError(f"dihedral order must be even and >= 2, got {self.order2m}")

    @property
    def m(self) -> int:
        return self.order2m // 2


@dataclass(frozen=True)
class Quaternion8(GroupSpec):
    pass


@dataclass(frozen=True)
class Product(GroupSpec):
    factors: tuple[GroupSpec, ...]


def _sort_key(g: GroupSpec) -> tuple[int, int, int]:
    if isinstance(g, Cyclic):
        return (g.n, 0, g.n)
    if isinstance(g, Dihedral):
        return (g.order2m, 1, g.order2m)
    return (8, 2, 8)


def product(factors) -> GroupSpec:
    """Canonical direct product: flattens nested products, sorts factors."""
    flat: list[GroupSpec] = []
    for g in factors:
        if isinstance(g, Product):
            flat.extend(g.factors)
        else:
            flat.append(g)
    flat = [g for g in flat if not (isinstance(g, Cyclic) and g.n == 1)]
    flat.sort(key=_sort_key)
    if not flat:
        return Cyclic(1)
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def abelian(invariants) -> GroupSpec:
    """Direct product of cyclic groups with the given orders (each >= 2)."""
    invs = list(invariants)
    for k in invs:
        if k < 2:
            raise DomainError(f"abelian invariant factors must be >= 2, got {k}")
    return product(Cyclic(k) for k in invs)


def order(g: GroupSpec) -> int:
    if isinstance(g, Cyclic):
        return g.n
    if isinstance(g, Dihedral):
        return g.order2m
    if isinstance(g, Quaternion8):
        return 8
    r = 1
    for f in g.factors:
        r *= order(f)
    return r


def exponent(g: GroupSpec) -> int:
    if isinstance(g, Cyclic):
        return g.n
    if isinstance(g, Dihedral):
        return lcm(2, g.m)
    if isinstance(g, Quaternion8):
        return 4
    return lcm(*(exponent(f) for f in g.factors))


def is_cyclic(g: GroupSpec) -> bool:
    """Cyclicity by structure: dihedral specs are cyclic only at order 2, the
    quaternion group never is, and a product of cyclic factors is cyclic iff
    the factor orders are pairwise coprime (exponent equals order).
    """
    if isinstance(g, Cyclic):
        return True
    if isinstance(g, Dihedral):
        return g.order2m == 2
    if isinstance(g, Quaternion8):
        return False
    return all(is_cyclic(f) for f in g.factors) and exponent(g) == order(g)


def is_nilpotent(g: GroupSpec) -> bool:
    """Nilpotency for the constructible families: cyclic and the quaternion
    group are nilpotent; a dihedral group is nilpotent iff it is a 2-group;
    direct products are nilpotent iff every factor is.
    """
    if isinstance(g, Cyclic) or isinstance(g, Quaternion8):
        return True
    if isinstance(g, Dihedral):
        return g.order2m & (g.order2m - 1) == 0
    return all(is_nilpotent(f) for f in g.factors)


def is_abelian(g: GroupSpec) -> bool:
    if isinstance(g, Cyclic):
        return True
    if isinstance(g, Dihedral):
        return g.order2m <= 4
    if isinstance(g, Quaternion8):
        return False
    return all(is_abelian(f) for f in g.factors)


# ---------------------------------------------------------------------------
# DSL: atoms C<n>, D<2m>, Q8; binary operator x; optional whitespace.

def parse_group_spec(text: str) -> GroupSpec:
    """Parse the group DSL, e.g. "C2 x C2 x C15" or "Q8 x C3"."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_atom() -> GroupSpec:
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise GroupSpecSyntaxError("expected a group atom", pos)
        c = text[pos]
        if c not in "CDQ":
            raise GroupSpecSyntaxError(f"expected C<n>, D<2m> or Q8, found {c!r}", pos)
        start = pos
        pos += 1
        digits = ""
        while pos < n and text[pos].isdigit():
            digits += text[pos]
            pos += 1
        if not digits:
            raise GroupSpecSyntaxError(f"missing order after {c!r}", pos)
        value = int(digits)
        if c == "C":
            if value < 1:
                raise GroupSpecSyntaxError("C0 is not a group", start)
            return Cyclic(value)
        if c == "D":
            if value < 2 or value % 2:
                raise GroupSpecSyntaxError(f"dihedral order must be even, got D{value}", start)
            return Dihedral(value)
        if value != 8:
            raise GroupSpecSyntaxError(f"only Q8 is available, got Q{value}", start)
        return Quaternion8()

    factors = [parse_atom()]
    while True:
        skip_ws()
        if pos >= n:
            break
        if text[pos] != "x":
            raise GroupSpecSyntaxError(f"expected 'x' or end of input, found {text[pos]!r}", pos)
        pos += 1
        factors.append(parse_atom())
    return product(factors)


def format_group_spec(g: GroupSpec) -> str:
    """Canonical printer; parse_group_spec(format_group_spec(g)) round-trips."""
    def atom(a: GroupSpec) -> str:
        if isinstance(a, Cyclic):
            return f"C{a.n}"
        if isinstance(a, Dihedral):
            return f"D{a.order2m}"
        return "Q8"

    if isinstance(g, Product):
        return " x ".join(atom(f) for f in g.factors)
    return atom(g)


# ---------------------------------------------------------------------------
# Order spectra

@dataclass(frozen=True)
class OrderSpectrum:
    """Multiset of element orders as a divisor-indexed count map."""

    entries: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.entries)

    def order_sum(self) -> int:
        return sum(d * c for d, c in self.entries)


def _convolve(a: dict[int, int], b: dict[int, int], limit: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            d = lcm(d1, d2)
            if d in out:
                out[d] += c1 * c2
            else:
                out[d] = c1 * c2
                if len(out) > limit:
                    raise SpectrumLimitError(
                        f"spectrum support exceeds the limit of {limit} entries"
                    )
    return out


def _spectrum_map(g: GroupSpec, limit: int) -> dict[int, int]:
    if isinstance(g, Cyclic):
        pairs = divisor_totient_pairs(factor(g.n))
        if len(pairs) > limit:
            raise SpectrumLimitError(f"spectrum support exceeds the limit of {limit} entries")
        return {d: ph for d, ph in pairs}
    if isinstance(g, Dihedral):
        spec = _spectrum_map(Cyclic(g.m), limit)
        spec[2] = spec.get(2, 0) + g.m  # the m reflections
        return spec
    if isinstance(g, Quaternion8):
        return {1: 1, 2: 1, 4: 6}
    acc = {1: 1}
    for f in g.factors:
        acc = _convolve(acc, _spectrum_map(f, limit), limit)
    return acc


def order_spectrum(g: GroupSpec, limit: int = DEFAULT_SPECTRUM_LIMIT) -> OrderSpectrum:
    """Exact element-order spectrum. Cyclic groups contribute phi(d) elements
    of order d per divisor d; a dihedral group adds m reflections of order 2;
    products convolve by "order of a tuple = lcm of component orders".
    """
    return OrderSpectrum(tuple(sorted(_spectrum_map(g, limit).items())))


def psi(g: GroupSpec, limit: int = DEFAULT_SPECTRUM_LIMIT) -> int:
    """Sum of the orders of all elements."""
    return order_spectrum(g, limit).order_sum()


def psi_cyclic(f: Factorization | int) -> int:
    """psi of the cyclic group, by the multiplicative closed form
    prod (p**(2a+1) + 1) / (p + 1) over the factorization.
    """
    f = f if isinstance(f, Factorization) else factor(f)
    r = 1
    for p, a in f:
        r *= (p ** (2 * a + 1) + 1) // (p + 1)
    return r


def psi_cyclic_divisor_sum(f: Factorization | int) -> int:
    """psi of the cyclic group as sum of d*phi(d) over divisors; agrees with
    the closed form and serves as its cross-check.
    """
    f = f if isinstance(f, Factorization) else factor(f)
    return sum(d * ph for d, ph in divisor_totient_pairs(f))


def psi_prime(g: GroupSpec, limit: int = DEFAULT_SPECTRUM_LIMIT) -> Fraction:
    """psi(G) / psi(C_|G|), in lowest terms; equals 1 exactly for cyclic specs."""
    return Fraction(psi(g, limit), psi_cyclic(factor(order(g))))


def psi_double_prime(g: GroupSpec, limit: int = DEFAULT_SPECTRUM_LIMIT) -> Fraction:
    """psi(G) / |G|**2, in lowest terms; always in (0, 1]."""
    n = order(g)
    return Fraction(psi(g, limit), n * n)


# ---------------------------------------------------------------------------
# Abelian isomorphism types (for the exhaustion suites)

def _partitions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []

    def rec(remaining: int, maximum: int, acc: list[int]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, maximum), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


def abelian_specs(n: int):
    """All abelian groups of order n, one spec per isomorphism type
    (every multi-partition across the Sylow components).
    """
    if n < 1:
        raise DomainError(f"group order must be positive, got {n}")
    f = factor(n)
    per_prime = []
    for p, a in f:
        per_prime.append([[p**part for part in lam] for lam in _partitions(a)])
    if not per_prime:
        yield Cyclic(1)
        return
    for combo in itertools.product(*per_prime):
        yield abelian(k for block in combo for k in block)
