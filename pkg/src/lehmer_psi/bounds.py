"""The order-sum inequality catalog as executable checks.

Six upper-bound variants for noncyclic groups (coefficients multiplying
psi(C_n)), the extremal families attaining four of them, the structure
classifier driven by psi''(G), the nilpotent lower bound, and the witness
lower bound phi(n)/(2n) for noncyclic nilpotent groups of order 4n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import DomainError, Factorization, euler_phi, factor, is_prime, is_squarefree
from .groups import (
    Cyclic,
    Dihedral,
    GroupSpec,
    Quaternion8,
    format_group_spec,
    is_cyclic,
    is_nilpotent,
    order,
    product,
    psi,
    psi_cyclic,
    psi_double_prime,
)

VARIANTS = ("i", "ii", "iii", "iv", "v", "vi")

# psi''(G) thresholds: exceeding a threshold strictly forces the property.
DENSITY_THRESHOLDS = (
    ("cyclic", Fraction(7, 16)),
    ("abelian", Fraction(27, 64)),
    ("nilpotent", Fraction(13, 36)),
    ("supersolvable", Fraction(31, 144)),
    ("solvable", Fraction(211, 3600)),
)


def upper_coefficient(
    variant: str,
    *,
    q: int | None = None,
    alpha: int | None = None,
    l: int | None = None,
    mode: str = "corrected",
) -> Fraction:
    """Coefficient c with psi(G) <= c * psi(C_n) for the variant's class.

    Variant vi takes mode "corrected" (default, 1/3 + 2l/(3 psi(C_l)), which
    matches the extremal family exactly) or "as-printed" (1/3 + 2l/psi(C_l),
    kept only to pin its failure; it exceeds 1 already at l=3).
    """
    if variant == "i":
        return Fraction(7, 11)
    if variant == "ii":
        if q is None or not is_prime(q):
            raise DomainError(f"variant ii needs a prime q, got {q}")
        return Fraction(((q * q - 1) * q + 1) * (q + 1), q**5 + 1)
    if variant == "iii":
        return Fraction(13, 21)
    if variant == "iv":
        return Fraction(27, 43)
    if variant == "v":
        if alpha is None or alpha < 4:
            raise DomainError(f"variant v needs alpha >= 4, got {alpha}")
        return Fraction(2 ** (2 * alpha + 3) + 7, 7 * (1 + 2 ** (2 * alpha + 1)))
    if variant == "vi":
        if l is None or l < 3 or factor(l).omega != 1:
            raise DomainError(f"variant vi needs a prime power l >= 3, got {l}")
        if mode == "corrected":
            return Fraction(1, 3) + Fraction(2 * l, 3 * psi_cyclic(l))
        if mode == "as-printed":
            return Fraction(1, 3) + Fraction(2 * l, psi_cyclic(l))
        raise DomainError(f"unknown mode {mode!r}")
    raise DomainError(f"unknown variant {variant!r}")


def _min_sylow_part(f: Factorization) -> int:
    return min(p**a for p, a in f)


def equality_family(
    variant: str,
    *,
    m: int | None = None,
    q: int | None = None,
    r: int | None = None,
    l: int | None = None,
) -> GroupSpec:
    """The extremal group attaining the variant's bound with equality."""
    if variant == "i":
        if m is None or m < 1 or m % 2 == 0:
            raise DomainError(f"variant i needs odd m >= 1, got {m}")
        return product([Cyclic(2), Cyclic(2), Cyclic(m)])
    if variant == "ii":
        if q is None or not is_prime(q):
            raise DomainError(f"variant ii needs a prime q, got {q}")
        if r is None or r < 1 or any(r % p == 0 for p in range(2, q + 1) if is_prime(p)):
            raise DomainError(f"variant ii needs r >= 1 with gcd(r, q!) = 1, got r={r}")
        return product([Cyclic(q), Cyclic(q), Cyclic(r)])
    if variant == "iv":
        if m is None or m < 1 or m % 2 == 0:
            raise DomainError(f"variant iv needs odd m >= 1, got {m}")
        return product([Quaternion8(), Cyclic(m)])
    if variant == "vi":
        if m is None or m < 3 or m % 2 == 0:
            raise DomainError(f"variant vi needs odd m >= 3, got {m}")
        if l is None or m % l or gcd(l, m // l) != 1:
            raise DomainError(f"variant vi needs l || m, got l={l}, m={m}")
        fm = factor(m)
        if factor(l).omega != 1 or l != _min_sylow_part(fm):
            raise DomainError(f"l={l} is not the least prime-power component of {m}")
        return product([Dihedral(2 * l), Cyclic(m // l)])
    raise DomainError(f"no equality family for variant {variant!r}")


def classify_by_density(r: Fraction) -> str:
    """Strongest structural property forced by psi''(G) = r, for r in (0, 1].
    Comparisons are exact and strict; below every threshold the answer is
    "none".
    """
    r = Fraction(r)
    if not 0 < r <= 1:
        raise DomainError(f"density must lie in (0, 1], got {r}")
    for name, threshold in DENSITY_THRESHOLDS:
        if r > threshold:
            return name
    return "none"


def nilpotent_lower_bound(f: Factorization | int) -> int:
    """prod p*(p**a - 1) + 1 over the factorization; the floor for psi of a
    nilpotent group, attained exactly when every Sylow subgroup has prime
    exponent.
    """
    f = f if isinstance(f, Factorization) else factor(f)
    if f.value < 2:
        raise DomainError("the nilpotent floor needs n >= 2")
    r = 1
    for p, a in f:
        r *= p * (p**a - 1)
    return r + 1


def witness_lower_bound(f: Factorization | int, mode: str = "as-stated") -> Fraction:
    """Lower bound for psi'' of a noncyclic nilpotent group of order 4n,
    n odd squarefree >= 3.

    The as-stated floor phi(n)/(2n) is the claim the exclusion chains build
    on, but it is an overstatement: psi''(C2 x C2) = 7/16, not >= 1/2, so the
    floor actually holds iff 3 | n (counterexample n=5: 147/400 < 2/5).
    Mode "provable" returns 7*phi(n)/(16n), which does follow from
    psi(C_n) > n*phi(n) and holds unconditionally.
    """
    f = f if isinstance(f, Factorization) else factor(f)
    n = f.value
    if n < 3 or n % 2 == 0:
        raise DomainError(f"witness floor needs odd n >= 3, got {n}")
    if not is_squarefree(f):
        raise DomainError(f"witness floor needs squarefree n, got {n}")
    if mode == "as-stated":
        return Fraction(euler_phi(f), 2 * n)
    if mode == "provable":
        return Fraction(7 * euler_phi(f), 16 * n)
    raise DomainError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    applicable: bool
    lhs: Fraction | int | None
    rhs: Fraction | int | None
    holds: bool | None
    equality: bool | None

    def as_dict(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "applicable": self.applicable,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "holds": self.holds,
            "equality": self.equality,
        }


def _upper_report(bound_id: str, psi_g: int, coeff: Fraction, psi_cn: int) -> BoundReport:
    rhs = coeff * psi_cn
    return BoundReport(bound_id, True, psi_g, rhs, psi_g <= rhs, psi_g == rhs)


def check_bounds(g: GroupSpec) -> list[BoundReport]:
    """Evaluate every applicable catalog bound for the spec; inapplicable
    bounds are still listed with applicable=False so nothing is skipped
    silently.
    """
    n = order(g)
    f = factor(n)
    psi_g = psi(g)
    psi_cn = psi_cyclic(f)
    cyclic = is_cyclic(g)
    v2 = next((a for p, a in f if p == 2), 0)
    m_odd = n >> v2
    reports: list[BoundReport] = []

    reports.append(
        BoundReport("cyclic-maximum", True, psi_g, psi_cn, psi_g <= psi_cn, psi_g == psi_cn)
    )
    reports.append(
        BoundReport("order-square", True, psi_g, n * n, psi_g <= n * n, psi_g == n * n)
    )

    def not_applicable(bound_id: str) -> BoundReport:
        return BoundReport(bound_id, False, None, None, None, None)

    if cyclic or n == 1:
        for v in VARIANTS:
            reports.append(not_applicable(f"upper-{v}"))
    else:
        reports.append(
            _upper_report("upper-i", psi_g, upper_coefficient("i"), psi_cn)
            if v2 == 2
            else not_applicable("upper-i")
        )
        q = f.factors[0][0]
        reports.append(_upper_report("upper-ii", psi_g, upper_coefficient("ii", q=q), psi_cn))
        reports.append(
            _upper_report("upper-iii", psi_g, upper_coefficient("iii"), psi_cn)
            if v2 == 1
            else not_applicable("upper-iii")
        )
        reports.append(
            _upper_report("upper-iv", psi_g, upper_coefficient("iv"), psi_cn)
            if v2 == 3
            else not_applicable("upper-iv")
        )
        reports.append(
            _upper_report("upper-v", psi_g, upper_coefficient("v", alpha=v2), psi_cn)
            if v2 >= 4
            else not_applicable("upper-v")
        )
        if v2 == 1 and m_odd > 1:
            l = _min_sylow_part(factor(m_odd))
            coeff = upper_coefficient("vi", l=l)
            reports.append(_upper_report("upper-vi", psi_g, coeff, psi_cn))
        else:
            reports.append(not_applicable("upper-vi"))

    if n >= 2 and is_nilpotent(g):
        floor = nilpotent_lower_bound(f)
        reports.append(
            BoundReport("nilpotent-floor", True, psi_g, floor, psi_g >= floor, psi_g == floor)
        )
    else:
        reports.append(not_applicable("nilpotent-floor"))

    if (
        v2 == 2
        and m_odd >= 3
        and not cyclic
        and is_nilpotent(g)
        and is_squarefree(factor(m_odd))
    ):
        lhs = psi_double_prime(g)
        f_odd = factor(m_odd)
        rhs = witness_lower_bound(f_odd)
        # the as-stated floor is an overstatement and fails whenever 3 does
        # not divide the odd part; the report says so rather than hiding it
        reports.append(BoundReport("witness-floor", True, lhs, rhs, lhs > rhs, lhs == rhs))
        rhs_p = witness_lower_bound(f_odd, mode="provable")
        reports.append(
            BoundReport("witness-floor-provable", True, lhs, rhs_p, lhs > rhs_p, lhs == rhs_p)
        )
    else:
        reports.append(not_applicable("witness-floor"))
        reports.append(not_applicable("witness-floor-provable"))

    return reports


def describe_group(g: GroupSpec) -> str:
    return format_group_spec(g)
