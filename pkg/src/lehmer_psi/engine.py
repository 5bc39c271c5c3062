"""Exclusion machinery for the multiplier k in k*phi(n) = n - 1.

Any composite solution must be Carmichael, so odd and squarefree. For odd n
there is a noncyclic nilpotent group of order 4n (the witness C2 x C2 x C_n)
whose psi'' is at most 7/16 * (S*(1 - 1/P)/k + 1/P) for a divisor-split chain
(S, P) valid for n's divisibility pattern, and the stated witness floor puts
psi'' above phi(n)/(2n) = (n-1)/(2kn). Whenever the floor meets or exceeds
the chain bound, that k is excluded. Together with the classical congruence
"3 | n forces k = 1 (mod 3)", sweeping k from 2 upward yields the floor
min_k per divisibility profile.

Caveat, surfaced in every trace that leans on a chain: the stated witness
floor is an overstatement (psi'' of the Klein group is 7/16, not >= 1/2) and
actually holds iff 3 | n; the independently provable floor 7*phi(n)/(16n) is
too weak to drive any chain exclusion. The sweep reproduces the stated
results; bounds.witness_lower_bound documents both constants.

Every comparison is an exact rational; the only irrational constant, pi**2,
enters through a hard-coded certified sandwich (width 1e-40, derived ahead of
the build from the central-binomial series for zeta(2) with a geometric tail
bound) and is used solely for the abundancy statements.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import (
    DomainError,
    Factorization,
    euler_phi,
    factor,
    fraction_str,
    is_prime,
    is_squarefree,
    sigma,
)
from .carmichael import CarmichaelCertificate, korselt_check
from .groups import Cyclic, GroupSpec, format_group_spec, product, psi_cyclic

SMALL_PRIMES = (3, 5, 7, 11, 13)
N_FLOOR_BASE = 10**30
N_FLOOR_RAISED = 10**8171
_SWEEP_GUARD = 100_000

# Certified rational sandwich for pi**2: PI2_LOW < pi**2 < PI2_HIGH, width 1e-40.
# Derived before the build from zeta(2) = 3 * sum 1/(n^2 binom(2n,n)) with the
# term ratio < 1/4 giving tail < 4*t_{N+1}, N = 80; endpoints are the decimal
# truncation / rounding-up at 40 digits.
PI2_LOW = Fraction(98696044010893586188344909998761511353136, 10**40)
PI2_HIGH = Fraction(98696044010893586188344909998761511353137, 10**40)


class InconclusiveComparison(DomainError):
    """A comparison fell inside the pi**2 sandwich gap (width 1e-40)."""


def certified_above(x: Fraction, c: int | Fraction) -> bool:
    """Certified truth of x > c/pi**2 using the sandwich."""
    x, c = Fraction(x), Fraction(c)
    if x >= c / PI2_LOW:
        return True
    if x <= c / PI2_HIGH:
        return False
    raise InconclusiveComparison(f"{x} vs {c}/pi^2")


def certified_close(c: int | Fraction, printed: Fraction, tolerance: Fraction) -> bool:
    """Certified |c/pi**2 - printed| < tolerance."""
    c = Fraction(c)
    lo, hi = c / PI2_HIGH, c / PI2_LOW
    return printed - tolerance < lo and hi < printed + tolerance


# ---------------------------------------------------------------------------
# Threshold functions

def exclusion_threshold(q: int, R: int) -> Fraction:
    """7(q - 1 + R) / (16 R q): a noncyclic group of order 4n with psi''
    above this forces k <= R - 1 when q is the smallest prime factor.
    """
    if R < 2:
        raise DomainError(f"ladder parameter R must be >= 2, got {R}")
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise DomainError(f"q must be an odd prime, got {q}")
    return Fraction(7 * (q - 1 + R), 16 * R * q)


def two_power_threshold(alpha: int) -> Fraction:
    """The psi'' exclusion threshold for witness groups of order 2**alpha * n."""
    if alpha < 1:
        raise DomainError(f"alpha must be >= 1, got {alpha}")
    if alpha == 1:
        return Fraction(13, 42)
    if alpha == 2:
        return Fraction(7, 24)
    if alpha == 3:
        return Fraction(9, 32)
    return Fraction(16, 63) + Fraction(1, 9 * 2 ** (2 * alpha - 1))


def chain_upper(split: tuple[int, ...], tail: int, k: int) -> Fraction:
    """Upper bound for psi'' of a witness group of order 4n under the
    hypothesis k*phi(n) = n - 1, splitting the divisors n and n/p for the
    given primes p (each exactly dividing squarefree n) and bounding every
    remaining proper divisor by n/tail:

        7/16 * ( S * (1 - 1/tail) / k  +  1/tail ),   S = 1 + sum 1/(p*(p-1)).
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if tail < 3:
        raise DomainError(f"tail bound must be >= 3, got {tail}")
    s = 1 + sum(Fraction(1, p * (p - 1)) for p in split)
    return Fraction(7, 16) * (s * (1 - Fraction(1, tail)) / k + Fraction(1, tail))


REFINED_CASES = {
    # divisor split, tail bound, and the pinned k=2 threshold
    "q5-no7": ((5,), 11, Fraction(175, 704)),
    "q5-7-no13": ((5, 7), 17, Fraction(1007, 4080)),
}


def refined_threshold(case: str) -> Fraction:
    """The pinned refined k=2 thresholds, recomputed from their chains."""
    if case not in REFINED_CASES:
        raise DomainError(f"unknown refined case {case!r}")
    split, tail, printed = REFINED_CASES[case]
    value = chain_upper(split, tail, 2)
    if value != printed:
        raise AssertionError(f"refined chain for {case} drifted: {value} != {printed}")
    return value


# ---------------------------------------------------------------------------
# Profiles

@dataclass(frozen=True)
class LehmerProfile:
    """Divisibility knowledge about a candidate n: either a concrete odd
    squarefree composite with its factorization, or a symbolic candidate
    known only through which of 3, 5, 7, 11, 13 divide it (plus a floor
    n > n_floor and optionally its smallest prime factor q).
    """

    n: int | None = None
    factorization: Factorization | None = None
    q: int | None = None
    divides: frozenset[int] = frozenset()
    not_divides: frozenset[int] = frozenset()
    n_floor: int = N_FLOOR_BASE

    def describe(self) -> str:
        if self.n is not None:
            return f"n={self.n}"
        parts = []
        if self.q is not None:
            parts.append(f"q={self.q}")
        for p in SMALL_PRIMES:
            if p in self.divides:
                parts.append(f"{p}|n")
            elif p in self.not_divides:
                parts.append(f"{p}!|n")
        return ", ".join(parts) if parts else "generic"


def make_profile(
    q: int | None = None,
    divides=(),
    not_divides=(),
    n_floor: int = N_FLOOR_BASE,
) -> LehmerProfile:
    """Build and normalize a symbolic profile; raises on inconsistency.

    Normalization: a stated q fixes the status of every smaller listed prime;
    a Carmichael multiple of 5 is never a multiple of 11, so 5|n adds 11 to
    the non-divisors (stating both 5|n and 11|n is inconsistent).
    """
    div = set(divides)
    ndiv = set(not_divides)
    for p in div | ndiv:
        if p not in SMALL_PRIMES:
            raise DomainError(f"only {SMALL_PRIMES} may be constrained, got {p}")
    if q is not None:
        if q < 3 or not is_prime(q):
            raise DomainError(f"q must be an odd prime >= 3, got {q}")
        if q <= 13:
            if q in ndiv:
                raise DomainError(f"q={q} contradicts {q} not dividing n")
            div.add(q)
        for p in SMALL_PRIMES:
            if p < q or q > 13:
                if p in div:
                    raise DomainError(f"{p}|n contradicts smallest prime factor q={q}")
                ndiv.add(p)
    if 5 in div:
        if 11 in div:
            raise DomainError("a Carmichael multiple of 5 is never a multiple of 11")
        ndiv.add(11)
    if div & ndiv:
        raise DomainError(f"contradictory constraints on {sorted(div & ndiv)}")
    if q is None and div:
        smallest = min(div)
        if all(p in ndiv for p in SMALL_PRIMES if p < smallest):
            q = smallest
    return LehmerProfile(
        q=q, divides=frozenset(div), not_divides=frozenset(ndiv), n_floor=n_floor
    )


GENERIC_PROFILE = make_profile()


def profile_from_factorization(f: Factorization | int) -> LehmerProfile:
    """Concrete profile for an odd squarefree composite."""
    f = f if isinstance(f, Factorization) else factor(f)
    n = f.value
    if n < 3 or n % 2 == 0:
        raise DomainError(f"profiles need odd n >= 3, got {n}")
    if f.omega < 2:
        raise DomainError(f"{n} is not composite")
    if not is_squarefree(f):
        raise DomainError(f"{n} is not squarefree")
    primes = set(f.primes)
    return LehmerProfile(
        n=n,
        factorization=f,
        q=f.factors[0][0],
        divides=frozenset(p for p in SMALL_PRIMES if p in primes),
        not_divides=frozenset(p for p in SMALL_PRIMES if p not in primes),
    )


# ---------------------------------------------------------------------------
# Worlds: complete divisibility assignments consistent with a profile

@dataclass(frozen=True)
class _World:
    divides: tuple[int, ...]
    q_eval: int            # smallest admissible prime factor
    q_exact: bool          # False: chain evaluated at the worst case q >= q_eval
    split: tuple[int, ...]
    tail: int

    def describe(self) -> str:
        bits = [f"{p}|n" for p in self.divides]
        bits.extend(
            f"{p}!|n" for p in SMALL_PRIMES if p not in self.divides
        )
        qs = f"q={self.q_eval}" if self.q_exact else f"q>={self.q_eval}"
        return f"{qs}; " + ", ".join(bits)


def _world_chain(divides: set[int], non_split_floor: int) -> tuple[tuple[int, ...], int]:
    """Split every known small divisor; bound the remaining proper divisors by
    n/tail where tail is the least factor a remaining divisor can have: either
    a prime not in the split (>= non_split_floor) or a product of two split
    primes. Monotone in q for an empty split, so evaluating at the least
    admissible prime covers the whole symbolic tail.
    """
    split = tuple(sorted(divides))
    candidates = [non_split_floor]
    if len(split) >= 2:
        candidates.append(split[0] * split[1])
    return split, min(candidates)


def enumerate_worlds(profile: LehmerProfile) -> list[_World]:
    if profile.n is not None:
        f = profile.factorization
        split = tuple(sorted(profile.divides))
        non_split = [p for p in f.primes if p not in profile.divides]
        candidates = [p for p in non_split]
        if len(split) >= 2:
            candidates.append(split[0] * split[1])
        if not candidates:
            raise AssertionError("squarefree composite always has a second divisor")
        return [
            _World(split, f.factors[0][0], True, split, min(candidates))
        ]
    worlds = []
    unknown = [p for p in SMALL_PRIMES if p not in profile.divides | profile.not_divides]
    for picks in itertools.product((True, False), repeat=len(unknown)):
        div = set(profile.divides)
        div.update(p for p, take in zip(unknown, picks) if take)
        if 5 in div and 11 in div:
            continue  # impossible for a Carmichael candidate
        if div:
            q_eval, q_exact = min(div), True
        elif profile.q is not None and profile.q > 13:
            q_eval, q_exact = profile.q, True
        else:
            q_eval, q_exact = 17, False
        split, tail = _world_chain(div, 17 if div else q_eval)
        worlds.append(_World(tuple(sorted(div)), q_eval, q_exact, split, tail))
    return worlds


# ---------------------------------------------------------------------------
# Per-k exclusion

@dataclass(frozen=True)
class Justification:
    world: str
    rule: str
    lhs: Fraction
    rhs: Fraction
    excluded: bool

    def as_dict(self) -> dict:
        return {
            "world": self.world,
            "rule": self.rule,
            "lhs": fraction_str(self.lhs),
            "rhs": fraction_str(self.rhs),
            "excluded": self.excluded,
        }


@dataclass(frozen=True)
class ExclusionResult:
    k: int
    excluded: bool
    justifications: tuple[Justification, ...]

    def chain_justification(self) -> Justification | None:
        """The tightest chain-based justification (largest upper bound)."""
        chains = [j for j in self.justifications if j.rule.startswith("order-sum") and j.excluded]
        return max(chains, key=lambda j: j.rhs, default=None)


def _lower_bound(profile: LehmerProfile, k: int) -> Fraction:
    if profile.n is not None:
        n = profile.n
        return Fraction(n - 1, 2 * k * n)
    return Fraction(1, 2 * k) * (1 - Fraction(1, profile.n_floor))


def exclude_k(profile: LehmerProfile, k: int) -> ExclusionResult:
    """Decide whether k*phi(n) = n - 1 is impossible for every candidate
    matching the profile. A world excludes k when the witness lower bound
    (n-1)/(2kn), or (1/(2k))(1 - 1/n_floor) symbolically, meets or exceeds
    the world's divisor-split upper bound at k, or when 3 | n and
    k is not 1 mod 3. The profile excludes k only if every world does.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    justs = []
    all_excluded = True
    for world in enumerate_worlds(profile):
        if 3 in world.divides and k % 3 != 1:
            justs.append(
                Justification(
                    world.describe(),
                    f"k-congruence-3: k={k} is {k % 3} (mod 3), 1 required",
                    Fraction(k % 3),
                    Fraction(1),
                    True,
                )
            )
            continue
        lower = _lower_bound(profile, k)
        upper = chain_upper(world.split, world.tail, k)
        excluded = lower >= upper
        rule = (
            f"order-sum-chain split={list(world.split)} tail={world.tail} k={k}"
            + ("" if world.q_exact else f" (covers all q >= {world.q_eval})")
        )
        justs.append(Justification(world.describe(), rule, lower, upper, excluded))
        if not excluded:
            all_excluded = False
    return ExclusionResult(k, all_excluded, tuple(justs))


@dataclass(frozen=True)
class MinKResult:
    k: int
    exclusions: tuple[ExclusionResult, ...]
    applied_rules: tuple[str, ...]
    n_floor_used: int

    def rule_ids(self) -> list[str]:
        return list(self.applied_rules)


def _sweep(profile: LehmerProfile, n_floor: int) -> tuple[int, list[ExclusionResult]]:
    probe = dataclasses.replace(profile, n_floor=n_floor)
    exclusions = []
    k = 2
    while k < _SWEEP_GUARD:
        res = exclude_k(probe, k)
        if not res.excluded:
            return k, exclusions
        exclusions.append(res)
        k += 1
    raise AssertionError("exclusion sweep failed to terminate")


@lru_cache(maxsize=1)
def universal_k_floor() -> int:
    """The floor provable with no divisibility knowledge at the base n-floor."""
    return _sweep(GENERIC_PROFILE, N_FLOOR_BASE)[0]


def min_k(profile: LehmerProfile) -> MinKResult:
    """Smallest k >= 2 not excluded for the profile, with the rule trace.

    Once the universal floor reaches 3 the divisor bound n > 10**8171 applies
    to every candidate, so symbolic sweeps rerun at the raised floor.
    """
    floor_k, exclusions = _sweep(profile, profile.n_floor)
    rules = []
    n_floor_used = profile.n_floor
    if profile.n is None and profile.n_floor < N_FLOOR_RAISED and universal_k_floor() >= 3:
        raised_k, raised_ex = _sweep(profile, N_FLOOR_RAISED)
        rules.append(
            "n-floor-escalation: universal k >= 3 implies n > 10^8171; swept again"
        )
        if raised_k >= floor_k:
            floor_k, exclusions = raised_k, raised_ex
            n_floor_used = N_FLOOR_RAISED
    chain_used = False
    for res in exclusions:
        kinds = sorted({j.rule.split(":")[0].split(" ")[0] for j in res.justifications if j.excluded})
        rules.append(f"k={res.k} excluded in all {len(res.justifications)} worlds via {', '.join(kinds)}")
        if any(j.excluded and j.rule.startswith("order-sum") for j in res.justifications):
            chain_used = True
    if chain_used:
        rules.append(
            "caveat: chain exclusions assume the stated witness floor phi(n)/(2n); "
            "the independently provable floor is 7*phi(n)/(16n), which does not "
            "support these exclusions (see witness-floor checks)"
        )
    if profile.q is not None and profile.q >= 17:
        ladder = k_ladder(profile.q, mode="strict")
        rules.append(
            f"ladder(strict) at q={profile.q}: k >= {ladder.k_floor} (R={ladder.R})"
        )
        printed = k_ladder(profile.q, mode="as-printed", R=4)
        if printed.k_floor is not None and printed.k_floor != ladder.k_floor:
            rules.append(
                f"ladder(as-printed, R=4) would claim k >= {printed.k_floor}; not applied"
            )
    return MinKResult(floor_k, tuple(exclusions), tuple(rules), n_floor_used)


# ---------------------------------------------------------------------------
# The k ladder for q >= 17

@dataclass(frozen=True)
class LadderResult:
    q: int
    mode: str
    R: int
    condition: Fraction
    k_floor: int | None


def ladder_condition(q: int, R: int, mode: str = "strict") -> Fraction:
    """Condition value whose being < 1 yields k >= R + 1. Strict mode uses the
    7/8 coefficient that actually follows from the witness bounds; as-printed
    mode uses the weaker 1/2 coefficient and is kept only for comparison.
    """
    if mode not in ("strict", "as-printed"):
        raise DomainError(f"unknown ladder mode {mode!r}")
    if R < 2:
        raise DomainError(f"R must be >= 2, got {R}")
    coefficient = Fraction(7, 8) if mode == "strict" else Fraction(1, 2)
    return coefficient * R * (Fraction(q - 1, R * q) + Fraction(1, q))


def k_ladder(q: int, mode: str = "strict", R: int | None = None) -> LadderResult:
    """Largest floor k >= R + 1 derivable for smallest prime factor q >= 17.

    With R given, evaluates that rung only (k_floor None when inconclusive);
    otherwise climbs R = 2, 3, ... while the condition stays below 1.
    """
    if q < 17 or not is_prime(q):
        raise DomainError(f"the ladder needs a prime q >= 17, got {q}")
    if R is not None:
        cond = ladder_condition(q, R, mode)
        return LadderResult(q, mode, R, cond, R + 1 if cond < 1 else None)
    best = None
    r = 2
    while True:
        cond = ladder_condition(q, r, mode)
        if cond >= 1:
            break
        best = LadderResult(q, mode, r, cond, r + 1)
        r += 1
    if best is None:
        raise AssertionError(f"ladder base rung failed for q={q}")
    return best


# ---------------------------------------------------------------------------
# Abundancy

def phi_sigma_ratio(f: Factorization | int) -> Fraction:
    """phi(n) * sigma(n) / n**2, exactly. Lies in (6/pi**2, 1) for n >= 2;
    certify the lower comparison with certified_above(ratio, 6).
    """
    f = f if isinstance(f, Factorization) else factor(f)
    if f.value < 2:
        raise DomainError("need n >= 2")
    return Fraction(euler_phi(f) * sigma(f), f.value ** 2)


def eq_lower_constant(profile: LehmerProfile) -> Fraction:
    """The constant c with phi(n)*sigma(n)/n**2 > c/pi**2 for odd candidates
    matching the profile: 6 with the factor for p=2 removed (giving 8), then
    one factor p**2/(p**2 - 1) per excluded small prime."""
    c = Fraction(8)
    for p in SMALL_PRIMES:
        if p in profile.not_divides:
            c *= Fraction(p * p, p * p - 1)
    return c


def abundancy_bound(profile: LehmerProfile, k_floor: int | None = None) -> Fraction:
    """Coefficient c such that sigma(n)/n > c/pi**2 for any solution matching
    the profile; the generic profile gives 24 and the 3,5,7,11,13-free
    profile gives 715715/18432.
    """
    if k_floor is None:
        k_floor = min_k(profile).k
    return eq_lower_constant(profile) * k_floor


# ---------------------------------------------------------------------------
# Witness construction and the full per-n verdict

def witness_group(f: Factorization | int) -> GroupSpec:
    """The noncyclic nilpotent group C2 x C2 x C_n of order 4n, n odd >= 3."""
    f = f if isinstance(f, Factorization) else factor(f)
    if f.value < 3 or f.value % 2 == 0:
        raise DomainError(f"witness construction needs odd n >= 3, got {f.value}")
    return product([Cyclic(2), Cyclic(2), Cyclic(f.value)])


def witness_double_prime(f: Factorization | int) -> Fraction:
    """psi''(C2 x C2 x C_n) = 7 psi(C_n) / (16 n**2), via the closed form so
    that astronomically large squarefree n with known factorization stay cheap.
    """
    f = f if isinstance(f, Factorization) else factor(f)
    if f.value < 3 or f.value % 2 == 0:
        raise DomainError(f"witness needs odd n >= 3, got {f.value}")
    return Fraction(7 * psi_cyclic(f), 16 * f.value**2)


@dataclass(frozen=True)
class LehmerVerdict:
    n: int
    prime: bool
    factors: tuple[tuple[int, int], ...]
    certificate: CarmichaelCertificate | None
    is_carmichael: bool | None
    phi: int
    phi_divides: bool
    exact_k: int | None
    counterexample: bool
    min_k: int | None
    excluded_k: tuple[ExclusionResult, ...]
    abundancy_coefficient: Fraction | None
    witness: str | None
    applied_rules: tuple[str, ...]
    notes: tuple[str, ...]

    def binding_inequality(self) -> tuple[str, str] | None:
        """lhs/rhs strings of the tightest chain exclusion of the last
        excluded k, for the report schema."""
        for res in reversed(self.excluded_k):
            j = res.chain_justification()
            if j is not None:
                return fraction_str(j.lhs), fraction_str(j.rhs)
        return None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "prime": self.prime,
            "factors": [list(pa) for pa in self.factors],
            "is_carmichael": self.is_carmichael,
            "phi": self.phi,
            "phi_divides": self.phi_divides,
            "exact_k": self.exact_k,
            "counterexample": self.counterexample,
            "min_k": self.min_k,
            "excluded_k": [
                {
                    "k": res.k,
                    "justifications": [j.as_dict() for j in res.justifications],
                }
                for res in self.excluded_k
            ],
            "abundancy_coefficient": (
                None
                if self.abundancy_coefficient is None
                else fraction_str(self.abundancy_coefficient)
            ),
            "witness": self.witness,
            "applied_rules": list(self.applied_rules),
            "notes": list(self.notes),
        }


def lehmer_check(n: int) -> LehmerVerdict:
    """Full analysis of a candidate: divisibility facts, Carmichael status,
    witness group, proven k floor with justifications, abundancy bound.
    """
    if n < 2:
        raise DomainError(f"lehmer_check needs n >= 2, got {n}")
    f = factor(n)
    phi = euler_phi(f)
    if is_prime(n):
        return LehmerVerdict(
            n=n,
            prime=True,
            factors=f.factors,
            certificate=None,
            is_carmichael=None,
            phi=phi,
            phi_divides=True,
            exact_k=1,
            counterexample=False,
            min_k=1,
            excluded_k=(),
            abundancy_coefficient=None,
            witness=None,
            applied_rules=("prime: phi(n) = n - 1 with k = 1",),
            notes=(),
        )
    cert = korselt_check(n)
    phi_divides = (n - 1) % phi == 0
    exact_k = (n - 1) // phi if phi_divides else None
    notes: list[str] = []
    if n % 2 == 0 or not is_squarefree(f):
        notes.append(
            "exclusion machinery applies to odd squarefree candidates only; "
            "any actual counterexample is Carmichael, hence odd and squarefree"
        )
        return LehmerVerdict(
            n=n,
            prime=False,
            factors=f.factors,
            certificate=cert,
            is_carmichael=cert.is_carmichael,
            phi=phi,
            phi_divides=phi_divides,
            exact_k=exact_k,
            counterexample=phi_divides,
            min_k=None,
            excluded_k=(),
            abundancy_coefficient=None,
            witness=None,
            applied_rules=(),
            notes=tuple(notes),
        )
    profile = profile_from_factorization(f)
    result = min_k(profile)
    counterexample = phi_divides
    if counterexample and exact_k is not None and exact_k < result.k:
        raise AssertionError(
            f"n={n}: exact multiplier {exact_k} violates the proven floor {result.k}"
        )
    return LehmerVerdict(
        n=n,
        prime=False,
        factors=f.factors,
        certificate=cert,
        is_carmichael=cert.is_carmichael,
        phi=phi,
        phi_divides=phi_divides,
        exact_k=exact_k,
        counterexample=counterexample,
        min_k=result.k,
        excluded_k=result.exclusions,
        abundancy_coefficient=abundancy_bound(profile, result.k),
        witness=format_group_spec(witness_group(f)),
        applied_rules=result.applied_rules,
        notes=tuple(notes),
    )
