"""Coefficient rings and the graded polynomial ring H*(BT; R) = R[t_1, ..., t_n].

Elements of every supported ring are carried as Python ints (or Fractions
over Q).  Over Z[1/S] all lattices are Z-lattices and the localization is
applied when a module structure is read off (see `localize_factors`); this
is sound because localization is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

RATIONALS = "Q"
PRIME_FIELD = "Fp"
INTEGERS = "Z"
LOCALIZED = "Z[1/S]"


class InvalidPrime(ValueError):
    pass


class InvalidLocalizationSet(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(m: int) -> List[int]:
    m = abs(m)
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


@dataclass(frozen=True)
class CoefficientRing:
    kind: str
    p: int = 0
    inverted: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == PRIME_FIELD and not is_prime(self.p):
            raise InvalidPrime(f"{self.p} is not prime")
        if self.kind == LOCALIZED:
            for q in self.inverted:
                if not is_prime(q):
                    raise InvalidLocalizationSet(f"{q} is not prime")

    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS, PRIME_FIELD)

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == PRIME_FIELD else 0

    def base_dimension(self) -> int:
        return base_dimension(self)

    def is_invertible(self, p: int) -> bool:
        return is_invertible(self, p)

    def is_unit(self, a: int) -> bool:
        """Whether the integer `a` is a unit of R."""
        if a == 0:
            return False
        return all(self.is_invertible(q) for q in prime_factors(a))

    def localize_factors(self, factors) -> Tuple[int, ...]:
        """Strip invertible primes from invariant factors of a Z-module."""
        if self.is_field:
            return ()
        out = []
        for d in factors:
            d = abs(d)
            for q in self.inverted:
                while d % q == 0:
                    d //= q
            if d > 1:
                out.append(d)
        return tuple(out)

    def reduce(self, a):
        """Canonical representative of an integer/fraction in R."""
        if self.kind == PRIME_FIELD:
            if isinstance(a, Fraction):
                return a.numerator * pow(a.denominator, -1, self.p) % self.p
            return a % self.p
        if isinstance(a, Fraction) and a.denominator == 1:
            return a.numerator
        return a

    def lift(self, a) -> int:
        """Integer lift (symmetric representative for F_p)."""
        if self.kind == PRIME_FIELD:
            a %= self.p
            return a - self.p if a > self.p // 2 else a
        return int(a)

    def __str__(self) -> str:
        if self.kind == PRIME_FIELD:
            return f"Fp:{self.p}"
        if self.kind == LOCALIZED:
            return "Z[" + ",".join(f"1/{q}" for q in self.inverted) + "]"
        return self.kind


QQ = CoefficientRing(RATIONALS)
ZZ = CoefficientRing(INTEGERS)


def GF(p: int) -> CoefficientRing:
    return CoefficientRing(PRIME_FIELD, p=p)


_LOCALIZED_RE = re.compile(r"^Z\[(.*)\]$")


def make_ring(descriptor: str) -> CoefficientRing:
    """Parse "Q", "Z", "Fp:<p>" or "Z[1/p1,1/p2,...]"."""
    s = descriptor.strip().replace(" ", "")
    if s == "Q":
        return QQ
    if s == "Z":
        return ZZ
    if s.startswith("Fp:") or s.startswith("F"):
        body = s[3:] if s.startswith("Fp:") else s[1:]
        try:
            p = int(body)
        except ValueError:
            raise InvalidPrime(f"cannot parse prime in {descriptor!r}") from None
        return GF(p)
    m = _LOCALIZED_RE.match(s)
    if m:
        primes = []
        for part in m.group(1).split(","):
            if not part.startswith("1/"):
                raise InvalidLocalizationSet(f"bad localization entry {part!r}")
            try:
                q = int(part[2:])
            except ValueError:
                raise InvalidLocalizationSet(f"bad localization entry {part!r}") from None
            if not is_prime(q):
                raise InvalidLocalizationSet(
                    f"{q} is not prime; invert prime factors separately"
                )
            primes.append(q)
        if not primes:
            raise InvalidLocalizationSet("empty localization set")
        return CoefficientRing(LOCALIZED, inverted=tuple(sorted(set(primes))))
    raise ValueError(f"unknown ring descriptor {descriptor!r}")


def base_dimension(R: CoefficientRing) -> int:
    """Krull dimension d of R itself: 0 for fields, 1 for subrings of Q other than Q."""
    return 0 if R.is_field else 1


def is_invertible(R: CoefficientRing, p: int) -> bool:
    if not is_prime(p):
        raise InvalidPrime(f"{p} is not prime")
    if R.kind == RATIONALS:
        return True
    if R.kind == PRIME_FIELD:
        return p != R.p
    if R.kind == INTEGERS:
        return False
    return p in R.inverted


@dataclass(frozen=True)
class FinitelyGeneratedRModule:
    """R^free_rank plus torsion summands R/(d) for each invariant factor d."""

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __add__(self, other: "FinitelyGeneratedRModule") -> "FinitelyGeneratedRModule":
        return FinitelyGeneratedRModule(
            self.free_rank + other.free_rank,
            _invariant_factors(self.torsion + other.torsion),
        )

    def describe(self, ring: CoefficientRing | None = None) -> str:
        base = "R" if ring is None else str(ring)
        if ring is not None and ring.is_field and ring.characteristic:
            base = f"F{ring.characteristic}"
        parts = []
        if self.free_rank:
            parts.append(base if self.free_rank == 1 else f"{base}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


def _invariant_factors(elementary) -> Tuple[int, ...]:
    """Regroup a list of cyclic orders into a divisor chain."""
    powers: Dict[int, List[int]] = {}
    for d in elementary:
        for q in prime_factors(d):
            e = 1
            while d % (q ** (e + 1)) == 0:
                e += 1
            powers.setdefault(q, []).append(q ** e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    chain = [1] * length
    for q, v in powers.items():
        v.sort(reverse=True)
        for idx, pe in enumerate(v):
            chain[length - 1 - idx] *= pe
    return tuple(c for c in chain if c > 1)


Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class PolynomialRingContext:
    """A = R[t_1..t_n] with every t_j in degree 2."""

    n: int
    ring: CoefficientRing = field(default=ZZ)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("torus rank must be nonnegative")

    def monomials(self, j: int) -> Tuple[Monomial, ...]:
        """Monomial basis of A_j, lexicographically descending."""
        if j < 0 or j % 2:
            return ()
        return _monomials(self.n, j // 2)

    def monomial_index(self, j: int) -> Dict[Monomial, int]:
        return _monomial_index(self.n, j // 2) if j >= 0 and j % 2 == 0 else {}

    def with_ring(self, ring: CoefficientRing) -> "PolynomialRingContext":
        return PolynomialRingContext(self.n, ring)


@lru_cache(maxsize=None)
def _monomials(n: int, k: int) -> Tuple[Monomial, ...]:
    return tuple(_compositions(n, k))


@lru_cache(maxsize=None)
def _monomial_index(n: int, k: int) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(_monomials(n, k))}


def _compositions(n: int, k: int) -> Iterator[Monomial]:
    if n == 0:
        if k == 0:
            yield ()
        return
    for a in range(k, -1, -1):
        for rest in _compositions(n - 1, k - a):
            yield (a,) + rest
