"""Field configuration: exact rationals or an agreeing pair of prime fields.

All invariants computed by this library are ranks of integer matrices. The
default execution computes every rank modulo two distinct 31-bit primes and
accepts a value only when both agree; ``exact`` mode replaces that with
arbitrary-precision rational elimination and is the ground-truth oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

#: Default working primes: the two largest primes below 2**31 - 16.
DEFAULT_PRIMES: tuple[int, int] = (2147483629, 2147483587)

#: Engine kernels require primes below 2**31 so that products of two reduced
#: scalars fit comfortably in signed 64-bit arithmetic.
MAX_PRIME = 2**31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(x: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= x < 2**64."""
    if x < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if x % small == 0:
            return x == small
    d = x - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        v = pow(a, d, x)
        if v in (1, x - 1):
            continue
        for _ in range(s - 1):
            v = v * v % x
            if v == x - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldConfig:
    """Either ``exact`` rationals or a pair of distinct prime fields."""

    mode: str  # "prime-pair" | "exact"
    primes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.mode == "exact":
            if self.primes:
                raise ValueError("exact mode carries no primes")
        elif self.mode == "prime-pair":
            if len(self.primes) != 2 or self.primes[0] == self.primes[1]:
                raise ValueError("prime-pair mode needs two distinct primes")
            for p in self.primes:
                if not is_prime_u64(p):
                    raise ValueError(f"{p} is not prime")
                if p >= MAX_PRIME:
                    raise ValueError(f"prime {p} too large; must be < 2**31")
        else:
            raise ValueError(f"unknown field mode {self.mode!r}")

    @classmethod
    def exact(cls) -> "FieldConfig":
        return cls(mode="exact")

    @classmethod
    def prime_pair(cls, p1: int = DEFAULT_PRIMES[0], p2: int = DEFAULT_PRIMES[1]) -> "FieldConfig":
        return cls(mode="prime-pair", primes=(p1, p2))

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"

    @property
    def keys(self) -> tuple[str, ...]:
        """Stable per-subfield keys used to tag numeric payloads."""
        if self.is_exact:
            return ("exact",)
        return tuple(f"fp:{p}" for p in self.primes)

    def describe(self) -> str:
        if self.is_exact:
            return "exact"
        return ",".join(self.keys)

    def check_degree_bound(self, n: int, d: int) -> None:
        """Primes must exceed 2*d*(n+1) so that degree scalars (Euler factors,
        Hessian entries) never collapse mod p."""
        if not self.is_exact:
            bound = 2 * d * (n + 1)
            for p in self.primes:
                if p <= bound:
                    raise ValueError(
                        f"prime {p} too small for (n={n}, d={d}); need > {bound}"
                    )


def parse_field_flag(text: str) -> FieldConfig:
    """Parse ``--field`` values: ``exact`` or ``fp:<p1>,fp:<p2>``."""
    text = text.strip()
    if text == "exact":
        return FieldConfig.exact()
    parts = [part.strip() for part in text.split(",")]
    primes = []
    for part in parts:
        if not part.startswith("fp:"):
            raise ParseError(f"bad field spec {text!r}; expected 'exact' or 'fp:<p>,fp:<p>'")
        try:
            primes.append(int(part[3:]))
        except ValueError as exc:
            raise ParseError(f"bad prime in field spec {part!r}") from exc
    if len(primes) != 2:
        raise ParseError("prime-field mode needs exactly two primes")
    try:
        return FieldConfig.prime_pair(primes[0], primes[1])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def fraction_mod(x: Fraction, p: int) -> int:
    """Reduce an exact rational into F_p. The denominator must be prime to p."""
    num = x.numerator % p
    den = x.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
    if den == 1:
        return num
    return num * pow(den, -1, p) % p
