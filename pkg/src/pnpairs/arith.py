"""Arbitrary-precision multiplicative number theory.

Factorization with a deterministic budgeted pipeline (trial division,
Miller-Rabin, Pollard rho with Brent cycling), the multiplicative
functions omega / W / phi / mu / theta built on top of it, p-free parts,
and largest coprime divisors.  A plain-text factor cache lets published
factorizations be pasted in and reused.
"""

from __future__ import annotations

import hashlib
import math
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

from .errors import IncompleteFactorization, NotDividing

DEFAULT_RHO_BUDGET = 10**7

# Deterministic Miller-Rabin witness set, valid below this bound.
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_RANDOM_ROUNDS = 64
_MR_RANDOM_SEED = 0x6E70_7072  # fixed, so repeated runs agree

_TRIAL_LIMIT = 10_000


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(limit + 1) if sieve[i]]


_SMALL_PRIMES = _small_primes(_TRIAL_LIMIT)


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test: deterministic below 3.3e24, 64 fixed-seed rounds above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _MR_DETERMINISTIC_BOUND:
        return _miller_rabin(n, _MR_WITNESSES)
    rnd = random.Random(_MR_RANDOM_SEED)
    bases = [rnd.randrange(2, n - 1) for _ in range(_MR_RANDOM_ROUNDS)]
    return _miller_rabin(n, bases)


def is_probable_only(n: int) -> bool:
    """True when is_prime(n) relied on the randomized rounds rather than the proven witness set."""
    return n >= _MR_DETERMINISTIC_BOUND


class MultiplicativeValues(NamedTuple):
    omega: int
    W: int
    phi: int
    mu: int
    radical: int
    theta: Fraction


@dataclass(frozen=True)
class Factorization:
    """Prime-exponent table for a positive integer.

    ``factors`` holds certified primes in strictly increasing order.  A
    composite part that resisted the budget is kept in ``cofactor`` (the
    distinguished pseudo-factor); ``complete`` is true iff it is 1.
    ``tested_below``: the cofactor has no prime factor below this bound.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    tested_below: int = 2
    probable: tuple[int, ...] = ()

    def __post_init__(self):
        prod = self.cofactor
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValueError("factor bases must be strictly increasing")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factorization of {self.value} does not reassemble (got {prod})")

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def _require_complete(self):
        if not self.complete:
            raise IncompleteFactorization(
                f"{self.value} has unfactored cofactor {self.cofactor}"
            )

    @property
    def omega(self) -> int:
        self._require_complete()
        return len(self.factors)

    @property
    def omega_lower(self) -> int:
        return len(self.factors) + (1 if self.cofactor > 1 else 0)

    @property
    def omega_upper(self) -> int:
        """Upper bound on omega, sound even when incomplete."""
        if self.complete:
            return len(self.factors)
        extra = int(math.log(self.cofactor) / math.log(max(self.tested_below, 2)))
        return len(self.factors) + max(extra, 1)

    @property
    def W(self) -> int:
        return 2**self.omega

    def multiplicative(self) -> MultiplicativeValues:
        self._require_complete()
        phi = 1
        rad = 1
        mu = 1
        for p, e in self.factors:
            phi *= (p - 1) * p ** (e - 1)
            rad *= p
            mu = 0 if e > 1 else -mu
        theta = Fraction(phi, self.value) if self.value > 0 else Fraction(0)
        return MultiplicativeValues(len(self.factors), 2 ** len(self.factors), phi, mu, rad, theta)

    def primes(self) -> tuple[int, ...]:
        self._require_complete()
        return tuple(p for p, _ in self.factors)

    def divisors(self) -> Iterator[int]:
        self._require_complete()
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return iter(sorted(divs))

    def squarefree_divisors(self) -> Iterator[int]:
        """All products of subsets of the distinct primes, ascending."""
        self._require_complete()
        divs = [1]
        for p, _ in self.factors:
            divs += [d * p for d in divs]
        return iter(sorted(divs))

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def line(self) -> str:
        """Cache-file line: ``N=p1^e1*p2^e2*...``."""
        self._require_complete()
        if not self.factors:
            return f"{self.value}=1"
        body = "*".join(f"{p}^{e}" for p, e in self.factors)
        return f"{self.value}={body}"

    @staticmethod
    def from_pairs(value: int, pairs, **kw) -> "Factorization":
        return Factorization(value, tuple(sorted(pairs)), **kw)


def multiplicative_functions(f: Factorization) -> MultiplicativeValues:
    """omega, W = 2^omega, Euler phi, Mobius mu, radical, and theta = phi/value."""
    return f.multiplicative()


class FactorCache:
    """Persistent map n -> complete factorization, one ``N=p^e*...`` line per entry.

    Mutation is serialized through a lock (single-writer contract); reads of
    the underlying dict are safe from any thread after load.
    """

    def __init__(self):
        self._entries: dict[int, tuple[tuple[int, int], ...]] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, n: int) -> Optional[Factorization]:
        pairs = self._entries.get(n)
        if pairs is None:
            return None
        probable = tuple(p for p, _ in pairs if is_probable_only(p))
        return Factorization(n, pairs, probable=probable)

    def put(self, f: Factorization) -> None:
        if not f.complete:
            return
        with self._lock:
            self._entries[f.value] = f.factors

    @classmethod
    def load(cls, path, validate: bool = True) -> "FactorCache":
        cache = cls()
        with open(path, "r", encoding="ascii") as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                n_str, _, body = line.partition("=")
                n = int(n_str)
                pairs = []
                if body not in ("", "1"):
                    for term in body.split("*"):
                        base, _, exp = term.partition("^")
                        pairs.append((int(base), int(exp) if exp else 1))
                f = Factorization.from_pairs(n, pairs)  # raises if product mismatches
                if validate:
                    for p, _ in f.factors:
                        if not is_prime(p):
                            raise ValueError(f"cache entry {n}: {p} is not prime")
                cache._entries[n] = f.factors
        return cache

    def save(self, path) -> None:
        with self._lock:
            lines = [self.get(n).line() for n in sorted(self._entries)]
        with open(path, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))

    def digest(self) -> str:
        blob = "\n".join(self.get(n).line() for n in sorted(self._entries))
        return hashlib.sha256(blob.encode("ascii")).hexdigest()


def _pollard_rho_brent(n: int, budget: int, c0: int = 1) -> tuple[Optional[int], int]:
    """One factor of composite odd n, or None.  Returns (factor, iterations_used)."""
    used = 0
    c = c0
    while used < budget:
        x = 2
        y = 2
        d = 1
        power = 1
        lam = 0
        q = 1
        xs = x
        while d == 1 and used < budget:
            if power == lam:
                xs = x
                power *= 2
                lam = 0
            # batch 128 steps before taking a gcd
            batch = min(128, power - lam, budget - used)
            for _ in range(batch):
                x = (x * x + c) % n
                q = q * abs(x - xs) % n
            lam += batch
            used += batch
            d = math.gcd(q, n)
        if d != 1 and d != n:
            return d, used
        if d == n:
            # backtrack step by step
            x = xs
            d = 1
            while d == 1:
                x = (x * x + c) % n
                d = math.gcd(abs(x - xs), n)
            if d != n:
                return d, used
        c += 1  # deterministic restart with the next polynomial
    return None, used


def factor(
    n: int,
    budget: int = DEFAULT_RHO_BUDGET,
    cache: Optional[FactorCache] = None,
) -> Factorization:
    """Factor n >= 1.  Budget exhaustion leaves a composite cofactor (complete=False)."""
    if n < 1:
        raise ValueError("factor() expects n >= 1")
    if n == 1:
        return Factorization(1, ())
    if cache is not None:
        hit = cache.get(n)
        if hit is not None:
            return hit
    pairs: dict[int, int] = {}
    m = n
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            pairs[p] = pairs.get(p, 0) + 1
            m //= p
    cofactor = 1
    probable = []
    budget_left = budget
    stack = [m] if m > 1 else []
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if is_prime(c):
            pairs[c] = pairs.get(c, 0) + 1
            if is_probable_only(c):
                probable.append(c)
            continue
        if cache is not None:
            hit = cache.get(c)
            if hit is not None:
                for p, e in hit.factors:
                    pairs[p] = pairs.get(p, 0) + e
                    if is_probable_only(p):
                        probable.append(p)
                continue
        d, used = _pollard_rho_brent(c, budget_left)
        budget_left -= used
        if d is None:
            cofactor *= c
            continue
        stack.append(d)
        stack.append(c // d)
    result = Factorization(
        n,
        tuple(sorted(pairs.items())),
        cofactor=cofactor,
        tested_below=_TRIAL_LIMIT,
        probable=tuple(sorted(set(probable))),
    )
    if cache is not None and result.complete and n > 10**12:
        cache.put(result)
    return result


def _cyclotomic_value(d: int, q: int, memo: dict[int, int]) -> int:
    if d in memo:
        return memo[d]
    val = q**d - 1
    for e in range(1, d):
        if d % e == 0:
            val //= _cyclotomic_value(e, q, memo)
    memo[d] = val
    return val


def cyclotomic_value(d: int, q: int) -> int:
    """Phi_d(q), via q^d - 1 = prod over e|d of Phi_e(q)."""
    return _cyclotomic_value(d, q, {})


def factor_qm_minus_1(
    q: int,
    m: int,
    budget: int = DEFAULT_RHO_BUDGET,
    cache: Optional[FactorCache] = None,
) -> Factorization:
    """Factor q^m - 1 one cyclotomic piece Phi_d(q), d | m, at a time."""
    if q < 2 or m < 1:
        raise ValueError("need q >= 2 and m >= 1")
    n = q**m - 1
    if cache is not None:
        hit = cache.get(n)
        if hit is not None:
            return hit
    memo: dict[int, int] = {}
    pairs: dict[int, int] = {}
    cofactor = 1
    probable: set[int] = set()
    tested = _TRIAL_LIMIT
    for d in range(1, m + 1):
        if m % d:
            continue
        piece = factor(_cyclotomic_value(d, q, memo), budget=budget, cache=cache)
        for p, e in piece.factors:
            pairs[p] = pairs.get(p, 0) + e
        probable.update(piece.probable)
        cofactor *= piece.cofactor
        tested = min(tested, piece.tested_below)
    result = Factorization(
        n,
        tuple(sorted(pairs.items())),
        cofactor=cofactor,
        tested_below=tested,
        probable=tuple(sorted(probable)),
    )
    if cache is not None and result.complete and n > 10**12:
        cache.put(result)
    return result


def p_free_part(r: int, p: int) -> int:
    """r with every factor of the prime p removed."""
    if r < 1:
        raise ValueError("r must be positive")
    while r % p == 0:
        r //= p
    return r


def largest_coprime_divisor(e: Factorization, sigma: int) -> Factorization:
    """Largest divisor of e.value coprime to sigma (drops whole prime powers)."""
    e._require_complete()
    kept = tuple((p, k) for p, k in e.factors if sigma % p != 0)
    value = 1
    for p, k in kept:
        value *= p**k
    return Factorization(value, kept, probable=tuple(p for p in e.probable if sigma % p != 0))


def factor_divisor(d: int, parent: Factorization) -> Factorization:
    """Factorization of a divisor d of parent.value, derived without refactoring."""
    parent._require_complete()
    if parent.value % d:
        raise NotDividing(f"{d} does not divide {parent.value}")
    pairs = []
    rest = d
    for p, _ in parent.factors:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            pairs.append((p, e))
    if rest != 1:
        raise NotDividing(f"{d} has a factor outside its parent's support")
    return Factorization(d, tuple(pairs), probable=tuple(p for p in parent.probable if d % p == 0))


def q_formula_value(q: int, m: int) -> int:
    """(q^m - 1) / ((q-1) * gcd(m, q-1)): the closed-form divisor used alongside
    the coprime definition; the two agree only when the p-adic valuations line up."""
    g = math.gcd(m, q - 1)
    num = q**m - 1
    den = (q - 1) * g
    if num % den:
        raise NotDividing(f"(q-1)*gcd(m,q-1) = {den} does not divide q^m-1")
    return num // den
