"""The field tower F_p < F_q = F_{p^k} < F_{q^m}.

Prime fields hold plain ints; extension fields hold fixed-length tuples of
subfield elements.  Moduli are the monic irreducibles of the required degree
with the smallest base-p integer encoding, so towers are reproducible.  The
constant coefficient is always the least-significant digit of the integer
encoding of an element.
"""

from __future__ import annotations

from typing import Iterator, Optional, Union

from . import _expr, _polycore as pc
from .arith import Factorization, FactorCache, factor_qm_minus_1, is_prime
from .errors import (
    DegreeZero,
    DivisionByZero,
    IncompleteFactorization,
    IndexOutOfRange,
    NotPrime,
    TowerTooLarge,
)

ENUMERATION_CAP = 2**31


class PrimeField:
    """F_p with elements 0..p-1."""

    __slots__ = ("p", "char", "order", "zero", "one")

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow_(self, a, n: int):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def encode(self, a) -> int:
        return a % self.p

    def decode(self, i: int):
        if not 0 <= i < self.p:
            raise IndexOutOfRange(f"index {i} outside F_{self.p}")
        return i

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def from_int(self, n: int):
        return n % self.p

    def text(self, a, sym: str = "u") -> str:
        return str(a)

    def __repr__(self):
        return f"F_{self.p}"


class ExtField:
    """Degree-d extension of a subfield by a monic irreducible modulus."""

    __slots__ = ("subfield", "deg", "modulus", "char", "order", "zero", "one", "_red")

    def __init__(self, sub, modulus):
        self.subfield = sub
        self.deg = len(modulus) - 1
        if self.deg < 1:
            raise DegreeZero("extension degree must be >= 1")
        if modulus[-1] != sub.one:
            raise ValueError("modulus must be monic")
        self.modulus = tuple(modulus)
        self.char = sub.char
        self.order = sub.order**self.deg
        self.zero = (sub.zero,) * self.deg
        self.one = tuple([sub.one] + [sub.zero] * (self.deg - 1))
        # x^(deg+j) mod modulus, as fixed-length rows, for reduction
        red = []
        cur = [sub.neg(c) for c in modulus[:-1]]  # x^deg mod modulus
        for _ in range(self.deg - 1):
            red.append(tuple(cur))
            cur = [sub.zero] + cur
            lead = cur[self.deg]
            cur = cur[: self.deg]
            if lead != sub.zero:
                cur = [sub.sub(c, sub.mul(lead, m)) for c, m in zip(cur, modulus[: self.deg])]
        red.append(tuple(cur))
        self._red = tuple(red)

    def add(self, a, b):
        s = self.subfield
        return tuple(s.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        s = self.subfield
        return tuple(s.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        s = self.subfield
        return tuple(s.neg(x) for x in a)

    def mul(self, a, b):
        s = self.subfield
        d = self.deg
        conv = [s.zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == s.zero:
                continue
            for j, y in enumerate(b):
                if y != s.zero:
                    conv[i + j] = s.add(conv[i + j], s.mul(x, y))
        out = conv[:d]
        for j in range(d - 2, -1, -1):
            c = conv[d + j]
            if c != s.zero:
                row = self._red[j]
                out = [s.add(o, s.mul(c, r)) for o, r in zip(out, row)]
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise DivisionByZero("inverse of zero")
        inv_list = pc.invmod(self.subfield, pc.trim(self.subfield, list(a)), list(self.modulus))
        return tuple(inv_list + [self.subfield.zero] * (self.deg - len(inv_list)))

    def pow_(self, a, n: int):
        if n < 0:
            a = self.inv(a)
            n = -n
        out = self.one
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def scalar_mul(self, c, a):
        """c in the subfield times a."""
        s = self.subfield
        return tuple(s.mul(c, x) for x in a)

    def embed(self, c):
        return tuple([c] + [self.subfield.zero] * (self.deg - 1))

    def is_in_subfield(self, a) -> bool:
        return all(x == self.subfield.zero for x in a[1:])

    def project(self, a):
        if not self.is_in_subfield(a):
            raise ValueError("element does not lie in the subfield")
        return a[0]

    def encode(self, a) -> int:
        s = self.subfield
        out = 0
        for x in reversed(a):
            out = out * s.order + s.encode(x)
        return out

    def decode(self, i: int):
        if not 0 <= i < self.order:
            raise IndexOutOfRange(f"index {i} outside field of order {self.order}")
        s = self.subfield
        digits = []
        for _ in range(self.deg):
            i, r = divmod(i, s.order)
            digits.append(s.decode(r))
        return tuple(digits)

    def elements(self) -> Iterator[tuple]:
        return (self.decode(i) for i in range(self.order))

    def from_int(self, n: int):
        return self.embed(self.subfield.from_int(n)) if n else self.zero

    def text(self, a, sym: str = "t", subsym: str = "u") -> str:
        s = self.subfield
        terms = []
        for i in range(self.deg - 1, -1, -1):
            c = a[i]
            if c == s.zero:
                continue
            cs = s.text(c, subsym)
            needs_parens = ("+" in cs or "-" in cs) and i > 0
            if needs_parens:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                xs = sym if i == 1 else f"{sym}^{i}"
                terms.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"F_{self.order}"


def find_irreducible(sub, deg: int) -> tuple:
    """Monic irreducible of given degree over sub with the smallest coefficient encoding."""
    if deg < 1:
        raise DegreeZero("degree must be >= 1")
    for idx in range(sub.order**deg):
        digits = []
        i = idx
        for _ in range(deg):
            i, r = divmod(i, sub.order)
            digits.append(sub.decode(r))
        cand = digits + [sub.one]
        if pc.is_irreducible(sub, cand):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found (impossible)")


class FieldTower:
    """F_p < F_q < F_{q^m} with deterministic moduli.

    Enumeration features (element iteration, index tables) are refused above
    ENUMERATION_CAP elements; plain arithmetic works at any size.
    """

    def __init__(self, p: int, k: int, m: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1 or m < 1:
            raise DegreeZero("extension degrees must be positive")
        self.p = p
        self.k = k
        self.m = m
        self.q = p**k
        self.order = self.q**m
        self.base = PrimeField(p)
        self.base_modulus = find_irreducible(self.base, k)
        if k == 1:
            self.mid = self.base
        else:
            self.mid = ExtField(self.base, self.base_modulus)
        self.ext_modulus = find_irreducible(self.mid, m)
        self.top = ExtField(self.mid, self.ext_modulus)
        self._fact_qm1: Optional[Factorization] = None

    # -- factorization of q^m - 1 ---------------------------------------

    @property
    def factorization_qm1(self) -> Optional[Factorization]:
        return self._fact_qm1

    def ensure_factorization(
        self, budget: Optional[int] = None, cache: Optional[FactorCache] = None
    ) -> Factorization:
        if self._fact_qm1 is None or (budget is not None and not self._fact_qm1.complete):
            kwargs = {} if budget is None else {"budget": budget}
            self._fact_qm1 = factor_qm_minus_1(self.q, self.m, cache=cache, **kwargs)
        return self._fact_qm1

    # -- element helpers --------------------------------------------------

    @property
    def enumerable(self) -> bool:
        return self.order <= ENUMERATION_CAP

    def require_enumerable(self, cap: int = ENUMERATION_CAP):
        if self.order > cap:
            raise TowerTooLarge(f"tower order {self.order} exceeds cap {cap}")

    def embed_mid(self, c):
        return self.top.embed(c)

    def frobenius_q(self, a):
        return self.top.pow_(a, self.q)

    def trace_to_mid(self, a):
        acc = a
        x = a
        for _ in range(self.m - 1):
            x = self.frobenius_q(x)
            acc = self.top.add(acc, x)
        # the trace is Frobenius-fixed, so it lives in the mid field
        return self.top.project(acc)

    def trace_absolute(self, a) -> int:
        """Trace all the way down to F_p, as an int."""
        t = self.trace_to_mid(a)
        if self.k == 1:
            return t
        acc = t
        x = t
        for _ in range(self.k - 1):
            x = self.mid.pow_(x, self.p)
            acc = self.mid.add(acc, x)
        return self.mid.project(acc) if isinstance(acc, tuple) else acc

    def norm_to_mid(self, a):
        if a == self.top.zero:
            return self.mid.zero
        n = self.top.pow_(a, (self.order - 1) // (self.q - 1))
        return self.top.project(n)

    def is_primitive(self, a) -> bool:
        if a == self.top.zero:
            return False
        fact = self.ensure_factorization()
        if not fact.complete:
            raise IncompleteFactorization("q^m-1 not fully factored")
        n = self.order - 1
        for l in fact.primes():
            if self.top.pow_(a, n // l) == self.top.one:
                return False
        return True

    def element_index(self, a) -> int:
        return self.top.encode(a)

    def index_to_element(self, i: int):
        if not 0 <= i < self.order:
            raise IndexOutOfRange(f"index {i} outside tower of order {self.order}")
        return self.top.decode(i)

    def elements(self) -> Iterator[tuple]:
        self.require_enumerable()
        return self.top.elements()

    # -- text format -------------------------------------------------------

    def format_element(self, a) -> str:
        return self.top.text(a, "t", "u")

    def parse_element(self, spec: Union[int, str, tuple]):
        if isinstance(spec, tuple):
            return spec
        if isinstance(spec, int):
            return self.index_to_element(spec)
        text = spec.strip()
        if text.isdigit():
            return self.index_to_element(int(text))
        symbols = {"t": self.top.decode(self.q)}
        if self.k > 1:
            symbols["u"] = self.embed_mid(self.mid.decode(self.p))
        return _expr.evaluate(
            text,
            symbols,
            add=self.top.add,
            mul=self.top.mul,
            neg=self.top.neg,
            from_int=self.top.from_int,
        )

    def __repr__(self):
        return f"FieldTower(p={self.p}, k={self.k}, m={self.m})"


def build_tower(p: int, k: int, m: int) -> FieldTower:
    """Deterministic tower; repeated calls produce identical moduli."""
    return FieldTower(p, k, m)
