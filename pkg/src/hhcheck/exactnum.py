"""Exact arithmetic: finite fields, polynomials, cyclotomic integers, number theory.

Field elements are encoded as integers ``0 <= code < q``.  The base-p digits
of a code are its coordinates over the prime field, so addition is digit-wise
and every field is a GF(p)-vector space with a fixed basis.  Extension fields
are towers: an element ``c_0 + c_1 y + ... `` of ``F[y]/(m(y))`` has code
``sum c_i * |F|**i``, which keeps the base field embedded as the codes below
``|F|``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np
import sympy

FIELD_CAP = 1 << 16


# ---------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    return n >= 2 and bool(sympy.isprime(n))


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    return {int(p): int(e) for p, e in sympy.factorint(n).items()}


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi expects n >= 1")
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, a) with n = p**a, a >= 1, or None."""
    if n < 2:
        return None
    fac = factorize(n)
    if len(fac) != 1:
        return None
    (p, a), = fac.items()
    return p, a


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def lcm(*args: int) -> int:
    out = 1
    for a in args:
        out = out * a // gcd(out, a)
    return out


def mult_order(q: int, p: int) -> int:
    """Least k >= 1 with p | q**k - 1."""
    if q % p == 0:
        raise ValueError(f"{p} divides {q}")
    k, x = 1, q % p
    while x != 1 % p:
        x = x * q % p
        k += 1
    return k


def primitive_prime_divisors(q: int, n: int) -> set[int]:
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    m = q**n - 1
    if m == 1:
        return set()
    return {p for p in factorize(m) if mult_order(q, p) == n}


def _spf_sieve(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for i in range(2, isqrt(limit) + 1):
        if spf[i] == 0:
            block = spf[i * i :: i]
            block[block == 0] = i
            spf[i * i :: i] = block
    idx = np.arange(limit + 1)
    mask = spf == 0
    spf[mask] = idx[mask]
    return spf


def zgm_solutions(bound: int) -> list[tuple[int, int, int, int, str]]:
    """All (p, a, r, b, clause) with p, r prime, a, b >= 1 and p**a = r**b + 1 <= bound.

    clause is "i" (p = 2, b = 1, r Mersenne), "ii" (r = 2, a = 1, p Fermat)
    or "iii" (p**a = 9).
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    spf = _spf_sieve(bound)

    def as_prime_power(n: int) -> tuple[int, int] | None:
        p = int(spf[n])
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        return (p, a) if n == 1 else None

    out = []
    primes = np.nonzero(spf[2:bound] == np.arange(2, bound))[0] + 2
    for r in primes.tolist():
        rb, b = r, 1
        while rb + 1 <= bound:
            pa = as_prime_power(rb + 1)
            if pa is not None:
                p, a = pa
                if p == 2 and b == 1:
                    clause = "i"
                elif r == 2 and a == 1:
                    clause = "ii"
                elif p**a == 9:
                    clause = "iii"
                else:
                    clause = "none"
                out.append((p, a, r, b, clause))
            rb *= r
            b += 1
    out.sort(key=lambda t: (t[0] ** t[1], t))
    return out


def div_congruence(p: int, q: int) -> int:
    """Residue of (q**p - 1)/(q - 1) modulo p**2; it always equals p."""
    if not is_prime(p) or (q - 1) % p:
        raise ValueError("need p prime with p | q-1")
    if p == 2 and (q - 1) % 4:
        raise ValueError("for p = 2 need 4 | q-1")
    res = ((q**p - 1) // (q - 1)) % (p * p)
    if res != p:
        raise ArithmeticError(f"congruence fails for p={p}, q={q}: residue {res}")
    return res


# ---------------------------------------------------------------------------
# finite fields


class FieldDesc:
    """GF(q) as a prime field or a simple extension of a smaller field."""

    def __init__(self, p: int, base: FieldDesc | None, modulus: Sequence[int]):
        self.p = p
        self.base = base
        self.modulus = tuple(int(c) for c in modulus)
        if base is None:
            self.deg = 1
            self.f = 1
        else:
            self.deg = len(self.modulus) - 1
            self.f = self.deg * base.f
        self.q = p**self.f
        self._build_tables()

    # -- construction --------------------------------------------------
    def _raw_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        B = self.base
        Q = B.q
        d = self.deg
        ca = [(a // Q**i) % Q for i in range(d)]
        cb = [(b // Q**i) % Q for i in range(d)]
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        mod = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            t = prod[k]
            if t:
                prod[k] = 0
                for i in range(d):
                    if mod[i]:
                        prod[k - d + i] = B.sub(prod[k - d + i], B.mul(t, mod[i]))
        return sum(c * Q**i for i, c in enumerate(prod[:d]))

    def _build_tables(self) -> None:
        q, p, f = self.q, self.p, self.f
        self.pows = np.array([p**i for i in range(f)], dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self.digits = ((codes[:, None] // self.pows[None, :]) % p).astype(np.int64)
        if p == 2:
            self._add = None
        elif q <= 1024:
            s = (self.digits[:, None, :] + self.digits[None, :, :]) % p
            self._add = (s @ self.pows).tolist()
        else:
            self._add = None
        neg = (((-self.digits) % p) @ self.pows).tolist()
        self._neg = neg
        # primitive element and log tables
        if q == 2:
            exp = [1]
        else:
            exp = None
            for g in range(2, q):
                powers = [1]
                x = g
                while x != 1:
                    powers.append(x)
                    x = self._raw_mul(x, g)
                if len(powers) == q - 1:
                    exp = powers
                    break
            if exp is None:
                raise ArithmeticError("no primitive element found; modulus not irreducible")
        self.gen = exp[1] if q > 2 else 1
        self.exp = exp + exp
        log = [-1] * q
        for i, x in enumerate(exp):
            log[x] = i
        self.log = log
        self.exp_np = np.array(self.exp, dtype=np.int64)
        self.log_np = np.array(log, dtype=np.int64)
        basis = [p**t for t in range(f)]
        mm = np.zeros((q, f, f), dtype=np.int64)
        for t, e in enumerate(basis):
            col = self.vmul(codes, np.full(q, e, dtype=np.int64))
            mm[:, :, t] = self.digits[col]
        self.mulmat = mm

    # -- scalar arithmetic ---------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.f == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return int(((self.digits[a] + self.digits[b]) % self.p) @ self.pows)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        return n // gcd(n, self.log[a])

    def from_int(self, n: int) -> int:
        return n % self.p

    def conj(self, a: int) -> int:
        """The involution x -> x**Q of a quadratic extension of GF(Q)."""
        if self.base is None or self.deg != 2:
            raise ValueError("conj requires a quadratic extension")
        return self.pow(a, self.base.q)

    def in_base(self, a: int) -> bool:
        return self.base is not None and a < self.base.q

    def elements_of_order(self, d: int) -> list[int]:
        if (self.q - 1) % d:
            return []
        step = (self.q - 1) // d
        return [self.exp[step * k] for k in range(d) if gcd(k, d) == 1]

    def root_of_unity(self, d: int) -> int:
        """The element gen**((q-1)/d), a fixed primitive d-th root of unity."""
        if (self.q - 1) % d:
            raise ValueError(f"no primitive {d}-th root of unity in GF({self.q})")
        return self.exp[(self.q - 1) // d]

    # -- vectorized arithmetic on code arrays --------------------------
    def vmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        out = self.exp_np[(self.log_np[A] + self.log_np[B]) % max(self.q - 1, 1)]
        return np.where((A == 0) | (B == 0), 0, out)

    def vadd(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.p == 2:
            return A ^ B
        return ((self.digits[A] + self.digits[B]) % self.p) @ self.pows

    def vneg(self, A: np.ndarray) -> np.ndarray:
        return ((-self.digits[np.asarray(A, dtype=np.int64)]) % self.p) @ self.pows

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self.pows

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        if self.base is None:
            return (ff_make, (self.p, 1))
        return (ff_extend, (self.base, self.deg))


class FieldElem:
    """An element of a FieldDesc with operator syntax."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldDesc, code: int):
        if not 0 <= code < field.q:
            raise ValueError(f"code {code} out of range for GF({field.q})")
        self.field = field
        self.code = int(code)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.field.digits[self.code])

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other.code
        return self.field.from_int(int(other))

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.code))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.code, self._other(other)))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.code, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return other.field is self.field and other.code == self.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.code))

    def order(self) -> int:
        return self.field.order(self.code)

    def __repr__(self) -> str:
        return f"{self.code}@GF({self.field.q})"


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldDesc:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > FIELD_CAP:
        raise ValueError(f"field size {p} exceeds cap {FIELD_CAP}")
    return FieldDesc(p, None, (0, 1))


def _candidate_polys(F: FieldDesc, d: int) -> Iterable[tuple[int, ...]]:
    Q = F.q
    for n in range(Q**d):
        coeffs = [(n // Q**i) % Q for i in range(d)]
        yield tuple(coeffs) + (1,)


@lru_cache(maxsize=None)
def ff_extend(F: FieldDesc, d: int) -> FieldDesc:
    """Degree-d extension of F by the least monic irreducible polynomial."""
    if d < 1:
        raise ValueError("extension degree must be positive")
    if d == 1:
        return F
    if F.q**d > FIELD_CAP:
        raise ValueError(f"field size {F.q ** d} exceeds cap {FIELD_CAP}")
    for cand in _candidate_polys(F, d):
        if cand[0] == 0:
            continue
        if poly_is_irreducible(cand, F):
            return FieldDesc(F.p, F, cand)
    raise ArithmeticError("no irreducible polynomial found")


@lru_cache(maxsize=None)
def ff_make(p: int, f: int) -> FieldDesc:
    """GF(p**f); the modulus is the least monic irreducible of degree f over GF(p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1:
        raise ValueError("f must be positive")
    if p**f > FIELD_CAP:
        raise ValueError(f"field size {p ** f} exceeds cap {FIELD_CAP}")
    return ff_extend(prime_field(p), f)


def field_of_size(q: int) -> FieldDesc:
    pa = prime_power(q)
    if pa is None:
        raise ValueError(f"{q} is not a prime power")
    return ff_make(*pa)


@lru_cache(maxsize=None)
def ff_quadratic(q: int) -> FieldDesc:
    """GF(q**2) built as a quadratic extension of GF(q)."""
    return ff_extend(field_of_size(q), 2)


def prime_modulus(F: FieldDesc) -> tuple[int, ...]:
    """The minimal polynomial over GF(p) of the code-p element, for display."""
    return F.modulus


# ---------------------------------------------------------------------------
# polynomials over a field (tuples of codes, low degree first)


def ptrim(a: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a, b, F: FieldDesc) -> tuple[int, ...]:
    n = max(len(a), len(b))
    out = [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return ptrim(out)


def psub(a, b, F: FieldDesc) -> tuple[int, ...]:
    n = max(len(a), len(b))
    out = [F.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return ptrim(out)


def pscale(a, c: int, F: FieldDesc) -> tuple[int, ...]:
    return ptrim([F.mul(x, c) for x in a])


def pmul(a, b, F: FieldDesc) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(out)


def pdivmod(a, b, F: FieldDesc) -> tuple[tuple[int, ...], tuple[int, ...]]:
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(ptrim(a))
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    if len(r) - 1 < db:
        return (), tuple(r)
    qt = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            t = F.mul(c, inv_lead)
            qt[k - db] = t
            for i in range(db + 1):
                if b[i]:
                    r[k - db + i] = F.sub(r[k - db + i], F.mul(t, b[i]))
    return ptrim(qt), ptrim(r[:db])


def pmod(a, b, F: FieldDesc) -> tuple[int, ...]:
    return pdivmod(a, b, F)[1]


def pmonic(a, F: FieldDesc) -> tuple[int, ...]:
    a = ptrim(a)
    if not a:
        return a
    return pscale(a, F.inv(a[-1]), F)


def pgcd(a, b, F: FieldDesc) -> tuple[int, ...]:
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pmod(a, b, F)
    return pmonic(a, F)


def ppowmod(a, e: int, m, F: FieldDesc) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = pmod(a, m, F)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, F), m, F)
        base = pmod(pmul(base, base, F), m, F)
        e >>= 1
    return pmod(result, m, F)


def peval(a, x: int, F: FieldDesc) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pderiv(a, F: FieldDesc) -> tuple[int, ...]:
    return ptrim([F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def poly_is_irreducible(a, F: FieldDesc) -> bool:
    """Rabin's irreducibility test over F."""
    a = pmonic(a, F)
    n = len(a) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    Q = F.q
    x = (0, 1)
    frob = [x]
    cur = x
    for _ in range(n):
        cur = ppowmod(cur, Q, a, F)
        frob.append(cur)
    if psub(frob[n], x, F):
        return False
    for r in prime_divisors(n):
        h = psub(frob[n // r], x, F)
        if len(pgcd(a, h, F)) != 1:
            return False
    return True


def _squarefree(a, F: FieldDesc) -> list[tuple[tuple[int, ...], int]]:
    """Square-free decomposition of a monic polynomial: list of (factor, multiplicity)."""
    a = pmonic(a, F)
    if len(a) <= 1:
        return []
    out = []
    d = pderiv(a, F)
    if not d:
        # a is a p-th power
        p = F.p
        root_exp = F.q // p
        b = ptrim([F.pow(a[i], root_exp) for i in range(0, len(a), p)])
        return [(f, m * p) for f, m in _squarefree(b, F)]
    c = pgcd(a, d, F)
    w = pdivmod(a, c, F)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, F)
        fac = pdivmod(w, y, F)[0]
        if len(fac) > 1:
            out.append((pmonic(fac, F), i))
        w = y
        c = pdivmod(c, y, F)[0]
        i += 1
    if len(c) > 1:
        p = F.p
        root_exp = F.q // p
        b = ptrim([F.pow(c[j], root_exp) for j in range(0, len(c), p)])
        out.extend((f, m * p) for f, m in _squarefree(b, F))
    return out


def _ddf(a, F: FieldDesc) -> list[tuple[tuple[int, ...], int]]:
    out = []
    x = (0, 1)
    h = x
    f = a
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, F.q, f, F)
        g = pgcd(f, psub(h, x, F), F)
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(f, g, F)[0]
            h = pmod(h, f, F)
    if len(f) > 1:
        out.append((pmonic(f, F), len(f) - 1))
    return out


def _edf(a, d: int, F: FieldDesc, rng: random.Random) -> list[tuple[int, ...]]:
    n = len(a) - 1
    if n == d:
        return [a]
    while True:
        r = ptrim([rng.randrange(F.q) for _ in range(n)])
        if len(r) < 2:
            continue
        if F.p == 2:
            t = r
            acc = r
            for _ in range(F.f * d - 1):
                t = pmod(pmul(t, t, F), a, F)
                acc = padd(acc, t, F)
            g = pgcd(a, acc, F)
        else:
            e = (F.q**d - 1) // 2
            g = pgcd(a, psub(ppowmod(r, e, a, F), (1,), F), F)
        if 1 < len(g) < len(a):
            h = pdivmod(a, g, F)[0]
            return _edf(g, d, F, rng) + _edf(pmonic(h, F), d, F, rng)


def poly_factor(a, F: FieldDesc, seed: int = 0) -> list[tuple[tuple[int, ...], int]]:
    """Monic irreducible factorization over F, sorted; list of (factor, multiplicity)."""
    rng = random.Random(seed)
    out: dict[tuple[int, ...], int] = {}
    for sq, m in _squarefree(a, F):
        for g, d in _ddf(sq, F):
            for fac in _edf(g, d, F, rng):
                fac = pmonic(fac, F)
                out[fac] = out.get(fac, 0) + m
    return sorted(out.items(), key=lambda t: (len(t[0]), t[0][::-1]))


# ---------------------------------------------------------------------------
# integer polynomials


def zp_trim(a: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def zp_mul(a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return zp_trim(out)


def zp_divexact(a, b) -> tuple[int, ...]:
    """Exact division of integer polynomials by a monic divisor."""
    b = zp_trim(b)
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(zp_trim(a))
    db = len(b) - 1
    if len(r) - 1 < db:
        if any(r):
            raise ArithmeticError("division not exact")
        return ()
    qt = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        t = r[k]
        if t:
            qt[k - db] = t
            for i in range(db + 1):
                r[k - db + i] -= t * b[i]
    if any(r[:db]):
        raise ArithmeticError("division not exact")
    return zp_trim(qt)


def zp_eval(a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    num = (-1,) + (0,) * (m - 1) + (1,)
    for d in divisors(m):
        if d < m:
            num = zp_divexact(num, _cyclotomic_coeffs(d))
    return num


class Poly:
    """A polynomial over the integers (field=None) or over a FieldDesc.

    Coefficients are stored low degree first.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence[int], field: FieldDesc | None = None):
        self.coeffs = zp_trim([int(c) for c in coeffs]) if field is None else ptrim([int(c) for c in coeffs])
        self.field = field

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        if self.field is None:
            return zp_eval(self.coeffs, x)
        return peval(self.coeffs, x, self.field)

    def _wrap(self, c) -> Poly:
        return Poly(c, self.field)

    def _coerce(self, other) -> tuple[int, ...]:
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise ValueError("polynomials over different rings")
            return other.coeffs
        if self.field is None:
            return zp_trim((int(other),))
        return ptrim((self.field.from_int(int(other)),))

    def __add__(self, other) -> Poly:
        b = self._coerce(other)
        if self.field is None:
            n = max(len(self.coeffs), len(b))
            a = self.coeffs
            return self._wrap([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])
        return self._wrap(padd(self.coeffs, b, self.field))

    def __sub__(self, other) -> Poly:
        b = self._coerce(other)
        if self.field is None:
            n = max(len(self.coeffs), len(b))
            a = self.coeffs
            return self._wrap([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])
        return self._wrap(psub(self.coeffs, b, self.field))

    def __mul__(self, other) -> Poly:
        b = self._coerce(other)
        if self.field is None:
            return self._wrap(zp_mul(self.coeffs, b))
        return self._wrap(pmul(self.coeffs, b, self.field))

    def __divmod__(self, other) -> tuple[Poly, Poly]:
        b = self._coerce(other)
        if self.field is None:
            q = zp_divexact(self.coeffs, b)
            return self._wrap(q), self._wrap(())
        q, r = pdivmod(self.coeffs, b, self.field)
        return self._wrap(q), self._wrap(r)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field is other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, None if self.field is None else self.field.q))

    def is_irreducible(self) -> bool:
        if self.field is None:
            raise NotImplementedError("irreducibility is only decided over finite fields")
        return poly_is_irreducible(self.coeffs, self.field)

    def factor(self) -> list[tuple[Poly, int]]:
        if self.field is None:
            raise NotImplementedError("factorization is only done over finite fields")
        return [(self._wrap(f), m) for f, m in poly_factor(self.coeffs, self.field)]

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else str(c))
        ring = "Z" if self.field is None else f"GF({self.field.q})"
        return f"Poly({' + '.join(terms) or '0'} over {ring})"


def cyclotomic(m: int) -> Poly:
    """The m-th cyclotomic polynomial over the integers."""
    if m < 1:
        raise ValueError("m must be positive")
    return Poly(_cyclotomic_coeffs(m))


# ---------------------------------------------------------------------------
# cyclotomic integers


@lru_cache(maxsize=None)
def _trace_weights(N: int) -> tuple[Fraction, ...]:
    """Normalized trace Tr(zeta_N^j)/phi(N) = mu(d)/phi(d), d = N/gcd(j, N)."""
    out = []
    for j in range(N):
        d = N // gcd(j, N)
        out.append(Fraction(mobius(d), euler_phi(d)))
    return tuple(out)


class CycInt:
    """An element sum_j c_j zeta_N**j of Z[zeta_N], zeta_N = exp(2 pi i / N)."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs: Sequence[int]):
        if N < 1:
            raise ValueError("conductor must be positive")
        c = [0] * N
        for j, v in enumerate(coeffs):
            if v:
                c[j % N] += int(v)
        self.N = N
        self.coeffs = tuple(c)

    # constructors
    @classmethod
    def from_int(cls, n: int, N: int = 1) -> CycInt:
        return cls(N, [n])

    @classmethod
    def root(cls, N: int, j: int = 1) -> CycInt:
        c = [0] * N
        c[j % N] = 1
        return cls(N, c)

    @classmethod
    def from_mults(cls, mults: Sequence[int]) -> CycInt:
        """The character value sum_j mults[j] * zeta_N**j with N = len(mults)."""
        return cls(len(mults), mults)

    # structure
    def lift(self, M: int) -> CycInt:
        if M % self.N:
            raise ValueError(f"cannot lift conductor {self.N} to {M}")
        s = M // self.N
        c = [0] * M
        for j, v in enumerate(self.coeffs):
            if v:
                c[j * s] = v
        return CycInt(M, c)

    def _common(self, other) -> tuple[CycInt, CycInt]:
        if not isinstance(other, CycInt):
            other = CycInt.from_int(int(other))
        M = lcm(self.N, other.N)
        a = self if self.N == M else self.lift(M)
        b = other if other.N == M else other.lift(M)
        return a, b

    def reduced(self) -> tuple[int, ...]:
        """Coordinates in the power basis 1, z, ..., z**(phi(N)-1) of Z[z]."""
        N = self.N
        phi = _cyclotomic_coeffs(N)
        d = len(phi) - 1
        c = list(self.coeffs)
        for k in range(N - 1, d - 1, -1):
            t = c[k]
            if t:
                c[k] = 0
                for i in range(d):
                    if phi[i]:
                        c[k - d + i] -= t * phi[i]
        return tuple(c[:d])

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def is_integer(self) -> bool:
        r = self.reduced()
        return not any(r[1:])

    def to_int(self) -> int:
        r = self.reduced()
        if any(r[1:]):
            raise ValueError("not a rational integer")
        return r[0] if r else 0

    def exact_div(self, k: int) -> CycInt:
        """Division by a nonzero integer inside Z[zeta_N]; raises if not exact."""
        r = self.reduced()
        if any(x % k for x in r):
            raise ArithmeticError(f"{self} is not divisible by {k}")
        return CycInt(self.N, [x // k for x in r])

    def simplify(self) -> CycInt:
        """Same value, stored in reduced power-basis form."""
        return CycInt(self.N, self.reduced())

    # arithmetic
    def __add__(self, other) -> CycInt:
        a, b = self._common(other)
        return CycInt(a.N, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other) -> CycInt:
        a, b = self._common(other)
        return CycInt(a.N, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other) -> CycInt:
        a, b = self._common(other)
        return CycInt(a.N, [y - x for x, y in zip(a.coeffs, b.coeffs)])

    def __neg__(self) -> CycInt:
        return CycInt(self.N, [-x for x in self.coeffs])

    def __mul__(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt(self.N, [x * other for x in self.coeffs])
        a, b = self._common(other)
        N = a.N
        out = [0] * N
        bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in bnz:
                    out[(i + j) % N] += x * y
        return CycInt(N, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycInt:
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta]")
        out = CycInt.from_int(1, self.N)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def galois(self, t: int) -> CycInt:
        """Apply zeta_N -> zeta_N**t, gcd(t, N) = 1."""
        if gcd(t, self.N) != 1:
            raise ValueError(f"galois_power needs gcd({t}, {self.N}) = 1")
        out = [0] * self.N
        for j, v in enumerate(self.coeffs):
            if v:
                out[(j * t) % self.N] += v
        return CycInt(self.N, out)

    def conj(self) -> CycInt:
        return self.galois(-1)

    # comparison
    def __eq__(self, other) -> bool:
        if isinstance(other, (CycInt, int)):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        w = _trace_weights(self.N)
        return hash(sum((w[j] * v for j, v in enumerate(self.coeffs) if v), Fraction(0)))

    def __complex__(self) -> complex:
        j = np.arange(self.N)
        return complex(np.dot(np.array(self.coeffs, dtype=float), np.exp(2j * np.pi * j / self.N)))

    def __repr__(self) -> str:
        if self.is_integer():
            return f"CycInt({self.to_int()})"
        terms = [f"{v}*z{self.N}^{j}" for j, v in enumerate(self.coeffs) if v]
        return "CycInt(" + " + ".join(terms) + ")"


def cyc_arith(op: str, a: CycInt, b: CycInt | int | None = None) -> CycInt:
    """Dispatch for add, mul, conj and galois_power (b is the exponent t)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "conj":
        return a.conj()
    if op == "galois_power":
        return a.galois(int(b))
    raise ValueError(f"unknown operation {op!r}")
