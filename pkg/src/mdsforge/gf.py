"""Exact arithmetic in F_p and F_{p^d}, plus univariate polynomials.

Elements of F_{p^d} = F_p[x]/(modulus) are stored as a single integer
``c0 + c1*p + ... + c_{d-1}*p^(d-1)`` (the canonical coefficient vector read
as a base-p number).  The :class:`Field` object works on these integers
directly; :class:`Fe` is the user-facing wrapper with operator overloading.

>>> F = Field(7, 2, [2, 0, 1])        # theta^2 + 2 = 0
>>> t = F.theta
>>> t * t == F(-2)
True
>>> t.inverse() == 3 * t
True
"""

from __future__ import annotations

import random
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CharacteristicMismatchError,
    DuplicateAbscissaError,
    FieldMismatchError,
    NotPrimeError,
    OrderNotDividingError,
    ParseError,
    ReducibleModulusError,
    SizeBoundError,
)

DEFAULT_BOUND = 2**20
_ADD_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as coefficient lists (low to high) ----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod_p(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    lead_inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        f = a[-1] * lead_inv % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        _trim(a)
    return a


def _monic_polys(p: int, e: int) -> Iterator[list[int]]:
    for idx in range(p**e):
        coeffs = []
        for _ in range(e):
            idx, r = divmod(idx, p)
            coeffs.append(r)
        yield coeffs + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(modulus) - 1
    if d <= 1:
        return d == 1
    for e in range(1, d // 2 + 1):
        for g in _monic_polys(p, e):
            if not _poly_mod_p(modulus, g, p):
                return False
    return True


class Field:
    """The finite field F_{p^d} with an explicit monic irreducible modulus.

    With ``d > 1`` and no modulus the smallest irreducible (scanning the
    non-leading coefficients in integer-encoding order) is chosen.  For
    ``d == 1`` the modulus is the sentinel ``x``.
    """

    def __init__(self, p: int, d: int = 1, modulus: Sequence[int] | None = None,
                 *, bound: int = DEFAULT_BOUND):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if d < 1:
            raise ValueError(f"degree must be positive, got {d}")
        if p**d > bound:
            raise SizeBoundError(f"field size {p}^{d} exceeds bound {bound}")
        self.p = p
        self.d = d
        self.q = p**d
        if d == 1:
            if modulus is not None and [c % p for c in modulus] != [0, 1]:
                raise ReducibleModulusError("prime fields use the modulus x")
            self.modulus = (0, 1)
        elif modulus is None:
            self.modulus = self._first_irreducible()
        else:
            mod = [int(c) % p for c in modulus]
            if len(mod) != d + 1 or mod[-1] != 1:
                raise ReducibleModulusError(
                    f"modulus must be monic of degree {d}, got {list(modulus)}")
            if not is_irreducible(mod, p):
                raise ReducibleModulusError(f"{mod} is reducible over F_{p}")
            self.modulus = tuple(mod)
        self._key = (p, d, self.modulus)
        self._powers = [p**i for i in range(d)]

    def _first_irreducible(self) -> tuple[int, ...]:
        for g in _monic_polys(self.p, self.d):
            if is_irreducible(g, self.p):
                return tuple(g)
        raise AssertionError("unreachable: irreducibles exist in every degree")

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.d == 1:
            return f"Field(F_{self.p})"
        return f"Field(F_{self.p}^{self.d}, modulus={list(self.modulus)})"

    @property
    def is_prime_field(self) -> bool:
        return self.d == 1

    @property
    def spec(self) -> str:
        """Text form ``p^d/c0,...,cd``."""
        return f"{self.p}^{self.d}/" + ",".join(map(str, self.modulus))

    @classmethod
    def parse(cls, text: str, *, bound: int = DEFAULT_BOUND) -> "Field":
        """Inverse of :attr:`spec`; also accepts the short forms ``p`` and ``p^d``."""
        text = text.strip()
        try:
            head, _, mod = text.partition("/")
            base, _, deg = head.partition("^")
            p, d = int(base), int(deg) if deg else 1
            modulus = [int(c) for c in mod.split(",")] if mod else None
        except ValueError as exc:
            raise ParseError(f"bad field spec {text!r}") from exc
        return cls(p, d, modulus, bound=bound)

    # -- encoding ------------------------------------------------------------

    def coeffs_of(self, v: int) -> list[int]:
        out = []
        for _ in range(self.d):
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def value_of(self, coeffs: Sequence[int]) -> int:
        reduced = _poly_mod_p(list(coeffs), self.modulus, self.p)
        return sum(c * pw for c, pw in zip(reduced, self._powers))

    # -- integer-level arithmetic -------------------------------------------

    @cached_property
    def _add_table(self) -> list[int] | None:
        if self.d == 1 or self.q > _ADD_TABLE_LIMIT:
            return None
        q = self.q
        return [self._digit_add(a, b) for a in range(q) for b in range(q)]

    def _digit_add(self, a: int, b: int) -> int:
        p, out = self.p, 0
        for pw in self._powers:
            out += ((a // pw + b // pw) % p) * pw
        return out

    def add(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        table = self._add_table
        if table is not None:
            return table[a * self.q + b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.d == 1:
            return -a % self.p
        p, out = self.p, 0
        for pw in self._powers:
            out += (-(a // pw) % p) * pw
        return out

    def sub(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def _slow_mul(self, a: int, b: int) -> int:
        ca, cb = self.coeffs_of(a), self.coeffs_of(b)
        prod = [0] * (2 * self.d - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.value_of(prod)

    def _slow_pow(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._slow_mul(out, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return out

    @cached_property
    def _primitive(self) -> int:
        n = self.q - 1
        factors = prime_factors(n)
        power = (lambda a, e: pow(a, e, self.p)) if self.d == 1 else self._slow_pow
        for g in range(1, self.q):
            if all(power(g, n // r) != 1 for r in factors):
                return g
        raise AssertionError("unreachable: F_q^* is cyclic")

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        g, n = self._primitive, self.q - 1
        exp = [1] * n
        for i in range(1, n):
            exp[i] = self._slow_mul(exp[i - 1], g)
        log = [0] * self.q
        for i, v in enumerate(exp):
            log[v] = i
        return exp, log

    def mul(self, a: int, b: int) -> int:
        if self.d == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.d == 1:
            return pow(a, -1, self.p)
        exp, log = self._tables
        return exp[-log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.d == 1:
            return pow(a, e, self.p)
        exp, log = self._tables
        return exp[log[a] * e % (self.q - 1)]

    def axpy(self, row: Sequence[int], f: int, other: Sequence[int]) -> list[int]:
        """``row - f*other`` entrywise."""
        if self.d == 1:
            p = self.p
            return [(x - f * y) % p for x, y in zip(row, other)]
        sub, mul = self.sub, self.mul
        return [sub(x, mul(f, y)) for x, y in zip(row, other)]

    def scale(self, f: int, row: Sequence[int]) -> list[int]:
        if self.d == 1:
            p = self.p
            return [f * x % p for x in row]
        mul = self.mul
        return [mul(f, x) for x in row]

    def dot(self, a: Sequence[int], b: Sequence[int]) -> int:
        if self.d == 1:
            return sum(x * y for x, y in zip(a, b)) % self.p
        acc = 0
        for x, y in zip(a, b):
            acc = self.add(acc, self.mul(x, y))
        return acc

    # -- vectorised arithmetic on int64 arrays ------------------------------

    @cached_property
    def _np_tables(self) -> tuple[np.ndarray, np.ndarray]:
        exp, log = self._tables
        return np.asarray(exp, dtype=np.int64), np.asarray(log, dtype=np.int64)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.d == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for pw in self._powers:
            out += ((a // pw + b // pw) % self.p) * pw
        return out

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.d == 1:
            return (a * b) % self.p
        exp, log = self._np_tables
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- elements ------------------------------------------------------------

    def __call__(self, x) -> "Fe":
        if isinstance(x, Fe):
            if x.field != self:
                raise FieldMismatchError(f"{x!r} is not an element of {self!r}")
            return x
        if isinstance(x, (int, np.integer)):
            return Fe(self, int(x) % self.p)
        if isinstance(x, str):
            return self.parse_element(x)
        if isinstance(x, (list, tuple)):
            return Fe(self, self.value_of([int(c) for c in x]))
        raise TypeError(f"cannot interpret {x!r} as an element of {self!r}")

    def element(self, value: int) -> "Fe":
        """Wrap an already-encoded integer."""
        if not 0 <= value < self.q:
            raise ValueError(f"encoded value {value} out of range for {self!r}")
        return Fe(self, value)

    @property
    def zero(self) -> "Fe":
        return Fe(self, 0)

    @property
    def one(self) -> "Fe":
        return Fe(self, 1)

    @property
    def theta(self) -> "Fe":
        """Residue class of x (a generator of the field over F_p when d > 1)."""
        return Fe(self, self.value_of([0, 1]))

    def primitive_element(self) -> "Fe":
        """Smallest generator of F_q^* in encoding order."""
        return Fe(self, self._primitive)

    def elements(self) -> Iterator["Fe"]:
        return (Fe(self, v) for v in range(self.q))

    def nonzero_elements(self) -> Iterator["Fe"]:
        return (Fe(self, v) for v in range(1, self.q))

    def random_element(self, rng: random.Random, nonzero: bool = False) -> "Fe":
        return Fe(self, rng.randrange(1 if nonzero else 0, self.q))

    def in_prime_subfield(self, v: int) -> bool:
        return v < self.p

    def format_value(self, v: int) -> str:
        """Element text form ``c0,c1,...,c_{d-1}``."""
        return ",".join(map(str, self.coeffs_of(v)))

    def parse_element(self, text) -> "Fe":
        if isinstance(text, int):
            return self(text)
        try:
            parts = [int(c) for c in str(text).replace(":", ",").split(",")]
        except ValueError as exc:
            raise ParseError(f"bad element {text!r} for {self.spec}") from exc
        if len(parts) > self.d:
            raise ParseError(f"element {text!r} has more than {self.d} coefficients")
        return Fe(self, self.value_of(parts))


class Fe:
    """An element of a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, Fe):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"operands live in {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, v):
        return Fe(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "Fe":
        return self._wrap(self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Fe):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs_of(self.value)

    def to_text(self) -> str:
        return self.field.format_value(self.value)

    def __str__(self):
        if self.field.d == 1:
            return str(self.value)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(terms) or "0"

    def __repr__(self):
        return f"Fe({self}, F_{self.field.q})"


def subfield_embed(a: Fe, target: Field) -> Fe:
    """Image of a prime-field element under F_p -> F_{p^d}."""
    if a.field.p != target.p:
        raise CharacteristicMismatchError(
            f"cannot embed F_{a.field.q} into F_{target.q}")
    if not a.field.is_prime_field:
        raise ValueError("only prime-field sources are supported")
    return Fe(target, a.value)


def mult_subgroup(field: Field, m: int) -> list[Fe]:
    """The order-m subgroup of F_q^*, listed as powers 1, g, g^2, ...

    ``g`` is the ((q-1)/m)-th power of :meth:`Field.primitive_element`.
    """
    if m < 1 or (field.q - 1) % m:
        raise OrderNotDividingError(f"{m} does not divide {field.q - 1}")
    g = field.pow(field._primitive, (field.q - 1) // m)
    out, x = [], 1
    for _ in range(m):
        out.append(Fe(field, x))
        x = field.mul(x, g)
    return out


# -- univariate polynomials over a Field --------------------------------------

def eval_values(field: Field, coeffs: Sequence[int], x: int) -> int:
    """Horner evaluation on encoded values."""
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


def interpolate_values(field: Field, xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Coefficients (low to high, length len(xs)) of the interpolating polynomial."""
    m = len(xs)
    if len(set(xs)) != m:
        raise DuplicateAbscissaError("interpolation abscissae must be distinct")
    add, sub, mul = field.add, field.sub, field.mul
    master = [1]
    for a in xs:
        # master *= (x - a)
        nxt = [0] * (len(master) + 1)
        for i, c in enumerate(master):
            nxt[i + 1] = add(nxt[i + 1], c)
            nxt[i] = sub(nxt[i], mul(a, c))
        master = nxt
    out = [0] * m
    for a, y in zip(xs, ys):
        if y == 0:
            continue
        # synthetic division master / (x - a)
        quot = [0] * m
        carry = 0
        for i in range(m, 0, -1):
            carry = add(master[i], mul(carry, a)) if i < m else master[i]
            quot[i - 1] = carry
        scale = field.div(y, eval_values(field, quot, a))
        for i, c in enumerate(quot):
            out[i] = add(out[i], mul(scale, c))
    return out


class Poly:
    """Polynomial with coefficients in a :class:`Field`, low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        self.field = field
        vals = [field(c).value for c in coeffs]
        while vals and vals[-1] == 0:
            vals.pop()
        self.coeffs = tuple(vals)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficients(self) -> list[Fe]:
        return [Fe(self.field, c) for c in self.coeffs]

    def __call__(self, at) -> Fe:
        return Fe(self.field, eval_values(self.field, self.coeffs, self.field(at).value))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return _poly_from_values(self.field, [self.field.add(x, y) for x, y in zip(a, b)])

    def __mul__(self, other) -> "Poly":
        F = self.field
        if not isinstance(other, Poly):
            s = F(other).value
            return _poly_from_values(F, [F.mul(s, c) for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return _poly_from_values(F, out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coefficients()]}, F_{self.field.q})"

    @classmethod
    def interpolate(cls, points: Sequence[tuple]) -> "Poly":
        """Unique polynomial of degree < len(points) through ``points``."""
        if not points:
            raise ValueError("need at least one point")
        field = _field_of(points[0][0])
        xs = [field(x).value for x, _ in points]
        ys = [field(y).value for _, y in points]
        return _poly_from_values(field, interpolate_values(field, xs, ys))


def _field_of(x) -> Field:
    if not isinstance(x, Fe):
        raise TypeError("abscissae must be field elements")
    return x.field


def _poly_from_values(field: Field, values: list[int]) -> Poly:
    out = Poly(field)
    while values and values[-1] == 0:
        values.pop()
    out.coeffs = tuple(values)
    return out
