"""Exact arithmetic in GF(p^k), q = p^k <= 2^16.

An element of GF(p^k) is a plain int in [0, q) packing its power-basis
coordinates base p: the element sum(c_i * x^i) is stored as sum(c_i * p^i).
For prime fields (k = 1) an element is therefore just its residue.
Elements carry no reference to their field; every operation takes the
FieldSpec explicitly.

The unit group is cyclic of order q-1.  `dlog` transports it onto the
additive group Z_{q-1} through a fixed generator (`primitive_root`); a full
log table is built once at FieldSpec construction, which the q <= 2^16 cap
keeps affordable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    LogOfZero,
    NonPrime,
    ReduciblePolynomial,
    TrivialUnitGroup,
)

Q_CAP = 1 << 16

# An element of GF(p^k), packed base p.
FqElem = int


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) with a fixed monic irreducible modulus of degree k.

    `modulus` lists the k+1 coefficients (c0, ..., ck) of
    c0 + c1*x + ... + ck*x^k with ck = 1.  Cached tables are excluded from
    equality and hashing; two FieldSpecs agree iff (p, k, modulus) agree.
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    q: int
    _tables: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        self._tables["pow"], self._tables["log"], self._tables["gen"] = _unit_tables(self)

    @property
    def generator(self) -> FqElem | None:
        """Fixed generator of the unit group; None when q = 2."""
        return self._tables["gen"]


def coeffs(F: FieldSpec, a: FqElem) -> tuple[int, ...]:
    """Power-basis coordinates (k residues mod p) of a packed element."""
    out = []
    for _ in range(F.k):
        a, r = divmod(a, F.p)
        out.append(r)
    return tuple(out)


def from_coeffs(F: FieldSpec, cs) -> FqElem:
    cs = list(cs)
    if len(cs) > F.k and any(c % F.p for c in cs[F.k:]):
        raise FieldMismatch(f"coefficient sequence longer than degree {F.k}")
    return sum((c % F.p) * F.p**i for i, c in enumerate(cs[: F.k]))


def _check(F: FieldSpec, *elems: FqElem) -> None:
    for a in elems:
        if not isinstance(a, int) or not 0 <= a < F.q:
            raise FieldMismatch(f"{a!r} is not an element of GF({F.p}^{F.k})")


def _poly_mul_mod(F: FieldSpec, ca, cb):
    # Schoolbook product of coefficient lists, reduced by the monic modulus.
    p, k = F.p, F.k
    prod = [0] * (len(ca) + len(cb) - 1)
    for i, ai in enumerate(ca):
        if ai:
            for j, bj in enumerate(cb):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(k):
                prod[d - k + i] = (prod[d - k + i] - c * F.modulus[i]) % p
    return prod[:k] if len(prod) >= k else prod + [0] * (k - len(prod))


def add(F: FieldSpec, a: FqElem, b: FqElem) -> FqElem:
    _check(F, a, b)
    if F.k == 1:
        return (a + b) % F.p
    ca, cb = coeffs(F, a), coeffs(F, b)
    return from_coeffs(F, [(x + y) % F.p for x, y in zip(ca, cb)])


def neg(F: FieldSpec, a: FqElem) -> FqElem:
    _check(F, a)
    if F.k == 1:
        return (-a) % F.p
    return from_coeffs(F, [(-c) % F.p for c in coeffs(F, a)])


def sub(F: FieldSpec, a: FqElem, b: FqElem) -> FqElem:
    return add(F, a, neg(F, b))


def mul(F: FieldSpec, a: FqElem, b: FqElem) -> FqElem:
    _check(F, a, b)
    if F.k == 1:
        return (a * b) % F.p
    if a == 0 or b == 0:
        return 0
    return from_coeffs(F, _poly_mul_mod(F, coeffs(F, a), coeffs(F, b)))


def inv(F: FieldSpec, a: FqElem) -> FqElem:
    _check(F, a)
    if a == 0:
        raise DivisionByZero("inverse of zero")
    if F.k == 1:
        return pow(a, F.p - 2, F.p)
    return fpow(F, a, F.q - 2)


def div(F: FieldSpec, a: FqElem, b: FqElem) -> FqElem:
    return mul(F, a, inv(F, b))


def fpow(F: FieldSpec, a: FqElem, e: int) -> FqElem:
    _check(F, a)
    if e < 0:
        return fpow(F, inv(F, a), -e)
    r, base = 1, a
    while e > 0:
        if e & 1:
            r = mul(F, r, base)
        base = mul(F, base, base)
        e >>= 1
    return r


def arith(F: FieldSpec, kind: str, a: FqElem, b: FqElem | None = None) -> FqElem:
    """Bundled dispatcher over the elementary field operations."""
    unary = {"inv": inv, "neg": neg}
    binary = {"add": add, "sub": sub, "mul": mul, "div": div, "pow": fpow}
    if kind in unary:
        return unary[kind](F, a)
    if kind in binary:
        if b is None:
            raise FieldMismatch(f"operation {kind!r} needs two operands")
        return binary[kind](F, a, b)
    raise FieldMismatch(f"unknown field operation {kind!r}")


def _lex_elements(F: FieldSpec):
    """All elements in lexicographic power-basis coefficient order (c0 first)."""
    return sorted(range(F.q), key=lambda a: coeffs(F, a))


def element_order(F: FieldSpec, a: FqElem) -> int:
    if a == 0:
        raise DivisionByZero("order of zero")
    n, x = 1, a
    while x != 1:
        x = mul(F, x, a)
        n += 1
    return n


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _unit_tables(F: FieldSpec):
    # Generator = smallest element of multiplicative order q-1 in lex
    # coefficient order; pow/log tables for the whole unit group.
    if F.q == 2:
        return [1], {1: 0}, None
    m = F.q - 1
    primes = _prime_factors(m)
    gen = None
    for a in _lex_elements(F):
        if a == 0:
            continue
        # order is exactly m iff a^(m/r) != 1 for every prime r | m
        if all(fpow(F, a, m // r) != 1 for r in primes):
            gen = a
            break
    assert gen is not None, "unit group of a finite field is cyclic"
    powt = [1] * (F.q - 1)
    logt = {1: 0}
    x = 1
    for e in range(1, F.q - 1):
        x = mul(F, x, gen)
        powt[e] = x
        logt[x] = e
    return powt, logt, gen


def primitive_root(F: FieldSpec) -> FqElem:
    if F.q == 2:
        raise TrivialUnitGroup("GF(2) has a trivial unit group; no generator")
    return F.generator


def dlog(F: FieldSpec, a: FqElem) -> int:
    """Discrete log base primitive_root(F), a residue mod q-1."""
    _check(F, a)
    if a == 0:
        raise LogOfZero("dlog of zero")
    return F._tables["log"][a]


def from_dlog(F: FieldSpec, e: int) -> FqElem:
    return F._tables["pow"][e % (F.q - 1)] if F.q > 2 else 1


def units(F: FieldSpec) -> list[FqElem]:
    return [a for a in range(1, F.q)]


def _poly_divides(p: int, d: list[int], f: list[int]) -> bool:
    # Remainder of monic-d division of f; all coefficient arithmetic mod p.
    r = list(f)
    while len(r) >= len(d) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(d):
            break
        c = r[-1]
        shift = len(r) - len(d)
        for i, di in enumerate(d):
            r[shift + i] = (r[shift + i] - c * di) % p
    return not any(r)


def _is_irreducible(p: int, k: int, modulus: tuple[int, ...]) -> bool:
    if modulus[k] != 1:
        return False
    if k == 1:
        return True
    # Exhaustive trial division by every monic polynomial of degree <= k//2;
    # p^(k//2) <= 2^8 under the q cap, so this is always cheap.
    f = list(modulus)
    for d in range(1, k // 2 + 1):
        for packed in range(p**d):
            divisor = []
            m = packed
            for _ in range(d):
                m, r = divmod(m, p)
                divisor.append(r)
            divisor.append(1)
            if _poly_divides(p, divisor, f):
                return False
    return True


def _default_modulus(p: int, k: int) -> tuple[int, ...]:
    # Smallest monic irreducible in lexicographic coefficient order
    # (constant coefficient compared first).
    if k == 1:
        return (0, 1)
    from itertools import product

    for lower in product(range(p), repeat=k):
        cand = tuple(lower) + (1,)
        if _is_irreducible(p, k, cand):
            return cand
    raise ReduciblePolynomial(f"no irreducible of degree {k} over GF({p})")  # pragma: no cover


def make_field(p: int, k: int = 1, modulus=None) -> FieldSpec:
    if not _is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if k < 1:
        raise FieldTooLarge(f"degree must be positive, got {k}")
    q = p**k
    if q > Q_CAP:
        raise FieldTooLarge(f"q = {q} exceeds the 2^16 cap")
    if modulus is None:
        modulus = _default_modulus(p, k)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1:
            raise ReduciblePolynomial(f"modulus must have degree {k}")
        if not _is_irreducible(p, k, modulus):
            raise ReduciblePolynomial(f"modulus {modulus} is reducible over GF({p})")
    return FieldSpec(p=p, k=k, modulus=modulus, q=q)


# -- element parsing / printing ------------------------------------------

def format_elem(F: FieldSpec, a: FqElem) -> str:
    """Render as a polynomial in x over Z_p, e.g. "0", "3", "x+1", "2x^2"."""
    _check(F, a)
    if F.k == 1:
        return str(a)
    terms = []
    for i, c in enumerate(coeffs(F, a)):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            xc = "x" if i == 1 else f"x^{i}"
            terms.append(xc if c == 1 else f"{c}{xc}")
    return "+".join(reversed(terms)) if terms else "0"


def parse_elem(F: FieldSpec, text) -> FqElem:
    """Accepts ints, coefficient lists, or polynomial strings like "x+1"."""
    if isinstance(text, int):
        if not 0 <= text < F.q and F.k > 1:
            raise FieldMismatch(f"{text} out of range for GF({F.p}^{F.k})")
        return text % F.q if F.k == 1 else text
    if isinstance(text, (list, tuple)):
        return from_coeffs(F, text)
    s = str(text).replace(" ", "").replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    total = 0
    for term in s.split("+"):
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        if "x" in term:
            head, _, tail = term.partition("x")
            c = int(head) if head else 1
            e = int(tail[1:]) if tail.startswith("^") else (1 if not tail else int(tail))
        else:
            c, e = int(term), 0
        if e >= F.k:
            raise FieldMismatch(f"term of degree {e} in a degree-{F.k} field: {text!r}")
        total = add(F, total, from_coeffs(F, [0] * e + [sign * c]))
    return total


def field_label(F: FieldSpec) -> str:
    return f"GF({F.p})" if F.k == 1 else f"GF({F.p}^{F.k})"
