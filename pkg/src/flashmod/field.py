"""Arithmetic in GF(2**m) on plain integers.

A field element is an m-bit integer whose bits are the coefficients of a
polynomial over GF(2).  The integer-to-element bijection used by the
load-balancing code is therefore the identity map (and sends 0 to 0),
which keeps traces reproducible.  Reduction uses a fixed irreducible
polynomial per extension degree, overridable at construction.
"""

from dataclasses import dataclass

__all__ = ["FieldElem", "FieldSpec", "DEFAULT_POLYS", "gf_add", "gf_mul", "gf_inv"]

FieldElem = int

#: Conventional low-weight irreducible polynomials, degree -> bit mask.
DEFAULT_POLYS = {
    2: 0b111,  # x^2 + x + 1
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10001001,  # x^7 + x^3 + 1
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,  # x^9 + x^4 + 1
    10: 0b10000001001,  # x^10 + x^3 + 1
    11: 0b100000000101,  # x^11 + x^2 + 1
    12: 0b1000001010011,  # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,  # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,  # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10001000000001011,  # x^16 + x^12 + x^3 + x + 1
    17: 0x20009,  # x^17 + x^3 + 1
    18: 0x40081,  # x^18 + x^7 + 1
    19: 0x80027,  # x^19 + x^5 + x^2 + x + 1
    20: 0x100009,  # x^20 + x^3 + 1
    21: 0x200005,  # x^21 + x^2 + 1
    22: 0x400003,  # x^22 + x + 1
    23: 0x800021,  # x^23 + x^5 + 1
    24: 0x1000087,  # x^24 + x^7 + x^2 + x + 1
}


def _poly_mod(a: int, b: int) -> int:
    """Remainder of carryless polynomial division of a by b (b != 0)."""
    db = b.bit_length()
    while a and a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _smallest_factor(poly: int) -> int | None:
    """Exhaustive trial division; returns a proper divisor or None.

    Candidates run over every polynomial of degree 1..deg(poly)//2, which
    stays cheap for degrees up to 24.
    """
    half = (poly.bit_length() - 1) // 2
    for cand in range(2, 1 << (half + 1)):
        if _poly_mod(poly, cand) == 0:
            return cand
    return None


@dataclass(frozen=True)
class FieldSpec:
    """GF(2**m) described by its reduction polynomial.

    poly is the (m+1)-bit mask of a monic irreducible polynomial; leave
    it 0 to pick the default for m.  Construction verifies the degree and
    irreducibility, so any FieldSpec that exists is safe to share across
    threads and all operations on it are pure.
    """

    m: int
    poly: int = 0

    def __post_init__(self):
        if not 2 <= self.m <= 24:
            raise ValueError(f"extension degree m must be in [2, 24], got {self.m}")
        if self.poly == 0:
            object.__setattr__(self, "poly", DEFAULT_POLYS[self.m])
        if self.poly.bit_length() != self.m + 1:
            raise ValueError(f"poly 0x{self.poly:x} does not have degree {self.m}")
        factor = _smallest_factor(self.poly)
        if factor is not None:
            raise ValueError(f"poly 0x{self.poly:x} is reducible (divisible by 0b{factor:b})")

    @property
    def order(self) -> int:
        """Number of field elements, 2**m."""
        return 1 << self.m


def _check_elem(spec: FieldSpec, a: int) -> None:
    if not 0 <= a < (1 << spec.m):
        raise ValueError(f"{a} is not an element of GF(2^{spec.m})")


def gf_add(spec: FieldSpec, a: FieldElem, b: FieldElem) -> FieldElem:
    """Field addition (equals subtraction in characteristic 2): XOR."""
    _check_elem(spec, a)
    _check_elem(spec, b)
    return a ^ b


def gf_mul(spec: FieldSpec, a: FieldElem, b: FieldElem) -> FieldElem:
    """Field product: carryless shift-xor multiply reduced mod spec.poly."""
    _check_elem(spec, a)
    _check_elem(spec, b)
    poly = spec.poly
    top = 1 << spec.m
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return acc


def gf_inv(spec: FieldSpec, a: FieldElem) -> FieldElem:
    """Multiplicative inverse via exponentiation to 2**m - 2.

    Square-and-multiply keeps this branch-free over the element value;
    a = 0 has no inverse and raises ZeroDivisionError.
    """
    _check_elem(spec, a)
    if a == 0:
        raise ZeroDivisionError("0 is not invertible in a field")
    result = 1
    base = a
    exp = (1 << spec.m) - 2
    while exp:
        if exp & 1:
            result = gf_mul(spec, result, base)
        base = gf_mul(spec, base, base)
        exp >>= 1
    return result
