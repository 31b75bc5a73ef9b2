"""Binary quadratic form arithmetic over negative discriminants.

Gauss reduction, classical composition, exhaustive class-number
enumeration, element orders, and the 2-Sylow structure summary.  This
module is the unconditional oracle the certificate pipeline checks its
symbol criteria against, so it deliberately favors simple exhaustive
algorithms over clever ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_I63 = 1 << 63


@dataclass(frozen=True)
class Form:
    """Positive definite integral form a*x**2 + b*x*y + c*y**2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"form must have a > 0, got a={self.a}")
        if self.b * self.b - 4 * self.a * self.c >= 0:
            raise ValueError(
                f"form ({self.a},{self.b},{self.c}) is not positive definite"
            )

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"


@dataclass(frozen=True)
class ClassGroup2Summary:
    """Class number of discriminant -d and the shape of its 2-Sylow part.

    two_part is the largest power of 2 dividing h; ambiguous_count is the
    number of classes of order dividing 2; the 2-Sylow subgroup is cyclic
    exactly when ambiguous_count <= 2.
    """

    d: int
    h: int
    two_part: int
    cyclic_2sylow: bool
    ambiguous_count: int


def discriminant(f: Form) -> int:
    return f.b * f.b - 4 * f.a * f.c


def principal_form(disc: int) -> Form:
    """Identity class of a negative discriminant (0 or 1 mod 4)."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative quadratic discriminant")
    b = disc % 2
    return Form(1, b, (b - disc) // 4)


def inverse(f: Form) -> Form:
    return Form(f.a, -f.b, f.c)


def is_reduced(f: Form) -> bool:
    if not (-f.a < f.b <= f.a <= f.c):
        return False
    return f.b >= 0 if f.a == f.c else True


def _normalize(a: int, b: int, c: int) -> tuple[int, int, int]:
    if -a < b <= a:
        return a, b, c
    r = (a - b) // (2 * a)
    return a, b + 2 * r * a, a * r * r + b * r + c


def reduce(f: Form) -> Form:
    """The unique reduced representative of the class of f (idempotent)."""
    a, b, c = _normalize(f.a, f.b, f.c)
    while a > c or (a == c and b < 0):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        a, b, c = _normalize(a, b, c)
    return Form(a, b, c)


def _solve_congruence(a: int, b: int, m: int) -> tuple[int, int]:
    """Solutions of a*x = b (mod m) as x0 + t*step; gcd(a, m) must divide b."""
    g = math.gcd(a, m)
    if b % g:
        raise ArithmeticError("congruence has no solution")
    step = m // g
    x0 = (b // g) * pow(a // g, -1, step) % step if step > 1 else 0
    return x0, step


def compose(f: Form, g: Form) -> Form:
    """Gauss composition of classes, returned reduced.

    Classical algorithm built on two linear congruences; commutative,
    with the principal form as identity and (a,-b,c) as inverse.
    """
    if discriminant(f) != discriminant(g):
        raise ValueError(
            f"cannot compose forms of discriminants "
            f"{discriminant(f)} and {discriminant(g)}"
        )
    for q in (f, g):
        if math.gcd(math.gcd(q.a, q.b), q.c) != 1:
            raise ValueError(f"form {q} is imprimitive and has no class")
    a1, b1, c1 = f.a, f.b, f.c
    a2, b2, c2 = g.a, g.b, g.c
    s = (b2 + b1) // 2
    h = (b2 - b1) // 2
    w = math.gcd(math.gcd(a1, a2), s)
    t1 = a1 // w
    t2 = a2 // w
    u = s // w
    k0, step = _solve_congruence(t2 * u, h * u + t1 * c1, t1 * t2)
    n0, _ = _solve_congruence(t2 * step, h - t2 * k0, t1)
    k = k0 + step * n0
    ell = (t2 * k - h) // t1
    m = (t2 * u * k - h * u - c1 * t1) // (t1 * t2)
    a3 = t1 * t2
    b3 = w * u - (k * t2 + ell * t1)
    c3 = k * ell - w * m
    return reduce(Form(a3, b3, c3))


def form_pow(f: Form, e: int) -> Form:
    """e-th power of the class of f, e >= 0, by repeated squaring."""
    if e < 0:
        raise ValueError("form_pow requires e >= 0")
    result = principal_form(discriminant(f))
    base = reduce(f)
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def element_order(f: Form) -> int:
    """Least n >= 1 with f**n principal, by repeated composition."""
    ident = principal_form(discriminant(f))
    g = reduce(f)
    d = -discriminant(f)
    # crude class-number bound; only a safety net against compose bugs
    cap = int(math.isqrt(d) * (math.log(d) + 3)) + 16
    n = 1
    while g != ident:
        g = compose(g, f)
        n += 1
        if n > cap:
            raise ArithmeticError(
                f"order of {f} exceeds the class-number bound {cap}"
            )
    return n


def enumerate_reduced(d: int) -> list[Form]:
    """All primitive reduced forms of discriminant -d, sorted by (a, b, c).

    -d must be a valid discriminant, i.e. d = 3 (mod 4) or d = 0 (mod 4).
    Imprimitive forms do not belong to the class group and are skipped.
    """
    if d < 3 or d % 4 not in (0, 3):
        raise ValueError(f"-{d} is not a negative quadratic discriminant")
    if d >= _I63:
        raise ValueError(f"discriminant bound exceeded: d={d} >= 2**63")
    out = []
    b = d & 1
    while 3 * b * b <= d:
        m = (b * b + d) // 4
        for a in range(max(b, 1), math.isqrt(m) + 1):
            if m % a:
                continue
            c = m // a
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append(Form(a, b, c))
            if b and b != a and a != c:
                out.append(Form(a, -b, c))
        b += 2
    out.sort(key=lambda f: (f.a, f.b, f.c))
    return out


def class_number(d: int) -> ClassGroup2Summary:
    """Class number and 2-Sylow structure of discriminant -d by enumeration.

    The cyclicity verdict is double-checked: the ambiguous-class count
    (order <= 2 classes) decides it, and a scan for an element whose
    2-part has maximal order must agree, else an internal error is
    raised.
    """
    group = enumerate_reduced(d)
    h = len(group)
    two_part = h & -h
    ident = principal_form(-d)
    ambiguous = sum(1 for f in group if compose(f, f) == ident)
    if ambiguous & (ambiguous - 1):
        raise ArithmeticError(
            f"ambiguous class count {ambiguous} for d={d} is not a power of 2"
        )
    cyclic = ambiguous <= 2
    if two_part == 1:
        witness_cyclic = True
    else:
        # g**(h/2) is non-principal iff the 2-part of g generates a
        # subgroup of order two_part; such g exists iff the 2-Sylow
        # subgroup is cyclic.
        half = h // 2
        witness_cyclic = any(form_pow(f, half) != ident for f in group)
    if witness_cyclic != cyclic:
        raise ArithmeticError(
            f"2-Sylow bookkeeping mismatch for d={d}: "
            f"ambiguous_count={ambiguous}, witness says cyclic={witness_cyclic}"
        )
    return ClassGroup2Summary(
        d=d,
        h=h,
        two_part=two_part,
        cyclic_2sylow=cyclic,
        ambiguous_count=ambiguous,
    )


def order_2m_form(w: int, x: int, m: int) -> Form:
    """The form (w, x, w**(2m-1)), whose class has order divisible by 2m.

    Requires w even and positive, 0 < x <= 2*w**m - 2, and gcd(x, w) = 1;
    the discriminant is then -(4*w**(2m) - x**2) < 0.  For squarefree
    discriminants arising from a prime pair the order is exactly 2m.
    """
    if m < 1:
        raise ValueError("hypothesis failed: m must be a positive integer")
    if w < 2 or w % 2:
        raise ValueError("hypothesis failed: w must be a positive even integer")
    if x < 1 or x > 2 * w**m - 2:
        raise ValueError(
            f"hypothesis failed: x must satisfy 0 < x <= 2*w**m - 2 = {2 * w**m - 2}"
        )
    if math.gcd(x, w) != 1:
        raise ValueError("hypothesis failed: x and w must be coprime")
    return Form(w, x, w ** (2 * m - 1))
