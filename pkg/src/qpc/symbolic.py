"""Exact sparse Laurent polynomials, rational functions and tropicalization.

Everything is over :class:`fractions.Fraction`.  Variables are addressed by a
0-based position in an ambient exponent vector; higher layers translate their
1-based vertex labels at the boundary.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "LaurentExpr",
    "RationalExpr",
    "TropicalForm",
    "NonPositiveCoefficient",
    "NotInverseLaurent",
    "NotLaurent",
    "substitute",
    "tropicalize",
    "as_inverse_polynomial",
    "to_laurent",
    "polynomial_to_json",
    "polynomial_from_json",
    "rational_to_json",
    "rational_from_json",
]

Exponent = tuple


class NonPositiveCoefficient(ValueError):
    pass


class NotLaurent(ValueError):
    pass


class NotInverseLaurent(ValueError):
    pass


def _grlex(e: Exponent):
    return (sum(e), e)


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class LaurentExpr:
    """Sparse Laurent polynomial: ``{exponent tuple: Fraction}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean: dict = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
                if c:
                    clean[tuple(e)] = _frac(c)
        self.terms = clean

    # constructors
    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentExpr":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "LaurentExpr":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c=1) -> "LaurentExpr":
        c = _frac(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "LaurentExpr":
        e = tuple(int(x) for x in exponent)
        return cls(len(e), {e: coeff})

    @classmethod
    def var(cls, nvars: int, index: int, power: int = 1) -> "LaurentExpr":
        e = [0] * nvars
        e[index] = power
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    def monomial_content(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        lo = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < lo[i]:
                    lo[i] = x
        return tuple(lo)

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        hi = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x > hi[i]:
                    hi[i] = x
        return tuple(hi)

    def shift(self, e: Sequence[int]) -> "LaurentExpr":
        return LaurentExpr._raw(
            self.nvars, {tuple(a + b for a, b in zip(k, e)): c for k, c in self.terms.items()}
        )

    def exponents(self) -> list[Exponent]:
        return [e for e, _ in self.sorted_terms()]

    def coefficients(self) -> list[Fraction]:
        return [c for _, c in self.sorted_terms()]

    def used_variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # arithmetic
    def _check(self, other: "LaurentExpr") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"ambient mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "LaurentExpr":
        if isinstance(other, LaurentExpr):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentExpr.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentExpr._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentExpr._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RationalExpr):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            a, b = self, other
        else:
            a, b = other, self
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentExpr._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self.terms.items()
            return LaurentExpr._raw(self.nvars, {tuple(x * k for x in e): c ** k})
        result = LaurentExpr.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "LaurentExpr":
        c = _frac(c)
        if not c:
            return LaurentExpr.zero(self.nvars)
        return LaurentExpr._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentExpr.const(self.nvars, other)
        if isinstance(other, RationalExpr):
            return RationalExpr.from_laurent(self) == other
        if not isinstance(other, LaurentExpr):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def divide_exact(self, other: "LaurentExpr") -> "LaurentExpr | None":
        """Return q with self == q*other, or None if no Laurent quotient exists."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return LaurentExpr.zero(self.nvars)
        if other.is_monomial():
            (e, c), = other.terms.items()
            neg = tuple(-x for x in e)
            return self.shift(neg).scale(1 / c)
        ca, cb = self.monomial_content(), other.monomial_content()
        f = dict(self.shift(tuple(-x for x in ca)).terms)
        g = other.shift(tuple(-x for x in cb))
        g_lead, g_c = g.leading()
        g_items = list(g.terms.items())
        q: dict = {}
        while f:
            e = max(f, key=_grlex)
            d = tuple(a - b for a, b in zip(e, g_lead))
            if any(x < 0 for x in d):
                return None
            c = f[e] / g_c
            q[d] = c
            for ge, gc in g_items:
                k = tuple(a + b for a, b in zip(d, ge))
                v = f.get(k, 0) - c * gc
                if v:
                    f[k] = v
                else:
                    f.pop(k, None)
        quot = LaurentExpr._raw(self.nvars, q)
        return quot.shift(tuple(a - b for a, b in zip(ca, cb)))

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= _frac(x) ** k
            total += t
        return total

    def embed(self, nvars: int, positions: Sequence[int]) -> "LaurentExpr":
        """Re-index: variable i goes to position ``positions[i]`` of a new ambient space."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, x in enumerate(e):
                if x:
                    ne[positions[i]] += x
            out[tuple(ne)] = c
        return LaurentExpr(nvars, out)

    def to_string(self, symbol: str = "x", inverse: bool = False) -> str:
        """Plain text.  With ``inverse=True`` exponents print as e.g. ``X_2^{-1}``."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "".join(
                f"{symbol}_{i + 1}" + ("" if x == 1 else f"^{{{x}}}")
                for i, x in enumerate(e)
                if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentExpr({self.to_string()})"


class RationalExpr:
    """Formal quotient num/den of Laurent polynomials, kept in a light canonical form."""

    __slots__ = ("num", "den")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, num: LaurentExpr, den: LaurentExpr | None = None, *, canonical: bool = True):
        if den is None:
            den = LaurentExpr.const(num.nvars, 1)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den
        if canonical:
            self._canonicalize()

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_laurent(cls, f: LaurentExpr) -> "RationalExpr":
        return cls(f, None, canonical=False)

    @classmethod
    def const(cls, nvars: int, c=1) -> "RationalExpr":
        return cls(LaurentExpr.const(nvars, c), None, canonical=False)

    @classmethod
    def var(cls, nvars: int, index: int, power: int = 1) -> "RationalExpr":
        return cls(LaurentExpr.var(nvars, index, power), None, canonical=False)

    def _canonicalize(self) -> None:
        num, den = self.num, self.den
        if num.is_zero():
            self.num, self.den = num, LaurentExpr.const(num.nvars, 1)
            return
        content = den.monomial_content()
        if any(content):
            neg = tuple(-x for x in content)
            num, den = num.shift(neg), den.shift(neg)
        if not den.is_monomial():
            q = num.divide_exact(den)
            if q is not None:
                num, den = q, LaurentExpr.const(num.nvars, 1)
            else:
                for k in range(num.nvars):
                    factor = LaurentExpr.const(num.nvars, 1) + LaurentExpr.var(num.nvars, k)
                    while True:
                        qd = den.divide_exact(factor)
                        if qd is None:
                            break
                        qn = num.divide_exact(factor)
                        if qn is None:
                            break
                        num, den = qn, qd
        _, lc = den.leading()
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num, self.den = num, den

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def _coerce(self, other) -> "RationalExpr":
        if isinstance(other, RationalExpr):
            if other.nvars != self.nvars:
                raise ValueError(f"ambient mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, LaurentExpr):
            self.num._check(other)
            return RationalExpr.from_laurent(other)
        if isinstance(other, (int, Fraction)):
            return RationalExpr.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalExpr(self.num + other.num, self.den)
        return RationalExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr(-self.num, self.den, canonical=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalExpr":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalExpr(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalExpr(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentExpr)):
            other = self._coerce(other)
        if not isinstance(other, RationalExpr):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        return self.num * other.den == other.num * self.den

    def evaluate(self, point: Sequence) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def to_string(self, symbol: str = "x") -> str:
        if self.den.is_constant():
            return self.num.to_string(symbol)
        return f"({self.num.to_string(symbol)}) / ({self.den.to_string(symbol)})"

    def __repr__(self):
        return f"RationalExpr({self.to_string()})"


def _as_rational(f) -> RationalExpr:
    if isinstance(f, RationalExpr):
        return f
    if isinstance(f, LaurentExpr):
        return RationalExpr.from_laurent(f)
    raise TypeError(f"expected LaurentExpr or RationalExpr, got {type(f).__name__}")


def _laurent_image(f: LaurentExpr, images: Sequence[RationalExpr], nvars: int):
    """Image of a Laurent polynomial as a pair (N, D) of Laurent polynomials."""
    if f.is_zero():
        return LaurentExpr.zero(nvars), LaurentExpr.const(nvars, 1)
    lo, hi = f.monomial_content(), f.max_exponents()
    used = [i for i in range(f.nvars) if lo[i] or hi[i]]
    for i in used:
        if images[i].num.is_zero():
            raise ZeroDivisionError(f"variable {i} is sent to zero")
    top = {i: max(0, hi[i]) for i in used}
    bot = {i: max(0, -lo[i]) for i in used}
    cache: dict = {}

    def power(i: int, which: str, k: int) -> LaurentExpr:
        key = (i, which, k)
        if key not in cache:
            src = images[i].num if which == "n" else images[i].den
            cache[key] = src ** k
        return cache[key]

    denom = LaurentExpr.const(nvars, 1)
    for i in used:
        if top[i]:
            denom = denom * power(i, "d", top[i])
        if bot[i]:
            denom = denom * power(i, "n", bot[i])
    numer = LaurentExpr.zero(nvars)
    for e, c in f.terms.items():
        t = LaurentExpr.const(nvars, c)
        for i in used:
            a = e[i] + bot[i]
            b = top[i] - e[i]
            if a:
                t = t * power(i, "n", a)
            if b:
                t = t * power(i, "d", b)
        numer = numer + t
    return numer, denom


def substitute(f, assignment: Sequence) -> RationalExpr:
    """Compose ``f`` with the map sending variable i to ``assignment[i]``."""
    f = _as_rational(f)
    if len(assignment) != f.nvars:
        raise ValueError(f"assignment has {len(assignment)} entries, expected {f.nvars}")
    images = [_as_rational(a) for a in assignment]
    target = {g.nvars for g in images}
    if len(target) != 1:
        raise ValueError("assignment values live in different ambient spaces")
    nv = target.pop()
    n1, d1 = _laurent_image(f.num, images, nv)
    n2, d2 = _laurent_image(f.den, images, nv)
    if n2.is_zero():
        raise ZeroDivisionError("denominator becomes zero after substitution")
    return RationalExpr(n1 * d2, d1 * n2)


def to_laurent(f) -> LaurentExpr:
    """Exact Laurent form of ``f``; raises NotLaurent when den does not divide num."""
    if isinstance(f, LaurentExpr):
        return f
    f = _as_rational(f)
    q = f.num.divide_exact(f.den)
    if q is None:
        raise NotLaurent(f"not a Laurent polynomial: {f.to_string()}")
    return q


def as_inverse_polynomial(f) -> LaurentExpr:
    try:
        g = to_laurent(f)
    except NotLaurent as exc:
        raise NotInverseLaurent(str(exc)) from None
    for e in g.terms:
        if any(x > 0 for x in e):
            raise NotInverseLaurent(f"positive exponent {e} in {g.to_string()}")
    return g


class TropicalForm:
    """min over numer of <x,u> minus min over denom of <x,u>."""

    __slots__ = ("numer_exponents", "denom_exponents")

    def __init__(self, numer_exponents: Iterable[Sequence[int]], denom_exponents: Iterable[Sequence[int]]):
        self.numer_exponents = frozenset(tuple(u) for u in numer_exponents)
        self.denom_exponents = frozenset(tuple(u) for u in denom_exponents)
        if not self.numer_exponents or not self.denom_exponents:
            raise ValueError("tropical form needs nonempty exponent sets")

    def __call__(self, x: Sequence[int]):
        a = min(sum(p * q for p, q in zip(x, u)) for u in self.numer_exponents)
        b = min(sum(p * q for p, q in zip(x, u)) for u in self.denom_exponents)
        return a - b

    def is_linear(self) -> bool:
        return len(self.numer_exponents) == 1 and len(self.denom_exponents) == 1

    def normals(self) -> list[tuple]:
        """Normals u - w (w the single denominator exponent) of the cone {form >= 0}."""
        if len(self.denom_exponents) != 1:
            raise ValueError("normals need a monomial denominator")
        (w,) = self.denom_exponents
        return sorted(tuple(a - b for a, b in zip(u, w)) for u in self.numer_exponents)

    def __eq__(self, other):
        if not isinstance(other, TropicalForm):
            return NotImplemented
        return (self.numer_exponents, self.denom_exponents) == (other.numer_exponents, other.denom_exponents)

    def __hash__(self):
        return hash((self.numer_exponents, self.denom_exponents))

    def __repr__(self):
        return f"TropicalForm(min{sorted(self.numer_exponents)} - min{sorted(self.denom_exponents)})"


def tropicalize(f) -> TropicalForm:
    f = _as_rational(f)
    if not f.is_laurent():
        f = RationalExpr(f.num, f.den)
    for part in (f.num, f.den):
        for c in part.terms.values():
            if c <= 0:
                raise NonPositiveCoefficient(f"coefficient {c} in {f.to_string()}")
    if f.num.is_zero():
        raise NonPositiveCoefficient("zero has no tropicalization")
    return TropicalForm(f.num.terms, f.den.terms)


# JSON

def polynomial_to_json(f: LaurentExpr) -> list:
    return [{"coeff": str(c), "exp": list(e)} for e, c in f.sorted_terms()]


def polynomial_from_json(data: list, nvars: int | None = None) -> LaurentExpr:
    if not data:
        if nvars is None:
            raise ValueError("cannot infer ambient size of the empty polynomial")
        return LaurentExpr.zero(nvars)
    terms = {}
    for item in data:
        e = tuple(int(x) for x in item["exp"])
        terms[e] = terms.get(e, 0) + Fraction(str(item["coeff"]))
    n = nvars if nvars is not None else len(next(iter(terms)))
    return LaurentExpr(n, terms)


def rational_to_json(f: RationalExpr) -> dict:
    return {"num": polynomial_to_json(f.num), "den": polynomial_to_json(f.den)}


def rational_from_json(data: dict, nvars: int | None = None) -> RationalExpr:
    num = polynomial_from_json(data["num"], nvars)
    den = polynomial_from_json(data["den"], num.nvars)
    return RationalExpr(num, den)
