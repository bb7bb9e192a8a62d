"""Exact sparse Laurent polynomials with integer coefficients.

Each variable carries a grid denominator: exponents are stored as integers
counting multiples of ``1/den``.  ``t`` with ``den=2`` holds half-integer
powers, ``den=4`` quarter powers.  Coefficients are Python ints, so there is
no overflow.
"""

from __future__ import annotations

import cmath
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "VarSpec",
    "LaurentPoly",
    "PolyError",
    "VariableMismatchError",
    "OffGridError",
    "NonInvertibleError",
    "ZeroPolynomialError",
    "EvaluationAtZeroError",
    "PolyParseError",
    "NotDivisibleError",
    "make_vars",
    "poly_add",
    "poly_mul",
    "poly_mul_monomial",
    "poly_substitute",
    "poly_eval_complex",
    "reduced_degree",
    "parse_poly",
    "substitute_rational",
]


class PolyError(ValueError):
    pass


class VariableMismatchError(PolyError):
    pass


class OffGridError(PolyError):
    pass


class NonInvertibleError(PolyError):
    pass


class ZeroPolynomialError(PolyError):
    pass


class EvaluationAtZeroError(PolyError):
    pass


class NotDivisibleError(PolyError):
    pass


class PolyParseError(PolyError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[:pos]}<here>{text[pos:]}")
        self.text = text
        self.pos = pos


_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class VarSpec:
    name: str
    den: int = 1

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise PolyError(f"bad variable name {self.name!r}")
        if not isinstance(self.den, int) or self.den < 1:
            raise PolyError(f"grid denominator must be a positive integer, got {self.den!r}")


def make_vars(spec: str | Iterable) -> tuple[VarSpec, ...]:
    """Build a variable list from ``"x y"``, ``"t:2"`` or an iterable of names/VarSpecs."""
    if isinstance(spec, str):
        spec = spec.replace(",", " ").split()
    out = []
    for item in spec:
        if isinstance(item, VarSpec):
            out.append(item)
        elif isinstance(item, tuple):
            out.append(VarSpec(*item))
        else:
            name, _, den = str(item).partition(":")
            out.append(VarSpec(name, int(den) if den else 1))
    names = [v.name for v in out]
    if len(set(names)) != len(names):
        raise PolyError(f"duplicate variable names in {names}")
    return tuple(out)


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        f = Fraction(x)
        if f.denominator > 1 << 20:
            raise OffGridError(f"exponent {x!r} is not a simple rational")
        return f
    return Fraction(x)


def _add_vec(a, b):
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    """Immutable sparse Laurent polynomial.

    ``terms`` maps exponent vectors (grid units, one int per variable) to
    nonzero integer coefficients.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[VarSpec] | str, terms: Mapping | None = None):
        if isinstance(vars, str) or not all(isinstance(v, VarSpec) for v in vars):
            vars = make_vars(vars)
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise PolyError(f"exponent vector {e} does not match {n} variables")
            if not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise PolyError(f"coefficient {c!r} is not an integer")
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, vars) -> "LaurentPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars, c: int) -> "LaurentPoly":
        vars = vars if isinstance(vars, tuple) and all(isinstance(v, VarSpec) for v in vars) else make_vars(vars)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def one(cls, vars) -> "LaurentPoly":
        return cls.const(vars, 1)

    @classmethod
    def gen(cls, vars, name: str, power=1) -> "LaurentPoly":
        """The monomial ``name^power``; ``power`` may be rational if on the grid."""
        p = cls.one(vars)
        return p.mul_monomial(1, {name: power})

    @classmethod
    def monomial(cls, vars, coeff: int, exponents) -> "LaurentPoly":
        return cls.one(vars).mul_monomial(coeff, exponents)

    # basic predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> int:
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), 0)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    def index(self, name: str) -> int:
        for i, v in enumerate(self.vars):
            if v.name == name:
                return i
        raise VariableMismatchError(f"no variable {name!r} in {self.names}")

    def __len__(self):
        return len(self.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    # arithmetic
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise VariableMismatchError(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.vars, other)
        if isinstance(other, Fraction) and other.denominator == 1:
            return LaurentPoly.const(self.vars, other.numerator)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentPoly._raw(self.vars, out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw(self.vars, {})
            return LaurentPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        n = len(self.vars)
        if n == 1:
            for (e1,), c1 in b.items():
                for (e2,), c2 in a.items():
                    k = (e1 + e2,)
                    out[k] = get(k, 0) + c1 * c2
        elif n == 2:
            for (e1, f1), c1 in b.items():
                for (e2, f2), c2 in a.items():
                    k = (e1 + e2, f1 + f2)
                    out[k] = get(k, 0) + c1 * c2
        elif n == 3:
            for (e1, f1, g1), c1 in b.items():
                for (e2, f2, g2), c2 in a.items():
                    k = (e1 + e2, f1 + f2, g1 + g2)
                    out[k] = get(k, 0) + c1 * c2
        else:
            for e1, c1 in b.items():
                for e2, c2 in a.items():
                    k = _add_vec(e1, e2)
                    out[k] = get(k, 0) + c1 * c2
        return LaurentPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an int")
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit (a single monomial with coefficient ±1)."""
        if len(self.terms) != 1:
            raise NonInvertibleError(f"{self} is not a monomial")
        (e, c), = self.terms.items()
        if c not in (1, -1):
            raise NonInvertibleError(f"{self} has coefficient {c}, not a unit over the integers")
        return LaurentPoly._raw(self.vars, {tuple(-x for x in e): c})

    def _grid_vector(self, exponents) -> tuple[int, ...]:
        if isinstance(exponents, Mapping):
            vec = [Fraction(0)] * len(self.vars)
            for name, val in exponents.items():
                vec[self.index(name)] = _to_fraction(val)
        else:
            vec = [_to_fraction(x) for x in exponents]
            if len(vec) != len(self.vars):
                raise PolyError("exponent vector length does not match variables")
        out = []
        for v, q in zip(self.vars, vec):
            g = q * v.den
            if g.denominator != 1:
                raise OffGridError(f"exponent {q} of {v.name} is off the 1/{v.den} grid")
            out.append(int(g))
        return tuple(out)

    def mul_monomial(self, coeff: int, exponents) -> "LaurentPoly":
        """Multiply by ``coeff * prod(var^exp)``; exponents are rationals (mapping or vector)."""
        shift = self._grid_vector(exponents)
        if not coeff:
            return LaurentPoly._raw(self.vars, {})
        return LaurentPoly._raw(self.vars, {_add_vec(e, shift): c * coeff for e, c in self.terms.items()})

    def shifted(self, vec: tuple, coeff: int = 1) -> "LaurentPoly":
        """Multiply by ``coeff`` times the monomial with grid-unit exponent vector ``vec``."""
        if len(self.vars) == 2:
            a, b = vec
            return LaurentPoly._raw(self.vars, {(e0 + a, e1 + b): c * coeff for (e0, e1), c in self.terms.items()})
        return LaurentPoly._raw(self.vars, {_add_vec(e, vec): c * coeff for e, c in self.terms.items()})

    def shift(self, name: str, power) -> "LaurentPoly":
        return self.mul_monomial(1, {name: power})

    # exponent queries
    def exponents_of(self, name: str) -> list[Fraction]:
        i = self.index(name)
        den = self.vars[i].den
        return sorted({Fraction(e[i], den) for e in self.terms})

    def degree_range(self, name: str) -> tuple[Fraction, Fraction]:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        ex = self.exponents_of(name)
        return ex[0], ex[-1]

    def coefficients_in(self, name: str) -> dict[Fraction, "LaurentPoly"]:
        """Split by powers of one variable; the coefficient polys keep the full variable list."""
        i = self.index(name)
        den = self.vars[i].den
        parts: dict[Fraction, dict] = {}
        for e, c in self.terms.items():
            k = Fraction(e[i], den)
            e2 = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(k, {})[e2] = c
        return {k: LaurentPoly._raw(self.vars, d) for k, d in sorted(parts.items())}

    def variables_used(self) -> set[str]:
        used = set()
        for e in self.terms:
            for v, x in zip(self.vars, e):
                if x:
                    used.add(v.name)
        return used

    # grid / variable management
    def regrid(self, vars) -> "LaurentPoly":
        """Re-express over a variable list containing every used variable on a finer-or-equal grid."""
        vars = make_vars(vars) if not (isinstance(vars, tuple) and all(isinstance(v, VarSpec) for v in vars)) else vars
        if vars == self.vars:
            return self
        target = {v.name: (i, v.den) for i, v in enumerate(vars)}
        plan = []
        for i, v in enumerate(self.vars):
            if v.name in target:
                j, den = target[v.name]
                if den % v.den:
                    raise OffGridError(f"cannot move {v.name} from grid 1/{v.den} to 1/{den}")
                plan.append((i, j, den // v.den))
            else:
                plan.append((i, None, 0))
        out = {}
        n = len(vars)
        for e, c in self.terms.items():
            new = [0] * n
            for i, j, scale in plan:
                if j is None:
                    if e[i]:
                        raise VariableMismatchError(f"variable {self.vars[i].name} is used but absent from target")
                    continue
                new[j] = e[i] * scale
            out[tuple(new)] = c
        return LaurentPoly._raw(vars, out)

    def normalize_grid(self) -> "LaurentPoly":
        """Shrink each denominator to the smallest grid that still holds every exponent."""
        new_vars = []
        scales = []
        for i, v in enumerate(self.vars):
            g = v.den
            for e in self.terms:
                g = math.gcd(g, e[i])
                if g == 1:
                    break
            new_vars.append(VarSpec(v.name, v.den // g))
            scales.append(g)
        if all(s == 1 for s in scales):
            return self
        out = {tuple(x // s for x, s in zip(e, scales)): c for e, c in self.terms.items()}
        return LaurentPoly._raw(tuple(new_vars), out)

    # substitution
    def substitute(self, assignment: Mapping[str, "LaurentPoly | int"], target_vars=None) -> "LaurentPoly":
        return poly_substitute(self, assignment, target_vars)

    def eval_complex(self, point) -> complex:
        return poly_eval_complex(self, point)

    def evaluate(self, point: Mapping[str, object]):
        """Exact evaluation at rational points (integer exponents only for non-unit grids)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, x in zip(self.vars, e):
                if not x:
                    continue
                q = Fraction(x, v.den)
                if q.denominator != 1:
                    raise PolyError("exact evaluation needs integer exponents")
                term *= Fraction(point[v.name]) ** int(q)
            total += term
        return total

    # division
    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises NotDivisibleError if it does not exist."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            out = {}
            for e2, c2 in self.terms.items():
                q, r = divmod(c2, c)
                if r:
                    raise NotDivisibleError(f"coefficient {c2} not divisible by {c}")
                out[tuple(a - b for a, b in zip(e2, e))] = q
            return LaurentPoly._raw(self.vars, out)
        lead_q = max(other.terms)
        trail_q = min(other.terms)
        cq = other.terms[lead_q]
        if not self.terms:
            return LaurentPoly._raw(self.vars, {})
        floor = tuple(a - b for a, b in zip(min(self.terms), trail_q))
        rem = dict(self.terms)
        quot = {}
        while rem:
            lead_r = max(rem)
            e = tuple(a - b for a, b in zip(lead_r, lead_q))
            if e < floor:
                raise NotDivisibleError("remainder does not vanish")
            c, r = divmod(rem[lead_r], cq)
            if r:
                raise NotDivisibleError("non-integral quotient coefficient")
            quot[e] = c
            for e2, c2 in other.terms.items():
                k = _add_vec(e, e2)
                s = rem.get(k, 0) - c * c2
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return LaurentPoly._raw(self.vars, quot)

    # text
    def _sort_key(self, e):
        fr = [Fraction(x, v.den) for x, v in zip(e, self.vars)]
        return (sum(fr), tuple(fr))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def _monomial_text(self, e) -> str:
        parts = []
        for x, v in zip(e, self.vars):
            if not x:
                continue
            q = Fraction(x, v.den)
            if q == 1:
                parts.append(v.name)
            elif q.denominator == 1:
                parts.append(f"{v.name}^{q.numerator}")
            else:
                parts.append(f"{v.name}^{q.numerator}/{q.denominator}")
        return " ".join(parts)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self._monomial_text(e)
            out.append(f"{c} * {mono}" if mono else str(c))
        return " + ".join(out)

    def pretty(self) -> str:
        """Human-oriented rendering: ``-a^-4 - 2 a^-2 + t^2 a^-2``."""
        if not self.terms:
            return "0"
        chunks = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_text(e)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag} {mono}" if mono else str(mag))
            if k == 0:
                chunks.append(("-" if c < 0 else "") + body)
            else:
                chunks.append(f"{sign} {body}")
        return " ".join(chunks)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r}, vars={','.join(f'{v.name}:{v.den}' for v in self.vars)})"

    def to_json_obj(self) -> dict:
        return {
            "vars": [{"name": v.name, "den": v.den} for v in self.vars],
            "terms": [[list(e), c] for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        vars = tuple(VarSpec(v["name"], int(v["den"])) for v in data["vars"])
        return cls(vars, {tuple(e): int(c) for e, c in data["terms"]})

    @classmethod
    def parse(cls, text: str, vars=None) -> "LaurentPoly":
        return parse_poly(text, vars)


# ---------------------------------------------------------------- functions

def poly_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if p.vars != q.vars:
        raise VariableMismatchError(f"variable lists differ: {p.vars} vs {q.vars}")
    return p + q


def poly_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if p.vars != q.vars:
        raise VariableMismatchError(f"variable lists differ: {p.vars} vs {q.vars}")
    return p * q


def poly_mul_monomial(p: LaurentPoly, coeff: int, exponents) -> LaurentPoly:
    return p.mul_monomial(coeff, exponents)


def reduced_degree(p: LaurentPoly, var: str) -> Fraction:
    """Highest minus lowest exponent of ``var``."""
    lo, hi = p.degree_range(var)
    return hi - lo


def _union_vars(polys: Iterable[LaurentPoly], extra: Iterable[VarSpec] = ()) -> tuple[VarSpec, ...]:
    order: list[str] = []
    dens: dict[str, int] = {}
    for v in [*extra, *(v for p in polys for v in p.vars)]:
        if v.name not in dens:
            order.append(v.name)
            dens[v.name] = v.den
        else:
            dens[v.name] = math.lcm(dens[v.name], v.den)
    return tuple(VarSpec(n, dens[n]) for n in order)


def poly_substitute(p: LaurentPoly, assignment: Mapping[str, "LaurentPoly | int"], target_vars=None) -> LaurentPoly:
    """Substitute polynomials for variables.

    Unassigned variables map to themselves.  A variable that occurs with a
    negative power needs a unit image (monomial with coefficient ±1); a
    fractional power needs a monomial image with coefficient 1.  The output
    grid is the least common refinement of everything involved.
    """
    images: dict[str, LaurentPoly] = {}
    for name, img in assignment.items():
        p.index(name)
        if isinstance(img, int):
            img = LaurentPoly.const((), img)
        images[name] = img
    if target_vars is None:
        base = ()
    elif isinstance(target_vars, tuple) and all(isinstance(v, VarSpec) for v in target_vars):
        base = target_vars
    else:
        base = make_vars(target_vars)
    # collect exact rational exponent vectors, then choose the grid at the end
    img_monos: dict[str, tuple[int, dict[str, Fraction]] | None] = {}
    for name, img in images.items():
        if len(img.terms) == 1:
            (e, c), = img.terms.items()
            img_monos[name] = (c, {v.name: Fraction(x, v.den) for v, x in zip(img.vars, e) if x})
        else:
            img_monos[name] = None
    # keep p's variable order: each substituted variable is replaced in place by its image's variables
    ordered = list(base)
    for v in p.vars:
        ordered.extend(images[v.name].vars if v.name in images else (v,))
    gen_vars = _union_vars(list(images.values()), ordered)
    # polynomial images get promoted to the common variable list lazily
    work_vars = gen_vars
    promoted: dict[str, LaurentPoly] = {}
    powers: dict[tuple[str, int], LaurentPoly] = {}

    def power(name, k):
        key = (name, k)
        if key not in powers:
            if name not in promoted:
                promoted[name] = images[name].regrid(work_vars)
            powers[key] = promoted[name] ** k
        return powers[key]

    # rational exponent accumulation per term
    pending: list[tuple[int, dict[str, Fraction], list[tuple[str, int]]]] = []
    for e, c in p.terms.items():
        coeff = c
        mono: dict[str, Fraction] = {}
        polyfactors: list[tuple[str, int]] = []
        for v, x in zip(p.vars, e):
            if not x:
                continue
            q = Fraction(x, v.den)
            if v.name not in images:
                mono[v.name] = mono.get(v.name, 0) + q
                continue
            m = img_monos[v.name]
            if m is not None:
                mc, mexp = m
                if q.denominator != 1:
                    if mc != 1:
                        raise NonInvertibleError(f"fractional power of {v.name} needs an image with coefficient 1")
                    coeff_factor = 1
                else:
                    if q < 0 and mc not in (1, -1):
                        raise NonInvertibleError(f"image of {v.name} is not a unit")
                    coeff_factor = mc ** abs(int(q))
                coeff *= coeff_factor
                for n2, ex in mexp.items():
                    mono[n2] = mono.get(n2, 0) + ex * q
            else:
                if q < 0:
                    raise NonInvertibleError(f"{v.name} occurs with negative power but its image is not a unit")
                if q.denominator != 1:
                    raise NonInvertibleError(f"{v.name} occurs with fractional power but its image is not a monomial")
                polyfactors.append((v.name, int(q)))
        pending.append((coeff, mono, polyfactors))
    dens = {v.name: v.den for v in work_vars}
    for _, mono, _ in pending:
        for n2, ex in mono.items():
            dens[n2] = math.lcm(dens.get(n2, 1), ex.denominator)
    final_vars = tuple(VarSpec(v.name, dens[v.name]) for v in work_vars)
    if final_vars != work_vars:
        work_vars = final_vars
        promoted.clear()
        powers.clear()
    result = LaurentPoly.zero(work_vars)
    acc: dict = {}
    idx = {v.name: i for i, v in enumerate(work_vars)}
    for coeff, mono, polyfactors in pending:
        vec = [0] * len(work_vars)
        for n2, ex in mono.items():
            vec[idx[n2]] = int(ex * work_vars[idx[n2]].den)
        vec = tuple(vec)
        if not polyfactors:
            s = acc.get(vec, 0) + coeff
            if s:
                acc[vec] = s
            else:
                acc.pop(vec, None)
            continue
        term = LaurentPoly._raw(work_vars, {vec: coeff})
        for name, k in polyfactors:
            term = term * power(name, k)
        result = result + term
    return result + LaurentPoly._raw(work_vars, acc)


def substitute_rational(p: LaurentPoly, images: Mapping[str, tuple[LaurentPoly, LaurentPoly]], target_vars=None) -> LaurentPoly:
    """Substitute ``var -> num/den`` and divide out exactly.

    Works whenever the true result is a Laurent polynomial: both sides are
    multiplied by the product of the needed denominator powers, the cleared
    numerator is built with ordinary substitution, and an exact division
    finishes the job.  Exponents of substituted variables must be integers.
    """
    names = list(images)
    lo = {n: 0 for n in names}
    hi = {n: 0 for n in names}
    for n in names:
        ex = p.exponents_of(n) if p.terms else [Fraction(0)]
        if any(q.denominator != 1 for q in ex):
            raise NonInvertibleError(f"{n} has fractional exponents; rational substitution needs integers")
        lo[n] = min(0, int(ex[0]))
        hi[n] = max(0, int(ex[-1]))
    all_polys = [x for pair in images.values() for x in pair]
    tv = _union_vars(all_polys, [v for v in (make_vars(target_vars) if target_vars else ())] + [v for v in p.vars if v.name not in images])
    nums = {n: images[n][0].regrid(tv) for n in names}
    dens = {n: images[n][1].regrid(tv) for n in names}
    total = LaurentPoly.zero(tv)
    for e, c in p.terms.items():
        term = LaurentPoly.const(tv, c)
        mono = {}
        for v, x in zip(p.vars, e):
            if v.name in images:
                k = x // v.den
                # num^(k - lo) * den^(hi - k)
                term = term * (nums[v.name] ** (k - lo[v.name])) * (dens[v.name] ** (hi[v.name] - k))
            elif x:
                mono[v.name] = Fraction(x, v.den)
        if mono:
            term = term.mul_monomial(1, mono)
        total = total + term
    denom = LaurentPoly.one(tv)
    for n in names:
        denom = denom * (dens[n] ** hi[n]) * (nums[n] ** (-lo[n]))
    return total.divexact(denom)


def poly_eval_complex(p: LaurentPoly, point) -> complex:
    """Floating evaluation; fractional powers use the principal branch."""
    if isinstance(point, Mapping):
        vals = [complex(point[v.name]) for v in p.vars]
    else:
        vals = [complex(x) for x in point]
        if len(vals) != len(p.vars):
            raise PolyError("point dimension does not match variables")
    used_neg = set()
    for e in p.terms:
        for i, x in enumerate(e):
            if x < 0:
                used_neg.add(i)
    for i in used_neg:
        if vals[i] == 0:
            raise EvaluationAtZeroError(f"{p.vars[i].name} = 0 with a negative exponent present")
    # principal roots of each variable on its grid, then integer powers
    roots = []
    for v, val in zip(p.vars, vals):
        if v.den == 1 or val == 0:
            roots.append(val)
        else:
            roots.append(cmath.exp(cmath.log(val) / v.den))
    total = 0j
    for e, c in p.terms.items():
        term = complex(c)
        for r, x in zip(roots, e):
            if x:
                term *= r ** x
        total += term
    return total


# ---------------------------------------------------------------- parser

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


class _Parser:
    """Recursive descent parser for sums of products with implicit multiplication.

    Grammar::

        expr    := [+|-] term ((+|-) term)*
        term    := factor ([*] factor)*
        factor  := atom [^ exponent]
        atom    := integer | variable | ( expr ) | { expr } | [ expr ]
        exponent:= [-] int [/ int] | { exponent } | ( exponent )
    """

    def __init__(self, text: str, names: list[str] | None):
        self.text = text
        self.names = sorted(names, key=len, reverse=True) if names else None
        self.toks: list[tuple[str, str, int]] = []
        self._lex()
        self.i = 0

    def _lex(self):
        text = self.text
        pos = 0
        n = len(text)
        while pos < n:
            if text[pos].isspace():
                pos += 1
                continue
            ch = text[pos]
            if ch.isdigit():
                j = pos
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("int", text[pos:j], pos))
                pos = j
            elif ch.isalpha():
                if self.names:
                    for name in self.names:
                        if text.startswith(name, pos):
                            self.toks.append(("var", name, pos))
                            pos += len(name)
                            break
                    else:
                        raise PolyParseError(f"unknown variable starting with {ch!r}", text, pos)
                else:
                    self.toks.append(("var", ch, pos))
                    pos += 1
            elif ch in "+-*^/(){}[]":
                self.toks.append(("op", ch, pos))
                pos += 1
            else:
                raise PolyParseError(f"unexpected character {ch!r}", text, pos)
        self.toks.append(("end", "", n))

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            raise PolyParseError(f"expected {val!r}", self.text, t[2])
        return t

    # results are dicts: exponent-dict (frozenset of (name, Fraction)) -> int
    def parse(self):
        if self.peek()[0] == "end":
            raise PolyParseError("empty expression", self.text, 0)
        r = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise PolyParseError(f"unexpected {t[1]!r}", self.text, t[2])
        return r

    def expr(self):
        sign = 1
        t = self.peek()
        if t[1] in "+-" and t[0] == "op":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = _scale(self.term(), sign)
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                # tolerate "+ -3" as produced by the canonical printer
                s = -1 if t[1] == "-" else 1
                while self.peek()[0] == "op" and self.peek()[1] in "+-":
                    if self.take()[1] == "-":
                        s = -s
                acc = _padd(acc, _scale(self.term(), s))
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = _pmul(acc, self.factor())
            elif t[0] in ("int", "var") or (t[0] == "op" and t[1] in "({["):
                acc = _pmul(acc, self.factor())
            else:
                return acc

    def factor(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return _scale(self.factor(), -1)
        base, is_var = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            ex = self.exponent()
            if is_var:
                (k, c), = base.items()
                return {frozenset((n, e * ex) for n, e in k): c}
            if ex.denominator != 1 or ex < 0:
                if len(base) == 1 and list(base.values())[0] in (1, -1) and ex.denominator == 1:
                    (k, c), = base.items()
                    return {frozenset((n, e * ex) for n, e in k): c ** int(abs(ex))}
                raise PolyParseError("non-monomial raised to a negative or fractional power", self.text, t[2])
            out = {frozenset(): 1}
            for _ in range(int(ex)):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return {frozenset(): int(t[1])}, False
        if t[0] == "var":
            return {frozenset({(t[1], Fraction(1))}): 1}, True
        if t[0] == "op" and t[1] in "({[":
            close = {"(": ")", "{": "}", "[": "]"}[t[1]]
            r = self.expr()
            self.expect(close)
            return r, False
        raise PolyParseError(f"unexpected {t[1] or 'end of input'!r}", self.text, t[2])

    def exponent(self) -> Fraction:
        t = self.peek()
        if t[0] == "op" and t[1] in "({":
            self.take()
            close = ")" if t[1] == "(" else "}"
            val = self.exponent()
            self.expect(close)
            return val
        sign = 1
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        t = self.take()
        if t[0] != "int":
            raise PolyParseError("expected integer exponent", self.text, t[2])
        num = int(t[1])
        den = 1
        if self.peek()[0] == "op" and self.peek()[1] == "/":
            self.take()
            t2 = self.take()
            if t2[0] != "int" or int(t2[1]) == 0:
                raise PolyParseError("expected denominator", self.text, t2[2])
            den = int(t2[1])
        return Fraction(sign * num, den)


def _merge(k1, k2):
    d = dict(k1)
    for n, e in k2:
        d[n] = d.get(n, 0) + e
    return frozenset((n, e) for n, e in d.items() if e)


def _pmul(a, b):
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = _merge(k1, k2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _padd(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _scale(a, s):
    return {k: c * s for k, c in a.items()}


def parse_poly(text: str, vars=None) -> LaurentPoly:
    """Parse canonical text (``-1 * x^-1 y + 2``) or looser human input (``2a^{-2} - t^2(a+1)``).

    With ``vars`` given, the result lives over exactly that variable list;
    otherwise variables are single letters in order of first appearance and
    each grid is the smallest that fits.
    """
    if vars is not None and not (isinstance(vars, tuple) and all(isinstance(v, VarSpec) for v in vars)):
        vars = make_vars(vars)
    names = [v.name for v in vars] if vars is not None else None
    raw = _Parser(text, names).parse()
    if vars is None:
        order: list[str] = []
        for m in re.finditer(r"[A-Za-z]", text):
            if m.group(0) not in order:
                order.append(m.group(0))
        dens = {n: 1 for n in order}
        for k in raw:
            for n, e in k:
                dens[n] = math.lcm(dens[n], e.denominator)
        vars = tuple(VarSpec(n, dens[n]) for n in order)
    idx = {v.name: i for i, v in enumerate(vars)}
    terms = {}
    for k, c in raw.items():
        vec = [0] * len(vars)
        for n, e in k:
            g = e * vars[idx[n]].den
            if g.denominator != 1:
                raise OffGridError(f"exponent {e} of {n} is off the 1/{vars[idx[n]].den} grid")
            vec[idx[n]] = int(g)
        terms[tuple(vec)] = terms.get(tuple(vec), 0) + c
    return LaurentPoly(vars, terms)
