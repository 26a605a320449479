"""Exact Laurent polynomials with integer coefficients in up to two of W, B, D, x."""

from __future__ import annotations

import operator
import re
from collections.abc import Iterable, Mapping
from types import MappingProxyType
from typing import Any, Union

from mockalex.errors import PolyError


VARIABLE_ORDER = ("W", "B", "D", "x")

Exponents = tuple[int, ...]
PolyLike = Union["LaurentPoly", int]


def _canonical_variables(variables: Iterable[str]) -> tuple[str, ...]:
    names = tuple(variables)
    for name in names:
        if name not in VARIABLE_ORDER:
            raise PolyError(f"unknown variable {name!r}, expected one of {VARIABLE_ORDER}")
    if len(set(names)) != len(names):
        raise PolyError(f"duplicate variables in {names}")
    return tuple(v for v in VARIABLE_ORDER if v in names)


class LaurentPoly:
    __slots__ = ("_variables", "_terms", "_hash")

    _variables: tuple[str, ...]
    _terms: dict[Exponents, int]
    _hash: int | None

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[Exponents, int] | None = None):
        given = tuple(variables)
        canon = _canonical_variables(given)
        perm = [given.index(v) for v in canon]

        clean: dict[Exponents, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(given):
                raise PolyError(f"exponent tuple {exps} does not match variables {given}")
            try:
                coeff = operator.index(coeff)
            except TypeError:
                raise PolyError(f"coefficients must be integers, got {coeff!r}") from None
            key = tuple(operator.index(exps[i]) for i in perm)
            clean[key] = clean.get(key, 0) + coeff

        self._variables = canon
        self._terms = {k: c for k, c in clean.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponents, int]) -> LaurentPoly:
        # variables already canonical, terms already clean
        p = object.__new__(cls)
        p._variables = variables
        p._terms = {k: c for k, c in terms.items() if c != 0}
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> LaurentPoly:
        return cls(variables)

    @classmethod
    def constant(cls, value: int, variables: Iterable[str] = ()) -> LaurentPoly:
        variables = _canonical_variables(variables)
        return cls._raw(variables, {(0,) * len(variables): operator.index(value)})

    @classmethod
    def var(cls, name: str, variables: Iterable[str] | None = None) -> LaurentPoly:
        return cls.monomial(1, {name: 1}, variables)

    @classmethod
    def monomial(
        cls, coeff: int, exponents: Mapping[str, int], variables: Iterable[str] | None = None
    ) -> LaurentPoly:
        variables = _canonical_variables(exponents.keys() if variables is None else variables)
        for name in exponents:
            if name not in variables:
                raise PolyError(f"variable {name!r} not in {variables}")
        key = tuple(exponents.get(v, 0) for v in variables)
        return cls._raw(variables, {key: operator.index(coeff)})

    @property
    def variables(self) -> tuple[str, ...]:
        return self._variables

    @property
    def terms(self) -> Mapping[Exponents, int]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self._terms)

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> int:
        if not self.is_constant:
            raise PolyError(f"{self} is not a constant")
        return sum(self._terms.values())

    def coefficient(self, **exponents: int) -> int:
        key = tuple(exponents.get(v, 0) for v in self._variables)
        return self._terms.get(key, 0)

    def items(self) -> list[tuple[Exponents, int]]:
        """Terms in canonical order: decreasing exponent tuples."""
        return sorted(self._terms.items(), reverse=True)

    def exponents_of(self, name: str) -> list[int]:
        i = self._variables.index(name)
        return sorted({exps[i] for exps in self._terms})

    def max_abs_exponent(self) -> int:
        return max((abs(e) for exps in self._terms for e in exps), default=0)

    def lift(self, variables: Iterable[str]) -> LaurentPoly:
        target = _canonical_variables(variables)
        if target == self._variables:
            return self
        missing = [v for v in self._variables if v not in target]
        for v in missing:
            i = self._variables.index(v)
            if any(exps[i] for exps in self._terms):
                raise PolyError(f"cannot lift {self} into {target}: {v} is used")
        index = {v: i for i, v in enumerate(self._variables)}
        terms = {
            tuple(exps[index[v]] if v in index else 0 for v in target): c
            for exps, c in self._terms.items()
        }
        return LaurentPoly._raw(target, terms)

    def used_variables(self) -> tuple[str, ...]:
        return tuple(
            v for i, v in enumerate(self._variables) if any(exps[i] for exps in self._terms)
        )

    # ring operations

    def _coerce(self, other: Any) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self._variables)
        return None

    def _unify(self, other: LaurentPoly) -> tuple[tuple[str, ...], LaurentPoly, LaurentPoly]:
        if self._variables == other._variables:
            return self._variables, self, other
        if other.is_constant:
            return self._variables, self, other.lift(self._variables)
        if self.is_constant:
            return other._variables, self.lift(other._variables), other
        raise PolyError(
            f"variable sets differ: {self._variables} vs {other._variables}"
        )

    def __add__(self, other: PolyLike) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        variables, a, b = self._unify(o)
        terms = dict(a._terms)
        for exps, c in b._terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return LaurentPoly._raw(variables, terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self._variables, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: PolyLike) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: PolyLike) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: PolyLike) -> LaurentPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        variables, a, b = self._unify(o)
        terms: dict[Exponents, int] = {}
        for ea, ca in a._terms.items():
            for eb, cb in b._terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                terms[key] = terms.get(key, 0) + ca * cb
        return LaurentPoly._raw(variables, terms)

    __rmul__ = __mul__

    def inverse(self) -> LaurentPoly:
        """Inverse of a unit, i.e. of ±(monomial)."""
        if not self.is_monomial:
            raise PolyError(f"{self} is not invertible")
        ((exps, c),) = self._terms.items()
        if c not in (1, -1):
            raise PolyError(f"{self} is not invertible over the integers")
        return LaurentPoly._raw(self._variables, {tuple(-e for e in exps): c})

    def __pow__(self, k: int) -> LaurentPoly:
        k = operator.index(k)
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        result = LaurentPoly.constant(1, self._variables)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self._variables)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._stripped() == other._stripped()

    def _stripped(self) -> frozenset:
        return frozenset(
            (tuple((v, e) for v, e in zip(self._variables, exps) if e), c)
            for exps, c in self._terms.items()
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._stripped())
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # substitution

    def substitute(self, rules: Mapping[str, PolyLike]) -> LaurentPoly:
        """Simultaneous substitution of signed monomials (±v, ±v^-1) or constants."""
        images: dict[str, tuple[int, dict[str, int]] | int] = {}
        target_vars: set[str] = set()
        for name, target in rules.items():
            if name not in self._variables:
                raise PolyError(f"no variable {name!r} in {self._variables}")
            if isinstance(target, int):
                images[name] = target
                continue
            if target.is_constant:
                images[name] = target.constant_value()
                continue
            if not target.is_monomial:
                raise PolyError(f"substitution target {target} is not a signed monomial")
            ((exps, c),) = target._terms.items()
            powers = {v: e for v, e in zip(target._variables, exps) if e}
            if c not in (1, -1) or len(powers) != 1 or any(e not in (1, -1) for e in powers.values()):
                raise PolyError(f"substitution target {target} is not ±v or ±v^-1")
            images[name] = (c, powers)
            target_vars.update(powers)

        kept = [v for v in self._variables if v not in rules]
        result_vars = _canonical_variables(set(kept) | target_vars)
        pos = {v: i for i, v in enumerate(result_vars)}

        terms: dict[Exponents, int] = {}
        for exps, coeff in self._terms.items():
            out = [0] * len(result_vars)
            for v, e in zip(self._variables, exps):
                if v not in images:
                    out[pos[v]] += e
                    continue
                image = images[v]
                if isinstance(image, int):
                    if e < 0 and image not in (1, -1):
                        raise PolyError(f"cannot substitute {v} -> {image} into negative power")
                    coeff *= image ** abs(e)
                    continue
                sign, powers = image
                if sign < 0 and e % 2:
                    coeff = -coeff
                for w, d in powers.items():
                    out[pos[w]] += d * e
            key = tuple(out)
            terms[key] = terms.get(key, 0) + coeff
        return LaurentPoly._raw(result_vars, terms)

    def rescale(self, name: str, new_name: str, factor: int) -> LaurentPoly:
        """Replace ``name`` by ``new_name ** factor`` in a univariate polynomial."""
        if self._variables not in ((name,), ()):
            raise PolyError(f"rescale expects a polynomial in {name} only, got {self._variables}")
        if not self._variables:
            return LaurentPoly.constant(self.constant_value(), (new_name,))
        return LaurentPoly._raw(
            (new_name,), {(exps[0] * factor,): c for exps, c in self._terms.items()}
        )

    # text and json

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exps, c in self.items():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self._variables, exps) if e
            )
            magnitude = abs(c)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r}, variables={self._variables})"

    @classmethod
    def from_text(cls, text: str, variables: Iterable[str] | None = None) -> LaurentPoly:
        parsed = _parse(text)
        used = {v for mono, _ in parsed for v, _ in mono}
        names = _canonical_variables(used if variables is None else variables)
        for v in used:
            if v not in names:
                raise PolyError(f"variable {v!r} in {text!r} not in {names}")
        terms: dict[Exponents, int] = {}
        for mono, coeff in parsed:
            exps = [0] * len(names)
            for v, e in mono:
                exps[names.index(v)] += e
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + coeff
        return cls._raw(names, terms)

    def to_json(self) -> list[dict[str, Any]]:
        return [{"exponents": list(exps), "coeff": c} for exps, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping[str, Any]], variables: Iterable[str]) -> LaurentPoly:
        return cls(variables, {tuple(t["exponents"]): t["coeff"] for t in data})


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z])|(?P<op>[-+*^]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise PolyError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        assert kind is not None
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


def _parse(text: str) -> list[tuple[list[tuple[str, int]], int]]:
    tokens = _tokenize(text)
    if not tokens:
        raise PolyError("empty polynomial text")
    pos = 0

    def peek() -> tuple[str, str] | None:
        return tokens[pos] if pos < len(tokens) else None

    def take(kind: str, value: str | None = None) -> str:
        nonlocal pos
        tok = peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            raise PolyError(f"malformed polynomial {text!r} near token {pos}")
        pos += 1
        return tok[1]

    def factor() -> tuple[int, list[tuple[str, int]]]:
        tok = peek()
        if tok is not None and tok[0] == "num":
            return int(take("num")), []
        name = take("name")
        exp = 1
        nxt = peek()
        if nxt == ("op", "^"):
            take("op", "^")
            sign = 1
            if peek() == ("op", "-"):
                take("op", "-")
                sign = -1
            exp = sign * int(take("num"))
        return 1, [(name, exp)]

    def term() -> tuple[int, list[tuple[str, int]]]:
        coeff, mono = factor()
        while peek() == ("op", "*"):
            take("op", "*")
            c, m = factor()
            coeff *= c
            mono += m
        return coeff, mono

    result = []
    sign = 1
    if peek() in (("op", "-"), ("op", "+")):
        sign = -1 if take("op") == "-" else 1
    while True:
        coeff, mono = term()
        result.append((mono, sign * coeff))
        tok = peek()
        if tok is None:
            break
        if tok not in (("op", "-"), ("op", "+")):
            raise PolyError(f"malformed polynomial {text!r} near token {pos}")
        sign = -1 if take("op") == "-" else 1
    return result


def var(name: str) -> LaurentPoly:
    return LaurentPoly.var(name)


def conway_z() -> LaurentPoly:
    """z = W - W^-1."""
    w = LaurentPoly.var("W")
    return w - w ** -1


def _univariate(p: LaurentPoly) -> tuple[str | None, dict[int, int]]:
    used = p.used_variables()
    if len(used) > 1:
        raise PolyError(f"expected a univariate polynomial, got {p}")
    if not used:
        return None, {0: p.constant_value()} if p else {}
    i = p.variables.index(used[0])
    return used[0], {exps[i]: c for exps, c in p.terms.items()}


def decompose_symmetric(p: LaurentPoly, window: int | None = None) -> LaurentPoly | None:
    """Find q with p(W) = q(W) + q(-W^-1), q supported in [-window, window].

    Such q exists iff the constant term is even and p_{-k} = (-1)^k p_k for
    every k > 0; the witness splits each symmetric pair, rounding up.
    """
    name, coeffs = _univariate(p)
    if name not in (None, "W"):
        raise PolyError(f"decompose_symmetric expects a polynomial in W, got {p}")
    if window is None:
        window = max((abs(e) for e in coeffs), default=0) + 2
    if any(abs(e) > window for e in coeffs):
        return None
    p0 = coeffs.get(0, 0)
    if p0 % 2:
        return None
    q = {0: p0 // 2}
    for k in range(1, window + 1):
        pk = coeffs.get(k, 0)
        if coeffs.get(-k, 0) != (-1) ** k * pk:
            return None
        qk = -(-pk // 2)
        q[k] = qk
        q[-k] = (-1) ** k * (pk - qk)
    return LaurentPoly(("W",), {(e,): c for e, c in q.items()})


def symmetrize(q: LaurentPoly) -> LaurentPoly:
    """q(W) + q(-W^-1)."""
    w = LaurentPoly.var("W")
    if not q.used_variables():
        return LaurentPoly.constant(2 * q.constant_value(), ("W",))
    return q + q.substitute({"W": -(w ** -1)})


def unit_normalize(p: LaurentPoly) -> LaurentPoly:
    """Representative of p up to multiplication by ±v^k.

    The lowest exponent becomes 0 and the leading coefficient positive.
    """
    name, coeffs = _univariate(p)
    if not coeffs:
        return p
    if name is None:
        return LaurentPoly.constant(abs(coeffs[0]), p.variables)
    low = min(coeffs)
    high = max(coeffs)
    sign = -1 if coeffs[high] < 0 else 1
    return LaurentPoly((name,), {(e - low,): sign * c for e, c in coeffs.items()})


def doteq(a: LaurentPoly, b: LaurentPoly) -> bool:
    return unit_normalize(a) == unit_normalize(b)


def divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient a / b of univariate Laurent polynomials over the integers."""
    if b.is_zero:
        raise PolyError("division by zero")
    if a.is_zero:
        return a
    name_a, num_coeffs = _univariate(a)
    name_b, den_coeffs = _univariate(b)
    if name_a and name_b and name_a != name_b:
        raise PolyError(f"cannot divide {a} by {b}: different variables")
    name = name_a or name_b

    low_a, low_b = min(num_coeffs), min(den_coeffs)
    num = [num_coeffs.get(low_a + i, 0) for i in range(max(num_coeffs) - low_a + 1)]
    den = [den_coeffs.get(low_b + i, 0) for i in range(max(den_coeffs) - low_b + 1)]
    if len(num) < len(den):
        raise PolyError(f"{a} is not divisible by {b}")

    quotient = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    lead = den[-1]
    for i in range(len(quotient) - 1, -1, -1):
        c = rem[i + len(den) - 1]
        if c % lead:
            raise PolyError(f"{a} is not divisible by {b}")
        qc = c // lead
        quotient[i] = qc
        if qc:
            for j, d in enumerate(den):
                rem[i + j] -= qc * d
    if any(rem):
        raise PolyError(f"{a} is not divisible by {b}")

    shift = low_a - low_b
    if name is None:
        return LaurentPoly.constant(quotient[0], a.variables)
    return LaurentPoly((name,), {(shift + i,): c for i, c in enumerate(quotient)})
