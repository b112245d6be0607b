"""Sparse multivariate polynomials over canonical phase-space variables.

Coefficients are exact: ``fractions.Fraction`` by default, or sympy
expressions (rational functions of scalar symbols such as G, K, hbar) in
symbolic mode. Variables come in canonical pairs: the first half of
``variables`` are coordinates, the second half their conjugate momenta.
"""

import ast
from fractions import Fraction
from numbers import Rational

import sympy

PHASE_VARIABLES = ("x1", "x2", "p1", "p2")
REDUCED_VARIABLES = ("x", "p")

#: scalar symbols recognised by the parser in symbolic mode
SYMBOLS = {
    name: sympy.Symbol(name, positive=True) for name in ("G", "K", "hbar", "E")
}


def _is_symbolic(c):
    return isinstance(c, sympy.Basic)


def coerce(c):
    """Bring a scalar into the coefficient field."""
    if _is_symbolic(c):
        c = sympy.cancel(sympy.sympify(c))
        if c.is_Rational:
            return Fraction(int(c.p), int(c.q))
        return c
    if isinstance(c, Rational):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(repr(c))
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _to_sympy(c):
    if isinstance(c, Fraction):
        return sympy.Rational(c.numerator, c.denominator)
    return c


def _add(a, b):
    if _is_symbolic(a) or _is_symbolic(b):
        return coerce(_to_sympy(a) + _to_sympy(b))
    return a + b


def _mul(a, b):
    if _is_symbolic(a) or _is_symbolic(b):
        return coerce(_to_sympy(a) * _to_sympy(b))
    return a * b


def _is_zero(c):
    return c == 0


class PhasePolynomial:
    """Immutable polynomial: a map from exponent tuples to coefficients."""

    __slots__ = ("_terms", "variables")

    def __init__(self, terms=None, variables=PHASE_VARIABLES):
        if len(variables) % 2:
            raise ValueError("variables must come in canonical pairs")
        self.variables = tuple(variables)
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.variables) or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent tuple {exps}")
            c = coerce(coeff)
            if exps in clean:
                c = _add(clean[exps], c)
            if _is_zero(c):
                clean.pop(exps, None)
            else:
                clean[exps] = c
        self._terms = clean

    # construction helpers

    @classmethod
    def var(cls, name, variables=PHASE_VARIABLES):
        exps = tuple(int(v == name) for v in variables)
        if sum(exps) != 1:
            raise ValueError(f"unknown variable {name!r}")
        return cls({exps: 1}, variables)

    @classmethod
    def const(cls, value, variables=PHASE_VARIABLES):
        return cls({(0,) * len(variables): value}, variables)

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def n_dof(self):
        return len(self.variables) // 2

    def _wrap(self, other):
        if isinstance(other, PhasePolynomial):
            if other.variables != self.variables:
                raise ValueError("polynomials over different variables")
            return other
        return PhasePolynomial.const(other, self.variables)

    # ring operations

    def __add__(self, other):
        other = self._wrap(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = _add(out[e], c) if e in out else c
        return PhasePolynomial(out, self.variables)

    __radd__ = __add__

    def __neg__(self):
        return PhasePolynomial({e: _mul(c, -1) for e, c in self._terms.items()},
                               self.variables)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = _mul(c1, c2)
                out[e] = _add(out[e], c) if e in out else c
        return PhasePolynomial(out, self.variables)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, PhasePolynomial):
            if not scalar.is_constant():
                raise ZeroDivisionError("division by a non-constant polynomial")
            scalar = scalar.constant_term()
        scalar = coerce(scalar)
        if _is_zero(scalar):
            raise ZeroDivisionError("division by zero")
        inv = coerce(1 / _to_sympy(scalar)) if _is_symbolic(scalar) else 1 / scalar
        return self * inv

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = PhasePolynomial.const(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, PhasePolynomial):
            try:
                other = self._wrap(other)
            except (TypeError, ValueError):
                return NotImplemented
        if other.variables != self.variables:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    # inspection

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self):
        return max((sum(e) for e in self._terms), default=0)

    def coefficient(self, **powers):
        """Coefficient of a monomial, e.g. ``coefficient(x1=2)``."""
        exps = tuple(powers.get(v, 0) for v in self.variables)
        return self._terms.get(exps, Fraction(0))

    def is_symbolic(self):
        return any(_is_symbolic(c) for c in self._terms.values())

    # calculus

    def diff(self, name):
        k = self.variables.index(name)
        out = {}
        for e, c in self._terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = _mul(c, e[k])
        return PhasePolynomial(out, self.variables)

    def substitute(self, mapping, variables=None):
        """Replace variables by polynomials (over ``variables``)."""
        variables = tuple(variables or self.variables)
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, PhasePolynomial):
                    img = PhasePolynomial.const(img, variables)
            elif v in variables:
                img = PhasePolynomial.var(v, variables)
            else:
                raise ValueError(f"no image for variable {v!r}")
            images.append(img)
        total = PhasePolynomial({}, variables)
        for e, c in self._terms.items():
            term = PhasePolynomial.const(c, variables)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            total = total + term
        return total

    def subs_scalars(self, **values):
        """Specialize symbolic coefficients, e.g. ``subs_scalars(G=2)``."""
        table = {SYMBOLS[k]: _to_sympy(coerce(v)) for k, v in values.items()}
        out = {}
        for e, c in self._terms.items():
            out[e] = c.subs(table) if _is_symbolic(c) else c
        return PhasePolynomial(out, self.variables)

    # printing

    def _sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), tuple(-k for k in kv[0])))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}**{k}"
                for v, k in zip(self.variables, e) if k
            )
            sign, body = _format_coeff(c, bool(mono))
            text = body if not mono else (mono if body == "" else f"{body}*{mono}")
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign < 0 else "") + first
        for sign, text in parts[1:]:
            out += (" - " if sign < 0 else " + ") + text
        return out

    def __repr__(self):
        return f"PhasePolynomial({str(self)!r})"


def _format_coeff(c, has_monomial):
    """(sign, text); text is '' for a unit coefficient on a monomial."""
    if isinstance(c, Fraction):
        sign = -1 if c < 0 else 1
        a = abs(c)
        if a == 1 and has_monomial:
            return sign, ""
        if a.denominator == 1:
            return sign, str(a.numerator)
        return sign, f"({a.numerator}/{a.denominator})"
    # symbolic: pull out a leading minus so the printed form re-parses cleanly
    if c.could_extract_minus_sign():
        return -1, f"({sympy.sstr(-c)})"
    return 1, f"({sympy.sstr(c)})"


def parse_polynomial(text, variables=PHASE_VARIABLES, scalars=None, symbolic=False):
    """Parse a polynomial literal such as ``"p1 + (G/2)*x2"``.

    Names in ``variables`` are phase-space variables. Other names are looked
    up in ``scalars``; in symbolic mode unknown names G, K, hbar, E become
    sympy symbols. Decimal literals are read exactly.
    """
    scalars = dict(scalars or {})
    tree = ast.parse(text.strip(), mode="eval")

    def const(v):
        return PhasePolynomial.const(v, variables)

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            literal = ast.get_source_segment(text.strip(), node)
            return const(Fraction(literal) if literal else Fraction(repr(node.value)))
        if isinstance(node, ast.Name):
            name = node.id
            if name in variables:
                return PhasePolynomial.var(name, variables)
            if name in scalars:
                return const(scalars[name])
            if symbolic and name in SYMBOLS:
                return const(SYMBOLS[name])
            raise ValueError(f"unknown name {name!r} in polynomial literal")
        if isinstance(node, ast.UnaryOp):
            operand = walk(node.operand)
            if isinstance(node.op, ast.USub):
                return -operand
            if isinstance(node.op, ast.UAdd):
                return operand
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
            if isinstance(node.op, ast.Pow):
                if not right.is_constant():
                    raise ValueError("exponent must be a constant")
                n = right.constant_term()
                if not (isinstance(n, Fraction) and n.denominator == 1 and n >= 0):
                    raise ValueError("exponent must be a non-negative integer")
                return left ** int(n)
        raise ValueError(f"unsupported syntax in polynomial literal: {ast.dump(node)}")

    return walk(tree)


def phase_variables(variables=PHASE_VARIABLES):
    """Tuple of the variables as polynomials, in order."""
    return tuple(PhasePolynomial.var(v, variables) for v in variables)


def poisson(a, b):
    """Canonical Poisson bracket Σ_i (∂a/∂q_i ∂b/∂p_i - ∂a/∂p_i ∂b/∂q_i)."""
    if a.variables != b.variables:
        raise ValueError("polynomials over different variables")
    n = a.n_dof
    qs, ps = a.variables[:n], a.variables[n:]
    total = PhasePolynomial({}, a.variables)
    for q, p in zip(qs, ps):
        total = total + a.diff(q) * b.diff(p) - a.diff(p) * b.diff(q)
    return total
