"""Named gates, their qudit generalizations, and the gate-expression grammar.

Expression syntax (used by the command-line front end and the demos):

    atom     := I | X | Y | Z | H | S | T | CZ | CNOT | W[label] |
                exp(i*PHASE) | ( expr )
    postfix  := atom "'"*                # adjoint binds tightest
    tensored := postfix (("x" | "@" | "#") postfix)*   # unicode tensor sign also works
    expr     := tensored ("*" tensored)*               # matrix product binds loosest

W labels are written u_1,..,u_n;v_1,..,v_n (a bare pair u,v means one qudit).
PHASE is a signed literal like 0.25, pi, pi/4, 3*pi/4. For d != 2 only the
I, X, Z and W atoms are defined.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .galois import SympVector, check_prime
from .matcore import Unitary, identity
from .pauligroup import omega, weyl_matrix

__all__ = [
    "ParseError",
    "pauli_x",
    "pauli_y",
    "pauli_z",
    "hadamard",
    "phase_s",
    "t_gate",
    "cz_gate",
    "cnot_gate",
    "fourier_gate",
    "phase_gate",
    "named_gate",
    "parse_gate",
]

_SQRT2 = math.sqrt(2.0)


class ParseError(ValueError):
    """A gate expression failed to parse or used an undefined token."""


def pauli_x(d: int = 2) -> Unitary:
    """Cyclic shift |j> -> |j+1> (the X of the Weyl pair)."""
    return weyl_matrix(SympVector((0,), (1,), d))


def pauli_z(d: int = 2) -> Unitary:
    """Phase operator |j> -> omega^j |j> (the Z of the Weyl pair)."""
    return weyl_matrix(SympVector((1,), (0,), d))


def pauli_y() -> Unitary:
    return weyl_matrix(SympVector((1,), (1,), 2))


def hadamard() -> Unitary:
    return Unitary(np.array([[1, 1], [1, -1]]) / _SQRT2, 1, 2)


def phase_s() -> Unitary:
    return Unitary(np.diag([1, 1j]), 1, 2)


def t_gate() -> Unitary:
    return Unitary(np.diag([1, np.exp(1j * np.pi / 4)]), 1, 2)


def cz_gate() -> Unitary:
    return Unitary(np.diag([1, 1, 1, -1]), 2, 2)


def cnot_gate() -> Unitary:
    m = np.eye(4)
    m[[2, 3]] = m[[3, 2]]
    return Unitary(m, 2, 2)


def fourier_gate(d: int) -> Unitary:
    """Discrete-Fourier gate F[k, j] = omega^{jk} / sqrt(d); equals H at d = 2."""
    check_prime(d)
    j = np.arange(d)
    return Unitary(omega(d) ** np.outer(j, j) / np.sqrt(d), 1, d)


def phase_gate(d: int) -> Unitary:
    """Quadratic phase gate: diag(1, i) at d = 2, diag(omega^{j(j+1)/2}) otherwise.

    Conjugates the shift X to (a phase times) ZX, so it normalizes the Weyl
    group; together with the Fourier gate and the Weyl pair it generates the
    full single-qudit Clifford group.
    """
    check_prime(d)
    if d == 2:
        return phase_s()
    j = np.arange(d)
    return Unitary(np.diag(omega(d) ** (j * (j + 1) // 2)), 1, d)


_QUBIT_GATES = {
    "I": lambda: identity(1, 2),
    "X": lambda: pauli_x(2),
    "Y": pauli_y,
    "Z": lambda: pauli_z(2),
    "H": hadamard,
    "S": phase_s,
    "T": t_gate,
    "CZ": cz_gate,
    "CNOT": cnot_gate,
}

_QUDIT_GATES = {"I", "X", "Z"}  # beyond these, qudit atoms come from W[...]


def named_gate(name: str, d: int = 2) -> Unitary:
    if d == 2:
        if name in _QUBIT_GATES:
            return _QUBIT_GATES[name]()
    elif name in _QUDIT_GATES:
        if name == "I":
            return identity(1, d)
        return pauli_x(d) if name == "X" else pauli_z(d)
    raise ParseError(f"gate {name!r} is not defined for d={d}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<exp>exp\()|(?P<name>[A-Z]+)|(?P<lbracket>\[)|(?P<op>['*()]|x|⊗))"
)
_PHASE_RE = re.compile(r"(?P<sign>[+-]?)\s*(?P<body>[0-9.]+|pi)(\s*\*\s*pi)?(\s*/\s*(?P<den>[0-9.]+))?\s*$")


def _parse_phase(text: str) -> float:
    """Parse the PHASE sublanguage: [-]lit, [-]lit*pi, [-]pi/lit, [-]lit*pi/lit."""
    m = _PHASE_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad phase expression {text!r}")
    body = m.group("body")
    value = math.pi if body == "pi" else float(body)
    if m.group(3):  # the "*pi" group
        value *= math.pi
    if m.group("den"):
        value /= float(m.group("den"))
    return -value if m.group("sign") == "-" else value


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        m = _TOKEN_RE.match(self.text, self.pos)
        if m is None:
            rest = self.text[self.pos :].strip()
            if rest:
                raise ParseError(f"unexpected input at {rest[:12]!r}")
            return None, None
        kind = m.lastgroup
        return kind, m

    def take(self):
        kind, m = self.peek()
        if m is not None:
            self.pos = m.end()
        return kind, m

    def expect_char(self, ch: str):
        stripped = self.text[self.pos :].lstrip()
        if not stripped.startswith(ch):
            raise ParseError(f"expected {ch!r} near {stripped[:12]!r}")
        self.pos = len(self.text) - len(stripped) + 1

    def take_until(self, ch: str) -> str:
        end = self.text.find(ch, self.pos)
        if end < 0:
            raise ParseError(f"missing closing {ch!r}")
        out = self.text[self.pos : end]
        self.pos = end + 1
        return out


def _parse_weyl_label(body: str, d: int) -> SympVector:
    parts = body.split(";")
    try:
        if len(parts) == 2:
            u = tuple(int(x) for x in parts[0].split(","))
            v = tuple(int(x) for x in parts[1].split(","))
        elif len(parts) == 1:
            entries = [int(x) for x in parts[0].split(",")]
            if len(entries) != 2:
                raise ValueError("bare labels must be a u,v pair")
            u, v = (entries[0],), (entries[1],)
        else:
            raise ValueError("too many ';'")
        return SympVector(u, v, d)
    except ValueError as exc:
        raise ParseError(f"bad Weyl label [{body}]: {exc}") from exc


# Parser values are (scalar, op): scalars collect phase factors until they
# can be attached to an actual gate.


def _parse_atom(toks: _Tokens, d: int):
    kind, m = toks.take()
    if kind == "exp":
        body = toks.take_until(")")
        if not body.startswith("i*"):
            raise ParseError(f"phase factors must look like exp(i*theta), got exp({body})")
        return complex(np.exp(1j * _parse_phase(body[2:]))), None
    if kind == "name":
        name = m.group("name")
        if name == "W":
            nxt_kind, _ = toks.peek()
            if nxt_kind != "lbracket":
                raise ParseError("W needs a label, e.g. W[1;0]")
            toks.take()
            label = _parse_weyl_label(toks.take_until("]"), d)
            return 1 + 0j, weyl_matrix(label)
        return 1 + 0j, named_gate(name, d)
    if kind == "op" and m.group("op") == "(":
        value = _parse_product(toks, d)
        kind2, m2 = toks.take()
        if kind2 != "op" or m2.group("op") != ")":
            raise ParseError("missing closing ')'")
        return value
    raise ParseError(f"expected a gate near {toks.text[toks.pos:][:12]!r}")


def _parse_postfix(toks: _Tokens, d: int):
    scalar, op = _parse_atom(toks, d)
    while True:
        kind, m = toks.peek()
        if kind == "op" and m.group("op") == "'":
            toks.take()
            scalar = scalar.conjugate()
            op = op.adjoint().as_unitary() if op is not None else None
        else:
            return scalar, op


def _parse_tensor(toks: _Tokens, d: int):
    scalar, op = _parse_postfix(toks, d)
    while True:
        kind, m = toks.peek()
        if kind == "op" and m.group("op") in ("x", "⊗"):
            toks.take()
            s2, op2 = _parse_postfix(toks, d)
            scalar *= s2
            if op is None:
                op = op2
            elif op2 is not None:
                op = op.tensor(op2).as_unitary()
        else:
            return scalar, op


def _parse_product(toks: _Tokens, d: int):
    scalar, op = _parse_tensor(toks, d)
    while True:
        kind, m = toks.peek()
        if kind == "op" and m.group("op") == "*":
            toks.take()
            s2, op2 = _parse_tensor(toks, d)
            scalar *= s2
            if op is None:
                op = op2
            elif op2 is not None:
                if (op.n, op.d) != (op2.n, op2.d):
                    raise ParseError(
                        f"product of mismatched gates: n={op.n} vs n={op2.n}"
                    )
                op = (op @ op2).as_unitary()
        else:
            return scalar, op


def parse_gate(source: str, d: int = 2) -> Unitary:
    """Parse a gate expression into a certified Unitary."""
    check_prime(d)
    toks = _Tokens(source)
    scalar, op = _parse_product(toks, d)
    kind, _ = toks.peek()
    if kind is not None:
        raise ParseError(f"trailing input at {source[toks.pos:][:12]!r}")
    if op is None:
        raise ParseError("expression contains no gate, only phase factors")
    if abs(abs(scalar) - 1.0) > 1e-12:
        raise ParseError(f"phase factor must be unimodular, got |{scalar}|")
    return Unitary(scalar * op.mat, op.n, op.d)
