"""Phase-tracked Pauli-string algebra over M qubits.

Strings are stored in symplectic form as a pair of bitmasks ``(x_mask,
z_mask)`` held in arbitrary-precision Python ints.  Bit ``q`` of ``x_mask``
is set when the operator on qubit ``q`` has an X component (X or Y), bit
``q`` of ``z_mask`` when it has a Z component (Z or Y):

    (x, z) = (0, 0) -> I    (1, 0) -> X
    (0, 1) -> Z             (1, 1) -> Y

Textual form puts qubit 0 leftmost, e.g. ``"ZXII"`` acts with Z on qubit 0
and X on qubit 1.
"""

from __future__ import annotations

from dataclasses import dataclass

_LETTERS = "IXZY"  # indexed by x + 2*z


class PauliError(ValueError):
    """Raised for malformed Pauli strings or dimension mismatches."""


@dataclass(frozen=True, slots=True)
class Phase:
    """A global phase i**k with k tracked exactly mod 4."""

    power_of_i: int

    def __post_init__(self):
        object.__setattr__(self, "power_of_i", self.power_of_i % 4)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.power_of_i + other.power_of_i)

    @property
    def value(self) -> complex:
        return (1, 1j, -1, -1j)[self.power_of_i]


@dataclass(frozen=True, slots=True)
class PauliString:
    """An M-qubit Pauli word in symplectic two-bitmask form."""

    n_qubits: int
    x_mask: int
    z_mask: int

    def __post_init__(self):
        full = (1 << self.n_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise PauliError("mask has bits beyond n_qubits")

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse an uppercase IXYZ string, leftmost character = qubit 0."""
        x = z = 0
        for q, ch in enumerate(label):
            if ch == "I":
                continue
            if ch == "X":
                x |= 1 << q
            elif ch == "Z":
                z |= 1 << q
            elif ch == "Y":
                x |= 1 << q
                z |= 1 << q
            else:
                raise PauliError(f"invalid Pauli letter {ch!r} at position {q}")
        return cls(len(label), x, z)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str) -> "PauliString":
        """One non-identity letter at ``qubit``, identity elsewhere."""
        if not 0 <= qubit < n_qubits:
            raise PauliError(f"qubit {qubit} out of range for {n_qubits} qubits")
        bit = 1 << qubit
        if letter == "X":
            return cls(n_qubits, bit, 0)
        if letter == "Y":
            return cls(n_qubits, bit, bit)
        if letter == "Z":
            return cls(n_qubits, 0, bit)
        raise PauliError(f"invalid Pauli letter {letter!r}")

    def to_label(self) -> str:
        out = []
        for q in range(self.n_qubits):
            x = (self.x_mask >> q) & 1
            z = (self.z_mask >> q) & 1
            out.append(_LETTERS[x + 2 * z])
        return "".join(out)

    def letter(self, qubit: int) -> str:
        x = (self.x_mask >> qubit) & 1
        z = (self.z_mask >> qubit) & 1
        return _LETTERS[x + 2 * z]

    def weight(self) -> int:
        """Number of qubits acted on non-trivially."""
        return (self.x_mask | self.z_mask).bit_count()

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def _check_same_size(self, other: "PauliString"):
        if self.n_qubits != other.n_qubits:
            raise PauliError(
                f"dimension mismatch: {self.n_qubits} vs {other.n_qubits} qubits"
            )

    def nto(self, other: "PauliString") -> int:
        """Count non-trivial overlaps: qubits where both act and differ."""
        self._check_same_size(other)
        both = (self.x_mask | self.z_mask) & (other.x_mask | other.z_mask)
        differ = (self.x_mask ^ other.x_mask) | (self.z_mask ^ other.z_mask)
        return (both & differ).bit_count()

    def anticommutes(self, other: "PauliString") -> bool:
        """True iff the number of non-trivial overlaps is odd.

        Equivalent to the symplectic product x1.z2 + z1.x2 being odd.
        """
        self._check_same_size(other)
        return (
            (self.x_mask & other.z_mask).bit_count()
            + (self.z_mask & other.x_mask).bit_count()
        ) % 2 == 1

    def multiply(self, other: "PauliString") -> tuple[Phase, "PauliString"]:
        """Product self * other with the exact global phase i**k.

        The result masks are the XOR of the input masks; the phase
        accumulates one factor of +/-i per qubit where the letters
        multiply to the third one (XY = iZ, YZ = iX, ZX = iY and the
        reversed orders give -i).
        """
        self._check_same_size(other)
        x1, z1, x2, z2 = self.x_mask, self.z_mask, other.x_mask, other.z_mask
        # cyclic (X->Y->Z->X) products pick up +i, anticyclic -i
        plus = (
            ((x1 & ~z1) & (x2 & z2))    # X*Y
            | ((x1 & z1) & (~x2 & z2))  # Y*Z
            | ((~x1 & z1) & (x2 & ~z2))  # Z*X
        )
        minus = (
            ((x1 & z1) & (x2 & ~z2))    # Y*X
            | ((~x1 & z1) & (x2 & z2))  # Z*Y
            | ((x1 & ~z1) & (~x2 & z2))  # X*Z
        )
        k = plus.bit_count() - minus.bit_count()
        return Phase(k), PauliString(self.n_qubits, x1 ^ x2, z1 ^ z2)

    def zeros_state_eigenvalue(self) -> int:
        """Eigenvalue of this string on |0...0>, or 0 if not an eigenstate.

        Only {I,Z} strings have the all-zeros state as an eigenstate, with
        eigenvalue +1.
        """
        if self.x_mask:
            return 0
        return 1

    def __str__(self) -> str:
        return self.to_label()


def multiply(a: PauliString, b: PauliString) -> tuple[Phase, PauliString]:
    return a.multiply(b)


def nto(a: PauliString, b: PauliString) -> int:
    return a.nto(b)


def anticommutes(a: PauliString, b: PauliString) -> bool:
    return a.anticommutes(b)


def weight(s: PauliString) -> int:
    return s.weight()


def product_of(strings: list[PauliString]) -> tuple[Phase, PauliString]:
    """Left-to-right phase-tracked product of a non-empty string list."""
    if not strings:
        raise PauliError("empty product")
    phase = Phase(0)
    acc = strings[0]
    for s in strings[1:]:
        p, acc = acc.multiply(s)
        phase = phase * p
    return phase, acc
