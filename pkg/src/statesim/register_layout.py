"""
Named qubit registers over a dense amplitude vector.

Qubit ordering (the single source of truth for all index arithmetic):
registers are laid out in declaration order, register-major, and inside a
register the most significant qubit comes first. A basis state with raw
register values (r_0, ..., r_{k-1}) of widths (w_0, ..., w_{k-1}) therefore
has flat index

    r_0 * 2^(w_1 + ... + w_{k-1}) + ... + r_{k-2} * 2^(w_{k-1}) + r_{k-1},

which is exactly C-order when the amplitude vector is reshaped to
(2^w_0, ..., 2^w_{k-1}). Reading the register bits left to right gives the
|010.110> notation used in logs.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from src.environment_loader import EnvironmentLoader
from src.errors import SimulationCapError


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered (name, width) registers with a dense-simulation qubit cap.

    Attributes:
        registers: (name, width) pairs in qubit order.
        max_qubits: Hard cap on total_qubits. Defaults to QROOT_MAX_QUBITS (26).
    """
    registers: Tuple[Tuple[str, int], ...]
    max_qubits: Optional[int] = None

    def __post_init__(self):
        registers = tuple((str(name), int(width)) for name, width in self.registers)
        object.__setattr__(self, "registers", registers)
        if self.max_qubits is None:
            object.__setattr__(self, "max_qubits", EnvironmentLoader.max_qubits())
        names = [name for name, _ in registers]
        if len(set(names)) != len(names):
            raise ValueError(f"register names must be unique, got {names}")
        for name, width in registers:
            if width < 1:
                raise ValueError(f"register {name!r} must have width >= 1, got {width}")
        if self.total_qubits > self.max_qubits:
            raise SimulationCapError(
                f"layout needs {self.total_qubits} qubits, above the dense-simulation cap of {self.max_qubits}"
            )

    @classmethod
    def of(cls, *registers: Tuple[str, int], max_qubits: Optional[int] = None) -> "RegisterLayout":
        return cls(tuple(registers), max_qubits)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.registers)

    @property
    def total_qubits(self) -> int:
        return sum(width for _, width in self.registers)

    @property
    def dimension(self) -> int:
        return 2 ** self.total_qubits

    @property
    def shape(self) -> Tuple[int, ...]:
        """Per-register axis lengths for the C-order tensor view."""
        return tuple(2 ** width for _, width in self.registers)

    def axis(self, name: str) -> int:
        for position, (register, _) in enumerate(self.registers):
            if register == name:
                return position
        raise ValueError(f"unknown register {name!r}; layout has {list(self.names)}")

    def width(self, name: str) -> int:
        return self.registers[self.axis(name)][1]

    def check_names(self, names: Iterable[str]) -> Tuple[str, ...]:
        names = tuple(names)
        for name in names:
            self.axis(name)
        return names

    def sub_layout(self, names: Sequence[str]) -> "RegisterLayout":
        """Layout of the named registers, in the order given."""
        return RegisterLayout(tuple((name, self.width(name)) for name in names), self.max_qubits)

    def flat_index(self, values: Dict[str, int]) -> int:
        """Flat amplitude index of the basis state; registers missing from `values` are 0."""
        index = 0
        for name, width in self.registers:
            raw = values.get(name, 0)
            if not 0 <= raw < 2 ** width:
                raise ValueError(f"value {raw} does not fit register {name!r} of width {width}")
            index = (index << width) | raw
        return index

    def register_values(self, flat_index: int) -> Dict[str, int]:
        """Inverse of flat_index."""
        if not 0 <= flat_index < self.dimension:
            raise ValueError(f"flat index {flat_index} out of range for {self.total_qubits} qubits")
        values = {}
        for name, width in reversed(self.registers):
            values[name] = flat_index & (2 ** width - 1)
            flat_index >>= width
        return {name: values[name] for name in self.names}
