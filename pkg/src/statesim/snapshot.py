"""
Binary state snapshots for test fixtures.

Layout (all integers little-endian), documented in docs/state_snapshot_format.md:

    magic        4 bytes  b"QSV1"
    count        uint32   number of registers
    per register uint16 name length, UTF-8 name, uint16 width
    amplitudes   2^total_qubits complex128 values ('<c16')
"""

import struct
from pathlib import Path
from typing import Union

import numpy as np

from src.statesim.quantum_state import QuantumState
from src.statesim.register_layout import RegisterLayout

MAGIC = b"QSV1"


def save_snapshot(state: QuantumState, path: Union[str, Path]) -> None:
    header = [MAGIC, struct.pack("<I", len(state.layout.registers))]
    for name, width in state.layout.registers:
        encoded = name.encode("utf-8")
        header.append(struct.pack("<H", len(encoded)) + encoded + struct.pack("<H", width))
    with open(path, "wb") as handle:
        handle.write(b"".join(header))
        handle.write(state.amplitudes.astype("<c16").tobytes())


def load_snapshot(path: Union[str, Path]) -> QuantumState:
    """Read a snapshot written by save_snapshot.

    Raises:
        ValueError: On a bad magic number or a truncated file.
    """
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise ValueError(f"{path} is not a state snapshot (magic {data[:4]!r})")
    offset = 4
    (count,) = struct.unpack_from("<I", data, offset)
    offset += 4
    registers = []
    for _ in range(count):
        (length,) = struct.unpack_from("<H", data, offset)
        offset += 2
        name = data[offset:offset + length].decode("utf-8")
        offset += length
        (width,) = struct.unpack_from("<H", data, offset)
        offset += 2
        registers.append((name, width))
    layout = RegisterLayout(tuple(registers))
    expected = layout.dimension * 16
    if len(data) - offset != expected:
        raise ValueError(f"{path} holds {len(data) - offset} amplitude bytes, expected {expected}")
    amplitudes = np.frombuffer(data, dtype="<c16", offset=offset).astype(np.complex128)
    return QuantumState(layout, amplitudes)
