import numpy as np
import pytest

from src.statesim.quantum_state import apply_qft, init_uniform
from src.statesim.register_layout import RegisterLayout
from src.statesim.snapshot import load_snapshot, save_snapshot


def test_snapshot_preserves_layout_and_amplitudes(tmp_path):
    layout = RegisterLayout.of(("x0", 3), ("phase", 2))
    state = apply_qft(init_uniform(layout, ["x0"]), "phase")
    path = tmp_path / "state.qsv"

    save_snapshot(state, path)
    loaded = load_snapshot(path)

    assert loaded.layout.registers == layout.registers
    np.testing.assert_array_equal(loaded.amplitudes, state.amplitudes)


def test_snapshot_rejects_foreign_files(tmp_path):
    path = tmp_path / "not_a_state.bin"
    path.write_bytes(b"JUNK" + bytes(16))

    with pytest.raises(ValueError, match="not a state snapshot"):
        load_snapshot(path)


def test_snapshot_rejects_truncated_amplitudes(tmp_path):
    state = init_uniform(RegisterLayout.of(("a", 2)), ["a"])
    path = tmp_path / "state.qsv"
    save_snapshot(state, path)
    path.write_bytes(path.read_bytes()[:-16])

    with pytest.raises(ValueError, match="amplitude bytes"):
        load_snapshot(path)
