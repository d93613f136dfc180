import numpy as np

from qsignal import StateVector


class FakeRandom:
    """Scripted RandomSource: yields queued values, then repeats the last.

    Lets tests force measurement outcomes and count uniform draws.
    """

    def __init__(self, *values: float):
        if not values:
            raise ValueError("need at least one value")
        self._values = list(values)
        self.calls = 0

    def random(self) -> float:
        self.calls += 1
        if len(self._values) > 1:
            return self._values.pop(0)
        return self._values[0]


def random_state(rng: np.random.Generator, num_qubits: int) -> StateVector:
    """Haar-ish random pure state for property tests."""
    amps = rng.standard_normal(1 << num_qubits) + 1j * rng.standard_normal(1 << num_qubits)
    amps /= np.linalg.norm(amps)
    return StateVector(amps)
