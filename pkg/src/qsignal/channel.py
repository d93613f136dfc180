"""Analysis of the classical channel the protocol induces.

Exact side: branch enumeration over the sender's measurement outcomes,
the asymmetric binary (Z) channel model with its mutual information and
capacity, and a fully unitary ancilla variant of the sender's
measurement. Statistical side: a chunked, vectorized Monte Carlo engine
that simulates the same prepare/measure/restore/measure pipeline across
many trials at once.

Channel orientation: sending 0 is noiseless (the receiver can never
decode 1), sending 1 is missed when every pair in the block comes up 0,
which happens with probability 0.5**n_pairs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .protocol import ALICE_QUBIT, BOB_QUBIT, AliceAction, prepare_pair, restore
from .statevector import (
    MIN_BRANCH_PROBABILITY,
    StateVector,
    _apply_cnot,
    _apply_hadamard,
    _born_probabilities,
    _select_outcomes,
    apply_gate,
    cnot,
    collapse_qubit,
    hadamard,
    new_ground_state,
    outcome_distribution,
)

ANCILLA_QUBIT = 2

# Monte Carlo trials are processed in fixed-size chunks, each drawing
# from its own child stream spawned from the caller's generator. Chunk
# boundaries depend only on the trial count, never on worker count, so
# aggregate counts are reproducible at any parallelism degree.
CHUNK_TRIALS = 1 << 16


@dataclass(frozen=True)
class OutcomeDistribution:
    """Receiver-side outcome probabilities for one sender action."""

    p_bob_0: float
    p_bob_1: float

    def __post_init__(self):
        for p in (self.p_bob_0, self.p_bob_1):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probabilities must lie in [0, 1], got {p!r}")
        if abs(self.p_bob_0 + self.p_bob_1 - 1.0) > 1e-12:
            raise ValueError(
                f"probabilities must sum to 1, got {self.p_bob_0 + self.p_bob_1!r}"
            )


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Monte Carlo estimate of an OutcomeDistribution with sampling error.

    ``stderr`` is the binomial standard error sqrt(p*(1-p)/trials); it
    applies to both outcome frequencies.
    """

    p_bob_0: float
    p_bob_1: float
    stderr: float
    trials: int
    count_bob_1: int

    @property
    def distribution(self) -> OutcomeDistribution:
        return OutcomeDistribution(self.p_bob_0, self.p_bob_1)


@dataclass(frozen=True)
class ZChannel:
    """Classical channel induced by OR-decoded blocks of ``n_pairs`` pairs.

    Crossover probabilities are derived, not stored: decoding 1 on a
    sent 0 is impossible, and a sent 1 is missed with probability
    0.5**n_pairs.
    """

    n_pairs: int

    def __post_init__(self):
        if self.n_pairs < 1:
            raise ValueError(f"n_pairs must be >= 1, got {self.n_pairs}")

    @property
    def p_false_one(self) -> float:
        return 0.0

    @property
    def p_missed_one(self) -> float:
        return block_error_probability(self.n_pairs)


@dataclass(frozen=True)
class BlockErrorEstimate:
    """Empirical decode statistics over Monte Carlo blocks for one sent bit."""

    bit: int
    n_pairs: int
    blocks: int
    count_decoded_one: int

    @property
    def rate_decoded_one(self) -> float:
        return self.count_decoded_one / self.blocks

    @property
    def error_rate(self) -> float:
        """Frequency of decoded_bit != sent bit."""
        if self.bit == 1:
            return (self.blocks - self.count_decoded_one) / self.blocks
        return self.rate_decoded_one

    @property
    def stderr_error_rate(self) -> float:
        e = self.error_rate
        return math.sqrt(e * (1.0 - e) / self.blocks)


# --- exact analysis ---------------------------------------------------------


def exact_distribution(action: AliceAction | int) -> OutcomeDistribution:
    """Receiver outcome distribution by exact branch enumeration.

    Enumerates the sender's measurement branches with their Born
    weights, pushes each branch through the restoring step, and sums the
    receiver's Born probabilities. No sampling is involved, so the
    impossible branch comes out exactly zero.
    """
    action = AliceAction(action)
    psi_a = prepare_pair()
    if action is AliceAction.SKIP:
        branches = [(1.0, psi_a)]
    else:
        p0, p1 = outcome_distribution(psi_a, ALICE_QUBIT)
        branches = [
            (weight, collapse_qubit(psi_a, ALICE_QUBIT, outcome))
            for outcome, weight in ((0, p0), (1, p1))
            if weight >= MIN_BRANCH_PROBABILITY
        ]
    p_bob_0 = 0.0
    p_bob_1 = 0.0
    for weight, branch in branches:
        b0, b1 = outcome_distribution(restore(branch), BOB_QUBIT)
        p_bob_0 += weight * b0
        p_bob_1 += weight * b1
    return OutcomeDistribution(p_bob_0, p_bob_1)


def block_error_probability(n_pairs: int) -> float:
    """Probability that a sent 1 decodes as 0: all pairs silent, 0.5**n."""
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be >= 1, got {n_pairs}")
    return 0.5**n_pairs


def ancilla_model_distribution(action: AliceAction | int) -> OutcomeDistribution:
    """Receiver marginal when the sender's measurement is kept unitary.

    Instead of collapsing, the sender's qubit is CNOT-copied onto a
    fresh ancilla (the minimal unitary record of a measurement); the
    restoring step then acts on the original pair and the receiver's
    marginal is read off the three-qubit state. Agrees with
    exact_distribution for both actions: the receiver cannot tell the
    two measurement models apart.
    """
    action = AliceAction(action)
    state = new_ground_state(3)
    state = apply_gate(state, hadamard(BOB_QUBIT))
    state = apply_gate(state, cnot(BOB_QUBIT, ALICE_QUBIT))
    if action is AliceAction.MEASURE:
        state = apply_gate(state, cnot(ALICE_QUBIT, ANCILLA_QUBIT))
    state = apply_gate(state, cnot(BOB_QUBIT, ALICE_QUBIT))
    state = apply_gate(state, hadamard(BOB_QUBIT))
    p0, p1 = outcome_distribution(state, BOB_QUBIT)
    return OutcomeDistribution(p0, p1)


# --- information measures ---------------------------------------------------


def binary_entropy(p: float) -> float:
    """H2(p) in bits, with 0*log(0) taken as 0."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))


def z_channel_mutual_information(p_missed_one: float, prior_p1: float) -> float:
    """I(X;Y) in bits for a Z channel with the given 1->0 miss probability."""
    if not 0.0 <= p_missed_one <= 1.0:
        raise ValueError(f"p_missed_one must lie in [0, 1], got {p_missed_one!r}")
    if not 0.0 <= prior_p1 <= 1.0:
        raise ValueError(f"prior_p1 must lie in [0, 1], got {prior_p1!r}")
    p_y1 = prior_p1 * (1.0 - p_missed_one)
    return binary_entropy(p_y1) - prior_p1 * binary_entropy(p_missed_one)


def mutual_information(channel: ZChannel, prior_p1: float) -> float:
    """I(X;Y) in bits for the induced channel under the given input prior."""
    return z_channel_mutual_information(channel.p_missed_one, prior_p1)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def z_channel_capacity(p_missed_one: float) -> tuple[float, float]:
    """(capacity in bits, maximizing prior P(X=1)) for a Z channel.

    Golden-section search over the prior; the objective is strictly
    concave for miss probabilities in (0, 1). The degenerate endpoints
    are handled directly: a perfect channel peaks at prior 1/2, a dead
    one carries nothing.
    """
    if not 0.0 <= p_missed_one <= 1.0:
        raise ValueError(f"p_missed_one must lie in [0, 1], got {p_missed_one!r}")
    if p_missed_one == 0.0:
        return 1.0, 0.5
    if p_missed_one == 1.0:
        return 0.0, 0.0
    lo, hi = 0.0, 1.0
    a = hi - _GOLDEN * (hi - lo)
    b = lo + _GOLDEN * (hi - lo)
    f_a = z_channel_mutual_information(p_missed_one, a)
    f_b = z_channel_mutual_information(p_missed_one, b)
    while hi - lo > 1e-9:
        if f_a < f_b:
            lo, a, f_a = a, b, f_b
            b = lo + _GOLDEN * (hi - lo)
            f_b = z_channel_mutual_information(p_missed_one, b)
        else:
            hi, b, f_b = b, a, f_a
            a = hi - _GOLDEN * (hi - lo)
            f_a = z_channel_mutual_information(p_missed_one, a)
    prior = (lo + hi) / 2.0
    return z_channel_mutual_information(p_missed_one, prior), prior


def channel_capacity(channel: ZChannel) -> tuple[float, float]:
    """(capacity in bits, maximizing prior) of the induced channel."""
    return z_channel_capacity(channel.p_missed_one)


# --- vectorized Monte Carlo engine ------------------------------------------


def _measure_rows(states: np.ndarray, qubit: int, rng: np.random.Generator) -> np.ndarray:
    """Measure ``qubit`` on every row of ``states`` in place.

    Consumes one uniform per row; returns the outcome bits as a bool array.
    """
    p0, p1 = _born_probabilities(states, qubit)
    ones = _select_outcomes(p0, p1, rng.random(states.shape[0]))
    v = states.reshape(states.shape[0], -1, 2, 1 << qubit)
    v[ones, :, 0, :] = 0.0  # rows that measured 1 lose their 0-branch
    v[~ones, :, 1, :] = 0.0
    states *= (1.0 / np.sqrt(np.where(ones, p1, p0)))[:, None]
    return ones


def _simulate_pairs(
    action: AliceAction, count: int, rng: np.random.Generator
) -> tuple[np.ndarray | None, np.ndarray]:
    """Run ``count`` independent protocol pairs through the full pipeline.

    Same gate and measurement arithmetic as the scalar protocol path,
    batched across trials. Returns (sender outcomes or None, receiver
    outcomes) as bool arrays.
    """
    states = np.zeros((count, 4), dtype=np.complex128)
    states[:, 0] = 1.0
    _apply_hadamard(states, BOB_QUBIT)
    _apply_cnot(states, BOB_QUBIT, ALICE_QUBIT, 2)
    alice = None
    if action is AliceAction.MEASURE:
        alice = _measure_rows(states, ALICE_QUBIT, rng)
    _apply_cnot(states, BOB_QUBIT, ALICE_QUBIT, 2)
    _apply_hadamard(states, BOB_QUBIT)
    bob = _measure_rows(states, BOB_QUBIT, rng)
    return alice, bob


def _chunk_sizes(trials: int) -> list[int]:
    sizes = [CHUNK_TRIALS] * (trials // CHUNK_TRIALS)
    if trials % CHUNK_TRIALS:
        sizes.append(trials % CHUNK_TRIALS)
    return sizes


def _map_chunks(fn, trials: int, rng: np.random.Generator, workers: int) -> list:
    """Apply ``fn(size, stream)`` over fixed-size chunks with derived streams."""
    sizes = _chunk_sizes(trials)
    streams = rng.spawn(len(sizes))
    if workers <= 1:
        return [fn(size, stream) for size, stream in zip(sizes, streams)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, sizes, streams))


def monte_carlo_distribution(
    action: AliceAction | int,
    trials: int,
    rng: np.random.Generator,
    workers: int = 1,
) -> EmpiricalDistribution:
    """Empirical receiver-outcome frequencies over independent pair trials.

    Counting is order-insensitive and chunk streams are derived from
    ``rng`` up front, so a given master seed yields identical results at
    any ``workers`` setting.
    """
    action = AliceAction(action)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    def chunk_ones(size: int, stream: np.random.Generator) -> int:
        _, bob = _simulate_pairs(action, size, stream)
        return int(np.count_nonzero(bob))

    count_bob_1 = sum(_map_chunks(chunk_ones, trials, rng, workers))
    p1 = count_bob_1 / trials
    p0 = (trials - count_bob_1) / trials
    return EmpiricalDistribution(
        p_bob_0=p0,
        p_bob_1=p1,
        stderr=math.sqrt(p1 * (1.0 - p1) / trials),
        trials=trials,
        count_bob_1=count_bob_1,
    )


def monte_carlo_block_error(
    action: AliceAction | int,
    n_pairs: int,
    blocks: int,
    rng: np.random.Generator,
    workers: int = 1,
) -> BlockErrorEstimate:
    """Empirical OR-decode statistics over Monte Carlo blocks.

    Each block runs ``n_pairs`` fresh pairs through the pipeline and
    decodes their OR, mirroring the scalar ``protocol.run_block``.
    """
    action = AliceAction(action)
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be >= 1, got {n_pairs}")
    if blocks < 1:
        raise ValueError(f"blocks must be >= 1, got {blocks}")

    def chunk_decoded_ones(size: int, stream: np.random.Generator) -> int:
        any_one = np.zeros(size, dtype=bool)
        for _ in range(n_pairs):
            _, bob = _simulate_pairs(action, size, stream)
            any_one |= bob
        return int(np.count_nonzero(any_one))

    count = sum(_map_chunks(chunk_decoded_ones, blocks, rng, workers))
    return BlockErrorEstimate(
        bit=action.bit, n_pairs=n_pairs, blocks=blocks, count_decoded_one=count
    )


def _joint_counts(trials: int, rng: np.random.Generator, workers: int = 1) -> np.ndarray:
    """2x2 table of (sender outcome, receiver outcome) counts for MEASURE trials."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    def chunk_table(size: int, stream: np.random.Generator) -> np.ndarray:
        alice, bob = _simulate_pairs(AliceAction.MEASURE, size, stream)
        table = np.zeros((2, 2), dtype=np.int64)
        for a in (0, 1):
            for b in (0, 1):
                table[a, b] = np.count_nonzero((alice == bool(a)) & (bob == bool(b)))
        return table

    return sum(_map_chunks(chunk_table, trials, rng, workers))
