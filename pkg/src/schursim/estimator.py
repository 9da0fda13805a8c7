"""Monte Carlo estimation of transition amplitudes <target| U_pi Lambda |source>.

Both states are computationally tractable: overlaps with computational states
are exact CG products and their output distributions can be sampled exactly.
With ``p(y) = <y|phi>**2`` (phi = target) and ``p_pi(y) = |<y|psi>|**2``
(psi = U_pi Lambda source), split the amplitude as

    <phi|psi> = sum_y p(y) F(y) + sum_y p_pi(y) G(y)

where ``F = <phi|y><y|psi> / p(y)`` on ``{p > p_pi}`` and
``G = <phi|y><y|psi> / p_pi(y)`` on ``{p <= p_pi}``.  Both are bounded by 1 in
modulus, so Hoeffding's inequality fixes the number of draws.

Permutation convention: ``U_pi |z> = |y>`` with ``y[pi[k]] = z[k]``, hence
``<y|U_pi|z> = [z = pi^-1 . y]`` with ``(pi^-1 . y)[k] = y[pi[k]]``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .basis import SchurLabel, validate
from .errors import BoundViolation, InvalidCircuit, InvalidParameters
from .exact import ExactComplex, SqrtRational, round_to_float
from .overlap import _QUARTER, Bits, DiagonalPhase, _overlap
from .overlap import int_to_bits
from .rng import WordSource, check_seed, shard_sizes, stream_generator
from .sampler import LabelSampler

__all__ = [
    "Permutation",
    "PqcCircuit",
    "AmplitudeEstimate",
    "sample_count",
    "CircuitTerms",
    "bound_check",
    "exhaustive_decomposition",
    "estimate_transition",
]


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise InvalidCircuit(f"{list(images)} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def swap(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(n))
        images[a], images[b] = images[b], images[a]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def apply(self, z: Sequence[int]) -> Bits:
        """The string y with y[pi[k]] = z[k]."""
        y = [0] * len(z)
        for k, target in enumerate(self.images):
            y[target] = z[k]
        return tuple(y)

    def pull_back(self, y: Sequence[int]) -> Bits:
        """pi^-1 . y, i.e. z with z[k] = y[pi[k]]."""
        return tuple(y[t] for t in self.images)

    def then(self, other: "Permutation") -> "Permutation":
        """The permutation acting as ``self`` first, then ``other``."""
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, t in enumerate(self.images):
            inv[t] = k
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class PqcCircuit:
    """U_Sch^dagger . U_pi . Lambda . U_Sch between two coupled basis labels."""

    source: SchurLabel
    target: SchurLabel
    pi: Permutation
    lam: DiagonalPhase | None = None

    @property
    def n(self) -> int:
        return self.source.n

    @property
    def m_matches(self) -> bool:
        return self.source.twice_M == self.target.twice_M

    def check(self) -> "PqcCircuit":
        for name, label in (("source", self.source), ("target", self.target)):
            ok, problems = validate(label)
            if not ok:
                raise InvalidCircuit(f"{name} label invalid: " + "; ".join(problems))
        if not (self.source.n == self.target.n == self.pi.n):
            raise InvalidCircuit(
                f"size mismatch: source n={self.source.n}, target n={self.target.n}, "
                f"pi on {self.pi.n} qubits"
            )
        if self.lam is not None and self.lam.kind == "per_bit" \
                and len(self.lam.angles) != self.n:
            raise InvalidCircuit("per-bit phase needs one angle per qubit")
        return self

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "source": self.source.to_json(),
            "pi": list(self.pi.images),
            "lambda": None if self.lam is None else self.lam.to_json(),
            "target": self.target.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PqcCircuit":
        try:
            circuit = cls(
                source=SchurLabel.from_json(obj["source"]),
                target=SchurLabel.from_json(obj["target"]),
                pi=Permutation(tuple(obj["pi"])),
                lam=DiagonalPhase.from_json(obj.get("lambda")),
            )
        except KeyError as exc:
            raise InvalidCircuit(f"circuit JSON lacks field {exc}") from None
        if "n" in obj and int(obj["n"]) != circuit.n:
            raise InvalidCircuit(f"circuit declares n={obj['n']} but labels have n={circuit.n}")
        return circuit.check()


@dataclass(frozen=True)
class AmplitudeEstimate:
    value: complex
    epsilon: float
    delta: float
    samples_T: int
    seed: int
    component_epsilon: float
    component_delta: float
    workers: int = 1
    mismatched_m: bool = False
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "re": self.value.real,
            "im": self.value.imag,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "T": self.samples_T,
            "seed": self.seed,
            "component_epsilon": self.component_epsilon,
            "component_delta": self.component_delta,
            "workers": self.workers,
            "mismatched_m": self.mismatched_m,
        }


def sample_count(epsilon: float, delta: float) -> int:
    """Hoeffding sample size ceil(2/eps^2 * ln(2/delta)) for |K| <= 1."""
    if not (epsilon > 0 and math.isfinite(epsilon)):
        raise InvalidParameters(f"epsilon must be positive, got {epsilon}")
    if not 0 < delta < 1:
        raise InvalidParameters(f"delta must lie in (0, 1), got {delta}")
    return math.ceil(2.0 / (epsilon * epsilon) * math.log(2.0 / delta))


class CircuitTerms:
    """Per-outcome quantities of the decomposition, exact and cached."""

    def __init__(self, circuit: PqcCircuit):
        self.circuit = circuit.check()
        self._cache: dict[Bits, tuple] = {}

    def terms(self, y: Bits) -> tuple:
        """``(o_t, o_s, z, quarter_turns, phase)`` with ``o_t = <phi|y>``,
        ``o_s = <z|source>``, ``z = pi^-1 . y`` and ``<y|psi> = phase * o_s``."""
        hit = self._cache.get(y)
        if hit is not None:
            return hit
        c = self.circuit
        z = c.pi.pull_back(y)
        o_t = _overlap(y, c.target)
        o_s = _overlap(z, c.source)
        if c.lam is None:
            k, phase = 0, 1 + 0j
        else:
            k = c.lam.quarter_turns(z)
            phase = _QUARTER[k] if k is not None else c.lam(z)
        out = (o_t, o_s, z, k, phase)
        self._cache[y] = out
        return out

    def upsilon(self, y: Bits) -> bool:
        o_t, o_s, *_ = self.terms(y)
        return o_t.square() > o_s.square()

    def f_exact(self, y: Bits) -> tuple[SqrtRational, int | None, complex]:
        """F(y) as ``(real ratio, quarter_turns, phase)``; ratio is 0 off its support."""
        o_t, o_s, _, k, phase = self.terms(y)
        if o_t.square() > o_s.square():
            return o_s / o_t, k, phase
        return SqrtRational(0), k, phase

    def g_exact(self, y: Bits) -> tuple[SqrtRational, int | None, complex]:
        o_t, o_s, _, k, phase = self.terms(y)
        if o_t.square() <= o_s.square() and o_s:
            return o_t / o_s, k, phase
        return SqrtRational(0), k, phase


def bound_check(ratio: SqrtRational) -> None:
    """Every F or G draw has modulus <= 1; anything else is an upstream bug."""
    if ratio.square() > 1:
        raise BoundViolation(f"|sample| = sqrt({ratio.square()}) exceeds 1")


def _as_complex(ratio: SqrtRational, k: int | None, phase: complex) -> complex:
    x = round_to_float(ratio, 53)
    if k is not None:
        return _QUARTER[k] * x if k else complex(x)
    return phase * x


def exhaustive_decomposition(circuit: PqcCircuit):
    """sum_y p(y) F(y) + sum_y p_pi(y) G(y) over all 2^n outcomes.

    Returns an :class:`ExactComplex` when every phase is an exact fourth root
    of unity (always the case without Lambda), otherwise a float complex.
    """
    terms = CircuitTerms(circuit)
    n = circuit.n
    exact = ExactComplex()
    approx: list[complex] = []
    for idx in range(2 ** n):
        y = int_to_bits(idx, n)
        o_t, o_s, _, k, phase = terms.terms(y)
        p, p_pi = o_t.square(), o_s.square()
        if p > p_pi:
            ratio, _, _ = terms.f_exact(y)
            contrib = (o_t * o_t) * ratio
        elif p_pi:
            ratio, _, _ = terms.g_exact(y)
            contrib = (o_s * o_s) * ratio
        else:
            continue
        if k is not None:
            exact.add_rotated(contrib, k)
        else:
            approx.append(phase * float(contrib))
    if approx:
        return complex(exact) + complex(math.fsum(z.real for z in approx),
                                        math.fsum(z.imag for z in approx))
    return exact


def _draw_shard(circuit: PqcCircuit, seed: int, stream: int, worker: int,
                count: int, check_bounds: bool) -> tuple[list[float], list[float]]:
    """Values of F (stream 0) or G (stream 1) on ``count`` draws."""
    terms = CircuitTerms(circuit)
    source = WordSource(stream_generator(seed, stream, worker))
    if stream == 0:
        sampler = LabelSampler(circuit.target)
        evaluate = terms.f_exact
    else:
        sampler = LabelSampler(circuit.source)
        evaluate = terms.g_exact
    memo: dict[Bits, complex] = {}
    re: list[float] = []
    im: list[float] = []
    for _ in range(count):
        y = sampler.draw(source)
        if stream == 1:
            y = circuit.pi.apply(y)
        value = memo.get(y)
        if value is None:
            ratio, k, phase = evaluate(y)
            if check_bounds:
                bound_check(ratio)
            value = _as_complex(ratio, k, phase)
            memo[y] = value
        re.append(value.real)
        im.append(value.imag)
    return re, im


def estimate_transition(circuit: PqcCircuit, epsilon: float, delta: float, seed: int,
                        *, workers: int = 1, check_bounds: bool = __debug__) -> AmplitudeEstimate:
    """Estimate <target| U_pi Lambda |source> to +-epsilon with probability >= 1 - delta.

    Each of <F> and <G> gets ``sample_count(epsilon/2, delta/2)`` draws.  The
    draws are sharded over ``workers`` processes; worker ``w`` reads stream
    ``(0, w)`` for F and ``(1, w)`` for G, and sums are exactly rounded, so the
    result is a deterministic function of (circuit, epsilon, delta, seed, workers).
    """
    circuit.check()
    seed = check_seed(seed)
    eps_c, delta_c = epsilon / 2, delta / 2
    T = sample_count(eps_c, delta_c)
    if workers < 1:
        raise InvalidParameters("workers must be >= 1")
    common = dict(epsilon=epsilon, delta=delta, seed=seed, workers=workers,
                  component_epsilon=eps_c, component_delta=delta_c)
    if not circuit.m_matches:
        return AmplitudeEstimate(value=0j, samples_T=0, mismatched_m=True, **common)

    sizes = shard_sizes(T, workers)
    jobs = [(stream, w) for stream in (0, 1) for w in range(workers)]
    args = ([circuit] * len(jobs), [seed] * len(jobs), [s for s, _ in jobs],
            [w for _, w in jobs], [sizes[w] for _, w in jobs], [check_bounds] * len(jobs))
    if workers == 1:
        results = list(map(_draw_shard, *args))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_draw_shard, *args))

    means = []
    for stream in (0, 1):
        shards = results[stream * workers:(stream + 1) * workers]
        re = math.fsum(v for r, _ in shards for v in r) / T
        im = math.fsum(v for _, i in shards for v in i) / T
        means.append(complex(re, im))
    value = means[0] + means[1]
    if circuit.lam is None:
        value = complex(value.real, 0.0)
    return AmplitudeEstimate(value=value, samples_T=T,
                             extra={"mean_F": means[0], "mean_G": means[1]}, **common)
