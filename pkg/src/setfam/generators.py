"""Reproducible instance generators.

Every generator is a pure function of its parameters and a 64-bit seed: the
randomness comes from the package's portable splitmix64 stream and the
halfplane geometry is done in exact rational arithmetic, so instances are
bit-identical across platforms. Each family carries a ``generator``
provenance record that survives serialization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import GenerationError
from .family import SetFamily, canonical_json
from .rng import SplitMix64


@dataclass(frozen=True)
class GeneratorSpec:
    """What produced a family: kind, kind-specific sizes, and the seed."""

    kind: str
    parameters: tuple[tuple[str, int | float], ...]
    seed: int

    def provenance(self) -> str:
        return canonical_json(
            {"kind": self.kind, "parameters": dict(self.parameters), "seed": self.seed}
        )

    @classmethod
    def from_provenance(cls, text: str) -> "GeneratorSpec":
        obj = json.loads(text)
        return cls(obj["kind"], tuple(sorted(obj["parameters"].items())), obj["seed"])


def gen_intervals(count: int, universe_size: int, seed: int) -> SetFamily:
    """Random integer intervals (inclusive point ranges); all points base.

    Any n of them induce at most 2n+1 atoms on the line, so these families
    populate the linear-growth regime.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if universe_size < 2 * count:
        raise ValueError("universe_size must be at least 2*count")
    rng = SplitMix64(seed)
    sets = []
    for i in range(count):
        a = rng.below(universe_size)
        b = rng.below(universe_size)
        lo, hi = (a, b) if a <= b else (b, a)
        sets.append((f"I{i}", range(lo, hi + 1)))
    spec = GeneratorSpec("intervals", (("count", count), ("universe_size", universe_size)), seed)
    return SetFamily.from_points(universe_size, sets, provenance=spec.provenance())


# --- halfplanes below lines over a square grid ----------------------------

_DEFAULT_ATTEMPTS = 400


def _sample_lines(rng: SplitMix64, count: int, side: int) -> list[tuple[Fraction, Fraction]]:
    # Tangents to a downward parabola with apex at the grid center: two
    # tangents cross above the midpoint of their tangency abscissas, so
    # jittered tangency points spread over the middle of the grid put every
    # pairwise crossing strictly inside and rule out three-line concurrency.
    span = side - 1
    mid = Fraction(span, 2)
    width = Fraction(2 * span, 5)
    lines = []
    for i in range(count):
        jitter = Fraction(200 + rng.below(601), 1000)  # in [0.2, 0.8]
        x0 = span * (Fraction(1, 10) + Fraction(4, 5) * (i + jitter) / count)
        slope = -2 * (x0 - mid) / width
        y0 = mid - (x0 - mid) ** 2 / width
        lines.append((slope, y0 - slope * x0))
    return lines


def _hits_grid_point(slope: Fraction, intercept: Fraction, side: int) -> bool:
    for x in range(side):
        y = slope * x + intercept
        if y.denominator == 1 and 0 <= y.numerator <= side - 1:
            return True
    return False


def _crossings_inside(lines: list[tuple[Fraction, Fraction]], side: int) -> bool:
    crossings = set()
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a1, b1 = lines[i]
            a2, b2 = lines[j]
            if a1 == a2:
                return False
            x = (b2 - b1) / (a1 - a2)
            y = a1 * x + b1
            if not (0 < x < side - 1 and 0 < y < side - 1):
                return False
            if (x, y) in crossings:  # three lines through one point
                return False
            crossings.add((x, y))
    return True


def _below_mask(slope: Fraction, intercept: Fraction, side: int) -> int:
    mask = 0
    for x in range(side):
        y = slope * x + intercept
        top = math.floor(y)
        if y == top:
            top -= 1  # the line itself is excluded; "strictly below"
        top = min(top, side - 1)
        for row in range(top + 1):
            mask |= 1 << (row * side + x)
    return mask


def _distinct_signatures(masks: list[int], num_points: int) -> int:
    seen = set()
    for p in range(num_points):
        seen.add(sum((mask >> p & 1) << i for i, mask in enumerate(masks)))
    return len(seen)


def gen_halfplane_grid(
    count: int, grid_side: int, seed: int, attempts: int = _DEFAULT_ATTEMPTS
) -> SetFamily:
    """Points strictly below sampled lines over a grid, in general position.

    The universe is the grid in row-major order (point = row*side + column).
    A sample is accepted only when the lines pairwise cross strictly inside
    the grid, no three meet, no line passes through a grid point, and every
    cell of the arrangement catches a grid point, i.e. the distinct-signature
    count equals 1 + n + n(n-1)/2. Accepted instances therefore meet that
    closed form at every subfamily size. Rejection resamples from the same
    stream, up to ``attempts`` times.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if grid_side < 3:
        raise ValueError("grid_side must be at least 3")
    rng = SplitMix64(seed)
    want = 1 + count + count * (count - 1) // 2
    num_points = grid_side * grid_side
    for _ in range(attempts):
        lines = _sample_lines(rng, count, grid_side)
        if any(_hits_grid_point(a, b, grid_side) for a, b in lines):
            continue
        if count > 1 and not _crossings_inside(lines, grid_side):
            continue
        masks = [_below_mask(a, b, grid_side) for a, b in lines]
        if _distinct_signatures(masks, num_points) != want:
            continue
        spec = GeneratorSpec(
            "halfplane_grid", (("count", count), ("grid_side", grid_side)), seed
        )
        return SetFamily(
            num_points,
            tuple(f"H{i}" for i in range(count)),
            tuple(masks),
            provenance=spec.provenance(),
        )
    raise GenerationError(
        f"resampling budget exhausted after {attempts} attempts; use a finer grid"
    )


def gen_witness_rich(depth: int, seed: int) -> tuple[SetFamily, tuple[int, ...]]:
    """Family plus external target on which the witness chain reaches ``depth``.

    The target has 2**depth extension points and set k splits every dyadic
    block of the target in half (membership follows bit k-1 of the target
    point's rank). Set k additionally carries one fresh base point for each
    membership pattern over the earlier sets, so at every step each live atom
    holds a base point of the next set. Carrier points of step k keep labels
    below those of later steps -- the probe picks then always land on the
    current step's own carriers, which no later set contains -- and the seed
    shuffles labels inside each carrier block and inside the target.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    n_ext = 1 << depth
    n_base = n_ext - 1
    universe = n_base + n_ext
    rng = SplitMix64(seed)
    label = list(range(universe))
    start = 0
    for block in [1 << (k - 1) for k in range(1, depth + 1)] + [n_ext]:
        chunk = label[start : start + block]
        rng.shuffle(chunk)
        label[start : start + block] = chunk
        start += block

    members_abstract: list[set[int]] = [set() for _ in range(depth)]
    idx = 0
    for k in range(1, depth + 1):
        for pattern in range(1 << (k - 1)):
            members_abstract[k - 1].add(idx)
            for j in range(1, k):
                if pattern >> (j - 1) & 1:
                    members_abstract[j - 1].add(idx)
            idx += 1
    for rank in range(n_ext):
        for k in range(1, depth + 1):
            if rank >> (k - 1) & 1:
                members_abstract[k - 1].add(idx + rank)

    extension = sorted(label[idx + rank] for rank in range(n_ext))
    sets = [
        (f"S{k + 1}", sorted(label[a] for a in members_abstract[k])) for k in range(depth)
    ]
    spec = GeneratorSpec("witness_rich", (("depth", depth),), seed)
    family = SetFamily.from_points(
        universe,
        sets,
        extension=extension,
        external_target=extension,
        provenance=spec.provenance(),
    )
    return family, tuple(extension)


def gen_random(
    count: int,
    universe_size: int,
    density: float,
    seed: int,
    ensure_nonempty: bool = True,
) -> SetFamily:
    """Independent membership coin flips at the given density; all points base.

    With ``ensure_nonempty`` (the default) a set that comes out empty is
    redrawn from the same stream; switch it off to allow empty sets, which
    the piercing solvers reject by design.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if universe_size < 1:
        raise ValueError("universe_size must be at least 1")
    if not 0 < density <= 1:
        raise ValueError("density must be in (0, 1]")
    threshold = int(density * 2**64)
    rng = SplitMix64(seed)
    sets = []
    for i in range(count):
        for _ in range(1000):
            mask_points = [p for p in range(universe_size) if rng.chance(threshold)]
            if mask_points or not ensure_nonempty:
                break
        else:
            raise GenerationError(f"could not draw a nonempty set at density {density}")
        sets.append((f"R{i}", mask_points))
    spec = GeneratorSpec(
        "random",
        (("count", count), ("density", density), ("universe_size", universe_size)),
        seed,
    )
    return SetFamily.from_points(universe_size, sets, provenance=spec.provenance())
