"""Quadratic lower-bound witness chains and their independent verifier.

Fix a family and a nonempty *external target* B living entirely in the
extension points (so no base point belongs to it). A witness chain of length
n is a sequence of sets, where step i also records i base-point *probes*,
one inside each of the first i atoms that meet B. A chain whose checks pass
exhibits n(n+1)/2 points with pairwise-distinct membership traces on its n
sets, which certifies that the dual shatter value at size n is at least
n(n+1)/2.

The builder grows the chain greedily: at each step it keeps only the sets
that (in this order of blame when none survives)

1. split B inside some live atom -- both ``B & atom & a`` and
   ``B & atom & ~a`` nonempty;
2. meet every live atom in at least one base point, which guarantees the
   probe picks always succeed;
3. avoid every probe placed at earlier steps;

and then takes the lowest-index survivor, with the lowest base point as each
probe. "Live atom" means an atom of the current chain sets that meets B.
``verify_witness`` recomputes every condition from scratch, using direct
membership arithmetic rather than the builder's atom bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .errors import BudgetExceededError
from .family import SetFamily, Signature, boolean_atoms, mask_from_points, points_from_mask

DEFAULT_BUDGET = 10**7

REASON_NO_SPLIT = "no splitting set"
REASON_NO_BASE_HIT = "no set meeting every live atom in base points"
REASON_NO_PROBE_AVOID = "no set avoiding prior probe points"

_STAGE_SPLIT = "splits_target_within_a_live_atom"
_STAGE_BASE = "also_meets_every_live_atom_in_base_points"
_STAGE_AVOID = "also_avoids_prior_probe_points"


@dataclass(frozen=True)
class ChainStep:
    set_index: int
    probes: tuple[int, ...]


@dataclass(frozen=True)
class WitnessChain:
    """Chain steps plus per-step bookkeeping.

    ``atom_history[i]`` lists the signatures of the atoms of the first i+1
    chain sets that meet the target, in ascending signature order, and
    ``target_atom_counts[i]`` is their number. The counts are strictly
    increasing and entry i is at least i+2.
    """

    steps: tuple[ChainStep, ...] = ()
    atom_history: tuple[tuple[Signature, ...], ...] = ()
    target_atom_counts: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.steps)

    def set_indices(self) -> tuple[int, ...]:
        return tuple(step.set_index for step in self.steps)

    def probe_points(self) -> tuple[int, ...]:
        return tuple(p for step in self.steps for p in step.probes)


@dataclass(frozen=True)
class StuckCertificate:
    """Evidence that the construction cannot extend past ``reached_length``.

    ``candidate_trace`` records the surviving sets after each filter stage in
    blame order; the final stage is empty, and re-running ``candidate_sets``
    on ``chain`` returns no candidates.
    """

    reached_length: int
    reason: str
    candidate_trace: tuple[tuple[str, tuple[int, ...]], ...]
    chain: WitnessChain


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the independent chain checks, one flag per check.

    ``step_separation_ok``: each step's set contains its own probes and none
    from earlier steps. ``within_step_distinct_ok``: inside every step the
    probes have pairwise-distinct traces on the earlier chain sets.
    ``all_traces_distinct_ok``: all probes have pairwise-distinct traces on
    the full chain. ``quadratic_bound_ok``: the distinct-trace count reaches
    n(n+1)/2. ``target_counts_ok``: the recorded live-atom counts and
    signatures match a from-scratch recount, grow strictly, and stay above
    the step-index floor.
    """

    length: int
    step_separation_ok: bool
    within_step_distinct_ok: bool
    all_traces_distinct_ok: bool
    distinct_trace_count: int
    required_trace_count: int
    quadratic_bound_ok: bool
    target_counts_ok: bool
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (
            self.step_separation_ok
            and self.within_step_distinct_ok
            and self.all_traces_distinct_ok
            and self.quadratic_bound_ok
            and self.target_counts_ok
        )


def _target_mask(family: SetFamily, target: Iterable[int], require_nonempty: bool) -> int:
    mask = mask_from_points(target, family.universe_size)
    if mask & family.base_mask:
        bad = points_from_mask(mask & family.base_mask)[0]
        raise ValueError(f"target point {bad} is a base point; the target must lie in the extension")
    if require_nonempty and mask == 0:
        raise ValueError("target must be nonempty")
    return mask


def _validate_chain(family: SetFamily, chain: WitnessChain) -> None:
    if len(chain.atom_history) != chain.length or len(chain.target_atom_counts) != chain.length:
        raise ValueError("chain bookkeeping out of sync with its steps")
    for i, step in enumerate(chain.steps, start=1):
        if not 0 <= step.set_index < family.num_sets:
            raise ValueError(f"step {i} names set {step.set_index}, out of range")
        if len(step.probes) != i:
            raise ValueError(f"step {i} must carry {i} probes, found {len(step.probes)}")
        for p in step.probes:
            if not 0 <= p < family.universe_size:
                raise ValueError(f"probe {p} out of range")
            if not family.base_mask >> p & 1:
                raise ValueError(f"probe {p} is not a base point")


def _live_atoms(family: SetFamily, prefix: tuple[int, ...], target_mask: int) -> list[tuple[Signature, int]]:
    decomposition = boolean_atoms(family, prefix, include_zero_cell=True)
    return [(sig, mask) for sig, mask in decomposition.cells.items() if mask & target_mask]


def _candidate_stages(
    family: SetFamily, target_mask: int, chain: WitnessChain
) -> tuple[list[int], list[int], list[int], list[tuple[Signature, int]]]:
    atoms = _live_atoms(family, chain.set_indices(), target_mask)
    probe_mask = mask_from_points(chain.probe_points(), family.universe_size)
    base = family.base_mask
    splitters: list[int] = []
    base_hitters: list[int] = []
    full: list[int] = []
    for t in range(family.num_sets):
        mem = family.members[t]
        if not any(mask & target_mask & mem and mask & target_mask & ~mem for _, mask in atoms):
            continue
        splitters.append(t)
        if not all(mask & mem & base for _, mask in atoms):
            continue
        base_hitters.append(t)
        if mem & probe_mask:
            continue
        full.append(t)
    return splitters, base_hitters, full, atoms


def candidate_sets(
    family: SetFamily, target: Iterable[int], chain: WitnessChain = WitnessChain()
) -> tuple[int, ...]:
    """Sets eligible to extend the chain, in declaration order.

    A set qualifies when it avoids all prior probes, meets every live atom in
    at least one base point, and splits the target inside some live atom.
    """
    mask = _target_mask(family, target, require_nonempty=False)
    _validate_chain(family, chain)
    return tuple(_candidate_stages(family, mask, chain)[2])


def _extend(family: SetFamily, target_mask: int, chain: WitnessChain, set_index: int) -> WitnessChain:
    atoms_before = _live_atoms(family, chain.set_indices(), target_mask)
    step_number = chain.length + 1
    mem = family.members[set_index]
    base = family.base_mask
    probes = []
    for j in range(step_number):
        pool = atoms_before[j][1] & mem & base
        assert pool, "candidate filtering guarantees a base point in every live atom"
        probes.append((pool & -pool).bit_length() - 1)
    prefix = chain.set_indices() + (set_index,)
    after = _live_atoms(family, prefix, target_mask)
    return WitnessChain(
        chain.steps + (ChainStep(set_index, tuple(probes)),),
        chain.atom_history + (tuple(sig for sig, _ in after),),
        chain.target_atom_counts + (len(after),),
    )


def _stuck(
    splitters: list[int], base_hitters: list[int], full: list[int], chain: WitnessChain
) -> StuckCertificate:
    if not splitters:
        reason = REASON_NO_SPLIT
    elif not base_hitters:
        reason = REASON_NO_BASE_HIT
    else:
        reason = REASON_NO_PROBE_AVOID
    trace = (
        (_STAGE_SPLIT, tuple(splitters)),
        (_STAGE_BASE, tuple(base_hitters)),
        (_STAGE_AVOID, tuple(full)),
    )
    return StuckCertificate(chain.length, reason, trace, chain)


def build_quadratic_witness(
    family: SetFamily,
    target: Iterable[int],
    n_target: int,
    exhaustive: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> WitnessChain | StuckCertificate:
    """Grow a witness chain of length ``n_target``, or certify where it stuck.

    The default is greedy with lowest-index tie breaks and no backtracking
    across steps, so identical inputs always yield the identical chain.
    ``exhaustive=True`` backtracks over candidate choices within ``budget``
    search nodes and returns the first chain reaching ``n_target`` in
    lexicographic order, or a certificate for the deepest chain found.
    """
    target_mask = _target_mask(family, target, require_nonempty=True)
    if n_target < 1:
        raise ValueError("n_target must be at least 1")
    if exhaustive:
        return _build_exhaustive(family, target_mask, n_target, budget)
    chain = WitnessChain()
    while chain.length < n_target:
        splitters, base_hitters, full, _ = _candidate_stages(family, target_mask, chain)
        if not full:
            return _stuck(splitters, base_hitters, full, chain)
        chain = _extend(family, target_mask, chain, full[0])
    return chain


def _build_exhaustive(
    family: SetFamily, target_mask: int, n_target: int, budget: int
) -> WitnessChain | StuckCertificate:
    deepest = WitnessChain()
    nodes = 0

    def dfs(chain: WitnessChain) -> WitnessChain | None:
        nonlocal deepest, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(f"witness search exceeded the budget of {budget} nodes")
        if chain.length > deepest.length:
            deepest = chain
        if chain.length == n_target:
            return chain
        for t in _candidate_stages(family, target_mask, chain)[2]:
            hit = dfs(_extend(family, target_mask, chain, t))
            if hit is not None:
                return hit
        return None

    hit = dfs(WitnessChain())
    if hit is not None:
        return hit
    splitters, base_hitters, full, _ = _candidate_stages(family, target_mask, deepest)
    return _stuck(splitters, base_hitters, full, deepest)


def verify_witness(family: SetFamily, target: Iterable[int], chain: WitnessChain) -> VerificationReport:
    """Re-check a chain from scratch and report each condition separately.

    Traces are recomputed by direct membership tests and the live-atom counts
    by grouping the target's own points, so the verifier shares none of the
    builder's atom-splitting path. Structural defects (wrong probe counts,
    non-base probes, bad indices) raise instead of reporting.
    """
    target_mask = _target_mask(family, target, require_nonempty=True)
    _validate_chain(family, chain)
    n = chain.length
    failures: list[str] = []
    sets = [family.members[step.set_index] for step in chain.steps]

    separation_ok = True
    for i, step in enumerate(chain.steps):
        for p in step.probes:
            if not sets[i] >> p & 1:
                separation_ok = False
                failures.append(f"probe {p} of step {i + 1} lies outside its own set")
        for later in range(i + 1, n):
            for p in step.probes:
                if sets[later] >> p & 1:
                    separation_ok = False
                    failures.append(
                        f"set of step {later + 1} contains probe {p} from earlier step {i + 1}"
                    )

    def trace(point: int, upto: int) -> str:
        return "".join("1" if sets[k] >> point & 1 else "0" for k in range(upto))

    within_ok = True
    for i in range(1, n):
        seen: dict[str, int] = {}
        for p in chain.steps[i].probes:
            t = trace(p, i)
            if t in seen:
                within_ok = False
                failures.append(
                    f"probes {seen[t]} and {p} of step {i + 1} share trace {t!r} on the earlier sets"
                )
            else:
                seen[t] = p

    all_probes = chain.probe_points()
    distinct = len({trace(p, n) for p in all_probes})
    all_distinct_ok = distinct == len(all_probes)
    if not all_distinct_ok:
        failures.append("probe traces on the full chain are not pairwise distinct")
    required = n * (n + 1) // 2
    bound_ok = distinct >= required
    if not bound_ok:
        failures.append(f"distinct probe traces {distinct} fall short of the required {required}")

    counts_ok = True
    target_points = points_from_mask(target_mask)
    previous = 0
    for i in range(1, n + 1):
        sigs = sorted({trace(b, i) for b in target_points})
        count = len(sigs)
        recorded = chain.target_atom_counts[i - 1]
        if recorded != count:
            counts_ok = False
            failures.append(
                f"recorded live-atom count {recorded} at step {i} differs from recomputed {count}"
            )
        if count < i + 1:
            counts_ok = False
            failures.append(f"live-atom count {count} at step {i} is below the floor {i + 1}")
        if count <= previous:
            counts_ok = False
            failures.append(f"live-atom counts fail to increase at step {i}")
        previous = count
        if tuple(chain.atom_history[i - 1]) != tuple(sigs):
            counts_ok = False
            failures.append(f"recorded atom signatures at step {i} differ from recomputed atoms")

    return VerificationReport(
        n,
        separation_ok,
        within_ok,
        all_distinct_ok,
        distinct,
        required,
        bound_ok,
        counts_ok,
        tuple(failures),
    )


# --------------------------------------------------------------------------
# report-file conversion


def chain_to_dict(chain: WitnessChain) -> dict[str, Any]:
    return {
        "steps": [{"set_index": s.set_index, "probes": list(s.probes)} for s in chain.steps],
        "atom_history": [list(sigs) for sigs in chain.atom_history],
        "target_atom_counts": list(chain.target_atom_counts),
    }


def chain_from_dict(obj: Mapping[str, Any]) -> WitnessChain:
    steps = tuple(
        ChainStep(int(s["set_index"]), tuple(int(p) for p in s["probes"])) for s in obj["steps"]
    )
    history = tuple(tuple(str(sig) for sig in sigs) for sigs in obj["atom_history"])
    counts = tuple(int(c) for c in obj["target_atom_counts"])
    return WitnessChain(steps, history, counts)
