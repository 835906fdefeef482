"""Finite set families over an integer point universe.

Points are dense indices ``0 .. universe_size-1``, partitioned into *base*
points and *extension* points. Sets are stored as bit masks (one Python int
per set), so the signature/atom primitives below reduce to a handful of
integer bit operations.

Two text formats are supported:

* compact incidence -- header ``"m n"`` followed by ``m`` rows of ``n``
  characters in ``{0,1}`` (``/`` may stand in for a newline); every point is
  a base point;
* structured JSON -- ``{"universe": n, "extension": [...], "sets":
  [{"name": ..., "points": [...]}, ...]}`` with base points defined as the
  complement of the extension; optional keys ``base`` (must partition the
  universe against ``extension``), ``external_target`` (a point set inside
  the extension) and ``generator`` (provenance of a generated instance).

Serialization is canonical: the same family always produces the same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .errors import FamilyFormatError

# One '0'/'1' character per set of a chosen subfamily, in subfamily order.
Signature = str


def mask_from_points(points: Iterable[int], universe_size: int) -> int:
    mask = 0
    for p in points:
        if not 0 <= p < universe_size:
            raise ValueError(f"point {p} out of range for a universe of {universe_size} points")
        mask |= 1 << p
    return mask


def points_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def canonical_json(obj: Any) -> str:
    """Key-sorted, whitespace-free JSON; used wherever bytes must be stable."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class SetFamily:
    """Immutable incidence structure of named sets over a finite universe.

    ``members[i]`` is the bit mask of points of set ``names[i]``; declaration
    order is preserved and every operation in the package is deterministic in
    it. ``extension_mask`` marks the extension points (base points are the
    complement). ``external_target`` optionally records a distinguished point
    set inside the extension, and ``provenance`` a canonical-JSON generator
    record; both round-trip through the structured file format.
    """

    universe_size: int
    names: tuple[str, ...]
    members: tuple[int, ...]
    extension_mask: int = 0
    external_target: int | None = None
    provenance: str | None = None

    def __post_init__(self) -> None:
        if self.universe_size < 0:
            raise ValueError("universe_size must be nonnegative")
        if len(self.names) != len(self.members):
            raise ValueError("names and members must have equal length")
        if len(set(self.names)) != len(self.names):
            dup = sorted({n for n in self.names if self.names.count(n) > 1})[0]
            raise ValueError(f"duplicate set name {dup!r}")
        full = self.universe_mask
        if self.extension_mask & ~full:
            raise ValueError("extension points lie outside the universe")
        for name, mem in zip(self.names, self.members):
            if mem & ~full:
                bad = points_from_mask(mem & ~full)[0]
                raise ValueError(f"set {name!r} contains point {bad}, outside the universe")
        if self.external_target is not None and self.external_target & ~self.extension_mask:
            raise ValueError("external target must lie inside the extension points")

    @property
    def universe_mask(self) -> int:
        return (1 << self.universe_size) - 1

    @property
    def base_mask(self) -> int:
        return self.universe_mask & ~self.extension_mask

    @property
    def num_sets(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def set_points(self, index: int) -> tuple[int, ...]:
        return points_from_mask(self.members[index])

    def base_points(self) -> tuple[int, ...]:
        return points_from_mask(self.base_mask)

    def extension_points(self) -> tuple[int, ...]:
        return points_from_mask(self.extension_mask)

    @classmethod
    def from_points(
        cls,
        universe_size: int,
        sets: Sequence[tuple[str, Iterable[int]]],
        extension: Iterable[int] = (),
        external_target: Iterable[int] | None = None,
        provenance: str | None = None,
    ) -> "SetFamily":
        ext = mask_from_points(extension, universe_size)
        target = None if external_target is None else mask_from_points(external_target, universe_size)
        return cls(
            universe_size,
            tuple(name for name, _ in sets),
            tuple(mask_from_points(pts, universe_size) for _, pts in sets),
            ext,
            target,
            provenance,
        )


def _check_subfamily(family: SetFamily, subfamily: Iterable[int]) -> tuple[int, ...]:
    idxs = tuple(subfamily)
    seen = set()
    for i in idxs:
        if not 0 <= i < family.num_sets:
            raise ValueError(f"set index {i} out of range for a family of {family.num_sets} sets")
        if i in seen:
            raise ValueError(f"set index {i} repeated in subfamily")
        seen.add(i)
    return idxs


def point_signature(family: SetFamily, subfamily: Iterable[int], point: int) -> Signature:
    """Membership trace of one point across the subfamily, in subfamily order."""
    idxs = _check_subfamily(family, subfamily)
    if not 0 <= point < family.universe_size:
        raise ValueError(f"point {point} out of range")
    return "".join("1" if family.members[i] >> point & 1 else "0" for i in idxs)


@dataclass
class AtomDecomposition:
    """The nonempty signature cells (boolean atoms) of a chosen subfamily.

    ``cells`` maps each realized signature to the bit mask of its points,
    keyed in ascending signature order. The cells are pairwise disjoint and,
    when the zero cell is kept, cover the universe.
    """

    subfamily: tuple[int, ...]
    cells: dict[Signature, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.cells)

    def signatures(self) -> tuple[Signature, ...]:
        return tuple(self.cells)

    def cell_points(self, signature: Signature) -> tuple[int, ...]:
        return points_from_mask(self.cells[signature])


def boolean_atoms(
    family: SetFamily, subfamily: Iterable[int], include_zero_cell: bool = True
) -> AtomDecomposition:
    """Group the universe into boolean atoms of the subfamily.

    An atom is a maximal nonempty cell on which membership in every chosen
    set is constant. The all-complements cell (signature with no ``1``) is an
    atom of the closure under complements; ``include_zero_cell=False`` drops
    it, which is the other convention found in the literature.
    """
    idxs = _check_subfamily(family, subfamily)
    cells: list[tuple[Signature, int]] = []
    if family.universe_mask:
        cells.append(("", family.universe_mask))
    for i in idxs:
        mem = family.members[i]
        split: list[tuple[Signature, int]] = []
        for sig, mask in cells:
            hi = mask & mem
            if hi:
                split.append((sig + "1", hi))
            lo = mask & ~mem
            if lo:
                split.append((sig + "0", lo))
        cells = split
    if not include_zero_cell:
        cells = [(sig, mask) for sig, mask in cells if "1" in sig]
    return AtomDecomposition(idxs, dict(sorted(cells)))


def atoms_meeting(family: SetFamily, subfamily: Iterable[int], target: Iterable[int]) -> int:
    """Number of atoms (zero cell included) that intersect the target points."""
    t = mask_from_points(target, family.universe_size)
    decomposition = boolean_atoms(family, subfamily, include_zero_cell=True)
    return sum(1 for mask in decomposition.cells.values() if mask & t)


# --------------------------------------------------------------------------
# parsing / serialization


_TOP_KEYS = {"universe", "extension", "base", "sets", "external_target", "generator"}
_SET_KEYS = {"name", "points"}


def parse_family(text: str) -> SetFamily:
    """Parse either supported format, sniffing structured JSON by a leading '{'."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_structured(text)
    return _parse_incidence(text)


def _parse_incidence(text: str) -> SetFamily:
    rows: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for chunk in line.split("/"):
            chunk = chunk.strip()
            if chunk:
                rows.append((lineno, chunk))
    if not rows:
        raise FamilyFormatError("empty family text", line=1)
    header_line, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FamilyFormatError("header must be two integers 'num_sets num_points'", line=header_line)
    m, n = int(parts[0]), int(parts[1])
    body = rows[1:]
    if len(body) != m:
        at = body[-1][0] if body else header_line
        raise FamilyFormatError(f"expected {m} incidence rows, found {len(body)}", line=at)
    names = []
    members = []
    for i, (lineno, row) in enumerate(body):
        if len(row) != n:
            raise FamilyFormatError(
                f"incidence row must have {n} characters, found {len(row)}", line=lineno
            )
        mask = 0
        for col, ch in enumerate(row):
            if ch == "1":
                mask |= 1 << col
            elif ch != "0":
                raise FamilyFormatError(
                    f"invalid character {ch!r} in incidence row", line=lineno, column=col + 1
                )
        names.append(f"S{i}")
        members.append(mask)
    return SetFamily(n, tuple(names), tuple(members))


def _parse_structured(text: str) -> SetFamily:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return family_from_dict(obj)


def _expect_point_list(value: Any, where: str, universe: int) -> int:
    if not isinstance(value, list) or not all(isinstance(p, int) and not isinstance(p, bool) for p in value):
        raise FamilyFormatError("expected a list of point indices", where=where)
    mask = 0
    for pos, p in enumerate(value):
        if not 0 <= p < universe:
            raise FamilyFormatError(
                f"point {p} out of range for universe {universe}", where=f"{where}[{pos}]"
            )
        mask |= 1 << p
    return mask


def family_from_dict(obj: Any) -> SetFamily:
    """Validate and build a family from a structured-format dictionary."""
    if not isinstance(obj, Mapping):
        raise FamilyFormatError("top level must be an object")
    unknown = sorted(set(obj) - _TOP_KEYS)
    if unknown:
        raise FamilyFormatError(f"unknown key {unknown[0]!r}", where="top level")
    if "universe" not in obj or not isinstance(obj["universe"], int) or isinstance(obj["universe"], bool):
        raise FamilyFormatError("'universe' must be an integer point count", where="universe")
    universe = obj["universe"]
    if universe < 0:
        raise FamilyFormatError("'universe' must be nonnegative", where="universe")
    ext_mask = _expect_point_list(obj.get("extension", []), "extension", universe)
    if "base" in obj:
        base_mask = _expect_point_list(obj["base"], "base", universe)
        overlap = base_mask & ext_mask
        if overlap:
            raise FamilyFormatError(
                f"base/extension overlap at point {points_from_mask(overlap)[0]}", where="base"
            )
        missing = ((1 << universe) - 1) & ~(base_mask | ext_mask)
        if missing:
            raise FamilyFormatError(
                f"base and extension do not partition the universe; point "
                f"{points_from_mask(missing)[0]} is in neither",
                where="base",
            )
    sets = obj.get("sets")
    if not isinstance(sets, list):
        raise FamilyFormatError("'sets' must be a list", where="sets")
    names: list[str] = []
    members: list[int] = []
    seen: set[str] = set()
    for i, entry in enumerate(sets):
        where = f"sets[{i}]"
        if not isinstance(entry, Mapping):
            raise FamilyFormatError("set entry must be an object", where=where)
        bad = sorted(set(entry) - _SET_KEYS)
        if bad:
            raise FamilyFormatError(f"unknown key {bad[0]!r}", where=where)
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            raise FamilyFormatError("set entry needs a nonempty 'name'", where=where)
        if name in seen:
            raise FamilyFormatError(f"duplicate set name {name!r}", where=where)
        seen.add(name)
        try:
            mask = _expect_point_list(entry.get("points", []), f"{where} ({name!r}).points", universe)
        except FamilyFormatError:
            raise
        names.append(name)
        members.append(mask)
    target = None
    if "external_target" in obj:
        target = _expect_point_list(obj["external_target"], "external_target", universe)
        if target & ~ext_mask:
            bad_pt = points_from_mask(target & ~ext_mask)[0]
            raise FamilyFormatError(
                f"external_target point {bad_pt} is not an extension point", where="external_target"
            )
    provenance = None
    if "generator" in obj:
        if not isinstance(obj["generator"], Mapping):
            raise FamilyFormatError("'generator' must be an object", where="generator")
        provenance = canonical_json(obj["generator"])
    return SetFamily(universe, tuple(names), tuple(members), ext_mask, target, provenance)


def family_to_dict(family: SetFamily) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "universe": family.universe_size,
        "extension": list(family.extension_points()),
        "sets": [
            {"name": name, "points": list(points_from_mask(mem))}
            for name, mem in zip(family.names, family.members)
        ],
    }
    if family.external_target is not None:
        obj["external_target"] = list(points_from_mask(family.external_target))
    if family.provenance is not None:
        obj["generator"] = json.loads(family.provenance)
    return obj


def serialize_family(family: SetFamily, fmt: str = "structured") -> str:
    """Canonical text for a family; ``parse_family`` round-trips it exactly.

    The incidence format is lossy (names are regenerated on re-parse) and is
    refused for families that carry extension points or an external target.
    """
    if fmt == "structured":
        return json.dumps(family_to_dict(family), indent=2, sort_keys=True) + "\n"
    if fmt == "incidence":
        if family.extension_mask or family.external_target is not None:
            raise ValueError("incidence format cannot carry extension points")
        n = family.universe_size
        lines = [f"{family.num_sets} {n}"]
        for mem in family.members:
            lines.append("".join("1" if mem >> p & 1 else "0" for p in range(n)))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
