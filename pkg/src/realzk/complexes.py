"""Finite simplicial complexes on vertex set [m], stored as bit masks.

A complex always contains the empty simplex.  Vertices of [m] that appear
in no simplex ("ghost vertices") are allowed; constructors flag them in a
warning list instead of rejecting the input.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .bitsets import full_mask, iter_subsets, mask_of, popcount, vertices_of
from .errors import InvalidComplexError, SizeLimitError

# Simplices are stored explicitly, so every sweep is bounded by 2^m.
DEFAULT_M_CAP = 24


def _check_m(m: int, m_cap: int) -> None:
    if m < 0:
        raise InvalidComplexError(f"vertex count must be non-negative, got {m}")
    if m > m_cap:
        raise SizeLimitError(f"vertex count {m} exceeds cap {m_cap}")


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of vertex subsets of [m], empty set included.

    `simplices` is sorted by (dimension, mask) and always starts with 0 (the
    empty simplex).  Instances are immutable and safe to share across workers.
    """

    m: int
    simplices: tuple[int, ...]
    warnings: tuple[str, ...] = ()
    _members: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.simplices))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_facets(
        cls,
        m: int,
        facets: list[int] | tuple[int, ...],
        m_cap: int = DEFAULT_M_CAP,
    ) -> "SimplicialComplex":
        """Downward closure of the given facet masks, plus the empty simplex."""
        _check_m(m, m_cap)
        ambient = full_mask(m)
        members = {0}
        for f in facets:
            if f & ~ambient:
                bad = vertices_of(f & ~ambient)
                raise InvalidComplexError(
                    f"facet {vertices_of(f)} uses vertices {bad} outside [{m}]"
                )
            for s in iter_subsets(f):
                members.add(s)
        simplices = tuple(sorted(members, key=lambda s: (popcount(s), s)))
        covered = 0
        for s in simplices:
            covered |= s
        ghosts = vertices_of(ambient & ~covered)
        warnings = (
            (f"ghost vertices (in no simplex): {ghosts}",) if ghosts else ()
        )
        return cls(m=m, simplices=simplices, warnings=warnings)

    @classmethod
    def from_vertex_lists(
        cls, m: int, facets: list[list[int]], m_cap: int = DEFAULT_M_CAP
    ) -> "SimplicialComplex":
        """Like from_facets but with facets given as lists of 1-based labels."""
        return cls.from_facets(m, [mask_of(f) for f in facets], m_cap=m_cap)

    # -- queries -----------------------------------------------------------

    def is_simplex(self, s: int) -> bool:
        return s in self._members

    @property
    def facets(self) -> tuple[int, ...]:
        """Maximal simplices, sorted by (dimension, mask)."""
        out = []
        for s in self.simplices:
            if not any(t != s and t & s == s for t in self.simplices):
                out.append(s)
        return tuple(out)

    @property
    def vertex_mask(self) -> int:
        """Mask of vertices that actually occur in some simplex."""
        covered = 0
        for s in self.simplices:
            covered |= s
        return covered

    @property
    def ghost_vertices(self) -> list[int]:
        return vertices_of(full_mask(self.m) & ~self.vertex_mask)

    @property
    def dim(self) -> int:
        """Dimension: largest |s| - 1; -1 for the complex {{}}."""
        return popcount(self.simplices[-1]) - 1

    def f_vector(self) -> list[int]:
        """Counts of simplices per cardinality, index k = number of k-vertex simplices."""
        counts = [0] * (self.dim + 2)
        for s in self.simplices:
            counts[popcount(s)] += 1
        return counts

    def simplices_of_card(self, k: int) -> list[int]:
        return [s for s in self.simplices if popcount(s) == k]

    # -- operations --------------------------------------------------------

    def full_subcomplex(self, omega: int) -> "SimplicialComplex":
        """K_omega = {s & omega | s in K}, kept on the ambient vertex set.

        Bit positions are preserved, so simplices of the result carry the
        original vertex labels; vertices outside omega simply do not occur.
        """
        members = sorted(
            {s & omega for s in self.simplices}, key=lambda s: (popcount(s), s)
        )
        return SimplicialComplex(m=self.m, simplices=tuple(members))

    def euler_char_rz(self) -> int:
        """Euler characteristic of the associated cube subcomplex.

        Each simplex s contributes 2^(m - |s|) cells of dimension |s|.
        """
        chi = 0
        for s in self.simplices:
            k = popcount(s)
            chi += (-1) ** k * (1 << (self.m - k))
        return chi

    def cell_count(self) -> int:
        return sum(1 << (self.m - popcount(s)) for s in self.simplices)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "facets": [vertices_of(f) for f in self.facets],
        }

    def __str__(self) -> str:
        return f"SimplicialComplex(m={self.m}, {len(self.simplices)} simplices)"


# -- free-standing constructors ---------------------------------------------


def from_facets(
    m: int, facets, m_cap: int = DEFAULT_M_CAP
) -> SimplicialComplex:
    """Accepts facets as masks (ints) or as lists of 1-based labels."""
    masks = [f if isinstance(f, int) else mask_of(f) for f in facets]
    return SimplicialComplex.from_facets(m, masks, m_cap=m_cap)


def random_complex(
    m: int, density: float, seed: int, m_cap: int = DEFAULT_M_CAP
) -> SimplicialComplex:
    """Seed-deterministic random complex; density 0 gives {{}}, density 1 the full simplex."""
    _check_m(m, m_cap)
    if not 0.0 <= density <= 1.0:
        raise InvalidComplexError(f"density must be in [0,1], got {density}")
    rng = random.Random(seed)
    n_candidates = max(1, round(3 * m * density)) if m else 0
    facets = []
    for _ in range(n_candidates):
        f = 0
        for i in range(m):
            if rng.random() < density:
                f |= 1 << i
        facets.append(f)
    return SimplicialComplex.from_facets(m, facets, m_cap=m_cap)


def full_simplex(m: int, m_cap: int = DEFAULT_M_CAP) -> SimplicialComplex:
    return SimplicialComplex.from_facets(m, [full_mask(m)], m_cap=m_cap)


def simplex_boundary(m: int, m_cap: int = DEFAULT_M_CAP) -> SimplicialComplex:
    """Boundary of the (m-1)-simplex on [m]: all proper subsets of [m]."""
    top = full_mask(m)
    facets = [top & ~(1 << i) for i in range(m)]
    return SimplicialComplex.from_facets(m, facets, m_cap=m_cap)


def polygon(n: int, m_cap: int = DEFAULT_M_CAP) -> SimplicialComplex:
    """The n-gon: vertices [n], edges {i, i+1} and {1, n}."""
    if n < 3:
        raise InvalidComplexError(f"polygon needs at least 3 vertices, got {n}")
    facets = [mask_of([i, i + 1]) for i in range(1, n)] + [mask_of([1, n])]
    return SimplicialComplex.from_facets(n, facets, m_cap=m_cap)


# -- file I/O ----------------------------------------------------------------


def loads_complex(text: str, m_cap: int = DEFAULT_M_CAP) -> SimplicialComplex:
    """Parse either the JSON format {"m":..,"facets":[[..]]} or plain text.

    Plain text: first non-comment line is m, each further line one facet as
    whitespace-separated 1-based vertex labels.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidComplexError(f"bad JSON complex file: {exc}") from exc
        if not isinstance(data, dict) or "m" not in data:
            raise InvalidComplexError('JSON complex file must have keys "m" and "facets"')
        m = data["m"]
        facets = data.get("facets", [])
        if not isinstance(m, int) or not isinstance(facets, list):
            raise InvalidComplexError('"m" must be an int and "facets" a list of lists')
        try:
            return SimplicialComplex.from_facets(
                m, [mask_of(f) for f in facets], m_cap=m_cap
            )
        except ValueError as exc:
            raise InvalidComplexError(str(exc)) from exc
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise InvalidComplexError("empty complex file")
    try:
        m = int(lines[0])
    except ValueError as exc:
        raise InvalidComplexError(f"first line must be the vertex count: {exc}") from exc
    facets = []
    for ln in lines[1:]:
        try:
            facets.append(mask_of(int(tok) for tok in ln.split()))
        except ValueError as exc:
            raise InvalidComplexError(f"bad facet line {ln!r}: {exc}") from exc
    return SimplicialComplex.from_facets(m, facets, m_cap=m_cap)


def load_complex(path, m_cap: int = DEFAULT_M_CAP) -> SimplicialComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_complex(fh.read(), m_cap=m_cap)


def vertices(mask: int) -> list[int]:
    """Re-exported for callers that already hold a mask."""
    return vertices_of(mask)
