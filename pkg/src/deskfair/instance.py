"""Core data model: authors, papers, incidence structure, author categories.

Everything downstream (metrics, policies, solvers) consumes the immutable
:class:`Instance` built here. Identifiers are opaque strings; all math uses
dense 0-based indices. Paper list order is the submission order.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import cached_property


class InstanceError(ValueError):
    """Base class for malformed instance descriptions."""


class DuplicateId(InstanceError):
    pass


class UnknownAuthorOnPaper(InstanceError):
    pass


class EmptyAuthorList(InstanceError):
    pass


class NonPositiveCap(InstanceError):
    pass


class AuthorWithNoPapers(InstanceError):
    pass


class IndexOutOfRange(IndexError):
    pass


class DimensionMismatch(ValueError):
    pass


class AuthorCategory(enum.Enum):
    NON_COMPLIANT = "non-compliant"  # more than x papers
    VULNERABLE = "vulnerable"        # within cap but has a non-compliant coauthor
    SAFE = "safe"                    # within cap, all coauthors within cap


@dataclass(frozen=True)
class Paper:
    id: str
    authors: tuple[str, ...]


@dataclass(frozen=True)
class Instance:
    """A submission-limit problem: who wrote what, and the per-author cap.

    Construct via :func:`validate_instance` (or the generators), which enforce
    all invariants; the constructor itself does not re-validate.
    """

    author_ids: tuple[str, ...]
    papers: tuple[Paper, ...]
    x: int

    @property
    def n(self) -> int:
        return len(self.author_ids)

    @property
    def m(self) -> int:
        return len(self.papers)

    @cached_property
    def author_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.author_ids)}

    @cached_property
    def paper_authors(self) -> tuple[tuple[int, ...], ...]:
        """Author index sets per paper, in paper order."""
        idx = self.author_index
        return tuple(tuple(idx[a] for a in p.authors) for p in self.papers)

    @cached_property
    def author_papers(self) -> tuple[tuple[int, ...], ...]:
        """Paper index sets per author, in submission order."""
        out: list[list[int]] = [[] for _ in self.author_ids]
        for j, authors in enumerate(self.paper_authors):
            for i in authors:
                out[i].append(j)
        return tuple(tuple(js) for js in out)

    def paper_count(self, author: int) -> int:
        return len(self.author_papers[author])

    def with_cap(self, x: int) -> "Instance":
        if x < 1:
            raise NonPositiveCap(f"submission cap must be >= 1, got {x}")
        return Instance(self.author_ids, self.papers, x)


def validate_instance(raw) -> Instance:
    """Build a well-formed Instance from a parsed JSON-shaped mapping.

    Expects ``{"x": int, "authors": [str...], "papers": [{"id": str,
    "authors": [str...]}...]}``. Raises a specific :class:`InstanceError`
    on the first violation found; never repairs input.
    """
    if not isinstance(raw, dict):
        raise InstanceError(f"instance description must be an object, got {type(raw).__name__}")
    try:
        x = raw["x"]
        authors = raw["authors"]
        papers_raw = raw["papers"]
    except KeyError as e:
        raise InstanceError(f"missing required field {e.args[0]!r}") from None

    if not isinstance(x, int) or isinstance(x, bool):
        raise NonPositiveCap(f"submission cap must be an integer, got {x!r}")
    if x < 1:
        raise NonPositiveCap(f"submission cap must be >= 1, got {x}")

    author_ids = tuple(str(a) for a in authors)
    seen = set()
    for a in author_ids:
        if a in seen:
            raise DuplicateId(f"duplicate author id {a!r}")
        seen.add(a)

    papers = []
    seen_papers = set()
    author_set = set(author_ids)
    for k, p in enumerate(papers_raw):
        try:
            pid = str(p["id"])
            plist = p["authors"]
        except (TypeError, KeyError):
            raise InstanceError(f"paper #{k} must be an object with 'id' and 'authors'") from None
        if pid in seen_papers:
            raise DuplicateId(f"duplicate paper id {pid!r}")
        seen_papers.add(pid)
        names = tuple(str(a) for a in plist)
        if not names:
            raise EmptyAuthorList(f"paper {pid!r} has no authors")
        if len(set(names)) != len(names):
            raise DuplicateId(f"paper {pid!r} lists an author more than once")
        for a in names:
            if a not in author_set:
                raise UnknownAuthorOnPaper(f"paper {pid!r} lists undeclared author {a!r}")
        papers.append(Paper(pid, names))

    on_some_paper = {a for p in papers for a in p.authors}
    for a in author_ids:
        if a not in on_some_paper:
            raise AuthorWithNoPapers(f"author {a!r} appears on no paper")

    return Instance(author_ids, tuple(papers), x)


def instance_to_dict(inst: Instance) -> dict:
    return {
        "x": inst.x,
        "authors": list(inst.author_ids),
        "papers": [{"id": p.id, "authors": list(p.authors)} for p in inst.papers],
    }


def instance_to_json(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2)


def instance_from_json(text: str) -> Instance:
    return validate_instance(json.loads(text))


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return instance_from_json(fh.read())


def dump_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(instance_to_json(inst))
        fh.write("\n")


@dataclass(frozen=True)
class IncidenceMatrix:
    """0/1 author-by-paper matrix; entry (i, j) is 1 iff author i is on paper j."""

    entries: tuple[tuple[int, ...], ...]
    row_sums: tuple[int, ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


def build_incidence(inst: Instance) -> IncidenceMatrix:
    """Build the incidence matrix, recomputing row sums as a consistency check."""
    entries = []
    for i in range(inst.n):
        row = [0] * inst.m
        for j in inst.author_papers[i]:
            row[j] = 1
        entries.append(tuple(row))
    row_sums = tuple(sum(row) for row in entries)
    assert all(row_sums[i] == inst.paper_count(i) >= 1 for i in range(inst.n))
    return IncidenceMatrix(tuple(entries), row_sums)


@dataclass(frozen=True)
class KeepVector:
    """Per-paper keep decision; r_j = 1 keeps paper j, r_j = 0 rejects it.

    Binary mode holds exact 0/1 ints; fractional mode (relaxation output)
    holds values in [0, 1], floats or exact rationals.
    """

    values: tuple
    mode: str  # "binary" | "fractional"

    def __post_init__(self):
        if self.mode == "binary":
            if not all(v in (0, 1) for v in self.values):
                raise ValueError("binary keep vector must contain only 0/1")
        elif self.mode == "fractional":
            if not all(0 <= v <= 1 for v in self.values):
                raise ValueError("fractional keep values must lie in [0, 1]")
        else:
            raise ValueError(f"unknown keep vector mode {self.mode!r}")

    @classmethod
    def binary(cls, values) -> "KeepVector":
        return cls(tuple(int(v) for v in values), "binary")

    @classmethod
    def fractional(cls, values) -> "KeepVector":
        return cls(tuple(values), "fractional")

    @classmethod
    def from_kept_indices(cls, kept, m: int) -> "KeepVector":
        kept = set(kept)
        return cls.binary(1 if j in kept else 0 for j in range(m))

    @property
    def is_binary(self) -> bool:
        return self.mode == "binary"

    def __len__(self) -> int:
        return len(self.values)

    def kept_indices(self) -> tuple[int, ...]:
        return tuple(j for j, v in enumerate(self.values) if v == 1)

    def rejected_indices(self) -> tuple[int, ...]:
        return tuple(j for j, v in enumerate(self.values) if v != 1)


def kept_count(W: IncidenceMatrix, r: KeepVector, author: int):
    """Dot product of author row with the keep vector; an int for binary r."""
    if len(r) != W.cols:
        raise DimensionMismatch(f"keep vector length {len(r)} != paper count {W.cols}")
    if not 0 <= author < W.rows:
        raise IndexOutOfRange(f"author index {author} out of range [0, {W.rows})")
    row = W.entries[author]
    total = sum(v for w, v in zip(row, r.values) if w)
    return int(total) if r.is_binary else total


def coauthors(inst: Instance, author: int) -> frozenset[int]:
    """All authors sharing at least one paper with the given author."""
    if not 0 <= author < inst.n:
        raise IndexOutOfRange(f"author index {author} out of range [0, {inst.n})")
    out: set[int] = set()
    for j in inst.author_papers[author]:
        out.update(inst.paper_authors[j])
    out.discard(author)
    return frozenset(out)


def classify_author(inst: Instance, author: int) -> AuthorCategory:
    """Non-compliant above the cap; vulnerable if a coauthor is; safe otherwise."""
    if not 0 <= author < inst.n:
        raise IndexOutOfRange(f"author index {author} out of range [0, {inst.n})")
    if inst.paper_count(author) > inst.x:
        return AuthorCategory.NON_COMPLIANT
    if any(inst.paper_count(k) > inst.x for k in coauthors(inst, author)):
        return AuthorCategory.VULNERABLE
    return AuthorCategory.SAFE
