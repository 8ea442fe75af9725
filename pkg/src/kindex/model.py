"""Domain model: publications, citations and coauthorship roles.

Everything here is an immutable value object; the two operations
(classify_roles, build_role_profile) are pure functions, so they are safe
to evaluate in parallel across authors or publications.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum

AuthorId = str


class Role(str, Enum):
    """Coauthorship role of an author within one publication."""

    FA = "FA"      # first author
    LA = "LA"      # last author
    COA = "CoA"    # middle coauthor (any position other than first/last)
    CORA = "CorA"  # corresponding author (overlays a positional role)
    SA = "SA"      # single author


# Canonical role order; also the numbering of the per-role FWCI slots 1..5.
ROLE_ORDER = (Role.FA, Role.LA, Role.COA, Role.CORA, Role.SA)

# Positional roles: every publication assigns exactly one of these per author.
POSITIONAL_ROLES = (Role.FA, Role.LA, Role.COA, Role.SA)


class VenueTier(str, Enum):
    Q1 = "Q1"
    Q2 = "Q2"
    Q3 = "Q3"
    Q4 = "Q4"
    BOOK = "BOOK"
    UNRANKED = "UNRANKED"


class PublicationFlag(str, Enum):
    ERRONEOUS = "ERRONEOUS"
    NONSCIENTIFIC = "NONSCIENTIFIC"


class MalformedRecordError(ValueError):
    """A record violates its structural invariants."""


class NoPublicationsError(LookupError):
    """The requested author has no publications in the corpus."""


@dataclass(frozen=True, eq=True)
class PublicationRecord:
    """One indexed publication.

    ``authors`` preserves byline order (position 1 = first author).
    ``fwci`` is the publication's field-weighted citation impact, or None
    when the source database reports none.
    """

    pub_id: str
    year: int
    authors: tuple[AuthorId, ...]
    corresponding: frozenset[AuthorId] = frozenset()
    venue_tier: VenueTier = VenueTier.UNRANKED
    fwci: float | None = None
    indexed: bool = True
    alphabetical_order: bool = False
    flags: frozenset[PublicationFlag] = frozenset()
    institution_by_author: Mapping[AuthorId, str] = field(default_factory=dict)

    def validate(self) -> None:
        if not self.pub_id:
            raise MalformedRecordError("publication has empty pub_id")
        if not self.authors:
            raise MalformedRecordError(f"publication {self.pub_id!r} has no authors")
        if len(set(self.authors)) != len(self.authors):
            raise MalformedRecordError(
                f"publication {self.pub_id!r} has a duplicate author in the byline"
            )
        unknown = set(self.corresponding) - set(self.authors)
        if unknown:
            raise MalformedRecordError(
                f"publication {self.pub_id!r}: corresponding authors "
                f"{sorted(unknown)} are not in the byline"
            )
        if self.fwci is not None and self.fwci < 0:
            raise MalformedRecordError(
                f"publication {self.pub_id!r} has negative fwci {self.fwci}"
            )
        bad_inst = set(self.institution_by_author) - set(self.authors)
        if bad_inst:
            raise MalformedRecordError(
                f"publication {self.pub_id!r}: institutions listed for "
                f"non-authors {sorted(bad_inst)}"
            )


@dataclass(frozen=True, eq=True)
class CitationRecord:
    """One citing-document -> cited-document link.

    The citing document may be external to the corpus, so its authors,
    institutions and indexing status are carried inline. ``mention_count``
    is how many times the cited work is referenced within the citing
    document.
    """

    citing_pub: str
    cited_pub: str
    citing_authors: tuple[AuthorId, ...] = ()
    citing_institutions: frozenset[str] = frozenset()
    citing_indexed: bool = True
    mention_count: int = 1

    def validate(self) -> None:
        if self.citing_pub == self.cited_pub:
            raise MalformedRecordError(
                f"citation of {self.cited_pub!r} cites itself"
            )
        if self.mention_count < 1:
            raise MalformedRecordError(
                f"citation {self.citing_pub!r} -> {self.cited_pub!r} has "
                f"mention_count {self.mention_count}"
            )


@dataclass(frozen=True)
class RoleAssignment:
    """Roles held by each author of one publication."""

    publication: str
    roles: Mapping[AuthorId, frozenset[Role]]


@dataclass(frozen=True)
class RoleProfile:
    """Per-author role shares and per-role mean FWCI.

    ``shares[r]`` is the fraction of the author's publications in which
    role ``r`` is held. The positional shares (FA, LA, CoA, SA) sum to 1;
    CorA overlays them, so the total over all five roles may exceed 1.
    ``role_fwci`` holds the mean FWCI over the publications held in that
    role, counting only publications that carry an FWCI value; roles with
    no such publication have no entry.
    """

    author: AuthorId
    shares: Mapping[Role, float]
    role_fwci: Mapping[Role, float]


@dataclass(frozen=True)
class CorpusBundle:
    """A parsed corpus: publications plus the citation links between them.

    Every ``cited_pub`` resolves to a publication in the bundle; citing
    documents may be external. ``pub_ids`` are unique.
    """

    publications: tuple[PublicationRecord, ...]
    citations: tuple[CitationRecord, ...] = ()

    def publications_by_id(self) -> dict[str, PublicationRecord]:
        return {p.pub_id: p for p in self.publications}

    def validate(self) -> None:
        seen: set[str] = set()
        for pub in self.publications:
            pub.validate()
            if pub.pub_id in seen:
                raise MalformedRecordError(f"duplicate pub_id {pub.pub_id!r}")
            seen.add(pub.pub_id)
        for cite in self.citations:
            cite.validate()
            if cite.cited_pub not in seen:
                raise MalformedRecordError(
                    f"citation references unknown cited_pub {cite.cited_pub!r}"
                )


def classify_roles(pub: PublicationRecord) -> RoleAssignment:
    """Assign coauthorship roles from the byline.

    Sole author -> SA. Otherwise the first byline position is FA, the last
    is LA and everyone in between is CoA (a two-author paper has no CoA).
    Corresponding authorship is added on top of the positional role.
    """
    if len(set(pub.authors)) != len(pub.authors):
        raise MalformedRecordError(
            f"publication {pub.pub_id!r} has a duplicate author in the byline"
        )
    if not pub.authors:
        raise MalformedRecordError(f"publication {pub.pub_id!r} has no authors")

    roles: dict[AuthorId, set[Role]] = {a: set() for a in pub.authors}
    if len(pub.authors) == 1:
        roles[pub.authors[0]].add(Role.SA)
    else:
        roles[pub.authors[0]].add(Role.FA)
        roles[pub.authors[-1]].add(Role.LA)
        for middle in pub.authors[1:-1]:
            roles[middle].add(Role.COA)
    for author in pub.corresponding:
        roles[author].add(Role.CORA)
    return RoleAssignment(
        publication=pub.pub_id,
        roles={a: frozenset(r) for a, r in roles.items()},
    )


def build_role_profile(
    author: AuthorId, corpus: Iterable[PublicationRecord]
) -> RoleProfile:
    """Compute the author's role shares and per-role mean FWCI over a corpus."""
    own = [p for p in corpus if author in p.authors]
    if not own:
        raise NoPublicationsError(f"author {author!r} has no publications in corpus")

    held: dict[Role, list[PublicationRecord]] = {r: [] for r in ROLE_ORDER}
    for pub in own:
        assignment = classify_roles(pub)
        for role in assignment.roles[author]:
            held[role].append(pub)

    shares = {r: len(held[r]) / len(own) for r in ROLE_ORDER}
    role_fwci: dict[Role, float] = {}
    for role in ROLE_ORDER:
        values = [p.fwci for p in held[role] if p.fwci is not None]
        if values:
            role_fwci[role] = sum(values) / len(values)
    return RoleProfile(author=author, shares=shares, role_fwci=role_fwci)
