"""Indicator formulas: H-index, CIT/DOC, role dominance, FWCI totals and
the aggregate K-index.

The K-index of an author is

    K = k_r * FWCI + CIT/DOC

where k_r rewards the winning role functions (first, corresponding and
single authorship) over the losing ones (middle coauthorship and last
authorship):

    k_r = (1 + FA + CorA + SA) / (1 + CoA + LA)

with the role shares entering as fractions of 1. FWCI is the sum of the
author's per-role mean FWCI values over all five role slots. K is
displayed as the nearest integer (ties round away from zero). The
integrated form adds externally supplied patent-activity and
commercialization components: K_i = K + K_p + K_c.
"""

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .filtering import FilterConfig, filter_citations
from .ingest import AuthorSummaryRow
from .model import AuthorId, CorpusBundle, Role, ROLE_ORDER, build_role_profile

WINNING_ROLES = (Role.FA, Role.CORA, Role.SA)
LOSING_ROLES = (Role.COA, Role.LA)


class EmptyPortfolioError(ValueError):
    """CIT/DOC is undefined for an author with zero publications."""


@dataclass(frozen=True)
class AuthorMetrics:
    """The full indicator bundle for one author."""

    author: AuthorId
    display_name: str
    doc: int
    cit: int
    cit_per_doc: float
    h_index: int | None
    k_r: float | None
    fwci_total: float | None
    k_exact: float
    k_display: int
    k_p: float = 0.0
    k_c: float = 0.0
    k_integrated: float = 0.0


def round_half_away(value: float) -> int:
    """Round to the nearest integer with ties going away from zero."""
    if value >= 0:
        return int(math.floor(value + 0.5))
    return int(math.ceil(value - 0.5))


def h_index(citation_counts: Iterable[int]) -> int:
    """Largest h such that at least h entries are >= h."""
    h = 0
    for count in sorted(citation_counts, reverse=True):
        if count <= h:
            break
        h += 1
    return h


def cit_per_doc(cit: int, doc: int) -> float:
    """Citations per publication; undefined (never silently 0) for doc == 0."""
    if doc < 1:
        raise EmptyPortfolioError("CIT/DOC requires at least one publication")
    return cit / doc


def role_dominance(
    shares: Mapping[Role, float], alphabetical: bool = False
) -> float:
    """Role dominance coefficient from role shares (fractions of 1).

    Missing shares count as 0. When the author's field lists authors
    alphabetically the positional roles carry no signal, so the
    coefficient is taken as exactly 1.
    """
    if alphabetical:
        return 1.0
    winning = sum(shares.get(r, 0.0) for r in WINNING_ROLES)
    losing = sum(shares.get(r, 0.0) for r in LOSING_ROLES)
    return (1.0 + winning) / (1.0 + losing)


def fwci_total(role_fwci: Mapping[Role, float]) -> float:
    """Sum of the per-role mean FWCI values over all five role slots;
    missing slots contribute 0."""
    return sum(role_fwci.get(r, 0.0) for r in ROLE_ORDER)


def k_index(
    k_r: float | None,
    fwci: float | None,
    cit: int,
    doc: int,
) -> tuple[float, int]:
    """Aggregate index K = k_r * FWCI + CIT/DOC.

    A missing role-dominance coefficient defaults to 1 and a missing FWCI
    total to 0. Returns (exact value, displayed integer).
    """
    exact = (1.0 if k_r is None else k_r) * (0.0 if fwci is None else fwci)
    exact += cit_per_doc(cit, doc)
    return exact, round_half_away(exact)


def integrated_k(k_exact: float, k_p: float, k_c: float) -> float:
    """K plus the externally supplied patent and commercialization parts."""
    return k_exact + k_p + k_c


def ringelmann_share(n_coauthors: int) -> float:
    """Modeled average individual contribution (percent) among n coauthors:
    100 - 7*(n - 1), clamped at 0 for large groups."""
    if n_coauthors < 1:
        raise ValueError("coauthor count must be at least 1")
    return max(0.0, 100.0 - 7.0 * (n_coauthors - 1))


def compute_author_metrics(
    author: AuthorId,
    corpus: CorpusBundle,
    cfg: FilterConfig | None = None,
    k_p: float = 0.0,
    k_c: float = 0.0,
    display_name: str | None = None,
) -> AuthorMetrics:
    """Full pipeline over a corpus: role profile, citation filtering and
    every indicator.

    DOC counts the author's publications in the corpus; CIT and the
    per-publication counts feeding the H-index are the filtered valid
    citations under ``cfg``. The role-dominance coefficient is pinned to 1
    when every one of the author's publications has an alphabetical
    byline.
    """
    cfg = cfg if cfg is not None else FilterConfig()
    own = [p for p in corpus.publications if author in p.authors]
    if not own:
        raise EmptyPortfolioError(
            f"author {author!r} has no publications in corpus"
        )
    profile = build_role_profile(author, corpus.publications)
    cit, audits = filter_citations(author, corpus, cfg)
    per_pub_counts = [a.accepted for a in audits]

    alphabetical = all(p.alphabetical_order for p in own)
    k_r = role_dominance(profile.shares, alphabetical)
    fwci = fwci_total(profile.role_fwci) if profile.role_fwci else None
    doc = len(own)
    k_exact, k_display = k_index(k_r, fwci, cit, doc)
    return AuthorMetrics(
        author=author,
        display_name=display_name if display_name is not None else author,
        doc=doc,
        cit=cit,
        cit_per_doc=cit_per_doc(cit, doc),
        h_index=h_index(per_pub_counts),
        k_r=k_r,
        fwci_total=fwci,
        k_exact=k_exact,
        k_display=k_display,
        k_p=k_p,
        k_c=k_c,
        k_integrated=integrated_k(k_exact, k_p, k_c),
    )


def metrics_from_summary(
    row: AuthorSummaryRow, k_p: float = 0.0, k_c: float = 0.0
) -> AuthorMetrics:
    """Indicators from a pre-aggregated summary row (no filtering step).

    The role-dominance coefficient is computed only when the row carries
    at least one share cell, and the FWCI total only when it carries at
    least one per-role FWCI cell; otherwise they stay absent and the
    K-index falls back to its defaults (1 and 0 respectively).
    """
    if row.doc is None or row.doc < 1:
        raise EmptyPortfolioError(
            f"summary row for {row.author!r} has no publication count"
        )
    if row.cit is None:
        raise EmptyPortfolioError(
            f"summary row for {row.author!r} has no citation count"
        )
    k_r = role_dominance(row.shares) if row.shares else None
    fwci = fwci_total(row.role_fwci) if row.role_fwci else None
    k_exact, k_display = k_index(k_r, fwci, row.cit, row.doc)
    return AuthorMetrics(
        author=row.author,
        display_name=row.display_name,
        doc=row.doc,
        cit=row.cit,
        cit_per_doc=cit_per_doc(row.cit, row.doc),
        h_index=row.h_index,
        k_r=k_r,
        fwci_total=fwci,
        k_exact=k_exact,
        k_display=k_display,
        k_p=k_p,
        k_c=k_c,
        k_integrated=integrated_k(k_exact, k_p, k_c),
    )


def per_publication_citations(
    author: AuthorId, corpus: CorpusBundle, cfg: FilterConfig | None = None
) -> Sequence[int]:
    """Valid citation counts per publication of the author, in corpus order."""
    cfg = cfg if cfg is not None else FilterConfig()
    _, audits = filter_citations(author, corpus, cfg)
    return [a.accepted for a in audits]
