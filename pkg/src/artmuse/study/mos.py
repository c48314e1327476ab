"""Mean-opinion-score aggregation and the study's paired comparisons.

The report mirrors the three columns of the subjective-results table:

    (A) baseline  - mismatched-emotion music
    (B) existing  - matched-emotion music (both matched clips for
                    photographs, where style is not relevant)
    (C) ours      - matched emotion + style music (artworks only)
"""

from dataclasses import dataclass, field

import numpy as np

from .ttest import paired_t_test

COLUMNS = ("baseline", "matched_emotion", "matched_emotion_style")
COLUMN_TITLES = {
    "baseline": "(A) Baseline (mismatched emotion)",
    "matched_emotion": "(B) Existing (matched emotion)",
    "matched_emotion_style": "(C) Ours (matched emotion & style)",
}
CONDITION_COLUMN = {
    "mismatched_emotion": "baseline",
    "matched_emotion": "matched_emotion",
    "matched_extra": "matched_emotion",
    "matched_emotion_style": "matched_emotion_style",
}


@dataclass
class MOSReport:
    cells: dict = field(default_factory=dict)
    # (media type, column) -> (mean, count); absent when no ratings landed

    def mean(self, media_type, column):
        cell = self.cells.get((media_type, column))
        return None if cell is None else cell[0]

    def to_text(self):
        medias = sorted({m for m, _ in self.cells})
        lines = ["Mean opinion scores (1 Bad .. 5 Excellent)"]
        for column in COLUMNS:
            lines.append(f"  {COLUMN_TITLES[column]}")
            for media in medias:
                cell = self.cells.get((media, column))
                value = (
                    "      -" if cell is None
                    else f"{cell[0]:7.4f} (n={cell[1]})"
                )
                lines.append(f"    {media:<12} {value}")
        return "\n".join(lines)

    def to_csv(self):
        medias = sorted({m for m, _ in self.cells})
        lines = ["media_type," + ",".join(COLUMNS)]
        for media in medias:
            row = [media]
            for column in COLUMNS:
                cell = self.cells.get((media, column))
                row.append("" if cell is None else repr(cell[0]))
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def mos(records, media_of, grouping=None):
    """MOSReport over rating records.

    ``media_of`` maps image id -> media type. ``grouping`` overrides the
    default (media type, table column) cell key; it receives a record and
    returns any hashable key.
    """
    if grouping is None:
        def grouping(record):
            return (media_of[record.image_id],
                    CONDITION_COLUMN[record.condition])
    sums = {}
    for record in records:
        key = grouping(record)
        total, count = sums.get(key, (0.0, 0))
        sums[key] = (total + record.rating, count + 1)
    return MOSReport(cells={
        key: (total / count, count) for key, (total, count) in sums.items()
    })


def per_subject_column_means(records, media_of, media_type, column):
    """subject id -> mean rating over that media's images in one column."""
    by_subject = {}
    for record in records:
        if media_of[record.image_id] != media_type:
            continue
        if CONDITION_COLUMN[record.condition] != column:
            continue
        by_subject.setdefault(record.subject_id, []).append(record.rating)
    return {s: float(np.mean(v)) for s, v in by_subject.items()}


STUDY_COMPARISONS = (
    ("artwork", "matched_emotion", "matched_emotion_style", "B_vs_C"),
    ("artwork", "baseline", "matched_emotion", "A_vs_B"),
    ("photograph", "baseline", "matched_emotion", "A_vs_B"),
)


def study_t_tests(records, media_of, alpha=0.05):
    """The study's paired t-tests on per-subject means.

    Returns {(media type, comparison name): TTestResult}; comparisons with
    fewer than two subjects present in both columns are omitted.
    """
    out = {}
    for media, col_a, col_b, name in STUDY_COMPARISONS:
        means_a = per_subject_column_means(records, media_of, media, col_a)
        means_b = per_subject_column_means(records, media_of, media, col_b)
        subjects = sorted(set(means_a) & set(means_b))
        if len(subjects) < 2:
            continue
        a = [means_a[s] for s in subjects]
        b = [means_b[s] for s in subjects]
        # report the later column minus the earlier, so positive t means
        # the richer strategy won
        out[(media, name)] = paired_t_test(b, a, alpha=alpha)
    return out


def t_tests_to_text(results):
    lines = ["Paired t-tests (two-tailed, 95% confidence)"]
    for (media, name), r in sorted(results.items()):
        verdict = "reject H0" if r.reject else "fail to reject H0"
        extra = " [degenerate]" if r.degenerate else ""
        lines.append(
            f"  {media:<12} {name}: t({r.df}) = {r.t:.4f}, "
            f"p = {r.p:.3g} -> {verdict}{extra}"
        )
    return "\n".join(lines)
