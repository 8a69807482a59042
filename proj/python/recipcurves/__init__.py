"""Point counts, genera and manYPoints-style record verdicts for
reciprocal-polynomial Kummer covers, their fibre products, and the related
Artin-Schreier curves over F_{q^2}."""

from ._core import (
    RecordTable,
    Tower,
    classify,
    closed_count,
    count,
    count_artin_schreier,
    count_fibre,
    genus,
    genus_fibre,
    known_table_ids,
    lower_bound,
    many_points_threshold,
    reproduce_table,
    serre_upper,
)

__all__ = [
    "RecordTable",
    "Tower",
    "classify",
    "closed_count",
    "count",
    "count_artin_schreier",
    "count_fibre",
    "genus",
    "genus_fibre",
    "known_table_ids",
    "lower_bound",
    "many_points_threshold",
    "reproduce_table",
    "serre_upper",
]
