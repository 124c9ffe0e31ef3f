"""Sentiment lexicon expansion over a dictionary taxonomy.

The compiled extension does the work; this package re-exports its surface:
``Dictionary`` (taxonomy and similarity queries), ``Lexicon`` and
``expand`` (seed-list growth), ``load_corpus`` / ``count_frequencies``
(document counting), ``classify_row`` and ``clause_signs`` (polarity),
``scatter_svg`` / ``scatter_csv`` (plots) and ``run_pipeline``.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
