# %% [markdown]
# # Patterns, boundary strings and pattern statistics
#
# A segmented line can be written as a list of words or as a string of
# N/P decisions, one per gap between characters.  The two forms are
# interchangeable.

# %%
from pathlib import Path

from tangseg.corpus import (
    boundaries_of,
    format_pattern_stats,
    parse_gold,
    pattern_of,
    pattern_stats,
    words_from_boundaries,
)

words = ["白日", "依山", "盡"]
print(pattern_of(words), boundaries_of(words))
print(words_from_boundaries("黃河入海流", "NPPN"))

# %% [markdown]
# Seven-character lines have six gaps.  2-2-2-1 is NPNPNP and 2-2-1-2 is NPNPPN.

# %%
for w in (["AB", "CD", "EF", "G"], ["AB", "CD", "E", "FG"]):
    print("-".join(map(str, map(len, w))), boundaries_of(w))

# %% [markdown]
# ## Pattern frequencies of a gold file
#
# The bundled sample gold file was generated with pattern proportions taken
# from a large annotated collection, so 2-1-2 and 2-2-1-2 dominate.

# %%
data = Path(__file__).resolve().parent.parent / "data" / "sample_gold.jsonl"
gold, diagnostics = parse_gold(data.read_bytes(), octave=True)
print(len(gold), "poems,", len(diagnostics), "diagnostics")
print(format_pattern_stats(pattern_stats(gold)))
