# %% [markdown]
# # Weighted counts and PMI
#
# Training text is unsegmented.  Each line is counted under both of its
# legal patterns, each pattern weighted by a prior.  For ABCDE with priors
# (0.5, 0.5), AB is a word under either pattern and gets weight 1; CD and DE
# get 0.5 each, as do the one-character words E and C.

# %%
from tangseg.corpus import Poem
from tangseg.counting import WeightConfig, WeightedCounts, accumulate_line, count_corpus
from tangseg.pmi import SmoothingConfig, choose_split, train

counts = accumulate_line("ABCDE", WeightConfig(), WeightedCounts())
print(dict(counts.bigram_weights))
print(dict(counts.unigram_weights))

# %% [markdown]
# Priors can follow observed pattern frequencies instead, and a small weight
# epsilon can be given to pairs that straddle an assumed boundary.

# %%
table1 = WeightConfig.table1(epsilon=0.05)
print(table1.priors_5, table1.priors_7)
print(dict(accumulate_line("JKLMNOP", table1, WeightedCounts()).bigram_weights))

# %% [markdown]
# ## From counts to PMI
#
# Additive smoothing keeps every PMI finite, including pairs like 日山 never seen in
# training.

# %%
poems = [Poem(str(i), "", "", ("白日依山盡", "黃河入海流", "欲窮千里目", "更上一層樓"))
         for i in range(20)]
model = train(count_corpus(poems), SmoothingConfig(alpha=1.0))
for pair in ("白日", "依山", "山盡", "日山"):
    print(pair, round(model.pmi(pair[0], pair[1]), 3))

# %% [markdown]
# The split decision for XYZ compares PMI(XY) with PMI(YZ).

# %%
print(choose_split(model, "依", "山", "盡"))
