# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Planted recovery sweep
#
# A reduced version of the recovery experiment: one planted set whose edge
# probability varies, scored by F-measure for each aggregate density. The
# full-size grid is in ``tests/test_acceptance.py``.

# %%
import numpy as np

from bffind.evaluation import run_experiment, single_plant_grid

grid = single_plant_grid(n=300, tau=5, plant=25, probs=(0.2, 0.4, 0.6, 0.8), seeds=range(3))
report = run_experiment(grid)

# %%
series = report.series()
probs = [x for x, _ in series["mm"]]
table = np.array([[y for _, y in series[s]] for s in ("mm", "ma", "am", "aa")])
print("p     " + "  ".join(f"{p:5.1f}" for p in probs))
for name, row in zip(("mm", "ma", "am", "aa"), table):
    print(f"{name:5s} " + "  ".join(f"{v:5.2f}" for v in row))

# %% [markdown]
# Per-row results (tab-separated) and per-solver series files can be written
# with ``report.write(directory)`` for plotting elsewhere.

# %%
print(report.to_tsv().splitlines()[0])
print(report.to_tsv().splitlines()[1])
