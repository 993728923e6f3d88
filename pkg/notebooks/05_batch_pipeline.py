# %% [markdown]
# # Replicated runs from the command line
#
# `assortrewire pipeline` generates networks, bounds, targets, records and
# traces per replicate, then writes cross-replicate summaries. The same
# entry point is callable from Python.

# %%
import csv
import json
import tempfile
from pathlib import Path

from assortrewire.cli import run

out = Path(tempfile.mkdtemp()) / "er"
code = run(["pipeline", "er", "--n", "40", "--p", "0.12", "--replicates", "5", "--seed", "100",
            "--targets", "0.1,0.1,-0.1,-0.1", "--reorder", "--stride", "10", "--out-dir", str(out)])
print("exit code", code)
print(json.loads((out / "aggregate.json").read_text()))

# %% [markdown]
# Mean trace (padded replicates repeat their final values) and the
# before/after weight histogram.

# %%
rows = list(csv.DictReader(open(out / "mean_trace.csv")))
for r in rows[:: max(1, len(rows) // 6)] + rows[-1:]:
    print(r)
hist = list(csv.DictReader(open(out / "weight_histogram.csv")))
print(sum(int(h["before"]) for h in hist), "edges before,", sum(int(h["after"]) for h in hist), "after")
