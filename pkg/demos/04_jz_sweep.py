# %% [markdown]
# # Sweeping the anisotropy
#
# The CLI writes plot-ready CSV. Here we call it in-process and read the rows
# back to follow C and MC of the pair (1, 3) as Jz/J changes.

# %%
import csv
import io
from contextlib import redirect_stdout

from jwent.cli import main

buf = io.StringIO()
with redirect_stdout(buf):
    code = main(["sweep", "--n", "6", "--sector", "3", "--pairs", "1-3,1-2",
                 "--grid=-1.5,-1,-0.5,0,0.5,1,1.5"])
print("exit code", code)
rows = list(csv.DictReader(io.StringIO(buf.getvalue())))

# %%
for r in rows:
    print(f"{float(r['jz_ratio']):+.2f}  ({r['i']},{r['j']})  "
          f"C={float(r['concurrence']):.4f}  MC={float(r['mode_concurrence']):.4f}")
