"""
Building a supervised training set
==================================

Each reachable, solvable state of a level is labelled with the first move
of a shortest solution. Eight rotations and reflections of every sample
are kept, and the result is split into train and test files.
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from sokosearch import load_corpus
from sokosearch.dataset import Sample, build_dataset, make_samples

corpus = {lv.name: lv for lv in load_corpus()}
levels = [corpus[n] for n in ("L03", "L04", "L10")]

# One labelled state, shown as its 32x32 code grid (cropped).
first = make_samples(corpus["L03"])[0]
print("label:", first.label.name)
print(first.encoding[:5, :7])

out = Path(tempfile.mkdtemp()) / "sokoban-data"
manifest = build_dataset(levels, out, split=0.1, seed=0)
print(json.dumps({k: v for k, v in vars(manifest).items() if k != "label_counts"}, indent=2))

# Labels are perfectly balanced: each label's eight images cover every
# direction exactly twice.
lines = (out / "train.tsv").read_text().splitlines()
sample = Sample.from_line(lines[0])
print("first training row:", sample.label.name, "non-exterior cells:", int(np.count_nonzero(sample.encoding)))
