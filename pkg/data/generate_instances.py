"""
Generate the benchmark instance set: n-queens, padded pigeonhole, Model-B random
binary CSPs and graph colouring.
Outputs model files to data/generated/ and an index to data/generated/index.csv
"""
import os
import sys

import pandas as pd

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from backjump.config import settings
from backjump.frontend.generators import gen_coloring, gen_pigeonhole, gen_queens, gen_randcsp
from backjump.frontend.printer import print_model

QUEENS = [6, 8, 10, 12]

# (pigeons, holes, padding)
PIGEONHOLE = [(5, 4, 0), (5, 4, 4), (5, 4, 8), (6, 5, 0), (6, 5, 6), (7, 6, 0)]

# (n, d, p1, p2): points close to the satisfiability threshold
RANDOM_FAMILIES = [
    (20, 6, 0.3, 0.35),
    (25, 8, 0.2, 0.45),
    (30, 5, 0.2, 0.3),
]
RANDOM_SEEDS_PER_FAMILY = 10

# Mycielski graph on 11 vertices: chromatic number 4
MYCIEL3 = """c myciel3
p edge 11 20
e 1 2
e 1 4
e 1 7
e 1 9
e 2 3
e 2 6
e 2 8
e 3 5
e 3 7
e 3 10
e 4 5
e 4 6
e 4 10
e 5 8
e 5 9
e 6 11
e 7 11
e 8 11
e 9 11
e 10 11
"""


def generate_structured():
    models = [gen_queens(n) for n in QUEENS]
    models += [gen_pigeonhole(p, h, k) for p, h, k in PIGEONHOLE]
    models += [gen_coloring(MYCIEL3, k, "myciel3") for k in (3, 4)]
    return models


def generate_random(base_seed: int):
    models = []
    for n, d, p1, p2 in RANDOM_FAMILIES:
        for i in range(RANDOM_SEEDS_PER_FAMILY):
            models.append(gen_randcsp(n, d, p1, p2, base_seed + i))
    return models


def main():
    output_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "generated")
    os.makedirs(output_dir, exist_ok=True)

    print("Generating structured instances...")
    structured = generate_structured()

    print(f"Generating random instances (base seed {settings.eser_seed})...")
    random_models = generate_random(settings.eser_seed)

    rows = []
    for model in structured + random_models:
        path = os.path.join(output_dir, f"{model.name}.mod")
        with open(path, "w", encoding="utf-8") as f:
            f.write(print_model(model))
        rows.append({
            "instance": model.name,
            "family": model.name.split("-", 1)[0],
            "variables": model.num_vars,
            "constraints": len(model.constraints),
        })

    df = pd.DataFrame(rows)
    df.to_csv(os.path.join(output_dir, "index.csv"), index=False)

    print(f"\nGenerated {len(df)} instances")
    for family, count in df.groupby("family").size().items():
        print(f"  {family}: {count}")
    print(f"\nSaved to {output_dir}")

    return df


if __name__ == "__main__":
    main()
