"""
Freeze oracle values of the derivative-level boundary invariants.

Each record holds the normal-form coefficients of a random draw and the
values measured by the numeric route on a disguised copy of it (random
source diffeomorphism, rotation and boundary reparametrization).  No closed
form is evaluated here.  Regenerate with

    python3 tests/fixtures/generate_derivative_identities.py
"""

import json
from pathlib import Path

import numpy as np

from cuspidal.boundary import case1_numeric, case2_numeric
from cuspidal.synth import disguise, random_normal_form

SEED = 20240611
DRAWS = 25
OUT = Path(__file__).with_name("derivative_identities.json")


def main():
    rng = np.random.default_rng(SEED)
    records = []
    for k in range(DRAWS):
        for case in (1, 2):
            nf = random_normal_form(rng, case=case)
            f, b, _ = disguise(nf, rng)
            if case == 1:
                num = case1_numeric(f, b).to_dict()
                keep = ("kappa_prime0", "kappa_nb_prime0", "kappa_gb_prime0", "kappa_gb0")
            else:
                num = case2_numeric(f, b).to_dict()
                keep = ("tau_sing_b", "beta")
            records.append({"draw": k, "case": case, "normal_form": nf.to_dict(),
                            "oracle": {name: num[name] for name in keep}})
    OUT.write_text(json.dumps({"seed": SEED, "convention": "numeric", "records": records},
                              indent=1) + "\n")
    print(f"wrote {len(records)} records to {OUT}")


if __name__ == "__main__":
    main()
