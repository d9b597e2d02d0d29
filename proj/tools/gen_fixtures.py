#!/usr/bin/env python3
"""Writes the regression fixtures. Expected values come from closed forms, not
from running the engine, so `ptcalc regress` compares two independent sources."""

import json
import pathlib
import sys

OUT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "fixtures")


def s(x):
    return str(x)


def write(name, config, expect):
    OUT.mkdir(parents=True, exist_ok=True)
    body = dict(config)
    body["expect"] = expect
    (OUT / f"{name}.json").write_text(json.dumps(body, indent=2) + "\n")


def dihedral_genus_x(p, s_):
    # Z/<tau> over P^1 with s branch points of type <tau>
    return (s_ * (p - 1)) // 4 - p + 1


def dihedral_genus_z(p, s_):
    return 1 - 2 * p + s_ * p // 2


for p in (3, 5, 7, 11):
    for s_ in (4, 6, 8):
        if (s_ * (p - 1)) % 4:
            continue
        write(f"dihedral{p}_s{s_}_verify",
              {"command": "verify", "group": f"dihedral:{p}", "subgroup": "tau", "reps": ["W"],
               "signature": f"C1:{s_}"},
              {"exit_code": 0, "results": {
                  "b_vector": [s(p - 1)] + ["-1"] * ((p - 1) // 2),
                  "double_coset_count": s((p + 1) // 2),
                  "b": s(p), "q": "1",
                  "condition_total": "0",
                  "genus_X": s(dihedral_genus_x(p, s_)),
                  "dimension": s(dihedral_genus_x(p, s_)),
                  "genus_Z": s(dihedral_genus_z(p, s_))}})

# The worked CLI example: dihedral:5 with six branch points of type <tau>.
write("cli_example_dihedral5",
      {"command": "verify", "group": "dihedral:5", "subgroup": "tau", "reps": "W", "signature": "C1:6"},
      {"exit_code": 0, "results": {"b": "5", "q": "1", "genus_X": "2"}})

# Z/2 x Z/2 acting on the fibre product of two double covers of P^1.
for s1, s2 in ((4, 6), (6, 6), (4, 8)):
    g1, g2 = s1 // 2 - 1, s2 // 2 - 1
    klein = {"b_vector": ["2", "0", "0", "-2"], "b": "2", "q": "2",
             "kanev_coefficients": ["0", "0", "0", "1"], "kanev_degree": "1", "kanev_certificate": "0",
             "dimension": s(g1 + g2), "genus_X": s(s1 + s2 - 3)}
    write(f"klein_s{s1}_{s2}_verify",
          {"command": "verify", "group": "klein", "subgroup": "trivial", "reps": ["W1", "W2"],
           "signature": f"tau1:{s1},tau2:{s2}"},
          {"exit_code": 0, "results": klein})
    write(f"klein_s{s1}_{s2}_product",
          {"command": "product", "group": "z2", "subgroup": "trivial", "reps": ["W"], "signature": f"C1:{s1}|C1:{s2}"},
          {"exit_code": 0, "results": {"base/b": "2", "base/q": "1",
                                       **{f"product/{k}": v for k, v in klein.items()}}})

# D_p x D_p products on the (s1, s2) grid.
for p in (3, 5, 7):
    for s1 in (4, 6, 8):
        for s2 in (4, 6, 8):
            write(f"dihedral{p}_product_s{s1}_{s2}",
                  {"command": "product", "group": f"dihedral:{p}", "subgroup": "tau", "reps": ["W"],
                   "signature": f"C1:{s1}|C1:{s2}"},
                  {"exit_code": 0, "results": {
                      "base/b": s(p), "base/q": "1",
                      "product/b": s(2 * p), "product/q": s(p),
                      "product/double_coset_count": s(((p + 1) // 2) ** 2),
                      "product/dimension": s((p - 1) * (s1 + s2 - 8) // 4),
                      "product/genus_X": s((s1 + s2) * (p * p - p) // 4 - p * p + 1),
                      "product/kanev_degree": s((p - 1) ** 2),
                      "product/kanev_certificate": s((p - 1) * (p - 2))}})

# The D_p x D_p showcase.
for p, s1, s2 in ((3, 4, 6), (5, 4, 6), (5, 8, 8), (7, 6, 4)):
    half = (p - 1) // 2
    gY = (s1 + s2) // 2 - 1
    gYt = p * (s1 + s2) // 2 - 2 * p + 1
    write(f"demo_p{p}_s{s1}_{s2}",
          {"command": "dihedral-demo", "p": p, "s1": s1, "s2": s2},
          {"exit_code": 0, "results": {
              "Kanev/b": s(2 * p), "Kanev/q": s(p),
              "genera/g_Y": s(gY), "genera/g_Ytilde": s(gYt),
              "genera/g_X1": s(s1 * (p - 1) // 4 - p + 1), "genera/g_X2": s(s2 * (p - 1) // 4 - p + 1),
              "genera/g_X": s((s1 + s2) * (p * p - p) // 4 - p * p + 1),
              "genera/g_Z": s(1 - 4 * p * p + (s1 + s2) * p * p),
              "D_p/b": s(p), "D_p/q": "1"}})
    assert (s1 + s2) * (p * p - p) // 4 - p * p + 1 == \
        (s1 * (p - 1) // 4 - p + 1) + (s2 * (p - 1) // 4 - p + 1) + half * (gYt - gY)

write("decompose_dihedral2_3",
      {"command": "decompose", "group": "dihedral2:3", "subgroup": "H^2", "signature": "tau1:4,tau2:6"},
      {"exit_code": 0, "results": {"genus": "7"}})

# Input errors exit with code 2.
write("error_even_conductor",
      {"command": "verify", "group": "dihedral:4", "subgroup": "tau", "reps": ["W"], "signature": "C1:6"},
      {"exit_code": 2})
write("error_unknown_subgroup",
      {"command": "verify", "group": "dihedral:5", "subgroup": "rho", "reps": ["W"], "signature": "C1:6"},
      {"exit_code": 2})
write("error_odd_branch_count",
      {"command": "dihedral-demo", "p": 3, "s1": 5, "s2": 6},
      {"exit_code": 2})
