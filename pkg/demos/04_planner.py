# From a normal vector to a final word and back.
from higherss import continued_fraction, normal_vector, plan_word
from higherss.planner import tau_from_cf

for N in [(3, 5), (5, 8), (2, 7), (1, 0)]:
    for j1 in (1, 2):
        try:
            p = plan_word(N, j1)
        except ValueError as exc:
            print(N, j1, "->", exc)
            continue
        print(N, j1, "->", p.omega, "trace", p.trace, "back to", normal_vector(p.omega))

# %% Both continued fraction expansions and the words they spell
for cf in continued_fraction((8, 13)):
    print(cf, tau_from_cf(cf))

# %% Extra copies of j1 before saturating leave the normal vector alone
for k in range(4):
    print(k, plan_word((3, 5), 1, k).omega)
