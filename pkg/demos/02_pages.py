# Pages of a small complex on the square [0,2]^2.
from pathlib import Path

from higherss import limit, page, page_differential, parse_word, read_mfc, saturate
from higherss.engine import extension_filtration, page_positions

c = read_mfc(Path(__file__).resolve().parent.parent / "samples" / "square.json")
print("H(C) =", limit(c))

# %% First page: one term per position
w = parse_word("", 2)
for P in page_positions(c, w):
    dims = page(c, w, P).dims
    if any(dims.values()):
        print(P, dims)

# %% Differentials in direction 1 and their homology
dp = page_differential(c, w, (1, 0), 1)
print("incoming:", {k: m.tolist() for k, m in dp.incoming.items()})
print("homology:", dp.homology_dims(), "next page:", page(c, parse_word("1", 2), (1, 0)).dims)

# %% Saturating direction 2, then extending
print("S((1,1); 2^inf) =", saturate(c, w, (1, 1), 2).dims)
rep = extension_filtration(c, parse_word("1^e", 2), (0, 0), 2)
for i in rep.indices:
    print(i, rep.filtration[i], rep.graded[i])
print("total:", rep.total)

# %% Any final word lands on H(C)
for text in ("121^e2^e", "2^e1^e", "12112^e1^e"):
    print(text, page(c, parse_word(text, 2), (0, 0)).dims)
