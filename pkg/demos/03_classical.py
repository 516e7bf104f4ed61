# With one filtration the pages 1^(r-1) are the columns of the usual spectral sequence.
from higherss import page, parse_word
from higherss.oracle import classical_ss, homology_total, random_complex

c = random_complex(5, 1, ((0,), (5,)), 2, 3)
ss = classical_ss(c)
lo, hi = ss["range"]

for r in range(1, ss["stable_from"] + 1):
    w = parse_word("1" * (r - 1), 1)
    ours = [page(c, w, (P,)).dims for P in range(lo, hi + 1)]
    theirs = [ss["pages"][r][P] for P in range(lo, hi + 1)]
    print(f"r={r}", "agree" if ours == theirs else "DIFFER", ours)

print("1^inf e:", page(c, parse_word("1^e", 1), (0,)).dims, "H:", homology_total(c))
