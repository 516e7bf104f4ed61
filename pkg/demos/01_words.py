# Words, their T matrices and the regions B_w.
import numpy as np

from higherss import b_region, differential_data, is_final, parse_word, t_matrix, u_vec
from higherss.render import ascii_b

# %% A pure word: finite letters only
w = parse_word("12", 2)
d = differential_data(w)
print("a vectors:", [tuple(v) for v in d.a])
print("delta vectors:", [tuple(v) for v in d.delta])
print("T =", t_matrix(w).tolist(), " u =", tuple(u_vec(w)))

# T inverts the matrix whose columns are the delta vectors
D = np.array([list(v) for v in d.delta]).T
print("T @ D =", (t_matrix(w) @ D).tolist())

# %% B_w grows one segment per letter
for text in ("", "1", "12", "121", "1212"):
    print(f"B_{text or 'eps'}: {len(b_region(parse_word(text, 2)))} cells")
print(ascii_b(parse_word("1212", 2)))

# %% Saturated letters turn segments into rays (drawn up to a cut)
print(ascii_b(parse_word("121^e", 2), truncation=3))

# %% Alternating words give Fibonacci matrices
for k in range(1, 6):
    print(k, t_matrix(parse_word("12" * k, 2)).tolist())

print("final:", is_final(parse_word("123122^e133313^e111^e", 3)))
