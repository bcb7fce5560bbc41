"""
Reading and writing the text format
===================================

"""

import lck

src = """
scalars k;
algebra Vir basis a {
  [a,a] = (D + 2*L)*a;
}
map N : Vir -> Vir { a -> k*a; }
algebra VirN = deformed(Vir, N);
check lca VirN;
"""
ws = lck.parse(src)

# constructors are expanded; emit gives a self-contained canonical block
text = lck.emit(ws, "VirN")
print(text)

# parsing the emitted text gives back an equal object
print(lck.parse(text).get("VirN") == ws.get("VirN"))

# errors point at line and column
try:
    lck.parse("algebra B basis a { [a,a] = M*a; }")
except lck.DslError as e:
    print(e)
