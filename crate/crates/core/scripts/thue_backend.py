# Line-protocol base-equation solver backed by PARI/GP.
# Request:  SOLVE a b c n m      for a*y^m = b*x^n + c
# Response: SOL x y ... then END COMPLETE or END BOUNDED
import sys

try:
    import cypari2
except ImportError:
    print("UNAVAILABLE", flush=True)
    sys.exit(1)

pari = cypari2.Pari()
pari.allocatemem(1 << 28)
pari.default("parisizemax", 1 << 31)
cache = {}


def solve(a, b, c, n, m):
    if m != n or n < 3 or c == 0:
        return None
    key = (b, a, n)
    if key not in cache:
        x = pari("'x")
        cache[key] = pari.thueinit(b * x**n - a, 1)
    sols = pari.thue(cache[key], -c)
    return [(int(s[0]), int(s[1])) for s in sols]


print("READY", flush=True)
for line in sys.stdin:
    parts = line.split()
    if not parts:
        continue
    if parts[0] == "QUIT":
        break
    if parts[0] != "SOLVE" or len(parts) != 6:
        print("END BOUNDED", flush=True)
        continue
    a, b, c, n, m = map(int, parts[1:])
    try:
        res = solve(a, b, c, n, m)
    except Exception as e:
        print(f"# {e}", file=sys.stderr)
        res = None
    if res is None:
        print("END BOUNDED", flush=True)
        continue
    for x, y in sorted(set(res)):
        print(f"SOL {x} {y}")
    print("END COMPLETE", flush=True)
