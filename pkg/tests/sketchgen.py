"""Random valid sketches as .esk text, for round-trip and enhancement tests."""
import random

NAMES = ["f", "g", "h", "k", "u", "v", "<a,b>", "x y", "pi_1", "e\"q"]


def _q(name):
    if name.replace("_", "").isalnum() and not name[0].isdigit():
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


class _Gen:
    def __init__(self, rng, tight_projections=True):
        self.rng = rng
        self.lines = []
        self.objects = []
        self.gens = []  # (name, src, tgt)
        self.tight = tight_projections
        self.counter = 0

    def fresh(self, stem):
        self.counter += 1
        base = self.rng.choice(NAMES) if stem == "g" else stem
        return f"{base}{self.counter}"

    def obj(self):
        name = self.fresh("O")
        self.objects.append(name)
        self.lines.append(f"object {_q(name)}")
        return name

    def gen(self, src, tgt, tight=None):
        name = self.fresh("g")
        if tight is None:
            tight = self.rng.random() < 0.3
        self.gens.append((name, src, tgt))
        self.lines.append(f"{'tight' if tight else 'loose'} {_q(name)} : {_q(src)} -> {_q(tgt)}")
        return name

    def cell(self, source, target, flags=""):
        name = self.fresh("c")
        self.lines.append(f"cell {_q(name)} : {source} => {target}{flags}")
        return name

    def proj(self):
        return True if self.tight else False

    def cone(self):
        rng = self.rng
        kind = rng.choice(["product", "pullback", "comma", "power2", "lax", "colax"])
        apex = self.obj()
        if kind == "product":
            k = rng.randint(0, 3)
            feet = [rng.choice(self.objects[:-1]) for _ in range(k)]
            ps = [self.gen(apex, x, self.proj()) for x in feet]
            body = f"proj = {', '.join(_q(p) for p in ps)}" if ps else ""
            self.lines.append(f"cone product({_q(apex)}{'; ' + body if body else ''})")
            return
        if kind in ("pullback", "comma"):
            a, b, c = (rng.choice(self.objects[:-1]) for _ in range(3))
            f, g = self.gen(a, c, self.proj()), self.gen(b, c, self.proj())
            p1, p2 = self.gen(apex, a, self.proj()), self.gen(apex, b, self.proj())
            lhs, rhs = f"{_q(f)} . {_q(p1)}", f"{_q(g)} . {_q(p2)}"
            if kind == "pullback":
                self.lines.append(f"eq {lhs} == {rhs}")
                self.lines.append(f"cone pullback({_q(apex)}; proj = {_q(p1)}, {_q(p2)}; "
                                  f"over left = {_q(f)}, right = {_q(g)})")
            else:
                c2 = self.cell(lhs, rhs)
                self.lines.append(f"cone comma({_q(apex)}; proj = {_q(p1)}, {_q(p2)}; "
                                  f"cell = {_q(c2)}; over left = {_q(f)}, right = {_q(g)})")
            return
        if kind == "power2":
            a = rng.choice(self.objects[:-1])
            p1, p2 = self.gen(apex, a, self.proj()), self.gen(apex, a, self.proj())
            c = self.cell(_q(p1), _q(p2))
            self.lines.append(f"cone power2({_q(apex)}; proj = {_q(p1)}, {_q(p2)}; cell = {_q(c)})")
            return
        a, b = rng.choice(self.objects[:-1]), rng.choice(self.objects[:-1])
        f = self.gen(a, b, False)
        dom, cod = self.gen(apex, a, self.proj()), self.gen(apex, b, self.proj())
        through = f"{_q(f)} . {_q(dom)}"
        if kind == "lax":
            c = self.cell(through, _q(cod))
        else:
            c = self.cell(_q(cod), through)
        self.lines.append(f"cone {kind}({_q(apex)}; proj = {_q(dom)}, {_q(cod)}; cell = {_q(c)}; "
                          f"over arrow = {_q(f)})")

    def extras(self):
        rng = self.rng
        for _ in range(rng.randint(0, 3)):
            name, src, tgt = rng.choice(self.gens)
            other = self.gen(src, tgt, False)
            flags = rng.choice(["", " iso", " colax", " iso colax"])
            c = self.cell(_q(name), _q(other), flags)
            if rng.random() < 0.5:
                tail = rng.choice([g for g in self.gens if g[1] == tgt] or [None])
                left = _q(tail[0]) if tail else ""
                self.lines.append(f"eq ({left} | {_q(c)} | ) == ({left} | {_q(c)} | )")
        for _ in range(rng.randint(0, 2)):
            name, src, tgt = rng.choice(self.gens)
            nxt = [g for g in self.gens if g[1] == tgt]
            if nxt:
                g2 = rng.choice(nxt)
                h = self.gen(src, g2[2], False)
                self.lines.append(f"eq {_q(g2[0])} . {_q(name)} == {_q(h)}")


def random_sketch_text(seed, tight_projections=True):
    rng = random.Random(seed)
    g = _Gen(rng, tight_projections)
    for _ in range(rng.randint(1, 4)):
        g.obj()
    for _ in range(rng.randint(1, 4)):
        g.gen(rng.choice(g.objects), rng.choice(g.objects))
    for _ in range(rng.randint(0, 3)):
        g.cone()
    g.extras()
    header = f"sketch {_q('S' + str(seed))}"
    return "\n".join([header] + g.lines) + "\n"
