"""Power sketches and strictification of pseudo-natural transformations.

A power sketch has a base object B and tight product cones whose factors
are all B.  Between models of such a sketch in finite categories every
transformation whose tight witnesses are invertible is isomorphic to one
whose tight witnesses are identities.
"""
from dataclasses import dataclass

from . import fincat as fc
from .enhanced import Weakness
from .errors import NotAPowerTheory, TargetLacksPowers
from .models import Modification, WTransform
from .targets import ChordFinCat

S, P, L, C = Weakness.S, Weakness.P, Weakness.L, Weakness.C


@dataclass(frozen=True)
class PowerTheory:
    sketch: object
    base: str
    powers: tuple  # (apex, arity, projection names)


def power_structure(s):
    """The PowerTheory of ``s``, or raise NotAPowerTheory explaining why not."""
    p = s.presentation
    bases = set()
    powers = []
    apexes = set()
    for cone in s.cones:
        if cone.kind.family != "product":
            raise NotAPowerTheory(f"cone at {cone.apex!r} is a {cone.kind.family} cone")
        names = []
        for _, q in cone.proj:
            if len(q.gens) != 1:
                raise NotAPowerTheory(f"projection {q} of {cone.apex!r} is not a generator")
            bases.add(q.tgt)
            names.append(q.gens[0])
        if cone.apex in apexes:
            raise NotAPowerTheory(f"{cone.apex!r} carries two cones")
        apexes.add(cone.apex)
        powers.append((cone.apex, cone.kind.arity, tuple(names)))
    if len(bases) > 1:
        raise NotAPowerTheory(f"cones have different factors {sorted(bases)}")
    if not bases:
        others = [o for o in p.objects if o not in apexes]
        if len(others) != 1:
            raise NotAPowerTheory("no base object can be determined")
        bases = set(others)
    base = bases.pop()
    if base in apexes:
        raise NotAPowerTheory(f"the base {base!r} is itself a cone apex")
    for o in p.objects:
        if o != base and o not in apexes:
            raise NotAPowerTheory(f"object {o!r} is neither the base nor a power")
    return PowerTheory(s, base, tuple(powers))


def is_power_theory(s):
    try:
        power_structure(s)
    except NotAPowerTheory:
        return False
    return True


def _invert(K):
    ob = [0] * K.target.n_obj
    for a, x in enumerate(K.ob):
        ob[x] = a
    mor = [0] * K.target.n_mor
    for u, x in enumerate(K.mor):
        mor[x] = u
    return fc.FinFunctor(K.target, K.source, ob, mor, check=False)


def _comparison(N, apex, arity, projs):
    """Iso from N(apex) to the canonical power, with the canonical cone."""
    base = N.obj(N.sketch.presentation.g1(projs[0]).tgt) if projs else None
    diagram = [base] * arity
    kind = fc.TightProduct(arity)
    if arity == 0:
        canon = fc.canonical_limit(kind, [])
    else:
        canon = fc.canonical_limit(kind, diagram)
    cand = fc.ConeWitness(kind, N.obj(apex), [N.one(q) for q in projs])
    report = fc.verify_cone(cand, diagram)
    if not report:
        raise TargetLacksPowers(f"value at {apex!r} is not a power: {report.first_failure}")
    K, _ = report.witness
    return K, _invert(K), canon, diagram


def strictify(t, theory=None, target=None):
    """``(psi, upsilon)`` with psi at (s, w) and upsilon: psi => t invertible."""
    M, N = t.source, t.target
    T = target or M.target
    if not isinstance(T, ChordFinCat) or not isinstance(M.target, ChordFinCat):
        raise TargetLacksPowers("strictification needs powers computed in the engine")
    theory = theory or power_structure(M.sketch)
    if not isinstance(theory, PowerTheory):
        theory = power_structure(theory)
    p = M.sketch.presentation
    lax = t.w != C
    base = theory.base
    comps = {base: t.components[base]}
    ups = {base: T.id2(t.components[base])}
    for apex, arity, projs in theory.powers:
        K, Kinv, canon, diagram = _comparison(N, apex, arity, projs)
        legs = [T.comp1(t.components[base], M.one(q)) for q in projs]
        cand = fc.ConeWitness(fc.TightProduct(arity), M.obj(apex), legs)
        psi_x = T.comp1(Kinv, fc.mediate(cand, diagram, canon))
        comps[apex] = psi_x
        cells = []
        for q in projs:
            x = t.witness(q)
            if lax:
                x = T.inverse2(x)
                if x is None:
                    raise NotAPowerTheory(f"witness at projection {q!r} is not invertible")
            cells.append(x.components)
        lifted = fc.lift_cell(canon, T.comp1(K, psi_x), T.comp1(K, t.components[apex]), cells)
        ups[apex] = fc.FinNatTrans(psi_x, t.components[apex],
                                   [Kinv.mor[x] for x in lifted.components], check=False)
    witnesses = {}
    for g in p.gen1:
        phi_g = t.witness(g.name)
        ux, uy = ups[g.src], ups[g.tgt]
        if lax:
            first = T.whisker(N.one(g.name), ux, None)
            last = T.whisker(None, T.inverse2(uy), M.one(g.name))
            cell = T.vcomp(last, T.vcomp(phi_g, first))
        else:
            first = T.whisker(None, uy, M.one(g.name))
            last = T.whisker(N.one(g.name), T.inverse2(ux), None)
            cell = T.vcomp(last, T.vcomp(phi_g, first))
        if not T.is_id2(cell):
            witnesses[g.name] = cell
    psi = WTransform(M, N, S, t.w, comps, witnesses)
    return psi, Modification(psi, t, ups)


def reconstruct(psi, upsilon, wp=P):
    """Paste ``upsilon`` back onto ``psi``: the witnesses of the original."""
    M, N = psi.source, psi.target
    T = M.target
    lax = psi.w != C
    out = {}
    for g in M.sketch.presentation.gen1:
        ux, uy = upsilon.components[g.src], upsilon.components[g.tgt]
        if lax:
            cell = T.vcomp(T.whisker(None, uy, M.one(g.name)),
                           T.vcomp(psi.witness(g.name), T.whisker(N.one(g.name), T.inverse2(ux), None)))
        else:
            cell = T.vcomp(T.whisker(N.one(g.name), ux, None),
                           T.vcomp(psi.witness(g.name), T.whisker(None, T.inverse2(uy), M.one(g.name))))
        out[g.name] = cell
    comps = {o: T.tgt2(x) for o, x in upsilon.components.items()}
    return WTransform(M, N, wp, psi.w, comps, {k: v for k, v in out.items() if not T.is_id2(v)})
