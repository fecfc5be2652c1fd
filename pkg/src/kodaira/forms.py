"""Exterior calculus with polynomial coefficients on the universal cover.

Forms live on C^2 in four formal variables (z, zbar, zeta, zetabar) with the
conjugated variables treated as independent; the same engine instantiated
over (x, y, u, v) handles the real picture.  Coefficients are NumberValues,
so every identity here is checked exactly.

The module builds the invariant generators of the de Rham and Dolbeault
cohomologies, verifies their defining identities, and computes the action of
automorphism lifts on Dolbeault cohomology together with traces,
determinants and Lefschetz numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactfield import DomainError, NumberValue, divide, in_lattice, lattice_coords
from .lifts import SpecialLift, MapClass, descent_check, deck_lift, z_coefficient
from .pi1 import generators, to_affine

ZERO_EXPS = (0, 0, 0, 0)

COMPLEX_NAMES = (("z", "zbar", "zeta", "zetabar"), ("dz", "dzbar", "dzeta", "dzetabar"))
REAL_NAMES = (("x", "y", "u", "v"), ("dx", "dy", "du", "dv"))


class NonConstantRho(DomainError):
    """The phi^1 coefficient of f* phi^2 - phi^2 failed to be constant."""


class BasisExpressionFailure(DomainError):
    """A pullback did not land in the span of the listed generators."""


def _merge_word(w1, w2):
    """Concatenate wedge words; returns (sign, sorted word) or (0, ()) when
    an index repeats."""
    word = list(w1)
    sign = 1
    for k in w2:
        if k in word:
            return 0, ()
        pos = len(word)
        while pos > 0 and word[pos - 1] > k:
            pos -= 1
        sign *= -1 if (len(word) - pos) % 2 else 1
        word.insert(pos, k)
    return sign, tuple(word)


class PolyForm:
    """A differential form: map (variable exponents, wedge word) -> value."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if v}

    def __eq__(self, other):
        return (
            isinstance(other, PolyForm)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return PolyForm(self.ring, out)

    def __neg__(self):
        return PolyForm(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, PolyForm):
            return NotImplemented
        return PolyForm(self.ring, {k: v * scalar for k, v in self.terms.items()})

    __rmul__ = __mul__

    def coeff_at(self, exps, word):
        return self.terms.get((exps, word), self.ring.zero())

    def __repr__(self):
        return format_form(self, COMPLEX_NAMES)


def format_form(form, names):
    if not form.terms:
        return "0"
    vars_, diffs = names
    parts = []
    for (exps, word), v in sorted(form.terms.items(), key=lambda t: (len(t[0][1]), t[0])):
        factors = [f"({v})"]
        for k, e in enumerate(exps):
            if e:
                factors.append(vars_[k] + (f"^{e}" if e > 1 else ""))
        factors.extend(diffs[k] for k in word)
        parts.append("*".join(factors))
    return " + ".join(parts)


def form_zero(ring):
    return PolyForm(ring, {})


def constant(ring, value):
    return PolyForm(ring, {(ZERO_EXPS, ()): ring.value(value)})


def variable(ring, k):
    exps = tuple(1 if j == k else 0 for j in range(4))
    return PolyForm(ring, {(exps, ()): ring.one()})


def differential(ring, k):
    return PolyForm(ring, {(ZERO_EXPS, (k,)): ring.one()})


def wedge(a, b):
    """Graded product; on 0-forms this is plain polynomial multiplication."""
    out = {}
    for (e1, w1), v1 in a.terms.items():
        for (e2, w2), v2 in b.terms.items():
            sign, word = _merge_word(w1, w2)
            if sign == 0:
                continue
            exps = tuple(x + y for x, y in zip(e1, e2))
            key = (exps, word)
            add = v1 * v2 * sign
            cur = out.get(key)
            out[key] = add if cur is None else cur + add
    return PolyForm(a.ring, out)


def _d_vars(a, var_indices):
    out = {}
    for (exps, word), v in a.terms.items():
        for k in var_indices:
            if not exps[k]:
                continue
            sign, new_word = _merge_word((k,), word)
            if sign == 0:
                continue
            new_exps = tuple(e - 1 if j == k else e for j, e in enumerate(exps))
            key = (new_exps, new_word)
            add = v * (exps[k] * sign)
            cur = out.get(key)
            out[key] = add if cur is None else cur + add
    return PolyForm(a.ring, out)


def exterior_d(a):
    return _d_vars(a, (0, 1, 2, 3))


def dbar(a):
    """The part of d differentiating the barred variables."""
    return _d_vars(a, (1, 3))


def conjugate_form(a):
    """Complex conjugation: swaps each variable and differential with its
    bar and conjugates coefficients.  Complex instantiation only."""
    swap = {0: 1, 1: 0, 2: 3, 3: 2}
    out = {}
    for (exps, word), v in a.terms.items():
        new_exps = (exps[1], exps[0], exps[3], exps[2])
        sign, new_word = _merge_word((), tuple(swap[k] for k in word))
        key = (new_exps, new_word)
        add = v.conjugate() * sign
        cur = out.get(key)
        out[key] = add if cur is None else cur + add
    return PolyForm(a.ring, out)


def substitute(a, images):
    """Pull back a along the self-map whose variable images are the given
    0-forms; differentials transform through exterior_d of the images."""
    ring = a.ring
    d_images = [exterior_d(im) for im in images]
    out = form_zero(ring)
    for (exps, word), v in a.terms.items():
        term = constant(ring, v)
        for k, e in enumerate(exps):
            for _ in range(e):
                term = wedge(term, images[k])
        for k in word:
            term = wedge(term, d_images[k])
        out = out + term
    return out


@dataclass(frozen=True)
class AffineCoverMap:
    """(z, zeta) -> (a_z z + b_z, e_zeta zeta + q2 z^2 + q1 z + q0)."""

    a_z: NumberValue
    b_z: NumberValue
    e_zeta: NumberValue
    q0: NumberValue
    q1: NumberValue
    q2: NumberValue

    def images(self, ring):
        z, zb = variable(ring, 0), variable(ring, 1)
        zeta, zetab = variable(ring, 2), variable(ring, 3)
        big_z = z * self.a_z + constant(ring, self.b_z)
        big_zb = zb * self.a_z.conjugate() + constant(ring, self.b_z.conjugate())
        big_zeta = (
            zeta * self.e_zeta
            + wedge(z, z) * self.q2
            + z * self.q1
            + constant(ring, self.q0)
        )
        big_zetab = (
            zetab * self.e_zeta.conjugate()
            + wedge(zb, zb) * self.q2.conjugate()
            + zb * self.q1.conjugate()
            + constant(ring, self.q0.conjugate())
        )
        return [big_z, big_zb, big_zeta, big_zetab]


def cover_map(l, d):
    """The AffineCoverMap of a SpecialLift (or of a deck re-expressed as one)."""
    from .exactfield import d_form

    da = d_form(d.tau_b, l.alpha, d.ring.one())
    return AffineCoverMap(
        a_z=l.alpha,
        b_z=l.beta,
        e_zeta=d.ring.value((l.alpha * l.alpha.conjugate()).rational()),
        q0=l.v,
        q1=z_coefficient(l, d),
        q2=d.c * l.alpha * (da * Fraction(1, 2)),
    )


def pullback(a, f):
    return substitute(a, f.images(a.ring))


def re_value(w):
    return (w + w.conjugate()) * Fraction(1, 2)


def im_value(w, ring=None):
    """Im(w) as a ring value: (w - conj(w)) / (2i)."""
    ring = ring or w.ring
    return (w - w.conjugate()) * ring.i() * Fraction(-1, 2)


def holomorphic_generators(d):
    """phi1 = dz and phi2 = -(c/(tau_B - conj tau_B))(z - zbar) dz + dzeta,
    plus their conjugates."""
    ring = d.ring
    k = divide(d.c, d.tau_b.value - d.tau_b.conjugate())
    z, zb = variable(ring, 0), variable(ring, 1)
    phi1 = differential(ring, 0)
    phi2 = wedge((zb - z) * k, differential(ring, 0)) + differential(ring, 2)
    return {
        "phi1": phi1,
        "phi2": phi2,
        "phibar1": conjugate_form(phi1),
        "phibar2": conjugate_form(phi2),
    }


BLOCK_ORDER = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (2, 2))


def dolbeault_basis(d):
    """The named generators of each H^{p,q}, plus the dbar-exact forms used
    to reduce pullbacks in bidegrees (1,1) and (1,2)."""
    g = holomorphic_generators(d)
    p1, p2, q1, q2 = g["phi1"], g["phi2"], g["phibar1"], g["phibar2"]
    basis = {
        (0, 0): [("1", constant(d.ring, 1))],
        (1, 0): [("phi1", p1)],
        (0, 1): [("phibar1", q1), ("phibar2", q2)],
        (2, 0): [("phi1^phi2", wedge(p1, p2))],
        (1, 1): [("phi1^phibar2", wedge(p1, q2)), ("phi2^phibar1", wedge(p2, q1))],
        (0, 2): [("phibar1^phibar2", wedge(q1, q2))],
        (2, 1): [
            ("phi1^phi2^phibar1", wedge(wedge(p1, p2), q1)),
            ("phi1^phi2^phibar2", wedge(wedge(p1, p2), q2)),
        ],
        (1, 2): [("phi2^phibar1^phibar2", wedge(p2, wedge(q1, q2)))],
        (2, 2): [("phi1^phi2^phibar1^phibar2", wedge(wedge(p1, p2), wedge(q1, q2)))],
    }
    exacts = {
        (1, 1): [("phi1^phibar1", wedge(p1, q1))],
        (1, 2): [("phi1^phibar1^phibar2", wedge(p1, wedge(q1, q2)))],
    }
    return basis, exacts


def real_generators(d):
    """The invariant real 1-forms e^1..e^4 and eps^1..eps^4 on (x, y, u, v)."""
    ring = d.ring
    imt = im_value(d.tau_b.value, ring)
    rc, ic = re_value(d.c), im_value(d.c, ring)
    y = variable(ring, 1)
    dx, dy = differential(ring, 0), differential(ring, 1)
    du, dv = differential(ring, 2), differential(ring, 3)
    e1, e2 = dx, dy
    e3 = du - wedge(y, dx) * divide(rc, imt) + wedge(y, dy) * divide(ic, imt)
    e4 = dv - wedge(y, dx) * divide(ic, imt) - wedge(y, dy) * divide(rc, imt)
    eps3 = e3 * ic - e4 * rc
    eps4 = e3 * rc + e4 * ic
    return {"e1": e1, "e2": e2, "e3": e3, "e4": e4,
            "eps1": e1, "eps2": e2, "eps3": eps3, "eps4": eps4}


def real_deck_images(g, d):
    """The action of the deck of g on (x, y, u, v), as substitution images."""
    ring = d.ring
    aff = to_affine(g, d)
    x, y = variable(ring, 0), variable(ring, 1)
    u, v = variable(ring, 2), variable(ring, 3)
    rl, il = re_value(aff.lin_z), im_value(aff.lin_z, ring)
    return [
        x + constant(ring, re_value(aff.shift_z)),
        y + constant(ring, im_value(aff.shift_z, ring)),
        u + x * rl - y * il + constant(ring, re_value(aff.shift_zeta)),
        v + x * il + y * rl + constant(ring, im_value(aff.shift_zeta, ring)),
    ]


def _deck_cover_map(g, d):
    return cover_map(deck_lift(g, d), d)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    residual: str = ""


def verify_invariant_generators(d):
    """Check every defining identity of the cohomology generators; returns a
    list of named pass/fail results with residual forms on failure."""
    ring = d.ring
    results = []

    def check(name, got, want, names=COMPLEX_NAMES):
        diff = got - want
        results.append(CheckResult(name, not diff, "" if not diff else format_form(diff, names)))

    gens = generators(d)
    hol = holomorphic_generators(d)
    for j, g in enumerate(gens, start=1):
        f = _deck_cover_map(g, d)
        for name in ("phi1", "phi2"):
            check(f"gamma{j}* {name} = {name}", pullback(hol[name], f), hol[name])

    imt = im_value(d.tau_b.value, ring)
    half_i = ring.i() * Fraction(1, 2)
    target = wedge(hol["phi1"], hol["phibar1"]) * (half_i * divide(d.c, imt))
    check("d phi1 = 0", exterior_d(hol["phi1"]), form_zero(ring))
    check("dbar phi2 = (i/2)(c/Im tau_B) phi1^phibar1", dbar(hol["phi2"]), target)
    check("d phi2 = dbar phi2", exterior_d(hol["phi2"]), dbar(hol["phi2"]))

    real = real_generators(d)
    for j, g in enumerate(gens, start=1):
        images = real_deck_images(g, d)
        for name in ("e1", "e2", "e3", "e4"):
            check(f"gamma{j}* {name} = {name}", substitute(real[name], images), real[name], REAL_NAMES)

    rc, ic = re_value(d.c), im_value(d.c, ring)
    e12 = wedge(real["e1"], real["e2"])
    check("d e3 = (Re c/Im tau_B) e1^e2", exterior_d(real["e3"]), e12 * divide(rc, imt), REAL_NAMES)
    check("d e4 = (Im c/Im tau_B) e1^e2", exterior_d(real["e4"]), e12 * divide(ic, imt), REAL_NAMES)
    check("d eps3 = 0", exterior_d(real["eps3"]), form_zero(ring), REAL_NAMES)

    # the de Rham generators: closed, invariant, and the displayed expansions
    y = variable(ring, 1)
    dx, dy = differential(ring, 0), differential(ring, 1)
    du, dv = differential(ring, 2), differential(ring, 3)
    w = wedge
    norm_c_over_im = divide(d.c * d.c.conjugate(), imt)
    table = {
        "eps1": (real["eps1"], dx),
        "eps2": (real["eps2"], dy),
        "eps3": (real["eps3"], w(y, dy) * norm_c_over_im + du * ic - dv * rc),
        "eps1^eps3": (
            w(real["eps1"], real["eps3"]),
            w(w(y, dx), dy) * norm_c_over_im + w(dx, du) * ic - w(dx, dv) * rc,
        ),
        "eps1^eps4": (w(real["eps1"], real["eps4"]), w(dx, du) * rc + w(dx, dv) * ic),
        "eps2^eps3": (w(real["eps2"], real["eps3"]), w(dy, du) * ic - w(dy, dv) * rc),
        "eps2^eps4": (
            w(real["eps2"], real["eps4"]),
            w(w(y, dx), dy) * norm_c_over_im + w(dy, du) * rc + w(dy, dv) * ic,
        ),
        "eps1^eps2^eps3": (
            w(w(real["eps1"], real["eps2"]), real["eps3"]),
            w(w(dx, dy), du) * ic - w(w(dx, dy), dv) * rc,
        ),
        "eps1^eps3^eps4": (w(w(real["eps1"], real["eps3"]), real["eps4"]), None),
        "eps2^eps3^eps4": (w(w(real["eps2"], real["eps3"]), real["eps4"]), None),
        "eps1^eps2^eps3^eps4": (
            w(w(real["eps1"], real["eps2"]), w(real["eps3"], real["eps4"])),
            w(w(dx, dy), w(du, dv)) * (d.c * d.c.conjugate()),
        ),
    }
    for name, (form, display) in table.items():
        check(f"d ({name}) = 0", exterior_d(form), form_zero(ring), REAL_NAMES)
        for j, g in enumerate(gens, start=1):
            check(f"gamma{j}* ({name}) invariant", substitute(form, real_deck_images(g, d)), form, REAL_NAMES)
        if display is not None:
            check(f"{name} expands as displayed", form, display, REAL_NAMES)

    # link between the two pictures: z = x + iy, zeta = u + iv
    x, u_ = variable(ring, 0), variable(ring, 2)
    vv = variable(ring, 3)
    i = ring.i()
    link = [x + y * i, x - y * i, u_ + vv * i, u_ - vv * i]
    check("phi1 = e1 + i e2 under z = x + iy", substitute(hol["phi1"], link),
          real["e1"] + real["e2"] * i, REAL_NAMES)
    check("phi2 = e3 + i e4 under z = x + iy", substitute(hol["phi2"], link),
          real["e3"] + real["e4"] * i, REAL_NAMES)
    return results


def rho(l, d):
    """The constant with f* phi2 = rho phi1 + phi2, for |alpha| = 1."""
    if (l.alpha * l.alpha.conjugate()).rational() != 1:
        raise DomainError("rho is defined for automorphism lifts with |alpha| = 1")
    hol = holomorphic_generators(d)
    diff = pullback(hol["phi2"], cover_map(l, d)) - hol["phi2"]
    out = d.ring.zero()
    for (exps, word), v in diff.terms.items():
        if word != (0,) or exps != ZERO_EXPS:
            raise NonConstantRho(
                f"f* phi2 - phi2 = {format_form(diff, COMPLEX_NAMES)} is not a constant multiple of phi1"
            )
        out = v
    return out


class DolbeaultAction:
    """Matrices of f* per bidegree; row j holds the basis coordinates of the
    image of the j-th generator from the tables."""

    def __init__(self, blocks):
        self.blocks = blocks
        sizes = {pq: len(mat) for pq, mat in blocks.items()}
        expected = {pq: 2 if pq in ((0, 1), (1, 1), (2, 1)) else 1 for pq in BLOCK_ORDER}
        if sizes != expected:
            raise ValueError(f"block sizes {sizes} do not match the Hodge numbers")

    def block(self, p, q):
        return self.blocks[(p, q)]


def _signature(form, others):
    for (exps, word) in sorted(form.terms, key=lambda k: k[1]):
        if exps != ZERO_EXPS:
            continue
        if all(not o.coeff_at(ZERO_EXPS, word) for o in others):
            return word
    raise AssertionError("no signature word for a basis generator")


def _express(pb, gens, exacts):
    """Coordinates of pb in the generator basis, modulo the listed exact
    forms with constant coefficients."""
    forms = [f for _, f in gens] + [f for _, f in exacts]
    coords = []
    rem = pb
    for idx, (_, g) in enumerate(gens):
        word = _signature(g, [f for j, f in enumerate(forms) if j != idx])
        a = divide(pb.coeff_at(ZERO_EXPS, word), g.coeff_at(ZERO_EXPS, word))
        coords.append(a)
        rem = rem - g * a
    for idx, (_, e) in enumerate(exacts):
        word = _signature(e, [f for j, f in enumerate(forms) if j != len(gens) + idx])
        b = divide(rem.coeff_at(ZERO_EXPS, word), e.coeff_at(ZERO_EXPS, word))
        rem = rem - e * b
    if rem:
        raise BasisExpressionFailure(
            f"residual {format_form(rem, COMPLEX_NAMES)} outside the generator span"
        )
    return coords


def dolbeault_action(l, d):
    """The matrices of f* on every H^{p,q}, computed by genuine pullback and
    exact basis expression."""
    if descent_check(l, d) != MapClass.AUTOMORPHISM:
        raise DomainError("cohomology action applies to automorphism lifts")
    basis, exacts = dolbeault_basis(d)
    f = cover_map(l, d)
    blocks = {}
    for pq in BLOCK_ORDER:
        gens = basis[pq]
        exact = exacts.get(pq, [])
        rows = []
        for _, g in gens:
            rows.append(tuple(_express(pullback(g, f), gens, exact)))
        blocks[pq] = tuple(rows)
    return DolbeaultAction(blocks)


def _det(mat, ring):
    if len(mat) == 1:
        return mat[0][0]
    return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]


def trace_det(act):
    """Per-bidegree (trace, determinant) plus the totals under key 'total'."""
    some = act.blocks[(0, 0)][0][0]
    ring = some.ring
    out = {}
    tr_total, det_total = ring.zero(), ring.one()
    for pq in BLOCK_ORDER:
        mat = act.blocks[pq]
        tr = sum((mat[j][j] for j in range(len(mat))), ring.zero())
        det = _det(mat, ring)
        out[pq] = (tr, det)
        tr_total = tr_total + tr
        det_total = det_total * det
    out["total"] = (tr_total, det_total)
    return out


def lefschetz(act):
    """Alternating trace sum over total degree; vanishes for automorphisms."""
    some = act.blocks[(0, 0)][0][0]
    ring = some.ring
    total = ring.zero()
    for (p, q), mat in act.blocks.items():
        tr = sum((mat[j][j] for j in range(len(mat))), ring.zero())
        total = total + tr * ((-1) ** (p + q))
    return total


def is_symplectic(l):
    """Whether f* fixes the holomorphic symplectic form phi1 ^ phi2."""
    return l.alpha == l.alpha.ring.one()


def acts_trivially_on_cohomology(l, d):
    """True exactly when every Dolbeault block is the identity: alpha = 1
    and rho = 0."""
    if l.alpha != d.ring.one():
        return False
    return not rho(l, d)
