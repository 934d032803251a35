"""Weyl-Kac characters, plain and deformed denominators, the
Gindikin-Karpelevich product, and the imaginary-axis correction factor.

All results are anchored truncated series.  The weight rho appearing in
the character and denominator-twist formulas is realized as rho^vee, the
coweight with every pairing label equal to 1; the coweight avatar is the
only reading that type-checks inside the coweight group algebra.
"""
from __future__ import annotations

from . import rootdata, weyl
from .vseries import (AnchoredSeries, SeriesError, VPoly, VP_ONE, VINV,
                      geometric_inverse, ht)


class CharacterError(ValueError):
    """Non-dominant labels or malformed character requests."""


def _binomial_factor(spec, u, beta, depth, negate_exponent=False):
    """(1 - u e^{-beta}) as a truncated series at anchor 0."""
    n = spec.num_nodes
    terms = {(0,) * n: VP_ONE}
    if ht(beta) <= depth:
        terms[tuple(beta)] = -u if isinstance(u, VPoly) else VPoly(-u)
    return AnchoredSeries(spec, (0,) * n, terms, depth=depth, exact=False,
                          _trusted=True)


def denominator(spec, depth, deformed=False):
    """prod over positive coroots of (1 - u e^{-a})^mult to the depth;
    u = v^-1 when deformed, else 1."""
    u = VINV if deformed else VP_ONE
    n = spec.num_nodes
    out = AnchoredSeries.one(spec, n).truncate(depth)
    for cr in rootdata.positive_coroots_up_to(spec, depth):
        factor = _binomial_factor(spec, u, cr.coords, depth)
        for _ in range(cr.multiplicity):
            out = out * factor
    return out


def inverse_denominator(spec, depth, deformed=False):
    """1/D (or 1/D_v) factor-by-factor via geometric expansions."""
    u = VINV if deformed else VP_ONE
    n = spec.num_nodes
    out = AnchoredSeries.one(spec, n).truncate(depth)
    for cr in rootdata.positive_coroots_up_to(spec, depth):
        inv = geometric_inverse(spec, u, cr.coords, depth)
        for _ in range(cr.multiplicity):
            out = out * inv
    return out


def gk_delta(spec, depth):
    """Delta = prod (1 - v^-1 e^{-a})^m / (1 - e^{-a})^m to the depth."""
    return denominator(spec, depth, deformed=True) * \
        inverse_denominator(spec, depth, deformed=False)


def m_factor(spec, depth):
    """The correction factor on the imaginary axis,

        prod_{i=1..l} prod_{j>=1} (1 - v^{-m_i-1} e^{-jc}) / (1 - v^{-m_i} e^{-jc}),

    truncated to j*ht(c) <= depth; finite exponents m_i come from the
    underlying finite system."""
    if not spec.affine:
        raise CharacterError("m_factor lives on affine specs")
    exps = rootdata.exponents(spec.finite)
    c = rootdata.minimal_imaginary_coroot(spec).coords
    hc = ht(c)
    n = spec.num_nodes
    out = AnchoredSeries.one(spec, n).truncate(depth)
    j = 1
    while j * hc <= depth:
        jc = tuple(j * x for x in c)
        for m in exps:
            out = out * _binomial_factor(spec, VPoly.term(1, -m - 1), jc, depth)
            out = out * geometric_inverse(spec, VPoly.term(1, -m), jc, depth)
        j += 1
    return out


def character_numerator(spec, labels, depth):
    """sum_w (-1)^{l(w)} e^{w(anchor + rho) - rho}, anchored at the labels.

    anchor + rho is regular dominant, so ht of the displacement is at
    least l(w) and layers beyond the depth cannot contribute; the BFS is
    provably truncatable at length = depth."""
    labels = tuple(labels)
    if any(x < 0 for x in labels):
        raise CharacterError("dominant labels required")
    cartan = rootdata.build_cartan(spec)
    shifted = tuple(x + 1 for x in labels)
    n = spec.num_nodes
    terms = {}
    for layer in weyl.enumerate_layers(spec, depth):
        for w in layer:
            beta = (0,) * n
            for i in reversed(w.word):
                beta = weyl.reflect(cartan, shifted, beta, i)
            if ht(beta) <= depth:
                prev = terms.get(beta)
                cf = VPoly(w.sign)
                terms[beta] = cf if prev is None else prev + cf
    terms = {b: c for b, c in terms.items() if c}
    return AnchoredSeries(spec, labels, terms, depth=depth, exact=False,
                          _trusted=True)


def weyl_kac_character(spec, labels, depth):
    """chi_Lambda to the given depth: numerator times 1/D."""
    num = character_numerator(spec, labels, depth)
    return num * inverse_denominator(spec, depth, deformed=False)


def finite_character_exact(spec, labels):
    """Exact finite Weyl character, support certified complete.

    The support of chi lies between the anchor and its w0-image, so the
    depth ht(anchor - w0(anchor)) captures everything; the truncated
    computation at that depth is then re-flagged exact."""
    if spec.affine:
        raise CharacterError("finite spec required")
    labels = tuple(labels)
    cartan = rootdata.build_cartan(spec)
    n = spec.num_nodes
    needed = 0
    for layer in weyl.enumerate_layers(spec, 10 ** 9, layer_cap=10 ** 6):
        for w in layer:
            beta = (0,) * n
            for i in reversed(w.word):
                beta = weyl.reflect(cartan, labels, beta, i)
            needed = max(needed, ht(beta))
    chi = weyl_kac_character(spec, labels, needed)
    return chi.as_exact()


def check_denominator_wtwist(spec, i, depth):
    """The w_i-twisted denominator identity  D^{w_i} = -e^{a_i} D.

    Both sides are pushed into the anchor cone: with P = the product over
    the remaining positive coroots of their s_i-images, the identity
    becomes  D = (1 - e^{-a_i}) P  up to the depth.  The s_i-images of
    coroots of height <= depth+2 cover every factor that can matter."""
    cartan = rootdata.build_cartan(spec)
    n = spec.num_nodes
    unit = tuple(1 if j == i - 1 else 0 for j in range(n))
    lhs = denominator(spec, depth, deformed=False)
    rhs = _binomial_factor(spec, VP_ONE, unit, depth)
    for cr in rootdata.positive_coroots_up_to(spec, depth + 2):
        if cr.coords == unit:
            continue
        img = rootdata._reflect_coroot(cartan, cr.coords, i)
        assert all(x >= 0 for x in img)
        if ht(img) > depth:
            continue  # factor is 1 at this truncation
        factor = _binomial_factor(spec, VP_ONE, img, depth)
        for _ in range(cr.multiplicity):
            rhs = rhs * factor
    return lhs.first_difference(rhs) is None


def denominator_identity_holds(spec, depth):
    """Macdonald/Weyl identity: sum_w (-1)^{l(w)} e^{w rho - rho} = D."""
    n = spec.num_nodes
    num = character_numerator(spec, (0,) * n, depth)
    den = denominator(spec, depth, deformed=False)
    return num.first_difference(den) is None
