"""Exact coefficient arithmetic: Laurent polynomials in v and anchored,
depth-truncated formal series over the coroot lattice.

A series is a finite sparse map beta -> VPoly, where beta is a nonnegative
integer vector over the simple coroots and the pair (anchor, beta) encodes
the exponent e^{anchor - beta}.  Truncation is by total height
ht(beta) = sum(beta).  Finite Laurent polynomials carry an exact flag
certifying that no truncation ever occurred; only exact series may hold
beta vectors with negative entries (images under Weyl reflections).
"""
from __future__ import annotations

import json
from fractions import Fraction


class SeriesError(ValueError):
    """Raised on incompatible or out-of-truncation series operations."""


def ht(beta):
    """Total height of a displacement vector."""
    return sum(beta)


class VPoly:
    """Sparse Laurent polynomial in the formal parameter v over Z."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = {}
        elif isinstance(coeffs, int):
            self.c = {0: coeffs} if coeffs else {}
        elif isinstance(coeffs, VPoly):
            self.c = dict(coeffs.c)
        else:
            self.c = {d: n for d, n in coeffs.items() if n}

    @classmethod
    def term(cls, coef, deg):
        """The monomial coef * v^deg."""
        return cls({deg: coef})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = VPoly(other)
        if not isinstance(other, VPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = VPoly(other)
        out = dict(self.c)
        for d, n in other.c.items():
            m = out.get(d, 0) + n
            if m:
                out[d] = m
            else:
                out.pop(d, None)
        r = VPoly()
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = VPoly()
        r.c = {d: -n for d, n in self.c.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, int):
            other = VPoly(other)
        return self + (-other)

    def __rsub__(self, other):
        return VPoly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return VPoly()
            r = VPoly()
            r.c = {d: n * other for d, n in self.c.items()}
            return r
        out = {}
        for d1, n1 in self.c.items():
            for d2, n2 in other.c.items():
                d = d1 + d2
                m = out.get(d, 0) + n1 * n2
                if m:
                    out[d] = m
                else:
                    del out[d]
        r = VPoly()
        r.c = out
        return r

    __rmul__ = __mul__

    def min_deg(self):
        return min(self.c) if self.c else None

    def max_deg(self):
        return max(self.c) if self.c else None

    def in_v_inverse_ring(self):
        """True iff the polynomial lies in Z[v^-1] (no positive v-degrees)."""
        return all(d <= 0 for d in self.c)

    def evaluate(self, q):
        """Exact value at v = q (a Fraction or int)."""
        q = Fraction(q)
        if q == 0:
            raise SeriesError("cannot evaluate at v = 0")
        return sum((Fraction(n) * q ** d for d, n in self.c.items()), Fraction(0))

    def pairs(self):
        """Sorted (degree, coefficient) pairs; the serialization order."""
        return sorted(self.c.items())

    @classmethod
    def from_pairs(cls, pairs):
        return cls({int(d): int(n) for d, n in pairs})

    def __repr__(self):
        if not self.c:
            return "0"
        bits = []
        for d, n in self.pairs():
            if d == 0:
                bits.append(f"{n}")
            elif d == 1:
                bits.append(f"{n}*v")
            else:
                bits.append(f"{n}*v^{d}")
        return " + ".join(bits)


VP_ZERO = VPoly()
VP_ONE = VPoly(1)
V = VPoly({1: 1})
VINV = VPoly({-1: 1})


def _coerce_terms(terms):
    out = {}
    for beta, cf in terms.items():
        if isinstance(cf, int):
            cf = VPoly(cf)
        if cf:
            out[tuple(beta)] = cf
    return out


class AnchoredSeries:
    """A formal sum  sum_beta c_beta e^{anchor - beta}  with c_beta in Z[v,v^-1].

    anchor is recorded through its pairing labels <a_i, anchor>.  Truncated
    series store every term with ht(beta) <= depth; exact series have
    depth None and complete support.
    """

    __slots__ = ("spec", "anchor", "terms", "depth", "exact")

    def __init__(self, spec, anchor, terms, depth=None, exact=False, _trusted=False):
        self.spec = spec
        self.anchor = tuple(int(x) for x in anchor)
        self.terms = terms if _trusted else _coerce_terms(terms)
        self.depth = depth
        self.exact = bool(exact)
        if not _trusted:
            self._validate()

    def _validate(self):
        if self.exact:
            if self.depth is not None:
                raise SeriesError("exact series carry no truncation depth")
        else:
            if self.depth is None or self.depth < 0:
                raise SeriesError("truncated series need a depth >= 0")
            for beta in self.terms:
                if any(b < 0 for b in beta):
                    raise SeriesError(
                        f"negative displacement {beta} on a truncated series")
                if ht(beta) > self.depth:
                    raise SeriesError(
                        f"term {beta} beyond truncation depth {self.depth}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def monomial(cls, spec, anchor, beta=None, coeff=1, depth=None, exact=True):
        n = len(anchor)
        if beta is None:
            beta = (0,) * n
        return cls(spec, anchor, {tuple(beta): VPoly(coeff)},
                   depth=depth, exact=exact)

    @classmethod
    def one(cls, spec, nvars, depth=None, exact=True):
        return cls.monomial(spec, (0,) * nvars, depth=depth, exact=exact)

    @classmethod
    def zero(cls, spec, anchor, depth=None, exact=True):
        return cls(spec, anchor, {}, depth=depth, exact=exact)

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coefficient(self, beta):
        """[e^{anchor - beta}] of the series; errors beyond the depth."""
        beta = tuple(beta)
        if not self.exact and ht(beta) > self.depth:
            raise SeriesError(f"coefficient at {beta} beyond depth {self.depth}")
        return self.terms.get(beta, VP_ZERO)

    def support_heights(self):
        return sorted({ht(b) for b in self.terms})

    def all_in_v_inverse_ring(self):
        return all(cf.in_v_inverse_ring() for cf in self.terms.values())

    def __repr__(self):
        kind = "exact" if self.exact else f"depth={self.depth}"
        return (f"AnchoredSeries({self.spec}, anchor={self.anchor}, "
                f"{kind}, {len(self.terms)} terms)")

    # -- arithmetic --------------------------------------------------------

    def _common_depth(self, other):
        if self.exact and other.exact:
            return None, True
        ds = [s.depth for s in (self, other) if not s.exact]
        return min(ds), False

    def __add__(self, other):
        if self.spec != other.spec:
            raise SeriesError("spec mismatch in add")
        if self.anchor != other.anchor:
            raise SeriesError("anchor mismatch in add")
        depth, exact = self._common_depth(other)
        out = dict(self.terms)
        for beta, cf in other.terms.items():
            s = out.get(beta, VP_ZERO) + cf
            if s:
                out[beta] = s
            else:
                out.pop(beta, None)
        if depth is not None:
            out = {b: c for b, c in out.items() if ht(b) <= depth}
        return AnchoredSeries(self.spec, self.anchor, out,
                              depth=depth, exact=exact, _trusted=True)

    def __neg__(self):
        out = {b: -c for b, c in self.terms.items()}
        return AnchoredSeries(self.spec, self.anchor, out,
                              depth=self.depth, exact=self.exact, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.spec != other.spec:
            raise SeriesError("spec mismatch in mul")
        depth, exact = self._common_depth(other)
        anchor = tuple(a + b for a, b in zip(self.anchor, other.anchor))
        out = mul_maps(self.terms, other.terms, depth)
        return AnchoredSeries(self.spec, anchor, out,
                              depth=depth, exact=exact, _trusted=True)

    def scale(self, coef):
        """Multiply every coefficient by a VPoly (or int)."""
        if isinstance(coef, int):
            coef = VPoly(coef)
        if not coef:
            return AnchoredSeries(self.spec, self.anchor, {},
                                  depth=self.depth, exact=self.exact,
                                  _trusted=True)
        out = {b: c * coef for b, c in self.terms.items()}
        return AnchoredSeries(self.spec, self.anchor, out,
                              depth=self.depth, exact=self.exact, _trusted=True)

    def shifted(self, delta_beta, delta_anchor=None):
        """Multiply by e^{-delta_beta} (and optionally move the anchor)."""
        delta_beta = tuple(delta_beta)
        anchor = self.anchor
        if delta_anchor is not None:
            anchor = tuple(a + d for a, d in zip(anchor, delta_anchor))
        out = {}
        for beta, cf in self.terms.items():
            nb = tuple(b + d for b, d in zip(beta, delta_beta))
            if self.depth is not None and ht(nb) > self.depth:
                continue
            out[nb] = cf
        return AnchoredSeries(self.spec, anchor, out,
                              depth=self.depth, exact=self.exact, _trusted=True)

    def truncate(self, depth):
        """Forget terms beyond ht = depth; the result is flagged truncated."""
        if not self.exact and depth > self.depth:
            raise SeriesError(f"cannot extend depth {self.depth} to {depth}")
        out = {b: c for b, c in self.terms.items()
               if ht(b) <= depth and all(x >= 0 for x in b)}
        return AnchoredSeries(self.spec, self.anchor, out,
                              depth=depth, exact=False, _trusted=True)

    def as_exact(self):
        """Re-flag as exact; caller certifies the support is complete."""
        return AnchoredSeries(self.spec, self.anchor, dict(self.terms),
                              depth=None, exact=True, _trusted=True)

    # -- comparison --------------------------------------------------------

    def first_difference(self, other, up_to=None):
        """First (beta, lhs, rhs) triple where the series disagree, or None.

        Comparison runs over ht(beta) <= the tightest available depth
        (exact sides impose no bound); betas scan in lexicographic order.
        """
        if self.spec != other.spec or self.anchor != other.anchor:
            raise SeriesError("cannot compare across specs or anchors")
        bound = up_to
        for s in (self, other):
            if not s.exact:
                bound = s.depth if bound is None else min(bound, s.depth)
        betas = set(self.terms) | set(other.terms)
        for beta in sorted(betas):
            if bound is not None and ht(beta) > bound:
                continue
            a = self.terms.get(beta, VP_ZERO)
            b = other.terms.get(beta, VP_ZERO)
            if a != b:
                return beta, a, b
        return None

    def eq_up_to_depth(self, other, up_to=None):
        return self.first_difference(other, up_to=up_to) is None

    def __eq__(self, other):
        if not isinstance(other, AnchoredSeries):
            return NotImplemented
        return (self.spec == other.spec and self.anchor == other.anchor
                and self.exact == other.exact and self.depth == other.depth
                and self.terms == other.terms)

    # -- evaluation and serialization -------------------------------------

    def evaluate_v(self, q):
        """Substitute v := q exactly; returns {beta: Fraction}, zeros dropped."""
        q = Fraction(q)
        out = {}
        for beta, cf in self.terms.items():
            val = cf.evaluate(q)
            if val:
                out[beta] = val
        return out

    def to_json_dict(self):
        return {
            "spec": str(self.spec),
            "anchor_labels": list(self.anchor),
            "depth": self.depth,
            "exact": self.exact,
            "terms": [
                {"beta": list(beta), "coeff": [[d, n] for d, n in cf.pairs()]}
                for beta, cf in sorted(self.terms.items())
            ],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))

    @classmethod
    def from_json_dict(cls, data, spec=None):
        from . import rootdata
        if spec is None:
            spec = rootdata.RootSystemSpec.parse(data["spec"])
        terms = {tuple(t["beta"]): VPoly.from_pairs(t["coeff"])
                 for t in data["terms"]}
        return cls(spec, tuple(data["anchor_labels"]), terms,
                   depth=data["depth"], exact=data["exact"])


def mul_maps(t1, t2, depth):
    """Raw sparse product of two term maps, dropping ht > depth products."""
    out = {}
    for b1, c1 in t1.items():
        for b2, c2 in t2.items():
            beta = tuple(x + y for x, y in zip(b1, b2))
            if depth is not None and ht(beta) > depth:
                continue
            s = out.get(beta, VP_ZERO) + c1 * c2
            if s:
                out[beta] = s
            else:
                del out[beta]
    return out


def add_maps(t1, t2):
    out = dict(t1)
    for beta, cf in t2.items():
        s = out.get(beta, VP_ZERO) + cf
        if s:
            out[beta] = s
        else:
            out.pop(beta, None)
    return out


def maps_first_difference(t1, t2, bound):
    """Compare raw term maps up to ht <= bound (negative betas allowed)."""
    for beta in sorted(set(t1) | set(t2)):
        if ht(beta) > bound:
            continue
        a = t1.get(beta, VP_ZERO)
        b = t2.get(beta, VP_ZERO)
        if a != b:
            return beta, a, b
    return None


def geometric_inverse(spec, u, beta, depth):
    """Expansion of 1/(1 - u e^{-beta}) to the given depth, anchored at 0.

    u is a VPoly (or int) and beta a positive displacement; the series is
    sum_j u^j e^{-j beta} over j with j*ht(beta) <= depth.
    """
    beta = tuple(beta)
    h = ht(beta)
    if h < 1:
        raise SeriesError("geometric_inverse needs ht(beta) >= 1")
    if isinstance(u, int):
        u = VPoly(u)
    terms = {}
    power = VP_ONE
    j = 0
    while j * h <= depth:
        if power:
            terms[tuple(j * b for b in beta)] = power
        power = power * u
        j += 1
    n = len(beta)
    return AnchoredSeries(spec, (0,) * n, terms, depth=depth, exact=False,
                          _trusted=True)
