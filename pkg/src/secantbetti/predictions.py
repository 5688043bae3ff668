"""Closed-form predictions for secant varieties of curves, and a verifier.

Every predictor is a pure integer function of the genus ``g``, the degree
``d`` and (where relevant) the secant index ``k``.  :func:`verify_all`
diffs the predictions against a computed Betti table and Hilbert data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .betti import BettiTable, Inconclusive, is_acm, n_dp_check, regularity
from .hilbert import HilbertData, binomial_poly

THEOREM = "THEOREM"
CONJECTURE = "CONJECTURE"
DISPLAY_FORM = "DISPLAY-FORM"
INFO = "INFO"


@dataclass(frozen=True)
class CurveParams:
    g: int
    d: int
    n: int | None = None
    k: int = 1

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("genus must be nonnegative")
        if self.n is None:
            object.__setattr__(self, "n", self.d - self.g)

    @property
    def linearly_normal(self) -> bool:
        """Nonspecial embedding: ``n = d - g``."""
        return self.n == self.d - self.g

    @property
    def dagger(self) -> bool:
        """Degree hypothesis ``d >= 2g + 3`` behind the k = 1 theorems."""
        return self.d >= 2 * self.g + 3 and self.linearly_normal


def _need_k1(c: CurveParams):
    if c.k != 1:
        raise ValueError("this prediction is stated for k = 1 only")


def deg_secant(c: CurveParams) -> int:
    _need_k1(c)
    return comb(c.d - 1, 2) - c.g


def genus_section(c: CurveParams) -> int:
    _need_k1(c)
    twice = (c.d - 2) * (c.d + 2 * c.g - 3)
    assert twice % 2 == 0
    return twice // 2


def predict_corner(g: int, k: int = 1) -> int:
    return comb(g + k, k + 1)


def corner_position(n: int, k: int = 1) -> tuple[int, int]:
    return n - 2 * k - 1, n + 1


def hilbert_alphas(c: CurveParams) -> tuple[int, int, int, int]:
    """``(alpha0, alpha1, 1 - G, D)`` in the basis ``C(m+i-1, i)``."""
    _need_k1(c)
    n, D, G = c.n, deg_secant(c), genus_section(c)
    a1 = comb(n + 2, 2) - (n + 1) - 3 * D - 2 * (1 - G)
    a0 = -comb(n + 2, 2) + 2 * (n + 1) + 2 * D + 1 - G
    return a0, a1, 1 - G, D


def predict_hilbert_poly(c: CurveParams, m: int) -> int:
    a0, a1, a2, D = hilbert_alphas(c)
    return D * binomial_poly(m + 2, 3) + a2 * binomial_poly(m + 1, 2) + a1 * m + a0


def predict_beta13(c: CurveParams) -> int:
    """Number of cubic generators, from the Hilbert function of the section curve."""
    _need_k1(c)
    return comb(c.n + 1, 3) - 3 * deg_secant(c) + genus_section(c) - 1


def beta13_display_form(c: CurveParams) -> int:
    """The simplified closed form as printed; disagrees with :func:`predict_beta13`."""
    return comb(c.n + 1, 3) - (c.d - 2) * c.n - 3 * c.g + 1


def predict_beta24(c: CurveParams, beta14: int, beta13: int) -> int:
    return beta14 + beta13 * (c.n + 1) - comb(c.n + 4, c.n) + predict_hilbert_poly(c, 4)


def tail_values(t: BettiTable, c: CurveParams) -> dict:
    n = c.n
    return {
        "A": t.get(n - 3, n - 1),
        "B": t.get(n - 5, n - 1),
        "C": t.get(n - 3, n),
        "beta_n-4,n": t.get(n - 4, n),
        "beta_n-4,n-1": t.get(n - 4, n - 1),
    }


def tail_predictions(values: dict, c: CurveParams) -> dict:
    n, g = c.n, c.g
    A, B, C = values["A"], values["B"], values["C"]
    return {
        "beta_n-4,n": C + comb(g, 2) * (n - 3),
        "beta_n-4,n-1": A + B + comb(g + 1, 2) * comb(n, 2) - comb(g, 2) * (n - 3) * (n - 1)
        - genus_section(c),
    }


def en_strand_bound(c: CurveParams, p: int | None = None, s: int | None = None,
                    t: int | None = None) -> dict:
    """Predicted nonvanishing positions on the degree-(k+2) linear strand.

    With ``p``: ``beta[p, k+1+p] != 0`` when ``d >= 2g + 2k + 1 + p``.
    With a factorization ``(s, t)``: ``beta[s+t-2k-1, s+t-k] != 0`` when
    ``s + 1 >= k + 2``.
    """
    k = c.k
    out = {}
    if p is not None:
        ok = c.d >= 2 * c.g + 2 * k + 1 + p
        out["eagon_northcott"] = {"position": (p, k + 1 + p), "applicable": ok}
    if s is not None and t is not None:
        ok = s + 1 >= k + 2 and s <= t
        out["cycle"] = {"position": (s + t - 2 * k - 1, s + t - k), "applicable": ok}
    return out


def max_strand_p(c: CurveParams) -> int:
    return c.d - 2 * c.g - 2 * c.k - 1


def generic_factorization(c: CurveParams) -> tuple[int, int] | None:
    """``(s, t)`` for a general splitting of L into two nonspecial halves.

    Each factor of degree ``e >= 2g - 1`` has ``h^0 = e - g + 1``, hence
    projective dimension ``e - g``; the sum is ``d - 2g``.  The split is as
    balanced as possible, subject to ``s + 1 >= k + 2``.
    """
    total = c.d - 2 * c.g
    s = total // 2
    t = total - s
    if s + 1 < c.k + 2:
        return None
    return s, t


# ----------------------------------------------------------------- report


@dataclass
class Row:
    name: str
    predicted: object
    computed: object
    kind: str
    anchor: str
    match: bool | None = None

    def __post_init__(self):
        if self.match is None and self.computed is not None and self.predicted is not None:
            self.match = self.predicted == self.computed


@dataclass
class PredictionReport:
    params: CurveParams
    rows: list = field(default_factory=list)

    def add(self, *args, **kw) -> Row:
        row = Row(*args, **kw)
        self.rows.append(row)
        return row

    def __getitem__(self, name: str) -> Row:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def theorem_rows(self) -> list[Row]:
        return [r for r in self.rows if r.kind == THEOREM]

    @property
    def ok(self) -> bool:
        """All theorem-backed rows matched (conjecture/informational rows never fail)."""
        return all(r.match is True for r in self.theorem_rows)

    def mismatches(self) -> list[Row]:
        return [r for r in self.theorem_rows if r.match is not True]

    def to_json(self) -> dict:
        c = self.params
        return {
            "params": {"g": c.g, "d": c.d, "n": c.n, "k": c.k},
            "ok": self.ok,
            "rows": [{"name": r.name, "kind": r.kind, "predicted": _jsonable(r.predicted),
                      "computed": _jsonable(r.computed), "match": r.match, "anchor": r.anchor}
                     for r in self.rows],
        }

    def format_text(self) -> str:
        head = ("prediction", "kind", "predicted", "computed", "match")
        body = [(r.name, r.kind, _fmt(r.predicted), _fmt(r.computed),
                 "-" if r.match is None else ("yes" if r.match else "NO")) for r in self.rows]
        widths = [max(len(x[i]) for x in [head] + body) for i in range(5)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        for b in body:
            lines.append("  ".join(x.ljust(w) for x, w in zip(b, widths)).rstrip())
        c = self.params
        lines.append(f"g={c.g} d={c.d} n={c.n} k={c.k}: "
                     + ("all theorem rows match" if self.ok else f"{len(self.mismatches())} theorem row(s) differ"))
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


def _safe(fn, *args):
    try:
        return fn(*args)
    except Inconclusive:
        return None


def verify_all(c: CurveParams, t: BettiTable, h: HilbertData | None = None) -> PredictionReport:
    """One report row per prediction for the k-th secant variety of the curve ``c``.

    Without Hilbert data (a table read from a file) the degree, genus and
    Hilbert-polynomial rows are omitted.

    Rows backed by theorems for k = 1 are tagged THEOREM (and only when the
    degree hypothesis holds); the rest are CONJECTURE, DISPLAY-FORM or INFO
    and never make the report fail.
    """
    rep = PredictionReport(c)
    n, g, k = c.n, c.g, c.k
    thm = THEOREM if (k == 1 and c.dagger) else CONJECTURE

    codim = n - (2 * k + 1)
    rep.add("ACM", True, _safe(is_acm, t, codim), thm, "main theorem: secant variety is ACM")

    reg_s = _safe(regularity, t)
    reg_i = None if reg_s is None else reg_s + 1
    if k == 1:
        rep.add("reg I_Sigma", 3 if g == 0 else 5, reg_i, thm, "regularity 3 if rational, 5 otherwise")
        rep.add("reg S_Sigma", 2 if g == 0 else 4, reg_s, thm, "coordinate ring: one less than the ideal")
    else:
        # the conjectured value is the coordinate-ring regularity (it gives 4 = reg S_Sigma at k = 1)
        pred = k + 1 if g == 0 else 2 * k + 2
        rep.add("reg S_Sigma_k", pred, reg_s, CONJECTURE, "conjecture part (1): k+1 if rational, 2k+2 otherwise")
        rep.add("reg I_Sigma_k", pred + 1, reg_i, CONJECTURE, "one more than the coordinate ring")

    i_c, j_c = corner_position(n, k)
    rep.add(f"corner beta[{i_c},{j_c}]", predict_corner(g, k), t.get(i_c, j_c),
            thm, "corner Betti number binom(g+k, k+1)")

    if k == 1:
        if h is not None:
            sec = h.section_invariants()
            rep.add("degree D", deg_secant(c), h.degree, thm, "degree binom(d-1,2) - g")
            rep.add("section genus G", genus_section(c), sec[1] if sec else None, thm,
                    "G = (d-2)(d+2g-3)/2")
            for m in range(1, 5):
                rep.add(f"P({m})", predict_hilbert_poly(c, m), h.polynomial(m), thm, "Hilbert polynomial")
                rep.add(f"HF({m})", predict_hilbert_poly(c, m), h.value(m), thm,
                        "Hilbert polynomial agrees with the Hilbert function for m >= 1")
        b13 = t.get(1, 3)
        rep.add("beta[1,3] (proof form)", predict_beta13(c), b13, thm, "beta13 = binom(n+1,3) - 3D + G - 1")
        disp = beta13_display_form(c)
        rep.add("beta[1,3] (display form)", disp, b13, DISPLAY_FORM,
                "simplified display form; disagrees with the proof form", match=(disp == b13))
        rep.add("beta[2,4]", predict_beta24(c, t.get(1, 4), b13), t.get(2, 4), thm,
                "beta24 = beta14 + beta13(n+1) - binom(n+4,n) + P(4)")
        vals = tail_values(t, c)
        pred = tail_predictions(vals, c)
        rep.add("tail A,B,C", None, (vals["A"], vals["B"], vals["C"]), INFO, "tail unknowns (expected 0)")
        rep.add(f"tail beta[{n-4},{n}]", pred["beta_n-4,n"], vals["beta_n-4,n"], thm, "tail: C + binom(g,2)(n-3)")
        rep.add(f"tail beta[{n-4},{n-1}]", pred["beta_n-4,n-1"], vals["beta_n-4,n-1"], thm,
                "tail: A + B + binom(g+1,2)binom(n,2) - binom(g,2)(n-3)(n-1) - G")

    p = max_strand_p(c)
    if p >= 1:
        pos = (p, k + 1 + p)
        rep.add(f"EN strand beta[{pos[0]},{pos[1]}] != 0", True, t.get(*pos) > 0,
                THEOREM if c.linearly_normal else CONJECTURE, "Eagon-Northcott subcomplex of length p")
        nd = _safe(n_dp_check, t, k + 2, p)
        rep.add(f"N_{{{k + 2},{p}}}", True, nd, thm, "conjecture part (3); known for k = 1")
        nd1 = _safe(n_dp_check, t, k + 2, p + 1)
        rep.add(f"N_{{{k + 2},{p + 1}}}", False, nd1, INFO, "one step beyond the predicted p",
                match=None if nd1 is None else nd1 is False)
    st = generic_factorization(c)
    if st is not None:
        s_, t_ = st
        i, j = s_ + t_ - 2 * k - 1, s_ + t_ - k
        if i >= 0:
            rep.add(f"cycle strand beta[{i},{j}] != 0", True, t.get(i, j) > 0,
                    THEOREM if c.linearly_normal else CONJECTURE, "explicit Koszul cycle from L = L1 (x) L2")
    return rep
