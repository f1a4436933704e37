"""k-symplectic Lie algebras of dimension k+1 and their classification.

Basis order is (f_1, .., f_k, e); h = span{f_i} and θ^i = f_i* ∧ e*.
Linear maps on h use the column convention: column i of D is D(f_i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import linalg as la
from .errors import JacobiFailed, NormalFormMismatch
from .ksymplectic import KSymplecticData, verify_kparakahler
from .lie import AxiomReport, check_jacobi
from .linalg import Mat, Q, Subspace, Vec
from .multilinear import BilinearProduct, TwoForm


@dataclass(frozen=True)
class LowDimSpec:
    k: int
    a: tuple
    D: Mat

    def __post_init__(self):
        if len(self.a) != self.k or la.shape(self.D) != (self.k, self.k):
            raise la.DimensionError("a must have length k and D must be k×k")

    @classmethod
    def of(cls, a, D) -> "LowDimSpec":
        a = la.vec(a)
        return cls(len(a), a, la.mat(D))

    def ell(self, x: Vec) -> Q:
        return la.dot(self.a, x)

    def Dx(self, x: Vec) -> Vec:
        return la.mat_vec(self.D, x)


def _bracket(s: LowDimSpec) -> BilinearProduct:
    k = s.k
    terms = []
    for i in range(k):
        for j in range(k):
            # [f_i, f_j] = a_i f_j − a_j f_i
            terms.append((i, j, j, s.a[i]))
            terms.append((i, j, i, -s.a[j]))
    for i in range(k):
        # [e, f_i] = a_i e + D(f_i)
        terms.append((k, i, k, s.a[i]))
        terms.append((i, k, k, -s.a[i]))
        for l in range(k):
            terms.append((k, i, l, s.D[l][i]))
            terms.append((i, k, l, -s.D[l][i]))
    return BilinearProduct.from_terms(k + 1, terms)


def lowdim_forms(k: int) -> tuple:
    return tuple(TwoForm.from_wedge_terms(k + 1, [(i, k, 1)]) for i in range(k))


def build_lowdim(s: LowDimSpec) -> KSymplecticData:
    """The (k+1)-dimensional algebra of (ℓ, D), with Jacobi not assumed."""
    k = s.k
    return KSymplecticData(
        k=k,
        n=1,
        bracket=_bracket(s),
        h=Subspace.coordinate(k + 1, range(k)),
        thetas=lowdim_forms(k),
        p=Subspace.coordinate(k + 1, [k]),
    )


def jacobi_condition_residual(s: LowDimSpec, x: Vec, y: Vec) -> Vec:
    """ℓ(y)D(x) − ℓ(x)D(y) + ℓ(D(y))x − ℓ(D(x))y."""
    out = la.scale(s.ell(y), s.Dx(x))
    out = la.sub(out, la.scale(s.ell(x), s.Dx(y)))
    out = la.add(out, la.scale(s.ell(s.Dx(y)), x))
    return la.sub(out, la.scale(s.ell(s.Dx(x)), y))


def check_lowdim_jacobi(s: LowDimSpec) -> AxiomReport:
    """The reduced Jacobi condition on basis pairs, cross-checked against generic Jacobi."""
    rep = AxiomReport()
    rep.note("reduced-jacobi")
    units = [la.unit(s.k, i) for i in range(s.k)]
    for i in range(s.k):
        for j in range(i + 1, s.k):
            res = jacobi_condition_residual(s, units[i], units[j])
            if any(res):
                rep.fail("reduced-jacobi", (i, j), res)
                break
        if rep.failed("reduced-jacobi"):
            break
    generic = check_jacobi(_bracket(s))
    rep.note("agrees-with-jacobi")
    if generic.passed != rep.passed:
        rep.fail("agrees-with-jacobi")
    return rep


def complement_line(s: LowDimSpec) -> Optional[Subspace]:
    """First basis line complementary to h that makes the structure k-para-Kähler."""
    d = build_lowdim(s)
    for idx in range(s.k, -1, -1):
        cand = d.with_complement(Subspace.coordinate(s.k + 1, [idx]))
        if la.intersect(cand.h, cand.p).dim == 0 and verify_kparakahler(cand).passed:
            return cand.p
    return None


# ---------------------------------------------------------------------------
# models


def sl2_bracket() -> BilinearProduct:
    """Basis (h, g, f): [h,g] = 2g, [h,f] = −2f, [g,f] = h."""
    return BilinearProduct.from_terms(3, [
        (0, 1, 1, 2), (1, 0, 1, -2),
        (0, 2, 2, -2), (2, 0, 2, 2),
        (1, 2, 0, 1), (2, 1, 0, -1),
    ])


def sol_bracket() -> BilinearProduct:
    """Basis (u1, u2, u3): [u1,u2] = u2, [u1,u3] = −u3."""
    return BilinearProduct.from_terms(3, [
        (0, 1, 1, 1), (1, 0, 1, -1),
        (0, 2, 2, -1), (2, 0, 2, 1),
    ])


def normal_form_bracket(k: int, a1, lam, b) -> BilinearProduct:
    """Basis (g_1..g_k, e): [e,g_1] = a_1 e + λ g_1 + Σ b_l g_l, [e,g_i] = −λ g_i, [g_1,g_i] = a_1 g_i."""
    a1, lam = la.to_q(a1), la.to_q(lam)
    terms = []

    def anti(i, j, l, x):
        terms.append((i, j, l, x))
        terms.append((j, i, l, -x))

    anti(k, 0, k, a1)
    anti(k, 0, 0, lam)
    for l in range(1, k):
        anti(k, 0, l, b[l - 1])
        anti(k, l, l, -lam)
        anti(0, l, l, a1)
    return BilinearProduct.from_terms(k + 1, terms)


def normal_form_forms(k: int, a) -> tuple:
    """θ^1 = g_1*∧e* − Σ a_i g_i*∧e*, θ^i = a_1 g_i*∧e*."""
    first = TwoForm.from_wedge_terms(k + 1, [(0, k, 1)] + [(i, k, -a[i]) for i in range(1, k)])
    rest = [TwoForm.from_wedge_terms(k + 1, [(i, k, a[0])]) for i in range(1, k)]
    return (first, *rest)


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassificationResult:
    case_tag: str
    params: dict
    witness: Mat  # columns: model basis vectors in (f_1..f_k, e) coordinates
    verified: AxiomReport
    permutation: tuple = ()  # f-index used for slot i after normalisation
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "case_tag": self.case_tag,
            "params": {k: la.fmt_q(v) for k, v in self.params.items()},
            "witness": [[la.fmt_q(x) for x in row] for row in self.witness],
            "permutation": [i + 1 for i in self.permutation],
            "verified": self.verified.to_json(),
            "notes": list(self.notes),
        }


def _permute_spec(s: LowDimSpec, perm: tuple) -> tuple:
    """Relabel f'_i = f_{perm[i]}; returns the relabelled data and P with P mapping primed to original coordinates."""
    k = s.k
    P = la.from_columns([la.unit(k + 1, perm[i]) if i < k else la.unit(k + 1, k) for i in range(k + 1)])
    a = tuple(s.a[perm[i]] for i in range(k))
    D = la.mat([[s.D[perm[l]][perm[i]] for i in range(k)] for l in range(k)])
    return LowDimSpec(k, a, D), P


def _normalising_permutation(s: LowDimSpec) -> tuple:
    j = next(i for i, x in enumerate(s.a) if x)
    perm = list(range(s.k))
    perm[0], perm[j] = perm[j], perm[0]
    return tuple(perm)


def check_bracket_map(W: Mat, source: BilinearProduct, model: BilinearProduct, axiom: str = "witness-bracket") -> AxiomReport:
    """W[x,y]_model = [Wx, Wy]_source on model basis pairs, and W invertible."""
    rep = AxiomReport()
    rep.note("witness-invertible")
    if la.rank(W) != len(W):
        rep.fail("witness-invertible")
        return rep
    rep.note(axiom)
    cols = la.transpose(W)
    for i in range(model.dim):
        for j in range(i + 1, model.dim):
            lhs = source(cols[i], cols[j])
            rhs = la.mat_vec(W, model.c[i][j])
            if lhs != rhs:
                rep.fail(axiom, (i, j), la.sub(lhs, rhs))
                return rep
    return rep


def _check_h_correspondence(W: Mat, h_model: Subspace, h: Subspace, rep: AxiomReport):
    rep.note("witness-h")
    image = Subspace.span([la.mat_vec(W, v) for v in h_model.basis], len(W))
    if image.dim != h.dim or la.sum_spaces(image, h).dim != h.dim:
        rep.fail("witness-h")


def _require_jacobi(s: LowDimSpec):
    rep = check_lowdim_jacobi(s)
    if not rep.passed:
        raise JacobiFailed(rep)


def _abelian_case(s: LowDimSpec, tag: str) -> ClassificationResult:
    d = build_lowdim(s)
    rep = AxiomReport()
    rep.note("h-abelian-ideal")
    for i in range(s.k):
        for j in range(s.k + 1):
            v = d.bracket.c[i][j]
            if v[s.k] or (j < s.k and any(v)):
                rep.fail("h-abelian-ideal", (i, j), v)
                break
        if rep.failed("h-abelian-ideal"):
            break
    return ClassificationResult(tag, {}, la.identity(s.k + 1), rep)


def _dim3_coefficients(s: LowDimSpec) -> dict:
    """d_ij of D in the basis (f_1, g_2), g_2 = a_2 f_1 − a_1 f_2."""
    a1, a2 = s.a
    f1 = (Q(1), Q(0))
    g2 = (a2, -a1)
    basis = [f1, g2]
    c1 = la.coordinates(basis, s.Dx(f1))
    c2 = la.coordinates(basis, s.Dx(g2))
    return {"d11": c1[0], "d21": c1[1], "d12": c2[0], "d22": c2[1]}


def sl2_witness(s: LowDimSpec) -> Mat:
    """(h, g, f) = (2f_1/a_1, g_2, −(2e + (2d_11/a_1) f_1 + (d_21/a_1) g_2)/(a_1 d_12)); needs a_1 ≠ 0, d_12 ≠ 0."""
    a1, a2 = s.a
    d = _dim3_coefficients(s)
    g2 = (a2, -a1, Q(0))
    h = (2 / a1, Q(0), Q(0))
    inner = la.add(la.add((Q(0), Q(0), Q(2)), la.scale(2 * d["d11"] / a1, (Q(1), Q(0), Q(0)))), la.scale(d["d21"] / a1, g2))
    f = la.scale(-1 / (a1 * d["d12"]), inner)
    return la.from_columns([h, g2, f])


def sol_witness(s: LowDimSpec) -> Mat:
    """(u1, u2, u3) = (f_1/a_1, −g_2/a_1², a_1 e + d_11 f_1 + (d_21/2) g_2); needs a_1 ≠ 0, d_12 = 0."""
    a1, a2 = s.a
    d = _dim3_coefficients(s)
    g2 = (a2, -a1, Q(0))
    u1 = (1 / a1, Q(0), Q(0))
    u2 = la.scale(-1 / (a1 * a1), g2)
    u3 = la.add(la.add((Q(0), Q(0), a1), (d["d11"], Q(0), Q(0))), la.scale(d["d21"] / 2, g2))
    return la.from_columns([u1, u2, u3])


def alternate_sol_witness(s: LowDimSpec) -> Mat:
    """(−e/d_11, g_2, a_1 e + d_11 f_1 + (d_21/2) g_2); a Lie isomorphism when d_11 ≠ 0."""
    a1, a2 = s.a
    d = _dim3_coefficients(s)
    g2 = (a2, -a1, Q(0))
    u1 = (Q(0), Q(0), -1 / d["d11"])
    u3 = la.add(la.add((Q(0), Q(0), a1), (d["d11"], Q(0), Q(0))), la.scale(d["d21"] / 2, g2))
    return la.from_columns([u1, g2, u3])


def _pulled_forms(W: Mat, thetas) -> list:
    return [t.pullback(W) for t in thetas]


def _classify_sl2(s: LowDimSpec, rep: AxiomReport) -> tuple:
    W = sl2_witness(s)
    rep.extend(check_bracket_map(W, build_lowdim(s).bracket, sl2_bracket()))
    _check_h_correspondence(W, Subspace.coordinate(3, [0, 1]), build_lowdim(s).h, rep)
    t1, t2 = _pulled_forms(W, lowdim_forms(2))
    # model forms ρ^1 = h*∧f* + b g*∧f*, ρ^2 = g*∧f*, each up to a nonzero scale
    rep.note("witness-form-shape")
    mu1, mu2 = t1.m[0][2], t2.m[1][2]
    b = t1.m[1][2] / mu1 if mu1 else Q(0)
    shape1 = TwoForm.from_wedge_terms(3, [(0, 2, mu1), (1, 2, mu1 * b)])
    shape2 = TwoForm.from_wedge_terms(3, [(1, 2, mu2)])
    if not mu1 or not mu2 or t1.m != shape1.m or t2.m != shape2.m:
        rep.fail("witness-form-shape")
    return W, {"b": b, "scale1": mu1, "scale2": mu2}


def _classify_sol(s: LowDimSpec, rep: AxiomReport) -> tuple:
    W = sol_witness(s)
    rep.extend(check_bracket_map(W, build_lowdim(s).bracket, sol_bracket()))
    _check_h_correspondence(W, Subspace.coordinate(3, [0, 1]), build_lowdim(s).h, rep)
    t1, t2 = _pulled_forms(W, lowdim_forms(2))
    # ρ^1 = u1*∧u3* + b u2*∧u3*, ρ^2 = c u1*∧u3* + u2*∧u3*
    rep.note("witness-form-shape")
    b, c = t1.m[1][2], t2.m[0][2]
    shape1 = TwoForm.from_wedge_terms(3, [(0, 2, 1), (1, 2, b)])
    shape2 = TwoForm.from_wedge_terms(3, [(0, 2, c), (1, 2, 1)])
    if t1.m != shape1.m or t2.m != shape2.m:
        rep.fail("witness-form-shape")
    return W, {"b": b, "c": c}


def classify_dim3(s: LowDimSpec) -> ClassificationResult:
    if s.k != 2:
        raise la.DimensionError("classify_dim3 needs k = 2")
    _require_jacobi(s)
    if not any(s.a):
        return _abelian_case(s, "AbelianIdealExtension")
    perm = _normalising_permutation(s)
    sp, P = _permute_spec(s, perm)
    d = _dim3_coefficients(sp)
    if d["d11"] != -d["d22"]:
        raise NormalFormMismatch("reduced Jacobi holds but d11 ≠ −d22")
    rep = AxiomReport()
    notes = []
    if d["d12"]:
        W, params = _classify_sl2(sp, rep)
        tag = "SL2"
        if params["scale1"] != 1 or params["scale2"] != 1:
            notes.append("forms match the model shape up to the reported nonzero scales")
    else:
        W, params = _classify_sol(sp, rep)
        tag = "Sol"
    params = dict(d, **params)
    return ClassificationResult(tag, params, la.mat_mul(P, W), rep, perm, notes)


def classify_dimk(s: LowDimSpec) -> ClassificationResult:
    if s.k < 3:
        raise la.DimensionError("classify_dimk needs k ≥ 3")
    _require_jacobi(s)
    if not any(s.a):
        return _abelian_case(s, "AbelianK")
    k = s.k
    perm = _normalising_permutation(s)
    sp, P = _permute_spec(s, perm)
    a = sp.a
    a1 = a[0]
    g = [la.unit(k, 0)] + [la.sub(la.scale(a1, la.unit(k, i)), la.scale(a[i], la.unit(k, 0))) for i in range(1, k)]
    c1 = la.coordinates(g, sp.Dx(g[0]))
    lam, b = c1[0], tuple(c1[1:])
    for i in range(1, k):
        if sp.Dx(g[i]) != la.scale(-lam, g[i]):
            raise NormalFormMismatch(f"D(g_{i + 1}) is not −λ g_{i + 1}")
    W = la.from_columns([v + (Q(0),) for v in g] + [la.unit(k + 1, k)])
    rep = check_bracket_map(W, build_lowdim(sp).bracket, normal_form_bracket(k, a1, lam, b), "normal-form-bracket")
    _check_h_correspondence(W, Subspace.coordinate(k + 1, range(k)), build_lowdim(sp).h, rep)
    rep.note("normal-form-forms")
    pulled = _pulled_forms(W, lowdim_forms(k))
    expected = normal_form_forms(k, a)
    for i, (x, y) in enumerate(zip(pulled, expected)):
        if x.m != y.m:
            rep.fail("normal-form-forms", (i,))
    params = {"lambda": lam, "a1": a1}
    params.update({f"b{i + 1}": b[i - 1] for i in range(1, k)})
    params.update({f"a{i + 1}": a[i] for i in range(1, k)})
    return ClassificationResult("NormalFormK", params, la.mat_mul(P, W), rep, perm)


def classify(s: LowDimSpec) -> ClassificationResult:
    return classify_dim3(s) if s.k == 2 else classify_dimk(s)
