#include "tripleq/gz.hpp"

namespace tripleq {

namespace {

const Ring& ring_of(const EigenData& f) {
    const Ring* R = f.alpha.ring() ? f.alpha.ring() : f.a_p.ring();
    if (!R) fail(ErrorKind::Input, "gz.bad_eigendata", "eigendata carries no precision context");
    return *R;
}

HeckeTriple<PadicNum> triple_of(const EigenData& f) {
    if (f.alpha.is_zero() || f.chi_p.is_zero())
        fail(ErrorKind::Input, "gz.bad_eigendata", "alpha and chi(p) must be invertible");
    return {f.alpha, f.beta, f.chi_p};
}

void check_weights(const EigenData& f, const EigenData& g, const EigenData& h, const TripleWeights& w) {
    if (f.k != w.x || g.k != w.y || h.k != w.z)
        fail(ErrorKind::Input, "gz.weight_mismatch", "eigendata weights do not match (x, y, z)");
}

PadicNum sign_over_factorial(const Ring& R, int t) {
    BigRational s(1, factorial_int(t - 1));
    if ((t - 1) % 2) s = -s;
    return PadicNum::from_rational(R, s);
}

}  // namespace

EulerForms<BigRational> euler_forms_exact(const HeckeTriple<BigRational>& f, const HeckeTriple<BigRational>& g,
                                          const HeckeTriple<BigRational>& h, const TripleWeights& w, long p) {
    return euler_forms(f, g, h, w, [p](int k) {
        BigInt pk = boost::multiprecision::pow(BigInt(p), std::abs(k));
        return k >= 0 ? BigRational(pk) : BigRational(1, pk);
    });
}

EulerFactors euler_factors(const EigenData& f, const EigenData& g, const EigenData& h, const TripleWeights& w) {
    check_weights(f, g, h, w);
    const Ring& R = ring_of(f);
    auto forms = euler_forms(triple_of(f), triple_of(g), triple_of(h), w,
                             [&R](int k) { return PadicNum::from_int(R, 1).shift(k); });
    if (!(forms.E0 == forms.E0_cross) || !(forms.E1 == forms.E1_cross) || !(forms.E == forms.E_cross))
        fail(ErrorKind::Consistency, "gz.euler_mismatch",
             "Euler factor formulations disagree; check chi_f chi_g chi_h = 1 and alpha beta = chi p^(k-1)");
    return {forms.E0, forms.E1, forms.E};
}

PadicNum interp_factor_balanced(const EigenData& f, const EigenData& g, const EigenData& h, const TripleWeights& w) {
    const Ring& R = ring_of(f);
    const PadicNum one = PadicNum::from_int(R, 1);
    const PadicNum num = one - (f.beta * g.alpha * h.alpha).shift(-w.c());
    const PadicNum den = one - (f.alpha * g.beta * h.beta).shift(-w.c());
    if (den.is_zero()) fail(ErrorKind::Precision, "gz.exceptional", "exceptional point");
    PadicNum out = PadicNum::from_int(R, static_cast<std::int64_t>(R.p()) - 1) * f.alpha * num / den;
    if (w.balanced()) {
        BigRational s(1, factorial_int(w.c() - w.x));
        if ((w.c() - w.x) % 2) s = -s;
        return out * PadicNum::from_rational(R, s);
    }
    if (w.x - w.c() - 1 < 0)
        fail(ErrorKind::Input, "gz.unbalanced_branch", "unbalanced branch needs x to dominate y + z");
    return out * PadicNum::from_big(R, factorial_int(w.x - w.c() - 1));
}

namespace {

int common_reliable(const QSeries& omega, const std::vector<QSeries>& basis) {
    int top = omega.reliable();
    for (const auto& b : basis) top = std::min(top, b.reliable());
    return top;
}

// coordinates of omega over basis read from the coefficients at `rows`
IsotypicResult expand_over(const QSeries& omega, const std::vector<QSeries>& basis, const std::vector<int>& rows,
                           int cmp_prec) {
    const int d = static_cast<int>(basis.size());
    const Ring& R = omega.ring();
    PadicMatrix A(R, d);
    PadicVector rhs(d);
    for (int r = 0; r < d; ++r) {
        for (int j = 0; j < d; ++j) A.at(r, j) = basis[j][rows[r]];
        rhs[r] = omega[rows[r]];
    }
    IsotypicResult out;
    try {
        out.coords = solve(A, rhs);
    } catch (const Error& e) {
        if (e.code() != "slope.singular") throw;
        fail(ErrorKind::Precision, "gz.unresolved", "basis does not resolve ω at this precision");
    }
    QSeries span(omega.ctx());
    for (int j = 0; j < d; ++j) span += out.coords[j] * basis[j];
    const QSeries residual = omega - span;
    for (int n = 0; n <= residual.reliable(); ++n)
        out.residual_valuation = std::min(out.residual_valuation, residual[n].valuation());
    if (first_disagreement(omega, span, cmp_prec) >= 0)
        fail(ErrorKind::Input, "gz.outside_span", "ω outside basis span");
    return out;
}

// d coefficient indices on which the family is independent, by pivoting
std::vector<int> pivot_rows(const std::vector<QSeries>& family, int top) {
    const int d = static_cast<int>(family.size());
    std::vector<std::vector<PadicNum>> m(top + 1, std::vector<PadicNum>(d));
    for (int n = 0; n <= top; ++n)
        for (int j = 0; j < d; ++j) m[n][j] = family[j][n];
    std::vector<int> idx(top + 1);
    for (int n = 0; n <= top; ++n) idx[n] = n;
    for (int col = 0; col < d; ++col) {
        int best = -1;
        for (int r = col; r <= top; ++r)
            if (!m[r][col].is_zero() && (best < 0 || m[r][col].valuation() < m[best][col].valuation())) best = r;
        if (best < 0) fail(ErrorKind::Precision, "gz.unresolved", "spanning set is dependent at this precision");
        std::swap(m[best], m[col]);
        std::swap(idx[best], idx[col]);
        PadicNum inv = m[col][col].inverse();
        for (int r = col + 1; r <= top; ++r) {
            if (m[r][col].is_exact_zero()) continue;
            PadicNum f = m[r][col] * inv;
            for (int j = col; j < d; ++j) m[r][j] -= f * m[col][j];
        }
    }
    idx.resize(d);
    return idx;
}

}  // namespace

IsotypicResult isotypic_extract(const QSeries& omega, const std::vector<QSeries>& basis, int target, int cmp_prec) {
    const int d = static_cast<int>(basis.size());
    if (d == 0 || target < 0 || target >= d) fail(ErrorKind::Input, "gz.bad_basis", "target outside the basis");
    if (common_reliable(omega, basis) < d)
        fail(ErrorKind::Input, "gz.bad_basis", "basis needs at least as many reliable coefficients as elements");
    std::vector<int> rows(d);
    for (int r = 0; r < d; ++r) rows[r] = r + 1;
    IsotypicResult out = expand_over(omega, basis, rows, cmp_prec);
    out.coefficient = out.coords[target];
    return out;
}

QSeries apply_slope_projector(const QSeries& omega, const std::vector<QSeries>& spanning, Slope a, int cmp_prec) {
    const int d = static_cast<int>(spanning.size());
    if (d == 0) fail(ErrorKind::Input, "gz.bad_basis", "empty spanning set");
    const Ring& R = omega.ring();
    std::vector<QSeries> images;
    for (const auto& s : spanning) images.push_back(u_op(s));
    const int top = std::min(common_reliable(omega, spanning), common_reliable(images.front(), images));
    const std::vector<int> rows = pivot_rows(spanning, top);
    PadicMatrix U(R, d);
    for (int j = 0; j < d; ++j) {
        IsotypicResult col = expand_over(images[j], spanning, rows, cmp_prec);
        for (int i = 0; i < d; ++i) U.at(i, j) = col.coords[i];
    }
    const PadicVector coords = slope_projector(U, a) * expand_over(omega, spanning, rows, cmp_prec).coords;
    QSeries out(omega.ctx());
    for (int j = 0; j < d; ++j) out += coords[j] * spanning[j];
    return out;
}

LValueResult lvalue_numerator(const EigenData& g, const EigenData& h, const TripleWeights& w, int cmp_prec,
                              const std::optional<std::vector<QSeries>>& spanning, Slope a) {
    if (!g.coeffs || !h.coeffs) fail(ErrorKind::Input, "gz.missing_coeffs", "g and h need q-expansions");
    if (g.k != w.y || h.k != w.z)
        fail(ErrorKind::Input, "gz.weight_mismatch", "eigendata weights do not match (y, z)");
    const int t = w.t();
    const QSeries g_dep = deplete(p_stabilize(*g.coeffs, g.beta));
    const QSeries h_z = p_stabilize(*h.coeffs, h.beta);
    const PadicNum scale = sign_over_factorial(g_dep.ring(), t);
    LValueResult out{scale * lemma_lhs(g_dep, h_z, w.y, w.z, t).value,
                     scale * lemma_rhs(g_dep, h_z, w.y, w.z, t).value, -1, ""};
    if (spanning) {
        out.value = apply_slope_projector(out.value, *spanning, a, cmp_prec);
        out.via_primitive = apply_slope_projector(out.via_primitive, *spanning, a, cmp_prec);
    } else {
        out.caveat = "slope projection skipped: no spanning set supplied";
    }
    out.first_disagreement = first_disagreement(out.value, out.via_primitive, cmp_prec);
    return out;
}

namespace {

PadicNum gz_prefactor(const EigenData& f, const EigenData& g, const EigenData& h, const TripleWeights& w,
                      bool need_E) {
    EulerFactors ef = euler_factors(f, g, h, w);
    if (ef.E0.is_zero() || ef.E1.is_zero() || (need_E && ef.E.is_zero()))
        fail(ErrorKind::Precision, "gz.exceptional_euler", "exceptional Euler factor");
    return sign_over_factorial(ring_of(f), w.t()) * ef.E / (ef.E0 * ef.E1);
}

}  // namespace

PadicNum gz_assemble(const PadicNum& aj_value, const EigenData& f, const EigenData& g, const EigenData& h,
                     const TripleWeights& w) {
    return gz_prefactor(f, g, h, w, false) * aj_value;
}

PadicNum gz_disassemble(const PadicNum& l_value, const EigenData& f, const EigenData& g, const EigenData& h,
                        const TripleWeights& w) {
    return l_value / gz_prefactor(f, g, h, w, true);
}

}  // namespace tripleq
