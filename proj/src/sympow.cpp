#include "tripleq/sympow.hpp"

#include <algorithm>
#include <set>

namespace tripleq {

namespace {

BigInt choose(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    return binom_int(n, k);
}

void check_overlap(int r2, int r3, int t) {
    if (t < 1) fail(ErrorKind::Input, "sympow.bad_overlap", "t must be at least 1");
    if (t - 1 > std::min(r2, r3))
        fail(ErrorKind::Input, "sympow.bad_overlap", "overlap exceeds symmetric power");
}

void check_sym(const WElement& w) {
    if (!w.weight.is_classical() || w.weight.int_part < 0)
        fail(ErrorKind::Input, "sympow.not_symmetric", "symmetric power element needs a classical weight >= 0");
    if (w.fil() > w.weight.int_part || w.tail_prec < PadicNum::kExact)
        fail(ErrorKind::Input, "sympow.not_symmetric", "symmetric power element has too many components");
}

template <class CoefFn>
WElement contract(const WElement& a, const WElement& b, int t, CoefFn coef) {
    check_sym(a);
    check_sym(b);
    const int r2 = static_cast<int>(a.weight.int_part), r3 = static_cast<int>(b.weight.int_part);
    check_overlap(r2, r3, t);
    const int r1 = r2 + r3 - 2 * (t - 1);
    const Context& ctx = a.ctx();
    const Ring& R = *ctx.ring;
    WElement out;
    out.weight = ExponentChar::classical(r1);
    out.twist = a.twist + b.twist + 1 - t;
    out.comps.assign(r1 + 1, QSeries(ctx));
    for (int i = 0; i <= a.fil(); ++i) {
        if (a.comps[i].min_abs_prec() >= PadicNum::kExact && a.comps[i].is_zero()) continue;
        for (int k = 0; k <= b.fil(); ++k) {
            const int d = i + k - t + 1;
            if (d < 0 || d > r1) continue;
            BigRational c = coef(r2, r3, t, i, k);
            if (c == 0) continue;
            out.comps[d] += PadicNum::from_rational(R, c) * (a.comps[i] * b.comps[k]);
        }
    }
    return out;
}

}  // namespace

bool TripleWeights::balanced() const {
    return x < y + z && y < x + z && z < x + y;
}

TripleWeights TripleWeights::make(int x, int y, int z) {
    if ((x + y + z) % 2 != 0) fail(ErrorKind::Input, "gz.bad_weights", "x + y + z must be even");
    return TripleWeights{x, y, z};
}

WElement primitive_depleted(const QSeries& g, int r2) {
    if (r2 < 0) fail(ErrorKind::Input, "sympow.bad_weight", "r2 must be nonnegative");
    if (!is_depleted(g)) fail(ErrorKind::Input, "sympow.not_depleted", "primitive needs a p-depleted series");
    const Ring& R = g.ring();
    WElement out;
    out.weight = ExponentChar::classical(r2);
    QSeries th = theta_pow(g, ExponentChar::classical(-1));
    for (int i = 0; i <= r2; ++i) {
        if (i > 0) th = theta_pow(th, ExponentChar::classical(-1));
        BigInt c = factorial_int(i) * binom_int(r2, i);
        if (i % 2) c = -c;
        out.comps.push_back(PadicNum::from_big(R, c) * th);
    }
    return out;
}

BigRational pr_coefficient(int r2, int r3, int t, int i, int k) {
    check_overlap(r2, r3, t);
    if (i < 0 || i > r2 || k < 0 || k > r3) return 0;
    const int o = t - 1;
    BigInt sum = 0;
    // m shared slots carry eta from the first factor, the other o - m from the second
    for (int m = 0; m <= o; ++m) {
        BigInt term = choose(o, m) * choose(r2 - o, i - m) * choose(r3 - o, k - (o - m));
        if ((o - m) % 2) term = -term;
        sum += term;
    }
    return BigRational(sum, choose(r2, i) * choose(r3, k));
}

BigRational pr_coefficient_indexed(int r2, int r3, int t, int i, int k, const std::vector<int>& slots_a,
                                   const std::vector<int>& slots_b) {
    check_overlap(r2, r3, t);
    const int r = r2 + r3 - t + 1;
    std::set<int> sa(slots_a.begin(), slots_a.end()), sb(slots_b.begin(), slots_b.end());
    std::vector<int> uni;
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(uni));
    if (static_cast<int>(sa.size()) != r2 || static_cast<int>(sb.size()) != r3 ||
        static_cast<int>(uni.size()) != r || (r > 0 && (uni.front() < 1 || uni.back() > r)))
        fail(ErrorKind::Input, "sympow.bad_slots", "slot sets must cover 1..r with the right sizes");
    if (i < 0 || i > r2 || k < 0 || k > r3) return 0;
    const std::vector<int> va(sa.begin(), sa.end()), vb(sb.begin(), sb.end());
    const int d_target = i + k - t + 1;
    BigInt total = 0;
    // eta positions are bitmasks over the factor's own slot list
    for (unsigned ma = 0; ma < (1u << r2); ++ma) {
        if (__builtin_popcount(ma) != i) continue;
        for (unsigned mb = 0; mb < (1u << r3); ++mb) {
            if (__builtin_popcount(mb) != k) continue;
            int sign = 1, etas = 0;
            std::vector<int> letter(r + 1, -1);  // -1 free, 0 omega, 1 eta
            for (int s = 0; s < r2; ++s) letter[va[s]] = (ma >> s) & 1;
            for (int s = 0; s < r3 && sign; ++s) {
                int pos = vb[s];
                int lb = (mb >> s) & 1;
                if (letter[pos] < 0) {
                    letter[pos] = lb;
                    continue;
                }
                int la = letter[pos];
                letter[pos] = 2;  // contracted
                if (la == lb) sign = 0;
                else if (la == 0) sign = -sign;
            }
            if (!sign) continue;
            for (int pos = 1; pos <= r; ++pos)
                if (letter[pos] == 1) ++etas;
            if (etas == d_target) total += sign;
        }
    }
    return BigRational(total, choose(r2, i) * choose(r3, k));
}

WElement pr_project(const WElement& a, const WElement& b, int t) {
    return contract(a, b, t, [](int r2, int r3, int tt, int i, int k) { return pr_coefficient(r2, r3, tt, i, k); });
}

WElement pr_project_indexed(const WElement& a, const WElement& b, int t, const std::vector<int>& slots_a,
                            const std::vector<int>& slots_b) {
    return contract(a, b, t, [&](int r2, int r3, int tt, int i, int k) {
        return pr_coefficient_indexed(r2, r3, tt, i, k, slots_a, slots_b);
    });
}

namespace {

TripleWeights lemma_weights(int y, int z, int t) {
    if (t < 1) fail(ErrorKind::Input, "sympow.bad_overlap", "t must be at least 1");
    TripleWeights w = TripleWeights::from_yzt(y, z, t);
    if (!w.balanced() || w.x < 2)
        fail(ErrorKind::Input, "sympow.unbalanced", "weights must be balanced with x >= 2");
    if (w.b() - 1 >= w.x - 1)
        fail(ErrorKind::Precision, "wmodel.hdagger_denominator", "H† denominator vanishes at this precision");
    return w;
}

}  // namespace

LemmaSide lemma_lhs(const QSeries& g_dep, const QSeries& h, int y, int z, int t) {
    lemma_weights(y, z, t);
    const Ring& R = g_dep.ring();
    WElement iterated = nabla_pow(WElement::single(g_dep, ExponentChar::classical(y)), ExponentChar::classical(-t));
    WElement prod = times(iterated, h, ExponentChar::classical(z));
    BigInt scale = factorial_int(t - 1);
    if ((t - 1) % 2) scale = -scale;
    WElement pre = PadicNum::from_big(R, scale) * prod;
    return {oc_project(pre), pre};
}

LemmaSide lemma_rhs(const QSeries& g_dep, const QSeries& h, int y, int z, int t) {
    TripleWeights w = lemma_weights(y, z, t);
    WElement prim = primitive_depleted(g_dep, y - 2);
    WElement pre = pr_project(prim, WElement::single(h, ExponentChar::classical(z - 2)), t);
    pre.weight = ExponentChar::classical(w.x);
    return {oc_project(pre), pre};
}

}  // namespace tripleq
