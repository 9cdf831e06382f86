#pragma once

// Consistent rational Hecke data for balanced weight triples.

#include <array>
#include <numeric>

#include "tripleq/gz.hpp"
#include "tripleq/random.hpp"

namespace tripleq::testing {

using RationalRoots = HeckeTriple<BigRational>;

struct RationalTriple {
    TripleWeights w;
    std::array<RationalRoots, 3> roots;  // f, g, h
};

// alpha beta = chi p^(k-1) with both roots integral
inline RationalRoots random_roots(Rng& rng, long p, int k, int chi) {
    std::int64_t u = 0, d = 0;
    while (u == 0 || u % p == 0) u = rng.range(-50, 50);
    while (d == 0 || d % p == 0) d = rng.range(1, 20);
    BigInt pv = 1;
    for (int v = static_cast<int>(rng.range(0, k - 1)); v > 0; --v) pv *= p;
    BigRational alpha = BigRational(BigInt(u) * pv, BigInt(d));
    BigInt top = 1;
    for (int i = 0; i < k - 1; ++i) top *= p;
    return {alpha, BigRational(chi * top) / alpha, BigRational(chi)};
}

inline RationalTriple random_rational_triple(Rng& rng, long p) {
    const int y = static_cast<int>(rng.range(2, 8)), z = static_cast<int>(rng.range(2, 8));
    const int t = static_cast<int>(rng.range(1, std::min(y, z) - 1));
    RationalTriple tr;
    tr.w = TripleWeights::from_yzt(y, z, t);
    const int cf = rng.coin() ? 1 : -1, cg = rng.coin() ? 1 : -1;
    tr.roots = {random_roots(rng, p, tr.w.x, cf), random_roots(rng, p, y, cg), random_roots(rng, p, z, cf * cg)};
    return tr;
}

// the four-fold product and the two single factors written out directly
struct DirectEuler {
    BigRational E0, E1, E;
};

inline BigRational ppow(long p, int k) {
    BigInt pk = 1;
    for (int i = 0; i < std::abs(k); ++i) pk *= p;
    return k >= 0 ? BigRational(pk) : BigRational(1, pk);
}

inline DirectEuler direct_euler(const RationalTriple& tr, long p) {
    const auto& [f, g, h] = tr.roots;
    const TripleWeights& w = tr.w;
    DirectEuler d;
    d.E0 = 1 - f.beta * f.beta / f.chi * ppow(p, 1 - w.x);
    d.E1 = 1 - f.beta * f.beta / f.chi * ppow(p, -w.x);
    const BigRational pc = ppow(p, -w.c());
    d.E = (1 - f.beta * g.alpha * h.alpha * pc) * (1 - f.beta * g.alpha * h.beta * pc) *
          (1 - f.beta * g.beta * h.alpha * pc) * (1 - f.beta * g.beta * h.beta * pc);
    return d;
}

inline EigenData eigen_from(const Ring& R, int k, const RationalRoots& r) {
    EigenData e;
    e.k = k;
    e.alpha = PadicNum::from_rational(R, r.alpha);
    e.beta = PadicNum::from_rational(R, r.beta);
    e.chi_p = PadicNum::from_rational(R, r.chi);
    e.a_p = PadicNum::from_rational(R, r.alpha + r.beta);
    return e;
}

inline EigenData random_eigen(const Ring& R, Rng& rng, int k) {
    return eigen_from(R, k, random_roots(rng, static_cast<long>(R.p()), k, rng.coin() ? 1 : -1));
}

// random coefficients with a_0 = 0, a_1 = 1 and, when ap is nonzero, a_p = ap
inline QSeries random_series_with_ap(const Context& ctx, Rng& rng, const BigRational& ap) {
    std::vector<std::uint64_t> r(ctx.Q + 1);
    for (auto& x : r) x = rng.below(ctx.ring->modulus());
    r[0] = 0;
    if (ctx.Q >= 1) r[1] = 1;
    QSeries f = QSeries::from_residues(ctx, r);
    if (ap != 0 && ctx.Q >= static_cast<int>(ctx.p())) f.set(static_cast<int>(ctx.p()), PadicNum::from_rational(*ctx.ring, ap));
    return f;
}

inline BigRational det4(const std::vector<std::vector<std::int64_t>>& a) {
    std::array<int, 4> perm{0, 1, 2, 3};
    BigRational total = 0;
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (perm[i] > perm[j]) ++inversions;
        BigInt term = 1;
        for (int i = 0; i < 4; ++i) term *= a[i][perm[i]];
        total += inversions % 2 ? BigRational(-term) : BigRational(term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace tripleq::testing
