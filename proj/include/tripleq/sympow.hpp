#pragma once

#include <vector>

#include "tripleq/wmodel.hpp"

namespace tripleq {

// Sym^r elements are WElements of classical weight r, component i being the
// coefficient of omega^(r-i) eta^i.

WElement primitive_depleted(const QSeries& g, int r2);

// Coefficient of omega^(r1-d) eta^d, d = i + k - t + 1, in the contraction of
// omega^(r2-i) eta^i (first factor) with omega^(r3-k) eta^k (second factor)
// over t-1 shared slots.  A shared slot holding eta from the first factor and
// omega from the second contributes +1, the reverse contributes -1.
BigRational pr_coefficient(int r2, int r3, int t, int i, int k);

// Same coefficients by enumerating tensor slots for explicit slot sets of
// the two factors (1-based positions in 1..r2+r3-t+1).
BigRational pr_coefficient_indexed(int r2, int r3, int t, int i, int k, const std::vector<int>& slots_a,
                                   const std::vector<int>& slots_b);

WElement pr_project(const WElement& a, const WElement& b, int t);
WElement pr_project_indexed(const WElement& a, const WElement& b, int t, const std::vector<int>& slots_a,
                            const std::vector<int>& slots_b);

struct TripleWeights {
    int x = 2, y = 2, z = 2;

    static TripleWeights make(int x, int y, int z);
    // x = y + z - 2t
    static TripleWeights from_yzt(int y, int z, int t) { return make(y + z - 2 * t, y, z); }
    int t() const { return (y + z - x) / 2; }
    int c() const { return (x + y + z - 2) / 2; }
    int b() const { return y - t(); }
    bool balanced() const;
};

struct LemmaSide {
    QSeries value;  // weight-x q-expansion after H†
    WElement pre;   // the weight-x element before H†, already scaled
};

// (-1)^(t-1) (t-1)! H†(nabla^(-t)(g V_{y,0}) x h V_{z,0})
LemmaSide lemma_lhs(const QSeries& g_dep, const QSeries& h, int y, int z, int t);
// H†(pr(G x h omega^(z-2))) with G the depleted primitive of g
LemmaSide lemma_rhs(const QSeries& g_dep, const QSeries& h, int y, int z, int t);

}  // namespace tripleq
