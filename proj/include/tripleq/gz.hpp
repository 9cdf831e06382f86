#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tripleq/slope.hpp"
#include "tripleq/sympow.hpp"

namespace tripleq {

template <class T>
struct HeckeTriple {
    T alpha, beta, chi;
};

// Euler factors in the direct form and recomputed through the shifted root
// beta = p^(x+t-2) chi_f / alpha_f and the renormalized roots alpha p^(1-k).
template <class T>
struct EulerForms {
    T E0, E1, E;
    T E0_cross, E1_cross, E_cross;
};

// pow_p(k) must return p^k for any integer k
template <class T, class PowP>
EulerForms<T> euler_forms(const HeckeTriple<T>& f, const HeckeTriple<T>& g, const HeckeTriple<T>& h,
                          const TripleWeights& w, PowP pow_p) {
    const T one = pow_p(0);
    const int c = w.c(), t = w.t();
    EulerForms<T> out;
    const T bf2 = f.beta * f.beta / f.chi;
    out.E0 = one - bf2 * pow_p(1 - w.x);
    out.E1 = one - bf2 * pow_p(-w.x);
    out.E = one;
    for (const T* a : {&g.alpha, &g.beta})
        for (const T* b : {&h.alpha, &h.beta}) out.E = out.E * (one - f.beta * *a * *b * pow_p(-c));

    const T shifted = pow_p(w.x + t - 2) * f.chi / f.alpha;
    const T ag = g.alpha * pow_p(1 - w.y), bg = g.beta * pow_p(1 - w.y);
    const T ah = h.alpha * pow_p(1 - w.z), bh = h.beta * pow_p(1 - w.z);
    const T all = shifted * shifted * ag * bg * ah * bh;
    out.E1_cross = one - all;
    out.E0_cross = one - pow_p(1) * all;
    out.E_cross = one;
    for (const T* a : {&ag, &bg})
        for (const T* b : {&ah, &bh}) out.E_cross = out.E_cross * (one - shifted * *a * *b);
    return out;
}

EulerForms<BigRational> euler_forms_exact(const HeckeTriple<BigRational>& f, const HeckeTriple<BigRational>& g,
                                          const HeckeTriple<BigRational>& h, const TripleWeights& w, long p);

struct EulerFactors {
    PadicNum E0, E1, E;
};

// checks the weights against the eigendata and the two forms against each other
EulerFactors euler_factors(const EigenData& f, const EigenData& g, const EigenData& h, const TripleWeights& w);

PadicNum interp_factor_balanced(const EigenData& f, const EigenData& g, const EigenData& h, const TripleWeights& w);

struct IsotypicResult {
    std::vector<PadicNum> coords;  // coefficients over the whole basis
    PadicNum coefficient;          // coords[target]
    int residual_valuation = PadicNum::kExact;
};

// expands omega over the basis using the coefficients of q^1..q^d, then
// checks the remaining coefficients to p^cmp_prec
IsotypicResult isotypic_extract(const QSeries& omega, const std::vector<QSeries>& basis, int target, int cmp_prec);

// e^{<=a} on the span of a finite family closed under U
QSeries apply_slope_projector(const QSeries& omega, const std::vector<QSeries>& spanning, Slope a, int cmp_prec);

struct LValueResult {
    QSeries value;       // H†(nabla^(-t)(g^[p] V_y) x h V_z)
    QSeries via_primitive;  // (-1)^(t-1)/(t-1)! H†(pr(G x h omega^r3))
    int first_disagreement = -1;
    std::string caveat;
    bool agree() const { return first_disagreement < 0; }
};

// g and h must carry coefficients; they are p-stabilized with their beta roots
LValueResult lvalue_numerator(const EigenData& g, const EigenData& h, const TripleWeights& w, int cmp_prec,
                              const std::optional<std::vector<QSeries>>& spanning = std::nullopt,
                              Slope a = Slope(0));

PadicNum gz_assemble(const PadicNum& aj_value, const EigenData& f, const EigenData& g, const EigenData& h,
                     const TripleWeights& w);
PadicNum gz_disassemble(const PadicNum& l_value, const EigenData& f, const EigenData& g, const EigenData& h,
                        const TripleWeights& w);

}  // namespace tripleq
