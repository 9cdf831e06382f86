#pragma once

#include <vector>

#include "tripleq/qseries.hpp"

namespace tripleq {

// Polynomial q-expansion sum_i comps[i] V_{k,i} of weight k.
//
// tail_prec bounds the components beyond the stored ones: they are zero
// modulo p^tail_prec (exactly zero when tail_prec is kExact).  It is finite
// only after a non-terminating iteration of the connection was truncated.
struct WElement {
    ExponentChar weight;
    std::vector<QSeries> comps;
    int twist = 0;
    int tail_prec = PadicNum::kExact;

    static WElement single(const QSeries& g, const ExponentChar& weight);
    static WElement zero(const Context& ctx, const ExponentChar& weight);

    int fil() const { return static_cast<int>(comps.size()) - 1; }
    const Context& ctx() const { return comps.front().ctx(); }
    // component i, with the implicit tail beyond fil()
    QSeries comp(int i) const;
};

struct SlotIndex {
    int slot = -1;
    int index = -1;
    bool found() const { return slot >= 0; }
};

// first (slot, q-index) where the components differ modulo p^k
SlotIndex first_disagreement(const WElement& a, const WElement& b, int k);
bool agrees_to(const WElement& a, const WElement& b, int k);
bool operator==(const WElement& a, const WElement& b);

WElement operator+(const WElement& a, const WElement& b);
WElement operator*(const PadicNum& c, const WElement& w);

// multiply every component by h; the weight grows by h_weight
WElement times(const WElement& w, const QSeries& h, const ExponentChar& h_weight);

WElement nabla(const WElement& w);
WElement nabla_pow(const WElement& w, const ExponentChar& s);
QSeries oc_project(const WElement& w);

}  // namespace tripleq
