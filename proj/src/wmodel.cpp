#include "tripleq/wmodel.hpp"

#include <algorithm>

namespace tripleq {

namespace {

QSeries tail_series(const Context& ctx, int tail_prec) {
    QSeries z(ctx);
    if (tail_prec < PadicNum::kExact)
        for (int n = 0; n <= ctx.Q; ++n) z.set(n, PadicNum::zero(*ctx.ring, tail_prec));
    return z;
}

QSeries lower_precision(const QSeries& f, int abs) {
    QSeries out = f;
    for (int n = 0; n <= f.Q(); ++n) out.set(n, f[n].reduce_abs(abs));
    return out;
}

void require_depleted(const WElement& w) {
    for (const auto& c : w.comps)
        if (!is_depleted(c))
            fail(ErrorKind::Input, "wmodel.not_depleted",
                 "iterated connection needs p-depleted components with zero constant term");
}

// table of n^-1 for the units n <= Q
std::vector<PadicNum> inverse_table(const Context& ctx) {
    const Ring& R = *ctx.ring;
    std::vector<PadicNum> inv(ctx.Q + 1, PadicNum::exact_zero(R));
    for (int n = 1; n <= ctx.Q; ++n)
        if (n % static_cast<int>(R.p()) != 0) inv[n] = PadicNum::from_int(R, n).inverse();
    return inv;
}

QSeries theta_inverse_step(const QSeries& f, const std::vector<PadicNum>& inv) {
    QSeries out = f;
    for (int n = 1; n <= f.Q(); ++n)
        if (!f[n].is_exact_zero()) out.set(n, f[n] * inv[n]);
    return out;
}

}  // namespace

WElement WElement::single(const QSeries& g, const ExponentChar& weight) {
    WElement w;
    w.weight = weight;
    w.comps.push_back(g);
    return w;
}

WElement WElement::zero(const Context& ctx, const ExponentChar& weight) { return single(QSeries(ctx), weight); }

QSeries WElement::comp(int i) const {
    if (i >= 0 && i <= fil()) return comps[i];
    return tail_series(ctx(), tail_prec);
}

SlotIndex first_disagreement(const WElement& a, const WElement& b, int k) {
    int top = std::max(a.fil(), b.fil());
    for (int i = 0; i <= top; ++i) {
        int n = first_disagreement(a.comp(i), b.comp(i), k);
        if (n >= 0) return {i, n};
    }
    if (std::min(a.tail_prec, b.tail_prec) < k) return {top + 1, 0};
    return {};
}

bool agrees_to(const WElement& a, const WElement& b, int k) { return !first_disagreement(a, b, k).found(); }

bool operator==(const WElement& a, const WElement& b) {
    int top = std::max(a.fil(), b.fil());
    for (int i = 0; i <= top; ++i)
        if (!(a.comp(i) == b.comp(i))) return false;
    return true;
}

WElement operator+(const WElement& a, const WElement& b) {
    WElement out;
    out.weight = a.weight;
    out.twist = a.twist;
    out.tail_prec = std::min(a.tail_prec, b.tail_prec);
    int top = std::max(a.fil(), b.fil());
    for (int i = 0; i <= top; ++i) out.comps.push_back(a.comp(i) + b.comp(i));
    return out;
}

WElement operator*(const PadicNum& c, const WElement& w) {
    WElement out = w;
    for (auto& g : out.comps) g = c * g;
    if (w.tail_prec < PadicNum::kExact) out.tail_prec = (c * PadicNum::zero(*c.ring(), w.tail_prec)).abs_prec();
    return out;
}

WElement times(const WElement& w, const QSeries& h, const ExponentChar& h_weight) {
    WElement out = w;
    out.weight = w.weight + h_weight;
    for (auto& g : out.comps) g = g * h;
    if (w.tail_prec < PadicNum::kExact) out.tail_prec = w.tail_prec + std::min(0, h.min_valuation());
    return out;
}

WElement nabla(const WElement& w) {
    const Context& ctx = w.ctx();
    const Ring& R = *ctx.ring;
    const PadicNum uk = w.weight.value(R);
    WElement out;
    out.weight = w.weight.shifted(2);
    out.twist = w.twist;
    out.tail_prec = w.tail_prec;
    const int m = w.fil();
    for (int i = 0; i <= m + 1; ++i) {
        QSeries c(ctx);
        if (i <= m) c = theta(w.comps[i]);
        if (i >= 1) c += (uk - PadicNum::from_int(R, i - 1)) * w.comps[i - 1];
        out.comps.push_back(c);
    }
    return out;
}

WElement nabla_pow(const WElement& w, const ExponentChar& s) {
    require_depleted(w);
    const Context& ctx = w.ctx();
    const Ring& R = *ctx.ring;
    const int cap = R.cap();
    const std::uint64_t p = R.p();
    const PadicNum us = s.value(R);
    const PadicNum uk = w.weight.value(R);
    const ExponentChar ks = w.weight + s;
    const bool exact_coeffs = s.is_classical() && w.weight.is_classical();
    const bool convergent = (s.wild.is_zero() || s.wild.valuation() >= 2) &&
                            (w.weight.wild.is_zero() || w.weight.wild.valuation() >= 1);
    const std::vector<PadicNum> inv = inverse_table(ctx);

    WElement out;
    out.weight = w.weight + s.scaled(2);
    out.twist = w.twist;
    out.tail_prec = w.tail_prec;
    std::vector<QSeries> acc;
    // (first dropped slot, bound) for each truncated sum
    std::vector<std::pair<int, int>> dropped;

    for (int h = 0; h <= w.fil(); ++h) {
        const QSeries& gamma = w.comps[h];
        const int vmin = gamma.min_valuation();
        if (vmin >= PadicNum::kExact) continue;
        // last j with a possibly nonzero coefficient, or -1 if the sum is infinite
        long last = -1;
        if (s.is_classical() && s.int_part >= 0) last = s.int_part;
        const std::int64_t ch = ks.int_part - h - 1;
        if (ks.is_classical() && ch >= 0) last = last < 0 ? ch : std::min<long>(last, ch);
        bool truncated = false;
        if (last < 0) {
            if (!convergent)
                fail(ErrorKind::Input, "wmodel.no_convergence", "iteration does not converge");
            // binom(u_s, j) prod(c - i) lies in j! Z_p
            last = 0;
            while (vp_factorial(last + 1, p) + vmin < cap) ++last;
            truncated = true;
        }
        const PadicNum c_h = uk + us - PadicNum::from_int(R, h + 1);
        QSeries th = theta_pow(gamma, s);
        for (long j = 0; j <= last; ++j) {
            if (j > 0) th = theta_inverse_step(th, inv);
            PadicNum coef;
            if (exact_coeffs) {
                coef = PadicNum::from_big(R, binom_int(s.int_part, static_cast<int>(j)) *
                                                 falling_int(ch, static_cast<int>(j)));
            } else {
                PadicNum fall = PadicNum::from_int(R, 1);
                for (long i = 0; i < j; ++i) fall = fall * (c_h - PadicNum::from_int(R, i));
                coef = binom_u(us, static_cast<int>(j)) * fall;
            }
            const std::size_t slot = h + j;
            while (acc.size() <= slot) acc.emplace_back(ctx);
            if (!coef.is_exact_zero()) acc[slot] += coef * th;
        }
        if (truncated) dropped.emplace_back(h + last + 1, vp_factorial(last + 1, p) + vmin);
    }
    if (acc.empty()) acc.emplace_back(ctx);
    for (auto [from, bound] : dropped) {
        for (std::size_t i = from; i < acc.size(); ++i) acc[i] = lower_precision(acc[i], bound);
        out.tail_prec = std::min(out.tail_prec, bound);
    }
    if (w.tail_prec < PadicNum::kExact)
        for (auto& c : acc) c = lower_precision(c, w.tail_prec);
    out.comps = std::move(acc);
    return out;
}

QSeries oc_project(const WElement& w) {
    if (w.tail_prec < PadicNum::kExact)
        fail(ErrorKind::Precision, "wmodel.open_filtration",
             "H† needs a finite filtration; this element has a truncated tail");
    const Context& ctx = w.ctx();
    const Ring& R = *ctx.ring;
    const bool classical = w.weight.is_classical();
    const PadicNum uk = w.weight.value(R);
    QSeries out = w.comps[0];
    BigInt den_int = 1;
    PadicNum den = PadicNum::from_int(R, 1);
    for (int i = 1; i <= w.fil(); ++i) {
        if (classical) {
            den_int *= BigInt(w.weight.int_part - 1 - i);
            if (den_int == 0)
                fail(ErrorKind::Precision, "wmodel.hdagger_denominator", "H† denominator vanishes at this precision");
            den = PadicNum::from_big(R, den_int);
        } else {
            den = den * (uk - PadicNum::from_int(R, 1 + i));
            if (den.is_zero())
                fail(ErrorKind::Precision, "wmodel.hdagger_denominator", "H† denominator vanishes at this precision");
        }
        if (w.comps[i].is_zero() && w.comps[i].min_abs_prec() >= PadicNum::kExact) continue;
        PadicNum scale = (i % 2 == 0 ? PadicNum::from_int(R, 1) : PadicNum::from_int(R, -1)) / den;
        out += scale * theta_pow(w.comps[i], ExponentChar::classical(i));
    }
    return out;
}

}  // namespace tripleq
