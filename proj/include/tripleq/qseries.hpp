#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tripleq/padic.hpp"

namespace tripleq {

// Truncated q-expansion a_0 + a_1 q + ... + a_Q q^Q.
//
// reliable() is the largest index whose coefficient is actually determined
// by the inputs; it drops after U, which reads past the truncation.
class QSeries {
public:
    explicit QSeries(const Context& ctx);
    QSeries(const Context& ctx, std::vector<PadicNum> coeffs, int reliable = -1);
    static QSeries from_residues(const Context& ctx, const std::vector<std::uint64_t>& residues);
    // the monomial c q^n
    static QSeries monomial(const Context& ctx, int n, const PadicNum& c);

    const Context& ctx() const { return ctx_; }
    const Ring& ring() const { return *ctx_.ring; }
    int Q() const { return ctx_.Q; }
    int reliable() const { return reliable_; }
    const PadicNum& operator[](int n) const { return coeffs_[n]; }
    const std::vector<PadicNum>& coeffs() const { return coeffs_; }
    void set(int n, const PadicNum& c) { coeffs_[n] = c; }
    void set_reliable(int r) { reliable_ = r; }

    bool is_zero() const;
    // smallest valuation among coefficients, kExact for the zero series
    int min_valuation() const;
    int min_abs_prec() const;
    // first index where the two series differ modulo p^k, or -1
    friend int first_disagreement(const QSeries& a, const QSeries& b, int k);

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const PadicNum& c, const QSeries& f);
    QSeries operator-() const;
    QSeries& operator+=(const QSeries& b) { return *this = *this + b; }

    // congruence at the smaller precision, up to the common reliable index
    friend bool operator==(const QSeries& a, const QSeries& b);

private:
    Context ctx_;
    std::vector<PadicNum> coeffs_;
    int reliable_;
};

// every coefficient up to the reliable index agrees modulo p^k
bool agrees_to(const QSeries& a, const QSeries& b, int k);

bool is_depleted(const QSeries& f);
QSeries theta_pow(const QSeries& f, const ExponentChar& s);
QSeries theta(const QSeries& f);
QSeries u_op(const QSeries& f);
QSeries v_op(const QSeries& f);
QSeries deplete(const QSeries& f);
QSeries p_stabilize(const QSeries& f, const PadicNum& beta);
QSeries mul(const QSeries& f, const QSeries& g);

struct HeckeRoots {
    PadicNum alpha;
    PadicNum beta;
};

// roots of x^2 - a_p x + chi_p p^(k-1) in Q_p, ordered by valuation
HeckeRoots hecke_roots(const PadicNum& a_p, const PadicNum& chi_p, int k);

// square root in Q_p, or nothing when the value is not a detectable square
std::optional<PadicNum> padic_sqrt(const PadicNum& x);

struct EigenData {
    std::string label;
    int N = 1;
    int k = 2;
    PadicNum a_p;
    PadicNum chi_p;
    PadicNum alpha;
    PadicNum beta;
    std::optional<QSeries> coeffs;

    // checks alpha + beta = a_p and alpha beta = chi_p p^(k-1); throws on failure
    void validate(bool roots_distinct = false) const;
};

}  // namespace tripleq
