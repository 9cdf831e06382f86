#include "tripleq/qseries.hpp"

#include <algorithm>

namespace tripleq {

namespace {

void require_same(const QSeries& a, const QSeries& b) {
    if (a.ctx().ring != b.ctx().ring || a.Q() != b.Q())
        fail(ErrorKind::Input, "qseries.context_mismatch", "q-series live in different contexts");
}

// representative of x / p^shift modulo p^K, assuming v(x) >= shift
std::uint64_t scaled_rep(const PadicNum& x, int shift, int K, const Ring& R) {
    if (x.is_zero()) return 0;
    int e = x.valuation() - shift;
    if (e >= K) return 0;
    return (x.unit_part() % R.pow(K - e)) * R.pow(e);
}

}  // namespace

QSeries::QSeries(const Context& ctx)
    : ctx_(ctx), coeffs_(ctx.Q + 1, PadicNum::exact_zero(*ctx.ring)), reliable_(ctx.Q) {}

QSeries::QSeries(const Context& ctx, std::vector<PadicNum> coeffs, int reliable)
    : ctx_(ctx), coeffs_(std::move(coeffs)), reliable_(reliable < 0 ? ctx.Q : std::min(reliable, ctx.Q)) {
    if (static_cast<int>(coeffs_.size()) != ctx.Q + 1)
        fail(ErrorKind::Input, "qseries.bad_length", "q-series must have exactly Q+1 coefficients");
    for (auto& c : coeffs_)
        if (!c.ring()) c = PadicNum::exact_zero(*ctx.ring);
}

QSeries QSeries::from_residues(const Context& ctx, const std::vector<std::uint64_t>& residues) {
    if (static_cast<int>(residues.size()) != ctx.Q + 1)
        fail(ErrorKind::Input, "qseries.bad_length", "q-series must have exactly Q+1 coefficients");
    std::vector<PadicNum> c;
    c.reserve(residues.size());
    for (auto r : residues) c.push_back(PadicNum::from_residue(*ctx.ring, r, ctx.M()));
    return QSeries(ctx, std::move(c));
}

QSeries QSeries::monomial(const Context& ctx, int n, const PadicNum& c) {
    QSeries f(ctx);
    if (n >= 0 && n <= ctx.Q) f.coeffs_[n] = c;
    return f;
}

bool QSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const PadicNum& c) { return c.is_zero(); });
}

int QSeries::min_valuation() const {
    int v = PadicNum::kExact;
    for (const auto& c : coeffs_) v = std::min(v, c.valuation());
    return v;
}

int QSeries::min_abs_prec() const {
    int v = PadicNum::kExact;
    for (const auto& c : coeffs_) v = std::min(v, c.abs_prec());
    return v;
}

int first_disagreement(const QSeries& a, const QSeries& b, int k) {
    require_same(a, b);
    int top = std::min(a.reliable_, b.reliable_);
    for (int n = 0; n <= top; ++n)
        if (!agrees_to(a.coeffs_[n], b.coeffs_[n], k)) return n;
    return -1;
}

bool agrees_to(const QSeries& a, const QSeries& b, int k) { return first_disagreement(a, b, k) < 0; }

bool operator==(const QSeries& a, const QSeries& b) {
    require_same(a, b);
    int top = std::min(a.reliable_, b.reliable_);
    for (int n = 0; n <= top; ++n)
        if (!(a.coeffs_[n] == b.coeffs_[n])) return false;
    return true;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    require_same(a, b);
    QSeries r = a;
    for (int n = 0; n <= a.Q(); ++n) r.coeffs_[n] = a.coeffs_[n] + b.coeffs_[n];
    r.reliable_ = std::min(a.reliable_, b.reliable_);
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

QSeries operator*(const PadicNum& c, const QSeries& f) {
    QSeries r = f;
    for (auto& x : r.coeffs_) x = c * x;
    return r;
}

QSeries mul(const QSeries& a, const QSeries& b) {
    require_same(a, b);
    const Ring& R = a.ring();
    const int Q = a.Q();
    QSeries out(a.ctx());
    out.set_reliable(std::min(a.reliable(), b.reliable()));
    const int va = a.min_valuation();
    const int vb = b.min_valuation();
    if (va >= PadicNum::kExact || vb >= PadicNum::kExact) return out;

    // one precision bound for every output coefficient
    const long P = std::min(static_cast<long>(a.min_abs_prec()) + vb, static_cast<long>(b.min_abs_prec()) + va);
    const int v0 = va + vb;
    if (P >= PadicNum::kExact) fail(ErrorKind::Precision, "qseries.exact_product", "unbounded product precision");
    const int K = static_cast<int>(std::min<long>(P - v0, R.cap()));
    const int abs = v0 + K;
    if (K <= 0) {
        for (int n = 0; n <= Q; ++n) out.set(n, PadicNum::zero(R, static_cast<int>(P)));
        return out;
    }
    const std::uint64_t mod = R.pow(K);
    std::vector<std::uint64_t> A(Q + 1), B(Q + 1);
    std::vector<int> support;
    for (int n = 0; n <= Q; ++n) {
        A[n] = scaled_rep(a[n], va, K, R);
        B[n] = scaled_rep(b[n], vb, K, R);
        if (A[n]) support.push_back(n);
    }
    const bool small = mod < (std::uint64_t{1} << 32);
    for (int n = 0; n <= Q; ++n) {
        unsigned __int128 acc = 0;
        for (int i : support) {
            if (i > n) break;
            std::uint64_t y = B[n - i];
            if (!y) continue;
            if (small)
                acc += static_cast<std::uint64_t>(A[i] * y);
            else
                acc += static_cast<unsigned __int128>(A[i]) * y % mod;
        }
        out.set(n, PadicNum::make(R, v0, static_cast<std::uint64_t>(acc % mod), abs));
    }
    return out;
}

QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

bool is_depleted(const QSeries& f) {
    const int p = static_cast<int>(f.ring().p());
    for (int n = 0; n <= f.Q(); n += p)
        if (!f[n].is_zero()) return false;
    return true;
}

QSeries theta_pow(const QSeries& f, const ExponentChar& s) {
    const Ring& R = f.ring();
    QSeries out = f;
    if (s.is_classical() && s.int_part >= 0) {
        for (int n = 0; n <= f.Q(); ++n) {
            if (f[n].is_exact_zero()) continue;
            if (n == 0)
                out.set(0, s.int_part == 0 ? f[0] : PadicNum::exact_zero(R));
            else
                out.set(n, f[n] * PadicNum::from_int(R, n).pow(s.int_part));
        }
        return out;
    }
    if (!is_depleted(f))
        fail(ErrorKind::Input, "qseries.not_depleted", "θ^σ requires p-depleted input");
    const std::int64_t p = static_cast<std::int64_t>(R.p());
    for (int n = 1; n <= f.Q(); ++n) {
        if (n % p == 0 || f[n].is_zero()) continue;
        out.set(n, f[n] * unit_pow(n, s, R));
    }
    return out;
}

QSeries theta(const QSeries& f) { return theta_pow(f, ExponentChar::classical(1)); }

QSeries u_op(const QSeries& f) {
    const int p = static_cast<int>(f.ring().p());
    QSeries out(f.ctx());
    for (int n = 0; static_cast<long>(n) * p <= f.Q(); ++n) out.set(n, f[n * p]);
    out.set_reliable(f.reliable() / p);
    return out;
}

QSeries v_op(const QSeries& f) {
    const int p = static_cast<int>(f.ring().p());
    QSeries out(f.ctx());
    for (int n = 0; static_cast<long>(n) * p <= f.Q(); ++n) out.set(n * p, f[n]);
    out.set_reliable(static_cast<int>(std::min<long>(f.Q(), static_cast<long>(f.reliable()) * p + p - 1)));
    return out;
}

QSeries deplete(const QSeries& f) {
    const int p = static_cast<int>(f.ring().p());
    QSeries out = f;
    for (int n = 0; n <= f.Q(); n += p) out.set(n, PadicNum::exact_zero(f.ring()));
    return out;
}

QSeries p_stabilize(const QSeries& f, const PadicNum& beta) {
    const int p = static_cast<int>(f.ring().p());
    QSeries out = f;
    for (int n = 0; n <= f.Q(); n += p) out.set(n, f[n] - beta * f[n / p]);
    return out;
}

namespace {

// square root of a quadratic residue modulo the prime p (Tonelli-Shanks)
std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    std::uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

}  // namespace

std::optional<PadicNum> padic_sqrt(const PadicNum& x) {
    if (x.is_zero() || !x.ring()) return std::nullopt;
    const Ring& R = *x.ring();
    const std::uint64_t p = R.p();
    int v = x.valuation();
    if (v % 2 != 0) return std::nullopt;
    std::uint64_t u = x.unit_part();
    if (powmod(u % p, (p - 1) / 2, p) != 1) return std::nullopt;
    const int rel = x.rel_prec();
    const std::uint64_t mod = R.pow(rel);
    std::uint64_t r = sqrt_mod_prime(u, p);
    // Newton: r <- (r + u/r)/2 doubles the number of correct digits
    const std::uint64_t half = invmod(2, mod);
    for (int known = 1; known < rel; known *= 2) {
        std::uint64_t t = (r + mulmod(u % mod, invmod(r, mod), mod)) % mod;
        r = mulmod(t, half, mod);
    }
    return PadicNum::make(R, v / 2, r, v / 2 + rel);
}

HeckeRoots hecke_roots(const PadicNum& a_p, const PadicNum& chi_p, int k) {
    const Ring& R = a_p.ring() ? *a_p.ring() : *chi_p.ring();
    const PadicNum ppow = PadicNum::from_int(R, 1).shift(k - 1);
    const PadicNum two = PadicNum::from_int(R, 2);
    const PadicNum disc = a_p * a_p - PadicNum::from_int(R, 4) * chi_p * ppow;
    auto root = padic_sqrt(disc);
    if (!root)
        fail(ErrorKind::Input, "qseries.roots_not_rational",
             "roots not rational at this precision; supply roots directly in EigenData");
    PadicNum r1 = (a_p + *root) / two;
    PadicNum r2 = (a_p - *root) / two;
    if (r2.valuation() < r1.valuation()) std::swap(r1, r2);
    // x -> a_p - c/x contracts onto the smaller root when v(c) > 2 v(x), gaining
    // v(c) - 2 v(x) digits per step; the larger root is then c / x
    const PadicNum c = chi_p * ppow;
    if (!r1.is_zero() && !c.is_zero() && c.valuation() > 2 * r1.valuation()) {
        for (int step = 0; step < 64; ++step) {
            PadicNum next = a_p - c / r1;
            if (next.abs_prec() <= r1.abs_prec()) break;
            r1 = next;
        }
        PadicNum other = c / r1;
        if (other.abs_prec() > r2.abs_prec()) r2 = other;
    }
    if (!(r1 + r2 == a_p) || !(r1 * r2 == chi_p * ppow))
        fail(ErrorKind::Consistency, "qseries.root_check", "recovered Hecke roots fail verification");
    return {r1, r2};
}

void EigenData::validate(bool roots_distinct) const {
    const Ring* R = a_p.ring() ? a_p.ring() : alpha.ring();
    if (!R) fail(ErrorKind::Input, "qseries.bad_eigendata", "eigendata carries no precision context");
    if (!(alpha + beta == a_p))
        fail(ErrorKind::Input, "qseries.bad_eigendata", "eigendata inconsistent: alpha + beta != a_p");
    if (!(alpha * beta == chi_p * PadicNum::from_int(*R, 1).shift(k - 1)))
        fail(ErrorKind::Input, "qseries.bad_eigendata", "eigendata inconsistent: alpha*beta != chi_p*p^(k-1)");
    if (roots_distinct && (alpha - beta).is_zero())
        fail(ErrorKind::Input, "qseries.equal_roots", "Hecke roots must differ");
}

}  // namespace tripleq
