#include "tripleq/padic.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace tripleq {

namespace {

constexpr std::uint64_t kPowLimit = std::uint64_t{1} << 62;

std::uint64_t magnitude(std::int64_t n) {
    return n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
}

const Ring& ring_of(const PadicNum& a, const PadicNum& b) {
    if (a.ring()) return *a.ring();
    return *b.ring();
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Ring::Ring(std::uint64_t p, int cap) : p_(p), cap_(cap) {
    pows_.push_back(1);
    while (pows_.back() <= kPowLimit / p) pows_.push_back(pows_.back() * p);
}

const Ring& Ring::get(std::uint64_t p, int cap) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<Ring>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, cap);
    auto it = registry.find(key);
    if (it != registry.end()) return *it->second;
    if (p < 3 || !is_prime(p)) fail(ErrorKind::Input, "padic.bad_prime", "p must be an odd prime");
    if (cap < 1) fail(ErrorKind::Input, "padic.bad_precision", "precision must be at least 1");
    std::unique_ptr<Ring> r(new Ring(p, cap));
    if (cap > r->max_exp())
        fail(ErrorKind::Input, "padic.bad_precision",
             "p^M must stay below 2^62 (M <= " + std::to_string(r->max_exp()) + ")");
    const Ring& out = *r;
    registry.emplace(key, std::move(r));
    return out;
}

std::uint64_t Ring::pow(int k) const {
    if (k < 0 || k > max_exp()) fail(ErrorKind::Precision, "padic.overflow", "prime power out of range");
    return pows_[k];
}

Context make_context(std::uint64_t p, int M, int Q, bool allow_small_prime) {
    if (p < 5 && !(allow_small_prime && p == 3))
        fail(ErrorKind::Input, "padic.bad_prime", "p must be a prime >= 5");
    if (Q < 1) fail(ErrorKind::Input, "padic.bad_qprec", "Q must be at least 1");
    Context ctx;
    ctx.ring = &Ring::get(p, M);
    ctx.Q = Q;
    return ctx;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    __int128 old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) fail(ErrorKind::Input, "padic.not_unit", "not a p-adic unit");
    __int128 res = old_s % static_cast<__int128>(m);
    if (res < 0) res += m;
    return static_cast<std::uint64_t>(res);
}

int vp(std::int64_t n, std::uint64_t p) {
    if (n == 0) return PadicNum::kExact;
    std::uint64_t m = magnitude(n);
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int vp(const BigInt& n, std::uint64_t p) {
    if (n == 0) return PadicNum::kExact;
    BigInt m = abs(n);
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int vp_factorial(std::int64_t n, std::uint64_t p) {
    int v = 0;
    for (std::int64_t q = n / static_cast<std::int64_t>(p); q > 0; q /= static_cast<std::int64_t>(p))
        v += static_cast<int>(q);
    return v;
}

PadicNum PadicNum::exact_zero(const Ring& R) {
    PadicNum z;
    z.ring_ = &R;
    return z;
}

PadicNum PadicNum::zero(const Ring& R, int abs) {
    PadicNum z;
    z.ring_ = &R;
    if (abs < kExact) {
        z.val_ = abs;
        z.abs_ = abs;
    }
    return z;
}

PadicNum PadicNum::make(const Ring& R, int val, std::uint64_t unit, int abs) {
    if (unit == 0) return zero(R, abs);
    const std::uint64_t p = R.p();
    while (unit % p == 0) {
        unit /= p;
        ++val;
    }
    int rel = abs >= kExact ? R.cap() : std::min(abs - val, R.cap());
    if (rel <= 0) return zero(R, abs);
    PadicNum x;
    x.ring_ = &R;
    x.val_ = val;
    x.unit_ = unit % R.pow(rel);
    x.abs_ = val + rel;
    return x;
}

PadicNum PadicNum::from_int(const Ring& R, std::int64_t n) {
    if (n == 0) return exact_zero(R);
    std::uint64_t m = magnitude(n);
    int v = 0;
    while (m % R.p() == 0) {
        m /= R.p();
        ++v;
    }
    std::uint64_t mod = R.modulus();
    std::uint64_t u = m % mod;
    if (n < 0) u = mod - u;
    return make(R, v, u, v + R.cap());
}

PadicNum PadicNum::from_big(const Ring& R, const BigInt& n) {
    if (n == 0) return exact_zero(R);
    int v = vp(n, R.p());
    BigInt m = n;
    for (int i = 0; i < v; ++i) m /= R.p();
    BigInt mod = R.modulus();
    BigInt u = m % mod;
    if (u < 0) u += mod;
    return make(R, v, static_cast<std::uint64_t>(u), v + R.cap());
}

PadicNum PadicNum::from_rational(const Ring& R, const BigRational& q) {
    return from_big(R, numerator(q)) / from_big(R, denominator(q));
}

PadicNum PadicNum::from_residue(const Ring& R, std::uint64_t r, int prec) {
    if (prec > R.max_exp()) prec = R.max_exp();
    return make(R, 0, r % R.pow(prec), prec);
}

std::uint64_t PadicNum::residue() const { return residue_mod(ring_ ? ring_->cap() : 1); }

std::uint64_t PadicNum::residue_mod(int k) const {
    if (unit_ == 0) return 0;
    if (val_ < 0) fail(ErrorKind::Input, "padic.not_integral", "value is not a p-adic integer");
    if (val_ >= k) return 0;
    std::uint64_t mod = ring_->pow(k - val_);
    return (unit_ % mod) * ring_->pow(val_);
}

std::string PadicNum::to_string() const {
    if (unit_ == 0) return "0";
    if (val_ >= 0) return std::to_string(residue());
    return std::to_string(unit_) + "/" + std::to_string(ring_->p()) + "^" + std::to_string(-val_);
}

PadicNum PadicNum::operator-() const {
    if (unit_ == 0) return *this;
    PadicNum x = *this;
    x.unit_ = ring_->pow(rel_prec()) - unit_;
    return x;
}

PadicNum PadicNum::inverse() const {
    if (unit_ == 0)
        fail(ErrorKind::Precision, "padic.division_by_zero", "division by a value indistinguishable from zero");
    PadicNum x;
    x.ring_ = ring_;
    int rel = rel_prec();
    x.val_ = -val_;
    x.unit_ = invmod(unit_, ring_->pow(rel));
    x.abs_ = x.val_ + rel;
    return x;
}

PadicNum PadicNum::pow(std::int64_t e) const {
    if (!ring_) fail(ErrorKind::Input, "padic.no_ring", "power of an untyped zero");
    if (e < 0) return inverse().pow(-e);
    PadicNum result = from_int(*ring_, 1);
    PadicNum base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

PadicNum PadicNum::shift(int k) const {
    if (is_exact_zero()) return *this;
    PadicNum x = *this;
    x.val_ += k;
    x.abs_ += k;
    return x;
}

PadicNum PadicNum::reduce_abs(int abs) const {
    if (abs >= abs_) return *this;
    if (unit_ == 0) return zero(*ring_, abs);
    return make(*ring_, val_, unit_, abs);
}

PadicNum operator+(const PadicNum& a, const PadicNum& b) {
    if (a.is_exact_zero()) return b.ring_ || !a.ring_ ? b : a;
    if (b.is_exact_zero()) return a;
    const Ring& R = *a.ring_;
    int abs = std::min(a.abs_, b.abs_);
    int v0 = std::min(a.val_, b.val_);
    if (v0 >= abs) return PadicNum::zero(R, abs);
    // the operand of smaller valuation holds at most cap digits, so rel <= cap
    int rel = abs - v0;
    std::uint64_t mod = R.pow(rel);
    std::uint64_t x = 0;
    for (const PadicNum* c : {&a, &b}) {
        if (c->unit_ == 0) continue;
        int sh = c->val_ - v0;
        if (sh >= rel) continue;
        std::uint64_t t = mulmod(c->unit_ % mod, R.pow(sh), mod);
        x += t;
        if (x >= mod) x -= mod;
    }
    return PadicNum::make(R, v0, x, abs);
}

PadicNum operator-(const PadicNum& a, const PadicNum& b) { return a + (-b); }

PadicNum operator*(const PadicNum& a, const PadicNum& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) {
        if (!a.ring_ && !b.ring_) return PadicNum();
        return PadicNum::exact_zero(ring_of(a, b));
    }
    const Ring& R = *a.ring_;
    if (a.unit_ == 0 || b.unit_ == 0)
        return PadicNum::zero(R, std::min(a.abs_ + b.val_, b.abs_ + a.val_));
    int rel = std::min(a.rel_prec(), b.rel_prec());
    std::uint64_t mod = R.pow(rel);
    PadicNum x;
    x.ring_ = &R;
    x.val_ = a.val_ + b.val_;
    x.unit_ = mulmod(a.unit_ % mod, b.unit_ % mod, mod);
    x.abs_ = x.val_ + rel;
    return x;
}

PadicNum operator/(const PadicNum& a, const PadicNum& b) {
    if (b.unit_ == 0)
        fail(ErrorKind::Precision, "padic.division_by_zero", "division by a value indistinguishable from zero");
    if (a.is_exact_zero()) return PadicNum::exact_zero(*b.ring_);
    if (a.unit_ == 0) return PadicNum::zero(*a.ring_, a.abs_ - b.val_);
    const Ring& R = *a.ring_;
    int rel = std::min(a.rel_prec(), b.rel_prec());
    std::uint64_t mod = R.pow(rel);
    PadicNum x;
    x.ring_ = &R;
    x.val_ = a.val_ - b.val_;
    x.unit_ = mulmod(a.unit_ % mod, invmod(b.unit_ % mod, mod), mod);
    x.abs_ = x.val_ + rel;
    return x;
}

bool agrees_to(const PadicNum& a, const PadicNum& b, int k) { return (a - b).valuation() >= k; }

ExponentChar ExponentChar::make(std::int64_t a, const PadicNum& wild) {
    if (!wild.is_zero() && wild.valuation() < 1)
        fail(ErrorKind::Input, "padic.wild_not_small", "wild part of a weight must have valuation >= 1");
    return ExponentChar{a, wild};
}

PadicNum ExponentChar::value(const Ring& R) const { return PadicNum::from_int(R, int_part) + wild; }

ExponentChar operator+(const ExponentChar& a, const ExponentChar& b) {
    return ExponentChar{a.int_part + b.int_part, a.wild + b.wild};
}

ExponentChar operator-(const ExponentChar& a, const ExponentChar& b) { return a + (-b); }

ExponentChar ExponentChar::operator-() const { return ExponentChar{-int_part, -wild}; }

ExponentChar ExponentChar::scaled(std::int64_t m) const {
    if (wild.is_exact_zero()) return ExponentChar{int_part * m, wild};
    return ExponentChar{int_part * m, wild * PadicNum::from_int(*wild.ring(), m)};
}

PadicNum teichmuller(std::int64_t n, const Ring& R) {
    std::uint64_t p = R.p();
    std::int64_t r = n % static_cast<std::int64_t>(p);
    if (r == 0) fail(ErrorKind::Input, "padic.not_unit", "not a p-adic unit");
    std::uint64_t mod = R.modulus();
    __int128 sm = static_cast<__int128>(n) % static_cast<__int128>(mod);
    if (sm < 0) sm += mod;
    std::uint64_t x = static_cast<std::uint64_t>(sm);
    for (int i = 1; i < R.cap(); ++i) x = powmod(x, p, mod);
    return PadicNum::from_residue(R, x, R.cap());
}

PadicNum plog(const PadicNum& x) {
    if (!x.ring()) fail(ErrorKind::Input, "padic.no_ring", "logarithm of an untyped value");
    const Ring& R = *x.ring();
    PadicNum one = PadicNum::from_int(R, 1);
    PadicNum y = x - one;
    if (!x.is_unit() || y.valuation() < 1)
        fail(ErrorKind::Input, "padic.outside_disk", "outside convergence disk");
    if (y.is_zero()) return y;
    const int target = y.abs_prec();
    const int v = y.valuation();
    const std::int64_t p = static_cast<std::int64_t>(R.p());
    PadicNum sum = PadicNum::exact_zero(R);
    PadicNum power = y;
    for (std::int64_t i = 1;; ++i) {
        int logi = 0;
        for (std::int64_t q = i; q >= p; q /= p) ++logi;
        if (i * v - logi >= target) break;
        PadicNum term = power / PadicNum::from_int(R, i);
        sum = (i % 2 == 1) ? sum + term : sum - term;
        power = power * y;
    }
    return sum.reduce_abs(target);
}

PadicNum pexp(const PadicNum& y) {
    if (!y.ring()) fail(ErrorKind::Input, "padic.no_ring", "exponential of an untyped value");
    const Ring& R = *y.ring();
    if (y.valuation() < 1 || R.p() < 5) fail(ErrorKind::Input, "padic.outside_disk", "outside convergence disk");
    PadicNum one = PadicNum::from_int(R, 1);
    if (y.is_zero()) return one + y;
    const int target = std::min(y.abs_prec(), R.cap());
    const std::int64_t v = y.valuation();
    const std::int64_t pm1 = static_cast<std::int64_t>(R.p()) - 1;
    PadicNum sum = one;
    PadicNum term = one;
    for (std::int64_t i = 1;; ++i) {
        // v(y^i / i!) >= i v - (i - 1)/(p - 1)
        if (i * v * pm1 - (i - 1) >= static_cast<std::int64_t>(target) * pm1) break;
        term = term * y / PadicNum::from_int(R, i);
        sum += term;
    }
    return sum.reduce_abs(target);
}

PadicNum unit_pow(std::int64_t n, const ExponentChar& s, const Ring& R) {
    if (n % static_cast<std::int64_t>(R.p()) == 0) fail(ErrorKind::Input, "padic.not_unit", "not a p-adic unit");
    PadicNum base = PadicNum::from_int(R, n);
    PadicNum result = base.pow(s.int_part);
    if (s.is_classical()) return result;
    PadicNum one_unit = base / teichmuller(n, R);
    return result * pexp(s.wild * plog(one_unit));
}

PadicNum binom_u(const PadicNum& u, int j) {
    if (!u.ring()) fail(ErrorKind::Input, "padic.no_ring", "binomial of an untyped value");
    const Ring& R = *u.ring();
    if (j < 0) return PadicNum::exact_zero(R);
    PadicNum num = PadicNum::from_int(R, 1);
    for (int i = 0; i < j; ++i) num = num * (u - PadicNum::from_int(R, i));
    PadicNum res = num / PadicNum::from_big(R, factorial_int(j));
    if (u.valuation() >= 0 && res.abs_prec() <= 0)
        fail(ErrorKind::Precision, "padic.precision_underflow", "precision underflow");
    return res;
}

BigInt falling_int(std::int64_t a, int j) {
    BigInt r = 1;
    for (int i = 0; i < j; ++i) r *= BigInt(a - i);
    return r;
}

BigInt factorial_int(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binom_int(std::int64_t a, int j) {
    if (j < 0) return 0;
    return falling_int(a, j) / factorial_int(j);
}

}  // namespace tripleq
