#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tripleq/errors.hpp"

namespace tripleq {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Interned (p, cap) pair. Instances live for the whole program, so plain
// pointers to them are safe to copy around and compare.
class Ring {
public:
    static const Ring& get(std::uint64_t p, int cap);

    std::uint64_t p() const { return p_; }
    int cap() const { return cap_; }
    // p^k for 0 <= k <= max_exp()
    std::uint64_t pow(int k) const;
    int max_exp() const { return static_cast<int>(pows_.size()) - 1; }
    std::uint64_t modulus() const { return pows_[cap_]; }

private:
    Ring(std::uint64_t p, int cap);
    std::uint64_t p_;
    int cap_;
    std::vector<std::uint64_t> pows_;
};

bool is_prime(std::uint64_t n);

struct Context {
    const Ring* ring = nullptr;
    int Q = 1;

    std::uint64_t p() const { return ring->p(); }
    int M() const { return ring->cap(); }
};

// p >= 5 and Q >= 1 enforced; p = 3 is accepted only through allow_small_prime
// for integer-exponent q-series work.
Context make_context(std::uint64_t p, int M, int Q, bool allow_small_prime = false);

// An element of Q_p with a finite number of known digits.
//
// The value is p^val * unit + O(p^abs).  At most cap() digits of the unit
// are stored, so abs - val <= cap.  The absolute precision abs may exceed
// cap for values of positive valuation.  A zero known to precision abs is
// stored with unit = 0 and val = abs; the exact zero uses abs = kExact.
class PadicNum {
public:
    static constexpr int kExact = 1 << 28;

    PadicNum() = default;

    static PadicNum exact_zero(const Ring& R);
    static PadicNum zero(const Ring& R, int abs);
    static PadicNum from_int(const Ring& R, std::int64_t n);
    static PadicNum from_big(const Ring& R, const BigInt& n);
    static PadicNum from_rational(const Ring& R, const BigRational& q);
    // residue r read as an integer known modulo p^prec
    static PadicNum from_residue(const Ring& R, std::uint64_t r, int prec);
    // p^val * unit + O(p^abs); unit need not be reduced or coprime to p
    static PadicNum make(const Ring& R, int val, std::uint64_t unit, int abs);

    const Ring* ring() const { return ring_; }
    bool is_zero() const { return unit_ == 0; }
    bool is_exact_zero() const { return unit_ == 0 && abs_ >= kExact; }
    bool is_exact() const { return abs_ >= kExact; }
    bool is_unit() const { return unit_ != 0 && val_ == 0; }
    // for a zero at precision this is its absolute precision
    int valuation() const { return val_; }
    int abs_prec() const { return abs_; }
    int rel_prec() const { return abs_ - val_; }
    std::uint64_t unit_part() const { return unit_; }

    // canonical representative in [0, p^cap); requires valuation >= 0
    std::uint64_t residue() const;
    // representative modulo p^k for k <= max_exp; requires valuation >= 0
    std::uint64_t residue_mod(int k) const;
    // decimal residue, or "u/p^k" when the valuation is negative
    std::string to_string() const;

    PadicNum operator-() const;
    PadicNum inverse() const;
    PadicNum pow(std::int64_t e) const;
    // multiply by p^k exactly
    PadicNum shift(int k) const;
    // forget digits at and beyond p^abs
    PadicNum reduce_abs(int abs) const;

    friend PadicNum operator+(const PadicNum& a, const PadicNum& b);
    friend PadicNum operator-(const PadicNum& a, const PadicNum& b);
    friend PadicNum operator*(const PadicNum& a, const PadicNum& b);
    friend PadicNum operator/(const PadicNum& a, const PadicNum& b);
    PadicNum& operator+=(const PadicNum& b) { return *this = *this + b; }
    PadicNum& operator-=(const PadicNum& b) { return *this = *this - b; }
    PadicNum& operator*=(const PadicNum& b) { return *this = *this * b; }

    // congruent at the smaller of the two precisions
    friend bool operator==(const PadicNum& a, const PadicNum& b) { return (a - b).is_zero(); }

private:
    const Ring* ring_ = nullptr;
    std::uint64_t unit_ = 0;
    int val_ = kExact;
    int abs_ = kExact;
};

// valuation(a - b) >= k, where an unknown digit counts as a disagreement
bool agrees_to(const PadicNum& a, const PadicNum& b, int k);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
// inverse of a unit modulo m
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
int vp(std::int64_t n, std::uint64_t p);
int vp(const BigInt& n, std::uint64_t p);
// v_p(n!)
int vp_factorial(std::int64_t n, std::uint64_t p);

// weight character n -> n^a * exp(u log<n>), u in pZ_p
struct ExponentChar {
    std::int64_t int_part = 0;
    PadicNum wild;  // exact zero by default

    static ExponentChar classical(std::int64_t a) { return ExponentChar{a, PadicNum()}; }
    static ExponentChar make(std::int64_t a, const PadicNum& wild);

    bool is_classical() const { return wild.is_zero(); }
    // the p-adic number a + u standing in for the character on 1 + pZ_p
    PadicNum value(const Ring& R) const;
    ExponentChar shifted(std::int64_t d) const { return ExponentChar{int_part + d, wild}; }

    friend ExponentChar operator+(const ExponentChar& a, const ExponentChar& b);
    friend ExponentChar operator-(const ExponentChar& a, const ExponentChar& b);
    ExponentChar operator-() const;
    ExponentChar scaled(std::int64_t m) const;
};

PadicNum teichmuller(std::int64_t n, const Ring& R);
PadicNum plog(const PadicNum& x);
PadicNum pexp(const PadicNum& y);
PadicNum unit_pow(std::int64_t n, const ExponentChar& s, const Ring& R);
PadicNum binom_u(const PadicNum& u, int j);

BigInt binom_int(std::int64_t a, int j);    // a may be negative
BigInt falling_int(std::int64_t a, int j);  // a (a-1) ... (a-j+1)
BigInt factorial_int(int n);

}  // namespace tripleq
