#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "tripleq/padic.hpp"

namespace tripleq {

using Slope = boost::rational<long long>;
using PadicVector = std::vector<PadicNum>;
// coefficients from the constant term upwards
using Poly = std::vector<PadicNum>;

class PadicMatrix {
public:
    PadicMatrix() = default;
    PadicMatrix(const Ring& R, int n);
    static PadicMatrix identity(const Ring& R, int n);
    static PadicMatrix from_ints(const Ring& R, const std::vector<std::vector<std::int64_t>>& rows);

    int n() const { return n_; }
    const Ring& ring() const { return *ring_; }
    PadicNum& at(int i, int j) { return a_[i * n_ + j]; }
    const PadicNum& at(int i, int j) const { return a_[i * n_ + j]; }

    PadicMatrix transpose() const;
    PadicMatrix pow(int k) const;
    PadicMatrix inverse() const;
    PadicNum trace() const;
    int min_abs_prec() const;
    bool is_zero() const;

    friend PadicMatrix operator+(const PadicMatrix& a, const PadicMatrix& b);
    friend PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b);
    friend PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b);
    friend PadicMatrix operator*(const PadicNum& c, const PadicMatrix& a);
    friend PadicVector operator*(const PadicMatrix& a, const PadicVector& v);

private:
    const Ring* ring_ = nullptr;
    int n_ = 0;
    std::vector<PadicNum> a_;
};

struct MatrixEntry {
    int row = -1;
    int col = -1;
    bool found() const { return row >= 0; }
};

// first entry where a and b differ modulo p^k
MatrixEntry first_disagreement(const PadicMatrix& a, const PadicMatrix& b, int k);
bool agrees_to(const PadicMatrix& a, const PadicMatrix& b, int k);

// solve A x = b by elimination with lowest-valuation pivots
PadicVector solve(const PadicMatrix& A, const PadicVector& b);

// det(T - U), monic of degree n, by a division-free recursion
Poly char_poly(const PadicMatrix& U);
// det(1 - T U), trailing coefficients that vanish at precision removed
Poly fredholm_det(const PadicMatrix& U);
PadicMatrix eval_poly(const Poly& f, const PadicMatrix& U);

struct SlopeMultiplicity {
    Slope slope;
    int multiplicity;
    friend bool operator==(const SlopeMultiplicity&, const SlopeMultiplicity&) = default;
};

std::vector<SlopeMultiplicity> newton_slopes(const Poly& P);

// projector onto the generalized eigenspaces of slope <= a (eigenvalue 0 excluded)
PadicMatrix slope_projector(const PadicMatrix& U, Slope a);

struct RieszDecomposition {
    PadicMatrix onto_pole;        // projector onto N(lambda), where 1 - lambda U is nilpotent
    PadicMatrix onto_complement;  // projector onto F(lambda)
    int order = 0;                // order of the zero of det(1 - T U) at lambda
};

RieszDecomposition riesz_projector(const PadicMatrix& U, const PadicNum& lambda);

struct PairingReport {
    enum class Status { Pass, Fail, NotApplicable } status = Status::Pass;
    PadicNum alpha;
    Slope alpha_slope;
    // smallest valuation of <eta, m> - <eta, e m> over the test vectors
    int worst_valuation = PadicNum::kExact;
    int witness = -1;  // first failing test vector
    int tested = 0;
};

std::string to_string(PairingReport::Status s);

// checks <eta, m> = <eta, e m> for the slope <= a projector e of U, where the
// pairing is <x, y> = x^T Phi y and phi is the adjoint of U
PairingReport verify_pairing_lemma(const PadicMatrix& U, const PadicMatrix& Phi, const PadicMatrix& phi,
                                   const PadicVector& eta, Slope a, const std::vector<PadicVector>& tests,
                                   int cmp_prec);

}  // namespace tripleq
