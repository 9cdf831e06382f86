#include "tripleq/slope.hpp"

#include <algorithm>
#include <numeric>

namespace tripleq {

namespace {

void require_square_match(const PadicMatrix& a, const PadicMatrix& b) {
    if (a.n() != b.n() || &a.ring() != &b.ring())
        fail(ErrorKind::Input, "slope.shape_mismatch", "matrices have different sizes or precision");
}

PadicNum one(const Ring& R) { return PadicNum::from_int(R, 1); }

Poly poly_trim(Poly f) {
    while (f.size() > 1 && f.back().is_exact_zero()) f.pop_back();
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g) {
    const Ring& R = *f.front().ring();
    Poly out(f.size() + g.size() - 1, PadicNum::exact_zero(R));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
    return out;
}

Poly poly_add(const Poly& f, const Poly& g) {
    const Ring& R = *f.front().ring();
    Poly out(std::max(f.size(), g.size()), PadicNum::exact_zero(R));
    for (std::size_t i = 0; i < f.size(); ++i) out[i] += f[i];
    for (std::size_t i = 0; i < g.size(); ++i) out[i] += g[i];
    return out;
}

Poly poly_neg(Poly f) {
    for (auto& c : f) c = -c;
    return f;
}

// f = q g + r with g monic of degree >= 1
std::pair<Poly, Poly> poly_divmod_monic(const Poly& f, const Poly& g) {
    const Ring& R = *g.front().ring();
    const std::size_t dg = g.size() - 1;
    Poly r = f;
    if (r.size() <= dg) return {Poly{PadicNum::exact_zero(R)}, r};
    Poly q(r.size() - dg, PadicNum::exact_zero(R));
    for (std::size_t k = r.size() - 1; k >= dg; --k) {
        PadicNum c = r[k];
        q[k - dg] = c;
        for (std::size_t i = 0; i <= dg; ++i) r[k - dg + i] -= c * g[i];
        if (k == dg) break;
    }
    r.resize(dg);
    return {q, r};
}

int lowest_valuation_row(const std::vector<std::vector<PadicNum>>& m, int col, int from) {
    int best = -1;
    for (int r = from; r < static_cast<int>(m.size()); ++r) {
        if (m[r][col].is_zero()) continue;
        if (best < 0 || m[r][col].valuation() < m[best][col].valuation()) best = r;
    }
    return best;
}

// Gauss-Jordan on the augmented rows [A | B]; returns the solution columns
std::vector<std::vector<PadicNum>> eliminate(std::vector<std::vector<PadicNum>> m, int n) {
    for (int col = 0; col < n; ++col) {
        int piv = lowest_valuation_row(m, col, col);
        if (piv < 0) fail(ErrorKind::Precision, "slope.singular", "matrix is singular at this precision");
        std::swap(m[piv], m[col]);
        PadicNum inv = m[col][col].inverse();
        for (auto& x : m[col]) x = x * inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_exact_zero()) continue;
            PadicNum f = m[r][col];
            for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[col][c];
        }
    }
    return m;
}

Slope slope_of(long long dv, long long di) { return Slope(dv, di); }

// columns of X giving `rank` pivots under full lowest-valuation pivoting
std::vector<int> pivot_columns(const PadicMatrix& X, int rank) {
    const int n = X.n();
    std::vector<std::vector<PadicNum>> m(n, std::vector<PadicNum>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = X.at(i, j);
    std::vector<int> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    for (int k = 0; k < rank; ++k) {
        int bi = -1, bj = -1;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j)
                if (!m[i][j].is_zero() && (bi < 0 || m[i][j].valuation() < m[bi][bj].valuation())) bi = i, bj = j;
        if (bi < 0) fail(ErrorKind::Precision, "slope.no_gap", "no slope gap at a");
        std::swap(m[bi], m[k]);
        for (auto& row : m) std::swap(row[bj], row[k]);
        std::swap(cols[bj], cols[k]);
        PadicNum inv = m[k][k].inverse();
        for (int i = k + 1; i < n; ++i) {
            PadicNum f = m[i][k] * inv;
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    cols.resize(rank);
    return cols;
}

// X with X A - B X = C, A c x c and B r x r given as index ranges of T
std::vector<PadicNum> sylvester(const PadicMatrix& T, int a0, int c, int b0, int r, int c_row0, int c_col0) {
    const Ring& R = T.ring();
    PadicMatrix K(R, r * c);
    PadicVector rhs(r * c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            const int eq = i * c + j;
            rhs[eq] = T.at(c_row0 + i, c_col0 + j);
            for (int l = 0; l < c; ++l) K.at(eq, i * c + l) += T.at(a0 + l, a0 + j);
            for (int l = 0; l < r; ++l) K.at(eq, l * c + j) -= T.at(b0 + i, b0 + l);
        }
    return solve(K, rhs);
}

// Sharpens an approximate projector e0 of rank m commuting with U by
// block-diagonalizing U in a basis adapted to e0.
PadicMatrix refine_projector(const PadicMatrix& U, const PadicMatrix& e0, int m) {
    const Ring& R = U.ring();
    const int n = U.n(), mh = n - m;
    const PadicMatrix I = PadicMatrix::identity(R, n);
    const PadicMatrix f0 = I - e0;
    PadicMatrix B(R, n);
    std::vector<int> ce = pivot_columns(e0, m), cf = pivot_columns(f0, mh);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) B.at(i, k) = e0.at(i, ce[k]);
        for (int k = 0; k < mh; ++k) B.at(i, m + k) = f0.at(i, cf[k]);
    }
    // any lift of the approximate basis is a basis; take the digits as known
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PadicNum& x = B.at(i, j);
            x = x.is_zero() ? PadicNum::exact_zero(R)
                            : PadicNum::make(R, x.valuation(), x.unit_part(), x.valuation() + R.cap());
        }
    for (int iter = 0; iter < 12; ++iter) {
        PadicMatrix T = B.inverse() * U * B;
        bool split = true;
        for (int i = 0; i < n && split; ++i)
            for (int j = 0; j < n; ++j)
                if ((i < m) != (j < m) && !T.at(i, j).is_zero()) {
                    split = false;
                    break;
                }
        if (split) break;
        // lower-left X (mh x m): X T11 - T22 X = T21; upper-right Y (m x mh): Y T22 - T11 Y = T12
        std::vector<PadicNum> X = sylvester(T, 0, m, m, mh, m, 0);
        std::vector<PadicNum> Y = sylvester(T, m, mh, 0, m, 0, m);
        PadicMatrix step = I;
        for (int i = 0; i < mh; ++i)
            for (int j = 0; j < m; ++j) step.at(m + i, j) = X[i * m + j];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < mh; ++j) step.at(i, m + j) = Y[i * mh + j];
        B = B * step;
    }
    PadicMatrix D(R, n);
    for (int k = 0; k < m; ++k) D.at(k, k) = one(R);
    return B * D * B.inverse();
}

}  // namespace

PadicMatrix::PadicMatrix(const Ring& R, int n) : ring_(&R), n_(n), a_(n * n, PadicNum::exact_zero(R)) {}

PadicMatrix PadicMatrix::identity(const Ring& R, int n) {
    PadicMatrix m(R, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = one(R);
    return m;
}

PadicMatrix PadicMatrix::from_ints(const Ring& R, const std::vector<std::vector<std::int64_t>>& rows) {
    const int n = static_cast<int>(rows.size());
    PadicMatrix m(R, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            fail(ErrorKind::Input, "slope.not_square", "matrix must be square");
        for (int j = 0; j < n; ++j) m.at(i, j) = PadicNum::from_int(R, rows[i][j]);
    }
    return m;
}

PadicMatrix PadicMatrix::transpose() const {
    PadicMatrix t(*ring_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
    return t;
}

PadicMatrix PadicMatrix::pow(int k) const {
    PadicMatrix result = identity(*ring_, n_), base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

PadicMatrix PadicMatrix::inverse() const {
    std::vector<std::vector<PadicNum>> m(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) m[i].push_back(at(i, j));
        for (int j = 0; j < n_; ++j) m[i].push_back(i == j ? one(*ring_) : PadicNum::exact_zero(*ring_));
    }
    m = eliminate(std::move(m), n_);
    PadicMatrix inv(*ring_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) inv.at(i, j) = m[i][n_ + j];
    return inv;
}

PadicNum PadicMatrix::trace() const {
    PadicNum s = PadicNum::exact_zero(*ring_);
    for (int i = 0; i < n_; ++i) s += at(i, i);
    return s;
}

int PadicMatrix::min_abs_prec() const {
    int v = PadicNum::kExact;
    for (const auto& x : a_) v = std::min(v, x.abs_prec());
    return v;
}

bool PadicMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const PadicNum& x) { return x.is_zero(); });
}

PadicMatrix operator+(const PadicMatrix& a, const PadicMatrix& b) {
    require_square_match(a, b);
    PadicMatrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
}

PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b) {
    require_square_match(a, b);
    PadicMatrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
}

PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b) {
    require_square_match(a, b);
    const int n = a.n_;
    PadicMatrix c(*a.ring_, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const PadicNum& x = a.at(i, k);
            if (x.is_exact_zero()) continue;
            for (int j = 0; j < n; ++j) c.at(i, j) += x * b.at(k, j);
        }
    return c;
}

PadicMatrix operator*(const PadicNum& s, const PadicMatrix& a) {
    PadicMatrix c = a;
    for (auto& x : c.a_) x = s * x;
    return c;
}

PadicVector operator*(const PadicMatrix& a, const PadicVector& v) {
    if (static_cast<int>(v.size()) != a.n_) fail(ErrorKind::Input, "slope.shape_mismatch", "vector length mismatch");
    PadicVector out(a.n_, PadicNum::exact_zero(*a.ring_));
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < a.n_; ++j) out[i] += a.at(i, j) * v[j];
    return out;
}

MatrixEntry first_disagreement(const PadicMatrix& a, const PadicMatrix& b, int k) {
    require_square_match(a, b);
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            if (!agrees_to(a.at(i, j), b.at(i, j), k)) return {i, j};
    return {};
}

bool agrees_to(const PadicMatrix& a, const PadicMatrix& b, int k) { return !first_disagreement(a, b, k).found(); }

PadicVector solve(const PadicMatrix& A, const PadicVector& b) {
    const int n = A.n();
    std::vector<std::vector<PadicNum>> m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i].push_back(A.at(i, j));
        m[i].push_back(b[i]);
    }
    m = eliminate(std::move(m), n);
    PadicVector x(n);
    for (int i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

Poly char_poly(const PadicMatrix& U) {
    const Ring& R = U.ring();
    const int n = U.n();
    if (n == 0) return Poly{one(R)};
    // coefficients of det(T - U_k) from the leading term down, U_k the top-left k x k block
    std::vector<PadicNum> v{one(R), -U.at(0, 0)};
    for (int k = 1; k < n; ++k) {
        std::vector<PadicNum> t(k + 2, PadicNum::exact_zero(R));
        t[0] = one(R);
        t[1] = -U.at(k, k);
        std::vector<PadicNum> x(k);
        for (int i = 0; i < k; ++i) x[i] = U.at(i, k);
        for (int j = 0; j < k; ++j) {
            PadicNum rx = PadicNum::exact_zero(R);
            for (int i = 0; i < k; ++i) rx += U.at(k, i) * x[i];
            t[j + 2] = -rx;
            if (j + 1 < k) {
                std::vector<PadicNum> y(k, PadicNum::exact_zero(R));
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) y[a] += U.at(a, b) * x[b];
                x = std::move(y);
            }
        }
        std::vector<PadicNum> next(k + 2, PadicNum::exact_zero(R));
        for (int i = 0; i < k + 2; ++i)
            for (int j = 0; j <= std::min(i, k); ++j) next[i] += t[i - j] * v[j];
        v = std::move(next);
    }
    Poly out(n + 1);
    for (int i = 0; i <= n; ++i) out[i] = v[n - i];
    return out;
}

Poly fredholm_det(const PadicMatrix& U) {
    Poly chi = char_poly(U);
    const int n = U.n();
    Poly P(n + 1);
    for (int i = 0; i <= n; ++i) P[i] = chi[n - i];
    while (P.size() > 1 && P.back().is_zero()) P.pop_back();
    return P;
}

PadicMatrix eval_poly(const Poly& f, const PadicMatrix& U) {
    PadicMatrix acc(U.ring(), U.n());
    for (std::size_t k = f.size(); k-- > 0;) acc = acc * U + f[k] * PadicMatrix::identity(U.ring(), U.n());
    return acc;
}

std::vector<SlopeMultiplicity> newton_slopes(const Poly& P) {
    std::vector<std::pair<long long, long long>> pts;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (!P[i].is_zero()) pts.emplace_back(static_cast<long long>(i), P[i].valuation());
    if (pts.empty() || pts.front().first != 0)
        fail(ErrorKind::Precision, "slope.newton_precision", "precision too low to resolve Newton polygon");
    if (pts.back().first + 1 != static_cast<long long>(P.size()))
        fail(ErrorKind::Precision, "slope.newton_precision", "precision too low to resolve Newton polygon");
    std::vector<std::pair<long long, long long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // drop b when it lies on or above the segment a -> pt
            long long cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    // unknown coefficients must sit strictly above the polygon to leave it unchanged
    for (std::size_t seg = 0; seg + 1 < hull.size(); ++seg) {
        const auto& a = hull[seg];
        const auto& b = hull[seg + 1];
        for (long long i = a.first + 1; i < b.first; ++i) {
            if (!P[i].is_zero()) continue;
            // lower bound abs versus the hull height at i, compared without division
            long long lhs = static_cast<long long>(P[i].abs_prec()) * (b.first - a.first);
            long long rhs = a.second * (b.first - a.first) + (b.second - a.second) * (i - a.first);
            if (lhs < rhs)
                fail(ErrorKind::Precision, "slope.newton_precision", "precision too low to resolve Newton polygon");
        }
    }
    std::vector<SlopeMultiplicity> out;
    for (std::size_t seg = 0; seg + 1 < hull.size(); ++seg) {
        long long di = hull[seg + 1].first - hull[seg].first;
        out.push_back({slope_of(hull[seg + 1].second - hull[seg].second, di), static_cast<int>(di)});
    }
    return out;
}

PadicMatrix slope_projector(const PadicMatrix& U, Slope a) {
    const Ring& R = U.ring();
    const int n = U.n();
    Poly P = fredholm_det(U);
    auto slopes = newton_slopes(P);
    int m = 0;
    bool have_low = false, have_high = false;
    Slope a_low, a_high;
    for (const auto& s : slopes) {
        if (s.slope <= a) {
            m += s.multiplicity;
            if (!have_low || s.slope > a_low) a_low = s.slope;
            have_low = true;
        } else if (!have_high || s.slope < a_high) {
            a_high = s.slope;
            have_high = true;
        }
    }
    if (m == 0) return PadicMatrix(R, n);
    if (m == n) return PadicMatrix::identity(R, n);

    // V = U^s rescaled by p^-c separates slopes <= 0 from slopes >= 1
    long long s = 1, c = 0;
    for (;; ++s) {
        Slope lo = a_low * s;
        c = lo.numerator() / lo.denominator();
        if (Slope(c) < lo) ++c;
        if (!have_high || Slope(c) <= a_high * s - 1) break;
        if (s > 4096) fail(ErrorKind::Precision, "slope.no_gap", "no slope gap at a");
    }
    const PadicMatrix V = U.pow(static_cast<int>(s));
    const Poly chi = char_poly(V);
    Poly Phi(n + 1);
    int dmin = PadicNum::kExact;
    for (int j = 0; j <= n; ++j) {
        Phi[j] = chi[j].shift(static_cast<int>(-c * (n - j)));
        dmin = std::min(dmin, Phi[j].valuation());
    }
    for (auto& x : Phi) x = x.shift(-dmin);

    // Phi = G H with H monic, H = S^(n-m) mod p, and G(0) a unit
    const int mh = n - m;
    for (int j = 0; j < mh; ++j)
        if (Phi[j].valuation() < 1) fail(ErrorKind::Precision, "slope.no_gap", "no slope gap at a");
    if (!Phi[mh].is_unit()) fail(ErrorKind::Precision, "slope.no_gap", "no slope gap at a");
    Poly H(mh + 1, PadicNum::exact_zero(R));
    H[mh] = one(R);
    Poly G(Phi.begin() + mh, Phi.end());
    Poly A, B;
    int last_val = -1;
    for (int iter = 0;; ++iter) {
        // Bezout A G + B H = 1 with deg A < deg H, deg B < deg G
        PadicMatrix syl(R, n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < mh; ++i)
                if (j - i >= 0 && j - i <= m) syl.at(j, i) = G[j - i];
            for (int i = 0; i < m; ++i)
                if (j - i >= 0 && j - i <= mh) syl.at(j, mh + i) = H[j - i];
        }
        PadicVector rhs(n, PadicNum::exact_zero(R));
        rhs[0] = one(R);
        PadicVector sol = solve(syl, rhs);
        A.assign(sol.begin(), sol.begin() + mh);
        B.assign(sol.begin() + mh, sol.end());

        Poly delta = poly_add(Phi, poly_neg(poly_mul(G, H)));
        int v = PadicNum::kExact;
        bool done = true;
        for (const auto& x : delta) {
            v = std::min(v, x.valuation());
            if (!x.is_zero()) done = false;
        }
        if (done) break;
        if (iter > 0 && v <= last_val) fail(ErrorKind::Precision, "slope.no_gap", "no slope gap at a");
        last_val = v;
        auto [q, r] = poly_divmod_monic(poly_mul(delta, A), H);
        Poly dG = poly_add(poly_mul(q, G), poly_mul(delta, B));
        dG.resize(m + 1, PadicNum::exact_zero(R));
        r.resize(mh, PadicNum::exact_zero(R));
        for (int i = 0; i <= m; ++i) G[i] += dG[i];
        for (int i = 0; i < mh; ++i) H[i] += r[i];
    }
    const PadicMatrix Vhat = PadicNum::from_int(R, 1).shift(static_cast<int>(-c)) * V;
    return refine_projector(U, eval_poly(poly_trim(B), Vhat) * eval_poly(H, Vhat), m);
}

RieszDecomposition riesz_projector(const PadicMatrix& U, const PadicNum& lambda) {
    const Ring& R = U.ring();
    const int n = U.n();
    const Poly chi = char_poly(U);
    Poly P(n + 1);
    for (int i = 0; i <= n; ++i) P[i] = chi[n - i];
    // Taylor coefficients of P at lambda
    auto taylor = [&](int s) {
        PadicNum acc = PadicNum::exact_zero(R);
        PadicNum lp = one(R);
        for (int m = 0; m + s <= n; ++m) {
            acc += PadicNum::from_big(R, binom_int(m + s, s)) * P[m + s] * lp;
            lp = lp * lambda;
        }
        return acc;
    };
    if (!taylor(0).is_zero()) fail(ErrorKind::Input, "slope.not_pole", "not a resolvent pole");
    int h = 1;
    while (h <= n && taylor(h).is_zero()) ++h;
    if (h > n) fail(ErrorKind::Precision, "slope.not_pole", "pole order cannot be resolved at this precision");
    const PadicNum c = taylor(h);

    // P(T) (1 - T U)^-1 = sum_m v_m T^m
    const PadicMatrix I = PadicMatrix::identity(R, n);
    std::vector<PadicMatrix> v{I};
    for (int m = 1; m < n; ++m) v.push_back(U * v.back() + P[m] * I);
    auto w = [&](int s) {
        PadicMatrix acc(R, n);
        PadicNum lp = one(R);
        for (int m = 0; m + s < n; ++m) {
            acc = acc + (PadicNum::from_big(R, binom_int(m + s, m)) * lp) * v[m + s];
            lp = lp * lambda;
        }
        return acc;
    };
    const PadicNum cinv = c.inverse();
    PadicMatrix e = cinv * ((I - lambda * U) * w(h));
    PadicMatrix onto_F = e.pow(h);
    return {I - onto_F, onto_F, h};
}

std::string to_string(PairingReport::Status s) {
    switch (s) {
        case PairingReport::Status::Pass: return "PASS";
        case PairingReport::Status::Fail: return "FAIL";
        case PairingReport::Status::NotApplicable: return "NOT-APPLICABLE";
    }
    return "?";
}

PairingReport verify_pairing_lemma(const PadicMatrix& U, const PadicMatrix& Phi, const PadicMatrix& phi,
                                   const PadicVector& eta, Slope a, const std::vector<PadicVector>& tests,
                                   int cmp_prec) {
    const Ring& R = U.ring();
    const int n = U.n();
    require_square_match(U, Phi);
    require_square_match(U, phi);
    if (!((Phi * U - phi.transpose() * Phi).is_zero()))
        fail(ErrorKind::Input, "slope.not_adjoint", "not adjoint pair");
    PadicVector image = phi * eta;
    int piv = -1;
    for (int i = 0; i < n; ++i)
        if (!eta[i].is_zero() && (piv < 0 || eta[i].valuation() < eta[piv].valuation())) piv = i;
    if (piv < 0) fail(ErrorKind::Input, "slope.not_eigenvector", "eta is zero at this precision");
    PairingReport rep;
    rep.alpha = image[piv] / eta[piv];
    for (int i = 0; i < n; ++i)
        if (!(image[i] - rep.alpha * eta[i]).is_zero())
            fail(ErrorKind::Input, "slope.not_eigenvector", "eta is not an eigenvector of phi at this precision");
    if (rep.alpha.is_zero()) {
        rep.status = PairingReport::Status::NotApplicable;
        return rep;
    }
    rep.alpha_slope = Slope(rep.alpha.valuation());
    if (rep.alpha_slope > a) {
        rep.status = PairingReport::Status::NotApplicable;
        return rep;
    }
    const PadicMatrix e = slope_projector(U, a);
    // the functional m -> <eta, m>
    PadicVector functional(n, PadicNum::exact_zero(R));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) functional[j] += eta[i] * Phi.at(i, j);
    for (std::size_t t = 0; t < tests.size(); ++t) {
        PadicVector em = e * tests[t];
        PadicNum d = PadicNum::exact_zero(R);
        for (int j = 0; j < n; ++j) d += functional[j] * (tests[t][j] - em[j]);
        rep.worst_valuation = std::min(rep.worst_valuation, d.valuation());
        if (d.valuation() < cmp_prec && rep.witness < 0) rep.witness = static_cast<int>(t);
        ++rep.tested;
    }
    rep.status = rep.witness < 0 ? PairingReport::Status::Pass : PairingReport::Status::Fail;
    return rep;
}

}  // namespace tripleq
