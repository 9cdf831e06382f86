#include <doctest.h>

#include "tripleq/qseries.hpp"
#include "tripleq/random.hpp"

using namespace tripleq;

namespace {

QSeries series(const Context& ctx, std::vector<std::int64_t> c) {
    c.resize(ctx.Q + 1, 0);
    std::vector<PadicNum> v;
    for (auto x : c) v.push_back(PadicNum::from_int(*ctx.ring, x));
    return QSeries(ctx, v);
}

QSeries random_series(const Context& ctx, Rng& rng, bool depleted) {
    std::vector<std::uint64_t> r(ctx.Q + 1);
    const std::uint64_t p = ctx.p();
    for (int n = 0; n <= ctx.Q; ++n)
        r[n] = (depleted && n % p == 0) ? 0 : rng.below(ctx.ring->modulus());
    return QSeries::from_residues(ctx, r);
}

// schoolbook product of residues in exact integers
std::vector<BigInt> oracle_product(const QSeries& a, const QSeries& b) {
    std::vector<BigInt> c(a.Q() + 1, 0);
    for (int i = 0; i <= a.Q(); ++i)
        for (int j = 0; i + j <= a.Q(); ++j) c[i + j] += BigInt(a[i].residue()) * BigInt(b[j].residue());
    return c;
}

}  // namespace

TEST_CASE("theta examples at p = 3") {
    Context ctx = make_context(3, 4, 4, true);
    CHECK(theta_pow(series(ctx, {0, 1, 1}), ExponentChar::classical(1)) == series(ctx, {0, 1, 2}));
    CHECK(theta_pow(series(ctx, {0, 1, 2}), ExponentChar::classical(-1)) == series(ctx, {0, 1, 1}));
    QSeries f = series(ctx, {3, 1, 4, 1, 5});
    CHECK(theta_pow(f, ExponentChar::classical(0)) == f);
    CHECK_THROWS_WITH_AS(theta_pow(f, ExponentChar::classical(-1)), "θ^σ requires p-depleted input", Error);
}

TEST_CASE("U and V examples at p = 3") {
    Context ctx = make_context(3, 4, 9, true);
    QSeries f = series(ctx, {0, 1, 0, 1, 0, 0, 0, 0, 0, 2});
    QSeries uf = u_op(f);
    CHECK(uf[1] == PadicNum::from_int(*ctx.ring, 1));
    CHECK(uf[3] == PadicNum::from_int(*ctx.ring, 2));
    CHECK(uf[2].is_zero());
    CHECK(uf.reliable() == 3);
    CHECK(v_op(series(ctx, {0, 1, 1})) == series(ctx, {0, 0, 0, 1, 0, 0, 1}));
    CHECK(u_op(v_op(f)) == f);
}

TEST_CASE("depletion and stabilization examples at p = 3") {
    Context ctx = make_context(3, 4, 6, true);
    CHECK(deplete(series(ctx, {0, 1, 1, 1, 1})) == series(ctx, {0, 1, 1, 0, 1}));
    CHECK(deplete(series(ctx, {0, 0, 0, 1})).is_zero());
    QSeries f = series(ctx, {0, 1, 0, 1});
    CHECK(p_stabilize(f, PadicNum::exact_zero(*ctx.ring)) == f);
    CHECK(p_stabilize(f, PadicNum::from_int(*ctx.ring, 1)) == series(ctx, {0, 1}));
    CHECK(deplete(series(ctx, {7, 1, 2})) == series(ctx, {0, 1, 2}));
}

TEST_CASE("product examples") {
    Context ctx = make_context(5, 6, 8);
    QSeries q = series(ctx, {0, 1});
    CHECK(q * q == series(ctx, {0, 0, 1}));
    QSeries f = series(ctx, {2, 0, 3, 7});
    CHECK(f * series(ctx, {1}) == f);
    QSeries g = series(ctx, {0, 1, 1});
    CHECK(g * g == series(ctx, {0, 0, 1, 2, 1}));
}

TEST_CASE("product agrees with schoolbook convolution") {
    Rng rng(21);
    for (auto [p, M] : {std::pair{5, 10}, std::pair{7, 20}, std::pair{5, 26}}) {
        Context ctx = make_context(p, M, 40);
        for (int trial = 0; trial < 20; ++trial) {
            QSeries a = random_series(ctx, rng, false), b = random_series(ctx, rng, trial % 2);
            QSeries c = a * b;
            auto oracle = oracle_product(a, b);
            for (int n = 0; n <= ctx.Q; ++n)
                CHECK(c[n].residue() == static_cast<std::uint64_t>(oracle[n] % ctx.ring->modulus()));
        }
    }
}

TEST_CASE("product tracks valuations and precision") {
    Context ctx = make_context(5, 6, 5);
    const Ring& R = *ctx.ring;
    QSeries a(ctx), b(ctx);
    a.set(1, PadicNum::from_int(R, 5));
    a.set(2, PadicNum::from_residue(R, 3, 4));
    b.set(1, PadicNum::from_int(R, 25));
    QSeries c = a * b;
    CHECK(c[2] == PadicNum::from_int(R, 125));
    CHECK(c[3] == PadicNum::from_int(R, 75));
    CHECK(c[3].abs_prec() >= 6);
}

TEST_CASE("operator algebra on random series") {
    Context ctx = make_context(5, 10, 120);
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        QSeries f = random_series(ctx, rng, false);
        CHECK(u_op(v_op(f)) == f);
        QSeries vu = v_op(u_op(f));
        for (int n = 0; n <= vu.reliable(); ++n) CHECK(vu[n] == (n % 5 == 0 ? f[n] : PadicNum::exact_zero(*ctx.ring)));
        QSeries d = deplete(f);
        CHECK(deplete(d) == d);
        CHECK(u_op(d).is_zero());
        CHECK(d == f - v_op(u_op(f)));
        PadicNum beta = PadicNum::from_residue(*ctx.ring, rng.below(ctx.ring->modulus()), 10);
        CHECK(deplete(p_stabilize(f, beta)) == d);
    }
}

TEST_CASE("theta powers compose on depleted series") {
    Context ctx = make_context(5, 10, 60);
    const Ring& R = *ctx.ring;
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        QSeries f = random_series(ctx, rng, true);
        for (int t = 1; t <= 3; ++t) {
            CHECK(agrees_to(theta_pow(theta_pow(f, ExponentChar::classical(-t)), ExponentChar::classical(t)), f, 10));
        }
        ExponentChar s1 = ExponentChar::make(rng.range(-4, 4), PadicNum::from_int(R, 5 * rng.range(-99, 99)));
        ExponentChar s2 = ExponentChar::make(rng.range(-4, 4), PadicNum::from_int(R, 25 * rng.range(-99, 99)));
        CHECK(agrees_to(theta_pow(theta_pow(f, s1), s2), theta_pow(f, s1 + s2), 10));
        // theta as an integer power agrees with the p-adic power
        CHECK(agrees_to(theta_pow(f, ExponentChar::classical(2)), theta(theta(f)), 10));
    }
}

TEST_CASE("hecke roots") {
    const Ring& R = Ring::get(5, 8);
    auto num = [&](std::int64_t n) { return PadicNum::from_int(R, n); };
    HeckeRoots r = hecke_roots(num(6), num(1), 2);
    CHECK(r.alpha == num(1));
    CHECK(r.beta == num(5));
    // round trip from chosen roots
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        std::int64_t a = rng.range(1, 10000);
        if (a % 5 == 0) continue;
        std::int64_t k = rng.range(2, 6);
        PadicNum alpha = num(a), beta = num(125 * 11).shift(static_cast<int>(k) - 4);
        PadicNum chi = alpha * beta / num(1).shift(static_cast<int>(k) - 1);
        HeckeRoots got = hecke_roots(alpha + beta, chi, static_cast<int>(k));
        CHECK(got.alpha == alpha);
        CHECK(got.beta == beta);
    }
    CHECK_THROWS_WITH_AS(hecke_roots(num(0), num(1), 2),
                         "roots not rational at this precision; supply roots directly in EigenData", Error);
}

TEST_CASE("eigendata validation") {
    const Ring& R = Ring::get(5, 8);
    auto num = [&](std::int64_t n) { return PadicNum::from_int(R, n); };
    EigenData e;
    e.k = 2;
    e.a_p = num(6);
    e.chi_p = num(1);
    e.alpha = num(1);
    e.beta = num(5);
    CHECK_NOTHROW(e.validate(true));
    e.beta = num(10);
    e.a_p = num(11);
    CHECK_THROWS_AS(e.validate(), Error);
}
