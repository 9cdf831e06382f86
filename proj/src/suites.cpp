#include "tripleq/suites.hpp"

#include <chrono>
#include <sstream>

#include "tripleq/io.hpp"
#include "tripleq/testing/gz_fixtures.hpp"
#include "tripleq/testing/slope_fixtures.hpp"

namespace tripleq {

void SuiteResult::record(bool ok, const std::function<std::string()>& witness_of) {
    ++checks;
    if (!ok && pass) {
        pass = false;
        witness = witness_of();
    }
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class... Args>
std::string cat(const Args&... args) {
    std::ostringstream out;
    ((out << args), ...);
    return out.str();
}

QSeries random_series(const Context& ctx, Rng& rng, bool depleted) {
    std::vector<std::uint64_t> r(ctx.Q + 1, 0);
    for (int n = 0; n <= ctx.Q; ++n)
        if (!depleted || (n % ctx.p() != 0)) r[n] = rng.below(ctx.ring->modulus());
    return QSeries::from_residues(ctx, r);
}

WElement random_element(const Context& ctx, Rng& rng, const ExponentChar& k, int fil) {
    WElement w = WElement::single(random_series(ctx, rng, true), k);
    for (int i = 1; i <= fil; ++i) w.comps.push_back(random_series(ctx, rng, true));
    return w;
}

PadicNum random_wild(const Ring& R, Rng& rng, int v) {
    return PadicNum::from_int(R, rng.range(-999, 999)).shift(v);
}

std::string slot_witness(const SlotIndex& s) { return cat("slot=", s.slot, " index=", s.index); }

std::string entry_witness(const MatrixEntry& e) { return cat("entry=(", e.row, ",", e.col, ")"); }

}  // namespace

std::pair<SuiteResult, SuiteResult> lemma_suites(const SuiteSizes& s) {
    const auto start = Clock::now();
    SuiteResult after{"lemma"}, slotwise{"lemma_slotwise"};
    const Context ctx = make_context(s.p, s.M, s.Q);
    Rng rng(s.seed);
    int triples = 0;
    for (int y = 2; y <= 8; ++y)
        for (int z = 2; z <= 8; ++z)
            for (int t = 1; t <= s.max_lemma_t; ++t) {
                const TripleWeights w = TripleWeights::from_yzt(y, z, t);
                if (!w.balanced() || w.x < 2) continue;
                ++triples;
                for (int d = 0; d < s.lemma_draws; ++d) {
                    const QSeries g = random_series(ctx, rng, true), h = random_series(ctx, rng, false);
                    const LemmaSide l = lemma_lhs(g, h, y, z, t), r = lemma_rhs(g, h, y, z, t);
                    const auto where = cat("y=", y, " z=", z, " t=", t, " draw=", d, " ");
                    const int first = first_disagreement(l.value, r.value, s.cmp_prec);
                    after.record(first < 0, [&] { return where + cat("index=", first); });
                    after.record(l.value.reliable() == s.Q, [&] { return where + "reliable index dropped"; });
                    const SlotIndex bad = first_disagreement(l.pre, r.pre, s.cmp_prec);
                    slotwise.record(!bad.found(), [&] { return where + slot_witness(bad); });
                }
            }
    after.extra = {{"triples", std::to_string(triples)}, {"draws_per_triple", std::to_string(s.lemma_draws)}};
    slotwise.extra = after.extra;
    after.seconds = slotwise.seconds = since(start);
    return {after, slotwise};
}

namespace {

BigInt falling(std::int64_t a, int j) {
    BigInt out = 1;
    for (int i = 0; i < j; ++i) out *= a - i;
    return out;
}

BigInt factorial(int n) { return falling(n, n); }

BigInt binomial(std::int64_t a, int j) { return falling(a, j) / factorial(j); }

BigInt sign(int e) { return e % 2 ? BigInt(-1) : BigInt(1); }

}  // namespace

SuiteResult coefficient_identity_suite(int max_t, int max_b) {
    const auto start = Clock::now();
    SuiteResult r{"coefficient_identity"};
    for (int t = 1; t <= max_t; ++t)
        for (int b = 1; b <= max_b; ++b)
            for (int j = 0; j <= b - 1; ++j) {
                const BigInt lhs = sign(t - 1) * factorial(t - 1) * sign(j) * binomial(-t, j) * falling(b - 1, j);
                const BigInt rhs = sign(t - 1) * factorial(j + t - 1) * binomial(b - 1, j);
                const auto where = cat("t=", t, " j=", j, " b=", b);
                r.record(lhs == rhs, [&] { return where + cat(" lhs=", lhs, " rhs=", rhs); });
                // the library's integer binomials agree with the direct products
                r.record(binom_int(-t, j) == binomial(-t, j) && falling_int(b - 1, j) == falling(b - 1, j),
                         [&] { return where + " library binomial"; });
            }
    const BigInt spot = sign(1) * factorial(1) * sign(1) * binomial(-2, 1) * falling(2, 1);
    r.record(spot == -4, [&] { return cat("t=2 j=1 b=3 value=", spot); });
    r.extra = {{"spot_t2_j1_b3", spot.str()}};
    r.seconds = since(start);
    return r;
}

SuiteResult nabla_suite(const SuiteSizes& s) {
    const auto start = Clock::now();
    SuiteResult r{"nabla_laws"};
    const Context ctx = make_context(s.p, s.M, s.nabla_Q);
    const Ring& R = *ctx.ring;
    Rng rng(s.seed + 4);
    const int semigroup_prec = s.M - 3;
    for (int trial = 0; trial < s.nabla_trials; ++trial) {
        const ExponentChar k = ExponentChar::make(rng.range(2, 8), trial % 3 ? random_wild(R, rng, 1) : PadicNum());
        const WElement w = random_element(ctx, rng, k, static_cast<int>(rng.range(0, 1)));
        const ExponentChar s1 = ExponentChar::make(rng.range(-3, 2), trial % 2 ? random_wild(R, rng, 2) : PadicNum());
        const ExponentChar s2 = ExponentChar::make(rng.range(-3, 2), trial % 4 ? random_wild(R, rng, 2) : PadicNum());
        const SlotIndex bad = first_disagreement(nabla_pow(nabla_pow(w, s1), s2), nabla_pow(w, s1 + s2), semigroup_prec);
        r.record(!bad.found(), [&] { return cat("semigroup trial=", trial, " ", slot_witness(bad)); });

        WElement iterated = w;
        for (int l = 1; l <= 3; ++l) {
            iterated = nabla(iterated);
            const SlotIndex b = first_disagreement(nabla_pow(w, ExponentChar::classical(l)), iterated, s.M);
            r.record(!b.found(), [&] { return cat("integer trial=", trial, " l=", l, " ", slot_witness(b)); });
        }
    }
    r.extra = {{"semigroup_prec", std::to_string(semigroup_prec)}, {"integer_prec", std::to_string(s.M)}};
    r.seconds = since(start);
    return r;
}

SuiteResult hdagger_suite(const SuiteSizes& s) {
    const auto start = Clock::now();
    SuiteResult r{"hdagger"};
    const Context ctx = make_context(s.p, s.M, std::min(s.Q, 60));
    const Ring& R = *ctx.ring;
    Rng rng(s.seed + 5);
    int accepted = 0, rejected = 0;
    while (accepted < s.hdagger_trials) {
        const bool classical = accepted % 2;
        const ExponentChar k = classical ? ExponentChar::classical(rng.range(-5, 14))
                                         : ExponentChar::make(rng.range(-5, 14), random_wild(R, rng, 1));
        const WElement w = random_element(ctx, rng, k, static_cast<int>(rng.range(0, 4)));
        const WElement d = nabla(w);
        // denominators prod (u - 1 - l); a wild weight is itself known only to p^M
        PadicNum den = PadicNum::from_int(R, 1);
        for (int l = 1; l <= d.fil(); ++l) den = den * (d.weight.value(R) - PadicNum::from_int(R, 1 + l));
        const int loss = den.is_zero() ? PadicNum::kExact : (classical ? 1 : 2) * den.valuation();
        if (s.M - loss < s.cmp_prec) {
            ++rejected;
            continue;
        }
        const QSeries pr = oc_project(d);
        const int first = first_disagreement(pr, QSeries(ctx), s.cmp_prec);
        r.record(first < 0, [&] { return cat("draw=", accepted, " weight=", k.int_part, " index=", first); });
        ++accepted;
    }
    for (int trial = 0; trial < 10; ++trial) {
        const QSeries g = random_series(ctx, rng, true);
        const QSeries back = oc_project(WElement::single(g, ExponentChar::classical(rng.range(-5, 14))));
        const int first = first_disagreement(back, g, s.M);
        r.record(first < 0, [&] { return cat("fil0 trial=", trial, " index=", first); });
    }
    r.extra = {{"accepted", std::to_string(accepted)}, {"rejected", std::to_string(rejected)}};
    r.seconds = since(start);
    return r;
}

SuiteResult algebra_suite(const SuiteSizes& s) {
    const auto start = Clock::now();
    SuiteResult r{"operator_algebra"};
    const Context ctx = make_context(s.p, s.M, s.Q);
    Rng rng(s.seed + 6);
    const QSeries zero(ctx);
    for (int trial = 0; trial < s.algebra_trials; ++trial) {
        const QSeries f = random_series(ctx, rng, false);
        int first = first_disagreement(u_op(v_op(f)), f, s.M);
        r.record(first < 0, [&] { return cat("UV trial=", trial, " index=", first); });
        const QSeries d = deplete(f);
        first = first_disagreement(u_op(d), zero, s.M);
        r.record(first < 0, [&] { return cat("U deplete trial=", trial, " index=", first); });
        first = first_disagreement(deplete(d), d, s.M);
        r.record(first < 0, [&] { return cat("deplete idempotent trial=", trial, " index=", first); });
        const QSeries g = random_series(ctx, rng, true);
        for (int t = 1; t <= 3; ++t) {
            const QSeries back = theta_pow(theta_pow(g, ExponentChar::classical(-t)), ExponentChar::classical(t));
            first = first_disagreement(back, g, s.M);
            r.record(first < 0, [&] { return cat("theta trial=", trial, " t=", t, " index=", first); });
        }
    }
    r.seconds = since(start);
    return r;
}

SuiteResult slope_suite(const SuiteSizes& s) {
    using namespace tripleq::testing;
    const auto start = Clock::now();
    SuiteResult r{"slope"};
    const int M = s.slope_M, tol = M - 2;
    const Ring& R = Ring::get(s.p, M);
    Rng rng(s.seed + 7);
    for (int trial = 0; trial < s.slope_matrices; ++trial) {
        const Construction c = random_construction(R, rng, static_cast<int>(rng.range(1, 6)));
        const Slope a = random_cut(rng);
        const auto where = cat("matrix=", trial, " n=", c.n, " a=", a, " ");
        const PadicMatrix e = slope_projector(c.U, a);
        MatrixEntry bad = first_disagreement(e * e, e, tol);
        r.record(!bad.found(), [&] { return where + "idempotent " + entry_witness(bad); });
        bad = first_disagreement(e * c.U, c.U * e, tol);
        r.record(!bad.found(), [&] { return where + "commutes " + entry_witness(bad); });
        bad = first_disagreement(e, c.oracle_projector(a), tol);
        r.record(!bad.found(), [&] { return where + "oracle " + entry_witness(bad); });
        const auto kernel = c.kernel();
        for (std::size_t k = 0; k < kernel.size(); ++k) {
            const PadicVector ev = e * kernel[k];
            for (std::size_t i = 0; i < ev.size(); ++i)
                r.record(ev[i].valuation() >= tol, [&] { return where + cat("kernel vector=", k, " coordinate=", i); });
        }
        r.record(agrees_to(e.trace(), PadicNum::from_int(R, c.count_at_most(a)), tol),
                 [&] { return where + cat("trace expected=", c.count_at_most(a)); });
        r.record(newton_slopes(fredholm_det(c.U)) == c.expected_slopes(), [&] { return where + "newton slopes"; });
    }
    int applicable = 0;
    for (int trial = 0; trial < s.pairing_systems; ++trial) {
        const PairingSystem ps = random_pairing_system(R, rng);
        const PairingReport rep = verify_pairing_lemma(ps.c.U, ps.Phi, ps.phi, ps.eta, ps.a, ps.tests, tol);
        r.record(rep.status == PairingReport::Status::Pass,
                 [&] { return cat("pairing system=", trial, " status=", to_string(rep.status), " vector=", rep.witness); });
        applicable += rep.status != PairingReport::Status::NotApplicable;
    }
    r.extra = {{"slope_M", std::to_string(M)}, {"tolerance", std::to_string(tol)},
               {"pairing_applicable", std::to_string(applicable)}};
    r.seconds = since(start);
    return r;
}

SuiteResult euler_suite(const SuiteSizes& s) {
    using namespace tripleq::testing;
    const auto start = Clock::now();
    SuiteResult r{"euler_factors"};
    const Ring& R = Ring::get(s.p, s.euler_M);
    const long p = static_cast<long>(s.p);
    Rng rng(s.seed + 8);
    int exceptional = 0;
    for (int trial = 0; trial < s.euler_triples; ++trial) {
        const RationalTriple tr = random_rational_triple(rng, p);
        const auto& [fr, gr, hr] = tr.roots;
        const auto forms = euler_forms_exact(fr, gr, hr, tr.w, p);
        const DirectEuler d = direct_euler(tr, p);
        const auto where = cat("triple=", trial, " x=", tr.w.x, " y=", tr.w.y, " z=", tr.w.z, " ");
        r.record(forms.E0_cross == d.E0, [&] { return where + "E0"; });
        r.record(forms.E1_cross == d.E1, [&] { return where + "E1"; });
        r.record(forms.E_cross == d.E, [&] { return where + "E"; });
        r.record(forms.E0 == d.E0 && forms.E1 == d.E1 && forms.E == d.E, [&] { return where + "direct form"; });

        const EigenData f = eigen_from(R, tr.w.x, fr), g = eigen_from(R, tr.w.y, gr), h = eigen_from(R, tr.w.z, hr);
        if (d.E0 == 0 || d.E1 == 0 || d.E == 0) {
            ++exceptional;
            continue;
        }
        const PadicNum aj = PadicNum::from_residue(R, rng.below(R.modulus()), s.euler_M);
        const PadicNum back = gz_disassemble(gz_assemble(aj, f, g, h, tr.w), f, g, h, tr.w);
        r.record(agrees_to(back, aj, s.cmp_prec), [&] { return where + "round trip"; });
    }
    r.extra = {{"working_M", std::to_string(s.euler_M)}, {"exceptional", std::to_string(exceptional)}};
    r.seconds = since(start);
    return r;
}

SuiteResult format_suite(const SuiteSizes& s) {
    const auto start = Clock::now();
    SuiteResult r{"format"};
    Rng rng(s.seed + 9);
    for (int trial = 0; trial < s.format_trials; ++trial) {
        const int M = static_cast<int>(rng.range(1, 12)), Q = static_cast<int>(rng.range(1, 40));
        const Context ctx = make_context(s.p, M, Q);
        const Ring& R = *ctx.ring;
        std::vector<PadicNum> c;
        for (int n = 0; n <= Q; ++n) {
            if (M > 1 && rng.below(5) == 0)
                c.push_back(PadicNum::make(R, -static_cast<int>(rng.range(1, 3)), 1 + s.p * rng.below(R.pow(M - 1)), 0));
            else
                c.push_back(PadicNum::from_residue(R, rng.below(R.modulus()), M));
        }
        const QSeries f(ctx, c, rng.coin() ? Q : static_cast<int>(rng.range(0, Q)));
        const std::string text = serialize_qexp(f, rng.coin() ? std::optional<std::int64_t>(rng.range(-4, 12)) : std::nullopt);
        const QexpFile back = parse_qexp(text);
        r.record(serialize_qexp(back.series, back.weight) == text, [&] { return cat("qexp trial=", trial); });

        WElement w = WElement::single(f, ExponentChar::classical(rng.range(-4, 12)));
        for (int i = static_cast<int>(rng.range(0, 3)); i > 0; --i) w.comps.push_back(random_series(ctx, rng, false));
        const std::string wtext = serialize_welement(w);
        r.record(serialize_welement(parse_welement(wtext)) == wtext, [&] { return cat("welement trial=", trial); });

        const int n = static_cast<int>(rng.range(1, 6));
        PadicMatrix m(R, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = PadicNum::from_residue(R, rng.below(R.modulus()), M);
        const std::string mtext = serialize_matrix(m);
        r.record(serialize_matrix(parse_matrix(mtext)) == mtext, [&] { return cat("matrix trial=", trial); });

        const EigenData e = testing::random_eigen(Ring::get(s.p, std::max(M, 4)), rng, static_cast<int>(rng.range(2, 8)));
        const std::string etext = serialize_eigendata(e);
        r.record(serialize_eigendata(parse_eigendata(etext).data) == etext, [&] { return cat("eigendata trial=", trial); });
    }
    r.seconds = since(start);
    return r;
}

SuiteResult padic_suite(const SuiteSizes& s) {
    const auto start = Clock::now();
    SuiteResult r{"padic"};
    const Ring& R = Ring::get(s.p, s.M);
    const auto p = static_cast<std::int64_t>(s.p);
    Rng rng(s.seed + 3);
    auto num = [&](std::int64_t n) { return PadicNum::from_int(R, n); };
    auto unit = [&] {
        std::int64_t n = 0;
        while (n % p == 0) n = rng.range(-100000, 100000);
        return n;
    };
    for (int trial = 0; trial < s.padic_trials; ++trial) {
        const PadicNum x = num(1 + p * rng.range(-10000, 10000));
        r.record(agrees_to(pexp(plog(x)), x, s.M), [&] { return cat("exp log trial=", trial); });
        const PadicNum y = num(p * rng.range(1, 100000));
        r.record(agrees_to(plog(pexp(y)), y, s.M), [&] { return cat("log exp trial=", trial); });
        const std::int64_t n = unit(), m = unit();
        const ExponentChar s1 = ExponentChar::make(rng.range(-5, 5), num(p * rng.range(-500, 500)));
        const ExponentChar s2 = ExponentChar::make(rng.range(-5, 5), num(p * p * rng.range(-500, 500)));
        r.record(agrees_to(unit_pow(n, s1 + s2, R), unit_pow(n, s1, R) * unit_pow(n, s2, R), s.M),
                 [&] { return cat("additive trial=", trial); });
        r.record(agrees_to(unit_pow(n * m, s1, R), unit_pow(n, s1, R) * unit_pow(m, s1, R), s.M),
                 [&] { return cat("multiplicative trial=", trial); });
        const PadicNum a = num(unit()), b = num(rng.range(-100000, 100000));
        r.record(agrees_to((b / a) * a, b, s.M), [&] { return cat("division trial=", trial); });
    }
    r.seconds = since(start);
    return r;
}

std::vector<SuiteResult> run_all_suites(const SuiteSizes& s) {
    std::vector<SuiteResult> out;
    out.push_back(padic_suite(s));
    out.push_back(algebra_suite(s));
    out.push_back(nabla_suite(s));
    out.push_back(hdagger_suite(s));
    auto [lemma, slotwise] = lemma_suites(s);
    out.push_back(lemma);
    out.push_back(slotwise);
    out.push_back(coefficient_identity_suite());
    out.push_back(slope_suite(s));
    out.push_back(euler_suite(s));
    out.push_back(format_suite(s));
    return out;
}

}  // namespace tripleq
