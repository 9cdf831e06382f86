#include <doctest.h>

#include "tripleq/io.hpp"
#include "tripleq/random.hpp"

using namespace tripleq;

namespace {

std::string error_message(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("qexp parse of a small file") {
    const QexpFile f = parse_qexp("p=5 M=2 Q=3\n0\n1\n0\n2\n");
    const QSeries& s = f.series;
    CHECK(s.ctx().p() == 5);
    CHECK(s.ctx().M() == 2);
    CHECK(s.Q() == 3);
    CHECK(s[0].is_zero());
    CHECK(s[1].residue() == 1);
    CHECK(s[2].is_zero());
    CHECK(s[3].residue() == 2);
    CHECK_FALSE(f.weight.has_value());
}

TEST_CASE("qexp parse accepts tokens on one line and comments") {
    const QexpFile f = parse_qexp("# a comment\np=5 M=2 Q=3 weight=4\n0 1\n# inner\n0 2\n");
    CHECK(f.weight == 4);
    CHECK(f.series[3].residue() == 2);
}

TEST_CASE("qexp parse errors carry the line") {
    SUBCASE("too few coefficients") {
        const std::string msg = error_message([] { parse_qexp("p=5 M=2 Q=3\n0 1 0\n"); });
        CHECK(msg.find("line 2") != std::string::npos);
    }
    SUBCASE("residue out of range") {
        const std::string msg = error_message([] { parse_qexp("p=5 M=2 Q=1\n0\n25\n"); });
        CHECK(msg.find("line 3") != std::string::npos);
    }
    SUBCASE("bad header") {
        CHECK(error_message([] { parse_qexp("p=5 M=2\n0\n"); }).find("line 1") != std::string::npos);
        CHECK(error_message([] { parse_qexp("p=4 M=2 Q=1\n0\n1\n"); }).find("line 1") != std::string::npos);
        CHECK(error_message([] { parse_qexp("p=5 M=2 Q=1 color=3\n0\n1\n"); }).find("unknown") != std::string::npos);
    }
    SUBCASE("garbage token") {
        CHECK(error_message([] { parse_qexp("p=5 M=2 Q=1\n0\nx\n"); }).find("line 3") != std::string::npos);
    }
    SUBCASE("kind is input") {
        try {
            parse_qexp("");
            FAIL("no throw");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Input);
        }
    }
}

TEST_CASE("qexp round trip is byte identical") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int M = static_cast<int>(rng.range(1, 12));
        const int Q = static_cast<int>(rng.range(1, 30));
        const Context ctx = make_context(5, M, Q);
        std::vector<PadicNum> c;
        for (int n = 0; n <= Q; ++n) {
            if (rng.coin() && rng.coin())
                c.push_back(PadicNum::make(*ctx.ring, -static_cast<int>(rng.range(1, 3)),
                                           1 + 5 * rng.below(ctx.ring->pow(M - 1)), M - 3));
            else
                c.push_back(PadicNum::from_residue(*ctx.ring, rng.below(ctx.ring->modulus()), M));
        }
        const int reliable = rng.coin() ? Q : static_cast<int>(rng.range(0, Q));
        const QSeries s(ctx, c, reliable);
        const std::string text = serialize_qexp(s, rng.coin() ? std::optional<std::int64_t>(4) : std::nullopt);
        const QexpFile back = parse_qexp(text);
        CHECK(serialize_qexp(back.series, back.weight) == text);
        CHECK(back.series.reliable() == reliable);
        CHECK(agrees_to(back.series, s, M - 3));
    }
}

TEST_CASE("padic tokens") {
    const Ring& R = Ring::get(5, 6);
    CHECK(parse_padic(R, "-1") == PadicNum::from_int(R, -1));
    CHECK(parse_padic(R, "1/3") * PadicNum::from_int(R, 3) == PadicNum::from_int(R, 1));
    const PadicNum x = parse_padic(R, "7/5^2");
    CHECK(x.valuation() == -2);
    CHECK(format_padic(x, 6) == "7/5^2");
    CHECK(format_padic(PadicNum::from_int(R, -1), 6) == "15624");
    CHECK_THROWS(parse_padic(R, "10/5^2"));
    CHECK_THROWS(parse_padic(R, "1/7^2"));
    CHECK_THROWS(parse_padic(R, "1/0"));
}

TEST_CASE("welement round trip") {
    const Context ctx = make_context(5, 6, 8);
    Rng rng(11);
    WElement w;
    w.weight = ExponentChar::make(4, PadicNum::from_int(*ctx.ring, 10));
    w.twist = 2;
    w.tail_prec = 5;
    for (int i = 0; i < 3; ++i) {
        std::vector<std::uint64_t> r;
        for (int n = 0; n <= ctx.Q; ++n) r.push_back(rng.below(ctx.ring->modulus()));
        w.comps.push_back(QSeries::from_residues(ctx, r));
    }
    const std::string text = serialize_welement(w);
    const WElement back = parse_welement(text);
    CHECK(serialize_welement(back) == text);
    CHECK(back.fil() == 2);
    CHECK(back.twist == 2);
    CHECK(back.tail_prec == 5);
    CHECK(back.weight.int_part == 4);

    const WElement single = parse_welement("p=5 M=2 Q=3 weight=4\n0\n1\n0\n2\n");
    CHECK(single.fil() == 0);
    CHECK(single.comps[0][3].residue() == 2);
    CHECK_THROWS(parse_welement("p=5 M=2 Q=3 weight=4 fil=1\n0\n1\n0\n2\n"));
}

TEST_CASE("matrix round trip") {
    const std::string text = "p=5 M=4 n=2\n1 2\n3 1/5^1\n";
    const PadicMatrix m = parse_matrix(text);
    CHECK(m.n() == 2);
    CHECK(serialize_matrix(m) == text);
    CHECK(error_message([] { parse_matrix("p=5 M=4 n=2\n1 2\n3\n"); }).find("line 3") != std::string::npos);
}

TEST_CASE("eigendata") {
    SUBCASE("roots filled in and round trip") {
        // a_p = 6 = 1 + 5 splits x^2 - 6x + 5 with roots 1 and 5
        const EigenFile f = parse_eigendata("label=test\np=5\nM=8\nN=11\nk=2\na_p=6\nchi_p=1\ncoeffs=g.qexp\n");
        CHECK(f.data.alpha.residue() == 1);
        CHECK(f.data.beta.residue() == 5);
        CHECK(f.coeffs_path == "g.qexp");
        const std::string text = serialize_eigendata(f.data, f.coeffs_path);
        CHECK(serialize_eigendata(parse_eigendata(text).data, f.coeffs_path) == text);
    }
    SUBCASE("inconsistent roots rejected") {
        CHECK_THROWS_AS(parse_eigendata("p=5\nM=8\nN=11\nk=2\na_p=6\nchi_p=1\nalpha=2\nbeta=4\n"), Error);
    }
    SUBCASE("missing key") {
        CHECK(error_message([] { parse_eigendata("p=5\nM=8\nk=2\na_p=6\nchi_p=1\n"); }).find("'N'") !=
              std::string::npos);
    }
}
