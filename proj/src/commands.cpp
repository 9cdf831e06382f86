#include "tripleq/commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <functional>
#include <sstream>

#include "tripleq/gz.hpp"
#include "tripleq/io.hpp"
#include "tripleq/random.hpp"
#include "tripleq/suites.hpp"

namespace tripleq {

std::string Report::text() const {
    std::string out;
    for (const auto& [k, v] : fields) out += k + "=" + v + "\n";
    return out;
}

namespace {

[[noreturn]] void input_error(const std::string& code, const std::string& msg) {
    fail(ErrorKind::Input, "cli." + code, msg);
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string slope_text(Slope s) {
    std::ostringstream out;
    out << s.numerator();
    if (s.denominator() != 1) out << "/" << s.denominator();
    return out.str();
}

// holds the parsed config and the report being built
class Session {
public:
    explicit Session(const RunConfig& cfg) : cfg_(cfg) {}

    const RunConfig& cfg() const { return cfg_; }
    Report& report() { return report_; }

    void add(const std::string& key, const std::string& value) { report_.add(key, value); }
    void verdict(bool ok) {
        add("result", pass_fail(ok));
        report_.exit_code = ok ? kExitPass : kExitFail;
    }

    bool has(const std::string& key) const { return cfg_.params.count(key) > 0; }

    const std::string& param(const std::string& key) const {
        auto it = cfg_.params.find(key);
        if (it == cfg_.params.end()) input_error("missing_param", "missing parameter " + key + "=...");
        return it->second;
    }

    std::int64_t int_param(const std::string& key) const {
        const std::string& v = param(key);
        std::int64_t out = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || ptr != v.data() + v.size()) input_error("bad_param", "not an integer: " + key + "=" + v);
        return out;
    }

    std::int64_t int_param(const std::string& key, std::int64_t def) const { return has(key) ? int_param(key) : def; }

    Slope slope_param(const std::string& key) const {
        const std::string& v = param(key);
        const auto slash = v.find('/');
        long long num = 0, den = 1;
        auto parse = [&](std::string_view s, long long& out) {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            return ec == std::errc() && ptr == s.data() + s.size();
        };
        const bool ok = slash == std::string::npos
                            ? parse(v, num)
                            : parse(std::string_view(v).substr(0, slash), num) &&
                                  parse(std::string_view(v).substr(slash + 1), den) && den > 0;
        if (!ok) input_error("bad_param", "not a rational slope: " + key + "=" + v);
        return Slope(num, den);
    }

    const std::string& input(std::size_t i, const std::string& role) const {
        if (i >= cfg_.inputs.size()) input_error("missing_input", "missing --in for " + role);
        return cfg_.inputs[i];
    }

    void expect_inputs(std::size_t lo, std::size_t hi) const {
        const std::size_t n = cfg_.inputs.size();
        if (n < lo || n > hi)
            input_error("input_count", cfg_.command + " takes " + std::to_string(lo) +
                                           (hi == lo ? "" : " to " + std::to_string(hi)) + " --in files, got " +
                                           std::to_string(n));
    }

    // flags must agree with the file headers
    void check_ring(std::uint64_t p, int M, std::optional<int> Q = std::nullopt) {
        if (cfg_.p && *cfg_.p != p) input_error("mismatch", "--p does not match the input header");
        if (cfg_.M && *cfg_.M != M) input_error("mismatch", "--prec does not match the input header");
        if (Q && cfg_.Q && *cfg_.Q != *Q) input_error("mismatch", "--qprec does not match the input header");
        if (!ring_echoed_) {
            add("p", std::to_string(p));
            add("M", std::to_string(M));
            if (Q) add("Q", std::to_string(*Q));
            cmp_ = cfg_.cmp_prec.value_or(M - 2);
            if (cmp_ < 1 || cmp_ > M) input_error("bad_cmp_prec", "--cmp-prec must lie in [1, M]");
            add("cmp_prec", std::to_string(cmp_));
            ring_echoed_ = true;
        }
    }
    void check_ring(const Context& ctx) { check_ring(ctx.p(), ctx.M(), ctx.Q); }

    int cmp() const { return cmp_; }

    QSeries read_qexp(std::size_t i, const std::string& role, std::optional<std::int64_t>* weight = nullptr) {
        QexpFile f = parse_qexp(read_file(input(i, role)));
        check_ring(f.series.ctx());
        if (weight) *weight = f.weight;
        return f.series;
    }

    WElement read_welement(std::size_t i, const std::string& role) {
        WElement w = parse_welement(read_file(input(i, role)));
        check_ring(w.ctx());
        return w;
    }

    PadicMatrix read_matrix(std::size_t i, const std::string& role) {
        PadicMatrix m = parse_matrix(read_file(input(i, role)));
        check_ring(m.ring().p(), m.ring().cap());
        return m;
    }

    // loads the q-expansion named by coeffs=, relative to the eigendata file
    EigenData read_eigendata(std::size_t i, const std::string& role, bool need_coeffs) {
        const std::string& path = input(i, role);
        EigenFile f = parse_eigendata(read_file(path));
        const Ring& R = *f.data.a_p.ring();
        check_ring(R.p(), R.cap());
        if (f.coeffs_path) {
            std::filesystem::path cp(*f.coeffs_path);
            if (cp.is_relative()) cp = std::filesystem::path(path).parent_path() / cp;
            QexpFile q = parse_qexp(read_file(cp.string()));
            if (q.series.ctx().p() != R.p() || q.series.ctx().M() != R.cap())
                input_error("mismatch", "coefficient file " + cp.string() + " has a different p or M");
            if (cfg_.Q && *cfg_.Q != q.series.Q()) input_error("mismatch", "--qprec does not match " + cp.string());
            f.data.coeffs = q.series;
        } else if (need_coeffs) {
            input_error("missing_coeffs", role + " eigendata needs coeffs=<path>");
        }
        return f.data;
    }

    void emit_series(const QSeries& f, std::optional<std::int64_t> weight = std::nullopt) {
        add("reliable", std::to_string(f.reliable()));
        if (cfg_.output) {
            write_file(*cfg_.output, serialize_qexp(f, weight));
            add("out", *cfg_.output);
            return;
        }
        for (int n = 0; n <= f.Q(); ++n) add("a" + std::to_string(n), format_padic(f[n], f.ctx().M()));
    }

    void emit_welement(const WElement& w) {
        add("weight", std::to_string(w.weight.int_part));
        if (!w.weight.is_classical()) add("weight_wild", format_padic(w.weight.wild, w.ctx().M()));
        add("fil", std::to_string(w.fil()));
        if (w.tail_prec < PadicNum::kExact) add("tail", std::to_string(w.tail_prec));
        if (cfg_.output) {
            write_file(*cfg_.output, serialize_welement(w));
            add("out", *cfg_.output);
            return;
        }
        for (int i = 0; i <= w.fil(); ++i)
            for (int n = 0; n <= w.ctx().Q; ++n)
                add("c" + std::to_string(i) + ".a" + std::to_string(n), format_padic(w.comps[i][n], w.ctx().M()));
    }

    void emit_matrix(const std::string& name, const PadicMatrix& m) {
        if (cfg_.output) {
            write_file(*cfg_.output, serialize_matrix(m));
            add("out", *cfg_.output);
            return;
        }
        for (int i = 0; i < m.n(); ++i)
            for (int j = 0; j < m.n(); ++j)
                add(name + std::to_string(i) + "_" + std::to_string(j), format_padic(m.at(i, j), m.ring().cap()));
    }

    ExponentChar exponent_param(const Ring& R, const std::string& key) const {
        const std::int64_t a = int_param(key);
        if (!has("wild")) return ExponentChar::classical(a);
        return ExponentChar::make(a, parse_padic(R, param("wild")));
    }

private:
    const RunConfig& cfg_;
    Report report_;
    bool ring_echoed_ = false;
    int cmp_ = 0;
};

void cmd_deplete(Session& s) {
    s.expect_inputs(1, 1);
    std::optional<std::int64_t> weight;
    const QSeries f = s.read_qexp(0, "f", &weight);
    if (f.Q() < static_cast<int>(f.ctx().p()))
        fail(ErrorKind::Precision, "cli.q_too_small", "Q must be at least p: U reads a_(pn)");
    s.emit_series(deplete(f), weight);
}

void cmd_theta_pow(Session& s) {
    s.expect_inputs(1, 1);
    std::optional<std::int64_t> weight;
    const QSeries f = s.read_qexp(0, "f", &weight);
    const ExponentChar e = s.exponent_param(f.ring(), "s");
    s.add("s", std::to_string(e.int_part));
    s.emit_series(theta_pow(f, e));
}

void cmd_nabla_pow(Session& s) {
    s.expect_inputs(1, 1);
    const WElement w = s.read_welement(0, "w");
    const ExponentChar e = s.exponent_param(*w.ctx().ring, "s");
    s.add("s", std::to_string(e.int_part));
    s.emit_welement(nabla_pow(w, e));
}

void cmd_oc_project(Session& s) {
    s.expect_inputs(1, 1);
    const WElement w = s.read_welement(0, "w");
    s.emit_series(oc_project(w), w.weight.int_part);
}

void cmd_primitive(Session& s) {
    s.expect_inputs(1, 1);
    const QSeries g = s.read_qexp(0, "g");
    const int r2 = static_cast<int>(s.int_param("r2"));
    s.add("r2", std::to_string(r2));
    s.emit_welement(primitive_depleted(g, r2));
}

void cmd_pr_project(Session& s) {
    s.expect_inputs(2, 2);
    const WElement a = s.read_welement(0, "a"), b = s.read_welement(1, "b");
    const int t = static_cast<int>(s.int_param("t"));
    s.add("t", std::to_string(t));
    s.emit_welement(pr_project(a, b, t));
}

TripleWeights weights_from(Session& s, int y, int z) {
    const int t = static_cast<int>(s.int_param("t"));
    const TripleWeights w = TripleWeights::from_yzt(y, z, t);
    s.add("x", std::to_string(w.x));
    s.add("y", std::to_string(y));
    s.add("z", std::to_string(z));
    s.add("t", std::to_string(t));
    return w;
}

void cmd_lemma_check(Session& s) {
    s.expect_inputs(2, 2);
    QSeries g = s.read_qexp(0, "g");
    const QSeries h = s.read_qexp(1, "h");
    if (s.int_param("deplete", 0)) g = deplete(g);
    const TripleWeights w = weights_from(s, static_cast<int>(s.int_param("y")), static_cast<int>(s.int_param("z")));
    const LemmaSide l = lemma_lhs(g, h, w.y, w.z, w.t()), r = lemma_rhs(g, h, w.y, w.z, w.t());
    const int first = first_disagreement(l.value, r.value, s.cmp());
    const SlotIndex slot = first_disagreement(l.pre, r.pre, s.cmp());
    s.add("compared_to", std::to_string(std::min(l.value.reliable(), r.value.reliable())));
    s.add("first_difference", std::to_string(first));
    if (first >= 0) {
        s.add("lhs_at_difference", format_padic(l.value[first], g.ctx().M()));
        s.add("rhs_at_difference", format_padic(r.value[first], g.ctx().M()));
    }
    s.add("lemma", pass_fail(first < 0));
    s.add("slot_first_difference", slot.found() ? std::to_string(slot.slot) + ":" + std::to_string(slot.index) : "-1");
    s.add("slotwise", pass_fail(!slot.found()));
    if (s.cfg().output) {
        write_file(*s.cfg().output, serialize_qexp(l.value, w.x));
        s.add("out", *s.cfg().output);
    }
    s.verdict(first < 0 && !slot.found());
}

void cmd_slope_decompose(Session& s) {
    s.expect_inputs(1, 1);
    const PadicMatrix U = s.read_matrix(0, "U");
    const int M = U.ring().cap();
    const Slope a = s.slope_param("a");
    s.add("n", std::to_string(U.n()));
    s.add("a", slope_text(a));
    const Poly det = fredholm_det(U);
    for (std::size_t i = 0; i < det.size(); ++i) s.add("det" + std::to_string(i), format_padic(det[i], M));
    std::string slopes;
    for (const auto& sm : newton_slopes(det))
        slopes += (slopes.empty() ? "" : ",") + slope_text(sm.slope) + "x" + std::to_string(sm.multiplicity);
    s.add("slopes", slopes.empty() ? "none" : slopes);
    const PadicMatrix e = slope_projector(U, a);
    s.add("rank", format_padic(e.trace(), M));
    const MatrixEntry idem = first_disagreement(e * e, e, s.cmp());
    const MatrixEntry comm = first_disagreement(e * U, U * e, s.cmp());
    auto entry = [](const MatrixEntry& m) {
        return m.found() ? std::to_string(m.row) + "," + std::to_string(m.col) : std::string("-1");
    };
    s.add("idempotent", pass_fail(!idem.found()));
    s.add("idempotent_entry", entry(idem));
    s.add("commutes", pass_fail(!comm.found()));
    s.add("commutes_entry", entry(comm));
    if (s.has("lambda")) {
        const RieszDecomposition rd = riesz_projector(U, parse_padic(U.ring(), s.param("lambda")));
        s.add("lambda", s.param("lambda"));
        s.add("pole_order", std::to_string(rd.order));
        s.add("pole_rank", format_padic(rd.onto_pole.trace(), M));
    }
    s.emit_matrix("e", e);
    s.verdict(!idem.found() && !comm.found());
}

PadicVector vector_param(Session& s, const Ring& R, const std::string& key) {
    PadicVector v;
    std::stringstream in(s.param(key));
    std::string tok;
    while (std::getline(in, tok, ',')) v.push_back(parse_padic(R, tok));
    return v;
}

void cmd_pairing_lemma(Session& s) {
    s.expect_inputs(3, 3);
    const PadicMatrix U = s.read_matrix(0, "U"), Phi = s.read_matrix(1, "Phi"), phi = s.read_matrix(2, "phi");
    const Ring& R = U.ring();
    const Slope a = s.slope_param("a");
    const PadicVector eta = vector_param(s, R, "eta");
    if (static_cast<int>(eta.size()) != U.n()) input_error("bad_param", "eta needs one entry per row of U");
    const int count = static_cast<int>(s.int_param("tests", 5));
    if (count < 1) input_error("bad_param", "tests must be positive");
    s.add("seed", std::to_string(s.cfg().seed));
    s.add("a", slope_text(a));
    s.add("tests", std::to_string(count));
    Rng rng(s.cfg().seed);
    std::vector<PadicVector> tests;
    for (int k = 0; k < count; ++k) {
        PadicVector v(U.n());
        for (auto& x : v) x = PadicNum::from_residue(R, rng.below(R.modulus()), R.cap());
        tests.push_back(v);
    }
    const PairingReport rep = verify_pairing_lemma(U, Phi, phi, eta, a, tests, s.cmp());
    s.add("alpha", format_padic(rep.alpha, R.cap()));
    s.add("alpha_slope", slope_text(rep.alpha_slope));
    s.add("status", to_string(rep.status));
    if (rep.status == PairingReport::Status::NotApplicable) {
        s.add("result", "NOT_APPLICABLE");
        return;
    }
    s.add("worst_valuation", std::to_string(rep.worst_valuation));
    s.add("witness", std::to_string(rep.witness));
    s.verdict(rep.status == PairingReport::Status::Pass);
}

HeckeTriple<PadicNum> hecke_of(const EigenData& e) { return {e.alpha, e.beta, e.chi_p}; }

void cmd_euler_factors(Session& s) {
    s.expect_inputs(3, 3);
    const EigenData f = s.read_eigendata(0, "f", false), g = s.read_eigendata(1, "g", false),
                    h = s.read_eigendata(2, "h", false);
    const TripleWeights w = TripleWeights::make(f.k, g.k, h.k);
    s.add("x", std::to_string(w.x));
    s.add("y", std::to_string(w.y));
    s.add("z", std::to_string(w.z));
    const Ring& R = *f.a_p.ring();
    const int M = R.cap();
    const auto forms = euler_forms(hecke_of(f), hecke_of(g), hecke_of(h), w,
                                   [&R](int k) { return PadicNum::from_int(R, 1).shift(k); });
    const std::pair<const char*, const PadicNum*> rows[] = {
        {"E0", &forms.E0},         {"E1", &forms.E1},         {"E", &forms.E},
        {"E0_cross", &forms.E0_cross}, {"E1_cross", &forms.E1_cross}, {"E_cross", &forms.E_cross}};
    for (const auto& [name, v] : rows) s.add(name, format_padic(*v, M));
    // digits that disagree are a failure; too few known digits is a precision error
    std::string first_bad;
    int known = PadicNum::kExact;
    for (std::size_t i = 0; i < 3; ++i) {
        const PadicNum& direct = *rows[i].second;
        const PadicNum& cross = *rows[i + 3].second;
        if (!(direct == cross) && first_bad.empty()) first_bad = rows[i].first;
        known = std::min({known, direct.abs_prec(), cross.abs_prec()});
    }
    s.add("known_to", std::to_string(known));
    s.add("consistency", first_bad.empty() ? "CONSISTENT" : "INCONSISTENT");
    if (!first_bad.empty()) s.add("first_difference", first_bad);
    if (w.balanced()) {
        try {
            s.add("interp_factor", format_padic(interp_factor_balanced(f, g, h, w), M));
        } catch (const Error&) {
            s.add("interp_factor", "exceptional");
        }
    }
    if (first_bad.empty() && known < s.cmp())
        fail(ErrorKind::Precision, "cli.euler_precision",
             "Euler factors known only to p^" + std::to_string(known) + "; raise M or lower --cmp-prec");
    s.verdict(first_bad.empty());
}

void cmd_lvalue(Session& s) {
    const EigenData g = s.read_eigendata(0, "g", true), h = s.read_eigendata(1, "h", true);
    const TripleWeights w = weights_from(s, g.k, h.k);
    if (g.coeffs->Q() != h.coeffs->Q()) input_error("mismatch", "g and h have different Q");
    if (g.coeffs->Q() < static_cast<int>(g.coeffs->ctx().p()))
        fail(ErrorKind::Precision, "cli.q_too_small", "Q must be at least p: depletion applies U once");
    std::optional<std::vector<QSeries>> spanning;
    Slope a(0);
    if (s.cfg().inputs.size() > 2) {
        spanning.emplace();
        for (std::size_t i = 2; i < s.cfg().inputs.size(); ++i) spanning->push_back(s.read_qexp(i, "spanning element"));
        a = s.slope_param("a");
        s.add("a", slope_text(a));
        s.add("spanning_size", std::to_string(spanning->size()));
    }
    const LValueResult r = lvalue_numerator(g, h, w, s.cmp(), spanning, a);
    s.add("first_difference", std::to_string(r.first_disagreement));
    s.add("pipelines", pass_fail(r.agree()));
    if (!r.caveat.empty()) s.add("caveat", r.caveat);
    s.emit_series(r.value, w.x);
    s.verdict(r.agree());
}

void cmd_gz_assemble(Session& s) {
    s.expect_inputs(3, 3);
    const EigenData f = s.read_eigendata(0, "f", false), g = s.read_eigendata(1, "g", false),
                    h = s.read_eigendata(2, "h", false);
    const TripleWeights w = TripleWeights::make(f.k, g.k, h.k);
    const Ring& R = *f.a_p.ring();
    const PadicNum aj = parse_padic(R, s.param("aj"));
    s.add("aj", format_padic(aj, R.cap()));
    const PadicNum L = gz_assemble(aj, f, g, h, w);
    s.add("value", format_padic(L, R.cap()));
    s.add("value_valuation", std::to_string(L.valuation()));
    const PadicNum back = gz_disassemble(L, f, g, h, w);
    const bool ok = agrees_to(back, aj, s.cmp());
    s.add("round_trip", pass_fail(ok));
    s.verdict(ok);
}

void cmd_selftest(Session& s) {
    s.expect_inputs(0, 0);
    const RunConfig& c = s.cfg();
    SuiteSizes sizes;
    sizes.p = c.p.value_or(5);
    sizes.M = c.M.value_or(10);
    sizes.Q = c.Q.value_or(200);
    sizes.cmp_prec = c.cmp_prec.value_or(sizes.M - 2);
    sizes.seed = c.seed;
    if (sizes.cmp_prec < 1 || sizes.cmp_prec > sizes.M) input_error("bad_cmp_prec", "--cmp-prec must lie in [1, M]");
    s.add("p", std::to_string(sizes.p));
    s.add("M", std::to_string(sizes.M));
    s.add("Q", std::to_string(sizes.Q));
    s.add("cmp_prec", std::to_string(sizes.cmp_prec));
    s.add("seed", std::to_string(sizes.seed));
    const bool timing = s.int_param("timing", 0) != 0;
    bool all = true;
    for (const SuiteResult& r : run_all_suites(sizes)) {
        const std::string key = "suite." + r.name;
        s.add(key, pass_fail(r.pass));
        s.add(key + ".checks", std::to_string(r.checks));
        for (const auto& [k, v] : r.extra) s.add(key + "." + k, v);
        if (!r.pass) s.add(key + ".witness", r.witness);
        if (timing) s.add(key + ".seconds", std::to_string(r.seconds));
        all = all && r.pass;
    }
    s.verdict(all);
}

const std::vector<std::pair<std::string, std::function<void(Session&)>>>& dispatch() {
    static const std::vector<std::pair<std::string, std::function<void(Session&)>>> table = {
        {"deplete", cmd_deplete},
        {"theta-pow", cmd_theta_pow},
        {"nabla-pow", cmd_nabla_pow},
        {"oc-project", cmd_oc_project},
        {"primitive", cmd_primitive},
        {"pr-project", cmd_pr_project},
        {"lemma-check", cmd_lemma_check},
        {"slope-decompose", cmd_slope_decompose},
        {"pairing-lemma", cmd_pairing_lemma},
        {"euler-factors", cmd_euler_factors},
        {"lvalue", cmd_lvalue},
        {"gz-assemble", cmd_gz_assemble},
        {"selftest", cmd_selftest},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : dispatch()) out.push_back(name);
        return out;
    }();
    return names;
}

Report run_command(const RunConfig& cfg) {
    Session s(cfg);
    s.add("command", cfg.command);
    if (!cfg.inputs.empty()) {
        std::string joined;
        for (const auto& in : cfg.inputs) joined += (joined.empty() ? "" : ",") + in;
        s.add("in", joined);
    }
    for (const auto& [k, v] : cfg.params) s.add("param." + k, v);
    try {
        auto it = std::find_if(dispatch().begin(), dispatch().end(), [&](const auto& e) { return e.first == cfg.command; });
        if (it == dispatch().end()) input_error("unknown_command", "unknown command '" + cfg.command + "'");
        it->second(s);
    } catch (const Error& e) {
        s.add("error_code", e.code());
        s.add("error", e.what());
        switch (e.kind()) {
            case ErrorKind::Input: s.add("result", "INPUT_ERROR"); s.report().exit_code = kExitInput; break;
            case ErrorKind::Precision: s.add("result", "PRECISION_ERROR"); s.report().exit_code = kExitPrecision; break;
            case ErrorKind::Consistency: s.add("result", "FAIL"); s.report().exit_code = kExitFail; break;
        }
    } catch (const std::exception& e) {
        s.add("error_code", "cli.unexpected");
        s.add("error", e.what());
        s.add("result", "INPUT_ERROR");
        s.report().exit_code = kExitInput;
    }
    return s.report();
}

}  // namespace tripleq
