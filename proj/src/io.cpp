#include "tripleq/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace tripleq {

namespace {

[[noreturn]] void parse_error(int line, const std::string& msg) {
    fail(ErrorKind::Input, "io.parse", "line " + std::to_string(line) + ": " + msg);
}

struct Line {
    int number;
    std::string text;
};

std::vector<Line> content_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string s;
    int n = 0;
    while (std::getline(in, s)) {
        ++n;
        if (!s.empty() && s.back() == '\r') s.pop_back();
        const auto first = s.find_first_not_of(" \t");
        if (first == std::string::npos || s[first] == '#') continue;
        out.push_back({n, s});
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_big(std::string_view s, BigInt& out) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') return false;
    out = BigInt(std::string(s));
    return true;
}

using Header = std::map<std::string, std::string>;

Header parse_header(const Line& line, std::initializer_list<const char*> allowed) {
    Header h;
    for (const auto& tok : split_ws(line.text)) {
        auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) parse_error(line.number, "expected key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq);
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) parse_error(line.number, "unknown header key '" + key + "'");
        if (!h.emplace(key, tok.substr(eq + 1)).second) parse_error(line.number, "duplicate key '" + key + "'");
    }
    return h;
}

std::int64_t header_int(const Header& h, const std::string& key, int line, std::optional<std::int64_t> def = {}) {
    auto it = h.find(key);
    if (it == h.end()) {
        if (def) return *def;
        parse_error(line, "missing header key '" + key + "'");
    }
    std::int64_t v = 0;
    if (!parse_int(it->second, v)) parse_error(line, "bad integer for '" + key + "'");
    return v;
}

Context header_context(const Header& h, int line) {
    const auto p = header_int(h, "p", line), M = header_int(h, "M", line), Q = header_int(h, "Q", line);
    if (p < 5 || !is_prime(static_cast<std::uint64_t>(p))) parse_error(line, "p must be a prime >= 5");
    if (M < 1 || Q < 1) parse_error(line, "M and Q must be positive");
    try {
        return make_context(static_cast<std::uint64_t>(p), static_cast<int>(M), static_cast<int>(Q));
    } catch (const Error& e) {
        parse_error(line, e.what());
    }
}

PadicNum parse_coefficient(const Ring& R, const std::string& tok, int line) {
    try {
        return parse_padic(R, tok);
    } catch (const Error& e) {
        parse_error(line, e.what());
    }
}

// coefficients in reading order, whitespace separated across any number of lines
std::vector<PadicNum> read_coefficients(const Ring& R, const std::vector<Line>& lines, std::size_t from,
                                        std::size_t count, int header_line) {
    std::vector<PadicNum> out;
    int last_line = header_line + 1;
    for (std::size_t i = from; i < lines.size(); ++i) {
        for (const auto& tok : split_ws(lines[i].text)) {
            if (out.size() == count) parse_error(lines[i].number, "more than " + std::to_string(count) + " coefficients");
            out.push_back(parse_coefficient(R, tok, lines[i].number));
        }
        last_line = lines[i].number;
    }
    if (out.size() != count)
        parse_error(last_line, "expected " + std::to_string(count) + " coefficients, found " + std::to_string(out.size()));
    return out;
}

}  // namespace

std::string format_padic(const PadicNum& x, int M) {
    if (x.is_zero()) return "0";
    const Ring& R = *x.ring();
    if (x.valuation() >= 0) return std::to_string(x.residue_mod(M));
    const std::uint64_t unit = x.unit_part() % R.pow(std::min(M, R.max_exp()));
    return std::to_string(unit) + "/" + std::to_string(R.p()) + "^" + std::to_string(-x.valuation());
}

PadicNum parse_padic(const Ring& R, std::string_view text) {
    const std::uint64_t modulus = R.modulus();
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        BigInt v;
        if (!parse_big(text, v)) fail(ErrorKind::Input, "io.bad_number", "not a number: '" + std::string(text) + "'");
        // canonical residues must lie in [0, p^M); signed integers are read as exact values
        if (text[0] != '-' && v >= BigInt(modulus))
            fail(ErrorKind::Input, "io.out_of_range", "coefficient out of range [0, p^M): " + std::string(text));
        return v >= 0 ? PadicNum::from_residue(R, static_cast<std::uint64_t>(v), R.cap()) : PadicNum::from_big(R, v);
    }
    const std::string_view num = text.substr(0, slash), den = text.substr(slash + 1);
    BigInt n;
    if (!parse_big(num, n)) fail(ErrorKind::Input, "io.bad_number", "not a number: '" + std::string(text) + "'");
    const auto caret = den.find('^');
    if (caret != std::string_view::npos) {
        std::int64_t base = 0, k = 0;
        if (!parse_int(den.substr(0, caret), base) || !parse_int(den.substr(caret + 1), k) ||
            base != static_cast<std::int64_t>(R.p()) || k < 1 || n < 0 || n >= BigInt(modulus) ||
            n % R.p() == 0)
            fail(ErrorKind::Input, "io.bad_number", "expected u/p^k with a unit u in [0, p^M): '" + std::string(text) + "'");
        return PadicNum::make(R, static_cast<int>(-k), static_cast<std::uint64_t>(n), static_cast<int>(-k) + R.cap());
    }
    BigInt d;
    if (!parse_big(den, d) || d == 0) fail(ErrorKind::Input, "io.bad_number", "bad fraction: '" + std::string(text) + "'");
    return PadicNum::from_rational(R, BigRational(n, d));
}

QexpFile parse_qexp(const std::string& text) {
    const auto lines = content_lines(text);
    if (lines.empty()) parse_error(1, "missing header");
    const Header h = parse_header(lines[0], {"p", "M", "Q", "weight", "reliable"});
    const Context ctx = header_context(h, lines[0].number);
    auto coeffs = read_coefficients(*ctx.ring, lines, 1, ctx.Q + 1, lines[0].number);
    const auto reliable = header_int(h, "reliable", lines[0].number, ctx.Q);
    if (reliable < 0 || reliable > ctx.Q) parse_error(lines[0].number, "reliable must lie in [0, Q]");
    QexpFile out{QSeries(ctx, std::move(coeffs), static_cast<int>(reliable)), std::nullopt};
    if (h.count("weight")) out.weight = header_int(h, "weight", lines[0].number);
    return out;
}

std::string serialize_qexp(const QSeries& f, std::optional<std::int64_t> weight) {
    std::ostringstream out;
    out << "p=" << f.ctx().p() << " M=" << f.ctx().M() << " Q=" << f.Q();
    if (weight) out << " weight=" << *weight;
    if (f.reliable() < f.Q()) out << " reliable=" << f.reliable();
    out << '\n';
    for (int n = 0; n <= f.Q(); ++n) out << format_padic(f[n], f.ctx().M()) << '\n';
    return out.str();
}

WElement parse_welement(const std::string& text) {
    const auto lines = content_lines(text);
    if (lines.empty()) parse_error(1, "missing header");
    const int hl = lines[0].number;
    const Header h = parse_header(lines[0], {"p", "M", "Q", "weight", "weight_wild", "fil", "twist", "tail", "reliable"});
    const Context ctx = header_context(h, hl);
    const auto k = header_int(h, "weight", hl);
    const auto fil = header_int(h, "fil", hl, 0);
    if (fil < 0) parse_error(hl, "fil must be nonnegative");
    WElement w;
    w.weight = ExponentChar::classical(k);
    if (h.count("weight_wild")) {
        try {
            w.weight = ExponentChar::make(k, parse_padic(*ctx.ring, h.at("weight_wild")));
        } catch (const Error& e) {
            parse_error(hl, e.what());
        }
    }
    w.twist = static_cast<int>(header_int(h, "twist", hl, 0));
    w.tail_prec = static_cast<int>(header_int(h, "tail", hl, PadicNum::kExact));
    const auto reliable = header_int(h, "reliable", hl, ctx.Q);
    auto all = read_coefficients(*ctx.ring, lines, 1, static_cast<std::size_t>((fil + 1) * (ctx.Q + 1)), hl);
    for (int i = 0; i <= fil; ++i) {
        std::vector<PadicNum> c(all.begin() + i * (ctx.Q + 1), all.begin() + (i + 1) * (ctx.Q + 1));
        w.comps.emplace_back(ctx, std::move(c), static_cast<int>(reliable));
    }
    return w;
}

std::string serialize_welement(const WElement& w) {
    const Context& ctx = w.ctx();
    int reliable = ctx.Q;
    for (const auto& c : w.comps) reliable = std::min(reliable, c.reliable());
    std::ostringstream out;
    out << "p=" << ctx.p() << " M=" << ctx.M() << " Q=" << ctx.Q << " weight=" << w.weight.int_part
        << " fil=" << w.fil();
    if (!w.weight.is_classical()) out << " weight_wild=" << format_padic(w.weight.wild, ctx.M());
    if (w.twist != 0) out << " twist=" << w.twist;
    if (w.tail_prec < PadicNum::kExact) out << " tail=" << w.tail_prec;
    if (reliable < ctx.Q) out << " reliable=" << reliable;
    out << '\n';
    for (const auto& c : w.comps)
        for (int n = 0; n <= ctx.Q; ++n) out << format_padic(c[n], ctx.M()) << '\n';
    return out.str();
}

PadicMatrix parse_matrix(const std::string& text) {
    const auto lines = content_lines(text);
    if (lines.empty()) parse_error(1, "missing header");
    const int hl = lines[0].number;
    const Header h = parse_header(lines[0], {"p", "M", "n"});
    const auto p = header_int(h, "p", hl), M = header_int(h, "M", hl), n = header_int(h, "n", hl);
    if (p < 5 || !is_prime(static_cast<std::uint64_t>(p))) parse_error(hl, "p must be a prime >= 5");
    if (n < 1 || n > 64) parse_error(hl, "n must lie in [1, 64]");
    if (lines.size() != static_cast<std::size_t>(n) + 1)
        parse_error(lines.back().number, "expected " + std::to_string(n) + " matrix rows");
    const Ring* R = nullptr;
    try {
        R = &Ring::get(static_cast<std::uint64_t>(p), static_cast<int>(M));
    } catch (const Error& e) {
        parse_error(hl, e.what());
    }
    PadicMatrix m(*R, static_cast<int>(n));
    for (int i = 0; i < n; ++i) {
        const auto toks = split_ws(lines[i + 1].text);
        if (static_cast<std::int64_t>(toks.size()) != n)
            parse_error(lines[i + 1].number, "expected " + std::to_string(n) + " entries");
        for (int j = 0; j < n; ++j) m.at(i, j) = parse_coefficient(*R, toks[j], lines[i + 1].number);
    }
    return m;
}

std::string serialize_matrix(const PadicMatrix& m) {
    std::ostringstream out;
    const int M = m.ring().cap();
    out << "p=" << m.ring().p() << " M=" << M << " n=" << m.n() << '\n';
    for (int i = 0; i < m.n(); ++i) {
        for (int j = 0; j < m.n(); ++j) out << (j ? " " : "") << format_padic(m.at(i, j), M);
        out << '\n';
    }
    return out.str();
}

EigenFile parse_eigendata(const std::string& text) {
    const auto lines = content_lines(text);
    std::map<std::string, Line> kv;
    for (const auto& l : lines) {
        const auto toks = split_ws(l.text);
        if (toks.size() != 1) parse_error(l.number, "expected a single key=value");
        const auto eq = toks[0].find('=');
        if (eq == std::string::npos || eq == 0) parse_error(l.number, "expected key=value");
        const std::string key = toks[0].substr(0, eq);
        static const char* known[] = {"label", "p", "M", "N", "k", "a_p", "chi_p", "alpha", "beta", "coeffs"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* s) { return key == s; }) == std::end(known))
            parse_error(l.number, "unknown key '" + key + "'");
        if (!kv.emplace(key, Line{l.number, toks[0].substr(eq + 1)}).second)
            parse_error(l.number, "duplicate key '" + key + "'");
    }
    const int last = lines.empty() ? 1 : lines.back().number;
    auto need = [&](const std::string& key) -> const Line& {
        auto it = kv.find(key);
        if (it == kv.end()) parse_error(last, "missing key '" + key + "'");
        return it->second;
    };
    auto as_int = [&](const std::string& key) {
        const Line& l = need(key);
        std::int64_t v = 0;
        if (!parse_int(l.text, v)) parse_error(l.number, "bad integer for '" + key + "'");
        return v;
    };
    const auto p = as_int("p"), M = as_int("M");
    if (p < 5 || !is_prime(static_cast<std::uint64_t>(p))) parse_error(need("p").number, "p must be a prime >= 5");
    const Ring* R = nullptr;
    try {
        R = &Ring::get(static_cast<std::uint64_t>(p), static_cast<int>(M));
    } catch (const Error& e) {
        parse_error(need("M").number, e.what());
    }
    EigenFile out;
    EigenData& e = out.data;
    if (kv.count("label")) e.label = kv.at("label").text;
    e.N = static_cast<int>(as_int("N"));
    e.k = static_cast<int>(as_int("k"));
    if (e.N < 1 || e.k < 1) parse_error(need("k").number, "N and k must be positive");
    e.a_p = parse_coefficient(*R, need("a_p").text, need("a_p").number);
    e.chi_p = parse_coefficient(*R, need("chi_p").text, need("chi_p").number);
    const bool has_a = kv.count("alpha") > 0, has_b = kv.count("beta") > 0;
    if (has_a != has_b) parse_error(last, "alpha and beta must be given together");
    if (has_a) {
        e.alpha = parse_coefficient(*R, kv.at("alpha").text, kv.at("alpha").number);
        e.beta = parse_coefficient(*R, kv.at("beta").text, kv.at("beta").number);
    } else {
        HeckeRoots r = hecke_roots(e.a_p, e.chi_p, e.k);
        e.alpha = r.alpha;
        e.beta = r.beta;
    }
    e.validate();
    // a residue mod p^M carries fewer relative digits than chi p^(k-1) / (other root)
    if (has_a && !e.alpha.is_zero() && !e.beta.is_zero()) {
        const PadicNum c = e.chi_p * PadicNum::from_int(*R, 1).shift(e.k - 1);
        const PadicNum beta = c / e.alpha, alpha = c / e.beta;
        if (beta.abs_prec() > e.beta.abs_prec()) e.beta = beta;
        if (alpha.abs_prec() > e.alpha.abs_prec()) e.alpha = alpha;
    }
    if (kv.count("coeffs")) out.coeffs_path = kv.at("coeffs").text;
    return out;
}

std::string serialize_eigendata(const EigenData& e, const std::optional<std::string>& coeffs_path) {
    const Ring& R = *e.a_p.ring();
    const int M = R.cap();
    std::ostringstream out;
    if (!e.label.empty()) out << "label=" << e.label << '\n';
    out << "p=" << R.p() << '\n'
        << "M=" << M << '\n'
        << "N=" << e.N << '\n'
        << "k=" << e.k << '\n'
        << "a_p=" << format_padic(e.a_p, M) << '\n'
        << "chi_p=" << format_padic(e.chi_p, M) << '\n'
        << "alpha=" << format_padic(e.alpha, M) << '\n'
        << "beta=" << format_padic(e.beta, M) << '\n';
    if (coeffs_path) out << "coeffs=" << *coeffs_path << '\n';
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Input, "io.open", "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Input, "io.open", "cannot write " + path);
    out << text;
}

}  // namespace tripleq
