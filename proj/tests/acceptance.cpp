// One PASS/FAIL line per acceptance criterion.
//
//   acceptance <path to tripleq_cli> <data directory>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "tripleq/io.hpp"
#include "tripleq/suites.hpp"

using namespace tripleq;

namespace {

int failures = 0;

void line(int number, const std::string& what, bool ok, const std::string& detail, const std::string& witness = "") {
    std::cout << "[" << number << "] " << (ok ? "PASS" : "FAIL") << "  " << what;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    if (!ok && !witness.empty()) std::cout << "  witness: " << witness;
    std::cout << std::endl;
    failures += !ok;
}

std::string extra(const SuiteResult& r, const std::string& key) {
    for (const auto& [k, v] : r.extra)
        if (k == key) return v;
    return "?";
}

std::string seconds(double s) {
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << s << " s";
    return out.str();
}

struct Spawned {
    int status = -1;
    std::string output;
    double seconds = 0;
};

Spawned spawn(const std::string& command) {
    Spawned out;
    const auto start = std::chrono::steady_clock::now();
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.output.append(buf, n);
    const int raw = pclose(pipe);
    out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

bool fixture_round_trips(const std::string& data_dir, std::string& witness) {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(data_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string path = entry.path().string(), text = read_file(path);
        const std::string ext = entry.path().extension().string();
        std::string back;
        if (ext == ".qexp") {
            const QexpFile f = parse_qexp(text);
            back = serialize_qexp(f.series, f.weight);
        } else if (ext == ".eig") {
            const EigenFile f = parse_eigendata(text);
            back = serialize_eigendata(f.data, f.coeffs_path);
        } else if (ext == ".txt") {
            back = serialize_matrix(parse_matrix(text));
        } else {
            continue;
        }
        if (back != text) {
            witness = path;
            return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <tripleq_cli> <data dir>\n";
        return 2;
    }
    const std::string cli = argv[1], data = argv[2];

    SuiteSizes s;  // p = 5, M = 10, Q = 200, comparison mod p^8
    {
        auto [lemma, slotwise] = lemma_suites(s);
        const std::string grid = extra(lemma, "triples") + " balanced triples x " + extra(lemma, "draws_per_triple") +
                                 " draws, p=5 M=10 Q=200 mod p^8, " + seconds(lemma.seconds);
        line(1, "lemma: both sides agree after the overconvergent projection", lemma.pass && lemma.seconds < 60,
             grid + ", limit 60 s", lemma.witness);
        line(2, "lemma slot by slot before the projection", slotwise.pass, grid, slotwise.witness);
    }
    {
        const SuiteResult r = coefficient_identity_suite(6, 13);
        line(3, "integer coefficient identity for t <= 6, b - 1 <= 12", r.pass,
             std::to_string(r.checks) + " checks, spot value t=2 j=1 b=3 -> " + extra(r, "spot_t2_j1_b3"), r.witness);
    }
    {
        const SuiteResult r = nabla_suite(s);
        line(4, "nabla powers: semigroup law and integer specialization", r.pass,
             std::to_string(s.nabla_trials) + " inputs, semigroup mod p^" + extra(r, "semigroup_prec") +
                 ", integer powers mod p^" + extra(r, "integer_prec"),
             r.witness);
    }
    {
        const SuiteResult r = hdagger_suite(s);
        line(5, "overconvergent projection kills connection images; fil-0 identity", r.pass,
             extra(r, "accepted") + " elements mod p^8, " + extra(r, "rejected") +
                 " draws rejected for predicted precision loss",
             r.witness);
    }
    {
        const SuiteResult r = algebra_suite(s);
        line(6, "operator algebra UV = id, U deplete = 0, deplete idempotent, theta^t theta^-t = id", r.pass,
             std::to_string(s.algebra_trials) + " series each at precision", r.witness);
    }
    {
        const SuiteResult r = slope_suite(s);
        line(7, "slope projector, Newton slopes and pairing lemma", r.pass,
             std::to_string(s.slope_matrices) + " matrices n <= 6 at M=" + extra(r, "slope_M") + " mod p^" +
                 extra(r, "tolerance") + ", " + extra(r, "pairing_applicable") + "/" +
                 std::to_string(s.pairing_systems) + " pairing systems",
             r.witness);
    }
    {
        const SuiteResult r = euler_suite(s);
        line(8, "Euler factors: two formulations agree exactly; assembly round trip", r.pass,
             std::to_string(s.euler_triples) + " triples in exact rationals, round trip mod p^8 at M=" +
                 extra(r, "working_M") + ", " + extra(r, "exceptional") + " exceptional",
             r.witness);
    }
    {
        SuiteSizes f = s;
        f.format_trials = 100;
        const SuiteResult formats = format_suite(f);
        std::string fixture_witness;
        const bool fixtures = fixture_round_trips(data, fixture_witness);

        const Spawned first = spawn("\"" + cli + "\" selftest");
        const Spawned second = spawn("\"" + cli + "\" selftest");
        const std::string lemma_cmd = "\"" + cli + "\" lemma-check --in \"" + data + "/lemma/g.qexp\" --in \"" + data +
                                      "/lemma/h.qexp\" y=4 z=4 t=1";
        const Spawned lemma_a = spawn(lemma_cmd), lemma_b = spawn(lemma_cmd);

        const bool selftest_ok = first.status == 0 && first.seconds < 120;
        const bool deterministic = first.output == second.output && lemma_a.output == lemma_b.output &&
                                   lemma_a.status == 0;
        std::string witness;
        if (!formats.pass) witness = formats.witness;
        else if (!fixtures) witness = "fixture " + fixture_witness;
        else if (!selftest_ok) witness = "selftest exit " + std::to_string(first.status);
        else if (!deterministic) witness = "reports differ between runs";
        line(9, "CLI: byte-identical round trips, deterministic reports, selftest exits 0",
             formats.pass && fixtures && selftest_ok && deterministic,
             std::to_string(formats.checks) + " random files and the bundled fixtures, selftest " +
                 seconds(first.seconds) + ", limit 120 s",
             witness);
    }
    return failures ? 1 : 0;
}
