#pragma once

// Randomized property suites shared by the selftest command and the
// acceptance binary.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tripleq {

struct SuiteResult {
    explicit SuiteResult(std::string suite_name = "") : name(std::move(suite_name)) {}

    std::string name;
    bool pass = true;
    long checks = 0;
    std::string witness;  // the first failing case
    std::vector<std::pair<std::string, std::string>> extra;
    double seconds = 0;

    // counts a check; the witness is built only for the first failure
    void record(bool ok, const std::function<std::string()>& witness_of);
};

struct SuiteSizes {
    std::uint64_t p = 5;
    int M = 10;
    int Q = 200;
    int cmp_prec = 8;
    std::uint64_t seed = 1;

    int lemma_draws = 20;      // g per weight triple
    int max_lemma_t = 3;
    int nabla_trials = 20;
    int nabla_Q = 40;
    int hdagger_trials = 100;
    int algebra_trials = 100;
    int slope_M = 20;
    int slope_matrices = 100;
    int pairing_systems = 50;
    int euler_triples = 100;
    int euler_M = 16;  // cancellation in 1 - x can cost several digits of E0, E1, E
    int format_trials = 40;
    int padic_trials = 200;
};

// both sides of the lemma over the balanced grid: after H† (first) and slot by slot before it
std::pair<SuiteResult, SuiteResult> lemma_suites(const SuiteSizes& s);
SuiteResult coefficient_identity_suite(int max_t = 6, int max_b = 13);
SuiteResult nabla_suite(const SuiteSizes& s);
SuiteResult hdagger_suite(const SuiteSizes& s);
SuiteResult algebra_suite(const SuiteSizes& s);
SuiteResult slope_suite(const SuiteSizes& s);
SuiteResult euler_suite(const SuiteSizes& s);
SuiteResult format_suite(const SuiteSizes& s);
SuiteResult padic_suite(const SuiteSizes& s);

std::vector<SuiteResult> run_all_suites(const SuiteSizes& s);

}  // namespace tripleq
