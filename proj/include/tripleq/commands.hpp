#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tripleq {

struct RunConfig {
    std::string command;
    // when set, p, M and Q must match the headers of the input files
    std::optional<std::uint64_t> p;
    std::optional<int> M;
    std::optional<int> Q;
    std::optional<int> cmp_prec;  // defaults to M - 2
    std::uint64_t seed = 1;
    std::vector<std::string> inputs;
    std::optional<std::string> output;
    std::map<std::string, std::string> params;  // positional key=value arguments
};

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitInput = 2, kExitPrecision = 3 };

struct Report {
    std::vector<std::pair<std::string, std::string>> fields;
    int exit_code = kExitPass;

    void add(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }
    // key=value lines in insertion order
    std::string text() const;
};

const std::vector<std::string>& command_names();

// never throws for library errors; they become error fields and exit codes 1-3
Report run_command(const RunConfig& cfg);

}  // namespace tripleq
