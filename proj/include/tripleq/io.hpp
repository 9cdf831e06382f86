#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tripleq/slope.hpp"
#include "tripleq/wmodel.hpp"

namespace tripleq {

// Text formats.  Every file is line oriented; '#' starts a comment line.
//
// q-expansion:  p=5 M=10 Q=20 [weight=4] [reliable=r]
//               then Q+1 coefficients, one per line in canonical output
// W element:    p=5 M=10 Q=20 weight=4 fil=2 [weight_wild=w] [twist=t] [tail=k]
//               then fil+1 blocks of Q+1 coefficients
// matrix:       p=5 M=20 n=3, then n rows of n space-separated entries
// eigendata:    key=value lines label, p, M, N, k, a_p, chi_p, alpha, beta, coeffs
//
// A coefficient is a residue in [0, p^M) or u/p^k for a non-integral value.

std::string format_padic(const PadicNum& x, int M);
// accepts the canonical forms plus signed integers and fractions n/d
PadicNum parse_padic(const Ring& R, std::string_view text);

struct QexpFile {
    QSeries series;
    std::optional<std::int64_t> weight;
};

QexpFile parse_qexp(const std::string& text);
std::string serialize_qexp(const QSeries& f, std::optional<std::int64_t> weight = std::nullopt);

// a plain q-expansion file with a weight reads as a single-component element
WElement parse_welement(const std::string& text);
std::string serialize_welement(const WElement& w);

PadicMatrix parse_matrix(const std::string& text);
std::string serialize_matrix(const PadicMatrix& m);

struct EigenFile {
    EigenData data;
    std::optional<std::string> coeffs_path;
};

// fills in alpha and beta from a_p when they are absent, then validates
EigenFile parse_eigendata(const std::string& text);
std::string serialize_eigendata(const EigenData& e, const std::optional<std::string>& coeffs_path = std::nullopt);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace tripleq
