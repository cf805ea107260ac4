#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavesyn/transform.hpp"

namespace wavesyn {

/// Raised for malformed input files; messages name the offending line.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads one finite real per line, or column `csv_column` (0-based) of
/// a comma-separated file when csv_column >= 0.  Blank lines and lines
/// starting with '#' are skipped.
std::vector<double> read_signal(const std::string& path, int csv_column = -1);

void write_signal(const std::string& path, const std::vector<double>& f);

/// Zero-pads to the next power of two (no-op if already one).
std::vector<double> pad_to_pow2(std::vector<double> f);

/// CSV dump "flat_index,level,shift,value" of a full transform.
void write_coefficients_csv(const std::string& path, const CoefficientVector& c);

/// Saw generator: f[i] = i mod period.
std::vector<double> gen_saw(std::int64_t n, std::int64_t period);

}  // namespace wavesyn
