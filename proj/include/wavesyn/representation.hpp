#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wavesyn/transform.hpp"

namespace wavesyn {

/// Sparse B-term solution: distinct basis indices with real values,
/// interpreted under the stated scaling tag (a-scaled terms are
/// synthesized with the b-scaled basis).
struct Representation {
    std::int64_t n = 0;
    std::string basis = "haar";
    Scaling scaling = Scaling::Orthonormal;
    double p = 2.0;   // norm the representation was optimized for
    int budget = 0;   // B
    std::vector<std::pair<WaveletIndex, double>> terms;  // sorted by flat
    double reported_error = 0.0;

    void sort_terms();
};

/// Dense signal synthesized from the representation's terms.
std::vector<double> reconstruct(const Representation& rep, const FilterBank& fb);

/// Text format: header "n basis scaling p B", then "flat value" lines
/// ordered by flat index.  Writing is deterministic; reading validates
/// indices and value count.
void write_representation(std::ostream& os, const Representation& rep);
Representation read_representation(std::istream& is);
void write_representation_file(const std::string& path, const Representation& rep);
Representation read_representation_file(const std::string& path);

}  // namespace wavesyn
