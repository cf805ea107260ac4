#pragma once

#include <string>
#include <vector>

namespace wavesyn {

/// Conjugate mirror filter pair (h, g) for a compactly supported wavelet
/// family.  h is the low-pass filter with support {0,...,2q-1}; the
/// high-pass mirror is the alternating flip g[k] = (-1)^k h[2q-1-k].
struct FilterBank {
    std::string name;
    int q = 0;                  // half filter length
    std::vector<double> h;      // low-pass, length 2q
    std::vector<double> g;      // high-pass, derived from h

    static FilterBank haar();
    static FilterBank db2();
    static FilterBank db3();
    static FilterBank db4();

    /// Lookup by name ("haar", "db1", "db2", "db3", "db4").
    /// Throws std::invalid_argument for unknown names.
    static FilterBank by_name(const std::string& name);

    /// Checks sum(h) = sqrt(2), sum(g) = 0 and sum(h^2) = 1 to 1e-12.
    /// Throws std::invalid_argument on violation.
    void validate() const;
};

/// Builds g from h via the mirror relationship and validates.
FilterBank make_filter_bank(std::string name, std::vector<double> h);

}  // namespace wavesyn
