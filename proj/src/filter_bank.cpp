#include "wavesyn/filter_bank.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace wavesyn {

FilterBank make_filter_bank(std::string name, std::vector<double> h) {
    FilterBank fb;
    fb.name = std::move(name);
    if (h.empty() || h.size() % 2 != 0)
        throw std::invalid_argument("filter length must be a positive even number");
    fb.q = static_cast<int>(h.size() / 2);
    fb.h = std::move(h);
    const int len = 2 * fb.q;
    fb.g.resize(len);
    // Alternating flip: keeps the analysis rows mutually orthogonal
    // under circular convolution for any even filter length.
    for (int k = 0; k < len; ++k)
        fb.g[k] = (k % 2 == 0 ? 1.0 : -1.0) * fb.h[len - 1 - k];
    fb.validate();
    return fb;
}

void FilterBank::validate() const {
    double sh = 0, sg = 0, e = 0;
    for (double v : h) { sh += v; e += v * v; }
    for (double v : g) sg += v;
    if (std::abs(sh - std::sqrt(2.0)) > 1e-12)
        throw std::invalid_argument("filter '" + name + "': sum(h) != sqrt(2)");
    if (std::abs(sg) > 1e-12)
        throw std::invalid_argument("filter '" + name + "': sum(g) != 0");
    if (std::abs(e - 1.0) > 1e-12)
        throw std::invalid_argument("filter '" + name + "': sum(h^2) != 1");
}

FilterBank FilterBank::haar() {
    const double r = 1.0 / std::sqrt(2.0);
    return make_filter_bank("haar", {r, r});
}

FilterBank FilterBank::db2() {
    const double s3 = std::sqrt(3.0);
    const double d = 4.0 * std::sqrt(2.0);
    return make_filter_bank("db2",
        {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d});
}

// Minimum-phase spectral factorizations, rounded from a 60-digit
// computation so the validate() identities hold to double precision.
FilterBank FilterBank::db3() {
    return make_filter_bank("db3",
        {0.33267055295008263,
         0.8068915093110925,
         0.45987750211849154,
         -0.13501102001025458,
         -0.08544127388202666,
         0.03522629188570953});
}

FilterBank FilterBank::db4() {
    return make_filter_bank("db4",
        {0.2303778133088965,
         0.7148465705529157,
         0.6308807679298589,
         -0.027983769416859854,
         -0.18703481171909309,
         0.030841381835560764,
         0.0328830116668852,
         -0.010597401785069032});
}

FilterBank FilterBank::by_name(const std::string& name) {
    if (name == "haar" || name == "db1") return haar();
    if (name == "db2") return db2();
    if (name == "db3") return db3();
    if (name == "db4") return db4();
    throw std::invalid_argument("unknown filter bank: " + name);
}

}  // namespace wavesyn
