#include "wavesyn/representation.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "wavesyn/error_metrics.hpp"

namespace wavesyn {

void Representation::sort_terms() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first.flat < b.first.flat; });
}

std::vector<double> reconstruct(const Representation& rep, const FilterBank& fb) {
    CoefficientVector c;
    c.n = rep.n;
    c.scaling = rep.scaling;
    c.values.assign(rep.n, 0.0);
    for (const auto& [idx, value] : rep.terms) {
        if (idx.flat < 1 || idx.flat > rep.n)
            throw std::invalid_argument("representation term index out of range");
        c.values[idx.flat - 1] = value;
    }
    return cascade_inverse(c, fb);
}

namespace {

std::string p_to_string(double p) {
    if (p == kInf) return "inf";
    std::ostringstream os;
    os << std::setprecision(17) << p;
    return os.str();
}

double p_from_string(const std::string& s) {
    if (s == "inf") return kInf;
    return std::stod(s);
}

}  // namespace

void write_representation(std::ostream& os, const Representation& rep) {
    os << rep.n << ' ' << rep.basis << ' ' << to_string(rep.scaling) << ' '
       << p_to_string(rep.p) << ' ' << rep.budget << '\n';
    Representation sorted = rep;
    sorted.sort_terms();
    os << std::setprecision(17);
    for (const auto& [idx, value] : sorted.terms)
        os << idx.flat << ' ' << value << '\n';
}

Representation read_representation(std::istream& is) {
    Representation rep;
    std::string scaling, p;
    if (!(is >> rep.n >> rep.basis >> scaling >> p >> rep.budget))
        throw std::runtime_error("malformed representation header");
    rep.scaling = scaling_from_string(scaling);
    rep.p = p_from_string(p);
    std::int64_t flat;
    double value;
    while (is >> flat >> value)
        rep.terms.emplace_back(WaveletIndex::from_flat(flat, rep.n), value);
    return rep;
}

void write_representation_file(const std::string& path, const Representation& rep) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_representation(os, rep);
}

Representation read_representation_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_representation(is);
}

}  // namespace wavesyn
