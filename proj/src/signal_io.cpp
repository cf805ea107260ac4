#include "wavesyn/signal_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace wavesyn {

std::vector<double> read_signal(const std::string& path, int csv_column) {
    std::ifstream is(path);
    if (!is) throw DataError("cannot open: " + path);
    std::vector<double> out;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::string field = line;
        if (csv_column >= 0) {
            std::stringstream ss(line);
            for (int i = 0; i <= csv_column; ++i) {
                if (!std::getline(ss, field, ','))
                    throw DataError(path + ":" + std::to_string(lineno) +
                                    ": missing column " + std::to_string(csv_column));
            }
        }
        try {
            size_t used = 0;
            const double v = std::stod(field, &used);
            if (field.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument("trailing junk");
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
            out.push_back(v);
        } catch (const std::exception&) {
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": not a finite number: '" + field + "'");
        }
    }
    return out;
}

void write_signal(const std::string& path, const std::vector<double>& f) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot open for writing: " + path);
    os << std::setprecision(17);
    for (double v : f) os << v << '\n';
}

std::vector<double> pad_to_pow2(std::vector<double> f) {
    std::int64_t n = 1;
    while (n < static_cast<std::int64_t>(f.size())) n *= 2;
    f.resize(n, 0.0);
    return f;
}

void write_coefficients_csv(const std::string& path, const CoefficientVector& c) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot open for writing: " + path);
    os << std::setprecision(17) << "flat_index,level,shift,value\n";
    for (std::int64_t flat = 1; flat <= c.n; ++flat) {
        const WaveletIndex idx = WaveletIndex::from_flat(flat, c.n);
        os << flat << ',' << idx.level << ',' << idx.shift << ','
           << c.values[flat - 1] << '\n';
    }
}

std::vector<double> gen_saw(std::int64_t n, std::int64_t period) {
    if (n < 1 || period < 1)
        throw std::invalid_argument("saw length and period must be positive");
    std::vector<double> f(n);
    for (std::int64_t i = 0; i < n; ++i)
        f[i] = static_cast<double>(i % period);
    return f;
}

}  // namespace wavesyn
