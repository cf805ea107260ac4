#include "wavesyn/error_metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace wavesyn {

double conjugate_exponent(double p) {
    if (p < 1.0) throw std::invalid_argument("p must be >= 1");
    if (p == 1.0) return kInf;
    if (p == kInf) return 1.0;
    return p / (p - 1.0);
}

Weights Weights::make(std::vector<double> w) {
    if (w.empty()) throw std::invalid_argument("weights must be non-empty");
    double sum = 0.0, lo = w[0], hi = w[0];
    for (double v : w) {
        if (!(v > 0.0) || v > 1.0)
            throw std::invalid_argument("weights must satisfy 0 < w_i <= 1");
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("weights must sum to 1");
    Weights out;
    out.w = std::move(w);
    out.wmax = hi;
    out.wmin = lo;
    return out;
}

namespace {

double accumulate(const std::vector<double>& f, const std::vector<double>* fhat,
                  double p, const Weights* weights) {
    if (weights && weights->w.size() != f.size())
        throw std::invalid_argument("weights length mismatch");
    if (fhat && fhat->size() != f.size())
        throw std::invalid_argument("signal length mismatch");
    if (p == kInf) {
        double m = 0.0;
        for (size_t i = 0; i < f.size(); ++i) {
            double d = std::abs(f[i] - (fhat ? (*fhat)[i] : 0.0));
            if (weights) d *= weights->w[i];
            m = std::max(m, d);
        }
        return m;
    }
    double acc = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
        double d = std::abs(f[i] - (fhat ? (*fhat)[i] : 0.0));
        if (weights) d *= weights->w[i];
        acc += std::pow(d, p);
    }
    return std::pow(acc, 1.0 / p);
}

}  // namespace

double lp_error(const std::vector<double>& f, const std::vector<double>& fhat,
                double p, const Weights* weights) {
    if (p < 1.0) throw std::invalid_argument("p must be >= 1");
    return accumulate(f, &fhat, p, weights);
}

double lp_norm(const std::vector<double>& v, double p, const Weights* weights) {
    if (p < 1.0) throw std::invalid_argument("p must be >= 1");
    return accumulate(v, nullptr, p, weights);
}

}  // namespace wavesyn
