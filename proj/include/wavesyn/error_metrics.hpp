#pragma once

#include <limits>
#include <vector>

namespace wavesyn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Conjugate exponent: 1 <-> inf, otherwise p/(p-1).
double conjugate_exponent(double p);

/// Per-point workload weights: 0 < w_i <= 1, sum w_i = 1 (to 1e-9).
struct Weights {
    std::vector<double> w;
    double wmax = 1.0;  // W
    double wmin = 1.0;

    /// Throws std::invalid_argument on violated invariants.
    static Weights make(std::vector<double> w);
};

/// (sum_i (w_i |f_i - fhat_i|)^p)^{1/p}; max_i w_i |f_i - fhat_i| for
/// p = inf; unweighted when weights is null.  Throws on length
/// mismatch.
double lp_error(const std::vector<double>& f, const std::vector<double>& fhat,
                double p, const Weights* weights = nullptr);

/// lp norm of a vector (lp_error against zero).
double lp_norm(const std::vector<double>& v, double p,
               const Weights* weights = nullptr);

}  // namespace wavesyn
