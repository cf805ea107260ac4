#include "wavesyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavesyn/error_metrics.hpp"

namespace wavesyn {

namespace {

// Dense two-phase simplex for: minimize c.x  s.t.  A x >= b, x >= 0.
// Tiny instances only (tens of rows/columns); Bland's rule, so no
// cycling.  Returns the optimum value; fills x.
class SimplexLP {
  public:
    SimplexLP(std::vector<std::vector<double>> A, std::vector<double> b,
              std::vector<double> c)
        : A_(std::move(A)), b_(std::move(b)), c_(std::move(c)) {}

    double solve(std::vector<double>& x) {
        const int m = static_cast<int>(A_.size());
        const int nv = static_cast<int>(c_.size());
        // Equality form: A x - s = b; rows with negative rhs are negated
        // so every rhs is non-negative, then one artificial per row.
        const int cols = nv + m + m;  // vars, surplus, artificial
        T_.assign(m + 1, std::vector<double>(cols + 1, 0.0));
        basis_.assign(m, 0);
        for (int i = 0; i < m; ++i) {
            const double sign = b_[i] < 0 ? -1.0 : 1.0;
            for (int j = 0; j < nv; ++j) T_[i][j] = sign * A_[i][j];
            T_[i][nv + i] = -sign;          // surplus
            T_[i][nv + m + i] = 1.0;        // artificial
            T_[i][cols] = sign * b_[i];
            basis_[i] = nv + m + i;
        }
        // Phase 1: minimize the artificial sum.
        for (int j = 0; j <= cols; ++j) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += T_[i][j];
            T_[m][j] = -s;  // reduced costs of min sum(artificials)
        }
        for (int i = 0; i < m; ++i) T_[m][nv + m + i] = 0.0;
        run(cols, nv + m + m);
        if (T_[m][cols] < -1e-7)
            throw std::runtime_error("LP infeasible (unexpected)");
        // Phase 2: original objective, artificials barred from entering.
        for (int j = 0; j <= cols; ++j) T_[m][j] = 0.0;
        for (int j = 0; j < nv; ++j) T_[m][j] = c_[j];
        for (int i = 0; i < m; ++i) {
            const double cb = basis_[i] < nv ? c_[basis_[i]] : 0.0;
            if (cb != 0.0)
                for (int j = 0; j <= cols; ++j) T_[m][j] -= cb * T_[i][j];
        }
        run(cols, nv + m);  // artificial columns excluded
        x.assign(nv, 0.0);
        for (int i = 0; i < m; ++i)
            if (basis_[i] < nv) x[basis_[i]] = T_[i][cols];
        return -T_[m][cols];
    }

  private:
    void run(int cols, int enter_limit) {
        const int m = static_cast<int>(basis_.size());
        for (int iter = 0; iter < 20000; ++iter) {
            int pivot_col = -1;
            for (int j = 0; j < enter_limit; ++j) {  // Bland: first improving
                if (T_[m][j] < -1e-9) {
                    pivot_col = j;
                    break;
                }
            }
            if (pivot_col < 0) return;
            int pivot_row = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m; ++i) {
                if (T_[i][pivot_col] > 1e-9) {
                    const double ratio = T_[i][cols] / T_[i][pivot_col];
                    if (pivot_row < 0 || ratio < best_ratio - 1e-12 ||
                        (std::abs(ratio - best_ratio) <= 1e-12 &&
                         basis_[i] < basis_[pivot_row])) {
                        pivot_row = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (pivot_row < 0)
                throw std::runtime_error("LP unbounded (unexpected)");
            pivot(pivot_row, pivot_col, cols);
        }
        throw std::runtime_error("LP iteration limit exceeded");
    }

    void pivot(int pr, int pc, int cols) {
        const int m = static_cast<int>(basis_.size());
        const double pv = T_[pr][pc];
        for (int j = 0; j <= cols; ++j) T_[pr][j] /= pv;
        for (int i = 0; i <= m; ++i) {
            if (i == pr) continue;
            const double factor = T_[i][pc];
            if (factor != 0.0)
                for (int j = 0; j <= cols; ++j) T_[i][j] -= factor * T_[pr][j];
        }
        basis_[pr] = pc;
    }

    std::vector<std::vector<double>> A_;
    std::vector<double> b_;
    std::vector<double> c_;
    std::vector<std::vector<double>> T_;
    std::vector<int> basis_;
};

// Minimize ||f - Psi z||_inf over z via LP (variables z split into
// positive and negative parts plus the bound t).
double solve_linf(const std::vector<double>& f,
                  const std::vector<std::vector<double>>& psi,
                  std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    const int k = static_cast<int>(psi.size());
    const int nv = 2 * k + 1;  // z+, z-, t
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (int i = 0; i < n; ++i) {
        std::vector<double> row1(nv, 0.0), row2(nv, 0.0);
        for (int j = 0; j < k; ++j) {
            row1[j] = psi[j][i];
            row1[k + j] = -psi[j][i];
            row2[j] = -psi[j][i];
            row2[k + j] = psi[j][i];
        }
        row1[2 * k] = 1.0;  // t + (Psi z)_i >= f_i
        row2[2 * k] = 1.0;  // t - (Psi z)_i >= -f_i
        A.push_back(std::move(row1));
        b.push_back(f[i]);
        A.push_back(std::move(row2));
        b.push_back(-f[i]);
    }
    std::vector<double> c(nv, 0.0);
    c[2 * k] = 1.0;
    std::vector<double> x;
    const double opt = SimplexLP(std::move(A), std::move(b), std::move(c)).solve(x);
    z.resize(k);
    for (int j = 0; j < k; ++j) z[j] = x[j] - x[k + j];
    return std::max(opt, 0.0);
}

// Minimize ||f - Psi z||_1 over z via LP (per-point deviation bounds u_i).
double solve_l1(const std::vector<double>& f,
                const std::vector<std::vector<double>>& psi,
                std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    const int k = static_cast<int>(psi.size());
    const int nv = 2 * k + n;  // z+, z-, u
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (int i = 0; i < n; ++i) {
        std::vector<double> row1(nv, 0.0), row2(nv, 0.0);
        for (int j = 0; j < k; ++j) {
            row1[j] = psi[j][i];
            row1[k + j] = -psi[j][i];
            row2[j] = -psi[j][i];
            row2[k + j] = psi[j][i];
        }
        row1[2 * k + i] = 1.0;  // u_i + (Psi z)_i >= f_i
        row2[2 * k + i] = 1.0;  // u_i - (Psi z)_i >= -f_i
        A.push_back(std::move(row1));
        b.push_back(f[i]);
        A.push_back(std::move(row2));
        b.push_back(-f[i]);
    }
    std::vector<double> c(nv, 0.0);
    for (int i = 0; i < n; ++i) c[2 * k + i] = 1.0;
    std::vector<double> x;
    const double opt = SimplexLP(std::move(A), std::move(b), std::move(c)).solve(x);
    z.resize(k);
    for (int j = 0; j < k; ++j) z[j] = x[j] - x[k + j];
    return std::max(opt, 0.0);
}

double objective(const std::vector<double>& f,
                 const std::vector<std::vector<double>>& psi,
                 const std::vector<double>& z, double p) {
    std::vector<double> fhat(f.size(), 0.0);
    for (size_t j = 0; j < psi.size(); ++j)
        for (size_t i = 0; i < f.size(); ++i) fhat[i] += z[j] * psi[j][i];
    return lp_error(f, fhat, p);
}

// Golden-section minimization of a convex 1D function on [lo, hi].
template <class F>
double golden_min(const F& fn, double lo, double hi, double tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = fn(x2);
        }
    }
    return 0.5 * (a + b);
}

// Cyclic coordinate minimization for smooth p (1 < p < inf).
double solve_smooth(const std::vector<double>& f,
                    const std::vector<std::vector<double>>& psi,
                    double p, std::vector<double>& z) {
    const int k = static_cast<int>(psi.size());
    z.assign(k, 0.0);
    double range = 1.0;
    for (double v : f) range = std::max(range, 2.0 * std::abs(v));
    double cur = objective(f, psi, z, p);
    for (int sweep = 0; sweep < 500; ++sweep) {
        const double before = cur;
        for (int j = 0; j < k; ++j) {
            const double zj = z[j];
            auto fn = [&](double t) {
                z[j] = t;
                return objective(f, psi, z, p);
            };
            const double best =
                golden_min(fn, zj - range, zj + range, 1e-10 * range);
            z[j] = best;
            cur = objective(f, psi, z, p);
            (void)zj;
        }
        if (before - cur < 1e-12) break;
    }
    return cur;
}

void enumerate_supports(std::int64_t n, int B,
                        const std::function<void(const std::vector<std::int64_t>&)>& fn) {
    std::vector<std::int64_t> support;
    std::function<void(std::int64_t)> rec = [&](std::int64_t start) {
        fn(support);
        if (static_cast<int>(support.size()) == B) return;
        for (std::int64_t flat = start; flat <= n; ++flat) {
            support.push_back(flat);
            rec(flat + 1);
            support.pop_back();
        }
    };
    rec(1);
}

void check_caps(std::int64_t n, int B) {
    if (n > kOracleCapN || B > kOracleCapB)
        throw std::invalid_argument("oracle capped at n <= 16, B <= 4");
}

}  // namespace

double min_error_over_support(const std::vector<double>& f,
                              const std::vector<WaveletIndex>& support,
                              double p, const FilterBank& fb,
                              std::vector<double>* best_values) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    std::vector<std::vector<double>> psi;
    for (const WaveletIndex& idx : support)
        psi.push_back(basis_vector(idx, n, fb, Scaling::Orthonormal));

    std::vector<double> z;
    double err;
    if (support.empty()) {
        err = lp_norm(f, p);
    } else if (p == 2.0) {
        z.resize(psi.size());
        std::vector<double> resid = f;
        for (size_t j = 0; j < psi.size(); ++j) {
            double dot = 0.0;
            for (std::int64_t i = 0; i < n; ++i) dot += f[i] * psi[j][i];
            z[j] = dot;
            for (std::int64_t i = 0; i < n; ++i) resid[i] -= dot * psi[j][i];
        }
        err = lp_norm(resid, 2.0);
    } else if (p == kInf) {
        err = solve_linf(f, psi, z);
    } else if (p == 1.0) {
        err = solve_l1(f, psi, z);
    } else {
        err = solve_smooth(f, psi, p, z);
    }
    if (best_values) *best_values = z;
    return err;
}

OracleResult brute_force_unrestricted(const std::vector<double>& f, int B,
                                      double p, const FilterBank& fb) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    log2_exact(n);
    check_caps(n, B);
    OracleResult best;
    best.error = kInf;
    enumerate_supports(n, B, [&](const std::vector<std::int64_t>& flats) {
        std::vector<WaveletIndex> support;
        for (std::int64_t flat : flats)
            support.push_back(WaveletIndex::from_flat(flat, n));
        std::vector<double> z;
        const double err = min_error_over_support(f, support, p, fb, &z);
        if (err < best.error) {
            best.error = err;
            best.support = support;
            best.values = z;
        }
    });
    return best;
}

OracleResult brute_force_restricted(const std::vector<double>& f, int B,
                                    double p, const FilterBank& fb) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    log2_exact(n);
    check_caps(n, B);
    const CoefficientVector c = cascade_forward(f, fb, Scaling::Orthonormal);
    std::vector<std::vector<double>> psi;
    for (std::int64_t flat = 1; flat <= n; ++flat)
        psi.push_back(basis_vector(WaveletIndex::from_flat(flat, n), n, fb,
                                   Scaling::Orthonormal));
    OracleResult best;
    best.error = kInf;
    enumerate_supports(n, B, [&](const std::vector<std::int64_t>& flats) {
        std::vector<double> fhat(n, 0.0);
        for (std::int64_t flat : flats)
            for (std::int64_t i = 0; i < n; ++i)
                fhat[i] += c.values[flat - 1] * psi[flat - 1][i];
        const double err = lp_error(f, fhat, p);
        if (err < best.error) {
            best.error = err;
            best.support.clear();
            best.values.clear();
            for (std::int64_t flat : flats) {
                best.support.push_back(WaveletIndex::from_flat(flat, n));
                best.values.push_back(c.values[flat - 1]);
            }
        }
    });
    return best;
}

CutOracleResult brute_force_cut(const std::vector<double>& f, int B, double p,
                                std::int64_t min_block,
                                const BlockSolver& solver) {
    const std::int64_t n = static_cast<std::int64_t>(f.size());
    log2_exact(n);
    if (n > 32) throw std::invalid_argument("cut oracle capped at n <= 32");
    if (min_block < 1 || !is_power_of_two(min_block))
        throw std::invalid_argument("min_block must be a positive power of two");

    // All cuts as lists of (start, len).
    std::function<std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>(
        std::int64_t, std::int64_t)>
        cuts = [&](std::int64_t start, std::int64_t len) {
            std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> out;
            out.push_back({{start, len}});
            if (len > min_block) {
                auto left = cuts(start, len / 2);
                auto right = cuts(start + len / 2, len / 2);
                for (const auto& a : left)
                    for (const auto& b : right) {
                        auto merged = a;
                        merged.insert(merged.end(), b.begin(), b.end());
                        out.push_back(std::move(merged));
                    }
            }
            return out;
        };

    const bool linf = p == kInf;
    auto comb = [&](double a, double b) { return linf ? std::max(a, b) : a + b; };
    auto powered = [&](double e) { return linf ? e : std::pow(e, p); };

    CutOracleResult best;
    best.error = kInf;
    for (const auto& cut : cuts(0, n)) {
        // Optimal budget split across blocks via a small DP.
        const int nb = static_cast<int>(cut.size());
        std::vector<std::vector<double>> block_err(nb,
                                                   std::vector<double>(B + 1));
        for (int i = 0; i < nb; ++i) {
            std::vector<double> block(f.begin() + cut[i].first,
                                      f.begin() + cut[i].first + cut[i].second);
            for (int b = 0; b <= B; ++b)
                block_err[i][b] =
                    powered(solver(block, std::min<std::int64_t>(b, cut[i].second)));
        }
        std::vector<std::vector<double>> D(nb + 1,
                                           std::vector<double>(B + 1, kInf));
        std::vector<std::vector<int>> pick(nb + 1, std::vector<int>(B + 1, 0));
        for (int b = 0; b <= B; ++b) D[0][b] = linf ? 0.0 : 0.0;
        for (int i = 1; i <= nb; ++i)
            for (int b = 0; b <= B; ++b)
                for (int bi = 0; bi <= b; ++bi) {
                    const double e = comb(D[i - 1][b - bi], block_err[i - 1][bi]);
                    if (e < D[i][b]) {
                        D[i][b] = e;
                        pick[i][b] = bi;
                    }
                }
        double total = D[nb][B];
        if (!linf) total = std::pow(total, 1.0 / p);
        if (total < best.error - 1e-15) {
            best.error = total;
            best.starts.clear();
            best.budgets.assign(nb, 0);
            int b = B;
            for (int i = nb; i >= 1; --i) {
                best.budgets[i - 1] = pick[i][b];
                b -= pick[i][b];
            }
            for (const auto& blk : cut) best.starts.push_back(blk.first);
        }
    }
    return best;
}

}  // namespace wavesyn
