#pragma once

#include <complex>
#include <limits>

#include "rankone/rng.hpp"
#include "rankone/spectral.hpp"
#include "rankone/symbolic.hpp"

namespace rankone {

struct PowerIterationOptions {
    double rel_tol = 1e-6;
    int max_iters = 600;
    std::uint64_t seed = 20240501;
};

struct MultiplierNormResult {
    double norm = 0.0;
    int iters = 0;
    bool converged = false;
};

class PowerIterationError : public std::runtime_error {
public:
    PowerIterationError(double last, int iters)
        : std::runtime_error("power iteration did not converge; last iterate " +
                             std::to_string(last) + " after " + std::to_string(iters) +
                             " iterations"),
          last_norm(last),
          iterations(iters) {}
    double last_norm;
    int iterations;
};

// Batched power iteration for the operator norms of T_c = P_left M_c P_right
// on the grid, one multiplier per column. Iterates H = T T* on normalized
// complex vectors; a column is frozen once the eigenvalue estimate is stable
// twice in a row at the relative tolerance. Starting vectors are drawn from
// per-column deterministic streams, so batched and one-at-a-time runs agree.
inline std::vector<MultiplierNormResult> multiplier_norms_batch(
    const std::vector<Eigen::VectorXcd>& multipliers, const GridOperator& p_left,
    const GridOperator& p_right, const PowerIterationOptions& opt) {
    const long n = p_left.size;
    const int k = int(multipliers.size());
    std::vector<MultiplierNormResult> results(k);
    if (k == 0) return results;

    Eigen::MatrixXd vre(n, k), vim(n, k);
    Eigen::MatrixXd mre(n, k), mim(n, k);
    for (int c = 0; c < k; ++c) {
        if (multipliers[c].size() != n)
            throw std::invalid_argument("multiplier_norms_batch: size mismatch");
        mre.col(c) = multipliers[c].real();
        mim.col(c) = multipliers[c].imag();
        auto rng = seeded_rng(opt.seed, std::uint64_t(c) + 1);
        std::normal_distribution<double> nd(0.0, 1.0);
        for (long i = 0; i < n; ++i) {
            vre(i, c) = nd(rng);
            vim(i, c) = nd(rng);
        }
        const double nv = std::sqrt(vre.col(c).squaredNorm() + vim.col(c).squaredNorm());
        vre.col(c) /= nv;
        vim.col(c) /= nv;
    }

    std::vector<int> active(k);
    for (int c = 0; c < k; ++c) active[c] = c;
    std::vector<double> lambda_prev(k, -1.0);
    std::vector<int> streak(k, 0);

    auto scale_cols = [](Eigen::MatrixXd& re, Eigen::MatrixXd& im, const Eigen::MatrixXd& cr,
                         const Eigen::MatrixXd& ci, const std::vector<int>& cols, bool conjugate) {
        for (std::size_t a = 0; a < cols.size(); ++a) {
            const int c = cols[a];
            Eigen::ArrayXd wr = re.col(a).array(), wi = im.col(a).array();
            const Eigen::ArrayXd r = cr.col(c).array();
            Eigen::ArrayXd i = ci.col(c).array();
            if (conjugate) i = -i;
            re.col(a) = r * wr - i * wi;
            im.col(a) = r * wi + i * wr;
        }
    };

    for (int iter = 1; !active.empty() && iter <= opt.max_iters; ++iter) {
        const int ka = int(active.size());
        Eigen::MatrixXd wre(n, ka), wim(n, ka);
        for (int a = 0; a < ka; ++a) {
            wre.col(a) = vre.col(active[a]);
            wim.col(a) = vim.col(active[a]);
        }
        // H v with T = L M R: v -> L (M (R (R (conj(M) (L v)))))
        wre = p_left.apply(wre);
        wim = p_left.apply(wim);
        scale_cols(wre, wim, mre, mim, active, true);
        wre = p_right.apply(wre);
        wim = p_right.apply(wim);
        wre = p_right.apply(wre);
        wim = p_right.apply(wim);
        scale_cols(wre, wim, mre, mim, active, false);
        wre = p_left.apply(wre);
        wim = p_left.apply(wim);

        std::vector<int> still;
        still.reserve(active.size());
        for (int a = 0; a < ka; ++a) {
            const int c = active[a];
            const double lam = std::sqrt(wre.col(a).squaredNorm() + wim.col(a).squaredNorm());
            if (lam < 1e-300) {
                results[c] = {0.0, iter, true};
                continue;
            }
            vre.col(c) = wre.col(a) / lam;
            vim.col(c) = wim.col(a) / lam;
            const bool stable = lambda_prev[c] >= 0.0 &&
                                std::abs(lam - lambda_prev[c]) <= opt.rel_tol * lam;
            streak[c] = stable ? streak[c] + 1 : 0;
            lambda_prev[c] = lam;
            if (streak[c] >= 2) {
                results[c] = {std::sqrt(lam), iter, true};
            } else {
                results[c].norm = std::sqrt(lam);
                results[c].iters = iter;
                still.push_back(c);
            }
        }
        active = std::move(still);
    }
    for (int c : active) results[c].converged = false;
    return results;
}

// Spectral norm of (1+Delta)^{alpha/2} M_m (1+Delta)^{-alpha/2}.
inline MultiplierNormResult multiplier_norm(const Eigen::VectorXcd& m, const SobolevScale& scale,
                                            double alpha, const PowerIterationOptions& opt = {},
                                            bool throw_on_failure = true) {
    const GridOperator p = scale.power(alpha);
    const GridOperator pinv = scale.power(-alpha);
    auto r = multiplier_norms_batch({m}, p, pinv, opt);
    if (!r[0].converged && throw_on_failure)
        throw PowerIterationError(r[0].norm, r[0].iters);
    return r[0];
}

// Multiplier values chi(p) (B_t(p)^{ib} B(p)^{-ib}) on the grid nodes, with
// the phase computed from log B_t - log B.
template <class F, class Cutoff>
Eigen::VectorXcd oscillatory_multiplier_values(const Grid& grid, const Cutoff& chi, double t,
                                               double b) {
    const long N = grid.nodes();
    Eigen::VectorXcd m(N);
    for (long i = 0; i < N; ++i) {
        const auto p = grid.node_point<F>(i);
        const double c = chi(p);
        if (c == 0.0) {
            m[i] = 0.0;
            continue;
        }
        const double phase = b * (std::log(Bt(p, t)) - std::log(B(p)));
        m[i] = std::polar(c, phase);
    }
    return m;
}

struct ScanPoint {
    double t = 0.0;
    double b = 0.0;
    double norm = 0.0;
    int iters = 0;
    bool converged = false;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    int points = 0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit f;
    f.points = int(xs.size());
    if (xs.size() < 2) return f;
    const double nx = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = nx * sxx - sx * sx;
    if (det == 0.0) return f;
    f.slope = (nx * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / nx;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (f.intercept + f.slope * xs[i]);
        rss += r * r;
    }
    f.rms_residual = std::sqrt(rss / nx);
    return f;
}

struct GrowthScanResult {
    std::vector<ScanPoint> points; // t-major, then b
    double beta_b = 0.0;           // max over t of d log(norm) / d log(1+b)
    double slope_t = 0.0;          // max over b of d log(norm) / d t, upper half of t_list
    std::vector<LineFit> fits_b;   // one per t
    std::vector<LineFit> fits_t;   // one per b (upper half of t_list)
};

// Norm scan of the multipliers chi B_t^{ib} B^{-ib} over a (t, b) grid at a
// fixed Sobolev exponent, batched per t across the b-list. Each (t, b) pair
// draws its power-iteration start from its own stream, so results do not
// depend on the batching.
template <class F, class Cutoff>
GrowthScanResult growth_scan(const Grid& grid, const Cutoff& chi, const std::vector<double>& t_list,
                             const std::vector<double>& b_list, double alpha,
                             const SobolevScale& scale, const PowerIterationOptions& opt = {}) {
    GrowthScanResult out;
    const GridOperator p = scale.power(alpha);
    const GridOperator pinv = scale.power(-alpha);

    for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
        std::vector<Eigen::VectorXcd> cols;
        cols.reserve(b_list.size());
        for (double b : b_list)
            cols.push_back(oscillatory_multiplier_values<F>(grid, chi, t_list[ti], b));
        PowerIterationOptions pair_opt = opt;
        pair_opt.seed = splitmix64(opt.seed ^ (0x5CA1AB1Eull + ti));
        const auto res = multiplier_norms_batch(cols, p, pinv, pair_opt);
        for (std::size_t bi = 0; bi < b_list.size(); ++bi)
            out.points.push_back({t_list[ti], b_list[bi], res[bi].norm, res[bi].iters,
                                  res[bi].converged});
    }

    // fitted growth exponent in b at each t
    for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
        std::vector<double> xs, ys;
        for (std::size_t bi = 0; bi < b_list.size(); ++bi) {
            const auto& pt = out.points[ti * b_list.size() + bi];
            if (pt.norm > 0) {
                xs.push_back(std::log1p(std::abs(pt.b)));
                ys.push_back(std::log(pt.norm));
            }
        }
        out.fits_b.push_back(fit_line(xs, ys));
    }
    for (const auto& f : out.fits_b)
        if (f.points >= 2) out.beta_b = std::max(out.beta_b, f.slope);

    // growth in t over the upper half of the t-list at each b
    const std::size_t t_from = t_list.size() / 2;
    for (std::size_t bi = 0; bi < b_list.size(); ++bi) {
        std::vector<double> xs, ys;
        for (std::size_t ti = t_from; ti < t_list.size(); ++ti) {
            const auto& pt = out.points[ti * b_list.size() + bi];
            if (pt.norm > 0) {
                xs.push_back(pt.t);
                ys.push_back(std::log(pt.norm));
            }
        }
        out.fits_t.push_back(fit_line(xs, ys));
    }
    bool any_t_fit = false;
    for (const auto& f : out.fits_t) {
        if (f.points < 2) continue;
        out.slope_t = any_t_fit ? std::max(out.slope_t, f.slope) : f.slope;
        any_t_fit = true;
    }

    return out;
}

struct AnnulusScanResult {
    std::vector<ScanPoint> points;
    double max_min_ratio = 0.0;
};

// t-scan of the annulus-localized multiplier at fixed b; away from the
// singular point the norms should stay within a bounded band.
template <class F, class Cutoff>
AnnulusScanResult annulus_boundedness(const Grid& grid, const Cutoff& psi,
                                      const std::vector<double>& t_list, double b, double alpha,
                                      const SobolevScale& scale,
                                      const PowerIterationOptions& opt = {}) {
    AnnulusScanResult out;
    const GridOperator p = scale.power(alpha);
    const GridOperator pinv = scale.power(-alpha);
    std::vector<Eigen::VectorXcd> cols;
    for (double t : t_list) cols.push_back(oscillatory_multiplier_values<F>(grid, psi, t, b));
    const auto res = multiplier_norms_batch(cols, p, pinv, opt);
    double lo = 1e300, hi = 0.0;
    for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
        out.points.push_back({t_list[ti], b, res[ti].norm, res[ti].iters, res[ti].converged});
        lo = std::min(lo, res[ti].norm);
        hi = std::max(hi, res[ti].norm);
    }
    out.max_min_ratio = lo > 0 ? hi / lo : (hi > 0 ? std::numeric_limits<double>::infinity() : 1.0);
    return out;
}

} // namespace rankone
