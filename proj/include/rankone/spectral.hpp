#pragma once

#include <Eigen/Eigenvalues>

#include "rankone/grid.hpp"

#ifdef RANKONE_USE_LAPACK
#include <lapacke.h>
#endif

namespace rankone {

struct SpectralDecomposition {
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs; // columns
};

// Dense symmetric eigendecomposition; LAPACK dsyevd when linked, Eigen
// otherwise.
inline SpectralDecomposition symmetric_eig(Eigen::MatrixXd a) {
    SpectralDecomposition d;
#ifdef RANKONE_USE_LAPACK
    const lapack_int n = lapack_int(a.rows());
    d.evals.resize(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, d.evals.data());
    if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
    d.evecs = std::move(a);
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    d.evals = es.eigenvalues();
    d.evecs = es.eigenvectors();
#endif
    return d;
}

// y ~= f(S) x for a symmetric PSD sparse S, by the Lanczos process with full
// reorthogonalization on a fixed-size Krylov space.
class LanczosFunction {
public:
    LanczosFunction(const Eigen::SparseMatrix<double>& s, int krylov = 200)
        : s_(&s), krylov_(krylov) {}

    template <class Fn>
    Eigen::VectorXd apply(const Eigen::VectorXd& x, Fn&& f) const {
        const double nx = x.norm();
        if (nx == 0.0) return x;
        const int n = int(x.size());
        const int mmax = std::min<int>(krylov_, n);
        Eigen::MatrixXd Q(n, mmax);
        Eigen::VectorXd alpha(mmax), beta(mmax);
        Q.col(0) = x / nx;
        int m = mmax;
        for (int k = 0; k < mmax; ++k) {
            Eigen::VectorXd w = (*s_) * Q.col(k);
            alpha[k] = Q.col(k).dot(w);
            w -= alpha[k] * Q.col(k);
            if (k > 0) w -= beta[k - 1] * Q.col(k - 1);
            // full reorthogonalization
            w -= Q.leftCols(k + 1) * (Q.leftCols(k + 1).transpose() * w);
            const double nb = w.norm();
            if (k + 1 < mmax) {
                if (nb < 1e-12) {
                    m = k + 1;
                    break;
                }
                beta[k] = nb;
                Q.col(k + 1) = w / nb;
            }
        }
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int k = 0; k < m; ++k) {
            T(k, k) = alpha[k];
            if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[k];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        Eigen::VectorXd fe = es.eigenvalues();
        for (int k = 0; k < m; ++k) fe[k] = f(fe[k]);
        const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(m, 0);
        return nx * (Q.leftCols(m) *
                     (es.eigenvectors() * (fe.asDiagonal() * (es.eigenvectors().transpose() * e1))));
    }

private:
    const Eigen::SparseMatrix<double>* s_;
    int krylov_;
};

// Sobolev functional calculus for a discrete sub-Laplacian: the operators
// (1 + Delta)^{alpha/2}. Dense grids are diagonalized once and powers come
// from the spectral mapping; larger grids fall back to per-vector Lanczos.
class SobolevScale {
public:
    SobolevScale(GridOperator delta, long dense_cap = 6000, int krylov = 200)
        : delta_(std::move(delta)), dense_cap_(dense_cap), krylov_(krylov) {}

    const GridOperator& delta() const { return delta_; }
    long size() const { return delta_.size; }
    bool dense_mode() const { return delta_.has_dense() && delta_.size <= dense_cap_; }

    const SpectralDecomposition& eigensystem() const {
        if (!eig_) {
            if (!dense_mode())
                throw std::runtime_error("SobolevScale: grid too large for dense eigendecomposition");
            eig_ = symmetric_eig(delta_.dense);
        }
        return *eig_;
    }

    // (1 + Delta)^{alpha/2}
    GridOperator power(double alpha) const {
        GridOperator op;
        op.size = delta_.size;
        op.symmetric = true;
        if (alpha == 0.0) {
            op.dense = Eigen::MatrixXd::Identity(delta_.size, delta_.size);
            return op;
        }
        if (dense_mode()) {
            const auto& eig = eigensystem();
            Eigen::VectorXd d = eig.evals;
            for (Eigen::Index k = 0; k < d.size(); ++k)
                d[k] = std::pow(1.0 + std::max(0.0, d[k]), 0.5 * alpha);
            const Eigen::MatrixXd scaled = eig.evecs * d.asDiagonal();
            op.dense.noalias() = scaled * eig.evecs.transpose();
            return op;
        }
        LanczosFunction lf(delta_.sparse, krylov_);
        const double half_alpha = 0.5 * alpha;
        op.apply_fn = [lf, half_alpha](const Eigen::VectorXd& v) {
            return lf.apply(v, [half_alpha](double lam) {
                return std::pow(1.0 + std::max(0.0, lam), half_alpha);
            });
        };
        return op;
    }

private:
    GridOperator delta_;
    long dense_cap_;
    int krylov_;
    mutable std::optional<SpectralDecomposition> eig_;
};

inline GridOperator sobolev_power(const SobolevScale& scale, double alpha) {
    return scale.power(alpha);
}

} // namespace rankone
