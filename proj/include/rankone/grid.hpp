#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <optional>

#include "rankone/boundary.hpp"

namespace rankone {

// Uniform tensor grid on a coordinate box in N-bar. X-coordinates and
// Z-coordinates carry their own half-widths (Z scales like the square of X
// under the dilations, so boxes are anisotropic); every axis has m nodes.
struct Grid {
    FieldKind kind;
    int n;
    int m;
    double half_x;
    double half_z;
    int dim_x;
    int dim_z;

    Grid(FieldKind k, int rank, int points_per_axis, double hx, double hz = -1.0)
        : kind(k),
          n(rank),
          m(points_per_axis),
          half_x(hx),
          half_z(hz > 0 ? hz : hx * hx / 4.0),
          dim_x(field_dim(k) * (rank - 1)),
          dim_z(field_im_dim(k)) {
        if (m < 5) throw std::invalid_argument("Grid: need at least 5 points per axis");
        if (m % 2 == 0) throw std::invalid_argument("Grid: points per axis must be odd");
        if (!(half_x > 0) || !(half_z > 0)) throw std::invalid_argument("Grid: bad box");
    }

    int dim() const { return dim_x + dim_z; }
    long nodes() const {
        long t = 1;
        for (int k = 0; k < dim(); ++k) t *= m;
        return t;
    }
    double spacing_x() const { return 2.0 * half_x / (m - 1); }
    double spacing_z() const { return 2.0 * half_z / (m - 1); }
    bool axis_is_z(int axis) const { return axis >= dim_x; }
    double axis_coord(int axis, int i) const {
        return axis_is_z(axis) ? -half_z + i * spacing_z() : -half_x + i * spacing_x();
    }

    // node index <-> multi-index, axis 0 fastest
    void unpack(long idx, int* mi) const {
        for (int a = 0; a < dim(); ++a) {
            mi[a] = int(idx % m);
            idx /= m;
        }
    }
    long neighbor(long idx, int axis, int step, const int* mi) const {
        const int i = mi[axis] + step;
        if (i < 0 || i >= m) return -1; // zero extension outside the box
        long stridev = 1;
        for (int a = 0; a < axis; ++a) stridev *= m;
        return idx + long(step) * stridev;
    }

    std::vector<double> node_coords(long idx) const {
        std::vector<int> mi(dim());
        unpack(idx, mi.data());
        std::vector<double> c(dim());
        for (int a = 0; a < dim(); ++a) c[a] = axis_coord(a, mi[a]);
        return c;
    }

    template <class F>
    HeisenbergPoint<F, double> node_point(long idx) const {
        return point_from_coords<F, double>(n, node_coords(idx));
    }
};

// Linear operator on grid functions: sparse always, dense mirror when small
// enough for direct spectral work, or a bare apply callback.
struct GridOperator {
    long size = 0;
    bool symmetric = false;
    Eigen::SparseMatrix<double> sparse;
    Eigen::MatrixXd dense;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply_fn;

    bool has_dense() const { return dense.size() > 0; }
    bool has_sparse() const { return sparse.nonZeros() > 0 || sparse.rows() > 0; }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const {
        if (has_dense()) return dense * v;
        if (sparse.rows() > 0) return sparse * v;
        return apply_fn(v);
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const {
        Eigen::VectorXcd w(v.size());
        w.real() = apply(Eigen::VectorXd(v.real()));
        w.imag() = apply(Eigen::VectorXd(v.imag()));
        return w;
    }

    // Block apply for batched iteration.
    Eigen::MatrixXd apply(const Eigen::MatrixXd& v) const {
        if (has_dense()) return dense * v;
        if (sparse.rows() > 0) return sparse * v;
        Eigen::MatrixXd w(v.rows(), v.cols());
        for (Eigen::Index c = 0; c < v.cols(); ++c) w.col(c) = apply_fn(Eigen::VectorXd(v.col(c)));
        return w;
    }
};

} // namespace rankone
