#pragma once

#include "rankone/grid.hpp"

namespace rankone {

// Centered-difference discretization of the horizontal field E_j with zero
// extension outside the box. The X-part is a plain centered difference; the
// vertical correction multiplies centered Z-differences by the polynomial
// coefficient evaluated at the node, which depends on X only, so E_j stays
// exactly antisymmetric and Delta = sum_j E_j^T E_j is symmetric PSD.
template <class F>
Eigen::SparseMatrix<double> assemble_field(const Grid& grid, int j) {
    const long N = grid.nodes();
    const double inv2hx = 1.0 / (2.0 * grid.spacing_x());
    const double inv2hz = 1.0 / (2.0 * grid.spacing_z());
    const auto dir = horizontal_direction<F>(j);
    const int x_axis = dir.slot * F::dim + dir.comp;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(N) * (2 + 2 * grid.dim_z));
    std::vector<int> mi(grid.dim());
    for (long idx = 0; idx < N; ++idx) {
        grid.unpack(idx, mi.data());
        const long xp = grid.neighbor(idx, x_axis, +1, mi.data());
        const long xm = grid.neighbor(idx, x_axis, -1, mi.data());
        if (xp >= 0) trip.emplace_back(idx, xp, inv2hx);
        if (xm >= 0) trip.emplace_back(idx, xm, -inv2hx);

        if (grid.dim_z > 0) {
            const auto p = grid.node_point<F>(idx);
            const auto c = vertical_coefficients(p.X, j);
            for (int l = 0; l < grid.dim_z; ++l) {
                if (c[l] == 0.0) continue;
                const int z_axis = grid.dim_x + l;
                const long zp = grid.neighbor(idx, z_axis, +1, mi.data());
                const long zm = grid.neighbor(idx, z_axis, -1, mi.data());
                if (zp >= 0) trip.emplace_back(idx, zp, c[l] * inv2hz);
                if (zm >= 0) trip.emplace_back(idx, zm, -c[l] * inv2hz);
            }
        }
    }
    Eigen::SparseMatrix<double> E(N, N);
    E.setFromTriplets(trip.begin(), trip.end());
    return E;
}

// Discrete sub-Laplacian Delta_h = sum_j E_j^T E_j; densified below the given
// node cap so the spectral layer can diagonalize it directly.
template <class F>
GridOperator assemble_sublaplacian(const Grid& grid, long dense_cap = 6000) {
    const long N = grid.nodes();
    GridOperator op;
    op.size = N;
    op.symmetric = true;
    Eigen::SparseMatrix<double> delta(N, N);
    for (int j = 0; j < horizontal_dim<F>(grid.n); ++j) {
        const auto E = assemble_field<F>(grid, j);
        delta += Eigen::SparseMatrix<double>(E.transpose()) * E;
    }
    op.sparse = std::move(delta);
    if (N <= dense_cap) op.dense = Eigen::MatrixXd(op.sparse);
    return op;
}

inline GridOperator assemble_sublaplacian(const Grid& grid, long dense_cap = 6000) {
    return dispatch_field(grid.kind, [&](auto tag) {
        using F = decltype(tag);
        return assemble_sublaplacian<F>(grid, dense_cap);
    });
}

} // namespace rankone
