#pragma once

#include <algorithm>
#include <cmath>

#include "rankone/boundary.hpp"
#include "rankone/polynomial.hpp"
#include "rankone/rng.hpp"

namespace rankone {

// Variable layout for exact calculus on N-bar: the d_F(n-1) real X-coordinates
// first, then the d_F - 1 Z-coordinates, then the formal parameter u = e^{-2t}
// (0 < u <= 1), always last.
struct PolyContext {
    FieldKind kind;
    int n;
    int dim_x;
    int dim_z;

    PolyContext(FieldKind k, int rank)
        : kind(k), n(rank), dim_x(field_dim(k) * (rank - 1)), dim_z(field_im_dim(k)) {
        if (rank < 2) throw std::invalid_argument("PolyContext: n must be >= 2");
    }

    int nvars() const { return dim_x + dim_z + 1; }
    int x_var(int slot, int comp) const { return slot * field_dim(kind) + comp; }
    int z_var(int l) const { return dim_x + l; }
    int u_var() const { return dim_x + dim_z; }

    // Dilation weights: X degree 1, Z degree 2, u degree 0.
    std::vector<int> dilation_weights() const {
        std::vector<int> w(nvars(), 1);
        for (int l = 0; l < dim_z; ++l) w[z_var(l)] = 2;
        w[u_var()] = 0;
        return w;
    }

    std::vector<int> u_weights() const {
        std::vector<int> w(nvars(), 0);
        w[u_var()] = 1;
        return w;
    }
};

// Geometry point from the coordinate layout (X components, then Z imaginary
// components; any trailing entries such as u are ignored).
template <class F, class R>
HeisenbergPoint<F, R> point_from_coords(int n, const std::vector<R>& c) {
    HeisenbergPoint<F, R> p = heis_origin<F, R>(n);
    int k = 0;
    for (int slot = 0; slot < n - 1; ++slot)
        for (int comp = 0; comp < F::dim; ++comp) p.X[slot][comp] = c[k++];
    for (int l = 0; l < F::im_dim; ++l) p.Z[l + 1] = c[k++];
    return p;
}

// ||X||^2 as an exact polynomial.
inline MultiPoly norm_x_sq_poly(const PolyContext& ctx) {
    MultiPoly p(ctx.nvars());
    for (int v = 0; v < ctx.dim_x; ++v)
        p += MultiPoly::variable(ctx.nvars(), v) * MultiPoly::variable(ctx.nvars(), v);
    return p;
}

// B_t = u^2 + u ||X||^2 / 2 + ||X||^4/16 + |Z|^2, exactly.
inline MultiPoly b_t_poly(const PolyContext& ctx) {
    const int nv = ctx.nvars();
    const MultiPoly u = MultiPoly::variable(nv, ctx.u_var());
    const MultiPoly ns = norm_x_sq_poly(ctx);
    MultiPoly p = u * u + Rational(1, 2) * (u * ns) + Rational(1, 16) * (ns * ns);
    for (int l = 0; l < ctx.dim_z; ++l) {
        const MultiPoly z = MultiPoly::variable(nv, ctx.z_var(l));
        p += z * z;
    }
    return p;
}

// The gauge fourth power ||X||^4/16 + |Z|^2 (the t -> infinity limit of B_t).
inline MultiPoly gauge_fourth_poly(const PolyContext& ctx) {
    const MultiPoly ns = norm_x_sq_poly(ctx);
    MultiPoly p = Rational(1, 16) * (ns * ns);
    for (int l = 0; l < ctx.dim_z; ++l) {
        const MultiPoly z = MultiPoly::variable(ctx.nvars(), ctx.z_var(l));
        p += z * z;
    }
    return p;
}

// Exact action of the left-invariant horizontal field E_j:
//   E_j = d/dx_{slot,comp} + (1/2) sum_l [conj(X_slot) e_comp]_{l+1} d/dz_l,
// matching vertical_coefficients on the numeric side.
inline MultiPoly apply_field(const MultiPoly& p, int j, const PolyContext& ctx) {
    const int d = field_dim(ctx.kind);
    const int slot = j / d, comp = j % d;
    MultiPoly r = p.partial(ctx.x_var(slot, comp));
    for (int m = 0; m < d; ++m) {
        const BasisProduct t = kBasisTable[m][comp];
        if (t.index == 0) continue;
        const MultiPoly dz = p.partial(ctx.z_var(t.index - 1));
        if (dz.is_zero()) continue;
        const Rational c = Rational(conj_sign(m) * t.sign, 2);
        r += MultiPoly::variable(ctx.nvars(), ctx.x_var(slot, m), c) * dz;
    }
    return r;
}

using DerivativeWord = std::vector<int>;

// Left-to-right composition: word (j1, ..., js) applies E_{j1} E_{j2} ... E_{js},
// outermost first.
inline MultiPoly iterated_derivative(const MultiPoly& p, const DerivativeWord& w,
                                     const PolyContext& ctx) {
    MultiPoly r = p;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r = apply_field(r, *it, ctx);
    return r;
}

// All words of a given length over the horizontal directions.
inline std::vector<DerivativeWord> all_words(int ndirs, int length) {
    std::vector<DerivativeWord> words;
    DerivativeWord w(length, 0);
    for (;;) {
        words.push_back(w);
        int k = length - 1;
        while (k >= 0 && ++w[k] == ndirs) w[k--] = 0;
        if (k < 0) break;
    }
    if (length == 0) words.resize(1);
    return words;
}

// Deterministic subsample when full enumeration is too large.
inline std::vector<DerivativeWord> sampled_words(int ndirs, int length, std::size_t cap,
                                                 std::uint64_t seed) {
    const double full = std::pow(double(ndirs), double(length));
    if (full <= double(cap)) return all_words(ndirs, length);
    auto rng = seeded_rng(seed, std::uint64_t(length));
    std::uniform_int_distribution<int> ud(0, ndirs - 1);
    std::vector<DerivativeWord> words(cap, DerivativeWord(length));
    for (auto& w : words)
        for (auto& j : w) j = ud(rng);
    return words;
}

// Sampling region for the empirical suprema: gauge ball x t-interval
// (entering only through u = e^{-2t}) x b-interval.
struct SampleSpec {
    double gauge_max = 4.0;
    double t_max = 10.0;
    double b_max = 100.0;
    std::size_t count = 100000;
    std::uint64_t seed = 1;
};

// Random coordinate vector (x..., z..., u) with gauge <= gauge_max and
// u = e^{-2t}, t uniform in [0, t_max].
template <class Rng>
std::vector<double> random_sample_point(const PolyContext& ctx, double gauge_max, double t_max,
                                        Rng& rng) {
    std::uniform_real_distribution<double> ux(-2.0 * gauge_max, 2.0 * gauge_max);
    std::uniform_real_distribution<double> uz(-gauge_max * gauge_max, gauge_max * gauge_max);
    std::uniform_real_distribution<double> ut(0.0, t_max);
    const double g4 = std::pow(gauge_max, 4);
    std::vector<double> pt(ctx.nvars());
    for (;;) {
        double nx = 0.0;
        for (int v = 0; v < ctx.dim_x; ++v) {
            pt[v] = ux(rng);
            nx += pt[v] * pt[v];
        }
        double nz = 0.0;
        for (int l = 0; l < ctx.dim_z; ++l) {
            pt[ctx.z_var(l)] = uz(rng);
            nz += pt[ctx.z_var(l)] * pt[ctx.z_var(l)];
        }
        if (nx * nx / 16.0 + nz <= g4) break;
    }
    pt[ctx.u_var()] = std::exp(-2.0 * ut(rng));
    return pt;
}

// Empirical supremum of |D^j B_t| / B_t^{1 - j/4} over all words of length j
// and over the sample region. The preparatory bounds assert these are finite
// with t-independent constants; j = 5 gives exactly zero.
inline double prep_ratio(const PolyContext& ctx, int j, const SampleSpec& spec) {
    if (spec.count == 0) throw std::invalid_argument("prep_ratio: empty sample set");
    const MultiPoly bt = b_t_poly(ctx);
    std::vector<CompiledPoly> derivs;
    for (const auto& w : all_words(ctx.dim_x, j)) {
        MultiPoly d = iterated_derivative(bt, w, ctx);
        if (!d.is_zero()) derivs.push_back(compile(d));
    }
    if (derivs.empty()) return 0.0;
    const CompiledPoly btc = compile(bt);
    const double expo = 1.0 - double(j) / 4.0;
    auto rng = seeded_rng(spec.seed, j);
    double sup = 0.0;
    for (std::size_t it = 0; it < spec.count; ++it) {
        const auto pt = random_sample_point(ctx, spec.gauge_max, spec.t_max, rng);
        const double btv = btc.eval(pt.data());
        const double denom = std::pow(btv, expo);
        for (const auto& d : derivs) sup = std::max(sup, std::abs(d.eval(pt.data())) / denom);
    }
    return sup;
}

} // namespace rankone
