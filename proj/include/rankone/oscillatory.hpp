#pragma once

#include <complex>

#include "rankone/symbolic.hpp"

namespace rankone {

// Finite sum  sum_m N_m / B_t^m  with exact polynomial numerators; closed
// under the horizontal fields since E(N/B^m) = (E N)/B^m - m N (E B)/B^{m+1}.
class BtRationalFn {
public:
    BtRationalFn() = default;
    explicit BtRationalFn(int nvars) : nvars_(nvars) {}

    static BtRationalFn single(int power, MultiPoly num) {
        BtRationalFn f(num.nvars());
        f.add(power, std::move(num));
        return f;
    }

    void add(int power, const MultiPoly& num) {
        if (num.is_zero()) return;
        auto [it, fresh] = num_.try_emplace(power, num);
        if (!fresh) {
            it->second += num;
            if (it->second.is_zero()) num_.erase(it);
        }
    }

    bool is_zero() const { return num_.empty(); }
    const std::map<int, MultiPoly>& parts() const { return num_; }

    friend BtRationalFn operator+(const BtRationalFn& a, const BtRationalFn& b) {
        BtRationalFn r = a;
        for (const auto& [m, p] : b.num_) r.add(m, p);
        return r;
    }

    friend BtRationalFn operator*(const BtRationalFn& a, const BtRationalFn& b) {
        BtRationalFn r(a.nvars_ ? a.nvars_ : b.nvars_);
        for (const auto& [ma, pa] : a.num_)
            for (const auto& [mb, pb] : b.num_) r.add(ma + mb, pa * pb);
        return r;
    }

    template <class T>
    T evaluate(const std::vector<T>& point, const T& bt_value) const {
        T acc(0);
        for (const auto& [m, p] : num_) {
            T v = p.evaluate(point);
            for (int q = 0; q < m; ++q) v = v / bt_value;
            acc += v;
        }
        return acc;
    }

private:
    int nvars_ = 0;
    std::map<int, MultiPoly> num_;
};

inline BtRationalFn apply_field(const BtRationalFn& f, int j, const PolyContext& ctx,
                                const MultiPoly& bt, const MultiPoly& dbt_j) {
    BtRationalFn r(bt.nvars());
    for (const auto& [m, p] : f.parts()) {
        r.add(m, apply_field(p, j, ctx));
        if (m > 0) r.add(m + 1, Rational(-m) * (p * dbt_j));
    }
    return r;
}

// One Faa di Bruno term of D^w(B_t^{ib}): (ib)^l times a product of iterated
// log-derivatives D^{w|block} log B_t, one factor per block of a set
// partition of the word positions.
struct OscillatoryTerm {
    int ib_power = 0;
    std::vector<BtRationalFn> log_factors;
};

// D^w(B_t^{ib}) = B_t^{ib} * (literal sum of terms); the collapsed form
// gathers everything with the same power of (ib) into one rational function
// for fast evaluation. Both evaluate identically.
struct OscillatoryExpansion {
    DerivativeWord word;
    std::vector<OscillatoryTerm> terms;
    std::map<int, BtRationalFn> collapsed;
};

namespace detail {

inline void enumerate_set_partitions(int s, std::vector<std::vector<std::vector<int>>>& out) {
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == s) {
            out.push_back(blocks);
            return;
        }
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            blocks[bi].push_back(pos);
            self(self, pos + 1);
            blocks[bi].pop_back();
        }
        blocks.push_back({pos});
        self(self, pos + 1);
        blocks.pop_back();
    };
    rec(rec, 0);
}

} // namespace detail

// Faa di Bruno data for D^w(B_t^{ib}) with 1 <= |w| <= 6.
class OscillatoryCalculus {
public:
    explicit OscillatoryCalculus(const PolyContext& ctx)
        : ctx_(ctx), bt_(b_t_poly(ctx)) {
        for (int j = 0; j < ctx.dim_x; ++j) dbt_.push_back(apply_field(bt_, j, ctx));
    }

    const PolyContext& context() const { return ctx_; }
    const MultiPoly& bt() const { return bt_; }

    // D^w log B_t as an exact rational function of (coordinates, u, B_t).
    BtRationalFn log_derivative(const DerivativeWord& w) const {
        if (w.empty()) throw std::invalid_argument("log_derivative: empty word");
        BtRationalFn f = BtRationalFn::single(1, dbt_[w.back()]);
        for (auto it = std::next(w.rbegin()); it != w.rend(); ++it)
            f = apply_field(f, *it, ctx_, bt_, dbt_[*it]);
        return f;
    }

    // The collapsed form alone, by the derivation recursion
    // G_{j.w} = ib (E_j B_t / B_t) G_w + E_j G_w.
    std::map<int, BtRationalFn> collapsed(const DerivativeWord& w) const {
        if (w.empty() || w.size() > 6)
            throw std::out_of_range("oscillatory_expand: word length must be in [1, 6]");
        std::map<int, BtRationalFn> g;
        g[1] = BtRationalFn::single(1, dbt_[w.back()]);
        for (auto it = std::next(w.rbegin()); it != w.rend(); ++it) {
            std::map<int, BtRationalFn> next;
            for (const auto& [l, f] : g) {
                auto shifted = BtRationalFn::single(1, dbt_[*it]) * f;
                auto [itn, fresh] = next.try_emplace(l + 1, shifted);
                if (!fresh) itn->second = itn->second + shifted;
                auto de = apply_field(f, *it, ctx_, bt_, dbt_[*it]);
                if (!de.is_zero()) {
                    auto [itd, fresh2] = next.try_emplace(l, de);
                    if (!fresh2) itd->second = itd->second + de;
                }
            }
            g = std::move(next);
        }
        return g;
    }

    OscillatoryExpansion expand(const DerivativeWord& w) const {
        const int s = int(w.size());
        if (s < 1 || s > 6)
            throw std::out_of_range("oscillatory_expand: word length must be in [1, 6]");
        OscillatoryExpansion e;
        e.word = w;

        std::vector<std::vector<std::vector<int>>> partitions;
        detail::enumerate_set_partitions(s, partitions);
        std::map<DerivativeWord, BtRationalFn> memo;
        for (const auto& part : partitions) {
            OscillatoryTerm term;
            term.ib_power = int(part.size());
            for (const auto& block : part) {
                DerivativeWord sub;
                for (int pos : block) sub.push_back(w[pos]);
                auto it = memo.find(sub);
                if (it == memo.end()) it = memo.emplace(sub, log_derivative(sub)).first;
                term.log_factors.push_back(it->second);
            }
            e.terms.push_back(std::move(term));
        }
        e.collapsed = collapsed(w);
        return e;
    }

private:
    PolyContext ctx_;
    MultiPoly bt_;
    std::vector<MultiPoly> dbt_;
};

inline OscillatoryExpansion oscillatory_expand(const DerivativeWord& w, const PolyContext& ctx) {
    return OscillatoryCalculus(ctx).expand(w);
}

// Evaluate D^w(B_t^{ib}) / B_t^{ib} from the literal partition terms.
template <class T>
std::complex<T> evaluate_literal(const OscillatoryExpansion& e, const std::vector<T>& point,
                                 const T& bt_value, const T& b) {
    std::complex<T> acc(T(0), T(0));
    for (const auto& term : e.terms) {
        T prod(1);
        for (const auto& f : term.log_factors) prod *= f.evaluate(point, bt_value);
        std::complex<T> ib_pow(T(1), T(0));
        for (int q = 0; q < term.ib_power; ++q) ib_pow *= std::complex<T>(T(0), b);
        acc += ib_pow * prod;
    }
    return acc;
}

template <class T>
std::complex<T> evaluate_collapsed(const OscillatoryExpansion& e, const std::vector<T>& point,
                                   const T& bt_value, const T& b) {
    std::complex<T> acc(T(0), T(0));
    for (const auto& [l, f] : e.collapsed) {
        std::complex<T> ib_pow(T(1), T(0));
        for (int q = 0; q < l; ++q) ib_pow *= std::complex<T>(T(0), b);
        acc += ib_pow * f.evaluate(point, bt_value);
    }
    return acc;
}

// Compiled collapsed form for sampling loops.
struct CompiledExpansion {
    struct Part {
        int ib_power;
        std::vector<std::pair<int, CompiledPoly>> fractions; // (B_t power, numerator)
    };
    std::vector<Part> parts;

    std::complex<double> eval_with_b(const double* point, double bt_value, double b) const {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& part : parts) {
            double v = 0.0;
            for (const auto& [m, num] : part.fractions)
                v += num.eval(point) / std::pow(bt_value, double(m));
            std::complex<double> ib_pow(1.0, 0.0);
            for (int q = 0; q < part.ib_power; ++q) ib_pow *= std::complex<double>(0.0, b);
            acc += ib_pow * v;
        }
        return acc;
    }
};

inline CompiledExpansion compile(const OscillatoryExpansion& e) {
    CompiledExpansion c;
    for (const auto& [l, f] : e.collapsed) {
        CompiledExpansion::Part part;
        part.ib_power = l;
        for (const auto& [m, num] : f.parts()) part.fractions.emplace_back(m, compile(num));
        c.parts.push_back(std::move(part));
    }
    return c;
}

// Partition structure over bitmasks of word positions: for every nonempty
// mask, the set partitions of its positions, each block given as a submask.
struct MaskPartitions {
    int s;
    std::vector<std::vector<std::vector<std::uint32_t>>> by_mask;

    explicit MaskPartitions(int length) : s(length), by_mask(std::size_t(1) << length) {
        for (std::uint32_t mask = 1; mask < by_mask.size(); ++mask) {
            std::vector<int> pos;
            for (int k = 0; k < s; ++k)
                if (mask & (1u << k)) pos.push_back(k);
            std::vector<std::vector<std::vector<int>>> parts;
            detail::enumerate_set_partitions(int(pos.size()), parts);
            for (const auto& part : parts) {
                std::vector<std::uint32_t> blocks;
                for (const auto& block : part) {
                    std::uint32_t sub = 0;
                    for (int q : block) sub |= 1u << pos[q];
                    blocks.push_back(sub);
                }
                by_mask[mask].push_back(std::move(blocks));
            }
        }
    }
};

// Fast exact-value evaluator for D^w(B_t^{ib}) / B_t^{ib} through the direct
// Faa di Bruno formula for the outer function x -> x^{ib}:
//   sum over set partitions pi of the word positions of
//     (ib)(ib-1)...(ib-|pi|+1) * B_t^{-|pi|} * prod_{blocks} D^{w|block} B_t.
// Only the small polynomials D^v B_t are evaluated, so this is the form used
// in sampling loops; it agrees with the symbolic expansion identically.
class WordEvaluator {
public:
    WordEvaluator(const DerivativeWord& w, const PolyContext& ctx, const MultiPoly& bt,
                  const MaskPartitions& parts)
        : s_(int(w.size())), parts_(&parts) {
        const std::uint32_t full = (1u << s_) - 1;
        sub_derivs_.resize(full + 1);
        max_exp_ = 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            DerivativeWord sub;
            for (int k = 0; k < s_; ++k)
                if (mask & (1u << k)) sub.push_back(w[k]);
            sub_derivs_[mask] = compile(iterated_derivative(bt, sub, ctx));
            max_exp_ = std::max(max_exp_, int(sub_derivs_[mask].max_exponent()) + 1);
        }
    }

    int max_exponent_stride() const { return max_exp_; }

    // vals scratch must have size 2^s.
    std::complex<double> eval(const double* table, int stride, double bt_value, double b,
                              std::vector<double>& vals) const {
        const std::uint32_t full = (1u << s_) - 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask)
            vals[mask] = sub_derivs_[mask].eval_tab(table, stride) / bt_value;
        // falling factorials (ib)(ib-1)...(ib-k+1), k = 1..s
        std::array<std::complex<double>, 7> ff;
        ff[0] = {1.0, 0.0};
        for (int k = 1; k <= s_; ++k) ff[k] = ff[k - 1] * std::complex<double>(-(k - 1), b);
        std::complex<double> acc(0.0, 0.0);
        for (const auto& part : parts_->by_mask[full]) {
            double prod = 1.0;
            for (std::uint32_t block : part) prod *= vals[block];
            acc += ff[part.size()] * prod;
        }
        return acc;
    }

private:
    int s_;
    int max_exp_;
    const MaskPartitions* parts_;
    std::vector<CompiledPoly> sub_derivs_;
};

inline CompiledExpansion compile_collapsed(const std::map<int, BtRationalFn>& collapsed) {
    CompiledExpansion c;
    for (const auto& [l, f] : collapsed) {
        CompiledExpansion::Part part;
        part.ib_power = l;
        for (const auto& [m, num] : f.parts()) part.fractions.emplace_back(m, compile(num));
        c.parts.push_back(std::move(part));
    }
    return c;
}

// Empirical supremum of |D^s(B_t^{ib})| B_t^{s/4} (1+|b|)^{-s} over the sample
// region and a word family (all words when few, a deterministic subsample
// otherwise). The technical estimate asserts finiteness, uniformly in t and b.
inline double tech_ratio(const PolyContext& ctx, int s, const SampleSpec& spec,
                         std::size_t word_cap = 64) {
    if (spec.count == 0) throw std::invalid_argument("tech_ratio: empty sample set");
    if (s < 1 || s > 6) throw std::out_of_range("tech_ratio: s must be in [1, 6]");
    const MultiPoly bt = b_t_poly(ctx);
    const MaskPartitions parts(s);
    std::vector<WordEvaluator> evals;
    int stride = 2;
    for (const auto& w : sampled_words(ctx.dim_x, s, word_cap, spec.seed)) {
        evals.emplace_back(w, ctx, bt, parts);
        stride = std::max(stride, evals.back().max_exponent_stride());
    }
    const CompiledPoly btc = compile(bt);
    stride = std::max(stride, int(btc.max_exponent()) + 1);
    auto rng = seeded_rng(spec.seed, 100 + s);
    std::uniform_real_distribution<double> ub(-spec.b_max, spec.b_max);
    std::vector<double> table(std::size_t(ctx.nvars()) * stride);
    std::vector<double> scratch(std::size_t(1) << s);
    double sup = 0.0;
    for (std::size_t it = 0; it < spec.count; ++it) {
        const auto pt = random_sample_point(ctx, spec.gauge_max, spec.t_max, rng);
        const double b = ub(rng);
        fill_power_table(pt.data(), ctx.nvars(), stride, table.data());
        const double btv = btc.eval_tab(table.data(), stride);
        const double weight = std::pow(btv, 0.25 * s) / std::pow(1.0 + std::abs(b), double(s));
        for (const auto& e : evals)
            sup = std::max(sup, std::abs(e.eval(table.data(), stride, btv, b, scratch)) * weight);
    }
    return sup;
}

} // namespace rankone
