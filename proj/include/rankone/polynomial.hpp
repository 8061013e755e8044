#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rankone/numeric_types.hpp"

namespace rankone {

// Exact multivariate polynomial with rational coefficients. Terms are kept in
// a canonically ordered map with no zero coefficients, so equal polynomials
// have equal representations and the text serialization is unique.
class MultiPoly {
public:
    using Monomial = std::vector<std::uint8_t>;
    using TermMap = std::map<Monomial, Rational>;

    explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, Rational c) {
        MultiPoly p(nvars);
        if (c != 0) p.terms_.emplace(Monomial(nvars, 0), std::move(c));
        return p;
    }

    static MultiPoly variable(int nvars, int idx, Rational c = Rational(1)) {
        MultiPoly p(nvars);
        Monomial m(nvars, 0);
        m[idx] = 1;
        if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(a.nvars_);
        Monomial m(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                for (int v = 0; v < a.nvars_; ++v) m[v] = std::uint8_t(ma[v] + mb[v]);
                r.add_term(m, ca * cb);
            }
        return r;
    }
    friend MultiPoly operator*(const Rational& s, const MultiPoly& a) {
        MultiPoly r(a.nvars_);
        if (s == 0) return r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, s * c);
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
    MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    MultiPoly partial(int var) const {
        MultiPoly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d = m;
            d[var] -= 1;
            r.add_term(d, c * Rational(int(m[var])));
        }
        return r;
    }

    template <class T>
    T evaluate(const std::vector<T>& point) const {
        T acc(0);
        for (const auto& [m, c] : terms_) {
            T t = rational_to<T>(c);
            for (int v = 0; v < nvars_; ++v)
                for (int e = 0; e < m[v]; ++e) t *= point[v];
            acc += t;
        }
        return acc;
    }

    // Split into graded parts for a weight per variable (degree of a term is
    // the weighted exponent sum).
    std::map<int, MultiPoly> graded_parts(const std::vector<int>& weights) const {
        std::map<int, MultiPoly> parts;
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (int v = 0; v < nvars_; ++v) d += weights[v] * m[v];
            auto [it, fresh] = parts.try_emplace(d, nvars_);
            it->second.add_term(m, c);
        }
        return parts;
    }

    // Canonical text form: one "e_0 e_1 ... e_{n-1} : coeff" line per term in
    // map order.
    std::string to_text() const {
        std::ostringstream os;
        os << "vars " << nvars_ << "\n";
        for (const auto& [m, c] : terms_) {
            for (int v = 0; v < nvars_; ++v) os << int(m[v]) << (v + 1 < nvars_ ? " " : "");
            os << " : " << c << "\n";
        }
        return os.str();
    }

    static MultiPoly from_text(const std::string& text) {
        std::istringstream is(text);
        std::string tag;
        int nvars = 0;
        is >> tag >> nvars;
        if (tag != "vars") throw std::invalid_argument("MultiPoly::from_text: bad header");
        MultiPoly p(nvars);
        std::string line;
        std::getline(is, line);
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            Monomial m(nvars);
            for (int v = 0; v < nvars; ++v) {
                int e;
                ls >> e;
                m[v] = std::uint8_t(e);
            }
            std::string colon, coeff;
            ls >> colon >> coeff;
            if (colon != ":") throw std::invalid_argument("MultiPoly::from_text: bad term line");
            p.add_term(m, Rational(coeff));
        }
        return p;
    }

private:
    int nvars_;
    TermMap terms_;
};

// Double-precision form for hot evaluation loops: rational coefficients are
// converted once.
struct CompiledPoly {
    struct Term {
        double coeff;
        std::vector<std::uint8_t> exps;
    };
    int nvars = 0;
    std::vector<Term> terms;

    double eval(const double* point) const {
        double acc = 0.0;
        for (const auto& t : terms) {
            double v = t.coeff;
            for (int k = 0; k < nvars; ++k) {
                const int e = t.exps[k];
                if (e == 0) continue;
                double p = point[k];
                for (int q = 1; q < e; ++q) p *= point[k];
                v *= p;
            }
            acc += v;
        }
        return acc;
    }

    // Evaluation against a precomputed power table: table[v * stride + e] =
    // point[v]^e. Used by the sampling loops.
    double eval_tab(const double* table, int stride) const {
        double acc = 0.0;
        for (const auto& t : terms) {
            double v = t.coeff;
            for (int k = 0; k < nvars; ++k) {
                const int e = t.exps[k];
                if (e) v *= table[k * stride + e];
            }
            acc += v;
        }
        return acc;
    }

    std::uint8_t max_exponent() const {
        std::uint8_t m = 0;
        for (const auto& t : terms)
            for (auto e : t.exps) m = std::max(m, e);
        return m;
    }
};

// Power table for eval_tab: powers of each coordinate up to max_exp.
inline void fill_power_table(const double* point, int nvars, int stride, double* table) {
    for (int v = 0; v < nvars; ++v) {
        table[v * stride] = 1.0;
        for (int e = 1; e < stride; ++e) table[v * stride + e] = table[v * stride + e - 1] * point[v];
    }
}

inline CompiledPoly compile(const MultiPoly& p) {
    CompiledPoly c;
    c.nvars = p.nvars();
    c.terms.reserve(p.term_count());
    for (const auto& [m, q] : p.terms()) c.terms.push_back({to_double(q), m});
    return c;
}

} // namespace rankone
