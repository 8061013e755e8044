#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rankone {

// Base division algebra of the rank-one family: R, C or H.
enum class FieldKind : std::uint8_t { R, C, H };

inline int field_dim(FieldKind k) {
    switch (k) {
        case FieldKind::R: return 1;
        case FieldKind::C: return 2;
        case FieldKind::H: return 4;
    }
    throw std::logic_error("field_dim: bad kind");
}

inline int field_im_dim(FieldKind k) { return field_dim(k) - 1; }

inline std::string to_string(FieldKind k) {
    switch (k) {
        case FieldKind::R: return "R";
        case FieldKind::C: return "C";
        case FieldKind::H: return "H";
    }
    return "?";
}

inline FieldKind field_kind_from_string(const std::string& s) {
    if (s == "R" || s == "r") return FieldKind::R;
    if (s == "C" || s == "c") return FieldKind::C;
    if (s == "H" || s == "h") return FieldKind::H;
    throw std::invalid_argument("unknown field: " + s);
}

// Product of basis elements e_a e_b = sign * e_index, basis order (1, i, j, k).
struct BasisProduct {
    std::int8_t sign;
    std::int8_t index;
};

inline constexpr BasisProduct kBasisTable[4][4] = {
    {{+1, 0}, {+1, 1}, {+1, 2}, {+1, 3}},
    {{+1, 1}, {-1, 0}, {+1, 3}, {-1, 2}},
    {{+1, 2}, {-1, 3}, {-1, 0}, {+1, 1}},
    {{+1, 3}, {+1, 2}, {-1, 1}, {-1, 0}},
};

// Sign of conjugation on basis element e_a.
inline constexpr int conj_sign(int a) { return a == 0 ? +1 : -1; }

struct RField {
    static constexpr FieldKind kind = FieldKind::R;
    static constexpr int dim = 1;
    static constexpr int im_dim = 0;
};

struct CField {
    static constexpr FieldKind kind = FieldKind::C;
    static constexpr int dim = 2;
    static constexpr int im_dim = 1;
};

struct HField {
    static constexpr FieldKind kind = FieldKind::H;
    static constexpr int dim = 4;
    static constexpr int im_dim = 3;
};

// Calls fn with the compile-time tag matching a runtime kind.
template <class Fn>
decltype(auto) dispatch_field(FieldKind k, Fn&& fn) {
    switch (k) {
        case FieldKind::R: return fn(RField{});
        case FieldKind::C: return fn(CField{});
        case FieldKind::H: return fn(HField{});
    }
    throw std::logic_error("dispatch_field: bad kind");
}

} // namespace rankone
