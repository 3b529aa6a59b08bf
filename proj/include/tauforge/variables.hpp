#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tauforge {

// Variable families. P and Q are the two infinite alphabets p_1,p_2,... and
// q_1,q_2,...; AUX is a fixed registry of named formal parameters.
enum class Family : std::uint8_t { P = 0, Q = 1, Aux = 2 };

struct AuxInfo {
    std::string_view name;
    bool allow_negative;  // only hbar
    int weight;           // contribution of one exponent unit to the weighted degree
};

// Registered auxiliary parameters. "Z" is the weight-1 shift variable used by
// residue windows (Hirota); "zeta" pairs with it; d0..d9 carry the weights of
// monotone factorizations and grade by their subscript.
inline constexpr std::array<AuxInfo, 25> kAuxRegistry{{
    {"u", false, 0},    {"u1", false, 0},   {"u2", false, 0},   {"u3", false, 0},
    {"u4", false, 0},   {"u5", false, 0},   {"u6", false, 0},   {"hbar", true, 0},
    {"v", false, 0},    {"w", false, 0},    {"z", false, 0},    {"s", false, 0},
    {"y", false, 0},    {"Z", false, 1},    {"zeta", false, 0}, {"d0", false, 0},
    {"d1", false, 1},   {"d2", false, 2},   {"d3", false, 3},   {"d4", false, 4},
    {"d5", false, 5},   {"d6", false, 6},   {"d7", false, 7},   {"d8", false, 8},
    {"d9", false, 9},
}};

class VarId {
public:
    VarId() : code_(0) {}

    static VarId p(int i) {
        require_index(i);
        return VarId((static_cast<std::uint32_t>(Family::P) << 24) | static_cast<std::uint32_t>(i));
    }
    static VarId q(int i) {
        require_index(i);
        return VarId((static_cast<std::uint32_t>(Family::Q) << 24) | static_cast<std::uint32_t>(i));
    }
    static VarId aux(std::string_view name) {
        for (std::size_t k = 0; k < kAuxRegistry.size(); ++k)
            if (kAuxRegistry[k].name == name)
                return VarId((static_cast<std::uint32_t>(Family::Aux) << 24) |
                             static_cast<std::uint32_t>(k));
        throw std::invalid_argument("unregistered aux variable '" + std::string(name) + "'");
    }
    static VarId d(int k) { return aux("d" + std::string(1, static_cast<char>('0' + k))); }

    Family family() const { return static_cast<Family>(code_ >> 24); }
    int index() const { return static_cast<int>(code_ & 0xffffff); }

    bool is_p() const { return family() == Family::P; }
    bool is_q() const { return family() == Family::Q; }
    bool is_aux() const { return family() == Family::Aux; }

    const AuxInfo& aux_info() const { return kAuxRegistry[static_cast<std::size_t>(index())]; }

    // Weighted-degree contribution of one exponent unit: i for p_i/q_i,
    // registry weight for aux.
    int unit_weight() const { return is_aux() ? aux_info().weight : index(); }

    bool negative_ok() const { return is_aux() && aux_info().allow_negative; }

    std::string name() const {
        switch (family()) {
            case Family::P: return "p" + std::to_string(index());
            case Family::Q: return "q" + std::to_string(index());
            default: return std::string(aux_info().name);
        }
    }

    std::uint32_t code() const { return code_; }
    auto operator<=>(const VarId&) const = default;

private:
    explicit VarId(std::uint32_t code) : code_(code) {}
    static void require_index(int i) {
        if (i < 1) throw std::invalid_argument("p/q variable index must be >= 1");
    }
    std::uint32_t code_;
};

// Parses "p3", "q12", or a registered aux name.
inline VarId parse_var(std::string_view s) {
    if (s.size() >= 2 && (s[0] == 'p' || s[0] == 'q')) {
        bool digits = true;
        for (std::size_t i = 1; i < s.size(); ++i) digits = digits && (s[i] >= '0' && s[i] <= '9');
        if (digits) {
            int idx = std::stoi(std::string(s.substr(1)));
            return s[0] == 'p' ? VarId::p(idx) : VarId::q(idx);
        }
    }
    return VarId::aux(s);
}

}  // namespace tauforge
