#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tauforge/rational.hpp"

namespace tauforge {

// Integer partition stored weakly decreasing; every constructor normalizes,
// so partitions compare and hash as canonical values.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int p : parts_)
            if (p <= 0) throw std::invalid_argument("partition: parts must be positive");
        std::sort(parts_.rbegin(), parts_.rend());
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

    auto operator<=>(const Partition&) const = default;

    // "[5,3,3,2]"; "[]" for the empty partition.
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s + "]";
    }

private:
    std::vector<int> parts_;
};

// Accepts the bracketed list form "[5,3,3,2]" and the multiplicative form
// "2^2 3^1" (bare "3" counts as 3^1). Both normalize to weakly decreasing.
inline Partition parse_partition(const std::string& text) {
    auto fail = [&]() -> Partition {
        throw std::invalid_argument("partition: cannot parse '" + text + "'");
    };
    std::size_t b = text.find_first_not_of(" \t");
    std::size_t e = text.find_last_not_of(" \t");
    if (b == std::string::npos) return fail();
    std::string s = text.substr(b, e - b + 1);

    std::vector<int> parts;
    if (s.front() == '[') {
        if (s.back() != ']') return fail();
        std::string inner = s.substr(1, s.size() - 2);
        std::stringstream ss(inner);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.find_first_not_of(" \t") == std::string::npos) return fail();
            std::size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (tok.find_first_not_of(" \t", pos) != std::string::npos) return fail();
            parts.push_back(v);
        }
        if (inner.find_first_not_of(" \t") == std::string::npos) parts.clear();
    } else {
        std::stringstream ss(s);
        std::string tok;
        while (ss >> tok) {
            std::size_t caret = tok.find('^');
            int value = 0, mult = 1;
            try {
                if (caret == std::string::npos) {
                    std::size_t pos = 0;
                    value = std::stoi(tok, &pos);
                    if (pos != tok.size()) return fail();
                } else {
                    std::size_t p1 = 0, p2 = 0;
                    value = std::stoi(tok.substr(0, caret), &p1);
                    if (p1 != caret) return fail();
                    std::string rest = tok.substr(caret + 1);
                    mult = std::stoi(rest, &p2);
                    if (p2 != rest.size()) return fail();
                }
            } catch (const std::exception&) {
                return fail();
            }
            if (mult <= 0) return fail();
            for (int i = 0; i < mult; ++i) parts.push_back(value);
        }
    }
    for (int p : parts)
        if (p <= 0) throw std::invalid_argument("partition: non-positive part in '" + text + "'");
    return Partition(std::move(parts));
}

inline Partition conjugate(const Partition& p) {
    std::vector<int> cols;
    for (int j = 1; j <= p.part(0); ++j) {
        int c = 0;
        for (int row : p.parts()) c += (row >= j);
        cols.push_back(c);
    }
    return Partition(std::move(cols));
}

// Cell contents j - i in row-major order.
inline std::vector<int> contents(const Partition& p) {
    std::vector<int> c;
    c.reserve(static_cast<std::size_t>(p.size()));
    for (int i = 1; i <= p.length(); ++i)
        for (int j = 1; j <= p.parts()[i - 1]; ++j) c.push_back(j - i);
    return c;
}

inline int hook_length(const Partition& p, const Partition& conj, int i, int j) {
    return p.parts()[i - 1] - j + conj.parts()[j - 1] - i + 1;
}

// dim_mu / |mu|!  =  1 / prod(hooks).
inline Rational dim_ratio(const Partition& p) {
    Partition conj = conjugate(p);
    Integer hooks(1);
    for (int i = 1; i <= p.length(); ++i)
        for (int j = 1; j <= p.parts()[i - 1]; ++j) hooks *= hook_length(p, conj, i, j);
    Rational r(1);
    r /= Rational(hooks);
    return r;
}

// Same quantity through the Jacobi-Trudi determinant specialized at
// p = (1,0,0,...), where the one-row polynomial s_k becomes 1/k!.
// Kept as an independent route for cross-validation against the hook product.
inline Rational dim_ratio_det(const Partition& p) {
    int n = p.length();
    if (n == 0) return Rational(1);
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = p.parts()[i] - (i + 1) + (j + 1);
            if (k >= 0) m[i][j] = Rational(1) / Rational(factorial(static_cast<unsigned long>(k)));
        }
    // Gaussian elimination over Q.
    Rational det(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) return Rational(0);
        if (piv != c) { std::swap(m[piv], m[c]); det = -det; }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

// prod over distinct part values of multiplicity!.
inline Integer aut_order(const Partition& p) {
    Integer a(1);
    std::size_t i = 0;
    while (i < p.parts().size()) {
        std::size_t j = i;
        while (j < p.parts().size() && p.parts()[j] == p.parts()[i]) ++j;
        a *= factorial(j - i);
        i = j;
    }
    return a;
}

// |lambda| - l(lambda), the minimal transposition factorization length.
inline int degeneracy(const Partition& p) { return p.size() - p.length(); }

// z_mu = prod v^{m_v} m_v!; |C_mu| = n!/z_mu.
inline Integer z_order(const Partition& p) {
    Integer z(1);
    std::size_t i = 0;
    while (i < p.parts().size()) {
        std::size_t j = i;
        while (j < p.parts().size() && p.parts()[j] == p.parts()[i]) ++j;
        z *= int_pow(Integer(p.parts()[i]), j - i) * factorial(j - i);
        i = j;
    }
    return z;
}

inline Integer class_size(const Partition& p) {
    return factorial(static_cast<unsigned long>(p.size())) / z_order(p);
}

// All partitions of n in reverse-lexicographic order: (n) first, (1^n) last.
inline std::vector<Partition> partitions_of(int n) {
    if (n < 0) return {};
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int maxpart) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = std::min(rem, maxpart); k >= 1; --k) {
            cur.push_back(k);
            rec(rem - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

inline std::vector<Partition> partitions_up_to(int n) {
    std::vector<Partition> out;
    for (int k = 0; k <= n; ++k) {
        auto pk = partitions_of(k);
        out.insert(out.end(), pk.begin(), pk.end());
    }
    return out;
}

}  // namespace tauforge
