#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tauforge/partition.hpp"

namespace tauforge {

// Bijection of {0..n-1}. Composition convention throughout the library:
// (f o g)(x) = f(g(x)), i.e. g acts first. Printed products like
// eta_m o ... o eta_1 therefore apply eta_1 first.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(int n) : img_(static_cast<std::size_t>(n)) {
        std::iota(img_.begin(), img_.end(), 0);
    }

    static Permutation from_images(std::vector<int> images) {
        Permutation p;
        p.img_ = std::move(images);
        std::vector<char> seen(p.img_.size(), 0);
        for (int v : p.img_) {
            if (v < 0 || v >= static_cast<int>(p.img_.size()) || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("permutation: images are not a bijection");
            seen[static_cast<std::size_t>(v)] = 1;
        }
        return p;
    }

    // One-line cycle list, e.g. {{0,1,2},{3,4}} on n points.
    static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
        Permutation p(n);
        for (const auto& cyc : cycles)
            for (std::size_t i = 0; i < cyc.size(); ++i)
                p.img_[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
        return from_images(p.img_);
    }

    int n() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& images() const { return img_; }

    Permutation compose(const Permutation& g) const {
        Permutation r;
        r.img_.resize(img_.size());
        for (std::size_t x = 0; x < img_.size(); ++x)
            r.img_[x] = img_[static_cast<std::size_t>(g.img_[x])];
        return r;
    }

    Permutation inverse() const {
        Permutation r;
        r.img_.resize(img_.size());
        for (std::size_t x = 0; x < img_.size(); ++x)
            r.img_[static_cast<std::size_t>(img_[x])] = static_cast<int>(x);
        return r;
    }

    bool is_identity() const {
        for (std::size_t x = 0; x < img_.size(); ++x)
            if (img_[x] != static_cast<int>(x)) return false;
        return true;
    }

    Partition cycle_type() const {
        std::vector<char> seen(img_.size(), 0);
        std::vector<int> lens;
        for (std::size_t x = 0; x < img_.size(); ++x) {
            if (seen[x]) continue;
            int len = 0;
            std::size_t y = x;
            while (!seen[y]) {
                seen[y] = 1;
                ++len;
                y = static_cast<std::size_t>(img_[y]);
            }
            lens.push_back(len);
        }
        return Partition(std::move(lens));
    }

    int cycle_count() const { return cycle_type().length(); }
    int degeneracy() const { return n() - cycle_count(); }

    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> img_;
};

namespace detail {

struct UnionFind {
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
    int components() {
        int c = 0;
        for (std::size_t x = 0; x < parent.size(); ++x) c += (find(static_cast<int>(x)) == static_cast<int>(x));
        return c;
    }
    std::vector<int> parent;
};

}  // namespace detail

// Orbit connectivity of the generators' cycle graphs; equivalent to the
// generated subgroup acting transitively on {0..n-1}.
inline bool is_transitive(const std::vector<Permutation>& gens, int n) {
    if (n <= 1) return true;
    detail::UnionFind uf(n);
    for (const auto& g : gens) {
        if (g.n() != n) throw std::invalid_argument("is_transitive: generator size mismatch");
        for (int x = 0; x < n; ++x) uf.unite(x, g(x));
    }
    return uf.components() == 1;
}

inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_images(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

// Canonical representative of a cycle type: consecutive blocks.
inline Permutation class_representative(const Partition& type) {
    int n = type.size();
    std::vector<std::vector<int>> cycles;
    int next = 0;
    for (int len : type.parts()) {
        std::vector<int> c(static_cast<std::size_t>(len));
        std::iota(c.begin(), c.end(), next);
        next += len;
        cycles.push_back(std::move(c));
    }
    return Permutation::from_cycles(n, cycles);
}

}  // namespace tauforge
