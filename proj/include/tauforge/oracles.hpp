#pragma once

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tauforge/class_algebra.hpp"
#include "tauforge/partition.hpp"
#include "tauforge/permutation.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Hard cap on enumeration sweep sizes. Oracles are ground truth: a sweep that
// does not fit errors out instead of sampling.
struct Budget {
    unsigned long max_steps;

    Budget() : max_steps(default_steps()) {}
    explicit Budget(unsigned long steps) : max_steps(steps) {}

    static unsigned long default_steps() {
        if (const char* env = std::getenv("TAUFORGE_BUDGET")) {
            unsigned long v = std::strtoull(env, nullptr, 10);
            if (v > 0) return v;
        }
        return 200'000'000ULL;
    }

    void require(double planned, const std::string& who) const {
        if (planned > static_cast<double>(max_steps))
            throw BudgetExceeded(who + ": planned " + std::to_string(planned) +
                                 " steps exceed budget " + std::to_string(max_steps));
    }
};

namespace detail {

// Transpositions (a,b), a < b, sorted by larger element then smaller; the
// monotone sweeps rely on this ordering.
inline std::vector<std::pair<int, int>> transpositions(int n) {
    std::vector<std::pair<int, int>> ts;
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a) ts.emplace_back(a, b);
    return ts;
}

inline double ipow(double base, int e) {
    double r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// DFS over m-tuples of transpositions with O(1) incremental left-composition.
// At each leaf calls visit(product_type, edges). `monotone` restricts to
// weakly increasing larger elements.
template <typename Visit>
void sweep_transpositions(int n, int m, bool monotone, Visit&& visit) {
    auto ts = transpositions(n);
    std::vector<int> cur(static_cast<std::size_t>(n)), inv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] = inv[static_cast<std::size_t>(i)] = i;
    std::vector<int> chosen(static_cast<std::size_t>(m), 0);

    auto apply = [&](int t) {  // left-compose (a b): swap values a,b
        auto [a, b] = ts[static_cast<std::size_t>(t)];
        int xa = inv[static_cast<std::size_t>(a)], xb = inv[static_cast<std::size_t>(b)];
        std::swap(cur[static_cast<std::size_t>(xa)], cur[static_cast<std::size_t>(xb)]);
        std::swap(inv[static_cast<std::size_t>(a)], inv[static_cast<std::size_t>(b)]);
    };

    std::vector<int> stack_edges;
    auto rec = [&](auto&& self, int depth, int min_t) -> void {
        if (depth == m) {
            Permutation prod = Permutation::from_images(cur);
            visit(prod, chosen);
            return;
        }
        int start = monotone ? min_t : 0;
        for (int t = start; t < static_cast<int>(ts.size()); ++t) {
            chosen[static_cast<std::size_t>(depth)] = t;
            apply(t);
            // weak monotonicity: next transposition's larger element >= this one's;
            // transpositions with the same larger element stay available
            int next_min = t;
            while (next_min > 0 && ts[static_cast<std::size_t>(next_min - 1)].second ==
                                       ts[static_cast<std::size_t>(t)].second)
                --next_min;
            self(self, depth + 1, next_min);
            apply(t);  // involution: undo
        }
    };
    rec(rec, 0, 0);
}

inline bool edges_transitive(int n, const std::vector<int>& chosen,
                             const std::vector<std::pair<int, int>>& ts) {
    UnionFind uf(n);
    for (int t : chosen) uf.unite(ts[static_cast<std::size_t>(t)].first,
                                  ts[static_cast<std::size_t>(t)].second);
    return uf.components() == 1;
}

inline std::map<int, std::vector<Permutation>> perms_by_degeneracy(int n) {
    std::map<int, std::vector<Permutation>> buckets;
    for (auto& g : all_permutations(n)) buckets[g.degeneracy()].push_back(std::move(g));
    return buckets;
}

}  // namespace detail

// h^o_{m;mu} (connected=false) and h_{m;mu} (connected=true): normalized
// counts of m-tuples of transpositions with product of type mu.
inline std::map<Partition, Rational> hurwitz_oracle(int n, int m, bool connected,
                                                    const Budget& budget = Budget()) {
    if (n < 1 || n > 7) throw std::invalid_argument("hurwitz_oracle: need 1 <= n <= 7");
    auto ts = detail::transpositions(n);
    budget.require(detail::ipow(static_cast<double>(ts.size()), m), "hurwitz_oracle");
    std::map<Partition, long> counts;
    detail::sweep_transpositions(n, m, false, [&](const Permutation& prod, const std::vector<int>& chosen) {
        if (connected && !detail::edges_transitive(n, chosen, ts)) return;
        ++counts[prod.cycle_type()];
    });
    std::map<Partition, Rational> out;
    Rational nfac(factorial(static_cast<unsigned long>(n)));
    for (const auto& [mu, c] : counts) out[mu] = Rational(c) / nfac;
    return out;
}

// Monotone variant: weakly increasing larger elements.
inline std::map<Partition, Rational> monotonic_oracle(int n, int m, bool connected,
                                                      const Budget& budget = Budget()) {
    if (n < 1 || n > 6) throw std::invalid_argument("monotonic_oracle: need 1 <= n <= 6");
    auto ts = detail::transpositions(n);
    budget.require(detail::ipow(static_cast<double>(ts.size()), m), "monotonic_oracle");
    std::map<Partition, long> counts;
    detail::sweep_transpositions(n, m, true, [&](const Permutation& prod, const std::vector<int>& chosen) {
        if (connected && !detail::edges_transitive(n, chosen, ts)) return;
        ++counts[prod.cycle_type()];
    });
    std::map<Partition, Rational> out;
    Rational nfac(factorial(static_cast<unsigned long>(n)));
    for (const auto& [mu, c] : counts) out[mu] = Rational(c) / nfac;
    return out;
}

// Weighted monotone counts (Guay-Paquet--Harnad weights): each monotone tuple
// contributes the monomial prod_s d_{k_s}, k_s the number of transpositions
// whose larger element is s (1-based cell index s = 1..n).
inline std::map<Partition, Series> monotonic_weighted_oracle(int n, int m_max, bool connected,
                                                             const Truncation& t,
                                                             const Budget& budget = Budget()) {
    if (n < 1 || n > 5) throw std::invalid_argument("monotonic_weighted_oracle: need 1 <= n <= 5");
    auto ts = detail::transpositions(n);
    double planned = 0;
    for (int m = 0; m <= m_max; ++m) planned += detail::ipow(static_cast<double>(ts.size()), m);
    budget.require(planned, "monotonic_weighted_oracle");
    std::map<Partition, Series> out;
    Rational nfac(factorial(static_cast<unsigned long>(n)));
    for (int m = 0; m <= m_max; ++m) {
        detail::sweep_transpositions(n, m, true, [&](const Permutation& prod, const std::vector<int>& chosen) {
            if (connected && !detail::edges_transitive(n, chosen, ts)) return;
            std::vector<int> k(static_cast<std::size_t>(n), 0);
            for (int c : chosen) ++k[static_cast<std::size_t>(ts[static_cast<std::size_t>(c)].second)];
            Monomial mono = Monomial::unit();
            for (int s = 0; s < n; ++s) mono = mono * Monomial::var(VarId::d(k[static_cast<std::size_t>(s)]));
            auto [it, inserted] = out.emplace(prod.cycle_type(), Series::zero(t));
            it->second.add_term(mono, Rational(1) / nfac);
        });
    }
    return out;
}

// a^o_{k_1..k_m;mu}: factors are permutations of prescribed degeneracies.
inline std::map<Partition, Rational> generalized_oracle(int n, const std::vector<int>& degs,
                                                        bool connected,
                                                        const Budget& budget = Budget()) {
    if (n < 1 || n > 6) throw std::invalid_argument("generalized_oracle: need 1 <= n <= 6");
    auto buckets = detail::perms_by_degeneracy(n);
    double planned = 1;
    for (int k : degs) {
        auto it = buckets.find(k);
        planned *= it == buckets.end() ? 0.0 : static_cast<double>(it->second.size());
    }
    budget.require(planned, "generalized_oracle");

    std::map<Partition, long> counts;
    int m = static_cast<int>(degs.size());
    std::vector<const Permutation*> pick(static_cast<std::size_t>(m), nullptr);
    auto rec = [&](auto&& self, int depth, const Permutation& acc) -> void {
        if (depth == m) {
            if (connected) {
                std::vector<Permutation> gens;
                for (auto* g : pick) gens.push_back(*g);
                if (!is_transitive(gens, n)) return;
            }
            ++counts[acc.cycle_type()];
            return;
        }
        auto it = buckets.find(degs[static_cast<std::size_t>(depth)]);
        if (it == buckets.end()) return;
        for (const Permutation& g : it->second) {
            pick[static_cast<std::size_t>(depth)] = &g;
            // product tau_1 o tau_2 o ... applies the last factor first;
            // counts keyed by cycle type are order-independent anyway
            self(self, depth + 1, acc.compose(g));
        }
    };
    rec(rec, 0, Permutation(n));
    std::map<Partition, Rational> out;
    Rational nfac(factorial(static_cast<unsigned long>(n)));
    for (const auto& [mu, c] : counts) out[mu] = Rational(c) / nfac;
    return out;
}

// b^o_{m,k;mu}: m arbitrary factors, binned by total degeneracy k.
inline std::map<std::pair<int, Partition>, Rational> bms_oracle(int n, int m, bool connected,
                                                                const Budget& budget = Budget()) {
    if (n < 1 || n > 5) throw std::invalid_argument("bms_oracle: need 1 <= n <= 5");
    double fact = static_cast<double>(factorial(static_cast<unsigned long>(n)).get_ui());
    budget.require(detail::ipow(fact, m), "bms_oracle");
    auto perms = all_permutations(n);
    std::map<std::pair<int, Partition>, long> counts;
    std::vector<const Permutation*> pick(static_cast<std::size_t>(m), nullptr);
    auto rec = [&](auto&& self, int depth, const Permutation& acc, int k) -> void {
        if (depth == m) {
            if (connected) {
                std::vector<Permutation> gens;
                for (auto* g : pick) gens.push_back(*g);
                if (!is_transitive(gens, n)) return;
            }
            ++counts[{k, acc.cycle_type()}];
            return;
        }
        for (const Permutation& g : perms) {
            pick[static_cast<std::size_t>(depth)] = &g;
            self(self, depth + 1, acc.compose(g), k + g.degeneracy());
        }
    };
    rec(rec, 0, Permutation(n), 0);
    std::map<std::pair<int, Partition>, Rational> out;
    Rational nfac(factorial(static_cast<unsigned long>(n)));
    for (const auto& [key, c] : counts) out[key] = Rational(c) / nfac;
    return out;
}

// d^o_{m;mu,nu}: alpha beta tau_1...tau_m = id with alpha, beta of recorded
// types and the tau_i transpositions. beta is determined by the rest.
inline std::map<std::pair<Partition, Partition>, Rational> double_hurwitz_oracle(
    int n, int m, bool connected, const Budget& budget = Budget()) {
    if (n < 1 || n > 5) throw std::invalid_argument("double_hurwitz_oracle: need 1 <= n <= 5");
    auto ts = detail::transpositions(n);
    double fact = static_cast<double>(factorial(static_cast<unsigned long>(n)).get_ui());
    budget.require(fact * detail::ipow(static_cast<double>(ts.size()), m), "double_hurwitz_oracle");
    auto perms = all_permutations(n);
    std::map<std::pair<Partition, Partition>, long> counts;
    detail::sweep_transpositions(n, m, false, [&](const Permutation& prod, const std::vector<int>& chosen) {
        // prod = tau_1 o ... o tau_m (left-composition order of the sweep is a
        // relabeling of the tuple; counts by type are unaffected)
        for (const Permutation& alpha : perms) {
            Permutation beta = alpha.inverse().compose(prod.inverse());
            if (connected) {
                std::vector<Permutation> gens{alpha, beta};
                detail::UnionFind uf(n);
                for (int x = 0; x < n; ++x) {
                    uf.unite(x, alpha(x));
                    uf.unite(x, beta(x));
                }
                for (int t : chosen)
                    uf.unite(ts[static_cast<std::size_t>(t)].first, ts[static_cast<std::size_t>(t)].second);
                if (uf.components() != 1) continue;
            }
            ++counts[{alpha.cycle_type(), beta.cycle_type()}];
        }
    });
    std::map<std::pair<Partition, Partition>, Rational> out;
    Rational nfac(factorial(static_cast<unsigned long>(n)));
    for (const auto& [key, c] : counts) out[key] = Rational(c) / nfac;
    return out;
}

// Sum of all weakly monotone m-tuples of transpositions as a central element;
// materialization of vec C^{(m)} = h_m(X_1..X_n).
inline ClassElement monotone_class_sum(int n, int m) {
    auto ts = detail::transpositions(n);
    std::map<Permutation, long> elt;
    detail::sweep_transpositions(n, m, true, [&](const Permutation& prod, const std::vector<int>&) {
        ++elt[prod];
    });
    // centrality holds by the theory; collapse onto class sums and verify that
    // each class is hit uniformly
    ClassElement out;
    out.n = n;
    std::map<Partition, long> per_class;
    for (const auto& [g, c] : elt) {
        Partition type = g.cycle_type();
        auto [it, inserted] = per_class.emplace(type, c);
        if (!inserted && it->second != c)
            throw std::logic_error("monotone_class_sum: element is not central");
    }
    // classes not present at all have coefficient 0; missing uniformity across
    // untouched members of a touched class would be caught by size accounting
    for (const auto& [type, c] : per_class) {
        long hits = 0;
        for (const auto& [g, cc] : elt)
            if (g.cycle_type() == type) ++hits;
        if (hits != class_size(type).get_si() && c != 0)
            throw std::logic_error("monotone_class_sum: class not uniformly covered");
        out.add(type, Rational(c));
    }
    return out;
}

}  // namespace tauforge
