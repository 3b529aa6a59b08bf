#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "tauforge/partition.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

namespace detail {

// One-row Schur polynomials s_0..s_n in the p-variables, from the defining
// expansion exp{sum p_i z^i / i}: k s_k = sum_{i=1}^{k} p_i s_{k-i}.
inline std::vector<Series> schur_rows_upto(int n, const Truncation& t) {
    std::vector<Series> s;
    s.reserve(static_cast<std::size_t>(n) + 1);
    s.push_back(Series::one(t));
    for (int k = 1; k <= n; ++k) {
        Series acc = Series::zero(t);
        for (int i = 1; i <= k; ++i)
            acc += s[static_cast<std::size_t>(k - i)].mul_monomial(Monomial::var(VarId::p(i)),
                                                                   Rational(1));
        s.push_back(acc.scaled(Rational(1, k)));
    }
    return s;
}

// Determinant of a series matrix by Laplace expansion over row subsets,
// memoized per column; division-free.
inline Series series_det(const std::vector<std::vector<Series>>& m, const Truncation& t) {
    int n = static_cast<int>(m.size());
    if (n == 0) return Series::one(t);
    std::map<std::vector<int>, Series> cur;
    cur[{}] = Series::one(t);
    for (int col = 0; col < n; ++col) {
        std::map<std::vector<int>, Series> next;
        for (const auto& [rows, minor] : cur) {
            for (int r = 0; r < n; ++r) {
                auto it = std::lower_bound(rows.begin(), rows.end(), r);
                if (it != rows.end() && *it == r) continue;
                int pos = static_cast<int>(it - rows.begin());
                int sign = (static_cast<int>(rows.size()) - pos) % 2 == 0 ? 1 : -1;
                if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero())
                    continue;
                std::vector<int> nrows = rows;
                nrows.insert(nrows.begin() + pos, r);
                Series contrib =
                    minor * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
                if (sign < 0) contrib = -contrib;
                auto [jt, inserted] = next.emplace(std::move(nrows), contrib);
                if (!inserted) jt->second += contrib;
            }
        }
        cur = std::move(next);
    }
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    auto it = cur.find(all);
    return it == cur.end() ? Series::zero(t) : it->second;
}

}  // namespace detail

// s_k(p) for the one-part partition (k); quasi-homogeneous of weight k.
// A polynomial, hence exact under any requested truncation.
inline Series schur_row(int k, const Truncation& t) {
    if (k < 0) throw std::invalid_argument("schur_row: negative index");
    Truncation full = Truncation::weight(k);
    return detail::schur_rows_upto(k, full)[static_cast<std::size_t>(k)].rewrapped(t);
}

// Jacobi-Trudi determinant det|| s_{mu_i - i + j} ||, entries s with negative
// index being 0. Computed at full weight |mu|, then re-binned to the request.
inline Series schur(const Partition& mu, const Truncation& t) {
    int n = mu.length();
    if (n == 0) return Series::one(t);
    Truncation full = Truncation::weight(mu.size());
    auto rows = detail::schur_rows_upto(mu.size(), full);
    std::vector<std::vector<Series>> m(static_cast<std::size_t>(n),
                                       std::vector<Series>(static_cast<std::size_t>(n)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            int k = mu.parts()[static_cast<std::size_t>(i - 1)] - i + j;
            m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                (k < 0 || k > mu.size()) ? Series::zero(full) : rows[static_cast<std::size_t>(k)];
        }
    return detail::series_det(m, full).rewrapped(t);
}

// s_mu(v,v,v,...) = dim_ratio(mu) * prod (v + c(w)); exact closed form.
inline Rational principal_specialization(const Partition& mu, const Rational& v) {
    Rational acc = dim_ratio(mu);
    for (int c : contents(mu)) acc *= v + c;
    return acc;
}

// sum over all mu with 2|mu| <= weight cap of s_mu(p) s_mu(q).
inline Series cauchy_sum(const Truncation& t) {
    Series acc = Series::zero(t);
    for (int n = 0; 2 * n <= t.weight_cap; ++n)
        for (const Partition& mu : partitions_of(n)) {
            Series sp = schur(mu, t);
            acc += sp * sp.swap_pq();
        }
    return acc;
}

// Cache of full Schur polynomials keyed by partition; a stored entry is exact
// (weight |mu|), so any truncation request is served by re-truncation.
class SchurCache {
public:
    Series get(const Partition& mu, const Truncation& t) {
        {
            std::shared_lock lk(mu_);
            auto it = cache_.find(mu);
            if (it != cache_.end()) return it->second.rewrapped(t);
        }
        Series full = schur(mu, Truncation::weight(mu.size()));
        std::unique_lock lk(mu_);
        auto [it, inserted] = cache_.emplace(mu, std::move(full));
        return it->second.rewrapped(t);
    }

private:
    std::shared_mutex mu_;
    std::map<Partition, Series> cache_;
};

inline SchurCache& schur_cache() {
    static SchurCache cache;
    return cache;
}

}  // namespace tauforge
