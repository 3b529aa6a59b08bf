#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tauforge/hierarchy.hpp"
#include "tauforge/oracles.hpp"
#include "tauforge/partition.hpp"
#include "tauforge/permutation.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

namespace detail {

// Enumerates permutations of a prescribed cycle type on {0..n-1} and feeds
// them to visit. Cycles are anchored at the smallest unplaced point.
template <typename Visit>
void for_each_of_type(const Partition& type, Visit&& visit) {
    int n = type.size();
    std::vector<int> remaining_parts = type.parts();
    std::vector<int> img(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);

    std::function<void()> place = [&]() {
        int anchor = -1;
        for (int x = 0; x < n; ++x)
            if (!used[static_cast<std::size_t>(x)]) { anchor = x; break; }
        if (anchor < 0) {
            visit(Permutation::from_images(img));
            return;
        }
        int prev_len = -1;
        for (std::size_t idx = 0; idx < remaining_parts.size(); ++idx) {
            int len = remaining_parts[idx];
            if (len == prev_len) continue;  // same length: identical outcome
            prev_len = len;
            remaining_parts.erase(remaining_parts.begin() + static_cast<long>(idx));
            used[static_cast<std::size_t>(anchor)] = 1;
            std::vector<int> cyc{anchor};
            std::function<void()> extend = [&]() {
                if (static_cast<int>(cyc.size()) == len) {
                    for (std::size_t i = 0; i < cyc.size(); ++i)
                        img[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
                    place();
                    for (int x : cyc) img[static_cast<std::size_t>(x)] = -1;
                    return;
                }
                for (int x = anchor + 1; x < n; ++x) {
                    if (used[static_cast<std::size_t>(x)]) continue;
                    used[static_cast<std::size_t>(x)] = 1;
                    cyc.push_back(x);
                    extend();
                    cyc.pop_back();
                    used[static_cast<std::size_t>(x)] = 0;
                }
            };
            extend();
            used[static_cast<std::size_t>(anchor)] = 0;
            remaining_parts.insert(remaining_parts.begin() + static_cast<long>(idx), len);
        }
    };
    place();
}

inline Integer fixed_point_free_involutions(int half_edges) {
    // (2n-1)!!
    Integer acc(1);
    for (int k = half_edges - 1; k >= 1; k -= 2) acc *= k;
    return acc;
}

}  // namespace detail

// Weighted count of map triples (alpha, sigma, phi), phi alpha sigma = id,
// alpha a fixed-point-free involution on 2n half-edges: |triples|/(2n)!.
// Optional filters: sigma's cycle type (vertex valencies), phi's cycle count
// (faces), a genus pin, connectedness. rooted multiplies by 2n.
inline Rational map_oracle(int n_edges, std::optional<Partition> vertex_type,
                           std::optional<int> face_count, std::optional<int> genus,
                           bool connected, bool rooted, const Budget& budget = Budget(),
                           std::optional<Partition> face_type = std::nullopt) {
    int d = 2 * n_edges;  // half-edges
    if (d <= 0 || d > 12) throw std::invalid_argument("map_oracle: need 1 <= n_edges <= 6");
    if (vertex_type && vertex_type->size() != d)
        throw std::invalid_argument("map_oracle: vertex type must be a partition of 2n");
    if (face_type && face_type->size() != d)
        throw std::invalid_argument("map_oracle: face type must be a partition of 2n");

    // alpha is fixed to (0 1)(2 3)...; the full sweep over alpha is the
    // conjugation orbit, so counts scale by the number of involutions.
    Permutation alpha(d);
    {
        std::vector<int> img(static_cast<std::size_t>(d));
        for (int i = 0; i < d; i += 2) { img[static_cast<std::size_t>(i)] = i + 1; img[static_cast<std::size_t>(i + 1)] = i; }
        alpha = Permutation::from_images(img);
    }

    double planned = vertex_type
                         ? static_cast<double>(class_size(*vertex_type).get_d())
                         : static_cast<double>(factorial(static_cast<unsigned long>(d)).get_d());
    budget.require(planned, "map_oracle");

    long count = 0;
    auto consider = [&](const Permutation& sigma) {
        Permutation phi = alpha.compose(sigma).inverse();
        if (face_count && phi.cycle_count() != *face_count) return;
        if (face_type && !(phi.cycle_type() == *face_type)) return;
        bool conn = is_transitive({alpha, sigma}, d);
        if (connected && !conn) return;
        if (genus) {
            if (!conn) return;  // genus only defined per connected surface
            int v = sigma.cycle_count(), f = phi.cycle_count();
            if (v - n_edges + f != 2 - 2 * *genus) return;
        }
        ++count;
    };
    if (vertex_type) {
        detail::for_each_of_type(*vertex_type, consider);
    } else {
        for (const auto& sigma : all_permutations(d)) consider(sigma);
    }

    Rational weighted = Rational(count) * Rational(detail::fixed_point_free_involutions(d)) /
                        Rational(factorial(static_cast<unsigned long>(d)));
    return rooted ? weighted * d : weighted;
}

// Rooted triangulations with 2n faces and genus g, counted through the dual
// cubic maps (all vertex valencies 3 on 6n half-edges).
inline Rational triangulation_count_oracle(int n, int g, const Budget& budget = Budget()) {
    std::vector<int> parts(static_cast<std::size_t>(2 * n), 3);
    return map_oracle(3 * n, Partition(std::move(parts)), std::nullopt, g, true, true, budget);
}

// t(n,g) and T(n,g) = t(n,g)/(3n+2) tables on S = {n >= -1, 0 <= g <= (n+1)/2}.
// t(0,0) is not part of the printed data; it is calibrated once against the
// brute-force count of rooted triangulations with two faces (see
// resolve_t00_calibration) and pinned by tests.
class TriangulationTable {
public:
    TriangulationTable(int n_max, std::optional<int> g_max, const Rational& t00)
        : n_max_(n_max) {
        set(-1, 0, make_rational(1, 2));
        if (n_max >= 0) set(0, 0, t00);
        for (int n = 1; n <= n_max; ++n) {
            int gtop = (n + 1) / 2;
            if (g_max) gtop = std::min(gtop, *g_max);
            for (int g = 0; g <= gtop; ++g) {
                Rational sum(0);
                for (int i = -1; i <= n - 1; ++i) {
                    int j = n - 2 - i;
                    for (int h = 0; h <= g; ++h) {
                        int k = g - h;
                        sum += t(i, h) * t(j, k);
                    }
                }
                Rational val = Rational(4 * (3 * n + 2)) *
                               (Rational(n) * Rational(3 * n - 2) * t(n - 2, g - 1) + sum) /
                               Rational(n + 1);
                set(n, g, val);
            }
        }
    }

    static bool in_domain(int n, int g) { return n >= -1 && g >= 0 && 2 * g <= n + 1; }

    Rational t(int n, int g) const {
        if (!in_domain(n, g)) return Rational(0);
        auto it = table_.find({n, g});
        return it == table_.end() ? Rational(0) : it->second;
    }

    Rational T(int n, int g) const { return t(n, g) / Rational(3 * n + 2); }

    int n_max() const { return n_max_; }

private:
    void set(int n, int g, const Rational& v) { table_[{n, g}] = v; }
    std::map<std::pair<int, int>, Rational> table_;
    int n_max_;
};

// T(1,0) = 2 t(0,0) by the recurrence, so one exact map count pins t(0,0).
inline Rational resolve_t00_calibration(const Budget& budget = Budget()) {
    Rational t10 = triangulation_count_oracle(1, 0, budget);
    return t10 / 2;
}

// b_0 = -1, b_{g+1} = (25g^2-1)/24 b_g + 1/2 sum_{m=1}^{g} b_{g+1-m} b_m.
inline std::vector<Rational> bg_table(int g_max) {
    std::vector<Rational> b;
    b.push_back(Rational(-1));
    for (int g = 0; g < g_max; ++g) {
        Rational next = make_rational(25 * g * g - 1, 24) * b[static_cast<std::size_t>(g)];
        Rational sum(0);
        for (int m = 1; m <= g; ++m)
            sum += b[static_cast<std::size_t>(g + 1 - m)] * b[static_cast<std::size_t>(m)];
        next += sum / 2;
        b.push_back(next);
    }
    return b;
}

// Formal check that U(y) = sum b_g y^{-(5(g-1)/2+2)} solves U''/3 + U^2 = y,
// through every exponent reachable with g <= g_max. Exponents live in (1/2)Z
// and are keyed by twice their value.
inline ResidualReport painleve_check(int g_max, std::optional<std::vector<Rational>> table = std::nullopt) {
    std::vector<Rational> b = table ? *table : bg_table(g_max);
    auto expo2 = [](int g) { return 1 - 5 * g; };  // 2 * exponent of y in U
    std::map<int, Rational> residual;              // key: 2 * exponent
    // U^2
    for (int g = 0; g <= g_max; ++g)
        for (int h = 0; h <= g_max; ++h)
            residual[expo2(g) + expo2(h)] += b[static_cast<std::size_t>(g)] * b[static_cast<std::size_t>(h)];
    // U''/3
    for (int g = 0; g <= g_max; ++g) {
        Rational e = Rational(expo2(g)) / 2;
        residual[expo2(g) - 4] += b[static_cast<std::size_t>(g)] * e * (e - 1) / 3;
    }
    residual[2] -= 1;  // the right-hand side y

    // only exponents fully determined by g <= g_max are trustworthy: the pair
    // (g,h) reaches 2e = 2 - 5(g+h), so keep 2e > 2 - 5(g_max+1)
    Truncation t = Truncation::weight(0);
    Series pack(t);  // diagnostics only: nonzero entries packed as constants
    bool pass = true;
    Rational worst(0);
    for (const auto& [e2, c] : residual) {
        if (e2 <= 2 - 5 * (g_max + 1)) continue;
        if (c != 0) {
            pass = false;
            worst = c;
        }
    }
    ResidualReport rep;
    rep.equation = "painleve.1";
    rep.max_checked_weight = g_max;
    rep.pass = pass;
    if (!pass) rep.residual = Series::constant(worst, t);
    else rep.residual = Series::zero(t);
    return rep;
}

// Leading term of the triangulation asymptotics in binary64; the only floating
// point in the library, shared with the trend checks below.
inline double triangulation_asymptotic(int n, int g, const std::vector<Rational>& b) {
    double bg = b.at(static_cast<std::size_t>(g)).get_d();
    double gamma = std::tgamma(2.5 * g - 0.5);
    return 3.0 * bg / gamma * std::pow(3.0 / 8.0, (g - 1) / 2.0) *
           std::pow(static_cast<double>(n), 2.5 * (g - 1)) *
           std::pow(12.0 * std::sqrt(3.0), n);
}

struct TrendReport {
    std::vector<std::pair<int, double>> ratios;  // (n, T/asymptotic)
    bool improving = false;                      // |ratio-1| strictly smaller at the far end
};

inline TrendReport triangulation_trend(const TriangulationTable& table,
                                       const std::vector<Rational>& b, int g,
                                       const std::vector<int>& ns) {
    TrendReport rep;
    for (int n : ns)
        rep.ratios.emplace_back(n, table.T(n, g).get_d() / triangulation_asymptotic(n, g, b));
    if (rep.ratios.size() >= 2) {
        double first = std::fabs(rep.ratios.front().second - 1.0);
        double last = std::fabs(rep.ratios.back().second - 1.0);
        rep.improving = last < first;
    }
    return rep;
}

// Exact connected Hurwitz numbers h_{m;1^n} via the character sum
//   h^o_{m;1^n} = (1/n!) sum_{lambda partition n} (dim_lambda/n!) dim_lambda f2(lambda)^m,
// made connected by log over the (p_1, u) subring.
inline std::map<std::pair<int, int>, Rational> hurwitz_one_column(int n_max, int m_max) {
    Truncation t = Truncation::weight(n_max).with_aux("u", m_max);
    Series ho = Series::zero(t);
    ho.add_term(Monomial::unit(), Rational(1));
    for (int n = 1; n <= n_max; ++n) {
        for (const Partition& lam : partitions_of(n)) {
            Rational dr = dim_ratio(lam);
            Rational base = f2(lam);
            Rational fpow(1);
            for (int m = 0; m <= m_max; ++m) {
                // coefficient of p_1^n u^m in H^o: sum_lambda dr^2 f2^m / m!
                ho.add_term(Monomial::var(VarId::p(1), n) * Monomial::var(VarId::aux("u"), m),
                            dr * dr * fpow /
                                Rational(factorial(static_cast<unsigned long>(m))));
                fpow *= base;
            }
        }
    }
    Series h = ho.log();
    std::map<std::pair<int, int>, Rational> out;
    for (const auto& [mono, c] : h.terms()) {
        int n = mono.exponent(VarId::p(1));
        int m = mono.exponent(VarId::aux("u"));
        out[{n, m}] = c * Rational(factorial(static_cast<unsigned long>(m)));
    }
    return out;
}

struct HurwitzTrendReport {
    std::vector<std::pair<int, double>> ratios;
    bool improving = false;
};

// Hurwitz asymptotics: h_{2n+2g-2;1^n}/(2n+2g-2)! ~ e^n n^{5(g-1)/2 - 1} b_g /
// (Gamma(5g/2-1/2) 2^{3g/2-1/2}).
inline HurwitzTrendReport hurwitz_asymptotic_check(int n_max, int g,
                                                   const std::vector<Rational>& b) {
    if (n_max > 20) throw std::invalid_argument("hurwitz_asymptotic_check: n_max <= 20");
    int m_max = 2 * n_max + 2 * g - 2;
    auto h = hurwitz_one_column(n_max, m_max);
    HurwitzTrendReport rep;
    for (int n = std::max(2, n_max / 2); n <= n_max; ++n) {
        int m = 2 * n + 2 * g - 2;
        auto it = h.find({n, m});
        if (it == h.end()) continue;
        Rational exact = it->second / Rational(factorial(static_cast<unsigned long>(m)));
        double asym = std::exp(n) * std::pow(n, 2.5 * (g - 1) - 1) *
                      b.at(static_cast<std::size_t>(g)).get_d() /
                      (std::tgamma(2.5 * g - 0.5) * std::pow(2.0, 1.5 * g - 0.5));
        rep.ratios.emplace_back(n, exact.get_d() / asym);
    }
    if (rep.ratios.size() >= 2) {
        double first = std::fabs(rep.ratios.front().second - 1.0);
        double last = std::fabs(rep.ratios.back().second - 1.0);
        rep.improving = last < first;
    }
    return rep;
}

// Genus-0 closed formulas (Hurwitz / BMS / monotone); exact rationals with
// the ascending-product convention of rising_product.
enum class Genus0Kind { hurwitz, bms, monotonic };

inline Rational genus0_closed(Genus0Kind kind, const Partition& mu, int m_bms = 2) {
    int d = mu.size(), l = mu.length();
    if (d == 0) throw std::invalid_argument("genus0_closed: empty partition");
    Rational aut(aut_order(mu));
    switch (kind) {
        case Genus0Kind::hurwitz: {
            int m = d + l - 2;
            Rational acc = rat_pow(Rational(d), l - 3) *
                           Rational(factorial(static_cast<unsigned long>(m))) / aut;
            for (int part : mu.parts())
                acc *= Rational(int_pow(Integer(part), static_cast<unsigned long>(part))) /
                       Rational(factorial(static_cast<unsigned long>(part)));
            return acc;
        }
        case Genus0Kind::bms: {
            if (m_bms < 2)
                throw std::invalid_argument("genus0_closed: BMS closed formula needs m >= 2");
            int k = d + l - 2;
            Rational acc = Rational(m_bms) *
                           rising_product(Rational(m_bms * d - k + 1), l - 3) / aut;
            for (int part : mu.parts())
                acc *= Rational(binomial(static_cast<unsigned long>(m_bms * part - 1),
                                         static_cast<unsigned long>(part)));
            return acc;
        }
        case Genus0Kind::monotonic: {
            Rational acc = rising_product(Rational(2 * d + 1), l - 3) / aut;
            for (int part : mu.parts())
                acc *= Rational(binomial(static_cast<unsigned long>(2 * part),
                                         static_cast<unsigned long>(part)));
            return acc;
        }
    }
    throw std::logic_error("genus0_closed: unreachable");
}

}  // namespace tauforge
