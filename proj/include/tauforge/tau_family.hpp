#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tauforge/partition.hpp"
#include "tauforge/schur.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

// Content weights y_c of the Orlov-Shcherbin family. `weight` must be defined
// for every content the requested truncation can reach. When the weights come
// from a univariate series phi(c) = d_0 + d_1 c + ..., `phi_coeff` exposes the
// d_k and enables the genus expansion.
struct TauParams {
    std::function<Series(int, const Truncation&)> weight;
    std::function<Series(int, const Truncation&)> phi_coeff;  // may be empty

    bool phi_available() const { return static_cast<bool>(phi_coeff); }

    Series y_mu(const Partition& mu, const Truncation& t) const {
        Series acc = Series::one(t);
        for (int c : contents(mu)) acc = acc * weight(c, t);
        return acc;
    }
};

// y_c = exp(u c); phi(c) = sum u^k c^k / k!. `u` is any constant-free series
// (typically the variable u itself).
inline TauParams hurwitz_params(const Series& u) {
    if (u.constant_term() != 0)
        throw std::invalid_argument("hurwitz_params: u must be a constant-free formal series");
    return TauParams{
        [u](int c, const Truncation& t) { return u.truncated(t).scaled(c).exp(); },
        [u](int k, const Truncation& t) {
            return u.truncated(t).pow(k).scaled(Rational(1) / Rational(factorial(
                                                    static_cast<unsigned long>(k))));
        }};
}

// y_c = prod_i (1 + u_i c); phi(c) = prod_i (1 + u_i c) as a polynomial.
inline TauParams generalized_params(const std::vector<Series>& us) {
    return TauParams{
        [us](int c, const Truncation& t) {
            Series acc = Series::one(t);
            for (const Series& u : us) acc = acc * (Series::one(t) + u.truncated(t).scaled(c));
            return acc;
        },
        [us](int k, const Truncation& t) {
            // elementary symmetric polynomial e_k(u_1..u_m)
            if (k > static_cast<int>(us.size())) return Series::zero(t);
            std::vector<Series> e(us.size() + 1, Series::zero(t));
            e[0] = Series::one(t);
            for (const Series& u : us)
                for (int j = static_cast<int>(us.size()); j >= 1; --j)
                    e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * u.truncated(t);
            return e[static_cast<std::size_t>(k)];
        }};
}

// y_c = (1 + u c)^m. A numeric (constant) u is legal here, e.g. u = 1 for the
// Remark-2.11 collapse.
inline TauParams bms_params(int m, const Series& u) {
    if (m < 0) throw std::invalid_argument("bms_params: m must be >= 0");
    return TauParams{
        [m, u](int c, const Truncation& t) {
            return (Series::one(t) + u.truncated(t).scaled(c)).pow(m);
        },
        [m, u](int k, const Truncation& t) {
            if (k > m) return Series::zero(t);
            return u.truncated(t).pow(k).scaled(
                Rational(binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(k))));
        }};
}

// y_c = 1/(1 - u c); u is kept formal, a numeric u could sit on a pole.
inline TauParams monotonic_params(const Series& u) {
    if (u.constant_term() != 0)
        throw std::invalid_argument(
            "monotonic_params: numeric u rejected, 1/(1-uc) needs a formal parameter");
    return TauParams{
        [u](int c, const Truncation& t) {
            return (Series::one(t) - u.truncated(t).scaled(c)).reciprocal();
        },
        [u](int k, const Truncation& t) { return u.truncated(t).pow(k); }};
}

// y_c = u + c, the content-shift weights of the N function / hypermap series.
inline TauParams shifted_content_params(const Series& u) {
    return TauParams{
        [u](int c, const Truncation& t) {
            return u.truncated(t) + Series::constant(Rational(c), t);
        },
        [u](int k, const Truncation& t) {
            if (k == 0) return u.truncated(t);
            if (k == 1) return Series::one(t);
            return Series::zero(t);
        }};
}

// phi given by explicit coefficient series d_0, d_1, ... (absent = 0).
inline TauParams custom_phi_params(const std::vector<Series>& d) {
    return TauParams{
        [d](int c, const Truncation& t) {
            Series acc = Series::zero(t);
            Rational cpow(1);
            for (std::size_t k = 0; k < d.size(); ++k) {
                acc += d[k].truncated(t).scaled(cpow);
                cpow *= c;
            }
            return acc;
        },
        [d](int k, const Truncation& t) {
            if (k < 0 || k >= static_cast<int>(d.size())) return Series::zero(t);
            return d[static_cast<std::size_t>(k)].truncated(t);
        }};
}

// sum over mu of y_mu (dim_mu/|mu|!) s_mu(p), the Orlov-Shcherbin tau-function.
inline Series orlov_shcherbin_tau(const TauParams& params, const Truncation& t) {
    Series acc = Series::zero(t);
    for (int n = 0; n <= t.weight_cap; ++n)
        for (const Partition& mu : partitions_of(n)) {
            Series term = params.y_mu(mu, t).scaled(dim_ratio(mu)) * schur_cache().get(mu, t);
            acc += term;
        }
    return acc;
}

struct GenusParityError : std::logic_error {
    explicit GenusParityError(const std::string& what) : std::logic_error(what) {}
};

// hbar^2 log sum_mu prod_cells phi(hbar c(w)) (dim/|mu|!) s_mu^hbar, with
// s^hbar the p_i -> p_i/hbar^{i+1} deformation. The result must contain only
// even nonnegative hbar powers (each monomial then carries its genus at
// hbar^{2g}); anything else signals a defect and throws.
inline Series genus_expansion(const TauParams& params, const Truncation& t, int gmax) {
    if (!params.phi_available())
        throw std::invalid_argument("genus_expansion: params must come in phi form");
    int n_cap = t.weight_cap;
    int emax = 2 * gmax;
    int hcap = 2 * n_cap + emax;  // window wide enough that all hbar^{<=emax} terms are exact
    VarId hbar = VarId::aux("hbar");
    Truncation tg = t;
    tg.with_aux(hbar, hcap);

    if (!(params.phi_coeff(0, tg) == Series::one(tg)))
        throw std::invalid_argument("genus_expansion: phi(0) = d_0 must equal 1");

    // phi(hbar c) per content value
    std::map<int, Series> phi_at;
    auto phi_h = [&](int c) -> const Series& {
        auto it = phi_at.find(c);
        if (it != phi_at.end()) return it->second;
        Series acc = Series::zero(tg);
        for (int k = 0; k <= hcap; ++k) {
            Series dk = params.phi_coeff(k, tg);
            if (dk.is_zero()) continue;
            acc += dk.mul_monomial(Monomial::var(hbar, k), rat_pow(Rational(c), k));
        }
        return phi_at.emplace(c, std::move(acc)).first->second;
    };

    Series sum = Series::zero(tg);
    for (int n = 0; n <= n_cap; ++n)
        for (const Partition& mu : partitions_of(n)) {
            Series yfac = Series::one(tg);
            for (int c : contents(mu)) yfac = yfac * phi_h(c);
            Series shbar =
                schur_cache().get(mu, tg).substitute_scaled([](int i) { return -(i + 1); });
            sum += yfac.scaled(dim_ratio(mu)) * shbar;
        }

    Series expansion = sum.log().mul_monomial(Monomial::var(hbar, 2), Rational(1));

    // keep the validated window hbar^{0..emax}; higher powers were only
    // computed partially and are discarded with the cap
    Truncation tf = t;
    tf.with_aux(hbar, emax);
    Series out(tf);
    for (const auto& [m, c] : expansion.terms()) {
        int e = m.exponent(hbar);
        if (e > emax) continue;
        if (e < 0 || e % 2 != 0)
            throw GenusParityError("genus_expansion: hbar^" + std::to_string(e) +
                                   " term survived: " + m.to_string());
        out.add_term(m, c);
    }
    return out;
}

// Toda family member tau_n(p;q) = r_0(n) sum_mu r_mu(n) s_mu(p) s_mu(q),
// r_mu(n) = prod y_{c(w)+n}. `size_marker` optionally tags each summand with
// marker^{|mu|} (the v-bookkeeping of the double Hurwitz series). The marker
// behaves like a constant factor of every y_c, so r_0(n) must carry the
// matching power marker^{n(n-1)/2} or the Toda chain loses its normalization.
inline Series toda_tau(int n, const TauParams& params, const Truncation& t,
                       std::optional<VarId> size_marker = std::nullopt) {
    Series r0 = Series::one(t);
    if (n >= 0) {
        for (int j = 1; j <= n - 1; ++j) r0 = r0 * params.weight(j, t).pow(n - j);
    } else {
        for (int j = n + 1; j <= 0; ++j) r0 = r0 * params.weight(j, t).pow(j - n);
    }
    if (size_marker) {
        int marker_power = n * (n - 1) / 2;  // same value for n < 0
        r0 = r0.mul_monomial(Monomial::var(*size_marker, marker_power), Rational(1));
    }
    Series acc = Series::zero(t);
    for (int w = 0; 2 * w <= t.weight_cap; ++w)
        for (const Partition& mu : partitions_of(w)) {
            Series rmu = Series::one(t);
            for (int c : contents(mu)) rmu = rmu * params.weight(c + n, t);
            Series sp = schur_cache().get(mu, t);
            Series term = rmu * sp * sp.swap_pq();
            if (size_marker)
                term = term.mul_monomial(Monomial::var(*size_marker, mu.size()), Rational(1));
            acc += term;
        }
    return r0 * acc;
}

// Rooted-map generating series: the q_2 = z, q_{i!=2} = 0 slice of the
// content-shift Toda function with u = w. Coefficient of p_kappa w^m z^n is
// the weighted connected map count R/(2n) (kappa the vertex valencies on 2n
// half-edges, m faces, n edges).
inline Series map_series(int max_edges, int max_faces) {
    Truncation tq = Truncation::weight(4 * max_edges).with_aux("w", max_faces);
    Series w = Series::var(VarId::aux("w"), tq);
    Series inner = toda_tau(0, shifted_content_params(w), tq);
    Truncation t = Truncation::weight(2 * max_edges)
                       .with_aux("w", max_faces)
                       .with_aux("z", max_edges);
    Series zsub = Series::var(VarId::aux("z"), t);
    Series sliced = inner.substitute(
        [&](VarId v) -> std::optional<Series> {
            if (!v.is_q()) return std::nullopt;
            if (v.index() == 2) return zsub;
            return Series::zero(t);
        },
        t);
    return sliced.log();
}

// Semi-infinite plane given by rows beta_k(z) = z^{-k} + sum_{i>=1} c_{k,i}
// z^{-k+i}; rows are normalized to leading coefficient 1 at construction.
class LaurentPlane {
public:
    // rows[k-1] maps z-exponent e -> coefficient series of row beta_k.
    LaurentPlane(std::vector<std::map<int, Series>> rows, int z_degree_bound, Truncation t)
        : rows_(std::move(rows)), zmax_(z_degree_bound), trunc_(std::move(t)) {
        for (int k = 1; k <= static_cast<int>(rows_.size()); ++k) {
            auto& row = rows_[static_cast<std::size_t>(k - 1)];
            for (const auto& [e, c] : row)
                if (e < -k && !c.is_zero())
                    throw std::invalid_argument("laurent plane: row " + std::to_string(k) +
                                                " has terms below z^{-k}");
            auto lead = row.find(-k);
            if (lead == row.end() || lead->second.constant_term() == 0)
                throw std::invalid_argument(
                    "laurent plane: vacuum normalization impossible, leading coefficient of row " +
                    std::to_string(k) + " is not a unit");
            if (!(lead->second == Series::one(trunc_))) {
                Series inv = lead->second.reciprocal();
                for (auto& [e, c] : row) c = c * inv;
            }
        }
    }

    int depth() const { return static_cast<int>(rows_.size()); }
    int z_degree_bound() const { return zmax_; }
    const Truncation& truncation() const { return trunc_; }

    Series coefficient(int k, int e) const {
        const auto& row = rows_.at(static_cast<std::size_t>(k - 1));
        auto it = row.find(e);
        return it == row.end() ? Series::zero(trunc_) : it->second;
    }

private:
    std::vector<std::map<int, Series>> rows_;
    int zmax_;
    Truncation trunc_;
};

// The plane -> tau procedure: tau = sum_mu det(M_mu) s_mu, where M_mu selects
// row exponents m_i = mu_i - i from the first l(mu) plane rows. The infinite
// determinant stabilizes at L = l(mu) because deeper slots meet only their
// own leading 1.
inline Series plane_to_tau(const LaurentPlane& plane, const Truncation& t) {
    if (plane.depth() < t.weight_cap)
        throw std::invalid_argument("plane_to_tau: plane depth below truncation weight");
    if (plane.z_degree_bound() < t.weight_cap - 1)
        throw std::invalid_argument("plane_to_tau: z-degree bound insufficient for truncation");
    Series acc = Series::zero(t);
    for (int n = 0; n <= t.weight_cap; ++n)
        for (const Partition& mu : partitions_of(n)) {
            int l = mu.length();
            std::vector<std::vector<Series>> m(static_cast<std::size_t>(l),
                                               std::vector<Series>(static_cast<std::size_t>(l)));
            for (int i = 1; i <= l; ++i)
                for (int j = 1; j <= l; ++j)
                    m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                        plane.coefficient(j, mu.parts()[static_cast<std::size_t>(i - 1)] - i);
            Series det = detail::series_det(m, t);
            acc += det * schur_cache().get(mu, t);
        }
    return acc;
}

// beta_k = e^z z^{-k}, the plane of the y = 1 tau-function exp(p_1).
inline LaurentPlane exp_plane(int depth, int zmax, const Truncation& t) {
    std::vector<std::map<int, Series>> rows(static_cast<std::size_t>(depth));
    for (int k = 1; k <= depth; ++k)
        for (int e = -k; e <= zmax; ++e)
            rows[static_cast<std::size_t>(k - 1)][e] = Series::constant(
                Rational(1) / Rational(factorial(static_cast<unsigned long>(e + k))), t);
    return LaurentPlane(std::move(rows), zmax, t);
}

// The Remark-2.2 diagonal dressing of the exp-plane: row k becomes
// (1/u_{-k}) sum_i u_{i-k} z^{i-k} / i!  with u_j the cumulative y-products.
inline LaurentPlane diagonal_modified_plane(const TauParams& params, int depth, int zmax,
                                            const Truncation& t) {
    int lo = -depth, hi = zmax;
    std::map<int, Series> u;
    u[0] = Series::one(t);
    for (int j = 1; j <= hi; ++j) u[j] = u[j - 1] * params.weight(j, t);
    for (int j = -1; j >= lo; --j) u[j] = u[j + 1] * params.weight(j + 1, t).reciprocal();
    std::vector<std::map<int, Series>> rows(static_cast<std::size_t>(depth));
    for (int k = 1; k <= depth; ++k) {
        Series inv = u[-k].reciprocal();
        for (int i = 0; i - k <= zmax; ++i)
            rows[static_cast<std::size_t>(k - 1)][i - k] =
                u[i - k] * inv.scaled(Rational(1) / Rational(factorial(static_cast<unsigned long>(i))));
    }
    return LaurentPlane(std::move(rows), zmax, t);
}

// Pluecker relation for G(2,4) on the minors y_ij = a_i b_j - a_j b_i.
inline Rational plucker_g24_residual(const std::vector<Rational>& a,
                                     const std::vector<Rational>& b) {
    if (a.size() != 4 || b.size() != 4)
        throw std::invalid_argument("plucker_g24_residual: need 4-vectors");
    auto y = [&](int i, int j) -> Rational {
        return a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] -
               a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)];
    };
    return y(0, 1) * y(2, 3) - y(0, 2) * y(1, 3) + y(0, 3) * y(1, 2);
}

}  // namespace tauforge
