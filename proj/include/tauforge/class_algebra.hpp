#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "tauforge/partition.hpp"
#include "tauforge/permutation.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

namespace detail {

inline const std::map<Partition, std::vector<Permutation>>& classes_of(int n) {
    static std::map<int, std::map<Partition, std::vector<Permutation>>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::map<Partition, std::vector<Permutation>> buckets;
    for (auto& g : all_permutations(n)) buckets[g.cycle_type()].push_back(std::move(g));
    return cache.emplace(n, std::move(buckets)).first->second;
}

}  // namespace detail

// Element of the center of the group algebra of S_n in the class-sum basis
// C_mu (sum of all permutations of type mu, no normalization).
struct ClassElement {
    int n = 0;
    std::map<Partition, Rational> coeffs;

    static ClassElement basis(int n, const Partition& mu) {
        if (mu.size() != n) throw std::invalid_argument("class basis: size mismatch");
        ClassElement e;
        e.n = n;
        e.coeffs[mu] = 1;
        return e;
    }

    static ClassElement identity(int n) {
        return basis(n, Partition(std::vector<int>(static_cast<std::size_t>(n), 1)));
    }

    void add(const Partition& mu, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs.emplace(mu, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }

    bool operator==(const ClassElement&) const = default;
};

// Structure constants by convolving the full smaller class against one
// representative of the other class: coeff of C_rho in C_mu C_nu equals
// #{ h in C_mu : h^{-1} rep_rho in C_nu }.
inline ClassElement class_multiply(const ClassElement& a, const ClassElement& b) {
    if (a.n != b.n) throw std::invalid_argument("class_multiply: size mismatch");
    int n = a.n;
    ClassElement out;
    out.n = n;
    const auto& classes = detail::classes_of(n);
    for (const auto& [mu, ca] : a.coeffs)
        for (const auto& [nu, cb] : b.coeffs) {
            // enumerate the smaller class
            const Partition& small = classes.at(mu).size() <= classes.at(nu).size() ? mu : nu;
            const Partition& large = classes.at(mu).size() <= classes.at(nu).size() ? nu : mu;
            for (const auto& [rho, reps] : classes) {
                const Permutation& rep = reps.front();
                long cnt = 0;
                for (const Permutation& h : classes.at(small)) {
                    // both orientations give the same count by class symmetry
                    if (h.inverse().compose(rep).cycle_type() == large) ++cnt;
                }
                if (cnt) out.add(rho, ca * cb * cnt);
            }
        }
    return out;
}

inline ClassElement class_power(const ClassElement& a, int m) {
    ClassElement acc = ClassElement::identity(a.n);
    for (int i = 0; i < m; ++i) acc = class_multiply(acc, a);
    return acc;
}

// Prop 2.4 transform: a = sum a_mu C_mu/|C_mu| maps to sum a_mu p_mu.
inline Series char_transform(const ClassElement& a, const Truncation& t) {
    Series acc = Series::zero(t);
    for (const auto& [mu, c] : a.coeffs) {
        Monomial pmu = Monomial::unit();
        for (int part : mu.parts()) pmu = pmu * Monomial::var(VarId::p(part));
        acc.add_term(pmu, c * Rational(class_size(mu)));
    }
    return acc;
}

// ---- Jucys-Murphy content evaluations (Prop 2.5) ----

// elementary symmetric e_k of the contents of lam
inline Rational jm_elementary(int k, const Partition& lam) {
    if (k < 0) return Rational(0);
    std::vector<Rational> e(static_cast<std::size_t>(k) + 1, Rational(0));
    e[0] = 1;
    for (int c : contents(lam))
        for (int j = std::min<int>(k, 1000); j >= 1; --j)
            e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * c;
    return e[static_cast<std::size_t>(k)];
}

// complete homogeneous h_m of the contents
inline Rational jm_complete(int m, const Partition& lam) {
    if (m < 0) return Rational(0);
    std::vector<Rational> h(static_cast<std::size_t>(m) + 1, Rational(0));
    h[0] = 1;
    for (int c : contents(lam)) {
        // multiply by 1/(1 - c t) truncated: h_j += c * h_{j-1}
        for (int j = 1; j <= m; ++j) h[static_cast<std::size_t>(j)] += h[static_cast<std::size_t>(j - 1)] * c;
    }
    return h[static_cast<std::size_t>(m)];
}

// power sum p_r of the contents; r = 1 is the transposition eigenvalue f_2
inline Rational jm_power(int r, const Partition& lam) {
    Rational acc(0);
    for (int c : contents(lam)) acc += rat_pow(Rational(c), r);
    return acc;
}

inline Rational f2(const Partition& lam) { return jm_power(1, lam); }

// prod over cells of phi(content); the eigenvalue of prod phi(X_i)
inline Series jm_content_product(const Partition& lam,
                                 const std::function<Series(int)>& phi,
                                 const Truncation& t) {
    Series acc = Series::one(t);
    for (int c : contents(lam)) acc = acc * phi(c);
    return acc;
}

// ---- Kerov-Olshanski algebra ----

// Element of the KO algebra in the C_mu basis, mu any partition (parts equal
// to 1 are meaningful here: C_{1^1} != C_{1^2}).
struct KOElement {
    std::map<Partition, Rational> coeffs;

    static KOElement basis(const Partition& mu) {
        KOElement e;
        e.coeffs[mu] = 1;
        return e;
    }

    void add(const Partition& mu, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs.emplace(mu, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }

    int max_size() const {
        int m = 0;
        for (const auto& [mu, c] : coeffs) m = std::max(m, mu.size());
        return m;
    }

    bool operator==(const KOElement&) const = default;

    std::string to_string() const {
        if (coeffs.empty()) return "0";
        std::string s;
        for (const auto& [mu, c] : coeffs) {
            if (!s.empty()) s += " + ";
            s += tauforge::to_string(c) + "*C" + mu.to_string();
        }
        return s;
    }
};

inline int ones_count(const Partition& mu) {
    int e = 0;
    for (int p : mu.parts()) e += (p == 1);
    return e;
}

// phi_n(C_mu) = binom(n - |mu| + eps(mu), eps(mu)) C_{1^{n-|mu|} mu}, the
// "forget the support" homomorphism.
inline ClassElement ko_project(const KOElement& a, int n) {
    ClassElement out;
    out.n = n;
    for (const auto& [mu, c] : a.coeffs) {
        if (mu.size() > n) continue;
        int pad = n - mu.size();
        Integer binomfac = binomial(static_cast<unsigned long>(pad + ones_count(mu)),
                                    static_cast<unsigned long>(ones_count(mu)));
        std::vector<int> parts = mu.parts();
        parts.insert(parts.end(), static_cast<std::size_t>(pad), 1);
        out.add(Partition(std::move(parts)), c * Rational(binomfac));
    }
    return out;
}

// Removes all parts equal to 1.
inline Partition ones_stripped(const Partition& mu) {
    std::vector<int> parts;
    for (int p : mu.parts())
        if (p > 1) parts.push_back(p);
    return Partition(std::move(parts));
}

// Product in the KO algebra. The images under phi_n for n = 0..(|a|+|b|)
// determine the product: for rho a partition of n, the new unknown c_rho
// enters the projected coefficient with binomial factor 1, so the system is
// unitriangular along increasing n.
inline KOElement ko_multiply(const KOElement& a, const KOElement& b) {
    int nmax = a.max_size() + b.max_size();
    KOElement out;
    for (int n = 0; n <= nmax; ++n) {
        ClassElement pn = class_multiply(ko_project(a, n), ko_project(b, n));
        for (const Partition& rho : partitions_of(n)) {
            Partition bar = ones_stripped(rho);
            int free_ones = n - bar.size();
            Rational r(0);
            auto it = pn.coeffs.find(rho);
            if (it != pn.coeffs.end()) r = it->second;
            for (int e = 0; e < free_ones; ++e) {
                std::vector<int> parts = bar.parts();
                parts.insert(parts.end(), static_cast<std::size_t>(e), 1);
                Partition nu(std::move(parts));
                auto jt = out.coeffs.find(nu);
                if (jt == out.coeffs.end()) continue;
                r -= Rational(binomial(static_cast<unsigned long>(free_ones),
                                       static_cast<unsigned long>(e))) *
                     jt->second;
            }
            out.add(rho, r);
        }
    }
    return out;
}

}  // namespace tauforge
