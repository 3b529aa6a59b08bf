#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tauforge/rational.hpp"
#include "tauforge/variables.hpp"

namespace tauforge {

// Sparse exponent vector, sorted by variable id, no zero exponents stored.
// Negative exponents are legal only for aux variables flagged in the registry
// (hbar). The weighted degree sums i*deg(p_i) + i*deg(q_i) plus the registry
// weight of each aux unit.
class Monomial {
public:
    Monomial() = default;

    explicit Monomial(std::vector<std::pair<VarId, int>> factors) {
        std::sort(factors.begin(), factors.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [v, e] : factors) {
            if (e == 0) continue;
            if (e < 0 && !v.negative_ok())
                throw std::invalid_argument("negative exponent on " + v.name());
            if (!exps_.empty() && exps_.back().first == v)
                throw std::invalid_argument("duplicate variable in monomial");
            exps_.emplace_back(v, e);
        }
        compute_weight();
    }

    static Monomial unit() { return Monomial(); }
    static Monomial var(VarId v, int e = 1) { return Monomial({{v, e}}); }

    const std::vector<std::pair<VarId, int>>& exponents() const { return exps_; }
    bool is_unit() const { return exps_.empty(); }
    int weighted_degree() const { return wdeg_; }

    int exponent(VarId v) const {
        for (const auto& [var, e] : exps_)
            if (var == v) return e;
        return 0;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.exps_.reserve(exps_.size() + o.exps_.size());
        std::size_t i = 0, j = 0;
        while (i < exps_.size() || j < o.exps_.size()) {
            if (j == o.exps_.size() || (i < exps_.size() && exps_[i].first < o.exps_[j].first)) {
                r.exps_.push_back(exps_[i++]);
            } else if (i == exps_.size() || o.exps_[j].first < exps_[i].first) {
                r.exps_.push_back(o.exps_[j++]);
            } else {
                int e = exps_[i].second + o.exps_[j].second;
                if (e != 0) r.exps_.emplace_back(exps_[i].first, e);
                ++i, ++j;
            }
        }
        r.compute_weight();
        return r;
    }

    // Canonical order: graded by weighted degree, then by total absolute
    // degree, then lexicographic on (variable id, exponent).
    bool operator<(const Monomial& o) const {
        if (wdeg_ != o.wdeg_) return wdeg_ < o.wdeg_;
        int ta = total_abs_degree(), tb = o.total_abs_degree();
        if (ta != tb) return ta < tb;
        return exps_ < o.exps_;
    }
    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

    int total_abs_degree() const {
        int t = 0;
        for (const auto& [v, e] : exps_) t += e < 0 ? -e : e;
        return t;
    }

    // Adjusts one variable's exponent; validates only the final value.
    Monomial with_delta(VarId v, int delta) const {
        if (delta == 0) return *this;
        Monomial r;
        r.exps_.reserve(exps_.size() + 1);
        bool placed = false;
        for (const auto& [var, e] : exps_) {
            if (var == v) {
                int ne = e + delta;
                if (ne != 0) r.exps_.emplace_back(var, ne);
                placed = true;
            } else {
                if (!placed && v < var) {
                    r.exps_.emplace_back(v, delta);
                    placed = true;
                }
                r.exps_.emplace_back(var, e);
            }
        }
        if (!placed) r.exps_.emplace_back(v, delta);
        for (const auto& [var, e] : r.exps_)
            if (e < 0 && !var.negative_ok())
                throw std::invalid_argument("negative exponent on " + var.name());
        r.compute_weight();
        return r;
    }

    Monomial removed(VarId v) const {
        Monomial r;
        for (const auto& [var, e] : exps_)
            if (!(var == v)) r.exps_.emplace_back(var, e);
        r.compute_weight();
        return r;
    }

    std::string to_string() const {
        if (exps_.empty()) return "1";
        std::string s;
        for (const auto& [v, e] : exps_) {
            if (!s.empty()) s += '*';
            s += v.name();
            if (e != 1) s += '^' + std::to_string(e);
        }
        return s;
    }

private:
    void compute_weight() {
        wdeg_ = 0;
        for (const auto& [v, e] : exps_) wdeg_ += v.unit_weight() * e;
    }

    std::vector<std::pair<VarId, int>> exps_;
    int wdeg_ = 0;
};

// Truncation bounds: one cap on the weighted degree, per-aux caps on |exponent|.
// A missing aux entry means unbounded in that variable.
struct Truncation {
    static constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

    int weight_cap = kUnbounded;
    std::map<std::uint32_t, int> aux_caps;

    static Truncation weight(int cap) { return Truncation{cap, {}}; }

    Truncation& with_aux(VarId v, int cap) {
        if (!v.is_aux()) throw std::invalid_argument("aux cap on non-aux variable");
        aux_caps[v.code()] = cap;
        return *this;
    }
    Truncation& with_aux(std::string_view name, int cap) { return with_aux(VarId::aux(name), cap); }

    int aux_cap(VarId v) const {
        auto it = aux_caps.find(v.code());
        return it == aux_caps.end() ? kUnbounded : it->second;
    }

    bool admits(const Monomial& m) const {
        if (m.weighted_degree() > weight_cap) return false;
        for (const auto& [v, e] : m.exponents()) {
            if (!v.is_aux()) continue;
            int a = e < 0 ? -e : e;
            if (a > aux_cap(v)) return false;
        }
        return true;
    }

    // Componentwise minimum; the contract for every binary operation.
    static Truncation meet(const Truncation& a, const Truncation& b) {
        Truncation t;
        t.weight_cap = std::min(a.weight_cap, b.weight_cap);
        t.aux_caps = a.aux_caps;
        for (const auto& [code, cap] : b.aux_caps) {
            auto it = t.aux_caps.find(code);
            if (it == t.aux_caps.end())
                t.aux_caps[code] = cap;
            else
                it->second = std::min(it->second, cap);
        }
        return t;
    }
};

class Series;
Series operator*(const Series& a, const Series& b);

// Truncated sparse multivariate power series over exact rationals. Immutable
// value semantics: every operation returns a fresh series truncated to the
// meet of the operand bounds.
class Series {
public:
    Series() = default;
    explicit Series(Truncation t) : trunc_(std::move(t)) {}

    static Series zero(Truncation t) { return Series(std::move(t)); }

    static Series constant(const Rational& c, Truncation t) {
        Series s(std::move(t));
        s.add_term(Monomial::unit(), c);
        return s;
    }
    static Series one(Truncation t) { return constant(Rational(1), std::move(t)); }

    static Series var(VarId v, Truncation t) {
        Series s(std::move(t));
        s.add_term(Monomial::var(v), Rational(1));
        return s;
    }

    static Series monomial(const Monomial& m, const Rational& c, Truncation t) {
        Series s(std::move(t));
        s.add_term(m, c);
        return s;
    }

    const Truncation& truncation() const { return trunc_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0 || !trunc_.admits(m)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Stored coefficient, or 0; throws when the monomial is outside the
    // truncation bounds and the stored value would not be trustworthy.
    Rational coefficient(const Monomial& m) const {
        if (!trunc_.admits(m))
            throw std::domain_error("coefficient request outside truncation: " + m.to_string());
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Series truncated(const Truncation& t) const {
        Series r(Truncation::meet(trunc_, t));
        for (const auto& [m, c] : terms_) r.add_term(m, c);
        return r;
    }

    // Re-bins the terms under bounds the caller asserts to be honest, e.g. a
    // finite polynomial that is exact at every weight. Unlike truncated(),
    // the claimed bounds are taken as-is rather than met with the old ones.
    Series rewrapped(const Truncation& t) const {
        Series r(t);
        for (const auto& [m, c] : terms_) r.add_term(m, c);
        return r;
    }

    Series operator-() const {
        Series r(trunc_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Series operator+(const Series& o) const {
        Series r(Truncation::meet(trunc_, o.trunc_));
        for (const auto& [m, c] : terms_) r.add_term(m, c);
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Series operator-(const Series& o) const { return *this + (-o); }

    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scaled(const Rational& c) const {
        Series r(trunc_);
        if (c == 0) return r;
        for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
        return r;
    }

    Series mul_monomial(const Monomial& factor, const Rational& c) const {
        Series r(trunc_);
        if (c == 0) return r;
        for (const auto& [m, coeff] : terms_) r.add_term(m * factor, coeff * c);
        return r;
    }

    Series pow(int e) const {
        if (e < 0) throw std::invalid_argument("series pow: negative exponent");
        Series acc = one(trunc_);
        for (int i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    // Iterated exact partial derivative; the truncation caps shrink so the
    // result only claims weights it actually knows.
    Series derivative(VarId v, int order = 1) const {
        if (order < 0) throw std::invalid_argument("derivative: negative order");
        Series cur = *this;
        for (int k = 0; k < order; ++k) {
            Truncation t = cur.trunc_;
            if (v.is_aux()) {
                auto it = t.aux_caps.find(v.code());
                if (it != t.aux_caps.end() && it->second != Truncation::kUnbounded) it->second -= 1;
                if (v.unit_weight() > 0 && t.weight_cap != Truncation::kUnbounded)
                    t.weight_cap -= v.unit_weight();
            } else if (t.weight_cap != Truncation::kUnbounded) {
                t.weight_cap -= v.index();
            }
            Series next(t);
            for (const auto& [m, c] : cur.terms_) {
                int e = m.exponent(v);
                if (e == 0) continue;
                next.add_term(m.with_delta(v, -1), c * e);
            }
            cur = std::move(next);
        }
        return cur;
    }

    // Collects terms with var-exponent k and strips the variable.
    Series extract(VarId v, int k) const {
        Truncation t = trunc_;
        if (v.is_aux()) t.aux_caps.erase(v.code());
        if (v.unit_weight() > 0 && t.weight_cap != Truncation::kUnbounded)
            t.weight_cap -= v.unit_weight() * k;
        Series r(t);
        for (const auto& [m, c] : terms_) {
            if (m.exponent(v) != k) continue;
            r.add_term(m.removed(v), c);
        }
        return r;
    }

    // All distinct exponents of v across stored terms.
    std::vector<int> exponents_of(VarId v) const {
        std::vector<int> es;
        for (const auto& [m, c] : terms_) es.push_back(m.exponent(v));
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        return es;
    }

    bool uses(VarId v) const {
        for (const auto& [m, c] : terms_)
            if (m.exponent(v) != 0) return true;
        return false;
    }

    Rational constant_term() const {
        auto it = terms_.find(Monomial::unit());
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Largest monomial dividing every term, and the quotient. Exposes the
    // unit part of monomial-times-unit series ahead of a reciprocal.
    std::pair<Monomial, Series> factor_common_monomial() const {
        if (terms_.empty()) return {Monomial::unit(), *this};
        std::map<std::uint32_t, std::pair<VarId, int>> mins;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (first) {
                for (const auto& [v, e] : m.exponents())
                    if (e > 0) mins[v.code()] = {v, e};
                first = false;
                continue;
            }
            for (auto it = mins.begin(); it != mins.end();) {
                int e = m.exponent(it->second.first);
                if (e <= 0) {
                    it = mins.erase(it);
                } else {
                    it->second.second = std::min(it->second.second, e);
                    ++it;
                }
            }
        }
        std::vector<std::pair<VarId, int>> fac;
        for (const auto& [code, ve] : mins) fac.push_back(ve);
        Monomial common(fac);
        if (common.is_unit()) return {common, *this};
        // the quotient is only exact inside correspondingly shrunk bounds
        Truncation t = trunc_;
        for (const auto& [v, e] : common.exponents()) {
            if (v.is_aux()) {
                auto it = t.aux_caps.find(v.code());
                if (it != t.aux_caps.end() && it->second != Truncation::kUnbounded)
                    it->second -= e;
            }
            if (v.unit_weight() > 0 && t.weight_cap != Truncation::kUnbounded)
                t.weight_cap -= v.unit_weight() * e;
        }
        Series quot(t);
        for (const auto& [m, c] : terms_) {
            Monomial reduced = m;
            for (const auto& [v, e] : common.exponents()) reduced = reduced.with_delta(v, -e);
            quot.add_term(reduced, c);
        }
        return {common, quot};
    }

    // exp(a) for a with zero constant term.
    Series exp() const {
        if (constant_term() != 0) throw std::domain_error("series exp: nonzero constant term");
        return exp_log_core(true);
    }

    // log(a) for a with constant term 1.
    Series log() const {
        if (constant_term() != 1) throw std::domain_error("series log: constant term must be 1");
        return exp_log_core(false);
    }

    // 1/a for a with nonzero rational constant term c0, via the geometric
    // series in (1 - a/c0).
    Series reciprocal() const {
        Rational c0 = constant_term();
        if (c0 == 0) throw std::domain_error("series reciprocal: zero constant term");
        Series g = one(trunc_) - scaled(Rational(1) / c0);  // no constant term
        Series acc = one(trunc_), powg = one(trunc_);
        long limit = power_limit();
        for (long k = 1; k <= limit; ++k) {
            powg = powg * g;
            if (powg.is_zero()) break;
            acc += powg;
            if (k == limit)
                throw std::domain_error("series reciprocal: power iteration did not terminate");
        }
        return acc.scaled(Rational(1) / c0);
    }

    // Substitutes series for selected variables; untouched variables stay.
    // Exponents of substituted variables must be nonnegative.
    Series substitute(const std::function<std::optional<Series>(VarId)>& rule,
                      const Truncation& out) const {
        Series r(out);
        for (const auto& [m, c] : terms_) {
            Series term = constant(c, out);
            Monomial rest = Monomial::unit();
            for (const auto& [v, e] : m.exponents()) {
                auto sub = rule(v);
                if (!sub) {
                    rest = rest * Monomial::var(v, e);
                    continue;
                }
                if (e < 0) throw std::domain_error("substitute: negative exponent on " + v.name());
                Series p = sub->truncated(out);
                for (int k = 0; k < e; ++k) term = term * p;
            }
            r += term.mul_monomial(rest, Rational(1));
        }
        return r;
    }

    // p_i -> hbar^{e(i)} p_i  (and optionally the same for q). Exact monomial
    // rescaling; negative intermediate hbar powers are expected here.
    Series substitute_scaled(const std::function<int(int)>& hbar_exp, bool also_q = false) const {
        VarId hbar = VarId::aux("hbar");
        Series r(trunc_);
        for (const auto& [m, c] : terms_) {
            long shift = 0;
            for (const auto& [v, e] : m.exponents()) {
                if (v.is_p() || (also_q && v.is_q())) shift += static_cast<long>(hbar_exp(v.index())) * e;
            }
            Monomial shifted = m.with_delta(hbar, static_cast<int>(shift));
            if (!trunc_.admits(shifted))
                throw std::domain_error("substitute_scaled: hbar exponent exceeds declared bound");
            r.add_term(shifted, c);
        }
        return r;
    }

    Series swap_pq() const {
        Series r(trunc_);
        for (const auto& [m, c] : terms_) {
            std::vector<std::pair<VarId, int>> es;
            for (const auto& [v, e] : m.exponents()) {
                if (v.is_p())
                    es.emplace_back(VarId::q(v.index()), e);
                else if (v.is_q())
                    es.emplace_back(VarId::p(v.index()), e);
                else
                    es.emplace_back(v, e);
            }
            r.add_term(Monomial(std::move(es)), c);
        }
        return r;
    }

    bool operator==(const Series& o) const { return terms_ == o.terms_; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            Rational a = c < 0 ? Rational(-c) : c;
            if (s.empty()) {
                if (c < 0) s += '-';
            } else {
                s += c < 0 ? " - " : " + ";
            }
            if (m.is_unit())
                s += tauforge::to_string(a);
            else if (a == 1)
                s += m.to_string();
            else
                s += tauforge::to_string(a) + "*" + m.to_string();
        }
        return s;
    }

private:
    friend Series operator*(const Series& a, const Series& b);

    // Hard bound on power iterations in exp/log/reciprocal: each factor of a
    // constant-free series raises weighted degree or some bounded aux degree.
    long power_limit() const {
        long limit = trunc_.weight_cap == Truncation::kUnbounded ? 0 : trunc_.weight_cap;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.exponents())
                if (v.is_aux() && trunc_.aux_cap(v) == Truncation::kUnbounded)
                    throw std::domain_error("series " + std::string("exp/log/reciprocal") +
                                            ": unbounded aux variable " + v.name());
        for (const auto& [code, cap] : trunc_.aux_caps) limit += cap;
        return limit + 2;
    }

    Series exp_log_core(bool is_exp) const {
        // exp arg is already constant-free; log(x) = -sum (1-x)^k/k.
        Series a = is_exp ? *this : one(trunc_) - *this;
        Series acc = is_exp ? one(trunc_) : zero(trunc_);
        Series powa = one(trunc_);
        Rational fact(1);
        long limit = a.power_limit();
        for (long k = 1; k <= limit; ++k) {
            powa = powa * a;
            if (powa.is_zero()) break;
            if (is_exp) {
                fact *= k;
                acc += powa.scaled(Rational(1) / fact);
            } else {
                acc -= powa.scaled(Rational(1) / Rational(static_cast<long>(k)));
            }
            if (k == limit)
                throw std::domain_error("series exp/log: power iteration did not terminate");
        }
        return acc;
    }

    Truncation trunc_;
    std::map<Monomial, Rational> terms_;
};

inline Series operator*(const Series& a, const Series& b) {
    Series r(Truncation::meet(a.truncation(), b.truncation()));
    const Series& outer = a.term_count() <= b.term_count() ? a : b;
    const Series& inner = a.term_count() <= b.term_count() ? b : a;
    for (const auto& [ma, ca] : outer.terms()) {
        int wa = ma.weighted_degree();
        for (const auto& [mb, cb] : inner.terms()) {
            if (wa >= 0 && mb.weighted_degree() >= 0 &&
                wa + mb.weighted_degree() > r.truncation().weight_cap)
                continue;
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

}  // namespace tauforge
