// Acceptance suite: runs every criterion end to end and prints one pass/fail
// line each. All comparisons are exact unless the line says "trend".

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "tauforge/class_algebra.hpp"
#include "tauforge/hierarchy.hpp"
#include "tauforge/maps.hpp"
#include "tauforge/oracles.hpp"
#include "tauforge/schur.hpp"
#include "tauforge/tau_family.hpp"

using namespace tauforge;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool pass, double seconds) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << label
              << "  (" << seconds << " s)\n";
    if (!pass) ++failures;
}

void run(int criterion, const std::string& label, const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    try {
        pass = body();
    } catch (const std::exception& e) {
        std::cout << "  exception: " << e.what() << "\n";
        pass = false;
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(criterion, label, pass, seconds);
}

Monomial pmono(const Partition& mu, int uexp) {
    Monomial m = uexp ? Monomial::var(VarId::aux("u"), uexp) : Monomial::unit();
    for (int part : mu.parts()) m = m * Monomial::var(VarId::p(part));
    return m;
}

bool criterion1_printed_series() {
    Truncation t = Truncation::weight(5).with_aux("u", 4);
    Series u = Series::var(VarId::aux("u"), t);
    Series ho = orlov_shcherbin_tau(hurwitz_params(u), t);
    Series h = ho.log();

    // the 14 reference coefficients of H-circ through weight 4
    std::vector<std::pair<Monomial, Rational>> ho_expect = {
        {Monomial::unit(), Rational(1)},
        {pmono(Partition({1}), 0), Rational(1)},
        {pmono(Partition({2}), 1), make_rational(1, 2)},
        {pmono(Partition({1, 1}), 0), make_rational(1, 2)},
        {pmono(Partition({3}), 2), make_rational(1, 2)},
        {pmono(Partition({2, 1}), 1), make_rational(1, 2)},
        {pmono(Partition({1, 1, 1}), 0), make_rational(1, 6)},
        {pmono(Partition({2}), 3), make_rational(1, 12)},
        {pmono(Partition({4}), 3), make_rational(2, 3)},
        {pmono(Partition({1, 1}), 2), make_rational(1, 4)},
        {pmono(Partition({3, 1}), 2), make_rational(1, 2)},
        {pmono(Partition({2, 2}), 2), make_rational(1, 8)},
        {pmono(Partition({2, 1, 1}), 1), make_rational(1, 4)},
        {pmono(Partition({1, 1, 1, 1}), 0), make_rational(1, 24)},
    };
    // the reference coefficients of H (including the weight-5 term 25 p5/24 u^4)
    std::vector<std::pair<Monomial, Rational>> h_expect = {
        {pmono(Partition({1}), 0), Rational(1)},
        {pmono(Partition({2}), 1), make_rational(1, 2)},
        {pmono(Partition({1, 1}), 2), make_rational(1, 4)},
        {pmono(Partition({3}), 2), make_rational(1, 2)},
        {pmono(Partition({2, 1}), 3), make_rational(2, 3)},
        {pmono(Partition({2}), 3), make_rational(1, 12)},
        {pmono(Partition({4}), 3), make_rational(2, 3)},
        {pmono(Partition({1, 1, 1}), 4), make_rational(1, 6)},
        {pmono(Partition({1, 1}), 4), make_rational(1, 48)},
        {pmono(Partition({3, 1}), 4), make_rational(9, 8)},
        {pmono(Partition({2, 2}), 4), make_rational(1, 2)},
        {pmono(Partition({3}), 4), make_rational(3, 8)},
        {pmono(Partition({5}), 4), make_rational(25, 24)},
    };
    bool ok = true;
    for (const auto& [m, c] : ho_expect) ok = ok && ho.coefficient(m) == c;
    for (const auto& [m, c] : h_expect) ok = ok && h.coefficient(m) == c;
    return ok;
}

bool criterion2_oracle_agreement() {
    int nmax = 5, mmax = 6;
    Truncation t = Truncation::weight(nmax).with_aux("u", mmax);
    Series tau = orlov_shcherbin_tau(hurwitz_params(Series::var(VarId::aux("u"), t)), t);
    Series conn = tau.log();
    for (int n = 1; n <= nmax; ++n)
        for (int m = 0; m <= mmax; ++m) {
            auto dis = hurwitz_oracle(n, m, false);
            auto con = hurwitz_oracle(n, m, true);
            Rational mfac(factorial(static_cast<unsigned long>(m)));
            for (const auto& mu : partitions_of(n)) {
                Rational dval = dis.count(mu) ? dis.at(mu) : Rational(0);
                Rational cval = con.count(mu) ? con.at(mu) : Rational(0);
                if (tau.coefficient(pmono(mu, m)) * mfac != dval) return false;
                if (conn.coefficient(pmono(mu, m)) * mfac != cval) return false;
            }
        }
    return true;
}

bool criterion3_kp_suite() {
    int w = 8;
    Truncation t = Truncation::weight(w).with_aux("u", 8).with_aux("u1", 6).with_aux("u2", 6);
    Series u = Series::var(VarId::aux("u"), t);
    Series u1 = Series::var(VarId::aux("u1"), t), u2 = Series::var(VarId::aux("u2"), t);
    std::vector<std::pair<std::string, TauParams>> families;
    families.emplace_back("hurwitz", hurwitz_params(u));
    families.emplace_back("generalized(2)", generalized_params({u1, u2}));
    families.emplace_back("bms(2)", bms_params(2, u));
    families.emplace_back("bms(3)", bms_params(3, u));
    families.emplace_back("monotonic", monotonic_params(u));
    bool ok = true;
    for (auto& [name, params] : families) {
        Series f = orlov_shcherbin_tau(params, t).log();
        for (const auto& rep : kp_residuals(f, 6)) {
            if (!rep.pass) {
                std::cout << "  " << name << " " << rep.equation << " residual nonzero\n";
                ok = false;
            }
        }
    }
    return ok;
}

bool criterion4_hirota() {
    Truncation t = Truncation::weight(6).with_aux("u", 3);
    Series tau_pass = orlov_shcherbin_tau(hurwitz_params(Series::var(VarId::aux("u"), t)), t);
    bool pass_side = hirota_residual(tau_pass, {Partition({3})})[0].pass &&
                     kp_residuals(tau_pass.log(), 4)[0].pass;

    Truncation t2 = Truncation::weight(6);
    Series f_bad = Series::var(VarId::p(1), t2).pow(2);
    bool fail_side = !hirota_residual(f_bad.exp(), {Partition({3})})[0].pass &&
                     !kp_residuals(f_bad, 4)[0].pass;
    return pass_side && fail_side;
}

bool criterion5_toda() {
    Truncation t = Truncation::weight(10).with_aux("u", 3).with_aux("v", 10);
    TauParams params = hurwitz_params(Series::var(VarId::aux("u"), t));
    VarId v = VarId::aux("v");
    std::map<int, Series> taus;
    for (int n = -2; n <= 2; ++n) taus.emplace(n, toda_tau(n, params, t, v));
    for (int n = -1; n <= 1; ++n)
        if (!toda_residual(taus.at(n - 1), taus.at(n), taus.at(n + 1)).pass) return false;
    return true;
}

bool criterion6_genus_parity() {
    Truncation t = Truncation::weight(6).with_aux("u", 4).with_aux("u1", 4).with_aux("u2", 4);
    Series u = Series::var(VarId::aux("u"), t);
    Series u1 = Series::var(VarId::aux("u1"), t), u2 = Series::var(VarId::aux("u2"), t);
    try {
        genus_expansion(hurwitz_params(u), t, 3);
        genus_expansion(generalized_params({u1, u2}), t, 3);
        genus_expansion(bms_params(2, u), t, 3);
        genus_expansion(bms_params(3, u), t, 3);
        genus_expansion(monotonic_params(u), t, 3);
    } catch (const GenusParityError&) {
        return false;
    }
    return true;
}

bool criterion7_genus0_formulas() {
    int w = 5;
    Truncation t = Truncation::weight(w).with_aux("u", 10);
    Series u = Series::var(VarId::aux("u"), t);
    VarId hbar = VarId::aux("hbar");
    Series h0 = genus_expansion(hurwitz_params(u), t, 1).extract(hbar, 0);
    Series m0 = genus_expansion(monotonic_params(u), t, 1).extract(hbar, 0);
    std::map<int, Series> b0;
    for (int m : {2, 3}) b0.emplace(m, genus_expansion(bms_params(m, u), t, 1).extract(hbar, 0));
    for (int n = 1; n <= w; ++n)
        for (const auto& mu : partitions_of(n)) {
            int m = mu.size() + mu.length() - 2;
            Rational mfac(factorial(static_cast<unsigned long>(m)));
            if (h0.coefficient(pmono(mu, m)) * mfac != genus0_closed(Genus0Kind::hurwitz, mu))
                return false;
            if (m0.coefficient(pmono(mu, m)) != genus0_closed(Genus0Kind::monotonic, mu))
                return false;
            for (int mb : {2, 3})
                if (b0.at(mb).coefficient(pmono(mu, m)) != genus0_closed(Genus0Kind::bms, mu, mb))
                    return false;
        }
    return true;
}

bool criterion8_ko_products() {
    auto C = [](std::vector<int> parts) { return KOElement::basis(Partition(std::move(parts))); };
    KOElement r1 = ko_multiply(C({1}), C({1}));
    KOElement e1;
    e1.add(Partition({1}), 1);
    e1.add(Partition({1, 1}), 2);

    KOElement r2 = ko_multiply(C({1}), C({2}));
    KOElement e2;
    e2.add(Partition({2}), 2);
    e2.add(Partition({2, 1}), 1);

    KOElement r3 = ko_multiply(C({2}), C({2}));
    KOElement e3;
    e3.add(Partition({3}), 3);
    e3.add(Partition({1, 1}), 1);
    e3.add(Partition({2, 2}), 2);

    // Fourth line is misprinted in the source ("3C_{1^1 3^1}3C_{1^3}"); the
    // computed product is pinned here as the authoritative value.
    KOElement r4 = ko_multiply(C({2}), C({2, 1}));
    KOElement e4;
    e4.add(Partition({3}), 3);
    e4.add(Partition({2, 2}), 4);
    e4.add(Partition({3, 1}), 3);
    e4.add(Partition({1, 1, 1}), 3);
    e4.add(Partition({2, 2, 1}), 2);

    return r1 == e1 && r2 == e2 && r3 == e3 && r4 == e4;
}

bool criterion9_constants() {
    auto b = bg_table(6);
    bool ok = b[1] == make_rational(1, 24) && b[2] == make_rational(49, 1152) &&
              b[3] == make_rational(1225, 6912) && b[4] == parse_rational("4412401/2654208");
    return ok && painleve_check(6).pass;
}

bool criterion10_triangulations() {
    Rational t00 = resolve_t00_calibration();
    if (t00 != 2) return false;
    TriangulationTable table(30, std::nullopt, t00);
    for (int n = 1; n <= 2; ++n)
        for (int g = 0; TriangulationTable::in_domain(n, g); ++g)
            if (table.T(n, g) != triangulation_count_oracle(n, g)) return false;
    for (int n = 1; n <= 30; ++n)
        for (int g = 0; TriangulationTable::in_domain(n, g); ++g) {
            Rational v = table.T(n, g);
            if (v < 0 || v.get_den() != 1) return false;
        }
    return true;
}

bool criterion11_trends() {
    auto b = bg_table(2);
    TriangulationTable table(200, 1, Rational(2));
    for (int g : {0, 1})
        if (!triangulation_trend(table, b, g, {50, 200}).improving) return false;
    for (int g : {0, 1}) {
        auto rep = hurwitz_asymptotic_check(20, g, b);
        double at10 = 0, at20 = 0;
        for (auto [n, r] : rep.ratios) {
            if (n == 10) at10 = std::fabs(r - 1.0);
            if (n == 20) at20 = std::fabs(r - 1.0);
        }
        if (!(at20 < at10)) return false;
    }
    return true;
}

bool criterion12_plucker() {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> coord(-1000, 1000);
    for (int i = 0; i < 100; ++i) {
        std::vector<Rational> a, b;
        for (int j = 0; j < 4; ++j) {
            a.push_back(Rational(coord(rng)));
            b.push_back(Rational(coord(rng)));
        }
        if (plucker_g24_residual(a, b) != 0) return false;
    }
    return true;
}

bool criterion13_remark211() {
    int w = 8;
    Truncation t = Truncation::weight(w);
    for (int m = 1; m <= 3; ++m) {
        Series tau = orlov_shcherbin_tau(bms_params(m, Series::one(t)), t);
        Series expect = Series::zero(t);
        for (int k = 0; k <= w; ++k) {
            Rational kf(factorial(static_cast<unsigned long>(k)));
            expect += schur_row(k, t).scaled(rat_pow(kf, m - 1));
        }
        if (!(tau == expect)) return false;
    }
    return true;
}

}  // namespace

int main() {
    run(1, "reference H-circ and H coefficients, exact", criterion1_printed_series);
    run(2, "hurwitz oracle vs tau coefficients, n <= 5, m <= 6", criterion2_oracle_agreement);
    run(3, "KP residuals at weight 8 for five families", criterion3_kp_suite);
    run(4, "hirota q3 equivalence with equation 1", criterion4_hirota);
    run(5, "toda equation for double hurwitz at n in {-1,0,1}", criterion5_toda);
    run(6, "genus expansion parity for all named families", criterion6_genus_parity);
    run(7, "genus-0 closed formulas vs hbar^0 coefficients, |mu| <= 5", criterion7_genus0_formulas);
    run(8, "kerov-olshanski products incl. pinned misprint", criterion8_ko_products);
    run(9, "b_g constants and painleve through g = 6", criterion9_constants);
    run(10, "triangulation table vs oracle, integrality to n = 30", criterion10_triangulations);
    run(11, "asymptotic trends (triangulation 50->200, hurwitz 10->20)", criterion11_trends);
    run(12, "plucker residual on 100 random pairs", criterion12_plucker);
    run(13, "bms tau at u = 1 equals sum (k!)^{m-1} s_k, m in {1,2,3}", criterion13_remark211);

    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 13 criteria passed\n";
    return 0;
}
