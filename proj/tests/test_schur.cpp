#include <catch2/catch_amalgamated.hpp>

#include "tauforge/schur.hpp"

using namespace tauforge;

namespace {
Monomial pm(std::vector<std::pair<int, int>> pe) {
    std::vector<std::pair<VarId, int>> es;
    for (auto [i, e] : pe) es.emplace_back(VarId::p(i), e);
    return Monomial(std::move(es));
}
}  // namespace

TEST_CASE("one-row Schur polynomials match the defining expansion") {
    Truncation t = Truncation::weight(6);
    CHECK(schur_row(0, t) == Series::one(t));
    CHECK(schur_row(1, t) == Series::var(VarId::p(1), t));

    Series s2 = schur_row(2, t);
    CHECK(s2.coefficient(pm({{1, 2}})) == make_rational(1, 2));
    CHECK(s2.coefficient(pm({{2, 1}})) == make_rational(1, 2));
    CHECK(s2.term_count() == 2);

    Series s3 = schur_row(3, t);
    CHECK(s3.coefficient(pm({{1, 3}})) == make_rational(1, 6));
    CHECK(s3.coefficient(pm({{1, 1}, {2, 1}})) == make_rational(1, 2));
    CHECK(s3.coefficient(pm({{3, 1}})) == make_rational(1, 3));
}

TEST_CASE("Jacobi-Trudi values against the classical table") {
    Truncation t = Truncation::weight(6);
    Series s11 = schur(Partition({1, 1}), t);
    CHECK(s11.coefficient(pm({{1, 2}})) == make_rational(1, 2));
    CHECK(s11.coefficient(pm({{2, 1}})) == make_rational(-1, 2));

    Series s111 = schur(Partition({1, 1, 1}), t);
    CHECK(s111.coefficient(pm({{1, 3}})) == make_rational(1, 6));
    CHECK(s111.coefficient(pm({{1, 1}, {2, 1}})) == make_rational(-1, 2));
    CHECK(s111.coefficient(pm({{3, 1}})) == make_rational(1, 3));

    Series s21 = schur(Partition({2, 1}), t);
    CHECK(s21.coefficient(pm({{1, 3}})) == make_rational(1, 3));
    CHECK(s21.coefficient(pm({{3, 1}})) == make_rational(-1, 3));
    CHECK(s21.coefficient(pm({{1, 1}, {2, 1}})) == 0);
}

TEST_CASE("schur is quasi-homogeneous of weight |mu|") {
    Truncation t = Truncation::weight(8);
    for (int n = 0; n <= 8; ++n)
        for (const auto& mu : partitions_of(n)) {
            Series s = schur(mu, t);
            for (const auto& [m, c] : s.terms()) CHECK(m.weighted_degree() == n);
        }
}

TEST_CASE("determinant is stable under padding with extra rows") {
    Truncation t = Truncation::weight(6);
    // pad (2,1) explicitly: the 3x3 determinant with a third zero part
    for (const auto& mu : {Partition({2, 1}), Partition({3, 2}), Partition({2, 2, 1})}) {
        auto rows = detail::schur_rows_upto(mu.size(), Truncation::weight(mu.size()));
        auto entry = [&](int i, int j, int nrows) {
            int parts_i = i <= mu.length() ? mu.parts()[static_cast<std::size_t>(i - 1)] : 0;
            int k = parts_i - i + j;
            (void)nrows;
            return (k < 0 || k > mu.size()) ? Series::zero(Truncation::weight(mu.size()))
                                            : rows[static_cast<std::size_t>(k)];
        };
        for (int pad = 0; pad <= 2; ++pad) {
            int n = mu.length() + pad;
            std::vector<std::vector<Series>> m(static_cast<std::size_t>(n),
                                               std::vector<Series>(static_cast<std::size_t>(n)));
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                        entry(i, j, n);
            CHECK(detail::series_det(m, Truncation::weight(mu.size())) == schur(mu, t));
        }
    }
}

TEST_CASE("principal specialization closed form") {
    CHECK(principal_specialization(Partition({1}), make_rational(7, 3)) == make_rational(7, 3));
    CHECK(principal_specialization(Partition({2, 1}), Rational(0)) == 0);
    CHECK(principal_specialization(Partition({2}), Rational(1)) == 1);
}

TEST_CASE("principal specialization agrees with evaluating the polynomial") {
    Truncation t = Truncation::weight(6);
    for (int n = 0; n <= 6; ++n)
        for (const auto& mu : partitions_of(n)) {
            Rational v = make_rational(3, 2);
            Series s = schur(mu, t);
            Rational direct(0);
            for (const auto& [m, c] : s.terms()) {
                Rational term = c;
                for (const auto& [var, e] : m.exponents()) term *= rat_pow(v, e);
                direct += term;
            }
            CHECK(direct == principal_specialization(mu, v));
        }
}

TEST_CASE("schur at p1=1, rest 0 equals dim_ratio, |mu| <= 8") {
    Truncation t = Truncation::weight(8);
    for (int n = 0; n <= 8; ++n)
        for (const auto& mu : partitions_of(n)) {
            Series s = schur(mu, t);
            Rational val(0);
            for (const auto& [m, c] : s.terms()) {
                bool only_p1 = true;
                for (const auto& [var, e] : m.exponents()) only_p1 = only_p1 && var == VarId::p(1);
                if (only_p1) val += c;
            }
            CHECK(val == dim_ratio(mu));
            // and the top coefficient of p1^{|mu|} is dim_ratio as well
            if (n > 0) CHECK(s.coefficient(Monomial::var(VarId::p(1), n)) == dim_ratio(mu));
        }
}

TEST_CASE("cauchy identity at truncation 6") {
    Truncation t = Truncation::weight(6);
    Series lhs = Series::zero(t);
    for (int k = 1; 2 * k <= 6; ++k)
        lhs += Series::monomial(Monomial({{VarId::p(k), 1}, {VarId::q(k), 1}}),
                                make_rational(1, k), t);
    CHECK(lhs.exp() == cauchy_sum(t));

    // weight-2 slice: p1 q1 + (p1^2 q1^2)/2 + p2 q2 / 2 pieces
    Series cs = cauchy_sum(t);
    CHECK(cs.coefficient(Monomial({{VarId::p(1), 1}, {VarId::q(1), 1}})) == 1);
    CHECK(cs.coefficient(Monomial({{VarId::p(1), 2}, {VarId::q(1), 2}})) == make_rational(1, 2));
    CHECK(cs.coefficient(Monomial({{VarId::p(2), 1}, {VarId::q(2), 1}})) == make_rational(1, 2));
}

TEST_CASE("schur cache serves truncation-monotone requests") {
    SchurCache cache;
    Series full = cache.get(Partition({3, 1}), Truncation::weight(8));
    Series low = cache.get(Partition({3, 1}), Truncation::weight(2));
    CHECK(low.is_zero());  // weight-4 polynomial truncated below its weight
    CHECK(full == schur(Partition({3, 1}), Truncation::weight(8)));
}
