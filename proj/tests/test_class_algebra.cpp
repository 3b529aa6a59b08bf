#include <catch2/catch_amalgamated.hpp>

#include "tauforge/class_algebra.hpp"
#include "tauforge/oracles.hpp"
#include "tauforge/schur.hpp"

using namespace tauforge;

TEST_CASE("identity class is the unit") {
    ClassElement a = ClassElement::basis(3, Partition({2, 1}));
    CHECK(class_multiply(ClassElement::identity(3), a) == a);
    CHECK(class_multiply(a, ClassElement::identity(3)) == a);
}

TEST_CASE("C2 * C2 in S3") {
    ClassElement c2 = ClassElement::basis(3, Partition({2, 1}));
    ClassElement sq = class_multiply(c2, c2);
    CHECK(sq.coeffs.at(Partition({1, 1, 1})) == 3);
    CHECK(sq.coeffs.at(Partition({3})) == 3);
    CHECK(sq.coeffs.size() == 2);
}

TEST_CASE("(C2)^m / n! reproduces the hurwitz oracle") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<int> twopart(static_cast<std::size_t>(n - 2), 1);
        twopart.insert(twopart.begin(), 2);
        ClassElement c2 = ClassElement::basis(n, Partition(twopart));
        Rational nfac(factorial(static_cast<unsigned long>(n)));
        for (int m = 0; m <= 3; ++m) {
            ClassElement power = class_power(c2, m);
            auto oracle = hurwitz_oracle(n, m, false);
            // coefficient of C_mu/|C_mu| in power/n! is coeff(C_mu)*|C_mu|/n!
            for (const auto& mu : partitions_of(n)) {
                Rational expect(0);
                auto it = oracle.find(mu);
                if (it != oracle.end()) expect = it->second;
                Rational got(0);
                auto jt = power.coeffs.find(mu);
                if (jt != power.coeffs.end()) got = jt->second * Rational(class_size(mu)) / nfac;
                CHECK(got == expect);
            }
        }
    }
}

TEST_CASE("character identity (Prop 2.4) for (C2)^m, n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        std::vector<int> twopart{2};
        for (int i = 2; i < n; ++i) twopart.push_back(1);
        ClassElement c2 = ClassElement::basis(n, Partition(twopart));
        Truncation t = Truncation::weight(n);
        for (int m = 0; m <= 3; ++m) {
            Series lhs = char_transform(class_power(c2, m), t);
            Series rhs = Series::zero(t);
            for (const auto& lam : partitions_of(n)) {
                Rational dim = dim_ratio(lam) * Rational(factorial(static_cast<unsigned long>(n)));
                rhs += schur(lam, t).scaled(rat_pow(f2(lam), m) * dim);
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("jucys-murphy content evaluations") {
    CHECK(jm_elementary(1, Partition({2, 1})) == 0);  // contents -1,0,1
    CHECK(jm_elementary(1, Partition({3})) == 3);     // contents 0,1,2
    CHECK(jm_power(1, Partition({3})) == f2(Partition({3})));
    CHECK(jm_complete(2, Partition({2})) == 1);  // contents 0,1: h_2 = 0+0+1 = 1
}

TEST_CASE("elementary symmetric in JM elements matches the degeneracy classes (Eq. 10)") {
    // C^{(k)} = sigma_k(X_1..X_n): compare character transforms for n <= 5
    for (int n = 2; n <= 5; ++n) {
        auto buckets = detail::perms_by_degeneracy(n);
        Truncation t = Truncation::weight(n);
        for (int k = 0; k < n; ++k) {
            ClassElement ck;
            ck.n = n;
            auto it = buckets.find(k);
            if (it != buckets.end())
                for (const auto& g : it->second) ck.add(g.cycle_type(), 1);
            // collapse: each class hit |C_mu| times -> coefficient |C_mu|
            for (auto& [mu, c] : ck.coeffs) c /= Rational(class_size(mu));
            // now ck = sum C_mu over classes of degeneracy k
            Series lhs = char_transform(ck, t);
            Series rhs = Series::zero(t);
            for (const auto& lam : partitions_of(n)) {
                Rational dim = dim_ratio(lam) * Rational(factorial(static_cast<unsigned long>(n)));
                rhs += schur(lam, t).scaled(jm_elementary(k, lam) * dim);
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("content product form returns series in the phi parameters") {
    Truncation t = Truncation::weight(2).with_aux("u", 3);
    Series u = Series::var(VarId::aux("u"), t);
    auto phi = [&](int c) { return Series::one(t) + u.scaled(c); };
    Series val = jm_content_product(Partition({2}), phi, t);
    // contents 0,1: (1)(1+u) = 1+u
    CHECK(val == Series::one(t) + u);
}

TEST_CASE("kerov-olshanski products from Remark 2.14") {
    KOElement c1 = KOElement::basis(Partition({1}));
    KOElement c2 = KOElement::basis(Partition({2}));
    KOElement c12 = KOElement::basis(Partition({2, 1}));

    KOElement sq = ko_multiply(c1, c1);
    KOElement expect1;
    expect1.add(Partition({1}), 1);
    expect1.add(Partition({1, 1}), 2);
    CHECK(sq == expect1);

    KOElement pr = ko_multiply(c1, c2);
    KOElement expect2;
    expect2.add(Partition({2}), 2);
    expect2.add(Partition({2, 1}), 1);
    CHECK(pr == expect2);

    KOElement sq2 = ko_multiply(c2, c2);
    KOElement expect3;
    expect3.add(Partition({3}), 3);
    expect3.add(Partition({1, 1}), 1);
    expect3.add(Partition({2, 2}), 2);
    CHECK(sq2 == expect3);
}

TEST_CASE("the misprinted fourth KO product, pinned from the oracle") {
    // The usual printed form of this product table reads "3C_{3} + 4C_{2,2} +
    // 3C_{3,1}3C_{1,1,1} + 2C_{2,2,1}" with a missing operator between the
    // third and fourth terms. The computed product below is authoritative.
    KOElement got = ko_multiply(KOElement::basis(Partition({2})),
                                KOElement::basis(Partition({2, 1})));
    KOElement expect;
    expect.add(Partition({3}), 3);
    expect.add(Partition({2, 2}), 4);
    expect.add(Partition({3, 1}), 3);
    expect.add(Partition({1, 1, 1}), 3);
    expect.add(Partition({2, 2, 1}), 2);
    CHECK(got == expect);
}

TEST_CASE("ko_multiply commutes with projection to S_n") {
    KOElement a = KOElement::basis(Partition({2}));
    KOElement b = KOElement::basis(Partition({2, 1}));
    KOElement ab = ko_multiply(a, b);
    for (int n = 0; n <= a.max_size() + b.max_size() + 2; ++n) {
        CHECK(ko_project(ab, n) == class_multiply(ko_project(a, n), ko_project(b, n)));
    }
}
