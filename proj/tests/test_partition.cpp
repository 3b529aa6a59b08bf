#include <catch2/catch_amalgamated.hpp>

#include "tauforge/partition.hpp"

using namespace tauforge;

TEST_CASE("parse_partition accepts both grammars") {
    CHECK(parse_partition("[5,3,3,2]") == Partition({5, 3, 3, 2}));
    CHECK(parse_partition("2^2 3^1") == Partition({3, 2, 2}));
    CHECK(parse_partition("2^2 3^1").size() == 7);
    CHECK(parse_partition("[]") == Partition());
    CHECK(parse_partition("1^2 2^1") == Partition({2, 1, 1}));
    CHECK(parse_partition("[1,3,2]") == Partition({3, 2, 1}));  // normalized
    CHECK(parse_partition("4") == Partition({4}));

    CHECK_THROWS_AS(parse_partition("[0,1]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("[-2]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("2^"), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("3^0"), std::invalid_argument);
}

TEST_CASE("contents in row-major order") {
    CHECK(contents(Partition({5, 3, 3, 2})) ==
          std::vector<int>{0, 1, 2, 3, 4, -1, 0, 1, -2, -1, 0, -3, -2});
    CHECK(contents(Partition()).empty());
    CHECK(contents(Partition({1})) == std::vector<int>{0});
}

TEST_CASE("contents as multiset match the printed example") {
    auto c = contents(Partition({5, 3, 3, 2}));
    std::sort(c.begin(), c.end());
    CHECK(c == std::vector<int>{-3, -2, -2, -1, -1, 0, 0, 0, 1, 1, 2, 3, 4});
}

TEST_CASE("dim_ratio basics") {
    CHECK(dim_ratio(Partition()) == Rational(1));
    for (int n = 1; n <= 6; ++n)
        CHECK(dim_ratio(Partition({n})) ==
              Rational(1) / Rational(factorial(static_cast<unsigned long>(n))));
    CHECK(dim_ratio(Partition({2, 1})) == make_rational(1, 3));
}

TEST_CASE("dim_ratio agrees with the determinant specialization, |p| <= 10") {
    for (int n = 0; n <= 10; ++n)
        for (const auto& p : partitions_of(n)) CHECK(dim_ratio(p) == dim_ratio_det(p));
}

TEST_CASE("dim_ratio times n! is a positive integer, |p| <= 10") {
    for (int n = 0; n <= 10; ++n)
        for (const auto& p : partitions_of(n)) {
            Rational dim = dim_ratio(p) * Rational(factorial(static_cast<unsigned long>(n)));
            CHECK(dim > 0);
            CHECK(dim.get_den() == 1);
        }
}

TEST_CASE("regular representation: sum of dim^2 is n!") {
    for (int n = 0; n <= 8; ++n) {
        Rational total(0);
        for (const auto& p : partitions_of(n)) {
            Rational dim = dim_ratio(p) * Rational(factorial(static_cast<unsigned long>(n)));
            total += dim * dim;
        }
        CHECK(total == Rational(factorial(static_cast<unsigned long>(n))));
    }
}

TEST_CASE("aut_order") {
    CHECK(aut_order(Partition({3, 2})) == 1);
    CHECK(aut_order(Partition({2, 2, 2})) == 6);
    CHECK(aut_order(Partition({1, 1, 2, 2})) == 4);
}

TEST_CASE("degeneracy") {
    CHECK(degeneracy(Partition({1, 1, 1})) == 0);
    CHECK(degeneracy(Partition({2, 1, 1, 1})) == 1);
    CHECK(degeneracy(Partition({5, 3, 3, 2})) == 9);
}

TEST_CASE("content sum identity and conjugate negation") {
    for (int n = 0; n <= 8; ++n)
        for (const auto& p : partitions_of(n)) {
            Rational expect(0);
            for (int i = 1; i <= p.length(); ++i) {
                long li = p.parts()[static_cast<std::size_t>(i - 1)];
                expect += Rational(li) * Rational(li - 2 * i + 1) / 2;
            }
            Rational got(0);
            for (int c : contents(p)) got += c;
            CHECK(got == expect);

            auto cp = contents(conjugate(p));
            for (int& x : cp) x = -x;
            auto c0 = contents(p);
            std::sort(cp.begin(), cp.end());
            std::sort(c0.begin(), c0.end());
            CHECK(cp == c0);
        }
}

TEST_CASE("partitions_of is reverse-lexicographic") {
    auto ps = partitions_of(5);
    REQUIRE(ps.size() == 7);
    CHECK(ps.front() == Partition({5}));
    CHECK(ps[1] == Partition({4, 1}));
    CHECK(ps.back() == Partition({1, 1, 1, 1, 1}));
    for (std::size_t i = 0; i + 1 < ps.size(); ++i)
        CHECK(ps[i].parts() > ps[i + 1].parts());
}

TEST_CASE("class sizes") {
    CHECK(class_size(Partition({1, 1, 1})) == 1);
    CHECK(class_size(Partition({2, 1})) == 3);
    CHECK(class_size(Partition({3})) == 2);
    CHECK(class_size(Partition({2, 2})) == 3);
}
