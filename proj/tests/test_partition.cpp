#include <catch2/catch_amalgamated.hpp>

#include "banana/partition.hpp"

using namespace banana;

namespace {

// Independent partition-count oracle: Euler's pentagonal-number recurrence.
long pentagonal_count(int n) {
    static std::vector<long> memo{1};
    while (static_cast<int>(memo.size()) <= n) {
        int m = static_cast<int>(memo.size());
        long s = 0;
        for (int k = 1;; ++k) {
            long g1 = static_cast<long>(k) * (3 * k - 1) / 2;
            long g2 = static_cast<long>(k) * (3 * k + 1) / 2;
            if (g1 > m && g2 > m) break;
            long sign = (k % 2) ? 1 : -1;
            if (g1 <= m) s += sign * memo[static_cast<std::size_t>(m - g1)];
            if (g2 <= m) s += sign * memo[static_cast<std::size_t>(m - g2)];
        }
        memo.push_back(s);
    }
    return memo[static_cast<std::size_t>(n)];
}

}  // namespace

TEST_CASE("conjugate examples") {
    CHECK(conjugate(Partition{3, 2, 1, 1}) == Partition{4, 2, 1});
    CHECK(conjugate(Partition()) == Partition());
    CHECK(conjugate(Partition{2, 1}) == Partition{2, 1});
}

TEST_CASE("norm_sq examples") {
    CHECK(Partition({3, 2, 2}).norm_sq() == 17);
    CHECK(Partition().norm_sq() == 0);
    CHECK(Partition({1, 1, 1}).norm_sq() == 3);
}

TEST_CASE("partitions_of examples and order") {
    auto p0 = partitions_of(0);
    REQUIRE(p0.size() == 1);
    CHECK(p0[0] == Partition());

    auto p1 = partitions_of(1);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0] == Partition{1});

    auto p4 = partitions_of(4);
    REQUIRE(p4.size() == 5);
    // reverse-lexicographic
    CHECK(p4[0] == Partition{4});
    CHECK(p4[1] == Partition{3, 1});
    CHECK(p4[2] == Partition{2, 2});
    CHECK(p4[3] == Partition{2, 1, 1});
    CHECK(p4[4] == Partition{1, 1, 1, 1});
}

TEST_CASE("partition count matches pentagonal recurrence up to 20") {
    for (int n = 0; n <= 20; ++n)
        CHECK(static_cast<long>(partitions_of(n).size()) == pentagonal_count(n));
}

TEST_CASE("conjugate is an involution, preserves size") {
    for (int n = 0; n <= 12; ++n)
        for (const auto& p : partitions_of(n)) {
            CHECK(conjugate(conjugate(p)) == p);
            CHECK(conjugate(p).size() == p.size());
        }
}

TEST_CASE("hook identity: |conj|^2 = sum (2i-1) lambda_i") {
    for (int n = 0; n <= 12; ++n)
        for (const auto& p : partitions_of(n)) {
            long rhs = 0;
            for (int i = 1; i <= p.length(); ++i)
                rhs += static_cast<long>(2 * i - 1) * p.part(i);
            CHECK(conjugate(p).norm_sq() == rhs);
        }
}

TEST_CASE("partition_tuples examples") {
    auto t00 = partition_tuples({0, 0});
    REQUIRE(t00.size() == 1);
    CHECK(t00[0][0] == Partition());
    CHECK(t00[0][1] == Partition());

    auto t11 = partition_tuples({1, 1});
    REQUIRE(t11.size() == 1);
    CHECK(t11[0][0] == Partition{1});

    auto t2 = partition_tuples({2});
    REQUIRE(t2.size() == 2);
    CHECK(t2[0][0] == Partition{2});
    CHECK(t2[1][0] == Partition{1, 1});
}

TEST_CASE("subpartitions of a shape") {
    auto s = subpartitions(Partition{2, 1});
    // {}, (1), (2), (1,1), (2,1)
    CHECK(s.size() == 5);
    auto s2 = subpartitions(Partition());
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == Partition());
}

TEST_CASE("invalid partitions rejected") {
    CHECK_THROWS(Partition({1, 2}));
    CHECK_THROWS(Partition({2, 0}));
    CHECK_THROWS(Partition({-1}));
}
