#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "banana/closed_forms.hpp"

using namespace banana;

namespace {

// Direct dense expansion of prod_{m=1..mmax} (1 - s p^m Q)^{-m}: an
// independent oracle for the MacMahon factories. poly[j][n] = coeff of Q^j p^n.
std::vector<std::vector<long>> direct_macmahon(int sign, int qcap, int pcap) {
    std::vector<std::vector<long>> poly(static_cast<std::size_t>(qcap) + 1,
                                        std::vector<long>(static_cast<std::size_t>(pcap) + 1, 0));
    poly[0][0] = 1;
    for (int m = 1; m <= pcap; ++m) {
        // multiply by (1 - s p^m Q)^{-m} = sum_j binom(m-1+j, j) s^j p^{mj} Q^j
        auto next = poly;
        for (int j = 1; j <= qcap; ++j) {
            if (m * j > pcap) break;
            long b = 1;
            for (int t = 1; t <= j; ++t) b = b * (m - 1 + t) / t;
            long w = b * ((sign < 0 && j % 2) ? -1 : 1);
            for (int i = 0; i + j <= qcap; ++i)
                for (int n = 0; n + m * j <= pcap; ++n)
                    if (poly[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)])
                        next[static_cast<std::size_t>(i + j)][static_cast<std::size_t>(n + m * j)] +=
                            w * poly[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
        }
        poly = next;
    }
    return poly;
}

}  // namespace

TEST_CASE("psi examples") {
    HalfLaurent p1 = psi(1, -4, 8);
    CHECK(agree(p1, HalfLaurent::one(-4, 8)));

    HalfLaurent p2 = psi(2, -4, 8);  // p^{-1} - 2 + p
    CHECK(p2.coeff(-2) == 1);
    CHECK(p2.coeff(0) == -2);
    CHECK(p2.coeff(2) == 1);
    CHECK(p2.coeff(4) == 0);

    HalfLaurent p0 = psi(0, -4, 12);  // p + 2p^2 + 3p^3 + ...
    for (int n = 1; 2 * n <= 12; ++n) CHECK(p0.coeff(2 * n) == n);
    CHECK(p0.coeff(0) == 0);
}

TEST_CASE("psi(g) psi(2-g) = 1") {
    for (int g = -1; g <= 3; ++g) {
        HalfLaurent a = psi(g, -12, 16);
        HalfLaurent b = psi(2 - g, -12, 16);
        HalfLaurent prod = mul(a, b);
        CHECK(agree(prod, HalfLaurent::one(prod.win_lo, prod.win_hi)));
    }
}

TEST_CASE("macmahon unit equals the empty vertex") {
    HalfLaurent m = macmahon(0, 20);
    HalfLaurent v = vertex_closed({{}, {}, {}}, 0, 20);
    CHECK(agree(m, v));
    CHECK(m.coeff(8) == 13);
}

TEST_CASE("macmahon_q against the direct expansion oracle") {
    QExp caps = qexp(0, 0, 2, 2);
    int hi = 12;

    auto oracle_plus = direct_macmahon(+1, 2, hi / 2);
    QSeries mq = macmahon_q(qexp(0, 0, 1, 1), +1, caps, 0, hi);
    for (int j = 0; j <= 2; ++j)
        for (int n = 0; 2 * n <= hi; ++n)
            CHECK(mq.coeff(qexp(0, 0, j, j)).coeff(2 * n) ==
                  oracle_plus[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)]);

    auto oracle_minus = direct_macmahon(-1, 2, hi / 2);
    QSeries mn = macmahon_q(qexp(0, 0, 0, 1), -1, qexp(0, 0, 0, 2), 0, hi);
    for (int j = 0; j <= 2; ++j)
        for (int n = 0; 2 * n <= hi; ++n)
            CHECK(mn.coeff(qexp(0, 0, 0, j)).coeff(2 * n) ==
                  oracle_minus[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)]);

    // Q-linear coefficient of M(p,Q) is p + 2p^2 + 3p^3 + ...
    for (int n = 1; 2 * n <= hi; ++n) CHECK(mq.coeff(qexp(0, 0, 1, 1)).coeff(2 * n) == n);
}

TEST_CASE("theta coefficient table") {
    ThetaTable t = theta_coeffs(8, 10);
    // a < -1 vanishes by construction
    CHECK(t.coeff(-2, 0) == 0);
    CHECK(t.coeff(-5, 3) == 0);
    // the two low rows of the division
    for (int k = 1; k <= 10; ++k) CHECK(t.coeff(-1, k) == -k);
    CHECK(t.coeff(0, 0) == 1);
    for (int k = 1; k <= 10; ++k) CHECK(t.coeff(0, k) == 2 * k);
    // rows between the squares are empty
    for (int k = -10; k <= 10; ++k) {
        CHECK(t.coeff(1, k) == 0);
        CHECK(t.coeff(2, k) == 0);
    }
    CHECK_THROWS(t.coeff(9, 0));
    CHECK_THROWS(t.coeff(0, 11));
}

TEST_CASE("theta lattice sums are symmetric as functions") {
    // N(Q,y) D(Q,1/y) = N(Q,1/y) D(Q,y) as exact finite polynomials; D = -QyS^2.
    // Equivalently N(y) y^{-1} S(1/y)^2 = N(1/y) y S(y)^2 with S(1/y) = -y S(y),
    // so it reduces to N(y) y = N(1/y) y: check N(y) = N(1/y) and S(1/y) = -yS(y).
    int amax = 10;
    std::map<std::pair<int, int>, long> N, S;
    for (int k = -5; k <= 5; ++k) {
        if (k * k <= amax) N[{k * k, k}] += (k % 2 == 0) ? 1 : -1;
        long qo = 2L * k * (k + 1);
        if (qo <= amax) S[{static_cast<int>(qo), k}] += (k % 2 == 0) ? 1 : -1;
    }
    for (const auto& [ak, v] : N) {
        auto it = N.find({ak.first, -ak.second});
        REQUIRE(it != N.end());
        CHECK(it->second == v);
    }
    for (const auto& [ak, v] : S) {
        // S(Q, 1/y) = -y S(Q, y) amounts to coeff(j) = -coeff(-j-1)
        auto it = S.find({ak.first, -ak.second - 1});
        REQUIRE(it != S.end());
        CHECK(it->second == -v);
    }
}

TEST_CASE("z_fibre examples") {
    // caps (0,0): the empty product leaves M(p)^24
    QSeries z0 = z_fibre_closed(0, 0, 0, 16);
    HalfLaurent m24 = pow(macmahon(0, 24), 24).restricted(0, 16);
    CHECK(agree_on(z0.coeff(qexp(0, 0, 0, 0)), m24, 0, 16));

    // Q2^0 Q3^1 coefficient: M^24 * 12 psi_0
    QSeries z = z_fibre_closed(1, 1, 0, 16);
    CHECK(agree_on(z.coeff(qexp(0, 0, 0, 0)), m24, 0, 16));
    HalfLaurent want = mul(m24, scale(psi(0, 0, 20), Rat(12))).restricted(0, 16);
    CHECK(agree_on(z.coeff(qexp(0, 0, 0, 1)), want, 0, 16));
    CHECK(agree_on(z.coeff(qexp(0, 0, 1, 0)), want, 0, 16));
}

TEST_CASE("z_fibre equals the twelfth power of the banana double sum") {
    int lo = 0, hi = 10, cap = 2;
    // direct vertex double sum over (alpha, mu)
    QExp caps = qexp(0, 0, cap, cap);
    QSeries dsum = QSeries::zero(caps, lo, hi);
    for (int a = 0; a <= cap; ++a)
        for (int m = 0; m <= cap; ++m)
            for (const auto& al : partitions_of(a))
                for (const auto& mu : partitions_of(m)) {
                    Partition alt = conjugate(al), mut = conjugate(mu);
                    int s = static_cast<int>(al.norm_sq() + alt.norm_sq() + mu.norm_sq() +
                                             mut.norm_sq());
                    HalfLaurent x = vertex_closed({{}, mu, al}, lo - s, hi + 2 * s + 8);
                    HalfLaurent y = vertex_closed({{}, mut, alt}, lo - s, hi + 2 * s + 8);
                    HalfLaurent term = shift(mul(x, y), s);
                    QSeries tq(caps, lo, hi);
                    tq.set(qexp(0, 0, a, m), term.restricted(lo, hi));
                    dsum = add(dsum, tq);
                }
    QSeries z = z_fibre_closed(cap, cap, lo, hi);
    QSeries d12 = pow(dsum, 12);
    CHECK(agree(truncate_total_degree(d12, cap * 2), truncate_total_degree(z, cap * 2)));
}

TEST_CASE("rank-3 product equals the vertex triple sum, low degree") {
    ThetaTable t = theta_coeffs(8, 10);
    QSeries lhs = rank3_triple_sum(2, -4, 8);
    QSeries rhs = rank3_theta_product(t, 2, -4, 8);
    CHECK(agree(truncate_total_degree(lhs, 2), truncate_total_degree(rhs, 2)));
}
