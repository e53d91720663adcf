#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "banana/qseries.hpp"
#include "banana/vertex.hpp"

namespace banana {

// psi_g = (p^{1/2} - p^{-1/2})^{2g-2} = (q - 1/q)^{2g-2}, any integer g
inline HalfLaurent psi(int g, int lo, int hi) {
    int e = 2 * g - 2;
    HalfLaurent v = add(HalfLaurent::monomial(1, Rat(1), -1, HalfLaurent::INF),
                        HalfLaurent::monomial(-1, Rat(-1), -1, HalfLaurent::INF));
    if (e >= 0) return pow(v, e).restricted(std::min(lo, -e), hi);
    int pad = 2 * (-e) + 8;
    HalfLaurent inv = invert(v.restricted(-1, hi + pad));
    return pow(inv, -e).restricted(std::min(lo, 0), hi);
}

namespace detail {
inline void tpl_truncate(TemplateSeries& t, int hi) {
    t.win_hi = std::min(t.win_hi, hi);
    for (auto& h : t.qc) h = h.restricted(h.win_lo, std::min(hi, h.win_hi));
}
}  // namespace detail

// M(p,Q) = prod_{m>0} (1 - p^m Q)^{-m} as a Q-template
inline TemplateSeries macmahon_template(int cap, int hi) {
    TemplateSeries r(cap, 0, HalfLaurent::INF);
    r.qc[0] = HalfLaurent::one(0, HalfLaurent::INF);
    for (int m = 1; 2 * m <= hi; ++m) {
        TemplateSeries f(cap, 0, HalfLaurent::INF);
        for (int j = 0; j <= cap; ++j)
            f.qc[static_cast<std::size_t>(j)] =
                HalfLaurent::monomial(2 * m * j, Rat(binomial(m - 1 + j, j)), 0, HalfLaurent::INF);
        r = mul(r, f);
        detail::tpl_truncate(r, hi);
    }
    r.win_hi = std::min(r.win_hi, hi);
    return r;
}

// prod_{m>0} (1 + p^m Q)^m as a Q-template
inline TemplateSeries plus_product_template(int cap, int hi) {
    TemplateSeries r(cap, 0, HalfLaurent::INF);
    r.qc[0] = HalfLaurent::one(0, HalfLaurent::INF);
    for (int m = 1; 2 * m <= hi; ++m) {
        TemplateSeries f(cap, 0, HalfLaurent::INF);
        for (int j = 0; j <= std::min(cap, m); ++j)
            f.qc[static_cast<std::size_t>(j)] =
                HalfLaurent::monomial(2 * m * j, Rat(binomial(m, j)), 0, HalfLaurent::INF);
        r = mul(r, f);
        detail::tpl_truncate(r, hi);
    }
    r.win_hi = std::min(r.win_hi, hi);
    return r;
}

// M(p, sign * Q^target) truncated at caps, window [min(lo,0), hi]
inline QSeries macmahon_q(const QExp& target, int sign, const QExp& caps, int lo, int hi) {
    int jmax = -1;
    for (int i = 0; i < 4; ++i)
        if (target[i] > 0) {
            int m = caps[i] / target[i];
            jmax = (jmax < 0) ? m : std::min(jmax, m);
        }
    if (jmax < 0) throw std::invalid_argument("macmahon_q: target must involve a variable");
    TemplateSeries t = macmahon_template(jmax, hi);
    QSeries r = subst_q_monomial(t, target, sign, caps);
    QSeries s(caps, std::min({lo, 0, r.win_lo}), std::min(hi, r.win_hi));
    for (const auto& [e, h] : r.terms) s.set(e, h.restricted(s.win_lo, s.win_hi));
    return s;
}

// Jacobi-theta quotient coefficients c(a,k):
//   sum_{a>=-1} sum_k c(a,k) Q^a y^k = N(Q,y) / D(Q,y),
//   N = sum_{k in Z} Q^{k^2} (-y)^k,
//   D = (sum_{k in Z+1/2} Q^{2k^2} (-y)^k)^2 = -Q y S(Q,y)^2,
//   S = sum_{j in Z} Q^{2j(j+1)} (-1)^j y^j.
// Division anchored at the lowest Q-order of the denominator; per Q-order the
// y-quotient is expanded in ascending powers of y. Coefficients are exact for
// |k| <= k_window; the interior margins make the recursion self-consistent and
// a multiply-back audit guards the result.
struct ThetaTable {
    int a_max = 0;
    int k_window = 0;
    std::map<std::pair<int, int>, std::int64_t> c;  // (a,k) -> c(a,k), zeros omitted

    std::int64_t coeff(int a, int k) const {
        if (a < -1) return 0;
        if (a > a_max || k < -k_window || k > k_window)
            throw std::out_of_range("theta table bounds exceeded");
        auto it = c.find({a, k});
        return it == c.end() ? 0 : it->second;
    }
};

namespace detail {
using YPoly = std::map<int, Int>;  // y-exponent -> integer coefficient

inline YPoly ypoly_mul(const YPoly& a, const YPoly& b, int klo, int khi) {
    YPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            int e = ea + eb;
            if (e < klo || e > khi) continue;
            r[e] += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();)
        it = (it->second == 0) ? r.erase(it) : std::next(it);
    return r;
}
}  // namespace detail

inline ThetaTable theta_coeffs(int a_max, int k_window) {
    if (a_max < -1 || k_window <= 0) throw std::invalid_argument("theta_coeffs bounds");
    using detail::YPoly;
    int kw = k_window + 2 * (a_max + 4);
    int klo = -kw, khi = kw;

    // S^2 by Q-order
    std::map<int, YPoly> s2;
    {
        std::map<int, YPoly> S;
        for (int j = -(a_max + 3); j <= a_max + 3; ++j) {
            long qo = 2L * j * (j + 1);
            if (qo > a_max + 1) continue;
            S[static_cast<int>(qo)][j] += (j % 2 == 0) ? 1 : -1;
        }
        for (const auto& [qa, pa] : S)
            for (const auto& [qb, pb] : S) {
                if (qa + qb > a_max + 1) continue;
                YPoly prod = detail::ypoly_mul(pa, pb, klo, khi);
                for (const auto& [e, v] : prod) s2[qa + qb][e] += v;
            }
    }
    if (!s2.count(0) || !s2.at(0).count(0))
        throw std::runtime_error("theta denominator not invertible within bounds");

    // r_a = -y^{-1} N_{a+1}
    std::map<int, YPoly> rhs;
    for (int k = 0; k * k <= a_max + 1; ++k) {
        int b = k * k;
        Int sgn = (k % 2 == 0) ? 1 : -1;
        rhs[b - 1][k - 1] -= sgn;
        if (k > 0) rhs[b - 1][-k - 1] -= sgn;
    }

    // c_a (y-1)^2 = y^2 (r_a - sum_{b>=1} s2_b c_{a-b}); forward substitution
    std::map<int, YPoly> cs;
    for (int a = -1; a <= a_max; ++a) {
        YPoly p;
        if (rhs.count(a)) p = rhs[a];
        for (const auto& [b, sb] : s2) {
            if (b == 0 || b > a + 1) continue;
            if (!cs.count(a - b)) continue;
            YPoly prod = detail::ypoly_mul(sb, cs[a - b], klo, khi);
            for (const auto& [e, v] : prod) p[e] -= v;
        }
        YPoly gamma;
        if (!p.empty()) {
            int plo = p.begin()->first + 2;
            for (int k = plo; k <= khi; ++k) {
                Int pk = 0;
                auto it = p.find(k - 2);
                if (it != p.end()) pk = it->second;
                Int g1 = gamma.count(k - 1) ? gamma[k - 1] : Int(0);
                Int g2 = gamma.count(k - 2) ? gamma[k - 2] : Int(0);
                Int gk = pk + 2 * g1 - g2;
                if (gk != 0) gamma[k] = gk;
            }
        }
        cs[a] = gamma;
    }

    ThetaTable t;
    t.a_max = a_max;
    t.k_window = k_window;
    for (const auto& [a, poly] : cs)
        for (const auto& [k, v] : poly) {
            if (k < -k_window || k > k_window || v == 0) continue;
            if (!v.fits_slong_p()) throw std::overflow_error("theta coefficient overflow");
            t.c[{a, k}] = v.get_si();
        }

    // audit: (sum_a c_a Q^a) * (-Q y S^2) = N on the interior region
    for (int a = -1; a <= a_max - 1; ++a) {
        YPoly lhs;  // Q-order a+1 coefficient of C * (-QyS^2)
        for (const auto& [b, sb] : s2) {
            if (!cs.count(a - b)) continue;
            YPoly prod = detail::ypoly_mul(sb, cs[a - b], klo, khi);
            for (const auto& [e, v] : prod) lhs[e + 1] -= v;
        }
        for (int e = -k_window; e <= k_window; ++e) {
            Int want = 0;
            int k2 = a + 1;
            for (int k = 0; k * k <= k2; ++k)
                if (k * k == k2 && (k == 0 ? e == 0 : (e == k || e == -k)))
                    want = (k % 2 == 0) ? 1 : -1;
            Int got = lhs.count(e) ? lhs[e] : Int(0);
            if (got != want) throw std::runtime_error("theta division audit failed");
        }
    }
    return t;
}

// Z for the pure fibre classes, variables (Q2, Q3):
//   M(p)^24 prod_{d>0} M(p,(Q2Q3)^d)^24 /
//     ((1-(Q2Q3)^d)^12 M(p,-Q2^{d-1}Q3^d)^12 M(p,-Q2^d Q3^{d-1})^12)
inline QSeries z_fibre_closed(int cap2, int cap3, int lo, int hi) {
    QExp caps = qexp(0, 0, cap2, cap3);
    int pad = 4 * (cap2 + cap3 + 1);
    int whi = hi + pad;
    QSeries r =
        QSeries::from_hl(pow(macmahon(0, whi), 24).restricted(0, whi), caps, std::min(lo, 0), whi);
    for (int d = 1;; ++d) {
        bool any = false;
        if (d <= cap2 && d <= cap3) {
            r = mul(r, pow(macmahon_q(qexp(0, 0, d, d), +1, caps, 0, whi), 24));
            QSeries f = QSeries::one(caps, 0, whi);
            f.set(qexp(0, 0, d, d), HalfLaurent::monomial(0, Rat(-1), 0, whi));
            r = mul(r, pow(f, -12));
            any = true;
        }
        if (d - 1 <= cap2 && d <= cap3) {
            r = mul(r, pow(macmahon_q(qexp(0, 0, d - 1, d), -1, caps, 0, whi), -12));
            any = true;
        }
        if (d <= cap2 && d - 1 <= cap3) {
            r = mul(r, pow(macmahon_q(qexp(0, 0, d, d - 1), -1, caps, 0, whi), -12));
            any = true;
        }
        if (!any) break;
    }
    if (r.win_hi < hi) throw window_error("z_fibre_closed: padding insufficient");
    QSeries out(caps, std::min(lo, r.win_lo), hi);
    for (const auto& [e, h] : r.terms) out.set(e, h.restricted(out.win_lo, out.win_hi));
    return out;
}

// .............................................................................
// rank-3 cross-check pieces

// sum over partition triples (nu, alpha, mu), Q1^{|nu|} Q2^{|alpha|} Q3^{|mu|}
// p^{(|nu|^2+|nu^t|^2+|alpha|^2+|alpha^t|^2+|mu|^2+|mu^t|^2)/2}
//   V_{nu mu alpha} V_{nu^t mu^t alpha^t}
inline QSeries rank3_triple_sum(int deg_cap, int lo, int hi) {
    QExp caps = qexp(0, deg_cap, deg_cap, deg_cap);
    QSeries r = QSeries::zero(caps, lo, hi);
    for (int n1 = 0; n1 <= deg_cap; ++n1)
        for (int n2 = 0; n1 + n2 <= deg_cap; ++n2)
            for (int n3 = 0; n1 + n2 + n3 <= deg_cap; ++n3)
                for (const auto& nu : partitions_of(n1))
                    for (const auto& al : partitions_of(n2))
                        for (const auto& mu : partitions_of(n3)) {
                            Partition nut = conjugate(nu), alt = conjugate(al), mut = conjugate(mu);
                            long sq = nu.norm_sq() + nut.norm_sq() + al.norm_sq() +
                                      alt.norm_sq() + mu.norm_sq() + mut.norm_sq();
                            int sh = static_cast<int>(sq);
                            int vhi = hi + 2 * static_cast<int>(sq) + 8;
                            HalfLaurent a = vertex_closed({nu, mu, al}, lo - sh, vhi);
                            HalfLaurent b = vertex_closed({nut, mut, alt}, lo - sh, vhi);
                            HalfLaurent term = shift(mul(a, b), sh);
                            if (term.win_hi < hi)
                                throw window_error("rank3_triple_sum: padding insufficient");
                            QSeries t(caps, lo, hi);
                            t.set(qexp(0, n1, n2, n3), term.restricted(lo, hi));
                            r = add(r, t);
                        }
    return r;
}

// prod over classes d in the caps (d = 0 restricted to k > 0) of
//   (1 - (-1)^{d1+d2+d3} Q1^{d1} Q2^{d2} Q3^{d3} p^k)^{-c(||d||, k)}
inline QSeries rank3_theta_product(const ThetaTable& tt, int deg_cap, int lo, int hi) {
    QExp caps = qexp(0, deg_cap, deg_cap, deg_cap);
    QSeries r = QSeries::one(caps, std::min(lo, 0), hi);
    for (int d1 = 0; d1 <= deg_cap; ++d1)
        for (int d2 = 0; d1 + d2 <= deg_cap; ++d2)
            for (int d3 = 0; d1 + d2 + d3 <= deg_cap; ++d3) {
                long nd = 2L * (d1 * d2 + d2 * d3 + d3 * d1) - 1L * d1 * d1 - 1L * d2 * d2 -
                          1L * d3 * d3;
                if (nd < -1) continue;
                int sign = ((d1 + d2 + d3) % 2 == 0) ? +1 : -1;
                bool zero_class = (d1 == 0 && d2 == 0 && d3 == 0);
                // a factor with p^k first becomes visible at q^{2k}
                int ceil_half = (lo >= 0) ? (lo + 1) / 2 : -((-lo) / 2);
                int kmin = zero_class ? 1 : std::max(-tt.k_window, ceil_half);
                for (int k = kmin; 2 * k <= hi; ++k) {
                    std::int64_t c = tt.coeff(static_cast<int>(nd), k);
                    if (c == 0) continue;
                    QSeries f = QSeries::one(caps, std::min(r.win_lo, std::min(0, 2 * k)), hi);
                    QExp e = zero_class ? qexp(0, 0, 0, 0) : qexp(0, d1, d2, d3);
                    HalfLaurent mono = HalfLaurent::monomial(2 * k, Rat(-sign), f.win_lo, f.win_hi);
                    if (zero_class)
                        f.set(e, add(HalfLaurent::one(f.win_lo, f.win_hi), mono));
                    else
                        f.set(e, mono);
                    r = mul(r, pow(f, static_cast<int>(-c)));
                }
            }
    return r;
}

}  // namespace banana
