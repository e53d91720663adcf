#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "banana/half_laurent.hpp"
#include "banana/partition.hpp"

namespace banana {

// Legs of the topological vertex. A 3D partition asymptotic to (l, m, n)
// stabilizes to
//   x-direction: (j,k) in l,   y-direction: (k,i) in m,   z-direction: (i,j) in n.
struct VertexKey {
    Partition l, m, n;

    bool operator<(const VertexKey& o) const {
        if (l != o.l) return l < o.l;
        if (m != o.m) return m < o.m;
        return n < o.n;
    }
};

using Box = std::array<int, 3>;

inline int legs_containing(const VertexKey& k, int i, int j, int ki) {
    int c = 0;
    if (k.l.has_cell(ki, j)) ++c;
    if (k.m.has_cell(i, ki)) ++c;
    if (k.n.has_cell(j, i)) ++c;
    return c;
}

inline bool in_leg_union(const VertexKey& k, int i, int j, int ki) {
    return legs_containing(k, i, j, ki) > 0;
}

// Renormalised volume of the minimal configuration: points in exactly one leg
// weigh 0, so only the finite multi-leg overlap contributes.
inline long min_renorm_volume(const VertexKey& k) {
    int bi = std::max({k.m.length(), k.n.empty() ? 0 : k.n.part(1), 1});
    int bj = std::max({k.l.empty() ? 0 : k.l.part(1), k.n.length(), 1});
    int bk = std::max({k.l.length(), k.m.empty() ? 0 : k.m.part(1), 1});
    long vol = 0;
    for (int i = 0; i < bi; ++i)
        for (int j = 0; j < bj; ++j)
            for (int c = 0; c < bk; ++c) {
                int legs = legs_containing(k, i, j, c);
                if (legs >= 2) vol += 1 - legs;
            }
    return vol;
}

// Euler-characteristic vertex: sum of p^{n(eta)} over 3D partitions asymptotic
// to the legs, where n(eta) counts boxes outside every leg. DFS over order
// ideals of the leg-union complement in lex order; each ideal is generated by
// its unique lex-increasing build sequence. Result window [0, 2*max_extra].
inline HalfLaurent vertex_brute(const VertexKey& key, int max_extra) {
    if (max_extra < 0) throw std::invalid_argument("max_extra < 0");
    if (max_extra > 14) throw std::invalid_argument("vertex_brute: enumeration budget too large");

    // Any extra box must have all predecessors in (legs + smaller extras); a
    // box far out along an axis forces a chain of extras below it, so the
    // candidate region is bounded by leg extents + budget.
    int ei = std::max(key.m.length(), key.n.empty() ? 0 : key.n.part(1));
    int ej = std::max(key.l.empty() ? 0 : key.l.part(1), key.n.length());
    int ek = std::max(key.l.length(), key.m.empty() ? 0 : key.m.part(1));
    int bi = ei + max_extra + 1, bj = ej + max_extra + 1, bk = ek + max_extra + 1;

    std::vector<Box> cand;
    for (int i = 0; i < bi; ++i)
        for (int j = 0; j < bj; ++j)
            for (int c = 0; c < bk; ++c)
                if (!in_leg_union(key, i, j, c)) cand.push_back({i, j, c});
    std::sort(cand.begin(), cand.end());

    std::map<Box, int> index;
    for (std::size_t t = 0; t < cand.size(); ++t) index[cand[t]] = static_cast<int>(t);

    // predecessor candidate indices of each candidate (coordinate-lowered
    // neighbours that are themselves outside the legs)
    std::vector<std::array<int, 3>> preds(cand.size(), {-1, -1, -1});
    for (std::size_t t = 0; t < cand.size(); ++t) {
        for (int d = 0; d < 3; ++d) {
            Box b = cand[t];
            if (b[d] == 0) continue;
            --b[d];
            if (in_leg_union(key, b[0], b[1], b[2])) continue;
            preds[t][d] = index.at(b);
        }
    }

    std::vector<long> count(static_cast<std::size_t>(max_extra) + 1, 0);
    count[0] = 1;
    std::vector<char> chosen(cand.size(), 0);

    // addable: all predecessors chosen (or in legs)
    auto addable = [&](int t) {
        for (int d = 0; d < 3; ++d) {
            int p = preds[static_cast<std::size_t>(t)][d];
            if (p >= 0 && !chosen[static_cast<std::size_t>(p)]) return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self, int start, int size) -> void {
        if (size == max_extra) return;
        for (int t = start; t < static_cast<int>(cand.size()); ++t) {
            if (!addable(t)) continue;
            chosen[static_cast<std::size_t>(t)] = 1;
            ++count[static_cast<std::size_t>(size) + 1];
            self(self, t + 1, size + 1);
            chosen[static_cast<std::size_t>(t)] = 0;
        }
    };
    dfs(dfs, 0, 0);

    HalfLaurent r = HalfLaurent::zero(0, 2 * max_extra);
    for (int n = 0; n <= max_extra; ++n)
        r = add(r, HalfLaurent::monomial(2 * n, Rat(count[static_cast<std::size_t>(n)]),
                                         0, 2 * max_extra));
    return r;
}

namespace detail {

// Complete homogeneous symmetric series h_0..h_kmax at x_i = q^{2(i - nu_i) - 1},
// i = 1, 2, ...; the tail is cut once no monomial within the window can
// involve the variable. Windows evolve by the usual rules; the caller supplies
// enough headroom in whi.
inline std::vector<HalfLaurent> h_table(const Partition& nu, int kmax, int whi) {
    int neg = 0;  // most negative variable exponent
    for (int i = 1; i <= nu.length() + 1; ++i)
        neg = std::min(neg, 2 * (i - nu.part(i)) - 1);
    long floor_rest = static_cast<long>(std::min(neg, 0)) * std::max(kmax - 1, 0);
    int lo = static_cast<int>(std::min<long>(0, static_cast<long>(neg) * kmax));
    std::vector<HalfLaurent> h(static_cast<std::size_t>(kmax) + 1,
                               HalfLaurent::zero(lo, whi));
    h[0] = HalfLaurent::one(lo, whi);
    for (int i = 1;; ++i) {
        long e = 2 * (static_cast<long>(i) - nu.part(i)) - 1;
        if (i > nu.length() && e + floor_rest > whi) break;
        // h'_k = h_k + x_i h'_{k-1}; ascending k uses the updated h'_{k-1}
        for (int k = 1; k <= kmax; ++k) {
            HalfLaurent t = shift(h[static_cast<std::size_t>(k) - 1], static_cast<int>(e));
            h[static_cast<std::size_t>(k)] = add(h[static_cast<std::size_t>(k)], t);
        }
    }
    return h;
}

inline HalfLaurent jt_det(const std::vector<std::vector<HalfLaurent>>& m, std::vector<int>& cols,
                          int row) {
    int n = static_cast<int>(m.size());
    if (row == n) return HalfLaurent::one(0, HalfLaurent::INF);
    HalfLaurent s = HalfLaurent::zero(HalfLaurent::INF, HalfLaurent::INF);
    int sign = 1;
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        int c = cols[ci];
        cols.erase(cols.begin() + static_cast<long>(ci));
        HalfLaurent sub = jt_det(m, cols, row + 1);
        HalfLaurent term = mul(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)], sub);
        s = add(s, sign == 1 ? term : neg(term));
        cols.insert(cols.begin() + static_cast<long>(ci), c);
        sign = -sign;
    }
    return s;
}

}  // namespace detail

// Skew Schur function S_{lambda/eta} at the principal specialization
// x_i = p^{i - 1/2 - nu_i} (exponents in q). The result window covers at least
// [lo, hi]; it reports a lower win_lo when the series genuinely reaches lower.
// Returns the zero series when eta is not contained in lambda.
inline HalfLaurent schur_principal(const Partition& lambda, const Partition& eta,
                                   const Partition& nu, int lo, int hi) {
    if (!contains(lambda, eta)) return HalfLaurent::zero(lo, hi);
    int n = lambda.length();
    if (n == 0) return HalfLaurent::one(lo, hi);
    int kmax = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            kmax = std::max(kmax, lambda.part(i) - eta.part(j) - i + j);
    int neg = 0;
    for (int i = 1; i <= nu.length() + 1; ++i)
        neg = std::min(neg, 2 * (i - nu.part(i)) - 1);
    // headroom for the knowledge eaten by negative-order factors
    int pad = (-neg + 2) * (kmax + n + 2);
    auto h = detail::h_table(nu, kmax, hi + pad);
    int hlo = h[0].win_lo;
    std::vector<std::vector<HalfLaurent>> m(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        m[static_cast<std::size_t>(i - 1)].resize(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j) {
            int k = lambda.part(i) - eta.part(j) - i + j;
            m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                (k < 0) ? HalfLaurent::zero(hlo, HalfLaurent::INF)
                        : h[static_cast<std::size_t>(k)];
        }
    }
    std::vector<int> cols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = j;
    HalfLaurent det = detail::jt_det(m, cols, 0);
    if (det.win_hi < hi) throw window_error("schur_principal: padding insufficient");
    return det.restricted(std::min(lo, det.win_lo), hi);
}

inline HalfLaurent macmahon(int lo, int hi) {
    HalfLaurent r = HalfLaurent::one(0, hi);
    for (int m = 1; 2 * m <= hi; ++m) {
        // (1 - p^m)^{-m}
        HalfLaurent f = sub(HalfLaurent::one(0, hi), HalfLaurent::monomial(2 * m, Rat(1), 0, hi));
        r = mul(r, pow(f, -m));
    }
    return r.restricted(lo, hi);
}

// ORV closed form:
//   V_{lmn} = M(p) p^{-(|l|^2+|m^t|^2+|n|^2)/2} S_{n^t}(p^{-rho})
//             sum_eta S_{l^t/eta}(p^{-n-rho}) S_{m/eta}(p^{-n^t-rho}).
// The returned window covers [lo, hi] above and reaches as low as the series does.
inline HalfLaurent vertex_closed(const VertexKey& key, int lo, int hi) {
    Partition lt = conjugate(key.l);
    Partition mt = conjugate(key.m);
    Partition nt = conjugate(key.n);
    int shiftq = static_cast<int>(key.l.norm_sq() + mt.norm_sq() + key.n.norm_sq());
    int sz = key.l.size() + key.m.size() + key.n.size();
    int work_hi = hi + std::max(shiftq, 0) + 8 * (sz + 1);

    HalfLaurent acc = HalfLaurent::zero(HalfLaurent::INF, HalfLaurent::INF);
    // eta runs over partitions inside both l^t and m
    Partition capshape;
    {
        std::vector<int> mins;
        for (int i = 1; i <= std::min(lt.length(), key.m.length()); ++i)
            mins.push_back(std::min(lt.part(i), key.m.part(i)));
        while (!mins.empty() && mins.back() == 0) mins.pop_back();
        capshape = Partition(mins);
    }
    for (const Partition& eta : subpartitions(capshape)) {
        HalfLaurent a = schur_principal(lt, eta, key.n, 0, work_hi);
        HalfLaurent b = schur_principal(key.m, eta, nt, 0, work_hi);
        acc = add(acc, mul(a, b));
    }
    HalfLaurent s = schur_principal(nt, Partition(), Partition(), 0, work_hi);
    HalfLaurent r = mul(mul(macmahon(0, work_hi), s), acc);
    r = shift(r, -shiftq);
    if (r.win_hi < hi) throw window_error("vertex_closed: padding insufficient");
    return r.restricted(std::min(lo, r.win_lo), hi);
}

// Holomorphic Euler characteristics of partition-thickened curves.
inline long chi_section(const Partition& l) {
    return (l.norm_sq() + conjugate(l).norm_sq()) / 2;
}
inline long chi_fibre(const Partition&) { return 0; }
inline long chi_fibre_section_meet(const Partition& l) { return l.empty() ? 0 : l.part(1); }
inline long chi_banana_pair(const Partition& m, const Partition& l) {
    long v1 = min_renorm_volume({m, l, Partition()});
    long v2 = min_renorm_volume({conjugate(m), conjugate(l), Partition()});
    return v1 + v2 +
           (m.norm_sq() + conjugate(m).norm_sq() + l.norm_sq() + conjugate(l).norm_sq()) / 2;
}

}  // namespace banana
