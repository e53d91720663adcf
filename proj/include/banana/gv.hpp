#pragma once

#include <map>
#include <string>
#include <vector>

#include "banana/closed_forms.hpp"
#include "banana/qseries.hpp"

namespace banana {

// log(Z / Z0) where Z0 is the pure-p normalization (Z with all Q set to 0)
inline QSeries connected_series(const QSeries& Z, const QSeries& Z0) {
    return log(mul(Z, invert(Z0)));
}

inline QSeries pure_p_part(const QSeries& Z) {
    QSeries r(Z.caps, Z.win_lo, Z.win_hi);
    r.set(qexp(0, 0, 0, 0), Z.constant_term());
    return r;
}

// Q -> -Q on every variable: negates odd total-degree coefficients.
inline QSeries flip_odd(const QSeries& a) {
    QSeries r = a;
    for (auto& [e, h] : r.terms)
        if (total_degree(e) % 2) h = neg(h);
    return r;
}

inline QSeries recast(const QSeries& a, const QExp& caps) {
    QSeries r(caps, a.win_lo, a.win_hi);
    for (const auto& [e, h] : a.terms) {
        if (!r.within_caps(e)) throw std::out_of_range("recast: term outside new caps");
        r.terms[e] = h;
    }
    return r;
}

// Coefficients in the psi basis: f = sum_g n_g psi_g with g >= 0.
// Exact: f * (q - 1/q)^2 must be a symmetric Laurent polynomial, fitted
// triangularly against v^g from the top exponent; nonzero residual means f is
// not in the span (or the window is too small to see the polynomial).
inline std::map<int, Rat> psi_basis_fit(const HalfLaurent& f) {
    HalfLaurent v = add(HalfLaurent::monomial(2, Rat(1), -2, HalfLaurent::INF),
                        add(HalfLaurent::monomial(-2, Rat(1), -2, HalfLaurent::INF),
                            HalfLaurent::monomial(0, Rat(-2), -2, HalfLaurent::INF)));
    HalfLaurent g = mul(f, v);
    std::map<int, Rat> out;
    if (g.is_zero()) return out;
    int sym = std::min(-g.win_lo, g.win_hi);
    if (sym < 0) throw std::domain_error("psi_basis_fit: window too small");
    // all visible support must lie in the symmetric range, symmetrically
    for (std::size_t i = 0; i < g.c.size(); ++i) {
        int e = g.base + static_cast<int>(i);
        if (g.c[i] == 0) continue;
        if (e < -sym || e > sym || g.coeff(-e) != g.c[i])
            throw std::domain_error("psi_basis_fit: not in psi-span within window");
    }
    HalfLaurent rem = g.restricted(-sym, sym);
    while (!rem.is_zero()) {
        int top = rem.base + static_cast<int>(rem.c.size()) - 1;
        Rat c = rem.coeff(top);
        if (top < 0 || top % 2 != 0)
            throw std::domain_error("psi_basis_fit: not in psi-span within window");
        int gdeg = top / 2;
        out[gdeg] = c;
        HalfLaurent vg = pow(v, gdeg).restricted(-sym, sym);
        rem = sub(rem, scale(vg, c));
    }
    return out;
}

// beta -> genus -> integer
struct GvTable {
    std::map<QExp, std::map<int, long>> entries;

    long value(const QExp& beta, int g) const {
        auto it = entries.find(beta);
        if (it == entries.end()) return 0;
        auto jt = it->second.find(g);
        return jt == it->second.end() ? 0 : jt->second;
    }
};

namespace detail {
inline std::vector<QExp> graded_classes(const QExp& caps) {
    std::vector<QExp> out;
    for (int b = 0; b <= caps[0]; ++b)
        for (int d1 = 0; d1 <= caps[1]; ++d1)
            for (int d2 = 0; d2 <= caps[2]; ++d2)
                for (int d3 = 0; d3 <= caps[3]; ++d3)
                    if (b + d1 + d2 + d3 > 0) out.push_back(qexp(b, d1, d2, d3));
    std::sort(out.begin(), out.end(), [](const QExp& a, const QExp& b) {
        if (total_degree(a) != total_degree(b)) return total_degree(a) < total_degree(b);
        return a < b;
    });
    return out;
}
}  // namespace detail

// Extraction from the connected series in the (-Q)^{m beta} convention:
//   F = sum_beta sum_g n_beta^g sum_{m>=1} (1/m)(-1)^{m+1} psi_g(p^m) (-Q)^{m beta}.
// Classes are processed in graded order; multi-cover contributions of proper
// divisors are subtracted, the class sign is stripped, and the remainder is
// fitted in the psi basis. Non-integral or unfittable remainders throw.
inline GvTable gv_invariants(const QSeries& F) {
    GvTable t;
    for (const QExp& beta : detail::graded_classes(F.caps)) {
        HalfLaurent f = F.coeff(beta);
        int cls = total_degree(beta);
        for (int m = 2;; ++m) {
            QExp bp;
            bool divisible = true;
            int mx = 0;
            for (int i = 0; i < 4; ++i) {
                if (beta[i] % m) divisible = false;
                bp[i] = beta[i] / m;
                mx = std::max(mx, bp[i]);
            }
            if (total_degree(beta) < m) break;
            if (!divisible || mx == 0) continue;
            auto it = t.entries.find(bp);
            if (it == t.entries.end()) continue;
            // window for psi_g(p^m) covering [win_lo, win_hi]
            int lom = (f.win_lo < 0) ? -((-f.win_lo + m - 1) / m) : 0;
            int him = (f.win_hi + m - 1) / m;
            for (const auto& [g, n] : it->second) {
                HalfLaurent pg = scale_exponents(psi(g, lom - 2, him + 2), m);
                Rat w = Rat(n) * Rat((m % 2) ? 1 : -1, m);
                w.canonicalize();
                if (cls % 2) w = -w;  // (-1)^{m |beta/m|} with m|beta/m| = |beta|
                f = sub(f, scale(pg, w));
            }
        }
        if (cls % 2) f = neg(f);  // strip (-1)^{|beta|}
        std::map<int, Rat> fit = psi_basis_fit(f);
        std::map<int, long> row;
        for (const auto& [g, c] : fit) {
            if (!is_integer(c))
                throw std::domain_error("gv_invariants: non-integer invariant at genus " +
                                        std::to_string(g));
            long n = static_cast<long>(to_int64(c));
            if (n != 0) row[g] = n;
        }
        if (!row.empty()) t.entries[beta] = row;
    }
    return t;
}

// Rebuild the connected series from a table (the round-trip check).
inline QSeries gv_rebuild(const GvTable& t, const QExp& caps, int lo, int hi) {
    QSeries r(caps, lo, hi);
    for (const auto& [beta, row] : t.entries) {
        int cls = total_degree(beta);
        for (int m = 1;; ++m) {
            QExp mb;
            bool fits = true;
            for (int i = 0; i < 4; ++i) {
                mb[i] = m * beta[i];
                if (mb[i] > caps[i]) fits = false;
            }
            if (!fits) break;
            int lom = (lo < 0) ? -((-lo + m - 1) / m) : 0;
            int him = (hi + m - 1) / m;
            HalfLaurent acc = HalfLaurent::zero(lo, hi);
            for (const auto& [g, n] : row) {
                HalfLaurent pg = scale_exponents(psi(g, lom - 2, him + 2), m);
                Rat w = Rat(n) * Rat((m % 2) ? 1 : -1, m);
                w.canonicalize();
                if ((m * cls) % 2) w = -w;
                acc = add(acc, scale(pg, w)).restricted(lo, hi);
            }
            auto it = r.terms.find(mb);
            if (it == r.terms.end())
                r.set(mb, acc);
            else
                r.set(mb, add(it->second, acc));
        }
    }
    return r;
}

// Connected series of the section+banana lattice from the four (i,j) blocks,
// assembled by the first-terms expansion in Q1, Q2 and flipped to the
// (-Q)^{m beta} convention. Blocks are (Q_sigma, Q3)-series.
inline QSeries connected_lattice(const QSeries& z00, const QSeries& z01, const QSeries& z10,
                                 const QSeries& z11, int capS, int cap3) {
    QExp caps = qexp(capS, 1, 1, cap3);
    QSeries Z00 = recast(z00, caps);
    QSeries Z01 = recast(z01, caps);
    QSeries Z10 = recast(z10, caps);
    QSeries Z11 = recast(z11, caps);
    QSeries inv00 = invert(Z00);
    QSeries con00 = connected_series(Z00, pure_p_part(Z00));
    QSeries con01 = mul(Z01, inv00);
    QSeries con10 = mul(Z10, inv00);
    QSeries con11 = sub(mul(Z11, inv00), mul(mul(Z10, inv00), mul(Z01, inv00)));
    QSeries F = con00;
    F = add(F, mul_monomial(con10, qexp(0, 1, 0, 0)));
    F = add(F, mul_monomial(con01, qexp(0, 0, 1, 0)));
    F = add(F, mul_monomial(con11, qexp(0, 1, 1, 0)));
    return flip_odd(F);
}

}  // namespace banana
