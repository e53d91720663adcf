#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "banana/half_laurent.hpp"

namespace banana {

using QExp = std::array<int, 4>;  // exponents of (Q_sigma, Q1, Q2, Q3)

inline QExp qexp(int b, int d1, int d2, int d3) { return {b, d1, d2, d3}; }

inline QExp operator+(const QExp& a, const QExp& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline int total_degree(const QExp& e) { return e[0] + e[1] + e[2] + e[3]; }

// Truncated power series in (Q_sigma, Q1, Q2, Q3) with HalfLaurent
// coefficients. Componentwise exponent caps; one window shared by all stored
// coefficients. Zero coefficients are pruned.
struct QSeries {
    QExp caps{0, 0, 0, 0};
    int win_lo = 0;
    int win_hi = 0;
    std::map<QExp, HalfLaurent> terms;

    QSeries() = default;
    QSeries(QExp caps_, int lo, int hi) : caps(caps_), win_lo(lo), win_hi(hi) {
        if (lo > hi) throw window_error("window exhausted");
        for (int c : caps)
            if (c < 0) throw std::invalid_argument("negative cap");
    }

    bool within_caps(const QExp& e) const {
        for (int i = 0; i < 4; ++i)
            if (e[i] < 0 || e[i] > caps[i]) return false;
        return true;
    }

    static QSeries zero(QExp caps, int lo, int hi) { return QSeries(caps, lo, hi); }

    static QSeries one(QExp caps, int lo, int hi) {
        QSeries s(caps, lo, hi);
        s.set(qexp(0, 0, 0, 0), HalfLaurent::one(lo, hi));
        return s;
    }

    // the exact ring unit: knowledge never narrows a product
    static QSeries exact_one(QExp caps) {
        QSeries s(caps, 0, HalfLaurent::INF);
        s.terms[qexp(0, 0, 0, 0)] = HalfLaurent::one(0, HalfLaurent::INF);
        return s;
    }

    static QSeries from_hl(const HalfLaurent& h, QExp caps, int lo, int hi) {
        QSeries s(caps, lo, hi);
        s.set(qexp(0, 0, 0, 0), h.restricted(lo, hi));
        return s;
    }

    void set(const QExp& e, const HalfLaurent& h) {
        if (!within_caps(e)) return;
        if (h.win_hi < win_hi)
            throw window_error("coefficient window narrower than series window");
        HalfLaurent t = h.restricted(win_lo, win_hi);
        if (t.is_zero())
            terms.erase(e);
        else
            terms[e] = t;
    }

    // coefficient of Q^e (zero series if absent); errors outside caps
    HalfLaurent coeff(const QExp& e) const {
        if (!within_caps(e))
            throw std::out_of_range("coefficient outside caps");
        auto it = terms.find(e);
        if (it != terms.end()) return it->second;
        return HalfLaurent::zero(win_lo, win_hi);
    }

    // the pure-p part: all Q set to zero
    HalfLaurent constant_term() const {
        auto it = terms.find(qexp(0, 0, 0, 0));
        if (it != terms.end()) return it->second;
        return HalfLaurent::zero(win_lo, win_hi);
    }
};

namespace detail {
inline void require_same_caps(const QSeries& a, const QSeries& b) {
    if (a.caps != b.caps) throw std::invalid_argument("cap mismatch");
}
}  // namespace detail

inline QSeries add(const QSeries& a, const QSeries& b) {
    detail::require_same_caps(a, b);
    QSeries r(a.caps, std::min(a.win_lo, b.win_lo), std::min(a.win_hi, b.win_hi));
    for (const auto& [e, h] : a.terms) {
        auto it = b.terms.find(e);
        HalfLaurent s = it == b.terms.end()
                            ? h.restricted(r.win_lo, r.win_hi)
                            : add(h, it->second).restricted(r.win_lo, r.win_hi);
        if (!s.is_zero()) r.terms[e] = s;
    }
    for (const auto& [e, h] : b.terms)
        if (!a.terms.count(e)) {
            HalfLaurent s = h.restricted(r.win_lo, r.win_hi);
            if (!s.is_zero()) r.terms[e] = s;
        }
    return r;
}

inline QSeries neg(const QSeries& a) {
    QSeries r = a;
    for (auto& [e, h] : r.terms) h = neg(h);
    return r;
}

inline QSeries sub(const QSeries& a, const QSeries& b) { return add(a, neg(b)); }

inline QSeries scale(const QSeries& a, const Rat& s) {
    QSeries r(a.caps, a.win_lo, a.win_hi);
    if (s == 0) return r;
    for (const auto& [e, h] : a.terms) r.terms[e] = scale(h, s);
    return r;
}

// Window of a product of collections: min over contributing pairs of the
// pairwise product windows, using visible orders as order bounds. A series
// with no stored terms is known-zero through its window.
namespace detail {
inline long qs_ord_lb(const QSeries& a) {
    if (a.terms.empty()) return clamp_inf(static_cast<long>(a.win_hi) + 1);
    long o = HalfLaurent::INF;
    for (const auto& [e, h] : a.terms) o = std::min(o, ord_lb(h));
    return o;
}
}  // namespace detail

inline QSeries mul_hl(const QSeries& a, const HalfLaurent& h) {
    long oa = detail::qs_ord_lb(a), oh = detail::ord_lb(h);
    long hi = std::min(static_cast<long>(a.win_hi) + oh, static_cast<long>(h.win_hi) + oa);
    long lo = std::min(oa + oh, hi);
    QSeries r(a.caps, static_cast<int>(std::max<long>(lo, -HalfLaurent::INF)),
              static_cast<int>(detail::clamp_inf(hi)));
    for (const auto& [e, c] : a.terms) {
        HalfLaurent t = mul(c, h).restricted(r.win_lo, r.win_hi);
        if (!t.is_zero()) r.terms[e] = t;
    }
    return r;
}

inline QSeries mul(const QSeries& a, const QSeries& b) {
    detail::require_same_caps(a, b);
    long oa = detail::qs_ord_lb(a), ob = detail::qs_ord_lb(b);
    long hi = std::min(static_cast<long>(a.win_hi) + ob, static_cast<long>(b.win_hi) + oa);
    long lo = std::min(oa + ob, hi);
    QSeries r(a.caps, static_cast<int>(std::max<long>(lo, -HalfLaurent::INF)),
              static_cast<int>(detail::clamp_inf(hi)));
    for (const auto& [ea, ha] : a.terms)
        for (const auto& [eb, hb] : b.terms) {
            QExp e = ea + eb;
            if (!r.within_caps(e)) continue;
            HalfLaurent prod = mul(ha, hb).restricted(r.win_lo, r.win_hi);
            if (prod.is_zero()) continue;
            auto it = r.terms.find(e);
            if (it == r.terms.end())
                r.terms[e] = prod;
            else {
                it->second = add(it->second, prod).restricted(r.win_lo, r.win_hi);
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
    return r;
}

// Multiply by sign * Q^m without cap/window bookkeeping surprises: terms
// pushed beyond the caps are discarded (they were never representable).
inline QSeries mul_monomial(const QSeries& a, const QExp& m, int sign = 1) {
    QSeries r(a.caps, a.win_lo, a.win_hi);
    for (const auto& [e, h] : a.terms) {
        QExp t = e + m;
        if (!r.within_caps(t)) continue;
        r.terms[t] = sign == 1 ? h : neg(h);
    }
    return r;
}

// 1/A. Needs an invertible constant term; the nilpotent part is summed to the
// total-degree bound given by the caps. Every power is folded into the sum,
// including window-zero ones: their unknown region still narrows the result.
inline QSeries invert(const QSeries& A) {
    HalfLaurent c0 = A.constant_term();
    if (c0.is_zero()) throw std::domain_error("invert: constant term not a unit");
    HalfLaurent c0inv = invert(c0);
    // N = c0^{-1} * (A - c0), total Q-degree >= 1
    QSeries N = mul_hl(A, c0inv);
    QSeries one_s = QSeries::one(N.caps, N.win_lo, N.win_hi);
    N = sub(N, one_s);
    int dmax = total_degree(A.caps);
    QSeries s = one_s;
    QSeries t = QSeries::exact_one(A.caps);
    QSeries nN = neg(N);
    for (int j = 1; j <= dmax; ++j) {
        t = mul(t, nN);
        s = add(s, t);
    }
    return mul_hl(s, c0inv);
}

inline QSeries pow(const QSeries& a, int e) {
    if (e < 0) return pow(invert(a), -e);
    QSeries r = QSeries::exact_one(a.caps);
    if (e == 0) return r;
    QSeries b = a;
    for (;;) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (!e) break;
        b = mul(b, b);
    }
    return r;
}

// log of a series with constant Q-term exactly 1
inline QSeries log(const QSeries& A) {
    HalfLaurent c0 = A.constant_term();
    if (!agree(c0, HalfLaurent::one(c0.win_lo, c0.win_hi)))
        throw std::domain_error("log: constant Q-term is not 1");
    QSeries N = A;
    N.terms.erase(qexp(0, 0, 0, 0));
    int dmax = total_degree(A.caps);
    QSeries s = QSeries::zero(A.caps, A.win_lo, A.win_hi);
    QSeries t = QSeries::exact_one(A.caps);
    for (int j = 1; j <= dmax; ++j) {
        t = mul(t, N);
        Rat coef((j % 2) ? 1 : -1, j);
        coef.canonicalize();
        s = add(s, scale(t, coef));
    }
    return s;
}

// exp of a series with zero constant Q-term
inline QSeries exp(const QSeries& A) {
    if (!A.constant_term().is_zero())
        throw std::domain_error("exp: constant Q-term is not 0");
    int dmax = total_degree(A.caps);
    QSeries s = QSeries::one(A.caps, A.win_lo, A.win_hi);
    QSeries t = QSeries::exact_one(A.caps);
    Rat fact(1);
    for (int j = 1; j <= dmax; ++j) {
        t = mul(t, A);
        fact *= j;
        s = add(s, scale(t, Rat(1) / fact));
    }
    return s;
}

inline QSeries truncate_total_degree(const QSeries& a, int dmax) {
    QSeries r(a.caps, a.win_lo, a.win_hi);
    for (const auto& [e, h] : a.terms)
        if (total_degree(e) <= dmax) r.terms[e] = h;
    return r;
}

inline bool agree(const QSeries& a, const QSeries& b) {
    detail::require_same_caps(a, b);
    for (const auto& [e, h] : a.terms) {
        auto hb = b.terms.find(e);
        if (hb == b.terms.end()) {
            if (!agree(h, HalfLaurent::zero(b.win_lo, b.win_hi))) return false;
        } else if (!agree(h, hb->second)) {
            return false;
        }
    }
    for (const auto& [e, h] : b.terms)
        if (!a.terms.count(e) && !agree(h, HalfLaurent::zero(a.win_lo, a.win_hi)))
            return false;
    return true;
}

// Finite Q-template in one abstract variable; coefficient k is the weight of
// Q^k. The carrier for one-variable factories before a monomial substitution.
struct TemplateSeries {
    int win_lo = 0;
    int win_hi = 0;
    std::vector<HalfLaurent> qc;  // index = Q power, 0..cap

    TemplateSeries() = default;
    TemplateSeries(int cap, int lo, int hi)
        : win_lo(lo), win_hi(hi), qc(static_cast<std::size_t>(cap) + 1, HalfLaurent::zero(lo, hi)) {}

    int cap() const { return static_cast<int>(qc.size()) - 1; }
};

inline TemplateSeries mul(const TemplateSeries& a, const TemplateSeries& b) {
    int cap = std::min(a.cap(), b.cap());
    // neutral accumulator: known-zero everywhere, never narrows an add
    std::vector<HalfLaurent> acc(static_cast<std::size_t>(cap) + 1,
                                 HalfLaurent::zero(HalfLaurent::INF, HalfLaurent::INF));
    for (int i = 0; i <= cap; ++i)
        for (int j = 0; j <= i; ++j)
            acc[i] = add(acc[i], mul(a.qc[j], b.qc[i - j]));
    long lo = HalfLaurent::INF, hi = HalfLaurent::INF;
    for (const auto& h : acc) {
        lo = std::min<long>(lo, h.win_lo);
        hi = std::min<long>(hi, h.win_hi);
    }
    TemplateSeries r(cap, static_cast<int>(std::max<long>(lo, -HalfLaurent::INF)),
                     static_cast<int>(detail::clamp_inf(hi)));
    for (int i = 0; i <= cap; ++i) r.qc[i] = acc[i].restricted(r.win_lo, r.win_hi);
    return r;
}

inline TemplateSeries pow(const TemplateSeries& a, int e) {
    if (e < 0) throw std::invalid_argument("TemplateSeries pow: e < 0");
    TemplateSeries r(a.cap(), 0, HalfLaurent::INF);
    for (auto& h : r.qc) h = HalfLaurent::zero(HalfLaurent::INF, HalfLaurent::INF);
    r.qc[0] = HalfLaurent::one(0, HalfLaurent::INF);
    if (e == 0) return r;
    TemplateSeries b = a;
    for (;;) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (!e) break;
        b = mul(b, b);
    }
    return r;
}

// Q |-> sign * Q_sigma^{m0} Q1^{m1} Q2^{m2} Q3^{m3}, truncated at caps.
inline QSeries subst_q_monomial(const TemplateSeries& tpl, const QExp& target, int sign,
                                const QExp& caps) {
    for (int i = 0; i < 4; ++i)
        if (target[i] < 0) throw std::invalid_argument("negative substitution exponent");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
    if (target == qexp(0, 0, 0, 0))
        throw std::invalid_argument("substitution target must involve a variable");
    QSeries r(caps, tpl.win_lo, tpl.win_hi);
    QExp e = qexp(0, 0, 0, 0);
    int sgn = 1;
    for (int k = 0; k <= tpl.cap(); ++k) {
        if (k > 0) {
            e = e + target;
            sgn *= sign;
        }
        if (!r.within_caps(e)) break;
        HalfLaurent h = sgn == 1 ? tpl.qc[k] : neg(tpl.qc[k]);
        h = h.restricted(r.win_lo, r.win_hi);
        if (!h.is_zero()) r.terms[e] = h;
    }
    return r;
}

}  // namespace banana
