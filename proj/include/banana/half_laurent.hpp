#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "banana/rational.hpp"

namespace banana {

struct window_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact Laurent series in q (p = q^2) with a tracked validity window.
//
// A value stands for a true series f with
//   * ord(f) >= win_lo           (no terms below the window),
//   * coefficient of q^e known exactly for every e <= win_hi.
// Exponents above win_hi are unknown; reading them throws. win_hi == INF marks
// an exact polynomial with no unknown tail. Operations narrow the window by
// the usual order-shift rules instead of trusting the caller.
struct HalfLaurent {
    static constexpr int INF = 1 << 28;

    int win_lo = 0;
    int win_hi = INF;
    int base = 0;            // exponent of c[0]
    std::vector<Rat> c;      // trimmed: empty, or c.front() != 0 && c.back() != 0

    HalfLaurent() = default;

    static HalfLaurent zero(int lo, int hi) {
        HalfLaurent f;
        f.win_lo = lo;
        f.win_hi = hi;
        check(f);
        return f;
    }
    static HalfLaurent one(int lo, int hi) { return monomial(0, Rat(1), lo, hi); }
    static HalfLaurent monomial(int e, const Rat& v, int lo, int hi) {
        HalfLaurent f = zero(lo, hi);
        if (v != 0) {
            if (e < lo) throw window_error("monomial below window");
            if (e > hi) return f;  // invisible within window
            f.base = e;
            f.c.assign(1, v);
        }
        return f;
    }

    static void check(const HalfLaurent& f) {
        if (f.win_lo > f.win_hi) throw window_error("window exhausted");
    }

    bool is_zero() const { return c.empty(); }

    bool known(int e) const { return e <= win_hi; }

    Rat coeff(int e) const {
        if (e > win_hi) throw window_error("coefficient above window: q^" + std::to_string(e));
        long i = static_cast<long>(e) - base;
        if (i < 0 || i >= static_cast<long>(c.size())) return Rat(0);
        return c[i];
    }

    // lowest exponent with a nonzero coefficient; requires a visible one
    int order() const {
        if (c.empty()) throw std::domain_error("order of (window-)zero series");
        return base;
    }

    void trim() {
        std::size_t a = 0, b = c.size();
        while (a < b && c[a] == 0) ++a;
        while (b > a && c[b - 1] == 0) --b;
        if (a > 0 || b < c.size()) {
            std::vector<Rat> t(c.begin() + a, c.begin() + b);
            base += static_cast<int>(a);
            c.swap(t);
        }
    }

    // Re-window. Lowering `lo` weakens the order claim (always sound); raising
    // it is allowed only past known-zero coefficients. `hi` can only narrow.
    HalfLaurent restricted(int lo, int hi) const {
        if (hi > win_hi) throw window_error("cannot extend knowledge by restriction");
        HalfLaurent f = zero(lo, hi);
        for (std::size_t i = 0; i < c.size(); ++i) {
            int e = base + static_cast<int>(i);
            if (e > hi) break;
            if (c[i] == 0) continue;
            if (e < lo) throw window_error("restriction would drop a visible term");
            if (f.c.empty()) f.base = e;
            f.c.resize(static_cast<std::size_t>(e - f.base) + 1);
            f.c[static_cast<std::size_t>(e - f.base)] = c[i];
        }
        f.trim();
        return f;
    }

    std::string str() const;
};

namespace detail {
inline long clamp_inf(long x) {
    return std::min<long>(x, HalfLaurent::INF);
}

// Best available lower bound on the true order: the visible base, or one past
// the knowledge horizon when every known coefficient vanishes.
inline long ord_lb(const HalfLaurent& f) {
    if (!f.c.empty()) return f.base;
    return clamp_inf(static_cast<long>(f.win_hi) + 1);
}
}  // namespace detail

inline HalfLaurent add(const HalfLaurent& a, const HalfLaurent& b) {
    HalfLaurent r;
    r.win_lo = std::min(a.win_lo, b.win_lo);
    r.win_hi = static_cast<int>(std::min<long>(a.win_hi, b.win_hi));
    HalfLaurent::check(r);
    if (a.is_zero() && b.is_zero()) return r;
    int lo = a.is_zero() ? b.base : (b.is_zero() ? a.base : std::min(a.base, b.base));
    int hi_a = a.is_zero() ? lo - 1 : a.base + static_cast<int>(a.c.size()) - 1;
    int hi_b = b.is_zero() ? lo - 1 : b.base + static_cast<int>(b.c.size()) - 1;
    int hi = std::min(std::max(hi_a, hi_b), r.win_hi);
    if (hi < lo) return r;
    r.base = lo;
    r.c.assign(static_cast<std::size_t>(hi - lo) + 1, Rat(0));
    for (int e = lo; e <= hi; ++e) {
        Rat v(0);
        if (!a.is_zero() && e >= a.base && e <= hi_a) v += a.c[static_cast<std::size_t>(e - a.base)];
        if (!b.is_zero() && e >= b.base && e <= hi_b) v += b.c[static_cast<std::size_t>(e - b.base)];
        r.c[static_cast<std::size_t>(e - lo)] = v;
    }
    r.trim();
    return r;
}

inline HalfLaurent neg(const HalfLaurent& a) {
    HalfLaurent r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

inline HalfLaurent sub(const HalfLaurent& a, const HalfLaurent& b) { return add(a, neg(b)); }

inline HalfLaurent scale(const HalfLaurent& a, const Rat& s) {
    HalfLaurent r = a;
    if (s == 0) {
        r.c.clear();
        return r;
    }
    for (auto& v : r.c) v *= s;
    return r;
}

// multiply by q^k
inline HalfLaurent shift(const HalfLaurent& a, int k) {
    HalfLaurent r = a;
    r.win_lo += k;
    r.win_hi = static_cast<int>(detail::clamp_inf(static_cast<long>(r.win_hi) + k));
    r.base += k;
    return r;
}

inline HalfLaurent mul(const HalfLaurent& a, const HalfLaurent& b) {
    long oa = detail::ord_lb(a), ob = detail::ord_lb(b);
    long hi1 = static_cast<long>(a.win_hi) + ob;
    long hi2 = static_cast<long>(b.win_hi) + oa;
    HalfLaurent r;
    r.win_hi = static_cast<int>(detail::clamp_inf(std::min(hi1, hi2)));
    // a storage-zero factor can push the order bound past the horizon; the
    // window stays honest if we cap the claim there
    r.win_lo = static_cast<int>(std::max<long>(
        -HalfLaurent::INF, std::min<long>(r.win_hi, std::min<long>(HalfLaurent::INF, oa + ob))));
    HalfLaurent::check(r);
    if (a.is_zero() || b.is_zero()) return r;
    long lo = static_cast<long>(a.base) + b.base;
    long hi = std::min<long>(lo + static_cast<long>(a.c.size()) + b.c.size() - 2, r.win_hi);
    if (hi < lo) return r;
    r.base = static_cast<int>(lo);
    r.c.assign(static_cast<std::size_t>(hi - lo) + 1, Rat(0));
    Rat tmp;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        long emax = hi - (a.base + static_cast<long>(i)) - b.base;
        std::size_t jmax = emax < 0 ? 0 : std::min<std::size_t>(b.c.size(), static_cast<std::size_t>(emax) + 1);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b.c[j] == 0) continue;
            tmp = a.c[i] * b.c[j];
            r.c[i + j] += tmp;
        }
    }
    r.trim();
    return r;
}

// 1/f for f with a visible lowest nonzero term. Needs a finite window: the
// Neumann tail is cut at the knowledge horizon.
inline HalfLaurent invert(const HalfLaurent& f) {
    if (f.is_zero()) throw std::domain_error("invert: zero series");
    if (f.win_hi >= HalfLaurent::INF)
        throw window_error("invert needs a finite window");
    int k = f.order();
    Rat lead = f.coeff(k);
    // f = lead q^k (1 + u), ord(u) >= 1, u known through win_hi - k
    int m = f.win_hi - k;  // known length of the unit part
    HalfLaurent u = shift(scale(f, Rat(1) / lead), -k);
    u = sub(u, HalfLaurent::one(u.win_lo, u.win_hi));
    // sum_{j} (-u)^j, truncated
    HalfLaurent s = HalfLaurent::one(0, m);
    HalfLaurent t = HalfLaurent::one(0, m);
    HalfLaurent nu = neg(u.restricted(std::max(u.win_lo, 0), m));
    for (int j = 1; j <= m && !nu.is_zero(); ++j) {
        t = mul(t, nu);
        if (detail::ord_lb(t) > m) break;
        t = t.restricted(t.win_lo, std::min(t.win_hi, m));
        if (t.is_zero()) break;
        s = add(s, t);
    }
    s = scale(s, Rat(1) / lead);
    return shift(s, -k);  // window [-k, win_hi - 2k]
}

inline HalfLaurent pow(const HalfLaurent& a, int e) {
    if (e < 0) return pow(invert(a), -e);
    HalfLaurent r = HalfLaurent::one(0, HalfLaurent::INF);
    HalfLaurent b = a;
    for (;;) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (!e) break;
        b = mul(b, b);
    }
    return r;
}

// q -> q^m (p -> p^m); exact, window scales
inline HalfLaurent scale_exponents(const HalfLaurent& a, int m) {
    if (m < 1) throw std::invalid_argument("scale_exponents: m < 1");
    HalfLaurent r;
    r.win_lo = a.win_lo * m;
    r.win_hi = static_cast<int>(detail::clamp_inf(static_cast<long>(a.win_hi) * m));
    if (a.is_zero()) return r;
    r.base = a.base * m;
    r.c.assign((a.c.size() - 1) * static_cast<std::size_t>(m) + 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i * m] = a.c[i];
    r.trim();
    return r;
}

// equality of the known coefficients on the overlap of the windows
inline bool agree(const HalfLaurent& a, const HalfLaurent& b) {
    int lo = std::min(a.win_lo, b.win_lo);
    int hi = std::min(a.win_hi, b.win_hi);
    if (lo > hi) throw window_error("agree: empty overlap");
    for (int e = lo; e <= hi; ++e)
        if (a.coeff(e) != b.coeff(e)) return false;
    return true;
}

// equality on a required window; throws if either side cannot guarantee it
inline bool agree_on(const HalfLaurent& a, const HalfLaurent& b, int lo, int hi) {
    if (a.win_hi < hi || b.win_hi < hi)
        throw window_error("agree_on: window not guaranteed");
    for (int e = lo; e <= hi; ++e)
        if (a.coeff(e) != b.coeff(e)) return false;
    return true;
}

inline std::string HalfLaurent::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        int e = base + static_cast<int>(i);
        if (!s.empty()) s += " + ";
        s += rat_str(c[i]);
        if (e != 0) s += "*q^" + std::to_string(e);
    }
    return s;
}

}  // namespace banana
