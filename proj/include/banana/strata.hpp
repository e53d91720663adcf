#pragma once

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "banana/closed_forms.hpp"
#include "banana/qseries.hpp"
#include "banana/vertex.hpp"

namespace banana {

// The six twisted sub-partition sums attached to a thickened curve by the
// intersection pattern of the transverse reduced branches at its two marked
// points. a runs over the thickening size.
enum class PhiKind { EE, ME, MM, MBar, PE, PP };

inline const char* phi_name(PhiKind k) {
    switch (k) {
        case PhiKind::EE: return "EE";
        case PhiKind::ME: return "ME";
        case PhiKind::MM: return "MM";
        case PhiKind::MBar: return "MBar";
        case PhiKind::PE: return "PE";
        case PhiKind::PP: return "PP";
    }
    return "?";
}

inline PhiKind phi_kind_parse(const std::string& s) {
    if (s == "EE") return PhiKind::EE;
    if (s == "ME") return PhiKind::ME;
    if (s == "MM") return PhiKind::MM;
    if (s == "MBar") return PhiKind::MBar;
    if (s == "PE") return PhiKind::PE;
    if (s == "PP") return PhiKind::PP;
    throw std::invalid_argument("unknown phi kind: " + s);
}

inline HalfLaurent phi(PhiKind kind, int a, int lo, int hi) {
    Partition box{1};
    Partition none;
    HalfLaurent acc = HalfLaurent::zero(HalfLaurent::INF, HalfLaurent::INF);
    for (const auto& al : partitions_of(a)) {
        Partition alt = conjugate(al);
        int s = static_cast<int>((al.norm_sq() + alt.norm_sq()));  // q-shift for p^{s/2}
        int extra = 0;
        HalfLaurent x, y;
        int vlo = lo - s - 8, vhi = hi + 4 * a + 8;
        switch (kind) {
            case PhiKind::EE:
                x = vertex_closed({none, none, al}, vlo, vhi);
                y = vertex_closed({none, none, alt}, vlo, vhi);
                break;
            case PhiKind::ME:
                x = vertex_closed({box, none, al}, vlo, vhi);
                y = vertex_closed({none, none, alt}, vlo, vhi);
                break;
            case PhiKind::MM:
                x = vertex_closed({box, none, al}, vlo, vhi);
                y = vertex_closed({box, none, alt}, vlo, vhi);
                break;
            case PhiKind::MBar:
                x = vertex_closed({none, box, al}, vlo, vhi);
                y = x;
                break;
            case PhiKind::PE:
                x = vertex_closed({box, box, al}, vlo, vhi);
                y = vertex_closed({none, none, alt}, vlo, vhi);
                extra = 2;
                break;
            case PhiKind::PP:
                x = vertex_closed({box, box, al}, vlo, vhi);
                y = vertex_closed({box, box, alt}, vlo, vhi);
                extra = 4;
                break;
        }
        acc = add(acc, shift(mul(x, y), s + extra));
    }
    if (acc.win_hi < hi) throw window_error("phi: padding insufficient");
    return acc.restricted(std::min(lo, acc.win_lo), hi);
}

inline TemplateSeries phi_gf(PhiKind kind, int cap, int lo, int hi) {
    TemplateSeries t(cap, lo, hi);
    for (int a = 0; a <= cap; ++a) t.qc[static_cast<std::size_t>(a)] = phi(kind, a, lo, hi);
    int wl = lo, wh = hi;
    for (const auto& h : t.qc) {
        wl = std::min(wl, h.win_lo);
        wh = std::min(wh, h.win_hi);
    }
    t.win_lo = wl;
    t.win_hi = wh;
    return t;
}

// Weight functions of the section-class stratified sum.
enum class GKind { SmSigma, NSigma, SmEmpty, NEmpty, Banana };

inline HalfLaurent g_weight(GKind kind, int a, int b, int lo, int hi) {
    Partition box{1};
    Partition none;
    int pad = 8 * (a + b + 1) + 8;
    int whi = hi + pad, wlo = lo - pad;
    HalfLaurent veee = vertex_closed({none, none, none}, 0, whi);
    HalfLaurent vbee = vertex_closed({box, none, none}, 0, whi);
    HalfLaurent acc = HalfLaurent::zero(HalfLaurent::INF, HalfLaurent::INF);
    switch (kind) {
        case GKind::SmSigma:
            for (const auto& al : partitions_of(a))
                acc = add(acc, mul(vertex_closed({al, box, none}, wlo, whi),
                                   invert(vertex_closed({al, none, none}, 0, whi))));
            acc = mul(acc, mul(veee, invert(vbee)));
            break;
        case GKind::NSigma:
            for (const auto& ga : partitions_of(a)) {
                HalfLaurent t = mul(vertex_closed({ga, box, none}, wlo, whi),
                                    vertex_closed({ga, conjugate(ga), none}, wlo, whi));
                t = mul(t, invert(mul(veee, vertex_closed({ga, none, none}, 0, whi))));
                acc = add(acc, shift(t, 2 * static_cast<int>(ga.norm_sq())));
            }
            acc = mul(acc, mul(veee, invert(vbee)));
            break;
        case GKind::SmEmpty:
            acc = HalfLaurent::monomial(0, Rat(static_cast<long>(partitions_of(a).size())), lo, hi);
            break;
        case GKind::NEmpty:
            for (const auto& la : partitions_of(a)) {
                HalfLaurent t = mul(vertex_closed({la, conjugate(la), none}, wlo, whi), invert(veee));
                acc = add(acc, shift(t, 2 * static_cast<int>(la.norm_sq())));
            }
            break;
        case GKind::Banana:
            for (const auto& mu : partitions_of(a))
                for (const auto& nu : partitions_of(b)) {
                    Partition mut = conjugate(mu), nut = conjugate(nu);
                    int s = static_cast<int>(mu.norm_sq() + mut.norm_sq() + nu.norm_sq() +
                                             nut.norm_sq());
                    HalfLaurent t = mul(vertex_closed({mu, nu, none}, wlo, whi),
                                        vertex_closed({mut, nut, none}, wlo, whi));
                    t = mul(t, invert(mul(veee, veee)));
                    acc = add(acc, shift(t, s));
                }
            break;
    }
    if (acc.win_hi < hi) throw window_error("g_weight: padding insufficient");
    return acc.restricted(std::min(lo, acc.win_lo), hi);
}

// ....................................................................
// Theorem A, both routes. Variables (Q2, Q3); the section factor Q_sigma is
// implicit.

inline QSeries theoremA_stratified(int cap2, int cap3, int lo, int hi) {
    QExp caps = qexp(0, 0, cap2, cap3);
    int amin = std::min(cap2, cap3);
    int pad = 8 * (cap2 + cap3 + 2) + 2 * std::max(0, -lo) + 16;
    int whi = hi + pad, wlo = lo - pad;

    auto diag_series = [&](GKind kind) {
        QSeries s = QSeries::zero(caps, wlo, whi);
        for (int a = 0; a <= amin; ++a) {
            HalfLaurent g = g_weight(kind, a, 0, wlo, whi);
            QSeries t(caps, std::min(wlo, g.win_lo), std::min(whi, g.win_hi));
            t.set(qexp(0, 0, a, a), g.restricted(t.win_lo, t.win_hi));
            s = add(s, t);
        }
        return s;
    };

    QSeries gsm_s = diag_series(GKind::SmSigma);
    QSeries gn_s = diag_series(GKind::NSigma);
    QSeries gsm_e = diag_series(GKind::SmEmpty);
    QSeries gn_e = diag_series(GKind::NEmpty);

    QSeries gb = QSeries::zero(caps, wlo, whi);
    for (int m = 0; m <= cap2; ++m)
        for (int n = 0; n <= cap3; ++n) {
            HalfLaurent g = g_weight(GKind::Banana, m, n, wlo, whi);
            QSeries t(caps, std::min(wlo, g.win_lo), std::min(whi, g.win_hi));
            t.set(qexp(0, 0, m, n), g.restricted(t.win_lo, t.win_hi));
            gb = add(gb, t);
        }

    HalfLaurent veee = vertex_closed({{}, {}, {}}, 0, whi);
    HalfLaurent vbee = vertex_closed({{1}, {}, {}}, 0, whi);
    HalfLaurent pref = shift(mul(pow(veee, 22), mul(vbee, vbee)), 2);  // p V^24 (Vbee/V)^2

    QSeries r = mul_hl(pow(gsm_s, -10), pref);
    r = mul(r, pow(gn_s, 12));
    r = mul(r, pow(gsm_e, 10));
    r = mul(r, pow(gn_e, -12));
    r = mul(r, pow(gb, 12));
    if (r.win_hi < hi) throw window_error("theoremA_stratified: padding insufficient");
    QSeries out(caps, lo, hi);
    for (const auto& [e, h] : r.terms) out.set(e, h.restricted(lo, hi));
    return out;
}

// p/(1-p)^2 prod_{m>0} 1/((1-(Q2Q3)^m)^8 (1-p(Q2Q3)^m)^2 (1-p^{-1}(Q2Q3)^m)^2);
// the section-class factor of the closed statement and of the connected
// corollary (which is its negative).
inline QSeries section_product_factor(int cap2, int cap3, int lo, int hi) {
    QExp caps = qexp(0, 0, cap2, cap3);
    int pad = 4 * (cap2 + cap3 + 2) + 16;
    int whi = hi + pad;
    HalfLaurent denom = mul(sub(HalfLaurent::one(0, whi), HalfLaurent::monomial(2, Rat(1), 0, whi)),
                            sub(HalfLaurent::one(0, whi), HalfLaurent::monomial(2, Rat(1), 0, whi)));
    QSeries r = QSeries::from_hl(shift(invert(denom), 2), caps, std::min(lo, 2), whi - 2);
    for (int d = 1; d <= std::min(cap2, cap3); ++d) {
        QSeries f1 = QSeries::one(caps, 0, whi);
        f1.set(qexp(0, 0, d, d), HalfLaurent::monomial(0, Rat(-1), 0, whi));
        QSeries f2 = QSeries::one(caps, 0, whi);
        f2.set(qexp(0, 0, d, d), HalfLaurent::monomial(2, Rat(-1), 0, whi));
        QSeries f3 = QSeries::one(caps, -2, whi);
        f3.set(qexp(0, 0, d, d), HalfLaurent::monomial(-2, Rat(-1), -2, whi));
        r = mul(r, pow(f1, -8));
        r = mul(r, pow(f2, -2));
        r = mul(r, pow(f3, -2));
    }
    if (r.win_hi < hi) throw window_error("section_product_factor: padding insufficient");
    QSeries out(caps, lo, hi);
    for (const auto& [e, h] : r.terms) out.set(e, h.restricted(lo, hi));
    return out;
}

inline QSeries theoremA_closed(int cap2, int cap3, int lo, int hi) {
    int pad = 4 * (cap2 + cap3 + 2) + 16;
    int whi = hi + pad;
    QSeries r = z_fibre_closed(cap2, cap3, std::min(lo, 0) - 4, whi);
    r = mul(r, section_product_factor(cap2, cap3, std::min(lo, 0), whi - 8));
    if (r.win_hi < hi) throw window_error("theoremA_closed: padding insufficient");
    QSeries out(qexp(0, 0, cap2, cap3), lo, hi);
    for (const auto& [e, h] : r.terms) out.set(e, h.restricted(lo, hi));
    return out;
}

// ....................................................................
// Theorem B strata tables (checked-in data) and their evaluation.

struct StratumRecord {
    std::string label;       // part/grouping tag + geometric stratum name
    int mult = 1;            // copies of the stratum (disjoint-union count)
    int euler = 0;           // e(U) of one copy
    int chi = 0;             // chi(O_D) of the stratum (audit field; folded in pexp)
    QExp prefactor{0, 0, 0, 0};  // Q-monomial of the stratum
    int pexp = 0;            // total power of p carried by the row ratio
    std::array<int, 4> vexp{0, 0, 0, 0};  // exponents of V_eee, V_bee, V_bbe, V_bbb
    PhiKind sigma_slot = PhiKind::EE;
    std::vector<std::pair<PhiKind, int>> banana_slots;  // multiplicities sum to 12

    int banana_total() const {
        int s = 0;
        for (auto& [k, m] : banana_slots) s += m;
        return s;
    }
};

inline std::vector<StratumRecord> parse_strata(std::istream& in) {
    std::vector<StratumRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char ch : line)
            if (!isspace(static_cast<unsigned char>(ch))) blank = false;
        if (blank) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, '|')) {
            auto b = f.find_first_not_of(" \t");
            auto e = f.find_last_not_of(" \t");
            fields.push_back(b == std::string::npos ? "" : f.substr(b, e - b + 1));
        }
        if (fields.size() != 9)
            throw std::runtime_error("strata record needs 9 fields: " + line);
        StratumRecord r;
        r.label = fields[0];
        r.mult = std::stoi(fields[1]);
        r.euler = std::stoi(fields[2]);
        r.chi = std::stoi(fields[3]);
        {
            std::stringstream ps(fields[4]);
            std::string tok;
            int i = 0;
            while (std::getline(ps, tok, ',') && i < 4) r.prefactor[i++] = std::stoi(tok);
            if (i != 4) throw std::runtime_error("bad prefactor in: " + line);
        }
        r.pexp = std::stoi(fields[5]);
        {
            std::stringstream vs(fields[6]);
            std::string tok;
            while (vs >> tok) {
                auto caret = tok.find('^');
                std::string name = caret == std::string::npos ? tok : tok.substr(0, caret);
                int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
                if (name == "Veee")
                    r.vexp[0] += e;
                else if (name == "Vbee")
                    r.vexp[1] += e;
                else if (name == "Vbbe")
                    r.vexp[2] += e;
                else if (name == "Vbbb")
                    r.vexp[3] += e;
                else if (name == "1")
                    ;
                else
                    throw std::runtime_error("unknown vertex constant " + name + " in: " + line);
            }
        }
        r.sigma_slot = phi_kind_parse(fields[7]);
        {
            std::stringstream bs(fields[8]);
            std::string tok;
            while (std::getline(bs, tok, ',')) {
                auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("bad banana slot in: " + line);
                auto b = tok.find_first_not_of(" \t");
                r.banana_slots.emplace_back(
                    phi_kind_parse(tok.substr(b, colon - b)),
                    std::stoi(tok.substr(colon + 1)));
            }
        }
        if (r.banana_total() != 12)
            throw std::runtime_error("banana slot multiplicities must sum to 12: " + line);
        out.push_back(std::move(r));
    }
    if (out.empty()) throw std::runtime_error("empty strata table");
    return out;
}

inline std::vector<StratumRecord> load_strata(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open strata file: " + path);
    return parse_strata(in);
}

// Euler-characteristic bookkeeping: per part (label prefix before '.'), the
// record euler values must sum to the Euler characteristic of the decomposed
// space recorded here.
inline void validate_strata(const std::vector<StratumRecord>& recs,
                            const std::map<std::string, int>& part_totals) {
    std::map<std::string, int> sums;
    for (const auto& r : recs) {
        auto dot = r.label.find('.');
        std::string part = dot == std::string::npos ? r.label : r.label.substr(0, dot);
        sums[part] += r.euler;
    }
    for (const auto& [part, want] : part_totals) {
        auto it = sums.find(part);
        int got = it == sums.end() ? 0 : it->second;
        if (got != want)
            throw std::runtime_error("euler total mismatch for part " + part + ": got " +
                                     std::to_string(got) + ", want " + std::to_string(want));
    }
}

// Evaluate a strata table. ij fixes the (Q1, Q2) class; every record must
// carry exactly that prefactor in those variables. Result lives in (Q_sigma,
// Q3) with the Q1^i Q2^j monomial stripped.
inline QSeries theoremB_stratified(const std::vector<StratumRecord>& recs, int i, int j, int capS,
                                   int cap3, int lo, int hi) {
    QExp caps = qexp(capS, 0, 0, cap3);
    int pad = 4 * (capS + cap3 + 4) + 2 * std::max(0, -lo) + 16;
    int whi = hi + pad, wlo = lo - pad;

    // vertex constants
    HalfLaurent vc[4];
    vc[0] = vertex_closed({{}, {}, {}}, 0, whi);
    vc[1] = vertex_closed({{1}, {}, {}}, 0, whi);
    vc[2] = vertex_closed({{1}, {1}, {}}, -2, whi);
    vc[3] = vertex_closed({{1}, {1}, {1}}, -4, whi);

    // sigma-slot generating functions in Q_sigma, banana in Q3
    std::map<PhiKind, QSeries> sgf, bgf;
    auto need = [&](PhiKind k, bool sigma) {
        auto& m = sigma ? sgf : bgf;
        if (m.count(k)) return;
        TemplateSeries t = phi_gf(k, sigma ? capS : cap3, wlo, whi);
        m.emplace(k, subst_q_monomial(t, sigma ? qexp(1, 0, 0, 0) : qexp(0, 0, 0, 1), +1, caps));
    };
    for (const auto& r : recs) {
        need(r.sigma_slot, true);
        for (auto& [k, m] : r.banana_slots) need(k, false);
    }

    // powers of the ubiquitous EE banana factor
    need(PhiKind::EE, false);
    std::map<int, QSeries> eepow;
    for (const auto& r : recs) {
        for (auto& [k, m] : r.banana_slots)
            if (k == PhiKind::EE && !eepow.count(m)) eepow.emplace(m, pow(bgf.at(PhiKind::EE), m));
    }

    QSeries total = QSeries::zero(caps, lo, hi);
    for (const auto& r : recs) {
        if (r.prefactor[1] != i || r.prefactor[2] != j)
            throw std::runtime_error("record " + r.label + " does not belong to class (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
        HalfLaurent w = HalfLaurent::monomial(2 * r.pexp, Rat(r.mult) * Rat(r.euler),
                                              std::min(0, 2 * r.pexp), HalfLaurent::INF);
        for (int v = 0; v < 4; ++v)
            if (r.vexp[v]) w = mul(w, pow(vc[v].restricted(vc[v].win_lo, whi), r.vexp[v]));
        QSeries term = mul_hl(sgf.at(r.sigma_slot), w);
        for (auto& [k, m] : r.banana_slots) {
            if (k == PhiKind::EE)
                term = mul(term, eepow.at(m));
            else
                term = mul(term, pow(bgf.at(k), m));
        }
        term = mul_monomial(term, qexp(r.prefactor[0], 0, 0, r.prefactor[3]));
        if (term.win_hi < hi)
            throw window_error("theoremB_stratified: padding insufficient at " + r.label);
        QSeries narrowed(caps, lo, hi);
        for (const auto& [e, h] : term.terms) narrowed.set(e, h.restricted(lo, hi));
        total = add(total, narrowed);
    }
    return total;
}

// Closed forms of the three classes: the common product
//   M(p)^24 prod (1+p^m Qs)^m (1+p^m Q3)^{12m}
// times the psi-polynomial bracket of the statement.
inline QSeries theoremB_base(int capS, int cap3, int lo, int hi) {
    QExp caps = qexp(capS, 0, 0, cap3);
    int whi = hi + 8;
    QSeries r = QSeries::from_hl(pow(macmahon(0, whi), 24).restricted(0, whi), caps,
                                 std::min(lo, 0), whi);
    r = mul(r, subst_q_monomial(plus_product_template(capS, whi), qexp(1, 0, 0, 0), +1, caps));
    r = mul(r, pow(subst_q_monomial(plus_product_template(cap3, whi), qexp(0, 0, 0, 1), +1, caps),
                   12));
    QSeries out(caps, lo, hi);
    for (const auto& [e, h] : r.terms) out.set(e, h.restricted(lo, hi));
    return out;
}

// psi-polynomial brackets of the closed statements; entries are
// (qs-exponent, q3-exponent, {(g, coefficient)}).
struct BracketTerm {
    int es, e3;
    std::vector<std::pair<int, long>> psis;
    long constant = 0;
};

inline QSeries bracket_series(const std::vector<BracketTerm>& terms, int capS, int cap3, int lo,
                              int hi) {
    QExp caps = qexp(capS, 0, 0, cap3);
    QSeries r = QSeries::zero(caps, lo, hi);
    for (const auto& t : terms) {
        HalfLaurent h = HalfLaurent::zero(lo, hi);
        for (auto& [g, c] : t.psis) h = add(h, scale(psi(g, lo, hi), Rat(c)));
        if (t.constant)
            h = add(h, HalfLaurent::monomial(0, Rat(t.constant), lo, hi));
        QSeries term(caps, lo, hi);
        term.set(qexp(t.es, 0, 0, t.e3), h.restricted(lo, hi));
        r = add(r, term);
    }
    return r;
}

inline QSeries theoremB_closed(int i, int j, int capS, int cap3, int lo, int hi) {
    QSeries base = theoremB_base(capS, cap3, lo, hi);
    if (i == 0 && j == 0) return base;
    if ((i == 0 && j == 1) || (i == 1 && j == 0)) {
        std::vector<BracketTerm> br = {
            {0, 0, {{0, 12}}, 0},
            {0, 1, {{0, 24}, {1, 12}}, 0},
            {0, 2, {{0, 12}}, 0},
            {1, 1, {{0, 12}, {1, 2}}, 0},
        };
        return mul(base, bracket_series(br, capS, cap3, lo, hi));
    }
    if (i == 1 && j == 1) {
        std::vector<BracketTerm> br = {
            {0, 0, {{-1, 144}, {0, 24}, {1, 12}}, 0},
            {0, 1, {{-1, 576}, {0, 384}, {1, 72}, {2, 12}}, 0},
            {0, 2, {{-1, 864}, {0, 720}, {1, 264}, {2, 24}}, 0},
            {0, 3, {{-1, 576}, {0, 384}, {1, 72}, {2, 12}}, 0},
            {0, 4, {{-1, 144}, {0, 24}, {1, 12}}, 0},
            {1, 0, {{0, 12}, {1, 2}}, 0},
            {1, 1, {{-1, 288}, {0, 96}, {1, 44}}, 0},
            {1, 2, {{-1, 576}, {0, 600}, {1, 156}, {2, 24}}, 0},
            {1, 3, {{-1, 288}, {0, 96}, {1, 44}}, 0},
            {1, 4, {{0, 12}, {1, 2}}, 0},
            {2, 2, {{-1, 144}, {0, 48}}, 4},
        };
        return mul(base, bracket_series(br, capS, cap3, lo, hi));
    }
    throw std::invalid_argument("theoremB_closed: ij must be (0,0), (0,1), (1,0) or (1,1)");
}

}  // namespace banana
