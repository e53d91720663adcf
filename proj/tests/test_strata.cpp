#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "banana/strata.hpp"

using namespace banana;

namespace {

std::string data_path(const char* name) {
    return std::string(BANANA_DATA_DIR) + "/" + name;
}

HalfLaurent psis(std::initializer_list<std::pair<int, long>> terms, int lo, int hi) {
    HalfLaurent h = HalfLaurent::zero(lo, hi);
    for (auto& [g, c] : terms) h = add(h, scale(psi(g, lo, hi), Rat(c)));
    return h;
}

// M(p)^2 * bracket(Q) * prod(1+p^m Q)^m
TemplateSeries m2_bracket_product(const std::vector<HalfLaurent>& bracket, int cap, int lo,
                                  int hi) {
    HalfLaurent m2 = pow(macmahon(0, hi + 8), 2).restricted(0, hi);
    TemplateSeries t(cap, lo, hi);
    for (int k = 0; k <= cap && k < static_cast<int>(bracket.size()); ++k)
        t.qc[static_cast<std::size_t>(k)] = bracket[static_cast<std::size_t>(k)].restricted(lo, hi);
    TemplateSeries r = mul(t, plus_product_template(cap, hi));
    for (auto& h : r.qc) h = mul(h, m2);
    return r;
}

bool tpl_agree(const TemplateSeries& a, const TemplateSeries& b, int upto) {
    for (int k = 0; k <= upto; ++k)
        if (!agree(a.qc[static_cast<std::size_t>(k)], b.qc[static_cast<std::size_t>(k)]))
            return false;
    return true;
}

}  // namespace

TEST_CASE("phi at a = 0") {
    int lo = -6, hi = 16;
    HalfLaurent m2 = pow(macmahon(0, hi + 8), 2).restricted(0, hi);
    CHECK(agree_on(phi(PhiKind::EE, 0, lo, hi), m2, 0, hi));

    // Phi^{-,-}(0) = V_bee^2 = M^2/(1-p)^2
    HalfLaurent onemp = sub(HalfLaurent::one(0, hi + 8), HalfLaurent::monomial(2, Rat(1), 0, hi + 8));
    HalfLaurent want_mm = mul(m2, pow(invert(onemp), 2)).restricted(lo, hi);
    CHECK(agree_on(phi(PhiKind::MM, 0, lo, hi), want_mm, 0, hi));

    // Phi^{+,e}(0) = p V_bbe V_eee = M^2 (p^2-p+1)/(1-p)^2
    HalfLaurent num = add(HalfLaurent::monomial(4, Rat(1), 0, hi + 8),
                          add(HalfLaurent::monomial(2, Rat(-1), 0, hi + 8),
                              HalfLaurent::one(0, hi + 8)));
    HalfLaurent want_pe = mul(mul(m2, num), pow(invert(onemp), 2)).restricted(lo, hi);
    CHECK(agree_on(phi(PhiKind::PE, 0, lo, hi), want_pe, 0, hi));
}

TEST_CASE("phi generating functions match their closed forms") {
    int lo = -8, hi = 14, cap = 4;
    HalfLaurent one = HalfLaurent::one(lo, hi);
    HalfLaurent zero = HalfLaurent::zero(lo, hi);
    HalfLaurent inv1mp =
        invert(sub(HalfLaurent::one(0, hi + 4), HalfLaurent::monomial(2, Rat(1), 0, hi + 4)))
            .restricted(lo, hi);

    // EE
    CHECK(tpl_agree(phi_gf(PhiKind::EE, cap, lo, hi), m2_bracket_product({one}, cap, lo, hi), cap));
    // ME: (1+Q)/(1-p)
    CHECK(tpl_agree(phi_gf(PhiKind::ME, cap, lo, hi),
                    m2_bracket_product({inv1mp, inv1mp}, cap, lo, hi), cap));
    // MM carries 1/p relative to the psi bracket
    {
        TemplateSeries lhs = phi_gf(PhiKind::MM, cap, lo, hi);
        for (auto& h : lhs.qc) h = shift(h, 2).restricted(lo, hi);
        CHECK(tpl_agree(lhs,
                        m2_bracket_product({psis({{0, 1}}, lo, hi), psis({{1, 1}, {0, 2}}, lo, hi),
                                            psis({{0, 1}}, lo, hi)},
                                           cap, lo, hi),
                        cap));
    }
    // MBar carries 1/p as well
    {
        TemplateSeries lhs = phi_gf(PhiKind::MBar, cap, lo, hi);
        for (auto& h : lhs.qc) h = shift(h, 2).restricted(lo, hi);
        CHECK(tpl_agree(lhs,
                        m2_bracket_product({psis({{0, 1}}, lo, hi), psis({{0, 2}, {1, 1}}, lo, hi),
                                            psis({{0, 1}, {1, 1}}, lo, hi)},
                                           cap, lo, hi),
                        cap));
    }
    // PE
    CHECK(tpl_agree(phi_gf(PhiKind::PE, cap, lo, hi),
                    m2_bracket_product({psis({{0, 1}, {1, 1}}, lo, hi),
                                        psis({{0, 2}, {1, 1}}, lo, hi), psis({{0, 1}}, lo, hi)},
                                       cap, lo, hi),
                    cap));
    // PP: the reference bracket misses the square of the MM bracket; the
    // corrected identity holds and the reference one does not.
    {
        TemplateSeries lhs = phi_gf(PhiKind::PP, cap, lo, hi);
        std::vector<HalfLaurent> quoted = {
            psis({{0, 2}, {1, 1}}, lo, hi), psis({{0, 8}, {1, 6}, {2, 1}}, lo, hi),
            psis({{0, 12}, {1, 10}, {2, 2}}, lo, hi), psis({{0, 8}, {1, 6}, {2, 1}}, lo, hi),
            psis({{0, 2}, {1, 1}}, lo, hi)};
        std::vector<HalfLaurent> corrected = {
            add(quoted[0], psis({{-1, 1}}, lo, hi)),
            add(quoted[1], psis({{-1, 4}, {0, 2}}, lo, hi)),
            add(quoted[2], psis({{-1, 6}, {0, 4}, {1, 1}}, lo, hi)),
            add(quoted[3], psis({{-1, 4}, {0, 2}}, lo, hi)),
            add(quoted[4], psis({{-1, 1}}, lo, hi))};
        CHECK_FALSE(tpl_agree(lhs, m2_bracket_product(quoted, cap, lo, hi), cap));
        CHECK(tpl_agree(lhs, m2_bracket_product(corrected, cap, lo, hi), cap));
    }
}

TEST_CASE("g weights") {
    int lo = -8, hi = 12;
    // g_{Sm empty}(d) = p(d)
    CHECK(g_weight(GKind::SmEmpty, 5, 0, lo, hi).coeff(0) == 7);
    CHECK(g_weight(GKind::SmEmpty, 0, 0, lo, hi).coeff(0) == 1);
    // ratios collapse at zero size
    CHECK(agree_on(g_weight(GKind::Banana, 0, 0, lo, hi), HalfLaurent::one(lo, hi), 0, hi));
    CHECK(agree_on(g_weight(GKind::SmSigma, 0, 0, lo, hi), HalfLaurent::one(lo, hi), 0, hi));
    CHECK(agree_on(g_weight(GKind::NSigma, 0, 0, lo, hi), HalfLaurent::one(lo, hi), 0, hi));
    CHECK(agree_on(g_weight(GKind::NEmpty, 0, 0, lo, hi), HalfLaurent::one(lo, hi), 0, hi));
}

TEST_CASE("strata tables load and validate") {
    auto recs00 = load_strata(data_path("strata_00.dat"));
    REQUIRE(recs00.size() == 1);
    validate_strata(recs00, {{"base", 1}});

    auto recs01 = load_strata(data_path("strata_01.dat"));
    REQUIRE(recs01.size() == 5);
    validate_strata(recs01, {{"fib", 0}, {"c2", 1}});

    auto recs11 = load_strata(data_path("strata_11.dat"));
    validate_strata(recs11, {{"a1", 2},
                             {"a2", 2},
                             {"a3", -4},
                             {"a4", -4},
                             {"a5", 4},
                             {"bc", 0},
                             {"d", 1},
                             {"e", 1},
                             {"g", 0},
                             {"h", 0},
                             {"i1728", 0},
                             {"i0a", 0},
                             {"i0b", 0},
                             {"j1", 0},
                             {"j2", 0},
                             {"j3", 0},
                             {"j4", 0}});
    // the five part-a groupings decompose S1deg x S2deg with e = 0
    int a_total = 0;
    for (const auto& r : recs11)
        if (r.label.rfind("a", 0) == 0 && r.label[1] >= '1' && r.label[1] <= '5') a_total += r.euler;
    CHECK(a_total == 0);
}

TEST_CASE("malformed strata records are rejected") {
    std::stringstream bad1("x | 1 | 2 | 0 | 0,0,0,0 | 0 | Veee^-2 | EE | EE:11\n");
    CHECK_THROWS(parse_strata(bad1));
    std::stringstream bad2("x | 1 | 2 | 0 | 0,0,0,0 | 0 | Vxyz | EE | EE:12\n");
    CHECK_THROWS(parse_strata(bad2));
    std::stringstream bad3("x | 1 | 2 | 0 | 0,0 | 0 | Veee^-2 | EE | EE:12\n");
    CHECK_THROWS(parse_strata(bad3));
}

TEST_CASE("theorem B stratified equals closed, small caps") {
    auto recs00 = load_strata(data_path("strata_00.dat"));
    CHECK(agree(theoremB_stratified(recs00, 0, 0, 1, 2, -6, 10),
                theoremB_closed(0, 0, 1, 2, -6, 10)));
    auto recs01 = load_strata(data_path("strata_01.dat"));
    CHECK(agree(theoremB_stratified(recs01, 0, 1, 1, 2, -6, 10),
                theoremB_closed(0, 1, 1, 2, -6, 10)));
    auto recs11 = load_strata(data_path("strata_11.dat"));
    CHECK(agree(theoremB_stratified(recs11, 1, 1, 1, 2, -6, 10),
                theoremB_closed(1, 1, 1, 2, -6, 10)));
}

TEST_CASE("records of the wrong class are refused") {
    auto recs01 = load_strata(data_path("strata_01.dat"));
    CHECK_THROWS(theoremB_stratified(recs01, 1, 1, 1, 2, -6, 10));
}

TEST_CASE("theorem A stratified equals closed, small caps") {
    QSeries s = theoremA_stratified(1, 1, -6, 10);
    QSeries c = theoremA_closed(1, 1, -6, 10);
    CHECK(agree(s, c));
}

TEST_CASE("section product factor pairs Q2 with Q3") {
    QSeries f = section_product_factor(1, 0, -4, 10);
    // with no Q3 budget every paired factor is trivial: p/(1-p)^2 alone
    REQUIRE(f.terms.size() == 1);
    CHECK(agree_on(f.coeff(qexp(0, 0, 0, 0)), psi(0, -4, 10), -4, 10));
    QSeries g = section_product_factor(2, 2, -4, 10);
    for (const auto& [e, h] : g.terms) CHECK(e[2] == e[3]);
}

TEST_CASE("final partition functions are p-integral") {
    auto even_only = [](const QSeries& s) {
        for (const auto& [e, h] : s.terms)
            for (std::size_t i = 0; i < h.c.size(); ++i)
                if (h.c[i] != 0 && (h.base + static_cast<int>(i)) % 2 != 0) return false;
        return true;
    };
    CHECK(even_only(theoremA_closed(1, 1, -4, 10)));
    CHECK(even_only(theoremB_closed(1, 1, 1, 2, -6, 10)));
    CHECK(even_only(z_fibre_closed(1, 1, -4, 10)));
}

TEST_CASE("theorem B (0,0) closed form sanity") {
    QSeries b = theoremB_closed(0, 0, 1, 1, 0, 12);
    HalfLaurent m24 = pow(macmahon(0, 20), 24).restricted(0, 12);
    CHECK(agree_on(b.coeff(qexp(0, 0, 0, 0)), m24, 0, 12));
    // Qs coefficient: M^24 * p/(1-p^2)-type weight = M^24 sum_m m p^m q-doubled
    HalfLaurent w = b.coeff(qexp(1, 0, 0, 0));
    HalfLaurent want = mul(m24, psi(0, 0, 16)).restricted(0, 12);
    CHECK(agree_on(w, want, 0, 12));
}
