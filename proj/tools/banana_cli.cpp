// Command-line front end: vertex evaluation, identity checks, the two theorem
// assemblies, GV extraction and the theta coefficient table. All arithmetic is
// exact; rationals render as "num/den". Same argv, same bytes out.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "banana/gv.hpp"
#include "banana/series_json.hpp"
#include "banana/strata.hpp"

using namespace banana;

namespace {

struct Options {
    int wlo = -8, whi = 16;
    std::vector<int> caps = {2, 1, 2, 4};
    bool json = false;
    bool oracle = false;
    std::string strata_dir = BANANA_DATA_DIR;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--window",
                    [&o](const std::vector<std::string>& v) {
                        if (v.size() != 2) return false;
                        o.wlo = std::stoi(v[0]);
                        o.whi = std::stoi(v[1]);
                        return true;
                    },
                    "q-exponent window: lo hi")
        ->expected(2);
    cmd->add_option("--caps", o.caps, "degree caps (b,d3 or b,d1,d2,d3)")->delimiter(',');
    cmd->add_flag("--json", o.json, "machine-readable output");
}

Partition partition_arg(const Json& j) {
    std::vector<int> parts;
    for (const auto& x : j) parts.push_back(x.get<int>());
    return Partition(parts);
}

int fail_json(const std::string& msg) {
    Json e;
    e["error"] = msg;
    std::cout << e.dump() << "\n";
    return 1;
}

HalfLaurent ppoly(std::initializer_list<std::pair<int, long>> terms) {
    int lo = 0;
    for (auto& [e, c] : terms) lo = std::min(lo, 2 * e);
    HalfLaurent f = HalfLaurent::zero(lo, HalfLaurent::INF);
    for (auto& [e, c] : terms)
        f = add(f, HalfLaurent::monomial(2 * e, Rat(c), lo, HalfLaurent::INF));
    return f;
}

int cmd_vertex(const std::string& legs_arg, const Options& o, int max_extra) {
    Json legs = Json::parse(legs_arg);
    if (!legs.is_array() || legs.size() != 3) return fail_json("--legs must be three arrays");
    VertexKey key{partition_arg(legs[0]), partition_arg(legs[1]), partition_arg(legs[2])};
    long vol = min_renorm_volume(key);
    HalfLaurent v = vertex_closed(key, o.wlo, o.whi);
    if (o.oracle) {
        int budget = max_extra >= 0 ? max_extra : std::min(14, std::max(0, o.whi) / 2);
        HalfLaurent vb = shift(vertex_brute(key, budget), 2 * static_cast<int>(vol));
        int lo = std::max(v.win_lo, vb.win_lo);
        int hi = std::min(v.win_hi, vb.win_hi);
        if (lo > hi || !agree_on(v, vb, lo, hi))
            return fail_json("oracle mismatch: closed form disagrees with box enumeration");
    }
    if (o.json) {
        Json out;
        out["legs"] = legs;
        out["min_renorm_volume"] = vol;
        out["series"] = to_json(v);
        if (o.oracle) out["oracle"] = "verified";
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "V" << key.l.str() << key.m.str() << key.n.str() << ":\n";
        std::cout << "  min renormalised volume " << vol << "\n";
        std::cout << "  " << v.str() << "   (window [" << v.win_lo << ", " << v.win_hi << "])\n";
        if (o.oracle) std::cout << "  oracle: verified against box enumeration\n";
    }
    return 0;
}

int cmd_identity(const std::string& name, const std::string& lambda_arg) {
    auto verdict = [&](bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS" : "FAIL");
        if (!detail.empty()) std::cout << " " << detail;
        std::cout << "\n";
        return ok ? 0 : 1;
    };
    if (name == "vertex-squares") {
        int hi = 24;
        HalfLaurent m = macmahon(0, hi + 10);
        auto ratio = [&](const HalfLaurent& n, const HalfLaurent& d, int lo) {
            return mul(n, invert(d.restricted(d.win_lo, hi + 8))).restricted(lo, hi);
        };
        bool ok = agree_on(vertex_closed({{}, {}, {}}, 0, hi), m, 0, hi) &&
                  agree_on(vertex_closed({{1}, {}, {}}, 0, hi),
                           ratio(m, ppoly({{0, 1}, {1, -1}}), 0), 0, hi) &&
                  agree_on(vertex_closed({{1}, {1}, {}}, -2, hi),
                           ratio(mul(m, ppoly({{2, 1}, {1, -1}, {0, 1}})),
                                 ppoly({{1, 1}, {2, -2}, {3, 1}}), -2),
                           -2, hi) &&
                  agree_on(vertex_closed({{1}, {1}, {1}}, -4, hi),
                           ratio(mul(m, ppoly({{4, 1}, {3, -1}, {2, 1}, {1, -1}, {0, 1}})),
                                 ppoly({{2, 1}, {3, -3}, {4, 3}, {5, -1}}), -4),
                           -4, hi);
        return verdict(ok);
    }
    if (name == "vertex-splitting") {
        std::vector<Partition> lams;
        if (!lambda_arg.empty())
            lams.push_back(partition_arg(Json::parse(lambda_arg)));
        else
            for (int n = 0; n <= 4; ++n)
                for (const auto& l : partitions_of(n)) lams.push_back(l);
        for (const auto& l : lams) {
            int depth = 2 * (l.part(1) + conjugate(l).part(1) + 1);
            int lo = -4 * depth - 8, hi = 10 + 2 * depth + 8;
            HalfLaurent vee = vertex_closed({l, {}, {}}, lo, hi);
            HalfLaurent lhs = mul(vertex_closed({l, {1}, {1}}, lo, hi), vee);
            HalfLaurent rhs = add(shift(mul(vee, vee), -2),
                                  mul(vertex_closed({l, {1}, {}}, lo, hi),
                                      vertex_closed({l, {}, {1}}, lo, hi)));
            if (!agree(lhs, rhs)) return verdict(false, "lambda " + l.str());
        }
        return verdict(true);
    }
    if (name == "vtilde-ratios") {
        for (int n = 1; n <= 3; ++n)
            for (const auto& l : partitions_of(n)) {
                Partition lt = conjugate(l);
                auto check = [&](VertexKey k, int shift_p) {
                    if (min_renorm_volume(k) != shift_p) return false;
                    int sh = 2 * shift_p, me = 4;
                    HalfLaurent vc = vertex_closed(k, sh, 2 * me + sh);
                    HalfLaurent vb = shift(vertex_brute(k, me), sh);
                    return agree_on(vc, vb, sh, 2 * me + sh);
                };
                if (!check({l, {1}, {}}, -l.part(1))) return verdict(false, "single " + l.str());
                if (!check({l, {1}, {1}}, -(l.part(1) + lt.part(1))))
                    return verdict(false, "double " + l.str());
                if (!check({l, lt, {}}, -static_cast<int>(l.norm_sq())))
                    return verdict(false, "conjugate " + l.str());
            }
        return verdict(true);
    }
    if (name == "rank3-theta") {
        ThetaTable t = theta_coeffs(12, 16);
        QSeries lhs = rank3_triple_sum(3, -4, 12);
        QSeries rhs = rank3_theta_product(t, 3, -4, 12);
        return verdict(agree(truncate_total_degree(lhs, 3), truncate_total_degree(rhs, 3)));
    }
    if (name == "oracle") {
        std::vector<Partition> legs = {{}, {1}, {2}, {1, 1}};
        for (const auto& a : legs)
            for (const auto& b : legs)
                for (const auto& c : legs) {
                    VertexKey k{a, b, c};
                    int vol = static_cast<int>(min_renorm_volume(k));
                    HalfLaurent vb = shift(vertex_brute(k, 4), 2 * vol);
                    HalfLaurent vc = vertex_closed(k, 2 * vol, 8 + 2 * vol);
                    if (!agree_on(vc, vb, 2 * vol, 8 + 2 * vol))
                        return verdict(false, a.str() + b.str() + c.str());
                }
        return verdict(true);
    }
    return fail_json("unknown identity: " + name +
                     " (try vertex-squares, vertex-splitting, vtilde-ratios, rank3-theta, oracle)");
}

int cmd_theorem_a(const Options& o, const std::string& route) {
    int d2 = o.caps.size() == 2 ? o.caps[0] : o.caps[2];
    int d3 = o.caps.size() == 2 ? o.caps[1] : o.caps[3];
    QSeries c = theoremA_closed(d2, d3, o.wlo, o.whi);
    if (route != "closed") {
        QSeries s = theoremA_stratified(d2, d3, o.wlo, o.whi);
        if (!agree(s, c)) return fail_json("stratified route disagrees with the closed form");
        c = s;
    }
    if (o.json)
        std::cout << to_json(c).dump() << "\n";
    else {
        std::cout << "section over fibre classes (Q2,Q3), caps (" << d2 << "," << d3
                  << "), window [" << o.wlo << "," << o.whi << "]"
                  << (route == "both" ? ", both routes agree" : "") << "\n"
                  << to_json(c).dump(2) << "\n";
    }
    return 0;
}

int cmd_theorem_b(int i, int j, const Options& o, const std::string& route, bool echo) {
    int b = o.caps[0];
    int d3 = o.caps.size() == 2 ? o.caps[1] : o.caps[3];
    // (1,0) is computed through the (0,1) table per the symmetry of the classes
    int si = (i == 1 && j == 0) ? 0 : i;
    int sj = (i == 1 && j == 0) ? 1 : j;
    std::string file = o.strata_dir;
    if (file.size() < 4 || file.substr(file.size() - 4) != ".dat")
        file += "/strata_" + std::to_string(si) + std::to_string(sj) + ".dat";
    QSeries out(qexp(b, 0, 0, d3), o.wlo, o.whi);
    bool have = false;
    if (route == "closed" || route == "both") {
        out = theoremB_closed(i, j, b, d3, o.wlo, o.whi);
        have = true;
    }
    if (route == "stratified" || route == "both") {
        auto recs = load_strata(file);
        if (echo)
            for (const auto& r : recs)
                std::printf("%-16s mult %-3d e(U) %-5d chi %-2d pre (%d,%d,%d,%d) p^%d sigma %s\n",
                            r.label.c_str(), r.mult, r.euler, r.chi, r.prefactor[0],
                            r.prefactor[1], r.prefactor[2], r.prefactor[3], r.pexp,
                            phi_name(r.sigma_slot));
        QSeries s = theoremB_stratified(recs, si, sj, b, d3, o.wlo, o.whi);
        if (have && !agree(s, out))
            return fail_json("stratified route disagrees with the closed form");
        out = s;
    }
    if (o.json)
        std::cout << to_json(out).dump() << "\n";
    else
        std::cout << "class (" << i << "," << j << ") in (Q_sigma,Q3), caps (" << b << "," << d3
                  << ")\n"
                  << to_json(out).dump(2) << "\n";
    return 0;
}

int cmd_gv(const Options& o, int fi, int fj) {
    int b = o.caps[0];
    int d3 = o.caps.size() == 2 ? o.caps[1] : o.caps[3];
    QSeries z00 = theoremB_closed(0, 0, b, d3, o.wlo, o.whi);
    QSeries z01 = theoremB_closed(0, 1, b, d3, o.wlo, o.whi);
    QSeries z11 = theoremB_closed(1, 1, b, d3, o.wlo, o.whi);
    GvTable t = gv_invariants(connected_lattice(z00, z01, z01, z11, b, d3));
    Json rows = Json::array();
    for (const auto& [beta, row] : t.entries) {
        if (fi >= 0 && (beta[1] != fi || beta[2] != fj)) continue;
        for (const auto& [g, n] : row) {
            Json r;
            r["beta"] = {beta[0], beta[1], beta[2], beta[3]};
            r["genus"] = g;
            r["n"] = n;
            rows.push_back(r);
        }
    }
    if (o.json) {
        std::cout << rows.dump() << "\n";
    } else {
        std::printf("%-14s %-6s %s\n", "beta", "genus", "n");
        for (const auto& r : rows)
            std::printf("(%d,%d,%d,%d)     %-6d %ld\n", r["beta"][0].get<int>(),
                        r["beta"][1].get<int>(), r["beta"][2].get<int>(), r["beta"][3].get<int>(),
                        r["genus"].get<int>(), r["n"].get<long>());
    }
    return 0;
}

int cmd_theta(int amax, int kwin, bool json) {
    ThetaTable t = theta_coeffs(amax, kwin);
    Json rows = Json::array();
    for (const auto& [ak, c] : t.c) {
        Json r;
        r["a"] = ak.first;
        r["k"] = ak.second;
        r["c"] = c;
        rows.push_back(r);
    }
    if (json)
        std::cout << rows.dump() << "\n";
    else
        for (const auto& r : rows)
            std::printf("c(%d, %d) = %ld\n", r["a"].get<int>(), r["k"].get<int>(),
                        r["c"].get<long>());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological-vertex partition functions of the banana lattice"};
    app.require_subcommand(1);

    Options o;
    std::string legs, name, lambda, route = "closed", cls = "-1,-1";
    int max_extra = -1, amax = 8, kwin = 12;
    bool echo = false, theta_json = false;

    auto* vertex = app.add_subcommand("vertex", "evaluate the vertex for three legs");
    vertex->add_option("--legs", legs, "three partitions, e.g. [[1],[1],[]]")->required();
    vertex->add_option("--max-extra", max_extra, "box budget for the oracle");
    vertex->add_flag("--oracle", o.oracle, "cross-check against box enumeration");
    add_common(vertex, o);

    auto* identity = app.add_subcommand("identity", "verify a named identity");
    identity->add_option("--name", name, "identity name")->required();
    identity->add_option("--lambda", lambda, "partition argument, e.g. [2,1]");
    add_common(identity, o);

    auto* ta = app.add_subcommand("theorem-a", "section class over the fibre lattice");
    ta->add_option("--route", route, "closed | stratified | both");
    add_common(ta, o);

    auto* tb = app.add_subcommand("theorem-b", "section multiples over one banana class");
    tb->add_option("--class", cls, "i,j with i,j in {0,1}")->required();
    tb->add_option("--route", route, "closed | stratified | both");
    tb->add_option("--strata", o.strata_dir, "strata table file, or a directory holding them");
    tb->add_flag("--echo-strata", echo, "validate and echo the strata table");
    add_common(tb, o);

    auto* gv = app.add_subcommand("gv", "Gopakumar-Vafa invariants of the lattice");
    gv->add_option("--class", cls, "filter rows to d1,d2 (e.g. 1,1)");
    add_common(gv, o);

    auto* theta = app.add_subcommand("theta", "theta-quotient coefficient table");
    theta->add_option("--amax", amax, "largest Q-order");
    theta->add_option("--kwindow", kwin, "largest |k|");
    theta->add_flag("--json", theta_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (vertex->parsed()) return cmd_vertex(legs, o, max_extra);
        if (identity->parsed()) return cmd_identity(name, lambda);
        if (ta->parsed()) return cmd_theorem_a(o, route);
        if (tb->parsed() || gv->parsed()) {
            int i = -1, j = -1;
            auto comma = cls.find(',');
            if (comma != std::string::npos) {
                i = std::stoi(cls.substr(0, comma));
                j = std::stoi(cls.substr(comma + 1));
            }
            if (tb->parsed()) {
                if (i < 0 || i > 1 || j < 0 || j > 1)
                    return fail_json("--class must be one of 0,0 0,1 1,0 1,1");
                return cmd_theorem_b(i, j, o, route, echo);
            }
            return cmd_gv(o, i, j);
        }
        if (theta->parsed()) return cmd_theta(amax, kwin, theta_json);
    } catch (const std::exception& e) {
        return fail_json(e.what());
    }
    return 2;
}
