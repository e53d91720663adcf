#pragma once

#include <string>

#include <json.hpp>

#include "banana/partition.hpp"
#include "banana/qseries.hpp"

namespace banana {

using Json = nlohmann::ordered_json;

// { "vars": ["Qs","Q1","Q2","Q3"], "window": [lo,hi], "caps": [..],
//   "terms": [ {"Q": [b,d1,d2,d3], "q": {"<exp>": "<num/den>", ...}}, ...] }
// Terms sorted by Q-vector, exponents ascending; rationals as "num" or
// "num/den". Exponents are q-exponents (p = q^2).
inline Json to_json(const QSeries& s) {
    Json j;
    j["vars"] = {"Qs", "Q1", "Q2", "Q3"};
    j["window"] = {s.win_lo, s.win_hi};
    j["caps"] = {s.caps[0], s.caps[1], s.caps[2], s.caps[3]};
    Json terms = Json::array();
    for (const auto& [e, h] : s.terms) {
        Json t;
        t["Q"] = {e[0], e[1], e[2], e[3]};
        Json q = Json::object();
        for (std::size_t i = 0; i < h.c.size(); ++i)
            if (h.c[i] != 0)
                q[std::to_string(h.base + static_cast<int>(i))] = rat_str(h.c[i]);
        t["q"] = q;
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

inline Json to_json(const HalfLaurent& h) {
    Json q = Json::object();
    for (std::size_t i = 0; i < h.c.size(); ++i)
        if (h.c[i] != 0)
            q[std::to_string(h.base + static_cast<int>(i))] = rat_str(h.c[i]);
    Json j;
    j["window"] = {h.win_lo, std::min(h.win_hi, HalfLaurent::INF)};
    j["q"] = q;
    return j;
}

inline QSeries qseries_from_json(const Json& j) {
    QExp caps{j["caps"][0], j["caps"][1], j["caps"][2], j["caps"][3]};
    QSeries s(caps, j["window"][0], j["window"][1]);
    for (const auto& t : j["terms"]) {
        QExp e{t["Q"][0], t["Q"][1], t["Q"][2], t["Q"][3]};
        HalfLaurent h = HalfLaurent::zero(s.win_lo, s.win_hi);
        for (auto it = t["q"].begin(); it != t["q"].end(); ++it) {
            int exp = std::stoi(it.key());
            h = add(h, HalfLaurent::monomial(exp, rat_parse(it.value().get<std::string>()),
                                             s.win_lo, s.win_hi));
        }
        s.set(e, h);
    }
    return s;
}

inline Json to_json(const Partition& p) {
    Json j = Json::array();
    for (int x : p.parts) j.push_back(x);
    return j;
}

inline Partition partition_from_json(const Json& j) {
    std::vector<int> parts;
    for (const auto& x : j) parts.push_back(x.get<int>());
    return Partition(parts);
}

}  // namespace banana
