#pragma once

// JSON serialization of the structures the CLI emits.

#include <nlohmann/json.hpp>

#include "rprim/chars.hpp"
#include "rprim/rstruct.hpp"
#include "rprim/search.hpp"

namespace rprim {

inline nlohmann::ordered_json to_json(const RStructure& st, bool with_verdict = true) {
    nlohmann::ordered_json j;
    j["q"] = st.q;
    j["n"] = st.n;
    j["r"] = st.r;
    j["ps"] = st.ps;
    j["pt"] = st.pt;
    j["pu"] = st.pu;
    j["s"] = st.s;
    j["t"] = st.t;
    j["u"] = st.u;
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& pr : st.pairs) pairs.push_back({pr.p, pr.e, pr.f});
    j["pairs"] = pairs;
    j["a_r"] = st.a_r;
    j["bound_rhs_root"] = st.bound_rhs_root;
    if (with_verdict) j["bound_holds"] = bound_holds(st);
    return j;
}

inline nlohmann::ordered_json to_json(const PropertyReport& rep) {
    nlohmann::ordered_json j;
    j["q"] = rep.q;
    j["p"] = rep.p;
    j["k"] = rep.k;
    j["n"] = rep.n;
    j["r"] = rep.r;
    j["mode"] = to_string(rep.mode);
    j["pass"] = rep.pass;
    j["lines_checked"] = rep.lines_checked;
    j["min_count"] = rep.min_count;
    auto exc = nlohmann::ordered_json::array();
    for (const CanonicalLine& l : rep.exceptions)
        exc.push_back({{"a", l.a.index}, {"b", l.b.index}, {"theta", l.theta.index}});
    j["exceptions"] = exc;
    j["exceptions_total"] = rep.exceptions_total;
    j["elapsed_s"] = rep.elapsed_s;
    return j;
}

inline nlohmann::ordered_json to_json(const KatzResult& k) {
    nlohmann::ordered_json j;
    j["q"] = k.q;
    j["n"] = k.n;
    j["bound"] = k.bound;
    j["max_abs_sum"] = k.max_abs_sum;
    j["ratio"] = k.ratio;
    j["argmax"] = {{"theta_index", k.argmax_theta}, {"character_m", k.argmax_m}};
    return j;
}

}  // namespace rprim
