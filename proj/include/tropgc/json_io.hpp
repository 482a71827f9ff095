#ifndef TROPGC_JSON_IO_HPP
#define TROPGC_JSON_IO_HPP

#include <tropgc/spectral.hpp>

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace tropgc {

using Json = nlohmann::ordered_json;

struct FiltrationInput {
    int g = 0;
    std::vector<WeightDatum> chain;
};

/// Parse {"g": int, "weights": [[rational strings], ...]}.
inline FiltrationInput parse_filtration(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("g") || !j["g"].is_number_integer() || !j.contains("weights") ||
        !j["weights"].is_array())
        throw parse_error("filtration JSON needs an integer \"g\" and an array \"weights\"");
    FiltrationInput in;
    in.g = j["g"].get<int>();
    for (const auto& row : j["weights"]) {
        if (!row.is_array())
            throw parse_error("each weight vector must be an array of rational strings");
        std::vector<Rational> a;
        for (const auto& x : row) {
            if (!x.is_string())
                throw parse_error("weights must be given as strings like \"1/3\"");
            a.push_back(parse_rational(x.get<std::string>()));
        }
        in.chain.emplace_back(in.g, std::move(a));
    }
    if (in.chain.empty())
        throw domain_error("filtration has no weight data");
    return in;
}

inline Json to_json(const std::vector<Rational>& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

inline Json to_json(const ChamberSignature& s)
{
    Json out = Json::object();
    for (std::size_t i = 0; i < s.signs.size(); ++i)
        out[subset_string(s.walls()[i])] = std::string(1, sign_char(s.signs[i]));
    return out;
}

inline Json to_json(const OrderResult& r)
{
    Json out;
    out["relation"] = to_string(r.relation);
    out["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
    out["permutations_examined"] = r.permutations_examined;
    out["permutations_skipped"] = r.permutations_skipped;
    out["wall_evaluations"] = r.wall_evaluations;
    out["sums_computed"] = r.sums_computed;
    return out;
}

inline Json degree_map(const std::map<int, std::size_t>& m)
{
    Json out = Json::object();
    for (const auto& [k, v] : m)
        out[std::to_string(k)] = v;
    return out;
}

inline Json to_json(const HomologyReport& h)
{
    Json out;
    out["kind"] = to_string(h.kind);
    out["g"] = h.g;
    out["n"] = h.n;
    out["dims"] = degree_map(h.dims);
    out["betti"] = degree_map(h.betti);
    if (h.kind != ChainKind::Relative) {
        out["weight"] = h.top_weight();
        std::map<int, std::size_t> by_cohomological;
        for (const auto& [k, b] : h.betti)
            by_cohomological[h.cohomological_degree(k)] = b;
        Json tw = Json::array();
        for (const auto& [c, b] : by_cohomological)
            tw.push_back(Json{{"H^" + std::to_string(c), b}});
        out["topweight"] = tw;
    }
    Json delta = Json::array();
    for (const auto& [k, b] : h.betti)
        delta.push_back(Json{{"H_" + std::to_string(h.delta_degree(k)), b}});
    out[h.kind == ChainKind::Relative ? "delta_relative" : "delta_reduced"] = delta;
    return out;
}

inline Json to_json(const ChainComplex& c)
{
    Json out;
    out["kind"] = to_string(c.kind());
    out["g"] = c.genus();
    out["n"] = c.markings();
    Json degrees = Json::array();
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
        Json d;
        d["degree"] = k;
        Json gens = Json::array();
        for (const auto& b : c.basis(k))
            gens.push_back(b.encoding);
        d["generators"] = gens;
        Json triples = Json::array();
        for (const auto& e : c.boundary(k).entries())
            triples.push_back(Json::array({e.row, e.col, to_string(e.value)}));
        d["boundary"] = triples;
        degrees.push_back(d);
    }
    out["degrees"] = degrees;
    return out;
}

inline Json to_json(const PageTable& t)
{
    Json out = Json::object();
    for (const auto& [pq, d] : t.dims)
        out[std::to_string(pq.first) + "," + std::to_string(pq.second)] = d;
    return out;
}

} // namespace tropgc

#endif // TROPGC_JSON_IO_HPP
