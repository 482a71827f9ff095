#ifndef TROPGC_GRAPH_HPP
#define TROPGC_GRAPH_HPP

#include <tropgc/chambers.hpp>
#include <tropgc/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tropgc {

struct Edge {
    int u;
    int v;

    bool is_loop() const { return u == v; }
    bool operator==(const Edge&) const = default;
};

inline bool is_connected(std::size_t vertex_count, const std::vector<Edge>& edges)
{
    if (vertex_count == 0)
        return false;
    std::vector<std::size_t> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = vertex_count;
    for (const auto& e : edges) {
        auto a = find(e.u), b = find(e.v);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

/**
 * Connected weighted graph with n legs.
 *
 * Edges are stored as endpoint pairs (loops have u == v) and the leg marked i
 * sits at leg_vertex(i). The half-edge view numbers the half-edges of edge e
 * as 2e (at u) and 2e+1 (at v), and the leg marked i as 2|E| + i - 1; the
 * involution swaps 2e and 2e+1 and fixes legs.
 */
class MarkedGraph {
public:
    MarkedGraph(std::vector<int> weights, std::vector<Edge> edges, std::vector<int> leg_vertex)
        : weights_(std::move(weights)), edges_(std::move(edges)), legs_(std::move(leg_vertex))
    {
        const int nv = static_cast<int>(weights_.size());
        if (nv == 0)
            throw domain_error("graph needs at least one vertex");
        for (int w : weights_)
            if (w < 0)
                throw domain_error("vertex weights must be nonnegative");
        for (auto& e : edges_) {
            if (e.u < 0 || e.v < 0 || e.u >= nv || e.v >= nv)
                throw domain_error("edge endpoint out of range");
            if (e.u > e.v)
                std::swap(e.u, e.v);
        }
        for (int x : legs_)
            if (x < 0 || x >= nv)
                throw domain_error("leg attached to a nonexistent vertex");
        if (!is_connected(weights_.size(), edges_))
            throw domain_error("graph is not connected");
    }

    std::size_t vertex_count() const { return weights_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t leg_count() const { return legs_.size(); }

    int weight(std::size_t v) const { return weights_.at(v); }
    const std::vector<int>& weights() const { return weights_; }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    /// Vertex carrying the leg marked i (1-based).
    int leg_vertex(std::size_t marking) const { return legs_.at(marking - 1); }
    const std::vector<int>& leg_vertices() const { return legs_; }

    /// |v|_E: non-leg half-edges at v (a loop counts twice).
    int edge_valence(std::size_t v) const
    {
        int d = 0;
        for (const auto& e : edges_)
            d += (e.u == static_cast<int>(v)) + (e.v == static_cast<int>(v));
        return d;
    }

    int loop_count(std::size_t v) const
    {
        int c = 0;
        for (const auto& e : edges_)
            c += e.is_loop() && e.u == static_cast<int>(v);
        return c;
    }

    std::vector<int> markings_at(std::size_t v) const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < legs_.size(); ++i)
            if (legs_[i] == static_cast<int>(v))
                out.push_back(static_cast<int>(i + 1));
        return out;
    }

    bool is_pure() const
    {
        return std::all_of(weights_.begin(), weights_.end(), [](int w) { return w == 0; });
    }

    bool has_loop() const
    {
        return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
    }

    std::size_t half_edge_count() const { return 2 * edges_.size() + legs_.size(); }
    bool is_leg(std::size_t h) const { return h >= 2 * edges_.size(); }
    std::size_t involution(std::size_t h) const { return is_leg(h) ? h : h ^ 1u; }
    int endpoint(std::size_t h) const
    {
        if (is_leg(h))
            return legs_.at(h - 2 * edges_.size());
        const auto& e = edges_.at(h / 2);
        return h % 2 ? e.v : e.u;
    }

    bool operator==(const MarkedGraph&) const = default;

private:
    std::vector<int> weights_;
    std::vector<Edge> edges_;
    std::vector<int> legs_;
};

/// b_1(G) + sum of vertex weights.
inline int genus(const MarkedGraph& g)
{
    const int b1 = static_cast<int>(g.edge_count()) - static_cast<int>(g.vertex_count()) + 1;
    return b1 + std::accumulate(g.weights().begin(), g.weights().end(), 0);
}

/// Every vertex satisfies 2w(v) - 2 + |v|_E + |v|_A > 0.
inline bool is_stable(const MarkedGraph& g, int genus_value, const WeightDatum& a)
{
    if (a.size() != g.leg_count())
        throw domain_error("weight datum has " + std::to_string(a.size()) + " entries but the graph has " +
                           std::to_string(g.leg_count()) + " legs");
    if (genus(g) != genus_value)
        throw domain_error("graph has genus " + std::to_string(genus(g)) + ", expected " +
                           std::to_string(genus_value));
    std::vector<Rational> load(g.vertex_count());
    for (std::size_t i = 1; i <= g.leg_count(); ++i)
        load[g.leg_vertex(i)] += a[i - 1];
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (!(2 * g.weight(v) - 2 + g.edge_valence(v) + load[v] > 0))
            return false;
    return true;
}

/**
 * Weighted contraction of edge e. A non-loop merges its endpoints (weights add,
 * the higher-numbered endpoint is removed); a loop is deleted and its vertex
 * weight goes up by one. Remaining edges keep their relative order.
 */
inline MarkedGraph contract_edge(const MarkedGraph& g, std::size_t e)
{
    if (e >= g.edge_count())
        throw domain_error("edge index " + std::to_string(e) + " is not an edge");
    const Edge c = g.edge(e);
    std::vector<int> w = g.weights();
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() - 1);
    std::vector<int> legs = g.leg_vertices();
    if (c.is_loop()) {
        ++w[c.u];
        for (std::size_t i = 0; i < g.edge_count(); ++i)
            if (i != e)
                edges.push_back(g.edge(i));
        return MarkedGraph(std::move(w), std::move(edges), std::move(legs));
    }
    auto relabel = [&](int x) {
        if (x == c.v)
            return c.u;
        return x > c.v ? x - 1 : x;
    };
    w[c.u] += w[c.v];
    w.erase(w.begin() + c.v);
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (i != e)
            edges.push_back({relabel(g.edge(i).u), relabel(g.edge(i).v)});
    for (auto& x : legs)
        x = relabel(x);
    return MarkedGraph(std::move(w), std::move(edges), std::move(legs));
}

/// The leg marked j afterwards is the leg formerly marked sigma(j).
inline MarkedGraph relabel_legs(const MarkedGraph& g, const Permutation& sigma)
{
    check_permutation(sigma, g.leg_count());
    std::vector<int> legs(g.leg_count());
    for (std::size_t j = 0; j < legs.size(); ++j)
        legs[j] = g.leg_vertex(static_cast<std::size_t>(sigma[j]));
    return MarkedGraph(g.weights(), g.edges(), std::move(legs));
}

/// "g;w_0,...;edges=(u-v,...);legs=(m@v,...)" using the stored vertex and edge order.
inline std::string encode(const MarkedGraph& g)
{
    std::string s = std::to_string(genus(g)) + ";";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        s += (v ? "," : "") + std::to_string(g.weight(v));
    s += ";edges=(";
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        s += (e ? "," : "") + std::to_string(g.edge(e).u) + "-" + std::to_string(g.edge(e).v);
    s += ");legs=(";
    for (std::size_t i = 1; i <= g.leg_count(); ++i)
        s += (i > 1 ? "," : "") + std::to_string(i) + "@" + std::to_string(g.leg_vertex(i));
    return s + ")";
}

namespace detail {

inline int parse_int(std::string_view s, std::string_view whole)
{
    if (!all_digits(s) || s.size() > 9)
        throw parse_error("malformed graph encoding '" + std::string(whole) + "'");
    return std::stoi(std::string(s));
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    if (s.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        auto p = s.find(sep, start);
        out.push_back(s.substr(start, p - start));
        if (p == std::string_view::npos)
            break;
        start = p + 1;
    }
    return out;
}

} // namespace detail

/// Inverse of encode; the graph is rebuilt in the encoded order.
inline MarkedGraph decode(std::string_view text)
{
    auto fail = [&]() { throw parse_error("malformed graph encoding '" + std::string(text) + "'"); };
    auto parts = detail::split(text, ';');
    if (parts.size() != 4)
        fail();
    auto strip = [&](std::string_view p, std::string_view prefix) {
        if (p.substr(0, prefix.size()) != prefix || p.size() < prefix.size() + 1 || p.back() != ')')
            fail();
        return p.substr(prefix.size(), p.size() - prefix.size() - 1);
    };
    const int g = detail::parse_int(parts[0], text);
    std::vector<int> w;
    for (auto x : detail::split(parts[1], ','))
        w.push_back(detail::parse_int(x, text));
    std::vector<Edge> edges;
    for (auto x : detail::split(strip(parts[2], "edges=("), ',')) {
        auto uv = detail::split(x, '-');
        if (uv.size() != 2)
            fail();
        edges.push_back({detail::parse_int(uv[0], text), detail::parse_int(uv[1], text)});
    }
    std::vector<std::pair<int, int>> leg_pairs;
    for (auto x : detail::split(strip(parts[3], "legs=("), ',')) {
        auto mv = detail::split(x, '@');
        if (mv.size() != 2)
            fail();
        leg_pairs.emplace_back(detail::parse_int(mv[0], text), detail::parse_int(mv[1], text));
    }
    std::vector<int> legs(leg_pairs.size(), -1);
    for (auto [m, v] : leg_pairs) {
        if (m < 1 || static_cast<std::size_t>(m) > legs.size() || legs[m - 1] != -1)
            fail();
        legs[m - 1] = v;
    }
    MarkedGraph out(std::move(w), std::move(edges), std::move(legs));
    if (genus(out) != g)
        fail();
    return out;
}

} // namespace tropgc

#endif // TROPGC_GRAPH_HPP
