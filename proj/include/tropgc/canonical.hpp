#ifndef TROPGC_CANONICAL_HPP
#define TROPGC_CANONICAL_HPP

#include <tropgc/graph.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <tuple>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropgc {

struct CanonicalGraph {
    MarkedGraph graph;
    bool has_odd_edge_automorphism = false;
    /// Nontrivial vertex automorphisms (new position of each vertex); together they generate the vertex action.
    std::vector<std::vector<int>> automorphism_generators;
    std::string encoding;
};

struct CanonicalForm {
    CanonicalGraph canonical;
    /// edge_map[e] = position of input edge e in the canonical edge order.
    std::vector<std::size_t> edge_map;
};

/// Sign of a permutation given as an image vector.
inline int permutation_sign(const std::vector<std::size_t>& p)
{
    std::vector<bool> seen(p.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i])
            continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0)
            sign = -sign;
    }
    return sign;
}

namespace detail {

using Coloring = std::vector<int>;

/// Replace arbitrary comparable keys by their ranks, so colors never depend on vertex ids.
template <class Key>
Coloring rank_keys(const std::vector<Key>& keys)
{
    std::vector<Key> sorted(keys);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Coloring out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
        out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    return out;
}

inline std::size_t count_colors(const Coloring& c)
{
    return c.empty() ? 0 : static_cast<std::size_t>(*std::max_element(c.begin(), c.end())) + 1;
}

class Canonicalizer {
public:
    explicit Canonicalizer(const MarkedGraph& g) : g_(g), nv_(g.vertex_count()), adj_(nv_)
    {
        for (const auto& e : g.edges())
            if (!e.is_loop()) {
                adj_[e.u].push_back(e.v);
                adj_[e.v].push_back(e.u);
            }
    }

    void run()
    {
        std::vector<std::tuple<int, int, int, std::vector<int>>> keys;
        for (std::size_t v = 0; v < nv_; ++v)
            keys.emplace_back(g_.weight(v), g_.loop_count(v), g_.edge_valence(v), g_.markings_at(v));
        search(refine(rank_keys(keys)));
    }

    std::vector<int> best_order; // best_order[v] = canonical position of vertex v
    std::vector<int> best_code;
    std::vector<std::vector<int>> tied_orders;

private:
    Coloring refine(Coloring c) const
    {
        while (true) {
            std::vector<std::pair<int, std::vector<int>>> keys;
            for (std::size_t v = 0; v < nv_; ++v) {
                std::vector<int> nb;
                for (int u : adj_[v])
                    nb.push_back(c[u]);
                std::sort(nb.begin(), nb.end());
                keys.emplace_back(c[v], std::move(nb));
            }
            Coloring next = rank_keys(keys);
            if (count_colors(next) == count_colors(c))
                return next;
            c = std::move(next);
        }
    }

    std::vector<int> code_of(const std::vector<int>& order) const
    {
        std::vector<int> code(nv_);
        for (std::size_t v = 0; v < nv_; ++v)
            code[order[v]] = g_.weight(v);
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : g_.edges()) {
            int a = order[e.u], b = order[e.v];
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(edges.begin(), edges.end());
        for (auto [a, b] : edges) {
            code.push_back(a);
            code.push_back(b);
        }
        for (int x : g_.leg_vertices())
            code.push_back(order[x]);
        return code;
    }

    void search(const Coloring& c)
    {
        const std::size_t k = count_colors(c);
        if (k == nv_) {
            auto code = code_of(c);
            if (best_code.empty() || code < best_code) {
                best_code = std::move(code);
                best_order = c;
                tied_orders.assign(1, c);
            } else if (code == best_code) {
                tied_orders.push_back(c);
            }
            return;
        }
        // First color class with more than one vertex.
        std::vector<std::size_t> size(k, 0);
        for (int x : c)
            ++size[x];
        int target = 0;
        while (size[target] < 2)
            ++target;
        for (std::size_t v = 0; v < nv_; ++v) {
            if (c[v] != target)
                continue;
            std::vector<std::pair<int, int>> keys;
            for (std::size_t u = 0; u < nv_; ++u)
                keys.emplace_back(c[u], c[u] == target && u != v ? 1 : 0);
            search(refine(rank_keys(keys)));
        }
    }

    const MarkedGraph& g_;
    std::size_t nv_;
    std::vector<std::vector<int>> adj_;
};

} // namespace detail

/**
 * Canonical form under marking-preserving isomorphism, by color refinement and
 * exhaustive individualization; the lexicographically least relabeled code wins.
 */
inline CanonicalForm canonicalize(const MarkedGraph& g)
{
    detail::Canonicalizer cz(g);
    cz.run();
    const auto& order = cz.best_order;
    const std::size_t nv = g.vertex_count();

    std::vector<int> w(nv);
    for (std::size_t v = 0; v < nv; ++v)
        w[order[v]] = g.weight(v);

    // Sort edges by relabeled endpoints; ties keep input order.
    std::vector<std::size_t> idx(g.edge_count());
    std::iota(idx.begin(), idx.end(), 0);
    auto relabeled = [&](std::size_t e) {
        int a = order[g.edge(e).u], b = order[g.edge(e).v];
        return std::make_pair(std::min(a, b), std::max(a, b));
    };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return relabeled(x) < relabeled(y); });
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_map(g.edge_count());
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        auto [a, b] = relabeled(idx[pos]);
        edges.push_back({a, b});
        edge_map[idx[pos]] = pos;
    }
    std::vector<int> legs;
    for (int x : g.leg_vertices())
        legs.push_back(order[x]);

    MarkedGraph cg(std::move(w), edges, std::move(legs));

    bool odd = false;
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            odd = true; // swapping two parallel edges (or two loops at one vertex)

    // Vertex automorphisms of the canonical graph: maps between tied leaves.
    std::vector<int> inv_best(nv);
    for (std::size_t v = 0; v < nv; ++v)
        inv_best[order[v]] = static_cast<int>(v);
    std::vector<std::vector<int>> autos;
    for (const auto& other : cz.tied_orders) {
        std::vector<int> phi(nv); // canonical position -> canonical position
        bool trivial = true;
        for (std::size_t p = 0; p < nv; ++p) {
            phi[p] = other[inv_best[p]];
            trivial &= phi[p] == static_cast<int>(p);
        }
        if (trivial || std::find(autos.begin(), autos.end(), phi) != autos.end())
            continue;
        autos.push_back(phi);
        if (!odd) {
            // Without multi-edges each edge is determined by its endpoints.
            std::map<std::pair<int, int>, std::size_t> pos;
            for (std::size_t e = 0; e < edges.size(); ++e)
                pos[{edges[e].u, edges[e].v}] = e;
            std::vector<std::size_t> perm(edges.size());
            for (std::size_t e = 0; e < edges.size(); ++e) {
                int a = phi[edges[e].u], b = phi[edges[e].v];
                perm[e] = pos.at({std::min(a, b), std::max(a, b)});
            }
            if (permutation_sign(perm) < 0)
                odd = true;
        }
    }
    std::sort(autos.begin(), autos.end());

    std::string enc = encode(cg);
    return {CanonicalGraph{std::move(cg), odd, std::move(autos), std::move(enc)}, std::move(edge_map)};
}

} // namespace tropgc

#endif // TROPGC_CANONICAL_HPP
