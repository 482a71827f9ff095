#ifndef TROPGC_ENUMERATION_HPP
#define TROPGC_ENUMERATION_HPP

#include <tropgc/canonical.hpp>
#include <tropgc/chambers.hpp>
#include <tropgc/graph.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace tropgc {

/// Isomorphism classes of connected (g,A)-stable graphs with a fixed edge count, sorted by encoding.
struct GraphClassSet {
    int g = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t signature_hash = 0;
    bool pure_only = false;
    std::vector<CanonicalGraph> classes;
};

struct EnumerationOptions {
    /// Directory for the on-disk cache; no disk cache when empty.
    std::optional<std::filesystem::path> cache_dir;
};

/// Cache directory named by TROPGC_CACHE, defaulting to ./.tropgc-cache.
inline std::filesystem::path default_cache_dir()
{
    if (const char* env = std::getenv("TROPGC_CACHE"); env && *env)
        return env;
    return ".tropgc-cache";
}

inline int max_edges(int g, std::size_t n) { return 3 * g - 3 + static_cast<int>(n); }

namespace detail {

/// Calls emit(graph) for every connected stable graph with m edges, possibly several times per class.
template <class Emit>
void generate_stable_graphs(const WeightDatum& a, std::size_t m, bool pure, Emit&& emit)
{
    const int g = a.genus();
    const std::size_t n = a.size();
    for (int b1 = pure ? g : 0; b1 <= g; ++b1) {
        const long nv_signed = static_cast<long>(m) - b1 + 1;
        if (nv_signed < 1)
            continue;
        const std::size_t nv = static_cast<std::size_t>(nv_signed);
        const int total_weight = g - b1;

        std::vector<std::pair<int, int>> pairs;
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = i; j < nv; ++j)
                pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));

        std::vector<int> w(nv, 0);
        auto with_weights = [&]() {
            std::vector<int> legs(n, 0);
            auto with_legs = [&]() {
                std::vector<Subset> mask(nv, 0);
                std::vector<Rational> load(nv);
                for (std::size_t i = 0; i < n; ++i) {
                    mask[legs[i]] |= Subset{1} << i;
                    load[legs[i]] += a[i];
                }
                for (std::size_t v = 1; v < nv; ++v)
                    if (w[v] == w[v - 1] && mask[v] > mask[v - 1])
                        return;
                // need[v]: least edge valence making v stable.
                std::vector<int> need(nv);
                for (std::size_t v = 0; v < nv; ++v) {
                    int d = 0;
                    while (!(2 * w[v] - 2 + d + load[v] > 0))
                        ++d;
                    need[v] = d;
                }
                std::vector<int> deg(nv, 0);
                std::vector<Edge> edges;
                auto deficit = [&]() {
                    long s = 0;
                    for (std::size_t v = 0; v < nv; ++v)
                        s += std::max(0, need[v] - deg[v]);
                    return s;
                };
                auto dfs = [&](auto& self, std::size_t from) -> void {
                    if (deficit() > 2 * static_cast<long>(m - edges.size()))
                        return;
                    if (edges.size() == m) {
                        if (is_connected(nv, edges))
                            emit(MarkedGraph(w, edges, legs));
                        return;
                    }
                    for (std::size_t k = from; k < pairs.size(); ++k) {
                        auto [u, v] = pairs[k];
                        edges.push_back({u, v});
                        ++deg[u];
                        ++deg[v];
                        self(self, k);
                        --deg[u];
                        --deg[v];
                        edges.pop_back();
                    }
                };
                dfs(dfs, 0);
            };
            auto place = [&](auto& self, std::size_t i) -> void {
                if (i == n) {
                    with_legs();
                    return;
                }
                for (std::size_t v = 0; v < nv; ++v) {
                    legs[i] = static_cast<int>(v);
                    self(self, i + 1);
                }
            };
            place(place, 0);
        };
        // Nonincreasing weight vectors summing to total_weight.
        auto weights = [&](auto& self, std::size_t i, int remaining, int cap) -> void {
            if (i == nv) {
                if (remaining == 0)
                    with_weights();
                return;
            }
            for (int x = std::min(remaining, cap); x >= 0; --x) {
                w[i] = x;
                self(self, i + 1, remaining - x, x);
            }
        };
        weights(weights, 0, total_weight, total_weight);
    }
}

struct EnumerationKey {
    int g;
    std::size_t n;
    std::size_t m;
    bool pure;
    std::string signature;

    auto operator<=>(const EnumerationKey&) const = default;
};

inline std::mutex& memo_mutex()
{
    static std::mutex mu;
    return mu;
}

inline std::map<EnumerationKey, std::vector<CanonicalGraph>>& memo()
{
    static std::map<EnumerationKey, std::vector<CanonicalGraph>> m;
    return m;
}

inline std::string cache_file_name(int g, std::size_t n, std::size_t m, bool pure, std::uint64_t hash)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "g%d_n%zu_m%zu_%s_%016llx.txt", g, n, m, pure ? "pure" : "all",
                  static_cast<unsigned long long>(hash));
    return buf;
}

inline std::optional<std::vector<CanonicalGraph>> read_cache(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        return std::nullopt;
    std::vector<CanonicalGraph> out;
    std::string line;
    try {
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            auto c = canonicalize(decode(line));
            if (c.canonical.encoding != line)
                return std::nullopt;
            out.push_back(std::move(c.canonical));
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return out;
}

inline void write_cache(const std::filesystem::path& file, const std::vector<CanonicalGraph>& classes)
{
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    if (ec)
        return;
    std::random_device rd;
    auto tmp = file;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            return;
        for (const auto& c : classes)
            out << c.encoding << '\n';
        if (!out.flush())
            return;
    }
    std::filesystem::rename(tmp, file, ec);
    if (ec)
        std::filesystem::remove(tmp, ec);
}

} // namespace detail

/**
 * All isomorphism classes of connected (g,A)-stable graphs with m edges and n
 * legs (only weight-0 graphs when pure_only), sorted by canonical encoding.
 * Results are memoized per chamber signature and optionally cached on disk.
 */
inline GraphClassSet enumerate_stable_graphs(const WeightDatum& a, std::size_t m, bool pure_only,
                                             const EnumerationOptions& opts = {})
{
    const int g = a.genus();
    const std::size_t n = a.size();
    if (static_cast<int>(m) > max_edges(g, n))
        throw domain_error("edge count " + std::to_string(m) + " exceeds 3g-3+n = " +
                           std::to_string(max_edges(g, n)));
    const auto sig = signature(a);
    GraphClassSet out{g, n, m, signature_hash(sig), pure_only, {}};
    const detail::EnumerationKey key{g, n, m, pure_only, sig.compact()};
    {
        std::lock_guard lock(detail::memo_mutex());
        if (auto it = detail::memo().find(key); it != detail::memo().end()) {
            out.classes = it->second;
            return out;
        }
    }

    std::optional<std::filesystem::path> file;
    if (opts.cache_dir)
        file = *opts.cache_dir / detail::cache_file_name(g, n, m, pure_only, out.signature_hash);
    std::optional<std::vector<CanonicalGraph>> cached;
    if (file)
        cached = detail::read_cache(*file);

    if (cached) {
        out.classes = std::move(*cached);
    } else {
        std::map<std::string, CanonicalGraph> seen;
        detail::generate_stable_graphs(a, m, pure_only, [&](const MarkedGraph& gr) {
            if (!is_stable(gr, g, a))
                return;
            auto c = canonicalize(gr);
            seen.try_emplace(c.canonical.encoding, std::move(c.canonical));
        });
        for (auto& [enc, c] : seen)
            out.classes.push_back(std::move(c));
        if (file)
            detail::write_cache(*file, out.classes);
    }
    std::lock_guard lock(detail::memo_mutex());
    detail::memo().emplace(key, out.classes);
    return out;
}

enum class ComplexKind { Graph, Cellular };

/// Edge count of a degree-k generator: k + 2g for the graph complex, k + 1 for cellular chains.
inline long edges_in_degree(ComplexKind kind, int g, int k)
{
    return kind == ComplexKind::Graph ? static_cast<long>(k) + 2 * g : static_cast<long>(k) + 1;
}

/**
 * Ordered basis of nonzero generators in degree k: classes without an odd edge
 * automorphism, each oriented by its canonical edge order.
 */
inline std::vector<CanonicalGraph> generator_basis(const WeightDatum& a, int k, ComplexKind kind,
                                                   const EnumerationOptions& opts = {})
{
    const long m = edges_in_degree(kind, a.genus(), k);
    if (m < 0 || m > max_edges(a.genus(), a.size()))
        throw domain_error("degree " + std::to_string(k) + " is out of range");
    auto set = enumerate_stable_graphs(a, static_cast<std::size_t>(m), kind == ComplexKind::Graph, opts);
    std::vector<CanonicalGraph> out;
    for (auto& c : set.classes)
        if (!c.has_odd_edge_automorphism)
            out.push_back(std::move(c));
    return out;
}

/// Throws unless each consecutive pair of the chain has dominated signatures.
inline void check_aligned(const std::vector<WeightDatum>& chain)
{
    if (chain.empty())
        throw domain_error("empty chain of weight data");
    for (std::size_t p = 0; p + 1 < chain.size(); ++p) {
        if (chain[p].genus() != chain[p + 1].genus() || chain[p].size() != chain[p + 1].size())
            throw domain_error("chain entries " + std::to_string(p + 1) + " and " + std::to_string(p + 2) +
                               " have different genus or length");
        auto r = compare_signatures(signature(chain[p]), signature(chain[p + 1])).relation;
        if (r != Relation::Equal && r != Relation::Less)
            throw domain_error("chain is not aligned at entries " + std::to_string(p + 1) + " and " +
                               std::to_string(p + 2) + " (" + to_string(r) + ")");
    }
}

/// Level of each basis element of the top complex: least p with the graph (g,A_p)-stable.
inline std::vector<int> filtration_levels(const std::vector<WeightDatum>& chain, int k, ComplexKind kind,
                                          const EnumerationOptions& opts = {})
{
    check_aligned(chain);
    const int g = chain.back().genus();
    std::vector<int> levels;
    for (const auto& c : generator_basis(chain.back(), k, kind, opts)) {
        int level = 0;
        for (std::size_t p = 0; p < chain.size(); ++p)
            if (is_stable(c.graph, g, chain[p])) {
                level = static_cast<int>(p + 1);
                break;
            }
        levels.push_back(level);
    }
    return levels;
}

} // namespace tropgc

#endif // TROPGC_ENUMERATION_HPP
