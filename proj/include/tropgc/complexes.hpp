#ifndef TROPGC_COMPLEXES_HPP
#define TROPGC_COMPLEXES_HPP

#include <tropgc/enumeration.hpp>
#include <tropgc/linalg.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tropgc {

enum class ChainKind { Graph, Cellular, APart, BPart, Relative };

inline const char* to_string(ChainKind k)
{
    switch (k) {
    case ChainKind::Graph: return "graph";
    case ChainKind::Cellular: return "cellular";
    case ChainKind::APart: return "a-part";
    case ChainKind::BPart: return "b-part";
    case ChainKind::Relative: return "relative";
    }
    return "?";
}

/// Cellular-style kinds are graded by p = |E| - 1, graph-style kinds by k = |E| - 2g.
inline bool is_cellular_grading(ChainKind k)
{
    return k == ChainKind::Cellular || k == ChainKind::APart || k == ChainKind::BPart;
}

/**
 * Finite chain complex over Q with a graph generator basis in each degree.
 * boundary(k) maps degree k to degree k-1 (rows: basis of k-1, columns: basis of k).
 */
class ChainComplex {
public:
    ChainComplex(ChainKind kind, int g, std::size_t n, int min_degree, int max_degree)
        : kind_(kind), g_(g), n_(n), min_(min_degree), max_(max_degree),
          basis_(static_cast<std::size_t>(std::max(0, max_degree - min_degree + 1))), index_(basis_.size())
    {
    }

    ChainKind kind() const { return kind_; }
    int genus() const { return g_; }
    std::size_t markings() const { return n_; }
    int min_degree() const { return min_; }
    int max_degree() const { return max_; }

    const std::vector<CanonicalGraph>& basis(int k) const
    {
        static const std::vector<CanonicalGraph> empty;
        return in_range(k) ? basis_[static_cast<std::size_t>(k - min_)] : empty;
    }

    std::size_t dim(int k) const { return basis(k).size(); }

    /// Index of a canonical encoding in the degree-k basis.
    std::optional<std::size_t> index_of(int k, const std::string& encoding) const
    {
        if (!in_range(k))
            return std::nullopt;
        const auto& idx = index_[static_cast<std::size_t>(k - min_)];
        auto it = idx.find(encoding);
        if (it == idx.end())
            return std::nullopt;
        return it->second;
    }

    RationalMatrix boundary(int k) const
    {
        auto it = boundary_.find(k);
        if (it != boundary_.end())
            return it->second;
        return RationalMatrix(dim(k - 1), dim(k));
    }

    void set_basis(int k, std::vector<CanonicalGraph> b)
    {
        if (!in_range(k))
            throw std::out_of_range("degree out of range");
        const auto i = static_cast<std::size_t>(k - min_);
        index_[i].clear();
        for (std::size_t j = 0; j < b.size(); ++j)
            index_[i].emplace(b[j].encoding, j);
        basis_[i] = std::move(b);
    }

    void set_boundary(int k, RationalMatrix d)
    {
        if (d.rows() != dim(k - 1) || d.cols() != dim(k))
            throw std::logic_error("boundary matrix shape does not match the bases");
        boundary_[k] = std::move(d);
    }

    /// Throws std::logic_error unless the composite of consecutive boundaries vanishes.
    void check_d_squared() const
    {
        for (int k = min_ + 1; k <= max_; ++k)
            if (!(boundary(k - 1) * boundary(k)).is_zero())
                throw std::logic_error("boundary squares to nonzero in degree " + std::to_string(k));
    }

    /// Graph-complex degree corresponding to degree k of this complex.
    int graph_degree(int k) const { return is_cellular_grading(kind_) ? k - 2 * g_ + 1 : k; }

private:
    bool in_range(int k) const { return k >= min_ && k <= max_; }

    ChainKind kind_;
    int g_;
    std::size_t n_;
    int min_;
    int max_;
    std::vector<std::vector<CanonicalGraph>> basis_;
    std::vector<std::unordered_map<std::string, std::size_t>> index_;
    std::map<int, RationalMatrix> boundary_;
};

struct BuildOptions {
    /// Use (-1)^(i+1) instead of (-1)^i for the i-th edge.
    bool flip_sign = false;
    EnumerationOptions enumeration;
};

namespace detail {

/// Boundary from degree k to k-1, given both bases. Terms landing outside the target basis are dropped
/// when drop_missing, otherwise they are an error.
inline RationalMatrix boundary_matrix(const ChainComplex& c, int k, bool contract_loops, bool flip_sign,
                                      bool drop_missing)
{
    std::vector<MatrixEntry> entries;
    const auto& src = c.basis(k);
    for (std::size_t col = 0; col < src.size(); ++col) {
        const auto& gr = src[col].graph;
        for (std::size_t e = 0; e < gr.edge_count(); ++e) {
            if (gr.edge(e).is_loop() && !contract_loops)
                continue;
            const auto face = canonicalize(contract_edge(gr, e));
            if (face.canonical.has_odd_edge_automorphism)
                continue;
            auto row = c.index_of(k - 1, face.canonical.encoding);
            if (!row) {
                if (drop_missing)
                    continue;
                throw std::logic_error("face " + face.canonical.encoding + " of " + src[col].encoding +
                                       " is missing from the basis");
            }
            const int i = static_cast<int>(e) + 1;
            int coeff = (i % 2 == 0) ? 1 : -1;
            if (flip_sign)
                coeff = -coeff;
            coeff *= permutation_sign(face.edge_map);
            entries.push_back({*row, col, Rational(coeff)});
        }
    }
    return RationalMatrix(c.dim(k - 1), c.dim(k), std::move(entries));
}

inline void fill_boundaries(ChainComplex& c, bool contract_loops, bool flip_sign, bool drop_missing)
{
    for (int k = c.min_degree() + 1; k <= c.max_degree(); ++k)
        c.set_boundary(k, boundary_matrix(c, k, contract_loops, flip_sign, drop_missing));
    c.check_d_squared();
}

} // namespace detail

/// Graph complex: pure stable graphs in degree |E| - 2g, differential over non-loop contractions.
inline ChainComplex build_graph_complex(const WeightDatum& a, const BuildOptions& opts = {})
{
    const int g = a.genus();
    const int lo = -g;
    const int hi = max_edges(g, a.size()) - 2 * g;
    ChainComplex c(ChainKind::Graph, g, a.size(), std::min(lo, hi), hi);
    for (int k = c.min_degree(); k <= c.max_degree(); ++k)
        if (edges_in_degree(ComplexKind::Graph, g, k) >= 0)
            c.set_basis(k, generator_basis(a, k, ComplexKind::Graph, opts.enumeration));
    detail::fill_boundaries(c, false, opts.flip_sign, false);
    return c;
}

/// Reduced cellular chains of Delta_{g,A}: all stable graphs with p+1 edges, including the 0-edge graph in degree -1.
inline ChainComplex build_cellular_complex(const WeightDatum& a, const BuildOptions& opts = {})
{
    const int g = a.genus();
    const int hi = max_edges(g, a.size()) - 1;
    if (hi < 0)
        throw domain_error("Delta is empty: no stable graph has an edge");
    ChainComplex c(ChainKind::Cellular, g, a.size(), -1, hi);
    for (int p = -1; p <= hi; ++p)
        c.set_basis(p, generator_basis(a, p, ComplexKind::Cellular, opts.enumeration));
    bool any = false;
    for (int p = 0; p <= hi; ++p)
        any |= !enumerate_stable_graphs(a, static_cast<std::size_t>(p + 1), false, opts.enumeration).classes.empty();
    if (!any)
        throw domain_error("Delta is empty: no stable graph has an edge");
    detail::fill_boundaries(c, true, opts.flip_sign, false);
    return c;
}

namespace detail {

inline ChainComplex restrict_complex(const ChainComplex& c, ChainKind kind,
                                     const std::map<int, std::vector<std::size_t>>& keep)
{
    ChainComplex out(kind, c.genus(), c.markings(), c.min_degree(), c.max_degree());
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
        std::vector<CanonicalGraph> b;
        for (auto i : keep.at(k))
            b.push_back(c.basis(k)[i]);
        out.set_basis(k, std::move(b));
    }
    for (int k = c.min_degree() + 1; k <= c.max_degree(); ++k)
        out.set_boundary(k, c.boundary(k).submatrix(keep.at(k - 1), keep.at(k)));
    out.check_d_squared();
    return out;
}

} // namespace detail

/**
 * Split cellular chains into the loopless pure part A and the rest B. Throws
 * std::logic_error if either part fails to be a subcomplex.
 */
inline std::pair<ChainComplex, ChainComplex> split_AB(const ChainComplex& c)
{
    if (c.kind() != ChainKind::Cellular)
        throw domain_error("split_AB expects a cellular complex");
    std::map<int, std::vector<std::size_t>> in_a, in_b;
    std::map<int, std::vector<bool>> is_a;
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
        auto& flags = is_a[k];
        in_a[k];
        in_b[k];
        for (std::size_t i = 0; i < c.dim(k); ++i) {
            const auto& gr = c.basis(k)[i].graph;
            const bool a = gr.is_pure() && !gr.has_loop();
            flags.push_back(a);
            (a ? in_a[k] : in_b[k]).push_back(i);
        }
    }
    for (int k = c.min_degree() + 1; k <= c.max_degree(); ++k)
        for (const auto& e : c.boundary(k).entries())
            if (is_a[k][e.col] != is_a[k - 1][e.row])
                throw std::logic_error("A/B split is not a direct sum in degree " + std::to_string(k));
    return {detail::restrict_complex(c, ChainKind::APart, in_a), detail::restrict_complex(c, ChainKind::BPart, in_b)};
}

/**
 * Quotient of the graph complex of upper by that of lower: generators stable
 * for upper but not for lower, with boundary components in the lower complex deleted.
 */
inline ChainComplex build_relative_complex(const WeightDatum& upper, const WeightDatum& lower,
                                           const BuildOptions& opts = {})
{
    if (upper.genus() != lower.genus() || upper.size() != lower.size())
        throw domain_error("upper and lower data have different genus or length");
    const auto r = compare_signatures(signature(lower), signature(upper)).relation;
    if (r != Relation::Equal && r != Relation::Less)
        throw domain_error("lower datum's chamber is not dominated by the upper one (" + std::string(to_string(r)) + ")");
    const auto full = build_graph_complex(upper, opts);
    std::map<int, std::vector<std::size_t>> keep;
    for (int k = full.min_degree(); k <= full.max_degree(); ++k)
        for (std::size_t i = 0; i < full.dim(k); ++i)
            if (!is_stable(full.basis(k)[i].graph, upper.genus(), lower))
                keep[k].push_back(i);
    for (int k = full.min_degree(); k <= full.max_degree(); ++k)
        keep[k];
    return detail::restrict_complex(full, ChainKind::Relative, keep);
}

struct HomologyReport {
    ChainKind kind = ChainKind::Graph;
    int g = 0;
    std::size_t n = 0;
    std::map<int, std::size_t> dims;
    std::map<int, std::size_t> betti;

    /// Graph-complex degree k for this complex's degree.
    int graph_degree(int degree) const { return is_cellular_grading(kind) ? degree - 2 * g + 1 : degree; }
    /// Cohomological degree 4g-6+2n-k of the top-weight label.
    int cohomological_degree(int degree) const { return 4 * g - 6 + 2 * static_cast<int>(n) - graph_degree(degree); }
    /// Weight 6g-6+2n of the top-weight label.
    int top_weight() const { return 6 * g - 6 + 2 * static_cast<int>(n); }
    /// Degree of the (reduced or relative) homology of Delta.
    int delta_degree(int degree) const { return graph_degree(degree) + 2 * g - 1; }
};

/// Betti numbers over Q; asserts that the boundary squares to zero.
inline HomologyReport homology(const ChainComplex& c)
{
    c.check_d_squared();
    HomologyReport rep{c.kind(), c.genus(), c.markings(), {}, {}};
    std::map<int, std::size_t> ranks;
    for (int k = c.min_degree(); k <= c.max_degree() + 1; ++k)
        ranks[k] = rank(c.boundary(k));
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
        rep.dims[k] = c.dim(k);
        rep.betti[k] = c.dim(k) - ranks[k] - ranks[k + 1];
    }
    return rep;
}

} // namespace tropgc

#endif // TROPGC_COMPLEXES_HPP
