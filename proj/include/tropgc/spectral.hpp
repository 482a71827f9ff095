#ifndef TROPGC_SPECTRAL_HPP
#define TROPGC_SPECTRAL_HPP

#include <tropgc/complexes.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tropgc {

struct AlignedChain {
    std::vector<WeightDatum> data;
    /// permutations[p] turns raw entry p into data[p]; the last one is the identity.
    std::vector<Permutation> permutations;
};

/**
 * Relabel a chain of weight data so that consecutive signatures are dominated.
 * The last entry is kept; each earlier entry is permuted by the first witness
 * comparing it with the already aligned successor.
 */
inline AlignedChain align_chain(const std::vector<WeightDatum>& raw)
{
    if (raw.empty())
        throw domain_error("empty chain of weight data");
    AlignedChain out{std::vector<WeightDatum>(raw), std::vector<Permutation>(raw.size())};
    out.permutations.back() = identity_permutation(raw.back().size());
    for (std::size_t p = raw.size() - 1; p-- > 0;) {
        const auto r = compare_up_to_symmetry(raw[p], out.data[p + 1]);
        if (r.relation != Relation::Equal && r.relation != Relation::Less)
            throw domain_error("chain entries " + std::to_string(p + 1) + " and " + std::to_string(p + 2) +
                               " compare as " + to_string(r.relation));
        out.data[p] = apply_permutation(*r.witness, raw[p]);
        out.permutations[p] = *r.witness;
    }
    return out;
}

/// Pages E^r_{p,q} for r = page, or E^infinity when page < 0. Keys are (p, q).
struct PageTable {
    int r = 0;
    std::map<std::pair<int, int>, std::size_t> dims;

    std::size_t at(int p, int q) const
    {
        auto it = dims.find({p, q});
        return it == dims.end() ? 0 : it->second;
    }
};

/**
 * Graph complex of the last datum of an aligned chain, filtered by the level
 * of each generator (the first index at which it is stable).
 */
class FilteredComplex {
public:
    explicit FilteredComplex(std::vector<WeightDatum> chain, const BuildOptions& opts = {})
        : chain_(std::move(chain)), base_(check(chain_, opts))
    {
        const int g = base_.genus();
        for (int k = base_.min_degree(); k <= base_.max_degree(); ++k) {
            auto& lv = levels_[k];
            for (const auto& c : base_.basis(k)) {
                int level = 0;
                for (std::size_t p = 0; p < chain_.size() && level == 0; ++p)
                    if (is_stable(c.graph, g, chain_[p]))
                        level = static_cast<int>(p + 1);
                lv.push_back(level);
            }
        }
        for (int k = base_.min_degree() + 1; k <= base_.max_degree(); ++k) {
            transposed_[k] = base_.boundary(k).transpose();
            for (const auto& e : base_.boundary(k).entries())
                if (levels_[k - 1][e.row] > levels_[k][e.col])
                    throw std::logic_error("differential does not preserve the filtration in degree " +
                                           std::to_string(k));
        }
    }

    const ChainComplex& base() const { return base_; }
    const std::vector<WeightDatum>& chain() const { return chain_; }
    int length() const { return static_cast<int>(chain_.size()); }

    int level(int k, std::size_t i) const { return levels_.at(k).at(i); }

    const std::vector<int>& levels(int k) const
    {
        static const std::vector<int> empty;
        auto it = levels_.find(k);
        return it == levels_.end() ? empty : it->second;
    }

    /// dim E^r_{p,q} = dim Z - dim(Z meet W) with Z = {x in F_p : dx in F_{p-r}}, W = F_{p-1} + d(F_{p+r-1}).
    std::size_t page_dim(int r, int p, int q) const
    {
        if (r < 0)
            throw domain_error("page index must be nonnegative");
        const int k = p + q;
        const auto& lv = levels(k);
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < lv.size(); ++i)
            if (lv[i] <= p)
                cols.push_back(i);
        if (cols.empty())
            return 0;

        const auto& lv_below = levels(k - 1);
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < lv_below.size(); ++i)
            if (lv_below[i] > p - r)
                rows.push_back(i);

        std::vector<SparseVector> z;
        for (auto& v : kernel_basis_sparse(base_.boundary(k).submatrix(rows, cols))) {
            for (auto& [idx, val] : v)
                idx = cols[idx];
            std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            z.push_back(std::move(v));
        }
        if (z.empty())
            return 0;

        std::vector<SparseVector> w;
        for (std::size_t i = 0; i < lv.size(); ++i)
            if (lv[i] <= p - 1)
                w.push_back({{i, Rational(1)}});
        const auto& lv_above = levels(k + 1);
        auto t = transposed_.find(k + 1);
        if (t != transposed_.end())
            for (std::size_t j = 0; j < lv_above.size(); ++j)
                if (lv_above[j] <= p + r - 1 && !t->second.row(j).empty())
                    w.push_back(t->second.row(j));

        const auto d = subspace_dims(z, w, lv.size());
        return d.dim_u - d.dim_intersection;
    }

    /// All E^r_{p,q} with 1 <= p <= N and p+q within the complex's degrees.
    PageTable page_table(int r) const
    {
        PageTable t{r, {}};
        for (int p = 1; p <= length(); ++p)
            for (int k = base_.min_degree(); k <= base_.max_degree(); ++k)
                t.dims[{p, k - p}] = page_dim(r, p, k - p);
        return t;
    }

    /// Page at which E^r_{p,q} is known to have stabilized.
    int stable_page(int p) const { return std::max(p, length() - p + 1); }

    /// E^infinity by the stabilization bound; throws std::logic_error if page r+1 differs.
    PageTable infinity_table() const
    {
        PageTable t{-1, {}};
        for (int p = 1; p <= length(); ++p)
            for (int k = base_.min_degree(); k <= base_.max_degree(); ++k) {
                const int r = stable_page(p);
                const auto d = page_dim(r, p, k - p);
                if (page_dim(r + 1, p, k - p) != d)
                    throw std::logic_error("page E^" + std::to_string(r) + "_{" + std::to_string(p) + "," +
                                           std::to_string(k - p) + "} is not stationary");
                t.dims[{p, k - p}] = d;
            }
        return t;
    }

private:
    static ChainComplex check(const std::vector<WeightDatum>& chain, const BuildOptions& opts)
    {
        check_aligned(chain);
        return build_graph_complex(chain.back(), opts);
    }

    std::vector<WeightDatum> chain_;
    ChainComplex base_;
    std::map<int, std::vector<int>> levels_;
    std::map<int, RationalMatrix> transposed_;
};

struct DecompositionRow {
    int degree;                  // graph-complex degree k
    std::size_t einfinity_sum;   // sum over p of E^infinity_{p,k-p}
    std::size_t betti;           // Betti_k of the top complex
    int cohomological_degree;    // 4g-6+2n-k
};

struct LowerBound {
    int p;
    int q;
    int cohomological_degree;
    int weight;
    std::size_t dim;
};

struct DecompositionReport {
    std::vector<DecompositionRow> rows;
    std::vector<LowerBound> lower_bounds;
    bool ok = true;
    /// False for g = 0 or n < 2, where the decomposition theorem is not claimed.
    bool within_hypotheses = true;
};

/// Compares sum_p E^infinity_{p,k-p} with Betti_k in every degree; throws std::logic_error on mismatch.
inline DecompositionReport decomposition_report(const FilteredComplex& f)
{
    const auto inf = f.infinity_table();
    const auto h = homology(f.base());
    DecompositionReport rep;
    rep.within_hypotheses = f.base().genus() >= 1 && f.base().markings() >= 2;
    for (int k = f.base().min_degree(); k <= f.base().max_degree(); ++k) {
        std::size_t sum = 0;
        for (int p = 1; p <= f.length(); ++p) {
            const auto d = inf.at(p, k - p);
            sum += d;
            if (d > 0)
                rep.lower_bounds.push_back({p, k - p, h.cohomological_degree(k), h.top_weight(), d});
        }
        rep.rows.push_back({k, sum, h.betti.at(k), h.cohomological_degree(k)});
        if (sum != h.betti.at(k))
            rep.ok = false;
    }
    if (!rep.ok)
        throw std::logic_error("spectral sequence does not add up to the homology of the top complex");
    return rep;
}

/// True iff E^1_{p,q} equals H_{p+q} of the relative complex (A_p, A_{p-1}) for all p, q.
inline bool e1_relative_check(const FilteredComplex& f, const BuildOptions& opts = {})
{
    const auto& chain = f.chain();
    for (int p = 1; p <= f.length(); ++p) {
        const auto rel = p == 1 ? build_graph_complex(chain[0], opts)
                                : build_relative_complex(chain[p - 1], chain[p - 2], opts);
        const auto h = homology(rel);
        for (int k = f.base().min_degree(); k <= f.base().max_degree(); ++k) {
            const auto it = h.betti.find(k);
            const std::size_t b = it == h.betti.end() ? 0 : it->second;
            if (f.page_dim(1, p, k - p) != b)
                return false;
        }
    }
    return true;
}

} // namespace tropgc

#endif // TROPGC_SPECTRAL_HPP
