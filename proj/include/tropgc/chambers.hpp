#ifndef TROPGC_CHAMBERS_HPP
#define TROPGC_CHAMBERS_HPP

#include <tropgc/fourier_motzkin.hpp>
#include <tropgc/rational.hpp>

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropgc {

/// Subset of {1..n} as a bitmask: bit i-1 set iff i is in the subset.
using Subset = std::uint32_t;

/// Permutation of {1..n} in one-line notation: sigma[i-1] = sigma(i).
using Permutation = std::vector<int>;

inline constexpr std::size_t max_markings = 20;

inline std::string subset_string(Subset s)
{
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if (s >> i & 1u) {
            if (!first)
                out += ',';
            out += std::to_string(i + 1);
            first = false;
        }
    return out + "}";
}

inline Permutation identity_permutation(std::size_t n)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), 1);
    return p;
}

inline void check_permutation(const Permutation& sigma, std::size_t n)
{
    if (sigma.size() != n)
        throw domain_error("permutation has size " + std::to_string(sigma.size()) + ", expected " +
                           std::to_string(n));
    std::vector<bool> seen(n + 1, false);
    for (int v : sigma) {
        if (v < 1 || static_cast<std::size_t>(v) > n || seen[v])
            throw domain_error("not a permutation of {1.." + std::to_string(n) + "}");
        seen[v] = true;
    }
}

inline Permutation inverse_permutation(const Permutation& sigma)
{
    Permutation inv(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i)
        inv[sigma[i] - 1] = static_cast<int>(i + 1);
    return inv;
}

/// (sigma * tau)(i) = sigma(tau(i)).
inline Permutation compose(const Permutation& sigma, const Permutation& tau)
{
    if (sigma.size() != tau.size())
        throw domain_error("cannot compose permutations of different sizes");
    Permutation out(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i)
        out[i] = sigma[tau[i] - 1];
    return out;
}

/// Image sigma(S).
inline Subset image_of(const Permutation& sigma, Subset s)
{
    Subset out = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (s >> i & 1u)
            out |= Subset{1} << (sigma[i] - 1);
    return out;
}

/// Weight datum (g; a_1..a_n) with 0 < a_i <= 1 and 2g - 2 + sum a_i > 0.
class WeightDatum {
public:
    WeightDatum(int g, std::vector<Rational> entries) : g_(g), a_(std::move(entries))
    {
        if (g_ < 0)
            throw domain_error("genus must be nonnegative");
        if (a_.empty())
            throw domain_error("weight datum needs at least one entry");
        if (a_.size() > max_markings)
            throw domain_error("at most " + std::to_string(max_markings) + " markings are supported");
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!(a_[i] > 0 && a_[i] <= 1))
                throw domain_error("weight a_" + std::to_string(i + 1) + " = " + to_string(a_[i]) +
                                   " is outside (0,1]");
        if (!(2 * g_ - 2 + total() > 0))
            throw domain_error("2g-2+sum(a) = " + to_string(2 * g_ - 2 + total()) + " is not positive");
    }

    int genus() const { return g_; }
    std::size_t size() const { return a_.size(); }
    const Rational& operator[](std::size_t i) const { return a_.at(i); }
    const std::vector<Rational>& entries() const { return a_; }

    Rational total() const { return std::accumulate(a_.begin(), a_.end(), Rational(0)); }

    /// True when 2g-2+sum(a) lies in (0,1]: accepted, but excluded by the stricter bound of the introduction.
    bool below_intro_bound() const { return 2 * g_ - 2 + total() <= 1; }

    bool operator==(const WeightDatum&) const = default;

private:
    int g_;
    std::vector<Rational> a_;
};

inline std::string to_string(const WeightDatum& a) { return to_string(a.entries()); }

/// Walls S of the fine chamber decomposition, ordered by size then lexicographically.
struct WallSet {
    std::vector<Subset> subsets;
    std::vector<int> index; // mask -> position in subsets, or -1
};

inline const WallSet& wall_set(int g, std::size_t n)
{
    if (n > max_markings)
        throw domain_error("at most " + std::to_string(max_markings) + " markings are supported");
    static std::mutex mu;
    static std::map<std::pair<bool, std::size_t>, std::unique_ptr<WallSet>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{g == 0, n}];
    if (!slot) {
        slot = std::make_unique<WallSet>();
        slot->index.assign(std::size_t{1} << n, -1);
        const std::size_t max_size = g == 0 ? (n >= 2 ? n - 2 : 0) : n;
        for (std::size_t k = 2; k <= max_size; ++k) {
            std::vector<std::size_t> idx(k);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                Subset s = 0;
                for (auto i : idx)
                    s |= Subset{1} << i;
                slot->index[s] = static_cast<int>(slot->subsets.size());
                slot->subsets.push_back(s);
                std::size_t j = k;
                while (j > 0 && idx[j - 1] == n - k + j - 1)
                    --j;
                if (j == 0)
                    break;
                ++idx[j - 1];
                for (std::size_t t = j; t < k; ++t)
                    idx[t] = idx[t - 1] + 1;
            }
        }
    }
    return *slot;
}

enum class Sign : std::uint8_t { Minus, Plus };

inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// Signs of all walls, indexed in wall_set order.
struct ChamberSignature {
    int g = 1;
    std::size_t n = 0;
    std::vector<Sign> signs;

    const std::vector<Subset>& walls() const { return wall_set(g, n).subsets; }

    Sign sign_of(Subset s) const
    {
        const int i = wall_set(g, n).index.at(s);
        if (i < 0)
            throw std::out_of_range("subset " + subset_string(s) + " is not a wall");
        return signs[static_cast<std::size_t>(i)];
    }

    /// Signatures depend on g only through whether g = 0.
    bool same_walls(const ChamberSignature& o) const { return (g == 0) == (o.g == 0) && n == o.n; }

    bool operator==(const ChamberSignature& o) const { return same_walls(o) && signs == o.signs; }

    std::string compact() const
    {
        std::string s;
        for (auto x : signs)
            s += sign_char(x);
        return s;
    }
};

/// Stable 64-bit FNV-1a hash of a signature.
inline std::uint64_t signature_hash(const ChamberSignature& s)
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t byte) {
        h ^= byte;
        h *= 1099511628211ull;
    };
    mix(s.g == 0 ? 0 : 1);
    mix(s.n);
    for (auto x : s.signs)
        mix(static_cast<std::uint64_t>(x) + 2);
    return h;
}

namespace detail {

/// All subset sums of a, built incrementally: sum(S) = sum(S minus its top element) + a_top.
inline std::vector<Rational> subset_sums(const std::vector<Rational>& a, std::uint64_t* additions = nullptr)
{
    const std::size_t full = std::size_t{1} << a.size();
    std::vector<Rational> sums(full);
    for (std::size_t s = 1; s < full; ++s) {
        const int top = std::bit_width(s) - 1;
        const std::size_t rest = s & ~(std::size_t{1} << top);
        if (rest == 0) {
            sums[s] = a[top];
        } else {
            sums[s] = sums[rest] + a[top];
            if (additions)
                ++*additions;
        }
    }
    return sums;
}

} // namespace detail

/// Sign of each wall: Plus iff the sum over S exceeds 1 (points on a wall count as Minus).
inline ChamberSignature signature(const WeightDatum& a)
{
    const auto sums = detail::subset_sums(a.entries());
    ChamberSignature sig{a.genus(), a.size(), {}};
    for (Subset s : wall_set(a.genus(), a.size()).subsets)
        sig.signs.push_back(sums[s] > 1 ? Sign::Plus : Sign::Minus);
    return sig;
}

/// Entry i of the result is a_{sigma(i)}.
inline WeightDatum apply_permutation(const Permutation& sigma, const WeightDatum& a)
{
    check_permutation(sigma, a.size());
    std::vector<Rational> out;
    out.reserve(a.size());
    for (int v : sigma)
        out.push_back(a[v - 1]);
    return WeightDatum(a.genus(), std::move(out));
}

/// Signature of sigma(A) given that of A: sign at S is the old sign at sigma(S).
inline ChamberSignature permute_signature(const Permutation& sigma, const ChamberSignature& s)
{
    check_permutation(sigma, s.n);
    ChamberSignature out{s.g, s.n, {}};
    out.signs.reserve(s.signs.size());
    for (Subset w : s.walls())
        out.signs.push_back(s.sign_of(image_of(sigma, w)));
    return out;
}

enum class Relation { Equal, Less, Greater, Incomparable };

inline const char* to_string(Relation r)
{
    switch (r) {
    case Relation::Equal: return "Equal";
    case Relation::Less: return "Less";
    case Relation::Greater: return "Greater";
    case Relation::Incomparable: return "Incomparable";
    }
    return "?";
}

inline Relation reversed(Relation r)
{
    if (r == Relation::Less)
        return Relation::Greater;
    if (r == Relation::Greater)
        return Relation::Less;
    return r;
}

struct OrderResult {
    Relation relation = Relation::Incomparable;
    std::optional<Permutation> witness;
    std::uint64_t permutations_examined = 0;
    std::uint64_t permutations_skipped = 0;
    std::uint64_t wall_evaluations = 0;
    std::uint64_t sums_computed = 0;
};

/// Compare two signatures on the same walls; the witness is the identity.
inline OrderResult compare_signatures(const ChamberSignature& s1, const ChamberSignature& s2)
{
    if (!s1.same_walls(s2))
        throw domain_error("signatures are over different wall sets");
    bool less = false, greater = false;
    for (std::size_t i = 0; i < s1.signs.size(); ++i) {
        if (s1.signs[i] == Sign::Minus && s2.signs[i] == Sign::Plus)
            less = true;
        else if (s1.signs[i] == Sign::Plus && s2.signs[i] == Sign::Minus)
            greater = true;
    }
    OrderResult r;
    r.wall_evaluations = s1.signs.size();
    if (less && greater)
        return r;
    r.relation = less ? Relation::Less : greater ? Relation::Greater : Relation::Equal;
    r.witness = identity_permutation(s1.n);
    return r;
}

struct CompareOptions {
    /// Skip permutations that only reorder equal entries of a; the first witness is unchanged.
    bool prune = true;
};

/**
 * Compare the chambers of a and b up to the S_n action.
 *
 * Permutations are visited in lexicographic order of their one-line notation;
 * the first sigma for which signature(sigma(a)) and signature(b) are Equal,
 * Less or Greater is returned as witness. Incomparable means no permutation
 * relates them.
 */
inline OrderResult compare_up_to_symmetry(const WeightDatum& a, const WeightDatum& b, CompareOptions opts = {})
{
    if (a.genus() != b.genus())
        throw domain_error("weight data have different genera");
    if (a.size() != b.size())
        throw domain_error("weight data have different lengths");
    const std::size_t n = a.size();
    const auto& walls = wall_set(a.genus(), n).subsets;

    OrderResult result;
    const auto sums = detail::subset_sums(a.entries(), &result.sums_computed);
    std::vector<bool> plus_a(sums.size());
    for (std::size_t s = 0; s < sums.size(); ++s)
        plus_a[s] = sums[s] > 1;
    const ChamberSignature sig_b = signature(b);

    // Tie classes of a, for pruning.
    std::vector<int> cls(n);
    for (std::size_t i = 0; i < n; ++i) {
        cls[i] = static_cast<int>(i);
        for (std::size_t j = 0; j < i; ++j)
            if (a[j] == a[i]) {
                cls[i] = cls[j];
                break;
            }
    }

    Permutation sigma = identity_permutation(n);
    do {
        if (opts.prune) {
            bool canonical = true;
            for (std::size_t k = 0; k < n && canonical; ++k)
                for (std::size_t l = k + 1; l < n; ++l)
                    if (cls[sigma[k] - 1] == cls[sigma[l] - 1] && sigma[k] > sigma[l]) {
                        canonical = false;
                        break;
                    }
            if (!canonical) {
                ++result.permutations_skipped;
                continue;
            }
        }
        ++result.permutations_examined;
        bool less = false, greater = false;
        for (std::size_t w = 0; w < walls.size(); ++w) {
            const bool pa = plus_a[image_of(sigma, walls[w])];
            const bool pb = sig_b.signs[w] == Sign::Plus;
            less |= !pa && pb;
            greater |= pa && !pb;
        }
        result.wall_evaluations += walls.size();
        if (!(less && greater)) {
            result.relation = less ? Relation::Less : greater ? Relation::Greater : Relation::Equal;
            result.witness = sigma;
            return result;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return result;
}

namespace detail {

inline std::vector<LinearInequality> domain_constraints(int g, std::size_t n)
{
    std::vector<LinearInequality> sys;
    for (std::size_t i = 0; i < n; ++i) {
        LinearInequality lo{std::vector<Rational>(n), Rational(0), true};
        lo.coeffs[i] = -1;
        sys.push_back(lo);
        LinearInequality hi{std::vector<Rational>(n), Rational(1), false};
        hi.coeffs[i] = 1;
        sys.push_back(hi);
    }
    if (g == 0)
        sys.push_back({std::vector<Rational>(n, Rational(-1)), Rational(-2), true});
    return sys;
}

inline LinearInequality wall_constraint(Subset s, Sign sign, std::size_t n)
{
    LinearInequality ineq{std::vector<Rational>(n), Rational(sign == Sign::Plus ? -1 : 1), true};
    for (std::size_t i = 0; i < n; ++i)
        if (s >> i & 1u)
            ineq.coeffs[i] = sign == Sign::Plus ? -1 : 1;
    return ineq;
}

inline bool prefix_feasible(int g, std::size_t n, const std::vector<Subset>& walls, const std::vector<Sign>& signs)
{
    auto sys = domain_constraints(g, n);
    for (std::size_t i = 0; i < signs.size(); ++i)
        sys.push_back(wall_constraint(walls[i], signs[i], n));
    return fm_feasible(sys, n);
}

} // namespace detail

/// True iff some point of D_{g,n} off every wall realizes the signature.
inline bool is_feasible(const ChamberSignature& s)
{
    const auto& walls = s.walls();
    if (s.signs.size() != walls.size())
        throw domain_error("signature has the wrong number of walls");
    return detail::prefix_feasible(s.g, s.n, walls, s.signs);
}

inline constexpr std::size_t chamber_enumeration_cap = 5;

struct ChamberEnumeration {
    std::vector<ChamberSignature> chambers;
    /// Index of the first chamber in the same S_n orbit.
    std::vector<std::size_t> orbit_rep;

    std::size_t orbit_count() const
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < orbit_rep.size(); ++i)
            c += orbit_rep[i] == i;
        return c;
    }
};

/**
 * All nonempty chambers of D_{g,n}, by depth-first search over the walls with
 * monotonicity and exact feasibility pruning. Minus is tried before Plus.
 */
inline ChamberEnumeration enumerate_chambers(int g, std::size_t n)
{
    if (g < 0)
        throw domain_error("genus must be nonnegative");
    if (n < 1 || n > chamber_enumeration_cap)
        throw domain_error("chamber enumeration supports 1 <= n <= " + std::to_string(chamber_enumeration_cap));
    const auto& ws = wall_set(g, n);
    ChamberEnumeration out;
    std::vector<Sign> cur;

    auto dfs = [&](auto& self) -> void {
        if (cur.size() == ws.subsets.size()) {
            out.chambers.push_back({g, n, cur});
            return;
        }
        const Subset s = ws.subsets[cur.size()];
        bool forced_plus = false;
        for (std::size_t i = 0; i < n; ++i) {
            const Subset sub = s & ~(Subset{1} << i);
            if (sub != s && ws.index[sub] >= 0 && cur[ws.index[sub]] == Sign::Plus)
                forced_plus = true;
        }
        for (Sign sign : {Sign::Minus, Sign::Plus}) {
            if (forced_plus && sign == Sign::Minus)
                continue;
            cur.push_back(sign);
            if (detail::prefix_feasible(g, n, ws.subsets, cur))
                self(self);
            cur.pop_back();
        }
    };
    if (detail::prefix_feasible(g, n, ws.subsets, cur))
        dfs(dfs);

    std::map<std::vector<Sign>, std::size_t> index;
    for (std::size_t i = 0; i < out.chambers.size(); ++i)
        index.emplace(out.chambers[i].signs, i);
    out.orbit_rep.assign(out.chambers.size(), SIZE_MAX);
    for (std::size_t i = 0; i < out.chambers.size(); ++i) {
        if (out.orbit_rep[i] != SIZE_MAX)
            continue;
        Permutation sigma = identity_permutation(n);
        do {
            const auto img = permute_signature(sigma, out.chambers[i]);
            out.orbit_rep.at(index.at(img.signs)) = i;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return out;
}

namespace detail {

inline void require_positive_genus(int g, const char* what)
{
    if (g < 1)
        throw domain_error(std::string(what) + " requires g >= 1");
}

inline void require_markings(std::size_t n)
{
    if (n < 1 || n > max_markings)
        throw domain_error("number of markings must lie in [1," + std::to_string(max_markings) + "]");
}

} // namespace detail

/// epsilon^(n) with epsilon = 1/(2n): the minimal chamber.
inline WeightDatum make_minimal(int g, std::size_t n)
{
    detail::require_positive_genus(g, "minimal datum");
    detail::require_markings(n);
    return WeightDatum(g, std::vector<Rational>(n, Rational(1, 2 * static_cast<long>(n))));
}

/// (1/n + 1/(2n^2))^(n): just above every wall of size n.
inline WeightDatum make_F(int g, std::size_t n)
{
    detail::require_positive_genus(g, "F datum");
    detail::require_markings(n);
    const long nn = static_cast<long>(n);
    return WeightDatum(g, std::vector<Rational>(n, Rational(1, nn) + Rational(1, 2 * nn * nn)));
}

/// Floor H_l = (1/l + 1/(2ln))^(n): Plus exactly on subsets of size >= l.
inline WeightDatum make_floor(int g, std::size_t n, std::size_t l)
{
    detail::require_positive_genus(g, "floor datum");
    detail::require_markings(n);
    if (l < 2 || l > n)
        throw domain_error("floor index l must satisfy 2 <= l <= n");
    const long nn = static_cast<long>(n), ll = static_cast<long>(l);
    return WeightDatum(g, std::vector<Rational>(n, Rational(1, ll) + Rational(1, 2 * ll * nn)));
}

/// (1^(m), epsilon^(n-m)) with epsilon = 1/(2n).
inline WeightDatum make_heavy_light(int g, std::size_t n, std::size_t m)
{
    detail::require_markings(n);
    if (m > n)
        throw domain_error("heavy count m must satisfy 0 <= m <= n");
    if (g == 0 && m < 2)
        throw domain_error("genus 0 needs at least two heavy points");
    if (g < 0)
        throw domain_error("genus must be nonnegative");
    std::vector<Rational> a(n, Rational(1, 2 * static_cast<long>(n)));
    std::fill(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(m), Rational(1));
    return WeightDatum(g, std::move(a));
}

} // namespace tropgc

#endif // TROPGC_CHAMBERS_HPP
