#ifndef TROPGC_FOURIER_MOTZKIN_HPP
#define TROPGC_FOURIER_MOTZKIN_HPP

#include <tropgc/rational.hpp>

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace tropgc {

/// Linear inequality  coeffs . x  <  rhs  (strict) or  <=  rhs.
struct LinearInequality {
    std::vector<Rational> coeffs;
    Rational rhs;
    bool strict = true;
};

namespace detail {

struct FmSystem {
    // Normalized left-hand side -> (rhs, strict), keeping only the tightest bound.
    std::map<std::vector<Rational>, std::pair<Rational, bool>> rows;
    bool contradiction = false;

    void add(std::vector<Rational> coeffs, Rational rhs, bool strict)
    {
        std::size_t lead = 0;
        while (lead < coeffs.size() && coeffs[lead] == 0)
            ++lead;
        if (lead == coeffs.size()) {
            if (strict ? !(0 < rhs) : !(0 <= rhs))
                contradiction = true;
            return;
        }
        const Rational scale = abs(coeffs[lead]);
        for (auto& c : coeffs)
            c /= scale;
        rhs /= scale;
        auto [it, inserted] = rows.try_emplace(std::move(coeffs), rhs, strict);
        if (inserted)
            return;
        auto& [b, s] = it->second;
        if (rhs < b || (rhs == b && strict && !s)) {
            b = rhs;
            s = strict;
        }
    }
};

} // namespace detail

/**
 * Decide whether a system of strict and non-strict linear inequalities over Q
 * has a solution, by Fourier-Motzkin elimination in exact arithmetic.
 */
inline bool fm_feasible(const std::vector<LinearInequality>& system, std::size_t dimension)
{
    detail::FmSystem cur;
    for (const auto& ineq : system) {
        std::vector<Rational> c = ineq.coeffs;
        c.resize(dimension);
        cur.add(std::move(c), ineq.rhs, ineq.strict);
        if (cur.contradiction)
            return false;
    }
    for (std::size_t k = 0; k < dimension; ++k) {
        std::vector<const std::pair<const std::vector<Rational>, std::pair<Rational, bool>>*> pos, neg;
        detail::FmSystem next;
        for (const auto& row : cur.rows) {
            const Rational& c = row.first[k];
            if (c > 0)
                pos.push_back(&row);
            else if (c < 0)
                neg.push_back(&row);
            else
                next.add(row.first, row.second.first, row.second.second);
        }
        for (const auto* p : pos)
            for (const auto* q : neg) {
                // Leading coefficients are normalized to +-1 only for the first
                // nonzero entry, so scale explicitly.
                const Rational cp = p->first[k];
                const Rational cq = -q->first[k];
                std::vector<Rational> c(dimension);
                for (std::size_t i = 0; i < dimension; ++i)
                    c[i] = p->first[i] * cq + q->first[i] * cp;
                Rational rhs = p->second.first * cq + q->second.first * cp;
                next.add(std::move(c), std::move(rhs), p->second.second || q->second.second);
                if (next.contradiction)
                    return false;
            }
        if (next.contradiction)
            return false;
        cur = std::move(next);
    }
    return !cur.contradiction;
}

} // namespace tropgc

#endif // TROPGC_FOURIER_MOTZKIN_HPP
