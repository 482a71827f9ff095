#ifndef TROPGC_RATIONAL_HPP
#define TROPGC_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tropgc {

using Integer = boost::multiprecision::mpz_int;

/// Exact rational number, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;

/// Thrown when user-provided text (rational literals, encodings, JSON) is malformed.
class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when well-formed input lies outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

namespace detail {

inline bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

} // namespace detail

/**
 * Parse a rational literal of the form "p/q" or "p".
 *
 * p is a decimal integer with an optional leading '-', q a positive decimal
 * integer. Whitespace is not accepted anywhere.
 */
inline Rational parse_rational(std::string_view text)
{
    std::string_view num = text;
    std::string_view den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (!detail::all_digits(den))
            throw parse_error("invalid rational literal '" + std::string(text) + "'");
    }
    std::string_view digits = num;
    if (!digits.empty() && digits.front() == '-')
        digits.remove_prefix(1);
    if (!detail::all_digits(digits))
        throw parse_error("invalid rational literal '" + std::string(text) + "'");

    Integer p{std::string(num)};
    Integer q = den.empty() ? Integer(1) : Integer(std::string(den));
    if (q == 0)
        throw parse_error("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
}

/// Parse a comma-separated list of rational literals, e.g. "1/3,1/3,33/100".
inline std::vector<Rational> parse_rational_list(std::string_view text)
{
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q)
{
    if (denominator_of(q) == 1)
        return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const std::vector<Rational>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ',';
        out += to_string(v[i]);
    }
    return out;
}

} // namespace tropgc

#endif // TROPGC_RATIONAL_HPP
