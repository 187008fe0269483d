// Exact rational coordinates and small helpers around GMP's mpq_class.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tmesh {

/// Exact rational number. mpq_class keeps values canonical (reduced,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

class BadRational : public std::invalid_argument {
public:
    explicit BadRational(const std::string& text)
        : std::invalid_argument("BadRational: cannot parse '" + text + "'") {}
    BadRational(const std::string& text, int line)
        : std::invalid_argument("BadRational: line " + std::to_string(line) + ": cannot parse '" + text + "'") {}
};

namespace detail {

inline bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

inline bool signed_digits(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return all_digits(s);
}

} // namespace detail

/// Parses an integer ("3"), a decimal ("-0.25") or a fraction ("7/3").
inline Rational parse_rational(std::string_view text)
{
    const std::string owned(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!detail::signed_digits(num) || !detail::all_digits(den)) throw BadRational(owned);
        Integer d(std::string(den), 10);
        if (d == 0) throw BadRational(owned);
        std::string n(num);
        if (!n.empty() && n.front() == '+') n.erase(0, 1);
        Rational q(Integer(n, 10), d);
        q.canonicalize();
        return q;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole.front() == '-';
        if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
        if ((!whole.empty() && !detail::all_digits(whole)) || (!frac.empty() && !detail::all_digits(frac))
            || (whole.empty() && frac.empty()))
            throw BadRational(owned);
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        Rational q(negative ? Integer(-digits) : digits, scale);
        q.canonicalize();
        return q;
    }
    if (!detail::signed_digits(text)) throw BadRational(owned);
    std::string n(text);
    if (n.front() == '+') n.erase(0, 1);
    return Rational(Integer(n, 10));
}

/// `p/q`, or just `p` when the denominator is 1.
inline std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational binomial(unsigned n, unsigned k)
{
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return Rational(out);
}

inline Rational power(const Rational& base, unsigned exponent)
{
    Rational out = 1;
    for (unsigned i = 0; i < exponent; ++i) out *= base;
    return out;
}

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace tmesh
