// SPDX-License-Identifier: MIT
//
// Scalar abstraction shared by every solver: the same templates run in exact
// rational arithmetic (closed forms, the canonical 3-state market) or in
// binary64 (generic solvers). Comparisons go through ScalarTraits so that
// rationals compare exactly and doubles compare with a scaled tolerance.
#pragma once

#include "effico/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <type_traits>
#include <vector>

namespace effico {

/// Exact rational; expression templates off so that mixed expressions
/// behave like ordinary values in generic code.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr double default_tol = 1e-12;

    static double to_double(double v) { return v; }
    static double from_ratio(long long num, long long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double from_double(double v) { return v; }
    static std::string to_string(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.15g", v);
        return buf;
    }
    static double parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return std::stod(text);
            return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "cannot parse number '" + text + "'");
        }
    }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;

    static double to_double(const Rational& v) { return v.convert_to<double>(); }
    static Rational from_ratio(long long num, long long den) { return Rational(num, den); }
    /// Exact binary value of a double.
    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite value");
        int exp = 0;
        double mant = std::frexp(v, &exp);
        auto scaled = static_cast<long long>(std::ldexp(mant, 53));
        Rational r(scaled);
        exp -= 53;
        using boost::multiprecision::cpp_int;
        if (exp >= 0) return r * Rational(cpp_int(1) << exp);
        return r / Rational(cpp_int(1) << -exp);
    }
    static std::string to_string(const Rational& v) { return v.str(); }
    /// Accepts "p/q", integers and plain decimals ("1.25" -> 5/4).
    static Rational parse(std::string text) {
        text.erase(std::remove_if(text.begin(), text.end(), ::isspace), text.end());
        if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty number");
        try {
            auto slash = text.find('/');
            if (slash != std::string::npos) {
                Rational num = parse(text.substr(0, slash));
                Rational den = parse(text.substr(slash + 1));
                if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
                return num / den;
            }
            auto epos = text.find_first_of("eE");
            if (epos != std::string::npos) {
                Rational base = parse(text.substr(0, epos));
                int e = std::stoi(text.substr(epos + 1));
                using boost::multiprecision::cpp_int;
                Rational scale(boost::multiprecision::pow(cpp_int(10), std::abs(e)));
                return e >= 0 ? base * scale : base / scale;
            }
            auto dot = text.find('.');
            if (dot == std::string::npos) {
                return Rational(boost::multiprecision::cpp_int(text));
            }
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            auto frac_len = static_cast<unsigned>(text.size() - dot - 1);
            if (digits.empty() || digits == "-" || digits == "+") {
                throw Error(ErrorCode::InvalidArgument, "cannot parse number '" + text + "'");
            }
            using boost::multiprecision::cpp_int;
            return Rational(cpp_int(digits), boost::multiprecision::pow(cpp_int(10), frac_len));
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "cannot parse number '" + text + "'");
        }
    }
};

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

template <class S>
double to_double(const S& v) {
    return ScalarTraits<S>::to_double(v);
}

template <class S>
S ratio(long long num, long long den) {
    return ScalarTraits<S>::from_ratio(num, den);
}

template <class S>
S abs_value(const S& v) {
    return v < S(0) ? S(-v) : v;
}

/// Comparison tolerance. Zero for rationals; `tol * max(1, scale)` for doubles.
template <class S>
struct Tolerance {
    double tol = 1e-12;

    [[nodiscard]] S slack(const S& scale = S(1)) const {
        if constexpr (is_exact_v<S>) {
            (void)scale;
            return S(0);
        } else {
            return tol * std::max(1.0, std::abs(scale));
        }
    }
    [[nodiscard]] bool eq(const S& a, const S& b, const S& scale = S(1)) const {
        return abs_value<S>(a - b) <= slack(scale);
    }
    [[nodiscard]] bool le(const S& a, const S& b, const S& scale = S(1)) const {
        return a <= b + slack(scale);
    }
    [[nodiscard]] bool lt(const S& a, const S& b, const S& scale = S(1)) const {
        return a < b - slack(scale);
    }
    [[nodiscard]] bool is_zero(const S& a, const S& scale = S(1)) const { return eq(a, S(0), scale); }
    [[nodiscard]] int sign(const S& a, const S& scale = S(1)) const {
        if (is_zero(a, scale)) return 0;
        return a < S(0) ? -1 : 1;
    }
};

template <class S>
std::vector<double> to_doubles(const std::vector<S>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_double(x));
    return out;
}

template <class To, class From>
std::vector<To> convert(const std::vector<From>& v) {
    if constexpr (std::is_same_v<To, From>) {
        return v;
    } else if constexpr (std::is_same_v<To, double>) {
        return to_doubles(v);
    } else {
        std::vector<To> out;
        out.reserve(v.size());
        for (const auto& x : v) out.push_back(ScalarTraits<To>::from_double(x));
        return out;
    }
}

}  // namespace effico
