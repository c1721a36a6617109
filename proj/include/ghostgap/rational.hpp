#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "ghostgap/errors.hpp"

namespace ghostgap {

namespace detail {

using int128 = __int128;

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

inline int128 gcd128(int128 a, int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace detail

// Exact rational number with a canonical representation: reduced, positive
// denominator, zero stored as 0/1. Backed by int64 with 128-bit intermediates;
// any result that does not fit back into int64 throws ArithmeticOverflow
// rather than silently losing exactness.
class Rat {
public:
    constexpr Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rat(long long n, long long d) { assign(n, d); }

    static Rat zero() { return Rat(); }
    static Rat one() { return Rat(1); }

    // Accepts "p", "-p", "p/q" with optional whitespace-free sign on p.
    static Rat from_string(std::string_view text) {
        auto bad = [&] {
            throw ParseError("not a rational: '" + std::string(text) + "'");
        };
        if (text.empty()) bad();
        std::size_t slash = text.find('/');
        long long n = parse_int(text.substr(0, slash == std::string_view::npos
                                                    ? text.size()
                                                    : slash),
                                text);
        long long d = 1;
        if (slash != std::string_view::npos) {
            std::string_view den_part = text.substr(slash + 1);
            if (den_part.empty() || den_part[0] == '-' || den_part[0] == '+') bad();
            d = parse_int(den_part, text);
            if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        return Rat(n, d);
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    Rat operator-() const { return make_reduced(-static_cast<detail::int128>(num_), den_); }

    Rat operator+(const Rat& o) const {
        using detail::int128;
        int128 n = static_cast<int128>(num_) * o.den_ + static_cast<int128>(o.num_) * den_;
        int128 d = static_cast<int128>(den_) * o.den_;
        return make_canonical(n, d);
    }
    Rat operator-(const Rat& o) const { return *this + (-o); }

    Rat operator*(const Rat& o) const {
        using detail::int128;
        int128 n = static_cast<int128>(num_) * o.num_;
        int128 d = static_cast<int128>(den_) * o.den_;
        return make_canonical(n, d);
    }

    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw ArithmeticOverflow("rational division by zero");
        using detail::int128;
        int128 n = static_cast<int128>(num_) * o.den_;
        int128 d = static_cast<int128>(den_) * o.num_;
        return make_canonical(n, d);
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    // Canonical form makes equality a field comparison.
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        using detail::int128;
        int128 lhs = static_cast<int128>(a.num_) * b.den_;
        int128 rhs = static_cast<int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) {
            s += '/';
            s += std::to_string(den_);
        }
        return s;
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    // Upper bound on the true value in double precision. The naive conversion
    // involves at most a few rounding steps, so bumping a handful of ulps
    // toward +inf guarantees the result is >= the exact rational.
    double to_double_upper() const {
        double x = to_double();
        for (int i = 0; i < 4; ++i) {
            x = std::nextafter(x, std::numeric_limits<double>::infinity());
        }
        return x;
    }

private:
    long long num_;
    long long den_;

    static long long parse_int(std::string_view part, std::string_view whole) {
        if (part.empty()) throw ParseError("not a rational: '" + std::string(whole) + "'");
        std::size_t pos = 0;
        bool neg = false;
        if (part[0] == '-' || part[0] == '+') {
            neg = part[0] == '-';
            pos = 1;
            if (pos == part.size()) throw ParseError("not a rational: '" + std::string(whole) + "'");
        }
        unsigned long long acc = 0;
        for (; pos < part.size(); ++pos) {
            char c = part[pos];
            if (c < '0' || c > '9') throw ParseError("not a rational: '" + std::string(whole) + "'");
            if (acc > (std::numeric_limits<unsigned long long>::max() - (c - '0')) / 10)
                throw ArithmeticOverflow("rational literal too large: '" + std::string(whole) + "'");
            acc = acc * 10 + static_cast<unsigned long long>(c - '0');
        }
        unsigned long long limit = neg
            ? static_cast<unsigned long long>(std::numeric_limits<long long>::max()) + 1
            : static_cast<unsigned long long>(std::numeric_limits<long long>::max());
        if (acc > limit)
            throw ArithmeticOverflow("rational literal too large: '" + std::string(whole) + "'");
        return neg ? -static_cast<long long>(acc) : static_cast<long long>(acc);
    }

    void assign(long long n, long long d) {
        if (d == 0) throw ArithmeticOverflow("rational with zero denominator");
        *this = make_canonical(n, d);
    }

    static Rat make_canonical(detail::int128 n, detail::int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) d = 1;
        detail::int128 g = detail::gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        return make_reduced(n, d);
    }

    static Rat make_reduced(detail::int128 n, detail::int128 d) {
        constexpr detail::int128 lo = std::numeric_limits<long long>::min();
        constexpr detail::int128 hi = std::numeric_limits<long long>::max();
        if (n < lo || n > hi || d > hi)
            throw ArithmeticOverflow("rational out of 64-bit range after reduction");
        Rat r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

}  // namespace ghostgap
