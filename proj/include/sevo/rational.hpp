#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sevo {

// Exact rational with 64-bit parts. Intermediates go through __int128 and
// overflow on the reduced result throws instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num) : num_(num), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    explicit operator double() const { return to_double(); }

    bool is_integer() const { return den_ == 1; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    std::int64_t ceil() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    Rational inverse() const {
        if (num_ == 0) throw std::domain_error("rational: inverse of zero");
        return Rational(den_, num_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        using I = __int128;
        return make(I(a.num_) * b.den_ + I(b.num_) * a.den_, I(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        using I = __int128;
        return make(I(a.num_) * b.den_ - I(b.num_) * a.den_, I(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        using I = __int128;
        return make(I(a.num_) * b.num_, I(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        using I = __int128;
        if (b.num_ == 0) throw std::domain_error("rational: division by zero");
        return make(I(a.num_) * b.den_, I(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        using I = __int128;
        I lhs = I(a.num_) * b.den_;
        I rhs = I(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p", "p/q" and finite decimals such as "1.1" or "-0.25".
    static Rational parse(std::string_view text) {
        auto fail = [&]() -> Rational {
            throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
        };
        if (text.empty()) return fail();
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            std::int64_t p = 0, q = 0;
            if (!parse_int(text.substr(0, slash), p) || !parse_int(text.substr(slash + 1), q)) return fail();
            if (q == 0) return fail();
            return Rational(p, q);
        }
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            bool neg = !text.empty() && text.front() == '-';
            std::string_view whole = text.substr(0, dot);
            std::string_view frac = text.substr(dot + 1);
            if (frac.size() > 17 || frac.empty()) return fail();
            std::int64_t w = 0, f = 0;
            if (!whole.empty() && whole != "-" && whole != "+" && !parse_int(whole, w)) return fail();
            if (!parse_int(frac, f) || frac.front() == '-' || frac.front() == '+') return fail();
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
            Rational r = Rational(w < 0 ? -w : w) + Rational(f, scale);
            return neg ? -r : r;
        }
        std::int64_t p = 0;
        if (!parse_int(text, p)) return fail();
        return Rational(p);
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    static bool parse_int(std::string_view s, std::int64_t& out) {
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        if (s.empty()) return false;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && ptr == s.data() + s.size();
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational make(__int128 num, __int128 den) {
        if (den == 0) throw std::domain_error("rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr __int128 lim = INT64_MAX;
        if (num > lim || num < -lim || den > lim) throw std::overflow_error("rational: 64-bit overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    void assign(std::int64_t num, std::int64_t den) { *this = make(num, den); }
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }

} // namespace sevo
