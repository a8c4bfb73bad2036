#pragma once

#include <cstdint>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace orbihall {

// Exact rational number in lowest terms with a positive denominator.
// Arithmetic is checked: results that do not fit in 64 bits throw std::overflow_error.
class rational {
public:
    rational() = default;
    rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit from integers is intended
    rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    // "p/q" always, "p/1" for integers.
    std::string str() const;
    static rational parse(std::string_view text);

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const { return den_ == 1; }

    rational operator-() const;
    rational& operator+=(const rational& o);
    rational& operator-=(const rational& o);
    rational& operator*=(const rational& o);
    rational& operator/=(const rational& o);

    friend rational operator+(rational a, const rational& b) { return a += b; }
    friend rational operator-(rational a, const rational& b) { return a -= b; }
    friend rational operator*(rational a, const rational& b) { return a *= b; }
    friend rational operator/(rational a, const rational& b) { return a /= b; }

    friend bool operator==(const rational& a, const rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const rational& a, const rational& b);

    friend std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.str(); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

// floor(r) as an integer.
std::int64_t floor(const rational& r);
// r mod 1 in [0,1).
rational frac(const rational& r);
// Representative of r mod 1 in (0,1].
rational unit_interval_rep(const rational& r);
rational abs(const rational& r);

}  // namespace orbihall
