#include "orbihall/rational.hpp"

#include <charconv>
#include <stdexcept>

#include "orbihall/errors.hpp"

namespace orbihall {

namespace {

std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < -static_cast<__int128>(INT64_MAX)) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

rational reduce(__int128 n, __int128 d) {
    if (d == 0) throw validation_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return rational(narrow(n), narrow(d));
}

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw validation_error("malformed integer '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return narrow(gcd128(a, b)); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    __int128 g = gcd128(a, b);
    __int128 l = static_cast<__int128>(a) / g * b;
    return narrow(l < 0 ? -l : l);
}

rational::rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw validation_error("rational with zero denominator");
    __int128 nn = n, dd = d;
    if (dd < 0) {
        nn = -nn;
        dd = -dd;
    }
    __int128 g = gcd128(nn, dd);
    if (g > 1) {
        nn /= g;
        dd /= g;
    }
    num_ = narrow(nn);
    den_ = narrow(dd);
}

std::string rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

rational rational::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return rational(parse_int(text));
    return rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

rational rational::operator-() const { return reduce(-static_cast<__int128>(num_), den_); }

rational& rational::operator+=(const rational& o) {
    *this = reduce(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                   static_cast<__int128>(den_) * o.den_);
    return *this;
}

rational& rational::operator-=(const rational& o) { return *this += -o; }

rational& rational::operator*=(const rational& o) {
    *this = reduce(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
    return *this;
}

rational& rational::operator/=(const rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    *this = reduce(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
    return *this;
}

std::strong_ordering operator<=>(const rational& a, const rational& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::int64_t floor(const rational& r) {
    std::int64_t q = r.num() / r.den();
    if (r.num() % r.den() != 0 && r.num() < 0) --q;
    return q;
}

rational frac(const rational& r) { return r - rational(floor(r)); }

rational unit_interval_rep(const rational& r) {
    rational f = frac(r);
    return f == rational(0) ? rational(1) : f;
}

rational abs(const rational& r) { return r.num() < 0 ? -r : r; }

}  // namespace orbihall
