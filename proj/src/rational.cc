#include "partref/rational.hh"

#include <limits>
#include <numeric>
#include <ostream>

#include "partref/errors.hh"

namespace partref {

namespace {

using Wide = __int128;

Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(Wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw OverflowError("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

// Normalizes num/den computed in 128 bits and narrows both parts.
void assign(Wide num, Wide den, std::int64_t& out_num, std::int64_t& out_den) {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    out_num = narrow(num);
    out_den = narrow(den);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    assign(num, den, num_, den_);
}

Rational Rational::operator-() const {
    Rational r;
    assign(-static_cast<Wide>(num_), den_, r.num_, r.den_);
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (den_ == 1 && rhs.den_ == 1) {
        std::int64_t out;
        if (__builtin_add_overflow(num_, rhs.num_, &out)) throw OverflowError("rational arithmetic overflow");
        num_ = out;
        return *this;
    }
    Wide n = static_cast<Wide>(num_) * rhs.den_ + static_cast<Wide>(rhs.num_) * den_;
    Wide d = static_cast<Wide>(den_) * rhs.den_;
    assign(n, d, num_, den_);
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    return *this += -rhs;
}

Rational& Rational::operator*=(const Rational& rhs) {
    Wide n = static_cast<Wide>(num_) * rhs.num_;
    Wide d = static_cast<Wide>(den_) * rhs.den_;
    assign(n, d, num_, den_);
    return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    Wide l = static_cast<Wide>(lhs.num_) * rhs.den_;
    Wide r = static_cast<Wide>(rhs.num_) * lhs.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::parse(std::string_view text) {
    const std::string original(text);
    auto fail = [&]() -> Rational { throw ParseError("malformed number '" + original + "'"); };
    if (text.empty()) return fail();

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) return fail();

    auto parse_digits = [&](std::string_view digits, Wide& out) {
        if (digits.empty()) fail();
        out = 0;
        for (char c : digits) {
            if (c < '0' || c > '9') fail();
            out = out * 10 + (c - '0');
            if (out > std::numeric_limits<std::int64_t>::max()) throw OverflowError("number out of range: " + original);
        }
    };

    Wide num = 0;
    Wide den = 1;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        parse_digits(text.substr(0, slash), num);
        parse_digits(text.substr(slash + 1), den);
        if (den == 0) return fail();
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) return fail();
        Wide ip = 0;
        if (!int_part.empty()) parse_digits(int_part, ip);
        Wide fp = 0;
        if (!frac_part.empty()) parse_digits(frac_part, fp);
        if (frac_part.size() > 18) throw OverflowError("too many decimal places: " + original);
        for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
        num = ip * den + fp;
    } else {
        parse_digits(text, num);
    }
    Rational r;
    assign(negative ? -num : num, den, r.num_, r.den_);
    return r;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

}  // namespace partref
