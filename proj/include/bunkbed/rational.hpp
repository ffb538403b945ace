#pragma once

// Exact arbitrary-precision rational values. Every correctness-bearing
// probability in this library is a Rational; floating point is confined to
// the Monte Carlo estimator.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bunkbed {

using BigInt = boost::multiprecision::cpp_int;

// Value type kept in lowest terms with a positive denominator at all times.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(int v) : value_(v) {}
    Rational(long long v) : value_(static_cast<std::int64_t>(v)) {}
    Rational(const BigInt& v) : value_(v) {}

    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0)
            throw std::domain_error("Rational: zero denominator");
        value_ = Backend(num, den); // canonicalized by the backend
    }

    // Accepts "a/b" or a bare integer, with optional leading sign.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(BigInt(std::string(text)));
            BigInt num{std::string(text.substr(0, slash))};
            BigInt den{std::string(text.substr(slash + 1))};
            return Rational(num, den);
        } catch (const std::domain_error&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
        }
    }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }
    int sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }

    double to_double() const { return value_.convert_to<double>(); }

    std::string str() const {
        if (denominator() == 1)
            return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

    Rational pow(unsigned long exp) const {
        using boost::multiprecision::pow;
        Rational r;
        r.value_ = Backend(pow(numerator(), static_cast<unsigned>(exp)),
                           pow(denominator(), static_cast<unsigned>(exp)));
        return r;
    }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.value_ == 0)
            throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.value_ = -a.value_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using Backend = boost::multiprecision::cpp_rational;
    Backend value_;
};

} // namespace bunkbed
