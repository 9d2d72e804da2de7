#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rationals.
 *
 * Thin value wrapper around boost::multiprecision::cpp_rational. The wrapped
 * value is always canonical: denominator positive, gcd(|num|, den) = 1, and
 * zero is 0/1. Text form is always "p/q", including integers ("0/1", "1/1").
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace bmgame {

using Integer = boost::multiprecision::cpp_int;

class Rational {
  public:
	using value_type = boost::multiprecision::cpp_rational;

	Rational() = default;
	Rational(std::int64_t n) : value_(n) {}
	Rational(Integer const& num, Integer const& den) {
		if (den == 0) { throw std::domain_error("rational with zero denominator"); }
		value_ = den < 0 ? value_type(Integer(-num), Integer(-den)) : value_type(num, den);
	}
	explicit Rational(value_type v) : value_(std::move(v)) {}

	/// Parses "p/q" or a bare integer "p". Whitespace is not accepted.
	static Rational parse(std::string_view text) {
		auto const bad = [&] { return std::invalid_argument("malformed rational \"" + std::string(text) + "\""); };
		auto const slash = text.find('/');
		auto num_text = text.substr(0, slash);
		auto const den_text = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
		if (!is_integer_literal(num_text, true) || !is_integer_literal(den_text, false)) { throw bad(); }
		Integer const den{std::string(den_text)};
		if (den == 0) { throw std::domain_error("rational with zero denominator: \"" + std::string(text) + "\""); }
		if (num_text.front() == '+') { num_text.remove_prefix(1); }
		return Rational(Integer(std::string(num_text)), den);
	}

	/// 2^-k for k >= 0.
	static Rational dyadic(unsigned k) {
		Integer den = 1;
		den <<= k;
		return Rational(Integer(1), den);
	}

	Integer numerator() const { return boost::multiprecision::numerator(value_); }
	Integer denominator() const { return boost::multiprecision::denominator(value_); }
	value_type const& value() const noexcept { return value_; }

	std::string to_string() const { return numerator().str() + "/" + denominator().str(); }

	/// Largest integer <= this.
	Integer floor() const {
		Integer const n = numerator();
		Integer const d = denominator();
		Integer q = n / d;
		if (n < 0 && q * d != n) { --q; }
		return q;
	}

	bool is_integer() const { return denominator() == 1; }
	int sign() const { return value_.sign(); }

	/// Approximate value for display only; never used in decisions.
	double to_double() const { return value_.convert_to<double>(); }

	Rational operator-() const { return Rational(value_type(-value_)); }
	Rational& operator+=(Rational const& o) { value_ += o.value_; return *this; }
	Rational& operator-=(Rational const& o) { value_ -= o.value_; return *this; }
	Rational& operator*=(Rational const& o) { value_ *= o.value_; return *this; }
	Rational& operator/=(Rational const& o) {
		if (o.value_ == 0) { throw std::domain_error("rational division by zero"); }
		value_ /= o.value_;
		return *this;
	}

	friend Rational operator+(Rational a, Rational const& b) { return a += b; }
	friend Rational operator-(Rational a, Rational const& b) { return a -= b; }
	friend Rational operator*(Rational a, Rational const& b) { return a *= b; }
	friend Rational operator/(Rational a, Rational const& b) { return a /= b; }

	friend bool operator==(Rational const& a, Rational const& b) { return a.value_ == b.value_; }
	friend std::strong_ordering operator<=>(Rational const& a, Rational const& b) {
		if (a.value_ < b.value_) { return std::strong_ordering::less; }
		if (b.value_ < a.value_) { return std::strong_ordering::greater; }
		return std::strong_ordering::equal;
	}

	friend std::ostream& operator<<(std::ostream& os, Rational const& r) { return os << r.to_string(); }

  private:
	static bool is_integer_literal(std::string_view s, bool allow_sign) {
		if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) { s.remove_prefix(1); }
		if (s.empty()) { return false; }
		for (char const c : s) {
			if (c < '0' || c > '9') { return false; }
		}
		return true;
	}

	value_type value_{0};
};

inline Rational min(Rational const& a, Rational const& b) { return b < a ? b : a; }
inline Rational max(Rational const& a, Rational const& b) { return a < b ? b : a; }

/// Simplest rational strictly between lo and hi: the unique one with least
/// denominator, then least numerator. Continued-fraction descent.
inline Rational simplest_between(Rational const& lo, Rational const& hi) {
	if (!(lo < hi)) { throw std::invalid_argument("simplest_between needs lo < hi"); }
	Integer const fl = lo.floor();
	Rational const next(Integer(fl + 1), Integer(1));
	if (next < hi) { return next; }
	// lo and hi share the unit cell [fl, fl+1]; write x = fl + 1/y.
	Rational const base(fl, Integer(1));
	Rational const y_lo = Rational(1) / (hi - base);
	if (lo == base) {
		Rational const y(Integer(y_lo.floor() + 1), Integer(1));
		return base + Rational(1) / y;
	}
	Rational const y_hi = Rational(1) / (lo - base);
	return base + Rational(1) / simplest_between(y_lo, y_hi);
}

} // namespace bmgame
