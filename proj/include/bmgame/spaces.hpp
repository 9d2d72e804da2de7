#pragma once

/**
 * @file spaces.hpp
 * @brief Game boards, the Farey enumeration of (0,1) ∩ Q, and exact density tests.
 *
 * Both boards are traces of open rational interval unions inside (0,1). A
 * nonempty open interval contains rationals and irrationals alike, so a
 * Region is empty exactly when its IntervalUnion is, and inclusion between
 * regions reduces to inclusion between the unions in either space.
 */

#include "interval_union.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bmgame {

enum class AmbientSpace { Real, Rational };

inline std::string_view to_string(AmbientSpace s) { return s == AmbientSpace::Real ? "real" : "rational"; }

inline AmbientSpace parse_space(std::string_view s) {
	if (s == "real") { return AmbientSpace::Real; }
	if (s == "rational") { return AmbientSpace::Rational; }
	throw std::invalid_argument("unknown space \"" + std::string(s) + "\" (expected real|rational)");
}

struct Region {
	AmbientSpace space = AmbientSpace::Real;
	IntervalUnion set;

	bool empty() const noexcept { return set.empty(); }
	friend bool operator==(Region const&, Region const&) = default;
};

inline Region whole_space(AmbientSpace s) { return Region{s, unit_interval()}; }

/// Reduced fractions in (0,1) by ascending denominator, then numerator:
/// 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...
///
/// Cumulative totient counts are cached and grown on demand; lookups are
/// safe from any number of threads.
class FareyEnumeration {
  public:
	Rational operator()(std::uint64_t n) const {
		if (n == 0) { throw std::invalid_argument("Farey enumeration index starts at 1"); }
		std::uint64_t den = 0;
		std::uint64_t before = 0;
		{
			std::shared_lock lock(mutex_);
			if (!locate(n, den, before)) {
				lock.unlock();
				std::unique_lock grow_lock(mutex_);
				while (cumulative_.back() < n) { grow(); }
				locate(n, den, before);
			}
		}
		std::uint64_t rank = n - before;
		for (std::uint64_t p = 1; p < den; ++p) {
			if (std::gcd(p, den) == 1 && --rank == 0) {
				return Rational(Integer(p), Integer(den));
			}
		}
		throw std::logic_error("Farey enumeration table inconsistent");
	}

	/// Number of reduced fractions in (0,1) with denominator <= max_den.
	std::uint64_t count_up_to(std::uint64_t max_den) const {
		if (max_den < 2) { return 0; }
		{
			std::shared_lock lock(mutex_);
			if (max_den - 1 < cumulative_.size()) { return cumulative_[max_den - 1]; }
		}
		std::unique_lock lock(mutex_);
		while (cumulative_.size() <= max_den - 1) { grow(); }
		return cumulative_[max_den - 1];
	}

  private:
	// cumulative_[k] = count of reduced fractions with denominator <= k + 1.
	bool locate(std::uint64_t n, std::uint64_t& den, std::uint64_t& before) const {
		if (cumulative_.back() < n) { return false; }
		auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), n);
		auto const k = static_cast<std::uint64_t>(it - cumulative_.begin());
		den = k + 1;
		before = cumulative_[k - 1];
		return true;
	}

	void grow() const {
		std::uint64_t const den = cumulative_.size() + 1;
		cumulative_.push_back(cumulative_.back() + totient(den));
	}

	static std::uint64_t totient(std::uint64_t n) {
		std::uint64_t result = n;
		for (std::uint64_t p = 2; p * p <= n; ++p) {
			if (n % p == 0) {
				while (n % p == 0) { n /= p; }
				result -= result / p;
			}
		}
		if (n > 1) { result -= result / n; }
		return result;
	}

	mutable std::shared_mutex mutex_;
	mutable std::vector<std::uint64_t> cumulative_{0};
};

inline FareyEnumeration const& farey() {
	static FareyEnumeration const instance;
	return instance;
}

inline Rational enumerate_rational(std::uint64_t n) { return farey()(n); }

/// Countable cover of Q ∩ (0,1) by singletons {q_n}.
struct MeagreCover {
	std::string name = "farey";
	Rational enumerate(std::uint64_t n) const { return enumerate_rational(n); }
};

/// Sequence n >= 1 -> dense open subset of (0,1) with finite complement.
struct DenseOpenFamily {
	std::string name;
	std::function<IntervalUnion(std::size_t)> generator;

	IntervalUnion operator()(std::size_t n) const { return generator(n); }
};

/// (0,1) with each listed point removed.
inline IntervalUnion cofinite_dense_open(std::span<Rational const> points) {
	IntervalUnion u = unit_interval();
	for (auto const& q : points) { u = subtract_point(u, q); }
	return u;
}

/// family(n) = (0,1) \ {q_1, ..., q_{n * per_stage}}.
inline DenseOpenFamily farey_cofinite_family(std::size_t per_stage = 1) {
	return DenseOpenFamily{"farey-cofinite", [per_stage](std::size_t n) {
		                       std::vector<Rational> pts;
		                       for (std::size_t i = 1; i <= n * per_stage; ++i) { pts.push_back(enumerate_rational(i)); }
		                       return cofinite_dense_open(pts);
	                       }};
}

inline DenseOpenFamily whole_interval_family() {
	return DenseOpenFamily{"whole", [](std::size_t) { return unit_interval(); }};
}

/// Exact: the closure of a within (0,1) is all of (0,1) iff there is no gap
/// of positive length between components or at either end.
inline bool is_dense(IntervalUnion const& a, AmbientSpace) {
	IntervalUnion const inside = intersect(a, unit_interval());
	if (inside.empty()) { return false; }
	auto const cs = inside.components();
	if (cs.front().lo() != Rational(0) || cs.back().hi() != Rational(1)) { return false; }
	for (std::size_t i = 1; i < cs.size(); ++i) {
		if (cs[i - 1].hi() != cs[i].lo()) { return false; }
	}
	return true;
}

/// A finite point set is nowhere dense in either board (neither has isolated points).
inline bool is_nowhere_dense(std::span<Rational const>, AmbientSpace) { return true; }

/// An open set is its own interior, so it is nowhere dense iff empty.
inline bool is_nowhere_dense(IntervalUnion const& a, AmbientSpace) { return intersect(a, unit_interval()).empty(); }

} // namespace bmgame
