#pragma once

/**
 * @file interval_union.hpp
 * @brief Finite unions of bounded open rational intervals.
 *
 * An IntervalUnion stores the connected components of an open subset of the
 * line, sorted by left endpoint. Consecutive components (a,b), (c,d) satisfy
 * b <= c. When b == c the shared endpoint is a point that is not in the set;
 * {(0,1/2), (1/2,1)} and {(0,1)} are different sets.
 *
 * Two entry points build unions from raw data:
 *  - normalize() merges overlapping and touching intervals (nothing was
 *    explicitly removed, so a touching pair is read as one interval);
 *  - IntervalUnion::from_components() takes an already-canonical list
 *    verbatim and rejects anything else. Deserialization uses this one.
 */

#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmgame {

class OpenInterval {
  public:
	OpenInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
		if (!(lo_ < hi_)) {
			throw std::invalid_argument("malformed interval (" + lo_.to_string() + ", " + hi_.to_string() + "): lo must be < hi");
		}
	}

	Rational const& lo() const noexcept { return lo_; }
	Rational const& hi() const noexcept { return hi_; }
	Rational length() const { return hi_ - lo_; }
	Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
	bool contains(Rational const& q) const { return lo_ < q && q < hi_; }

	friend bool operator==(OpenInterval const&, OpenInterval const&) = default;

  private:
	Rational lo_;
	Rational hi_;
};

class IntervalUnion {
  public:
	IntervalUnion() = default;
	IntervalUnion(OpenInterval single) { components_.push_back(std::move(single)); }

	/// Accepts a list that already satisfies the canonical invariants.
	static IntervalUnion from_components(std::vector<OpenInterval> components) {
		for (std::size_t i = 1; i < components.size(); ++i) {
			if (components[i].lo() < components[i - 1].hi()) {
				throw std::invalid_argument("interval components not sorted and disjoint at index " + std::to_string(i));
			}
		}
		IntervalUnion u;
		u.components_ = std::move(components);
		return u;
	}

	std::span<OpenInterval const> components() const noexcept { return components_; }
	std::size_t size() const noexcept { return components_.size(); }
	bool empty() const noexcept { return components_.empty(); }
	OpenInterval const& front() const { return components_.front(); }
	OpenInterval const& back() const { return components_.back(); }

	bool contains(Rational const& q) const {
		auto it = std::upper_bound(components_.begin(), components_.end(), q,
		                           [](Rational const& x, OpenInterval const& c) { return x < c.hi(); });
		return it != components_.end() && it->contains(q);
	}

	friend bool operator==(IntervalUnion const&, IntervalUnion const&) = default;

  private:
	friend class UnionBuilder;
	std::vector<OpenInterval> components_;
};

/// Appends components known to be sorted and separated. Internal helper for
/// the set operations, which produce canonical output by construction.
class UnionBuilder {
  public:
	void push(Rational lo, Rational hi) {
		if (lo < hi) { out_.components_.emplace_back(std::move(lo), std::move(hi)); }
	}
	IntervalUnion take() { return std::move(out_); }

  private:
	IntervalUnion out_;
};

inline IntervalUnion unit_interval() { return OpenInterval(Rational(0), Rational(1)); }

inline IntervalUnion normalize(std::vector<OpenInterval> intervals) {
	std::sort(intervals.begin(), intervals.end(), [](OpenInterval const& a, OpenInterval const& b) {
		return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
	});
	UnionBuilder b;
	if (intervals.empty()) { return b.take(); }
	Rational lo = intervals.front().lo();
	Rational hi = intervals.front().hi();
	for (std::size_t i = 1; i < intervals.size(); ++i) {
		if (intervals[i].lo() <= hi) {
			hi = max(hi, intervals[i].hi());
		} else {
			b.push(lo, hi);
			lo = intervals[i].lo();
			hi = intervals[i].hi();
		}
	}
	b.push(lo, hi);
	return b.take();
}

inline IntervalUnion intersect(IntervalUnion const& a, IntervalUnion const& b) {
	// Pairwise overlaps of two sorted component lists come out sorted; a
	// shared endpoint between two outputs is an endpoint of some operand
	// component and therefore excluded from the intersection.
	UnionBuilder out;
	auto const ca = a.components();
	auto const cb = b.components();
	std::size_t i = 0;
	std::size_t j = 0;
	while (i < ca.size() && j < cb.size()) {
		out.push(max(ca[i].lo(), cb[j].lo()), min(ca[i].hi(), cb[j].hi()));
		if (ca[i].hi() < cb[j].hi()) {
			++i;
		} else {
			++j;
		}
	}
	return out.take();
}

inline IntervalUnion subtract_point(IntervalUnion const& a, Rational const& q) {
	UnionBuilder out;
	for (auto const& c : a.components()) {
		if (c.contains(q)) {
			out.push(c.lo(), q);
			out.push(q, c.hi());
		} else {
			out.push(c.lo(), c.hi());
		}
	}
	return out.take();
}

/// a minus the closed interval [lo, hi].
inline IntervalUnion subtract_closed(IntervalUnion const& a, Rational const& lo, Rational const& hi) {
	if (hi < lo) { throw std::invalid_argument("subtract_closed needs lo <= hi"); }
	UnionBuilder out;
	for (auto const& c : a.components()) {
		out.push(c.lo(), min(c.hi(), lo));
		out.push(max(c.lo(), hi), c.hi());
	}
	return out.take();
}

/// a minus the closure of b.
inline IntervalUnion subtract_closure(IntervalUnion a, IntervalUnion const& b) {
	for (auto const& c : b.components()) { a = subtract_closed(a, c.lo(), c.hi()); }
	return a;
}

inline bool is_subset(IntervalUnion const& a, IntervalUnion const& b) {
	// Each component of a is connected, so it must sit inside one component of b.
	auto const cb = b.components();
	std::size_t j = 0;
	for (auto const& c : a.components()) {
		while (j < cb.size() && cb[j].hi() < c.hi()) { ++j; }
		if (j == cb.size() || c.lo() < cb[j].lo()) { return false; }
	}
	return true;
}

/// Closure of a (endpoints added) contained in b.
inline bool closure_subset(IntervalUnion const& a, IntervalUnion const& b) {
	auto const cb = b.components();
	std::size_t j = 0;
	for (auto const& c : a.components()) {
		while (j < cb.size() && cb[j].hi() <= c.hi()) { ++j; }
		if (j == cb.size() || !(cb[j].lo() < c.lo())) { return false; }
	}
	return true;
}

inline Rational measure(IntervalUnion const& a) {
	Rational total(0);
	for (auto const& c : a.components()) { total += c.length(); }
	return total;
}

inline Rational diameter(IntervalUnion const& a) {
	if (a.empty()) { return Rational(0); }
	return a.back().hi() - a.front().lo();
}

/// Length of the longest component, 0 for the empty set.
inline Rational longest_component(IntervalUnion const& a) {
	Rational best(0);
	for (auto const& c : a.components()) { best = max(best, c.length()); }
	return best;
}

/// Smallest-denominator rational in the leftmost component, ties to the
/// smallest numerator.
inline Rational witness(IntervalUnion const& a) {
	if (a.empty()) { throw std::invalid_argument("no witness in empty set"); }
	auto const& c = a.front();
	Integer const q = simplest_between(c.lo(), c.hi()).denominator();
	Integer const p = (c.lo() * Rational(q, Integer(1))).floor() + 1;
	return Rational(p, q);
}

} // namespace bmgame
