#pragma once

/**
 * @file strategies.hpp
 * @brief Strategy contract and the constructive strategies.
 *
 * A strategy sees only the opponent's moves so far and its own 1-based
 * stage number. It must answer with a nonempty subset of the opponent's last
 * region, or of the whole board when it moves first. Strategies are pure:
 * the same history, stage and seed always produce the same region.
 */

#include "certificates.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bmgame {

struct StrategyInput {
	AmbientSpace space = AmbientSpace::Real;
	std::span<Region const> opponent_moves;
	std::size_t stage = 1;

	IntervalUnion target() const { return opponent_moves.empty() ? unit_interval() : opponent_moves.back().set; }
};

class Strategy {
  public:
	using Rule = std::function<IntervalUnion(StrategyInput const&)>;

	Strategy(std::string name, std::uint64_t seed, Rule rule)
	    : name_(std::move(name)), seed_(seed), rule_(std::move(rule)) {}

	std::string const& name() const noexcept { return name_; }
	std::uint64_t seed() const noexcept { return seed_; }

	Region next(StrategyInput const& in) const { return Region{in.space, rule_(in)}; }

	Region next(AmbientSpace space, std::span<Region const> opponent_moves, std::size_t stage) const {
		return next(StrategyInput{space, opponent_moves, stage});
	}

  private:
	std::string name_;
	std::uint64_t seed_;
	Rule rule_;
};

/// Removes the stage-th enumerated rational from the opponent's region.
inline Strategy alice_exclusion(MeagreCover cover = {}) {
	return Strategy("alice-exclusion", 0, [cover = std::move(cover)](StrategyInput const& in) {
		return subtract_point(in.target(), cover.enumerate(in.stage));
	});
}

/// Longest component (leftmost on ties), centred interval of radius
/// min(L/4, 2^-(stage+2)). The closure stays strictly inside the component
/// and the diameter is at most 2^-(stage+1).
inline IntervalUnion shrink_inside(IntervalUnion const& region, std::size_t stage) {
	if (region.empty()) { throw std::invalid_argument("cannot shrink inside an empty region"); }
	OpenInterval const* best = &region.front();
	for (auto const& c : region.components()) {
		if (best->length() < c.length()) { best = &c; }
	}
	Rational const c = best->midpoint();
	Rational const r = min(best->length() / Rational(4), Rational::dyadic(static_cast<unsigned>(stage + 2)));
	return OpenInterval(c - r, c + r);
}

inline Strategy bob_shrink() {
	return Strategy("bob-shrink", 0, [](StrategyInput const& in) { return shrink_inside(in.target(), in.stage); });
}

/// Shrinks inside the opponent's region intersected with family(stage).
inline Strategy bob_dense_chaser(DenseOpenFamily family) {
	return Strategy("bob-dense-chaser", 0, [family = std::move(family)](StrategyInput const& in) {
		return shrink_inside(intersect(in.target(), family(in.stage)), in.stage);
	});
}

namespace detail {

inline std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
	for (unsigned char const c : bytes) {
		h ^= c;
		h *= 0x100000001b3ULL;
	}
	return h;
}

inline std::uint64_t history_digest(std::uint64_t seed, StrategyInput const& in) {
	std::uint64_t h = fnv1a(0xcbf29ce484222325ULL, std::to_string(seed));
	h = fnv1a(h, "|" + std::to_string(in.stage));
	for (auto const& r : in.opponent_moves) {
		for (auto const& c : r.set.components()) { h = fnv1a(h, "(" + c.lo().to_string() + "," + c.hi().to_string() + ")"); }
		h = fnv1a(h, ";");
	}
	return h;
}

} // namespace detail

/// Fuzz opponent: a pseudo-random component, then a pseudo-random subinterval
/// of its middle half on a grid of 64 steps. Deterministic in (seed, history).
inline Strategy random_strategy(std::uint64_t seed) {
	return Strategy("random:" + std::to_string(seed), seed, [seed](StrategyInput const& in) {
		constexpr std::uint64_t grid = 64;
		std::mt19937_64 rng(detail::history_digest(seed, in));
		IntervalUnion const target = in.target();
		auto const& comp = target.components()[rng() % target.size()];
		Rational const quarter = comp.length() / Rational(4);
		Rational const start = comp.lo() + quarter;
		Rational const step = (quarter + quarter) / Rational(static_cast<std::int64_t>(grid));
		auto a = static_cast<std::int64_t>(rng() % grid);
		auto b = static_cast<std::int64_t>(rng() % grid);
		if (a > b) { std::swap(a, b); }
		++b;
		return IntervalUnion(OpenInterval(start + step * Rational(a), start + step * Rational(b)));
	});
}

/// A strategy produced an illegal move during run_match.
class StrategyFault : public std::runtime_error {
  public:
	StrategyFault(std::string strategy, Player player, std::size_t stage, Violation v)
	    : std::runtime_error("strategy \"" + strategy + "\" (" + std::string(to_string(player)) + ") made an illegal move at stage " +
	                         std::to_string(stage) + ": " + std::string(to_string(v.kind)) + ": " + v.reason),
	      strategy_(std::move(strategy)), player_(player), stage_(stage), violation_(std::move(v)) {}

	std::string const& strategy() const noexcept { return strategy_; }
	Player player() const noexcept { return player_; }
	std::size_t stage() const noexcept { return stage_; }
	Violation const& violation() const noexcept { return violation_; }

  private:
	std::string strategy_;
	Player player_;
	std::size_t stage_;
	Violation violation_;
};

/// Asks the player to move next for its reply to the transcript so far.
inline Region strategy_move(Strategy const& s, Transcript const& t) {
	Player const me = t.to_move();
	auto const opp = t.moves_of(other(me));
	std::size_t const stage = t.moves_of(me).size() + 1;
	return s.next(t.ruleset().space, opp, stage);
}

/// Plays ruleset.max_depth full rounds; `first` plays ruleset.first_mover.
inline Transcript run_match(Strategy const& first, Strategy const& second, Ruleset const& ruleset) {
	Transcript t = new_game(ruleset);
	while (!t.finished()) {
		Strategy const& s = t.size() % 2 == 0 ? first : second;
		Player const me = t.to_move();
		std::size_t const stage = t.size() / 2 + 1;
		Region const move = [&] {
			try {
				return strategy_move(s, t);
			} catch (std::invalid_argument const& e) {
				throw StrategyFault(s.name(), me, stage, Violation{ViolationKind::Empty, t.size(), e.what()});
			}
		}();
		if (auto v = legal_move(t, move)) { throw StrategyFault(s.name(), me, stage, std::move(*v)); }
		t = apply_move(t, move);
	}
	return t;
}

/// Output of the nested construction behind the category theorem.
struct BairePoint {
	OpenInterval interval;
	Certificate certificate;
};

/// Starting from B(x; eps) ∩ (0,1), for n = 1..depth shrink inside
/// (current ∩ family(n)). The final interval's closure lies in every
/// family(n) and in the ball, and its diameter is at most 2^-(depth+1).
inline BairePoint baire_point(DenseOpenFamily const& family, Rational const& x, Rational const& eps, std::size_t depth) {
	if (!(Rational(0) < eps)) { throw std::invalid_argument("ball radius must be positive"); }
	if (depth < 1) { throw std::invalid_argument("depth must be >= 1"); }
	Rational const lo = max(x - eps, Rational(0));
	Rational const hi = min(x + eps, Rational(1));
	if (!(lo < hi)) { throw std::invalid_argument("ball B(" + x.to_string() + "; " + eps.to_string() + ") misses (0,1)"); }

	LocalizationPayload payload;
	IntervalUnion current = OpenInterval(lo, hi);
	for (std::size_t n = 1; n <= depth; ++n) {
		IntervalUnion const container = intersect(current, family(n));
		IntervalUnion next = shrink_inside(container, n);
		Rational const d = diameter(next);
		payload.chain.push_back(ChainLink{n, n, next, container, d, Rational::dyadic(static_cast<unsigned>(n))});
		current = std::move(next);
	}
	OpenInterval const result = current.front();
	payload.approximation = result;
	payload.error_bound = result.length();
	return BairePoint{result, Certificate{std::move(payload), depth}};
}

} // namespace bmgame
