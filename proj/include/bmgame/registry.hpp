#pragma once

// String ids for strategies: "alice-exclusion", "bob-shrink",
// "bob-dense-chaser" (against the Farey cofinite family), "random:<seed>".

#include "strategies.hpp"

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bmgame {

class UnknownStrategy : public std::invalid_argument {
  public:
	explicit UnknownStrategy(std::string_view id)
	    : std::invalid_argument("unknown strategy id \"" + std::string(id) +
	                            "\" (expected alice-exclusion, bob-shrink, bob-dense-chaser or random:<seed>)") {}
};

inline Strategy make_strategy(std::string_view id) {
	if (id == "alice-exclusion") { return alice_exclusion(); }
	if (id == "bob-shrink") { return bob_shrink(); }
	if (id == "bob-dense-chaser") { return bob_dense_chaser(farey_cofinite_family()); }
	constexpr std::string_view prefix = "random:";
	if (id.starts_with(prefix)) {
		auto const digits = id.substr(prefix.size());
		std::uint64_t seed = 0;
		auto const [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
		if (ec == std::errc{} && end == digits.data() + digits.size() && !digits.empty()) { return random_strategy(seed); }
	}
	throw UnknownStrategy(id);
}

/// Strategies whose every move is closure-nested and diameter-bounded.
inline bool is_shrinker(std::string_view id) { return id == "bob-shrink" || id == "bob-dense-chaser"; }

} // namespace bmgame
