#include <bmgame/refinement.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace bmgame;

namespace {
Rational r(char const* s) { return Rational::parse(s); }

// Independent invariant check written against the grid, not the library's
// own refinement_violation.
void expect_family_invariants(RefinementFamily const& fam, unsigned bits) {
	for (std::size_t i = 0; i < fam.pairs.size(); ++i) {
		EXPECT_TRUE(is_subset(fam.pairs[i].output, fam.pairs[i].input));
		EXPECT_TRUE(is_subset(fam.pairs[i].input, fam.base));
		for (std::size_t j = 0; j < i; ++j) { EXPECT_TRUE(intersect(fam.pairs[i].output, fam.pairs[j].output).empty()); }
	}
	// Every grid point of the base is within eps of a closed output, unless its
	// whole base component is already shorter than eps.
	std::int64_t const top = std::int64_t{1} << bits;
	for (std::int64_t k = 0; k < top; ++k) {
		Rational const q = oracle::grid_point(k, bits);
		if (!oracle::member(fam.base, q)) { continue; }
		bool near = false;
		for (auto const& p : fam.pairs) {
			for (auto const& c : p.output.components()) {
				near = near || (!(q + fam.residual_resolution <= c.lo()) && !(c.hi() <= q - fam.residual_resolution));
			}
		}
		bool short_component = false;
		for (auto const& c : fam.base.components()) { short_component = short_component || (c.contains(q) && c.length() < fam.residual_resolution); }
		ASSERT_TRUE(near || short_component) << "no output within eps of " << q;
	}
}
} // namespace

TEST(DisjointRefinement, LeftThirdSixteenth) {
	auto const fam = disjoint_refinement(unit_interval(), left_third, Rational::dyadic(4), 100);
	EXPECT_FALSE(refinement_violation(fam));
	EXPECT_LT(longest_component(uncovered(fam.base, fam.pairs)), Rational::dyadic(4));
	EXPECT_EQ(fam.pairs[0].input, unit_interval());
	EXPECT_EQ(fam.pairs[0].output, IntervalUnion(OpenInterval(r("0"), r("1/3"))));
	expect_family_invariants(fam, 8);
}

TEST(DisjointRefinement, IdentityIsOneStep) {
	auto const fam = disjoint_refinement(unit_interval(), [](IntervalUnion const& v) { return v; }, Rational::dyadic(4), 100);
	ASSERT_EQ(fam.pairs.size(), 1u);
	EXPECT_EQ(fam.pairs[0].input, unit_interval());
	EXPECT_EQ(fam.pairs[0].output, unit_interval());
	EXPECT_TRUE(uncovered(fam.base, fam.pairs).empty());
}

TEST(DisjointRefinement, TinyLeftExceedsCap) {
	auto const tiny = [](IntervalUnion const& v) {
		auto const lo = v.front().lo();
		return IntervalUnion(OpenInterval(lo, lo + min(v.front().length() / Rational(2), Rational::dyadic(20))));
	};
	try {
		disjoint_refinement(unit_interval(), tiny, Rational::dyadic(4), 3);
		FAIL();
	} catch (CapExceeded const& e) {
		EXPECT_EQ(e.partial().pairs.size(), 3u);
		EXPECT_FALSE(e.achieved_resolution() < Rational::dyadic(4));
		EXPECT_TRUE(e.history().empty());
	}
}

TEST(DisjointRefinement, RejectsBadArguments) {
	auto const id = [](IntervalUnion const& v) { return v; };
	EXPECT_THROW(disjoint_refinement(IntervalUnion{}, id, Rational::dyadic(4), 10), std::invalid_argument);
	EXPECT_THROW(disjoint_refinement(unit_interval(), id, Rational(0), 10), std::invalid_argument);
	EXPECT_THROW(disjoint_refinement(unit_interval(), id, Rational::dyadic(4), 0), std::invalid_argument);
	auto const outside = [](IntervalUnion const&) { return IntervalUnion(OpenInterval(r("2"), r("3"))); };
	EXPECT_THROW(disjoint_refinement(unit_interval(), outside, Rational::dyadic(4), 10), std::invalid_argument);
}

TEST(DisjointRefinement, InvariantsOverRandomBases) {
	std::mt19937_64 rng(77);
	for (int i = 0; i < 60; ++i) {
		auto const base = oracle::random_dyadic_union(rng, 8);
		if (base.empty()) { continue; }
		auto const fam = disjoint_refinement(base, left_third, Rational::dyadic(6), 10000);
		EXPECT_FALSE(refinement_violation(fam));
		expect_family_invariants(fam, 8);
	}
}

TEST(DisjointRefinement, ViolationDetectorCatchesOverlap) {
	RefinementFamily fam{unit_interval(),
	                     {{unit_interval(), IntervalUnion(OpenInterval(r("0"), r("1/2")))},
	                      {unit_interval(), IntervalUnion(OpenInterval(r("1/4"), r("1")))}},
	                     Rational::dyadic(4)};
	ASSERT_TRUE(refinement_violation(fam));
	EXPECT_NE(refinement_violation(fam)->find("overlap"), std::string::npos);
}

TEST(SigmaRefinementTree, DepthOneIsOneRefinement) {
	auto const sigma = alice_exclusion();
	auto const tree = sigma_refinement_tree(sigma, 1, Rational::dyadic(6), 1000);
	ASSERT_EQ(tree.layers.size(), 1u);
	ASSERT_EQ(tree.layers[0].families.size(), 1u);
	EXPECT_EQ(tree.root, sigma.next(AmbientSpace::Real, {}, 1).set);
	EXPECT_EQ(tree.layers[0].families[0].base, tree.root);
	EXPECT_FALSE(tree.layers[0].family_parent[0]);
}

TEST(SigmaRefinementTree, ExclusionDepthThree) {
	auto const sigma = alice_exclusion();
	Rational const eps = Rational::dyadic(6);
	auto const tree = sigma_refinement_tree(sigma, 3, eps, 10000);
	ASSERT_EQ(tree.layers.size(), 3u);
	for (std::size_t l = 0; l < tree.layers.size(); ++l) {
		EXPECT_LT(tree.layer_gap(l), eps) << "layer " << l;
		for (auto const& fam : tree.layers[l].families) { EXPECT_FALSE(refinement_violation(fam)); }
		if (l > 0) {
			// Each family of layer l refines a member of layer l-1.
			for (std::size_t f = 0; f < tree.layers[l].families.size(); ++f) {
				auto const parent = tree.layers[l].family_parent[f];
				ASSERT_TRUE(parent);
				EXPECT_EQ(tree.layers[l].families[f].base, tree.layers[l - 1].nodes[*parent].output);
			}
		}
	}

	auto const ends = tree.chain_ends();
	ASSERT_FALSE(ends.empty());
	for (auto const& [layer, index] : ends) {
		auto const play = tree.chain_play(layer, index);
		Ruleset const rules{AmbientSpace::Real, Player::Alice, SubsetMode::Nonstrict, layer + 2};
		Transcript t = new_game(rules);
		std::vector<Region> opp;
		for (std::size_t k = 0; k < play.size(); ++k) {
			Region const move{AmbientSpace::Real, play[k]};
			ASSERT_FALSE(legal_move(t, move)) << "chain move " << k;
			if (k % 2 == 0) {
				EXPECT_EQ(play[k], sigma.next(AmbientSpace::Real, opp, k / 2 + 1).set) << "not sigma's reply at " << k;
			} else {
				opp.push_back(move);
			}
			t = apply_move(t, move);
		}
	}
}

TEST(SigmaRefinementTree, CapCarriesHistory) {
	// Opens with (0,1), copies at stage 2, then creeps in from the left.
	Strategy const shy("shy", 0, [](StrategyInput const& in) {
		if (in.stage <= 2) { return in.target(); }
		auto const c = in.target().front();
		return IntervalUnion(OpenInterval(c.lo(), c.lo() + c.length() / Rational(1000)));
	});
	try {
		sigma_refinement_tree(shy, 2, Rational::dyadic(3), 4);
		FAIL();
	} catch (CapExceeded const& e) {
		EXPECT_EQ(e.partial().pairs.size(), 4u);
		ASSERT_EQ(e.history().size(), 1u);
		EXPECT_EQ(e.history()[0], unit_interval());
	}
	EXPECT_THROW(sigma_refinement_tree(shy, 0, Rational::dyadic(3), 4), std::invalid_argument);
}
