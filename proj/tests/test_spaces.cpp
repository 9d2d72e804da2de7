#include <bmgame/spaces.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <thread>

using namespace bmgame;

namespace {
Rational r(char const* s) { return Rational::parse(s); }

// Every dyadic cell of width 2^-bits inside (0,1) meets the set.
bool dense_at_resolution(IntervalUnion const& u, unsigned bits) {
	std::int64_t const cells = std::int64_t{1} << bits;
	for (std::int64_t k = 0; k < cells; ++k) {
		if (intersect(u, OpenInterval(oracle::grid_point(k, bits), oracle::grid_point(k + 1, bits))).empty()) { return false; }
	}
	return true;
}
} // namespace

TEST(FareyEnumeration, FirstTermsMatchBruteForce) {
	auto const listing = oracle::farey_listing(12);
	ASSERT_GE(listing.size(), 5u);
	EXPECT_EQ(listing[0], std::make_pair(std::int64_t{1}, std::int64_t{2}));
	EXPECT_EQ(listing[1], std::make_pair(std::int64_t{1}, std::int64_t{3}));
	EXPECT_EQ(listing[4], std::make_pair(std::int64_t{3}, std::int64_t{4}));
	EXPECT_EQ(enumerate_rational(1), r("1/2"));
	EXPECT_EQ(enumerate_rational(2), r("1/3"));
	EXPECT_EQ(enumerate_rational(5), r("3/4"));
	for (std::size_t i = 0; i < listing.size(); ++i) {
		EXPECT_EQ(enumerate_rational(i + 1), Rational(Integer(listing[i].first), Integer(listing[i].second)));
	}
}

TEST(FareyEnumeration, ZeroRejected) { EXPECT_THROW(enumerate_rational(0), std::invalid_argument); }

TEST(FareyEnumeration, InjectiveOnFirstTenThousand) {
	std::set<std::string> seen;
	for (std::uint64_t n = 1; n <= 10000; ++n) {
		auto const q = enumerate_rational(n);
		ASSERT_TRUE(Rational(0) < q && q < Rational(1));
		ASSERT_TRUE(seen.insert(q.to_string()).second) << "repeat at " << n;
	}
}

TEST(FareyEnumeration, CoversDenominatorsUpToThirty) {
	auto const listing = oracle::farey_listing(30);
	std::set<std::string> got;
	for (std::uint64_t n = 1; n <= listing.size(); ++n) { got.insert(enumerate_rational(n).to_string()); }
	for (auto const& [p, q] : listing) {
		EXPECT_TRUE(got.count(Rational(Integer(p), Integer(q)).to_string())) << p << "/" << q;
	}
	EXPECT_EQ(farey().count_up_to(30), listing.size());
}

TEST(FareyEnumeration, ConcurrentLookupsAgree) {
	FareyEnumeration local;
	std::vector<std::thread> threads;
	std::vector<std::vector<std::string>> results(4);
	for (int t = 0; t < 4; ++t) {
		threads.emplace_back([&, t] {
			for (std::uint64_t n = 3000; n >= 1; --n) { results[t].push_back(local(n).to_string()); }
		});
	}
	for (auto& th : threads) { th.join(); }
	for (int t = 1; t < 4; ++t) { EXPECT_EQ(results[t], results[0]); }
}

TEST(IsDense, Examples) {
	auto const split = cofinite_dense_open(std::vector{r("1/2")});
	EXPECT_TRUE(is_dense(split, AmbientSpace::Real));
	EXPECT_FALSE(is_dense(OpenInterval(r("0"), r("1/2")), AmbientSpace::Real));
	auto const thirds = cofinite_dense_open(std::vector{r("1/3"), r("2/3")});
	EXPECT_TRUE(is_dense(thirds, AmbientSpace::Rational));
	EXPECT_FALSE(is_dense(IntervalUnion{}, AmbientSpace::Rational));
}

TEST(IsDense, AgreesWithResolutionOracle) {
	std::mt19937_64 rng(99);
	std::uniform_int_distribution<std::int64_t> k(1, 1023);
	int dense_seen = 0;
	for (int i = 0; i < 500; ++i) {
		IntervalUnion u;
		if (i % 2 == 0) {
			u = oracle::random_dyadic_union(rng, 10);
		} else {
			std::vector<Rational> pts;
			for (int j = 0; j < 5; ++j) { pts.push_back(oracle::grid_point(k(rng), 10)); }
			u = cofinite_dense_open(pts);
			if (i % 4 == 1) { u = subtract_closed(u, oracle::grid_point(k(rng), 10), oracle::grid_point(1023, 10)); }
		}
		bool const exact = is_dense(u, AmbientSpace::Real);
		dense_seen += exact;
		ASSERT_EQ(exact, dense_at_resolution(u, 12));
	}
	EXPECT_GT(dense_seen, 50);
}

TEST(IsDense, FiniteIntersectionsStayDense) {
	std::vector<Rational> pts;
	for (std::uint64_t n = 1; n <= 200; ++n) {
		pts.push_back(enumerate_rational(n));
		ASSERT_TRUE(is_dense(cofinite_dense_open(pts), AmbientSpace::Real)) << "N = " << n;
	}
}

TEST(IsNowhereDense, Examples) {
	EXPECT_TRUE(is_nowhere_dense(std::vector{r("1/2")}, AmbientSpace::Rational));
	EXPECT_FALSE(is_nowhere_dense(IntervalUnion(OpenInterval(r("1/4"), r("1/2"))), AmbientSpace::Real));
	EXPECT_TRUE(is_nowhere_dense(IntervalUnion{}, AmbientSpace::Real));
	EXPECT_TRUE(is_nowhere_dense(std::vector<Rational>{}, AmbientSpace::Real));
}

TEST(CofiniteDenseOpen, Examples) {
	auto const U = [](std::vector<std::pair<char const*, char const*>> cs) {
		std::vector<OpenInterval> v;
		for (auto const& [lo, hi] : cs) { v.emplace_back(r(lo), r(hi)); }
		return IntervalUnion::from_components(std::move(v));
	};
	EXPECT_EQ(cofinite_dense_open(std::vector{r("1/2")}), U({{"0", "1/2"}, {"1/2", "1"}}));
	EXPECT_EQ(cofinite_dense_open(std::vector<Rational>{}), unit_interval());
	EXPECT_EQ(cofinite_dense_open(std::vector{r("1/3"), r("2/3")}), U({{"0", "1/3"}, {"1/3", "2/3"}, {"2/3", "1"}}));
}

TEST(Families, FareyCofiniteFamily) {
	auto const fam = farey_cofinite_family();
	auto const u3 = fam(3);
	EXPECT_EQ(u3.size(), 4u);
	EXPECT_FALSE(u3.contains(r("1/2")));
	EXPECT_FALSE(u3.contains(r("2/3")));
	EXPECT_TRUE(u3.contains(r("1/4")));
	EXPECT_TRUE(is_dense(u3, AmbientSpace::Real));
	EXPECT_EQ(whole_interval_family()(7), unit_interval());
}

TEST(Spaces, NamesRoundTrip) {
	EXPECT_EQ(parse_space(to_string(AmbientSpace::Real)), AmbientSpace::Real);
	EXPECT_EQ(parse_space(to_string(AmbientSpace::Rational)), AmbientSpace::Rational);
	EXPECT_THROW(parse_space("cantor"), std::invalid_argument);
	EXPECT_EQ(MeagreCover{}.name, "farey");
}
