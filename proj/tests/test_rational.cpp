#include <bmgame/rational.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using bmgame::Integer;
using bmgame::Rational;

TEST(Rational, CanonicalForm) {
	Rational const r(Integer(6), Integer(-8));
	EXPECT_EQ(r.numerator(), -3);
	EXPECT_EQ(r.denominator(), 4);
	EXPECT_EQ(Rational(0).to_string(), "0/1");
	EXPECT_EQ(Rational(1).to_string(), "1/1");
}

TEST(Rational, ZeroDenominatorRejected) {
	EXPECT_THROW(Rational(Integer(1), Integer(0)), std::domain_error);
	EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
	EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ParseAcceptsFractionsAndIntegers) {
	EXPECT_EQ(Rational::parse("2/4"), Rational(Integer(1), Integer(2)));
	EXPECT_EQ(Rational::parse("-3"), Rational(-3));
	EXPECT_EQ(Rational::parse("+5/10"), Rational(Integer(1), Integer(2)));
	for (auto const* bad : {"", "/2", "1/", "1/-2", "a/b", "1 /2", "1/2/3", "0x1"}) {
		EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
	}
}

TEST(Rational, TextRoundTripIsExact) {
	std::mt19937_64 rng(11);
	for (int i = 0; i < 500; ++i) {
		Integer num = Integer(rng()) * Integer(rng()) - Integer(rng());
		Integer den = Integer(rng() | 1) * Integer(rng() % 1000 + 1);
		Rational const r(num, den);
		EXPECT_EQ(Rational::parse(r.to_string()), r);
		EXPECT_EQ(Rational::parse(r.to_string()).to_string(), r.to_string());
	}
}

TEST(Rational, FloorHandlesNegatives) {
	EXPECT_EQ(Rational::parse("7/2").floor(), 3);
	EXPECT_EQ(Rational::parse("-7/2").floor(), -4);
	EXPECT_EQ(Rational::parse("-4").floor(), -4);
}

TEST(Rational, Dyadic) {
	EXPECT_EQ(Rational::dyadic(0), Rational(1));
	EXPECT_EQ(Rational::dyadic(10).to_string(), "1/1024");
}

TEST(SimplestBetween, MatchesBruteForceScan) {
	std::mt19937_64 rng(3);
	std::uniform_int_distribution<std::int64_t> k(0, 4096);
	for (int i = 0; i < 300; ++i) {
		auto a = k(rng);
		auto b = k(rng);
		if (a == b) { continue; }
		if (a > b) { std::swap(a, b); }
		Rational const lo = oracle::grid_point(a, 12);
		Rational const hi = oracle::grid_point(b, 12);
		EXPECT_EQ(bmgame::simplest_between(lo, hi), oracle::smallest_denominator_in(lo, hi)) << lo << " " << hi;
	}
}

TEST(SimplestBetween, NonDyadicEndpoints) {
	EXPECT_EQ(bmgame::simplest_between(Rational::parse("1/3"), Rational::parse("2/5")), Rational::parse("3/8"));
	EXPECT_EQ(bmgame::simplest_between(Rational::parse("0"), Rational::parse("1")), Rational::parse("1/2"));
	EXPECT_EQ(bmgame::simplest_between(Rational::parse("1/2"), Rational::parse("1")), Rational::parse("2/3"));
	EXPECT_THROW(bmgame::simplest_between(Rational(1), Rational(1)), std::invalid_argument);
}
