#pragma once

/**
 * @file certificates.hpp
 * @brief Finite-depth evidence about the limit of a play.
 *
 * Exclusion persistence: Alice's n-th move V avoids the n-th enumerated
 * rational q_n. Later moves are subsets of V, so q_n is absent from every
 * later move and from the intersection of the whole play.
 *
 * Localization: along the claimed moves each region's closure sits inside
 * its predecessor and the j-th claimed move has diameter <= 2^-j. On the
 * real board the closed sets shrink to a single point by completeness; the
 * last region's hull approximates it with error bound equal to its diameter.
 */

#include "referee.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bmgame {

enum class CertificateKind { ExclusionPersistence, Localization };

inline std::string_view to_string(CertificateKind k) {
	return k == CertificateKind::ExclusionPersistence ? "exclusion" : "localization";
}

inline CertificateKind parse_certificate_kind(std::string_view s) {
	if (s == "exclusion") { return CertificateKind::ExclusionPersistence; }
	if (s == "localization") { return CertificateKind::Localization; }
	throw std::invalid_argument("unknown certificate kind \"" + std::string(s) + "\"");
}

struct ExclusionEntry {
	std::uint64_t n = 0; ///< Alice's move ordinal, 1-based
	Rational point;      ///< q_n
	std::size_t stage = 0; ///< round index of that move

	friend bool operator==(ExclusionEntry const&, ExclusionEntry const&) = default;
};

struct ExclusionPayload {
	std::string cover = "farey";
	std::vector<ExclusionEntry> entries;

	friend bool operator==(ExclusionPayload const&, ExclusionPayload const&) = default;
};

struct ChainLink {
	std::size_t position = 0; ///< transcript position, or construction stage
	std::size_t ordinal = 0;  ///< j in the bound 2^-j
	IntervalUnion set;
	IntervalUnion container; ///< closure(set) must lie inside this
	Rational diameter;
	Rational bound;

	friend bool operator==(ChainLink const&, ChainLink const&) = default;
};

struct LocalizationPayload {
	std::optional<Player> claimant; ///< nullopt: every move is claimed
	std::vector<ChainLink> chain;
	OpenInterval approximation{Rational(0), Rational(1)};
	Rational error_bound;

	friend bool operator==(LocalizationPayload const&, LocalizationPayload const&) = default;
};

struct Certificate {
	std::variant<ExclusionPayload, LocalizationPayload> payload;
	std::size_t verified_depth = 0;

	CertificateKind kind() const {
		return std::holds_alternative<ExclusionPayload>(payload) ? CertificateKind::ExclusionPersistence
		                                                         : CertificateKind::Localization;
	}

	friend bool operator==(Certificate const&, Certificate const&) = default;
};

class CertificateFailure : public std::runtime_error {
  public:
	CertificateFailure(CertificateKind kind, std::size_t stage, std::string reason)
	    : std::runtime_error(std::string(to_string(kind)) + " certificate fails at stage " + std::to_string(stage) + ": " + reason),
	      kind_(kind), stage_(stage), reason_(std::move(reason)) {}

	CertificateKind kind() const noexcept { return kind_; }
	std::size_t stage() const noexcept { return stage_; }
	std::string const& reason() const noexcept { return reason_; }

  private:
	CertificateKind kind_;
	std::size_t stage_;
	std::string reason_;
};

/// Checks q_n not in Alice's n-th move for every Alice move in the transcript.
/// Throws CertificateFailure(n) at the first n where it does not hold.
inline Certificate exclusion_certificate(Transcript const& t, MeagreCover const& cover = {}) {
	if (t.ruleset().space != AmbientSpace::Rational) {
		throw std::invalid_argument("exclusion certificates apply to the rational board");
	}
	ExclusionPayload payload{cover.name, {}};
	std::uint64_t n = 0;
	for (auto const& m : t.moves()) {
		if (m.player != Player::Alice) { continue; }
		++n;
		Rational const q = cover.enumerate(n);
		if (m.region.set.contains(q)) {
			throw CertificateFailure(CertificateKind::ExclusionPersistence, n,
			                         "q_" + std::to_string(n) + " = " + q.to_string() + " lies in Alice's move " + std::to_string(n));
		}
		payload.entries.push_back({n, q, m.index});
	}
	return Certificate{std::move(payload), static_cast<std::size_t>(n)};
}

inline OpenInterval hull(IntervalUnion const& u) { return OpenInterval(u.front().lo(), u.back().hi()); }

/// Claims closure nesting and diameter decay for every claimed move after
/// the first position. With no claimant every move is claimed and the
/// ordinal is the position; otherwise it counts the claimant's own moves.
inline Certificate localization_certificate(Transcript const& t, std::optional<Player> claimant = std::nullopt) {
	if (t.ruleset().space != AmbientSpace::Real) {
		throw std::invalid_argument("localization certificates apply to the real board");
	}
	if (t.empty()) { throw std::invalid_argument("localization certificate needs at least one move"); }
	auto const moves = t.moves();
	LocalizationPayload payload;
	payload.claimant = claimant;
	std::size_t own = 0;
	for (std::size_t k = 0; k < moves.size(); ++k) {
		if (claimant && moves[k].player != *claimant) { continue; }
		++own;
		if (k == 0) { continue; }
		std::size_t const ordinal = claimant ? own : k;
		ChainLink link{k, ordinal, moves[k].region.set, moves[k - 1].region.set, diameter(moves[k].region.set),
		               Rational::dyadic(static_cast<unsigned>(ordinal))};
		if (!closure_subset(link.set, link.container)) {
			throw CertificateFailure(CertificateKind::Localization, k, "closure of move " + std::to_string(k) + " is not inside move " + std::to_string(k - 1));
		}
		if (link.bound < link.diameter) {
			throw CertificateFailure(CertificateKind::Localization, k,
			                         "diameter " + link.diameter.to_string() + " exceeds " + link.bound.to_string());
		}
		payload.chain.push_back(std::move(link));
	}
	auto const& last = moves.back().region.set;
	payload.approximation = hull(last);
	payload.error_bound = diameter(last);
	std::size_t const depth = payload.chain.size();
	return Certificate{std::move(payload), depth};
}

/// Self-contained re-check of a localization chain: every link is closure
/// nested in its container, has the stated diameter, and meets its bound.
inline void recheck_chain(LocalizationPayload const& p) {
	for (auto const& link : p.chain) {
		if (!closure_subset(link.set, link.container)) {
			throw CertificateFailure(CertificateKind::Localization, link.position, "closure nesting does not hold");
		}
		if (diameter(link.set) != link.diameter || link.bound < link.diameter) {
			throw CertificateFailure(CertificateKind::Localization, link.position, "diameter decay does not hold");
		}
		if (link.bound != Rational::dyadic(static_cast<unsigned>(link.ordinal))) {
			throw CertificateFailure(CertificateKind::Localization, link.position, "bound is not 2^-ordinal");
		}
	}
	if (p.error_bound != p.approximation.length()) {
		throw CertificateFailure(CertificateKind::Localization, p.chain.empty() ? 0 : p.chain.back().position,
		                         "error bound differs from the approximation width");
	}
}

/// Recomputes the certificate from the transcript and requires an exact match.
inline void check_certificate(Certificate const& cert, Transcript const& t) {
	Certificate const fresh = std::visit(
	    [&](auto const& p) -> Certificate {
		    using P = std::decay_t<decltype(p)>;
		    if constexpr (std::is_same_v<P, ExclusionPayload>) {
			    if (p.cover != "farey") {
				    throw CertificateFailure(CertificateKind::ExclusionPersistence, 0, "unknown cover \"" + p.cover + "\"");
			    }
			    return exclusion_certificate(t);
		    } else {
			    return localization_certificate(t, p.claimant);
		    }
	    },
	    cert.payload);
	if (!(fresh == cert)) {
		throw CertificateFailure(cert.kind(), 0, "certificate payload does not match the transcript");
	}
}

} // namespace bmgame
