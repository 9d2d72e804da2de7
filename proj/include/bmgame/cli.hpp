#pragma once

/**
 * @file cli.hpp
 * @brief The play / baire / refine / verify commands, callable in-process.
 *
 * Exit codes: 0 success, 1 usage or environment error, 2 verification
 * failure. JSON goes to files; a human-readable summary goes to `out`.
 */

#include "registry.hpp"
#include "serialization.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bmgame::cli {

enum Exit : int { ok = 0, usage = 1, failed = 2 };

inline bool write_json(std::filesystem::path const& path, json const& j, std::ostream& err) {
	std::ofstream f(path, std::ios::binary);
	if (!f) {
		err << "error: cannot write " << path.string() << "\n";
		return false;
	}
	f << j.dump(2) << "\n";
	return static_cast<bool>(f);
}

struct CertificateOutcome {
	std::vector<Certificate> verified;
	std::vector<CertificateFailure> failures;
};

/// Certificates that apply to a finished play: exclusion on the rational
/// board when Alice plays alice-exclusion; localization on the real board
/// claimed by the first side that plays a shrinking strategy.
inline CertificateOutcome applicable_certificates(Transcript const& t, std::string const& first_id, std::string const& second_id) {
	CertificateOutcome out;
	Player const first = t.ruleset().first_mover;
	auto const id_of = [&](Player p) { return p == first ? first_id : second_id; };
	try {
		if (t.ruleset().space == AmbientSpace::Rational && id_of(Player::Alice) == "alice-exclusion") {
			out.verified.push_back(exclusion_certificate(t));
		}
		if (t.ruleset().space == AmbientSpace::Real && !t.empty()) {
			std::optional<Player> claimant;
			if (is_shrinker(first_id)) {
				claimant = first;
			} else if (is_shrinker(second_id)) {
				claimant = other(first);
			}
			if (claimant) { out.verified.push_back(localization_certificate(t, claimant)); }
		}
	} catch (CertificateFailure const& f) {
		out.failures.push_back(f);
	}
	return out;
}

inline void describe(std::ostream& out, Certificate const& c) {
	out << "certificate " << to_string(c.kind()) << ": verified to depth " << c.verified_depth;
	if (auto const* loc = std::get_if<LocalizationPayload>(&c.payload)) {
		out << ", approximation (" << loc->approximation.lo() << ", " << loc->approximation.hi() << "), error bound "
		    << loc->error_bound;
	}
	out << "\n";
}

struct PlayOptions {
	std::string space = "real";
	std::string first;
	std::string second;
	std::size_t depth = 0;
	std::string out_path;
	std::string first_mover = "bob";
	std::string subset_mode = "nonstrict";
};

inline int play(PlayOptions const& opt, std::ostream& out, std::ostream& err) {
	Ruleset rules;
	std::optional<Strategy> first;
	std::optional<Strategy> second;
	try {
		rules.space = parse_space(opt.space);
		rules.first_mover = parse_player(opt.first_mover);
		rules.subset_mode = parse_subset_mode(opt.subset_mode);
		if (opt.depth < 1) { throw std::invalid_argument("--depth must be >= 1"); }
		rules.max_depth = opt.depth;
		first = make_strategy(opt.first);
		second = make_strategy(opt.second);
	} catch (std::invalid_argument const& e) {
		err << "error: " << e.what() << "\n";
		return usage;
	}

	Transcript t = new_game(rules);
	try {
		t = run_match(*first, *second, rules);
	} catch (StrategyFault const& f) {
		err << "error: " << f.what() << "\n";
		return failed;
	}

	auto const certs = applicable_certificates(t, opt.first, opt.second);
	json doc = to_json(t);
	doc["certificates"] = json::array();
	for (auto const& c : certs.verified) { doc["certificates"].push_back(to_json(c)); }
	if (!certs.failures.empty()) {
		doc["certificate_failures"] = json::array();
		for (auto const& f : certs.failures) {
			doc["certificate_failures"].push_back(json{{"kind", to_string(f.kind())}, {"stage", f.stage()}, {"reason", f.reason()}});
		}
	}
	if (!opt.out_path.empty() && !write_json(opt.out_path, doc, err)) { return usage; }

	auto const last = t.last().region.set;
	out << "played " << t.size() << " moves on the " << to_string(rules.space) << " board: " << first->name() << " ("
	    << to_string(rules.first_mover) << ") vs " << second->name() << " (" << to_string(other(rules.first_mover)) << ")\n";
	out << "final region diameter " << diameter(last) << ", measure " << measure(last) << "\n";
	for (auto const& c : certs.verified) { describe(out, c); }
	for (auto const& f : certs.failures) { out << "FAILED: " << f.what() << "\n"; }
	return certs.failures.empty() ? ok : failed;
}

struct BaireOptions {
	std::string center = "1/2";
	std::string radius = "1/2";
	std::size_t depth = 32;
	std::size_t per_stage = 1;
	std::string out_path;
};

inline int baire(BaireOptions const& opt, std::ostream& out, std::ostream& err) {
	std::optional<BairePoint> bp;
	Rational x;
	Rational eps;
	try {
		x = Rational::parse(opt.center);
		eps = Rational::parse(opt.radius);
		if (opt.per_stage < 1) { throw std::invalid_argument("--per-stage must be >= 1"); }
		bp = baire_point(farey_cofinite_family(opt.per_stage), x, eps, opt.depth);
	} catch (std::exception const& e) {
		err << "error: " << e.what() << "\n";
		return usage;
	}

	auto const& loc = std::get<LocalizationPayload>(bp->certificate.payload);
	bool good = true;
	try {
		recheck_chain(loc);
	} catch (CertificateFailure const& f) {
		out << "FAILED: " << f.what() << "\n";
		good = false;
	}
	// Each stage must sit inside the previous one, the first inside the ball.
	IntervalUnion const ball = intersect(OpenInterval(x - eps, x + eps), unit_interval());
	bool const in_ball = closure_subset(loc.chain.front().set, ball);
	bool nested = in_ball;
	for (std::size_t i = 1; i < loc.chain.size(); ++i) { nested = nested && closure_subset(loc.chain[i].set, loc.chain[i - 1].set); }

	OpenInterval const& I = bp->interval;
	json excluded = json::array();
	std::size_t const removed = opt.depth * opt.per_stage;
	bool all_absent = true;
	for (std::size_t n = 1; n <= removed; ++n) {
		Rational const q = enumerate_rational(n);
		bool const absent = q < I.lo() || I.hi() < q;
		all_absent = all_absent && absent;
		excluded.push_back(json{{"n", n}, {"point", to_json(q)}, {"absent_from_closure", absent}});
	}
	bool const width_ok = !(Rational::dyadic(static_cast<unsigned>(opt.depth)) < I.length());
	good = good && nested && all_absent && width_ok;

	out << "interval (" << I.lo() << ", " << I.hi() << ")\n";
	out << "error bound " << I.length() << " (~" << I.length().to_double() << ")" << (width_ok ? "" : "  EXCEEDS 2^-depth") << "\n";
	out << "closure of stage 1 inside B(" << x << "; " << eps << "): " << (in_ball ? "yes" : "no") << "\n";
	out << "closure chain nested across " << loc.chain.size() << " stages: " << (nested ? "yes" : "no") << "\n";
	out << "excluded rationals absent from the closure (" << removed << "):";
	for (auto const& e : excluded) { out << " " << e["point"].get<std::string>() << (e["absent_from_closure"].get<bool>() ? "" : "!"); }
	out << "\n";

	if (!opt.out_path.empty()) {
		json doc{{"center", to_json(x)},
		         {"radius", to_json(eps)},
		         {"depth", opt.depth},
		         {"per_stage", opt.per_stage},
		         {"interval", json::array({to_json(I.lo()), to_json(I.hi())})},
		         {"error_bound", to_json(I.length())},
		         {"excluded", std::move(excluded)},
		         {"certificate", to_json(bp->certificate)}};
		if (!write_json(opt.out_path, doc, err)) { return usage; }
	}
	return good ? ok : failed;
}

struct RefineOptions {
	std::string map = "left-third";
	std::string eps = "1/1024";
	std::size_t cap = 10000;
	std::string sigma; ///< when set, build a tree against this strategy instead
	std::size_t depth = 1;
	std::string space = "real";
	std::string out_path;
};

inline std::optional<RefinementMap> named_map(std::string const& name) {
	if (name == "left-third") { return RefinementMap(left_third); }
	if (name == "identity") { return RefinementMap([](IntervalUnion const& v) { return v; }); }
	if (name == "tiny-left") {
		return RefinementMap([](IntervalUnion const& v) {
			auto const& c = v.front();
			return IntervalUnion(OpenInterval(c.lo(), c.lo() + min(c.length(), Rational::dyadic(20))));
		});
	}
	return std::nullopt;
}

inline int refine(RefineOptions const& opt, std::ostream& out, std::ostream& err) {
	Rational eps;
	try {
		eps = Rational::parse(opt.eps);
		if (!(Rational(0) < eps)) { throw std::invalid_argument("--eps must be positive"); }
		if (opt.cap < 1) { throw std::invalid_argument("--cap must be >= 1"); }
	} catch (std::exception const& e) {
		err << "error: " << e.what() << "\n";
		return usage;
	}

	if (!opt.sigma.empty()) {
		std::optional<Strategy> sigma;
		AmbientSpace space{};
		try {
			sigma = make_strategy(opt.sigma);
			space = parse_space(opt.space);
			if (opt.depth < 1) { throw std::invalid_argument("--depth must be >= 1"); }
		} catch (std::invalid_argument const& e) {
			err << "error: " << e.what() << "\n";
			return usage;
		}
		try {
			RefinementTree const tree = sigma_refinement_tree(*sigma, opt.depth, eps, opt.cap, space);
			out << "refinement tree for " << tree.strategy << ": root with " << tree.root.size() << " component(s)\n";
			for (std::size_t l = 0; l < tree.layers.size(); ++l) {
				out << "layer " << l << ": " << tree.layers[l].nodes.size() << " members, longest gap " << tree.layer_gap(l) << "\n";
			}
			if (!opt.out_path.empty() && !write_json(opt.out_path, to_json(tree), err)) { return usage; }
		} catch (CapExceeded const& e) {
			out << "FAILED: " << e.what() << "\n";
			return failed;
		}
		return ok;
	}

	auto const f = named_map(opt.map);
	if (!f) {
		err << "error: unknown map \"" << opt.map << "\" (expected left-third, identity or tiny-left)\n";
		return usage;
	}
	try {
		RefinementFamily const fam = disjoint_refinement(unit_interval(), *f, eps, opt.cap);
		out << "refinement of (0,1) by " << opt.map << ": " << fam.pairs.size() << " pairs, longest gap "
		    << longest_component(uncovered(fam.base, fam.pairs)) << " < " << eps << "\n";
		if (!opt.out_path.empty() && !write_json(opt.out_path, to_json(fam), err)) { return usage; }
		return ok;
	} catch (CapExceeded const& e) {
		out << "FAILED: " << e.what() << "\n";
		if (!opt.out_path.empty()) { write_json(opt.out_path, to_json(e.partial()), err); }
		return failed;
	}
}

inline int verify(std::string const& path, std::ostream& out, std::ostream& err) {
	std::ifstream f(path, std::ios::binary);
	if (!f) {
		err << "error: cannot open " << path << "\n";
		return usage;
	}
	TranscriptDocument doc;
	json raw;
	try {
		raw = json::parse(f);
		doc = transcript_document_from_json(raw);
	} catch (std::exception const& e) {
		err << "error: " << path << ": " << e.what() << "\n";
		return usage;
	}

	Transcript t = new_game(doc.ruleset);
	try {
		t = replay(doc);
	} catch (IllegalMove const& e) {
		out << "FAILED: illegal move at stage " << doc.moves[e.violation().position].index << " (position "
		    << e.violation().position << "): " << to_string(e.violation().kind) << ": " << e.violation().reason << "\n";
		return failed;
	} catch (ReplayMismatch const& e) {
		out << "FAILED: " << e.what() << "\n";
		return failed;
	}
	out << "replayed " << t.size() << " legal moves\n";

	for (auto const& c : doc.certificates) {
		try {
			check_certificate(c, t);
			describe(out, c);
		} catch (CertificateFailure const& e) {
			out << "FAILED: " << e.what() << "\n";
			return failed;
		} catch (std::invalid_argument const& e) {
			out << "FAILED: " << to_string(c.kind()) << " certificate does not apply: " << e.what() << "\n";
			return failed;
		}
	}
	if (raw.contains("certificate_failures") && !raw.at("certificate_failures").empty()) {
		out << "FAILED: file records " << raw.at("certificate_failures").size() << " certificate failure(s)\n";
		return failed;
	}
	return ok;
}

} // namespace bmgame::cli
