#pragma once

/**
 * @file serialization.hpp
 * @brief JSON wire formats.
 *
 *   Rational       "p/q"
 *   IntervalUnion  [["p/q","r/s"], ...]      (canonical component list)
 *   Transcript     {"ruleset": {...}, "moves": [{"player","index","set"}], "certificates": [...]}
 *   Certificate    {"kind", "verified_depth", "payload"}
 *
 * Unions are read with IntervalUnion::from_components, so a file holding
 * [["0/1","1/2"],["1/2","1/1"]] means (0,1) without 1/2, exactly as written.
 */

#include "refinement.hpp"

#include "json.hpp"

#include <optional>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmgame {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

namespace detail {

inline json const& field(json const& j, char const* key) {
	if (!j.is_object() || !j.contains(key)) { throw ParseError(std::string("missing field \"") + key + "\""); }
	return j.at(key);
}

inline std::string text(json const& j, char const* what) {
	if (!j.is_string()) { throw ParseError(std::string(what) + " must be a string"); }
	return j.get<std::string>();
}

inline std::size_t count(json const& j, char const* what) {
	if (!j.is_number_integer() || j.get<std::int64_t>() < 0) { throw ParseError(std::string(what) + " must be a non-negative integer"); }
	return j.get<std::size_t>();
}

template <typename F>
auto wrap(F&& f) {
	try {
		return f();
	} catch (ParseError const&) {
		throw;
	} catch (std::exception const& e) {
		throw ParseError(e.what());
	}
}

} // namespace detail

inline json to_json(Rational const& r) { return r.to_string(); }

inline Rational rational_from_json(json const& j) {
	return detail::wrap([&] { return Rational::parse(detail::text(j, "rational")); });
}

inline json to_json(IntervalUnion const& u) {
	json arr = json::array();
	for (auto const& c : u.components()) { arr.push_back(json::array({c.lo().to_string(), c.hi().to_string()})); }
	return arr;
}

inline IntervalUnion union_from_json(json const& j) {
	if (!j.is_array()) { throw ParseError("interval set must be an array of [lo, hi] pairs"); }
	std::vector<OpenInterval> comps;
	for (auto const& pair : j) {
		if (!pair.is_array() || pair.size() != 2) { throw ParseError("interval must be a [lo, hi] pair"); }
		comps.push_back(detail::wrap([&] { return OpenInterval(rational_from_json(pair[0]), rational_from_json(pair[1])); }));
	}
	return detail::wrap([&] { return IntervalUnion::from_components(std::move(comps)); });
}

/// Lenient reader for human input: canonical lists are taken as written,
/// anything else (unsorted, overlapping) goes through normalize().
inline IntervalUnion union_from_json_lenient(json const& j) {
	if (!j.is_array()) { throw ParseError("interval set must be an array of [lo, hi] pairs"); }
	std::vector<OpenInterval> comps;
	for (auto const& pair : j) {
		if (!pair.is_array() || pair.size() != 2) { throw ParseError("interval must be a [lo, hi] pair"); }
		comps.push_back(detail::wrap([&] { return OpenInterval(rational_from_json(pair[0]), rational_from_json(pair[1])); }));
	}
	try {
		return IntervalUnion::from_components(comps);
	} catch (std::invalid_argument const&) {
		return normalize(std::move(comps));
	}
}

inline json to_json(Ruleset const& r) {
	return json{{"space", to_string(r.space)},
	            {"first_mover", to_string(r.first_mover)},
	            {"subset_mode", to_string(r.subset_mode)},
	            {"max_depth", r.max_depth}};
}

inline Ruleset ruleset_from_json(json const& j) {
	return detail::wrap([&] {
		Ruleset r;
		r.space = parse_space(detail::text(detail::field(j, "space"), "space"));
		if (j.contains("first_mover")) { r.first_mover = parse_player(detail::text(j.at("first_mover"), "first_mover")); }
		if (j.contains("subset_mode")) { r.subset_mode = parse_subset_mode(detail::text(j.at("subset_mode"), "subset_mode")); }
		r.max_depth = detail::count(detail::field(j, "max_depth"), "max_depth");
		if (r.max_depth < 1) { throw ParseError("max_depth must be >= 1"); }
		return r;
	});
}

inline json to_json(Move const& m) {
	return json{{"player", to_string(m.player)}, {"index", m.index}, {"set", to_json(m.region.set)}};
}

inline json to_json(Transcript const& t) {
	json moves = json::array();
	for (auto const& m : t.moves()) { moves.push_back(to_json(m)); }
	return json{{"ruleset", to_json(t.ruleset())}, {"moves", std::move(moves)}};
}

inline json to_json(Certificate const& c) {
	json payload = std::visit(
	    [](auto const& p) -> json {
		    using P = std::decay_t<decltype(p)>;
		    if constexpr (std::is_same_v<P, ExclusionPayload>) {
			    json entries = json::array();
			    for (auto const& e : p.entries) {
				    entries.push_back(json{{"n", e.n}, {"point", to_json(e.point)}, {"stage", e.stage}});
			    }
			    return json{{"cover", p.cover}, {"entries", std::move(entries)}};
		    } else {
			    json chain = json::array();
			    for (auto const& l : p.chain) {
				    chain.push_back(json{{"position", l.position},
				                         {"ordinal", l.ordinal},
				                         {"set", to_json(l.set)},
				                         {"container", to_json(l.container)},
				                         {"diameter", to_json(l.diameter)},
				                         {"bound", to_json(l.bound)}});
			    }
			    return json{{"claimant", p.claimant ? json(to_string(*p.claimant)) : json("all")},
			                {"chain", std::move(chain)},
			                {"approximation", json::array({to_json(p.approximation.lo()), to_json(p.approximation.hi())})},
			                {"error_bound", to_json(p.error_bound)}};
		    }
	    },
	    c.payload);
	return json{{"kind", to_string(c.kind())}, {"verified_depth", c.verified_depth}, {"payload", std::move(payload)}};
}

inline Certificate certificate_from_json(json const& j) {
	return detail::wrap([&] {
		auto const kind = parse_certificate_kind(detail::text(detail::field(j, "kind"), "kind"));
		auto const depth = detail::count(detail::field(j, "verified_depth"), "verified_depth");
		json const& p = detail::field(j, "payload");
		if (kind == CertificateKind::ExclusionPersistence) {
			ExclusionPayload out;
			out.cover = detail::text(detail::field(p, "cover"), "cover");
			for (auto const& e : detail::field(p, "entries")) {
				out.entries.push_back({detail::count(detail::field(e, "n"), "n"), rational_from_json(detail::field(e, "point")),
				                       detail::count(detail::field(e, "stage"), "stage")});
			}
			return Certificate{std::move(out), depth};
		}
		LocalizationPayload out;
		auto const who = detail::text(detail::field(p, "claimant"), "claimant");
		if (who != "all") { out.claimant = parse_player(who); }
		for (auto const& l : detail::field(p, "chain")) {
			out.chain.push_back(ChainLink{detail::count(detail::field(l, "position"), "position"),
			                              detail::count(detail::field(l, "ordinal"), "ordinal"),
			                              union_from_json(detail::field(l, "set")),
			                              union_from_json(detail::field(l, "container")),
			                              rational_from_json(detail::field(l, "diameter")),
			                              rational_from_json(detail::field(l, "bound"))});
		}
		json const& a = detail::field(p, "approximation");
		if (!a.is_array() || a.size() != 2) { throw ParseError("approximation must be a [lo, hi] pair"); }
		out.approximation = OpenInterval(rational_from_json(a[0]), rational_from_json(a[1]));
		out.error_bound = rational_from_json(detail::field(p, "error_bound"));
		return Certificate{std::move(out), depth};
	});
}

/// A transcript file as written, before any legality replay.
struct TranscriptDocument {
	Ruleset ruleset;
	std::vector<Move> moves;
	std::vector<Certificate> certificates;
};

inline TranscriptDocument transcript_document_from_json(json const& j) {
	TranscriptDocument doc;
	doc.ruleset = ruleset_from_json(detail::field(j, "ruleset"));
	json const& moves = detail::field(j, "moves");
	if (!moves.is_array()) { throw ParseError("moves must be an array"); }
	for (auto const& m : moves) {
		Move mv;
		mv.player = detail::wrap([&] { return parse_player(detail::text(detail::field(m, "player"), "player")); });
		mv.index = detail::count(detail::field(m, "index"), "index");
		mv.region = Region{doc.ruleset.space, union_from_json(detail::field(m, "set"))};
		doc.moves.push_back(std::move(mv));
	}
	if (j.contains("certificates")) {
		for (auto const& c : j.at("certificates")) { doc.certificates.push_back(certificate_from_json(c)); }
	}
	return doc;
}

/// The recorded player or round index disagrees with the alternation.
class ReplayMismatch : public std::runtime_error {
  public:
	ReplayMismatch(std::size_t position, std::string const& what)
	    : std::runtime_error("move " + std::to_string(position) + ": " + what), position_(position) {}
	std::size_t position() const noexcept { return position_; }

  private:
	std::size_t position_;
};

/// Re-applies every move through the referee. Throws IllegalMove or
/// ReplayMismatch naming the first bad position.
inline Transcript replay(TranscriptDocument const& doc) {
	Transcript t = new_game(doc.ruleset);
	for (std::size_t k = 0; k < doc.moves.size(); ++k) {
		auto const& m = doc.moves[k];
		if (m.player != t.to_move()) {
			throw ReplayMismatch(k, "recorded player " + std::string(to_string(m.player)) + ", expected " + std::string(to_string(t.to_move())));
		}
		if (m.index != t.next_index()) {
			throw ReplayMismatch(k, "recorded index " + std::to_string(m.index) + ", expected " + std::to_string(t.next_index()));
		}
		t = apply_move(t, m.region);
	}
	return t;
}

inline Transcript transcript_from_json(json const& j) { return replay(transcript_document_from_json(j)); }

inline json to_json(RefinementFamily const& f) {
	json pairs = json::array();
	for (auto const& p : f.pairs) { pairs.push_back(json{{"input", to_json(p.input)}, {"output", to_json(p.output)}}); }
	return json{{"base", to_json(f.base)}, {"residual_resolution", to_json(f.residual_resolution)}, {"pairs", std::move(pairs)}};
}

inline RefinementFamily refinement_family_from_json(json const& j) {
	RefinementFamily f;
	f.base = union_from_json(detail::field(j, "base"));
	f.residual_resolution = rational_from_json(detail::field(j, "residual_resolution"));
	for (auto const& p : detail::field(j, "pairs")) {
		f.pairs.push_back({union_from_json(detail::field(p, "input")), union_from_json(detail::field(p, "output"))});
	}
	return f;
}

inline json to_json(RefinementTree const& t) {
	json layers = json::array();
	for (auto const& layer : t.layers) {
		json fams = json::array();
		for (std::size_t i = 0; i < layer.families.size(); ++i) {
			json f = to_json(layer.families[i]);
			f["parent"] = layer.family_parent[i] ? json(*layer.family_parent[i]) : json(nullptr);
			fams.push_back(std::move(f));
		}
		layers.push_back(json{{"families", std::move(fams)}});
	}
	return json{{"strategy", t.strategy},
	            {"space", to_string(t.space)},
	            {"root", to_json(t.root)},
	            {"resolution", to_json(t.resolution)},
	            {"layers", std::move(layers)}};
}

inline RefinementTree refinement_tree_from_json(json const& j) {
	RefinementTree t;
	t.strategy = detail::text(detail::field(j, "strategy"), "strategy");
	t.space = detail::wrap([&] { return parse_space(detail::text(detail::field(j, "space"), "space")); });
	t.root = union_from_json(detail::field(j, "root"));
	t.resolution = rational_from_json(detail::field(j, "resolution"));
	for (auto const& lj : detail::field(j, "layers")) {
		RefinementLayer layer;
		for (auto const& fj : detail::field(lj, "families")) {
			std::optional<std::size_t> parent;
			json const& pj = detail::field(fj, "parent");
			if (!pj.is_null()) { parent = detail::count(pj, "parent"); }
			std::size_t const fam_index = layer.families.size();
			RefinementFamily fam = refinement_family_from_json(fj);
			for (auto const& p : fam.pairs) { layer.nodes.push_back({parent, fam_index, p.input, p.output}); }
			layer.families.push_back(std::move(fam));
			layer.family_parent.push_back(parent);
		}
		t.layers.push_back(std::move(layer));
	}
	return t;
}

} // namespace bmgame
