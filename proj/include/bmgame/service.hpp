#pragma once

/**
 * @file service.hpp
 * @brief In-memory game sessions between a human client and an engine strategy.
 *
 * Every session owns its transcript and a mutex; requests against one
 * session are applied in a total order, while distinct sessions proceed in
 * parallel. The engine replies synchronously inside submit().
 */

#include "registry.hpp"
#include "serialization.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace bmgame {

enum class SessionStatus { AwaitingHuman, AwaitingEngine, DepthReached };

inline std::string_view to_string(SessionStatus s) {
	switch (s) {
	case SessionStatus::AwaitingHuman: return "awaiting_human";
	case SessionStatus::AwaitingEngine: return "awaiting_engine";
	case SessionStatus::DepthReached: return "depth_reached";
	}
	return "?";
}

struct SessionSpec {
	Ruleset ruleset;
	Player engine_role = Player::Alice;
	std::string engine_strategy;
};

struct SessionView {
	std::string id;
	SessionSpec spec;
	SessionStatus status = SessionStatus::AwaitingHuman;
	Transcript transcript{Ruleset{}};
};

/// Error surfaced to clients as {code, stage?, reason}.
class ServiceError : public std::runtime_error {
  public:
	ServiceError(int http_status, std::string code, std::string reason, std::optional<std::size_t> stage = std::nullopt)
	    : std::runtime_error(code + ": " + reason), http_status_(http_status), code_(std::move(code)), reason_(std::move(reason)),
	      stage_(stage) {}

	int http_status() const noexcept { return http_status_; }
	std::string const& code() const noexcept { return code_; }
	std::string const& reason() const noexcept { return reason_; }
	std::optional<std::size_t> stage() const noexcept { return stage_; }

	json to_json() const {
		json j{{"code", code_}, {"reason", reason_}};
		if (stage_) { j["stage"] = *stage_; }
		return j;
	}

  private:
	int http_status_;
	std::string code_;
	std::string reason_;
	std::optional<std::size_t> stage_;
};

struct ChainStatus {
	std::size_t position = 0;
	std::size_t stage = 0;
	Player player = Player::Bob;
	std::size_t ordinal = 0; ///< the mover's own move count; the decay bound is 2^-ordinal
	bool closure_nested = false;
	Rational diameter;
	Rational bound;
	bool decay_ok = false;
};

struct Diagnostics {
	AmbientSpace space = AmbientSpace::Real;
	std::optional<IntervalUnion> current_region;
	Rational diameter;
	Rational measure;
	std::vector<std::pair<std::uint64_t, Rational>> excluded; ///< (n, q_n) absent from Alice's n-th move
	std::vector<ChainStatus> chain;
	json certificates = json::array();
};

inline Diagnostics diagnose(Transcript const& t, Player engine_role) {
	Diagnostics d;
	d.space = t.ruleset().space;
	if (t.empty()) { return d; }
	d.current_region = t.last().region.set;
	d.diameter = diameter(*d.current_region);
	d.measure = measure(*d.current_region);

	auto const moves = t.moves();
	if (d.space == AmbientSpace::Rational) {
		std::uint64_t n = 0;
		for (auto const& m : moves) {
			if (m.player != Player::Alice) { continue; }
			Rational const q = enumerate_rational(++n);
			if (!m.region.set.contains(q)) { d.excluded.emplace_back(n, q); }
		}
		try {
			d.certificates.push_back(json{{"status", "verified"}, {"certificate", to_json(exclusion_certificate(t))}});
		} catch (CertificateFailure const& f) {
			d.certificates.push_back(json{{"status", "failed"}, {"kind", to_string(f.kind())}, {"stage", f.stage()}, {"reason", f.reason()}});
		}
	} else {
		std::size_t own[2] = {0, 0};
		for (std::size_t k = 0; k < moves.size(); ++k) {
			auto const& m = moves[k];
			std::size_t const j = ++own[m.player == Player::Alice ? 0 : 1];
			IntervalUnion const prev = k == 0 ? unit_interval() : moves[k - 1].region.set;
			ChainStatus s{k, m.index, m.player, j, closure_subset(m.region.set, prev), diameter(m.region.set),
			              Rational::dyadic(static_cast<unsigned>(j)), false};
			s.decay_ok = !(s.bound < s.diameter);
			d.chain.push_back(std::move(s));
		}
		try {
			d.certificates.push_back(json{{"status", "verified"}, {"certificate", to_json(localization_certificate(t, engine_role))}});
		} catch (CertificateFailure const& f) {
			d.certificates.push_back(json{{"status", "failed"}, {"kind", to_string(f.kind())}, {"stage", f.stage()}, {"reason", f.reason()}});
		}
	}
	return d;
}

inline json to_json(Diagnostics const& d) {
	json excluded = json::array();
	for (auto const& [n, q] : d.excluded) { excluded.push_back(json{{"n", n}, {"point", to_json(q)}}); }
	json chain = json::array();
	for (auto const& s : d.chain) {
		chain.push_back(json{{"position", s.position},
		                     {"stage", s.stage},
		                     {"player", to_string(s.player)},
		                     {"ordinal", s.ordinal},
		                     {"closure_nested", s.closure_nested},
		                     {"diameter", to_json(s.diameter)},
		                     {"bound", to_json(s.bound)},
		                     {"decay_ok", s.decay_ok}});
	}
	return json{{"space", to_string(d.space)},
	            {"current_region", d.current_region ? to_json(*d.current_region) : json(nullptr)},
	            {"diameter", to_json(d.diameter)},
	            {"measure", to_json(d.measure)},
	            {"excluded_points", std::move(excluded)},
	            {"chain", std::move(chain)},
	            {"certificates", d.certificates}};
}

inline json to_json(SessionView const& s) {
	return json{{"id", s.id},
	            {"ruleset", to_json(s.spec.ruleset)},
	            {"engine_role", to_string(s.spec.engine_role)},
	            {"engine_strategy", s.spec.engine_strategy},
	            {"status", to_string(s.status)},
	            {"transcript", to_json(s.transcript)}};
}

class SessionManager {
  public:
	SessionManager() = default;
	/// Writes each session's transcript JSON to <dir>/<id>.json after every change.
	explicit SessionManager(std::filesystem::path snapshot_dir) : snapshot_dir_(std::move(snapshot_dir)) {}

	SessionView create(SessionSpec spec) {
		if (spec.ruleset.max_depth < 1) { throw ServiceError(400, "BadRequest", "max_depth must be >= 1"); }
		std::optional<Strategy> engine;
		try {
			engine = make_strategy(spec.engine_strategy);
		} catch (UnknownStrategy const& e) {
			throw ServiceError(400, "UnknownStrategy", e.what());
		}
		auto session = std::make_shared<Session>(spec, std::move(*engine));
		std::string id;
		{
			std::unique_lock lock(registry_mutex_);
			id = "s" + std::to_string(++next_id_);
			sessions_.emplace(id, session);
		}
		std::lock_guard guard(session->mutex);
		engine_turn(id, *session);
		persist(id, *session);
		return view(id, *session);
	}

	SessionView get(std::string const& id) const {
		auto s = find(id);
		std::lock_guard guard(s->mutex);
		return view(id, *s);
	}

	SessionView submit(std::string const& id, IntervalUnion const& set) {
		auto s = find(id);
		std::lock_guard guard(s->mutex);
		if (auto v = legal_move(s->transcript, Region{s->spec.ruleset.space, set})) {
			throw ServiceError(v->kind == ViolationKind::GameOver ? 409 : 422, std::string(to_string(v->kind)), v->reason,
			                   s->transcript.next_index());
		}
		if (s->transcript.to_move() == s->spec.engine_role) {
			throw ServiceError(409, "NotYourTurn", "the engine is to move", s->transcript.next_index());
		}
		s->transcript = apply_move(s->transcript, Region{s->spec.ruleset.space, set});
		engine_turn(id, *s);
		persist(id, *s);
		return view(id, *s);
	}

	Diagnostics diagnostics(std::string const& id) const {
		auto s = find(id);
		std::lock_guard guard(s->mutex);
		return diagnose(s->transcript, s->spec.engine_role);
	}

	/// Writes the session's transcript JSON to a file.
	void snapshot(std::string const& id, std::filesystem::path const& path) const {
		auto s = find(id);
		std::lock_guard guard(s->mutex);
		write_snapshot(*s, path);
	}

  private:
	struct Session {
		Session(SessionSpec sp, Strategy eng) : spec(std::move(sp)), engine(std::move(eng)), transcript(new_game(spec.ruleset)) {}

		mutable std::mutex mutex;
		SessionSpec spec;
		Strategy engine;
		Transcript transcript;
	};

	std::shared_ptr<Session> find(std::string const& id) const {
		std::shared_lock lock(registry_mutex_);
		auto it = sessions_.find(id);
		if (it == sessions_.end()) { throw ServiceError(404, "UnknownSession", "no session \"" + id + "\""); }
		return it->second;
	}

	static SessionStatus status_of(Session const& s) {
		if (s.transcript.finished()) { return SessionStatus::DepthReached; }
		return s.transcript.to_move() == s.spec.engine_role ? SessionStatus::AwaitingEngine : SessionStatus::AwaitingHuman;
	}

	static SessionView view(std::string const& id, Session const& s) { return SessionView{id, s.spec, status_of(s), s.transcript}; }

	static void engine_turn(std::string const& id, Session& s) {
		if (s.transcript.finished() || s.transcript.to_move() != s.spec.engine_role) { return; }
		Region move = [&] {
			try {
				return strategy_move(s.engine, s.transcript);
			} catch (std::exception const& e) {
				throw ServiceError(500, "EngineFault", "session " + id + ": " + e.what(), s.transcript.next_index());
			}
		}();
		if (auto v = legal_move(s.transcript, move)) {
			throw ServiceError(500, "EngineFault", "session " + id + ": engine move rejected: " + v->reason, s.transcript.next_index());
		}
		s.transcript = apply_move(s.transcript, move);
	}

	static void write_snapshot(Session const& s, std::filesystem::path const& path) {
		std::ofstream f(path, std::ios::binary);
		if (!f) { throw ServiceError(500, "SnapshotFailed", "cannot write " + path.string()); }
		f << to_json(s.transcript).dump(2) << "\n";
	}

	void persist(std::string const& id, Session const& s) const {
		if (snapshot_dir_) { write_snapshot(s, *snapshot_dir_ / (id + ".json")); }
	}

	std::optional<std::filesystem::path> snapshot_dir_;
	mutable std::shared_mutex registry_mutex_;
	std::map<std::string, std::shared_ptr<Session>> sessions_;
	std::uint64_t next_id_ = 0;
};

/// Request body for session creation:
/// {"ruleset": {...}, "engine_role": "alice"|"bob", "engine_strategy": "<id>"}
inline SessionSpec session_spec_from_json(json const& j) {
	try {
		SessionSpec spec;
		spec.ruleset = ruleset_from_json(detail::field(j, "ruleset"));
		spec.engine_role = parse_player(detail::text(detail::field(j, "engine_role"), "engine_role"));
		spec.engine_strategy = detail::text(detail::field(j, "engine_strategy"), "engine_strategy");
		return spec;
	} catch (std::exception const& e) {
		throw ServiceError(400, "BadRequest", e.what());
	}
}

} // namespace bmgame
