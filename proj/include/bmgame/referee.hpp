#pragma once

/**
 * @file referee.hpp
 * @brief Banach–Mazur game state machine: rulesets, legality, transcripts.
 *
 * Players alternate choosing nonempty open regions, each contained in the
 * previous one. A round is one move by each player; a game of max_depth
 * rounds ends after 2 * max_depth moves. The referee never declares a winner,
 * since the winning condition is about the infinite intersection; finite
 * evidence comes from the certificates in certificates.hpp.
 *
 * Transcripts are persistent: apply_move shares the existing history with
 * the new value, so branching a game is O(1).
 */

#include "spaces.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bmgame {

enum class Player { Alice, Bob };

inline Player other(Player p) { return p == Player::Alice ? Player::Bob : Player::Alice; }
inline std::string_view to_string(Player p) { return p == Player::Alice ? "alice" : "bob"; }
inline Player parse_player(std::string_view s) {
	if (s == "alice") { return Player::Alice; }
	if (s == "bob") { return Player::Bob; }
	throw std::invalid_argument("unknown player \"" + std::string(s) + "\" (expected alice|bob)");
}

enum class SubsetMode { Nonstrict, Strict };

inline std::string_view to_string(SubsetMode m) { return m == SubsetMode::Strict ? "strict" : "nonstrict"; }
inline SubsetMode parse_subset_mode(std::string_view s) {
	if (s == "strict") { return SubsetMode::Strict; }
	if (s == "nonstrict") { return SubsetMode::Nonstrict; }
	throw std::invalid_argument("unknown subset mode \"" + std::string(s) + "\" (expected strict|nonstrict)");
}

struct Ruleset {
	AmbientSpace space = AmbientSpace::Real;
	Player first_mover = Player::Bob;
	SubsetMode subset_mode = SubsetMode::Nonstrict;
	std::size_t max_depth = 1;

	friend bool operator==(Ruleset const&, Ruleset const&) = default;
};

struct Move {
	Player player = Player::Bob;
	Region region;
	std::size_t index = 0; ///< round number, 0-based: U_n and V_n share index n

	friend bool operator==(Move const&, Move const&) = default;
};

enum class ViolationKind { Empty, WrongSpace, NotSubset, NotStrict, GameOver };

inline std::string_view to_string(ViolationKind v) {
	switch (v) {
	case ViolationKind::Empty: return "Empty";
	case ViolationKind::WrongSpace: return "WrongSpace";
	case ViolationKind::NotSubset: return "NotSubset";
	case ViolationKind::NotStrict: return "NotStrict";
	case ViolationKind::GameOver: return "GameOver";
	}
	return "?";
}

struct Violation {
	ViolationKind kind;
	std::size_t position; ///< 0-based position the rejected move would have taken
	std::string reason;
};

class IllegalMove : public std::runtime_error {
  public:
	explicit IllegalMove(Violation v)
	    : std::runtime_error(std::string(to_string(v.kind)) + " at move " + std::to_string(v.position) + ": " + v.reason),
	      violation_(std::move(v)) {}
	Violation const& violation() const noexcept { return violation_; }

  private:
	Violation violation_;
};

class Transcript {
  public:
	explicit Transcript(Ruleset rules) : rules_(rules) {
		if (rules_.max_depth < 1) { throw std::invalid_argument("ruleset max_depth must be >= 1"); }
	}

	Ruleset const& ruleset() const noexcept { return rules_; }
	std::size_t size() const noexcept { return size_; }
	bool empty() const noexcept { return size_ == 0; }
	bool finished() const noexcept { return size_ >= 2 * rules_.max_depth; }

	Player to_move() const { return size_ % 2 == 0 ? rules_.first_mover : other(rules_.first_mover); }
	std::size_t next_index() const noexcept { return size_ / 2; }

	Move const& last() const {
		if (!tail_) { throw std::out_of_range("empty transcript has no last move"); }
		return tail_->move;
	}

	/// The region the next move must refine: the last move, or the whole board.
	Region current_region() const { return tail_ ? tail_->move.region : whole_space(rules_.space); }

	std::vector<Move> moves() const {
		std::vector<Move> out(size_);
		std::size_t i = size_;
		for (Node const* n = tail_.get(); n != nullptr; n = n->prev.get()) { out[--i] = n->move; }
		return out;
	}

	/// Moves made by one player, oldest first.
	std::vector<Region> moves_of(Player p) const {
		std::vector<Region> out;
		for (auto const& m : moves()) {
			if (m.player == p) { out.push_back(m.region); }
		}
		return out;
	}

	friend bool operator==(Transcript const& a, Transcript const& b) {
		return a.rules_ == b.rules_ && a.moves() == b.moves();
	}

  private:
	struct Node {
		Move move;
		std::shared_ptr<Node const> prev;
	};

	friend Transcript apply_move(Transcript const&, Region const&);

	Ruleset rules_;
	std::shared_ptr<Node const> tail_;
	std::size_t size_ = 0;
};

inline Transcript new_game(Ruleset const& rules) { return Transcript(rules); }

inline std::optional<Violation> legal_move(Transcript const& t, Region const& region) {
	auto const pos = t.size();
	if (t.finished()) {
		return Violation{ViolationKind::GameOver, pos, "all " + std::to_string(t.ruleset().max_depth) + " rounds have been played"};
	}
	if (region.empty()) { return Violation{ViolationKind::Empty, pos, "region must be nonempty"}; }
	if (region.space != t.ruleset().space) {
		return Violation{ViolationKind::WrongSpace, pos,
		                 "region is on the " + std::string(to_string(region.space)) + " board, game is on the " +
		                     std::string(to_string(t.ruleset().space)) + " board"};
	}
	Region const prev = t.current_region();
	if (!is_subset(region.set, prev.set)) {
		return Violation{ViolationKind::NotSubset, pos,
		                 t.empty() ? "region is not inside (0,1)" : "region is not inside the previous move"};
	}
	if (t.ruleset().subset_mode == SubsetMode::Strict && region.set == prev.set) {
		return Violation{ViolationKind::NotStrict, pos, "strict mode requires a proper subset"};
	}
	return std::nullopt;
}

inline Transcript apply_move(Transcript const& t, Region const& region) {
	if (auto v = legal_move(t, region)) { throw IllegalMove(std::move(*v)); }
	Transcript next(t.ruleset());
	next.tail_ = std::make_shared<Transcript::Node const>(
	    Transcript::Node{Move{t.to_move(), region, t.next_index()}, t.tail_});
	next.size_ = t.size_ + 1;
	return next;
}

} // namespace bmgame
