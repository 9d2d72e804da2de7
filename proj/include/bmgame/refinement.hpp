#pragma once

/**
 * @file refinement.hpp
 * @brief Disjoint dense refinements and the layered tree built from a strategy.
 *
 * disjoint_refinement is a finite sweep: repeatedly take the leftmost
 * uncovered component of length >= eps, apply f to it, and remove the
 * closure of the image from the uncovered set. Images are pairwise disjoint
 * because each one lies in a region whose earlier images' closures were
 * removed. On success every uncovered gap is shorter than eps.
 *
 * sigma_refinement_tree runs that sweep against a first-moving strategy:
 * layer 0 refines the strategy's opening move through its replies, and
 * each member of layer n is refined again through the strategy's replies
 * continuing that member's history.
 */

#include "strategies.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bmgame {

struct RefinementPair {
	IntervalUnion input;  ///< V, a component of the uncovered set
	IntervalUnion output; ///< f(V)

	friend bool operator==(RefinementPair const&, RefinementPair const&) = default;
};

struct RefinementFamily {
	IntervalUnion base;
	std::vector<RefinementPair> pairs;
	Rational residual_resolution;

	friend bool operator==(RefinementFamily const&, RefinementFamily const&) = default;
};

using RefinementMap = std::function<IntervalUnion(IntervalUnion const&)>;

/// base minus the closures of every output.
inline IntervalUnion uncovered(IntervalUnion const& base, std::span<RefinementPair const> pairs) {
	IntervalUnion rest = base;
	for (auto const& p : pairs) { rest = subtract_closure(std::move(rest), p.output); }
	return rest;
}

/// Exact check of the family invariants; returns a description of the first
/// violation, or nullopt.
inline std::optional<std::string> refinement_violation(RefinementFamily const& fam) {
	for (std::size_t i = 0; i < fam.pairs.size(); ++i) {
		auto const& p = fam.pairs[i];
		if (!is_subset(p.output, p.input)) { return "pair " + std::to_string(i) + ": f(V) is not inside V"; }
		if (!is_subset(p.input, fam.base)) { return "pair " + std::to_string(i) + ": V is not inside the base"; }
		for (std::size_t j = 0; j < i; ++j) {
			if (!intersect(p.output, fam.pairs[j].output).empty()) {
				return "outputs " + std::to_string(j) + " and " + std::to_string(i) + " overlap";
			}
		}
	}
	if (!(longest_component(uncovered(fam.base, fam.pairs)) < fam.residual_resolution)) {
		return "an uncovered gap is not shorter than the resolution";
	}
	return std::nullopt;
}

class CapExceeded : public std::runtime_error {
  public:
	CapExceeded(RefinementFamily partial, Rational achieved, std::vector<IntervalUnion> history = {})
	    : std::runtime_error("refinement cap exceeded; longest uncovered gap " + achieved.to_string() +
	                         (history.empty() ? std::string() : " after history of length " + std::to_string(history.size()))),
	      partial_(std::move(partial)), achieved_(std::move(achieved)), history_(std::move(history)) {}

	RefinementFamily const& partial() const noexcept { return partial_; }
	Rational const& achieved_resolution() const noexcept { return achieved_; }
	/// Opponent moves leading to the refinement that failed (tree builds only).
	std::vector<IntervalUnion> const& history() const noexcept { return history_; }

  private:
	RefinementFamily partial_;
	Rational achieved_;
	std::vector<IntervalUnion> history_;
};

inline RefinementFamily disjoint_refinement(IntervalUnion const& base, RefinementMap const& f, Rational const& eps, std::size_t cap) {
	if (base.empty()) { throw std::invalid_argument("refinement base must be nonempty"); }
	if (!(Rational(0) < eps)) { throw std::invalid_argument("refinement resolution must be positive"); }
	if (cap < 1) { throw std::invalid_argument("refinement cap must be >= 1"); }

	RefinementFamily fam{base, {}, eps};
	IntervalUnion rest = base;
	auto wide = [&]() -> OpenInterval const* {
		for (auto const& c : rest.components()) {
			if (!(c.length() < eps)) { return &c; }
		}
		return nullptr;
	};
	for (OpenInterval const* c = wide(); c != nullptr; c = wide()) {
		if (fam.pairs.size() == cap) { throw CapExceeded(std::move(fam), longest_component(rest)); }
		IntervalUnion input(*c);
		IntervalUnion output = f(input);
		if (output.empty() || !is_subset(output, input)) {
			throw std::invalid_argument("refinement map must return a nonempty subset of its argument");
		}
		rest = subtract_closure(std::move(rest), output);
		fam.pairs.push_back({std::move(input), std::move(output)});
	}
	return fam;
}

/// Left third of the leftmost component.
inline IntervalUnion left_third(IntervalUnion const& v) {
	auto const& c = v.front();
	return OpenInterval(c.lo(), c.lo() + c.length() / Rational(3));
}

struct RefinementNode {
	std::optional<std::size_t> parent; ///< index into the previous layer's nodes
	std::size_t family = 0;            ///< index into this layer's families
	IntervalUnion input;
	IntervalUnion output;

	friend bool operator==(RefinementNode const&, RefinementNode const&) = default;
};

struct RefinementLayer {
	std::vector<RefinementFamily> families;
	std::vector<std::optional<std::size_t>> family_parent; ///< member refined by each family
	std::vector<RefinementNode> nodes;

	friend bool operator==(RefinementLayer const&, RefinementLayer const&) = default;
};

struct RefinementTree {
	std::string strategy;
	AmbientSpace space = AmbientSpace::Real;
	IntervalUnion root; ///< the strategy's opening move U_0
	Rational resolution;
	std::vector<RefinementLayer> layers;

	/// Opponent inputs along the path ending at layers[layer].nodes[index].
	std::vector<IntervalUnion> history(std::size_t layer, std::size_t index) const {
		std::vector<IntervalUnion> h(layer + 1);
		std::optional<std::size_t> at = index;
		for (std::size_t l = layer + 1; l-- > 0;) {
			auto const& node = layers[l].nodes[*at];
			h[l] = node.input;
			at = node.parent;
		}
		return h;
	}

	/// Maximal root-to-member paths as (layer, index) of their last node.
	std::vector<std::pair<std::size_t, std::size_t>> chain_ends() const {
		std::vector<std::pair<std::size_t, std::size_t>> ends;
		for (std::size_t l = 0; l < layers.size(); ++l) {
			std::vector<bool> has_child(layers[l].nodes.size(), false);
			if (l + 1 < layers.size()) {
				for (auto const& n : layers[l + 1].nodes) { has_child[*n.parent] = true; }
			}
			for (std::size_t i = 0; i < has_child.size(); ++i) {
				if (!has_child[i]) { ends.emplace_back(l, i); }
			}
		}
		return ends;
	}

	/// The play U_0, V_0, sigma(V_0), V_1, ... ending at a member.
	std::vector<IntervalUnion> chain_play(std::size_t layer, std::size_t index) const {
		std::vector<IntervalUnion> play{root};
		std::vector<RefinementNode const*> path(layer + 1);
		std::optional<std::size_t> at = index;
		for (std::size_t l = layer + 1; l-- > 0;) {
			path[l] = &layers[l].nodes[*at];
			at = path[l]->parent;
		}
		for (auto const* n : path) {
			play.push_back(n->input);
			play.push_back(n->output);
		}
		return play;
	}

	/// Longest gap of root minus the closures of layer n's outputs.
	Rational layer_gap(std::size_t layer) const {
		IntervalUnion rest = root;
		for (auto const& n : layers[layer].nodes) { rest = subtract_closure(std::move(rest), n.output); }
		return longest_component(rest);
	}
};

inline RefinementTree sigma_refinement_tree(Strategy const& sigma, std::size_t depth, Rational const& eps, std::size_t cap,
                                            AmbientSpace space = AmbientSpace::Real) {
	if (depth < 1) { throw std::invalid_argument("tree depth must be >= 1"); }
	RefinementTree tree{sigma.name(), space, sigma.next(space, {}, 1).set, eps, {}};

	auto respond = [&](std::vector<IntervalUnion> history) {
		return [&sigma, space, history = std::move(history)](IntervalUnion const& v) {
			std::vector<Region> opp;
			for (auto const& h : history) { opp.push_back(Region{space, h}); }
			opp.push_back(Region{space, v});
			return sigma.next(space, opp, opp.size() + 1).set;
		};
	};
	auto refine = [&](RefinementLayer& layer, IntervalUnion const& base, std::vector<IntervalUnion> history,
	                  std::optional<std::size_t> parent) {
		RefinementFamily fam = [&] {
			try {
				return disjoint_refinement(base, respond(history), eps, cap);
			} catch (CapExceeded const& e) {
				throw CapExceeded(e.partial(), e.achieved_resolution(), std::move(history));
			}
		}();
		std::size_t const fam_index = layer.families.size();
		for (auto const& p : fam.pairs) { layer.nodes.push_back({parent, fam_index, p.input, p.output}); }
		layer.families.push_back(std::move(fam));
		layer.family_parent.push_back(parent);
	};

	RefinementLayer first;
	refine(first, tree.root, {}, std::nullopt);
	tree.layers.push_back(std::move(first));
	for (std::size_t l = 1; l < depth; ++l) {
		RefinementLayer next;
		auto const& prev = tree.layers[l - 1];
		for (std::size_t i = 0; i < prev.nodes.size(); ++i) {
			refine(next, prev.nodes[i].output, tree.history(l - 1, i), i);
		}
		tree.layers.push_back(std::move(next));
	}
	return tree;
}

} // namespace bmgame
