// bmgame: play matches, build category-theorem points, run refinements,
// verify transcripts, and serve interactive sessions.

#include <bmgame/cli.hpp>
#include <bmgame/http_service.hpp>

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
	CLI::App app{"Banach-Mazur game engine and strategy laboratory"};
	app.require_subcommand(1);

	bmgame::cli::PlayOptions play;
	auto* play_cmd = app.add_subcommand("play", "Play a match between two strategies and certify it");
	play_cmd->add_option("--space", play.space, "real | rational")->capture_default_str();
	play_cmd->add_option("--first", play.first, "Strategy id of the first mover")->required();
	play_cmd->add_option("--second", play.second, "Strategy id of the second mover")->required();
	play_cmd->add_option("--depth", play.depth, "Number of rounds")->required();
	play_cmd->add_option("--out", play.out_path, "Transcript JSON path");
	play_cmd->add_option("--first-mover", play.first_mover, "alice | bob")->capture_default_str();
	play_cmd->add_option("--subset-mode", play.subset_mode, "nonstrict | strict")->capture_default_str();

	bmgame::cli::BaireOptions baire;
	auto* baire_cmd = app.add_subcommand("baire", "Approximate a point of the intersection of dense open sets inside a ball");
	baire_cmd->add_option("--center", baire.center, "Ball center p/q")->capture_default_str();
	baire_cmd->add_option("--radius", baire.radius, "Ball radius p/q")->capture_default_str();
	baire_cmd->add_option("--depth", baire.depth, "Nesting stages")->capture_default_str();
	baire_cmd->add_option("--per-stage", baire.per_stage, "Enumerated rationals removed per stage")->capture_default_str();
	baire_cmd->add_option("--out", baire.out_path, "Report JSON path");

	bmgame::cli::RefineOptions refine;
	auto* refine_cmd = app.add_subcommand("refine", "Greedy disjoint dense refinement, or a refinement tree against a strategy");
	refine_cmd->add_option("--map", refine.map, "left-third | identity | tiny-left")->capture_default_str();
	refine_cmd->add_option("--eps", refine.eps, "Resolution p/q")->capture_default_str();
	refine_cmd->add_option("--cap", refine.cap, "Iteration cap per refinement")->capture_default_str();
	refine_cmd->add_option("--sigma", refine.sigma, "Build a tree against this first-moving strategy");
	refine_cmd->add_option("--depth", refine.depth, "Tree layers (with --sigma)")->capture_default_str();
	refine_cmd->add_option("--space", refine.space, "real | rational (with --sigma)")->capture_default_str();
	refine_cmd->add_option("--out", refine.out_path, "JSON output path");

	std::string verify_path;
	auto* verify_cmd = app.add_subcommand("verify", "Replay a transcript file and re-check its certificates");
	verify_cmd->add_option("path", verify_path, "Transcript JSON")->required();

	std::string host = "127.0.0.1";
	int port = 8080;
	std::string snapshot_dir;
	auto* serve_cmd = app.add_subcommand("serve", "Serve the session JSON API over HTTP");
	serve_cmd->add_option("--host", host)->capture_default_str();
	serve_cmd->add_option("--port", port)->capture_default_str();
	serve_cmd->add_option("--snapshot-dir", snapshot_dir, "Write each session transcript here after every move");

	try {
		app.parse(argc, argv);
	} catch (CLI::ParseError const& e) {
		int const code = app.exit(e);
		return code == 0 ? 0 : bmgame::cli::usage;
	}

	if (*play_cmd) { return bmgame::cli::play(play, std::cout, std::cerr); }
	if (*baire_cmd) { return bmgame::cli::baire(baire, std::cout, std::cerr); }
	if (*refine_cmd) { return bmgame::cli::refine(refine, std::cout, std::cerr); }
	if (*verify_cmd) { return bmgame::cli::verify(verify_path, std::cout, std::cerr); }

	bmgame::SessionManager sessions = snapshot_dir.empty() ? bmgame::SessionManager() : bmgame::SessionManager(snapshot_dir);
	httplib::Server server;
	bmgame::mount(server, sessions);
	std::cout << "listening on http://" << host << ":" << port << "\n";
	if (!server.listen(host, port)) {
		std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
		return bmgame::cli::usage;
	}
	return 0;
}
