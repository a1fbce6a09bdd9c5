// Argument parsing for the netparadox tool (CLI11). Settings can also come
// from an INI/TOML file given with --config; flags on the command line win
// over the file, the file over built-in defaults.

#include <CLI11.hpp>

#include "netparadox/cli.hpp"
#include "netparadox/errors.hpp"

namespace {

using netparadox::cli::RunConfig;

void add_common(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  sub.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub.add_option("--out", cfg.out, "Output directory")->capture_default_str();
  sub.add_option("--threads", cfg.threads, "Worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);
}

void add_inputs(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--edges", cfg.edges, "Edge list: one 'follower friend' pair per line");
  sub.add_option("--attr", cfg.attrs, "Node attribute file as NAME=PATH (repeatable)");
  sub.add_option("--events", cfg.events, "Event log CSV (time,actor,action,item)");
  sub.add_flag("--require-activity", cfg.require_activity,
               "Drop nodes with no events before analysis");
  sub.add_option("--bins-per-decade", cfg.bins_per_decade, "Log bins per factor of ten")
      ->capture_default_str();
}

}  // namespace

namespace netparadox::cli {

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak and strong network paradoxes on directed graphs"};
  app.set_version_flag("--version", std::string("netparadox ") + kToolVersion);
  app.set_config("--config", "", "Read settings from an INI/TOML file");
  app.require_subcommand(1);

  RunConfig cfg;

  auto* demo = app.add_subcommand("karate-demo", "Friendship and skill paradoxes on the karate club");
  add_common(*demo, cfg);

  auto* analyze = app.add_subcommand("analyze", "Paradoxes, histograms and correlations");
  add_common(*analyze, cfg);
  add_inputs(*analyze, cfg);

  auto* shuffle = app.add_subcommand("shuffle-test", "Paradoxes before and after attribute shuffles");
  add_common(*shuffle, cfg);
  add_inputs(*shuffle, cfg);
  shuffle->add_option("--kind", cfg.kind, "Shuffle kind")
      ->check(CLI::IsMember({"full", "controlled"}))
      ->capture_default_str();
  shuffle->add_option("--runs", cfg.runs, "Shuffle realizations")->capture_default_str();

  auto* origins = app.add_subcommand("statistical-origins",
                                     "Sample-size scaling and the iid random-network paradox");
  add_common(*origins, cfg);
  origins->add_option("--dist", cfg.distributions, "Distributions for the scaling curves")
      ->capture_default_str();
  origins->add_option("--sizes", cfg.sizes, "Sample sizes, strictly increasing")
      ->delimiter(',')
      ->capture_default_str();
  origins->add_option("--trials", cfg.trials, "Samples per size")->capture_default_str();
  origins->add_option("--nodes", cfg.nodes, "Nodes in the random network")->capture_default_str();
  origins->add_option("--degree-dist", cfg.degree_dist, "Friend-count distribution")
      ->capture_default_str();
  origins->add_option("--attr-dist", cfg.attr_dist, "Attribute distribution")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_record(ConfigError(e.what())) << '\n';
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const auto res = run(cfg);
    for (const auto& w : res.warnings) err << "warning: " << w << '\n';
    for (const auto& s : res.summary) out << s << '\n';
    for (const auto& f : res.files) out << "wrote " << f << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << error_record(e) << '\n';
    return exit_code_for(e);
  }
}

}  // namespace netparadox::cli
