// permlab: command-line front end for the finite-field random-matrix lab.
//
// Exit status: 0 success, 2 when any bound verdict is VIOLATED, 1 on errors.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "permlab/experiment.hpp"

using namespace permlab;

namespace {

void add_common(CLI::App* cmd, ExperimentConfig& c) {
  cmd->add_option("--q", c.q, "field order q = p^k")->capture_default_str();
  cmd->add_option("--weights", c.weights, "entry law over F_p, e.g. 0.6,0.3,0.1")->delimiter(',');
  cmd->add_option("--n", c.n, "matrix size")->capture_default_str();
  cmd->add_option("--N", c.N, "samples / runs")->capture_default_str();
  cmd->add_option("--seed", c.seed)->capture_default_str();
  cmd->add_option("--workers", c.workers)->capture_default_str();
  cmd->add_option("--out", c.out, "output file (JSON lines are appended)");
  cmd->add_option("--format", c.format, "json or csv")->capture_default_str();
}

int emit(const ExperimentConfig& config) {
  const std::vector<Json> records = run_experiment(config);
  std::cout << render_table(records);
  const std::string path = persist(config, records);
  if (!path.empty()) std::cout << "wrote " << records.size() << " record(s) to " << path << "\n";
  return any_violation(records) ? 2 : 0;
}

int replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Usage, "cannot open " + path);
  const ReplaySummary s = replay_log(in);
  std::cout << "replayed " << s.records << " record(s) from " << s.configs << " config(s); " << s.traces_verified
            << " growth trace(s) verified step by step\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-field random matrix laboratory"};
  app.require_subcommand(0, 1);

  ExperimentConfig c;
  std::string replay_path, config_path;
  std::vector<std::uint64_t> alpha_qs;
  std::vector<std::size_t> target;
  app.add_option("--replay", replay_path, "re-execute every record of a JSON-lines log or growth trace");
  app.add_option("--config", config_path, "run an ExperimentConfig stored as JSON");

  auto* alpha = app.add_subcommand("alpha", "alpha_q and Pr[det = 0] for n = 1..N");
  alpha->add_option("--q", alpha_qs, "one or more field orders")->required();
  alpha->add_option("--n", c.n, "ladder length (default 10)");
  alpha->add_option("--out", c.out);
  alpha->add_option("--format", c.format)->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "exact law of per/det over all q^(n^2) matrices");
  add_common(enumerate, c);
  enumerate->add_option("--stat", c.stat, "per or det")->capture_default_str();

  auto* mc = app.add_subcommand("mc", "Monte Carlo probability of an event");
  add_common(mc, c);
  mc->add_option("--stat", c.stat, "per or det")->capture_default_str();
  mc->add_option("--z", c.z, "target value for --stat")->capture_default_str();
  mc->add_option("--event", c.event, "per=z | det=z | E(s) | E(s,ell) | rankH>=r | true");
  mc->add_option("--given", c.given, "conditioning event, same grammar");

  auto* chain = app.add_subcommand("chain", "Pr[E(s-1) | E(s)] for s = 1..S");
  add_common(chain, c);
  chain->add_option("--s", c.s, "largest s")->capture_default_str();

  auto* growth = app.add_subcommand("growth", "nested-set growth process");
  add_common(growth, c);
  growth->add_option("--T", c.T, "target size; 0 derives (T, delta) from --epsilon")->capture_default_str();
  growth->add_option("--delta", c.delta);
  growth->add_option("--epsilon", c.epsilon)->capture_default_str();
  growth->add_option("--J", target, "1-based target columns (default 1..2T)")->delimiter(',');

  auto* bounds = app.add_subcommand("bounds", "verdicts for the Pr[per = z] claims");
  add_common(bounds, c);
  bounds->add_option("--claim", c.claims,
                     "trivial-lower-bound | separation-all-p | asymptotic-p | separation-general | asymptotic-general")
      ->delimiter(',');

  auto* replay_cmd = app.add_subcommand("replay", "re-execute a JSON-lines log");
  replay_cmd->add_option("log", replay_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!replay_path.empty()) return replay(replay_path);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorCode::Usage, "cannot open " + config_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadConfig, e.what());
      }
      return emit(config_from_json(j));
    }
    const auto subs = app.get_subcommands();
    if (subs.empty()) {
      std::cout << app.help();
      return 1;
    }
    c.command = subs.front()->get_name();
    for (auto j : target) {
      if (j == 0) throw Error(ErrorCode::Usage, "--J is 1-based");
      c.J.push_back(j - 1);
    }
    if (c.command == "alpha") {
      int status = 0;
      for (auto q : alpha_qs) {
        c.q = q;
        status = std::max(status, emit(c));
      }
      return status;
    }
    return emit(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
