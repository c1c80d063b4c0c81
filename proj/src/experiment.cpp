#include "permlab/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "parallel.hpp"

namespace permlab {

namespace {

const std::set<std::string> kCommands{"alpha", "enumerate", "mc", "chain", "growth", "bounds"};

const std::set<std::string> kConfigKeys{"command", "q",      "weights", "n",     "s",       "ell",
                                        "N",       "seed",   "workers", "stat",  "z",       "event",
                                        "given",   "claims", "T",       "delta", "epsilon", "J",
                                        "out",     "format"};

template <typename T>
void read(const Json& j, const char* key, T& target) {
  if (!j.contains(key)) return;
  try {
    target = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadConfig, std::string("config field '") + key + "': " + e.what());
  }
}

EntryDistribution distribution_of(const ExperimentConfig& c) {
  const Field f = Field::make(c.q);
  return c.weights.empty() ? uniform_distribution(f) : make_distribution(f, c.weights);
}

Json make_record(const ExperimentConfig& c, const std::string& kind, std::size_t index, Json result) {
  return {{"schema", kSchemaVersion},
          {"kind", kind},
          {"version", kArtifactVersion},
          {"config", to_json(c)},
          {"config_hash", config_hash(c)},
          {"seed", c.seed},
          {"workers", c.workers},
          {"index", index},
          {"result", std::move(result)}};
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::vector<Json> run_alpha(const ExperimentConfig& c) {
  factor_prime_power(c.q);
  const std::size_t max_n = c.n == 0 ? 10 : c.n;
  Json ladder = Json::array();
  for (std::size_t n = 1; n <= max_n; ++n) {
    const Rational r = exact_det_singular_prob(n, c.q);
    ladder.push_back({{"n", n}, {"det_singular", static_cast<double>(r)}, {"exact", r.str()}});
  }
  return {make_record(c, "alpha", 0, {{"q", c.q}, {"alpha", alpha(c.q)}, {"ladder", ladder}})};
}

std::vector<Json> run_enumerate(const ExperimentConfig& c) {
  const EntryDistribution dist = distribution_of(c);
  const Statistic stat = parse_statistic(c.stat);
  Json result;
  if (dist.uniform()) {
    const ExactCounts counts = enumerate_exact(c.n, c.q, stat, c.workers);
    result = to_json(counts);
    bool equal = true;
    for (Value z = 2; z < counts.q; ++z) equal = equal && counts.counts[z] == counts.counts[1];
    result["nonzero_equidistributed"] = equal;
  } else {
    result = {{"n", c.n},
              {"q", dist.field().q()},
              {"stat", to_string(stat)},
              {"weights", dist.weights()},
              {"probability", enumerate_weighted(c.n, dist, stat, c.workers)}};
  }
  return {make_record(c, "enumeration", 0, std::move(result))};
}

std::vector<Json> run_mc(const ExperimentConfig& c) {
  const EntryDistribution dist = distribution_of(c);
  const Statistic stat = parse_statistic(c.stat);
  const MatrixEvent event = parse_event(c.event, c.z, stat);
  const SamplingPlan plan{c.n, c.N, c.seed, c.workers};
  Json result;
  if (c.given.empty()) {
    result = to_json(mc_probability(event, dist, plan));
    result["given"] = nullptr;
  } else {
    const MatrixEvent cond = parse_event(c.given, c.z, stat);
    result = to_json(conditional_probability(cond, event, dist, plan));
    result["given"] = cond.name;
  }
  result["event"] = event.name;
  return {make_record(c, "estimate", 0, std::move(result))};
}

std::vector<Json> run_chain(const ExperimentConfig& c) {
  const EntryDistribution dist = distribution_of(c);
  const SamplingPlan plan{c.n, c.N, c.seed, c.workers};
  const double q = static_cast<double>(c.q);
  std::vector<Json> records;
  for (std::size_t s = 1; s <= c.s; ++s) {
    const Estimate cond = conditional_probability(occurs_E(s), occurs_E(s - 1), dist, plan);
    const Estimate plain = mc_probability(occurs_E(s - 1), dist, plan);
    const double bound = 1 - std::pow(q, -static_cast<double>(s));
    Json result{{"s", s},
                {"conditional", to_json(cond)},
                {"conditional_bound", dist.uniform() ? Json(bound) : Json(nullptr)},
                {"sigma_at_bound", cond.sigma_at(bound)},
                {"unconditional", to_json(plain)},
                {"product_bound", dist.uniform() ? Json(det_survival_product(c.q, s, c.n)) : Json(nullptr)}};
    records.push_back(make_record(c, "chain_step", s - 1, std::move(result)));
  }
  return records;
}

std::vector<Json> run_growth(const ExperimentConfig& c) {
  const EntryDistribution dist = distribution_of(c);
  GrowthParams params{c.T, c.delta};
  const bool picked = c.T == 0;
  if (picked) params = pick_growth_params(dist, c.epsilon);
  IndexSet J = c.J;
  if (J.empty()) {
    for (std::size_t i = 0; i < 2 * params.T; ++i) J.push_back(i);
  }
  const std::size_t t_prime = growth_t_prime(params.T, params.delta);
  if (c.n < t_prime || c.n > kGrowthMaxN) {
    throw Error(c.n < t_prime ? ErrorCode::BadConfig : ErrorCode::SizeCap,
                "growth needs T' <= n <= " + std::to_string(kGrowthMaxN) + "; (T, delta) = (" +
                    std::to_string(params.T) + ", " + fmt("%g", params.delta) + ") gives T' = " +
                    std::to_string(t_prime) + ", n = " + std::to_string(c.n));
  }

  const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(64, c.N));
  std::vector<GrowthTrace> traces(c.N);
  const RandomStream root(c.seed);
  detail::for_each_chunk(chunks, c.workers, [&](std::size_t chunk) {
    const auto [begin, end] = detail::chunk_range(c.N, chunks, chunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      traces[i] = run_growth_process(dist, c.n, J, params.T, params.delta, root.split(i));
    }
  });

  std::vector<Json> records;
  std::uint64_t in_j = 0;
  double bad_sum = 0, bad_sq = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    in_j += traces[i].outcome == GrowthOutcome::SuccessInJ;
    bad_sum += static_cast<double>(traces[i].bad_steps);
    bad_sq += static_cast<double>(traces[i].bad_steps) * static_cast<double>(traces[i].bad_steps);
    records.push_back(make_record(c, "growth_trace", i, to_json(traces[i])));
  }
  const double runs = static_cast<double>(c.N);
  const double mean_bad = bad_sum / runs;
  const double sd_bad = c.N > 1 ? std::sqrt(std::max(0.0, (bad_sq - runs * mean_bad * mean_bad) / (runs - 1))) : 0;
  const Estimate success = make_estimate(in_j, c.N, c.seed, c.workers, c.N);
  Json summary{{"T", params.T},
               {"delta", params.delta},
               {"t_prime", t_prime},
               {"picked", picked},
               {"epsilon", c.epsilon},
               {"rho", dist.rho()},
               {"success_in_J", to_json(success)},
               {"success_lower_bound", growth_success_lower_bound(dist.rho(), c.n, params.T, params.delta)},
               {"mean_bad_steps", mean_bad},
               {"sd_bad_steps", sd_bad},
               {"bad_mean_bound", dist.rho() * static_cast<double>(t_prime - params.T)}};
  records.push_back(make_record(c, "growth_summary", traces.size(), std::move(summary)));
  return records;
}

std::vector<Json> run_bounds(const ExperimentConfig& c) {
  const EntryDistribution dist = distribution_of(c);
  BoundsRequest request;
  request.n = c.n;
  request.samples = c.N;
  request.seed = c.seed;
  request.workers = c.workers;
  for (const auto& name : c.claims) request.claims.push_back(parse_claim(name));
  if (request.claims.empty()) {
    for (Claim claim : all_claims()) {
      if (is_uniform_claim(claim) == dist.uniform() && (claim != Claim::AsymptoticP || c.n >= 3)) {
        request.claims.push_back(claim);
      }
    }
  }
  std::vector<Json> records;
  for (const auto& v : check_bounds(dist, request)) {
    records.push_back(make_record(c, "bound_verdict", records.size(), to_json(v)));
  }
  return records;
}

void flatten(const std::string& prefix, const Json& j, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(prefix.empty() ? key : prefix + "." + key, value, out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const ExperimentConfig& c) {
  return {{"command", c.command}, {"q", c.q},         {"weights", c.weights}, {"n", c.n},
          {"s", c.s},             {"ell", c.ell},     {"N", c.N},             {"seed", c.seed},
          {"workers", c.workers}, {"stat", c.stat},   {"z", c.z},             {"event", c.event},
          {"given", c.given},     {"claims", c.claims}, {"T", c.T},           {"delta", c.delta},
          {"epsilon", c.epsilon}, {"J", index_set_to_json(c.J)}, {"out", c.out}, {"format", c.format}};
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::BadConfig, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kConfigKeys.count(key)) throw Error(ErrorCode::BadConfig, "unknown config field '" + key + "'");
  }
  ExperimentConfig c;
  read(j, "command", c.command);
  read(j, "q", c.q);
  read(j, "weights", c.weights);
  read(j, "n", c.n);
  read(j, "s", c.s);
  read(j, "ell", c.ell);
  read(j, "N", c.N);
  read(j, "seed", c.seed);
  read(j, "workers", c.workers);
  read(j, "stat", c.stat);
  read(j, "z", c.z);
  read(j, "event", c.event);
  read(j, "given", c.given);
  read(j, "claims", c.claims);
  read(j, "T", c.T);
  read(j, "delta", c.delta);
  read(j, "epsilon", c.epsilon);
  if (j.contains("J")) c.J = index_set_from_json(j.at("J"));
  read(j, "out", c.out);
  read(j, "format", c.format);
  return c;
}

void validate(const ExperimentConfig& c) {
  if (!kCommands.count(c.command)) throw Error(ErrorCode::Usage, "unknown command '" + c.command + "'");
  if (c.format != "json" && c.format != "csv") throw Error(ErrorCode::Usage, "--format must be json or csv");
  if (c.workers == 0) throw Error(ErrorCode::BadConfig, "--workers must be >= 1");
  if (c.command == "alpha") return;
  const Field f = Field::make(c.q);
  if (!c.weights.empty()) make_distribution(f, c.weights);
  parse_statistic(c.stat);
  if (c.command != "enumerate" && c.N == 0) throw Error(ErrorCode::BadConfig, "--N must be >= 1");
  if (c.command == "mc") {
    parse_event(c.event, c.z, parse_statistic(c.stat));
    if (!c.given.empty()) parse_event(c.given, c.z, parse_statistic(c.stat));
    if (c.event.empty() && c.z >= f.q()) throw Error(ErrorCode::BadConfig, "--z must be a field element");
  }
  if (c.command == "chain" && c.s == 0) throw Error(ErrorCode::BadConfig, "--s must be >= 1");
  if (c.command == "growth") {
    if (c.T != 0 && !(c.delta > 0 && c.delta < 1)) throw Error(ErrorCode::BadConfig, "--delta must lie in (0, 1)");
    if (c.T == 0 && !(c.epsilon > 0 && c.epsilon < 1)) {
      throw Error(ErrorCode::BadConfig, "--epsilon must lie in (0, 1)");
    }
  }
  if (c.command == "bounds") {
    for (const auto& name : c.claims) parse_claim(name);
  }
}

std::string config_hash(const ExperimentConfig& config) {
  Json j = to_json(config);
  j.erase("out");
  j.erase("format");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MatrixEvent parse_event(const std::string& text, Value default_z, Statistic default_stat) {
  static const std::regex value_re(R"((per|det)(?:=(\d+))?)");
  static const std::regex e_re(R"(E\((\d+)(?:,(\d+))?\))");
  static const std::regex rank_re(R"(rankH>=(\d+))");
  std::smatch m;
  if (text.empty()) return default_stat == Statistic::Permanent ? per_equals(default_z) : det_equals(default_z);
  if (text == "true") return always();
  if (std::regex_match(text, m, value_re)) {
    const Value z = m[2].matched ? static_cast<Value>(std::stoul(m[2])) : default_z;
    return m[1] == "per" ? per_equals(z) : det_equals(z);
  }
  if (std::regex_match(text, m, e_re)) {
    return occurs_E(std::stoul(m[1]), m[2].matched ? std::stoul(m[2]) : 1);
  }
  if (std::regex_match(text, m, rank_re)) return rank_H_at_least(std::stoul(m[1]));
  throw Error(ErrorCode::Usage, "cannot parse event '" + text + "'");
}

std::vector<Json> run_experiment(const ExperimentConfig& config) {
  validate(config);
  if (config.command == "alpha") return run_alpha(config);
  if (config.command == "enumerate") return run_enumerate(config);
  if (config.command == "mc") return run_mc(config);
  if (config.command == "chain") return run_chain(config);
  if (config.command == "growth") return run_growth(config);
  return run_bounds(config);
}

bool any_violation(const std::vector<Json>& records) {
  for (const auto& r : records) {
    if (r.value("kind", "") == "bound_verdict" && r.at("result").value("verdict", "") == "VIOLATED") return true;
  }
  return false;
}

ReplaySummary replay_log(std::istream& log) {
  auto mismatch = [](const std::string& what) { throw Error(ErrorCode::ReplayMismatch, what); };
  std::map<std::string, std::vector<Json>> regenerated;
  ReplaySummary summary;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(log, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadConfig, "line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (record.value("schema", 0) != kSchemaVersion) mismatch(where + "unsupported schema");
    const ExperimentConfig config = config_from_json(record.at("config"));
    const std::string hash = config_hash(config);
    if (hash != record.at("config_hash").get<std::string>()) mismatch(where + "config hash does not match config");
    if (record.at("seed") != config.seed || record.at("workers") != config.workers) {
      mismatch(where + "seed/workers disagree with config");
    }
    auto it = regenerated.find(hash);
    if (it == regenerated.end()) {
      it = regenerated.emplace(hash, run_experiment(config)).first;
      ++summary.configs;
    }
    const auto index = record.at("index").get<std::size_t>();
    const std::string kind = record.at("kind").get<std::string>();
    const Json* fresh = nullptr;
    for (const auto& r : it->second) {
      if (r.at("index") == index && r.at("kind") == kind) fresh = &r;
    }
    if (!fresh) mismatch(where + "no regenerated " + kind + " record with index " + std::to_string(index));
    if (fresh->at("result") != record.at("result")) mismatch(where + kind + " result differs on re-execution");
    if (kind == "growth_trace") {
      verify_growth_trace(growth_trace_from_json(record.at("result")));
      ++summary.traces_verified;
    }
    ++summary.records;
  }
  return summary;
}

std::string render_table(const std::vector<Json>& records) {
  std::ostringstream os;
  std::string last_kind;
  std::size_t traces = 0;
  for (const auto& rec : records) {
    const std::string kind = rec.at("kind");
    const Json& r = rec.at("result");
    const bool header = kind != last_kind;
    last_kind = kind;
    if (kind == "alpha") {
      os << "q = " << r.at("q").get<std::uint64_t>() << "  alpha_q = " << fmt("%.10f", r.at("alpha")) << "\n";
      os << "   n  Pr[det = 0]     exact\n";
      for (const auto& row : r.at("ladder")) {
        os << fmt("%4.0f", row.at("n").get<double>()) << "  " << fmt("%.10f", row.at("det_singular")) << "  "
           << row.at("exact").get<std::string>() << "\n";
      }
    } else if (kind == "enumeration") {
      os << r.at("stat").get<std::string>() << " over F_" << r.at("q").get<std::uint64_t>() << ", n = "
         << r.at("n").get<std::size_t>() << "\n";
      const auto& probs = r.at("probability");
      os << "   z  " << (r.contains("counts") ? "       count  " : "") << "probability\n";
      for (std::size_t z = 0; z < probs.size(); ++z) {
        os << fmt("%4.0f", static_cast<double>(z)) << "  ";
        if (r.contains("counts")) {
          os << fmt("%12.0f", r.at("counts")[z].get<double>()) << "  " << fmt("%.10f", probs[z]) << "  "
             << r.at("exact")[z].get<std::string>();
        } else {
          os << fmt("%.12f", probs[z]);
        }
        os << "\n";
      }
      if (r.contains("total")) os << "total " << r.at("total").get<std::uint64_t>() << "\n";
    } else if (kind == "estimate") {
      os << "Pr[" << r.at("event").get<std::string>();
      if (!r.at("given").is_null()) os << " | " << r.at("given").get<std::string>();
      os << "] = " << fmt("%.6f", r.at("point")) << "  99% [" << fmt("%.6f", r.at("lo")) << ", "
         << fmt("%.6f", r.at("hi")) << "]  " << r.at("successes").get<std::uint64_t>() << "/"
         << r.at("samples").get<std::uint64_t>() << " (drawn " << r.at("attempted").get<std::uint64_t>() << ")\n";
    } else if (kind == "chain_step") {
      if (header) os << "   s  Pr[E(s-1)|E(s)]  1-q^-s     Pr[E(s-1)]  prod_{i>=s}(1-q^-i)\n";
      const Json& cond = r.at("conditional");
      const Json& plain = r.at("unconditional");
      os << fmt("%4.0f", r.at("s").get<double>()) << "  " << fmt("%.6f", cond.at("point")) << "         "
         << (r.at("conditional_bound").is_null() ? "   -    " : fmt("%.6f", r.at("conditional_bound"))) << "   "
         << fmt("%.6f", plain.at("point")) << "    "
         << (r.at("product_bound").is_null() ? "-" : fmt("%.6f", r.at("product_bound"))) << "\n";
    } else if (kind == "growth_trace") {
      ++traces;
    } else if (kind == "growth_summary") {
      const Json& s = r.at("success_in_J");
      os << traces << " runs, T = " << r.at("T").get<std::size_t>() << ", delta = " << fmt("%g", r.at("delta"))
         << ", T' = " << r.at("t_prime").get<std::size_t>() << "\n"
         << "  SUCCESS_IN_J  " << fmt("%.4f", s.at("point")) << "  99% [" << fmt("%.4f", s.at("lo")) << ", "
         << fmt("%.4f", s.at("hi")) << "]  lower bound " << fmt("%.4f", r.at("success_lower_bound")) << "\n"
         << "  bad steps     mean " << fmt("%.4f", r.at("mean_bad_steps")) << "  sd "
         << fmt("%.4f", r.at("sd_bad_steps")) << "  rho(T'-T) " << fmt("%.4f", r.at("bad_mean_bound")) << "\n";
    } else if (kind == "bound_verdict") {
      if (header) os << "claim                  z  Pr[per=z]   interval                  claimed range          verdict       margin\n";
      char line[256];
      std::snprintf(line, sizeof line, "%-20s %3u  %.6f  [%.6f, %.6f]  %s%.6f, %.6f%s  %-12s  %+.6f\n",
                    r.at("claim").get<std::string>().c_str(), r.at("z").get<unsigned>(),
                    r.at("point").get<double>(), r.at("lo").get<double>(), r.at("hi").get<double>(), "[",
                    r.at("lower").get<double>(), r.at("upper").get<double>(),
                    r.at("strict_upper").get<bool>() ? ")" : "]", r.at("verdict").get<std::string>().c_str(),
                    r.at("margin").get<double>());
      os << line;
    }
  }
  return os.str();
}

std::string render_csv(const std::vector<Json>& records) {
  std::vector<std::string> columns{"kind", "index", "config_hash", "seed", "workers"};
  std::vector<std::map<std::string, std::string>> rows;
  for (const auto& rec : records) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten("", rec.at("result"), cells);
    std::map<std::string, std::string> row{{"kind", rec.at("kind").get<std::string>()},
                                           {"index", rec.at("index").dump()},
                                           {"config_hash", rec.at("config_hash").get<std::string>()},
                                           {"seed", rec.at("seed").dump()},
                                           {"workers", rec.at("workers").dump()}};
    for (auto& [key, value] : cells) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
      row[key] = std::move(value);
    }
    rows.push_back(std::move(row));
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_cell(columns[i]);
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const auto it = row.find(columns[i]);
      os << (i ? "," : "") << (it == row.end() ? "" : csv_cell(it->second));
    }
    os << "\n";
  }
  return os.str();
}

std::string persist(const ExperimentConfig& config, const std::vector<Json>& records) {
  std::filesystem::path path = config.out;
  if (path.empty()) {
    const char* dir = std::getenv("PERMLAB_LOG_DIR");
    if (!dir || !*dir) return {};
    std::filesystem::create_directories(dir);
    path = std::filesystem::path(dir) / (config.format == "csv" ? "permlab.csv" : "permlab.jsonl");
  }
  if (config.format == "csv") {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw Error(ErrorCode::BadConfig, "cannot write " + path.string());
    os << render_csv(records);
  } else {
    std::ofstream os(path, std::ios::app);
    if (!os) throw Error(ErrorCode::BadConfig, "cannot write " + path.string());
    for (const auto& r : records) os << r.dump() << "\n";
  }
  return path.string();
}

}  // namespace permlab
