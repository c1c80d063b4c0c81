#include "permlab/json_io.hpp"

namespace permlab {

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadConfig, std::string("field '") + key + "': " + e.what());
  }
}

Json optional_index(const std::optional<std::size_t>& v) { return v ? Json(*v + 1) : Json(nullptr); }

std::optional<std::size_t> optional_index_from(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  const auto one_based = v.get<std::size_t>();
  if (one_based == 0) throw Error(ErrorCode::BadConfig, std::string("field '") + key + "' is 1-based");
  return one_based - 1;
}

}  // namespace

Json index_set_to_json(const IndexSet& set) {
  Json out = Json::array();
  for (auto i : set) out.push_back(i + 1);
  return out;
}

IndexSet index_set_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::BadConfig, "index set must be an array");
  IndexSet out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
      throw Error(ErrorCode::BadConfig, "index sets are 1-based positive integers");
    }
    out.push_back(v.get<std::size_t>() - 1);
  }
  return out;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<Value>(r.begin(), r.end()));
  }
  return {{"q", m.field().q()}, {"rows", rows}};
}

Matrix matrix_from_json(const Json& j) {
  const Field f = Field::make(get<std::uint64_t>(j, "q"));
  const auto rows = get<std::vector<std::vector<Value>>>(j, "rows");
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw Error(ErrorCode::BadConfig, "ragged matrix rows");
  }
  return Matrix::from_rows(f, rows);
}

Json to_json(const EntryDistribution& dist) { return {{"q", dist.field().q()}, {"weights", dist.weights()}}; }

EntryDistribution distribution_from_json(const Json& j) {
  const Field f = Field::make(get<std::uint64_t>(j, "q"));
  return make_distribution(f, get<std::vector<double>>(j, "weights"));
}

Json to_json(const EventReport& report) {
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) witnesses.push_back(index_set_to_json(w));
  return {{"s", report.s},
          {"ell", report.ell},
          {"holds", report.holds},
          {"witnesses", witnesses},
          {"exhaustive", report.exhaustive}};
}

Json to_json(const Estimate& e) {
  return {{"point", e.point}, {"samples", e.samples}, {"successes", e.successes}, {"lo", e.lo},
          {"hi", e.hi},       {"seed", e.seed},       {"workers", e.workers},     {"attempted", e.attempted}};
}

Estimate estimate_from_json(const Json& j) {
  Estimate e;
  e.point = get<double>(j, "point");
  e.samples = get<std::uint64_t>(j, "samples");
  e.successes = get<std::uint64_t>(j, "successes");
  e.lo = get<double>(j, "lo");
  e.hi = get<double>(j, "hi");
  e.seed = get<std::uint64_t>(j, "seed");
  e.workers = get<unsigned>(j, "workers");
  e.attempted = get<std::uint64_t>(j, "attempted");
  return e;
}

Json to_json(const BoundVerdict& v) {
  return {{"claim", to_string(v.claim)},
          {"n", v.n},
          {"q", v.q},
          {"weights", v.weights},
          {"z", v.z},
          {"lower", v.lower},
          {"upper", v.upper},
          {"strict_upper", v.strict_upper},
          {"point", v.point},
          {"lo", v.lo},
          {"hi", v.hi},
          {"exact", v.exact},
          {"samples", v.samples},
          {"successes", v.successes},
          {"verdict", to_string(v.verdict)},
          {"margin", v.margin},
          {"C", v.C},
          {"delta_p", v.delta}};
}

BoundVerdict bound_verdict_from_json(const Json& j) {
  BoundVerdict v;
  v.claim = parse_claim(get<std::string>(j, "claim"));
  v.n = get<std::size_t>(j, "n");
  v.q = get<std::uint32_t>(j, "q");
  v.weights = get<std::vector<double>>(j, "weights");
  v.z = get<Value>(j, "z");
  v.lower = get<double>(j, "lower");
  v.upper = get<double>(j, "upper");
  v.strict_upper = get<bool>(j, "strict_upper");
  v.point = get<double>(j, "point");
  v.lo = get<double>(j, "lo");
  v.hi = get<double>(j, "hi");
  v.exact = get<bool>(j, "exact");
  v.samples = get<std::uint64_t>(j, "samples");
  v.successes = get<std::uint64_t>(j, "successes");
  v.verdict = parse_verdict(get<std::string>(j, "verdict"));
  v.margin = get<double>(j, "margin");
  v.C = get<double>(j, "C");
  v.delta = get<double>(j, "delta_p");
  return v;
}

Json to_json(const ExactCounts& counts) {
  Json exact = Json::array();
  std::vector<double> probs;
  for (Value z = 0; z < counts.q; ++z) {
    const Rational r = counts.probability(z);
    exact.push_back(r.str());
    probs.push_back(static_cast<double>(r));
  }
  return {{"n", counts.n},           {"q", counts.q},      {"stat", to_string(counts.stat)},
          {"counts", counts.counts}, {"total", counts.total}, {"probability", probs},
          {"exact", exact}};
}

Json to_json(const GrowthTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"t", s.t}, {"phase", s.phase}, {"removed", optional_index(s.removed)}, {"bad", s.bad}});
  }
  return {{"n", trace.n},
          {"T", trace.T},
          {"delta", trace.delta},
          {"t_prime", trace.t_prime},
          {"J", index_set_to_json(trace.J)},
          {"q", trace.q},
          {"weights", trace.weights},
          {"stream", {{"seed", trace.seed}, {"path", trace.path}, {"counter", trace.counter}}},
          {"steps", steps},
          {"outcome", to_string(trace.outcome)},
          {"terminated_at", trace.terminated_at ? Json(*trace.terminated_at) : Json(nullptr)},
          {"final_set", index_set_to_json(trace.final_set)},
          {"bad_steps", trace.bad_steps}};
}

GrowthTrace growth_trace_from_json(const Json& j) {
  GrowthTrace t;
  try {
    t.n = get<std::size_t>(j, "n");
    t.T = get<std::size_t>(j, "T");
    t.delta = get<double>(j, "delta");
    t.t_prime = get<std::size_t>(j, "t_prime");
    t.J = index_set_from_json(j.at("J"));
    t.q = get<std::uint32_t>(j, "q");
    t.weights = get<std::vector<double>>(j, "weights");
    const Json& stream = j.at("stream");
    t.seed = get<std::uint64_t>(stream, "seed");
    t.path = get<std::vector<std::uint64_t>>(stream, "path");
    t.counter = get<std::uint64_t>(stream, "counter");
    for (const auto& s : j.at("steps")) {
      GrowthStep step;
      step.t = get<std::size_t>(s, "t");
      step.phase = get<int>(s, "phase");
      step.removed = optional_index_from(s, "removed");
      step.bad = get<bool>(s, "bad");
      t.steps.push_back(step);
    }
    t.outcome = parse_growth_outcome(get<std::string>(j, "outcome"));
    const Json& term = j.at("terminated_at");
    if (!term.is_null()) t.terminated_at = term.get<std::size_t>();
    t.final_set = index_set_from_json(j.at("final_set"));
    t.bad_steps = get<std::size_t>(j, "bad_steps");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadConfig, std::string("malformed growth trace: ") + e.what());
  }
  return t;
}

}  // namespace permlab
