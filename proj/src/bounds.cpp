#include "permlab/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "permlab/exact.hpp"

namespace permlab {

namespace {

struct ValueLaw {
  std::vector<double> point;
  std::vector<std::uint64_t> successes;
  std::vector<double> lo, hi;
  std::uint64_t samples = 0;
  bool exact = false;
};

ValueLaw exact_law(const EntryDistribution& dist, const BoundsRequest& request) {
  const std::uint32_t q = dist.field().q();
  ValueLaw law;
  law.exact = true;
  if (dist.uniform()) {
    const ExactCounts counts = enumerate_exact(request.n, q, Statistic::Permanent, request.workers);
    law.samples = counts.total;
    law.successes = counts.counts;
    for (std::uint32_t z = 0; z < q; ++z) {
      law.point.push_back(static_cast<double>(counts.probability(z)));
    }
  } else {
    law.point = enumerate_weighted(request.n, dist, Statistic::Permanent, request.workers);
    law.successes.assign(q, 0);
  }
  law.lo = law.hi = law.point;
  return law;
}

ValueLaw sampled_law(const EntryDistribution& dist, const BoundsRequest& request) {
  ValueLaw law;
  law.samples = request.samples;
  law.successes = mc_value_counts(Statistic::Permanent, dist, {request.n, request.samples, request.seed,
                                                               request.workers});
  for (auto s : law.successes) {
    const Estimate e = make_estimate(s, law.samples, request.seed, request.workers, law.samples);
    law.point.push_back(e.point);
    law.lo.push_back(e.lo);
    law.hi.push_back(e.hi);
  }
  return law;
}

void validate(const EntryDistribution& dist, const BoundsRequest& request) {
  const Field& f = dist.field();
  if (f.p() == 2) throw Error(ErrorCode::CharacteristicTwo, "permanent claims need odd characteristic");
  if (dist.degenerate()) throw Error(ErrorCode::DegenerateDistribution, "mu is supported on a single value");
  if (request.claims.empty()) throw Error(ErrorCode::BadConfig, "no claims requested");
  for (Claim c : request.claims) {
    if (c == Claim::AsymptoticP && request.n < 3) {
      throw Error(ErrorCode::BadN, "asymptotic-p holds only for n >= 3 (at n = 2, Pr[per = 0] = 1/q + "
                                   "Theta(1/q^2)); got n = " +
                                       std::to_string(request.n));
    }
    if (is_uniform_claim(c) && !dist.uniform()) {
      throw Error(ErrorCode::BadConfig, to_string(c) + " is a claim about uniform entries");
    }
    if (!is_uniform_claim(c) && !f.is_prime()) {
      throw Error(ErrorCode::NonPrimeField, to_string(c) + " is stated over prime fields only");
    }
  }
}

}  // namespace

std::string to_string(Claim claim) {
  switch (claim) {
    case Claim::TrivialLowerBound: return "trivial-lower-bound";
    case Claim::SeparationAllP: return "separation-all-p";
    case Claim::AsymptoticP: return "asymptotic-p";
    case Claim::SeparationGeneral: return "separation-general";
    case Claim::AsymptoticGeneral: return "asymptotic-general";
  }
  return "?";
}

const std::vector<Claim>& all_claims() {
  static const std::vector<Claim> claims{Claim::TrivialLowerBound, Claim::SeparationAllP, Claim::AsymptoticP,
                                         Claim::SeparationGeneral, Claim::AsymptoticGeneral};
  return claims;
}

Claim parse_claim(const std::string& text) {
  for (Claim c : all_claims()) {
    if (to_string(c) == text) return c;
  }
  throw Error(ErrorCode::Usage, "unknown claim '" + text + "'");
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Supported: return "SUPPORTED";
    case Verdict::Violated: return "VIOLATED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Verdict parse_verdict(const std::string& text) {
  for (Verdict v : {Verdict::Supported, Verdict::Violated, Verdict::Inconclusive}) {
    if (to_string(v) == text) return v;
  }
  throw Error(ErrorCode::Usage, "unknown verdict '" + text + "'");
}

bool is_finite_n_claim(Claim claim) {
  return claim == Claim::TrivialLowerBound || claim == Claim::AsymptoticP;
}

bool is_uniform_claim(Claim claim) {
  return claim == Claim::TrivialLowerBound || claim == Claim::SeparationAllP || claim == Claim::AsymptoticP;
}

double delta_p(std::uint64_t p) {
  const double pd = static_cast<double>(p);
  return (1 - 2 * alpha(p)) / (pd * pd) / 10;
}

Verdict judge(double lo, double hi, double lower, double upper, bool strict_upper, bool finite_claim,
              double& margin) {
  margin = std::min(lo - lower, upper - hi);
  const bool inside = lo >= lower && (strict_upper ? hi < upper : hi <= upper);
  if (inside) return Verdict::Supported;
  const bool outside = hi < lower || (strict_upper ? lo >= upper : lo > upper);
  if (outside && finite_claim) return Verdict::Violated;
  return Verdict::Inconclusive;
}

std::vector<BoundVerdict> check_bounds(const EntryDistribution& dist, const BoundsRequest& request) {
  validate(dist, request);
  const Field& f = dist.field();
  const std::uint32_t q = f.q();
  const bool use_exact = !request.force_monte_carlo && enumeration_feasible(request.n, q);
  const ValueLaw law = use_exact ? exact_law(dist, request) : sampled_law(dist, request);

  std::vector<BoundVerdict> out;
  for (Claim claim : request.claims) {
    const double base = is_uniform_claim(claim) ? q : f.p();
    const double inv = 1.0 / base;
    const double window = kBoundC / (base * base * base);
    std::vector<Value> values;
    if (is_uniform_claim(claim)) {
      values = {0};
    } else {
      for (Value z = 0; z < q; ++z) values.push_back(z);
    }
    for (Value z : values) {
      BoundVerdict v;
      v.claim = claim;
      v.n = request.n;
      v.q = q;
      v.weights = dist.weights();
      v.z = z;
      switch (claim) {
        case Claim::TrivialLowerBound:
          v.lower = inv;
          v.upper = 1;
          break;
        case Claim::SeparationAllP:
          v.lower = 0;
          v.upper = alpha(q);
          v.strict_upper = true;
          break;
        case Claim::AsymptoticP:
        case Claim::AsymptoticGeneral:
          v.lower = inv - window;
          v.upper = inv + window;
          break;
        case Claim::SeparationGeneral:
          v.delta = delta_p(f.p());
          v.lower = 0;
          v.upper = alpha(f.p()) - v.delta;
          break;
      }
      v.point = law.point[z];
      v.lo = law.lo[z];
      v.hi = law.hi[z];
      v.exact = law.exact;
      v.samples = law.samples;
      v.successes = law.successes[z];
      v.verdict = judge(v.lo, v.hi, v.lower, v.upper, v.strict_upper, is_finite_n_claim(claim), v.margin);
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace permlab
