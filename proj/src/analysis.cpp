#include "qsdc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsdc {

namespace {

class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

int eve_symbol(const EpisodeRecord& r) {
  if (!r.eve || !r.eve->acted) return 4;
  if (r.eve->ancilla_x_bit) return *r.eve->ancilla_x_bit;
  if (r.eve->intercept_bit) {
    return (r.eve->intercept_basis == Basis::X ? 2 : 0) + *r.eve->intercept_bit;
  }
  return 4;
}

}  // namespace

RateEstimate wilson_interval(std::size_t errors, std::size_t trials, double z) {
  if (errors > trials) throw std::invalid_argument("more errors than trials");
  RateEstimate r;
  r.trials = trials;
  r.errors = errors;
  if (trials == 0) {
    r.ci_high = 1.0;
    return r;
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  r.rate = p;
  r.ci_low = std::max(0.0, centre - spread);
  r.ci_high = std::min(1.0, centre + spread);
  return r;
}

RateSummary estimate_rates(const std::vector<EpisodeRecord>& records,
                           const ProtocolParams& params) {
  if (records.empty()) throw std::invalid_argument("no episode records to analyze");
  std::size_t check_n = 0, check_err = 0, msg_n = 0, msg_err = 0;
  for (const auto& r : records) {
    const bool wrong = recover_bit(r.alice_a_bit, r.bob_x_bit) != r.episode.alice_bit;
    if (r.episode.role == Role::Check) {
      ++check_n;
      check_err += wrong;
    } else {
      ++msg_n;
      msg_err += wrong;
    }
  }
  RateSummary s;
  s.check = wilson_interval(check_err, check_n);
  s.message = wilson_interval(msg_err, msg_n);
  s.detected = s.check.rate > params.abort_threshold;
  return s;
}

double entropy_bits(const std::map<int, double>& distribution) {
  KahanSum total;
  for (const auto& [_, p] : distribution) total.add(p);
  if (total.value() <= 0.0) return 0.0;
  KahanSum h;
  for (const auto& [_, w] : distribution) {
    const double p = w / total.value();
    if (p > 0.0) h.add(-p * std::log2(p));
  }
  return std::max(0.0, h.value());
}

double mutual_information_bits(const JointDistribution& joint) {
  KahanSum total;
  std::map<int, double> px, py;
  for (const auto& [xy, w] : joint) {
    total.add(w);
    px[xy.first] += w;
    py[xy.second] += w;
  }
  if (total.value() <= 0.0) return 0.0;
  const double t = total.value();
  KahanSum mi;
  for (const auto& [xy, w] : joint) {
    if (w <= 0.0) continue;
    mi.add((w / t) * std::log2(w * t / (px[xy.first] * py[xy.second])));
  }
  return std::max(0.0, mi.value());
}

double empirical_mutual_information(const std::vector<std::pair<int, int>>& pairs) {
  JointDistribution counts;
  for (const auto& xy : pairs) counts[xy] += 1.0;
  return mutual_information_bits(counts);
}

const char* to_string(AttackAction action) {
  switch (action) {
    case AttackAction::None:
      return "none";
    case AttackAction::InterceptZ:
      return "ir-z";
    case AttackAction::InterceptX:
      return "ir-x";
    case AttackAction::Collective:
      return "collective";
    case AttackAction::CollectiveH:
      return "collective-h";
  }
  throw std::logic_error("unhandled attack action");
}

std::optional<AttackAction> parse_attack_action(const std::string& name) {
  for (auto a : {AttackAction::None, AttackAction::InterceptZ, AttackAction::InterceptX,
                 AttackAction::Collective, AttackAction::CollectiveH}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

AttackModel attack_for(AttackAction action) {
  switch (action) {
    case AttackAction::None:
      return AttackModel::none();
    case AttackAction::InterceptZ:
      return AttackModel::intercept_resend(BasisPolicy::AlwaysZ);
    case AttackAction::InterceptX:
      return AttackModel::intercept_resend(BasisPolicy::AlwaysX);
    case AttackAction::Collective:
      return AttackModel::collective(false);
    case AttackAction::CollectiveH:
      return AttackModel::collective(true);
  }
  throw std::logic_error("unhandled attack action");
}

std::string EpisodeConfig::label() const {
  return std::string(to_string(action)) + "/bit" + std::to_string(alice_bit) +
         (hadamard ? "/H" : "/noH");
}

std::vector<std::string> outcome_labels(AttackAction action) {
  switch (action) {
    case AttackAction::None:
      return {"a", "A", "B"};
    case AttackAction::InterceptZ:
    case AttackAction::InterceptX:
      return {"e", "a", "A", "B"};
    case AttackAction::Collective:
    case AttackAction::CollectiveH:
      return {"a", "A", "B", "E"};
  }
  throw std::logic_error("unhandled attack action");
}

std::string ExactDistribution::key(std::size_t outcome) const {
  std::string out(labels.size(), '0');
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (outcome & (std::size_t{1} << (labels.size() - 1 - k))) out[k] = '1';
  }
  return out;
}

double ExactDistribution::total() const {
  KahanSum s;
  for (double p : probabilities) s.add(p);
  return s.value();
}

std::vector<double> ExactDistribution::marginal(const std::vector<std::string>& keep) const {
  std::vector<std::size_t> shifts;
  for (const auto& name : keep) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw std::invalid_argument("unknown outcome label " + name);
    shifts.push_back(labels.size() - 1 - static_cast<std::size_t>(it - labels.begin()));
  }
  std::vector<double> out(std::size_t{1} << keep.size(), 0.0);
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    std::size_t j = 0;
    for (auto s : shifts) j = (j << 1) | ((i >> s) & 1);
    out[j] += probabilities[i];
  }
  return out;
}

namespace {

struct Branch {
  double weight;
  std::size_t prefix;
  QuantumState pair;
};

std::vector<Branch> transit_branches(AttackAction action) {
  const QuantumState pair = make_epr_pair();
  constexpr int bob = 1;
  switch (action) {
    case AttackAction::None:
      return {{1.0, 0, pair}};
    case AttackAction::InterceptZ:
    case AttackAction::InterceptX: {
      const Basis basis = action == AttackAction::InterceptZ ? Basis::Z : Basis::X;
      std::vector<Branch> out;
      for (Bit e = 0; e <= 1; ++e) {
        Projection p = project(pair, bob, basis, e);
        if (p.probability <= 0.0) continue;
        const QuantumState collapsed(2, std::move(p.post));
        const QuantumState alice_half = remove_qubit(collapsed, bob, eigenstate(basis, e));
        out.push_back({p.probability, e, tensor(alice_half, eigenstate(Basis::X, e))});
      }
      return out;
    }
    case AttackAction::Collective:
    case AttackAction::CollectiveH: {
      QuantumState s = tensor(pair, basis_state(1, "0"));
      const bool conj = action == AttackAction::CollectiveH;
      if (conj) s = apply_hadamard(s, bob);
      s = apply_cnot(s, bob, 2);
      if (conj) s = apply_hadamard(s, bob);
      return {{1.0, 0, s}};
    }
  }
  throw std::logic_error("unhandled attack action");
}

}  // namespace

ExactDistribution exact_distribution(const EpisodeConfig& config) {
  if (config.alice_bit > 1) throw std::invalid_argument("alice bit must be 0 or 1");
  ExactDistribution dist;
  dist.config = config;
  dist.labels = outcome_labels(config.action);
  dist.probabilities.assign(std::size_t{1} << dist.labels.size(), 0.0);

  const bool has_ancilla =
      config.action == AttackAction::Collective || config.action == AttackAction::CollectiveH;
  std::vector<PlanStep> plan = {{0, Basis::Z}, {1, Basis::Z}, {2, Basis::X}};
  if (has_ancilla) plan.push_back({3, Basis::X});

  for (const Branch& br : transit_branches(config.action)) {
    QuantumState s = br.pair;
    if (config.hadamard) {
      s = apply_hadamard(s, 0);
      s = apply_hadamard(s, 1);
    }
    s = tensor(encode_message_qubit(config.alice_bit), s);
    s = apply_cnot(s, 0, 1);
    s = apply_hadamard(s, 0);
    const OutcomeTable table = outcome_distribution(s, plan);
    for (std::size_t i = 0; i < table.probabilities.size(); ++i) {
      dist.probabilities[(br.prefix << plan.size()) | i] += br.weight * table.probabilities[i];
    }
  }
  return dist;
}

double check_error_probability(const ExactDistribution& dist) {
  const auto ab = dist.marginal({"a", "B"});
  KahanSum err;
  for (std::size_t i = 0; i < ab.size(); ++i) {
    const Bit a = static_cast<Bit>((i >> 1) & 1);
    const Bit b = static_cast<Bit>(i & 1);
    if (recover_bit(a, b) != dist.config.alice_bit) err.add(ab[i]);
  }
  return err.value();
}

std::size_t outcome_index(const EpisodeRecord& r, AttackAction action) {
  const std::size_t core = (std::size_t{r.alice_a_bit} << 2) | (std::size_t{r.alice_A_bit} << 1) |
                           std::size_t{r.bob_x_bit};
  switch (action) {
    case AttackAction::None:
      return core;
    case AttackAction::InterceptZ:
    case AttackAction::InterceptX:
      if (!r.eve || !r.eve->intercept_bit) throw std::logic_error("record lacks intercept data");
      return (std::size_t{*r.eve->intercept_bit} << 3) | core;
    case AttackAction::Collective:
    case AttackAction::CollectiveH:
      if (!r.eve || !r.eve->ancilla_x_bit) throw std::logic_error("record lacks ancilla data");
      return (core << 1) | *r.eve->ancilla_x_bit;
  }
  throw std::logic_error("unhandled attack action");
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions differ in support size");
  KahanSum s;
  for (std::size_t i = 0; i < p.size(); ++i) s.add(std::abs(p[i] - q[i]));
  return 0.5 * s.value();
}

double oracle_vs_monte_carlo(const EpisodeConfig& config, std::size_t samples, RandomStream& rng,
                             Execution execution) {
  if (samples < 1000) throw std::invalid_argument("at least 1000 samples are required");
  const ExactDistribution exact = exact_distribution(config);
  const auto counts = sample_outcome_counts(config, samples, rng.next(), execution);
  std::vector<double> freq(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    freq[i] = static_cast<double>(counts[i]) / static_cast<double>(samples);
  }
  return total_variation(freq, exact.probabilities);
}

std::vector<EpisodeConfig> standard_cells() {
  std::vector<EpisodeConfig> cells;
  for (auto action : {AttackAction::None, AttackAction::InterceptZ, AttackAction::InterceptX,
                      AttackAction::Collective}) {
    for (bool hadamard : {false, true}) {
      for (Bit bit = 0; bit <= 1; ++bit) cells.push_back({bit, hadamard, action});
    }
  }
  return cells;
}

SimulationReport make_report(const ProtocolParams& params, const AttackModel& attack,
                             const SessionResult& session, double elapsed_seconds) {
  SimulationReport rep;
  rep.params = params;
  rep.attack = attack;
  const RateSummary rates = estimate_rates(session.records, params);
  rep.check = rates.check;
  rep.detected = rates.detected;
  rep.aborted = session.aborted;
  if (!session.aborted) {
    rep.message = rates.message;
    rep.recovered_message = session.recovered_message;
  }

  std::vector<std::pair<int, int>> withheld, announced;
  for (const auto& r : session.records) {
    if (r.episode.role != Role::Message) continue;
    const int symbol = eve_symbol(r);
    withheld.emplace_back(symbol, r.episode.alice_bit);
    announced.emplace_back(symbol * 2 + r.alice_a_bit, r.episode.alice_bit);
  }
  if (attack.active()) {
    rep.eve_mi_bits = empirical_mutual_information(withheld);
    rep.eve_mi_with_announcement_bits = empirical_mutual_information(announced);
  }
  rep.throughput =
      static_cast<double>(params.message_capacity()) / static_cast<double>(params.n_pairs);
  rep.elapsed_seconds = elapsed_seconds;
  rep.episodes_per_second =
      elapsed_seconds > 0.0 ? static_cast<double>(params.n_pairs) / elapsed_seconds : 0.0;
  return rep;
}

}  // namespace qsdc
