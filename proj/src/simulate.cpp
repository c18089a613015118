#include "treepin/simulate.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "treepin/errors.hpp"
#include "treepin/kernels.hpp"
#include "treepin/linalg.hpp"

namespace treepin {

namespace {

constexpr std::uint64_t kCountCap = 1u << 16;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string format_row(const FMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.field().format(m(0, j));
  os << ']';
  return os.str();
}

double rate(std::size_t hits, std::size_t trials) {
  return trials == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace

FMatrix sample_block(std::uint64_t seed, std::size_t dim, const FieldPtr& field) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, field->order() - 1);
  FMatrix block(field, 1, dim);
  for (auto& e : block.data()) e = Elem{pick(rng)};
  return block;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return splitmix64(seed ^ splitmix64(trial)); }

double SimReport::decode_rate() const { return rate(decode_successes, trials); }
double SimReport::key_agreement_rate() const { return rate(key_agreements, trials); }
double SimReport::wiretap_recovery_rate() const { return rate(wiretap_recoveries, trials); }
double SimReport::uncertainty_bits() const {
  return static_cast<double>(uncertainty_dim * extension_degree) * std::log2(static_cast<double>(q));
}

SimReport run_protocol(const CommScheme& scheme, const Instance& instance, std::uint64_t seed, std::size_t trials,
                       bool keep_trace) {
  const auto& source = instance.source;
  const std::size_t dim = source.total_dim();
  const FieldPtr& field = scheme.field;
  const FMatrix& f = scheme.transmit;
  if (!field || f.rows() != dim) throw ShapeError("scheme does not match the instance");
  const FMatrix w = lift(instance.wiretapper.matrix, field);

  // Node i observes x [F | H_i]; Dec_i maps that observation back to x.
  std::vector<FMatrix> decoders;
  std::vector<FMatrix> selectors;
  for (int node = 0; node < source.vertex_count(); ++node) {
    FMatrix h = lift(source.node_view(node).selector, field);
    try {
      decoders.push_back(solve_right(hcat(f, h), FMatrix::identity(field, dim)));
    } catch (const NoSolutionError&) {
      throw SimulationError("node " + std::to_string(node) + " cannot decode: rank([F | H_i]) < D");
    }
    selectors.push_back(std::move(h));
  }

  SimReport rep;
  rep.trials = trials;
  rep.q = source.q();
  rep.extension_degree = field->degree();
  const FMatrix fw = hcat(f, w);
  rep.uncertainty_dim = dim - rank(fw);
  rep.alignment = rank(fw) == rank(f);
  std::optional<FMatrix> wiretap_decoder;
  if (rep.alignment) wiretap_decoder = solve_right(f, w);
  const KeyExtractor key = extract_key(scheme);
  rep.key_dim = key.matrix.cols();

  std::size_t decoded = 0;
  std::size_t agreed = 0;
  std::size_t recovered = 0;
  std::vector<std::string> trace(keep_trace ? trials : 0);
  const auto n_trials = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic) reduction(+ : decoded, agreed, recovered)
  for (std::int64_t t = 0; t < n_trials; ++t) {
    const FMatrix x = sample_block(trial_seed(seed, static_cast<std::uint64_t>(t)), dim, field);
    const FMatrix messages = mul(x, f);
    const FMatrix truth_key = mul(x, key.matrix);
    bool all_decoded = true;
    bool all_agree = true;
    for (std::size_t node = 0; node < decoders.size(); ++node) {
      const FMatrix estimate = mul(hcat(messages, mul(x, selectors[node])), decoders[node]);
      all_decoded = all_decoded && estimate == x;
      all_agree = all_agree && mul(estimate, key.matrix) == truth_key;
    }
    bool rebuilt = false;
    if (wiretap_decoder) rebuilt = mul(messages, *wiretap_decoder) == mul(x, w);
    decoded += all_decoded ? 1 : 0;
    agreed += all_agree ? 1 : 0;
    recovered += rebuilt ? 1 : 0;
    if (keep_trace) {
      std::ostringstream os;
      os << "trial " << t << " x=" << format_row(x) << " messages=" << format_row(messages)
         << " key=" << format_row(truth_key) << " decoded=" << (all_decoded ? "all" : "FAIL")
         << " agree=" << (all_agree ? "yes" : "no");
      trace[static_cast<std::size_t>(t)] = os.str();
    }
  }
  rep.decode_successes = decoded;
  rep.key_agreements = agreed;
  rep.wiretap_recoveries = recovered;
  rep.trace = std::move(trace);

  if (trials > 0) {
    try {
      const auto counts = kernels::image_counts(fw, kCountCap);
      const FMatrix x = sample_block(trial_seed(seed, 0), dim, field);
      const FMatrix seen = mul(x, fw);
      rep.uncertainty_count = counts.counts.at(kernels::pack_image(*field, seen.row(0)));
    } catch (const OracleBudgetError&) {
      rep.uncertainty_count.reset();
    }
  }
  return rep;
}

}  // namespace treepin
