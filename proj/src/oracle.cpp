#include "treepin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "treepin/capacity.hpp"
#include "treepin/errors.hpp"
#include "treepin/kernels.hpp"
#include "treepin/linalg.hpp"
#include "treepin/mcf.hpp"
#include "treepin/verify.hpp"

namespace treepin {

namespace {

std::uint64_t power(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

class UnionFind {
 public:
  std::uint32_t add() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(const kernels::ImageCounts& h) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out(h.counts.begin(), h.counts.end());
  std::sort(out.begin(), out.end());
  return out;
}

FMatrix random_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f->order() - 1);
  FMatrix m(f, rows, cols);
  for (auto& e : m.data()) e = Elem{pick(rng)};
  return m;
}

// Places `m` at row offset `r0` of a zero matrix with `rows` rows.
FMatrix pad_rows(const FMatrix& m, std::size_t rows, std::size_t r0) {
  FMatrix out(m.field_ptr(), rows, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r0 + r, c) = m(r, c);
  }
  return out;
}

bool injective(const EntropyResult& e) { return e.support == e.total; }

}  // namespace

std::optional<std::size_t> EntropyResult::exact_dim(std::uint32_t order) const {
  if (!uniform) return std::nullopt;
  std::uint64_t p = 1;
  for (std::size_t k = 0; k <= 64; ++k) {
    if (p == support) return k;
    if (p > support / order) break;
    p *= order;
  }
  return std::nullopt;
}

EntropyResult entropy_of_counts(const std::unordered_map<std::uint64_t, std::uint64_t>& counts, std::uint64_t total) {
  EntropyResult out;
  out.total = total;
  out.support = counts.size();
  out.uniform = true;
  const std::uint64_t first = counts.empty() ? 0 : counts.begin()->second;
  double weighted = 0.0;
  for (const auto& [key, c] : counts) {
    out.uniform = out.uniform && c == first;
    weighted += static_cast<double>(c) * std::log2(static_cast<double>(c));
  }
  if (total > 0) out.bits = std::log2(static_cast<double>(total)) - weighted / static_cast<double>(total);
  if (out.uniform) out.bits = std::log2(static_cast<double>(out.support));
  return out;
}

EntropyResult entropy_exhaustive(const FMatrix& m, std::uint64_t budget) {
  const auto h = kernels::image_counts(m, budget);
  return entropy_of_counts(h.counts, h.total);
}

McfOracleResult mcf_exhaustive(const FMatrix& m1, const FMatrix& m2, std::uint64_t budget) {
  if (m1.rows() != m2.rows()) throw ShapeError("mcf_exhaustive: row counts differ");
  const auto hist = kernels::image_counts(hcat(m1, m2), budget);
  const std::uint64_t split = power(m1.field().order(), m1.cols());
  const auto pairs = sorted(hist);

  UnionFind uf;
  std::unordered_map<std::uint64_t, std::uint32_t> node_first;
  std::unordered_map<std::uint64_t, std::uint32_t> node_second;
  for (const auto& [key, count] : pairs) {
    const auto [it1, new1] = node_first.try_emplace(key % split, 0);
    if (new1) it1->second = uf.add();
    const auto [it2, new2] = node_second.try_emplace(key / split, 0);
    if (new2) it2->second = uf.add();
    uf.unite(it1->second, it2->second);
  }

  // Dense labels in order of the smallest co-occurring pair.
  McfOracleResult out;
  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  std::unordered_map<std::uint64_t, std::uint64_t> label_counts;
  for (const auto& [key, count] : pairs) {
    const auto root = uf.find(node_first.at(key % split));
    const auto [it, fresh] = dense.try_emplace(root, static_cast<std::uint32_t>(dense.size()));
    label_counts[it->second] += count;
  }
  for (const auto& [v, id] : node_first) out.label_first.emplace(v, dense.at(uf.find(id)));
  for (const auto& [v, id] : node_second) out.label_second.emplace(v, dense.at(uf.find(id)));
  out.components = dense.size();
  out.entropy = entropy_of_counts(label_counts, hist.total);
  return out;
}

bool mcf_functionally_equivalent(const FMatrix& m1, const FMatrix& m2, const FMatrix& mg, std::uint64_t budget) {
  const auto mcf = mcf_exhaustive(m1, m2, budget);
  const auto hist = kernels::image_counts(hcat(m1, mg), budget);
  const std::uint64_t split = power(m1.field().order(), m1.cols());
  std::unordered_map<std::uint32_t, std::uint64_t> g_of_label;
  std::unordered_map<std::uint64_t, std::uint32_t> label_of_g;
  for (const auto& [key, count] : hist.counts) {
    const auto label = mcf.label_first.at(key % split);
    const std::uint64_t g = key / split;
    if (g_of_label.try_emplace(label, g).first->second != g) return false;
    if (label_of_g.try_emplace(g, label).first->second != label) return false;
  }
  return true;
}

std::optional<long long> CmiResult::exact_dim(std::uint32_t order) const {
  const auto ac = h_ac.exact_dim(order);
  const auto bc = h_bc.exact_dim(order);
  const auto abc = h_abc.exact_dim(order);
  const auto c = h_c.exact_dim(order);
  if (!ac || !bc || !abc || !c) return std::nullopt;
  return static_cast<long long>(*ac + *bc) - static_cast<long long>(*abc + *c);
}

CmiResult cond_mutual_info_exhaustive(const FMatrix& ma, const FMatrix& mb, const FMatrix& mc,
                                      std::uint64_t budget) {
  CmiResult out;
  out.h_ac = entropy_exhaustive(hcat(ma, mc), budget);
  out.h_bc = entropy_exhaustive(hcat(mb, mc), budget);
  out.h_abc = entropy_exhaustive(hcat(hcat(ma, mb), mc), budget);
  out.h_c = entropy_exhaustive(mc, budget);
  out.bits = out.h_ac.bits + out.h_bc.bits - out.h_abc.bits - out.h_c.bits;
  return out;
}

bool detform_vanishes(const FMatrix& a, std::uint64_t budget) {
  const std::size_t m = a.rows();
  const std::size_t s = a.cols();
  const auto order = a.field().order();
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < s * m; ++i) {
    if (points > budget / order) throw OracleBudgetError("detform: point enumeration exceeds budget");
    points *= order;
  }
  FMatrix x(a.field_ptr(), s, m);
  for (std::uint64_t idx = 0; idx < points; ++idx) {
    std::uint64_t rest = idx;
    for (auto& e : x.data()) {
      e = Elem{static_cast<std::uint32_t>(rest % order)};
      rest /= order;
    }
    if (det(mul(x, a)).value != 0) return false;
  }
  return true;
}

bool detform_has_kernel_vector(const FMatrix& a, std::uint64_t budget) {
  const std::size_t s = a.cols();
  const auto order = a.field().order();
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < s; ++i) {
    if (points > budget / order) throw OracleBudgetError("detform: lambda enumeration exceeds budget");
    points *= order;
  }
  FMatrix lambda(a.field_ptr(), s, 1);
  for (std::uint64_t idx = 1; idx < points; ++idx) {
    std::uint64_t rest = idx;
    for (auto& e : lambda.data()) {
      e = Elem{static_cast<std::uint32_t>(rest % order)};
      rest /= order;
    }
    if (mul(a, lambda).is_zero()) return true;
  }
  return false;
}

PropertyReport detform_property_check(std::uint32_t q, std::size_t s, std::size_t m, std::size_t trials,
                                      std::uint64_t seed, std::uint64_t budget) {
  if (s == 0 || s > m) throw ValidationError("detform: need 1 <= s <= m");
  const auto field = ExtField::make(q, 1);
  std::mt19937_64 rng(seed);
  PropertyReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const FMatrix a = random_matrix(field, m, s, rng);
    const bool vanishes = detform_vanishes(a, budget);
    const bool kernel = detform_has_kernel_vector(a, budget);
    rep.degenerate += vanishes ? 1 : 0;
    rep.counterexamples += vanishes != kernel ? 1 : 0;
  }
  return rep;
}

PropertyReport mcf_independence_property_check(std::uint32_t q, std::size_t base_dim, std::size_t trials, std::uint64_t seed,
                                     std::uint64_t budget) {
  if (base_dim < 2) throw ValidationError("mcf_independence: base dimension must be at least 2");
  const auto field = ExtField::make(q, 1);
  std::mt19937_64 rng(seed);
  PropertyReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    // Base vector (U, V): X and Y read U, Z reads V.
    const std::size_t u = std::uniform_int_distribution<std::size_t>(1, base_dim - 1)(rng);
    const std::size_t v = base_dim - u;
    auto cols = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(1, hi)(rng); };
    const FMatrix mx = pad_rows(random_matrix(field, u, cols(u), rng), base_dim, 0);
    const FMatrix my = pad_rows(random_matrix(field, u, cols(u), rng), base_dim, 0);
    const FMatrix mz = pad_rows(random_matrix(field, v, cols(v), rng), base_dim, u);

    const auto xy = mcf_exhaustive(mx, my, budget).entropy;
    const auto x_yz = mcf_exhaustive(mx, hcat(my, mz), budget).entropy;
    const auto xz_yz = mcf_exhaustive(hcat(mx, mz), hcat(my, mz), budget).entropy;
    const auto z = entropy_exhaustive(mz, budget);
    rep.degenerate += z.support == 1 ? 1 : 0;
    const bool ok = xy.uniform && x_yz.uniform && xz_yz.uniform && z.uniform && x_yz.support == xy.support &&
                    xz_yz.support == xy.support * z.support;
    rep.counterexamples += ok ? 0 : 1;
  }
  return rep;
}

bool InstanceOracleReport::agree() const {
  if (oracle_w_dim != rank_w) return false;
  for (const auto& e : edges) {
    if (e.oracle_mcf_dim != e.linear_mcf_dim || !e.functional_match) return false;
  }
  return oracle_cw_dim == cw_dim && oracle_rco_dim == rco_dim && oracle_rl_dim == rl_dim;
}

InstanceOracleReport oracle_check_instance(const Instance& instance, std::uint64_t budget) {
  const auto& source = instance.source;
  const auto& w = instance.wiretapper.matrix;
  const std::uint32_t q = source.q();
  InstanceOracleReport rep;
  rep.rank_w = rank(w);
  rep.oracle_w_dim = entropy_exhaustive(w, budget).exact_dim(q);
  rep.cw_dim = cw_dim(instance);
  rep.rco_dim = rco_dim(source);
  rep.rl_dim = rl_dim(instance);

  bool exact = true;
  std::size_t min_residual = SIZE_MAX;
  std::size_t sum_edge = 0;
  std::size_t min_edge = SIZE_MAX;
  for (std::size_t e = 0; e < source.edge_count(); ++e) {
    const FMatrix sel = source.edge_selector(e);
    const auto linear = mcf_linear(sel, w);
    InstanceOracleReport::EdgeRow row;
    row.edge_id = source.edges()[e].id;
    row.linear_mcf_dim = linear.dim();
    row.oracle_mcf_dim = mcf_exhaustive(sel, w, budget).entropy.exact_dim(q);
    row.functional_match = mcf_functionally_equivalent(sel, w, linear.basis, budget);
    row.oracle_edge_dim = entropy_exhaustive(sel, budget).exact_dim(q);
    if (row.oracle_mcf_dim && row.oracle_edge_dim && *row.oracle_edge_dim >= *row.oracle_mcf_dim) {
      min_residual = std::min(min_residual, *row.oracle_edge_dim - *row.oracle_mcf_dim);
      sum_edge += *row.oracle_edge_dim;
      min_edge = std::min(min_edge, *row.oracle_edge_dim);
    } else {
      exact = false;
    }
    rep.edges.push_back(std::move(row));
  }
  const auto full = entropy_exhaustive(FMatrix::identity(source.base_field(), source.total_dim()), budget)
                        .exact_dim(q);
  if (exact && !rep.edges.empty()) {
    rep.oracle_cw_dim = min_residual;
    rep.oracle_rco_dim = sum_edge - min_edge;
    if (full && rep.oracle_w_dim && *full >= *rep.oracle_w_dim + min_residual) {
      rep.oracle_rl_dim = *full - *rep.oracle_w_dim - min_residual;
    }
  }
  return rep;
}

bool SchemeOracleReport::agree() const {
  return oracle_leakage_dim && *oracle_leakage_dim == static_cast<long long>(rank_leakage_dim) &&
         oracle_omniscience == rank_omniscience && oracle_alignment == rank_alignment;
}

SchemeOracleReport oracle_check_scheme(const CommScheme& scheme, const Instance& instance, std::uint64_t budget) {
  const auto& source = instance.source;
  const FieldPtr& field = scheme.field;
  if (!field || scheme.transmit.rows() != source.total_dim()) throw ShapeError("scheme does not match the instance");
  const FMatrix& f = scheme.transmit;
  const FMatrix w = lift(instance.wiretapper.matrix, field);
  const FMatrix x = FMatrix::identity(field, source.total_dim());

  SchemeOracleReport rep;
  rep.extension_degree = field->degree();
  rep.rank_leakage_dim = leakage_dim(scheme, instance.wiretapper);
  rep.rank_omniscience = check_perfect_omniscience(scheme, source);
  rep.rank_alignment = check_perfect_alignment(scheme, instance.wiretapper);

  const auto cmi = cond_mutual_info_exhaustive(x, f, w, budget);
  rep.oracle_leakage_dim = cmi.exact_dim(field->order());
  rep.oracle_leakage_bits_per_realization = cmi.bits / static_cast<double>(field->degree());

  for (int node = 0; node < source.vertex_count(); ++node) {
    const FMatrix h = lift(source.node_view(node).selector, field);
    rep.oracle_omniscience.push_back(injective(entropy_exhaustive(hcat(f, h), budget)));
  }
  rep.oracle_alignment =
      entropy_exhaustive(hcat(f, w), budget).support == entropy_exhaustive(f, budget).support;
  return rep;
}

}  // namespace treepin
