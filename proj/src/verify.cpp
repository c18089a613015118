#include "treepin/verify.hpp"

#include <algorithm>
#include <cmath>

#include "treepin/capacity.hpp"
#include "treepin/errors.hpp"
#include "treepin/linalg.hpp"

namespace treepin {

namespace {

void require_rows(const CommScheme& scheme, std::size_t dim) {
  if (!scheme.field) throw ShapeError("scheme has no field");
  if (scheme.transmit.rows() != dim) throw ShapeError("transmit matrix must have D rows");
}

FMatrix lifted_wiretap(const CommScheme& scheme, const Wiretapper& wiretapper) {
  if (wiretapper.matrix.rows() != scheme.transmit.rows()) throw ShapeError("W and F have different row counts");
  return lift(wiretapper.matrix, scheme.field);
}

}  // namespace

std::vector<bool> check_perfect_omniscience(const CommScheme& scheme, const TreePinSource& source) {
  require_rows(scheme, source.total_dim());
  std::vector<bool> out(static_cast<std::size_t>(source.vertex_count()));
  const auto n = static_cast<std::int64_t>(out.size());
  std::vector<char> pass(out.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto view = source.node_view(static_cast<int>(i));
    pass[static_cast<std::size_t>(i)] =
        rank(hcat(scheme.transmit, lift(view.selector, scheme.field))) == source.total_dim();
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pass[i] != 0;
  return out;
}

bool check_perfect_alignment(const CommScheme& scheme, const Wiretapper& wiretapper) {
  if (wiretapper.nw() == 0) return true;
  const FMatrix w = lifted_wiretap(scheme, wiretapper);
  return rank(hcat(scheme.transmit, w)) == rank(scheme.transmit);
}

std::size_t leakage_dim(const CommScheme& scheme, const Wiretapper& wiretapper) {
  const FMatrix w = lifted_wiretap(scheme, wiretapper);
  return rank(hcat(scheme.transmit, w)) - wiretapper.nw();
}

double leakage_bits_per_realization(const CommScheme& scheme, const TreePinSource& source,
                                    const Wiretapper& wiretapper) {
  require_rows(scheme, source.total_dim());
  return static_cast<double>(leakage_dim(scheme, wiretapper)) * std::log2(static_cast<double>(source.q()));
}

bool check_key_secrecy(const CommScheme& scheme, const KeyExtractor& key, const Wiretapper& wiretapper) {
  const FMatrix base = hcat(scheme.transmit, lifted_wiretap(scheme, wiretapper));
  return rank(hcat(base, key.matrix)) == rank(base) + key.matrix.cols();
}

bool check_non_interactive(const CommScheme& scheme, const TreePinSource& source) {
  const FMatrix& f = scheme.transmit;
  if (scheme.owners.size() != f.cols()) return false;
  for (std::size_t j = 0; j < f.cols(); ++j) {
    const int owner = scheme.owners[j];
    if (owner < 0 || owner >= source.vertex_count()) return false;
    const auto view = source.node_view(owner);
    for (std::size_t r = 0; r < f.rows(); ++r) {
      if (f(r, j).value != 0 && !std::binary_search(view.coords.begin(), view.coords.end(), r)) return false;
    }
  }
  return true;
}

bool VerificationReport::omniscience_all() const {
  return !omniscience.empty() && std::all_of(omniscience.begin(), omniscience.end(), [](bool b) { return b; });
}

bool VerificationReport::all_pass() const {
  return shape_ok && non_interactive && omniscience_all() && alignment && key_secrecy;
}

double VerificationReport::to_bits(std::size_t dim) const {
  return static_cast<double>(dim) * std::log2(static_cast<double>(q));
}

VerificationReport verify_scheme(const CommScheme& scheme, const Instance& instance) {
  const auto& source = instance.source;
  VerificationReport rep;
  rep.q = source.q();
  rep.total_dim = source.total_dim();
  rep.wiretap_dim = instance.wiretapper.nw();
  rep.cw_dim = cw_dim(instance);
  rep.rl_dim = rl_dim(instance);
  rep.shape_ok = scheme.field && scheme.field->q() == source.q() && scheme.transmit.rows() == source.total_dim() &&
                 scheme.owners.size() == scheme.transmit.cols();
  if (!rep.shape_ok) return rep;

  rep.extension_degree = scheme.field->degree();
  rep.message_cols = scheme.transmit.cols();
  rep.rank_f = rank(scheme.transmit);
  rep.non_interactive = check_non_interactive(scheme, source);
  rep.omniscience = check_perfect_omniscience(scheme, source);
  rep.alignment = check_perfect_alignment(scheme, instance.wiretapper);
  rep.leakage_dim = leakage_dim(scheme, instance.wiretapper);
  const KeyExtractor key = extract_key(scheme);
  rep.key_dim = key.matrix.cols();
  rep.key_secrecy = check_key_secrecy(scheme, key, instance.wiretapper);
  const std::size_t secret_dim = rep.total_dim - rep.wiretap_dim;
  rep.leakage_lower_bound = rep.leakage_dim + rep.cw_dim >= secret_dim;
  rep.leakage_upper_bound = rep.leakage_dim <= rep.rank_f;
  return rep;
}

}  // namespace treepin
