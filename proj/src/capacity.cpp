#include "treepin/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "treepin/errors.hpp"
#include "treepin/mcf.hpp"

namespace treepin {

namespace {

double bits_of(std::uint32_t q, std::size_t dim) {
  return static_cast<double>(dim) * std::log2(static_cast<double>(q));
}

}  // namespace

double CapacityReport::to_bits(std::size_t dim) const { return bits_of(q, dim); }

CapacityReport analyze(const Instance& instance) {
  const auto& source = instance.source;
  CapacityReport report;
  report.q = source.q();
  report.total_dim = source.total_dim();
  report.wiretap_dim = instance.wiretapper.nw();
  report.min_multiplicity = source.min_multiplicity();
  for (const auto& e : source.edges()) {
    const std::size_t ell = report.wiretap_dim == 0 ? 0 : mcf_edge_wiretap(instance, e.id).dim();
    report.edges.push_back({e.id, e.multiplicity, ell});
    if (ell > 0) report.irreducible = false;
  }
  report.cs_dim = report.min_multiplicity;
  report.cw_dim = report.edges.front().residual();
  for (const auto& e : report.edges) report.cw_dim = std::min(report.cw_dim, e.residual());
  for (const auto& e : report.edges) {
    if (e.residual() == report.cw_dim) report.argmin_edges.push_back(e.edge_id);
  }
  std::sort(report.argmin_edges.begin(), report.argmin_edges.end());
  if (report.total_dim < report.wiretap_dim + report.cw_dim) {
    throw ValidationError("inconsistent instance: D - n_w < C_W");
  }
  report.rl_dim = report.total_dim - report.wiretap_dim - report.cw_dim;
  report.rco_dim = report.total_dim - report.min_multiplicity;
  return report;
}

std::size_t cs_dim(const TreePinSource& source) { return source.min_multiplicity(); }
std::size_t cw_dim(const Instance& instance) { return analyze(instance).cw_dim; }
std::size_t rl_dim(const Instance& instance) { return analyze(instance).rl_dim; }
std::size_t rco_dim(const TreePinSource& source) { return source.total_dim() - source.min_multiplicity(); }

double cs(const TreePinSource& source) { return bits_of(source.q(), cs_dim(source)); }
double cw(const Instance& instance) { return analyze(instance).cw_bits(); }
double rl(const Instance& instance) { return analyze(instance).rl_bits(); }
double rco(const TreePinSource& source) { return bits_of(source.q(), rco_dim(source)); }

}  // namespace treepin
