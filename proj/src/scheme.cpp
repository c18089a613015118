#include "treepin/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

#include "treepin/errors.hpp"
#include "treepin/linalg.hpp"
#include "treepin/reduce.hpp"

namespace treepin {

namespace {

// S_e: the first s columns of the certificate inside edge e's block.
FMatrix certificate_head(const FMatrix& cert, const TreePinSource& source, std::size_t edge, std::size_t s) {
  return cert.block(0, source.range(edge).begin, cert.rows(), s);
}

// T_e: the remaining n_e - s columns.
FMatrix certificate_tail(const FMatrix& cert, const TreePinSource& source, std::size_t edge, std::size_t s) {
  const auto r = source.range(edge);
  return cert.block(0, r.begin + s, cert.rows(), r.size() - s);
}

// parent_edge[v] is the layout index of the edge from v towards the root.
std::vector<std::size_t> parent_edges(const TreePinSource& source, int root) {
  const auto n = static_cast<std::size_t>(source.vertex_count());
  std::vector<std::size_t> parent(n, source.edge_count());
  std::vector<bool> seen(n, false);
  std::deque<int> queue{root};
  seen[static_cast<std::size_t>(root)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (auto e : source.incident_edges(v)) {
      const int w = source.other_end(e, v);
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      parent[static_cast<std::size_t>(w)] = e;
      queue.push_back(w);
    }
  }
  return parent;
}

bool column_supported_by(const FMatrix& f, std::size_t col, const NodeView& view) {
  std::vector<bool> mask(f.rows(), false);
  for (auto c : view.coords) mask[c] = true;
  for (std::size_t r = 0; r < f.rows(); ++r) {
    if (f(r, col).value != 0 && !mask[r]) return false;
  }
  return true;
}

// --- serialization helpers -------------------------------------------------

std::vector<std::string_view> tokens_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T to_number(std::string_view token, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(std::string("scheme: bad ") + what + " '" + std::string(token) + "'");
  }
  return v;
}

std::string_view value_of(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key) {
    throw ParseError("scheme: expected '" + std::string(key) + "...', got '" + std::string(token) + "'");
  }
  return token.substr(key.size());
}

void write_matrix_rows(std::ostringstream& os, const FMatrix& m) {
  if (m.cols() == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m.field().format(m(r, c));
    os << '\n';
  }
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      auto line = text.substr(pos, end - pos);
      pos = end + 1;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string_view::npos || line[first] == '#') continue;
      lines_.push_back(line);
    }
  }
  std::vector<std::string_view> next(const char* what) {
    if (at_ >= lines_.size()) throw ParseError(std::string("scheme: unexpected end, expected ") + what);
    return tokens_of(lines_[at_++]);
  }
  bool done() const { return at_ >= lines_.size(); }

 private:
  std::vector<std::string_view> lines_;
  std::size_t at_ = 0;
};

FMatrix read_matrix(LineReader& in, const FieldPtr& field, std::size_t rows, std::size_t cols) {
  FMatrix m(field, rows, cols);
  if (cols == 0) return m;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto toks = in.next("matrix row");
    if (toks.size() != cols) throw ParseError("scheme: matrix row has wrong number of entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = field->parse(toks[c]);
  }
  return m;
}

}  // namespace

bool operator==(const CommScheme& a, const CommScheme& b) {
  const bool same_field = a.field && b.field && a.field->same_as(*b.field);
  return same_field && a.method == b.method && a.root == b.root && a.s == b.s && a.transmit == b.transmit &&
         a.owners == b.owners && a.a_blocks == b.a_blocks && a.b_blocks == b.b_blocks && a.certificate == b.certificate;
}

unsigned choose_extension_degree(const TreePinSource& source) {
  const std::uint64_t bound = source.min_multiplicity() * source.edge_count();
  unsigned n = 1;
  std::uint64_t size = source.q();
  while (size <= bound) {
    size *= source.q();
    ++n;
  }
  return n;
}

int default_root(const TreePinSource& source) {
  for (int v = 0; v < source.vertex_count(); ++v) {
    if (source.is_leaf(v)) return v;
  }
  throw ValidationError("tree has no leaf");  // unreachable for |V| >= 2
}

CertificateSampler::CertificateSampler(const Instance& instance, FieldPtr field)
    : source_(instance.source),
      field_(std::move(field)),
      nullspace_(left_nullspace_basis(lift(instance.wiretapper.matrix, field_))) {}

FMatrix CertificateSampler::draw(std::mt19937_64& rng) const {
  const std::size_t s = source_.min_multiplicity();
  std::uniform_int_distribution<std::uint32_t> pick(0, field_->order() - 1);
  FMatrix coeffs(field_, s, nullspace_.rows());
  for (auto& e : coeffs.data()) e = Elem{pick(rng)};
  return mul(coeffs, nullspace_);
}

bool CertificateSampler::blocks_invertible(const FMatrix& certificate) const {
  const std::size_t s = source_.min_multiplicity();
  for (std::size_t e = 0; e < source_.edge_count(); ++e) {
    if (det(certificate_head(certificate, source_, e, s)).value == 0) return false;
  }
  return true;
}

CommScheme assemble_scheme(const TreePinSource& source, FieldPtr field, int root, const FMatrix& certificate,
                           std::string method) {
  const std::size_t s = source.min_multiplicity();
  const std::size_t dim = source.total_dim();
  if (certificate.rows() != s || certificate.cols() != dim) throw ShapeError("certificate must be s x D");
  if (root < 0 || root >= source.vertex_count() || !source.is_leaf(root)) {
    throw SynthesisError("root must be a leaf of the tree");
  }

  CommScheme scheme;
  scheme.field = field;
  scheme.method = std::move(method);
  scheme.root = root;
  scheme.s = s;
  scheme.certificate = certificate;

  std::vector<FMatrix> head_inv;
  for (std::size_t e = 0; e < source.edge_count(); ++e) {
    try {
      head_inv.push_back(inverse(certificate_head(certificate, source, e, s)));
    } catch (const SingularMatrixError&) {
      throw SynthesisError("certificate block of edge " + std::to_string(source.edges()[e].id) + " is singular");
    }
  }

  const auto parent = parent_edges(source, root);
  std::vector<FMatrix> columns;
  const ExtField& f = *field;
  for (int node = 0; node < source.vertex_count(); ++node) {
    if (node == root) continue;
    const std::size_t up = parent[static_cast<std::size_t>(node)];
    const auto up_range = source.range(up);
    const FMatrix up_head = certificate_head(certificate, source, up, s);

    // First part: Y_{e*(i)[s]} + Y_{e[s]} A_{i,e} for every child edge e.
    for (auto e : source.incident_edges(node)) {
      if (e == up) continue;
      FMatrix a = negate(mul(head_inv[e], up_head));
      const auto r = source.range(e);
      for (std::size_t k = 0; k < s; ++k) {
        FMatrix col(field, dim, 1);
        col(up_range.begin + k, 0) = f.one();
        for (std::size_t t = 0; t < s; ++t) col(r.begin + t, 0) = a(t, k);
        columns.push_back(std::move(col));
        scheme.owners.push_back(node);
      }
      scheme.a_blocks.push_back({node, source.edges()[e].id, std::move(a)});
    }

    // Second part: Y_{e*(i)[s]} B + Y_{e*(i)[s+1..n_e]}.
    FMatrix b = negate(mul(head_inv[up], certificate_tail(certificate, source, up, s)));
    for (std::size_t k = 0; k < b.cols(); ++k) {
      FMatrix col(field, dim, 1);
      for (std::size_t t = 0; t < s; ++t) col(up_range.begin + t, 0) = b(t, k);
      col(up_range.begin + s + k, 0) = f.one();
      columns.push_back(std::move(col));
      scheme.owners.push_back(node);
    }
    scheme.b_blocks.push_back({node, source.edges()[up].id, std::move(b)});
  }

  scheme.transmit = FMatrix(field, dim, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t r = 0; r < dim; ++r) scheme.transmit(r, j) = columns[j](r, 0);
  }
  return scheme;
}

void check_scheme_invariants(const CommScheme& scheme, const Instance& instance) {
  const auto& source = instance.source;
  const std::size_t dim = source.total_dim();
  const FMatrix& f = scheme.transmit;
  if (f.rows() != dim) throw SynthesisError("transmit matrix must have D rows");
  if (scheme.owners.size() != f.cols()) throw SynthesisError("every transmitted column needs an owner");
  if (rank(f) != dim - scheme.s) throw SynthesisError("rank(F) != D - s");
  if (!scheme.certificate) throw SynthesisError("synthesized scheme lacks its certificate");
  const FMatrix& cert = *scheme.certificate;
  if (rank(cert) != scheme.s) throw SynthesisError("certificate rank != s");
  if (!mul(cert, f).is_zero()) throw SynthesisError("S F != 0");
  if (!mul(cert, lift(instance.wiretapper.matrix, scheme.field)).is_zero()) throw SynthesisError("S W != 0");
  for (const auto& block : scheme.a_blocks) {
    if (det(block.matrix).value == 0) throw SynthesisError("A block is singular");
  }
  for (std::size_t j = 0; j < f.cols(); ++j) {
    if (!column_supported_by(f, j, source.node_view(scheme.owners[j]))) {
      throw SynthesisError("column " + std::to_string(j) + " is not computable by its owner");
    }
  }
}

CommScheme synth_random(const Instance& instance, std::uint64_t seed, std::size_t max_attempts) {
  if (!is_irreducible(instance)) {
    throw SynthesisError("instance is reducible; run reduce_full before synthesis");
  }
  const auto field = ExtField::make(instance.source.q(), choose_extension_degree(instance.source));
  const CertificateSampler sampler(instance, field);
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    FMatrix cert = sampler.draw(rng);
    if (!sampler.blocks_invertible(cert)) continue;
    CommScheme scheme = assemble_scheme(instance.source, field, default_root(instance.source), cert, "random");
    check_scheme_invariants(scheme, instance);
    return scheme;
  }
  throw SynthesisError("no certificate with invertible edge blocks after " + std::to_string(max_attempts) +
                       " attempts");
}

CommScheme synth_explicit_unit(const Instance& instance) {
  const auto& source = instance.source;
  const auto& w = instance.wiretapper.matrix;
  for (const auto& e : source.edges()) {
    if (e.multiplicity != 1) {
      throw SynthesisError("explicit-unit needs every multiplicity to be 1; use the random method");
    }
  }
  if (w.cols() == 0) throw SynthesisError("explicit-unit needs n_w >= 1; use the random method");
  if (w.cols() >= source.total_dim()) throw SynthesisError("explicit-unit needs k = |E| - n_w >= 1");
  if (!is_irreducible(instance)) throw SynthesisError("instance is reducible; run reduce_full before synthesis");

  const auto k = static_cast<unsigned>(source.total_dim() - w.cols());
  const auto field = ExtField::make(source.q(), k);
  const ExtField& f = *field;

  // Column operations bring W to identity rows at the pivots; the remaining
  // rows hold the coefficient matrix a_{ij}.
  const auto red = rref(w.transpose());
  std::vector<bool> is_pivot(source.total_dim(), false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_rows;
  for (std::size_t r = 0; r < source.total_dim(); ++r) {
    if (!is_pivot[r]) free_rows.push_back(r);
  }

  FMatrix cert(field, 1, source.total_dim());
  for (std::size_t j = 0; j < free_rows.size(); ++j) cert(0, free_rows[j]) = f.monomial(static_cast<unsigned>(j));
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    Elem acc = f.zero();
    for (std::size_t j = 0; j < free_rows.size(); ++j) {
      const Elem a = f.embed(red.reduced(i, free_rows[j]).value);
      acc = f.add(acc, f.mul(a, f.monomial(static_cast<unsigned>(j))));
    }
    cert(0, red.pivots[i]) = f.neg(acc);
  }
  for (auto e : cert.data()) {
    if (e.value == 0) throw SynthesisError("internal: explicit certificate has a zero entry");
  }

  CommScheme scheme = assemble_scheme(source, field, default_root(source), cert, "explicit-unit");
  check_scheme_invariants(scheme, instance);
  return scheme;
}

KeyExtractor extract_key(const CommScheme& scheme) {
  const FMatrix& f = scheme.transmit;
  const std::size_t dim = f.rows();
  FMatrix span = f;
  std::size_t current = rank(span);
  KeyExtractor key{FMatrix(scheme.field, dim, 0), {}};
  for (std::size_t c = 0; c < dim && current < dim; ++c) {
    FMatrix unit(scheme.field, dim, 1);
    unit(c, 0) = scheme.field->one();
    FMatrix extended = hcat(span, unit);
    const std::size_t r = rank(extended);
    if (r > current) {
      span = std::move(extended);
      current = r;
      key.coords.push_back(c);
      key.matrix = hcat(key.matrix, unit);
    }
  }
  return key;
}

std::string save_scheme(const CommScheme& scheme) {
  const ExtField& f = *scheme.field;
  std::ostringstream os;
  os << "treepin-scheme\n";
  os << "field q=" << f.q() << " n=" << f.degree() << " modulus=";
  for (std::size_t i = 0; i < f.modulus().size(); ++i) os << (i ? "," : "") << f.modulus()[i];
  os << '\n';
  os << "method " << scheme.method << '\n';
  os << "root " << scheme.root << '\n';
  os << "s " << scheme.s << '\n';
  os << "F rows=" << scheme.transmit.rows() << " cols=" << scheme.transmit.cols() << '\n';
  write_matrix_rows(os, scheme.transmit);
  os << "owners";
  for (auto o : scheme.owners) os << ' ' << o;
  os << '\n';
  for (const auto& [tag, blocks] : {std::pair{"A", &scheme.a_blocks}, std::pair{"B", &scheme.b_blocks}}) {
    for (const auto& b : *blocks) {
      os << tag << " node=" << b.node << " edge=" << b.edge_id << " rows=" << b.matrix.rows()
         << " cols=" << b.matrix.cols() << '\n';
      write_matrix_rows(os, b.matrix);
    }
  }
  if (scheme.certificate) {
    os << "certificate rows=" << scheme.certificate->rows() << " cols=" << scheme.certificate->cols() << '\n';
    write_matrix_rows(os, *scheme.certificate);
  }
  os << "end\n";
  return os.str();
}

CommScheme load_scheme(std::string_view text) {
  LineReader in(text);
  auto toks = in.next("header");
  if (toks.size() != 1 || toks[0] != "treepin-scheme") throw ParseError("scheme: first line must be 'treepin-scheme'");

  toks = in.next("field line");
  if (toks.size() != 4 || toks[0] != "field") throw ParseError("scheme: expected 'field q=<q> n=<n> modulus=<c0,...>'");
  const auto q = to_number<std::uint32_t>(value_of(toks[1], "q="), "q");
  const auto n = to_number<unsigned>(value_of(toks[2], "n="), "n");
  std::vector<std::uint32_t> modulus;
  {
    const auto list = value_of(toks[3], "modulus=");
    std::size_t pos = 0;
    while (pos <= list.size()) {
      const auto next = std::min(list.find(',', pos), list.size());
      modulus.push_back(to_number<std::uint32_t>(list.substr(pos, next - pos), "modulus coefficient"));
      pos = next + 1;
    }
  }
  if (modulus.size() != n + 1) throw ParseError("scheme: modulus degree does not match n");
  CommScheme scheme;
  scheme.field = ExtField::with_modulus(q, std::move(modulus));

  toks = in.next("method line");
  if (toks.size() != 2 || toks[0] != "method") throw ParseError("scheme: expected 'method <name>'");
  scheme.method = std::string(toks[1]);
  toks = in.next("root line");
  if (toks.size() != 2 || toks[0] != "root") throw ParseError("scheme: expected 'root <node>'");
  scheme.root = to_number<int>(toks[1], "root");
  toks = in.next("s line");
  if (toks.size() != 2 || toks[0] != "s") throw ParseError("scheme: expected 's <dim>'");
  scheme.s = to_number<std::size_t>(toks[1], "s");

  toks = in.next("F header");
  if (toks.size() != 3 || toks[0] != "F") throw ParseError("scheme: expected 'F rows=<r> cols=<c>'");
  const auto rows = to_number<std::size_t>(value_of(toks[1], "rows="), "rows");
  const auto cols = to_number<std::size_t>(value_of(toks[2], "cols="), "cols");
  scheme.transmit = read_matrix(in, scheme.field, rows, cols);

  toks = in.next("owners line");
  if (toks.empty() || toks[0] != "owners") throw ParseError("scheme: expected 'owners ...'");
  for (std::size_t i = 1; i < toks.size(); ++i) scheme.owners.push_back(to_number<int>(toks[i], "owner"));
  if (scheme.owners.size() != cols) throw ParseError("scheme: owner count must equal F column count");

  for (;;) {
    toks = in.next("block or 'end'");
    if (toks.size() == 1 && toks[0] == "end") break;
    if (!toks.empty() && (toks[0] == "A" || toks[0] == "B") && toks.size() == 5) {
      CoefficientBlock block;
      block.node = to_number<int>(value_of(toks[1], "node="), "node");
      block.edge_id = to_number<int>(value_of(toks[2], "edge="), "edge");
      const auto r = to_number<std::size_t>(value_of(toks[3], "rows="), "rows");
      const auto c = to_number<std::size_t>(value_of(toks[4], "cols="), "cols");
      block.matrix = read_matrix(in, scheme.field, r, c);
      (toks[0] == "A" ? scheme.a_blocks : scheme.b_blocks).push_back(std::move(block));
    } else if (!toks.empty() && toks[0] == "certificate" && toks.size() == 3) {
      const auto r = to_number<std::size_t>(value_of(toks[1], "rows="), "rows");
      const auto c = to_number<std::size_t>(value_of(toks[2], "cols="), "cols");
      scheme.certificate = read_matrix(in, scheme.field, r, c);
    } else {
      throw ParseError("scheme: unexpected line");
    }
  }
  if (!in.done()) throw ParseError("scheme: content after 'end'");
  return scheme;
}

}  // namespace treepin
