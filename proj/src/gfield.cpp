#include "treepin/gfield.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "treepin/errors.hpp"

namespace treepin {

namespace {

using Poly = std::vector<std::uint32_t>;

constexpr std::uint32_t kMaxOrder = 1u << 30;
constexpr std::uint32_t kTableOrder = 1u << 16;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo a monic b.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t q) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + q - (c * b[i]) % q) % q);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t q) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % q);
    }
  }
  return poly_mod(std::move(r), m, q);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t q) {
  Poly result{1};
  base = poly_mod(std::move(base), m, q);
  while (e > 0) {
    if (e & 1u) result = poly_mulmod(result, base, m, q);
    base = poly_mulmod(base, base, m, q);
    e >>= 1u;
  }
  return result;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
  std::uint64_t r = 1;
  std::uint64_t b = a % q;
  std::uint64_t e = q - 2;
  while (e > 0) {
    if (e & 1u) r = r * b % q;
    b = b * b % q;
    e >>= 1u;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint32_t lead_inv = inv_mod(b.back(), q);
    for (auto& c : b) c = static_cast<std::uint32_t>(std::uint64_t{c} * lead_inv % q);
    Poly r = poly_mod(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t q, std::span<const std::uint32_t> monic) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const std::size_t n = monic.size() - 1;
  const Poly f(monic.begin(), monic.end());
  const Poly x{0, 1};
  // Frobenius powers x^(q^k) mod f for k = 0..n.
  std::vector<Poly> frob{poly_mod(x, f, q)};
  for (std::size_t k = 1; k <= n; ++k) frob.push_back(poly_powmod(frob.back(), q, f, q));
  if (frob[n] != poly_mod(x, f, q)) return false;
  for (const auto p : prime_factors(n)) {
    Poly g = frob[n / p];
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + q - 1) % q;
    const Poly d = poly_gcd(f, g, q);
    if (d.size() != 1) return false;
  }
  return true;
}

ExtField::ExtField(std::uint32_t q, std::vector<std::uint32_t> modulus)
    : q_(q), degree_(static_cast<unsigned>(modulus.size() - 1)), order_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < degree_; ++i) order_ *= q_;
  if (order_ <= kTableOrder) build_tables();
}

FieldPtr ExtField::make(std::uint32_t q, unsigned degree) {
  if (!is_prime(q)) throw FieldError("base field order " + std::to_string(q) + " is not prime");
  if (degree == 0) throw FieldError("extension degree must be at least 1");
  std::uint64_t count = 1;
  for (unsigned i = 0; i < degree; ++i) {
    count *= q;
    if (count > kMaxOrder) throw FieldError("field order q^n exceeds 2^30");
  }
  Poly candidate(degree + 1, 0);
  candidate[degree] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < degree; ++i) {
      candidate[i] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    if (is_irreducible(q, candidate)) return FieldPtr(new ExtField(q, candidate));
  }
  throw FieldError("no irreducible polynomial found");  // unreachable for prime q
}

FieldPtr ExtField::with_modulus(std::uint32_t q, std::vector<std::uint32_t> modulus) {
  if (!is_prime(q)) throw FieldError("base field order " + std::to_string(q) + " is not prime");
  if (modulus.size() < 2 || modulus.back() != 1) throw FieldError("modulus must be monic of degree >= 1");
  std::uint64_t count = 1;
  for (std::size_t i = 1; i < modulus.size(); ++i) {
    count *= q;
    if (count > kMaxOrder) throw FieldError("field order q^n exceeds 2^30");
  }
  for (auto c : modulus) {
    if (c >= q) throw FieldError("modulus coefficient out of range");
  }
  if (!is_irreducible(q, modulus)) throw FieldError("modulus is not irreducible");
  return FieldPtr(new ExtField(q, std::move(modulus)));
}

void ExtField::build_tables() {
  const std::uint32_t group = order_ - 1;
  const auto factors = prime_factors(group);
  Elem generator{1};
  for (std::uint32_t g = 1; g < order_; ++g) {
    bool primitive = true;
    for (const auto p : factors) {
      Elem acc{1};
      Elem base{g};
      for (std::uint64_t e = group / p; e > 0; e >>= 1u) {
        if (e & 1u) acc = mul_poly(acc, base);
        base = mul_poly(base, base);
      }
      if (acc == Elem{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = Elem{g};
      break;
    }
  }
  exp_.assign(2 * std::size_t{group} + 1, 0);
  log_.assign(order_, 0);
  Elem cur{1};
  for (std::uint32_t i = 0; i < group; ++i) {
    exp_[i] = cur.value;
    log_[cur.value] = i;
    cur = mul_poly(cur, generator);
  }
  for (std::uint32_t i = group; i < exp_.size(); ++i) exp_[i] = exp_[i - group];
}

Elem ExtField::monomial(unsigned k) const {
  if (k >= degree_) throw FieldError("monomial degree exceeds field degree");
  std::uint32_t v = 1;
  for (unsigned i = 0; i < k; ++i) v *= q_;
  return Elem{v};
}

Elem ExtField::embed(std::uint32_t a) const {
  if (a >= q_) throw FieldError("base-field value " + std::to_string(a) + " not in [0, q)");
  return Elem{a};
}

Elem ExtField::from_index(std::uint64_t index) const {
  if (index >= order_) throw FieldError("element index out of range");
  return Elem{static_cast<std::uint32_t>(index)};
}

Elem ExtField::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != degree_) throw FieldError("coefficient list length must equal the field degree");
  std::uint32_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= q_) throw FieldError("coefficient out of range");
    v = v * q_ + coeffs[i];
  }
  return Elem{v};
}

std::vector<std::uint32_t> ExtField::coeffs(Elem a) const {
  std::vector<std::uint32_t> out(degree_, 0);
  std::uint32_t v = a.value;
  for (unsigned i = 0; i < degree_; ++i) {
    out[i] = v % q_;
    v /= q_;
  }
  return out;
}

Elem ExtField::add(Elem a, Elem b) const {
  if (q_ == 2) return Elem{a.value ^ b.value};
  std::uint32_t x = a.value;
  std::uint32_t y = b.value;
  std::uint32_t r = 0;
  std::uint32_t place = 1;
  while (x != 0 || y != 0) {
    const std::uint32_t d = (x % q_ + y % q_) % q_;
    r += d * place;
    place *= q_;
    x /= q_;
    y /= q_;
  }
  return Elem{r};
}

Elem ExtField::neg(Elem a) const {
  if (q_ == 2) return a;
  std::uint32_t x = a.value;
  std::uint32_t r = 0;
  std::uint32_t place = 1;
  while (x != 0) {
    const std::uint32_t d = x % q_;
    r += ((q_ - d) % q_) * place;
    place *= q_;
    x /= q_;
  }
  return Elem{r};
}

Elem ExtField::mul_poly(Elem a, Elem b) const {
  if (a.value == 0 || b.value == 0) return Elem{0};
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  Poly prod(2 * std::size_t{degree_} - 1, 0);
  for (unsigned i = 0; i < degree_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < degree_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % q_);
    }
  }
  for (std::size_t d = prod.size(); d-- > degree_;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    const std::size_t shift = d - degree_;
    for (unsigned i = 0; i <= degree_; ++i) {
      prod[shift + i] = static_cast<std::uint32_t>((prod[shift + i] + q_ - (c * modulus_[i]) % q_) % q_);
    }
  }
  std::uint32_t v = 0;
  for (unsigned i = degree_; i-- > 0;) v = v * q_ + prod[i];
  return Elem{v};
}

Elem ExtField::mul(Elem a, Elem b) const {
  if (a.value == 0 || b.value == 0) return Elem{0};
  if (!exp_.empty()) return Elem{exp_[std::size_t{log_[a.value]} + log_[b.value]]};
  return mul_poly(a, b);
}

Elem ExtField::inv(Elem a) const {
  if (a.value == 0) throw FieldError("inverse of zero");
  if (!exp_.empty()) return Elem{exp_[(order_ - 1 - log_[a.value]) % (order_ - 1)]};
  return pow(a, order_ - 2);
}

Elem ExtField::pow(Elem a, std::uint64_t e) const {
  Elem result = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return result;
}

std::string ExtField::format(Elem a) const {
  std::ostringstream os;
  const auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  return os.str();
}

Elem ExtField::parse(std::string_view text) const {
  std::vector<std::uint32_t> c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(',', pos), text.size());
    const auto piece = text.substr(pos, next - pos);
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (ec != std::errc{} || ptr != piece.data() + piece.size() || piece.empty()) {
      throw ParseError("malformed field element '" + std::string(text) + "'");
    }
    c.push_back(v);
    pos = next + 1;
  }
  if (c.size() != degree_) throw ParseError("field element '" + std::string(text) + "' has wrong length");
  for (auto v : c) {
    if (v >= q_) throw ParseError("field element coefficient out of range in '" + std::string(text) + "'");
  }
  return from_coeffs(c);
}

}  // namespace treepin
