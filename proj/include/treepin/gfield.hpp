#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace treepin {

/// Element of F_{q^n}, stored as the base-q packing of its coefficient list
/// (coefficient of x^0 is the least significant digit). Elements of the prime
/// subfield therefore have value < q.
struct Elem {
  std::uint32_t value = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class ExtField;
using FieldPtr = std::shared_ptr<const ExtField>;

bool is_prime(std::uint64_t v);

/// Rabin irreducibility test for a monic polynomial over F_q, coefficients
/// low-to-high including the leading 1.
bool is_irreducible(std::uint32_t q, std::span<const std::uint32_t> monic);

/// Arithmetic context for F_q (degree 1) and F_{q^n}. Immutable once built.
///
/// Fields up to 2^16 elements use log/antilog tables; larger ones fall back to
/// schoolbook polynomial multiplication modulo the stored modulus.
class ExtField {
 public:
  /// Deterministic context: the modulus is the monic irreducible of degree n
  /// with the smallest base-q value (so x^3+x+1 over F_2, and x for n = 1).
  static FieldPtr make(std::uint32_t q, unsigned degree);

  /// Context for an explicit modulus (used when reading serialized schemes).
  static FieldPtr with_modulus(std::uint32_t q, std::vector<std::uint32_t> modulus);

  std::uint32_t q() const { return q_; }
  unsigned degree() const { return degree_; }
  std::uint32_t order() const { return order_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool same_as(const ExtField& other) const {
    return this == &other || (q_ == other.q_ && modulus_ == other.modulus_);
  }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  /// x^k in the polynomial basis; k < degree.
  Elem monomial(unsigned k) const;

  /// Constant-polynomial embedding of a in [0, q).
  Elem embed(std::uint32_t a) const;
  Elem from_index(std::uint64_t index) const;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  bool in_base_field(Elem a) const { return a.value < q_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Comma-separated coefficient list, low degree first, always `degree()` long.
  std::string format(Elem a) const;
  Elem parse(std::string_view text) const;

 private:
  ExtField(std::uint32_t q, std::vector<std::uint32_t> modulus);

  Elem mul_poly(Elem a, Elem b) const;
  void build_tables();

  std::uint32_t q_;
  unsigned degree_;
  std::uint32_t order_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace treepin
