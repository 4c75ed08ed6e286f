#pragma once

// Finite fields F_{2^m} (m <= 16) and small odd prime fields, with the
// subfield tower F_q < F_{q^n} used by field reduction.
//
// Elements are plain integer codes. For p = 2 the code of sum a_i x^i is
// sum a_i 2^i; for an odd prime field the code is the residue itself.
// Codes are the external representation; the log/antilog tables are internal.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pal/error.hpp"

namespace pal {

using Code = std::uint32_t;

inline constexpr int kMaxFieldDegree = 16;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Default modulus (bit-encoded polynomial) used for F_{2^m}.
std::uint32_t default_modulus(int m);

/// Exhaustive trial division over F_2; `poly` is bit-encoded, degree >= 1.
bool is_irreducible_gf2(std::uint32_t poly);

int poly_degree(std::uint32_t poly);

class Field {
 public:
  /// F_{2^m}. Throws on degree mismatch or a reducible modulus.
  static FieldPtr make(int m, std::optional<std::uint32_t> modulus = std::nullopt);
  /// Prime field F_p, p prime and p <= 13.
  static FieldPtr prime(int p);

  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return m_; }
  std::uint32_t modulus_bits() const noexcept { return modulus_; }
  Code size() const noexcept { return size_; }

  Code add(Code a, Code b) const noexcept {
    return p_ == 2 ? (a ^ b) : (a + b) % size_;
  }
  Code sub(Code a, Code b) const noexcept {
    return p_ == 2 ? (a ^ b) : (a + size_ - b) % size_;
  }
  Code neg(Code a) const noexcept { return p_ == 2 ? a : (size_ - a) % size_; }
  Code mul(Code a, Code b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Code inv(Code a) const;
  Code div(Code a, Code b) const;
  Code pow(Code a, std::uint64_t e) const noexcept;

  /// Polynomial multiplication modulo the modulus without tables (oracle path).
  Code mul_slow(Code a, Code b) const noexcept;

  bool contains(Code a) const noexcept { return a < size_; }

  /// Same characteristic, degree and modulus.
  bool same_as(const Field& other) const noexcept {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
  }

  std::string describe() const;

 private:
  Field(int p, int m, std::uint32_t modulus);
  void build_tables();

  int p_;
  int m_;
  std::uint32_t modulus_;
  Code size_;
  std::vector<Code> exp_;  // doubled length, no reduction of exponents needed
  std::vector<std::uint32_t> log_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept;

/// A field element bound to its owning field.
struct FieldElement {
  FieldPtr owner;
  Code code = 0;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return same_field(a.owner, b.owner) && a.code == b.code;
  }
};

enum class ArithKind { Add, Mul, Div };

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithKind kind);
FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);

/// F_q = F_{2^h} inside F_{q^n} = F_{2^{hn}}, or the trivial tower (n = 1)
/// over any supported field.
class FieldTower {
 public:
  FieldTower(FieldPtr base, int n, std::optional<std::uint32_t> top_modulus = std::nullopt);

  const FieldPtr& base() const noexcept { return base_; }
  const FieldPtr& top() const noexcept { return top_; }
  int n() const noexcept { return n_; }
  /// q = |base|.
  Code q() const noexcept { return base_->size(); }

  /// Smallest-code root of the base modulus in the top field.
  Code embedding_root() const noexcept { return root_; }
  Code embed(Code a) const;
  std::optional<Code> restrict(Code a) const;
  bool in_base(Code a) const { return restrict(a).has_value(); }

  /// x -> x^q on the top field.
  Code frobenius(Code a) const;
  std::vector<Code> galois_orbit(Code a) const;

  /// F_q-basis of the top field used by field reduction: 1, x, ..., x^{n-1}
  /// where x is the polynomial generator (code 2) of the top field.
  std::span<const Code> reduction_basis() const noexcept { return basis_; }
  /// Coordinates of `a` (top code) over the reduction basis, as base codes.
  std::span<const Code> expand(Code a) const;
  /// Inverse of expand.
  Code combine(std::span<const Code> coords) const;

  std::string convention() const { return "powerbasis-v1"; }

 private:
  FieldPtr base_;
  FieldPtr top_;
  int n_;
  Code root_ = 0;
  std::vector<Code> embed_;
  std::vector<std::int32_t> restrict_;
  std::vector<Code> basis_;
  std::vector<Code> expand_;  // size |top| * n
};

FieldElement frobenius(const FieldElement& a, const FieldTower& tower);
std::vector<FieldElement> galois_orbit(const FieldElement& a, const FieldTower& tower);

}  // namespace pal
