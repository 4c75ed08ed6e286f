#pragma once

// Projective spaces PG(d, F) and their subspaces in canonical form.
//
// A subspace is stored as the reduced row-echelon basis of the underlying
// vector subspace of F^{d+1}; two subspaces are equal iff those matrices are
// identical. The empty subspace has no rows (projective dimension -1).

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "pal/linalg.hpp"

namespace pal {

inline constexpr std::uint64_t kPointEnumerationCap = 10'000'000;

/// Number of points of a projective space of vector dimension `rank` over F_q.
std::uint64_t projective_point_count(std::uint64_t q, int rank);

struct ProjSpace {
  FieldPtr field;
  int dim = 0;

  std::uint64_t point_count() const { return projective_point_count(field->size(), dim + 1); }
};

class Subspace {
 public:
  Subspace() = default;
  /// Empty subspace of PG(ambient_dim, field).
  Subspace(FieldPtr field, int ambient_dim);

  static Subspace from_rows(FieldPtr field, int ambient_dim, Matrix rows);
  static Subspace from_vectors(FieldPtr field, int ambient_dim, const std::vector<Vector>& rows);
  static Subspace point(FieldPtr field, std::span<const Code> coords);
  static Subspace whole(FieldPtr field, int ambient_dim);

  const FieldPtr& field() const noexcept { return field_; }
  int ambient_dim() const noexcept { return ambient_dim_; }
  /// Vector dimension.
  int rank() const noexcept { return basis_.rows(); }
  /// Projective dimension; -1 for the empty subspace.
  int dim() const noexcept { return rank() - 1; }
  bool empty() const noexcept { return rank() == 0; }
  bool is_whole() const noexcept { return rank() == ambient_dim_ + 1; }

  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }

  bool contains_vector(std::span<const Code> v) const;
  bool contains(const Subspace& other) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_ &&
           (a.field_ == b.field_ || same_field(a.field_, b.field_));
  }
  /// Lexicographic on (rank, basis entries); used for deterministic ordering.
  friend bool operator<(const Subspace& a, const Subspace& b);

 private:
  FieldPtr field_;
  int ambient_dim_ = 0;
  Matrix basis_;
  std::vector<int> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

void check_same_ambient(const Subspace& a, const Subspace& b);

Subspace span(const Subspace& a, const Subspace& b);
Subspace span(std::span<const Subspace> parts);
Subspace meet(const Subspace& a, const Subspace& b);
/// Orthogonal complement under the standard dot product.
Subspace dual(const Subspace& a);
bool are_skew(const Subspace& a, const Subspace& b);

/// Projection from a center onto a complement, realising PG(d, F) / center as
/// PG(d - r, F), r the vector dimension of the center. By default the
/// complement is spanned by the unit vectors at the non-pivot columns of the
/// center, so the image of a vector is its reduction modulo the center read
/// off at those columns.
class Quotient {
 public:
  explicit Quotient(const Subspace& center);
  Quotient(const Subspace& center, const Subspace& complement);

  const Subspace& center() const noexcept { return center_; }
  const Subspace& complement() const noexcept { return complement_; }
  int target_dim() const noexcept { return complement_.rank() - 1; }

  Vector project(std::span<const Code> v) const;
  Subspace image(const Subspace& s) const;
  /// span(center, lift(t)) for a subspace t of the quotient.
  Subspace preimage(const Subspace& t) const;
  Vector lift(std::span<const Code> v) const;

 private:
  void init();

  Subspace center_;
  Subspace complement_;
  Matrix inverse_basis_;
};

/// A complement of `center` drawn uniformly from random bases; test helper
/// and explicit-complement cross-checks.
Subspace random_complement(const Subspace& center, std::mt19937_64& rng);

/// Coordinates relative to a host subspace W: a vector of W is identified with
/// its entries at the pivot columns of W's canonical basis.
Subspace to_chart(const Subspace& host, const Subspace& s);
Subspace from_chart(const Subspace& host, const Subspace& s);

/// Normalized coordinates of all points of `s`, lexicographically sorted.
std::vector<Vector> points_of(const Subspace& s);
/// Visits every point (normalized coordinates) without sorting.
void for_each_point(const Subspace& s, const std::function<void(const Vector&)>& fn);

/// Integer key of a vector: its entries read as base-|F| digits.
std::uint64_t vector_key(std::span<const Code> v, Code field_size);

/// Visits every subspace of the given vector dimension of PG(ambient_dim, field).
void for_each_subspace(const FieldPtr& field, int ambient_dim, int rank,
                       const std::function<void(const Subspace&)>& fn);

Subspace random_subspace(const FieldPtr& field, int ambient_dim, int rank, std::mt19937_64& rng);

/// The same subspace read over the top field of the tower.
Subspace extend_scalars(const Subspace& s, const FieldTower& tower);
/// Inverse of extend_scalars; empty optional if the canonical basis has an
/// entry outside the base field (the subspace is not rational).
std::optional<Subspace> restrict_scalars(const Subspace& s, const FieldTower& tower);
/// Entrywise Frobenius x -> x^q on a subspace over the top field.
Subspace conjugate(const Subspace& s, const FieldTower& tower);

}  // namespace pal
