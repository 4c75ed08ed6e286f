#pragma once

// Arcs of the projective plane PG(2, Q): k-arcs, ovals, hyperovals.
// Every oval of PG(2, Q), Q odd, is a conic (Segre); only conics are built
// here for odd Q.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pal/projective.hpp"

namespace pal {

enum class PlaneArcKind { KArc, Oval, Hyperoval };

const char* to_string(PlaneArcKind kind) noexcept;

struct PlaneArc {
  FieldPtr field;
  std::vector<Vector> points;  // normalized coordinate triples
  PlaneArcKind kind = PlaneArcKind::KArc;

  std::size_t size() const noexcept { return points.size(); }
};

struct KArcReport {
  bool ok = false;             // no three collinear and within the size bound
  bool no_three_collinear = false;
  bool within_bound = false;
  std::size_t k = 0;
  std::size_t bound = 0;       // Q + 2 (Q even) or Q + 1 (Q odd)
  std::optional<std::array<std::size_t, 3>> collinear;
};

/// Checks that no three of the points are collinear; the witness is the first
/// collinear triple in lexicographic index order. Throws on duplicate points.
KArcReport verify_karc(const FieldPtr& field, const std::vector<Vector>& points);

/// Determinant of the 3x3 matrix with the given rows.
Code det3(const Field& f, const Vector& a, const Vector& b, const Vector& c);

/// {(1, t, t^2)} plus (0, 0, 1).
PlaneArc conic(const FieldPtr& field);

/// {(1, t, t^{2^k})} plus (0, 0, 1) over F_{2^m}; needs gcd(k, m) = 1.
PlaneArc translation_oval(const FieldPtr& field, int k);

/// The line through points[i] that contains no other point of the arc.
Subspace tangent_line(const PlaneArc& arc, std::size_t i);

struct OvalCompletion {
  Vector nucleus;
  PlaneArc hyperoval;
};

/// Common point of all tangent lines of an oval of even order, and the
/// hyperoval obtained by adding it.
OvalCompletion oval_nucleus_and_complete(const PlaneArc& oval);

/// True when no point of PG(2, Q) outside the arc can be added.
bool is_complete_arc(const PlaneArc& arc);

/// Normalized copy; throws on the zero vector or a wrong length.
Vector normalized_point(const Field& f, Vector coords);

}  // namespace pal
