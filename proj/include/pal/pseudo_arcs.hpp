#pragma once

// Generalized arcs of PG(3n-1, q): sets of (n-1)-spaces any three of which
// span the whole space. Pseudo-ovals have q^n+1 elements, pseudo-hyperovals
// (q even) q^n+2.

#include <array>
#include <optional>
#include <vector>

#include "pal/plane_arcs.hpp"
#include "pal/projective.hpp"

namespace pal {

enum class ArcKind { GeneralizedArc, PseudoOval, PseudoHyperoval };

const char* to_string(ArcKind kind) noexcept;

/// Evidence that an arc arises by field reduction: the plane arc over the top
/// field of `tower`, and an invertible matrix `identification` (3n x 3n over
/// F_q) such that reducing every plane-arc point and mapping the result by
/// v -> v * identification yields the arc elements, in order.
struct RegularityWitness {
  FieldTower tower;
  PlaneArc plane_arc;
  Matrix identification;
};

struct PseudoArc {
  FieldPtr field;  // F_q
  int n = 1;
  std::vector<Subspace> elements;
  ArcKind kind = ArcKind::GeneralizedArc;
  std::optional<RegularityWitness> witness;

  int ambient_dim() const noexcept { return 3 * n - 1; }
  Code q() const noexcept { return field->size(); }
  std::size_t size() const noexcept { return elements.size(); }
  /// q^n
  std::uint64_t order() const;
};

struct ArcReport {
  bool ok = false;
  bool generating = false;
  bool within_bound = false;
  std::size_t k = 0;
  std::size_t bound = 0;
  ArcKind kind = ArcKind::GeneralizedArc;
  std::optional<std::array<std::size_t, 3>> failing_triple;
};

/// Checks that every three elements span PG(3n-1, q); the witness is the
/// first non-generating triple. Throws on elements of the wrong dimension.
ArcReport verify_pseudo_arc(const FieldPtr& field, int n, const std::vector<Subspace>& elements);

/// Verifies and classifies; throws ErrorKind::NotArc on failure.
PseudoArc make_pseudo_arc(const FieldPtr& field, int n, std::vector<Subspace> elements);

/// Unique (2n-1)-space through element i missing all other elements.
Subspace tangent_space(const PseudoArc& oval, std::size_t i);
std::vector<Subspace> tangent_spaces(const PseudoArc& oval);

/// Common (n-1)-space of all tangent spaces of a pseudo-oval, q even.
Subspace nucleus(const PseudoArc& oval);
Subspace nucleus(const PseudoArc& oval, const std::vector<Subspace>& tangents);

/// Appends the nucleus (index q^n+1) and re-verifies.
PseudoArc extend_to_hyperoval(const PseudoArc& oval);

/// Exhaustive search for an (n-1)-space that could be added to the arc.
/// Returns the first one found, or nothing if the arc is complete.
std::optional<Subspace> find_extension(const PseudoArc& arc);

}  // namespace pal
