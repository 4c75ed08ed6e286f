#pragma once

// (n-1)-spreads of PG(2n-1, q), reguli, regularity, and the spreads derived
// from a pseudo-arc: by projection from an element or from the nucleus, the
// tangent-space spreads for q odd, and the spreads of the dual arc.

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pal/pseudo_arcs.hpp"

namespace pal {

struct Spread {
  FieldPtr field;
  int n = 1;
  /// Elements as subspaces of PG(2n-1, q).
  std::vector<Subspace> elements;
  /// When the spread lives inside a (2n-1)-space of a larger space, that host;
  /// elements are then expressed in the host's chart coordinates.
  std::optional<Subspace> host;

  int ambient_dim() const noexcept { return 2 * n - 1; }
  std::size_t size() const noexcept { return elements.size(); }
  /// Element in the coordinates of the host's ambient space (or unchanged).
  Subspace lifted(std::size_t i) const;
};

using SubspaceIndex = std::unordered_map<Subspace, std::size_t, SubspaceHash>;
SubspaceIndex index_of(const std::vector<Subspace>& elements);

struct SpreadReport {
  bool ok = false;
  bool count_ok = false;
  bool skew_ok = false;
  bool cover_ok = false;
  std::size_t expected_size = 0;
  std::size_t actual_size = 0;
  std::uint64_t uncovered_points = 0;
  std::optional<std::pair<std::size_t, std::size_t>> meeting_pair;
  std::string failure;
};

/// Count q^n+1, pairwise skewness, exact cover of the points.
SpreadReport verify_spread(const Spread& spread);

struct Regulus {
  std::array<Subspace, 3> generators;
  /// q+1 elements, sorted canonically.
  std::vector<Subspace> elements;
};

/// The regulus through three pairwise skew (n-1)-spaces spanning PG(2n-1, q).
/// With the ambient split as A + C, B is the graph of an invertible linear
/// map f: A -> C and the regulus is {A, C} together with the graphs of the
/// scalar multiples of f.
Regulus regulus_through(const Subspace& a, const Subspace& b, const Subspace& c);

enum class SweepMode { Auto, Full, FixedElement };

inline constexpr std::uint64_t kFullSweepTripleLimit = 100'000;

struct RegularityReport {
  bool regular = false;
  bool vacuous = false;  // q = 2: every regulus is just its three generators
  bool full_sweep = true;
  std::uint64_t triples_checked = 0;
  std::optional<std::array<std::size_t, 3>> witness;
  std::optional<Subspace> missing;
};

/// Regularity as closure under reguli: for every triple of elements the
/// regulus through them lies in the spread. Auto runs the full sweep below
/// kFullSweepTripleLimit triples, else only triples containing element 0.
RegularityReport is_regular_spread(const Spread& spread, SweepMode mode = SweepMode::Auto);

/// The q+1 transversal lines of a regulus of lines of PG(3, q).
Regulus opposite_regulus(const Regulus& regulus);

/// Replaces the elements of a regulus contained in the spread by the
/// opposite regulus (n = 2).
Spread switch_regulus(const Spread& spread, const Regulus& regulus);

struct PairReguli {
  std::vector<Regulus> reguli;
  bool all_contained = true;
};

/// Distinct reguli R(A, B, X) for X ranging over the other elements.
PairReguli reguli_through_pair(const Spread& spread, std::size_t a, std::size_t b);
std::size_t count_reguli_through_pair(const Spread& spread, std::size_t a, std::size_t b);

/// Every distinct regulus contained in the spread.
std::vector<Regulus> reguli_in(const Spread& spread);

/// Delta_i: projection of the arc from element i (plus, for a pseudo-oval, the
/// image of the tangent space at position i). Uses the canonical quotient, or
/// the given complement when supplied.
Spread derive_spread_from_element(const PseudoArc& arc, std::size_t i,
                                  const std::optional<Subspace>& complement = std::nullopt);

/// Delta: projection of a pseudo-oval (q even) from its nucleus.
Spread derive_spread_from_nucleus(const PseudoArc& oval,
                                  const std::optional<Subspace>& complement = std::nullopt);

/// Delta*_i for q odd: {tau_i meet tau_j} plus the element itself, as a spread of tau_i.
Spread derive_tangent_spread_odd(const PseudoArc& oval, std::size_t i);

struct DualArc {
  /// beta_k = dual of element k; a pseudo-oval is first extended by its nucleus (last index).
  std::vector<Subspace> betas;
  /// gammas[i] = {beta_i meet beta_j : j != i}, hosted by beta_i.
  std::vector<Spread> gammas;
  /// partners[i][k] = j such that gammas[i].elements[k] = beta_i meet beta_j.
  std::vector<std::vector<std::size_t>> partners;
  bool nucleus_appended = false;
};

DualArc dual_arc(const PseudoArc& arc);

}  // namespace pal
