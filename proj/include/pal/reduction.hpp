#pragma once

// Field reduction F_{q^n}^{k} -> F_q^{kn}, the regular pseudo-arcs it
// produces, the transversal lines of regular spreads, the regular spread
// Sigma(gamma, Gamma) of PG(3n-1, q) with its plane model PG(2, q^n), and the
// recognition of regular pseudo-arcs.
//
// Coordinate convention ("powerbasis-v1"): coordinate j of a vector over
// F_{q^n} expands into target coordinates jn .. jn+n-1, its coefficients over
// the F_q-basis 1, x, ..., x^{n-1} (x the polynomial generator of F_{q^n}).

#include <optional>
#include <string>
#include <vector>

#include "pal/spreads.hpp"

namespace pal {

class ReductionMap {
 public:
  explicit ReductionMap(FieldTower tower, int source_dim = 2);

  const FieldTower& tower() const noexcept { return tower_; }
  int n() const noexcept { return tower_.n(); }
  int source_dim() const noexcept { return source_dim_; }
  int target_dim() const noexcept { return (source_dim_ + 1) * tower_.n() - 1; }

  Vector expand_vector(std::span<const Code> v) const;
  Vector combine_vector(std::span<const Code> v) const;

  /// F_q-span of all F_{q^n}-multiples of the basis vectors of `s`.
  Subspace reduce(const Subspace& s) const;
  Subspace reduce_point(std::span<const Code> coords) const;
  Subspace reduce_line(const Subspace& line) const;

 private:
  FieldTower tower_;
  int source_dim_;
};

/// Reductions of the points of PG(1, q^n): the Desarguesian spread of PG(2n-1, q).
Spread desarguesian_spread(const FieldTower& tower);

/// Reduces every point of a verified plane arc over the top field; the result
/// carries a regularity witness with the identity identification.
PseudoArc reduce_arc(const PlaneArc& arc, const ReductionMap& map);

/// Apply v -> v * m to the rows of a subspace.
Subspace transform(const Subspace& s, const Matrix& m);

struct TransversalResult {
  bool ok = false;
  /// U_1, ..., U_n over F_{q^n} in the spread's own coordinates, with
  /// U_{l+1} the Frobenius conjugate of U_l.
  std::vector<Subspace> lines;
  /// Present when the spread is not regular.
  std::optional<RegularityReport> certificate;
  std::string failure;
};

/// n conjugate lines over F_{q^n} meeting every element of a regular spread
/// (extended to F_{q^n}) in one point. Requires n >= 2.
TransversalResult spread_transversals(const Spread& spread, const FieldTower& tower);

/// A spread of PG(d, q) by (n-1)-spaces that is not tied to PG(2n-1, q).
struct SubspaceSpread {
  FieldPtr field;
  int n = 1;
  int ambient_dim = 0;
  std::vector<Subspace> elements;
};

SpreadReport verify_subspace_spread(const SubspaceSpread& spread);

/// The regulus through C inside span(A, B), returned in ambient coordinates.
Regulus regulus_in_span(const Subspace& a, const Subspace& b, const Subspace& c);

struct SigmaScaffold {
  std::vector<Subspace> transversal_lines;     // U_l over F_{q^n}
  std::vector<Subspace> contact_points;        // u_l = alpha meet U_l
  std::vector<Subspace> regulus_transversals;  // T_l through u_l
  std::vector<Subspace> planes;                // theta_l = span(T_l, U_l)
};

struct SigmaResult {
  SubspaceSpread sigma;
  SigmaScaffold scaffold;
  bool contains_regulus = false;
  bool contains_spread = false;
};

/// The regular (n-1)-spread of PG(3n-1, q) generated by a regulus gamma (in
/// ambient coordinates, generators[0] = alpha = beta_i meet beta_j) and a
/// regular spread Gamma_i hosted by beta_i that contains alpha.
SigmaResult build_sigma(const Regulus& gamma, const Spread& gamma_i, const FieldTower& tower);

/// F_q-linear map J of F_q^{3n} whose invariant n-spaces are the elements of
/// Sigma; J acts on theta_l as multiplication by x^{q^{l-1}}.
Matrix sigma_structure(const SigmaScaffold& scaffold, const FieldTower& tower);

/// The regulus of Gamma_j through beta_j meet beta_p for the three partners
/// p, in ambient coordinates; empty when Gamma_j does not contain it.
std::optional<Regulus> dual_regulus(const DualArc& dual, std::size_t j,
                                    const std::array<std::size_t, 3>& partners);

/// Sigma for beta_i, beta_j and the regulus of Gamma_j through alpha_ij and
/// the next two elements of Gamma_j.
SigmaResult sigma_from_dual(const DualArc& dual, std::size_t i, std::size_t j, const FieldTower& tower);

struct PlaneModel {
  std::size_t point_count = 0;
  std::vector<Subspace> lines;
  std::vector<std::vector<std::size_t>> line_points;
  bool ok = false;
  std::string failure;
};

/// Points: spread elements. Lines: (2n-1)-spaces containing two of them.
/// Checks the axioms of a projective plane of order q^n.
PlaneModel plane_model(const SubspaceSpread& sigma);

struct RecognizeOptions {
  /// Indices whose dual spreads Gamma may be used; empty = all arc indices
  /// (for a pseudo-oval: all indices except the appended nucleus).
  std::vector<std::size_t> given;
  /// Indices m whose intersections beta_j meet beta_m the chosen regulus must
  /// contain (at most two are used). For a pseudo-oval the nucleus is added.
  std::vector<std::size_t> required;
  /// Try every choice and check that all successful ones agree.
  bool exhaustive = false;
};

struct Recognition {
  PlaneArc arc;           // recovered arc of PG(2, q^n), same order as the input elements
  Matrix identification;  // reduction coordinates -> ambient coordinates
  Matrix structure;       // J for the dual plane: the arc elements are J-invariant
  std::size_t i = 0, j = 0;
  std::vector<std::size_t> regulus_partners;  // partners of the regulus elements in Gamma_j
};

struct RecognitionResult {
  std::optional<Recognition> match;
  /// Set when some Gamma spread that recognition relies on is not regular.
  std::optional<std::pair<std::size_t, RegularityReport>> not_regular;
  std::size_t choices_tried = 0;
  std::size_t choices_succeeded = 0;
  bool choices_agree = true;
};

RecognitionResult recognize_regular(const PseudoArc& arc, const RecognizeOptions& options = {});
RecognitionResult recognize_from_dual(const PseudoArc& arc, const DualArc& dual,
                                      const RecognizeOptions& options = {});

/// Re-reduces the witness plane arc and compares with the arc elements.
bool witness_reproduces(const PseudoArc& arc, const RegularityWitness& witness);

}  // namespace pal
