#pragma once

// Executable checks of the characterization theorems for regular
// pseudo-arcs of even order, and a small t-design checker.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pal/reduction.hpp"

namespace pal {

/// 6.1: pseudo-hyperoval, all Delta_i regular.
/// 6.2: pseudo-oval, Delta_0 .. Delta_{q^n} regular.
/// 6.3: pseudo-hyperoval, at least q^n - 1 of the Delta_i regular.
/// 7.1: pseudo-hyperoval, at least q^n + 1 - delta_0 of the Delta_i regular.
enum class TheoremId { T61, T62, T63, T71 };

const char* to_string(TheoremId id) noexcept;
std::optional<TheoremId> parse_theorem_id(const std::string& text);

struct TheoremParams {
  TheoremId id = TheoremId::T61;
  /// Indices of the Delta spreads assumed regular (6.3 / 7.1). Empty: the
  /// first rho indices.
  std::vector<std::size_t> given;
  /// Number of given spreads; 0 picks the theorem's threshold.
  std::size_t rho = 0;
  int delta0 = 0;
};

enum class Verdict { Pass, Fail, NotApplicable };
const char* to_string(Verdict v) noexcept;

struct SpreadVerdict {
  std::size_t index = 0;
  bool is_spread = false;
  bool regular = false;
  bool vacuous = false;
  std::optional<std::array<std::size_t, 3>> witness;
};

struct HypothesisCheck {
  bool q_even = false;     // q = 2^h
  bool h_above_one = false;
  bool n_prime = false;
  bool holds() const noexcept { return q_even && h_above_one && n_prime; }
};

struct TheoremReport {
  TheoremId id = TheoremId::T61;
  int q = 0;
  int n = 0;
  HypothesisCheck hypothesis;
  std::size_t threshold = 0;  // number of regular Delta spreads the converse needs
  std::vector<std::size_t> given;
  std::vector<SpreadVerdict> spreads;
  bool recognized = false;
  std::optional<std::size_t> recognition_i, recognition_j;
  std::optional<std::size_t> not_regular_gamma;
  std::size_t choices_tried = 0;
  Verdict forward = Verdict::NotApplicable;
  Verdict converse = Verdict::NotApplicable;
  std::string verdict;  // consistent-with-theorem | inconsistent | out-of-hypothesis
  double seconds = 0.0;

  /// 0 consistent, 3 inconsistent, 4 out of hypothesis (and otherwise consistent).
  int exit_code() const noexcept;
};

HypothesisCheck check_hypothesis(const FieldPtr& field, int n);

TheoremReport check_theorem(const PseudoArc& arc, const TheoremParams& params);

struct DesignSpec {
  std::size_t v = 0;
  std::vector<std::vector<std::size_t>> blocks;  // sorted point indices
  int t = 2;
  std::size_t k = 0;
  std::size_t lambda = 1;
  /// Exceptional points: t-subsets meeting them in two or more points need
  /// only lie in at most lambda blocks.
  std::optional<std::vector<std::size_t>> exceptions;
};

struct DesignCheckReport {
  bool ok = false;
  bool block_sizes_ok = false;
  std::optional<std::size_t> bad_block;
  std::uint64_t subsets_checked = 0;
  std::uint64_t violations = 0;
  std::optional<std::vector<std::size_t>> first_violation;
  std::size_t first_violation_count = 0;
  std::string failure;
};

DesignCheckReport check_design(const DesignSpec& spec);

/// Number of blocks containing each t-subset, tabulated: multiplicity -> count.
std::map<std::size_t, std::uint64_t> lambda_profile(const DesignSpec& spec);

/// Points and lines of PG(2, Q) as a 2-(Q^2+Q+1, Q+1, 1) design.
DesignSpec projective_plane_design(const FieldPtr& field);

/// Elements and lines of a plane model as a 2-design.
DesignSpec plane_model_design(const PlaneModel& model);

/// The reguli of a spread as blocks on its elements: a 3-(q^n+1, q+1, 1)
/// design when the spread is regular.
DesignSpec regulus_design(const Spread& spread);

struct RegulusBlocks {
  DesignSpec design;  // t = 4, k = q + 2
  std::map<std::size_t, std::uint64_t> profile;
  bool sizes_ok = false;
};

/// Blocks on the dual arc: for each regulus inside some Gamma_s, the arc
/// duals containing one of its elements. Requires every Gamma_s regular.
RegulusBlocks regulus_blocks(const DualArc& dual);

}  // namespace pal
