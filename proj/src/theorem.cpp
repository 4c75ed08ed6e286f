#include "pal/theorem.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_map>

namespace pal {

const char* to_string(TheoremId id) noexcept {
  switch (id) {
    case TheoremId::T61: return "6.1";
    case TheoremId::T62: return "6.2";
    case TheoremId::T63: return "6.3";
    case TheoremId::T71: return "7.1";
  }
  return "6.1";
}

std::optional<TheoremId> parse_theorem_id(const std::string& text) {
  for (TheoremId id : {TheoremId::T61, TheoremId::T62, TheoremId::T63, TheoremId::T71})
    if (text == to_string(id)) return id;
  return std::nullopt;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "not-applicable";
}

int TheoremReport::exit_code() const noexcept {
  if (forward == Verdict::Fail || converse == Verdict::Fail) return 3;
  if (!hypothesis.holds()) return 4;
  return 0;
}

HypothesisCheck check_hypothesis(const FieldPtr& field, int n) {
  HypothesisCheck h;
  h.q_even = field->characteristic() == 2;
  h.h_above_one = h.q_even && field->degree() > 1;
  h.n_prime = n >= 2;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) h.n_prime = false;
  return h;
}

TheoremReport check_theorem(const PseudoArc& arc, const TheoremParams& params) {
  const auto start = std::chrono::steady_clock::now();
  const bool wants_oval = params.id == TheoremId::T62;
  require(arc.kind == (wants_oval ? ArcKind::PseudoOval : ArcKind::PseudoHyperoval),
          ErrorKind::KindMismatch,
          std::string("theorem ") + to_string(params.id) + " needs a " +
              (wants_oval ? "pseudo-oval" : "pseudo-hyperoval"));

  TheoremReport report;
  report.id = params.id;
  report.q = static_cast<int>(arc.q());
  report.n = arc.n;
  report.hypothesis = check_hypothesis(arc.field, arc.n);
  const std::size_t order = arc.order();
  const std::size_t count = arc.size();

  switch (params.id) {
    case TheoremId::T61: report.threshold = order + 2; break;
    case TheoremId::T62: report.threshold = order + 1; break;
    case TheoremId::T63: report.threshold = order - 1; break;
    case TheoremId::T71:
      require(params.delta0 >= 0 && params.delta0 <= static_cast<int>(arc.q()) - 2,
              ErrorKind::InvalidArgument, "delta_0 must lie in [0, q-2]");
      report.threshold = order + 1 - static_cast<std::size_t>(params.delta0);
      break;
  }

  const bool partial = params.id == TheoremId::T63 || params.id == TheoremId::T71;
  if (partial && !params.given.empty()) {
    report.given = params.given;
    std::sort(report.given.begin(), report.given.end());
    report.given.erase(std::unique(report.given.begin(), report.given.end()), report.given.end());
    require(report.given.back() < count, ErrorKind::InvalidArgument, "given index out of range");
  } else {
    const std::size_t rho = partial && params.rho != 0 ? params.rho : (partial ? report.threshold : count);
    require(rho <= count, ErrorKind::InvalidArgument, "rho exceeds the number of Delta spreads");
    for (std::size_t k = 0; k < rho; ++k) report.given.push_back(k);
  }
  require(report.given.size() >= report.threshold, ErrorKind::InvalidArgument,
          "fewer given spreads than the theorem requires");

  for (std::size_t i = 0; i < count; ++i) {
    const Spread delta = derive_spread_from_element(arc, i);
    SpreadVerdict sv;
    sv.index = i;
    sv.is_spread = verify_spread(delta).ok;
    if (sv.is_spread) {
      const RegularityReport reg = is_regular_spread(delta, SweepMode::Full);
      sv.regular = reg.regular;
      sv.vacuous = reg.vacuous;
      sv.witness = reg.witness;
    }
    report.spreads.push_back(sv);
  }

  const bool given_regular = std::all_of(report.given.begin(), report.given.end(), [&](std::size_t k) {
    return report.spreads[k].regular;
  });
  const bool all_regular = std::all_of(report.spreads.begin(), report.spreads.end(),
                                       [](const SpreadVerdict& s) { return s.regular; });

  bool known_regular = arc.witness.has_value() && witness_reproduces(arc, *arc.witness);
  if (arc.n >= 2) {
    RecognizeOptions options;
    options.given = report.given;
    for (std::size_t k = 0; k < count; ++k)
      if (!std::binary_search(report.given.begin(), report.given.end(), k)) options.required.push_back(k);
    const RecognitionResult rec = recognize_regular(arc, options);
    report.choices_tried = rec.choices_tried;
    if (rec.not_regular) report.not_regular_gamma = rec.not_regular->first;
    if (rec.match) {
      report.recognized = true;
      report.recognition_i = rec.match->i;
      report.recognition_j = rec.match->j;
      known_regular = true;
    }
    if (given_regular) report.converse = report.recognized ? Verdict::Pass : Verdict::Fail;
  }
  if (known_regular) report.forward = all_regular ? Verdict::Pass : Verdict::Fail;

  if (report.forward == Verdict::Fail || report.converse == Verdict::Fail) report.verdict = "inconsistent";
  else if (!report.hypothesis.holds()) report.verdict = "out-of-hypothesis";
  else report.verdict = "consistent-with-theorem";
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t subset_key(const std::vector<std::size_t>& s, std::size_t v) {
  std::uint64_t key = 0;
  for (std::size_t x : s) key = key * v + x;
  return key;
}

// Lexicographic successor of a sorted t-subset of {0..v-1}.
bool next_subset(std::vector<std::size_t>& s, std::size_t v) {
  const std::size_t t = s.size();
  for (std::size_t i = t; i-- > 0;) {
    if (s[i] < v - t + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < t; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::unordered_map<std::uint64_t, std::uint32_t> count_subsets(const DesignSpec& spec) {
  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  const auto t = static_cast<std::size_t>(spec.t);
  for (const auto& block : spec.blocks) {
    if (block.size() < t) continue;
    std::vector<std::size_t> pick(t);
    for (std::size_t i = 0; i < t; ++i) pick[i] = i;
    std::vector<std::size_t> sub(t);
    do {
      for (std::size_t i = 0; i < t; ++i) sub[i] = block[pick[i]];
      ++counts[subset_key(sub, spec.v)];
    } while (next_subset(pick, block.size()));
  }
  return counts;
}

void check_enumerable(const DesignSpec& spec) {
  require(spec.t >= 1 && static_cast<std::size_t>(spec.t) <= spec.v, ErrorKind::InvalidArgument,
          "t must lie in [1, v]");
  require(binomial(spec.v, spec.t) <= 50'000'000, ErrorKind::CapExceeded, "too many t-subsets");
}

}  // namespace

DesignCheckReport check_design(const DesignSpec& spec) {
  check_enumerable(spec);
  DesignCheckReport report;
  report.block_sizes_ok = true;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const auto& block = spec.blocks[b];
    const bool sorted_in_range =
        std::is_sorted(block.begin(), block.end()) &&
        std::adjacent_find(block.begin(), block.end()) == block.end() &&
        (block.empty() || block.back() < spec.v);
    if (!sorted_in_range || block.size() != spec.k) {
      report.block_sizes_ok = false;
      report.bad_block = b;
      report.failure = "block " + std::to_string(b) + " is not a " + std::to_string(spec.k) +
                       "-subset of the points";
      return report;
    }
  }
  std::vector<bool> exceptional(spec.v, false);
  if (spec.exceptions)
    for (std::size_t p : *spec.exceptions) {
      require(p < spec.v, ErrorKind::InvalidArgument, "exceptional point out of range");
      exceptional[p] = true;
    }

  const auto counts = count_subsets(spec);
  std::vector<std::size_t> sub(static_cast<std::size_t>(spec.t));
  for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = i;
  do {
    ++report.subsets_checked;
    const auto it = counts.find(subset_key(sub, spec.v));
    const std::size_t c = it == counts.end() ? 0 : it->second;
    std::size_t in_q = 0;
    for (std::size_t x : sub) in_q += exceptional[x] ? 1 : 0;
    const bool strict = in_q <= 1;
    const bool bad = strict ? c != spec.lambda : c > spec.lambda;
    if (bad) {
      if (!report.first_violation) {
        report.first_violation = sub;
        report.first_violation_count = c;
      }
      ++report.violations;
    }
  } while (next_subset(sub, spec.v));
  report.ok = report.violations == 0;
  if (!report.ok) {
    report.failure = std::to_string(report.violations) + " t-subsets violate the design condition";
  }
  return report;
}

std::map<std::size_t, std::uint64_t> lambda_profile(const DesignSpec& spec) {
  check_enumerable(spec);
  const auto counts = count_subsets(spec);
  std::map<std::size_t, std::uint64_t> profile;
  std::uint64_t nonzero = 0;
  for (const auto& [key, c] : counts) {
    ++profile[c];
    ++nonzero;
  }
  const std::uint64_t zero = binomial(spec.v, spec.t) - nonzero;
  if (zero) profile[0] = zero;
  return profile;
}

DesignSpec projective_plane_design(const FieldPtr& field) {
  const std::vector<Vector> points = points_of(Subspace::whole(field, 2));
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) index[vector_key(points[i], field->size())] = i;
  DesignSpec spec;
  spec.v = points.size();
  spec.t = 2;
  spec.k = field->size() + 1;
  for (const auto& p : points) {
    const Subspace line = dual(Subspace::point(field, p));
    std::vector<std::size_t> block;
    for_each_point(line, [&](const Vector& x) { block.push_back(index.at(vector_key(x, field->size()))); });
    std::sort(block.begin(), block.end());
    spec.blocks.push_back(std::move(block));
  }
  return spec;
}

DesignSpec plane_model_design(const PlaneModel& model) {
  DesignSpec spec;
  spec.v = model.point_count;
  spec.t = 2;
  spec.k = model.line_points.empty() ? 0 : model.line_points.front().size();
  for (auto block : model.line_points) {
    std::sort(block.begin(), block.end());
    spec.blocks.push_back(std::move(block));
  }
  return spec;
}

DesignSpec regulus_design(const Spread& spread) {
  const SubspaceIndex index = index_of(spread.elements);
  DesignSpec spec;
  spec.v = spread.size();
  spec.t = 3;
  spec.k = spread.field->size() + 1;
  for (const Regulus& r : reguli_in(spread)) {
    std::vector<std::size_t> block;
    for (const auto& e : r.elements) block.push_back(index.at(e));
    std::sort(block.begin(), block.end());
    spec.blocks.push_back(std::move(block));
  }
  std::sort(spec.blocks.begin(), spec.blocks.end());
  return spec;
}

RegulusBlocks regulus_blocks(const DualArc& dual) {
  require(!dual.gammas.empty(), ErrorKind::InvalidArgument, "empty dual arc");
  std::set<std::vector<std::size_t>> blocks;
  for (std::size_t s = 0; s < dual.gammas.size(); ++s) {
    const Spread& g = dual.gammas[s];
    require(is_regular_spread(g, SweepMode::Full).regular, ErrorKind::NotRegular,
            "Gamma_" + std::to_string(s) + " is not regular");
    const SubspaceIndex index = index_of(g.elements);
    for (const Regulus& r : reguli_in(g)) {
      std::vector<std::size_t> block{s};
      for (const auto& e : r.elements) block.push_back(dual.partners[s][index.at(e)]);
      std::sort(block.begin(), block.end());
      blocks.insert(std::move(block));
    }
  }
  RegulusBlocks out;
  out.design.v = dual.betas.size();
  out.design.t = 4;
  out.design.k = dual.gammas.front().field->size() + 2;
  out.design.blocks.assign(blocks.begin(), blocks.end());
  out.sizes_ok = std::all_of(out.design.blocks.begin(), out.design.blocks.end(),
                             [&](const auto& b) { return b.size() == out.design.k; });
  out.profile = lambda_profile(out.design);
  return out;
}

}  // namespace pal
