#include "pal/spreads.hpp"

#include <algorithm>
#include <set>

#include "pal/parallel.hpp"

namespace pal {

Subspace Spread::lifted(std::size_t i) const {
  return host ? from_chart(*host, elements.at(i)) : elements.at(i);
}

SubspaceIndex index_of(const std::vector<Subspace>& elements) {
  SubspaceIndex index;
  index.reserve(elements.size() * 2);
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], i);
  return index;
}

namespace {

std::uint64_t power(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Coordinates adapted to A + C with B = graph(F): a vector (x | y) in these
// coordinates is the point x*A_basis + y*C_basis.
struct GraphFrame {
  Matrix frame;    // rows: basis of A, then basis of C
  Matrix graph;    // F, n x n
};

GraphFrame graph_frame(const Subspace& a, const Subspace& b, const Subspace& c) {
  check_same_ambient(a, b);
  check_same_ambient(a, c);
  const int n = a.rank();
  require(b.rank() == n && c.rank() == n && a.ambient_dim() == 2 * n - 1,
          ErrorKind::InvalidArgument, "regulus generators must be (n-1)-spaces of PG(2n-1, q)");
  require(are_skew(a, b) && are_skew(a, c) && are_skew(b, c), ErrorKind::InvalidArgument,
          "regulus generators are not pairwise skew");
  const Field& f = *a.field();
  GraphFrame g;
  g.frame = a.basis();
  g.frame.append_rows(c.basis());
  auto frame_inv = inverse(f, g.frame);
  require(frame_inv.has_value(), ErrorKind::InvalidArgument, "generators do not span the space");
  const Matrix coords = multiply(f, b.basis(), *frame_inv);
  auto x_inv = inverse(f, coords.slice_cols(0, n));
  require(x_inv.has_value(), ErrorKind::Internal, "B meets C");
  g.graph = multiply(f, *x_inv, coords.slice_cols(n, 2 * n));
  require(rank(f, g.graph) == n, ErrorKind::Internal, "B meets A");
  return g;
}

Subspace graph_of(const Field& f, const FieldPtr& field, const GraphFrame& g, Code lambda) {
  const int n = g.graph.rows();
  Matrix rows(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    rows.at(r, r) = 1;
    for (int c = 0; c < n; ++c) rows.at(r, n + c) = f.mul(lambda, g.graph.at(r, c));
  }
  return Subspace::from_rows(field, 2 * n - 1, multiply(f, rows, g.frame));
}

}  // namespace

SpreadReport verify_spread(const Spread& spread) {
  SpreadReport report;
  const Code q = spread.field->size();
  const int n = spread.n;
  report.expected_size = power(q, n) + 1;
  report.actual_size = spread.size();
  report.count_ok = report.actual_size == report.expected_size;
  for (const auto& e : spread.elements) {
    require(e.ambient_dim() == spread.ambient_dim() && same_field(e.field(), spread.field),
            ErrorKind::AmbientMismatch, "spread element does not live in PG(2n-1, q)");
  }
  bool dims_ok = std::all_of(spread.elements.begin(), spread.elements.end(),
                             [&](const Subspace& e) { return e.rank() == n; });
  report.skew_ok = dims_ok;
  for (std::size_t i = 0; i < spread.size() && report.skew_ok; ++i)
    for (std::size_t j = i + 1; j < spread.size(); ++j)
      if (!are_skew(spread.elements[i], spread.elements[j])) {
        report.skew_ok = false;
        report.meeting_pair = std::make_pair(i, j);
        break;
      }
  std::vector<std::uint8_t> hit(power(q, 2 * n), 0);
  std::uint64_t covered = 0;
  for (const auto& e : spread.elements) {
    for_each_point(e, [&](const Vector& v) {
      auto& slot = hit[vector_key(v, q)];
      if (!slot) ++covered;
      slot = 1;
    });
  }
  report.uncovered_points = projective_point_count(q, 2 * n) - covered;
  report.cover_ok = report.uncovered_points == 0;
  report.ok = report.count_ok && report.skew_ok && report.cover_ok;
  if (!dims_ok) {
    report.failure = "element of wrong dimension";
  } else if (!report.skew_ok) {
    report.failure = "elements " + std::to_string(report.meeting_pair->first) + " and " +
                     std::to_string(report.meeting_pair->second) + " meet";
  } else if (!report.cover_ok) {
    report.failure = std::to_string(report.uncovered_points) + " points uncovered";
  } else if (!report.count_ok) {
    report.failure = "wrong number of elements";
  }
  return report;
}

Regulus regulus_through(const Subspace& a, const Subspace& b, const Subspace& c) {
  const GraphFrame g = graph_frame(a, b, c);
  const Field& f = *a.field();
  Regulus reg{{a, b, c}, {a, c}};
  for (Code lambda = 1; lambda < f.size(); ++lambda) {
    reg.elements.push_back(graph_of(f, a.field(), g, lambda));
  }
  std::sort(reg.elements.begin(), reg.elements.end());
  return reg;
}

RegularityReport is_regular_spread(const Spread& spread, SweepMode mode) {
  RegularityReport report;
  const std::size_t size = spread.size();
  if (spread.field->size() == 2) {
    report.regular = true;
    report.vacuous = true;
    return report;
  }
  const std::uint64_t all_triples =
      size < 3 ? 0 : std::uint64_t(size) * (size - 1) * (size - 2) / 6;
  if (mode == SweepMode::Auto) {
    mode = all_triples <= kFullSweepTripleLimit ? SweepMode::Full : SweepMode::FixedElement;
  }
  report.full_sweep = mode == SweepMode::Full;
  const SubspaceIndex index = index_of(spread.elements);
  const std::size_t firsts = (mode == SweepMode::Full) ? (size >= 2 ? size - 2 : 0) : 1;

  struct Violation {
    std::size_t j = 0, k = 0;
    Subspace missing;
  };
  std::vector<std::optional<Violation>> found(firsts);
  std::vector<std::uint64_t> checked(firsts, 0);
  parallel_for(firsts, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < size; ++j)
      for (std::size_t k = j + 1; k < size; ++k) {
        ++checked[i];
        const Regulus reg =
            regulus_through(spread.elements[i], spread.elements[j], spread.elements[k]);
        for (const auto& e : reg.elements) {
          if (!index.count(e)) {
            found[i] = Violation{j, k, e};
            return;
          }
        }
      }
  });
  report.regular = true;
  for (std::size_t i = 0; i < firsts; ++i) {
    report.triples_checked += checked[i];
    if (found[i]) {
      report.regular = false;
      report.witness = std::array<std::size_t, 3>{i, found[i]->j, found[i]->k};
      report.missing = found[i]->missing;
      break;
    }
  }
  return report;
}

Regulus opposite_regulus(const Regulus& regulus) {
  const Subspace& a = regulus.generators[0];
  require(a.rank() == 2 && a.ambient_dim() == 3, ErrorKind::InvalidArgument,
          "opposite reguli are provided for lines of PG(3, q) only");
  const GraphFrame g = graph_frame(a, regulus.generators[1], regulus.generators[2]);
  const Field& f = *a.field();
  Regulus out;
  for (const Vector& x : points_of(Subspace::whole(a.field(), 1))) {
    Matrix rows(2, 4);
    rows.at(0, 0) = x[0];
    rows.at(0, 1) = x[1];
    const Vector image = multiply(f, x, g.graph);
    rows.at(1, 2) = image[0];
    rows.at(1, 3) = image[1];
    out.elements.push_back(Subspace::from_rows(a.field(), 3, multiply(f, rows, g.frame)));
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.generators = {out.elements[0], out.elements[1], out.elements[2]};
  return out;
}

Spread switch_regulus(const Spread& spread, const Regulus& regulus) {
  require(spread.n == 2, ErrorKind::InvalidArgument, "regulus switching is provided for n = 2");
  const SubspaceIndex in_regulus = index_of(regulus.elements);
  const SubspaceIndex in_spread = index_of(spread.elements);
  for (const auto& e : regulus.elements) {
    require(in_spread.count(e) > 0, ErrorKind::InvalidArgument,
            "regulus is not contained in the spread");
  }
  Spread out{spread.field, spread.n, {}, spread.host};
  for (const auto& e : spread.elements)
    if (!in_regulus.count(e)) out.elements.push_back(e);
  for (const auto& e : opposite_regulus(regulus).elements) out.elements.push_back(e);
  return out;
}

PairReguli reguli_through_pair(const Spread& spread, std::size_t a, std::size_t b) {
  require(a < spread.size() && b < spread.size() && a != b, ErrorKind::InvalidArgument,
          "pair indices must be distinct elements of the spread");
  const SubspaceIndex index = index_of(spread.elements);
  PairReguli out;
  std::set<std::vector<Subspace>> seen;
  for (std::size_t x = 0; x < spread.size(); ++x) {
    if (x == a || x == b) continue;
    Regulus reg = regulus_through(spread.elements[a], spread.elements[b], spread.elements[x]);
    if (!seen.insert(reg.elements).second) continue;
    for (const auto& e : reg.elements)
      if (!index.count(e)) out.all_contained = false;
    out.reguli.push_back(std::move(reg));
  }
  return out;
}

std::size_t count_reguli_through_pair(const Spread& spread, std::size_t a, std::size_t b) {
  return reguli_through_pair(spread, a, b).reguli.size();
}

std::vector<Regulus> reguli_in(const Spread& spread) {
  const SubspaceIndex index = index_of(spread.elements);
  std::set<std::vector<Subspace>> seen;
  std::vector<Regulus> out;
  const std::size_t size = spread.size();
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      for (std::size_t k = j + 1; k < size; ++k) {
        Regulus reg = regulus_through(spread.elements[i], spread.elements[j], spread.elements[k]);
        const bool inside = std::all_of(reg.elements.begin(), reg.elements.end(),
                                        [&](const Subspace& e) { return index.count(e) > 0; });
        if (inside && seen.insert(reg.elements).second) out.push_back(std::move(reg));
      }
  return out;
}

namespace {

Spread checked_spread(Spread s, const char* what) {
  const SpreadReport report = verify_spread(s);
  require(report.ok, ErrorKind::NotArc, std::string(what) + " is not a spread: " + report.failure);
  return s;
}

Quotient make_quotient(const Subspace& center, const std::optional<Subspace>& complement) {
  return complement ? Quotient(center, *complement) : Quotient(center);
}

}  // namespace

Spread derive_spread_from_element(const PseudoArc& arc, std::size_t i,
                                  const std::optional<Subspace>& complement) {
  require(arc.kind == ArcKind::PseudoOval || arc.kind == ArcKind::PseudoHyperoval,
          ErrorKind::KindMismatch, "derived spreads need a pseudo-oval or pseudo-hyperoval");
  require(i < arc.size(), ErrorKind::InvalidArgument, "arc index out of range");
  const Quotient proj = make_quotient(arc.elements[i], complement);
  Spread s{arc.field, arc.n, {}, std::nullopt};
  for (std::size_t j = 0; j < arc.size(); ++j) {
    if (j == i) {
      if (arc.kind == ArcKind::PseudoOval) s.elements.push_back(proj.image(tangent_space(arc, i)));
      continue;
    }
    s.elements.push_back(proj.image(arc.elements[j]));
  }
  return checked_spread(std::move(s), "projection from an arc element");
}

Spread derive_spread_from_nucleus(const PseudoArc& oval, const std::optional<Subspace>& complement) {
  require(oval.kind == ArcKind::PseudoOval, ErrorKind::KindMismatch,
          "the nucleus spread needs a pseudo-oval");
  const Quotient proj = make_quotient(nucleus(oval), complement);
  Spread s{oval.field, oval.n, {}, std::nullopt};
  for (const auto& e : oval.elements) s.elements.push_back(proj.image(e));
  return checked_spread(std::move(s), "projection from the nucleus");
}

Spread derive_tangent_spread_odd(const PseudoArc& oval, std::size_t i) {
  require(oval.field->characteristic() != 2, ErrorKind::InvalidArgument,
          "tangent-space spreads are defined for q odd");
  require(oval.kind == ArcKind::PseudoOval, ErrorKind::KindMismatch,
          "tangent-space spreads need a pseudo-oval");
  require(i < oval.size(), ErrorKind::InvalidArgument, "arc index out of range");
  const std::vector<Subspace> taus = tangent_spaces(oval);
  Spread s{oval.field, oval.n, {}, taus[i]};
  for (std::size_t j = 0; j < oval.size(); ++j) {
    const Subspace part = (j == i) ? oval.elements[i] : meet(taus[i], taus[j]);
    s.elements.push_back(to_chart(taus[i], part));
  }
  return checked_spread(std::move(s), "tangent-space family");
}

DualArc dual_arc(const PseudoArc& arc) {
  DualArc out;
  const PseudoArc* source = &arc;
  PseudoArc extended;
  if (arc.kind == ArcKind::PseudoOval) {
    require(arc.field->characteristic() == 2, ErrorKind::InvalidArgument,
            "the dual arc of a pseudo-oval uses its nucleus (q even)");
    extended = extend_to_hyperoval(arc);
    source = &extended;
    out.nucleus_appended = true;
  }
  require(source->kind == ArcKind::PseudoHyperoval, ErrorKind::KindMismatch,
          "dual arcs need a pseudo-oval or pseudo-hyperoval");
  const std::size_t k = source->size();
  for (const auto& e : source->elements) out.betas.push_back(dual(e));
  out.gammas.resize(k);
  out.partners.resize(k);
  parallel_for(k, [&](std::size_t i) {
    Spread s{source->field, source->n, {}, out.betas[i]};
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      s.elements.push_back(to_chart(out.betas[i], meet(out.betas[i], out.betas[j])));
      out.partners[i].push_back(j);
    }
    out.gammas[i] = checked_spread(std::move(s), "dual-arc family");
  });
  return out;
}

}  // namespace pal
