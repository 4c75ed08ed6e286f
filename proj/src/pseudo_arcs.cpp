#include "pal/pseudo_arcs.hpp"

#include "pal/parallel.hpp"

namespace pal {

const char* to_string(ArcKind kind) noexcept {
  switch (kind) {
    case ArcKind::GeneralizedArc: return "generalized-arc";
    case ArcKind::PseudoOval: return "pseudo-oval";
    case ArcKind::PseudoHyperoval: return "pseudo-hyperoval";
  }
  return "generalized-arc";
}

std::uint64_t PseudoArc::order() const {
  std::uint64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= q();
  return qn;
}

namespace {

std::uint64_t power(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

bool generates(const FieldPtr& field, const Subspace& a, const Subspace& b, const Subspace& c,
               int full_rank) {
  Matrix rows = a.basis();
  rows.append_rows(b.basis());
  rows.append_rows(c.basis());
  return rank(*field, std::move(rows)) == full_rank;
}

}  // namespace

ArcReport verify_pseudo_arc(const FieldPtr& field, int n, const std::vector<Subspace>& elements) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be >= 1");
  require(elements.size() >= 3, ErrorKind::InvalidArgument, "a generalized arc needs >= 3 elements");
  const int d = 3 * n - 1;
  for (const auto& e : elements) {
    require(e.ambient_dim() == d && same_field(e.field(), field), ErrorKind::AmbientMismatch,
            "arc element does not live in PG(3n-1, q)");
    require(e.rank() == n, ErrorKind::InvalidArgument, "arc elements must have dimension n-1");
  }
  ArcReport report;
  report.k = elements.size();
  const std::uint64_t qn = power(field->size(), n);
  report.bound = qn + (field->characteristic() == 2 ? 2 : 1);
  report.within_bound = report.k <= report.bound;
  report.generating = true;
  const std::size_t k = elements.size();
  for (std::size_t i = 0; i < k && report.generating; ++i)
    for (std::size_t j = i + 1; j < k && report.generating; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        if (!generates(field, elements[i], elements[j], elements[l], 3 * n)) {
          report.generating = false;
          report.failing_triple = std::array<std::size_t, 3>{i, j, l};
          break;
        }
      }
  report.ok = report.generating && report.within_bound;
  if (report.k == qn + 1) report.kind = ArcKind::PseudoOval;
  if (report.k == qn + 2 && field->characteristic() == 2) report.kind = ArcKind::PseudoHyperoval;
  return report;
}

PseudoArc make_pseudo_arc(const FieldPtr& field, int n, std::vector<Subspace> elements) {
  const ArcReport report = verify_pseudo_arc(field, n, elements);
  if (!report.ok) {
    std::string why = report.within_bound ? "three elements do not span the space"
                                          : "too many elements for a generalized arc";
    fail(ErrorKind::NotArc, why);
  }
  return PseudoArc{field, n, std::move(elements), report.kind, std::nullopt};
}

Subspace tangent_space(const PseudoArc& oval, std::size_t i) {
  require(oval.kind == ArcKind::PseudoOval, ErrorKind::KindMismatch,
          "tangent spaces are defined for pseudo-ovals");
  require(i < oval.size(), ErrorKind::InvalidArgument, "arc index out of range");
  const Quotient proj(oval.elements[i]);
  const Code q = oval.q();
  const int width = 2 * oval.n;
  std::vector<std::uint8_t> covered(power(q, width), 0);
  for (std::size_t j = 0; j < oval.size(); ++j) {
    if (j == i) continue;
    const Subspace image = proj.image(oval.elements[j]);
    require(image.rank() == oval.n, ErrorKind::NotArc, "arc elements are not pairwise skew");
    for_each_point(image, [&](const Vector& v) {
      auto& slot = covered[vector_key(v, q)];
      require(slot == 0, ErrorKind::NotArc, "projected arc elements overlap");
      slot = 1;
    });
  }
  Matrix missed(0, width);
  std::uint64_t missed_count = 0;
  for_each_point(Subspace::whole(oval.field, width - 1), [&](const Vector& v) {
    if (covered[vector_key(v, q)]) return;
    ++missed_count;
    missed.append_row(v);
  });
  const Subspace gap = Subspace::from_rows(oval.field, width - 1, std::move(missed));
  require(gap.rank() == oval.n && missed_count == projective_point_count(q, oval.n),
          ErrorKind::NotArc, "uncovered points do not form an (n-1)-space");
  Subspace tau = proj.preimage(gap);
  for (std::size_t j = 0; j < oval.size(); ++j) {
    if (j != i) {
      require(are_skew(tau, oval.elements[j]), ErrorKind::Internal,
              "tangent space meets another arc element");
    }
  }
  return tau;
}

std::vector<Subspace> tangent_spaces(const PseudoArc& oval) {
  std::vector<Subspace> out(oval.size());
  parallel_for(oval.size(), [&](std::size_t i) { out[i] = tangent_space(oval, i); });
  return out;
}

Subspace nucleus(const PseudoArc& oval, const std::vector<Subspace>& tangents) {
  require(oval.field->characteristic() == 2, ErrorKind::InvalidArgument,
          "q odd: the tangent spaces form a dual pseudo-oval and share no nucleus");
  require(!tangents.empty(), ErrorKind::InvalidArgument, "no tangent spaces given");
  Subspace common = tangents.front();
  for (std::size_t i = 1; i < tangents.size(); ++i) common = meet(common, tangents[i]);
  require(common.rank() == oval.n, ErrorKind::Internal,
          "common meet of the tangent spaces is not an (n-1)-space");
  return common;
}

Subspace nucleus(const PseudoArc& oval) {
  require(oval.field->characteristic() == 2, ErrorKind::InvalidArgument,
          "q odd: the tangent spaces form a dual pseudo-oval and share no nucleus");
  return nucleus(oval, tangent_spaces(oval));
}

PseudoArc extend_to_hyperoval(const PseudoArc& oval) {
  require(oval.field->characteristic() == 2, ErrorKind::InvalidArgument,
          "only pseudo-ovals of even order extend");
  require(oval.kind == ArcKind::PseudoOval, ErrorKind::KindMismatch,
          "extension needs a pseudo-oval");
  std::vector<Subspace> elements = oval.elements;
  elements.push_back(nucleus(oval));
  const ArcReport report = verify_pseudo_arc(oval.field, oval.n, elements);
  require(report.ok && report.kind == ArcKind::PseudoHyperoval, ErrorKind::Internal,
          "extended arc fails verification");
  PseudoArc out{oval.field, oval.n, std::move(elements), ArcKind::PseudoHyperoval, std::nullopt};
  return out;
}

std::optional<Subspace> find_extension(const PseudoArc& arc) {
  std::optional<Subspace> found;
  const int full = 3 * arc.n;
  for_each_subspace(arc.field, arc.ambient_dim(), arc.n, [&](const Subspace& cand) {
    if (found) return;
    for (const auto& e : arc.elements)
      if (e == cand) return;
    for (std::size_t i = 0; i < arc.size(); ++i)
      for (std::size_t j = i + 1; j < arc.size(); ++j)
        if (!generates(arc.field, arc.elements[i], arc.elements[j], cand, full)) return;
    found = cand;
  });
  return found;
}

}  // namespace pal
