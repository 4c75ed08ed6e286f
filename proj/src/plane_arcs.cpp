#include "pal/plane_arcs.hpp"

#include <numeric>
#include <set>

namespace pal {

const char* to_string(PlaneArcKind kind) noexcept {
  switch (kind) {
    case PlaneArcKind::KArc: return "karc";
    case PlaneArcKind::Oval: return "oval";
    case PlaneArcKind::Hyperoval: return "hyperoval";
  }
  return "karc";
}

Vector normalized_point(const Field& f, Vector coords) {
  require(coords.size() == 3, ErrorKind::InvalidArgument, "plane points have three coordinates");
  for (Code c : coords) require(f.contains(c), ErrorKind::InvalidArgument, "coordinate out of range");
  require(normalize(f, coords), ErrorKind::InvalidArgument, "the zero vector is not a point");
  return coords;
}

Code det3(const Field& f, const Vector& a, const Vector& b, const Vector& c) {
  auto m2 = [&](Code x, Code y, Code z, Code w) { return f.sub(f.mul(x, w), f.mul(y, z)); };
  Code d = f.mul(a[0], m2(b[1], b[2], c[1], c[2]));
  d = f.sub(d, f.mul(a[1], m2(b[0], b[2], c[0], c[2])));
  d = f.add(d, f.mul(a[2], m2(b[0], b[1], c[0], c[1])));
  return d;
}

KArcReport verify_karc(const FieldPtr& field, const std::vector<Vector>& points) {
  const Field& f = *field;
  require(points.size() >= 3, ErrorKind::InvalidArgument, "a k-arc needs at least 3 points");
  std::set<Vector> seen;
  for (const auto& p : points) {
    require(seen.insert(normalized_point(f, p)).second, ErrorKind::InvalidArgument,
            "duplicate point in arc");
  }
  KArcReport report;
  report.k = points.size();
  report.bound = f.size() + (f.characteristic() == 2 ? 2 : 1);
  report.within_bound = report.k <= report.bound;
  report.no_three_collinear = true;
  const std::size_t k = points.size();
  for (std::size_t i = 0; i < k && report.no_three_collinear; ++i)
    for (std::size_t j = i + 1; j < k && report.no_three_collinear; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        if (det3(f, points[i], points[j], points[l]) == 0) {
          report.no_three_collinear = false;
          report.collinear = std::array<std::size_t, 3>{i, j, l};
          break;
        }
      }
  report.ok = report.no_three_collinear && report.within_bound;
  return report;
}

PlaneArc conic(const FieldPtr& field) {
  const Field& f = *field;
  PlaneArc arc{field, {}, PlaneArcKind::Oval};
  for (Code t = 0; t < f.size(); ++t) arc.points.push_back({1, t, f.mul(t, t)});
  arc.points.push_back({0, 0, 1});
  return arc;
}

PlaneArc translation_oval(const FieldPtr& field, int k) {
  const Field& f = *field;
  require(f.characteristic() == 2, ErrorKind::InvalidArgument,
          "translation ovals need even characteristic");
  const int m = f.degree();
  require(k >= 1 && k < m && std::gcd(k, m) == 1, ErrorKind::InvalidArgument,
          "translation oval needs 1 <= k < m and gcd(k, m) = 1 (k = " + std::to_string(k) +
              ", m = " + std::to_string(m) + ")");
  PlaneArc arc{field, {}, PlaneArcKind::Oval};
  const std::uint64_t e = std::uint64_t{1} << k;
  for (Code t = 0; t < f.size(); ++t) arc.points.push_back({1, t, f.pow(t, e)});
  arc.points.push_back({0, 0, 1});
  return arc;
}

Subspace tangent_line(const PlaneArc& arc, std::size_t i) {
  require(i < arc.points.size(), ErrorKind::InvalidArgument, "arc index out of range");
  const FieldPtr& field = arc.field;
  const Vector& p = arc.points[i];
  // A coordinate line missing p meets every line through p exactly once.
  int c = 0;
  while (p[c] == 0) ++c;
  Vector axis(3, 0);
  axis[c] = 1;
  const Subspace avoid = dual(Subspace::point(field, axis));
  const Subspace pt = Subspace::point(field, p);
  std::optional<Subspace> tangent;
  for (const Vector& y : points_of(avoid)) {
    Subspace line = span(pt, Subspace::point(field, y));
    bool secant = false;
    for (std::size_t j = 0; j < arc.points.size() && !secant; ++j) {
      if (j != i && line.contains_vector(arc.points[j])) secant = true;
    }
    if (secant) continue;
    require(!tangent.has_value(), ErrorKind::NotArc, "more than one tangent line at an arc point");
    tangent = std::move(line);
  }
  require(tangent.has_value(), ErrorKind::NotArc, "no tangent line at this arc point");
  return *tangent;
}

OvalCompletion oval_nucleus_and_complete(const PlaneArc& oval) {
  const Field& f = *oval.field;
  require(f.characteristic() == 2, ErrorKind::InvalidArgument,
          "an oval of odd order has no nucleus and cannot be completed");
  const auto report = verify_karc(oval.field, oval.points);
  require(report.ok && report.k == f.size() + 1, ErrorKind::NotArc, "input is not an oval");
  Subspace common = tangent_line(oval, 0);
  for (std::size_t i = 1; i < oval.points.size(); ++i) common = meet(common, tangent_line(oval, i));
  require(common.rank() == 1, ErrorKind::Internal, "tangent lines are not concurrent");
  Vector nucleus(common.basis().row(0).begin(), common.basis().row(0).end());
  PlaneArc hyper{oval.field, oval.points, PlaneArcKind::Hyperoval};
  hyper.points.push_back(nucleus);
  const auto check = verify_karc(hyper.field, hyper.points);
  require(check.ok, ErrorKind::Internal, "completed oval is not a hyperoval");
  return {nucleus, hyper};
}

bool is_complete_arc(const PlaneArc& arc) {
  const Field& f = *arc.field;
  std::set<Vector> members(arc.points.begin(), arc.points.end());
  bool complete = true;
  for_each_point(Subspace::whole(arc.field, 2), [&](const Vector& p) {
    if (!complete || members.count(p)) return;
    bool blocked = false;
    for (std::size_t i = 0; i < arc.points.size() && !blocked; ++i)
      for (std::size_t j = i + 1; j < arc.points.size() && !blocked; ++j)
        if (det3(f, arc.points[i], arc.points[j], p) == 0) blocked = true;
    if (!blocked) complete = false;
  });
  return complete;
}

}  // namespace pal
