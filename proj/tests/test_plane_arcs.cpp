#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include <set>

#include "pal/error.hpp"
#include "pal/plane_arcs.hpp"

using namespace pal;

namespace {

// Collinearity by the 3x3 determinant expanded along the first row.
bool collinear(const Field& f, const Vector& a, const Vector& b, const Vector& c) {
  auto m = [&](Code x, Code y) { return f.mul(x, y); };
  const Code t1 = m(a[0], f.sub(m(b[1], c[2]), m(b[2], c[1])));
  const Code t2 = m(a[1], f.sub(m(b[0], c[2]), m(b[2], c[0])));
  const Code t3 = m(a[2], f.sub(m(b[0], c[1]), m(b[1], c[0])));
  return f.add(f.sub(t1, t2), t3) == 0;
}

bool oracle_arc(const PlaneArc& arc) {
  const auto& p = arc.points;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      for (std::size_t k = j + 1; k < p.size(); ++k)
        if (collinear(*arc.field, p[i], p[j], p[k])) return false;
  return true;
}

std::vector<Vector> all_points(const FieldPtr& f) { return points_of(Subspace::whole(f, 2)); }

}  // namespace

TEST_CASE("conics") {
  auto c2 = conic(Field::make(1));
  CHECK(c2.size() == 3);
  for (int m = 1; m <= 4; ++m) {
    auto f = Field::make(m);
    const PlaneArc c = conic(f);
    CHECK(c.size() == f->size() + 1);
    CHECK(c.kind == PlaneArcKind::Oval);
    CHECK(oracle_arc(c));
    CHECK(verify_karc(f, c.points).ok);
  }
  const PlaneArc c4 = conic(Field::make(2));
  const auto rep = verify_karc(c4.field, c4.points);
  CHECK(rep.ok);
  CHECK(rep.k == 5);
}

TEST_CASE("collinear triple and size bound") {
  auto f = Field::make(2);
  const std::vector<Vector> bad{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}};
  const auto rep = verify_karc(f, bad);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.collinear.has_value());
  CHECK(*rep.collinear == std::array<std::size_t, 3>{0, 1, 2});
  // hyperoval plus one more point of the plane
  std::vector<Vector> seven = oval_nucleus_and_complete(conic(f)).hyperoval.points;
  for (const auto& p : points_of(Subspace::whole(f, 2))) {
    if (std::find(seven.begin(), seven.end(), p) != seven.end()) continue;
    seven.push_back(p);
    break;
  }
  REQUIRE(seven.size() == 7);
  CHECK_FALSE(verify_karc(f, seven).within_bound);
  CHECK_FALSE(verify_karc(f, seven).ok);
  std::vector<Vector> dup{{1, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(verify_karc(f, dup), Error);
}

TEST_CASE("det3 agrees with the cofactor oracle") {
  auto f = Field::make(2);
  const auto pts = all_points(f);
  for (std::size_t i = 0; i < pts.size(); i += 3)
    for (std::size_t j = 1; j < pts.size(); j += 4)
      for (std::size_t k = 2; k < pts.size(); k += 5)
        CHECK((det3(*f, pts[i], pts[j], pts[k]) == 0) == collinear(*f, pts[i], pts[j], pts[k]));
}

TEST_CASE("translation ovals over F_16") {
  auto f = Field::make(4);
  const PlaneArc t1 = translation_oval(f, 1);
  const PlaneArc c = conic(f);
  CHECK(std::set<Vector>(t1.points.begin(), t1.points.end()) == std::set<Vector>(c.points.begin(), c.points.end()));
  const PlaneArc t3 = translation_oval(f, 3);
  CHECK(t3.size() == 17);
  CHECK(oracle_arc(t3));
  CHECK_THROWS_AS(translation_oval(f, 2), Error);
  CHECK_THROWS_AS(translation_oval(f, 4), Error);
  CHECK_THROWS_AS(translation_oval(Field::prime(5), 1), Error);
}

TEST_CASE("nucleus and completion") {
  auto f4 = Field::make(2);
  CHECK(oval_nucleus_and_complete(conic(f4)).nucleus == Vector{0, 1, 0});
  auto f16 = Field::make(4);
  for (const PlaneArc& oval : {conic(f16), translation_oval(f16, 3)}) {
    const auto done = oval_nucleus_and_complete(oval);
    CHECK(done.hyperoval.size() == 18);
    CHECK(done.hyperoval.kind == PlaneArcKind::Hyperoval);
    CHECK(oracle_arc(done.hyperoval));
    // every tangent passes through the nucleus
    for (std::size_t i = 0; i < oval.size(); ++i)
      CHECK(tangent_line(oval, i).contains_vector(done.nucleus));
  }
  CHECK(oval_nucleus_and_complete(conic(f16)).nucleus == Vector{0, 1, 0});
  CHECK_THROWS_AS(oval_nucleus_and_complete(conic(Field::prime(5))), Error);
}

TEST_CASE("tangent lines meet the oval once") {
  for (auto f : {Field::make(2), Field::make(3), Field::prime(5), Field::prime(7)}) {
    const PlaneArc c = conic(f);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Subspace t = tangent_line(c, i);
      int on = 0;
      for (const auto& p : c.points) on += t.contains_vector(p) ? 1 : 0;
      CHECK(on == 1);
      CHECK(t.contains_vector(c.points[i]));
    }
  }
}

TEST_CASE("hyperovals are complete, Q <= 16") {
  for (int m = 1; m <= 4; ++m) {
    auto f = Field::make(m);
    const PlaneArc h = oval_nucleus_and_complete(conic(f)).hyperoval;
    CHECK(is_complete_arc(h));
    // oracle: every outside point is collinear with two hyperoval points
    std::set<Vector> in(h.points.begin(), h.points.end());
    bool all_blocked = true;
    for (const auto& x : all_points(f)) {
      if (in.count(x)) continue;
      bool blocked = false;
      for (std::size_t i = 0; i < h.size() && !blocked; ++i)
        for (std::size_t j = i + 1; j < h.size() && !blocked; ++j)
          blocked = collinear(*f, h.points[i], h.points[j], x);
      all_blocked = all_blocked && blocked;
    }
    CHECK(all_blocked);
  }
  CHECK_FALSE(is_complete_arc(conic(Field::make(2))));
}

TEST_CASE("odd conics are ovals") {
  for (int p : {3, 5, 7, 11, 13}) {
    const PlaneArc c = conic(Field::prime(p));
    CHECK(c.size() == static_cast<std::size_t>(p + 1));
    CHECK(oracle_arc(c));
    CHECK(is_complete_arc(c));
  }
}
