#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pal/error.hpp"
#include "pal/projective.hpp"

using namespace pal;

namespace {

// Every nonzero vector of a subspace, by brute force over coefficient tuples.
std::set<Vector> point_set(const Subspace& s) {
  const Field& f = *s.field();
  std::set<Vector> out;
  const int r = s.rank();
  std::vector<Code> c(r, 0);
  while (true) {
    int i = 0;
    while (i < r && ++c[i] == f.size()) c[i++] = 0;
    if (i == r) break;
    Vector v(s.ambient_dim() + 1, 0);
    for (int k = 0; k < r; ++k)
      for (int col = 0; col <= s.ambient_dim(); ++col)
        v[col] = f.add(v[col], f.mul(c[k], s.basis().at(k, col)));
    normalize(f, v);
    out.insert(v);
  }
  return out;
}

Code dot(const Field& f, const Vector& a, const Vector& b) {
  Code s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

}  // namespace

TEST_CASE("point counts") {
  auto f4 = Field::make(2);
  CHECK(projective_point_count(4, 4) == 85);
  CHECK(points_of(Subspace::whole(f4, 3)).size() == 85);
  std::mt19937_64 rng(7);
  CHECK(points_of(random_subspace(f4, 3, 2, rng)).size() == 5);
  CHECK(points_of(Subspace(f4, 3)).empty());
  for (int m = 1; m <= 4; ++m) {
    auto f = Field::make(m);
    for (int d = 1; d <= 5 && projective_point_count(f->size(), d + 1) <= (1u << 20); ++d)
      for (int r = 0; r <= d + 1; ++r) {
        Subspace s = random_subspace(f, d, r, rng);
        CHECK(points_of(s).size() == projective_point_count(f->size(), r));
      }
  }
}

TEST_CASE("span of two points of PG(2,2) is a 3-point line") {
  auto f = Field::make(1);
  const Vector a{1, 0, 0}, b{0, 1, 0};
  Subspace l = span(Subspace::point(f, a), Subspace::point(f, b));
  auto pts = point_set(l);
  CHECK(pts.size() == 3);
  CHECK(pts.count(Vector{1, 1, 0}) == 1);
  CHECK(span(std::vector<Subspace>{l}) == l);
  CHECK(meet(l, l) == l);
  CHECK(dual(Subspace::whole(f, 2)).empty());
}

TEST_CASE("canonical form survives random row operations") {
  auto f = Field::make(2);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Subspace s = random_subspace(f, 5, 1 + trial % 5, rng);
    Matrix m = s.basis();
    for (int op = 0; op < 10; ++op) {
      const int i = static_cast<int>(rng() % m.rows());
      const int j = static_cast<int>(rng() % m.rows());
      const Code c = static_cast<Code>(1 + rng() % 3);
      for (int col = 0; col < m.cols(); ++col) {
        if (i == j) m.at(i, col) = f->mul(m.at(i, col), c);
        else m.at(i, col) = f->add(m.at(i, col), f->mul(c, m.at(j, col)));
      }
    }
    CHECK(Subspace::from_rows(f, 5, m) == s);
    CHECK(Subspace::from_rows(f, 5, m).hash() == s.hash());
  }
}

TEST_CASE("10^4 random pairs in PG(5,4): dimension formula, meet and duality") {
  auto f = Field::make(2);
  std::mt19937_64 rng(20240601);
  int failures = 0;
  for (int t = 0; t < 10000; ++t) {
    const Subspace a = random_subspace(f, 5, static_cast<int>(rng() % 7), rng);
    const Subspace b = random_subspace(f, 5, static_cast<int>(rng() % 7), rng);
    const Subspace s = span(a, b), m = meet(a, b);
    if (s.rank() + m.rank() != a.rank() + b.rank()) ++failures;
    if (!(dual(dual(a)) == a)) ++failures;
    if (!(dual(s) == meet(dual(a), dual(b)))) ++failures;
    if (!(dual(m) == span(dual(a), dual(b)))) ++failures;
    if (dual(a).rank() != 6 - a.rank()) ++failures;
    if (!s.contains(a) || !s.contains(b) || !a.contains(m) || !b.contains(m)) ++failures;
    if (a.contains(b) != dual(b).contains(dual(a))) ++failures;
    if (are_skew(a, b) != m.empty()) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("meet and dual against brute-force point sets") {
  auto f = Field::make(2);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const Subspace a = random_subspace(f, 4, 1 + static_cast<int>(rng() % 4), rng);
    const Subspace b = random_subspace(f, 4, 1 + static_cast<int>(rng() % 4), rng);
    std::set<Vector> pa = point_set(a), pb = point_set(b), common;
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(common, common.end()));
    CHECK(point_set(meet(a, b)) == common);
    // dual: every point orthogonal to all of a
    std::set<Vector> orth;
    for (const Vector& x : point_set(Subspace::whole(f, 4))) {
      bool ok = true;
      for (int r = 0; r < a.rank(); ++r)
        if (dot(*f, x, Vector(a.basis().row(r).begin(), a.basis().row(r).end())) != 0) ok = false;
      if (ok) orth.insert(x);
    }
    CHECK(point_set(dual(a)) == orth);
  }
}

TEST_CASE("1000 random subspaces: dual is an involution") {
  auto f = Field::make(2);
  std::mt19937_64 rng(99);
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    Subspace a = random_subspace(f, 5, static_cast<int>(rng() % 7), rng);
    if (!(dual(dual(a)) == a)) ++bad;
  }
  CHECK(bad == 0);
  // an (n-1)-space of PG(3n-1, q) has a (2n-1)-space as dual
  CHECK(dual(random_subspace(f, 5, 2, rng)).rank() == 4);
}

TEST_CASE("quotient by a line of PG(5,4)") {
  auto f = Field::make(2);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Subspace center = random_subspace(f, 5, 2, rng);
    for (const bool explicit_complement : {false, true}) {
      const Quotient qt = explicit_complement ? Quotient(center, random_complement(center, rng)) : Quotient(center);
      CHECK(qt.target_dim() == 3);
      CHECK(qt.image(center).empty());
      Subspace other = random_subspace(f, 5, 2, rng);
      if (are_skew(other, center)) {
        const Subspace img = qt.image(other);
        CHECK(img.rank() == 2);
        CHECK(qt.preimage(img) == span(center, other));
      }
      const Subspace t2 = random_subspace(f, 3, 2, rng);
      CHECK(qt.image(qt.preimage(t2)) == t2);
    }
  }
  CHECK_THROWS_AS(Quotient(random_subspace(f, 5, 2, rng), random_subspace(f, 5, 3, rng)), Error);
}

TEST_CASE("charts") {
  auto f = Field::make(2);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const Subspace host = random_subspace(f, 5, 4, rng);
    const Subspace inside = meet(host, random_subspace(f, 5, 4, rng));
    const Subspace chart = to_chart(host, inside);
    CHECK(chart.ambient_dim() == 3);
    CHECK(chart.rank() == inside.rank());
    CHECK(from_chart(host, chart) == inside);
  }
}

TEST_CASE("subspace enumeration counts") {
  auto f = Field::make(1);
  std::size_t lines = 0;
  for_each_subspace(f, 5, 2, [&](const Subspace&) { ++lines; });
  CHECK(lines == 651);
  auto f4 = Field::make(2);
  std::size_t planes = 0;
  std::set<Subspace> distinct;
  for_each_subspace(f4, 3, 3, [&](const Subspace& s) {
    ++planes;
    distinct.insert(s);
  });
  CHECK(planes == 85);
  CHECK(distinct.size() == 85);
}

TEST_CASE("scalar extension and restriction") {
  FieldTower t(Field::make(2), 2);
  std::mt19937_64 rng(12);
  for (int k = 0; k < 50; ++k) {
    const Subspace s = random_subspace(t.base(), 3, 2, rng);
    const Subspace e = extend_scalars(s, t);
    CHECK(e.rank() == 2);
    CHECK(conjugate(e, t) == e);
    CHECK(restrict_scalars(e, t).value() == s);
  }
  const Vector p{1, 2, 0, 0};
  const Subspace irrational = Subspace::point(t.top(), p);
  CHECK_FALSE(restrict_scalars(irrational, t).has_value());
  CHECK_FALSE(conjugate(irrational, t) == irrational);
}

TEST_CASE("mixing fields or ambients is rejected") {
  auto f2 = Field::make(1), f4 = Field::make(2);
  CHECK_THROWS_AS(span(Subspace::whole(f2, 2), Subspace::whole(f4, 2)), Error);
  CHECK_THROWS_AS(meet(Subspace::whole(f2, 2), Subspace::whole(f2, 3)), Error);
}
