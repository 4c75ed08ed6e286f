#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "pal/error.hpp"
#include "pal/reduction.hpp"

using namespace pal;

namespace {

// Plain Gaussian elimination, kept separate from the library's RREF.
int oracle_rank(const Field& f, std::vector<Vector> rows) {
  int r = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c]) piv = i;
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    const Code inv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, inv);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || !rows[i][c]) continue;
      const Code k = rows[i][c];
      for (int j = 0; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
    }
    ++r;
  }
  return r;
}

std::vector<Vector> rows_of(const Subspace& s) {
  std::vector<Vector> out;
  for (int r = 0; r < s.rank(); ++r) out.emplace_back(s.basis().row(r).begin(), s.basis().row(r).end());
  return out;
}

bool oracle_generates(const Subspace& a, const Subspace& b, const Subspace& c) {
  auto rows = rows_of(a);
  for (auto& v : rows_of(b)) rows.push_back(v);
  for (auto& v : rows_of(c)) rows.push_back(v);
  return oracle_rank(*a.field(), rows) == a.ambient_dim() + 1;
}

PseudoArc conic_arc(int h, int n) {
  FieldTower t(Field::make(h), n);
  return reduce_arc(conic(t.top()), ReductionMap(t));
}

}  // namespace

TEST_CASE("reduced conic over F_16 is a pseudo-oval of PG(5,4)") {
  const PseudoArc o = conic_arc(2, 2);
  CHECK(o.size() == 17);
  CHECK(o.kind == ArcKind::PseudoOval);
  CHECK(o.ambient_dim() == 5);
  int bad = 0;
  for (std::size_t i = 0; i < o.size(); ++i)
    for (std::size_t j = i + 1; j < o.size(); ++j)
      for (std::size_t k = j + 1; k < o.size(); ++k)
        if (!oracle_generates(o.elements[i], o.elements[j], o.elements[k])) ++bad;
  CHECK(bad == 0);
  CHECK(span(std::vector<Subspace>{o.elements[0], o.elements[1], o.elements[2]}).is_whole());
}

TEST_CASE("corrupted and oversized arcs fail") {
  const PseudoArc o = conic_arc(2, 2);
  auto elements = o.elements;
  // a line meeting element 0 in a point
  const Vector p = points_of(elements[0]).front();
  const Vector x = points_of(elements[1]).front();
  elements[5] = span(Subspace::point(o.field, p), Subspace::point(o.field, x));
  const ArcReport rep = verify_pseudo_arc(o.field, 2, elements);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.failing_triple.has_value());
  CHECK((*rep.failing_triple)[0] == 0);
  CHECK_THROWS_AS(make_pseudo_arc(o.field, 2, elements), Error);

  const PseudoArc h = extend_to_hyperoval(o);
  auto nineteen = h.elements;
  nineteen.push_back(h.elements.front());
  const ArcReport big = verify_pseudo_arc(o.field, 2, nineteen);
  CHECK_FALSE(big.within_bound);
  CHECK(big.bound == 18);
  CHECK_FALSE(big.ok);
}

TEST_CASE("tangent spaces of the PG(5,4) pseudo-oval") {
  const PseudoArc o = conic_arc(2, 2);
  const auto tangents = tangent_spaces(o);
  CHECK(tangents.size() == 17);
  std::set<Subspace> distinct(tangents.begin(), tangents.end());
  CHECK(distinct.size() == 17);
  for (std::size_t i = 0; i < o.size(); ++i) {
    CHECK(tangents[i].rank() == 4);
    CHECK(tangents[i].contains(o.elements[i]));
    for (std::size_t j = 0; j < o.size(); ++j) {
      if (j == i) continue;
      // oracle: no point of element j lies in the tangent space
      bool hit = false;
      for (const auto& v : points_of(o.elements[j])) hit = hit || tangents[i].contains_vector(v);
      CHECK_FALSE(hit);
    }
  }
  // uncovered points in the quotient: 85 - 16 * 5 = 5
  const Quotient qt(o.elements[0]);
  std::set<Vector> covered;
  for (std::size_t j = 1; j < o.size(); ++j)
    for (const auto& v : points_of(qt.image(o.elements[j]))) covered.insert(v);
  CHECK(85 - covered.size() == 5);
  CHECK(meet(tangents[0], tangents[1]).rank() >= 2);
}

TEST_CASE("nucleus is the reduced plane nucleus") {
  FieldTower t(Field::make(2), 2);
  const ReductionMap map(t);
  const PseudoArc o = reduce_arc(conic(t.top()), map);
  const Vector plane_nucleus{0, 1, 0};
  CHECK(nucleus(o) == map.reduce_point(plane_nucleus));
  const PseudoArc h = extend_to_hyperoval(o);
  CHECK(h.size() == 18);
  CHECK(h.kind == ArcKind::PseudoHyperoval);
  CHECK(h.elements.back() == nucleus(o));
  CHECK_THROWS_AS(extend_to_hyperoval(h), Error);
}

TEST_CASE("n = 1 tangent space is the plane tangent line") {
  auto f = Field::make(3);
  FieldTower t(f, 1);
  const PlaneArc c = conic(f);
  const PseudoArc o = reduce_arc(c, ReductionMap(t));
  for (std::size_t i = 0; i < o.size(); ++i) CHECK(tangent_space(o, i) == tangent_line(c, i));
  auto p5 = Field::prime(5);
  const PseudoArc odd = reduce_arc(conic(p5), ReductionMap(FieldTower(p5, 1)));
  CHECK(odd.kind == ArcKind::PseudoOval);
  CHECK_THROWS_AS(nucleus(odd), Error);
  // q odd: the tangent lines share no point
  Subspace common = tangent_space(odd, 0);
  for (std::size_t i = 1; i < odd.size(); ++i) common = meet(common, tangent_space(odd, i));
  CHECK(common.empty());
}

TEST_CASE("PG(5,2) pseudo-hyperoval is maximal over all 651 lines") {
  const PseudoArc h = extend_to_hyperoval(conic_arc(1, 2));
  CHECK(h.size() == 6);
  auto f = h.field;
  // enumerate lines as {a, b, a+b}
  const auto pts = points_of(Subspace::whole(f, 5));
  std::set<Subspace> lines;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      lines.insert(Subspace::from_vectors(f, 5, {pts[i], pts[j]}));
  CHECK(lines.size() == 651);
  std::set<Subspace> in(h.elements.begin(), h.elements.end());
  int extendable = 0;
  for (const auto& l : lines) {
    if (in.count(l)) continue;
    bool ok = true;
    for (std::size_t a = 0; a < h.size() && ok; ++a)
      for (std::size_t b = a + 1; b < h.size() && ok; ++b) ok = oracle_generates(h.elements[a], h.elements[b], l);
    extendable += ok ? 1 : 0;
  }
  CHECK(extendable == 0);
  CHECK_FALSE(find_extension(h).has_value());
  // the pseudo-oval itself extends
  const PseudoArc o = conic_arc(1, 2);
  CHECK(find_extension(o).has_value());
}

TEST_CASE("kind checks") {
  const PseudoArc h = extend_to_hyperoval(conic_arc(2, 2));
  CHECK_THROWS_AS(tangent_space(h, 0), Error);
  CHECK_THROWS_AS(tangent_space(conic_arc(2, 2), 17), Error);
}
