#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "pal/error.hpp"
#include "pal/reduction.hpp"

using namespace pal;

namespace {

const FieldTower& tower42() {
  static const FieldTower t(Field::make(2), 2);
  return t;
}

PseudoArc reduced(const FieldTower& t, const PlaneArc& arc) { return reduce_arc(arc, ReductionMap(t)); }

// Expansions of all nonzero multiples lambda * P, as normalized F_q points.
std::set<Vector> oracle_reduce_points(const FieldTower& t, const Vector& p) {
  const ReductionMap map(t);
  std::set<Vector> out;
  for (Code lambda = 1; lambda < t.top()->size(); ++lambda) {
    Vector s(3);
    for (int i = 0; i < 3; ++i) s[i] = t.top()->mul(lambda, p[i]);
    Vector e = map.expand_vector(s);
    normalize(*t.base(), e);
    out.insert(e);
  }
  return out;
}

Vector random_point(const FieldPtr& f, std::mt19937_64& rng) {
  Vector v(3, 0);
  while (v == Vector(3, 0))
    for (auto& x : v) x = static_cast<Code>(rng() % f->size());
  normalize(*f, v);
  return v;
}

SigmaResult sigma42() {
  const PseudoArc h = extend_to_hyperoval(reduced(tower42(), conic(tower42().top())));
  return sigma_from_dual(dual_arc(h), 0, 1, tower42());
}

}  // namespace

TEST_CASE("reduce_point") {
  const FieldTower& t = tower42();
  const ReductionMap map(t);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const Vector p = random_point(t.top(), rng);
    const Subspace r = map.reduce_point(p);
    CHECK(r.rank() == 2);
    CHECK(r.ambient_dim() == 5);
    const auto oracle = oracle_reduce_points(t, p);
    CHECK(oracle.size() == 5);
    const auto pts = points_of(r);
    CHECK(std::set<Vector>(pts.begin(), pts.end()) == oracle);
  }
  // n = 1: identity
  auto f = Field::make(3);
  const ReductionMap id(FieldTower(f, 1));
  const Vector p{1, 5, 7};
  CHECK(id.reduce_point(p) == Subspace::point(f, p));
}

TEST_CASE("distinct points reduce to skew subspaces") {
  const FieldTower& t = tower42();
  const ReductionMap map(t);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const Vector a = random_point(t.top(), rng), b = random_point(t.top(), rng);
    const bool same = a == b;
    const Subspace ra = map.reduce_point(a), rb = map.reduce_point(b);
    CHECK((ra == rb) == same);
    CHECK(meet(ra, rb).empty() == !same);
  }
}

TEST_CASE("reduce_line preserves incidence on a full pencil") {
  const FieldTower& t = tower42();
  const ReductionMap map(t);
  const auto plane_points = points_of(Subspace::whole(t.top(), 2));
  CHECK(plane_points.size() == 273);
  std::vector<Subspace> reduced_points;
  for (const auto& p : plane_points) reduced_points.push_back(map.reduce_point(p));
  // pencil through (1,0,0): every line through the point
  const Vector center{1, 0, 0};
  std::set<Subspace> pencil;
  for (const auto& p : plane_points)
    if (p != center) pencil.insert(Subspace::from_vectors(t.top(), 2, {center, p}));
  CHECK(pencil.size() == 17);
  for (const auto& line : pencil) {
    const Subspace rl = map.reduce_line(line);
    CHECK(rl.rank() == 4);
    std::size_t inside = 0;
    for (std::size_t i = 0; i < plane_points.size(); ++i) {
      const bool on = line.contains_vector(plane_points[i]);
      const bool contained = rl.contains(reduced_points[i]);
      CHECK(on == contained);
      inside += contained ? 1 : 0;
    }
    CHECK(inside == 17);
  }
  const auto it = pencil.begin();
  const Subspace a = map.reduce_line(*it), b = map.reduce_line(*std::next(it));
  CHECK(meet(a, b) == map.reduce_point(center));
}

TEST_CASE("reduce_arc") {
  const FieldTower& t = tower42();
  const PseudoArc o = reduced(t, conic(t.top()));
  CHECK(o.size() == 17);
  CHECK(o.kind == ArcKind::PseudoOval);
  REQUIRE(o.witness.has_value());
  CHECK(witness_reproduces(o, *o.witness));
  const PseudoArc h = reduced(t, oval_nucleus_and_complete(conic(t.top())).hyperoval);
  CHECK(h.size() == 18);
  CHECK(h.kind == ArcKind::PseudoHyperoval);
  PlaneArc broken = conic(t.top());
  broken.points.push_back({1, 1, 0});
  broken.points.push_back({1, 2, 0});
  CHECK_THROWS_AS(reduced(t, broken), Error);
  auto f = Field::make(2);
  const PlaneArc c4 = conic(f);
  const PseudoArc same = reduce_arc(c4, ReductionMap(FieldTower(f, 1)));
  for (std::size_t i = 0; i < c4.size(); ++i) CHECK(same.elements[i] == Subspace::point(f, c4.points[i]));
}

TEST_CASE("Desarguesian spread") {
  for (int n : {2, 3}) {
    FieldTower t(Field::make(1), n);
    const Spread s = desarguesian_spread(t);
    CHECK(verify_spread(s).ok);
  }
}

TEST_CASE("spread transversals against exhaustive search over PG(3,16)") {
  const FieldTower& t = tower42();
  const Spread s = desarguesian_spread(t);
  const TransversalResult tr = spread_transversals(s, t);
  REQUIRE(tr.ok);
  REQUIRE(tr.lines.size() == 2);
  CHECK(conjugate(tr.lines[0], t) == tr.lines[1]);
  std::vector<Subspace> extended;
  for (const auto& e : s.elements) extended.push_back(extend_scalars(e, t));
  std::size_t lines = 0;
  std::set<Subspace> found;
  for_each_subspace(t.top(), 3, 2, [&](const Subspace& l) {
    ++lines;
    for (const auto& e : extended)
      if (span(l, e).rank() != 3) return;
    found.insert(l);
  });
  CHECK(lines == 70161);
  CHECK(found == std::set<Subspace>(tr.lines.begin(), tr.lines.end()));
}

TEST_CASE("spread transversals on other spreads") {
  const FieldTower& t = tower42();
  const PseudoArc h = extend_to_hyperoval(reduced(t, translation_oval(t.top(), 3)));
  for (std::size_t i = 0; i < h.size(); i += 6) {
    const Spread d = derive_spread_from_element(h, i);
    CHECK(spread_transversals(d, t).ok);
  }
  const Spread s = desarguesian_spread(t);
  const Spread sw = switch_regulus(s, regulus_through(s.elements[0], s.elements[1], s.elements[2]));
  const TransversalResult bad = spread_transversals(sw, t);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.certificate.has_value());
  CHECK_FALSE(bad.certificate->regular);
  CHECK(bad.certificate->missing.has_value());
  FieldTower t3(Field::make(1), 3);
  CHECK(spread_transversals(desarguesian_spread(t3), t3).ok);
  FieldTower t1(Field::make(2), 1);
  CHECK_THROWS_AS(spread_transversals(desarguesian_spread(t1), t1), Error);
}

TEST_CASE("Sigma for q = 4, n = 2") {
  const SigmaResult sig = sigma42();
  CHECK(sig.sigma.elements.size() == 273);
  const SpreadReport rep = verify_subspace_spread(sig.sigma);
  CHECK(rep.ok);
  CHECK(rep.skew_ok);
  CHECK(rep.cover_ok);
  CHECK(sig.contains_regulus);
  CHECK(sig.contains_spread);
  const FieldTower& t = tower42();
  CHECK(sig.scaffold.planes.size() == 2);
  CHECK(conjugate(sig.scaffold.planes[0], t) == sig.scaffold.planes[1]);
  CHECK(conjugate(sig.scaffold.transversal_lines[0], t) == sig.scaffold.transversal_lines[1]);
  CHECK(conjugate(sig.scaffold.regulus_transversals[0], t) == sig.scaffold.regulus_transversals[1]);
  for (std::size_t l = 0; l < 2; ++l) {
    CHECK(sig.scaffold.contact_points[l].rank() == 1);
    CHECK(sig.scaffold.regulus_transversals[l].contains(sig.scaffold.contact_points[l]));
  }
  // regularity: 200 random triples A, B, C with C inside span(A, B)
  std::mt19937_64 rng(4);
  const auto& e = sig.sigma.elements;
  const SubspaceIndex idx = index_of(e);
  int bad = 0, checked = 0;
  while (checked < 200) {
    const auto a = rng() % e.size(), b = rng() % e.size();
    if (a == b) continue;
    const Subspace host = span(e[a], e[b]);
    std::vector<std::size_t> inside;
    for (std::size_t c = 0; c < e.size(); ++c)
      if (c != a && c != b && host.contains(e[c])) inside.push_back(c);
    REQUIRE(inside.size() == 15);
    const Regulus r = regulus_in_span(e[a], e[b], e[inside[rng() % inside.size()]]);
    for (const auto& x : r.elements) bad += idx.count(x) ? 0 : 1;
    ++checked;
  }
  CHECK(bad == 0);
}

TEST_CASE("Sigma structure map") {
  const SigmaResult sig = sigma42();
  const Matrix j = sigma_structure(sig.scaffold, tower42());
  const Field& f = *tower42().base();
  for (const auto& e : sig.sigma.elements) CHECK(transform(e, j) == e);
  // J satisfies the minimal polynomial of x over F_4 (x^4 + x + 1 = (x^2 + x + w)(x^2 + x + w^2))
  const Matrix j2 = multiply(f, j, j);
  bool scalar_free = false;
  for (int r = 0; r < j.rows(); ++r)
    for (int c = 0; c < j.cols(); ++c)
      if (r != c && j.at(r, c)) scalar_free = true;
  CHECK(scalar_free);
  CHECK(j2.rows() == 6);
}

TEST_CASE("plane model of Sigma is PG(2,16)") {
  const SigmaResult sig = sigma42();
  const PlaneModel m = plane_model(sig.sigma);
  CHECK(m.ok);
  CHECK(m.point_count == 273);
  CHECK(m.lines.size() == 273);
  for (const auto& pts : m.line_points) CHECK(pts.size() == 17);
  for (const auto& l : m.lines) CHECK(l.rank() == 4);
  // the dual elements through the regulus are model lines
  const FieldTower& t = tower42();
  const PseudoArc h = extend_to_hyperoval(reduced(t, conic(t.top())));
  const DualArc d = dual_arc(h);
  const std::set<Subspace> lines(m.lines.begin(), m.lines.end());
  for (const auto& beta : d.betas) CHECK(lines.count(beta) == 1);
}

TEST_CASE("recognition round trip") {
  const FieldTower& t = tower42();
  std::vector<PlaneArc> sources{conic(t.top()), translation_oval(t.top(), 3)};
  sources.push_back(oval_nucleus_and_complete(sources[0]).hyperoval);
  sources.push_back(oval_nucleus_and_complete(sources[1]).hyperoval);
  for (const auto& src : sources) {
    const PseudoArc arc = reduced(t, src);
    const RecognitionResult r = recognize_regular(arc);
    REQUIRE(r.match.has_value());
    CHECK(r.match->arc.kind == src.kind);
    const RegularityWitness w{t, r.match->arc, r.match->identification};
    CHECK(witness_reproduces(arc, w));
    CHECK(verify_karc(r.match->arc.field, r.match->arc.points).ok);
  }
  FieldTower t3(Field::make(1), 3);
  const PseudoArc o3 = reduced(t3, conic(t3.top()));
  const RecognitionResult r3 = recognize_regular(o3);
  REQUIRE(r3.match.has_value());
  CHECK(witness_reproduces(o3, RegularityWitness{t3, r3.match->arc, r3.match->identification}));
}

TEST_CASE("recognition after a change of coordinates") {
  const FieldTower& t = tower42();
  const PseudoArc o = reduced(t, conic(t.top()));
  std::mt19937_64 rng(21);
  Matrix g(6, 6);
  do {
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) g.at(r, c) = static_cast<Code>(rng() % 4);
  } while (rank(*t.base(), g) < 6);
  std::vector<Subspace> moved;
  for (const auto& e : o.elements) moved.push_back(transform(e, g));
  const PseudoArc arc = make_pseudo_arc(t.base(), 2, moved);
  const RecognitionResult r = recognize_regular(arc);
  REQUIRE(r.match.has_value());
  CHECK(witness_reproduces(arc, RegularityWitness{t, r.match->arc, r.match->identification}));
}

TEST_CASE("exhaustive recognition agrees") {
  const FieldTower& t = tower42();
  const PseudoArc h = reduced(t, oval_nucleus_and_complete(conic(t.top())).hyperoval);
  RecognizeOptions opt;
  opt.given = {0, 1, 2};
  opt.exhaustive = true;
  const RecognitionResult r = recognize_regular(h, opt);
  CHECK(r.match.has_value());
  CHECK(r.choices_tried > 1);
  CHECK(r.choices_succeeded == r.choices_tried);
  CHECK(r.choices_agree);
}

TEST_CASE("a non-regular Gamma blocks recognition with a witness") {
  const FieldTower& t = tower42();
  const PseudoArc h = reduced(t, oval_nucleus_and_complete(conic(t.top())).hyperoval);
  DualArc d = dual_arc(h);
  Spread& g = d.gammas[0];
  const Regulus r = regulus_through(g.elements[0], g.elements[1], g.elements[2]);
  g = switch_regulus(g, r);
  CHECK(verify_spread(g).ok);
  const RecognitionResult res = recognize_from_dual(h, d);
  CHECK_FALSE(res.match.has_value());
  REQUIRE(res.not_regular.has_value());
  CHECK(res.not_regular->first == 0);
  CHECK(res.not_regular->second.witness.has_value());
}

TEST_CASE("recognition preconditions") {
  auto f = Field::make(2);
  const PseudoArc o = reduce_arc(conic(f), ReductionMap(FieldTower(f, 1)));
  CHECK_THROWS_AS(recognize_regular(o), Error);
}
