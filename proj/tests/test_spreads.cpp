#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "pal/error.hpp"
#include "pal/reduction.hpp"

using namespace pal;

namespace {

std::vector<Subspace> all_lines(const FieldPtr& f, int d) {
  std::vector<Subspace> out;
  for_each_subspace(f, d, 2, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

bool lines_meet(const Subspace& a, const Subspace& b) { return span(a, b).rank() <= 3; }

// Regulus of three skew lines of PG(3,q) as the lines meeting all their transversals.
std::set<Subspace> oracle_regulus(const std::vector<Subspace>& lines, const Subspace& a, const Subspace& b,
                                  const Subspace& c) {
  std::vector<Subspace> trans;
  for (const auto& l : lines)
    if (lines_meet(l, a) && lines_meet(l, b) && lines_meet(l, c)) trans.push_back(l);
  std::set<Subspace> out;
  for (const auto& l : lines) {
    bool ok = true;
    for (const auto& t : trans) ok = ok && lines_meet(l, t) && !(l == t);
    if (ok) out.insert(l);
  }
  return out;
}

Spread regular_spread(int h) { return desarguesian_spread(FieldTower(Field::make(h), 2)); }

PseudoArc hyperoval(int h, int n, const std::string& which = "conic") {
  FieldTower t(Field::make(h), n);
  const PlaneArc oval = which == "conic" ? conic(t.top()) : translation_oval(t.top(), 3);
  return extend_to_hyperoval(reduce_arc(oval, ReductionMap(t)));
}

}  // namespace

TEST_CASE("Desarguesian spreads of PG(3,4) and PG(3,2)") {
  for (int h : {1, 2}) {
    const Spread s = regular_spread(h);
    const SpreadReport rep = verify_spread(s);
    CHECK(rep.ok);
    CHECK(s.size() == (h == 1 ? 5u : 17u));
    const RegularityReport reg = is_regular_spread(s, SweepMode::Full);
    CHECK(reg.regular);
    CHECK(reg.vacuous == (h == 1));
    if (h == 2) CHECK(reg.triples_checked == 680);
  }
}

TEST_CASE("spread verification failures") {
  Spread s = regular_spread(2);
  Spread dropped = s;
  dropped.elements.pop_back();
  const SpreadReport d = verify_spread(dropped);
  CHECK_FALSE(d.ok);
  CHECK(d.uncovered_points == 5);
  Spread dup = s;
  dup.elements[3] = dup.elements[2];
  const SpreadReport r = verify_spread(dup);
  CHECK_FALSE(r.skew_ok);
  REQUIRE(r.meeting_pair.has_value());
  CHECK(r.meeting_pair->first == 2);
  CHECK(r.meeting_pair->second == 3);
}

TEST_CASE("regulus through three lines agrees with the transversal oracle") {
  for (int h : {1, 2}) {
    const Spread s = regular_spread(h);
    const auto lines = all_lines(s.field, 3);
    CHECK(lines.size() == (h == 1 ? 35u : 357u));
    const Regulus r = regulus_through(s.elements[0], s.elements[1], s.elements[2]);
    const auto oracle = oracle_regulus(lines, s.elements[0], s.elements[1], s.elements[2]);
    CHECK(std::set<Subspace>(r.elements.begin(), r.elements.end()) == oracle);
    CHECK(r.elements.size() == s.field->size() + 1u);
    // transversals meet every element of the regulus
    std::size_t transversals = 0;
    for (const auto& l : lines) {
      if (!lines_meet(l, s.elements[0]) || !lines_meet(l, s.elements[1]) || !lines_meet(l, s.elements[2])) continue;
      ++transversals;
      for (const auto& e : r.elements) CHECK(meet(l, e).rank() == 1);
    }
    CHECK(transversals == s.field->size() + 1u);
    // permutations
    const Regulus p = regulus_through(s.elements[2], s.elements[0], s.elements[1]);
    CHECK(p.elements == r.elements);
  }
}

TEST_CASE("every regulus is determined by any three of its elements") {
  const Spread s = regular_spread(2);
  const auto reguli = reguli_in(s);
  CHECK(reguli.size() == 68);
  int bad = 0;
  for (const auto& r : reguli) {
    const auto& e = r.elements;
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a + 1; b < e.size(); ++b)
        for (std::size_t c = b + 1; c < e.size(); ++c)
          if (regulus_through(e[a], e[b], e[c]).elements != e) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("reguli through a pair") {
  for (int h : {1, 2}) {
    const Spread s = regular_spread(h);
    const std::size_t q = s.field->size();
    const PairReguli pr = reguli_through_pair(s, 0, 1);
    CHECK(pr.reguli.size() == (q * q - 1) / (q - 1));
    CHECK(pr.all_contained);
    CHECK(count_reguli_through_pair(s, 3, 4) == (q * q - 1) / (q - 1));
    // oracle: dedupe regulus sets over all third elements
    const auto lines = all_lines(s.field, 3);
    std::set<std::set<Subspace>> distinct;
    for (std::size_t x = 2; x < s.size(); ++x) distinct.insert(oracle_regulus(lines, s.elements[0], s.elements[1], s.elements[x]));
    CHECK(distinct.size() == pr.reguli.size());
    // remainders partition the other elements
    std::multiset<Subspace> rest;
    for (const auto& r : pr.reguli)
      for (const auto& e : r.elements)
        if (!(e == s.elements[0]) && !(e == s.elements[1])) rest.insert(e);
    CHECK(rest.size() == s.size() - 2);
    CHECK(std::set<Subspace>(rest.begin(), rest.end()).size() == s.size() - 2);
  }
}

TEST_CASE("opposite regulus") {
  const Spread s = regular_spread(2);
  const Regulus r = regulus_through(s.elements[0], s.elements[1], s.elements[2]);
  const Regulus o = opposite_regulus(r);
  CHECK(o.elements.size() == 5);
  for (const auto& a : r.elements)
    for (const auto& b : o.elements) CHECK(meet(a, b).rank() == 1);
  CHECK(opposite_regulus(o).elements == r.elements);
}

TEST_CASE("switching a regulus breaks regularity") {
  const Spread s = regular_spread(2);
  const Regulus r = regulus_through(s.elements[0], s.elements[1], s.elements[2]);
  const Spread sw = switch_regulus(s, r);
  CHECK(verify_spread(sw).ok);
  const RegularityReport rep = is_regular_spread(sw, SweepMode::Full);
  CHECK_FALSE(rep.regular);
  REQUIRE(rep.witness.has_value());
  REQUIRE(rep.missing.has_value());
  const auto& w = *rep.witness;
  const Regulus bad = regulus_through(sw.elements[w[0]], sw.elements[w[1]], sw.elements[w[2]]);
  const SubspaceIndex idx = index_of(sw.elements);
  CHECK(std::find(bad.elements.begin(), bad.elements.end(), *rep.missing) != bad.elements.end());
  CHECK(idx.count(*rep.missing) == 0);
  const RegularityReport fixed = is_regular_spread(sw, SweepMode::FixedElement);
  CHECK_FALSE(fixed.regular);
}

TEST_CASE("derived spreads of the PG(5,4) pseudo-hyperoval") {
  const PseudoArc h = hyperoval(2, 2);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Spread d = derive_spread_from_element(h, i);
    CHECK(d.size() == 17);
    CHECK(verify_spread(d).ok);
    CHECK(is_regular_spread(d, SweepMode::Full).regular);
  }
}

TEST_CASE("derived spreads of a pseudo-oval include the tangent image") {
  FieldTower t(Field::make(2), 2);
  const PseudoArc o = reduce_arc(conic(t.top()), ReductionMap(t));
  const Spread d = derive_spread_from_element(o, 4);
  CHECK(d.size() == 17);
  CHECK(verify_spread(d).ok);
  CHECK(d.elements[4] == Quotient(o.elements[4]).image(tangent_space(o, 4)));
  const Spread dn = derive_spread_from_nucleus(o);
  CHECK(verify_spread(dn).ok);
  CHECK(is_regular_spread(dn, SweepMode::Full).regular);
  const Spread via_h = derive_spread_from_element(extend_to_hyperoval(o), 17);
  CHECK(via_h.elements == dn.elements);
}

TEST_CASE("explicit complements give the same regularity verdicts") {
  const PseudoArc h = hyperoval(2, 2, "translation");
  std::mt19937_64 rng(17);
  for (std::size_t i = 0; i < h.size(); i += 5) {
    const Spread a = derive_spread_from_element(h, i);
    const Spread b = derive_spread_from_element(h, i, random_complement(h.elements[i], rng));
    CHECK(verify_spread(b).ok);
    CHECK(is_regular_spread(a, SweepMode::Full).regular == is_regular_spread(b, SweepMode::Full).regular);
  }
}

TEST_CASE("tangent spread for q odd, n = 1") {
  auto f = Field::prime(5);
  const PseudoArc o = reduce_arc(conic(f), ReductionMap(FieldTower(f, 1)));
  const Spread d = derive_tangent_spread_odd(o, 0);
  CHECK(d.size() == 6);
  CHECK(verify_spread(d).ok);
  FieldTower t(Field::make(2), 2);
  CHECK_THROWS_AS(derive_tangent_spread_odd(reduce_arc(conic(t.top()), ReductionMap(t)), 0), Error);
}

TEST_CASE("dual arcs") {
  const PseudoArc h = hyperoval(2, 2);
  const DualArc d = dual_arc(h);
  CHECK(d.betas.size() == 18);
  CHECK_FALSE(d.nucleus_appended);
  CHECK(meet(d.betas[0], d.betas[1]).rank() == 2);
  for (std::size_t i = 0; i < d.gammas.size(); ++i) {
    CHECK(d.gammas[i].size() == 17);
    CHECK(verify_spread(d.gammas[i]).ok);
    const bool gamma_regular = is_regular_spread(d.gammas[i], SweepMode::Full).regular;
    const bool delta_regular = is_regular_spread(derive_spread_from_element(h, i), SweepMode::Full).regular;
    CHECK(gamma_regular == delta_regular);
    for (std::size_t k = 0; k < d.gammas[i].size(); ++k)
      CHECK(d.gammas[i].lifted(k) == meet(d.betas[i], d.betas[d.partners[i][k]]));
  }
  FieldTower t(Field::make(2), 2);
  const PseudoArc o = reduce_arc(conic(t.top()), ReductionMap(t));
  const DualArc od = dual_arc(o);
  CHECK(od.nucleus_appended);
  CHECK(od.betas.size() == 18);
  CHECK(od.betas.back() == dual(nucleus(o)));
  for (const auto& g : od.gammas) CHECK(verify_spread(g).ok);
}
