#include "pal/reduction.hpp"

#include <algorithm>
#include <set>

#include "pal/parallel.hpp"

namespace pal {

ReductionMap::ReductionMap(FieldTower tower, int source_dim)
    : tower_(std::move(tower)), source_dim_(source_dim) {
  require(source_dim >= 0, ErrorKind::InvalidArgument, "source dimension must be >= 0");
}

Vector ReductionMap::expand_vector(std::span<const Code> v) const {
  require(static_cast<int>(v.size()) == source_dim_ + 1, ErrorKind::AmbientMismatch,
          "vector does not live in the source space");
  const int n = tower_.n();
  Vector out((source_dim_ + 1) * n);
  for (int j = 0; j <= source_dim_; ++j) {
    const auto coords = tower_.expand(v[j]);
    std::copy(coords.begin(), coords.end(), out.begin() + j * n);
  }
  return out;
}

Vector ReductionMap::combine_vector(std::span<const Code> v) const {
  const int n = tower_.n();
  require(static_cast<int>(v.size()) == (source_dim_ + 1) * n, ErrorKind::AmbientMismatch,
          "vector does not live in the target space");
  Vector out(source_dim_ + 1);
  for (int j = 0; j <= source_dim_; ++j) out[j] = tower_.combine(v.subspan(j * n, n));
  return out;
}

Subspace ReductionMap::reduce(const Subspace& s) const {
  require(same_field(s.field(), tower_.top()) && s.ambient_dim() == source_dim_,
          ErrorKind::AmbientMismatch, "subspace does not live in PG(source_dim, q^n)");
  const Field& top = *tower_.top();
  Matrix rows(0, target_dim() + 1);
  Vector scaled(source_dim_ + 1);
  for (int r = 0; r < s.rank(); ++r) {
    const auto row = s.basis().row(r);
    for (Code b : tower_.reduction_basis()) {
      for (int c = 0; c <= source_dim_; ++c) scaled[c] = top.mul(b, row[c]);
      rows.append_row(expand_vector(scaled));
    }
  }
  return Subspace::from_rows(tower_.base(), target_dim(), std::move(rows));
}

Subspace ReductionMap::reduce_point(std::span<const Code> coords) const {
  return reduce(Subspace::point(tower_.top(), coords));
}

Subspace ReductionMap::reduce_line(const Subspace& line) const {
  require(line.rank() == 2, ErrorKind::InvalidArgument, "not a line");
  return reduce(line);
}

Spread desarguesian_spread(const FieldTower& tower) {
  const ReductionMap map(tower, 1);
  Spread s{tower.base(), tower.n(), {}, std::nullopt};
  for (const Vector& p : points_of(Subspace::whole(tower.top(), 1))) {
    s.elements.push_back(map.reduce_point(p));
  }
  return s;
}

PseudoArc reduce_arc(const PlaneArc& arc, const ReductionMap& map) {
  require(map.source_dim() == 2, ErrorKind::InvalidArgument, "arcs live in a plane");
  require(same_field(arc.field, map.tower().top()), ErrorKind::OwnerMismatch,
          "plane arc is not over the top field of the reduction map");
  const KArcReport report = verify_karc(arc.field, arc.points);
  require(report.ok, ErrorKind::NotArc, "plane point set is not an arc");
  std::vector<Subspace> elements;
  elements.reserve(arc.points.size());
  for (const auto& p : arc.points) elements.push_back(map.reduce_point(p));
  PseudoArc out = make_pseudo_arc(map.tower().base(), map.n(), std::move(elements));
  out.witness = RegularityWitness{map.tower(), arc, Matrix::identity(3 * map.n())};
  return out;
}

Subspace transform(const Subspace& s, const Matrix& m) {
  return Subspace::from_rows(s.field(), s.ambient_dim(), multiply(*s.field(), s.basis(), m));
}

namespace {

Matrix embed_matrix(const Matrix& m, const FieldTower& tower) {
  Matrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.at(r, c) = tower.embed(m.at(r, c));
  return out;
}

std::optional<Matrix> restrict_matrix(const Matrix& m, const FieldTower& tower) {
  Matrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      auto b = tower.restrict(m.at(r, c));
      if (!b) return std::nullopt;
      out.at(r, c) = *b;
    }
  return out;
}

Vector conjugate_vector(std::span<const Code> v, const FieldTower& tower) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = tower.frobenius(v[i]);
  return out;
}

// A = frame rows 0..n-1, C = rows n..2n-1, B = graph(F) in frame coordinates.
struct Frame {
  Matrix frame;
  Matrix frame_inv;
  Matrix graph;
};

Frame make_frame(const Field& f, const Subspace& a, const Subspace& b, const Subspace& c) {
  const int n = a.rank();
  Frame fr;
  fr.frame = a.basis();
  fr.frame.append_rows(c.basis());
  auto inv = inverse(f, fr.frame);
  require(inv.has_value(), ErrorKind::InvalidArgument, "spread elements do not span");
  fr.frame_inv = std::move(*inv);
  fr.graph = *[&] {
    const Matrix coords = multiply(f, b.basis(), fr.frame_inv);
    auto x_inv = inverse(f, coords.slice_cols(0, n));
    require(x_inv.has_value(), ErrorKind::InvalidArgument, "spread elements meet");
    return std::optional<Matrix>(multiply(f, *x_inv, coords.slice_cols(n, 2 * n)));
  }();
  return fr;
}

bool meets_in_one_point(const Subspace& line, const Subspace& element) {
  Matrix rows = line.basis();
  rows.append_rows(element.basis());
  return rank(*line.field(), std::move(rows)) == element.rank() + 1;
}

}  // namespace

TransversalResult spread_transversals(const Spread& spread, const FieldTower& tower) {
  const int n = spread.n;
  require(n >= 2, ErrorKind::InvalidArgument, "transversal lines need n >= 2");
  require(tower.n() == n && same_field(tower.base(), spread.field), ErrorKind::InvalidArgument,
          "tower does not match the spread");
  require(spread.size() >= 4, ErrorKind::InvalidArgument, "spread too small");
  const Field& base = *spread.field;
  const Field& top = *tower.top();
  TransversalResult result;

  const Subspace& a = spread.elements[0];
  const Subspace& b = spread.elements[1];
  const Subspace& c = spread.elements[2];
  const Frame fr = make_frame(base, a, b, c);
  auto graph_inv = inverse(base, fr.graph);
  require(graph_inv.has_value(), ErrorKind::InvalidArgument, "spread elements meet");
  const SubspaceIndex in_abc = index_of(regulus_through(a, b, c).elements);
  const Matrix frame_top = embed_matrix(fr.frame, tower);
  const Matrix graph_top = embed_matrix(fr.graph, tower);

  std::vector<Subspace> extended;
  extended.reserve(spread.size());
  for (const auto& e : spread.elements) extended.push_back(extend_scalars(e, tower));

  std::vector<Subspace> candidate;
  for (std::size_t k = 3; k < spread.size() && candidate.empty(); ++k) {
    const Subspace& d = spread.elements[k];
    if (in_abc.count(d)) continue;
    const Matrix coords = multiply(base, d.basis(), fr.frame_inv);
    auto x_inv = inverse(base, coords.slice_cols(0, n));
    if (!x_inv) continue;
    // D = graph(G); a line {(a,0),(0,aF)} meets D iff a G F^{-1} = mu a.
    const Matrix g = multiply(base, *x_inv, coords.slice_cols(n, 2 * n));
    const Matrix k_top = embed_matrix(multiply(base, g, *graph_inv), tower);

    std::vector<std::pair<Code, Vector>> eigen;
    bool usable = true;
    for (Code mu = 0; mu < top.size() && usable; ++mu) {
      if (tower.in_base(mu)) continue;
      Matrix shifted = k_top;
      for (int i = 0; i < n; ++i) shifted.at(i, i) = top.sub(shifted.at(i, i), mu);
      const Matrix left = nullspace(top, shifted.transpose());
      if (left.rows() == 0) continue;
      if (left.rows() > 1) usable = false;
      eigen.emplace_back(mu, Vector(left.row(0).begin(), left.row(0).end()));
    }
    if (!usable || static_cast<int>(eigen.size()) != n) continue;
    if (static_cast<int>(tower.galois_orbit(eigen.front().first).size()) != n) continue;

    Matrix rows(2, 2 * n);
    const Vector& a0 = eigen.front().second;
    const Vector image = multiply(top, a0, graph_top);
    for (int i = 0; i < n; ++i) {
      rows.at(0, i) = a0[i];
      rows.at(1, n + i) = image[i];
    }
    Subspace line = Subspace::from_rows(tower.top(), 2 * n - 1, multiply(top, rows, frame_top));
    for (int l = 0; l < n; ++l) {
      candidate.push_back(line);
      line = conjugate(line, tower);
    }
    if (!(line == candidate.front())) candidate.clear();
  }

  bool ok = !candidate.empty();
  if (!ok) result.failure = "no element yields n conjugate transversal candidates";
  for (std::size_t l = 0; l < candidate.size() && ok; ++l) {
    for (std::size_t e = 0; e < extended.size(); ++e) {
      if (!meets_in_one_point(candidate[l], extended[e])) {
        ok = false;
        result.failure = "candidate transversal " + std::to_string(l) + " misses element " +
                         std::to_string(e);
        break;
      }
    }
  }
  if (ok) {
    result.ok = true;
    result.lines = std::move(candidate);
    return result;
  }
  result.certificate = is_regular_spread(spread, SweepMode::Full);
  return result;
}

SpreadReport verify_subspace_spread(const SubspaceSpread& spread) {
  SpreadReport report;
  const Code q = spread.field->size();
  const std::uint64_t points = projective_point_count(q, spread.ambient_dim + 1);
  const std::uint64_t per = projective_point_count(q, spread.n);
  report.expected_size = (points % per == 0) ? points / per : 0;
  report.actual_size = spread.elements.size();
  report.count_ok = report.expected_size == report.actual_size;
  std::uint64_t total = 1;
  for (int i = 0; i <= spread.ambient_dim; ++i) total *= q;
  require(total <= (std::uint64_t{1} << 28), ErrorKind::CapExceeded, "ambient space too large");
  std::vector<std::uint8_t> hit(total, 0);
  std::uint64_t covered = 0;
  report.skew_ok = true;
  for (std::size_t i = 0; i < spread.elements.size(); ++i) {
    const auto& e = spread.elements[i];
    require(e.ambient_dim() == spread.ambient_dim, ErrorKind::AmbientMismatch,
            "spread element lives elsewhere");
    if (e.rank() != spread.n) report.skew_ok = false;
    for_each_point(e, [&](const Vector& v) {
      auto& slot = hit[vector_key(v, q)];
      if (slot) report.skew_ok = false;
      else ++covered;
      slot = 1;
    });
  }
  report.uncovered_points = points - covered;
  report.cover_ok = report.uncovered_points == 0;
  report.ok = report.count_ok && report.skew_ok && report.cover_ok;
  if (!report.skew_ok) report.failure = "elements overlap or have the wrong dimension";
  else if (!report.cover_ok) report.failure = std::to_string(report.uncovered_points) + " points uncovered";
  else if (!report.count_ok) report.failure = "wrong number of elements";
  return report;
}

Regulus regulus_in_span(const Subspace& a, const Subspace& b, const Subspace& c) {
  const Subspace host = span(a, b);
  require(host.contains(c), ErrorKind::InvalidArgument, "third element is not in span(A, B)");
  Regulus chart = regulus_through(to_chart(host, a), to_chart(host, b), to_chart(host, c));
  Regulus out{{a, b, c}, {}};
  for (const auto& e : chart.elements) out.elements.push_back(from_chart(host, e));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

SigmaResult build_sigma(const Regulus& gamma, const Spread& gamma_i, const FieldTower& tower) {
  require(gamma_i.host.has_value(), ErrorKind::InvalidArgument,
          "Gamma_i must carry its host (2n-1)-space");
  const int n = gamma_i.n;
  const Subspace& alpha = gamma.generators[0];
  const Subspace& beta_i = *gamma_i.host;
  bool alpha_in_spread = false;
  for (std::size_t k = 0; k < gamma_i.size() && !alpha_in_spread; ++k) {
    alpha_in_spread = gamma_i.lifted(k) == alpha;
  }
  require(alpha_in_spread, ErrorKind::InvalidArgument,
          "the regulus does not share its first generator with Gamma_i");

  const TransversalResult trans = spread_transversals(gamma_i, tower);
  require(trans.ok, ErrorKind::NotRegular, "Gamma_i is not regular: " + trans.failure);

  const Subspace beta_i_top = extend_scalars(beta_i, tower);
  const Subspace alpha_top = extend_scalars(alpha, tower);
  const Subspace b_top = extend_scalars(gamma.generators[1], tower);
  const Subspace c_top = extend_scalars(gamma.generators[2], tower);

  SigmaResult result;
  SigmaScaffold& sc = result.scaffold;
  for (const auto& u_chart : trans.lines) {
    Subspace u = from_chart(beta_i_top, u_chart);
    Subspace contact = meet(alpha_top, u);
    require(contact.rank() == 1, ErrorKind::Internal, "transversal does not meet alpha in a point");
    Subspace t = span(contact, meet(c_top, span(contact, b_top)));
    require(t.rank() == 2, ErrorKind::InvalidArgument, "no regulus transversal through u_l");
    Subspace theta = span(t, u);
    require(theta.rank() == 3, ErrorKind::InvalidArgument, "T_l and U_l do not span a plane");
    sc.transversal_lines.push_back(std::move(u));
    sc.contact_points.push_back(std::move(contact));
    sc.regulus_transversals.push_back(std::move(t));
    sc.planes.push_back(std::move(theta));
  }
  require(span(sc.planes).rank() == 3 * n, ErrorKind::InvalidArgument,
          "the planes theta_l do not span PG(3n-1, q^n)");

  SubspaceSpread& sigma = result.sigma;
  sigma.field = tower.base();
  sigma.n = n;
  sigma.ambient_dim = 3 * n - 1;
  std::set<Subspace> seen;
  for (const Vector& x : points_of(sc.planes.front())) {
    Matrix orbit(0, 3 * n);
    Vector y = x;
    for (int l = 0; l < n; ++l) {
      orbit.append_row(y);
      y = conjugate_vector(y, tower);
    }
    const Subspace over_top = Subspace::from_rows(tower.top(), 3 * n - 1, std::move(orbit));
    require(over_top.rank() == n, ErrorKind::Internal, "Galois orbit does not span an (n-1)-space");
    auto rational = restrict_scalars(over_top, tower);
    require(rational.has_value(), ErrorKind::Internal, "Galois-orbit span is not rational");
    if (seen.insert(*rational).second) sigma.elements.push_back(std::move(*rational));
  }

  const SubspaceIndex index = index_of(sigma.elements);
  result.contains_regulus = std::all_of(gamma.elements.begin(), gamma.elements.end(),
                                        [&](const Subspace& e) { return index.count(e) > 0; });
  result.contains_spread = true;
  for (std::size_t k = 0; k < gamma_i.size(); ++k)
    if (!index.count(gamma_i.lifted(k))) result.contains_spread = false;
  return result;
}

Matrix sigma_structure(const SigmaScaffold& scaffold, const FieldTower& tower) {
  const Field& top = *tower.top();
  const int n = tower.n();
  require(static_cast<int>(scaffold.planes.size()) == n, ErrorKind::InvalidArgument,
          "scaffold needs n planes");
  const int width = scaffold.planes.front().ambient_dim() + 1;
  Matrix basis(0, width);
  Matrix theta = scaffold.planes.front().basis();
  Matrix diag(width, width);
  Code eigenvalue = 2 % top.size();  // x, the generator used by the reduction basis
  int row = 0;
  for (int l = 0; l < n; ++l) {
    basis.append_rows(theta);
    for (int r = 0; r < theta.rows(); ++r, ++row) diag.at(row, row) = eigenvalue;
    for (int r = 0; r < theta.rows(); ++r) {
      const Vector c = conjugate_vector(theta.row(r), tower);
      std::copy(c.begin(), c.end(), theta.row(r).begin());
    }
    eigenvalue = tower.frobenius(eigenvalue);
  }
  require(row == width, ErrorKind::InvalidArgument, "planes do not decompose the space");
  auto inv = inverse(top, basis);
  require(inv.has_value(), ErrorKind::InvalidArgument, "planes are not independent");
  const Matrix j_top = multiply(top, multiply(top, *inv, diag), basis);
  auto j = restrict_matrix(j_top, tower);
  require(j.has_value(), ErrorKind::Internal, "structure map is not defined over F_q");
  return *j;
}

PlaneModel plane_model(const SubspaceSpread& sigma) {
  PlaneModel model;
  const std::size_t v = sigma.elements.size();
  model.point_count = v;
  std::vector<std::vector<std::int32_t>> line_of(v, std::vector<std::int32_t>(v, -1));
  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t b = a + 1; b < v; ++b) {
      if (line_of[a][b] >= 0) continue;
      const Subspace line = span(sigma.elements[a], sigma.elements[b]);
      std::vector<std::size_t> members;
      for (std::size_t c = 0; c < v; ++c)
        if (line.contains(sigma.elements[c])) members.push_back(c);
      const auto id = static_cast<std::int32_t>(model.lines.size());
      for (std::size_t x = 0; x < members.size(); ++x)
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          auto& slot = line_of[members[x]][members[y]];
          if (slot >= 0 && model.failure.empty()) model.failure = "two points on two lines";
          slot = id;
          line_of[members[y]][members[x]] = id;
        }
      model.lines.push_back(line);
      model.line_points.push_back(std::move(members));
    }
  }
  // Order: q^n; v = order^2 + order + 1, lines of size order + 1.
  std::size_t order = 0;
  while (order * order + order + 1 < v) ++order;
  if (model.failure.empty() && order * order + order + 1 != v) model.failure = "point count is not q^2+q+1";
  if (model.failure.empty() && model.lines.size() != v) model.failure = "line count differs from point count";
  for (const auto& pts : model.line_points)
    if (model.failure.empty() && pts.size() != order + 1) model.failure = "line with wrong number of points";
  for (std::size_t x = 0; x < model.lines.size() && model.failure.empty(); ++x) {
    std::vector<bool> on(v, false);
    for (auto p : model.line_points[x]) on[p] = true;
    for (std::size_t y = x + 1; y < model.lines.size(); ++y) {
      std::size_t common = 0;
      for (auto p : model.line_points[y]) common += on[p] ? 1 : 0;
      if (common != 1) {
        model.failure = "lines " + std::to_string(x) + " and " + std::to_string(y) +
                        " meet in " + std::to_string(common) + " points";
        break;
      }
    }
  }
  model.ok = model.failure.empty();
  return model;
}

std::optional<Regulus> dual_regulus(const DualArc& dual, std::size_t j,
                                    const std::array<std::size_t, 3>& partners) {
  require(j < dual.gammas.size(), ErrorKind::InvalidArgument, "dual index out of range");
  const Spread& gj = dual.gammas[j];
  const auto& pj = dual.partners[j];
  std::vector<Subspace> chart;
  for (std::size_t p : partners) {
    const auto it = std::find(pj.begin(), pj.end(), p);
    require(it != pj.end(), ErrorKind::InvalidArgument, "index is not a partner of beta_j");
    chart.push_back(gj.elements[static_cast<std::size_t>(it - pj.begin())]);
  }
  const Regulus chart_reg = regulus_through(chart[0], chart[1], chart[2]);
  const SubspaceIndex in_gj = index_of(gj.elements);
  for (const auto& e : chart_reg.elements)
    if (!in_gj.count(e)) return std::nullopt;
  Regulus gamma{{from_chart(*gj.host, chart[0]), from_chart(*gj.host, chart[1]),
                 from_chart(*gj.host, chart[2])},
                {}};
  for (const auto& e : chart_reg.elements) gamma.elements.push_back(from_chart(*gj.host, e));
  std::sort(gamma.elements.begin(), gamma.elements.end());
  return gamma;
}

SigmaResult sigma_from_dual(const DualArc& dual, std::size_t i, std::size_t j, const FieldTower& tower) {
  require(i != j && i < dual.gammas.size() && j < dual.gammas.size(), ErrorKind::InvalidArgument,
          "need two distinct dual indices");
  std::vector<std::size_t> others;
  for (std::size_t p : dual.partners[j])
    if (p != i && others.size() < 2) others.push_back(p);
  const auto gamma = dual_regulus(dual, j, {i, others[0], others[1]});
  require(gamma.has_value(), ErrorKind::NotRegular, "Gamma_j does not contain the regulus");
  return build_sigma(*gamma, dual.gammas[i], tower);
}

namespace {

bool is_invariant(const Subspace& s, const Matrix& j) {
  const Field& f = *s.field();
  for (int r = 0; r < s.rank(); ++r) {
    if (!s.contains_vector(multiply(f, s.basis().row(r), j))) return false;
  }
  return true;
}

// G: rows v_m J^i; reduction coordinates (m, i) -> ambient vector.
Matrix frame_for_structure(const Field& f, const Matrix& j, int n) {
  const int width = j.rows();
  Matrix g(0, width);
  Vector e(width, 0);
  for (int t = 0; t < width && g.rows() < width; ++t) {
    std::fill(e.begin(), e.end(), 0);
    e[t] = 1;
    Matrix trial = g;
    Vector w = e;
    for (int i = 0; i < n; ++i) {
      trial.append_row(w);
      w = multiply(f, w, j);
    }
    if (rank(f, trial) == trial.rows()) g = std::move(trial);
  }
  require(g.rows() == width, ErrorKind::Internal, "structure map admits no frame");
  return g;
}

struct Attempt {
  std::size_t i, j;
  std::vector<std::size_t> partners;
};

std::optional<Recognition> try_choice(const PseudoArc& arc, const DualArc& dual,
                                      const FieldTower& tower, const Attempt& at,
                                      std::vector<Subspace>* sigma_out) {
  const auto gamma = dual_regulus(dual, at.j, {at.partners[0], at.partners[1], at.partners[2]});
  if (!gamma) return std::nullopt;
  const SigmaResult sig = build_sigma(*gamma, dual.gammas[at.i], tower);
  if (sigma_out) {
    *sigma_out = sig.sigma.elements;
    std::sort(sigma_out->begin(), sigma_out->end());
  }
  const Matrix j = sigma_structure(sig.scaffold, tower);
  for (const auto& beta : dual.betas)
    if (!is_invariant(beta, j)) return std::nullopt;

  const Field& base = *tower.base();
  const int n = arc.n;
  const Matrix j_dual = j.transpose();
  const Matrix g = frame_for_structure(base, j_dual, n);
  const auto g_inv = inverse(base, g);
  require(g_inv.has_value(), ErrorKind::Internal, "frame is singular");
  const ReductionMap map(tower, 2);
  Recognition rec;
  rec.arc.field = tower.top();
  for (const auto& e : arc.elements) {
    require(is_invariant(e, j_dual), ErrorKind::Internal, "arc element is not invariant");
    const Vector coords = multiply(base, e.basis().row(0), *g_inv);
    Vector p = map.combine_vector(coords);
    normalize(*tower.top(), p);
    rec.arc.points.push_back(std::move(p));
  }
  const KArcReport report = verify_karc(rec.arc.field, rec.arc.points);
  if (!report.ok) return std::nullopt;
  const Code order = tower.top()->size();
  rec.arc.kind = rec.arc.points.size() == order + 2   ? PlaneArcKind::Hyperoval
                 : rec.arc.points.size() == order + 1 ? PlaneArcKind::Oval
                                                      : PlaneArcKind::KArc;
  rec.identification = g;
  rec.structure = j_dual;
  rec.i = at.i;
  rec.j = at.j;
  rec.regulus_partners = at.partners;
  for (std::size_t k = 0; k < arc.size(); ++k) {
    if (!(transform(map.reduce_point(rec.arc.points[k]), g) == arc.elements[k])) return std::nullopt;
  }
  return rec;
}

}  // namespace

RecognitionResult recognize_from_dual(const PseudoArc& arc, const DualArc& dual,
                                      const RecognizeOptions& options) {
  require(arc.n >= 2, ErrorKind::InvalidArgument, "recognition needs n >= 2");
  require(arc.kind == ArcKind::PseudoOval || arc.kind == ArcKind::PseudoHyperoval,
          ErrorKind::KindMismatch, "recognition needs a pseudo-oval or pseudo-hyperoval");
  const FieldTower tower(arc.field, arc.n);
  const std::size_t total = dual.betas.size();
  std::vector<std::size_t> given = options.given;
  if (given.empty()) {
    for (std::size_t k = 0; k < arc.size(); ++k) given.push_back(k);
  }
  std::vector<std::size_t> required = options.required;
  if (dual.nucleus_appended) required.insert(required.begin(), total - 1);

  RecognitionResult result;
  for (std::size_t k : given) {
    require(k < total, ErrorKind::InvalidArgument, "given index out of range");
    RegularityReport reg = is_regular_spread(dual.gammas[k], SweepMode::Full);
    if (!reg.regular) {
      result.not_regular = std::make_pair(k, std::move(reg));
      return result;
    }
  }

  std::vector<Attempt> attempts;
  for (std::size_t i : given)
    for (std::size_t j : given) {
      if (i == j) continue;
      std::vector<std::size_t> fixed{i};
      for (std::size_t m : required)
        if (m != i && m != j && fixed.size() < 3 &&
            std::find(fixed.begin(), fixed.end(), m) == fixed.end())
          fixed.push_back(m);
      std::vector<std::size_t> others;
      for (std::size_t p : dual.partners[j])
        if (std::find(fixed.begin(), fixed.end(), p) == fixed.end()) others.push_back(p);
      if (fixed.size() == 3) {
        attempts.push_back({i, j, fixed});
      } else if (fixed.size() == 2) {
        for (std::size_t x : others) attempts.push_back({i, j, {fixed[0], fixed[1], x}});
      } else {
        for (std::size_t a = 0; a < others.size(); ++a)
          for (std::size_t b = a + 1; b < others.size(); ++b)
            attempts.push_back({i, j, {fixed[0], others[a], others[b]}});
      }
    }

  std::optional<std::vector<Subspace>> first_sigma;
  for (const Attempt& at : attempts) {
    std::vector<Subspace> sig;
    ++result.choices_tried;
    auto rec = try_choice(arc, dual, tower, at, options.exhaustive ? &sig : nullptr);
    if (!rec) continue;
    ++result.choices_succeeded;
    if (!result.match) result.match = std::move(rec);
    if (!options.exhaustive) break;
    if (!first_sigma) first_sigma = sig;
    else if (*first_sigma != sig) result.choices_agree = false;
  }
  return result;
}

RecognitionResult recognize_regular(const PseudoArc& arc, const RecognizeOptions& options) {
  return recognize_from_dual(arc, dual_arc(arc), options);
}

bool witness_reproduces(const PseudoArc& arc, const RegularityWitness& witness) {
  const ReductionMap map(witness.tower, 2);
  if (witness.plane_arc.points.size() != arc.size()) return false;
  for (std::size_t k = 0; k < arc.size(); ++k) {
    const Subspace e = transform(map.reduce_point(witness.plane_arc.points[k]), witness.identification);
    if (!(e == arc.elements[k])) return false;
  }
  return true;
}

}  // namespace pal
