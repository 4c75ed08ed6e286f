#include "pal/serialize.hpp"

#include <fstream>
#include <sstream>

namespace pal {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::Parse, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::InvalidArgument, "cannot write " + path);
  out << dump(j);
}

namespace {

// nlohmann throws its own exceptions on type errors; map them to Parse.
template <typename Fn>
auto guarded(const char* what, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

Json header(const std::string& kind) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

ArcKind parse_arc_kind(const std::string& s) {
  for (ArcKind k : {ArcKind::GeneralizedArc, ArcKind::PseudoOval, ArcKind::PseudoHyperoval})
    if (s == to_string(k)) return k;
  fail(ErrorKind::Parse, "unknown arc kind '" + s + "'");
}

PlaneArcKind parse_plane_kind(const std::string& s) {
  for (PlaneArcKind k : {PlaneArcKind::KArc, PlaneArcKind::Oval, PlaneArcKind::Hyperoval})
    if (s == to_string(k)) return k;
  fail(ErrorKind::Parse, "unknown plane arc kind '" + s + "'");
}

Vector vector_from_json(const Json& j, const Field& f) {
  require(j.is_array(), ErrorKind::Parse, "expected an array of field codes");
  Vector v;
  for (const auto& x : j) {
    require(x.is_number_unsigned() || (x.is_number_integer() && x.get<long long>() >= 0),
            ErrorKind::Parse, "field codes must be non-negative integers");
    const auto c = x.get<std::uint64_t>();
    require(c < f.size(), ErrorKind::Parse, "field code out of range");
    v.push_back(static_cast<Code>(c));
  }
  return v;
}

template <typename T>
Json optional_json(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

Json subspace_list(const std::vector<Subspace>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(matrix_to_json(s.basis()));
  return out;
}

std::vector<Subspace> subspace_list_from(const Json& j, const FieldPtr& f, int ambient_dim) {
  require(j.is_array(), ErrorKind::Parse, "expected a list of subspaces");
  std::vector<Subspace> out;
  for (const auto& m : j) {
    Matrix rows = matrix_from_json(m, *f);
    require(rows.rows() == 0 || rows.cols() == ambient_dim + 1, ErrorKind::Parse,
            "subspace basis has the wrong width");
    if (rows.rows() == 0) rows = Matrix(0, ambient_dim + 1);
    out.push_back(Subspace::from_rows(f, ambient_dim, std::move(rows)));
  }
  return out;
}

}  // namespace

std::string kind_of(const Json& j) {
  require(j.is_object(), ErrorKind::Parse, "expected a JSON object");
  require(j.contains("schema") && j["schema"] == kSchema, ErrorKind::Parse,
          std::string("missing or unsupported schema (expected ") + kSchema + ")");
  require(j.contains("kind") && j["kind"].is_string(), ErrorKind::Parse, "missing object kind");
  return j["kind"].get<std::string>();
}

void expect_kind(const Json& j, const std::string& kind) {
  const std::string actual = kind_of(j);
  require(actual == kind, ErrorKind::Parse, "expected a " + kind + " file, got " + actual);
}

Json field_to_json(const Field& f) {
  return Json{{"p", f.characteristic()}, {"m", f.degree()}, {"modulus", f.modulus_bits()}};
}

FieldPtr field_from_json(const Json& j) {
  return guarded("field", [&] {
    const int p = j.at("p").get<int>();
    const int m = j.at("m").get<int>();
    const auto modulus = j.at("modulus").get<std::uint32_t>();
    if (p == 2) return Field::make(m, modulus);
    require(m == 1, ErrorKind::Parse, "odd characteristic fields must be prime");
    FieldPtr f = Field::prime(p);
    require(f->modulus_bits() == modulus, ErrorKind::Parse, "prime field modulus mismatch");
    return f;
  });
}

Json tower_to_json(const FieldTower& t) {
  return Json{{"base", field_to_json(*t.base())},
              {"n", t.n()},
              {"top_modulus", t.top()->modulus_bits()},
              {"convention", t.convention()}};
}

FieldTower tower_from_json(const Json& j) {
  return guarded("tower", [&] {
    require(j.at("convention") == "powerbasis-v1", ErrorKind::Parse, "unknown coordinate convention");
    FieldTower t(field_from_json(j.at("base")), j.at("n").get<int>(),
                 j.at("top_modulus").get<std::uint32_t>());
    return t;
  });
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    out.push_back(Json(std::vector<Code>(row.begin(), row.end())));
  }
  return out;
}

Matrix matrix_from_json(const Json& j, const Field& f) {
  require(j.is_array(), ErrorKind::Parse, "expected a matrix (array of rows)");
  Matrix m;
  bool first = true;
  for (const auto& row : j) {
    Vector v = vector_from_json(row, f);
    if (first) {
      m = Matrix(0, static_cast<int>(v.size()));
      first = false;
    }
    require(static_cast<int>(v.size()) == m.cols(), ErrorKind::Parse, "ragged matrix");
    m.append_row(v);
  }
  return m;
}

Json subspace_to_json(const Subspace& s) {
  return Json{{"ambient_dim", s.ambient_dim()}, {"basis", matrix_to_json(s.basis())}};
}

Subspace subspace_from_json(const Json& j, const FieldPtr& field) {
  return guarded("subspace", [&] {
    const int d = j.at("ambient_dim").get<int>();
    require(d >= 0, ErrorKind::Parse, "negative ambient dimension");
    return subspace_list_from(Json::array({j.at("basis")}), field, d).front();
  });
}

Json to_json(const ReductionMap& map) {
  Json j = header("reduction-map");
  j["tower"] = tower_to_json(map.tower());
  j["source_dim"] = map.source_dim();
  j["target_dim"] = map.target_dim();
  return j;
}

ReductionMap reduction_map_from_json(const Json& j) {
  expect_kind(j, "reduction-map");
  return guarded("reduction map", [&] {
    return ReductionMap(tower_from_json(j.at("tower")), j.at("source_dim").get<int>());
  });
}

Json to_json(const PlaneArc& arc) {
  Json j = header("plane-arc");
  j["field"] = field_to_json(*arc.field);
  j["arc_kind"] = to_string(arc.kind);
  j["points"] = Json(arc.points);
  return j;
}

PlaneArc plane_arc_from_json(const Json& j) {
  expect_kind(j, "plane-arc");
  return guarded("plane arc", [&] {
    PlaneArc arc;
    arc.field = field_from_json(j.at("field"));
    arc.kind = parse_plane_kind(j.at("arc_kind").get<std::string>());
    for (const auto& p : j.at("points")) {
      Vector v = vector_from_json(p, *arc.field);
      require(v.size() == 3, ErrorKind::Parse, "plane points have three coordinates");
      arc.points.push_back(std::move(v));
    }
    return arc;
  });
}

Json to_json(const PseudoArc& arc) {
  Json j = header("pseudo-arc");
  j["field"] = field_to_json(*arc.field);
  j["n"] = arc.n;
  j["arc_kind"] = to_string(arc.kind);
  j["elements"] = subspace_list(arc.elements);
  if (arc.witness) {
    j["witness"] = Json{{"tower", tower_to_json(arc.witness->tower)},
                        {"points", Json(arc.witness->plane_arc.points)},
                        {"plane_arc_kind", to_string(arc.witness->plane_arc.kind)},
                        {"identification", matrix_to_json(arc.witness->identification)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

PseudoArc pseudo_arc_from_json(const Json& j, bool verify) {
  expect_kind(j, "pseudo-arc");
  return guarded("pseudo-arc", [&] {
    const FieldPtr field = field_from_json(j.at("field"));
    const int n = j.at("n").get<int>();
    require(n >= 1 && n <= 16, ErrorKind::Parse, "n out of range");
    std::vector<Subspace> elements = subspace_list_from(j.at("elements"), field, 3 * n - 1);
    const ArcKind stored = parse_arc_kind(j.at("arc_kind").get<std::string>());
    PseudoArc arc;
    if (verify) {
      arc = make_pseudo_arc(field, n, std::move(elements));
      require(arc.kind == stored, ErrorKind::Parse, "stored arc kind disagrees with the elements");
    } else {
      arc = PseudoArc{field, n, std::move(elements), stored, std::nullopt};
    }
    if (j.contains("witness") && !j["witness"].is_null()) {
      const Json& w = j["witness"];
      FieldTower tower = tower_from_json(w.at("tower"));
      require(same_field(tower.base(), field) && tower.n() == n, ErrorKind::Parse,
              "witness tower does not match the arc");
      PlaneArc plane{tower.top(), {}, parse_plane_kind(w.at("plane_arc_kind").get<std::string>())};
      for (const auto& p : w.at("points")) plane.points.push_back(vector_from_json(p, *tower.top()));
      Matrix id = matrix_from_json(w.at("identification"), *field);
      require(id.rows() == 3 * n && id.cols() == 3 * n, ErrorKind::Parse, "identification has the wrong size");
      arc.witness = RegularityWitness{std::move(tower), std::move(plane), std::move(id)};
    }
    return arc;
  });
}

Json to_json(const Spread& spread) {
  Json j = header("spread");
  j["field"] = field_to_json(*spread.field);
  j["n"] = spread.n;
  j["elements"] = subspace_list(spread.elements);
  j["host"] = spread.host ? subspace_to_json(*spread.host) : Json(nullptr);
  return j;
}

Spread spread_from_json(const Json& j) {
  expect_kind(j, "spread");
  return guarded("spread", [&] {
    Spread s;
    s.field = field_from_json(j.at("field"));
    s.n = j.at("n").get<int>();
    require(s.n >= 1 && s.n <= 16, ErrorKind::Parse, "n out of range");
    s.elements = subspace_list_from(j.at("elements"), s.field, 2 * s.n - 1);
    if (j.contains("host") && !j["host"].is_null()) {
      s.host = subspace_from_json(j["host"], s.field);
      require(s.host->rank() == 2 * s.n, ErrorKind::Parse, "host must be a (2n-1)-space");
    }
    return s;
  });
}

Json to_json(const Regulus& regulus) {
  Json j = header("regulus");
  const Subspace& g = regulus.generators[0];
  j["field"] = field_to_json(*g.field());
  j["ambient_dim"] = g.ambient_dim();
  j["generators"] = subspace_list({regulus.generators.begin(), regulus.generators.end()});
  j["elements"] = subspace_list(regulus.elements);
  return j;
}

Regulus regulus_from_json(const Json& j, const FieldPtr& field) {
  expect_kind(j, "regulus");
  return guarded("regulus", [&] {
    const FieldPtr f = field ? field : field_from_json(j.at("field"));
    const int d = j.at("ambient_dim").get<int>();
    auto gens = subspace_list_from(j.at("generators"), f, d);
    require(gens.size() == 3, ErrorKind::Parse, "a regulus has three generators");
    return Regulus{{gens[0], gens[1], gens[2]}, subspace_list_from(j.at("elements"), f, d)};
  });
}

Json to_json(const SubspaceSpread& spread) {
  Json j = header("subspace-spread");
  j["field"] = field_to_json(*spread.field);
  j["n"] = spread.n;
  j["ambient_dim"] = spread.ambient_dim;
  j["elements"] = subspace_list(spread.elements);
  return j;
}

Json to_json(const DualArc& dual) {
  Json j = header("dual-arc");
  j["betas"] = subspace_list(dual.betas);
  j["gammas"] = Json::array();
  for (const auto& g : dual.gammas) j["gammas"].push_back(to_json(g));
  j["partners"] = Json(dual.partners);
  j["nucleus_appended"] = dual.nucleus_appended;
  return j;
}

Json to_json(const KArcReport& r) {
  Json j = header("karc-report");
  j["ok"] = r.ok;
  j["no_three_collinear"] = r.no_three_collinear;
  j["within_bound"] = r.within_bound;
  j["k"] = r.k;
  j["bound"] = r.bound;
  j["collinear"] = optional_json(r.collinear);
  return j;
}

Json to_json(const ArcReport& r) {
  Json j = header("arc-report");
  j["ok"] = r.ok;
  j["generating"] = r.generating;
  j["within_bound"] = r.within_bound;
  j["k"] = r.k;
  j["bound"] = r.bound;
  j["arc_kind"] = to_string(r.kind);
  j["failing_triple"] = optional_json(r.failing_triple);
  return j;
}

Json to_json(const SpreadReport& r) {
  Json j = header("spread-report");
  j["ok"] = r.ok;
  j["count_ok"] = r.count_ok;
  j["skew_ok"] = r.skew_ok;
  j["cover_ok"] = r.cover_ok;
  j["expected_size"] = r.expected_size;
  j["actual_size"] = r.actual_size;
  j["uncovered_points"] = r.uncovered_points;
  j["meeting_pair"] = optional_json(r.meeting_pair);
  j["failure"] = r.failure;
  return j;
}

Json to_json(const RegularityReport& r) {
  Json j = header("regularity-report");
  j["regular"] = r.regular;
  j["vacuous"] = r.vacuous;
  j["full_sweep"] = r.full_sweep;
  j["triples_checked"] = r.triples_checked;
  j["witness"] = optional_json(r.witness);
  j["missing"] = r.missing ? subspace_to_json(*r.missing) : Json(nullptr);
  return j;
}

Json to_json(const TransversalResult& r) {
  Json j = header("transversals");
  j["ok"] = r.ok;
  j["lines"] = Json::array();
  for (const auto& l : r.lines) j["lines"].push_back(subspace_to_json(l));
  if (!r.lines.empty()) j["top_field"] = field_to_json(*r.lines.front().field());
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  j["failure"] = r.failure;
  return j;
}

Json to_json(const RecognitionResult& r) {
  Json j = header("recognition");
  j["recognized"] = r.match.has_value();
  j["choices_tried"] = r.choices_tried;
  j["choices_succeeded"] = r.choices_succeeded;
  j["choices_agree"] = r.choices_agree;
  if (r.match) {
    const Recognition& m = *r.match;
    j["plane_arc"] = to_json(m.arc);
    j["identification"] = matrix_to_json(m.identification);
    j["structure"] = matrix_to_json(m.structure);
    j["i"] = m.i;
    j["j"] = m.j;
    j["regulus_partners"] = Json(m.regulus_partners);
  } else {
    j["plane_arc"] = nullptr;
  }
  if (r.not_regular) {
    j["not_regular"] = Json{{"index", r.not_regular->first}, {"report", to_json(r.not_regular->second)}};
  } else {
    j["not_regular"] = nullptr;
  }
  return j;
}

Json to_json(const TheoremReport& r) {
  Json j = header("theorem-report");
  j["theorem"] = to_string(r.id);
  j["q"] = r.q;
  j["n"] = r.n;
  j["hypothesis"] = Json{{"q_even", r.hypothesis.q_even},
                         {"h_above_one", r.hypothesis.h_above_one},
                         {"n_prime", r.hypothesis.n_prime},
                         {"holds", r.hypothesis.holds()}};
  j["threshold"] = r.threshold;
  j["given"] = Json(r.given);
  j["spreads"] = Json::array();
  for (const auto& s : r.spreads) {
    j["spreads"].push_back(Json{{"index", s.index},
                                {"is_spread", s.is_spread},
                                {"regular", s.regular},
                                {"vacuous", s.vacuous},
                                {"witness", optional_json(s.witness)}});
  }
  j["recognized"] = r.recognized;
  j["recognition_i"] = optional_json(r.recognition_i);
  j["recognition_j"] = optional_json(r.recognition_j);
  j["not_regular_gamma"] = optional_json(r.not_regular_gamma);
  j["choices_tried"] = r.choices_tried;
  j["forward"] = to_string(r.forward);
  j["converse"] = to_string(r.converse);
  j["verdict"] = r.verdict;
  j["exit_code"] = r.exit_code();
  j["elapsed_ms"] = static_cast<std::uint64_t>(r.seconds * 1000.0);
  return j;
}

Json to_json(const DesignSpec& spec) {
  Json j = header("design");
  j["v"] = spec.v;
  j["t"] = spec.t;
  j["k"] = spec.k;
  j["lambda"] = spec.lambda;
  j["blocks"] = Json(spec.blocks);
  j["exceptions"] = optional_json(spec.exceptions);
  return j;
}

DesignSpec design_spec_from_json(const Json& j) {
  expect_kind(j, "design");
  return guarded("design", [&] {
    DesignSpec spec;
    spec.v = j.at("v").get<std::size_t>();
    spec.t = j.at("t").get<int>();
    spec.k = j.at("k").get<std::size_t>();
    spec.lambda = j.at("lambda").get<std::size_t>();
    spec.blocks = j.at("blocks").get<std::vector<std::vector<std::size_t>>>();
    if (j.contains("exceptions") && !j["exceptions"].is_null())
      spec.exceptions = j["exceptions"].get<std::vector<std::size_t>>();
    return spec;
  });
}

Json to_json(const DesignCheckReport& r) {
  Json j = header("design-report");
  j["ok"] = r.ok;
  j["block_sizes_ok"] = r.block_sizes_ok;
  j["bad_block"] = optional_json(r.bad_block);
  j["subsets_checked"] = r.subsets_checked;
  j["violations"] = r.violations;
  j["first_violation"] = optional_json(r.first_violation);
  j["first_violation_count"] = r.first_violation_count;
  j["failure"] = r.failure;
  return j;
}

Json to_json(const RegulusBlocks& r) {
  Json j = header("regulus-blocks");
  j["design"] = to_json(r.design);
  j["sizes_ok"] = r.sizes_ok;
  Json profile = Json::object();
  for (const auto& [m, c] : r.profile) profile[std::to_string(m)] = c;
  j["lambda_profile"] = profile;
  return j;
}

Json to_json(const PlaneModel& m) {
  Json j = header("plane-model");
  j["ok"] = m.ok;
  j["points"] = m.point_count;
  j["lines"] = m.lines.size();
  j["line_points"] = Json(m.line_points);
  j["failure"] = m.failure;
  return j;
}

}  // namespace pal
