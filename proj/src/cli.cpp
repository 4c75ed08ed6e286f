#include "pal/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "pal/serialize.hpp"

namespace pal {

namespace {

constexpr std::uint64_t kDefaultOrderCap = 64;

FieldPtr field_for_q(int q) {
  require(q >= 2, ErrorKind::InvalidArgument, "q must be a prime power >= 2");
  if (q % 2 == 0) {
    int h = 0;
    while ((1 << h) < q) ++h;
    require((1 << h) == q, ErrorKind::InvalidArgument, "even q must be a power of 2");
    return Field::make(h);
  }
  return Field::prime(q);
}

void check_order_cap(int q, int n, bool force) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be >= 1");
  std::uint64_t order = 1;
  for (int i = 0; i < n; ++i) order *= static_cast<std::uint64_t>(q);
  require(force || order <= kDefaultOrderCap, ErrorKind::CapExceeded,
          "q^n = " + std::to_string(order) + " exceeds the default cap of 64 (use --force)");
}

PlaneArc plane_source(const FieldPtr& top, const std::string& source) {
  const std::string prefix = "hyperoval-from:";
  if (source.rfind(prefix, 0) == 0) {
    const PlaneArc oval = plane_source(top, source.substr(prefix.size()));
    require(oval.kind == PlaneArcKind::Oval, ErrorKind::InvalidArgument,
            "hyperoval-from needs an oval source");
    return oval_nucleus_and_complete(oval).hyperoval;
  }
  if (source == "conic") return conic(top);
  if (source.rfind("translation:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(source.substr(12));
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, "translation:k needs an integer k");
    }
    return translation_oval(top, k);
  }
  fail(ErrorKind::InvalidArgument, "unknown source '" + source + "'");
}

PseudoArc construct(int q, int n, const std::string& source, bool force) {
  check_order_cap(q, n, force);
  const FieldPtr base = field_for_q(q);
  require(base->characteristic() == 2 || n == 1, ErrorKind::InvalidArgument,
          "odd q is supported only for n = 1 (plane arcs)");
  const FieldTower tower(base, n);
  return reduce_arc(plane_source(tower.top(), source), ReductionMap(tower));
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      require(used == item.size() && v >= 0, ErrorKind::InvalidArgument, "bad index '" + item + "'");
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      fail(ErrorKind::InvalidArgument, "bad index '" + item + "'");
    }
  }
  return out;
}

std::array<std::size_t, 3> three_indices(const std::string& text, std::size_t size) {
  const auto v = parse_indices(text);
  require(v.size() == 3, ErrorKind::InvalidArgument, "expected three indices a,b,c");
  for (auto x : v) require(x < size, ErrorKind::InvalidArgument, "index out of range");
  return {v[0], v[1], v[2]};
}

class Emitter {
 public:
  Emitter(std::ostream& out, std::string path) : out_(out), path_(std::move(path)) {}
  void operator()(const Json& j) const {
    if (path_.empty()) out_ << dump(j);
    else write_json_file(path_, j);
  }

 private:
  std::ostream& out_;
  std::string path_;
};

void check_arc_size(const PseudoArc& arc, bool force) {
  check_order_cap(static_cast<int>(arc.q()), arc.n, force);
}

Json spread_summary(const Spread& s) {
  const SpreadReport rep = verify_spread(s);
  Json j = to_json(s);
  j["report"] = to_json(rep);
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regular pseudo-ovals and pseudo-hyperovals by field reduction"};
  app.require_subcommand(1);
  app.fallthrough();
  bool force = false;
  std::string output;
  app.add_flag("--force", force, "Lift the q^n <= 64 cap");

  // construct
  int q = 0, n = 1;
  std::string source = "conic";
  auto* construct_cmd = app.add_subcommand("construct", "Build a regular pseudo-arc by field reduction");
  construct_cmd->add_option("--q", q, "Order of the base field")->required();
  construct_cmd->add_option("--n", n, "Extension degree")->default_val(1);
  construct_cmd->add_option("--source", source, "conic | translation:k | hyperoval-from:<oval source>")
      ->default_val("conic");
  construct_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  std::string input;
  auto* verify_cmd = app.add_subcommand("verify", "Verify an arc, plane arc, spread or design file");
  verify_cmd->add_option("file", input)->required();
  verify_cmd->add_option("-o,--output", output);

  auto* tangents_cmd = app.add_subcommand("tangents", "Tangent spaces and nucleus of a pseudo-oval");
  tangents_cmd->add_option("file", input)->required();
  tangents_cmd->add_option("-o,--output", output);

  std::size_t index = 0;
  bool all = false, from_nucleus = false, tangent_odd = false, random_comp = false;
  std::uint64_t seed = 1;
  auto* derive_cmd = app.add_subcommand("derive", "Derived spreads of a pseudo-arc");
  derive_cmd->add_option("file", input)->required();
  auto* index_opt = derive_cmd->add_option("--index", index, "Element to project from");
  derive_cmd->add_flag("--all", all, "Every derived spread");
  derive_cmd->add_flag("--nucleus", from_nucleus, "Project a pseudo-oval from its nucleus");
  derive_cmd->add_flag("--tangent-odd", tangent_odd, "Tangent-space spread (q odd) at --index");
  derive_cmd->add_flag("--random-complement", random_comp, "Use an explicit random complement");
  derive_cmd->add_option("--seed", seed, "Seed for --random-complement")->default_val(1);
  derive_cmd->add_option("-o,--output", output, "Output file, or directory with --all");

  auto* dualize_cmd = app.add_subcommand("dualize", "Dual arc and its spreads Gamma_i");
  dualize_cmd->add_option("file", input)->required();
  dualize_cmd->add_option("-o,--output", output);

  std::string elements, pair, switch_elems;
  bool opposite = false;
  auto* regulus_cmd = app.add_subcommand("regulus", "Reguli of a spread");
  regulus_cmd->add_option("file", input)->required();
  regulus_cmd->add_option("--elements", elements, "a,b,c: the regulus through three elements");
  regulus_cmd->add_option("--pair", pair, "a,b: all reguli through a pair");
  regulus_cmd->add_flag("--opposite", opposite, "Emit the opposite regulus (n = 2)");
  regulus_cmd->add_option("--switch", switch_elems, "a,b,c: replace that regulus by its opposite");
  regulus_cmd->add_option("-o,--output", output);

  std::string mode = "auto";
  bool transversals = false;
  auto* regular_cmd = app.add_subcommand("check-regular", "Regularity of a spread");
  regular_cmd->add_option("file", input)->required();
  regular_cmd->add_option("--mode", mode, "auto | full | fixed")->default_val("auto");
  regular_cmd->add_flag("--transversals", transversals, "Also compute the transversal lines");
  regular_cmd->add_option("-o,--output", output);

  std::string theorem_id = "6.1", given;
  std::size_t rho = 0;
  int delta0 = 0;
  auto* theorem_cmd = app.add_subcommand("theorem", "Check a characterization theorem on an arc");
  theorem_cmd->add_option("file", input)->required();
  theorem_cmd->add_option("--id", theorem_id, "6.1 | 6.2 | 6.3 | 7.1")->default_val("6.1");
  theorem_cmd->add_option("--rho", rho, "Number of given Delta spreads (6.3, 7.1)");
  theorem_cmd->add_option("--given", given, "Comma-separated given indices (6.3, 7.1)");
  theorem_cmd->add_option("--delta0", delta0, "Slack parameter for 7.1")->default_val(0);
  theorem_cmd->add_option("-o,--output", output);

  std::string builtin, exceptions;
  long long delete_block = -1;
  bool emit_only = false;
  auto* design_cmd = app.add_subcommand("design", "Check a t-design");
  design_cmd->add_option("file", input, "Design file");
  design_cmd->add_option("--builtin", builtin, "pg2 | plane-model | regulus | regulus-blocks");
  design_cmd->add_option("--q", q, "Base field order for --builtin");
  design_cmd->add_option("--n", n, "Extension degree for --builtin")->default_val(1);
  design_cmd->add_option("--exceptions", exceptions, "Comma-separated exceptional points");
  design_cmd->add_option("--delete-block", delete_block, "Drop one block before checking");
  design_cmd->add_flag("--emit", emit_only, "Write the design instead of checking it");
  design_cmd->add_option("-o,--output", output);

  auto* report_cmd = app.add_subcommand("report", "Full pipeline summary for an arc");
  report_cmd->add_option("file", input)->required();
  report_cmd->add_option("-o,--output", output);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), const_cast<char**>(argv.data()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const Emitter emit(out, output);
  try {
    if (construct_cmd->parsed()) {
      emit(to_json(construct(q, n, source, force)));
      return 0;
    }

    if (verify_cmd->parsed()) {
      const Json j = read_json_file(input);
      const std::string kind = kind_of(j);
      if (kind == "pseudo-arc") {
        const PseudoArc arc = pseudo_arc_from_json(j, false);
        check_arc_size(arc, force);
        const ArcReport rep = verify_pseudo_arc(arc.field, arc.n, arc.elements);
        Json r = to_json(rep);
        bool ok = rep.ok && rep.kind == arc.kind;
        r["stored_kind_matches"] = rep.kind == arc.kind;
        if (arc.witness) {
          const bool w = witness_reproduces(arc, *arc.witness);
          r["witness_reproduces"] = w;
          ok = ok && w;
        } else {
          r["witness_reproduces"] = nullptr;
        }
        emit(r);
        return ok ? 0 : 1;
      }
      if (kind == "plane-arc") {
        const PlaneArc arc = plane_arc_from_json(j);
        const KArcReport rep = verify_karc(arc.field, arc.points);
        emit(to_json(rep));
        return rep.ok ? 0 : 1;
      }
      if (kind == "spread") {
        const SpreadReport rep = verify_spread(spread_from_json(j));
        emit(to_json(rep));
        return rep.ok ? 0 : 1;
      }
      if (kind == "design") {
        const DesignCheckReport rep = check_design(design_spec_from_json(j));
        emit(to_json(rep));
        return rep.ok ? 0 : 1;
      }
      fail(ErrorKind::Parse, "verify does not handle '" + kind + "' files");
    }

    if (tangents_cmd->parsed()) {
      const PseudoArc arc = pseudo_arc_from_json(read_json_file(input));
      check_arc_size(arc, force);
      const auto tangents = tangent_spaces(arc);
      Json r = Json::object();
      r["schema"] = kSchema;
      r["kind"] = "tangents";
      r["field"] = field_to_json(*arc.field);
      r["n"] = arc.n;
      r["tangents"] = Json::array();
      for (const auto& t : tangents) r["tangents"].push_back(subspace_to_json(t));
      r["nucleus"] = arc.field->characteristic() == 2 ? subspace_to_json(nucleus(arc, tangents)) : Json(nullptr);
      emit(r);
      return 0;
    }

    if (derive_cmd->parsed()) {
      const PseudoArc arc = pseudo_arc_from_json(read_json_file(input));
      check_arc_size(arc, force);
      std::mt19937_64 rng(seed);
      auto complement_for = [&](const Subspace& center) -> std::optional<Subspace> {
        if (!random_comp) return std::nullopt;
        return random_complement(center, rng);
      };
      if (all) {
        std::vector<Spread> spreads;
        for (std::size_t i = 0; i < arc.size(); ++i)
          spreads.push_back(derive_spread_from_element(arc, i, complement_for(arc.elements[i])));
        bool ok = true;
        Json list = Json::array();
        for (std::size_t i = 0; i < spreads.size(); ++i) {
          Json s = spread_summary(spreads[i]);
          ok = ok && s["report"]["ok"].get<bool>();
          list.push_back(std::move(s));
        }
        if (!output.empty()) {
          std::filesystem::create_directories(output);
          Json index_json = Json::object();
          index_json["schema"] = kSchema;
          index_json["kind"] = "spread-files";
          index_json["files"] = Json::array();
          for (std::size_t i = 0; i < spreads.size(); ++i) {
            const std::string name = "delta_" + std::to_string(i) + ".json";
            write_json_file((std::filesystem::path(output) / name).string(), to_json(spreads[i]));
            index_json["files"].push_back(name);
          }
          out << dump(index_json);
        } else {
          Json r = Json::object();
          r["schema"] = kSchema;
          r["kind"] = "spread-list";
          r["spreads"] = list;
          out << dump(r);
        }
        return ok ? 0 : 1;
      }
      Spread s;
      if (from_nucleus) {
        s = derive_spread_from_nucleus(arc, random_comp ? std::optional<Subspace>(random_complement(nucleus(arc), rng))
                                                        : std::nullopt);
      } else {
        require(index_opt->count() > 0, ErrorKind::InvalidArgument, "derive needs --index, --all or --nucleus");
        require(index < arc.size(), ErrorKind::InvalidArgument, "index out of range");
        s = tangent_odd ? derive_tangent_spread_odd(arc, index)
                        : derive_spread_from_element(arc, index, complement_for(arc.elements[index]));
      }
      const SpreadReport rep = verify_spread(s);
      emit(to_json(s));
      return rep.ok ? 0 : 1;
    }

    if (dualize_cmd->parsed()) {
      const PseudoArc arc = pseudo_arc_from_json(read_json_file(input));
      check_arc_size(arc, force);
      const DualArc dual = dual_arc(arc);
      Json r = to_json(dual);
      r["gamma_reports"] = Json::array();
      bool ok = true;
      for (const auto& g : dual.gammas) {
        const SpreadReport rep = verify_spread(g);
        ok = ok && rep.ok;
        r["gamma_reports"].push_back(to_json(rep));
      }
      emit(r);
      return ok ? 0 : 1;
    }

    if (regulus_cmd->parsed()) {
      const Spread s = spread_from_json(read_json_file(input));
      if (!switch_elems.empty()) {
        const auto t = three_indices(switch_elems, s.size());
        const Regulus r = regulus_through(s.elements[t[0]], s.elements[t[1]], s.elements[t[2]]);
        emit(to_json(switch_regulus(s, r)));
        return 0;
      }
      if (!pair.empty()) {
        const auto p = parse_indices(pair);
        require(p.size() == 2 && p[0] < s.size() && p[1] < s.size() && p[0] != p[1],
                ErrorKind::InvalidArgument, "--pair needs two distinct indices");
        const PairReguli pr = reguli_through_pair(s, p[0], p[1]);
        Json r = Json::object();
        r["schema"] = kSchema;
        r["kind"] = "pair-reguli";
        r["count"] = pr.reguli.size();
        r["all_contained"] = pr.all_contained;
        r["reguli"] = Json::array();
        for (const auto& reg : pr.reguli) r["reguli"].push_back(to_json(reg));
        emit(r);
        return 0;
      }
      require(!elements.empty(), ErrorKind::InvalidArgument, "regulus needs --elements, --pair or --switch");
      const auto t = three_indices(elements, s.size());
      Regulus r = regulus_through(s.elements[t[0]], s.elements[t[1]], s.elements[t[2]]);
      if (opposite) r = opposite_regulus(r);
      Json j = to_json(r);
      const SubspaceIndex idx = index_of(s.elements);
      j["contained"] = std::all_of(r.elements.begin(), r.elements.end(),
                                   [&](const Subspace& e) { return idx.count(e) > 0; });
      emit(j);
      return 0;
    }

    if (regular_cmd->parsed()) {
      const Spread s = spread_from_json(read_json_file(input));
      check_order_cap(static_cast<int>(s.field->size()), s.n, force);
      const SpreadReport sr = verify_spread(s);
      if (!sr.ok) {
        emit(to_json(sr));
        return 1;
      }
      SweepMode sweep = SweepMode::Auto;
      if (mode == "full") sweep = SweepMode::Full;
      else if (mode == "fixed") sweep = SweepMode::FixedElement;
      else require(mode == "auto", ErrorKind::InvalidArgument, "mode must be auto, full or fixed");
      const RegularityReport rep = is_regular_spread(s, sweep);
      Json r = to_json(rep);
      if (transversals) r["transversals"] = to_json(spread_transversals(s, FieldTower(s.field, s.n)));
      emit(r);
      return rep.regular ? 0 : 1;
    }

    if (theorem_cmd->parsed()) {
      const auto id = parse_theorem_id(theorem_id);
      require(id.has_value(), ErrorKind::InvalidArgument, "unknown theorem id '" + theorem_id + "'");
      const PseudoArc arc = pseudo_arc_from_json(read_json_file(input));
      check_arc_size(arc, force);
      TheoremParams params;
      params.id = *id;
      params.rho = rho;
      params.delta0 = delta0;
      params.given = parse_indices(given);
      const TheoremReport rep = check_theorem(arc, params);
      emit(to_json(rep));
      return rep.exit_code();
    }

    if (design_cmd->parsed()) {
      DesignSpec spec;
      if (!builtin.empty()) {
        require(q >= 2, ErrorKind::InvalidArgument, "--builtin needs --q");
        check_order_cap(q, n, force);
        if (builtin == "pg2") {
          spec = projective_plane_design(FieldTower(field_for_q(q), n).top());
        } else if (builtin == "regulus") {
          spec = regulus_design(desarguesian_spread(FieldTower(field_for_q(q), n)));
        } else if (builtin == "plane-model" || builtin == "regulus-blocks") {
          const PseudoArc arc = construct(q, n, "hyperoval-from:conic", force);
          const DualArc dual = dual_arc(arc);
          if (builtin == "regulus-blocks") {
            const RegulusBlocks rb = regulus_blocks(dual);
            if (emit_only) {
              emit(to_json(rb.design));
              return 0;
            }
            emit(to_json(rb));
            return rb.sizes_ok ? 0 : 1;
          }
          const SigmaResult sig = sigma_from_dual(dual, 0, 1, FieldTower(arc.field, arc.n));
          spec = plane_model_design(plane_model(sig.sigma));
        } else {
          fail(ErrorKind::InvalidArgument, "unknown builtin '" + builtin + "'");
        }
      } else {
        require(!input.empty(), ErrorKind::InvalidArgument, "design needs a file or --builtin");
        spec = design_spec_from_json(read_json_file(input));
      }
      if (!exceptions.empty()) spec.exceptions = parse_indices(exceptions);
      if (delete_block >= 0) {
        require(static_cast<std::size_t>(delete_block) < spec.blocks.size(), ErrorKind::InvalidArgument,
                "--delete-block out of range");
        spec.blocks.erase(spec.blocks.begin() + delete_block);
      }
      if (emit_only) {
        emit(to_json(spec));
        return 0;
      }
      const DesignCheckReport rep = check_design(spec);
      emit(to_json(rep));
      return rep.ok ? 0 : 1;
    }

    if (report_cmd->parsed()) {
      const PseudoArc arc = pseudo_arc_from_json(read_json_file(input), false);
      check_arc_size(arc, force);
      const ArcReport ar = verify_pseudo_arc(arc.field, arc.n, arc.elements);
      Json r = Json::object();
      r["schema"] = kSchema;
      r["kind"] = "pipeline-report";
      r["arc"] = to_json(ar);
      r["witness_reproduces"] = arc.witness ? Json(witness_reproduces(arc, *arc.witness)) : Json(nullptr);
      if (!ar.ok) {
        emit(r);
        return 1;
      }
      const PseudoArc checked{arc.field, arc.n, arc.elements, ar.kind, arc.witness};
      Json deltas = Json::array();
      std::vector<bool> delta_regular;
      for (std::size_t i = 0; i < checked.size(); ++i) {
        const Spread d = derive_spread_from_element(checked, i);
        const bool ok = verify_spread(d).ok;
        const bool reg = ok && is_regular_spread(d, SweepMode::Full).regular;
        delta_regular.push_back(reg);
        deltas.push_back(Json{{"index", i}, {"is_spread", ok}, {"regular", reg}});
      }
      r["derived_spreads"] = deltas;
      if (checked.kind != ArcKind::GeneralizedArc) {
        const DualArc dual = dual_arc(checked);
        bool agree = true;
        Json gammas = Json::array();
        for (std::size_t i = 0; i < dual.gammas.size(); ++i) {
          const bool ok = verify_spread(dual.gammas[i]).ok;
          const bool reg = ok && is_regular_spread(dual.gammas[i], SweepMode::Full).regular;
          if (i < delta_regular.size() && reg != delta_regular[i]) agree = false;
          gammas.push_back(Json{{"index", i}, {"is_spread", ok}, {"regular", reg}});
        }
        r["dual_spreads"] = gammas;
        r["dual_agrees_with_derived"] = agree;
        if (checked.n >= 2) r["recognition"] = to_json(recognize_from_dual(checked, dual));
      }
      emit(r);
      return 0;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace pal
