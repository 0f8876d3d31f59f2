#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fuzzygh/fuzzygh.hpp"
#include "fuzzygh/io.hpp"

namespace fuzzygh::cli {

using io::Json;

enum Exit : int { kOk = 0, kFinding = 1, kUsage = 2 };

inline std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

inline std::vector<std::size_t> label_indices(const FuzzySpace& s, const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& l : split_labels(text)) out.push_back(s.index_of(l));
  if (out.empty()) throw std::invalid_argument("empty label list");
  return out;
}

inline Json labels_of(const FuzzySpace& s, const std::vector<std::size_t>& idx) {
  Json j = Json::array();
  for (auto i : idx) j.push_back(s.label(i));
  return j;
}

inline Json to_json(const AxiomReport& r, const FuzzySpace& s) {
  Json j;
  j["pass"] = r.passes();
  j["km1"] = r.km1;
  j["km2"] = r.km2;
  j["km3"] = r.km3;
  j["km5"] = r.km5;
  j["na1"] = r.na1;
  j["na2"] = r.na2;
  j["exact"] = r.exact;
  if (std::isfinite(r.na1_worst_residual)) j["na1_worst_residual"] = r.na1_worst_residual;
  else j["na1_worst_residual"] = nullptr;
  if (r.witness && !r.na1) {
    const auto& w = *r.witness;
    j["na1_witness"] = {{"x", s.label(w.i)}, {"y", s.label(w.j)}, {"z", s.label(w.k)}, {"t", w.t},
                        {"lhs", w.lhs}, {"rhs", w.rhs}};
  }
  Json km2 = Json::array();
  for (auto [a, b] : r.km2_failures) km2.push_back(Json::array({s.label(a), s.label(b)}));
  j["km2_failures"] = std::move(km2);
  if (r.na2_failure) j["na2_failure"] = Json::array({s.label(r.na2_failure->first), s.label(r.na2_failure->second)});
  j["tol"] = r.tol;
  j["grid"] = io::to_json(r.grid);
  return j;
}

inline Json to_json(const NetCertificate& c, const FuzzySpace& s) {
  Json j;
  j["t"] = c.t;
  j["eps"] = c.eps;
  j["size"] = c.indices.size();
  j["net"] = labels_of(s, c.indices);
  j["minimal"] = c.minimal;
  Json cov = Json::object();
  for (std::size_t x = 0; x < c.witness.size(); ++x) cov[s.label(x)] = s.label(c.witness[x]);
  j["covered_by"] = std::move(cov);
  j["verified"] = verify_certificate(s, c);
  return j;
}

inline Json to_json(const LowerBound& lb) {
  Json j;
  j["value"] = lb.value;
  j["method"] = lb.method;
  j["eps"] = lb.eps ? Json(*lb.eps) : Json(nullptr);
  j["witness"] = io::to_json(lb.witness);
  return j;
}

inline Json to_json(const UpperBound& ub) {
  Json j;
  j["upper"] = ub.upper;
  j["best_found"] = ub.best_found;
  j["resolution"] = ub.resolution;
  j["slack"] = ub.slack;
  j["variables"] = ub.variables;
  j["cells_explored"] = ub.boxes_explored;
  j["incumbent"] = ub.incumbent;
  j["relaxation"] = "single-t NA1 constraints on the union; cross-t coupling ignored";
  return j;
}

inline Json to_json(const PigeonholeTable& tab) {
  Json j;
  j["t"] = tab.t;
  j["eps"] = tab.eps;
  j["cell_width"] = tab.cell_width;
  j["matrices"] = tab.matrices;
  Json groups = Json::array();
  for (const auto& g : tab.groups) groups.push_back(g);
  j["groups"] = std::move(groups);
  j["selected"] = tab.selected;
  return j;
}

inline Json to_json(const GroupCertificate& c) {
  Json j;
  j["target"] = c.target;
  j["all_ok"] = c.all_ok;
  Json pairs = Json::array();
  for (const auto& p : c.pairs) {
    Json q{{"n", p.n}, {"m", p.m}, {"ok", p.ok}, {"hausdorff", p.hausdorff}, {"delta", p.delta}};
    if (!p.error.empty()) q["error"] = p.error;
    pairs.push_back(std::move(q));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

inline Json to_json(const RatioReport& r) {
  Json j;
  j["general_pass"] = r.general_pass;
  j["product_pass"] = r.product_pass;
  j["instances"] = r.instances;
  auto w = [](const std::optional<RatioWitness>& w) -> Json {
    if (!w) return nullptr;
    return {{"n", w->n}, {"m", w->m}, {"i", w->i}, {"j", w->j}, {"s", w->s}, {"lhs", w->lhs}, {"rhs", w->rhs}};
  };
  j["general_witness"] = w(r.general_witness);
  j["product_witness"] = w(r.product_witness);
  j["s_grid"] = r.s_grid.ts;
  j["scope"] = "registered nets only";
  return j;
}

inline Json to_json(const FloorReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["positive"] = r.positive;
  j["worst_slack"] = r.worst_slack;
  Json v = Json::array();
  for (const auto& f : r.violations)
    v.push_back({{"space", f.space}, {"s", f.s}, {"floor", f.floor}, {"diameter", f.diameter}});
  j["violations"] = std::move(v);
  j["grid"] = io::to_json(r.grid);
  return j;
}

/// Runs one command; the JSON report goes to `out`, diagnostics and the
/// short summary to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Gromov-Hausdorff tools for finite fuzzy metric spaces", "fuzzygh"};
  app.require_subcommand(1);

  std::string grid_text = "log:1e-3:1e3:64";
  double tol = kTol;
  std::size_t exact_limit = kDefaultExactLimit;
  app.add_option("--grid", grid_text, "explicit list a,b,c or log:<lo>:<hi>:<count>");
  app.add_option("--tol", tol, "comparison tolerance");
  app.add_option("--exact-limit", exact_limit, "largest space searched exhaustively for minimal nets");

  std::string space_file, left_file, right_file, floor_file, family_dir, a_text, b_text, net_left, net_right, norm_name;
  std::string metrics_file, out_dir, example_name;
  double t = 1.0, eps = 0.1, resolution = 0.01, K = 0.0, step = 0.01;
  std::size_t count = 6, max_vars = kDefaultMaxCrossVariables;
  bool verify = false, certify = false, envelope = false;

  auto* check = app.add_subcommand("check", "verify KM1-KM5, NA1 and NA2");
  check->add_option("--space", space_file)->required();
  auto* diam = app.add_subcommand("diam", "t-diameter");
  diam->add_option("--space", space_file)->required();
  diam->add_option("--t", t)->required();
  auto* haus = app.add_subcommand("hausdorff", "Hausdorff fuzzy distance between two subsets");
  haus->add_option("--space", space_file)->required();
  haus->add_option("--a", a_text, "comma-separated labels")->required();
  haus->add_option("--b", b_text, "comma-separated labels")->required();
  haus->add_option("--t", t)->required();
  auto* eps_opt = haus->add_option("--eps", eps, "also test the two covering conditions at 1-eps");
  auto* glue = app.add_subcommand("glue", "constant gluing of two spaces");
  glue->add_option("--left", left_file)->required();
  glue->add_option("--right", right_file)->required();
  auto* glue_floor = glue->add_option("--floor", floor_file, "function document for C(s); default zero");
  glue->add_flag("--envelope", envelope, "use the pointwise minimum of the two diameters")->excludes(glue_floor);
  auto* glue_t = glue->add_option("--t", t, "also report H at this t");
  auto* md = app.add_subcommand("mdelta", "two-branch gluing from matched nets");
  md->add_option("--left", left_file)->required();
  md->add_option("--right", right_file)->required();
  md->add_option("--t", t)->required();
  md->add_option("--eps", eps)->required();
  md->add_option("--net-left", net_left, "labels; default all points");
  md->add_option("--net-right", net_right, "labels; default all points");
  md->add_option("--floor", floor_file, "function document for C(s); default the diameter envelope");
  auto* gh = app.add_subcommand("gh-bounds", "certified lower and upper bounds for M_GH");
  gh->add_option("--left", left_file)->required();
  gh->add_option("--right", right_file)->required();
  gh->add_option("--t", t)->required();
  gh->add_option("--resolution", resolution, "cell width of the upper-bound search");
  gh->add_option("--max-vars", max_vars, "largest cross matrix accepted");
  auto* net = app.add_subcommand("net", "minimal (t,eps)-net");
  net->add_option("--space", space_file)->required();
  net->add_option("--t", t)->required();
  net->add_option("--eps", eps)->required();
  auto* cover = app.add_subcommand("cover", "cover number Cov(X, eps, t)");
  cover->add_option("--space", space_file)->required();
  cover->add_option("--eps", eps)->required();
  cover->add_option("--t", t)->required();
  auto* pig = app.add_subcommand("pigeonhole", "integer-part grouping of a family");
  pig->add_option("--family", family_dir)->required();
  pig->add_option("--t", t)->required();
  pig->add_option("--eps", eps)->required();
  pig->add_option("--floor", floor_file, "function document overriding the family floor");
  pig->add_flag("--certify", certify, "build the gluing for every pair of the selected group");
  auto* bridge = app.add_subcommand("bridge", "standard-metric family hypotheses");
  bridge->add_option("--metrics", metrics_file, "JSON {\"K\": ..., \"metrics\": [matrix, ...]}")->required();
  auto* k_opt = bridge->add_option("--K", K, "diameter bound; overrides the file");
  auto* example = app.add_subcommand("example", "built-in example families");
  example->add_option("name", example_name)->required()->check(CLI::IsMember({"no-cauchy"}));
  example->add_option("--count", count);
  example->add_flag("--verify", verify);
  example->add_option("--out", out_dir, "write the family to this directory");
  auto* tn = app.add_subcommand("tnorm", "t-norm axioms and property TN1");
  tn->add_option("--norm", norm_name)->required()->check(CLI::IsMember({"minimum", "product", "lukasiewicz"}));
  tn->add_option("--step", step, "grid spacing on [0,1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Json report;
  bool pass = true;
  try {
    const GridSpec grid = GridSpec::parse(grid_text);
    if (check->parsed()) {
      const auto s = io::load_space(space_file);
      const auto r = check_axioms(s, grid, tol);
      report["command"] = "check";
      report["space"] = s.name();
      report["tnorm"] = s.norm().name();
      report["result"] = to_json(r, s);
      pass = r.passes();
      err << s.name() << ": " << (pass ? "all axioms hold" : "axiom violation") << "\n";
      if (r.witness && !r.na1) {
        err << "  NA1 witness t=" << r.witness->t << ": " << r.witness->lhs << " < " << r.witness->rhs << "\n";
      }
    } else if (diam->parsed()) {
      const auto s = io::load_space(space_file);
      report["command"] = "diam";
      report["space"] = s.name();
      report["t"] = t;
      report["diameter"] = t_diameter(s, t);
    } else if (haus->parsed()) {
      const auto s = io::load_space(space_file);
      const auto a = Subset(s, label_indices(s, a_text));
      const auto b = Subset(s, label_indices(s, b_text));
      report["command"] = "hausdorff";
      report["space"] = s.name();
      report["a"] = labels_of(s, a.indices());
      report["b"] = labels_of(s, b.indices());
      report["t"] = t;
      report["hausdorff"] = hausdorff_fuzzy(s, a, b, t);
      if (eps_opt->count() > 0) {
        const auto c = hausdorff_conditions(s, a, b, t, eps);
        report["eps"] = eps;
        report["conditions"] = {{"holds", c.holds},
                                {"uncovered_in_a", labels_of(s, c.uncovered_in_a)},
                                {"uncovered_in_b", labels_of(s, c.uncovered_in_b)}};
        pass = c.holds;
      }
    } else if (glue->parsed()) {
      const auto x = io::load_space(left_file);
      const auto y = io::load_space(right_file);
      const ValueFn c = !floor_file.empty() ? io::load_value_fn(floor_file)
                        : envelope          ? min_diameter_envelope(x, y, grid)
                                            : ValueFn::zero();
      const auto u = glue_constant(x, y, c, grid, tol);
      const auto v = validate_union(u, grid);
      report["command"] = "glue";
      report["floor"] = io::to_json(c);
      report["union"] = io::to_json(u);
      report["validation"] = to_json(v, u.as_space());
      if (glue_t->count() > 0) {
        report["t"] = t;
        report["hausdorff"] = u.hausdorff(t);
      }
      pass = v.passes();
    } else if (md->parsed()) {
      const auto x = io::load_space(left_file);
      const auto y = io::load_space(right_file);
      auto all = [](const FuzzySpace& s) {
        std::vector<std::size_t> v(s.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        return v;
      };
      const auto nx = net_left.empty() ? all(x) : label_indices(x, net_left);
      const auto ny = net_right.empty() ? all(y) : label_indices(y, net_right);
      const ValueFn c = floor_file.empty() ? min_diameter_envelope(x, y, grid) : io::load_value_fn(floor_file);
      report["command"] = "mdelta";
      report["t"] = t;
      report["eps"] = eps;
      report["net_left"] = labels_of(x, nx);
      report["net_right"] = labels_of(y, ny);
      report["floor"] = io::to_json(c);
      try {
        const auto m = build_m_delta(x, y, nx, ny, t, eps, c, grid, tol);
        report["delta"] = m.delta;
        report["hausdorff"] = m.hausdorff;
        report["target"] = m.target;
        report["validation"] = to_json(m.validation, m.metric.as_space());
        report["union"] = io::to_json(m.metric);
        pass = m.validation.passes() && m.hausdorff > m.target;
      } catch (const HypothesisError& e) {
        report["hypothesis_failure"] = {{"which", e.which()}, {"message", e.what()}};
        pass = false;
      }
    } else if (gh->parsed()) {
      const auto x = io::load_space(left_file);
      const auto y = io::load_space(right_file);
      const auto b = gh_bounds(x, y, t, resolution, default_eps_schedule(), grid, max_vars);
      report["command"] = "gh-bounds";
      report["t"] = b.t;
      report["lower"] = b.lower;
      report["upper"] = b.upper;
      report["upper_slack"] = b.upper_detail.slack;
      report["upper_method"] = to_json(b.upper_detail);
      report["lower_method"] = b.lower_detail.method;
      report["lower_eps"] = b.lower_detail.eps ? Json(*b.lower_detail.eps) : Json(nullptr);
      report["witness"] = io::to_json(b.lower_detail.witness);
      report["grid"] = io::to_json(grid);
      report["tol"] = tol;
      err << "M_GH(" << x.name() << ", " << y.name() << ", " << t << ") in [" << b.lower << ", " << b.upper << "]\n";
    } else if (net->parsed() || cover->parsed()) {
      const auto s = io::load_space(space_file);
      const auto r = cover_number(s, eps, t, exact_limit);
      report["command"] = net->parsed() ? "net" : "cover";
      report["space"] = s.name();
      report["cover_number"] = r.cover_number;
      report["certificate"] = to_json(r.certificate, s);
      report["exact_limit"] = exact_limit;
    } else if (pig->parsed()) {
      auto fam = io::load_family(family_dir);
      if (!floor_file.empty()) fam.floor = io::load_value_fn(floor_file);
      const auto tab = pigeonhole_subsequence(fam, t, eps);
      report["command"] = "pigeonhole";
      report["family"] = family_dir;
      report["size"] = fam.spaces.size();
      report["table"] = to_json(tab);
      report["ratio_condition"] = to_json(check_ratio_condition(fam, t, eps));
      if (certify) {
        const auto c = certify_group(fam, tab.selected, t, eps, grid);
        report["certificate"] = to_json(c);
        pass = c.all_ok;
      }
      err << "groups:";
      for (const auto& g : tab.groups) err << " " << g.size();
      err << "; selected " << tab.selected.size() << " of " << fam.spaces.size() << "\n";
    } else if (bridge->parsed()) {
      const auto doc = io::read_json_file(metrics_file);
      std::vector<DistanceMatrix> metrics;
      io::in_file(metrics_file, [&] {
        if (k_opt->count() == 0) K = io::detail::number(io::detail::field(doc, "K", "$"), "$.K");
        const auto& arr = io::detail::array(io::detail::field(doc, "metrics", "$"), "$.metrics");
        for (std::size_t k = 0; k < arr.size(); ++k) {
          const std::string p = "$.metrics[" + std::to_string(k) + "]";
          const auto m = io::detail::matrix(arr[k], p);
          metrics.push_back(io::detail::at(p, [&] { return DistanceMatrix(m); }));
        }
        return 0;
      });
      const auto r = standard_bridge_check(metrics, K, {}, {0.5, 1.0, 2.0}, {0.1, 0.3, 0.5}, grid);
      report["command"] = "bridge";
      report["K"] = K;
      report["diameter_violations"] = r.diameter_violations;
      report["floor"] = to_json(r.floor);
      Json covers = Json::array();
      for (const auto& c : r.covers)
        covers.push_back({{"t", c.t}, {"eps", c.eps}, {"radius", c.radius}, {"bound", c.bound}, {"pass", c.pass},
                          {"fuzzy", c.fuzzy}, {"metric", c.metric}});
      report["cover_translation"] = {{"pass", r.cover_pass}, {"checks", std::move(covers)}};
      Json ratios = Json::array();
      for (const auto& q : r.ratios) ratios.push_back(to_json(q));
      report["ratio_condition"] = {{"pass", r.ratio_pass}, {"checks", std::move(ratios)}};
      pass = r.pass();
      err << "floor " << (r.floor.pass ? "pass" : "FAIL") << ", cover " << (r.cover_pass ? "pass" : "FAIL")
          << ", ratio " << (r.ratio_pass ? "pass" : "FAIL") << "\n";
    } else if (example->parsed()) {
      const auto fam = gen_no_cauchy_family(count);
      if (!out_dir.empty()) io::save_family(fam, out_dir);
      report["command"] = "example";
      report["name"] = example_name;
      report["count"] = count;
      if (verify) {
        const auto r = verify_no_cauchy(fam);
        report["t"] = r.t;
        report["eps"] = r.eps;
        report["resolution"] = r.resolution;
        report["matched_inequality"] = {
            {"lhs", r.matched_lhs}, {"rhs", r.matched_rhs}, {"holds", r.matched_inequality_holds}};
        report["unique_net"] = r.unique_net;
        auto pairs = [](const std::vector<ParityPair>& v) {
          Json a = Json::array();
          for (const auto& p : v)
            a.push_back({{"n", p.n}, {"m", p.m}, {"lower", p.lower}, {"upper", p.upper}, {"isometric_at_t", p.isometric_at_t}});
          return a;
        };
        report["cross_parity"] = pairs(r.cross_parity);
        report["same_parity"] = pairs(r.same_parity);
        report["threshold"] = 1.0 - r.eps;
        report["contradiction_confirmed"] = r.contradiction_confirmed();
        pass = r.contradiction_confirmed();
        err << "1/3 >= 1/2*(9/10)^2 is " << (r.matched_inequality_holds ? "true" : "false") << "; even/odd upper bounds:";
        for (const auto& p : r.cross_parity) err << " " << p.upper;
        err << " (threshold " << 1.0 - r.eps << ")\n";
      } else {
        Json spaces = Json::array();
        for (const auto& s : fam.spaces) spaces.push_back(io::to_json(s));
        report["spaces"] = std::move(spaces);
      }
    } else if (tn->parsed()) {
      const auto norm = TNorm::parse(norm_name);
      const auto g = unit_grid(step);
      const auto axioms = tn_check_axioms(norm, g);
      const auto pairs = grid_pairs(g);
      const auto tn1 = tn_has_tn1(norm, pairs);
      report["command"] = "tnorm";
      report["norm"] = norm.name();
      report["step"] = step;
      report["axioms"] = {{"pass", axioms.passes()},
                          {"commutativity", axioms.commutativity},
                          {"associativity", axioms.associativity},
                          {"identity", axioms.identity},
                          {"monotonicity", axioms.monotonicity},
                          {"closure", axioms.closure}};
      report["tn1"] = {{"holds", tn1.holds},
                       {"worst_residual", tn1.worst_residual},
                       {"witness", tn1.witness ? Json::array({tn1.witness->first, tn1.witness->second}) : Json(nullptr)}};
      report["tol"] = kTol;
      pass = axioms.passes();
    }
  } catch (const io::DocumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const HypothesisError& e) {
    report["hypothesis_failure"] = {{"which", e.which()}, {"message", e.what()}};
    pass = false;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  report["pass"] = pass;
  out << report.dump(2) << "\n";
  return pass ? kOk : kFinding;
}

}  // namespace fuzzygh::cli
