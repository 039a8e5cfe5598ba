#include "metext/cli.hpp"

#include <iomanip>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "metext/error.hpp"
#include "metext/extension.hpp"
#include "metext/generators.hpp"
#include "metext/io.hpp"
#include "metext/oracle.hpp"
#include "metext/probes.hpp"
#include "metext/suites.hpp"

namespace metext {

namespace {

struct Inputs {
  std::string complex_path;
  std::string metric = "word";
  bool json = false;
  std::uint64_t seed = 0;
};

struct Loaded {
  std::shared_ptr<const SimplicialComplex> complex;
  std::unique_ptr<ExtendedMetric> metric;
};

// Accepts a JSON literal or a path to a JSON file.
Json json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return parse_json(text);
  return read_json_file(text);
}

std::shared_ptr<const SimplicialComplex> load_complex(const Inputs& in) {
  if (in.complex_path.empty()) throw CLI::RequiredError("--complex");
  return std::make_shared<const SimplicialComplex>(complex_from_json(json_arg(in.complex_path)));
}

std::string violations_text(const SimplicialComplex& k, const MetricValidation& v) {
  std::ostringstream os;
  for (const auto& bad : v.violations) os << "  " << bad.describe(k) << '\n';
  return os.str();
}

Loaded load(const Inputs& in) {
  Loaded l;
  l.complex = load_complex(in);
  const auto word = word_metric(*l.complex);
  const Json spec = in.metric == "word" ? Json{{"type", "word"}} : json_arg(in.metric);
  auto v = metric_from_json(*l.complex, word, spec);
  if (!v.ok())
    throw Error(ErrorCode::InvalidParameters, "vertex metric is invalid:\n" + violations_text(*l.complex, v));
  l.metric = std::make_unique<ExtendedMetric>(l.complex, *v.metric);
  return l;
}

BarycentricPoint point_arg(const SimplicialComplex& k, const std::string& text) {
  return point_from_json(k, json_arg(text));
}

Slot slot_arg(const ExtendedMetric& m, const std::string& text) {
  if (text.rfind("ray:", 0) == 0) {
    const auto rest = text.substr(4);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("ray slot", "expected ray:BASE:TARGET");
    const auto& k = m.complex();
    return make_ray(m.path(), k.require(rest.substr(0, colon)), k.require(rest.substr(colon + 1)), rest);
  }
  return point_arg(m.complex(), text);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

std::string witness_text(const SimplicialComplex& k, const PathWitness& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    if (i) os << " -[" << k.describe(w.carriers[i - 1]) << "]-> ";
    os << point_to_json(k, w.points[i]).dump();
  }
  return os.str();
}

void add_common(CLI::App* cmd, Inputs& in, bool needs_metric = true) {
  cmd->add_option("-c,--complex", in.complex_path, "complex JSON file or literal")->required();
  if (needs_metric) cmd->add_option("-m,--metric", in.metric, "'word' or metric JSON file or literal");
  cmd->add_flag("--json", in.json, "machine-readable output");
}

int cmd_validate(const Inputs& in, std::ostream& out) {
  const auto k = load_complex(in);
  const auto word = word_metric(*k);
  Json j{{"vertices", k->vertex_count()},
         {"maximal_simplices", k->maximal_simplices().size()},
         {"edges", k->edge_count()},
         {"dimension", k->dimension()},
         {"diameter", word.diameter()}};
  int code = kExitOk;
  if (in.metric != "word") {
    const auto v = metric_from_json(*k, word, json_arg(in.metric));
    Json bad = Json::array();
    for (const auto& x : v.violations) bad.push_back(x.describe(*k));
    j["metric_violations"] = bad;
    if (v.ok()) {
      j["C"] = linear_bound_constant(*v.metric, word, v.metric->supplied_constant());
      if (auto qi = v.metric->qi()) j["qi_pass"] = qi_constants_check(*v.metric, word, qi->A, qi->B).pass;
      if (j.contains("qi_pass") && !j["qi_pass"].get<bool>()) code = kExitValidation;
    } else {
      code = kExitValidation;
    }
  }
  if (in.json) out << j.dump(2) << '\n';
  else
    for (const auto& [key, value] : j.items()) out << key << ": " << value.dump() << '\n';
  return code;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric extension workbench for finite simplicial complexes", "metext"};
  app.require_subcommand(1);
  app.fallthrough();  // global options such as --seed may follow the subcommand
  Inputs in;
  app.add_option("--seed", in.seed, "random seed")->default_val(0);

  auto* validate = app.add_subcommand("validate", "check a complex and optional vertex metric");
  add_common(validate, in);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a complex");
  std::string kind, graph_path, points_path, out_path;
  int n = 0, branching = 2, depth = 3, max_dim = -1, cycle = 0;
  double radius = 1.0, density = 0.3;
  gen->add_option("kind", kind, "simplex|path|cycle|tree|rips|random")
      ->required()
      ->check(CLI::IsMember({"simplex", "path", "cycle", "tree", "rips", "random"}));
  gen->add_option("--n", n, "size parameter");
  gen->add_option("--branching", branching);
  gen->add_option("--depth", depth);
  gen->add_option("--radius", radius);
  gen->add_option("--max-dim", max_dim);
  gen->add_option("--density", density);
  gen->add_option("--graph", graph_path, "rips: complex whose 1-skeleton is the graph");
  gen->add_option("--cycle", cycle, "rips: use the cycle graph C_n");
  gen->add_option("--points", points_path, "rips: JSON list of coordinate lists");
  gen->add_option("-o,--output", out_path);
  gen->add_flag("--json", in.json, "single-line JSON");

  // dist
  auto* dist = app.add_subcommand("dist", "distance between two points");
  std::string dist_kind = "extended", xs, ys;
  add_common(dist, in);
  dist->add_option("--kind", dist_kind)->check(CLI::IsMember({"vertex", "bilinear", "l1path", "extended"}));
  dist->add_option("-x", xs)->required();
  dist->add_option("-y", ys)->required();

  // dd / gp
  auto* dd = app.add_subcommand("dd", "double difference <x,x'|y,y'>");
  std::string dd_kind = "extended", xps, yps;
  add_common(dd, in);
  dd->add_option("--kind", dd_kind)->check(CLI::IsMember({"extended", "bilinear"}));
  dd->add_option("--x", xs)->required();
  dd->add_option("--xp", xps)->required();
  dd->add_option("--y", ys)->required();
  dd->add_option("--yp", yps)->required();

  auto* gp = app.add_subcommand("gp", "Gromov product <a|b>_c of the extended metric");
  std::string as, bs, cs;
  add_common(gp, in);
  gp->add_option("-a", as)->required();
  gp->add_option("-b", bs)->required();
  gp->add_option("--at", cs, "base point c")->required();

  // probe
  auto* probe = app.add_subcommand("probe", "boundary probes");
  std::string probe_kind;
  int depth_min = 1, depth_max = 12;
  std::size_t samples = 400;
  add_common(probe, in);
  probe->add_option("kind", probe_kind)
      ->required()
      ->check(CLI::IsMember({"convergence", "divergence", "decay", "windows"}));
  probe->add_option("--x", xs, "point JSON or ray:BASE:TARGET");
  probe->add_option("--xp", xps);
  probe->add_option("--y", ys);
  probe->add_option("--yp", yps);
  probe->add_option("--depth-min", depth_min);
  probe->add_option("--depth-max", depth_max);
  probe->add_option("--samples", samples);

  // oracle-compare
  auto* oc = app.add_subcommand("oracle-compare", "exact d_X against the grid oracle");
  int grid_n = 16;
  add_common(oc, in, false);
  oc->add_option("-x", xs)->required();
  oc->add_option("-y", ys)->required();
  oc->add_option("--grid", grid_n, "grid resolution n (h = 1/n)");

  // check
  auto* check = app.add_subcommand("check", "run invariant suites");
  std::vector<std::string> suites{"all"};
  SuiteConfig cfg;
  add_common(check, in);
  check->add_option("--suite", suites, "suite name or all")->delimiter(',');
  check->add_option("--triples", cfg.triples);
  check->add_option("--pairs", cfg.pairs);
  check->add_option("--tuples", cfg.tuples);
  check->add_option("--grid", cfg.grid_n);

  std::vector<const char*> argv{"metext"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(in, out);

    if (*gen) {
      std::optional<SimplicialComplex> k;
      if (kind == "simplex") k = simplex_complex(n);
      else if (kind == "path") k = path_complex(n);
      else if (kind == "cycle") k = cycle_complex(n);
      else if (kind == "tree") k = tree_complex(branching, depth);
      else if (kind == "random") k = random_complex(n, density, in.seed, max_dim < 0 ? 2 : max_dim);
      else {
        const int dim = max_dim < 0 ? 3 : max_dim;
        if (!points_path.empty()) {
          k = rips_complex(json_arg(points_path).get<std::vector<std::vector<double>>>(), radius, dim);
        } else if (!graph_path.empty()) {
          k = rips_complex(skeleton_graph(complex_from_json(json_arg(graph_path))), radius, dim);
        } else if (cycle > 0) {
          k = rips_complex(cycle_graph(static_cast<std::size_t>(cycle)), radius, dim);
        } else {
          throw CLI::ValidationError("rips", "needs --graph, --cycle or --points");
        }
      }
      const std::string text = complex_to_json(*k).dump(in.json ? -1 : 2) + "\n";
      if (out_path.empty()) out << text;
      else write_text_file(out_path, text);
      return kExitOk;
    }

    if (*oc) {
      const auto k = load_complex(in);
      PathMetric pm(k);
      const auto x = point_arg(*k, xs), y = point_arg(*k, ys);
      const double exact = pm.distance(x, y).value;
      const GridOracle grid(*k, grid_n);
      const double g = grid.distance(snap_to_grid(*k, x, grid_n), snap_to_grid(*k, y, grid_n));
      const bool snapped = grid.on_grid(x) && grid.on_grid(y);
      const double tol = grid_tolerance(k->dimension(), grid_n, exact);
      const bool ok = !snapped || (exact <= g + kTolerance && g - exact <= tol);
      Json j{{"exact", exact}, {"grid", g}, {"h", 1.0 / grid_n}, {"tolerance", tol}, {"on_grid", snapped}, {"agree", ok}};
      if (in.json) out << j.dump(2) << '\n';
      else
        for (const auto& [key, value] : j.items()) out << key << ": " << value.dump() << '\n';
      return ok ? kExitOk : kExitSuiteFailure;
    }

    const Loaded l = load(in);
    const ExtendedMetric& m = *l.metric;
    const SimplicialComplex& k = *l.complex;

    if (*dist) {
      const auto x = point_arg(k, xs), y = point_arg(k, ys);
      Json j{{"kind", dist_kind}};
      std::optional<PathWitness> witness;
      if (dist_kind == "vertex") {
        if (!x.is_vertex() || !y.is_vertex())
          throw Error(ErrorCode::InvalidParameters, "--kind vertex needs two vertices");
        j["value"] = m.vertex_metric()(*x.as_vertex(), *y.as_vertex());
      } else if (dist_kind == "bilinear") {
        j["value"] = m.bilinear(x, y);
      } else if (dist_kind == "l1path") {
        auto r = m.path().distance(x, y, m.options());
        j["value"] = r.value;
        witness = r.witness;
      } else {
        const auto e = m.distance(x, y);
        j["value"] = e.value;
        j["branch"] = to_string(e.branch);
        j["bilinear"] = m.bilinear(x, y);
        auto r = m.path().distance(x, y, m.options());
        j["scaled_path"] = m.scale() * r.value;
        witness = r.witness;
      }
      if (in.json) {
        if (witness) j["witness"] = witness_to_json(k, *witness);
        out << j.dump(2) << '\n';
      } else {
        out << "value: " << fmt(j["value"].get<double>()) << '\n';
        if (j.contains("branch")) out << "branch: " << j["branch"].get<std::string>() << '\n';
        if (witness) out << "witness (length " << fmt(witness->length) << "): " << witness_text(k, *witness) << '\n';
      }
      return kExitOk;
    }

    if (*dd) {
      const auto a = point_arg(k, xs), b = point_arg(k, xps), c = point_arg(k, ys), d = point_arg(k, yps);
      const double v =
          dd_kind == "extended" ? double_difference_ext(m, a, b, c, d) : double_difference_bilinear(m, a, b, c, d);
      if (in.json) out << Json{{"kind", dd_kind}, {"value", v}}.dump(2) << '\n';
      else out << fmt(v) << '\n';
      return kExitOk;
    }

    if (*gp) {
      const double v = gromov_product_ext(m, point_arg(k, as), point_arg(k, bs), point_arg(k, cs));
      if (in.json) out << Json{{"value", v}}.dump(2) << '\n';
      else out << fmt(v) << '\n';
      return kExitOk;
    }

    if (*probe) {
      auto emit = [&](const ProbeReport& r) {
        if (in.json) out << report_to_json(r).dump(2) << '\n';
        else out << format_table(r);
      };
      if (probe_kind == "convergence" || probe_kind == "divergence") {
        if (xs.empty() || xps.empty() || ys.empty() || yps.empty())
          throw CLI::ValidationError("probe", "needs --x --xp --y --yp");
        const Configuration config{slot_arg(m, xs), slot_arg(m, xps), slot_arg(m, ys), slot_arg(m, yps)};
        if (probe_kind == "convergence") emit(dd_convergence_probe(m, config, {depth_min, depth_max, 1e-3}));
        else emit(dd_divergence_probe(m, config, {depth_min, depth_max, 0.5}));
        return kExitOk;
      }
      if (probe_kind == "decay") {
        DecayOptions opt;
        opt.samples = samples;
        opt.seed = in.seed;
        opt.depth_max = depth_max;
        const auto r = decay_probe(m, opt);
        emit(r);
        return kExitOk;
      }
      const auto r = equivalence_windows_check(m, sample_quadruples(k, samples, in.seed));
      Json j{{"ran", r.ran},         {"pass", r.pass},   {"b_prime", r.b_prime},
             {"samples", r.samples}, {"max_excess", r.max_excess}, {"alpha", r.alpha},
             {"beta", r.beta},       {"vertex_samples", r.vertex_samples}};
      if (in.json) out << j.dump(2) << '\n';
      else
        for (const auto& [key, value] : j.items()) out << key << ": " << value.dump() << '\n';
      if (!r.ran) return kExitValidation;
      return r.pass ? kExitOk : kExitSuiteFailure;
    }

    if (*check) {
      cfg.seed = in.seed;
      const auto report = run_suites(m, suites, cfg);
      if (in.json) {
        Json arr = Json::array();
        for (const auto& r : report.results)
          arr.push_back({{"suite", r.suite},
                         {"anchor", r.anchor},
                         {"ran", r.ran},
                         {"soft", r.soft},
                         {"checks", r.checks},
                         {"passed", r.passed},
                         {"detail", r.detail}});
        out << Json{{"ok", report.ok()}, {"results", arr}}.dump(2) << '\n';
      } else {
        out << report.text() << (report.ok() ? "all suites passed\n" : "suite failures\n");
      }
      return report.ok() ? kExitOk : kExitSuiteFailure;
    }
  } catch (const CLI::Error& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InternalInconsistency ? kExitInternal : kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace metext
