#include "cohom1/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "cohom1/io.hpp"

#ifndef COHOM1_VERSION
#define COHOM1_VERSION "0.0.0"
#endif

namespace cohom1::cli {
namespace {

namespace fs = std::filesystem;

struct ActionArgs {
  std::string space = "sphere";
  int g = 0;
  int m0 = 0;
  int m1 = 0;
  bool no_strict = false;
  bool raw = false;
};

struct OutputArgs {
  std::string out;
  std::string format = "json";
};

struct SolverArgs {
  ShootingConfig config;
  double match_point = 0;
  std::string init;
};

void add_action_options(CLI::App* sub, ActionArgs& a) {
  sub->add_option("--space", a.space, "sphere | so | sp2")->capture_default_str();
  sub->add_option("--g", a.g, "number of principal curvatures (G itself with --raw)");
  sub->add_option("--m0", a.m0, "first multiplicity");
  sub->add_option("--m1", a.m1, "second multiplicity");
  sub->add_flag("--no-strict", a.no_strict, "skip the classification-list check");
}

void add_output_options(CLI::App* sub, OutputArgs& o, bool with_csv) {
  sub->add_option("--out", o.out, "write the result to this file instead of stdout");
  auto* fmt = sub->add_option("--format", o.format, "output format")->capture_default_str();
  if (with_csv) {
    fmt->check(CLI::IsMember({"json", "csv", "text"}));
  } else {
    fmt->check(CLI::IsMember({"json", "text"}));
  }
}

void add_solver_options(CLI::App* sub, SolverArgs& s) {
  auto& c = s.config;
  sub->add_option("--eps0", c.eps0, "start offset from t = 0")->capture_default_str();
  sub->add_option("--eps1", c.eps1, "start offset from t = pi/G")->capture_default_str();
  sub->add_option("--rel-tol", c.rel_tol, "integrator relative tolerance")->capture_default_str();
  sub->add_option("--abs-tol", c.abs_tol, "integrator absolute tolerance")->capture_default_str();
  sub->add_option("--match-point", s.match_point, "interior matching abscissa (default pi/(2G))");
  sub->add_option("--max-newton", c.max_newton, "Newton iteration cap")->capture_default_str();
  sub->add_option("--blowup-cap", c.blowup_cap, "escape threshold for |r|, |r'|")
      ->capture_default_str();
  sub->add_option("--dense-points", c.dense_points, "output grid size (>= 257)")
      ->capture_default_str();
}

ActionDescriptor resolve_action(const ActionArgs& a) {
  const Space space = parse_space(a.space);
  int g = a.g, m0 = a.m0, m1 = a.m1;
  if (space == Space::Sp2Lift) {
    if (g == 0) g = 6;
    if (m0 == 0) m0 = 1;
    if (m1 == 0) m1 = 1;
  }
  if (g == 0 || m0 == 0 || m1 == 0) {
    throw Error(ErrorCode::InvalidArgument, "--g, --m0 and --m1 are required");
  }
  return make_action(space, g, m0, m1, !a.no_strict);
}

struct ResolvedSpec {
  BvpSpec spec;
  std::optional<ActionDescriptor> action;
  std::optional<int> j;
};

ResolvedSpec resolve_spec(const ActionArgs& a, int k) {
  ResolvedSpec out;
  if (a.raw) {
    out.spec = make_bvp(a.g, a.m0, a.m1, k);
    return out;
  }
  const ActionDescriptor action = resolve_action(a);
  if ((k - 1) % action.g != 0) {
    throw Error(ErrorCode::InadmissibleJ,
                "k=" + std::to_string(k) + " is not of the form j g + 1 for " + action.label());
  }
  const int j = (k - 1) / action.g;
  admissible_k(action, j);
  out.action = action;
  out.j = j;
  out.spec = bvp_for(action, k);
  return out;
}

Json action_params(const ActionArgs& a) {
  Json j;
  j["space"] = a.space;
  j["g"] = a.g;
  j["m0"] = a.m0;
  j["m1"] = a.m1;
  j["strict"] = !a.no_strict;
  j["raw"] = a.raw;
  return j;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const fs::path& path, const std::string& subcommand, const Json& params,
                    const std::vector<std::string>& outputs) {
  Json m;
  m["tool"] = "cohom1";
  m["version"] = version();
  m["subcommand"] = subcommand;
  m["parameters"] = params;
  m["timestamp"] = utc_timestamp();
  m["outputs"] = outputs;
  std::ofstream f(path, std::ios::binary);
  f << m.dump(2) << "\n";
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  f << text;
}

// Writes to stdout, or to --out plus a sidecar manifest `<out>.manifest.json`.
void emit(const std::string& text, const OutputArgs& o, std::ostream& out,
          const std::string& subcommand, const Json& params) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  const fs::path path(o.out);
  write_file(path, text);
  write_manifest(fs::path(o.out + ".manifest.json"), subcommand, params, {path.filename().string()});
}

std::array<double, 2> parse_pair(const std::string& text) {
  std::array<double, 2> v{};
  char comma = 0;
  std::istringstream is(text);
  if (!(is >> v[0] >> comma >> v[1]) || comma != ',') {
    throw Error(ErrorCode::InvalidArgument, "expected a,b but got '" + text + "'");
  }
  return v;
}

int default_threads() {
  if (const char* env = std::getenv("COHOM1_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NoConvergence:
    case ErrorCode::IntegratorStall:
      return kNoConvergence;
    case ErrorCode::TrajectoryEscaped:
      return kEscaped;
    default:
      return kInputError;
  }
}

}  // namespace

std::string version() { return COHOM1_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant harmonic self-maps of cohomogeneity-one spheres and orthogonal groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  // classify
  ActionArgs cls_action;
  OutputArgs cls_out;
  int jmin = -4, jmax = 4;
  auto* cls = app.add_subcommand("classify", "harmonicity and degree of the k-maps of one action");
  add_action_options(cls, cls_action);
  cls->add_option("--jmin", jmin, "smallest j")->capture_default_str();
  cls->add_option("--jmax", jmax, "largest j")->capture_default_str();
  add_output_options(cls, cls_out, false);

  // solve
  ActionArgs sol_action;
  SolverArgs sol_args;
  int sol_k = 1;
  std::string out_dir = ".";
  auto* sol = app.add_subcommand("solve", "solve the (G,M0,M1,k) boundary value problem");
  add_action_options(sol, sol_action);
  sol->add_flag("--raw", sol_action.raw, "treat --g --m0 --m1 as the BVP parameters G, M0, M1");
  sol->add_option("--k", sol_k, "winding target")->required();
  add_solver_options(sol, sol_args);
  sol->add_option("--init", sol_args.init, "initial slopes a,b (default k,k)");
  sol->add_option("--out-dir", out_dir, "directory for profile.csv, solve.json, manifest.json")
      ->capture_default_str();

  // sweep
  ActionArgs swp_action;
  SolverArgs swp_args;
  OutputArgs swp_out;
  int swp_k = 1;
  std::optional<double> a_min, a_max;
  int threads = default_threads();
  bool refine = false;
  auto* swp = app.add_subcommand("sweep", "scan the initial slope for solution brackets");
  add_action_options(swp, swp_action);
  swp->add_flag("--raw", swp_action.raw, "treat --g --m0 --m1 as the BVP parameters G, M0, M1");
  swp->add_option("--k", swp_k, "winding target")->required();
  add_solver_options(swp, swp_args);
  swp->add_option("--a-min", a_min, "lower end of the slope bracket");
  swp->add_option("--a-max", a_max, "upper end of the slope bracket");
  swp->add_option("--points", swp_args.config.sweep_points, "grid resolution")->capture_default_str();
  swp->add_option("--threads", threads, "worker threads (env COHOM1_THREADS)")->capture_default_str();
  swp->add_flag("--refine", refine, "bisect each bracket and solve from it");
  add_output_options(swp, swp_out, true);

  // residual
  ActionArgs res_action;
  OutputArgs res_out;
  std::string profile_path, meta_path;
  std::optional<int> res_k;
  auto* res = app.add_subcommand("residual", "residual and boundary error of a profile CSV");
  add_action_options(res, res_action);
  res->add_flag("--raw", res_action.raw, "treat --g --m0 --m1 as the BVP parameters G, M0, M1");
  res->add_option("--k", res_k, "winding target");
  res->add_option("--profile", profile_path, "profile CSV (t,r,rdot)")->required();
  res->add_option("--meta", meta_path, "solve.json to take the BVP from");
  add_output_options(res, res_out, false);

  // identity-check
  IdentitySuiteConfig id_cfg;
  OutputArgs id_out;
  auto* idc = app.add_subcommand("identity-check", "check the trigonometric identities on random samples");
  idc->add_option("--g-max", id_cfg.g_max, "largest g")->capture_default_str();
  idc->add_option("--samples", id_cfg.samples, "number of samples")->capture_default_str();
  idc->add_option("--seed", id_cfg.seed, "random seed")->capture_default_str();
  idc->add_option("--margin", id_cfg.margin, "pole margin")->capture_default_str();
  add_output_options(idc, id_out, false);

  // degree
  ActionArgs deg_action;
  OutputArgs deg_out;
  int deg_j = 0;
  auto* deg = app.add_subcommand("degree", "degree of the k-map, k = j g + 1");
  add_action_options(deg, deg_action);
  deg->add_option("--j", deg_j, "Weyl index j")->required();
  add_output_options(deg, deg_out, false);

  // table
  OutputArgs tab_out;
  auto* tab = app.add_subcommand("table", "harmonic self-maps of SO(n) and Sp(2) with degrees");
  add_output_options(tab, tab_out, false);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*cls) {
      const ActionDescriptor action = resolve_action(cls_action);
      const auto verdicts = classify_range(action, jmin, jmax);
      Json params = action_params(cls_action);
      params["jmin"] = jmin;
      params["jmax"] = jmax;
      std::string text;
      if (cls_out.format == "text") {
        text = format_verdicts_text(verdicts);
      } else {
        Json arr = Json::array();
        for (const auto& v : verdicts) arr.push_back(to_json(v));
        text = arr.dump(2) + "\n";
      }
      emit(text, cls_out, out, "classify", params);
      return kOk;
    }

    if (*sol) {
      const ResolvedSpec rs = resolve_spec(sol_action, sol_k);
      ShootingConfig config = sol_args.config;
      if (sol->count("--match-point") > 0) config.match_point = sol_args.match_point;
      std::optional<std::array<double, 2>> init;
      if (!sol_args.init.empty()) init = parse_pair(sol_args.init);

      Json params = action_params(sol_action);
      params["k"] = sol_k;
      params["config"] = to_json(config, rs.spec);
      if (init) params["init"] = Json::array({(*init)[0], (*init)[1]});

      const fs::path dir(out_dir);
      fs::create_directories(dir);
      Json meta;
      meta["manifest"] = "manifest.json";
      meta["spec"] = to_json(rs.spec);
      if (rs.action) {
        meta["action"] = to_json(*rs.action);
        meta["j"] = *rs.j;
      }
      meta["config"] = to_json(config, rs.spec);

      int code = kOk;
      std::vector<std::string> outputs;
      try {
        const SolutionProfile p = solve(rs.spec, config, init);
        std::ostringstream csv;
        write_profile_csv(csv, p.samples);
        write_file(dir / "profile.csv", csv.str());
        outputs.push_back("profile.csv");
        meta["status"] = "converged";
        meta["profile"] = "profile.csv";
        meta["solution"] = to_json(p);
      } catch (const NoConvergence& e) {
        meta["status"] = "no-convergence";
        meta["message"] = e.what();
        meta["final_iterate"] = Json::array({e.slope0(), e.slope1()});
        meta["final_gaps"] = Json::array({e.value_gap(), e.deriv_gap()});
        meta["iterations"] = e.iterations();
        code = kNoConvergence;
      } catch (const TrajectoryEscaped& e) {
        meta["status"] = "escaped";
        meta["message"] = e.what();
        meta["escape_time"] = e.time();
        code = kEscaped;
      }
      const std::string text = meta.dump(2) + "\n";
      write_file(dir / "solve.json", text);
      outputs.push_back("solve.json");
      write_manifest(dir / "manifest.json", "solve", params, outputs);
      out << text;
      if (code != kOk) err << "solve: " << meta["message"].get<std::string>() << "\n";
      return code;
    }

    if (*swp) {
      const ResolvedSpec rs = resolve_spec(swp_action, swp_k);
      ShootingConfig config = swp_args.config;
      if (swp->count("--match-point") > 0) config.match_point = swp_args.match_point;
      auto br = config.bracket_for(rs.spec);
      if (a_min) br[0] = *a_min;
      if (a_max) br[1] = *a_max;
      config.bracket = br;
      const auto points = sweep(rs.spec, config, threads);

      Json params = action_params(swp_action);
      params["k"] = swp_k;
      params["config"] = to_json(config, rs.spec);
      params["threads"] = threads;
      params["refine"] = refine;

      std::string text;
      if (swp_out.format == "csv" || swp_out.format == "text") {
        std::ostringstream os;
        os << "a,gap,sign_change,status\n";
        for (const auto& p : points) {
          const Json j = to_json(p);
          const std::string gap =
              j["gap"].is_string() ? j["gap"].get<std::string>() : shortest_repr(p.gap);
          os << shortest_repr(p.a) << "," << gap << "," << (p.sign_change ? 1 : 0) << ","
             << j["status"].get<std::string>() << "\n";
        }
        text = os.str();
      } else {
        Json result;
        result["spec"] = to_json(rs.spec);
        Json arr = Json::array();
        Json brackets = Json::array();
        for (const auto& p : points) arr.push_back(to_json(p));
        for (const auto& [lo, hi] : sign_change_brackets(points)) {
          brackets.push_back(Json::array({lo.a, hi.a}));
        }
        result["brackets"] = brackets;
        if (refine) {
          Json sols = Json::array();
          for (const auto& p : solve_brackets(rs.spec, config, points)) sols.push_back(to_json(p));
          result["solutions"] = sols;
        }
        result["points"] = arr;
        text = result.dump(2) + "\n";
      }
      emit(text, swp_out, out, "sweep", params);
      return kOk;
    }

    if (*res) {
      BvpSpec spec;
      Json reported;
      if (!meta_path.empty()) {
        std::ifstream mf(meta_path);
        if (!mf) throw Error(ErrorCode::InvalidArgument, "cannot read " + meta_path);
        const Json meta = Json::parse(mf);
        const auto& s = meta.at("spec");
        spec = make_bvp(s.at("G").get<int>(), s.at("M0").get<int>(), s.at("M1").get<int>(),
                        s.at("k").get<int>());
        if (meta.contains("solution")) reported = meta["solution"]["residual"];
      } else {
        if (!res_k) throw Error(ErrorCode::InvalidArgument, "--k or --meta is required");
        spec = resolve_spec(res_action, *res_k).spec;
      }
      std::ifstream pf(profile_path, std::ios::binary);
      if (!pf) throw Error(ErrorCode::InvalidArgument, "cannot read " + profile_path);
      const auto samples = read_profile_csv(pf);
      const ResidualReport rep = residual_norm(spec, samples);
      Json result = to_json(rep);
      result["spec"] = to_json(spec);
      result["samples"] = samples.size();
      if (!reported.is_null()) result["reported_residual"] = reported;

      Json params = action_params(res_action);
      params["profile"] = profile_path;
      params["meta"] = meta_path;
      const std::string text = res_out.format == "text"
                                   ? shortest_repr(rep.max_abs) + "\n"
                                   : result.dump(2) + "\n";
      emit(text, res_out, out, "residual", params);
      return kOk;
    }

    if (*idc) {
      const auto rep = run_identity_suite(id_cfg);
      Json params;
      params["g_max"] = id_cfg.g_max;
      params["samples"] = id_cfg.samples;
      params["seed"] = id_cfg.seed;
      params["margin"] = id_cfg.margin;
      Json result = to_json(rep);
      result["seed"] = id_cfg.seed;
      result["g_max"] = id_cfg.g_max;
      const std::string text = id_out.format == "text"
                                   ? "lemma_sin_sq   " + shortest_repr(rep.lemma_sin_sq) +
                                         "\nlemma_sin_2r   " + shortest_repr(rep.lemma_sin_2r) +
                                         "\ncotangent      " + shortest_repr(rep.cotangent) +
                                         "\nhalf_sum_split " + shortest_repr(rep.half_sum_split) +
                                         "\n"
                                   : result.dump(2) + "\n";
      emit(text, id_out, out, "identity-check", params);
      return kOk;
    }

    if (*deg) {
      const ActionDescriptor action = resolve_action(deg_action);
      const int k = admissible_k(action, deg_j);
      const int d = degree_of_k_map(action, deg_j);
      Json params = action_params(deg_action);
      params["j"] = deg_j;
      Json result;
      result["action"] = to_json(action);
      result["j"] = deg_j;
      result["k"] = k;
      result["degree"] = d;
      const std::string text =
          deg_out.format == "text" ? std::to_string(d) + "\n" : result.dump(2) + "\n";
      emit(text, deg_out, out, "degree", params);
      return kOk;
    }

    if (*tab) {
      const auto verdicts = examples_table();
      std::string text;
      if (tab_out.format == "text") {
        text = format_verdicts_text(verdicts);
      } else {
        Json arr = Json::array();
        for (const auto& v : verdicts) arr.push_back(to_json(v));
        text = arr.dump(2) + "\n";
      }
      emit(text, tab_out, out, "table", Json::object());
      return kOk;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    err << "bad JSON input: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace cohom1::cli
