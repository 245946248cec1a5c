// Command line driver: benchmark runs with CSV/JSON/SVG output, property
// verification suites, and mesh statistics.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "hho/report.hpp"
#include "hho/verification.hpp"

namespace {

int run_command(const hho::RunConfig& config, const std::string& out_dir, bool svg) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  const hho::Triangulation* final_mesh_ptr = nullptr;
  hho::Triangulation final_mesh = hho::Triangulation::named(config.benchmark);
  hho::LevelCallback keep_mesh = [&](int, const hho::Triangulation& mesh, const hho::HhoFunction&,
                                     const hho::EstimateBreakdown&) {
    final_mesh = mesh;
    final_mesh_ptr = &final_mesh;
  };
  hho::ConvergenceHistory history = hho::run_afem(config, keep_mesh);

  hho::write_text_file(out_dir + "/history.csv", hho::history_csv(history));
  hho::write_text_file(out_dir + "/history.json", hho::history_json(history));
  final_mesh.write_file(out_dir + "/final_mesh.txt");
  if (svg) {
    hho::write_text_file(out_dir + "/convergence.svg", hho::convergence_svg(history));
    hho::write_text_file(out_dir + "/final_mesh.svg", hho::mesh_svg(final_mesh));
  }

  std::printf("# %s k=%d %s variant=%s levels=%zu\n", config.benchmark.c_str(), config.k, config.mode.c_str(),
              hho::to_string(config.variant).c_str(), history.levels.size());
  std::printf("%5s %9s %12s %12s %10s\n", "level", "ndof", "eta", "err_sigma", "eff");
  for (const auto& rec : history.levels)
    std::printf("%5d %9ld %12.5e %12.5e %10.4f\n", rec.level, rec.ndof, rec.eta_tilde, rec.err_sigma,
                rec.efficiency);
  const auto ndof = [&] {
    std::vector<long> v;
    for (const auto& r : history.levels) v.push_back(r.ndof);
    return v;
  }();
  std::vector<double> eta, err;
  for (const auto& r : history.levels) {
    eta.push_back(r.eta_tilde);
    err.push_back(r.err_sigma);
  }
  std::printf("tail rates: eta %.3f", hho::tail_rate(eta, ndof));
  if (std::isfinite(err.front())) std::printf(", err_sigma %.3f", hho::tail_rate(err, ndof));
  std::printf("\n");
  return 0;
}

int verify_command(const std::string& suite, int k) {
  std::vector<int> ks = k > 0 ? std::vector<int>{k} : std::vector<int>{1, 2, 3};
  std::vector<hho::CheckResult> results;
  if (suite == "operators" || suite == "all") {
    auto r = hho::verify_operators(ks);
    results.insert(results.end(), r.begin(), r.end());
  }
  if (suite == "stabilization" || suite == "all") {
    auto r = hho::verify_stabilization(ks);
    results.insert(results.end(), r.begin(), r.end());
  }
  if (suite == "patch" || suite == "all") {
    auto r = hho::verify_patch(ks);
    results.insert(results.end(), r.begin(), r.end());
  }
  if (suite == "orthogonality" || suite == "all") {
    auto r = hho::verify_orthogonality();
    results.insert(results.end(), r.begin(), r.end());
  }
  if (results.empty()) {
    std::fprintf(stderr, "unknown suite '%s' (operators|stabilization|patch|orthogonality|all)\n", suite.c_str());
    return 2;
  }
  hho::print_results(results, std::cout);
  return hho::all_pass(results) ? 0 : 1;
}

int mesh_info_command(const std::string& id, int refine) {
  hho::Triangulation mesh = hho::Triangulation::named(id);
  for (int i = 0; i < refine; i++) mesh = mesh.uniform_refine();
  int max_gen = 0;
  for (int e = 0; e < mesh.n_elements(); e++) max_gen = std::max(max_gen, mesh.generation(e));
  std::printf("mesh %s\n", id.c_str());
  std::printf("  vertices   %d\n", mesh.n_vertices());
  std::printf("  triangles  %d\n", mesh.n_elements());
  std::printf("  sides      %d (dirichlet %d, neumann %d)\n", mesh.n_sides(), mesh.n_dirichlet_sides(),
              mesh.n_neumann_sides());
  std::printf("  h_max      %.6g\n", mesh.h_max());
  std::printf("  min angle  %.4f deg\n", mesh.min_angle() * 180.0 / M_PI);
  std::printf("  max generation %d\n", max_gen);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hho2d: hybrid high-order solver for planar linear elasticity"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a benchmark and write convergence histories");
  hho::RunConfig config;
  std::string benchmark = "lshape", mode = "adaptive", variant = "classic", out_dir = "results";
  double lambda = -1.0, mu = -1.0;
  bool svg = false;
  run->add_option("--benchmark", benchmark, "cooks|lshape|square|mesh=<path>");
  run->add_option("--k", config.k, "polynomial degree (>= 1)")->check(CLI::Range(1, 5));
  run->add_option("--mode", mode, "adaptive|uniform")->check(CLI::IsMember({"adaptive", "uniform"}));
  run->add_option("--theta", config.theta, "bulk marking parameter")->check(CLI::Range(1e-6, 1.0));
  run->add_option("--E", config.young, "Young's modulus");
  run->add_option("--nu", config.poisson, "Poisson ratio");
  run->add_option("--lambda", lambda, "first Lame parameter (overrides --E/--nu)");
  run->add_option("--mu", mu, "second Lame parameter (overrides --E/--nu)");
  run->add_option("--variant", variant, "classic|tilde|hdg")->check(CLI::IsMember({"classic", "tilde", "hdg"}));
  run->add_option("--max-ndof", config.max_ndof, "stop when ndof exceeds this");
  run->add_option("--levels", config.max_levels, "maximum number of levels");
  run->add_option("--max-seconds", config.max_seconds, "wall-clock budget");
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--svg", svg, "write convergence and mesh SVG plots");
  run->add_flag("--jump-full", config.jump_full, "assign face jumps fully to both elements");

  // verify
  auto* verify = app.add_subcommand("verify", "run the property-check suites");
  std::string suite = "all";
  int verify_k = -1;
  verify->add_option("--suite", suite, "operators|stabilization|patch|orthogonality|all");
  verify->add_option("--k", verify_k, "restrict to one degree")->check(CLI::Range(1, 5));

  // mesh-info
  auto* info = app.add_subcommand("mesh-info", "print mesh statistics");
  std::string info_mesh = "square";
  int info_refine = 0;
  info->add_option("--mesh", info_mesh, "cooks|lshape|square or a mesh file");
  info->add_option("--refine", info_refine, "uniform refinements before reporting")->check(CLI::Range(0, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      if (benchmark.rfind("mesh=", 0) == 0) benchmark = benchmark.substr(5);
      config.benchmark = benchmark;
      config.mode = mode;
      config.variant = hho::variant_from_string(variant);
      if (lambda >= 0.0 && mu > 0.0) {
        config.use_lame = true;
        config.lambda = lambda;
        config.mu = mu;
      }
      return run_command(config, out_dir, svg);
    }
    if (verify->parsed()) return verify_command(suite, verify_k);
    if (info->parsed()) return mesh_info_command(info_mesh, info_refine);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
