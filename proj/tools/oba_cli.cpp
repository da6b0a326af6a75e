// Command-line front end: solve l1-regularized problems, generate synthetic
// data, report diagnostics, and run benchmark sweeps with machine-readable
// traces.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "oba/dataset.hpp"
#include "oba/diagnostics.hpp"
#include "oba/ista.hpp"
#include "oba/solver.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string loss = "logistic";
  std::string data;
  double mu = 0.1;
  std::string solver = "oba";
  double tol = 1e-6;
  std::size_t max_iters = 1000;
  double eta = 0.01;
  double eps = 1e-4;
  double cg_tol = 0.1;
  double ridge = 0.0;
  double L = 0.0;  // 0 = no override
  std::uint64_t seed = 0;
  std::string normalize = "none";
  std::string out_dir = ".";
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string now_iso8601() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::unique_ptr<oba::SmoothObjective> make_objective(const std::string& loss,
                                                     const oba::Dataset& ds,
                                                     double ridge) {
  if (loss == "logistic")
    return std::make_unique<oba::LogisticLoss>(ds.a, ds.binary_labels(), ridge);
  if (loss == "lasso")
    return std::make_unique<oba::LeastSquaresLoss>(ds.a, ds.y, ridge);
  if (loss == "quadratic") {
    // the file's matrix is H (square) and the label column is c
    oba::SparseMatrix h = ds.a;
    if (h.rows() != h.cols()) {
      if (h.cols() > h.rows())
        throw std::runtime_error("quadratic loss: H must be square");
      // trailing all-zero columns were dropped by the reader; restore them
      h = oba::SparseMatrix(h.rows(), h.rows(), h.row_ptr(),
                            h.col_idx(), h.values());
    }
    return std::make_unique<oba::QuadraticLoss>(std::move(h), ds.y, ridge);
  }
  throw std::runtime_error("unknown loss '" + loss + "'");
}

oba::Dataset load_dataset(const CommonOpts& o, const std::string& path) {
  oba::Dataset ds = oba::read_libsvm(path);
  if (o.normalize == "maxabs") ds = oba::normalize_features(ds);
  return ds;
}

json config_json(const CommonOpts& o) {
  return json{{"loss", o.loss},       {"mu", o.mu},
              {"solver", o.solver},   {"tol", o.tol},
              {"max_iters", o.max_iters}, {"eta", o.eta},
              {"eps", o.eps},         {"cg_tol", o.cg_tol},
              {"ridge", o.ridge},     {"L_override", o.L},
              {"seed", o.seed},       {"normalize", o.normalize}};
}

json make_manifest(const std::string& command, const CommonOpts& o,
                   const std::vector<std::string>& data_paths,
                   const std::string& started) {
  json datasets = json::array();
  for (const auto& p : data_paths)
    datasets.push_back({{"path", p}, {"fnv1a64", hex64(fnv1a64_file(p))}});
  return json{{"command", command},
              {"config", config_json(o)},
              {"datasets", datasets},
              {"seed", o.seed},
              {"version", kVersion},
              {"started", started},
              {"finished", now_iso8601()}};
}

void write_trace_csv(const std::string& path, const oba::SolveReport& rep,
                     std::optional<double> phi_star) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "iter,seconds,phi,rel_err,g_inf,nnz,cycle_j,cg_iters,alpha,alpha_bar\n";
  for (const auto& t : rep.trace) {
    out << t.iter << ',' << fmt(t.seconds) << ',' << fmt(t.phi) << ',';
    if (phi_star)
      out << fmt(oba::relative_error(t.phi, *phi_star));
    out << ',' << fmt(t.g_inf) << ',' << t.nnz << ',' << t.cycle_passes << ','
        << t.cg_iters << ',' << fmt(t.alpha) << ',' << fmt(t.alpha_bar) << '\n';
  }
}

const char* termination_name(oba::Termination t) {
  switch (t) {
    case oba::Termination::kTolerance: return "tolerance";
    case oba::Termination::kMaxIters: return "max_iters";
    case oba::Termination::kTimeCap: return "time_cap";
  }
  return "unknown";
}

oba::SolveReport run_solver(const std::string& solver,
                            const oba::SmoothObjective& obj,
                            const CommonOpts& o, double tol,
                            std::size_t max_iters,
                            std::optional<double> time_cap = std::nullopt) {
  oba::DenseVector x0(obj.dim(), 0.0);
  if (solver == "oba") {
    oba::SolverConfig cfg;
    cfg.mu = o.mu;
    cfg.eta = o.eta;
    cfg.eps = o.eps;
    cfg.cg_rel_tol = o.cg_tol;
    cfg.outer_tol = tol;
    cfg.max_outer_iters = max_iters;
    if (o.L > 0.0) cfg.L_override = o.L;
    cfg.time_cap_seconds = time_cap;
    cfg.seed = o.seed;
    return oba::solve(obj, x0, cfg);
  }
  if (solver == "ista") {
    oba::IstaConfig cfg;
    cfg.mu = o.mu;
    cfg.tol = tol;
    cfg.max_iters = max_iters;
    if (o.L > 0.0) cfg.L_override = o.L;
    return oba::ista_solve(obj, x0, cfg);
  }
  throw std::runtime_error("unknown solver '" + solver + "'");
}

int cmd_solve(const CommonOpts& o) {
  std::string started = now_iso8601();
  oba::Dataset ds = load_dataset(o, o.data);
  auto obj = make_objective(o.loss, ds, o.ridge);
  oba::SolveReport rep = run_solver(o.solver, *obj, o, o.tol, o.max_iters);

  fs::create_directories(o.out_dir);
  write_trace_csv(o.out_dir + "/trace.csv", rep, std::nullopt);

  json report{{"phi", rep.phi},
              {"g_inf", rep.g_inf},
              {"termination", termination_name(rep.termination)},
              {"iterations", rep.trace.size()},
              {"fallback_count", rep.fallback_count},
              {"sparsity_percent", oba::sparsity_percent(rep.x)},
              {"nnz", oba::count_nonzeros(rep.x)},
              {"solve_seconds", rep.solve_seconds},
              {"x", rep.x}};
  std::ofstream(o.out_dir + "/report.json") << report.dump(2) << '\n';
  std::ofstream(o.out_dir + "/manifest.json")
      << make_manifest("solve", o, {o.data}, started).dump(2) << '\n';

  std::cout << "termination: " << termination_name(rep.termination)
            << "  phi=" << fmt(rep.phi) << "  |g|_inf=" << fmt(rep.g_inf)
            << "  sparsity=" << oba::sparsity_percent(rep.x) << "%\n";
  return rep.termination == oba::Termination::kTolerance ? 0 : 2;
}

int cmd_generate(const CommonOpts& o, std::size_t n, const std::string& out_path) {
  std::string started = now_iso8601();
  oba::SyntheticSpec spec{n, o.seed};
  oba::Dataset ds = oba::generate_synthetic(spec);
  if (auto dir = fs::path(out_path).parent_path(); !dir.empty())
    fs::create_directories(dir);
  oba::write_libsvm(ds, out_path);

  CommonOpts echo = o;
  echo.data = out_path;
  json manifest = make_manifest("generate", echo, {out_path}, started);
  manifest["n"] = n;
  std::ofstream(out_path + ".manifest.json") << manifest.dump(2) << '\n';
  std::cout << "wrote " << out_path << " (" << ds.a.rows() << "x" << ds.a.cols()
            << ", nnz=" << ds.a.nnz() << ")\n";
  return 0;
}

int cmd_analyze(const CommonOpts& o, std::size_t cap) {
  oba::Dataset ds = load_dataset(o, o.data);
  auto obj = make_objective(o.loss, ds, o.ridge);
  if (obj->dim() > cap) {
    std::cerr << "analyze: n=" << obj->dim() << " exceeds cap " << cap
              << "; pass --cap to override\n";
    return 1;
  }
  oba::DenseVector x0(obj->dim(), 0.0);
  double d = oba::diagonal_dominance(*obj, x0, cap);
  std::cout << "dataset: " << o.data << "  rows=" << ds.a.rows()
            << " cols=" << ds.a.cols() << " nnz=" << ds.a.nnz() << '\n'
            << "diagonal_dominance(hessian at 0) = " << fmt(d) << '\n';
  return 0;
}

int cmd_benchmark(const CommonOpts& o, const std::vector<std::string>& data_paths,
                  const std::string& solvers_csv, double ref_tol,
                  double time_cap) {
  if (data_paths.empty()) {
    std::cerr << "benchmark: no datasets given\n";
    return 1;
  }
  std::vector<std::string> solvers;
  {
    std::stringstream ss(solvers_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) solvers.push_back(tok);
  }
  if (solvers.empty()) {
    std::cerr << "benchmark: no solvers given\n";
    return 1;
  }

  std::string started = now_iso8601();
  fs::create_directories(o.out_dir);

  for (const auto& path : data_paths) {
    oba::Dataset ds = load_dataset(o, path);
    auto obj = make_objective(o.loss, ds, o.ridge);
    std::string stem = fs::path(path).stem().string();

    // reference solve fixes phi*
    oba::SolveReport ref =
        run_solver("oba", *obj, o, ref_tol, 100000, time_cap);
    double phi_star = ref.phi;
    bool approximate = ref.termination != oba::Termination::kTolerance;

    json ref_json{{"dataset", path},
                  {"phi_star", phi_star},
                  {"ref_tol", ref_tol},
                  {"approximate", approximate}};
    std::ofstream(o.out_dir + "/" + stem + ".phistar.json")
        << ref_json.dump(2) << '\n';

    for (const auto& solver : solvers) {
      oba::SolveReport rep = run_solver(solver, *obj, o, o.tol, o.max_iters);
      write_trace_csv(o.out_dir + "/" + stem + "." + solver + ".csv", rep,
                      phi_star);
    }
  }

  json manifest = make_manifest("benchmark", o, data_paths, started);
  manifest["solvers"] = solvers_csv;
  manifest["ref_tol"] = ref_tol;
  manifest["time_cap"] = time_cap;
  std::ofstream(o.out_dir + "/manifest.json") << manifest.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthant-based adaptive solver for l1-regularized convex losses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonOpts o;
  std::size_t gen_n = 100;
  std::string gen_out = "synthetic.svm";
  std::size_t analyze_cap = 10000;
  std::vector<std::string> bench_data;
  std::string bench_solvers = "oba,ista";
  double ref_tol = 1e-10;
  double time_cap = 300.0;

  auto add_solver_opts = [&](CLI::App* cmd, bool with_solver) {
    cmd->add_option("--loss", o.loss)->check(CLI::IsMember({"logistic", "lasso", "quadratic"}));
    cmd->add_option("--mu", o.mu);
    if (with_solver)
      cmd->add_option("--solver", o.solver)->check(CLI::IsMember({"oba", "ista"}));
    cmd->add_option("--tol", o.tol);
    cmd->add_option("--max-iters", o.max_iters);
    cmd->add_option("--eta", o.eta);
    cmd->add_option("--eps", o.eps);
    cmd->add_option("--cg-tol", o.cg_tol);
    cmd->add_option("--ridge", o.ridge);
    cmd->add_option("--L", o.L);
    cmd->add_option("--seed", o.seed);
    cmd->add_option("--normalize", o.normalize)->check(CLI::IsMember({"none", "maxabs"}));
    cmd->add_option("--out", o.out_dir);
  };

  auto* solve_cmd = app.add_subcommand("solve", "Minimize f(x) + mu*||x||_1");
  solve_cmd->add_option("--data", o.data)->required();
  add_solver_opts(solve_cmd, true);

  auto* gen_cmd = app.add_subcommand("generate", "Generate a synthetic dataset");
  gen_cmd->add_option("--n", gen_n)->required();
  gen_cmd->add_option("--seed", o.seed)->required();
  gen_cmd->add_option("--out", gen_out);

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Diagonal dominance of the Hessian at 0");
  analyze_cmd->add_option("--data", o.data)->required();
  analyze_cmd->add_option("--loss", o.loss)->check(CLI::IsMember({"logistic", "lasso", "quadratic"}));
  analyze_cmd->add_option("--ridge", o.ridge);
  analyze_cmd->add_option("--normalize", o.normalize)->check(CLI::IsMember({"none", "maxabs"}));
  analyze_cmd->add_option("--cap", analyze_cap);

  auto* bench_cmd =
      app.add_subcommand("benchmark", "Relative-error-vs-time sweeps");
  bench_cmd->add_option("--data", bench_data)->required();
  bench_cmd->add_option("--solvers", bench_solvers);
  bench_cmd->add_option("--ref-tol", ref_tol);
  bench_cmd->add_option("--time-cap", time_cap);
  add_solver_opts(bench_cmd, false);

  CLI11_PARSE(app, argc, argv);

  // OBA_THREADS caps internal parallelism; the numeric kernels are currently
  // single-threaded, so any positive cap is honored trivially
  if (const char* threads = std::getenv("OBA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(threads, &end, 10);
    if (end == threads || *end != '\0' || v < 1) {
      std::cerr << "error: OBA_THREADS must be a positive integer\n";
      return 1;
    }
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(o);
    if (gen_cmd->parsed()) return cmd_generate(o, gen_n, gen_out);
    if (analyze_cmd->parsed()) return cmd_analyze(o, analyze_cap);
    if (bench_cmd->parsed())
      return cmd_benchmark(o, bench_data, bench_solvers, ref_tol, time_cap);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
