#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string kCli = OBA_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("oba_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& name = "") const {
    return name.empty() ? path.string() : (path / name).string();
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

int run(const std::string& args, const std::string& capture = "/dev/null") {
  std::string cmd = kCli + " " + args + " >" + capture + " 2>&1";
  int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_lasso_dataset(const std::string& path) {
  // 4x3 least-squares problem with an obvious fit
  std::ofstream out(path);
  out << "1.0 1:1 2:0.5\n"
         "2.0 2:1\n"
         "0.5 1:0.5 3:0.1\n"
         "1.5 1:1 2:1 3:0.2\n";
}

}  // namespace

TEST_CASE("--version prints the release number") {
  TempDir t;
  CHECK(run("--version", t.str("v.txt")) == 0);
  CHECK(slurp(t.str("v.txt")).find("0.1.0") != std::string::npos);
}

TEST_CASE("no subcommand is an error") {
  CHECK(run("") != 0);
}

TEST_CASE("generate writes a dataset, a manifest, and is reproducible") {
  TempDir t;
  std::string out1 = t.str("a.svm"), out2 = t.str("b.svm");
  CHECK(run("generate --n 30 --seed 42 --out " + out1) == 0);
  CHECK(run("generate --n 30 --seed 42 --out " + out2) == 0);
  CHECK(fs::exists(out1));
  CHECK(slurp(out1) == slurp(out2));
  CHECK(!slurp(out1).empty());

  auto manifest = json::parse(slurp(out1 + ".manifest.json"));
  CHECK(manifest["command"] == "generate");
  CHECK(manifest["n"] == 30);
  CHECK(manifest["seed"] == 42);
  CHECK(manifest["datasets"][0]["fnv1a64"].get<std::string>().size() == 16);

  std::string out3 = t.str("c.svm");
  CHECK(run("generate --n 30 --seed 43 --out " + out3) == 0);
  CHECK(slurp(out1) != slurp(out3));
}

TEST_CASE("solve emits report, trace and manifest and exits 0 on tolerance") {
  TempDir t;
  write_lasso_dataset(t.str("d.svm"));
  int rc = run("solve --data " + t.str("d.svm") +
                   " --loss lasso --mu 0.01 --tol 1e-8 --out " + t.str("run"),
               t.str("stdout.txt"));
  CHECK(rc == 0);
  CHECK(slurp(t.str("stdout.txt")).find("termination: tolerance") !=
        std::string::npos);

  auto report = json::parse(slurp(t.str("run") + "/report.json"));
  CHECK(report["termination"] == "tolerance");
  CHECK(report["x"].size() == 3);
  CHECK(report["g_inf"].get<double>() <= 1e-8);
  CHECK(report["phi"].get<double>() > 0.0);

  std::string trace = slurp(t.str("run") + "/trace.csv");
  CHECK(trace.rfind("iter,seconds,phi,rel_err,g_inf,nnz,cycle_j,cg_iters,"
                    "alpha,alpha_bar\n", 0) == 0);

  auto manifest = json::parse(slurp(t.str("run") + "/manifest.json"));
  CHECK(manifest["command"] == "solve");
  CHECK(manifest["config"]["mu"] == 0.01);
  CHECK(manifest["version"] == "0.1.0");
}

TEST_CASE("oba and ista agree on the solution value") {
  TempDir t;
  write_lasso_dataset(t.str("d.svm"));
  std::string common = "solve --data " + t.str("d.svm") +
                       " --loss lasso --mu 0.05 --tol 1e-9 --max-iters 100000 ";
  CHECK(run(common + "--solver oba --out " + t.str("oba")) == 0);
  CHECK(run(common + "--solver ista --out " + t.str("ista")) == 0);
  double phi_oba =
      json::parse(slurp(t.str("oba") + "/report.json"))["phi"].get<double>();
  double phi_ista =
      json::parse(slurp(t.str("ista") + "/report.json"))["phi"].get<double>();
  CHECK(phi_oba == doctest::Approx(phi_ista).epsilon(1e-6));
}

TEST_CASE("a large mu drives the solution to all zeros") {
  TempDir t;
  write_lasso_dataset(t.str("d.svm"));
  CHECK(run("solve --data " + t.str("d.svm") +
            " --loss lasso --mu 100 --tol 1e-8 --out " + t.str("run")) == 0);
  auto report = json::parse(slurp(t.str("run") + "/report.json"));
  CHECK(report["sparsity_percent"] == 100.0);
  CHECK(report["nnz"] == 0);
}

TEST_CASE("iteration-capped run exits 2") {
  TempDir t;
  write_lasso_dataset(t.str("d.svm"));
  int rc = run("solve --data " + t.str("d.svm") +
               " --loss lasso --mu 0.001 --tol 1e-15 --max-iters 1 --out " +
               t.str("run"));
  CHECK(rc == 2);
  auto report = json::parse(slurp(t.str("run") + "/report.json"));
  CHECK(report["termination"] == "max_iters");
}

TEST_CASE("bad input exits 1") {
  TempDir t;
  CHECK(run("solve --data " + t.str("missing.svm") + " --loss lasso") == 1);
  write_lasso_dataset(t.str("d.svm"));
  // logistic needs binary labels; this file has regression targets
  CHECK(run("solve --data " + t.str("d.svm") + " --loss logistic") == 1);
}

TEST_CASE("solve on generated logistic data converges") {
  TempDir t;
  CHECK(run("generate --n 25 --seed 7 --out " + t.str("syn.svm")) == 0);
  int rc = run("solve --data " + t.str("syn.svm") +
               " --loss logistic --mu 0.01 --tol 1e-6 --max-iters 5000 --out " +
               t.str("run"));
  CHECK(rc == 0);
  auto report = json::parse(slurp(t.str("run") + "/report.json"));
  CHECK(report["g_inf"].get<double>() <= 1e-6);
}

TEST_CASE("analyze prints the dominance level and honors the cap") {
  TempDir t;
  CHECK(run("generate --n 20 --seed 3 --out " + t.str("syn.svm")) == 0);
  CHECK(run("analyze --data " + t.str("syn.svm") + " --loss logistic",
            t.str("an.txt")) == 0);
  std::string out = slurp(t.str("an.txt"));
  CHECK(out.find("diagonal_dominance") != std::string::npos);
  CHECK(out.find("rows=20") != std::string::npos);

  CHECK(run("analyze --data " + t.str("syn.svm") + " --loss logistic --cap 5",
            t.str("an2.txt")) == 1);
  CHECK(slurp(t.str("an2.txt")).find("--cap") != std::string::npos);
}

TEST_CASE("OBA_THREADS is validated") {
  TempDir t;
  write_lasso_dataset(t.str("d.svm"));
  std::string solve_args = "solve --data " + t.str("d.svm") +
                           " --loss lasso --mu 0.05 --out " + t.str("run");
  int ok = std::system(("OBA_THREADS=2 " + kCli + " " + solve_args +
                        " >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(ok) == 0);
  int bad = std::system(("OBA_THREADS=abc " + kCli + " " + solve_args +
                         " >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(bad) == 1);
}

TEST_CASE("benchmark writes phistar and per-solver traces") {
  TempDir t;
  write_lasso_dataset(t.str("bench.svm"));
  int rc = run("benchmark --data " + t.str("bench.svm") +
               " --loss lasso --mu 0.02 --tol 1e-7 --max-iters 20000"
               " --solvers oba,ista --ref-tol 1e-12 --out " +
               t.str("bench"));
  CHECK(rc == 0);
  auto phistar = json::parse(slurp(t.str("bench") + "/bench.phistar.json"));
  CHECK(phistar["approximate"] == false);
  CHECK(phistar["phi_star"].get<double>() > 0.0);

  for (const char* s : {"oba", "ista"}) {
    std::string csv = slurp(t.str("bench") + "/bench." + s + ".csv");
    CHECK(csv.rfind("iter,", 0) == 0);
    CHECK(csv.find('\n') != csv.size() - 1);  // at least one data row
  }
  auto manifest = json::parse(slurp(t.str("bench") + "/manifest.json"));
  CHECK(manifest["command"] == "benchmark");
  CHECK(manifest["solvers"] == "oba,ista");
}
