#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sphcontract/harness.hpp"
#include "sphcontract/repmodels.hpp"
#include "sphcontract/specfun.hpp"
#include "sphcontract/spherical.hpp"

using namespace sphc;

namespace {

struct CoutCapture {
  std::stringstream buffer;
  std::streambuf* old;
  CoutCapture() : old(std::cout.rdbuf(buffer.rdbuf())) {}
  ~CoutCapture() { std::cout.rdbuf(old); }
  std::string str() const { return buffer.str(); }
};

int cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"sphcontract"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("make_grid is deterministic and sized as configured") {
  GridSpec spec;
  const auto g1 = make_grid(3, spec);
  const auto g2 = make_grid(3, spec);
  REQUIRE(g1.size() == size_t(8 * 8 * 4));
  for (size_t i = 0; i < g1.size(); ++i) {
    CHECK((g1[i].x - g2[i].x).norm() == 0.0);
    CHECK((g1[i].k.matrix() - g2[i].k.matrix()).norm() == 0.0);
    CHECK(g1[i].x.norm() <= spec.max_radius + 1e-12);
  }
  GridSpec other = spec;
  other.seed = 999;
  const auto g3 = make_grid(3, other);
  CHECK((g3[0].k.matrix() - g1[0].k.matrix()).norm() > 1e-6);
}

TEST_CASE("ExperimentConfig validation") {
  GridSpec spec;
  spec.rotations = 2;
  spec.radii = 2;
  spec.directions = 2;
  CHECK_NOTHROW(ExperimentConfig::build(ContractionPair::CompactToMotion, 2,
                                        Partition({1}, 2), Partition({}, 1), 1.0,
                                        spec, {8, 16}));
  // Schedule must strictly increase.
  CHECK_THROWS_AS(
      ExperimentConfig::build(ContractionPair::CompactToMotion, 2,
                              Partition({1}, 2), Partition({}, 1), 1.0, spec,
                              {16, 16}),
      std::invalid_argument);
  // min(ell) below the minimal contracting index of tau.
  CHECK_THROWS_AS(
      ExperimentConfig::build(ContractionPair::CompactToMotion, 2,
                              Partition({3}, 2), Partition({}, 1), 1.0, spec,
                              {2, 8}),
      std::invalid_argument);
}

TEST_CASE("reports serialize deterministically") {
  ConvergenceReport r;
  r.rows = {{8, 0.25, 0.125}, {16, 0.0625, 0.03125}};
  r.config_echo = {{"pair", "\"compact->motion\""}, {"n", "2"}};
  r.seed = 42;
  r.fit_rate = -2.0;
  const std::string j1 = report_to_json(r);
  const std::string j2 = report_to_json(r);
  CHECK(j1 == j2);
  CHECK(j1 ==
        "{\"config\":{\"pair\":\"compact->motion\",\"n\":2},"
        "\"rows\":[{\"ell\":8,\"sup_error\":0.25,\"mean_error\":0.125},"
        "{\"ell\":16,\"sup_error\":0.0625,\"mean_error\":0.03125}],"
        "\"meta\":{\"version\":\"0.1.0\",\"seed\":42,\"rate\":-2}}");
  CHECK(report_to_csv(r) ==
        "ell,sup_error,mean_error\n8,0.25,0.125\n16,0.0625,0.03125\n");
}

TEST_CASE("mehler_heine_run rows decrease") {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.5 * i);
  const ConvergenceReport r = mehler_heine_run({50, 100, 200}, 0, 0, grid);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.monotone_decreasing());
  CHECK(r.rows.back().sup_error < 0.01);
  CHECK(r.rows[0].ell == 50);
  // Mean cannot exceed sup.
  for (const auto& row : r.rows) CHECK(row.mean_error <= row.sup_error + 1e-15);
  CHECK_THROWS_AS(mehler_heine_run({}, 0, 0, grid), std::invalid_argument);
}

TEST_CASE("axiom_run determinism and decay") {
  const ConvergenceReport a = axiom_run({10, 100, 1000}, 25, 7, 3);
  const ConvergenceReport b = axiom_run({10, 100, 1000}, 25, 7, 3);
  CHECK(report_to_json(a) == report_to_json(b));
  REQUIRE(a.rows.size() == 3);
  CHECK(a.rows[0].ell == 10);
  CHECK(a.monotone_decreasing());
  CHECK(a.rows[2].sup_error < 1e-2);
  CHECK_THROWS_AS(axiom_run({100, 10}, 5, 1, 2), std::invalid_argument);
}

TEST_CASE("convergence_run on a tiny schedule") {
  GridSpec spec;
  spec.rotations = 2;
  spec.radii = 2;
  spec.directions = 2;
  ExperimentConfig cfg = ExperimentConfig::build(
      ContractionPair::CompactToMotion, 2, Partition({0}, 2), Partition({}, 1),
      1.0, spec, {8, 16, 32});
  const ConvergenceReport r = convergence_run(cfg);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.monotone_decreasing());
  for (const auto& row : r.rows) {
    CHECK(std::isfinite(row.sup_error));
    CHECK(row.mean_error <= row.sup_error + 1e-15);
  }
  // Identity-only grid: both sides agree to quadrature accuracy.
  ExperimentConfig idcfg = cfg;
  idcfg.grid = {MotionElement::identity(2)};
  const ConvergenceReport rid = convergence_run(idcfg);
  for (const auto& row : rid.rows) CHECK(row.sup_error < 1e-10);
}

TEST_CASE("dual_convergence_run on a tiny schedule") {
  GridSpec spec;
  spec.rotations = 2;
  spec.radii = 2;
  spec.directions = 2;
  ExperimentConfig cfg = ExperimentConfig::build(
      ContractionPair::LorentzToMotion, 2, Partition({1}, 2), Partition({}, 1),
      1.0, spec, {8, 16, 32});
  const ConvergenceReport r = dual_convergence_run(cfg);
  CHECK(r.monotone_decreasing());
  ExperimentConfig idcfg = cfg;
  idcfg.grid = {MotionElement::identity(2)};
  const ConvergenceReport rid = dual_convergence_run(idcfg);
  for (const auto& row : rid.rows) CHECK(row.sup_error < 1e-8);
}

TEST_CASE("config file parsing") {
  const std::string path = "/tmp/sphc_test_config.txt";
  {
    std::ofstream f(path);
    f << "# comment line\n"
      << "n = 2\n"
      << "tau = 1   # trailing comment\n"
      << "grid.seed = 77\n";
  }
  const auto kv = parse_config_file(path);
  CHECK(kv.at("n") == "2");
  CHECK(kv.at("tau") == "1");
  CHECK(kv.at("grid.seed") == "77");
  CHECK_THROWS_AS(parse_config_file("/nonexistent/cfg"), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("cli: branch lists restrictions") {
  CoutCapture cap;
  const int code = cli({"branch", "--group", "so5", "--partition", "2,1"});
  CHECK(code == 0);
  const std::string out = cap.str();
  CHECK(out == "(1,-1)\n(1,0)\n(1,1)\n(2,-1)\n(2,0)\n(2,1)\n");
}

TEST_CASE("cli: eval motion value matches bessel_j") {
  CoutCapture cap;
  const int code = cli({"eval", "--pair", "motion", "--n", "2", "--tau", "0",
                        "--sigma", "-", "--R", "1", "--x", "1,0"});
  CHECK(code == 0);
  double re = 0, im = 0;
  REQUIRE(std::sscanf(cap.str().c_str(), "%lg%lg", &re, &im) == 2);
  CHECK(std::abs(re - bessel_j(0, 1.0)) < 1e-9);
  CHECK(std::abs(im) < 1e-9);
}

TEST_CASE("cli: exit codes") {
  CHECK(cli({"--definitely-unknown-flag"}) == 2);
  CHECK(cli({"branch", "--group", "notagroup", "--partition", "1"}) == 2);
  const int code =
      cli({"mehler-heine", "--N", "10,20", "--out", "/tmp/sphc_mh.json"});
  CHECK(code == 0);
  std::ifstream f("/tmp/sphc_mh.json");
  std::string json((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  CHECK(json.find("\"rows\":[{\"ell\":10,") != std::string::npos);
  std::remove("/tmp/sphc_mh.json");
}

TEST_CASE("cli: contract honours requirement flags with exit 3") {
  const int ok = cli({"contract", "--n", "2", "--tau", "0", "--ell", "8,16",
                      "--grid-rotations", "2", "--grid-radii", "2",
                      "--grid-directions", "1", "--out", "/tmp/sphc_c.json",
                      "--require-monotone", "true"});
  CHECK(ok == 0);
  const int bad = cli({"contract", "--n", "2", "--tau", "0", "--ell", "8,16",
                       "--grid-rotations", "2", "--grid-radii", "2",
                       "--grid-directions", "1", "--out", "/tmp/sphc_c.json",
                       "--require-final-sup", "1e-12"});
  CHECK(bad == 3);
  std::remove("/tmp/sphc_c.json");
}

TEST_CASE("cli: reports are byte-identical across runs") {
  const char* p1 = "/tmp/sphc_r1.json";
  const char* p2 = "/tmp/sphc_r2.json";
  for (const char* p : {p1, p2}) {
    const int code = cli({"axiom", "--alphas", "10,100", "--pairs", "20",
                          "--seed", "3", "--out", p});
    REQUIRE(code == 0);
  }
  auto slurp = [](const char* p) {
    std::ifstream f(p);
    return std::string((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
  };
  CHECK(slurp(p1) == slurp(p2));
  CHECK(!slurp(p1).empty());
  std::remove(p1);
  std::remove(p2);
}

TEST_CASE("cli: every subcommand accepts --config") {
  const std::string path = "/tmp/sphc_cfg_all.txt";
  {
    std::ofstream f(path);
    f << "group = so4\npartition = 3,0\n";
  }
  {
    CoutCapture cap;
    CHECK(cli({"branch", "--config", path.c_str()}) == 0);
    CHECK(cap.str() == "(0)\n(1)\n(2)\n(3)\n");
  }
  {
    std::ofstream f(path);
    f << "pair = motion\nn = 2\ntau = 0\nsigma = -\nR = 1\nx = 1,0\n";
  }
  {
    CoutCapture cap;
    CHECK(cli({"eval", "--config", path.c_str()}) == 0);
    double re = 0, im = 0;
    REQUIRE(std::sscanf(cap.str().c_str(), "%lg%lg", &re, &im) == 2);
    CHECK(std::abs(re - bessel_j(0, 1.0)) < 1e-9);
  }
  {
    std::ofstream f(path);
    f << "alphas = 10,100\npairs = 5\nseed = 4\nn = 2\nout.json = -\n";
  }
  {
    CoutCapture cap;
    CHECK(cli({"axiom", "--config", path.c_str()}) == 0);
    CHECK(cap.str().find("\"rows\"") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("cli: zero-Plancherel character evaluation") {
  CoutCapture cap;
  const int code = cli({"eval", "--pair", "character", "--n", "2", "--lambda",
                        "0.5,0.5", "--x", "1,1"});
  CHECK(code == 0);
  double re = 0, im = 0;
  REQUIRE(std::sscanf(cap.str().c_str(), "%lg%lg", &re, &im) == 2);
  CHECK(re == doctest::Approx(std::cos(1.0)));
  CHECK(im == doctest::Approx(std::sin(1.0)));
  CHECK(cap.str().find("zero Plancherel measure") != std::string::npos);
}

TEST_CASE("n=2 trivial-type sweep reproduces the classical scalar errors") {
  // For tau = 0 the compact side is P_ell(cos(|x|R/ell)) and the motion
  // side is J_0(R|x|); the sweep's pointwise error must match the scalar
  // difference up to the identification tolerance.
  const double R = 1.0;
  const TauModel tau = TauModel::make(2, Partition({0}, 2));
  const MotionSpherical motion(MotionRepParams(2, Partition({}, 1), R), tau);
  for (int ell : {16, 64}) {
    const CompactSpherical compact(CompactRepLabel{Partition({ell}, 3)}, tau);
    for (double r : {0.5, 1.3, 2.0}) {
      Eigen::VectorXd x(2);
      x << r, 0.0;
      const MotionElement g(Rotation::identity(2), x);
      const double err =
          std::abs(compact.value(contract_compact(ell / R, g)).mat(0, 0) -
                   motion.value(g).mat(0, 0));
      const double scalar = std::abs(jacobi_p(ell, 0, 0, std::cos(r * R / ell)) -
                                     bessel_j(0, R * r));
      CHECK(std::abs(err - scalar) < 1e-8);
    }
  }
}
