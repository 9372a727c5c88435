// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orfcs/cli.hpp"
#include "orfcs/config.hpp"
#include "orfcs/error.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "orfcs");
  std::ostringstream out, err;
  Run r;
  r.code = orfcs::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("ORFCS_TEST_TMP");
  const fs::path base = env ? fs::path(env) : fs::temp_directory_path() / "orfcs_cli_tests";
  const fs::path p = base / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("coherence of FIR against Laguerre 0.5") {
    const Run r = run({"coherence"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["mu"].get<double>() == doctest::Approx(0.8660254).epsilon(1e-7));
    CHECK(j["argmax"] == nlohmann::json::array({1, 1}));
  }

  TEST_CASE("a pole on the unit circle is a validation error naming the pole") {
    const Run r = run({"coherence", "--set", "basis_b.poles=[1.0]"});
    CHECK(r.code == orfcs::cli::kExitValidation);
    CHECK(r.err.find("PoleOutsideDisk") != std::string::npos);
    CHECK(r.err.find("pole #1") != std::string::npos);
  }

  TEST_CASE("unknown keys and malformed overrides are rejected") {
    CHECK(run({"coherence", "--set", "basis_b.pole=0.3"}).code == orfcs::cli::kExitValidation);
    CHECK(run({"coherence", "--set", "nothing"}).code == orfcs::cli::kExitValidation);
    CHECK(run({"coherence", "--set", "basis_a=3"}).code == orfcs::cli::kExitValidation);
    CHECK(run({"coherence", "--config", "/nonexistent/config.json"}).code ==
          orfcs::cli::kExitValidation);
    CHECK(run({"nosuchcommand"}).code == orfcs::cli::kExitValidation);
    CHECK(run({}).code == orfcs::cli::kExitValidation);
  }

  TEST_CASE("configuration files merge over defaults") {
    const fs::path dir = scratch("config");
    {
      std::ofstream f(dir / "cfg.json");
      f << R"({"basis_b": {"poles": [0.9]}, "n_grid": 512})";
    }
    const Run r = run({"orthotest", "-c", (dir / "cfg.json").string()});
    REQUIRE(r.code == 0);
    CHECK(r.json()["n_grid"] == 512);
    {
      std::ofstream f(dir / "bad.json");
      f << R"({"basis_b": {"colour": 1}})";
    }
    const Run bad = run({"orthotest", "-c", (dir / "bad.json").string()});
    CHECK(bad.code == orfcs::cli::kExitValidation);
    CHECK(bad.err.find("basis_b.colour") != std::string::npos);
  }

  TEST_CASE("override values") {
    auto cfg = orfcs::default_config();
    orfcs::apply_override(cfg, "phase.sampling=bernoulli");
    CHECK(cfg["phase"]["sampling"] == "bernoulli");
    orfcs::apply_override(cfg, "basis_b.poles=[[0.2, 0.3], [0.2, -0.3]]");
    CHECK(cfg["basis_b"]["poles"].size() == 2);
    orfcs::apply_override(cfg, "n_grid=32");
    CHECK(cfg["n_grid"] == 32);
    CHECK_THROWS_AS(orfcs::apply_override(cfg, "a..b=1"), orfcs::Error);
    CHECK(orfcs::pole_from_json(nlohmann::ordered_json::parse(R"({"re": 0.1, "im": -0.2})"), "p") ==
          orfcs::cdouble(0.1, -0.2));
  }

  TEST_CASE("reconstruct with full sampling recovers the planted vector") {
    const Run r = run({"reconstruct", "-s", "n_grid=64", "-s", "reconstruct.plant.support=[2,11]",
                       "-s", "reconstruct.plant.values=[1.5,-0.75]"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["status"] == "Optimal");
    CHECK(j["m"] == 64);
    CHECK(j["exact"] == true);
    CHECK(j["relative_error"].get<double>() <= 1e-6);
    CHECK(j["support"] == nlohmann::json::array({2, 11}));
  }

  TEST_CASE("reconstruct from a measurement file") {
    const fs::path dir = scratch("measure");
    const Run planted = run({"reconstruct", "-s", "n_grid=64", "-s", "reconstruct.m=24", "-s",
                             "reconstruct.plant.support=[3,12]", "-s",
                             "reconstruct.plant.values=[1,-1]"});
    REQUIRE(planted.code == 0);
    // Rebuild the measurements the same run used and feed them back as CSV.
    const auto omega = planted.json()["omega"];
    const Run dict = run({"orthotest", "-s", "n_grid=64", "-s", "orthotest.write_dictionary=true",
                          "-o", (dir / "dict").string(), "-q"});
    REQUIRE(dict.code == 0);
    std::ifstream csv(dir / "dict" / "dictionary.csv");
    std::string line;
    std::getline(csv, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(csv, line)) {
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      std::vector<double> v;
      double x;
      while (ls >> x) v.push_back(x);
      rows.push_back(v);
    }
    {
      std::ofstream m(dir / "h.csv");
      m.precision(17);
      m << "r,re,im\n";
      for (const auto& r : omega) {
        const auto& row = rows[r.get<std::size_t>() - 1];
        // columns 3 and 12: re at 1 + 2(k-1), im next
        const double re = row[1 + 2 * 2] - row[1 + 2 * 11];
        const double im = row[2 + 2 * 2] - row[2 + 2 * 11];
        m << r.get<std::size_t>() << ',' << re << ',' << im << '\n';
      }
    }
    const Run r = run({"reconstruct", "-s", "n_grid=64", "-s",
                       "reconstruct.measurements=" + (dir / "h.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(r.json()["support"] == nlohmann::json::array({3, 12}));

    {
      std::ofstream m(dir / "bad.csv");
      m << "r,re,im\n65,1,0\n";
    }
    CHECK(run({"reconstruct", "-s", "n_grid=64", "-s",
               "reconstruct.measurements=" + (dir / "bad.csv").string()})
              .code == orfcs::cli::kExitValidation);
  }

  TEST_CASE("reconstruct needs data") {
    CHECK(run({"reconstruct"}).code == orfcs::cli::kExitValidation);
    CHECK(run({"reconstruct", "-s", "reconstruct.plant.support=[1]", "-s",
               "reconstruct.plant.values=[1]", "-s", "reconstruct.m=0"})
              .code == orfcs::cli::kExitValidation);
  }

  TEST_CASE("certify and bound") {
    const Run c = run({"certify", "-s", "n_grid=64", "-s", "certify.support=[1]", "-s",
                       "certify.signs=[1]"});
    REQUIRE(c.code == 0);
    CHECK(c.json()["certified"] == true);
    const Run s = run({"certify", "-s", "basis_b.kind=fir", "-s", "basis_b.poles=[]", "-s",
                       "certify.support=[2,10]", "-s", "certify.m=5"});
    CHECK(s.code == orfcs::cli::kExitSolver);
    CHECK(s.json()["status"] == "SingularGram");

    const Run b = run({"bound"});
    REQUIRE(b.code == 0);
    CHECK(b.json().contains("m_min"));
    CHECK(run({"bound", "-s", "bound.delta=1.5"}).code == orfcs::cli::kExitValidation);
  }

  TEST_CASE("artifacts, manifest and byte-identical reruns") {
    const fs::path dir = scratch("phase");
    const std::vector<std::string> args{"phase", "-s", "n_grid=32", "-s", "phase.trials=5",
                                        "-s", "phase.m_values=[8,16]", "-q"};
    auto a1 = args;
    a1.insert(a1.end(), {"-o", (dir / "a").string(), "-j", "2"});
    auto a2 = args;
    a2.insert(a2.end(), {"-o", (dir / "b").string(), "-j", "1"});
    REQUIRE(run(a1).code == 0);
    REQUIRE(run(a2).code == 0);
    CHECK(slurp(dir / "a" / "phase.csv") == slurp(dir / "b" / "phase.csv"));
    CHECK(slurp(dir / "a" / "phase.json") == slurp(dir / "b" / "phase.json"));
    const auto manifest = nlohmann::json::parse(slurp(dir / "a" / "manifest.json"));
    CHECK(manifest["subcommand"] == "phase");
    CHECK(manifest["config"]["n_grid"] == 32);
    CHECK(manifest["seed"] == 1);
    CHECK(manifest["artifacts"].size() == 2);
    CHECK(manifest.contains("created_utc"));
    for (const auto& e : fs::directory_iterator(dir / "a")) {
      CHECK(e.path().extension() != ".tmp");
    }
  }

  TEST_CASE("uncertainty and concentration subcommands") {
    const Run u = run({"uncertainty", "-s", "uncertainty.instances=50", "-s", "basis_b.order=24"});
    REQUIRE(u.code == 0);
    CHECK(u.json()["violations"] == 0);
    const Run c = run({"concentration", "-s", "concentration.trials=20", "-s",
                       "concentration.m=256"});
    REQUIRE(c.code == 0);
    CHECK(c.json()["emp_prob_half_dev"] == 0.0);
  }

  TEST_CASE("version and help") {
    const Run v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find(orfcs::cli::version()) != std::string::npos);
    CHECK(run({"--help"}).code == 0);
  }
}
