#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/experiments.hpp"

using namespace levylab;
using cli::Config;
using cli::ConfigError;

TEST_CASE("defaults are valid and materialize") {
  const Config c = Config::defaults();
  CHECK_NOTHROW(cli::make_measure(c));
  CHECK_NOTHROW(cli::make_field(c));
  CHECK_NOTHROW(cli::make_perturbation(c));
  CHECK(c.real("levy.alpha") == 1.5);
  CHECK_FALSE(c.is_explicit("levy.alpha"));
}

TEST_CASE("empty text parses to defaults; comments ignored") {
  const Config c = Config::parse_text("# just a comment\n\n");
  CHECK(c == Config::defaults());
  const Config d = Config::parse_text("levy.alpha = 0.7  # inline comment\n");
  CHECK(d.real("levy.alpha") == 0.7);
  CHECK(d.is_explicit("levy.alpha"));
}

TEST_CASE("constraint violations name the offending key") {
  Config c = Config::defaults();
  try {
    c.set("levy.alpha", "2.5");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("levy.alpha") != std::string::npos);
  }
  CHECK_THROWS_AS(c.set("no.such.key", "1"), ConfigError);
  CHECK_THROWS_AS(c.set("sim.kappa", "1.5"), ConfigError);
  CHECK_THROWS_AS(c.set("coeff.family", "bogus"), ConfigError);
  CHECK_THROWS_AS(Config::parse_text("levy.alpha\n"), ConfigError);
}

TEST_CASE("serialize/parse round trip is the identity") {
  Config c = Config::defaults();
  c.set("levy.family", "cone-stable");
  c.set("levy.cone.xi", "0.6,0.8");
  c.set("dimension", "2");
  c.set("quad.tol", "1e-9");
  c.set("sim.log-events", "true");
  const Config back = Config::parse_text(c.serialize());
  CHECK(back == c);
  CHECK(back.content_hash() == c.content_hash());
  Config other = Config::defaults();
  CHECK(other.content_hash() != c.content_hash());
}

TEST_CASE("cross-field validation at materialization") {
  Config c = Config::defaults();
  c.set("coeff.family", "constant");
  c.set("coeff.params", "1,2");  // wrong arity
  CHECK_THROWS_AS(cli::make_field(c), ConfigError);

  Config d = Config::defaults();
  d.set("coeff.params", "2,1.5");
  d.set("coeff.cupper", "3");  // family range [0.5, 3.5] overflows declared bound
  CHECK_THROWS_AS(cli::make_field(d), ConfigError);

  Config e = Config::defaults();
  e.set("levy.family", "truncated-stable");
  e.set("levy.truncation", "inf");
  CHECK_THROWS_AS(cli::make_measure(e), ConfigError);
}

TEST_CASE("unknown subcommand raises a usage error") {
  CHECK_THROWS_AS(cli::run_experiment({"frobnicate"}, Config::defaults()), ConfigError);
  CHECK_THROWS_AS(cli::run_experiment({"estimate", "everything"}, Config::defaults()),
                  ConfigError);
}

TEST_CASE("emit writes csv + summary + manifest with stable bodies") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "levylab-emit-test";
  fs::remove_all(dir);

  Config c = Config::defaults();
  c.set("exp.points", "4");
  c.set("exp.r-min", "0.01");
  c.set("exp.r-max", "0.1");
  const auto rep = cli::run_experiment({"modulus", "w"}, c);
  const auto files1 = cli::emit(rep, c, dir.string());
  REQUIRE(files1.size() == 3);  // csv, summary, manifest

  const auto read = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string first = read(files1[0]);
  CHECK(first.rfind("r,p,w", 0) == 0);  // header row present

  const auto rep2 = cli::run_experiment({"modulus", "w"}, c);
  const auto files2 = cli::emit(rep2, c, dir.string());
  CHECK(read(files2[0]) == first);
  fs::remove_all(dir);
}

TEST_CASE("binary exit codes: 0 pass, 1 verdict failure, 2 usage error") {
#ifdef LEVYLAB_CLI_BIN
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "levylab-exit-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string bin = LEVYLAB_CLI_BIN;
  const std::string redir = " > /dev/null 2>&1";

  int rc = std::system((bin + " modulus w --out " + dir.string() + redir).c_str());
  CHECK(WEXITSTATUS(rc) == 0);

  // Impossible slope tolerance forces a verdict failure.
  rc = std::system((bin + " kernel jnu --exp.slope-tol 1e-12 --exp.points 6 --out " +
                    dir.string() + redir)
                       .c_str());
  CHECK(WEXITSTATUS(rc) == 1);

  rc = std::system((bin + " no-such-command" + redir).c_str());
  CHECK(WEXITSTATUS(rc) == 2);

  rc = std::system((bin + " check drift --levy.alpha 7" + redir).c_str());
  CHECK(WEXITSTATUS(rc) == 2);

  rc = std::system((bin + " --help" + redir).c_str());
  CHECK(WEXITSTATUS(rc) == 0);
  fs::remove_all(dir);
#endif
}
