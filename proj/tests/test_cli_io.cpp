#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "ccm/config.hpp"
#include "ccm/io.hpp"
#include "ccm/observables.hpp"

using namespace ccm;

TEST_CASE("config parser: sections, values, overrides, diagnostics") {
  const std::string text =
      "# comment\n"
      "[grid]\n"
      "n = 1024\n"
      "length = 100.0\n"
      "\n"
      "[run]\n"
      "sign = defocusing\n"
      "dt = 1e-3\n";
  RunConfig cfg = RunConfig::parse(text);
  CHECK(cfg.get_int("grid", "n") == 1024);
  CHECK(cfg.get_double("grid", "length") == 100.0);
  CHECK(cfg.get("run", "sign") == "defocusing");
  cfg.set("run.dt", "5e-4");
  CHECK(cfg.get_double("run", "dt") == 5e-4);

  CHECK_THROWS(RunConfig::parse("key_without_section = 1\n"));
  CHECK_THROWS(RunConfig::parse("[a]\nno_equals_here\n"));
  CHECK_THROWS(RunConfig::parse("[a]\nk = 1\nk = 2\n"));
  CHECK_THROWS(cfg.get("grid", "missing"));
  CHECK_THROWS(cfg.get_double("run", "sign"));

  // unknown keys are errors, not warnings
  RunConfig c2 = RunConfig::parse("[grid]\nn = 8\nwhatever = 1\n");
  CHECK_THROWS(c2.require_known({{"grid", {"n", "length"}}}));
}

TEST_CASE("config lists") {
  RunConfig cfg = RunConfig::parse("[m]\nks = 1,2,4, 8\n");
  auto v = cfg.get_list_or("m", "ks", {});
  REQUIRE(v.size() == 4);
  CHECK(v[3] == 8.0);
  CHECK(cfg.get_list_or("m", "absent", {3.0})[0] == 3.0);
}

TEST_CASE("field CSV dump carries grid header and both representations") {
  auto g = make_grid(64, 10.0);
  HardyField q = random_field(g, 1, 0.5, 2.0);
  std::string csv = field_csv(q);
  CHECK(csv.find("n_points=64") != std::string::npos);
  CHECK(csv.find("x,re_q,im_q,k,xi,re_qhat,im_qhat") != std::string::npos);
  // one data row per grid point plus two header lines
  size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == 64 + 2);
}

TEST_CASE("atomic write lands complete files") {
  const std::string path = "test_atomic_out.txt";
  atomic_write(path, "hello\n");
  std::ifstream f(path);
  std::string s;
  std::getline(f, s);
  CHECK(s == "hello");
  std::remove(path.c_str());
}

TEST_CASE("observables JSON serialization") {
  auto g = make_grid(64, 10.0);
  ProductEngine pe(g);
  HardyField q = random_field(g, 2, 0.5, 2.0);
  ObservableSet o = observable_set(q, Sign::defocusing, pe, {1.0});
  json j = observables_json(0.5, o, {});
  CHECK(j["t"] == 0.5);
  CHECK(j["mass"].get<double>() == o.mass);
  CHECK(j["tails"].size() == 1);
}
