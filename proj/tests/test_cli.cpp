#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hurwitz/cli.hpp"
#include "hurwitz/errors.hpp"

using namespace hurwitz;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json a4_spec() {
  return {{"group", {{"family", "affine2"}, {"ell", 2}, {"k", 0}, {"order", 3}}},
          {"classes", {"C+", "C+", "C-", "C-"}},
          {"equivalence", "inner"}};
}

RunResult go(const json& spec, const std::string& cmd, const std::string& format = "json", const std::string& cache = "",
             int jobs = 0) {
  RunConfig c;
  c.spec = spec;
  c.command = cmd;
  c.format = format;
  c.cache_dir = cache;
  c.jobs = jobs;
  return run(c);
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("hurwitz_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("report on A4") {
  auto r = go(a4_spec(), "report");
  REQUIRE(r.exit_code == kExitOk);
  const auto& cs = r.report["components"];
  REQUIRE(cs.size() == 2);
  CHECK(cs[0]["degree"] == 9);
  CHECK(cs[0]["genus"] == 0);
  CHECK(cs[0]["lift"] == 1);
  CHECK(cs[1]["degree"] == 6);
  CHECK(cs[1]["genus"] == 0);
  CHECK(cs[1]["lift"] == -1);
  CHECK(cs[1]["obstructed"] == true);
  CHECK(cs[0]["obstructed"] == false);
  CHECK(r.report["nielsen_classes"] == 30);
  CHECK(json::parse(r.text) == r.report);
}

TEST_CASE("orbits on dihedral absolute") {
  json s{{"group", {{"family", "dihedral"}, {"m", 5}}},
         {"classes", {"2", "2", "2", "2"}},
         {"equivalence", "absolute"},
         {"T", "involution-cosets"}};
  auto r = go(s, "orbits");
  REQUIRE(r.exit_code == kExitOk);
  CHECK(r.report["orbit_count"] == 1);
}

TEST_CASE("every command runs on A4") {
  for (const std::string cmd : {"enumerate", "orbits", "cusps", "genus", "shmatrix", "lift", "tower", "report"})
    for (const std::string fmt : {"json", "tsv", "text"}) {
      CAPTURE(cmd);
      CAPTURE(fmt);
      auto r = go(a4_spec(), cmd, fmt);
      CHECK(r.exit_code == kExitOk);
      CHECK_FALSE(r.text.empty());
    }
  auto d = go(a4_spec(), "shmatrix", "dot");
  CHECK(d.exit_code == kExitOk);
  CHECK(d.text.rfind("graph sh {", 0) == 0);
  CHECK(go(a4_spec(), "cusps", "dot").exit_code == kExitConfig);
}

TEST_CASE("config errors exit 2") {
  auto bad = a4_spec();
  bad["classes"] = "C+";
  CHECK(go(bad, "report").exit_code == kExitConfig);
  bad = a4_spec();
  bad["group"]["family"] = "klein";
  CHECK(go(bad, "report").exit_code == kExitConfig);
  bad = a4_spec();
  bad["extra"] = 1;
  CHECK(go(bad, "report").exit_code == kExitConfig);
  CHECK(go(a4_spec(), "frobnicate").exit_code == kExitConfig);
  CHECK(go(a4_spec(), "report", "yaml").exit_code == kExitConfig);
  auto r = go(json::array(), "report");
  CHECK(r.exit_code == kExitConfig);
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("budget errors exit 3") {
  auto s = a4_spec();
  RunConfig c;
  c.spec = s;
  c.command = "enumerate";
  c.budget = 1;
  CHECK(run(c).exit_code == kExitBudget);
  json big{{"group", {{"family", "affine2"}, {"ell", 11}, {"k", 1}, {"order", 3}}}, {"classes", {"C+", "C-"}}};
  CHECK(go(big, "enumerate").exit_code == kExitBudget);
}

TEST_CASE("orbit cache round trip") {
  auto spec = NielsenSpec::from_json(a4_spec());
  auto idx = all_orbits(spec);
  auto back = orbits_from_json(spec, orbits_to_json(spec, idx));
  REQUIRE(back.orbits.size() == idx.orbits.size());
  for (std::size_t i = 0; i < idx.orbits.size(); ++i) {
    CHECK(back.orbits[i].members == idx.orbits[i].members);
    CHECK(back.orbits[i].seed == idx.orbits[i].seed);
  }
  CHECK(back.where == idx.where);
  // another spec's entry is refused
  auto other = NielsenSpec::from_json({{"group", {{"family", "alternating"}, {"n", 4}}}, {"classes", {"3+", "3+", "3-", "3-"}}});
  CHECK_THROWS_AS(orbits_from_json(other, orbits_to_json(spec, idx)), ConfigError);
}

TEST_CASE("cache hits give identical reports") {
  auto dir = scratch("cache");
  auto cold = go(a4_spec(), "report", "json", dir.string());
  REQUIRE(cold.exit_code == kExitOk);
  CHECK_FALSE(cold.cache_hit);
  auto warm = go(a4_spec(), "report", "json", dir.string());
  CHECK(warm.cache_hit);
  CHECK(warm.text == cold.text);
  // a tampered cache entry is caught
  for (auto& f : fs::directory_iterator(dir)) {
    std::ifstream in(f.path());
    json j = json::parse(in);
    in.close();
    std::swap(j["orbits"][0][0], j["orbits"][1][0]);
    std::ofstream(f.path()) << j.dump();
  }
  auto bad = go(a4_spec(), "report", "json", dir.string());
  CHECK(bad.exit_code == kExitInconsistent);
  fs::remove_all(dir);
}

TEST_CASE("worker count does not change the report") {
  json s{{"group", {{"family", "affine2"}, {"ell", 5}, {"k", 0}, {"order", 3}}}, {"classes", {"C+", "C+", "C-", "C-"}}};
  auto one = go(s, "report", "json", "", 1);
  auto three = go(s, "report", "json", "", 3);
  REQUIRE(one.exit_code == kExitOk);
  CHECK(one.text == three.text);
}

TEST_CASE("report files") {
  auto dir = scratch("out");
  RunConfig c;
  c.spec = a4_spec();
  c.command = "lift";
  c.format = "tsv";
  c.out_dir = dir.string();
  auto r = run(c);
  REQUIRE(r.exit_code == kExitOk);
  CHECK(fs::exists(dir / "lift.tsv"));
  CHECK(fs::exists(dir / "lift.json"));
  fs::remove_all(dir);
}

TEST_CASE("spec hash is stable and distinguishes specs") {
  auto a = NielsenSpec::from_json(a4_spec());
  auto b = NielsenSpec::from_json(a4_spec());
  CHECK(spec_hash(a) == spec_hash(b));
  CHECK(spec_hash(a).size() == 16);
  auto c = a.with_equivalence(Equivalence::Absolute);
  CHECK(spec_hash(a) != spec_hash(c));
}
