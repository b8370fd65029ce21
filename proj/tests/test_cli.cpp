#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "moritoric/cli.hpp"
#include "moritoric/serialization.hpp"

using namespace moritoric;
using namespace fixtures;
using io::Json;

namespace {

struct Result {
  int code;
  std::string text;
  Json json() const { return Json::parse(text); }
};

Result run_cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  int code = cli::run(args, in, out);
  return {code, out.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "moritoric-cli-tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << content;
  return path.string();
}

std::string fan_file(const std::string& name, const Fan& f) { return write_temp(name, io::dump(io::fan_to_json(f))); }

}  // namespace

TEST_CASE("wps piped into info") {
  auto wps = run_cli({"wps", "--weights", "1,1,2"});
  REQUIRE(wps.code == cli::kOk);
  auto info = run_cli({"info", "-"}, wps.text);
  REQUIRE(info.code == cli::kOk);
  Json j = info.json();
  CHECK(j["complete"] == true);
  CHECK(j["simplicial"] == true);
  CHECK(j["smooth"] == false);
  CHECK(j["picard_rank"] == 1);
  CHECK(j["fano"] == true);
  CHECK(j["projective"] == true);
}

TEST_CASE("cone theorem on P^2") {
  auto path = fan_file("p2.json", p2());
  auto r = run_cli({"cone-theorem", path});
  CHECK(r.code == cli::kOk);
  Json j = r.json();
  REQUIRE(j["rays"].size() == 1);
  CHECK(j["rays"][0]["length"] == "3");
  CHECK(j["rays"][0]["exception"] == true);

  auto bounded = run_cli({"cone-theorem", path, "--boundary", "1,0,0"});
  CHECK(bounded.json()["rays"][0]["length"] == "2");
  auto bad = run_cli({"cone-theorem", path, "--boundary", "3/2,0,0"});
  CHECK(bad.code == cli::kInvalidInput);
  CHECK(bad.json()["error"] == "BadBoundary");
}

TEST_CASE("validate") {
  auto ok = run_cli({"validate", fan_file("p2v.json", p2())});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.json()["valid"] == true);

  auto overlap = run_cli({"validate", fan_file("overlap.json", overlapping())});
  CHECK(overlap.code == cli::kInvalidInput);
  CHECK(overlap.json()["error"] == "InvalidFan");
  CHECK(overlap.json()["violations"][0]["kind"] == "intersection_not_face");

  auto garbage = run_cli({"validate", "-"}, "{not json");
  CHECK(garbage.code == cli::kInvalidInput);
  CHECK(garbage.json()["error"] == "InvalidInput");

  auto missing = run_cli({"validate", "-"}, R"({"dim":2,"rays":[[1,0]]})");
  CHECK(missing.code == cli::kInvalidInput);

  auto range = run_cli({"info", "-"}, R"({"dim":2,"rays":[[1,0]],"cones":[[0,1]]})");
  CHECK(range.code == cli::kInvalidInput);
  CHECK(range.json()["error"] == "InvalidFan");

  CHECK(run_cli({"info", "/nonexistent/fan.json"}).code == cli::kInvalidInput);
  CHECK(run_cli({"frobnicate"}).code == cli::kInvalidInput);
  CHECK(run_cli({}).code == cli::kInvalidInput);
  CHECK(run_cli({"--help"}).code == cli::kOk);
}

TEST_CASE("documents round-trip byte for byte") {
  std::vector<Fan> fans = {p2(), f1(), cube_fan(), weighted_projective({2, 3, 4}), Fan(0, {}, {Cone{}})};
  for (const auto& f : fans) {
    std::string text = io::dump(io::fan_to_json(f));
    CHECK(io::dump(io::fan_to_json(io::fan_from_json(Json::parse(text)))) == text);
  }
  std::string d = io::dump(io::divisor_to_json(divisor({Rational(1, 2), -3, 0})));
  CHECK(d == R"({"coeffs":["1/2","-3","0"]})");
  CHECK(io::dump(io::divisor_to_json(io::divisor_from_json(Json::parse(d)))) == d);
  CHECK(io::divisor_from_json(Json::parse(R"([1, "2/4"])")) == divisor({1, Rational(1, 2)}));

  // unknown keys are ignored
  Fan extra = io::fan_from_json(Json::parse(R"({"dim":1,"rays":[[1],[-1]],"cones":[[0],[1]],"comment":"x"})"));
  CHECK(extra == projective_space(1));
  CHECK(thrown_kind([] { io::parse_rational("0.5"); }) == ErrorKind::InvalidInput);
  CHECK(thrown_kind([] { io::parse_rational("1/0"); }) == ErrorKind::InvalidInput);
}

TEST_CASE("intersect, mori and fujita subcommands") {
  auto path = fan_file("f1.json", f1());
  auto inter = run_cli({"intersect", path, "--divisor", "1,1,1,1"});
  REQUIRE(inter.code == cli::kOk);
  Json j = inter.json();
  CHECK(j["walls"].size() == 4);
  CHECK(j["ample"] == true);

  auto divisor_path = write_temp("d.json", R"({"coeffs":["0","0","0","1"]})");
  CHECK(run_cli({"intersect", path, "--divisor", divisor_path}).json()["nef"] == false);
  CHECK(run_cli({"intersect", path, "--divisor", "[1,1,1]"}).code == cli::kInvalidInput);

  auto mori = run_cli({"mori", path}).json();
  CHECK(mori["picard_rank"] == 2);
  CHECK(mori["extremal"].size() == 2);

  auto p2_path = fan_file("p2f.json", p2());
  auto nef = run_cli({"fujita", p2_path, "--bundle", "2,0,0", "--mode", "nef"});
  CHECK(nef.code == cli::kOk);
  CHECK(nef.json()["exception"] == true);
  auto ample = run_cli({"fujita", p2_path, "--bundle", "3,0,0", "--mode", "ample"});
  CHECK(ample.json()["exception"] == true);
  CHECK(run_cli({"fujita", p2_path, "--bundle", "3,0,0", "--mode", "big"}).code == cli::kInvalidInput);
}

TEST_CASE("fano, contract, pullback and qfact subcommands") {
  auto rays = write_temp("fake.json", "[[1,0],[1,3],[-2,-3]]");
  auto fano = run_cli({"fano", "--rays-file", rays});
  CHECK(fano.code == cli::kOk);
  CHECK(fano.json()["short_wall"]["length"] == "1");
  auto p2_rays = write_temp("p2rays.json", R"({"rays":[[1,0],[0,1],[-1,-1]]})");
  CHECK(run_cli({"fano", "--rays-file", p2_rays}).json()["short_wall"].is_null());
  auto bad = write_temp("bad.json", "[[1,0],[0,1],[1,1]]");
  CHECK(run_cli({"fano", "--rays-file", bad}).json()["error"] == "BadConfiguration");

  auto f1_path = fan_file("f1c.json", f1());
  auto contracted = run_cli({"contract", f1_path, "--ray", "0"});
  REQUIRE(contracted.code == cli::kOk);
  Fan c = io::fan_from_json(contracted.json());
  CHECK(validate_fan(c).empty());
  CHECK(run_cli({"contract", f1_path, "--ray", "7"}).json()["error"] == "NotExtremal");

  auto p2_path = fan_file("p2p.json", p2());
  auto pulled = run_cli({"pullback", p2_path, "--fine", f1_path, "--divisor", "1,1,1"});
  CHECK(pulled.json()["coeffs"] == Json::parse(R"(["1","1","1","2"])"));
  auto crepant = run_cli({"pullback", p2_path, "--fine", f1_path, "--divisor", "0,0,0", "--crepant"});
  CHECK(crepant.json()["coeffs"][3] == "-1");
  CHECK(crepant.json()["out_of_range"] == Json::parse("[3]"));

  auto cube_path = fan_file("cube.json", cube_fan());
  auto q = run_cli({"qfact", cube_path, "--seed", "4"});
  REQUIRE(q.code == cli::kOk);
  CHECK(q.json()["certificate_valid"] == true);
  CHECK(q.json()["fan"]["cones"].size() == 12);
}

TEST_CASE("seeds and determinism") {
  auto cube_path = fan_file("cube2.json", cube_fan());
  auto a = run_cli({"qfact", cube_path});
  auto b = run_cli({"qfact", cube_path});
  CHECK(a.text == b.text);
  CHECK(a.json()["seed"] == 0);

  setenv("MORITORIC_SEED", "12", 1);
  auto env = run_cli({"qfact", cube_path});
  auto explicit_seed = run_cli({"qfact", cube_path, "--seed", "3"});
  auto random_env = run_cli({"random", "--dim", "3", "--rays", "6"});
  unsetenv("MORITORIC_SEED");
  CHECK(env.json()["seed"] == 12);
  CHECK(explicit_seed.json()["seed"] == 3);
  CHECK(random_env.text == run_cli({"random", "--dim", "3", "--rays", "6", "--seed", "12"}).text);

  setenv("MORITORIC_SEED", "nope", 1);
  CHECK(run_cli({"qfact", cube_path}).code == cli::kInvalidInput);
  unsetenv("MORITORIC_SEED");

  auto fan = run_cli({"random", "--kind", "coarsening", "--dim", "3", "--rays", "7", "--seed", "2"});
  REQUIRE(fan.code == cli::kOk);
  CHECK(run_cli({"validate", "-"}, fan.text).code == cli::kOk);
}

TEST_CASE("pretty output") {
  auto r = run_cli({"--pretty", "mori", fan_file("f1p.json", f1())});
  CHECK(r.code == cli::kOk);
  CHECK(r.text.find("picard_rank") != std::string::npos);
  CHECK(r.text.find("class") != std::string::npos);
  auto s = run_cli({"info", fan_file("p2q.json", p2()), "--pretty"});
  CHECK(s.text.find("complete") != std::string::npos);
  CHECK(s.text.front() != '{');
}
