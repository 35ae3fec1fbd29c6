#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = kslab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir(const std::string& name) {
  const auto p = fs::temp_directory_path() / "kslab_test_cli" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& name, const json& j) {
  const auto p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

json small_simulation() {
  return {{"schema", "kslab/simulate/1"},
          {"geometry", {{"kind", "rectangle"}, {"nx", 16}}},
          {"t_end", 0.1},
          {"u0", {{"kind", "bumps"}, {"background", 0.5}, {"bumps", {{{"mass", 2}, {"cx", 0.4}, {"cy", 0.5}, {"width", 0.3}}}}}},
          {"v0", {{"kind", "cosine"}, {"value", 1}, {"amplitude", 0.5}, {"mode_x", 1}, {"mode_y", 1}}},
          {"monitor", {{"every", 0.02}, {"snapshot_every", 0.05}, {"radii_cells", {2, 4}}}}};
}

}  // namespace

TEST_CASE("exponents command") {
  const auto dir = workdir("exponents");
  const auto cfg = write_config(dir, "e.json",
                                {{"schema", "kslab/exponents/1"}, {"output_dir", "res"}, {"N", 2}, {"r", 2}, {"q", 2}, {"theta", 1}});
  const auto r = invoke({"exponents", "--config", cfg.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("a=0.5") != std::string::npos);
  CHECK(r.out.find("b=0.75") != std::string::npos);
  REQUIRE(fs::exists(dir / "res" / "exponents.json"));
  const auto m = read_json(dir / "res" / "manifest.json");
  CHECK(m["tool"] == "kslab");
  CHECK(m["command"] == "exponents");
  CHECK(m["exit_code"] == 0);
  CHECK(m["artifacts"] == json::array({"exponents.json"}));
  CHECK(m["config"]["q"] == 2);
  CHECK(m.contains("wall_time_s"));
  CHECK(m.contains("version"));
  CHECK(read_json(dir / "res" / "exponents.json")["exponents"]["q0"] == 3.0);

  // flags alone print without writing
  const auto f = invoke({"exponents", "--N", "3", "--r", "2", "--q", "4"});
  CHECK(f.code == 0);
  CHECK(f.out.find("p=") != std::string::npos);
}

TEST_CASE("invalid input exits 2") {
  const auto dir = workdir("invalid");
  const auto r = invoke({"exponents", "--N", "3", "--r", "2", "--q", "6"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Nr/(N-r)") != std::string::npos);

  std::ofstream(dir / "broken.json") << "{not json";
  CHECK(invoke({"exponents", "--config", (dir / "broken.json").string()}).code == 2);
  const auto wrong = write_config(dir, "w.json", {{"schema", "kslab/simulate/1"}, {"N", 2}});
  CHECK(invoke({"exponents", "--config", wrong.string(), "--out", (dir / "o").string()}).code == 2);
  CHECK(invoke({"no-such-command"}).code == 2);
  CHECK(invoke({"simulate"}).code == 2);
  auto sim = small_simulation();
  sim["dt"] = {{"safety", 1.5}};
  CHECK(invoke({"simulate", "--config", write_config(dir, "s.json", sim).string(), "--out", (dir / "s").string()}).code ==
        2);
}

TEST_CASE("I/O failures exit 4") {
  const auto dir = workdir("io");
  CHECK(invoke({"simulate", "--config", (dir / "missing.json").string()}).code == 4);
  CHECK(invoke({"report", (dir / "nothing").string()}).code == 4);
  fs::create_directories(dir / "empty");
  CHECK(invoke({"report", (dir / "empty").string()}).code == 4);

  auto cfg = json{{"schema", "kslab/exponents/1"}, {"output_dir", "res"}, {"overwrite", false}, {"N", 2}, {"r", 3}, {"q", 5}};
  const auto path = write_config(dir, "e.json", cfg);
  CHECK(invoke({"exponents", "--config", path.string()}).code == 0);
  const auto again = invoke({"exponents", "--config", path.string()});
  CHECK(again.code == 4);
  CHECK(again.err.find("overwrite") != std::string::npos);
}

TEST_CASE("numerical halt exits 3") {
  const auto dir = workdir("nan");
  json sim = small_simulation();
  sim["geometry"]["nx"] = 8;
  sim["dt"] = {{"dt_floor", 1e-300}};
  sim["u0"] = {{"kind", "constant"}, {"value", 1e308}};
  sim["v0"] = {{"kind", "cosine"}, {"value", 1e10}, {"amplitude", 1e10}, {"mode_x", 1}, {"mode_y", 0}};
  const auto r = invoke({"simulate", "--config", write_config(dir, "n.json", sim).string(), "--out", (dir / "o").string()});
  CHECK(r.code == 3);
  const auto halt = read_json(dir / "o" / "halt.json");
  CHECK(halt["halt"] == "nan");
  CHECK(read_json(dir / "o" / "manifest.json")["exit_code"] == 3);
}

TEST_CASE("simulate reruns are byte-identical and report reads back") {
  const auto dir = workdir("determinism");
  const auto cfg = write_config(dir, "s.json", small_simulation());
  REQUIRE(invoke({"simulate", "--config", cfg.string(), "--out", (dir / "a").string()}).code == 0);
  REQUIRE(invoke({"simulate", "--config", cfg.string(), "--out", (dir / "b").string()}).code == 0);
  const auto manifest = read_json(dir / "a" / "manifest.json");
  int compared = 0;
  for (const auto& name : manifest["artifacts"]) {
    const auto rel = name.get<std::string>();
    CHECK(slurp(dir / "a" / rel) == slurp(dir / "b" / rel));
    ++compared;
  }
  CHECK(compared >= 8);
  CHECK(manifest["summary"]["halt"] == "time_reached");

  const auto rep = invoke({"report", (dir / "a").string()});
  CHECK(rep.code == 0);
  CHECK(rep.out.find("time_reached") != std::string::npos);
  CHECK(rep.out.find("u_inf_final") != std::string::npos);

  const auto conc = invoke({"concentration", "--run", (dir / "a").string(), "--radii", "2h,4h"});
  CHECK(conc.code == 0);
  CHECK(fs::exists(dir / "a" / "concentration" / "concentration.csv"));
}

TEST_CASE("verify-ineq, modulus and extend") {
  const auto dir = workdir("pipeline");
  const json vi = {{"schema", "kslab/verify-ineq/1"},
                   {"params", {{"N", 2}, {"r", 2}, {"q", 2}, {"theta", 1}}},
                   {"grid", {{"kind", "rectangle"}, {"nx", 64}}},
                   {"epsilons", {0.1, 0.01}},
                   {"family", {{"kind", "concentration"}, {"lambdas", {1, 2, 4}}}}};
  const auto r = invoke({"verify-ineq", "--config", write_config(dir, "v.json", vi).string(), "--out", (dir / "v").string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "v" / "terms.csv"));
  const auto rep = invoke({"report", (dir / "v").string()});
  CHECK(rep.out.find("eps=0.01") != std::string::npos);
  CHECK(rep.out.find("fitted_c") != std::string::npos);

  // a snapshot from a simulate run feeds modulus and extend
  const auto sim = write_config(dir, "s.json", small_simulation());
  REQUIRE(invoke({"simulate", "--config", sim.string(), "--out", (dir / "s").string()}).code == 0);
  const auto snap = dir / "s" / "snapshots" / "u_000000.ksf";
  REQUIRE(fs::exists(snap));
  CHECK(invoke({"modulus", "--field", snap.string(), "--p", "1", "--out", (dir / "m" / "curve.csv").string()}).code == 0);
  CHECK(fs::exists(dir / "m" / "curve.csv"));
  CHECK(fs::exists(dir / "m" / "manifest.json"));
  const auto e = invoke({"extend", "--field", snap.string(), "--margin", "0.25", "--out", (dir / "x" / "ext.ksf").string(),
                        "--report", (dir / "x" / "report.csv").string()});
  CHECK(e.code == 0);
  CHECK(fs::exists(dir / "x" / "ext.ksf"));
  CHECK(fs::exists(dir / "x" / "report.csv"));
  CHECK(invoke({"extend", "--field", snap.string(), "--margin", "0.9", "--out", (dir / "y").string()}).code == 2);
}
