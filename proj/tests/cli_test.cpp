#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(IETCLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

fs::path write_doc(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "ietcli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

const char* kDoc = R"({
  "basis": ["1", {"sqrt": "2"}, {"sqrt": "3"}],
  "scalars": {"alpha": ["-1", "1", "0"], "beta": ["-3/2", "0", "1"]},
  "iets": {
    "rot5": {"pi": [2, 1], "lambda": [["4/5", "0", "0"], ["1/5", "0", "0"]]},
    "rotq": {"pi": [2, 1], "lambda": [["2", "-1", "0"], ["-1", "1", "0"]]},
    "f": {"pi": [3, 2, 1], "lambda": ["alpha", "beta", ["7/2", "-1", "-1"]]}
  }
})";

}  // namespace

TEST_CASE("validate reports canonical data") {
  auto doc = write_doc("ok.json", kDoc);
  RunResult r = run("validate " + doc.string());
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["iets"].size() == 3);
  for (const auto& item : j["iets"]) {
    CHECK(item["valid"] == true);
    if (item["name"] == "f") {
      CHECK(item["d"] == 3);
      CHECK(item["delta"] == 3);
    }
    if (item["name"] == "rotq") {
      CHECK(item["d"] == 0);
      CHECK(item["delta"] == 2);
    }
  }
}

TEST_CASE("growth command writes verdict json and csv series") {
  auto doc = write_doc("ok.json", kDoc);
  fs::path out = fs::temp_directory_path() / "ietcli_test" / "out";
  fs::remove_all(out);
  RunResult r = run("growth " + doc.string() + " f --horizon 300 --window 30 --series 25 --out-dir " +
                    out.string());
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"]["kind"] == "linear");
  CHECK(j["verdict"]["k"] == 2);
  CHECK(fs::exists(out / "f_growth.json"));
  std::ifstream csv(out / "f_series.csv");
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "n,d");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 25);

  RunResult rcsv = run("growth " + doc.string() + " rot5 --horizon 100 --window 10 --series 5 --format csv");
  CHECK(rcsv.out == "n,d\n1,0\n2,0\n3,0\n4,0\n5,0\n");
}

TEST_CASE("deterministic byte-identical output") {
  auto doc = write_doc("ok.json", kDoc);
  RunResult a = run("growth " + doc.string() + " f --horizon 200 --window 20 --series 10");
  RunResult b = run("growth " + doc.string() + " f --horizon 200 --window 20 --series 10");
  CHECK(a.out == b.out);
}

TEST_CASE("saf structure centralizer subcommands") {
  auto doc = write_doc("ok.json", kDoc);
  RunResult s = run("saf " + doc.string() + " rotq");
  CHECK(s.code == 0);
  auto js = nlohmann::json::parse(s.out);
  CHECK(js["saf"]["zero"] == false);

  RunResult st = run("structure " + doc.string() + " rot5 --horizon 100 --window 10");
  CHECK(st.code == 0);
  auto js2 = nlohmann::json::parse(st.out);
  CHECK(js2["order"]["order"] == 5);

  RunResult ce = run("centralizer " + doc.string() + " rot5 -n 5");
  CHECK(ce.code == 0);
  auto jc = nlohmann::json::parse(ce.out);
  CHECK(jc["commutes"] == true);

  RunResult dist = run("distortion " + doc.string() + " --generators f rot5 --target f -N 20");
  CHECK(dist.code == 0);
  auto jd = nlohmann::json::parse(dist.out);
  CHECK(jd["M_disc"] == 3);
}

TEST_CASE("exit codes: parse=1, validation=2, uncertified=3") {
  auto bad = write_doc("bad.json", "{ not json");
  CHECK(run("validate " + bad.string()).code == 1);

  auto badsum = write_doc("badsum.json", R"({"basis": ["1"], "iets": {"f": {"pi": [2,1],
    "lambda": [["1/2"], ["2/5"]]}}})");
  CHECK(run("validate " + badsum.string()).code == 2);

  auto doc = write_doc("ok.json", kDoc);
  CHECK(run("growth " + doc.string() + " nosuch --horizon 50 --window 5").code == 2);
  CHECK(run("nosuchcommand").code == 1);

  // horizon too small to classify: undetermined, certified required
  RunResult u = run("growth " + doc.string() + " f --horizon 4 --window 2 --require-certified");
  auto ju = nlohmann::json::parse(u.out);
  if (ju["verdict"]["kind"] == "undetermined") CHECK(u.code == 3);
}
