#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lps/cli.hpp"
#include "lps/matrix_io.hpp"
#include "lps/parallel.hpp"

using namespace lps;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "lps_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_matrix(const std::string& name, const SymMatrix& m) {
  const auto path = (scratch() / name).string();
  write_matrix_file(path, m);
  return path;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"no-such-command"}).code == kExitUsage);
  CHECK(run({"check-monotone"}).code == kExitUsage);
  CHECK(run({"check-monotone", "power:2"}).code == kExitUsage);
  CHECK(run({"check-monotone", "bogus"}).code == kExitUsage);
  CHECK(run({"probe", "1", "1"}).code == kExitUsage);
  CHECK(run({"probe", "2", "1"}).code == kExitUsage);
  CHECK(run({"chernoff", "/nonexistent/a.json", "/nonexistent/b.json"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitPass);
  const auto bad = run({"check-monotone", "power:abc"});
  CHECK(bad.err.find("error:") != std::string::npos);
}

TEST_CASE("malformed matrix files") {
  const auto dir = scratch();
  const auto ragged = (dir / "ragged.json").string();
  std::ofstream(ragged) << R"({"n": 2, "data": [[1, 0], [0]]})";
  const auto nan = (dir / "nan.json").string();
  std::ofstream(nan) << R"({"n": 1, "data": [["x"]]})";
  const auto garbage = (dir / "garbage.json").string();
  std::ofstream(garbage) << "not json";
  const auto ok = write_matrix("ok1.json", SymMatrix::diag({1.0}));
  for (const auto& p : {ragged, nan, garbage}) {
    CHECK(run({"chernoff", p, ok}).code == kExitUsage);
  }
  const auto neg = write_matrix("neg.json", SymMatrix::diag({-1.0}));
  CHECK(run({"chernoff", neg, ok}).code == kExitUsage);
}

TEST_CASE("check-monotone") {
  SUBCASE("operator monotone function") {
    const auto r = run({"check-monotone", "power:0.5", "--order", "4", "--trials", "2000"});
    CHECK(r.code == kExitPass);
    const auto j = json::parse(r.out);
    CHECK(j["status"] == "NO_COUNTEREXAMPLE");
    CHECK(j["order_tested"] == 4);
    CHECK(j["witness"].is_null());
  }
  SUBCASE("cubic fails at order 2 with a witness") {
    const auto r = run({"check-monotone", "cubic", "-n", "2"});
    CHECK(r.code == kExitViolation);
    const auto j = json::parse(r.out);
    CHECK(j["status"] == "CERTIFIED_NOT");
    CHECK(j["witness"]["min_eigenvalue"].get<double>() < 0.0);
    CHECK(j["witness"]["loewner"]["n"] == 2);
  }
  SUBCASE("square passes order 1") {
    CHECK(run({"check-monotone", "square", "-n", "1"}).code == kExitPass);
  }
}

TEST_CASE("verify-ps") {
  SUBCASE("default family holds and rows are well formed") {
    const auto r = run({"verify-ps", "--dims", "2,3", "--trials", "50"});
    CHECK(r.code == kExitPass);
    const auto lines = csv_lines(r.out);
    REQUIRE(lines.size() == 1 + 14 * 2 * 50);
    CHECK(lines[0] == "function_spec,n,seed,lhs,rhs,gap,holds");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      CHECK(lines[i].substr(lines[i].rfind(',') + 1) == "true");
    }
  }
  SUBCASE("cubic fails on scalars") {
    const auto r = run({"verify-ps", "-f", "cubic", "--dims", "1", "--trials", "100"});
    CHECK(r.code == kExitViolation);
    CHECK_FALSE(r.err.empty());
    CHECK(json::parse(r.err)["function_spec"] == "cubic");
  }
  SUBCASE("json output") {
    const auto r = run({"verify-ps", "-f", "power:0.5", "--dims", "2", "--trials", "5", "--json"});
    CHECK(r.code == kExitPass);
    const auto j = json::parse(r.out);
    CHECK(j["rows"].size() == 5);
    CHECK(j["violations"] == 0);
  }
  SUBCASE("non-tracial weight gives a structured witness") {
    const auto s = write_matrix("d05.json", SymMatrix::diag({0.5, 1.0}));
    const auto r = run({"verify-ps", "--S", s, "-f", "power:0.5", "--trials", "20"});
    CHECK(r.code == kExitViolation);
    const auto w = json::parse(r.err);
    CHECK(w["source"] == "structured");
    CHECK(w["lhs"].get<double>() > w["rhs"].get<double>());
  }
  SUBCASE("trace weight holds") {
    const auto s = write_matrix("i3.json", SymMatrix::identity(3));
    CHECK(run({"verify-ps", "--S", s, "--trials", "20"}).code == kExitPass);
  }
  SUBCASE("--out writes the file and a witness side file") {
    const auto path = (scratch() / "cubic.csv").string();
    std::filesystem::remove(path + ".witness.json");
    const auto r = run({"verify-ps", "-f", "cubic", "--dims", "1", "--trials", "10", "--out", path});
    CHECK(r.code == kExitViolation);
    CHECK(r.out.empty());
    CHECK(std::filesystem::exists(path));
    CHECK(std::filesystem::exists(path + ".witness.json"));
  }
}

TEST_CASE("reproducibility") {
  const std::vector<std::string> args = {"verify-ps", "--dims", "1,4", "--trials", "100", "--seed", "7"};
  set_thread_count(1);
  const auto r1 = run(args);
  set_thread_count(5);
  const auto r5 = run(args);
  set_thread_count(0);
  const auto r0 = run(args);
  CHECK(r1.out == r5.out);
  CHECK(r1.out == r0.out);
  const auto other = run({"verify-ps", "--dims", "1,4", "--trials", "100", "--seed", "8"});
  CHECK(other.out != r1.out);
}

TEST_CASE("chernoff and scan-family") {
  const auto a = write_matrix("c2.json", SymMatrix::diag({2.0}));
  const auto b = write_matrix("c8.json", SymMatrix::diag({8.0}));
  const auto r = run({"chernoff", a, b});
  REQUIRE(r.code == kExitPass);
  const auto j = json::parse(r.out);
  CHECK(j["q_value"].get<double>() == doctest::Approx(2.0));
  CHECK(j["s_star"].get<double>() == 0.0);
  CHECK(j["grid"].size() == 33);

  const auto s = run({"scan-family", a, b, "-f", "power:0.5", "-f", "mobius:1"});
  CHECK(s.code == kExitPass);
  CHECK(json::parse(s.out).contains("improved"));
  CHECK(run({"scan-family", a, b, "-f", "cubic"}).code == kExitUsage);
}

TEST_CASE("trace-test") {
  const auto d05 = write_matrix("t05.json", SymMatrix::diag({0.5, 1.0}));
  const auto id2 = write_matrix("tid.json", SymMatrix::identity(2));
  SUBCASE("ps") {
    const auto r = run({"trace-test", "--S", d05, "-f", "power:0.5", "--kind", "ps"});
    CHECK(r.code == kExitViolation);
    const auto j = json::parse(r.out);
    CHECK(j["status"] == "VIOLATION_FOUND");
    CHECK(j["witness"]["structured"] == true);
    CHECK(run({"trace-test", "--S", id2, "--kind", "ps", "--trials", "200"}).code == kExitPass);
  }
  SUBCASE("subadd") {
    CHECK(run({"trace-test", "--S", d05, "--kind", "subadd"}).code == kExitViolation);
    CHECK(run({"trace-test", "--S", id2, "--kind", "subadd", "--trials", "200"}).code == kExitPass);
  }
  SUBCASE("absdom holds for every positive weight on self-adjoint input") {
    const auto r = run({"trace-test", "--S", d05, "--kind", "absdom", "--trials", "300"});
    CHECK(r.code == kExitPass);
    CHECK(json::parse(r.out)["status"] == "NO_VIOLATION");
  }
  SUBCASE("bad kind") {
    CHECK(run({"trace-test", "--S", d05, "--kind", "nope"}).code == kExitUsage);
  }
}

TEST_CASE("probe") {
  const auto r = run({"probe", "1", "4"});
  CHECK(r.code == kExitPass);
  const auto j = json::parse(r.out);
  CHECK(j["factor"].get<double>() == doctest::Approx(0.36));
  CHECK(j["identity_holds"] == true);
}

TEST_CASE("installed binary") {
  const std::string cmd = std::string(LPS_CLI_PATH) + " probe 1 4 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string bad = std::string(LPS_CLI_PATH) + " check-monotone cubic > /dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
