#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unistd.h>

#include "matfin/cli.hpp"
#include "matfin/io.hpp"
#include "testkit.hpp"

using namespace matfin;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "matfin");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MATFIN_DATA_DIR) + "/" + name; }

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("matfin_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, IsFiniteUnipotentPair) {
  auto r = run({"is-finite", data("unipotent_pair.json")});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  auto j = r.doc();
  EXPECT_EQ(j["command"], "is-finite");
  EXPECT_EQ(j["finite"], true);
  EXPECT_TRUE(j["order"].is_null());
  EXPECT_TRUE(j["alpha"].is_array());
  EXPECT_TRUE(j["nu"].is_number_integer());
  EXPECT_TRUE(j["evidence"].is_string());
  EXPECT_FALSE(j.contains("trace"));
}

TEST(Cli, IsFiniteDiagonalX) {
  auto r = run({"is-finite", data("diagX.json")});
  ASSERT_EQ(r.code, kExitOk);
  auto j = r.doc();
  EXPECT_EQ(j["finite"], false);
  EXPECT_EQ(j["evidence"], "ZeroInvariantModule");
}

TEST(Cli, OrderExamples) {
  const std::pair<const char*, const char*> cases[] = {{"unipotent_pair.json", "4"},
                                                       {"gl23_conj.json", "48"},
                                                       {"monomial_gl35.json", "384"},
                                                       {"diag_t_conj.json", "3"}};
  for (const auto& [file, order] : cases) {
    auto r = run({"order", data(file)});
    ASSERT_EQ(r.code, kExitOk) << file << r.out;
    auto j = r.doc();
    EXPECT_EQ(j["finite"], true) << file;
    EXPECT_EQ(j["order"], order) << file;
    EXPECT_EQ(j["certificate"]["engine"], "schreier-sims") << file;
    EXPECT_EQ(j["certificate"]["mu"], 1) << file;
  }
}

TEST(Cli, OrderOfInfiniteGroupIsNull) {
  auto r = run({"order", data("diagX.json")});
  ASSERT_EQ(r.code, kExitOk);
  auto j = r.doc();
  EXPECT_EQ(j["finite"], false);
  EXPECT_TRUE(j["order"].is_null());
}

TEST(Cli, Oracle) {
  auto j = run({"oracle", data("unipotent_pair.json"), "--cap", "100"}).doc();
  EXPECT_EQ(j["order"], "4");
  EXPECT_EQ(j["evidence"], "Closure");
  auto r = run({"oracle", data("diagX.json"), "--cap", "100"});
  EXPECT_EQ(r.code, kExitOk);
  j = r.doc();
  EXPECT_TRUE(j["order"].is_null());
  EXPECT_TRUE(j["finite"].is_null());
  EXPECT_EQ(j["evidence"], "ExceededCap");
  EXPECT_EQ(run({"oracle", data("diagX.json")}).code, kExitInput);
}

TEST(Cli, NilpotentAndElementOrder) {
  auto j = run({"is-finite", data("unipotent_pair.json"), "--nilpotent"}).doc();
  EXPECT_EQ(j["finite"], true);
  EXPECT_EQ(j["gamma"], 1);
  j = run({"element-order-finite", data("diagX.json")}).doc();
  EXPECT_EQ(j["finite"], false);
  j = run({"element-order-finite", data("diag_t_conj.json")}).doc();
  EXPECT_EQ(j["finite"], true);
  auto r = run({"element-order-finite", data("unipotent_pair.json")});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_TRUE(r.doc().contains("error"));
}

TEST(Cli, TraceLinesAreJson) {
  auto r = run({"is-finite", data("diagX.json"), "--trace"});
  ASSERT_EQ(r.code, kExitOk);
  auto j = r.doc();
  ASSERT_TRUE(j["trace"].is_array());
  std::istringstream lines(r.err);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    auto ev = json::parse(line);
    EXPECT_TRUE(ev.contains("step"));
    EXPECT_EQ(ev, j["trace"][count]);
    ++count;
  }
  EXPECT_EQ(count, j["trace"].size());
  EXPECT_GE(count, 3u);
}

TEST(Cli, InputErrors) {
  auto r = run({"is-finite", data("does_not_exist.json")});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_EQ(r.doc()["error"]["kind"], "input");

  TempFile bad("{\n  \"p\": 2,\n  \"k\": 1,\n  \"vars\": [\"X\"],\n  \"generators\": [[[\"1\", \"X +\"], [\"0\", \"1\"]]]\n}\n");
  r = run({"is-finite", bad.path()});
  EXPECT_EQ(r.code, kExitInput);
  auto j = r.doc();
  EXPECT_TRUE(j["finite"].is_null());
  EXPECT_EQ(j["error"]["line"], 5);
  EXPECT_GT(j["error"]["column"].get<int>(), 0);

  TempFile singular(R"({"p": 3, "k": 1, "vars": ["X"], "generators": [[["X", "X"], ["1", "1"]]]})");
  r = run({"order", singular.path()});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NO_THROW(r.doc());

  TempFile garbage("\x01\x02 not json at all");
  r = run({"oracle", garbage.path(), "--cap", "5"});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NO_THROW(r.doc());
}

TEST(Cli, UsageErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"frobnicate"}, {"is-finite"}, {"order", data("diagX.json"), "--budget", "0"},
           {"is-finite", data("diagX.json"), "--seed", "abc"}}) {
    auto r = run(args);
    EXPECT_EQ(r.code, kExitInput);
    EXPECT_NO_THROW(r.doc());
  }
}

TEST(Cli, ResourceErrors) {
  TempFile f(R"({"p": 2, "k": 1, "vars": ["X"], "generators": [[["X", "0"], ["0", "X + 1"]]]})");
  auto r = run({"is-finite", f.path(), "--max-nu", "2"});
  EXPECT_EQ(r.code, kExitResource);
  EXPECT_EQ(r.doc()["error"]["kind"], "resource");
  r = run({"is-finite", f.path(), "--max-nu", "3"});
  EXPECT_EQ(r.code, kExitOk);
}

TEST(Cli, DeterministicAcrossRuns) {
  for (const auto& bg : testkit::decision_battery()) {
    TempFile f(serialize_group_file(bg.group));
    for (const char* cmd : {"is-finite", "order"}) {
      auto a = run({cmd, f.path(), "--seed", "42"});
      auto b = run({cmd, f.path(), "--seed", "42"});
      EXPECT_EQ(a.code, b.code) << bg.name;
      EXPECT_EQ(a.out, b.out) << bg.name;
      EXPECT_NO_THROW(a.doc()) << bg.name;
    }
  }
}
