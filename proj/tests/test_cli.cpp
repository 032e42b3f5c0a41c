#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"

using namespace eigensplit;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "eigensplit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, IrregularJson) {
  const Result r = call({"irregular", "--prime", "37"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"prime\":37,\"irregular_pairs\":[32]}\n");
  EXPECT_EQ(call({"irregular", "--prime", "5"}).out, "{\"prime\":5,\"irregular_pairs\":[]}\n");
}

TEST(Cli, KummerCoatesWiles) {
  const Result r = call({"kummer", "--prime", "5", "--unit", "coates-wiles"});
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j["phi"].size(), 3u);
  const unsigned expected[] = {4, 4, 3};  // -(i-1)! mod 5
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(j["phi"][i]["phi"], expected[i]);
    EXPECT_EQ(j["phi"][i]["match"], true);
    EXPECT_EQ(j["phi"][i]["generator"], true);
  }
  const Result t = call({"kummer", "--prime", "5", "--unit", "coates-wiles", "--format", "text"});
  EXPECT_NE(t.out.find("i  phi  expected  match  generator"), std::string::npos);
}

TEST(Cli, DualityRegular) {
  const Result r = call({"duality", "--prime", "5", "--from", "-4", "--to", "40"});
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["pass"], true);
  for (const auto& row : j["rows"])
    for (const auto& cell : row["cells"]) EXPECT_NE(cell["status"], "FAIL");
  const Result t = call({"duality", "--prime", "5", "--from", "-4", "--to", "40", "--format", "text"});
  EXPECT_NE(t.out.find("overall: PASS"), std::string::npos);
}

TEST(Cli, KummerVandiverRefused) {
  const Result r = call({"duality", "--prime", "37"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Kummer-Vandiver"), std::string::npos);
  EXPECT_EQ(call({"duality", "--prime", "37", "--kv-assume"}).code, 0);
}

TEST(Cli, GradedJsonEncoding) {
  GradedModule m(-2, 10);
  m.set(0, FgZpModule::free(1));
  m.set(7, FgZpModule::cyclic(1));
  EXPECT_EQ(cli::graded_json(m, false).dump(),
            R"([{"degree":0,"rank":1,"torsion":[]},{"degree":7,"rank":0,"torsion":[1]}])");
  EXPECT_EQ(cli::graded_json(m, true).size(), 13u);
}

TEST(Cli, HomotopySpectrumAndCsv) {
  const Result r = call({"homotopy", "--prime", "5", "--spectrum", "J", "--from", "-2", "--to", "8", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "spectrum,degree,rank,torsion,group\nJ,-1,1,,Z_p\nJ,0,1,,Z_p\nJ,7,0,1,Z/p\n");
  const Result d = call({"homotopy", "--prime", "5", "--spectrum", "Y0", "--from", "-2", "--to", "8", "--dense"});
  EXPECT_EQ(json::parse(d.out)["spectra"][0]["groups"].size(), 11u);
}

TEST(Cli, Deterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"les", "--prime", "7"}, {"homotopy", "--prime", "7"}, {"teich", "--prime", "11"},
        {"lvalues", "--prime", "7", "--char", "2"}}) {
    EXPECT_EQ(call(args).out, call(args).out);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({"teich", "--prime", "9"}).code, 1);
  EXPECT_EQ(call({"bogus"}).code, 1);
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"lvalues", "--prime", "5", "--char", "0", "--at", "1"}).code, 1);
  EXPECT_EQ(call({"lvalues", "--prime", "37", "--char", "32", "--at", "-31", "--precision", "2"}).code, 1);
  EXPECT_EQ(call({"homotopy", "--prime", "5", "--from", "-100"}).code, 1);
  EXPECT_EQ(call({"teich", "--help"}).code, 0);
  EXPECT_EQ(call({"les", "--prime", "5"}).code, 0);
}

TEST(Cli, LValues) {
  const json j = json::parse(call({"lvalues", "--prime", "5", "--char", "2", "--at", "-1", "--precision", "2"}).out);
  EXPECT_EQ(j["values"][0]["value"], 17);
  EXPECT_EQ(j["values"][0]["valuation"], 0);
}

TEST(Cli, UnitsReport) {
  const json j = json::parse(call({"units", "--prime", "7", "--unit", "lang", "--lambda", "2"}).out);
  EXPECT_EQ(j["one_unit"], true);
  EXPECT_EQ(j["norm_compatible"], true);
  EXPECT_EQ(j["eps1"]["congruence_minus"], false);
  EXPECT_EQ(j["eps1"]["defect"], "13");
  EXPECT_EQ(j["eps1"]["nontorsion_certified"], true);
}

TEST(Cli, CacheDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "eigensplit-cli-cache";
  std::filesystem::remove_all(dir);
  EXPECT_EQ(call({"irregular", "--prime", "13", "--cache-dir", dir.string()}).code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "bernoulli.tsv"));
  // the flag wins over the environment
  const auto env_dir = std::filesystem::temp_directory_path() / "eigensplit-cli-env";
  std::filesystem::remove_all(env_dir);
  ::setenv("EIGENSPLIT_CACHE", env_dir.string().c_str(), 1);
  EXPECT_EQ(call({"irregular", "--prime", "11", "--cache-dir", dir.string()}).code, 0);
  EXPECT_FALSE(std::filesystem::exists(env_dir));
  EXPECT_EQ(call({"irregular", "--prime", "11"}).code, 0);
  EXPECT_TRUE(std::filesystem::exists(env_dir / "bernoulli.tsv"));
  ::unsetenv("EIGENSPLIT_CACHE");
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(env_dir);
}
