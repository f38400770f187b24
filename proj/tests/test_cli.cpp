#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "nonsense/dataset_io.hpp"
#include "nonsense/keyword_scheme.hpp"
#include "support/tempdir.hpp"

using namespace nonsense;

namespace {

const std::string kCli = NONSENSE_CLI_PATH;

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the binary with stdout captured and stderr discarded.
CliResult run(const std::string& args, const testkit::TempDir& dir, const std::string& env = "") {
  const std::string capture = dir.file("stdout.txt");
  const std::string cmd = env + " \"" + kCli + "\" " + args + " > \"" + capture + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(capture);
  std::ostringstream s;
  s << in.rdbuf();
  r.out = s.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

}  // namespace

TEST(Cli, GenerationIsDeterministic) {
  testkit::TempDir dir("cli-det");
  const std::string a = dir.file("a.jsonl"), b = dir.file("b.jsonl");
  ASSERT_EQ(run("gen step --kind sr --count 1000 --seed 7 --out " + a, dir).code, 0);
  ASSERT_EQ(run("gen step --kind sr --count 1000 --seed 7 --threads 3 --out " + b, dir).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(read_dataset(a).size(), 1000u);
}

TEST(Cli, UsageErrorsExitTwo) {
  testkit::TempDir dir("cli-usage");
  EXPECT_EQ(run("gen step --kind bogus --count 5 --seed 1 --out " + dir.file("x"), dir).code, 2);
  EXPECT_EQ(run("gen step --kind sr --count 5 --out " + dir.file("x"), dir).code, 2);
  EXPECT_EQ(run("gen tasks --kind NotAKind --count 5 --seed 1 --out " + dir.file("x"), dir).code, 2);
  EXPECT_EQ(run("frobnicate", dir).code, 2);
  EXPECT_EQ(run("", dir).code, 2);
  EXPECT_EQ(run("--help", dir).code, 0);
}

TEST(Cli, RuntimeErrorsExitOne) {
  testkit::TempDir dir("cli-runtime");
  EXPECT_EQ(run("verify " + dir.file("missing.jsonl"), dir).code, 1);
  EXPECT_EQ(run("stats " + dir.file("missing.jsonl"), dir).code, 1);
  EXPECT_EQ(run("ingest --input " + dir.file("missing.txt") + " --task sr --seed 1 --out " + dir.file("o"), dir).code, 1);
}

TEST(Cli, VerifyCatchesCorruption) {
  testkit::TempDir dir("cli-verify");
  const std::string path = dir.file("d.jsonl");
  ASSERT_EQ(run("gen tasks --kind ensemble --count 200 --seed 3 --out " + path, dir).code, 0);
  const CliResult ok = run("verify " + path, dir);
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("200 passed, 0 failed"), std::string::npos) << ok.out;

  auto records = read_dataset(path);
  records[17].target = "zzz " + records[17].target;
  write_dataset(records, dir.file("bad.jsonl"));
  const CliResult bad = run("verify " + dir.file("bad.jsonl"), dir);
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("199 passed, 1 failed"), std::string::npos) << bad.out;
}

TEST(Cli, StandaloneKinds) {
  testkit::TempDir dir("cli-kinds");
  for (const char* kind : {"CopyFirstSentence", "SumOfNumbers", "CheckKeyword"}) {
    const std::string path = dir.file(std::string(kind) + ".jsonl");
    ASSERT_EQ(run("gen tasks --kind " + std::string(kind) + " --count 10 --seed 1 --out " + path, dir).code, 0);
    const auto records = read_dataset(path);
    ASSERT_EQ(records.size(), 10u);
    for (const auto& r : records) EXPECT_EQ(r.task, kind);
    EXPECT_EQ(run("verify " + path, dir).code, 0);
  }
}

TEST(Cli, SidecarConfig) {
  testkit::TempDir dir("cli-sidecar");
  const std::string path = dir.file("d.jsonl");
  ASSERT_EQ(run("gen step --kind mdg --count 20 --seed 5 --out " + path, dir).code, 0);
  const Json side = Json::parse(slurp(path + ".config.json"));
  EXPECT_EQ(side["records"], 20);
  EXPECT_EQ(side["config"]["seed"], 5);
  EXPECT_EQ(side["config_digest"], read_dataset(path)[0].meta["config_digest"]);
}

TEST(Cli, SchemeFromEnvironment) {
  testkit::TempDir dir("cli-env");
  const std::string scheme = dir.file("s.scheme");
  write(scheme, format_scheme(default_scheme()));
  const std::string a = dir.file("a.jsonl"), b = dir.file("b.jsonl");
  ASSERT_EQ(run("gen tasks --kind CopyQuoted --count 20 --seed 2 --out " + a, dir).code, 0);
  ASSERT_EQ(run("gen tasks --kind CopyQuoted --count 20 --seed 2 --out " + b, dir, "NONSENSE_SCHEME=\"" + scheme + "\"").code, 0);
  EXPECT_EQ(read_dataset(a)[0].source, read_dataset(b)[0].source);
  EXPECT_EQ(run("gen tasks --kind CopyQuoted --count 2 --seed 2 --out " + b, dir,
                "NONSENSE_SCHEME=\"" + dir.file("none.scheme") + "\"").code, 1);
  // The flag wins over the environment.
  EXPECT_EQ(run("gen tasks --kind CopyQuoted --count 2 --seed 2 --scheme " + scheme + " --out " + b, dir,
                "NONSENSE_SCHEME=\"" + dir.file("none.scheme") + "\"").code, 0);
}

TEST(Cli, StatsJson) {
  testkit::TempDir dir("cli-stats");
  const std::string path = dir.file("d.jsonl");
  ASSERT_EQ(run("gen step --kind nsg --count 50 --seed 1 --out " + path, dir).code, 0);
  const CliResult r = run("stats --json " + path, dir);
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["records"], 50);
  EXPECT_EQ(j["task_histogram"]["nsg"], 50);
}

TEST(Cli, Ingest) {
  testkit::TempDir dir("cli-ingest");
  std::string text;
  for (int i = 0; i < 300; ++i) text += "Sentence number " + std::to_string(i) + " has words. ";
  write(dir.file("corpus.txt"), text);
  const std::string out = dir.file("i.jsonl");
  ASSERT_EQ(run("ingest --input " + dir.file("corpus.txt") + " --task CopyQuoted --seed 4 --out " + out, dir).code, 0);
  EXPECT_FALSE(read_dataset(out).empty());
  EXPECT_EQ(run("verify " + out, dir).code, 0);
}

TEST(Cli, Rouge) {
  testkit::TempDir dir("cli-rouge");
  write(dir.file("ref.txt"), "aaa caa\nbaa daa eaa\n");
  write(dir.file("cand.txt"), "aaa baa caa\nbaa daa eaa\n");
  const CliResult self = run("rouge --json " + dir.file("ref.txt") + " " + dir.file("ref.txt"), dir);
  ASSERT_EQ(self.code, 0);
  const Json s = Json::parse(self.out);
  EXPECT_DOUBLE_EQ(s["r1"]["f1"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(s["rl"]["f1"].get<double>(), 1.0);

  const CliResult mixed = run("rouge --json --per-pair " + dir.file("cand.txt") + " " + dir.file("ref.txt"), dir);
  ASSERT_EQ(mixed.code, 0);
  const Json m = Json::parse(mixed.out);
  EXPECT_NEAR(m["per_pair"][0]["r1"]["f1"].get<double>(), 0.8, 1e-12);
  EXPECT_NEAR(m["r1"]["f1"].get<double>(), 0.9, 1e-12);

  write(dir.file("blank.txt"), "\nbaa daa eaa\n");
  const Json b = Json::parse(run("rouge --json --per-pair " + dir.file("blank.txt") + " " + dir.file("ref.txt"), dir).out);
  EXPECT_DOUBLE_EQ(b["per_pair"][0]["r1"]["f1"].get<double>(), 0.0);

  write(dir.file("short.txt"), "aaa\n");
  EXPECT_EQ(run("rouge " + dir.file("short.txt") + " " + dir.file("ref.txt"), dir).code, 1);
}
