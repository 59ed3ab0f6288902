// End-to-end tests that drive the installed CLI binary as a subprocess.
//
// Invocation:  test_cli [catch-options] <cli-path> <manifest-path>
// The trailing two arguments are consumed here; the rest go to Catch2.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

using ordered_json = nlohmann::ordered_json;

namespace {

std::string g_cli;
std::string g_manifest;

std::string shell_quote(std::string const& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run_cli(std::vector<std::string> const& args) {
  std::string cmd = shell_quote(g_cli);
  for (auto const& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int rc = ::pclose(pipe);
  if (WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
  return r;
}

// Run with the shared manifest appended after the subcommand, which also
// exercises global-flag fallthrough on every call.
CliRun run_manifest(std::vector<std::string> args) {
  args.push_back("--manifest");
  args.push_back(g_manifest);
  return run_cli(args);
}

ordered_json report_of(CliRun const& r) {
  REQUIRE_FALSE(r.out.empty());
  return ordered_json::parse(r.out);
}

ordered_json stripped(ordered_json j) {
  j.erase("timing");
  return j;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() /
             ("haken-cli-test-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse emits the canonical report envelope") {
  CliRun r = run_manifest({"parse", "--entry", "v3541(5,1)"});
  REQUIRE(r.status == 0);
  ordered_json j = report_of(r);
  CHECK(j["tool"]["name"] == "haken");
  CHECK(j["tool"]["schema"] == 1);
  CHECK(j["command"] == "parse");
  CHECK(j["input"]["name"] == "v3541(5,1)");
  CHECK(j["input"]["hash"].get<std::string>().size() == 16);
  CHECK(j["result"]["generator_count"] == 3);
  CHECK(j["result"]["relator_count"] == 3);
  CHECK(std::prev(j.end()).key() == "timing");
}

TEST_CASE("dinfty decisions honor the manifest expected block") {
  SECTION("positive with explicit isometry certificate") {
    CliRun r = run_manifest({"dinfty", "--entry", "dinfty_reflections"});
    REQUIRE(r.status == 0);
    ordered_json j = report_of(r);
    CHECK(j["result"]["positive"] == true);
    REQUIRE(j["result"]["certificate"].size() == 2);
    CHECK(j["result"]["certificate"][0]["sign"] == -1);
    CHECK(j["result"]["certificate"][0]["translation"] == "0");
    CHECK(j["result"]["certificate"][1]["translation"] == "1");
    REQUIRE(j.contains("mismatches"));
    CHECK(j["mismatches"].empty());
  }
  SECTION("negative, corroborated by rank-zero double covers") {
    CliRun r = run_manifest({"dinfty", "--entry", "z5"});
    REQUIRE(r.status == 0);
    ordered_json j = report_of(r);
    CHECK(j["result"]["positive"] == false);
    for (auto const& row : j["result"]["double_covers"]) {
      CHECK(row["b1"] == 0);
    }
    CHECK(j["mismatches"].empty());
  }
}

TEST_CASE("h1 matches the curated expected values") {
  CliRun r = run_manifest({"h1", "--entry", "v3541(5,1)"});
  REQUIRE(r.status == 0);
  ordered_json j = report_of(r);
  CHECK(j["result"]["rank"] == 0);
  CHECK(j["result"]["torsion"].empty());
  CHECK(j["mismatches"].empty());
}

TEST_CASE("an expected-block mismatch exits with code 2") {
  auto dir = temp_dir();
  auto path = dir / "wrong.json";
  {
    std::ofstream out(path);
    out << R"([{"name":"z5","presentation":"<a|a^5>","expected":{"h1_rank":1}}])";
  }
  CliRun r = run_cli({"h1", "--entry", "z5", "--manifest", path.string()});
  CHECK(r.status == 2);
  ordered_json j = report_of(r);
  REQUIRE(j["mismatches"].size() == 1);
  CHECK(j["mismatches"][0]["key"] == "h1_rank");
  CHECK(j["mismatches"][0]["expected"] == 1);
  CHECK(j["mismatches"][0]["actual"] == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("name-only census stubs refuse presentation commands") {
  CliRun r = run_manifest({"h1", "--entry", "m019(3,4)"});
  CHECK(r.status == 1);
  ordered_json j = report_of(r);
  REQUIRE(j.contains("error"));
  CHECK(j["error"].get<std::string>().find("stub") != std::string::npos);
}

TEST_CASE("integrality reads a stub's minimal polynomial") {
  CliRun r = run_manifest({"integrality", "--entry", "m015(8,1)"});
  REQUIRE(r.status == 0);
  ordered_json j = report_of(r);
  CHECK(j["input"]["polynomial"] == "2x^4 - 17x^3 + 46x^2 - 40x + 8");
  CHECK(j["result"]["verdict"] == "NON-INTEGRAL");
  CHECK(j["result"]["primes"] == ordered_json::array({"2"}));
  CHECK(j["result"]["newton_reports"].size() == 1);
}

TEST_CASE("usage errors are reported, not crashed") {
  SECTION("unknown manifest entry") {
    CliRun r = run_manifest({"h1", "--entry", "nonesuch"});
    CHECK(r.status == 1);
    CHECK(report_of(r).contains("error"));
  }
  SECTION("no input at all") {
    CliRun r = run_cli({"h1"});
    CHECK(r.status == 1);
    CHECK(report_of(r).contains("error"));
  }
  SECTION("unknown subcommand") {
    CliRun r = run_cli({"frobnicate"});
    CHECK(r.status != 0);
  }
  SECTION("missing required option") {
    CliRun r = run_cli({"charcount", "--text", "<a|>"});
    CHECK(r.status != 0);
  }
}

TEST_CASE("reports are stable across runs and thread counts") {
  SECTION("repeated runs differ only in timing") {
    CliRun a = run_manifest({"h1", "--entry", "v3541(5,1)"});
    CliRun b = run_manifest({"h1", "--entry", "v3541(5,1)"});
    REQUIRE(a.status == 0);
    REQUIRE(b.status == 0);
    CHECK(stripped(report_of(a)) == stripped(report_of(b)));
  }
  SECTION("worker-thread count never reaches the report") {
    CliRun one = run_cli(
        {"charcount", "--text", "<a,b|>", "--p", "3", "--threads", "1"});
    CliRun four = run_cli(
        {"charcount", "--text", "<a,b|>", "--p", "3", "--threads", "4"});
    REQUIRE(one.status == 0);
    REQUIRE(four.status == 0);
    ordered_json ja = report_of(one);
    CHECK(ja["result"]["tuple_count"] == 27);
    CHECK(ja["params"] ==
          ordered_json{{"p", 3}, {"k", 1}, {"orbits", false}});
    CHECK(stripped(ja) == stripped(report_of(four)));
  }
}

TEST_CASE("the result cache is content-addressed and transparent") {
  auto dir = temp_dir();
  std::string cache = (dir / "cache").string();
  CliRun miss = run_manifest(
      {"h1", "--entry", "v3541(5,1)", "--cache-dir", cache});
  CliRun hit = run_manifest(
      {"h1", "--entry", "v3541(5,1)", "--cache-dir", cache});
  REQUIRE(miss.status == 0);
  REQUIRE(hit.status == 0);
  ordered_json jm = report_of(miss);
  ordered_json jh = report_of(hit);
  CHECK(jm["timing"]["cache"] == "miss");
  CHECK(jh["timing"]["cache"] == "hit");
  CHECK(stripped(jm) == stripped(jh));
  std::size_t entries = 0;
  for (auto const& f : std::filesystem::directory_iterator(cache)) {
    (void)f;
    ++entries;
  }
  CHECK(entries == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("text format renders dotted keys") {
  CliRun r = run_manifest({"dinfty", "--entry", "z5", "--format", "text"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("command: dinfty\n") != std::string::npos);
  CHECK(r.out.find("result.positive: false\n") != std::string::npos);
  CHECK(r.out.find("timing.cache: off\n") != std::string::npos);
}

TEST_CASE("ideal reports a reduced basis and dimension") {
  CliRun r = run_manifest({"ideal", "--dimension", "--entry", "klein_bottle"});
  REQUIRE(r.status == 0);
  ordered_json j = report_of(r);
  CHECK(j["result"]["groebner"]["basis"] ==
        ordered_json::array({"y^2 - z^2", "x*z - 2*y"}));
  CHECK(j["result"]["dimension"] == 1);
}

TEST_CASE("growth probes a tower of field extensions") {
  CliRun r = run_cli({"growth", "--text", "<a,b|>", "--p", "2"});
  REQUIRE(r.status == 0);
  ordered_json j = report_of(r);
  REQUIRE(j["result"]["levels"].size() == 3);
  CHECK(j["result"]["levels"][0]["tuple_count"] == 8);
  CHECK(j["result"]["levels"][1]["tuple_count"] == 64);
  CHECK(j["result"]["levels"][2]["tuple_count"] == 512);
  CHECK(j["result"]["verdict"] == "POSITIVE-DIMENSIONAL-LIKELY");
}

TEST_CASE("fingerprint compares two presentations") {
  SECTION("two forms of the same group agree") {
    CliRun r = run_manifest({"fingerprint", "--entry-a", "dinfty_reflections",
                             "--entry-b", "dinfty_semidirect",
                             "--order-bound", "10"});
    REQUIRE(r.status == 0);
    ordered_json j = report_of(r);
    CHECK(j["result"]["equal"] == true);
    CHECK(j["result"]["a"]["hash"] == j["result"]["b"]["hash"]);
  }
  SECTION("different groups disagree") {
    CliRun r = run_cli({"fingerprint", "--text-a", "<a|a^2>", "--text-b",
                        "<a|a^3>", "--order-bound", "6"});
    REQUIRE(r.status == 0);
    CHECK(report_of(r)["result"]["equal"] == false);
  }
}

TEST_CASE("covers lists low-index subgroups with cover Betti numbers") {
  CliRun r = run_manifest(
      {"covers", "--entry", "dinfty_reflections", "--max-index", "2"});
  REQUIRE(r.status == 0);
  ordered_json j = report_of(r);
  bool found_infinite_cyclic_cover = false;
  for (auto const& row : j["result"]["covers"]) {
    CHECK(row["index"].get<long>() <= 2);
    if (row["index"] == 2 && row["b1"] == 1) found_infinite_cyclic_cover = true;
  }
  CHECK(found_infinite_cyclic_cover);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr,
                 "usage: %s [catch-options] <cli-path> <manifest-path>\n",
                 argv[0]);
    return 2;
  }
  g_manifest = argv[--argc];
  g_cli = argv[--argc];
  return Catch::Session().run(argc, argv);
}
