#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct RunOutput {
  int exit_code;
  std::string stdout_text;
};

RunOutput run_cli(const std::string& args) {
  std::string cmd = std::string(CONSEC_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string text;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) text += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), text};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("theorem1 default run exits clean and prints the list") {
  auto r = run_cli("theorem1");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("3,5,7,9,13,25,29,61,81,121,169") != std::string::npos);
}

TEST_CASE("theorem1 at the boundary ceilings") {
  CHECK(run_cli("theorem1 --q-max 169").exit_code == 0);
  CHECK(run_cli("theorem1 --q-max 170").exit_code == 0);
}

TEST_CASE("table2 rows 1 and 2 with the published ceilings check clean") {
  auto r = run_cli("table2 --w 1 --w 2 --check");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("1,256,7,7,3,1,3;5;9") != std::string::npos);
  CHECK(r.stdout_text.find("2,16384,2425,805,164,8,") != std::string::npos);
}

TEST_CASE("table2 recomputed ceiling matches the published one at w = 1") {
  auto r = run_cli("table2 --w 1 --recompute-m --check");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("1,256,") != std::string::npos);
}

TEST_CASE("table1 single row") {
  auto r = run_cli("table1 --n-min 3 --n-max 3 --check");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("3,13,3.49e15") != std::string::npos);
}

TEST_CASE("oracle sweep over tiny fields is clean JSONL") {
  auto r = run_cli("oracle --q-max 30");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"failures\":[]") != std::string::npos);
  CHECK(r.stdout_text.find("\"failures\":0") != std::string::npos);
}

TEST_CASE("search and criteria ad-hoc commands") {
  auto found = run_cli("search --q 11");
  CHECK(found.exit_code == 0);
  CHECK(found.stdout_text.find("\"witness\":[6]") != std::string::npos);

  auto miss = run_cli("search --q 13");
  CHECK(miss.exit_code == 0);
  CHECK(miss.stdout_text.find("\"found\":false") != std::string::npos);

  auto crit = run_cli("criteria --q 169");
  CHECK(crit.exit_code == 0);
  CHECK(crit.stdout_text.find("\"Inconclusive\"") != std::string::npos);

  auto crit_big = run_cli("criteria --q 1000003");
  CHECK(crit_big.exit_code == 0);
  CHECK(crit_big.stdout_text.find("\"Guaranteed\"") != std::string::npos);
}

TEST_CASE("factor command emits the factorization") {
  auto r = run_cli("factor --m 304250263527210");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("[2,1]") != std::string::npos);
  CHECK(r.stdout_text.find("[41,1]") != std::string::npos);
}

TEST_CASE("operational errors exit 2") {
  CHECK(run_cli("search --q 16").exit_code == 2);   // even prime power
  CHECK(run_cli("factor --m 0").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
}

TEST_CASE("idempotent rerun with an existing journal") {
  std::string journal = temp_path("consec_cli_journal.jsonl");
  std::remove(journal.c_str());
  auto first = run_cli("table2 --w 2 --check --journal " + journal);
  CHECK(first.exit_code == 0);
  auto second = run_cli("table2 --w 2 --check --journal " + journal);
  CHECK(second.exit_code == 0);
  CHECK(first.stdout_text == second.stdout_text);
  std::remove(journal.c_str());
}

TEST_CASE("journal directory env override is honored") {
  std::string dir = temp_path("consec_cli_jdir");
  std::filesystem::create_directories(dir);
  std::string cmd = "CONSEC_JOURNAL_DIR=" + dir + " " + std::string(CONSEC_CLI_PATH) +
                    " table2 --w 1 --journal unit.jsonl > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(std::filesystem::exists(dir + "/unit.jsonl"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("output file option writes JSONL scan records") {
  std::string out = temp_path("consec_cli_t1.jsonl");
  std::remove(out.c_str());
  auto r = run_cli("--out " + out + " theorem1 --q-max 200");
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  std::string line;
  size_t lines = 0, found_lines = 0;
  while (std::getline(in, line)) {
    if (line.find("\"found\":") != std::string::npos) ++found_lines;
    ++lines;
  }
  CHECK(lines > 50);
  CHECK(found_lines > 0);
  std::remove(out.c_str());
}
