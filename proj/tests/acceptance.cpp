// Acceptance suite: runs every characterization battery at full scale and
// exercises the CLI end to end. Prints one PASS/FAIL line per criterion and
// exits with the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <unistd.h>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lexichoice/spec_io.hpp"
#include "lexichoice/theorems.hpp"

using namespace lexichoice;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, bool pass, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : ("  -- " + detail).c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void battery_criterion(int number, const std::string& name, const std::string& battery_id,
                       std::uint64_t seed = 0) {
  auto t0 = std::chrono::steady_clock::now();
  BatteryReport r = run_battery(battery_id, BatteryOptions{seed, 500, false});
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::string detail = std::to_string(r.lines.size()) + " checks, " + std::to_string(ms) + " ms";
  for (const CheckLine& l : r.lines) {
    if (!l.pass) detail += "; FAILED: " + l.name + " [" + l.detail + "]";
  }
  criterion(number, name, r.pass(), detail);
}

std::string temp_path(const std::string& suffix) {
  static int counter = 0;
  return "/tmp/lexichoice_acceptance_" + std::to_string(getpid()) + "_" +
         std::to_string(counter++) + "." + suffix;
}

struct CliRun {
  int exit_code;
  std::string stdout_text;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
  std::string out_file = temp_path("out");
  int status = std::system((cli + " " + args + " > " + out_file + " 2>/dev/null").c_str());
  std::ifstream in(out_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::remove(out_file.c_str());
  return CliRun{WEXITSTATUS(status), buffer.str()};
}

void cli_criterion(const std::string& cli, const std::string& spec) {
  std::string detail;
  bool pass = true;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  };

  try {
    // round-trip: parse(print(spec)) = spec on the shipped file
    SpecFile spec_file = load_spec(spec);
    Json printed = spec_to_json(spec_file);
    expect(spec_to_json(spec_from_json(printed)) == printed, "spec round-trip");

    CliRun classify = run_cli(cli, "classify " + spec + " identityE");
    expect(classify.exit_code == 0, "classify exit");
    Json cj = Json::parse(classify.stdout_text);
    expect(cj["tasks"][0]["result"]["params"]["t"] == "inf", "classify params");

    CliRun verify = run_cli(cli, "verify --theorem=algebra " + spec);
    expect(verify.exit_code == 0, "verify exit");

    CliRun ok_check = run_cli(cli, "check " + spec + " firstTwo --prop=PI");
    expect(ok_check.exit_code == 0, "check pass exit");
    std::string report_path = temp_path("json");
    CliRun bad_check =
        run_cli(cli, "check " + spec + " inconsistentTable --prop=CON --out=" + report_path);
    expect(bad_check.exit_code == 1, "check fail exit");
    CliRun check_replay = run_cli(cli, "replay " + report_path);
    expect(check_replay.exit_code == 0, "check replay");
    std::remove(report_path.c_str());

    std::string witness_path = temp_path("json");
    CliRun witness =
        run_cli(cli, "witness " + spec + " capE2 --condition=pi-domain --out=" + witness_path);
    expect(witness.exit_code == 0, "witness exit");
    CliRun replay = run_cli(cli, "replay " + witness_path);
    expect(replay.exit_code == 0, "witness replay");
    std::remove(witness_path.c_str());

    CliRun parse_fail = run_cli(cli, "classify " + spec + " noSuchName");
    expect(parse_fail.exit_code == 2, "parse error exit");
  } catch (const std::exception& err) {
    pass = false;
    detail += std::string("; exception: ") + err.what();
  }
  criterion(11, "CLI round-trip, exit codes, and report replay", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  battery_criterion(1, "path independence = substitutes + consistency (4096 tables at n=3)",
                    "am-equiv");
  battery_criterion(2, "threshold-linear reuse preserves PI over responsive pairs",
                    "thm1-forward");
  battery_criterion(3, "each broken classifier condition yields synthesized and searched "
                       "witnesses",
                    "thm1-reverse");
  battery_criterion(4, "path independent domain: thresholds 0/1/inf and stable reuse chains",
                    "prop-pi");
  battery_criterion(5, "size monotonicity: finite thresholds and reuse break it; the two safe "
                       "regimes hold",
                    "prop-sm");
  battery_criterion(6, "aggregate vs individual quotas separate right and left composition",
                    "claim-lr");
  battery_criterion(7, "every exclusion preserves consistency over consistent inputs",
                    "remark-con");
  battery_criterion(8, "completion transfer for equivalence-excluding exclusions", "lemma-mto1");
  battery_criterion(9, "the three-branch equivalence example reproduces pointwise", "example6");
  battery_criterion(10, "identity-label associativity and empty-label symmetry", "algebra");
  if (argc >= 3) {
    cli_criterion(argv[1], argv[2]);
  } else {
    criterion(11, "CLI round-trip, exit codes, and report replay", false,
              "usage: acceptance <cli-binary> <demo-spec>");
  }

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
