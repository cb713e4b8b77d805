// End-to-end tests of the command-line driver: exit codes, file outputs, and
// pipeline composition.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "support/proc.h"
#include "support/smf.h"

using jsseg_test::CommandResult;
using jsseg_test::runCommand;
using jsseg_test::TempDir;

namespace {

std::string cli() { return jsseg_test::cliPath(); }

std::string samplePlayPath() { return jsseg_test::testDataDir() + std::string("/sample_play.txt"); }

void writeSampleMidi(const TempDir& dir, const std::string& name) {
  jsseg_test::TrackBytes track;
  track.timeSignature(0, 4, 2);
  int pitches[] = {60, 64, 67, 72, 62, 65, 69, 74};
  std::uint32_t delta = 0;
  for (int bar = 0; bar < 8; ++bar) {
    for (int i = 0; i < 4; ++i) {
      track.noteOn(delta, 0, pitches[(bar * 4 + i) % 8], 80);
      delta = 480;
    }
  }
  track.endOfTrack();
  const auto bytes = jsseg_test::SmfBuilder(0, 480).track(track).build();
  std::ofstream out(dir.file(name), std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("segment writes a tree for token input") {
  TempDir dir;
  jsseg_test::spit(dir.file("seq.tokens"), "A\nA\nA\nA\nB\nB\nB\nB\n");
  const CommandResult result = runCommand(
      dir, cli() + " segment --input " + dir.file("seq.tokens") +
               " --format tokens --seed 42 --output " + dir.file("tree.json"));
  CHECK(result.exit_code == 0);
  CHECK(result.err.empty());
  const std::string tree = jsseg_test::slurp(dir.file("tree.json"));
  CHECK(tree.find("\"split_after\": 4") != std::string::npos);
  CHECK(tree.find("\"generator\": \"splitmix64-fisher-yates-v1\"") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical trees") {
  TempDir dir;
  jsseg_test::spit(dir.file("seq.tokens"), "A\nB\nA\nB\nB\nB\nA\nA\nA\nA\nB\nB\n");
  const std::string base = cli() + " segment --input " + dir.file("seq.tokens") +
                           " --format tokens --seed 7 --output ";
  REQUIRE(runCommand(dir, base + dir.file("one.json")).exit_code == 0);
  REQUIRE(runCommand(dir, base + dir.file("two.json")).exit_code == 0);
  CHECK(jsseg_test::slurp(dir.file("one.json")) == jsseg_test::slurp(dir.file("two.json")));
}

TEST_CASE("ingest-play then segment equals segmenting the play directly") {
  TempDir dir;
  const std::string play = samplePlayPath();

  REQUIRE(runCommand(dir, cli() + " ingest-play --input " + play + " --output " +
                              dir.file("play.tokens"))
              .exit_code == 0);
  REQUIRE(runCommand(dir, cli() + " segment --input " + dir.file("play.tokens") +
                              " --format tokens --markers " + dir.file("play.tokens") +
                              ".markers.tsv --output " + dir.file("via_tokens.json"))
              .exit_code == 0);
  REQUIRE(runCommand(dir, cli() + " segment --input " + play + " --format play --output " +
                              dir.file("direct.json"))
              .exit_code == 0);
  CHECK(jsseg_test::slurp(dir.file("via_tokens.json")) ==
        jsseg_test::slurp(dir.file("direct.json")));
}

TEST_CASE("ingest-midi then segment equals segmenting the MIDI directly") {
  TempDir dir;
  writeSampleMidi(dir, "song.mid");

  REQUIRE(runCommand(dir, cli() + " ingest-midi --input " + dir.file("song.mid") +
                              " --output " + dir.file("song.counts"))
              .exit_code == 0);
  REQUIRE(runCommand(dir, cli() + " segment --input " + dir.file("song.counts") +
                              " --format counts --output " + dir.file("via_counts.json"))
              .exit_code == 0);
  REQUIRE(runCommand(dir, cli() + " segment --input " + dir.file("song.mid") +
                              " --format midi --output " + dir.file("direct.json"))
              .exit_code == 0);
  CHECK(jsseg_test::slurp(dir.file("via_counts.json")) ==
        jsseg_test::slurp(dir.file("direct.json")));
}

TEST_CASE("tally over ingested MIDI counts conserves total mass") {
  TempDir dir;
  writeSampleMidi(dir, "song.mid");
  REQUIRE(runCommand(dir, cli() + " ingest-midi --input " + dir.file("song.mid") +
                              " --output " + dir.file("song.counts"))
              .exit_code == 0);
  const CommandResult result =
      runCommand(dir, cli() + " tally --input " + dir.file("song.counts") + " --format counts");
  CHECK(result.exit_code == 0);

  // Twelve rows, one per pitch class; counts sum to the 32 note-ons.
  int rows = 0;
  long total = 0;
  std::istringstream lines(result.out);
  std::string line;
  while (std::getline(lines, line)) {
    ++rows;
    total += std::stol(line.substr(line.find('\t') + 1));
  }
  CHECK(rows == 12);
  CHECK(total == 32);
}

TEST_CASE("profile output is a CSV with baseline columns") {
  TempDir dir;
  jsseg_test::spit(dir.file("seq.tokens"), "A\nA\nB\nB\n");
  const CommandResult result = runCommand(
      dir, cli() + " profile --input " + dir.file("seq.tokens") + " --format tokens --seed 1");
  CHECK(result.exit_code == 0);
  CHECK(result.out.starts_with("n,d,mean,mean_plus_sigma,mean_minus_sigma\n"));
  CHECK(std::count(result.out.begin(), result.out.end(), '\n') == 4);  // header + 3 rows
}

TEST_CASE("baseline subcommand emits stats JSON") {
  TempDir dir;
  jsseg_test::spit(dir.file("seq.tokens"), "A\nB\n");
  const CommandResult result = runCommand(
      dir, cli() + " baseline --input " + dir.file("seq.tokens") + " --format tokens");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("\"mean\": 1.0") != std::string::npos);
  CHECK(result.out.find("\"sigma\": 0.0") != std::string::npos);
  CHECK(result.out.find("\"replicates\": 10") != std::string::npos);
  CHECK(result.out.find("\"seed\": 42") != std::string::npos);
}

TEST_CASE("levels caps the reported depth") {
  TempDir dir;
  jsseg_test::spit(dir.file("seq.tokens"),
                   "A\nA\nA\nA\nB\nB\nB\nB\nC\nC\nC\nC\nD\nD\nD\nD\n");
  const std::string base = cli() + " segment --input " + dir.file("seq.tokens") +
                           " --format tokens --seed 42 --output ";
  REQUIRE(runCommand(dir, base + dir.file("full.json")).exit_code == 0);
  REQUIRE(runCommand(dir, base + dir.file("capped.json") + " --levels 1").exit_code == 0);
  const std::string full = jsseg_test::slurp(dir.file("full.json"));
  const std::string capped = jsseg_test::slurp(dir.file("capped.json"));
  CHECK(full.size() > capped.size());
  // Depth 1 keeps the root's children but strips grandchildren.
  CHECK(std::count(capped.begin(), capped.end(), '{') < std::count(full.begin(), full.end(), '{'));
  CHECK(capped.find("\"split_after\"") != std::string::npos);
}

TEST_CASE("emit-profiles writes one CSV per analyzed node") {
  TempDir dir;
  jsseg_test::spit(dir.file("seq.tokens"), "A\nA\nA\nA\nB\nB\nB\nB\n");
  const CommandResult result = runCommand(
      dir, cli() + " segment --input " + dir.file("seq.tokens") +
               " --format tokens --emit-profiles --output " + dir.file("tree.json"));
  CHECK(result.exit_code == 0);
  CHECK(std::filesystem::exists(dir.file("tree.profile-0-8.csv")));
  CHECK(std::filesystem::exists(dir.file("tree.profile-0-4.csv")));
  CHECK(std::filesystem::exists(dir.file("tree.profile-4-8.csv")));
}

// ===========================================================================
// Exit codes
// ===========================================================================

TEST_CASE("missing input file exits 1") {
  TempDir dir;
  const CommandResult result = runCommand(
      dir, cli() + " segment --input " + dir.file("absent.tokens") + " --format tokens");
  CHECK(result.exit_code == 1);
  CHECK(!result.err.empty());
}

TEST_CASE("malformed counts exit 1") {
  TempDir dir;
  jsseg_test::spit(dir.file("bad.counts"), "C\tD\n1\tx\n");
  const CommandResult result = runCommand(
      dir, cli() + " tally --input " + dir.file("bad.counts") + " --format counts");
  CHECK(result.exit_code == 1);
}

TEST_CASE("SMPTE MIDI input exits 1 and names the problem") {
  TempDir dir;
  jsseg_test::TrackBytes track;
  track.noteOn(0, 0, 60, 64).endOfTrack();
  const auto bytes = jsseg_test::SmfBuilder(0, 480).rawDivision(0xE728).track(track).build();
  std::ofstream out(dir.file("smpte.mid"), std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.close();
  const CommandResult result = runCommand(
      dir, cli() + " ingest-midi --input " + dir.file("smpte.mid"));
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("SMPTE timing unsupported") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  TempDir dir;
  jsseg_test::spit(dir.file("seq.tokens"), "A\nB\n");

  SUBCASE("unknown flag") {
    const CommandResult result = runCommand(
        dir, cli() + " segment --input " + dir.file("seq.tokens") +
                 " --format tokens --frobnicate");
    CHECK(result.exit_code == 2);
  }
  SUBCASE("bad flag value") {
    const CommandResult result = runCommand(
        dir, cli() + " segment --input " + dir.file("seq.tokens") +
                 " --format tokens --shuffles 0");
    CHECK(result.exit_code == 2);
  }
  SUBCASE("bar-offset with tokens") {
    const CommandResult result = runCommand(
        dir, cli() + " segment --input " + dir.file("seq.tokens") +
                 " --format tokens --bar-offset 1");
    CHECK(result.exit_code == 2);
  }
  SUBCASE("missing required input") {
    const CommandResult result = runCommand(dir, cli() + " segment --format tokens");
    CHECK(result.exit_code == 2);
  }
  SUBCASE("no subcommand") {
    const CommandResult result = runCommand(dir, cli());
    CHECK(result.exit_code == 2);
  }
  SUBCASE("unknown format") {
    const CommandResult result = runCommand(
        dir, cli() + " segment --input " + dir.file("seq.tokens") + " --format csv");
    CHECK(result.exit_code == 2);
  }
}

TEST_CASE("help exits 0") {
  TempDir dir;
  const CommandResult result = runCommand(dir, cli() + " --help");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("segment") != std::string::npos);
}
