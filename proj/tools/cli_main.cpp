// Command-line driver: ingestion, segmentation, and reporting.

#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jsseg/midi.h"
#include "jsseg/play.h"
#include "jsseg/report.h"
#include "jsseg/segmentation.h"
#include "jsseg/textio.h"

namespace {

using jsseg::Error;
using jsseg::Marker;
using jsseg::SegmentationConfig;
using jsseg::WeightedSequence;

/// Bad flag combinations and values; exits with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string format;
  std::string output;
  std::string markers_path;
  std::string weight_mode = "positions";
  SegmentationConfig config;
  int threads = 1;
  int levels = -1;  // < 0: report the full tree
  bool emit_profiles = false;
  int bar_offset = 0;
  bool include_percussion = false;

  CLI::Option* markers_opt = nullptr;
  CLI::Option* bar_offset_opt = nullptr;
  CLI::Option* percussion_opt = nullptr;
};

struct LoadedInput {
  WeightedSequence sequence;
  std::vector<Marker> markers;
};

void addInputOptions(CLI::App* sub, Options& opt) {
  sub->add_option("--input", opt.input, "Input file")->required();
  sub->add_option("--format", opt.format, "Input format")
      ->required()
      ->check(CLI::IsMember({"tokens", "counts", "play", "midi"}));
  sub->add_option("--output", opt.output, "Output file (default: stdout)");
}

void addConfigOptions(CLI::App* sub, Options& opt) {
  sub->add_option("--seed", opt.config.seed, "Master random seed");
  sub->add_option("--shuffles", opt.config.shuffle_replicates, "Shuffle replicates per node")
      ->check(CLI::PositiveNumber);
  sub->add_option("--threshold-multiplier", opt.config.threshold_multiplier,
                  "Significance threshold: d_max > mean + t * sigma")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--min-split-length", opt.config.min_split_length,
                  "Shortest span that may be split")
      ->check(CLI::Range(static_cast<std::size_t>(2), std::numeric_limits<std::size_t>::max()));
  sub->add_option("--max-depth", opt.config.max_depth, "Maximum split levels")
      ->check(CLI::PositiveNumber);
  sub->add_option("--weight-mode", opt.weight_mode, "Subsequence weighting: positions or mass")
      ->check(CLI::IsMember({"positions", "mass"}));
  sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
}

void addMidiOptions(CLI::App* sub, Options& opt) {
  opt.bar_offset_opt =
      sub->add_option("--bar-offset", opt.bar_offset, "Offset added to 1-based bar labels");
  opt.percussion_opt = sub->add_flag("--include-percussion", opt.include_percussion,
                                     "Keep channel 10 events");
}

void validateFormatFlags(const Options& opt) {
  const bool is_midi = opt.format == "midi";
  if (!is_midi && opt.bar_offset_opt != nullptr && opt.bar_offset_opt->count() > 0) {
    throw UsageError("--bar-offset requires --format midi");
  }
  if (!is_midi && opt.percussion_opt != nullptr && opt.percussion_opt->count() > 0) {
    throw UsageError("--include-percussion requires --format midi");
  }
  if (opt.markers_opt != nullptr && opt.markers_opt->count() > 0 && opt.format != "tokens" &&
      opt.format != "counts") {
    throw UsageError("--markers requires --format tokens or counts");
  }
}

LoadedInput loadInput(const Options& opt) {
  validateFormatFlags(opt);
  std::optional<WeightedSequence> sequence;
  std::vector<Marker> markers;
  if (opt.format == "tokens") {
    const std::vector<std::string> tokens = jsseg::parseTokensText(jsseg::readFileText(opt.input));
    if (tokens.empty()) {
      throw Error("empty sequence");
    }
    sequence = jsseg::oneHot(tokens, jsseg::buildAlphabet(tokens));
  } else if (opt.format == "counts") {
    sequence = jsseg::parseCountsText(jsseg::readFileText(opt.input));
  } else if (opt.format == "play") {
    jsseg::PlaySequence play =
        jsseg::playToSequence(jsseg::parsePlay(jsseg::readFileText(opt.input)));
    sequence = std::move(play.sequence);
    markers = std::move(play.markers);
  } else {
    const std::vector<std::uint8_t> bytes = jsseg::readFileBytes(opt.input);
    const jsseg::SmfData smf = jsseg::parseSmf(bytes);
    jsseg::BinOptions bin;
    bin.include_percussion = opt.include_percussion;
    bin.bar_offset = opt.bar_offset;
    sequence = jsseg::binToBars(smf.events, smf.grid, bin);
  }
  if (!opt.markers_path.empty() && (opt.format == "tokens" || opt.format == "counts")) {
    markers = jsseg::parseMarkersText(jsseg::readFileText(opt.markers_path));
  }
  return {std::move(*sequence), std::move(markers)};
}

void writeOutput(const std::string& path, std::string_view content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    jsseg::writeFileText(path, content);
  }
}

SegmentationConfig finalizeConfig(Options& opt) {
  const auto mode = jsseg::weightModeFromName(opt.weight_mode);
  if (!mode.has_value()) {
    throw UsageError("unknown weight mode: " + opt.weight_mode);
  }
  opt.config.weight_mode = *mode;
  opt.config.validate();
  return opt.config;
}

std::string profileStem(const std::string& output) {
  const std::string suffix = ".json";
  if (output.size() > suffix.size() &&
      output.compare(output.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return output.substr(0, output.size() - suffix.size());
  }
  return output;
}

void emitNodeProfiles(const WeightedSequence& seq, const jsseg::SegmentNode& node,
                      const SegmentationConfig& config, int threads, const std::string& stem) {
  if (node.d_max.has_value() && node.baseline.has_value()) {
    const jsseg::SplitProfile profile =
        jsseg::splitProfile(seq, node.span, config.weight_mode, threads);
    const std::string path = stem + ".profile-" + std::to_string(node.span.start) + "-" +
                             std::to_string(node.span.end) + ".csv";
    jsseg::writeFileText(path, jsseg::emitProfileCsv(profile, *node.baseline));
  }
  for (const jsseg::SegmentNode& child : node.children) {
    emitNodeProfiles(seq, child, config, threads, stem);
  }
}

int runSegment(Options& opt) {
  const SegmentationConfig config = finalizeConfig(opt);
  if (opt.emit_profiles && opt.output.empty()) {
    throw UsageError("--emit-profiles requires --output");
  }
  const LoadedInput loaded = loadInput(opt);
  const jsseg::SegmentNode root = jsseg::segmentSequence(loaded.sequence, config, opt.threads);

  jsseg::RunMetadata meta;
  meta.config = config;
  meta.input_digest = jsseg::sequenceDigest(loaded.sequence, loaded.markers);
  const std::optional<int> levels =
      opt.levels < 0 ? std::nullopt : std::optional<int>(opt.levels);
  writeOutput(opt.output, jsseg::emitTree(root, meta, loaded.markers, levels));
  if (opt.emit_profiles) {
    emitNodeProfiles(loaded.sequence, root, config, opt.threads, profileStem(opt.output));
  }
  return 0;
}

int runProfile(Options& opt) {
  const SegmentationConfig config = finalizeConfig(opt);
  const LoadedInput loaded = loadInput(opt);
  const jsseg::SplitProfile profile = jsseg::splitProfile(
      loaded.sequence, loaded.sequence.fullSpan(), config.weight_mode, opt.threads);
  const jsseg::BaselineStats baseline =
      jsseg::shuffleBaseline(loaded.sequence, loaded.sequence.fullSpan(), config, opt.threads);
  writeOutput(opt.output, jsseg::emitProfileCsv(profile, baseline));
  return 0;
}

int runBaseline(Options& opt) {
  const SegmentationConfig config = finalizeConfig(opt);
  const LoadedInput loaded = loadInput(opt);
  const jsseg::BaselineStats baseline =
      jsseg::shuffleBaseline(loaded.sequence, loaded.sequence.fullSpan(), config, opt.threads);
  writeOutput(opt.output, jsseg::emitBaseline(baseline));
  return 0;
}

int runTally(Options& opt) {
  const LoadedInput loaded = loadInput(opt);
  const jsseg::CountVector counts = loaded.sequence.tally(loaded.sequence.fullSpan());
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out += loaded.sequence.alphabet().label(i);
    out += '\t';
    out += std::to_string(counts[i]);
    out += '\n';
  }
  writeOutput(opt.output, out);
  return 0;
}

int runIngestPlay(Options& opt) {
  const jsseg::PlayScript script = jsseg::parsePlay(jsseg::readFileText(opt.input));
  const jsseg::PlaySequence play = jsseg::playToSequence(script);
  writeOutput(opt.output, jsseg::emitTokensText(play.sequence));
  if (!opt.markers_path.empty()) {
    jsseg::writeFileText(opt.markers_path, jsseg::emitMarkersText(play.markers));
  } else if (!opt.output.empty()) {
    jsseg::writeFileText(opt.output + ".markers.tsv", jsseg::emitMarkersText(play.markers));
  }
  return 0;
}

int runIngestMidi(Options& opt) {
  const std::vector<std::uint8_t> bytes = jsseg::readFileBytes(opt.input);
  const jsseg::SmfData smf = jsseg::parseSmf(bytes);
  jsseg::BinOptions bin;
  bin.include_percussion = opt.include_percussion;
  bin.bar_offset = opt.bar_offset;
  writeOutput(opt.output, jsseg::emitCountsText(jsseg::binToBars(smf.events, smf.grid, bin)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segments symbolic sequences into maximally divergent compositional domains"};
  app.require_subcommand(1);

  Options segment_opt;
  CLI::App* segment = app.add_subcommand("segment", "Segment a sequence into a tree (JSON)");
  addInputOptions(segment, segment_opt);
  addConfigOptions(segment, segment_opt);
  addMidiOptions(segment, segment_opt);
  segment_opt.markers_opt =
      segment->add_option("--markers", segment_opt.markers_path, "Markers sidecar to embed");
  segment->add_option("--levels", segment_opt.levels, "Cap reported depth")
      ->check(CLI::NonNegativeNumber);
  segment->add_flag("--emit-profiles", segment_opt.emit_profiles,
                    "Write one profile CSV per analyzed node");

  Options profile_opt;
  CLI::App* profile = app.add_subcommand("profile", "Write the top-level profile CSV");
  addInputOptions(profile, profile_opt);
  addConfigOptions(profile, profile_opt);
  addMidiOptions(profile, profile_opt);

  Options baseline_opt;
  CLI::App* baseline = app.add_subcommand("baseline", "Write shuffle baseline stats (JSON)");
  addInputOptions(baseline, baseline_opt);
  addConfigOptions(baseline, baseline_opt);
  addMidiOptions(baseline, baseline_opt);

  Options tally_opt;
  CLI::App* tally = app.add_subcommand("tally", "Write the symbol frequency table (TSV)");
  addInputOptions(tally, tally_opt);
  addMidiOptions(tally, tally_opt);

  Options ingest_play_opt;
  CLI::App* ingest_play =
      app.add_subcommand("ingest-play", "Normalize a play text to tokens + markers");
  ingest_play->add_option("--input", ingest_play_opt.input, "Play text")->required();
  ingest_play->add_option("--output", ingest_play_opt.output, "Tokens file (default: stdout)");
  ingest_play->add_option("--markers", ingest_play_opt.markers_path,
                          "Markers sidecar path (default: <output>.markers.tsv)");

  Options ingest_midi_opt;
  CLI::App* ingest_midi =
      app.add_subcommand("ingest-midi", "Bin a MIDI file to per-bar pitch-class counts");
  ingest_midi->add_option("--input", ingest_midi_opt.input, "Standard MIDI file")->required();
  ingest_midi->add_option("--output", ingest_midi_opt.output, "Counts TSV (default: stdout)");
  addMidiOptions(ingest_midi, ingest_midi_opt);
  ingest_midi_opt.format = "midi";

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(segment)) {
      return runSegment(segment_opt);
    }
    if (app.got_subcommand(profile)) {
      return runProfile(profile_opt);
    }
    if (app.got_subcommand(baseline)) {
      return runBaseline(baseline_opt);
    }
    if (app.got_subcommand(tally)) {
      return runTally(tally_opt);
    }
    if (app.got_subcommand(ingest_play)) {
      return runIngestPlay(ingest_play_opt);
    }
    return runIngestMidi(ingest_midi_opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
