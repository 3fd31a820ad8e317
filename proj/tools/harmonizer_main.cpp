// harmonizer: generate chord accompaniments for a monophonic melody.
//
//   harmonizer [harmonize] --input song.musicxml --methods simple2,lydian --formats text,midi
//   harmonizer chart --key C --mode major

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "harmonizer/app.h"
#include "harmonizer/errors.h"

namespace {

using harmonizer::Mode;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (c != ' ') {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  // `harmonize` is the default subcommand.
  std::vector<std::string> args(argv, argv + argc);
  if (args.size() < 2 || (args[1] != "harmonize" && args[1] != "chart" && args[1] != "-h" &&
                          args[1] != "--help")) {
    args.insert(args.begin() + 1, "harmonize");
  }

  CLI::App app{"Harmonize a monophonic melody with chart-of-regions, Giant Steps, modal and "
               "matching-chord accompaniments."};
  app.require_subcommand(1);

  harmonizer::RunConfig cfg;
  std::string kind, methods = "simple1,simple2", formats = "text", mode;
  double min_confidence = -1.0;

  auto* harmonize = app.add_subcommand("harmonize", "Harmonize a melody file (default)");
  harmonize->add_option("-i,--input", cfg.input_path, "pitches.txt or MusicXML file")
      ->required();
  harmonize->add_option("--kind", kind, "Input kind: pitches or musicxml (default: by extension)")
      ->check(CLI::IsMember({"pitches", "musicxml"}));
  harmonize->add_option("-m,--methods", methods,
                        "Comma-separated methods, or 'all': simple1, simple2, schoenberg-min, "
                        "schoenberg-max, giant-steps, dorian, phrygian-dominant, lydian, "
                        "mixolydian, locrian")
      ->capture_default_str();
  harmonize->add_option("-s,--seed", cfg.seed, "Master random seed")->capture_default_str();
  harmonize->add_option("--mode", mode, "Override the melody mode: major or minor")
      ->check(CLI::IsMember({"major", "minor"}));
  harmonize->add_option("-f,--formats", formats, "Comma-separated: text, json, midi, musicjs, or 'all'")
      ->capture_default_str();
  harmonize->add_option("-o,--out", cfg.output_dir, "Output directory")->capture_default_str();
  harmonize->add_option("--beats-per-measure", cfg.beats_per_measure,
                        "Slots per chord for schoenberg-min")
      ->capture_default_str();
  harmonize->add_option("--median-window", cfg.quantize.median_window,
                        "Median filter width for pitch streams (odd)")
      ->capture_default_str();
  harmonize->add_option("--min-note", cfg.quantize.min_note_beats,
                        "Shortest kept note in beats for pitch streams")
      ->capture_default_str();
  harmonize->add_option("--snap", cfg.quantize.snap_grid_beats, "Onset grid in beats for pitch streams")
      ->capture_default_str();
  harmonize->add_option("--min-confidence", min_confidence,
                        "Read hz/confidence pairs and replace samples below this confidence");
  harmonize->add_option("--bpm", cfg.bpm_override, "Tempo override for the written files");
  harmonize->add_flag("--prefer-sharps", cfg.prefer_sharps, "Print chord symbols with sharps");
  harmonize->add_flag("--giant-steps-up", cfg.giant_steps_ascending,
                      "Cycle Giant Steps centers upward by major thirds");

  std::string chart_key = "C", chart_mode = "major";
  auto* chart = app.add_subcommand("chart", "Print the 24x24 chart of regions for a key");
  chart->add_option("-k,--key", chart_key, "Tonic pitch class")->capture_default_str();
  chart->add_option("--mode", chart_mode, "major or minor")
      ->check(CLI::IsMember({"major", "minor"}))
      ->capture_default_str();

  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (chart->parsed()) {
    try {
      std::cout << harmonizer::chart_command(harmonizer::pc_parse(chart_key),
                                             harmonizer::parse_mode(chart_mode));
    } catch (const harmonizer::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    return 0;
  }

  if (!kind.empty()) {
    cfg.input_kind = kind == "pitches" ? harmonizer::InputKind::Pitches
                                       : harmonizer::InputKind::MusicXml;
  }
  if (!mode.empty()) cfg.mode_override = harmonizer::parse_mode(mode);
  if (min_confidence >= 0) cfg.quantize.min_confidence = min_confidence;
  cfg.methods = split_list(methods);
  if (cfg.methods.size() == 1 && cfg.methods[0] == "all") {
    cfg.methods.assign(std::begin(harmonizer::kAllMethods), std::end(harmonizer::kAllMethods));
  }
  cfg.formats = split_list(formats);
  if (cfg.formats.size() == 1 && cfg.formats[0] == "all") {
    cfg.formats.assign(std::begin(harmonizer::kAllFormats), std::end(harmonizer::kAllFormats));
  }
  return harmonizer::run(cfg, std::cout, std::cerr);
}
