// Command-line pipeline: ingest a melody, run the selected engines and write
// one file per method and format.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "harmonizer/harmonize.h"
#include "harmonizer/melody_io.h"

namespace harmonizer {

enum class InputKind { Pitches, MusicXml };

inline constexpr std::string_view kAllMethods[] = {
    "simple1", "simple2", "schoenberg-min", "schoenberg-max", "giant-steps",
    "dorian",  "phrygian-dominant", "lydian", "mixolydian", "locrian"};

inline constexpr std::string_view kAllFormats[] = {"text", "json", "midi", "musicjs"};

struct RunConfig {
  std::filesystem::path input_path;
  std::optional<InputKind> input_kind;  // inferred from the extension when unset
  std::vector<std::string> methods;
  std::uint64_t seed = 0;
  std::optional<Mode> mode_override;
  std::vector<std::string> formats = {"text"};
  std::filesystem::path output_dir = ".";
  QuantizeOptions quantize;
  int beats_per_measure = 4;
  bool prefer_sharps = false;
  std::optional<double> bpm_override;
  bool giant_steps_ascending = false;
};

// Thrown for invalid flag combinations; the CLI exits with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

InputKind infer_input_kind(const std::filesystem::path& path);

Melody load_melody(const RunConfig& cfg);

// Runs one engine by CLI name with a generator derived from (seed, method).
Harmonization run_method(std::string_view method, const Melody& melody, const RunConfig& cfg);

std::string_view format_extension(std::string_view format);

// Returns the process exit status: 0 when every method and format succeeded,
// 1 on input or engine failure, 2 on usage errors.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string chart_command(PitchClass key, Mode mode);

}  // namespace harmonizer
