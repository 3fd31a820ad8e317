#include "harmonizer/app.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "harmonizer/errors.h"
#include "harmonizer/regions.h"
#include "harmonizer/render.h"

namespace harmonizer {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::optional<ModalKind> modal_kind_for(std::string_view method) {
  for (ModalKind k : {ModalKind::Dorian, ModalKind::PhrygianDominant, ModalKind::Lydian,
                      ModalKind::Mixolydian, ModalKind::Locrian}) {
    if (modal_kind_name(k) == method) return k;
  }
  return std::nullopt;
}

bool is_known(std::string_view name, std::span<const std::string_view> table) {
  return std::find(table.begin(), table.end(), name) != table.end();
}

void validate(const RunConfig& cfg) {
  if (cfg.methods.empty()) throw UsageError("no harmonization methods selected");
  if (cfg.formats.empty()) throw UsageError("no output formats selected");
  for (const auto& m : cfg.methods) {
    if (!is_known(m, kAllMethods)) throw UsageError("unknown method '" + m + "'");
  }
  for (const auto& f : cfg.formats) {
    if (!is_known(f, kAllFormats)) throw UsageError("unknown format '" + f + "'");
  }
  if (cfg.beats_per_measure < 1) throw UsageError("beats per measure must be positive");
}

}  // namespace

InputKind infer_input_kind(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".txt") return InputKind::Pitches;
  if (ext == ".xml" || ext == ".musicxml") return InputKind::MusicXml;
  throw UsageError("cannot infer input kind from '" + path.string() +
                   "'; pass --kind pitches|musicxml");
}

Melody load_melody(const RunConfig& cfg) {
  InputKind kind = cfg.input_kind.value_or(infer_input_kind(cfg.input_path));
  std::string content = read_file(cfg.input_path);
  if (kind == InputKind::MusicXml) return parse_musicxml(content, cfg.mode_override);
  PitchStream stream = parse_pitches_txt(
      content, cfg.quantize.min_confidence ? SampleColumns::FrequencyConfidence
                                           : SampleColumns::Frequency);
  if (cfg.mode_override) stream.mode = *cfg.mode_override;
  return quantize_pitch_stream(stream, cfg.quantize);
}

Harmonization run_method(std::string_view method, const Melody& melody, const RunConfig& cfg) {
  RandomSource rng(derive_seed(cfg.seed, method));
  if (method == "simple1") return harmonize_simple1(melody);
  if (method == "simple2") return harmonize_simple2(melody);
  if (method == "schoenberg-min") {
    SchoenbergParams params = schoenberg_min_params();
    params.repeats_per_chord = cfg.beats_per_measure;
    return harmonize_schoenberg(melody, params, rng, std::string(method));
  }
  if (method == "schoenberg-max") {
    return harmonize_schoenberg(melody, schoenberg_max_params(), rng, std::string(method));
  }
  if (method == "giant-steps") {
    GiantStepsOptions opts;
    opts.ascending = cfg.giant_steps_ascending;
    return harmonize_giant_steps(melody, rng, opts);
  }
  if (auto kind = modal_kind_for(method)) return harmonize_modal(melody, *kind);
  throw UsageError("unknown method '" + std::string(method) + "'");
}

std::string_view format_extension(std::string_view format) {
  if (format == "text") return "txt";
  if (format == "json") return "json";
  if (format == "midi") return "mid";
  if (format == "musicjs") return "js";
  throw UsageError("unknown format '" + std::string(format) + "'");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Melody melody;
  try {
    validate(cfg);
    melody = load_melody(cfg);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << cfg.input_path.string() << ": " << e.what() << "\n";
    return 1;
  }
  if (melody.events.empty()) {
    err << "error: " << cfg.input_path.string() << ": no notes found in the melody\n";
    return 1;
  }

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) {
    err << "error: cannot create output directory '" << cfg.output_dir.string()
        << "': " << ec.message() << "\n";
    return 1;
  }

  RenderConfig render;
  render.prefer_flats = !cfg.prefer_sharps;
  render.bpm_override = cfg.bpm_override;

  int status = 0;
  for (const std::string& method : cfg.methods) {
    Harmonization h;
    try {
      h = run_method(method, melody, cfg);
    } catch (const std::exception& e) {
      err << "error: method " << method << " (seed " << cfg.seed << "): " << e.what() << "\n";
      status = 1;
      continue;
    }
    for (const std::string& format : cfg.formats) {
      auto path = cfg.output_dir / (method + "." + std::string(format_extension(format)));
      try {
        if (format == "text") {
          write_file(path, write_chord_symbols(h, render));
        } else if (format == "json") {
          write_file(path, write_music_json(melody, std::span(&h, 1), render));
        } else if (format == "midi") {
          auto bytes = write_midi(melody, h, render);
          write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                            bytes.size()));
        } else {
          write_file(path, write_music_script(melody, h, render));
        }
      } catch (const std::exception& e) {
        err << "error: method " << method << ", format " << format << ": " << e.what()
            << "\n";
        status = 1;
      }
    }
    out << write_chord_symbols(h, render);
  }
  return status;
}

std::string chart_command(PitchClass key, Mode mode) {
  return format_chart(build_chart(key, mode));
}

}  // namespace harmonizer
