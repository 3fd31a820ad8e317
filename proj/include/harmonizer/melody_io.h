// Melody ingestion: pitch-stream text files and a MusicXML subset.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harmonizer/melody.h"

namespace harmonizer {

// Uniformly sampled fundamental frequency with header metadata. Samples <= 0
// are unvoiced frames.
struct PitchStream {
  double duration_s = 0.0;
  PitchClass key;
  Mode mode = Mode::Major;
  double bpm = 120.0;
  std::vector<double> samples_hz;
  std::vector<double> confidences;  // empty unless read with confidences

  double sample_spacing_s() const {
    return samples_hz.empty() ? 0.0 : duration_s / static_cast<double>(samples_hz.size());
  }
};

enum class SampleColumns {
  Frequency,  // one value per sample
  FrequencyConfidence,  // hz confidence pairs
};

// "84.02 F major 114.84 7892 394.344 393.742 ...". Throws ParseError naming
// the 1-based token position, LengthError when the sample count disagrees
// with the header.
PitchStream parse_pitches_txt(std::string_view content,
                              SampleColumns columns = SampleColumns::Frequency);
std::string format_pitches_txt(const PitchStream& stream);

struct QuantizeOptions {
  int median_window = 5;
  double min_note_beats = 0.125;
  double snap_grid_beats = 0.25;
  // When set, samples below this confidence are replaced by the nearest
  // sample that meets it.
  std::optional<double> min_confidence;
};

// Sliding median over voiced samples with truncated windows at the edges.
// Unvoiced samples are copied through. Even-sized windows average the two
// middle values.
std::vector<double> median_filter(std::span<const double> samples, int window);

// Replace low-confidence samples by their nearest confident neighbour
// (earlier neighbour on ties); samples with no confident neighbour become
// unvoiced.
std::vector<double> gate_by_confidence(std::span<const double> samples,
                                       std::span<const double> confidences,
                                       double min_confidence);

Melody quantize_pitch_stream(const PitchStream& stream, const QuantizeOptions& opts = {});

// Key of a signature with `fifths` sharps (negative for flats). Throws
// RangeError outside -7..7.
PitchClass fifths_to_key(int fifths, Mode mode);

// Single-voice MusicXML. `mode_override` replaces the document mode (which
// defaults to major) when deriving the key from the signature.
Melody parse_musicxml(std::string_view content,
                      std::optional<Mode> mode_override = std::nullopt);

}  // namespace harmonizer
