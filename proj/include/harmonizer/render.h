// Output writers: chord-symbol text, JSON, Tone.js music script and SMF.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "harmonizer/melody.h"

namespace harmonizer {

struct RenderConfig {
  bool prefer_flats = true;
  std::optional<double> bpm_override;
  int ticks_per_quarter = 480;
};

double effective_bpm(const Melody& melody, const RenderConfig& cfg);

// "<method>: Am Am Bb ..." followed by a newline.
std::string write_chord_symbols(const Harmonization& h, const RenderConfig& cfg = {});
std::string write_chord_symbols(std::span<const Harmonization> hs, const RenderConfig& cfg = {});

// Times and durations in beats. Note names use sharps.
std::string write_music_json(const Melody& melody, std::span<const Harmonization> hs,
                             const RenderConfig& cfg = {});

// Browser playback script: sampler preamble, tempo, melody, key/mode, chords
// and Tone.Part scaffolding. Times are seconds printed as quoted 6-decimal
// strings.
std::string write_music_script(const Melody& melody, const Harmonization& h,
                               const RenderConfig& cfg = {});

inline constexpr std::uint8_t kMidiVelocity = 80;
inline constexpr std::uint8_t kMelodyChannel = 0;
inline constexpr std::uint8_t kChordChannel = 1;

// Format 1 SMF: tempo track, melody track (channel 0), chord track
// (channel 1). Throws RangeError for pitches outside 0..127.
std::vector<std::uint8_t> write_midi(const Melody& melody, const Harmonization& h,
                                     const RenderConfig& cfg = {});

}  // namespace harmonizer
