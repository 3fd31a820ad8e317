// pitches.txt reading and pitch-stream quantization.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "harmonizer/errors.h"
#include "harmonizer/melody_io.h"

namespace harmonizer {

namespace {

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

double parse_real(std::string_view token, std::size_t position, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw ParseError("token " + std::to_string(position) + " ('" + std::string(token) +
                     "'): expected " + what);
  }
  return value;
}

std::string shortest(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

// Contiguous frames [begin, end) sounding one note.
struct FrameRun {
  std::size_t begin = 0;
  std::size_t end = 0;
  Note note;
};

}  // namespace

PitchStream parse_pitches_txt(std::string_view content, SampleColumns columns) {
  auto tokens = split_whitespace(content);
  if (tokens.size() < 5) {
    throw ParseError("pitch stream header needs 5 tokens, found " +
                     std::to_string(tokens.size()));
  }
  PitchStream s;
  s.duration_s = parse_real(tokens[0], 1, "duration in seconds");
  try {
    s.key = pc_parse(tokens[1]);
    s.mode = parse_mode(tokens[2]);
  } catch (const ParseError& e) {
    throw ParseError("token 2-3 (key/mode): " + std::string(e.what()));
  }
  s.bpm = parse_real(tokens[3], 4, "beats per minute");
  double declared = parse_real(tokens[4], 5, "sample count");
  if (declared < 0 || declared != std::floor(declared)) {
    throw ParseError("token 5 ('" + std::string(tokens[4]) +
                     "'): expected a non-negative integer sample count");
  }
  if (s.duration_s < 0) throw ParseError("token 1: duration must not be negative");
  if (!(s.bpm > 0)) throw ParseError("token 4: beats per minute must be positive");

  const auto count = static_cast<std::size_t>(declared);
  const std::size_t per_sample = columns == SampleColumns::FrequencyConfidence ? 2 : 1;
  const std::size_t found = tokens.size() - 5;
  if (found != count * per_sample) {
    throw LengthError("header declares " + std::to_string(count) + " samples, found " +
                      (per_sample == 2 ? std::to_string(found) + " values"
                                       : std::to_string(found)));
  }
  s.samples_hz.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t pos = 5 + i * per_sample;
    s.samples_hz.push_back(parse_real(tokens[pos], pos + 1, "a frequency"));
    if (per_sample == 2) {
      s.confidences.push_back(parse_real(tokens[pos + 1], pos + 2, "a confidence"));
    }
  }
  return s;
}

std::string format_pitches_txt(const PitchStream& stream) {
  std::string out = shortest(stream.duration_s) + " " + pc_name(stream.key) + " " +
                    std::string(mode_name(stream.mode)) + " " + shortest(stream.bpm) + " " +
                    std::to_string(stream.samples_hz.size());
  const bool with_conf = stream.confidences.size() == stream.samples_hz.size() &&
                         !stream.confidences.empty();
  for (std::size_t i = 0; i < stream.samples_hz.size(); ++i) {
    out += " " + shortest(stream.samples_hz[i]);
    if (with_conf) out += " " + shortest(stream.confidences[i]);
  }
  out += "\n";
  return out;
}

std::vector<double> median_filter(std::span<const double> samples, int window) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("median window must be a positive odd number");
  }
  const auto half = static_cast<std::ptrdiff_t>(window / 2);
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  std::vector<double> out(samples.begin(), samples.end());
  std::vector<double> buf;
  buf.reserve(static_cast<std::size_t>(window));
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (!(samples[static_cast<std::size_t>(i)] > 0)) continue;
    buf.clear();
    for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - half);
         j <= std::min(n - 1, i + half); ++j) {
      double v = samples[static_cast<std::size_t>(j)];
      if (v > 0) buf.push_back(v);
    }
    const std::size_t mid = buf.size() / 2;
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid), buf.end());
    double upper = buf[mid];
    if (buf.size() % 2 == 1) {
      out[static_cast<std::size_t>(i)] = upper;
    } else {
      double lower = *std::max_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid));
      out[static_cast<std::size_t>(i)] = (lower + upper) / 2.0;
    }
  }
  return out;
}

std::vector<double> gate_by_confidence(std::span<const double> samples,
                                       std::span<const double> confidences,
                                       double min_confidence) {
  if (samples.size() != confidences.size()) {
    throw LengthError("sample and confidence counts differ");
  }
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  auto ok = [&](std::ptrdiff_t i) {
    return confidences[static_cast<std::size_t>(i)] >= min_confidence;
  };
  std::vector<double> out(samples.begin(), samples.end());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (ok(i)) continue;
    double replacement = 0.0;
    for (std::ptrdiff_t d = 1; d < n; ++d) {
      if (i - d >= 0 && ok(i - d)) {
        replacement = samples[static_cast<std::size_t>(i - d)];
        break;
      }
      if (i + d < n && ok(i + d)) {
        replacement = samples[static_cast<std::size_t>(i + d)];
        break;
      }
      if (i - d < 0 && i + d >= n) break;
    }
    out[static_cast<std::size_t>(i)] = replacement;
  }
  return out;
}

Melody quantize_pitch_stream(const PitchStream& stream, const QuantizeOptions& opts) {
  if (stream.samples_hz.empty()) throw std::invalid_argument("pitch stream has no samples");
  if (!(opts.min_note_beats > 0) || !(opts.snap_grid_beats > 0)) {
    throw std::invalid_argument("quantize thresholds must be positive");
  }
  Melody melody{stream.key, stream.mode, stream.bpm, {}};

  std::vector<double> samples = stream.samples_hz;
  if (opts.min_confidence) {
    samples = gate_by_confidence(stream.samples_hz, stream.confidences, *opts.min_confidence);
  }
  samples = median_filter(samples, opts.median_window);

  // Frame index -> beats.
  const double beats_per_frame =
      stream.duration_s * stream.bpm / (60.0 * static_cast<double>(samples.size()));
  auto frames_to_beats = [&](std::size_t frames) {
    return static_cast<double>(frames) * beats_per_frame;
  };

  std::vector<FrameRun> runs;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i] > 0)) continue;
    Note note = frequency_to_note(samples[i]).note;
    if (!runs.empty() && runs.back().end == i && runs.back().note == note) {
      runs.back().end = i + 1;
    } else {
      runs.push_back(FrameRun{i, i + 1, note});
    }
  }

  // Short runs fold into a contiguous predecessor a semitone away at most,
  // otherwise they become silence. Contiguous equal notes are joined.
  std::vector<FrameRun> kept;
  for (const FrameRun& run : runs) {
    bool contiguous = !kept.empty() && kept.back().end == run.begin;
    if (frames_to_beats(run.end - run.begin) < opts.min_note_beats) {
      if (contiguous && std::abs(kept.back().note.midi() - run.note.midi()) <= 1) {
        kept.back().end = run.end;
      }
      continue;
    }
    if (contiguous && kept.back().note == run.note) {
      kept.back().end = run.end;
    } else {
      kept.push_back(run);
    }
  }

  const double grid = opts.snap_grid_beats;
  for (const FrameRun& run : kept) {
    auto on = static_cast<std::int64_t>(std::llround(frames_to_beats(run.begin) / grid));
    auto off = static_cast<std::int64_t>(std::llround(frames_to_beats(run.end) / grid));
    double duration = static_cast<double>(off - on) * grid;
    if (off <= on || duration < opts.min_note_beats) continue;
    melody.events.push_back(NoteEvent{static_cast<double>(on) * grid, run.note, duration});
  }
  return melody;
}

}  // namespace harmonizer
