// Pitch-class, scale and chord tables.

#include "harmonizer/pitch.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "harmonizer/errors.h"

namespace harmonizer {

namespace {

constexpr std::array<std::string_view, 12> kSharpNames = {
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"};
constexpr std::array<std::string_view, 12> kFlatNames = {
    "C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B"};

// Church modes are rotations of the Ionian pattern.
constexpr std::array<int, 7> kIonian = {2, 2, 1, 2, 2, 2, 1};
constexpr std::array<int, 7> kDorian = {2, 1, 2, 2, 2, 1, 2};
constexpr std::array<int, 7> kPhrygian = {1, 2, 2, 2, 1, 2, 2};
constexpr std::array<int, 7> kLydian = {2, 2, 2, 1, 2, 2, 1};
constexpr std::array<int, 7> kMixolydian = {2, 2, 1, 2, 2, 1, 2};
constexpr std::array<int, 7> kAeolian = {2, 1, 2, 2, 1, 2, 2};
constexpr std::array<int, 7> kLocrian = {1, 2, 2, 1, 2, 2, 2};
// Fifth mode of harmonic minor.
constexpr std::array<int, 7> kPhrygianDominant = {1, 3, 1, 2, 1, 2, 2};

constexpr std::array<int, 3> kMajorTriad = {0, 4, 7};
constexpr std::array<int, 3> kMinorTriad = {0, 3, 7};
constexpr std::array<int, 3> kDiminishedTriad = {0, 3, 6};
constexpr std::array<int, 4> kDominant7 = {0, 4, 7, 10};
constexpr std::array<int, 4> kMinor7 = {0, 3, 7, 10};
constexpr std::array<int, 4> kMajor7 = {0, 4, 7, 11};

// Longest pitch-class prefix of `text`: a letter and an optional # or b.
std::size_t pitch_prefix_length(std::string_view text) {
  if (text.empty()) return 0;
  if (text.size() >= 2 && (text[1] == '#' || text[1] == 'b')) return 2;
  return 1;
}

}  // namespace

PitchClass pc_parse(std::string_view name) {
  static constexpr int kNatural[] = {9, 11, 0, 2, 4, 5, 7};  // A..G
  if (!name.empty() && name.size() <= 2) {
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    if (letter >= 'A' && letter <= 'G') {
      int index = kNatural[letter - 'A'];
      if (name.size() == 1) return PitchClass(index);
      if (name[1] == '#') return PitchClass(index + 1);
      if (name[1] == 'b') return PitchClass(index - 1);
    }
  }
  throw ParseError("unknown pitch class '" + std::string(name) + "'");
}

std::string pc_name(PitchClass pc, bool prefer_flats) {
  const auto& table = prefer_flats ? kFlatNames : kSharpNames;
  return std::string(table[static_cast<std::size_t>(pc.index())]);
}

Note parse_note(std::string_view text) {
  std::size_t len = pitch_prefix_length(text);
  if (len == 0 || len == text.size()) {
    throw ParseError("malformed note name '" + std::string(text) + "'");
  }
  PitchClass pc = pc_parse(text.substr(0, len));
  std::string_view digits = text.substr(len);
  int octave = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), octave);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("malformed octave in note '" + std::string(text) + "'");
  }
  // Cb and B# cross the octave boundary.
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  if (len == 2 && letter == 'C' && text[1] == 'b') --octave;
  if (len == 2 && letter == 'B' && text[1] == '#') ++octave;
  return Note{pc, octave};
}

std::string note_name(const Note& note, bool prefer_flats) {
  return pc_name(note.pc, prefer_flats) + std::to_string(note.octave);
}

Mode parse_mode(std::string_view word) {
  std::string lower(word);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "major") return Mode::Major;
  if (lower == "minor") return Mode::Minor;
  throw ParseError("unknown mode '" + std::string(word) + "'");
}

std::string_view mode_name(Mode mode) {
  return mode == Mode::Major ? "major" : "minor";
}

std::span<const int, 7> interval_pattern(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::Major: return kIonian;
    case ScaleKind::NaturalMinor: return kAeolian;
    case ScaleKind::Dorian: return kDorian;
    case ScaleKind::Phrygian: return kPhrygian;
    case ScaleKind::Lydian: return kLydian;
    case ScaleKind::Mixolydian: return kMixolydian;
    case ScaleKind::Locrian: return kLocrian;
    case ScaleKind::PhrygianDominant: return kPhrygianDominant;
  }
  throw std::logic_error("unhandled scale kind");
}

std::array<PitchClass, 7> scale_degrees(const Scale& scale) {
  std::array<PitchClass, 7> out;
  auto pattern = interval_pattern(scale.kind);
  PitchClass current = scale.tonic;
  for (std::size_t i = 0; i < 7; ++i) {
    out[i] = current;
    current = transpose(current, pattern[i]);
  }
  return out;
}

std::optional<int> degree_of(PitchClass pc, const Scale& scale) {
  auto degrees = scale_degrees(scale);
  auto it = std::find(degrees.begin(), degrees.end(), pc);
  if (it == degrees.end()) return std::nullopt;
  return static_cast<int>(it - degrees.begin()) + 1;
}

bool is_diatonic(PitchClass pc, const Scale& scale) {
  return degree_of(pc, scale).has_value();
}

Scale scale_for(PitchClass key, Mode mode) {
  return Scale{key, mode == Mode::Major ? ScaleKind::Major : ScaleKind::NaturalMinor};
}

Chord diatonic_triad(const Scale& scale, int degree) {
  if (degree < 1 || degree > 7) {
    throw std::out_of_range("scale degree must be in 1..7");
  }
  auto degrees = scale_degrees(scale);
  auto at = [&](int d) { return degrees[static_cast<std::size_t>((d - 1) % 7)]; };
  PitchClass root = at(degree);
  int third = interval_up(root, at(degree + 2));
  int fifth = interval_up(root, at(degree + 4));
  if (third == 4 && fifth == 7) return Chord{root, ChordQuality::MajorTriad};
  if (third == 3 && fifth == 7) return Chord{root, ChordQuality::MinorTriad};
  if (third == 3 && fifth == 6) return Chord{root, ChordQuality::DiminishedTriad};
  throw std::logic_error("triad on degree " + std::to_string(degree) + " of " +
                         pc_name(scale.tonic) +
                         " scale is neither major, minor nor diminished");
}

std::span<const int> quality_offsets(ChordQuality quality) {
  switch (quality) {
    case ChordQuality::MajorTriad: return kMajorTriad;
    case ChordQuality::MinorTriad: return kMinorTriad;
    case ChordQuality::DiminishedTriad: return kDiminishedTriad;
    case ChordQuality::Dominant7: return kDominant7;
    case ChordQuality::Minor7: return kMinor7;
    case ChordQuality::Major7: return kMajor7;
  }
  throw std::logic_error("unhandled chord quality");
}

bool is_seventh(ChordQuality quality) { return quality_offsets(quality).size() == 4; }

bool has_minor_third(ChordQuality quality) { return quality_offsets(quality)[1] == 3; }

std::vector<PitchClass> chord_tones(const Chord& chord) {
  std::vector<PitchClass> tones;
  for (int offset : quality_offsets(chord.quality)) {
    tones.push_back(transpose(chord.root, offset));
  }
  return tones;
}

std::string chord_suffix(ChordQuality quality) {
  switch (quality) {
    case ChordQuality::MajorTriad: return "";
    case ChordQuality::MinorTriad: return "m";
    case ChordQuality::DiminishedTriad: return "dim";
    case ChordQuality::Dominant7: return "7";
    case ChordQuality::Minor7: return "m7";
    case ChordQuality::Major7: return "maj7";
  }
  throw std::logic_error("unhandled chord quality");
}

std::string chord_name(const Chord& chord, bool prefer_flats) {
  return pc_name(chord.root, prefer_flats) + chord_suffix(chord.quality);
}

Chord parse_chord_name(std::string_view text) {
  std::size_t len = pitch_prefix_length(text);
  if (len == 0) throw ParseError("empty chord name");
  PitchClass root = pc_parse(text.substr(0, len));
  std::string_view suffix = text.substr(len);
  for (ChordQuality q : kAllChordQualities) {
    if (suffix == chord_suffix(q)) return Chord{root, q};
  }
  throw ParseError("unknown chord suffix in '" + std::string(text) + "'");
}

NoteEstimate frequency_to_note(double hz) {
  if (!(hz > 0.0) || !std::isfinite(hz)) {
    throw RangeError("frequency must be positive, got " + std::to_string(hz));
  }
  double fractional = 69.0 + 12.0 * std::log2(hz / kConcertA);
  double nearest = std::floor(fractional + 0.5);
  return NoteEstimate{Note::from_midi(static_cast<int>(nearest)),
                      100.0 * (fractional - nearest)};
}

double midi_to_frequency(double midi) {
  return kConcertA * std::exp2((midi - 69.0) / 12.0);
}

}  // namespace harmonizer
