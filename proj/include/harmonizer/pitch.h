// Pitch-class arithmetic, scales, modes and chords.
//
// Pitch classes are stored sharps-only (0 = C ... 11 = B). Flat names are
// accepted when parsing and can be requested when printing.

#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace harmonizer {

class PitchClass {
 public:
  constexpr PitchClass() = default;
  constexpr explicit PitchClass(int index) : index_(((index % 12) + 12) % 12) {}

  constexpr int index() const { return index_; }

  friend constexpr bool operator==(PitchClass, PitchClass) = default;
  friend constexpr auto operator<=>(PitchClass, PitchClass) = default;

 private:
  int index_ = 0;
};

namespace pitches {
inline constexpr PitchClass C{0};
inline constexpr PitchClass Cs{1};
inline constexpr PitchClass D{2};
inline constexpr PitchClass Ds{3};
inline constexpr PitchClass E{4};
inline constexpr PitchClass F{5};
inline constexpr PitchClass Fs{6};
inline constexpr PitchClass G{7};
inline constexpr PitchClass Gs{8};
inline constexpr PitchClass A{9};
inline constexpr PitchClass As{10};
inline constexpr PitchClass B{11};
}  // namespace pitches

// Octave-qualified pitch in scientific notation; C4 is MIDI 60.
struct Note {
  PitchClass pc;
  int octave = 4;

  constexpr int midi() const { return 12 * (octave + 1) + pc.index(); }

  static constexpr Note from_midi(int midi) {
    int octave = (midi >= 0 ? midi / 12 : (midi - 11) / 12) - 1;
    return Note{PitchClass(midi), octave};
  }

  friend constexpr bool operator==(const Note&, const Note&) = default;
};

enum class Mode { Major, Minor };

enum class ScaleKind {
  Major,  // Ionian
  NaturalMinor,  // Aeolian
  Dorian,
  Phrygian,
  Lydian,
  Mixolydian,
  Locrian,
  PhrygianDominant,
};

inline constexpr std::array<ScaleKind, 8> kAllScaleKinds = {
    ScaleKind::Major,      ScaleKind::NaturalMinor, ScaleKind::Dorian,
    ScaleKind::Phrygian,   ScaleKind::Lydian,       ScaleKind::Mixolydian,
    ScaleKind::Locrian,    ScaleKind::PhrygianDominant};

struct Scale {
  PitchClass tonic;
  ScaleKind kind = ScaleKind::Major;
};

enum class ChordQuality {
  MajorTriad,
  MinorTriad,
  DiminishedTriad,
  Dominant7,
  Minor7,
  Major7,
};

inline constexpr std::array<ChordQuality, 6> kAllChordQualities = {
    ChordQuality::MajorTriad, ChordQuality::MinorTriad,
    ChordQuality::DiminishedTriad, ChordQuality::Dominant7,
    ChordQuality::Minor7, ChordQuality::Major7};

struct Chord {
  PitchClass root;
  ChordQuality quality = ChordQuality::MajorTriad;

  friend constexpr bool operator==(const Chord&, const Chord&) = default;
};

// --- names ------------------------------------------------------------------

// Accepts the 12 sharp names and the flat aliases Db, Eb, Gb, Ab, Bb.
PitchClass pc_parse(std::string_view name);
std::string pc_name(PitchClass pc, bool prefer_flats = false);

// "C4", "A#2", "Bb3". Flat aliases are accepted.
Note parse_note(std::string_view text);
std::string note_name(const Note& note, bool prefer_flats = false);

Mode parse_mode(std::string_view word);
std::string_view mode_name(Mode mode);

// --- arithmetic ---------------------------------------------------------------

constexpr PitchClass transpose(PitchClass pc, int semitones) {
  return PitchClass(pc.index() + semitones);
}

// Upward distance in semitones from `from` to `to`, in 0..11.
constexpr int interval_up(PitchClass from, PitchClass to) {
  return PitchClass(to.index() - from.index()).index();
}

// --- scales -------------------------------------------------------------------

std::span<const int, 7> interval_pattern(ScaleKind kind);
std::array<PitchClass, 7> scale_degrees(const Scale& scale);

// 1-based scale degree of `pc`, or nullopt for an accidental.
std::optional<int> degree_of(PitchClass pc, const Scale& scale);
bool is_diatonic(PitchClass pc, const Scale& scale);

// Melodic scale of a key: Major or NaturalMinor.
Scale scale_for(PitchClass key, Mode mode);

// Triad stacked in thirds on `degree` (1..7). Throws std::out_of_range for
// a bad degree and std::logic_error if the stack is not major, minor or
// diminished.
Chord diatonic_triad(const Scale& scale, int degree);

// --- chords -------------------------------------------------------------------

std::span<const int> quality_offsets(ChordQuality quality);
bool is_seventh(ChordQuality quality);
// Minor third above the root (MinorTriad, DiminishedTriad, Minor7).
bool has_minor_third(ChordQuality quality);

std::vector<PitchClass> chord_tones(const Chord& chord);
std::string chord_suffix(ChordQuality quality);
std::string chord_name(const Chord& chord, bool prefer_flats = false);
Chord parse_chord_name(std::string_view text);

// --- frequency ----------------------------------------------------------------

inline constexpr double kConcertA = 440.0;

struct NoteEstimate {
  Note note;
  double cents = 0.0;  // in [-50, +50)
};

// Equal temperament around A4 = 440 Hz. Throws RangeError for hz <= 0.
NoteEstimate frequency_to_note(double hz);
double midi_to_frequency(double midi);

}  // namespace harmonizer
