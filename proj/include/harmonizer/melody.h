// Melody and harmonization value types shared by the engines and renderers.

#pragma once

#include <string>
#include <vector>

#include "harmonizer/pitch.h"

namespace harmonizer {

// Times are in beats.
struct NoteEvent {
  double onset = 0.0;
  Note note;
  double duration = 1.0;

  double end() const { return onset + duration; }
  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

struct Melody {
  PitchClass key;
  Mode mode = Mode::Major;
  double bpm = 120.0;
  std::vector<NoteEvent> events;

  Scale scale() const { return scale_for(key, mode); }
  Chord tonic_triad() const {
    return Chord{key, mode == Mode::Major ? ChordQuality::MajorTriad
                                          : ChordQuality::MinorTriad};
  }
  // End of the last sounding note, 0 for an empty melody.
  double end() const;
};

// Why a chord was placed where it is.
enum class ChordRole {
  Base,  // a chord from the engine's main progression
  InsertedDominant,  // secondary dominant before a base chord
  InsertedTwo,  // ii or V of a ii-V prefix
};

struct ChordEvent {
  double onset = 0.0;
  Chord chord;
  std::vector<Note> voicing;
  double duration = 1.0;
  ChordRole role = ChordRole::Base;

  double end() const { return onset + duration; }
};

struct Harmonization {
  std::string method_name;
  std::vector<ChordEvent> events;
};

}  // namespace harmonizer
