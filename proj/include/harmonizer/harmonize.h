// Harmonization engines.
//
// Every engine maps a Melody onto a Harmonization. Chart-walk engines lay
// their chords onto a grid of one-beat slots spanning the melody; the simple
// engines place chords at note onsets.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "harmonizer/melody.h"
#include "harmonizer/random.h"
#include "harmonizer/regions.h"

namespace harmonizer {

// --- chord selection -------------------------------------------------------

// Diatonic triad in which `pc` is the third, or nullopt for an accidental.
std::optional<Chord> matching_chord(const Scale& scale, PitchClass pc);

// Indices of main tones: notes strictly longer than each existing neighbour,
// plus every tonic note. Accidentals are never main tones.
std::vector<std::size_t> main_tone_indices(const Melody& melody);

enum class DominantPolicy {
  AlwaysDominant7,  // V7 of the target
  DiatonicFifth,  // m7 on the fifth before minor targets, V7 otherwise
};

Chord secondary_dominant(const Chord& target, DominantPolicy policy);

// [ii7, V7] leading into `target`.
std::array<Chord, 2> two_five_one_prefix(const Chord& target);

// Bass root in octave 2, upper tones stacked in thirds from octave 3, triads
// doubled at the top with the root.
std::vector<Note> voice_chord(const Chord& chord);

// --- simple engines -------------------------------------------------------

Harmonization harmonize_simple1(const Melody& melody);
Harmonization harmonize_simple2(const Melody& melody);

// --- chart walk ---------------------------------------------------------------

struct SchoenbergParams {
  std::vector<Direction> directions;
  bool allow_repeats = true;
  bool allow_mode_change = true;
  double p_secondary_dominant = 1.0;
  double p_ii_v_i = 0.25;
  int repeats_per_chord = 1;
  DominantPolicy dominant_policy = DominantPolicy::AlwaysDominant7;
};

// Four neighbours, four slots per chord, always a secondary dominant.
SchoenbergParams schoenberg_min_params();
// Twelve directions, one slot per chord, secondary dominant half the time.
SchoenbergParams schoenberg_max_params();

struct WalkStep {
  Chord chord;
  int slots = 1;
  ChordRole role = ChordRole::Base;
  std::optional<GridPos> pos;  // set for base chords taken from the chart
};

// Maximum direction draws per walk step before giving up.
inline constexpr int kMaxDirectionDraws = 64;

// Random walk of `n_base_steps` base chords starting and ending on the
// tonic, with insertions before each non-initial base chord and a forced
// dominant-tonic cadence. Throws WalkError when no legal direction is found.
std::vector<WalkStep> schoenberg_walk(const RegionChart& chart,
                                      const SchoenbergParams& params,
                                      int n_base_steps, RandomSource& rng);

// One-beat slots from the floored first onset to the ceiled melody end.
struct SlotGrid {
  double start = 0.0;
  int count = 0;
};

SlotGrid slot_grid(const Melody& melody);

// Largest n >= 2 with n * repeats + n * (p_sd + p_ii) + 1 <= total_slots.
int plan_base_steps(int total_slots, int repeats_per_chord, double p_secondary_dominant,
                    double p_ii_v_i);

// Maps walk output onto the grid one event per slot; the final step absorbs
// any unused slots.
std::vector<ChordEvent> lay_out_steps(const std::vector<WalkStep>& steps,
                                      const SlotGrid& grid);

Harmonization harmonize_schoenberg(const Melody& melody, const SchoenbergParams& params,
                                   RandomSource& rng,
                                   std::string method_name = "schoenberg");

// --- giant steps ---------------------------------------------------------------

struct GiantStepsOptions {
  bool ascending = false;  // cycle up by major thirds instead of down
  double p_secondary_dominant = 1.0;
  double p_ii_v_i = 0.25;
};

// The three key centers visited, starting at `tonic`.
std::array<PitchClass, 3> giant_steps_centers(PitchClass tonic, bool ascending = false);

Harmonization harmonize_giant_steps(const Melody& melody, RandomSource& rng,
                                    const GiantStepsOptions& opts = {});

// --- church modes ---------------------------------------------------------------

enum class ModalKind { Dorian, PhrygianDominant, Lydian, Mixolydian, Locrian };

std::string_view modal_kind_name(ModalKind kind);

// Progression cycled by the modal engine; element 0 is the home chord.
std::vector<Chord> modal_progression(PitchClass modal_tonic, ModalKind kind);

inline constexpr int kModalBlockSlots = 2;
inline constexpr int kModalHomeBlocks = 2;

Harmonization harmonize_modal(const Melody& melody, ModalKind kind);

}  // namespace harmonizer
