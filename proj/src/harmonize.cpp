// Harmonization engines: matching chords, chart walks, Giant Steps and modes.

#include "harmonizer/harmonize.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "harmonizer/errors.h"

namespace harmonizer {

double Melody::end() const {
  double end = 0.0;
  for (const auto& e : events) end = std::max(end, e.end());
  return end;
}

namespace {

void require_non_empty(const Melody& melody) {
  if (melody.events.empty()) throw std::invalid_argument("melody has no notes");
}

ChordEvent make_event(double onset, const Chord& chord, double duration,
                      ChordRole role = ChordRole::Base) {
  return ChordEvent{onset, chord, voice_chord(chord), duration, role};
}

// Chords placed at note onsets sustain until the next chord, the last one
// until the melody ends.
Harmonization onset_harmonization(std::string name, const Melody& melody,
                                  const std::vector<std::pair<double, Chord>>& placed) {
  Harmonization h{std::move(name), {}};
  const double end = melody.end();
  for (std::size_t i = 0; i < placed.size(); ++i) {
    double next = i + 1 < placed.size() ? placed[i + 1].first : end;
    h.events.push_back(make_event(placed[i].first, placed[i].second, next - placed[i].first));
  }
  return h;
}

void append_prefix(std::vector<WalkStep>& out, const Chord& target, double p_ii_v_i,
                   double p_secondary_dominant, DominantPolicy policy, RandomSource& rng) {
  if (rng.bernoulli(p_ii_v_i)) {
    for (const Chord& c : two_five_one_prefix(target)) {
      out.push_back(WalkStep{c, 1, ChordRole::InsertedTwo, std::nullopt});
    }
  } else if (rng.bernoulli(p_secondary_dominant)) {
    out.push_back(WalkStep{secondary_dominant(target, policy), 1,
                           ChordRole::InsertedDominant, std::nullopt});
  }
}

void append_cadence(std::vector<WalkStep>& out, const Chord& tonic, int tonic_slots,
                    DominantPolicy policy) {
  out.push_back(WalkStep{secondary_dominant(tonic, policy), 1, ChordRole::InsertedDominant,
                         std::nullopt});
  out.push_back(WalkStep{tonic, tonic_slots, ChordRole::Base, kChartCenterPos});
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must be in [0, 1]");
  }
}

}  // namespace

std::optional<Chord> matching_chord(const Scale& scale, PitchClass pc) {
  auto degree = degree_of(pc, scale);
  if (!degree) return std::nullopt;
  // The chord rooted two degrees below has `pc` as its third.
  int root_degree = (*degree + 4) % 7 + 1;
  return diatonic_triad(scale, root_degree);
}

std::vector<std::size_t> main_tone_indices(const Melody& melody) {
  require_non_empty(melody);
  const Scale scale = melody.scale();
  const auto& ev = melody.events;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    PitchClass pc = ev[i].note.pc;
    if (!is_diatonic(pc, scale)) continue;
    bool longer_than_prev = i == 0 || ev[i].duration > ev[i - 1].duration;
    bool longer_than_next = i + 1 == ev.size() || ev[i].duration > ev[i + 1].duration;
    if ((longer_than_prev && longer_than_next) || pc == melody.key) out.push_back(i);
  }
  return out;
}

Chord secondary_dominant(const Chord& target, DominantPolicy policy) {
  PitchClass root = transpose(target.root, 7);
  if (policy == DominantPolicy::DiatonicFifth && has_minor_third(target.quality)) {
    return Chord{root, ChordQuality::Minor7};
  }
  return Chord{root, ChordQuality::Dominant7};
}

std::array<Chord, 2> two_five_one_prefix(const Chord& target) {
  return {Chord{transpose(target.root, 2), ChordQuality::Minor7},
          Chord{transpose(target.root, 7), ChordQuality::Dominant7}};
}

std::vector<Note> voice_chord(const Chord& chord) {
  std::vector<PitchClass> tones = chord_tones(chord);
  std::vector<Note> out;
  out.push_back(Note{chord.root, 2});
  out.push_back(Note{tones[1], 3});
  auto place_above = [&](PitchClass pc) {
    const Note& prev = out.back();
    int gap = interval_up(prev.pc, pc);
    out.push_back(Note::from_midi(prev.midi() + (gap == 0 ? 12 : gap)));
  };
  for (std::size_t i = 2; i < tones.size(); ++i) place_above(tones[i]);
  if (!is_seventh(chord.quality)) place_above(chord.root);
  return out;
}

Harmonization harmonize_simple1(const Melody& melody) {
  require_non_empty(melody);
  const Scale scale = melody.scale();
  std::vector<std::pair<double, Chord>> placed;
  for (std::size_t i : main_tone_indices(melody)) {
    const NoteEvent& e = melody.events[i];
    Chord chord = e.note.pc == melody.key ? melody.tonic_triad()
                                          : *matching_chord(scale, e.note.pc);
    placed.emplace_back(e.onset, chord);
  }
  return onset_harmonization("simple1", melody, placed);
}

Harmonization harmonize_simple2(const Melody& melody) {
  require_non_empty(melody);
  const Scale scale = melody.scale();
  std::vector<std::pair<double, Chord>> placed;
  for (const NoteEvent& e : melody.events) {
    if (auto chord = matching_chord(scale, e.note.pc)) placed.emplace_back(e.onset, *chord);
  }
  return onset_harmonization("simple2", melody, placed);
}

SchoenbergParams schoenberg_min_params() {
  SchoenbergParams p;
  p.directions.assign(kNeighborDirections.begin(), kNeighborDirections.end());
  p.allow_repeats = false;
  p.allow_mode_change = true;
  p.p_secondary_dominant = 1.0;
  p.p_ii_v_i = 0.25;
  p.repeats_per_chord = 4;
  p.dominant_policy = DominantPolicy::DiatonicFifth;
  return p;
}

SchoenbergParams schoenberg_max_params() {
  SchoenbergParams p;
  p.directions.assign(kAllDirections.begin(), kAllDirections.end());
  p.allow_repeats = true;
  p.allow_mode_change = true;
  p.p_secondary_dominant = 0.5;
  p.p_ii_v_i = 0.25;
  p.repeats_per_chord = 1;
  p.dominant_policy = DominantPolicy::AlwaysDominant7;
  return p;
}

std::vector<WalkStep> schoenberg_walk(const RegionChart& chart, const SchoenbergParams& params,
                                      int n_base_steps, RandomSource& rng) {
  if (n_base_steps < 2) throw std::invalid_argument("a walk needs at least 2 base steps");
  if (params.directions.empty()) throw std::invalid_argument("no walk directions given");
  if (params.repeats_per_chord < 1) {
    throw std::invalid_argument("repeats_per_chord must be positive");
  }
  check_probability(params.p_secondary_dominant, "p_secondary_dominant");
  check_probability(params.p_ii_v_i, "p_ii_v_i");

  const Chord tonic = chart.tonic();
  const int r = params.repeats_per_chord;
  std::vector<WalkStep> out;
  out.push_back(WalkStep{tonic, r, ChordRole::Base, kChartCenterPos});

  GridPos pos = kChartCenterPos;
  std::optional<GridPos> prev;
  for (int i = 1; i + 1 < n_base_steps; ++i) {
    std::optional<GridPos> next;
    for (int draw = 0; draw < kMaxDirectionDraws && !next; ++draw) {
      Direction dir = params.directions[rng.uniform_below(params.directions.size())];
      auto candidate = try_step(pos, dir);
      if (!candidate) continue;
      if (!params.allow_repeats && prev && *candidate == *prev) continue;
      if (!params.allow_mode_change && chart.chord_at(*candidate).quality != tonic.quality) {
        continue;
      }
      next = candidate;
    }
    if (!next) {
      throw WalkError("no legal direction from (" + std::to_string(pos.row) + ", " +
                      std::to_string(pos.col) + ") after " +
                      std::to_string(kMaxDirectionDraws) + " draws");
    }
    const Chord& target = chart.chord_at(*next);
    append_prefix(out, target, params.p_ii_v_i, params.p_secondary_dominant,
                  params.dominant_policy, rng);
    out.push_back(WalkStep{target, r, ChordRole::Base, *next});
    prev = pos;
    pos = *next;
  }
  append_cadence(out, tonic, r, params.dominant_policy);
  return out;
}

SlotGrid slot_grid(const Melody& melody) {
  require_non_empty(melody);
  double first = melody.events.front().onset;
  for (const auto& e : melody.events) first = std::min(first, e.onset);
  double start = std::floor(first);
  double end = std::ceil(melody.end());
  return SlotGrid{start, std::max(1, static_cast<int>(end - start))};
}

int plan_base_steps(int total_slots, int repeats_per_chord, double p_secondary_dominant,
                    double p_ii_v_i) {
  const double per_step = repeats_per_chord + p_secondary_dominant + p_ii_v_i;
  int n = 2;
  while ((n + 1) * per_step + 1.0 <= total_slots) ++n;
  return n;
}

std::vector<ChordEvent> lay_out_steps(const std::vector<WalkStep>& steps,
                                      const SlotGrid& grid) {
  std::vector<ChordEvent> events;
  int slot = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const WalkStep& s = steps[i];
    int slots = s.slots;
    if (i + 1 == steps.size()) slots = std::max(slots, grid.count - slot);
    for (int k = 0; k < slots; ++k, ++slot) {
      events.push_back(make_event(grid.start + slot, s.chord, 1.0, s.role));
    }
  }
  return events;
}

Harmonization harmonize_schoenberg(const Melody& melody, const SchoenbergParams& params,
                                   RandomSource& rng, std::string method_name) {
  SlotGrid grid = slot_grid(melody);
  int n = plan_base_steps(grid.count, params.repeats_per_chord, params.p_secondary_dominant,
                          params.p_ii_v_i);
  RegionChart chart(melody.key, melody.mode);
  auto steps = schoenberg_walk(chart, params, n, rng);
  return Harmonization{std::move(method_name), lay_out_steps(steps, grid)};
}

std::array<PitchClass, 3> giant_steps_centers(PitchClass tonic, bool ascending) {
  const int step = ascending ? 4 : -4;
  return {tonic, transpose(tonic, step), transpose(tonic, 2 * step)};
}

Harmonization harmonize_giant_steps(const Melody& melody, RandomSource& rng,
                                    const GiantStepsOptions& opts) {
  check_probability(opts.p_secondary_dominant, "p_secondary_dominant");
  check_probability(opts.p_ii_v_i, "p_ii_v_i");
  SlotGrid grid = slot_grid(melody);
  int n_max = plan_base_steps(grid.count, 1, opts.p_secondary_dominant, opts.p_ii_v_i);
  // Round down to whole center cycles.
  int n = 2;
  if (n_max >= 4) n = n_max - (n_max - 1) % 3;

  const auto centers = giant_steps_centers(melody.key, opts.ascending);
  const Chord tonic = melody.tonic_triad();
  const auto policy = DominantPolicy::AlwaysDominant7;
  std::vector<WalkStep> steps;
  steps.push_back(WalkStep{tonic, 1, ChordRole::Base, std::nullopt});
  for (int i = 1; i + 1 < n; ++i) {
    Chord target{centers[static_cast<std::size_t>(i % 3)], ChordQuality::MajorTriad};
    append_prefix(steps, target, opts.p_ii_v_i, opts.p_secondary_dominant, policy, rng);
    steps.push_back(WalkStep{target, 1, ChordRole::Base, std::nullopt});
  }
  append_cadence(steps, tonic, 1, policy);
  steps.back().pos.reset();
  return Harmonization{"giant-steps", lay_out_steps(steps, grid)};
}

std::string_view modal_kind_name(ModalKind kind) {
  switch (kind) {
    case ModalKind::Dorian: return "dorian";
    case ModalKind::PhrygianDominant: return "phrygian-dominant";
    case ModalKind::Lydian: return "lydian";
    case ModalKind::Mixolydian: return "mixolydian";
    case ModalKind::Locrian: return "locrian";
  }
  return "?";
}

std::vector<Chord> modal_progression(PitchClass t, ModalKind kind) {
  using Q = ChordQuality;
  switch (kind) {
    case ModalKind::Dorian: {
      // ii, iii, ii, V of the relative ionian a whole step below.
      PitchClass ionian = transpose(t, -2);
      return {Chord{t, Q::MinorTriad}, Chord{transpose(ionian, 4), Q::MinorTriad},
              Chord{t, Q::MinorTriad}, Chord{transpose(ionian, 7), Q::MajorTriad}};
    }
    case ModalKind::PhrygianDominant:
      return {Chord{t, Q::MajorTriad}, Chord{transpose(t, 1), Q::MajorTriad}};
    case ModalKind::Lydian:
      return {Chord{t, Q::MajorTriad}, Chord{transpose(t, 2), Q::Dominant7}};
    case ModalKind::Mixolydian:
      return {Chord{t, Q::Dominant7}, Chord{transpose(t, -2), Q::MajorTriad}};
    case ModalKind::Locrian: {
      // I of the relative ionian a half step above, then vii.
      return {Chord{transpose(t, 1), Q::MajorTriad}, Chord{t, Q::DiminishedTriad}};
    }
  }
  throw std::logic_error("unhandled modal kind");
}

Harmonization harmonize_modal(const Melody& melody, ModalKind kind) {
  SlotGrid grid = slot_grid(melody);
  const auto progression = modal_progression(melody.key, kind);
  const int blocks = (grid.count + kModalBlockSlots - 1) / kModalBlockSlots;
  Harmonization h{std::string(modal_kind_name(kind)), {}};
  for (int slot = 0; slot < grid.count; ++slot) {
    int block = slot / kModalBlockSlots;
    const Chord& chord = block < blocks - kModalHomeBlocks
                             ? progression[static_cast<std::size_t>(block) % progression.size()]
                             : progression.front();
    h.events.push_back(make_event(grid.start + slot, chord, 1.0));
  }
  return h;
}

}  // namespace harmonizer
