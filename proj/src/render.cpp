#include "harmonizer/render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <charconv>
#include <json.hpp>
#include <tuple>

#include "harmonizer/errors.h"

namespace harmonizer {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

// Shortest round-trip spelling, "150" rather than "150.000000".
std::string compact(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

// Tone.Sampler pitch-shifts between these recorded notes.
constexpr const char* kSampleNotes[] = {
    "A0", "C1", "D#1", "F#1", "A1", "C2", "D#2", "F#2", "A2", "C3", "D#3", "F#3",
    "A3", "C4", "D#4", "F#4", "A4", "C5", "D#5", "F#5", "A5", "C6", "D#6", "F#6",
    "A6", "C7", "D#7", "F#7", "A7", "C8"};

struct MidiEvent {
  std::int64_t tick = 0;
  int order = 0;  // note-offs sort before note-ons at the same tick
  std::vector<std::uint8_t> bytes;
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void put_vlq(std::vector<std::uint8_t>& out, std::uint32_t v) {
  std::uint8_t stack[5];
  int n = 0;
  stack[n++] = static_cast<std::uint8_t>(v & 0x7F);
  while (v >>= 7) stack[n++] = static_cast<std::uint8_t>(0x80 | (v & 0x7F));
  while (n > 0) out.push_back(stack[--n]);
}

std::uint8_t midi_key(const Note& note) {
  int key = note.midi();
  if (key < 0 || key > 127) {
    throw RangeError("note " + note_name(note) + " is outside the MIDI range 0..127");
  }
  return static_cast<std::uint8_t>(key);
}

void add_note(std::vector<MidiEvent>& track, std::uint8_t channel, std::uint8_t key,
              std::int64_t on, std::int64_t off) {
  if (off <= on) return;
  track.push_back(MidiEvent{on, 1, {static_cast<std::uint8_t>(0x90 | channel), key, kMidiVelocity}});
  track.push_back(MidiEvent{off, 0, {static_cast<std::uint8_t>(0x80 | channel), key, 0x40}});
}

std::vector<std::uint8_t> track_chunk(std::vector<MidiEvent> events, std::int64_t end_tick) {
  std::stable_sort(events.begin(), events.end(), [](const MidiEvent& a, const MidiEvent& b) {
    return std::tie(a.tick, a.order) < std::tie(b.tick, b.order);
  });
  std::vector<std::uint8_t> body;
  std::int64_t now = 0;
  for (const MidiEvent& e : events) {
    put_vlq(body, static_cast<std::uint32_t>(e.tick - now));
    body.insert(body.end(), e.bytes.begin(), e.bytes.end());
    now = e.tick;
  }
  put_vlq(body, static_cast<std::uint32_t>(std::max<std::int64_t>(0, end_tick - now)));
  body.insert(body.end(), {0xFF, 0x2F, 0x00});

  std::vector<std::uint8_t> chunk = {'M', 'T', 'r', 'k'};
  put_u32(chunk, static_cast<std::uint32_t>(body.size()));
  chunk.insert(chunk.end(), body.begin(), body.end());
  return chunk;
}

ordered_json chord_event_json(const ChordEvent& e, bool prefer_flats) {
  ordered_json notes = ordered_json::array();
  for (const Note& n : e.voicing) notes.push_back(note_name(n));
  return ordered_json{{"time", e.onset},
                      {"chord", chord_name(e.chord, prefer_flats)},
                      {"note", std::move(notes)},
                      {"duration", e.duration}};
}

}  // namespace

double effective_bpm(const Melody& melody, const RenderConfig& cfg) {
  double bpm = cfg.bpm_override.value_or(melody.bpm);
  if (!(bpm > 0)) throw RangeError("tempo must be positive");
  return bpm;
}

std::string write_chord_symbols(const Harmonization& h, const RenderConfig& cfg) {
  std::string line = h.method_name + ":";
  for (const ChordEvent& e : h.events) line += " " + chord_name(e.chord, cfg.prefer_flats);
  return line + "\n";
}

std::string write_chord_symbols(std::span<const Harmonization> hs, const RenderConfig& cfg) {
  std::string out;
  for (const Harmonization& h : hs) out += write_chord_symbols(h, cfg);
  return out;
}

std::string write_music_json(const Melody& melody, std::span<const Harmonization> hs,
                             const RenderConfig& cfg) {
  ordered_json doc;
  doc["key"] = pc_name(melody.key);
  doc["mode"] = std::string(mode_name(melody.mode));
  doc["bpm"] = effective_bpm(melody, cfg);
  ordered_json notes = ordered_json::array();
  for (const NoteEvent& e : melody.events) {
    notes.push_back(ordered_json{{"time", e.onset}, {"note", note_name(e.note)}, {"duration", e.duration}});
  }
  doc["melody"] = std::move(notes);
  ordered_json harmonizations = ordered_json::object();
  for (const Harmonization& h : hs) {
    ordered_json chords = ordered_json::array();
    for (const ChordEvent& e : h.events) chords.push_back(chord_event_json(e, cfg.prefer_flats));
    harmonizations[h.method_name] = std::move(chords);
  }
  doc["harmonizations"] = std::move(harmonizations);
  return doc.dump(2) + "\n";
}

std::string write_music_script(const Melody& melody, const Harmonization& h,
                               const RenderConfig& cfg) {
  const double bpm = effective_bpm(melody, cfg);
  const double seconds_per_beat = 60.0 / bpm;
  std::string out;
  out += "// Tone.sampler section\n\n";
  out += "const sampler = new Tone.Sampler({\n  urls: {\n";
  constexpr std::size_t kSamples = std::size(kSampleNotes);
  for (std::size_t i = 0; i < kSamples; ++i) {
    out += "    \"" + std::string(kSampleNotes[i]) + "\": \"" + kSampleNotes[i] + ".mp3\"";
    out += i + 1 < kSamples ? ",\n" : "\n";
  }
  out += "  },\n  baseUrl: \"pianoSamples/\"\n}).toDestination();\n\n";
  out += "Tone.Transport.bpm.value = " + compact(bpm) + "\n\n";

  out += "const melody = [\n";
  for (const NoteEvent& e : melody.events) {
    out += "  {'time': '" + fixed6(e.onset * seconds_per_beat) + "', 'note': '" +
           note_name(e.note) + "', 'duration': '" + fixed6(e.duration * seconds_per_beat) +
           "'},\n";
  }
  out += "];\n\n";
  out += "const key = '" + pc_name(melody.key) + "';\n";
  out += "const mode = '" + std::string(mode_name(melody.mode)) + "';\n\n";

  out += "const chords = [\n";
  for (const ChordEvent& e : h.events) {
    std::string notes;
    for (const Note& n : e.voicing) {
      if (!notes.empty()) notes += ", ";
      notes += "'" + note_name(n) + "'";
    }
    out += "  {'time': '" + fixed6(e.onset * seconds_per_beat) + "', 'note': [" + notes +
           "], 'duration': '" + fixed6(e.duration * seconds_per_beat) + "'},\n";
  }
  out += "];\n\n";

  out += "Tone.loaded().then(() => {\n";
  out += "  const part = new Tone.Part(function(time, value){\n";
  out += "    sampler.triggerAttackRelease(value.note, value.duration, time);\n";
  out += "  }, chords).start(0);\n";
  out += "});\n\n";
  out += "const part = new Tone.Part(function(time, note){\n";
  out += "  sampler.triggerAttackRelease(note.note, note.duration, time);\n";
  out += "}, melody).start(0);\n\n";
  out += "part.humanize = true;\n";
  out += "Tone.Transport.start();\n";
  return out;
}

std::vector<std::uint8_t> write_midi(const Melody& melody, const Harmonization& h,
                                     const RenderConfig& cfg) {
  if (cfg.ticks_per_quarter <= 0 || cfg.ticks_per_quarter > 0x7FFF) {
    throw RangeError("ticks per quarter must be in 1..32767");
  }
  const double bpm = effective_bpm(melody, cfg);
  const auto tempo = static_cast<std::uint32_t>(std::llround(60'000'000.0 / bpm));
  if (tempo == 0 || tempo > 0xFFFFFF) throw RangeError("tempo out of MIDI range");

  const double tpq = cfg.ticks_per_quarter;
  auto ticks = [&](double beats) {
    return static_cast<std::int64_t>(std::llround(beats * tpq));
  };

  std::int64_t end_tick = 0;
  std::vector<MidiEvent> melody_track;
  for (const NoteEvent& e : melody.events) {
    add_note(melody_track, kMelodyChannel, midi_key(e.note), ticks(e.onset), ticks(e.end()));
    end_tick = std::max(end_tick, ticks(e.end()));
  }
  std::vector<MidiEvent> chord_track;
  for (const ChordEvent& e : h.events) {
    for (const Note& n : e.voicing) {
      add_note(chord_track, kChordChannel, midi_key(n), ticks(e.onset), ticks(e.end()));
    }
    end_tick = std::max(end_tick, ticks(e.end()));
  }
  std::vector<MidiEvent> tempo_track = {MidiEvent{
      0, 0,
      {0xFF, 0x51, 0x03, static_cast<std::uint8_t>(tempo >> 16),
       static_cast<std::uint8_t>((tempo >> 8) & 0xFF), static_cast<std::uint8_t>(tempo & 0xFF)}}};

  std::vector<std::uint8_t> out = {'M', 'T', 'h', 'd'};
  put_u32(out, 6);
  put_u16(out, 1);
  put_u16(out, 3);
  put_u16(out, static_cast<std::uint16_t>(cfg.ticks_per_quarter));
  for (auto* track : {&tempo_track, &melody_track, &chord_track}) {
    auto chunk = track_chunk(std::move(*track), end_tick);
    out.insert(out.end(), chunk.begin(), chunk.end());
  }
  return out;
}

}  // namespace harmonizer
