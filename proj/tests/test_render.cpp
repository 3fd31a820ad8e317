#include <doctest.h>

#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "harmonizer/errors.h"
#include "harmonizer/harmonize.h"
#include "harmonizer/melody_io.h"
#include "harmonizer/render.h"
#include "support.h"

using namespace harmonizer;
namespace p = harmonizer::pitches;
using Q = ChordQuality;
using testing_support::read_smf;

namespace {

ChordEvent event(double onset, Chord c, double duration) {
  return ChordEvent{onset, c, voice_chord(c), duration, ChordRole::Base};
}

Melody small_melody() {
  return Melody{p::F, Mode::Major, 120.0,
                {{0.0, Note{p::C, 5}, 0.75}, {0.75, Note{p::C, 5}, 0.25}, {1.0, Note{p::D, 5}, 1.0}}};
}

// Test-only reader for the JSON carrier.
struct ReadBack {
  Melody melody;
  std::vector<Harmonization> harmonizations;
};

ReadBack read_music_json(const std::string& text) {
  auto doc = nlohmann::ordered_json::parse(text);
  ReadBack r;
  r.melody.key = pc_parse(doc.at("key").get<std::string>());
  r.melody.mode = parse_mode(doc.at("mode").get<std::string>());
  r.melody.bpm = doc.at("bpm").get<double>();
  for (const auto& e : doc.at("melody")) {
    r.melody.events.push_back(NoteEvent{e.at("time").get<double>(),
                                        parse_note(e.at("note").get<std::string>()),
                                        e.at("duration").get<double>()});
  }
  for (const auto& [name, chords] : doc.at("harmonizations").items()) {
    Harmonization h{name, {}};
    for (const auto& c : chords) {
      ChordEvent ev;
      ev.onset = c.at("time").get<double>();
      ev.chord = parse_chord_name(c.at("chord").get<std::string>());
      for (const auto& n : c.at("note")) ev.voicing.push_back(parse_note(n.get<std::string>()));
      ev.duration = c.at("duration").get<double>();
      h.events.push_back(ev);
    }
    r.harmonizations.push_back(h);
  }
  return r;
}

std::vector<std::uint8_t> bytes_of(const std::vector<std::uint8_t>& v, std::size_t from, std::size_t n) {
  return std::vector<std::uint8_t>(v.begin() + static_cast<std::ptrdiff_t>(from),
                                   v.begin() + static_cast<std::ptrdiff_t>(from + n));
}

std::vector<Harmonization> all_engines(const Melody& m, std::uint64_t seed) {
  RandomSource a(seed), b(seed), c(seed);
  std::vector<Harmonization> out = {harmonize_simple1(m), harmonize_simple2(m),
                                    harmonize_schoenberg(m, schoenberg_min_params(), a, "schoenberg-min"),
                                    harmonize_schoenberg(m, schoenberg_max_params(), b, "schoenberg-max"),
                                    harmonize_giant_steps(m, c)};
  for (ModalKind k : {ModalKind::Dorian, ModalKind::PhrygianDominant, ModalKind::Lydian,
                      ModalKind::Mixolydian, ModalKind::Locrian}) {
    out.push_back(harmonize_modal(m, k));
  }
  return out;
}

}  // namespace

TEST_CASE("chord symbol lines") {
  Harmonization h{"simple2", {event(0, {p::A, Q::MinorTriad}, 1), event(1, {p::As, Q::MajorTriad}, 1)}};
  CHECK(write_chord_symbols(h) == "simple2: Am Bb\n");
  RenderConfig sharps;
  sharps.prefer_flats = false;
  CHECK(write_chord_symbols(h, sharps) == "simple2: Am A#\n");
  CHECK(write_chord_symbols(Harmonization{"lydian", {}}) == "lydian:\n");
  Harmonization cad{"x", {event(0, {p::C, Q::Dominant7}, 1), event(1, {p::F, Q::MajorTriad}, 1)}};
  CHECK(write_chord_symbols(cad) == "x: C7 F\n");
  std::vector<Harmonization> both = {h, cad};
  CHECK(write_chord_symbols(both) == "simple2: Am Bb\nx: C7 F\n");
}

TEST_CASE("flat preference changes spelling only") {
  Melody hb = parse_musicxml(testing_support::read_fixture("happy_birthday.musicxml"));
  RenderConfig sharps;
  sharps.prefer_flats = false;
  for (const Harmonization& h : all_engines(hb, 4)) {
    std::istringstream flat_in(write_chord_symbols(h)), sharp_in(write_chord_symbols(h, sharps));
    std::vector<std::string> f, s;
    for (std::string t; flat_in >> t;) f.push_back(t);
    for (std::string t; sharp_in >> t;) s.push_back(t);
    REQUIRE(f.size() == h.events.size() + 1);
    REQUIRE(s.size() == f.size());
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(parse_chord_name(f[i]) == parse_chord_name(s[i]));
  }
}

TEST_CASE("json layout") {
  Melody m = small_melody();
  m.events.push_back(NoteEvent{4.0, Note{p::C, 5}, 0.75});
  Harmonization h{"simple2", {event(0, {p::A, Q::MinorTriad}, 2)}};
  auto doc = nlohmann::ordered_json::parse(write_music_json(m, std::span(&h, 1)));
  CHECK(doc["key"] == "F");
  CHECK(doc["mode"] == "major");
  CHECK(doc["bpm"] == 120.0);
  CHECK(doc["melody"][3] == nlohmann::ordered_json{{"time", 4.0}, {"note", "C5"}, {"duration", 0.75}});
  CHECK(doc["melody"][3]["time"].is_number());
  auto chord = doc["harmonizations"]["simple2"][0];
  CHECK(chord["note"] == nlohmann::ordered_json{"A2", "C3", "E3", "A3"});
  CHECK(chord["chord"] == "Am");
  CHECK(chord["time"] == 0.0);
  CHECK(chord["duration"] == 2.0);

  Melody empty{p::A, Mode::Minor, 90.0, {}};
  auto e = nlohmann::ordered_json::parse(write_music_json(empty, {}));
  CHECK(e["melody"].is_array());
  CHECK(e["melody"].empty());
  CHECK(e["key"] == "A");
  CHECK(e["mode"] == "minor");
  CHECK(e["bpm"] == 90.0);

  RenderConfig fast;
  fast.bpm_override = 150;
  CHECK(nlohmann::ordered_json::parse(write_music_json(m, {}, fast))["bpm"] == 150.0);
}

TEST_CASE("json round trip") {
  for (const char* fixture : {"happy_birthday.musicxml", "fur_elise.musicxml"}) {
    Melody m = parse_musicxml(testing_support::read_fixture(fixture));
    auto hs = all_engines(m, 12);
    ReadBack r = read_music_json(write_music_json(m, hs));
    CHECK(r.melody.key == m.key);
    CHECK(r.melody.mode == m.mode);
    CHECK(r.melody.bpm == m.bpm);
    CHECK(r.melody.events == m.events);
    REQUIRE(r.harmonizations.size() == hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
      CHECK(r.harmonizations[i].method_name == hs[i].method_name);
      REQUIRE(r.harmonizations[i].events.size() == hs[i].events.size());
      for (std::size_t j = 0; j < hs[i].events.size(); ++j) {
        const auto& a = r.harmonizations[i].events[j];
        const auto& b = hs[i].events[j];
        CHECK(a.onset == b.onset);
        CHECK(a.chord == b.chord);
        CHECK(a.voicing == b.voicing);
        CHECK(a.duration == b.duration);
      }
    }
  }
}

TEST_CASE("music script") {
  Melody m{p::F, Mode::Major, 114.84, {{10.0, Note{p::C, 5}, 1.875}}};
  Harmonization h{"simple2", {event(10.0, {p::A, Q::MinorTriad}, 2.5)}};
  RenderConfig cfg;
  cfg.bpm_override = 150;
  std::string js = write_music_script(m, h, cfg);
  CHECK(js.find("Tone.Transport.bpm.value = 150\n") != std::string::npos);
  CHECK(js.find("{'time': '4.000000', 'note': 'C5', 'duration': '0.750000'},") != std::string::npos);
  CHECK(js.find("{'time': '4.000000', 'note': ['A2', 'C3', 'E3', 'A3'], 'duration': '1.000000'},") !=
        std::string::npos);
  CHECK(js.find("const key = 'F';") != std::string::npos);
  CHECK(js.find("const mode = 'major';") != std::string::npos);
  CHECK(js.find("baseUrl: \"pianoSamples/\"") != std::string::npos);
  // Section order follows the playback scaffold.
  auto at = [&](const char* s) { return js.find(s); };
  CHECK(at("new Tone.Sampler") < at("Tone.Transport.bpm.value"));
  CHECK(at("Tone.Transport.bpm.value") < at("const melody = ["));
  CHECK(at("const melody = [") < at("const key"));
  CHECK(at("const key") < at("const chords = ["));
  CHECK(at("const chords = [") < at("Tone.loaded()"));
  CHECK(at("Tone.Transport.start();") != std::string::npos);

  std::string plain = write_music_script(m, Harmonization{"x", {}});
  CHECK(plain.find("Tone.Transport.bpm.value = 114.84\n") != std::string::npos);
  CHECK(plain.find("const chords = [\n];") != std::string::npos);
  RenderConfig bad;
  bad.bpm_override = 0.0;
  CHECK_THROWS_AS(write_music_script(m, h, bad), RangeError);
}

TEST_CASE("midi header and tempo bytes") {
  Melody m = small_melody();
  Harmonization h = harmonize_simple2(m);
  auto bytes = write_midi(m, h);
  CHECK(bytes_of(bytes, 0, 14) == std::vector<std::uint8_t>{0x4D, 0x54, 0x68, 0x64, 0, 0, 0, 6, 0,
                                                            1, 0, 3, 0x01, 0xE0});
  // First track: MTrk, length, delta 0, tempo meta.
  CHECK(bytes_of(bytes, 14, 4) == std::vector<std::uint8_t>{'M', 'T', 'r', 'k'});
  CHECK(bytes_of(bytes, 22, 7) == std::vector<std::uint8_t>{0x00, 0xFF, 0x51, 0x03, 0x07, 0xA1, 0x20});

  RenderConfig fast;
  fast.bpm_override = 150;
  auto f = read_smf(write_midi(m, h, fast));
  CHECK(f.tempos == std::vector<std::uint32_t>{400000});
}

TEST_CASE("midi content read back independently") {
  for (const char* fixture : {"happy_birthday.musicxml", "fur_elise.musicxml", "tied_rests.musicxml"}) {
    Melody m = parse_musicxml(testing_support::read_fixture(fixture));
    for (const Harmonization& h : all_engines(m, 8)) {
      auto bytes = write_midi(m, h);
      auto f = read_smf(bytes);
      CHECK(f.format == 1);
      CHECK(f.ntracks == 3);
      CHECK(f.division == 480);
      CHECK(f.tempos == std::vector<std::uint32_t>{500000});
      CHECK(f.unmatched_note_ons == 0);
      CHECK(f.unmatched_note_offs == 0);
      CHECK_FALSE(f.used_running_status);

      // Expected notes, computed from the model.
      std::vector<std::tuple<int, int, int, std::int64_t, std::int64_t>> want, got;
      std::int64_t end = 0;
      auto tick = [](double beats) { return static_cast<std::int64_t>(std::llround(beats * 480)); };
      for (const auto& e : m.events) {
        want.emplace_back(1, 0, e.note.midi(), tick(e.onset), tick(e.end()));
        end = std::max(end, tick(e.end()));
      }
      for (const auto& e : h.events) {
        for (const auto& n : e.voicing) want.emplace_back(2, 1, n.midi(), tick(e.onset), tick(e.end()));
        end = std::max(end, tick(e.end()));
      }
      for (const auto& n : f.notes) {
        got.emplace_back(n.track, n.channel, n.key, n.on_tick, n.off_tick);
        CHECK(n.velocity == 80);
      }
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      CHECK(got == want);
      CHECK(f.track_lengths == std::vector<std::int64_t>{end, end, end});
    }
  }
}

TEST_CASE("midi errors") {
  Melody m{p::C, Mode::Major, 120.0, {{0.0, Note{p::C, 10}, 1.0}}};
  CHECK_THROWS_AS(write_midi(m, Harmonization{}), RangeError);
  Melody ok = small_melody();
  RenderConfig zero;
  zero.ticks_per_quarter = 0;
  CHECK_THROWS_AS(write_midi(ok, Harmonization{}, zero), RangeError);
  auto f = read_smf(write_midi(Melody{}, Harmonization{}));
  CHECK(f.notes.empty());
  CHECK(f.track_lengths == std::vector<std::int64_t>{0, 0, 0});
}
