// Single-voice MusicXML reader.
//
// The document is read as a flat stream of tags. Header tags (divisions,
// fifths, beat-unit, per-minute) must precede any pitch or rest. A note item
// starts at <note>, <pitch>, <rest> or <forward> and is committed when the
// next item starts or its enclosing element closes, so both wrapped
// <note> elements and bare tag sequences are accepted.

#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "harmonizer/errors.h"
#include "harmonizer/melody_io.h"

namespace harmonizer {

namespace {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Rational operator+(const Rational& o) const {
    std::int64_t l = std::lcm(den, o.den);
    return Rational(num * (l / den) + o.num * (l / o.den), l);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct Tag {
  enum class Kind { Open, Close, Text } kind = Kind::Open;
  std::string_view name;
  std::string_view attrs;  // raw attribute text for Open
  bool self_closing = false;
  std::string_view text;  // for Text
};

// Minimal XML tokenizer: elements, attributes and text. Processing
// instructions, comments, CDATA and DOCTYPE are skipped.
class TagScanner {
 public:
  explicit TagScanner(std::string_view doc) : doc_(doc) {}

  std::optional<Tag> next() {
    while (pos_ < doc_.size()) {
      if (doc_[pos_] != '<') {
        std::size_t end = doc_.find('<', pos_);
        if (end == std::string_view::npos) end = doc_.size();
        std::string_view text = trim(doc_.substr(pos_, end - pos_));
        pos_ = end;
        if (!text.empty()) return Tag{Tag::Kind::Text, {}, {}, false, text};
        continue;
      }
      if (starts_with("<?")) {
        skip_past("?>");
      } else if (starts_with("<!--")) {
        skip_past("-->");
      } else if (starts_with("<![CDATA[")) {
        skip_past("]]>");
      } else if (starts_with("<!")) {
        skip_doctype();
      } else {
        std::size_t end = doc_.find('>', pos_);
        if (end == std::string_view::npos) throw ParseError("unterminated tag in MusicXML");
        std::string_view body = doc_.substr(pos_ + 1, end - pos_ - 1);
        pos_ = end + 1;
        return make_tag(body);
      }
    }
    return std::nullopt;
  }

 private:
  static std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    std::size_t b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  }

  bool starts_with(std::string_view prefix) const {
    return doc_.substr(pos_, prefix.size()) == prefix;
  }

  void skip_past(std::string_view terminator) {
    std::size_t end = doc_.find(terminator, pos_);
    if (end == std::string_view::npos) throw ParseError("unterminated markup in MusicXML");
    pos_ = end + terminator.size();
  }

  void skip_doctype() {
    int depth = 0;
    for (; pos_ < doc_.size(); ++pos_) {
      char c = doc_[pos_];
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == '>' && depth == 0) {
        ++pos_;
        return;
      }
    }
    throw ParseError("unterminated DOCTYPE in MusicXML");
  }

  static Tag make_tag(std::string_view body) {
    if (body.empty()) throw ParseError("empty tag in MusicXML");
    Tag tag;
    if (body.front() == '/') {
      tag.kind = Tag::Kind::Close;
      tag.name = trim(body.substr(1));
      return tag;
    }
    if (body.back() == '/') {
      tag.self_closing = true;
      body.remove_suffix(1);
    }
    std::size_t name_end = body.find_first_of(" \t\r\n");
    tag.name = body.substr(0, name_end);
    if (name_end != std::string_view::npos) tag.attrs = trim(body.substr(name_end));
    return tag;
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
};

std::optional<std::string_view> attribute(std::string_view attrs, std::string_view name) {
  std::size_t pos = 0;
  while (pos < attrs.size()) {
    std::size_t eq = attrs.find('=', pos);
    if (eq == std::string_view::npos) return std::nullopt;
    std::string_view key = attrs.substr(pos, eq - pos);
    while (!key.empty() && (key.front() == ' ' || key.front() == '\t' || key.front() == '\n' || key.front() == '\r')) key.remove_prefix(1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
    std::size_t q = attrs.find_first_of("\"'", eq);
    if (q == std::string_view::npos) return std::nullopt;
    std::size_t q_end = attrs.find(attrs[q], q + 1);
    if (q_end == std::string_view::npos) throw ParseError("unterminated attribute value");
    if (key == name) return attrs.substr(q + 1, q_end - q - 1);
    pos = q_end + 1;
  }
  return std::nullopt;
}

std::int64_t parse_integer(std::string_view text, std::string_view tag) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("<" + std::string(tag) + ">: expected an integer, got '" +
                     std::string(text) + "'");
  }
  return value;
}

double parse_number(std::string_view text, std::string_view tag) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("<" + std::string(tag) + ">: expected a number, got '" +
                     std::string(text) + "'");
  }
  return value;
}

int natural_semitone(std::string_view step) {
  static constexpr std::string_view kSteps = "C D EF G A B";
  if (step.size() == 1) {
    std::size_t i = kSteps.find(step[0]);
    if (i != std::string_view::npos && step[0] != ' ') return static_cast<int>(i);
  }
  throw ParseError("<step>: unknown step '" + std::string(step) + "'");
}

class MusicXmlReader {
 public:
  explicit MusicXmlReader(std::optional<Mode> mode_override) : mode_override_(mode_override) {}

  Melody read(std::string_view doc) {
    TagScanner scanner(doc);
    while (auto tag = scanner.next()) {
      switch (tag->kind) {
        case Tag::Kind::Open: open(*tag); break;
        case Tag::Kind::Close: close(tag->name); break;
        case Tag::Kind::Text: text(tag->text); break;
      }
    }
    commit();
    flush_tie();
    if (!fifths_) throw StateError("MusicXML has no <fifths> key signature");
    Mode mode = mode_override_.value_or(doc_mode_.value_or(Mode::Major));
    Melody melody{fifths_to_key(static_cast<int>(*fifths_), mode), mode, bpm_.value_or(120.0),
                  std::move(events_)};
    return melody;
  }

 private:
  enum class ItemKind { None, Rest, Pitch, Forward };

  struct Item {
    ItemKind kind = ItemKind::None;
    std::optional<int> step;
    int alter = 0;
    std::optional<std::int64_t> octave;
    std::optional<std::int64_t> duration;
    bool tie_start = false;
    bool tie_stop = false;
    bool chord = false;
    bool grace = false;
  };

  struct OpenTie {
    Rational onset;
    Note note;
    Rational duration;
  };

  void open(const Tag& tag) {
    if (skip_depth_ > 0) {
      if (!tag.self_closing) ++skip_depth_;
      return;
    }
    std::string_view name = tag.name;
    if (name == "backup") {
      commit();
      if (!tag.self_closing) skip_depth_ = 1;
      return;
    }
    if (name == "note") {
      commit();
    } else if (name == "forward") {
      require_header(name);
      commit();
      item_.kind = ItemKind::Forward;
    } else if (name == "rest" || name == "pitch") {
      require_header(name);
      if (item_.kind != ItemKind::None) commit();
      item_.kind = name == "rest" ? ItemKind::Rest : ItemKind::Pitch;
    } else if (name == "chord") {
      item_.chord = true;
    } else if (name == "grace") {
      item_.grace = true;
    } else if (name == "tie") {
      auto type = attribute(tag.attrs, "type");
      if (type == "start") item_.tie_start = true;
      if (type == "stop") item_.tie_stop = true;
    }
    if (!tag.self_closing) stack_.push_back(name);
  }

  void close(std::string_view name) {
    if (skip_depth_ > 0) {
      --skip_depth_;
      return;
    }
    if (!stack_.empty() && stack_.back() == name) stack_.pop_back();
    if (name == "note" || name == "forward") commit();
  }

  void text(std::string_view value) {
    if (skip_depth_ > 0 || stack_.empty()) return;
    std::string_view tag = stack_.back();
    if (tag == "divisions") {
      std::int64_t d = parse_integer(value, tag);
      if (d <= 0) throw ParseError("<divisions> must be positive");
      divisions_ = d;
    } else if (tag == "fifths") {
      std::int64_t f = parse_integer(value, tag);
      fifths_to_key(static_cast<int>(f), Mode::Major);  // range check
      fifths_ = f;
    } else if (tag == "mode") {
      if (value == "major" || value == "minor") doc_mode_ = parse_mode(value);
    } else if (tag == "beat-unit") {
      if (value != "quarter") {
        throw ParseError("<beat-unit> '" + std::string(value) +
                         "' is not supported; only 'quarter' is accepted");
      }
    } else if (tag == "per-minute") {
      double bpm = parse_number(value, tag);
      if (!(bpm > 0)) throw ParseError("<per-minute> must be positive");
      bpm_ = bpm;
    } else if (tag == "step") {
      item_.step = natural_semitone(value);
    } else if (tag == "alter") {
      item_.alter = static_cast<int>(parse_integer(value, tag));
    } else if (tag == "octave") {
      item_.octave = parse_integer(value, tag);
    } else if (tag == "duration") {
      std::int64_t d = parse_integer(value, tag);
      if (d < 0) throw ParseError("<duration> must not be negative");
      item_.duration = d;
    }
  }

  void require_header(std::string_view tag) const {
    if (!divisions_ || !fifths_) {
      throw StateError("<" + std::string(tag) +
                       "> before the <divisions> and <fifths> header tags");
    }
  }

  void commit() {
    Item item = std::exchange(item_, Item{});
    if (item.kind == ItemKind::None || item.chord || item.grace) return;
    if (!item.duration) throw ParseError("note or rest without <duration>");
    Rational length(*item.duration, *divisions_);

    if (item.kind != ItemKind::Pitch) {
      flush_tie();
      cursor_ += length;
      return;
    }
    if (!item.step || !item.octave) throw ParseError("<pitch> without <step> or <octave>");
    int midi = 12 * (static_cast<int>(*item.octave) + 1) + *item.step + item.alter;
    Note note = Note::from_midi(midi);

    if (item.tie_stop) {
      if (!open_tie_) throw TieError("tie stop without a matching tie start");
      open_tie_->duration += length;
      cursor_ += length;
      if (!item.tie_start) flush_tie();
      return;
    }
    flush_tie();
    if (item.tie_start) {
      open_tie_ = OpenTie{cursor_, note, length};
    } else {
      emit(cursor_, note, length);
    }
    cursor_ += length;
  }

  void flush_tie() {
    if (!open_tie_) return;
    emit(open_tie_->onset, open_tie_->note, open_tie_->duration);
    open_tie_.reset();
  }

  void emit(Rational onset, Note note, Rational duration) {
    if (duration.num <= 0) return;
    events_.push_back(NoteEvent{onset.value(), note, duration.value()});
  }

  std::optional<Mode> mode_override_;
  std::optional<Mode> doc_mode_;
  std::optional<std::int64_t> divisions_;
  std::optional<std::int64_t> fifths_;
  std::optional<double> bpm_;
  std::vector<std::string_view> stack_;
  int skip_depth_ = 0;
  Item item_;
  std::optional<OpenTie> open_tie_;
  Rational cursor_;
  std::vector<NoteEvent> events_;
};

}  // namespace

PitchClass fifths_to_key(int fifths, Mode mode) {
  if (fifths < -7 || fifths > 7) {
    throw RangeError("key signature fifths must be in -7..7, got " + std::to_string(fifths));
  }
  PitchClass base = mode == Mode::Major ? pitches::C : pitches::A;
  return transpose(base, 7 * fifths);
}

Melody parse_musicxml(std::string_view content, std::optional<Mode> mode_override) {
  return MusicXmlReader(mode_override).read(content);
}

}  // namespace harmonizer
