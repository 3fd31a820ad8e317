#include "harmonizer/regions.h"

#include <cctype>
#include <stdexcept>

#include "harmonizer/errors.h"

namespace harmonizer {

namespace {

// Horizontal neighbour relations: right of a major chord is its parallel
// minor, right of a minor chord is its relative major.
Chord right_of(const Chord& chord) {
  if (chord.quality == ChordQuality::MajorTriad) {
    return Chord{chord.root, ChordQuality::MinorTriad};
  }
  return Chord{transpose(chord.root, 3), ChordQuality::MajorTriad};
}

Chord left_of(const Chord& chord) {
  if (chord.quality == ChordQuality::MajorTriad) {
    return Chord{transpose(chord.root, -3), ChordQuality::MinorTriad};
  }
  return Chord{chord.root, ChordQuality::MajorTriad};
}

}  // namespace

GridOffset direction_offset(Direction dir) {
  switch (dir) {
    case Direction::Up: return {-1, 0};
    case Direction::Down: return {1, 0};
    case Direction::Left: return {0, -1};
    case Direction::Right: return {0, 1};
    case Direction::UpLeft: return {-1, -1};
    case Direction::UpRight: return {-1, 1};
    case Direction::DownLeft: return {1, -1};
    case Direction::DownRight: return {1, 1};
    case Direction::Up2: return {-2, 0};
    case Direction::Down2: return {2, 0};
    case Direction::Left2: return {0, -2};
    case Direction::Right2: return {0, 2};
  }
  throw std::logic_error("unhandled direction");
}

Direction opposite(Direction dir) {
  switch (dir) {
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
    case Direction::Left: return Direction::Right;
    case Direction::Right: return Direction::Left;
    case Direction::UpLeft: return Direction::DownRight;
    case Direction::UpRight: return Direction::DownLeft;
    case Direction::DownLeft: return Direction::UpRight;
    case Direction::DownRight: return Direction::UpLeft;
    case Direction::Up2: return Direction::Down2;
    case Direction::Down2: return Direction::Up2;
    case Direction::Left2: return Direction::Right2;
    case Direction::Right2: return Direction::Left2;
  }
  throw std::logic_error("unhandled direction");
}

std::string_view direction_name(Direction dir) {
  switch (dir) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::UpLeft: return "up-left";
    case Direction::UpRight: return "up-right";
    case Direction::DownLeft: return "down-left";
    case Direction::DownRight: return "down-right";
    case Direction::Up2: return "up2";
    case Direction::Down2: return "down2";
    case Direction::Left2: return "left2";
    case Direction::Right2: return "right2";
  }
  return "?";
}

std::string_view region_label_name(RegionLabel label) {
  switch (label) {
    case RegionLabel::T: return "T";
    case RegionLabel::D: return "D";
    case RegionLabel::SD: return "SD";
    case RegionLabel::sm: return "sm";
    case RegionLabel::m: return "m";
    case RegionLabel::dor: return "dor";
    case RegionLabel::t: return "t";
    case RegionLabel::v: return "v";
    case RegionLabel::sd: return "sd";
    case RegionLabel::None: return "";
  }
  return "";
}

RegionChart::RegionChart(PitchClass key, Mode mode) : key_(key), mode_(mode) {
  // Fill the center row outward from the tonic, then every column by fifths.
  const int c = kChartCenter;
  cell({c, c}) = Chord{key, mode == Mode::Major ? ChordQuality::MajorTriad
                                                 : ChordQuality::MinorTriad};
  for (int col = c + 1; col < kChartSize; ++col) cell({c, col}) = right_of(cell({c, col - 1}));
  for (int col = c - 1; col >= 0; --col) cell({c, col}) = left_of(cell({c, col + 1}));

  for (int col = 0; col < kChartSize; ++col) {
    for (int row = c - 1; row >= 0; --row) {
      const Chord& below = cell({row + 1, col});
      cell({row, col}) = Chord{transpose(below.root, 7), below.quality};
    }
    for (int row = c + 1; row < kChartSize; ++row) {
      const Chord& above = cell({row - 1, col});
      cell({row, col}) = Chord{transpose(above.root, -7), above.quality};
    }
  }
}

const Chord& RegionChart::chord_at(GridPos pos) const {
  if (!contains(pos)) {
    throw std::out_of_range("chart position (" + std::to_string(pos.row) + ", " +
                            std::to_string(pos.col) + ") is outside the 24x24 grid");
  }
  return cells_[static_cast<std::size_t>(pos.row * kChartSize + pos.col)];
}

RegionChart build_chart(PitchClass key, Mode mode) { return RegionChart(key, mode); }

std::optional<GridPos> try_step(GridPos pos, Direction dir) {
  GridOffset off = direction_offset(dir);
  GridPos next{pos.row + off.drow, pos.col + off.dcol};
  if (!RegionChart::contains(next)) return std::nullopt;
  return next;
}

GridPos step(GridPos pos, Direction dir) {
  auto next = try_step(pos, dir);
  if (!next) {
    throw BoundaryError("moving " + std::string(direction_name(dir)) + " from (" +
                        std::to_string(pos.row) + ", " + std::to_string(pos.col) +
                        ") leaves the chart");
  }
  return *next;
}

RegionLabel region_label(GridPos pos) {
  int drow = pos.row - kChartCenter;
  int dcol = pos.col - kChartCenter;
  if (drow < -1 || drow > 1 || dcol < -1 || dcol > 1) return RegionLabel::None;
  // Rows: dominant above, tonic, subdominant below.
  static constexpr RegionLabel kLabels[3][3] = {
      {RegionLabel::m, RegionLabel::D, RegionLabel::v},
      {RegionLabel::sm, RegionLabel::T, RegionLabel::t},
      {RegionLabel::dor, RegionLabel::SD, RegionLabel::sd},
  };
  return kLabels[drow + 1][dcol + 1];
}

std::string chart_cell_name(const Chord& chord) {
  std::string name = pc_name(chord.root);
  if (chord.quality != ChordQuality::MajorTriad) {
    name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
  }
  return name;
}

std::string format_chart(const RegionChart& chart) {
  std::string out;
  for (int row = 0; row < kChartSize; ++row) {
    for (int col = 0; col < kChartSize; ++col) {
      if (col > 0) out += '\t';
      std::string name = chart_cell_name(chart.chord_at({row, col}));
      if (GridPos{row, col} == kChartCenterPos) {
        out += "[" + name + "]";
      } else {
        out += name;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace harmonizer
