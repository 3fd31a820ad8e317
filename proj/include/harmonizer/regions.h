// Chart of regions: a 24x24 grid of triads centered on the melody key.
//
// Columns ascend by perfect fifths from bottom to top. Reading a row left to
// right, each major chord is followed by its parallel minor and each minor
// chord by its relative major, so the row around C major reads
// "... A a C c D# d# ...".

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "harmonizer/pitch.h"

namespace harmonizer {

inline constexpr int kChartSize = 24;
inline constexpr int kChartCenter = 12;

// Row 0 is the top of the chart; moving Up decreases the row.
struct GridPos {
  int row = kChartCenter;
  int col = kChartCenter;

  friend constexpr bool operator==(const GridPos&, const GridPos&) = default;
};

inline constexpr GridPos kChartCenterPos{kChartCenter, kChartCenter};

enum class Direction {
  Up,
  Down,
  Left,
  Right,
  UpLeft,
  UpRight,
  DownLeft,
  DownRight,
  Up2,
  Down2,
  Left2,
  Right2,
};

inline constexpr std::array<Direction, 4> kNeighborDirections = {
    Direction::Up, Direction::Down, Direction::Left, Direction::Right};

inline constexpr std::array<Direction, 12> kAllDirections = {
    Direction::Up,       Direction::Down,      Direction::Left,
    Direction::Right,    Direction::UpLeft,    Direction::UpRight,
    Direction::DownLeft, Direction::DownRight, Direction::Up2,
    Direction::Down2,    Direction::Left2,     Direction::Right2};

struct GridOffset {
  int drow = 0;
  int dcol = 0;
};

GridOffset direction_offset(Direction dir);
Direction opposite(Direction dir);
std::string_view direction_name(Direction dir);

// Schoenberg's labels for the nine regions around the tonic.
enum class RegionLabel { T, D, SD, sm, m, dor, t, v, sd, None };

std::string_view region_label_name(RegionLabel label);

class RegionChart {
 public:
  RegionChart(PitchClass key, Mode mode);

  PitchClass key() const { return key_; }
  Mode mode() const { return mode_; }

  static constexpr bool contains(GridPos pos) {
    return pos.row >= 0 && pos.row < kChartSize && pos.col >= 0 && pos.col < kChartSize;
  }

  // Throws std::out_of_range outside the grid.
  const Chord& chord_at(GridPos pos) const;
  const Chord& tonic() const { return chord_at(kChartCenterPos); }

 private:
  Chord& cell(GridPos pos) {
    return cells_[static_cast<std::size_t>(pos.row * kChartSize + pos.col)];
  }

  PitchClass key_;
  Mode mode_;
  std::array<Chord, kChartSize * kChartSize> cells_{};
};

RegionChart build_chart(PitchClass key, Mode mode);

// Throws BoundaryError when the move leaves the chart.
GridPos step(GridPos pos, Direction dir);
std::optional<GridPos> try_step(GridPos pos, Direction dir);

RegionLabel region_label(GridPos pos);

// Chart cell as printed in the region grid: "C" for major, "c" for minor.
std::string chart_cell_name(const Chord& chord);

// Tab-separated rows, one line per chart row, center cell in brackets.
std::string format_chart(const RegionChart& chart);

}  // namespace harmonizer
