// Helpers shared by the test binaries.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace testing_support {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);
std::string read_file(const std::string& path);

// Independent Standard MIDI File reader used to check the writer.
struct SmfNote {
  int track = 0;
  int channel = 0;
  int key = 0;
  std::int64_t on_tick = 0;
  std::int64_t off_tick = 0;
  int velocity = 0;
};

struct SmfFile {
  int format = -1;
  int ntracks = 0;
  int division = 0;
  std::vector<std::uint32_t> tempos;  // microseconds per quarter, in file order
  std::vector<SmfNote> notes;  // sorted by (track, on_tick, key)
  std::vector<std::int64_t> track_lengths;  // summed delta time per track
  std::vector<std::uint32_t> declared_chunk_sizes;
  int unmatched_note_ons = 0;
  int unmatched_note_offs = 0;
  bool used_running_status = false;
};

// Throws std::runtime_error on malformed input.
SmfFile read_smf(const std::vector<std::uint8_t>& bytes);

}  // namespace testing_support
