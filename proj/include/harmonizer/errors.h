// Exception types raised by the harmonizer library.

#pragma once

#include <stdexcept>
#include <string>

namespace harmonizer {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text: pitch names, numeric tokens, XML.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Declared element count disagrees with the content.
class LengthError : public Error {
 public:
  using Error::Error;
};

// Value outside its legal domain (frequency <= 0, MIDI pitch > 127, ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

// A chart step that leaves the 24x24 grid.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

// The chart walk could not find a legal direction.
class WalkError : public Error {
 public:
  using Error::Error;
};

// MusicXML content arrived in an order the reader does not accept.
class StateError : public Error {
 public:
  using Error::Error;
};

class TieError : public Error {
 public:
  using Error::Error;
};

}  // namespace harmonizer
