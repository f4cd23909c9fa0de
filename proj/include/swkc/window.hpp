#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "swkc/geometry.hpp"

namespace swkc {

// A point stamped with its 1-based arrival index.
struct TimedPoint {
  Point point;
  std::int64_t time = 0;
};

// Stream-time bookkeeping for a window of the last N arrivals. A point with
// stamp t is alive iff t > now - N.
struct WindowClock {
  std::int64_t window_size = 1;
  std::int64_t now = 0;

  TimedPoint advance(Point p) {
    ++now;
    return TimedPoint{std::move(p), now};
  }

  // Throws if t refers to a future arrival.
  bool is_alive(std::int64_t t) const {
    if (t > now) throw std::invalid_argument("is_alive: time in the future");
    return t > now - window_size;
  }

  // Times <= this value have left the window.
  std::int64_t expiry_horizon() const { return now - window_size; }
};

enum class StreamFormat { csv, ndjson };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Lazy line-oriented point reader. Dimension is inferred from the first
// record and enforced afterwards; blank lines are skipped.
class StreamParser {
 public:
  StreamParser(std::istream& in, StreamFormat fmt) : in_(in), fmt_(fmt) {}

  // Next point in stream order, or nullopt at end of input.
  std::optional<Point> next();

  std::size_t line() const { return line_; }

 private:
  Point parse_csv(const std::string& s);
  Point parse_ndjson(const std::string& s);

  std::istream& in_;
  StreamFormat fmt_;
  std::size_t line_ = 0;
  std::size_t dim_ = 0;
};

}  // namespace swkc
