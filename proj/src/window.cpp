#include "swkc/window.hpp"

#include <charconv>
#include <cmath>
#include <istream>

#include <json.hpp>

namespace swkc {

namespace {

bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

double parse_double(std::string_view tok, std::size_t line) {
  std::size_t b = 0, e = tok.size();
  while (b < e && std::isspace(static_cast<unsigned char>(tok[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(tok[e - 1]))) --e;
  if (b == e) throw ParseError(line, "empty coordinate");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data() + b, tok.data() + e, v);
  if (ec != std::errc{} || ptr != tok.data() + e)
    throw ParseError(line, "bad coordinate '" + std::string(tok.substr(b, e - b)) + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite coordinate");
  return v;
}

}  // namespace

Point StreamParser::parse_csv(const std::string& s) {
  std::vector<double> coords;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string_view tok(s.data() + start, (comma == std::string::npos ? s.size() : comma) - start);
    coords.push_back(parse_double(tok, line_));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Point(std::move(coords));
}

Point StreamParser::parse_ndjson(const std::string& s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(line_, std::string("bad json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("x") || !j["x"].is_array())
    throw ParseError(line_, "expected object with array field \"x\"");
  std::vector<double> coords;
  for (const auto& v : j["x"]) {
    if (!v.is_number()) throw ParseError(line_, "non-numeric coordinate in \"x\"");
    coords.push_back(v.get<double>());
  }
  if (coords.empty()) throw ParseError(line_, "empty coordinate array");
  for (double c : coords)
    if (!std::isfinite(c)) throw ParseError(line_, "non-finite coordinate");
  return Point(std::move(coords));
}

std::optional<Point> StreamParser::next() {
  std::string s;
  while (std::getline(in_, s)) {
    ++line_;
    if (blank(s)) continue;
    Point p = fmt_ == StreamFormat::csv ? parse_csv(s) : parse_ndjson(s);
    if (dim_ == 0) {
      dim_ = p.dim();
    } else if (p.dim() != dim_) {
      throw ParseError(line_, "dimension changed mid-stream");
    }
    return p;
  }
  return std::nullopt;
}

}  // namespace swkc
