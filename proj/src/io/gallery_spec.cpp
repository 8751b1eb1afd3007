#include "mbd/io/gallery_spec.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

namespace mbd::io {

namespace {

using gallery::BlockKind;
using gallery::Conjugator;
using gallery::FlowSpec;

[[noreturn]] void fail(const std::string& text, const std::string& what) {
  throw Error(ErrorCode::invalid_spec, "flow spec '" + text + "': " + what);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

template <class T>
bool parse_number(const std::string& s, T& value) {
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::string format(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> table{
      {"fig1", "17: 7,4,3,2,1; unitary; seed=1"},
      {"fig2", "9: 4J,5J; unitary; seed=1"},
      {"fig3", "14: 4,3,2J,2J,1,1,1; unitary; seed=1"},
      {"fig4", "13: 7R,5R,1; unitary; seed=1"},
  };
  return table;
}

}  // namespace

FlowSpec parse_flow_spec(const std::string& raw) {
  const std::string text = trim(raw);
  if (const auto it = presets().find(text); it != presets().end()) return parse_flow_spec(it->second);

  const auto colon = text.find(':');
  if (colon == std::string::npos) fail(text, "expected 'n: dims; options'");
  Index n = 0;
  if (!parse_number(trim(text.substr(0, colon)), n) || n < 1) fail(text, "bad dimension");

  auto parts = split(text.substr(colon + 1), ';');
  if (parts.empty() || parts.front().empty()) fail(text, "no block dimensions");

  FlowSpec spec;
  for (const auto& item : split(parts.front(), ',')) {
    if (item.empty()) fail(text, "empty block entry");
    gallery::BlockSpec b;
    std::string digits = item;
    const char last = item.back();
    if (std::isalpha(static_cast<unsigned char>(last))) {
      digits.pop_back();
      switch (std::toupper(static_cast<unsigned char>(last))) {
        case 'J': b.kind = BlockKind::jordan; break;
        case 'R': b.kind = BlockKind::random_per_sample; break;
        case 'C': b.kind = BlockKind::constant; break;
        case 'S': b.kind = BlockKind::smooth; break;
        default: fail(text, std::string("unknown block suffix '") + last + "'");
      }
    }
    if (!parse_number(digits, b.dim) || b.dim < 1) fail(text, "bad block dimension '" + item + "'");
    spec.blocks.push_back(b);
  }

  for (std::size_t k = 1; k < parts.size(); ++k) {
    const auto& opt = parts[k];
    if (opt.empty()) continue;
    if (opt == "none") {
      spec.conjugator = Conjugator::none;
    } else if (opt == "unitary") {
      spec.conjugator = Conjugator::unitary;
    } else if (opt == "general") {
      spec.conjugator = Conjugator::general;
    } else if (opt == "hermitean" || opt == "hermitian") {
      spec.hermitean = true;
    } else if (opt.rfind("seed=", 0) == 0) {
      if (!parse_number(opt.substr(5), spec.seed)) fail(text, "bad seed");
    } else if (opt.rfind("interval=", 0) == 0) {
      const auto bounds = split(opt.substr(9), ':');
      Interval iv;
      if (bounds.size() != 2 || !parse_number(bounds[0], iv.lo) || !parse_number(bounds[1], iv.hi) || !(iv.lo < iv.hi))
        fail(text, "bad interval, expected interval=lo:hi with lo < hi");
      spec.domain = iv;
    } else {
      fail(text, "unknown option '" + opt + "'");
    }
  }

  if (spec.dimension() != n)
    fail(text, "block dimensions sum to " + std::to_string(spec.dimension()) + ", not " + std::to_string(n));
  gallery::validate(spec);
  return spec;
}

std::string format_flow_spec(const FlowSpec& spec) {
  std::string out = std::to_string(spec.dimension()) + ": ";
  for (std::size_t k = 0; k < spec.blocks.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(spec.blocks[k].dim);
    switch (spec.blocks[k].kind) {
      case BlockKind::smooth: break;
      case BlockKind::jordan: out += 'J'; break;
      case BlockKind::random_per_sample: out += 'R'; break;
      case BlockKind::constant: out += 'C'; break;
    }
  }
  switch (spec.conjugator) {
    case Conjugator::none: out += "; none"; break;
    case Conjugator::unitary: out += "; unitary"; break;
    case Conjugator::general: out += "; general"; break;
  }
  if (spec.hermitean) out += "; hermitean";
  out += "; seed=" + std::to_string(spec.seed);
  if (const auto* iv = std::get_if<Interval>(&spec.domain)) {
    if (iv->lo != 0.0 || iv->hi != 2.0 * std::numbers::pi) out += "; interval=" + format(iv->lo) + ':' + format(iv->hi);
  } else {
    throw Error(ErrorCode::invalid_spec, "specs over explicit sample sets have no text form");
  }
  return out;
}

}  // namespace mbd::io
