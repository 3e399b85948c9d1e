#include "cogflow/primitives.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace cogflow {

int param_count(Kind k) {
  switch (k) {
    case Kind::Point: return 2;
    case Kind::Line: return 4;
    case Kind::Circle: return 3;
  }
  return 0;
}

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Point: return "Point";
    case Kind::Line: return "Line";
    case Kind::Circle: return "Circle";
  }
  return "?";
}

Primitive make_point(double x, double y, std::string label) {
  return Primitive{Kind::Point, std::move(label), {x, y}};
}

Primitive make_line(double x1, double y1, double x2, double y2,
                    std::string label) {
  return canonicalize(Primitive{Kind::Line, std::move(label), {x1, y1, x2, y2}});
}

Primitive make_circle(double cx, double cy, double r, std::string label) {
  return Primitive{Kind::Circle, std::move(label), {cx, cy, r}};
}

Primitive canonicalize(Primitive p) {
  if (p.kind == Kind::Line && p.params.size() == 4) {
    const double x1 = p.params[0], y1 = p.params[1];
    const double x2 = p.params[2], y2 = p.params[3];
    if (x2 < x1 || (x2 == x1 && y2 < y1)) {
      p.params = {x2, y2, x1, y1};
    }
  }
  return p;
}

void validate(const Primitive& p) {
  if (static_cast<int>(p.params.size()) != param_count(p.kind)) {
    throw DomainError("primitive parameter count does not match kind");
  }
  for (double v : p.params) {
    if (!std::isfinite(v)) throw DomainError("non-finite primitive parameter");
  }
  const auto check_pos = [](double v) {
    if (v < -10.0 || v > 10.0) {
      throw DomainError("position component outside [-10, 10]");
    }
  };
  switch (p.kind) {
    case Kind::Point:
      check_pos(p.params[0]);
      check_pos(p.params[1]);
      break;
    case Kind::Line:
      for (double v : p.params) check_pos(v);
      if (p.params[2] < p.params[0] ||
          (p.params[2] == p.params[0] && p.params[3] < p.params[1])) {
        throw DomainError("line endpoints not in canonical order");
      }
      break;
    case Kind::Circle:
      check_pos(p.params[0]);
      check_pos(p.params[1]);
      if (p.params[2] <= 0.0 || p.params[2] > 20.0) {
        throw DomainError("circle radius outside (0, 20]");
      }
      break;
  }
}

std::vector<std::size_t> PrimitiveSet::indices_of(Kind k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].kind == k) out.push_back(i);
  }
  return out;
}

std::set<std::string> PrimitiveSet::labels() const {
  std::set<std::string> out;
  for (const auto& p : items) {
    if (!p.label.empty()) out.insert(p.label);
  }
  return out;
}

bool PrimitiveSet::has_label(std::string_view label) const {
  return find_label(label) != nullptr;
}

const Primitive* PrimitiveSet::find_label(std::string_view label) const {
  for (const auto& p : items) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

void validate(const PrimitiveSet& s) {
  std::set<std::string> seen;
  for (const auto& p : s.items) {
    validate(p);
    if (p.kind == Kind::Point && !p.label.empty()) {
      if (!seen.insert(p.label).second) {
        throw DomainError("duplicate point label: " + p.label);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// WATCHING parser
// ---------------------------------------------------------------------------

namespace {

// Cursor over one line; columns are 1-based for diagnostics.
struct LineCursor {
  std::string_view text;
  std::size_t pos = 0;
  int line_no;

  explicit LineCursor(std::string_view t, int ln) : text(t), line_no(ln) {}

  int column() const { return static_cast<int>(pos) + 1; }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, line_no, column());
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_')) {
      ++pos;
    }
    return std::string(text.substr(start, pos - start));
  }

  double real() {
    skip_ws();
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected a number");
    pos += static_cast<std::size_t>(ptr - begin);
    return value;
  }
};

Primitive parse_primitive_line(std::string_view line, int line_no) {
  LineCursor c(line, line_no);
  std::string head = c.word();
  Kind kind;
  if (head == "Point") {
    kind = Kind::Point;
  } else if (head == "Line") {
    kind = Kind::Line;
  } else if (head == "Circle") {
    kind = Kind::Circle;
  } else {
    c.fail("expected Point, Line or Circle");
  }

  std::string label;
  if (!c.peek_is(':')) {
    label = c.word();
    if (label.empty()) c.fail("expected label or ':'");
  }
  c.expect(':');

  std::vector<double> params;
  c.expect('(');
  params.push_back(c.real());
  c.expect(',');
  params.push_back(c.real());
  if (kind == Kind::Circle) {
    c.expect(',');
    params.push_back(c.real());
  }
  c.expect(')');
  if (kind == Kind::Line) {
    c.expect('-');
    c.expect('(');
    params.push_back(c.real());
    c.expect(',');
    params.push_back(c.real());
    c.expect(')');
  }
  if (!c.at_end()) c.fail("trailing characters after primitive");

  if (kind == Kind::Circle && params[2] <= 0.0) {
    throw SyntaxError("circle radius must be positive", line_no, 1);
  }
  return canonicalize(Primitive{kind, std::move(label), std::move(params)});
}

}  // namespace

ParseResult parse_watching(std::string_view text, const ParseOptions& opts) {
  ParseResult result;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (blank) continue;
    try {
      result.set.items.push_back(parse_primitive_line(line, line_no));
    } catch (const SyntaxError& e) {
      if (opts.strict) throw;
      result.diagnostics.push_back({e.line(), e.column(), e.what()});
    }
  }
  return result;
}

PrimitiveSet parse_watching(std::string_view text) {
  return parse_watching(text, ParseOptions{}).set;
}

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string print_primitive(const Primitive& p) {
  std::string out(kind_name(p.kind));
  if (!p.label.empty()) {
    out += ' ';
    out += p.label;
  }
  out += ": (";
  switch (p.kind) {
    case Kind::Point:
      out += fixed2(p.params[0]) + ", " + fixed2(p.params[1]) + ")";
      break;
    case Kind::Line:
      out += fixed2(p.params[0]) + ", " + fixed2(p.params[1]) + ") - (" +
             fixed2(p.params[2]) + ", " + fixed2(p.params[3]) + ")";
      break;
    case Kind::Circle:
      out += fixed2(p.params[0]) + ", " + fixed2(p.params[1]) + ", " +
             fixed2(p.params[2]) + ")";
      break;
  }
  return out;
}

std::string print_watching(const PrimitiveSet& s) {
  std::string out;
  for (const auto& p : s.items) {
    out += print_primitive(p);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference extraction and response parsing
// ---------------------------------------------------------------------------

std::set<std::string> extract_refs(std::string_view step_text) {
  std::set<std::string> refs;
  std::size_t i = 0;
  const auto is_word = [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  };
  while (i < step_text.size()) {
    if (!is_word(step_text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < step_text.size() && is_word(step_text[i])) ++i;
    std::string_view token = step_text.substr(start, i - start);
    if (token.size() > 6) continue;
    if (!std::isupper(static_cast<unsigned char>(token[0]))) continue;
    bool ok = true;
    for (char ch : token) {
      if (!std::isupper(static_cast<unsigned char>(ch)) &&
          !std::isdigit(static_cast<unsigned char>(ch))) {
        ok = false;
        break;
      }
    }
    if (ok) refs.emplace(token);
  }
  return refs;
}

namespace {

constexpr std::string_view kTags[6] = {"<WATCHING>",  "</WATCHING>",
                                       "<THINKING>",  "</THINKING>",
                                       "<ANSWER>",    "</ANSWER>"};
constexpr std::string_view kTagNames[6] = {"WATCHING", "WATCHING", "THINKING",
                                           "THINKING", "ANSWER",   "ANSWER"};

struct Blocks {
  std::string_view watching;
  std::string_view thinking;
  std::string_view answer;
};

Blocks extract_blocks(std::string_view text) {
  std::size_t pos[6];
  for (int i = 0; i < 6; ++i) {
    pos[i] = text.find(kTags[i]);
    if (pos[i] == std::string_view::npos) {
      throw FormatError(std::string(kTagNames[i]));
    }
  }
  for (int i = 1; i < 6; ++i) {
    if (pos[i] <= pos[i - 1]) throw FormatError("order");
  }
  const auto between = [&](int open, int close) {
    std::size_t begin = pos[open] + kTags[open].size();
    return text.substr(begin, pos[close] - begin);
  };
  return Blocks{between(0, 1), between(2, 3), between(4, 5)};
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool is_step_delimiter(std::string_view line, std::size_t* content_begin) {
  std::size_t i = line.find_first_not_of(" \t");
  if (i == std::string_view::npos) return false;
  if (line.substr(i, 4) != "Step") return false;
  i += 4;
  if (i >= line.size() || line[i] != ' ') return false;
  ++i;
  std::size_t digits = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) return false;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i >= line.size() || line[i] != ':') return false;
  ++i;
  if (i < line.size() && line[i] == ' ') ++i;
  *content_begin = i;
  return true;
}

std::vector<ReasoningStep> split_steps(std::string_view thinking) {
  std::vector<ReasoningStep> steps;
  std::string current;
  bool in_step = false;

  const auto flush = [&]() {
    std::string text = trim(current);
    if (!text.empty()) steps.push_back({text, extract_refs(text)});
    current.clear();
  };

  std::size_t start = 0;
  while (start <= thinking.size()) {
    std::size_t nl = thinking.find('\n', start);
    std::string_view line = thinking.substr(
        start,
        nl == std::string_view::npos ? thinking.size() - start : nl - start);
    start = nl == std::string_view::npos ? thinking.size() + 1 : nl + 1;

    std::size_t content_begin = 0;
    if (is_step_delimiter(line, &content_begin)) {
      if (in_step || !trim(current).empty()) flush();
      in_step = true;
      current = std::string(line.substr(content_begin));
      current += '\n';
    } else {
      current += std::string(line);
      current += '\n';
    }
  }
  flush();
  return steps;
}

}  // namespace

Trajectory parse_response(std::string_view text) {
  Blocks blocks = extract_blocks(text);
  Trajectory t;
  t.watching_text = trim(blocks.watching);
  t.watching = parse_watching(t.watching_text);
  t.thinking = split_steps(blocks.thinking);
  t.answer = trim(blocks.answer);
  return t;
}

bool is_response_well_formed(std::string_view text) noexcept {
  try {
    extract_blocks(text);
    return true;
  } catch (const FormatError&) {
    return false;
  }
}

std::string print_response(const Trajectory& t) {
  std::string out = "<WATCHING>\n";
  out += t.watching_text.empty() ? print_watching(t.watching)
                                 : t.watching_text + "\n";
  out += "</WATCHING>\n<THINKING>\n";
  for (std::size_t i = 0; i < t.thinking.size(); ++i) {
    out += "Step " + std::to_string(i + 1) + ": " + t.thinking[i].text + "\n";
  }
  out += "</THINKING>\n<ANSWER>\n" + t.answer + "\n</ANSWER>\n";
  return out;
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

double clamp_with_tolerance(double v, double lo, double hi, double tol,
                            const char* what) {
  if (v < lo - tol || v > hi + tol) {
    throw DomainError(std::string(what) + " outside image bounds");
  }
  return std::clamp(v, lo, hi);
}

}  // namespace

Primitive normalize(const PixelPrimitive& p, double width, double height,
                    double tolerance_px) {
  if (width <= 0.0 || height <= 0.0) {
    throw DomainError("image dimensions must be positive");
  }
  if (static_cast<int>(p.params.size()) != param_count(p.kind)) {
    throw DomainError("primitive parameter count does not match kind");
  }
  const auto nx = [&](double x) {
    x = clamp_with_tolerance(x, 0.0, width, tolerance_px, "x");
    return (x / width) * 20.0 - 10.0;
  };
  const auto ny = [&](double y) {
    y = clamp_with_tolerance(y, 0.0, height, tolerance_px, "y");
    return (y / height) * 20.0 - 10.0;
  };
  Primitive out;
  out.kind = p.kind;
  out.label = p.label;
  switch (p.kind) {
    case Kind::Point:
      out.params = {nx(p.params[0]), ny(p.params[1])};
      break;
    case Kind::Line:
      out.params = {nx(p.params[0]), ny(p.params[1]), nx(p.params[2]),
                    ny(p.params[3])};
      break;
    case Kind::Circle: {
      double extent = std::min(width, height);
      double r = clamp_with_tolerance(p.params[2], 0.0, extent, tolerance_px,
                                      "radius");
      out.params = {nx(p.params[0]), ny(p.params[1]), (r / extent) * 20.0};
      break;
    }
  }
  return canonicalize(std::move(out));
}

PixelPrimitive denormalize(const Primitive& p, double width, double height) {
  const auto px = [&](double x) { return (x + 10.0) / 20.0 * width; };
  const auto py = [&](double y) { return (y + 10.0) / 20.0 * height; };
  PixelPrimitive out;
  out.kind = p.kind;
  out.label = p.label;
  switch (p.kind) {
    case Kind::Point:
      out.params = {px(p.params[0]), py(p.params[1])};
      break;
    case Kind::Line:
      out.params = {px(p.params[0]), py(p.params[1]), px(p.params[2]),
                    py(p.params[3])};
      break;
    case Kind::Circle:
      out.params = {px(p.params[0]), py(p.params[1]),
                    p.params[2] / 20.0 * std::min(width, height)};
      break;
  }
  return out;
}

PrimitiveSet normalize(const std::vector<PixelPrimitive>& ps, double width,
                       double height, double tolerance_px) {
  PrimitiveSet out;
  out.items.reserve(ps.size());
  for (const auto& p : ps) {
    out.items.push_back(normalize(p, width, height, tolerance_px));
  }
  return out;
}

}  // namespace cogflow
