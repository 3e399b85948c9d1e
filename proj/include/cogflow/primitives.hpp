#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cogflow/common.hpp"

namespace cogflow {

enum class Kind { Point, Line, Circle };

/// Number of parameters for a kind: Point 2, Line 4, Circle 3.
int param_count(Kind k);
std::string_view kind_name(Kind k);

/// Primitive in pixel units, straight from an annotated image.
struct PixelPrimitive {
  Kind kind = Kind::Point;
  std::string label;            // optional, may be empty
  std::vector<double> params;   // Point: x,y  Line: x1,y1,x2,y2  Circle: cx,cy,r

  bool operator==(const PixelPrimitive&) const = default;
};

/// Primitive in the canonical normalized frame. Positions live in [-10, 10];
/// circle radii are scale-only lengths in (0, 20]. Line endpoints are stored
/// in lexicographic (x, y) order.
struct Primitive {
  Kind kind = Kind::Point;
  std::string label;
  std::vector<double> params;

  bool operator==(const Primitive&) const = default;
};

Primitive make_point(double x, double y, std::string label = "");
Primitive make_line(double x1, double y1, double x2, double y2,
                    std::string label = "");
Primitive make_circle(double cx, double cy, double r, std::string label = "");

/// Lexicographic endpoint order for lines; identity for other kinds.
Primitive canonicalize(Primitive p);

/// Throws DomainError when a normalized-frame invariant is violated.
void validate(const Primitive& p);

struct PrimitiveSet {
  std::vector<Primitive> items;

  std::vector<std::size_t> indices_of(Kind k) const;
  std::set<std::string> labels() const;  // non-empty labels only
  bool has_label(std::string_view label) const;
  /// Label lookup; nullptr when absent.
  const Primitive* find_label(std::string_view label) const;
  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }

  bool operator==(const PrimitiveSet&) const = default;
};

/// Throws DomainError on duplicate non-empty Point labels or invalid members.
void validate(const PrimitiveSet& s);

struct ReasoningStep {
  std::string text;
  std::set<std::string> cited_refs;

  bool operator==(const ReasoningStep&) const = default;
};

struct Trajectory {
  PrimitiveSet watching;
  std::string watching_text;
  std::vector<ReasoningStep> thinking;
  std::string answer;

  bool operator==(const Trajectory&) const = default;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct ParseDiagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

struct ParseOptions {
  bool strict = true;  // strict: throw on first malformed line; lenient: skip it
};

struct ParseResult {
  PrimitiveSet set;
  std::vector<ParseDiagnostic> diagnostics;
};

/// Parses the contents of a WATCHING block, one primitive per line.
/// Strict mode throws SyntaxError at the first malformed entry.
ParseResult parse_watching(std::string_view text, const ParseOptions& opts);
PrimitiveSet parse_watching(std::string_view text);

/// Prints a primitive set in the WATCHING grammar, coordinates at two decimals.
std::string print_watching(const PrimitiveSet& s);
std::string print_primitive(const Primitive& p);

/// Extracts label/relation references from step text: standalone tokens of
/// uppercase letters and digits starting with a letter (e.g. "A", "AB", "C1").
std::set<std::string> extract_refs(std::string_view step_text);

/// Splits a full response into WATCHING/THINKING/ANSWER and parses each block.
/// Throws FormatError naming the first missing tag, or "order" when blocks are
/// present but mis-ordered; watching content is parsed strictly.
Trajectory parse_response(std::string_view text);

/// True iff the three blocks are present, correctly tagged and ordered.
bool is_response_well_formed(std::string_view text) noexcept;

std::string print_response(const Trajectory& t);

// ---------------------------------------------------------------------------
// Coordinate normalization
// ---------------------------------------------------------------------------

/// Maps pixel coordinates into the [-10, 10] frame: v -> (v/extent)*20 - 10.
/// Circle radii scale by 20/min(width, height) with no offset. Positions may
/// overhang the image by at most tolerance_px pixels (clamped to the border);
/// anything further out raises DomainError.
Primitive normalize(const PixelPrimitive& p, double width, double height,
                    double tolerance_px = 1.0);

/// Exact inverse of normalize (line endpoints stay canonical).
PixelPrimitive denormalize(const Primitive& p, double width, double height);

PrimitiveSet normalize(const std::vector<PixelPrimitive>& ps, double width,
                       double height, double tolerance_px = 1.0);

}  // namespace cogflow
