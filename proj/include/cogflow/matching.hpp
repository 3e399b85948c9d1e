#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cogflow/primitives.hpp"

namespace cogflow {

/// Fixed-length parameter vector of a primitive: Point (x, y), Circle
/// (cx, cy, r), Line (x1, y1, x2, y2) with canonical endpoint order.
struct ParamVector {
  Kind kind = Kind::Point;
  std::vector<double> values;
};

ParamVector param_vector(const Primitive& p);

/// L2 distance in parameter space. Lines take the minimum over both endpoint
/// orderings of b, so orientation never costs anything. Throws KindMismatch.
double pair_cost(const ParamVector& a, const ParamVector& b);

struct CostMatrix {
  std::size_t rows = 0;  // ground-truth items
  std::size_t cols = 0;  // predicted items
  std::vector<double> entries;  // row-major, rows*cols

  double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
};

struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (row, col), size min(rows, cols)
  double total = 0.0;                      // sum of assigned entries
};

/// Min-cost assignment of size min(rows, cols) via shortest augmenting paths.
/// Rectangular matrices are padded internally; padded pairs are dropped.
Assignment hungarian_solve(const CostMatrix& c);

struct MatchOptions {
  double lambda_fn = 5.0;        // penalty per missed ground-truth primitive
  double lambda_fp = 5.0;        // penalty per spurious predicted primitive
  bool label_aware = false;      // add surcharge when both labels set and differ
  double label_surcharge = 2.0;
};

struct MatchedPair {
  Kind kind = Kind::Point;
  int gt_index = -1;    // index into the ground-truth set
  int pred_index = -1;  // index into the predicted set
  double cost = 0.0;
};

struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::array<int, 3> unmatched_gt{};    // per kind, Point/Line/Circle
  std::array<int, 3> unmatched_pred{};
  double lambda_fn = 0.0;
  double lambda_fp = 0.0;
  double matched_cost = 0.0;  // sum of pair costs, penalties excluded
  double total_cost = 0.0;    // matched_cost + penalty terms
  double mean_matched_cost = 0.0;

  int unmatched_gt_total() const;
  int unmatched_pred_total() const;
};

/// Per-class Hungarian matching with miss / false-positive penalties. A class
/// present on only one side contributes lambda * count; size-mismatched
/// classes leave the surplus unmatched and penalized the same way.
MatchResult match_multiclass(const PrimitiveSet& gt, const PrimitiveSet& pred,
                             const MatchOptions& opts = {});

/// exp(-total_cost / max(|pairs|, 1)); 1 exactly when nothing is wrong.
double vpr_reward(const MatchResult& m);

/// Human-readable per-kind report of pairs, costs and penalties.
std::string match_report(const MatchResult& m, const PrimitiveSet& gt,
                         const PrimitiveSet& pred);

}  // namespace cogflow
