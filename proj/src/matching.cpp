#include "cogflow/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cogflow {

ParamVector param_vector(const Primitive& p) {
  Primitive c = canonicalize(p);
  return ParamVector{c.kind, std::move(c.params)};
}

namespace {

double l2(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

double pair_cost(const ParamVector& a, const ParamVector& b) {
  if (a.kind != b.kind) {
    throw KindMismatch("cannot compare primitives of different kinds");
  }
  if (a.kind == Kind::Line) {
    std::vector<double> swapped = {b.values[2], b.values[3], b.values[0],
                                   b.values[1]};
    return std::min(l2(a.values, b.values), l2(a.values, swapped));
  }
  return l2(a.values, b.values);
}

// Jonker-Volgenant style shortest augmenting path on the padded square
// matrix. Dummy entries are a uniform constant, so they never influence which
// real pairs the optimum picks.
Assignment hungarian_solve(const CostMatrix& c) {
  const std::size_t real_rows = c.rows, real_cols = c.cols;
  Assignment out;
  if (real_rows == 0 || real_cols == 0) return out;

  const std::size_t n = std::max(real_rows, real_cols);
  const auto cost = [&](std::size_t i, std::size_t j) -> double {
    return (i < real_rows && j < real_cols) ? c.at(i, j) : 0.0;
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = match[j0], j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    std::size_t i = match[j];
    if (i == 0) continue;
    std::size_t row = i - 1, col = j - 1;
    if (row < real_rows && col < real_cols) {
      out.pairs.emplace_back(static_cast<int>(row), static_cast<int>(col));
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  for (const auto& [i, j] : out.pairs) out.total += c.at(i, j);
  return out;
}

int MatchResult::unmatched_gt_total() const {
  return unmatched_gt[0] + unmatched_gt[1] + unmatched_gt[2];
}

int MatchResult::unmatched_pred_total() const {
  return unmatched_pred[0] + unmatched_pred[1] + unmatched_pred[2];
}

MatchResult match_multiclass(const PrimitiveSet& gt, const PrimitiveSet& pred,
                             const MatchOptions& opts) {
  MatchResult result;
  result.lambda_fn = opts.lambda_fn;
  result.lambda_fp = opts.lambda_fp;

  for (Kind kind : {Kind::Point, Kind::Line, Kind::Circle}) {
    const int k = static_cast<int>(kind);
    const auto gt_idx = gt.indices_of(kind);
    const auto pred_idx = pred.indices_of(kind);

    if (gt_idx.empty() && pred_idx.empty()) continue;
    if (pred_idx.empty()) {
      result.unmatched_gt[k] += static_cast<int>(gt_idx.size());
      continue;
    }
    if (gt_idx.empty()) {
      result.unmatched_pred[k] += static_cast<int>(pred_idx.size());
      continue;
    }

    CostMatrix c;
    c.rows = gt_idx.size();
    c.cols = pred_idx.size();
    c.entries.resize(c.rows * c.cols);
    std::vector<ParamVector> gt_params, pred_params;
    gt_params.reserve(c.rows);
    pred_params.reserve(c.cols);
    for (auto gi : gt_idx) gt_params.push_back(param_vector(gt.items[gi]));
    for (auto pj : pred_idx) pred_params.push_back(param_vector(pred.items[pj]));

    for (std::size_t i = 0; i < c.rows; ++i) {
      for (std::size_t j = 0; j < c.cols; ++j) {
        double cost = pair_cost(gt_params[i], pred_params[j]);
        if (opts.label_aware) {
          const auto& la = gt.items[gt_idx[i]].label;
          const auto& lb = pred.items[pred_idx[j]].label;
          if (!la.empty() && !lb.empty() && la != lb) {
            cost += opts.label_surcharge;
          }
        }
        c.at(i, j) = cost;
      }
    }

    Assignment a = hungarian_solve(c);
    for (const auto& [i, j] : a.pairs) {
      result.pairs.push_back({kind, static_cast<int>(gt_idx[i]),
                              static_cast<int>(pred_idx[j]), c.at(i, j)});
      result.matched_cost += c.at(i, j);
    }
    result.unmatched_gt[k] +=
        static_cast<int>(gt_idx.size() - a.pairs.size());
    result.unmatched_pred[k] +=
        static_cast<int>(pred_idx.size() - a.pairs.size());
  }

  result.total_cost = result.matched_cost +
                      opts.lambda_fn * result.unmatched_gt_total() +
                      opts.lambda_fp * result.unmatched_pred_total();
  result.mean_matched_cost =
      result.matched_cost /
      std::max<std::size_t>(result.pairs.size(), 1);
  return result;
}

double vpr_reward(const MatchResult& m) {
  return std::exp(-m.total_cost /
                  std::max<std::size_t>(m.pairs.size(), 1));
}

std::string match_report(const MatchResult& m, const PrimitiveSet& gt,
                         const PrimitiveSet& pred) {
  std::string out;
  char buf[256];
  for (Kind kind : {Kind::Point, Kind::Line, Kind::Circle}) {
    const int k = static_cast<int>(kind);
    bool any = m.unmatched_gt[k] > 0 || m.unmatched_pred[k] > 0;
    for (const auto& p : m.pairs) any = any || p.kind == kind;
    if (!any) continue;
    out += std::string(kind_name(kind)) + ":\n";
    for (const auto& p : m.pairs) {
      if (p.kind != kind) continue;
      std::snprintf(buf, sizeof(buf), "  gt[%d] %s  <->  pred[%d] %s  cost %.6f\n",
                    p.gt_index, print_primitive(gt.items[p.gt_index]).c_str(),
                    p.pred_index,
                    print_primitive(pred.items[p.pred_index]).c_str(), p.cost);
      out += buf;
    }
    if (m.unmatched_gt[k] > 0) {
      std::snprintf(buf, sizeof(buf), "  missed gt: %d (penalty %.6f)\n",
                    m.unmatched_gt[k], m.lambda_fn * m.unmatched_gt[k]);
      out += buf;
    }
    if (m.unmatched_pred[k] > 0) {
      std::snprintf(buf, sizeof(buf), "  false positives: %d (penalty %.6f)\n",
                    m.unmatched_pred[k], m.lambda_fp * m.unmatched_pred[k]);
      out += buf;
    }
  }
  std::snprintf(buf, sizeof(buf),
                "total_cost %.6f  matched_cost %.6f  mean_matched_cost %.6f  "
                "pairs %zu\n",
                m.total_cost, m.matched_cost, m.mean_matched_cost,
                m.pairs.size());
  out += buf;
  return out;
}

}  // namespace cogflow
