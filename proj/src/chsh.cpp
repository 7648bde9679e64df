// Copyright 2026 The qframes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CHSH evaluation and angle scans.

#include <algorithm>
#include <cmath>
#include <thread>

#include "qframes/errors.hpp"
#include "qframes/scenarios.hpp"
#include "qframes/tolerances.hpp"

namespace qframes {

const char* to_string(CorrelationModel model) {
  return model == CorrelationModel::kQuantum ? "quantum" : "factorized";
}

double correlator(const JointDistribution& jd) {
  if (jd.shape() != std::vector<std::size_t>{2, 2}) {
    throw LayoutError("correlator needs a two-outcome pair table");
  }
  return jd.at({0, 0}) - jd.at({0, 1}) - jd.at({1, 0}) + jd.at({1, 1});
}

double correlator(const SchmidtCoefficients& c, double theta1, double theta2,
                  CorrelationModel model) {
  return correlator(model == CorrelationModel::kQuantum
                        ? bell_joint_quantum_closed(c, theta1, theta2)
                        : bell_joint_factorized_closed(c, theta1, theta2));
}

namespace {

double chsh_value(const std::array<double, 4>& e) { return e[0] + e[1] + e[2] - e[3]; }

ChshReport make_report(const std::array<double, 4>& angles, const std::array<double, 4>& e,
                       CorrelationModel model) {
  const double s = chsh_value(e);
  return {angles, e, s, std::abs(s) > 2.0 + tol::kChshSlack, model};
}

}  // namespace

ChshReport chsh(const SchmidtCoefficients& c, double a1, double a2, double b1, double b2,
                CorrelationModel model) {
  const std::array<double, 4> e{correlator(c, a1, b1, model), correlator(c, a1, b2, model),
                                correlator(c, a2, b1, model), correlator(c, a2, b2, model)};
  return make_report({a1, a2, b1, b2}, e, model);
}

std::vector<double> AngleGrid::points() const {
  if (steps < 1) throw PreconditionError("angle grid needs at least one step");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw PreconditionError("angle grid bounds must be finite");
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps);
  }
  return out;
}

ChshScanResult chsh_scan(const SchmidtCoefficients& c, const AngleGrid& grid,
                         CorrelationModel model, unsigned threads) {
  require_normalized(c);
  const auto pts = grid.points();
  const std::size_t n = pts.size();

  // E(a_i, b_j) over the grid.
  std::vector<double> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = correlator(c, pts[i], pts[j], model);
  }

  struct Best {
    double value = -1.0;
    std::array<std::size_t, 4> idx{};
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<Best> partial(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        Best best;
        for (std::size_t a1 = t; a1 < n; a1 += threads) {
          for (std::size_t a2 = 0; a2 < n; ++a2) {
            for (std::size_t b1 = 0; b1 < n; ++b1) {
              for (std::size_t b2 = 0; b2 < n; ++b2) {
                const double s = std::abs(e[a1 * n + b1] + e[a1 * n + b2] + e[a2 * n + b1] -
                                          e[a2 * n + b2]);
                const std::array<std::size_t, 4> idx{a1, a2, b1, b2};
                if (s > best.value || (s == best.value && idx < best.idx)) best = {s, idx};
              }
            }
          }
        }
        partial[t] = best;
      });
    }
  }
  Best best;
  for (const auto& p : partial) {
    if (p.value > best.value || (p.value == best.value && p.idx < best.idx)) best = p;
  }
  const std::array<double, 4> start{pts[best.idx[0]], pts[best.idx[1]], pts[best.idx[2]],
                                    pts[best.idx[3]]};
  const auto coarse = chsh(c, start[0], start[1], start[2], start[3], model);

  // Compass search on |S|.
  auto objective = [&](const std::array<double, 4>& x) {
    return std::abs(chsh(c, x[0], x[1], x[2], x[3], model).s);
  };
  std::array<double, 4> x = start;
  double fx = objective(x);
  double step = n > 1 ? std::abs(pts[1] - pts[0]) : 0.1;
  if (step == 0.0) step = 0.1;
  for (int iter = 0; iter < 100000 && step > 1e-12; ++iter) {
    bool improved = false;
    for (std::size_t d = 0; d < 4; ++d) {
      for (double dir : {1.0, -1.0}) {
        auto y = x;
        y[d] += dir * step;
        const double fy = objective(y);
        if (fy > fx) {
          x = y;
          fx = fy;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  const auto refined = chsh(c, x[0], x[1], x[2], x[3], model);
  return {coarse, refined, n * n * n * n};
}

}  // namespace qframes
