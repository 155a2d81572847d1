// Copyright 2026 The cvdl Authors
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

#include "cvdl/error_model.h"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace cvdl {

double SqueezedWavefunction(double x, double r0) {
  const double s = std::exp(2.0 * r0);
  return std::pow(std::numbers::pi * s, -0.25) * std::exp(-x * x / (2.0 * s));
}

QubitPureState QubitGivenOutcome(double q, double r0, double p0) {
  // Ratio form avoids underflow of both Gaussians far in the tails.
  const double gamma = AmplitudeImbalance(q, r0);
  Eigen::VectorXcd a(2);
  const double norm = std::sqrt(1.0 + gamma * gamma);
  a[0] = 1.0 / norm;
  a[1] = std::polar(gamma / norm, -p0 * kSqrtPi);
  return QubitPureState(1, std::move(a));
}

double AmplitudeImbalance(double q, double r0) {
  return std::exp(kSqrtPi * (2.0 * q - kSqrtPi) / (2.0 * std::exp(2.0 * r0)));
}

double BalancingKeepProbability(double gamma) {
  const double g = std::min(gamma, 1.0 / gamma);
  return 2.0 * g * g / (1.0 + g * g);
}

double OutcomeDensity(double q, double r0) {
  const double a = SqueezedWavefunction(q, r0);
  const double b = SqueezedWavefunction(q - kSqrtPi, r0);
  return 0.5 * (a * a + b * b);
}

double OutcomeCdf(double q, double r0) {
  const double s = std::exp(r0);  // standard deviation times sqrt(2)
  auto phi = [s](double x) { return 0.5 * std::erfc(-x / s); };
  return 0.5 * (phi(q) + phi(q - kSqrtPi));
}

double SampleOutcome(double r0, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, std::exp(r0) / std::sqrt(2.0));
  std::bernoulli_distribution shifted(0.5);
  const double offset = shifted(rng) ? kSqrtPi : 0.0;
  return offset + gauss(rng);
}

double PDelAnalytic(double r0) {
  return std::erf(std::exp(-r0) * kSqrtPi / 2.0);
}

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;
  bool failed = false;

  double Rec(double a, double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth) {
      failed = true;
      return left + right + delta / 15.0;
    }
    return Rec(a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
           Rec(m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
  }

  double Integrate(double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Rec(a, b, fa, fm, fb, whole, tol, 0);
  }
};

}  // namespace

double PSuccQuadrature(double r0, double tol) {
  const std::function<double(double)> integrand = [r0](double q) {
    return OutcomeDensity(q, r0) *
           BalancingKeepProbability(AmplitudeImbalance(q, r0));
  };
  // The keep probability has a kink at sqrt(pi)/2; integrate each side.
  const double mid = kSqrtPi / 2.0;
  const double width = 40.0 * std::exp(r0) + kSqrtPi;
  Simpson simpson{integrand, 60};
  double total = 0.0;
  // Split each half into panels so the Gaussian bumps are resolved initially.
  constexpr int kPanels = 16;
  for (int side = 0; side < 2; ++side) {
    const double lo = side == 0 ? mid - width : mid;
    const double hi = side == 0 ? mid : mid + width;
    const double h = (hi - lo) / kPanels;
    for (int k = 0; k < kPanels; ++k) {
      total += simpson.Integrate(lo + k * h, lo + (k + 1) * h,
                                 tol / (2.0 * kPanels));
    }
  }
  if (simpson.failed) {
    throw std::runtime_error("keep-probability quadrature did not converge at r0=" +
                             std::to_string(r0));
  }
  return total;
}

MonteCarloEstimate PDelMonteCarlo(double r0, std::int64_t shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("Monte Carlo needs shots >= 1");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::int64_t deleted = 0;
  for (std::int64_t s = 0; s < shots; ++s) {
    const double q = SampleOutcome(r0, rng);
    const double keep = BalancingKeepProbability(AmplitudeImbalance(q, r0));
    if (u(rng) >= keep) ++deleted;
  }
  const double p = double(deleted) / double(shots);
  return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / double(shots)), shots};
}

double DephasingRate(double sigma2) {
  if (!(sigma2 >= 0.0)) {
    throw std::invalid_argument("displacement variance must be >= 0");
  }
  return 0.5 * (1.0 - std::exp(-std::numbers::pi * sigma2 / 2.0));
}

MonteCarloEstimate DephasingCoherenceMonteCarlo(double sigma2,
                                                std::int64_t samples, Rng& rng) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  if (!(sigma2 >= 0.0)) {
    throw std::invalid_argument("displacement variance must be >= 0");
  }
  std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2));
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t k = 0; k < samples; ++k) {
    const double c = std::cos(kSqrtPi * gauss(rng));
    sum += c;
    sum_sq += c * c;
  }
  const double mean = sum / double(samples);
  const double var = (sum_sq / double(samples) - mean * mean) *
                     double(samples) / double(samples - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / double(samples)), samples};
}

double RToDb(double r) { return 10.0 * std::log10(std::exp(2.0 * r)); }

double DbToR(double db) { return db * std::log(10.0) / 20.0; }

double SqueezingDbForPdel(double p_target) {
  const double p_hi = PDelAnalytic(kMinInvertR0);
  const double p_lo = PDelAnalytic(kMaxInvertR0);
  if (!(p_target > p_lo && p_target <= p_hi)) {
    throw std::invalid_argument(
        "target erasure probability " + std::to_string(p_target) +
        " outside the achievable range (" + std::to_string(p_lo) + ", " +
        std::to_string(p_hi) + "]");
  }
  // PDelAnalytic is strictly decreasing in r0.
  double lo = kMinInvertR0, hi = kMaxInvertR0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (PDelAnalytic(mid) > p_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return RToDb(0.5 * (lo + hi));
}

double VertexDisconnectProb(double p_del, int rails) {
  if (!(p_del >= 0.0 && p_del <= 1.0)) {
    throw std::invalid_argument("erasure probability must lie in [0, 1]");
  }
  if (rails < 1) throw std::invalid_argument("rail count must be >= 1");
  return std::pow(p_del, rails);
}

namespace {

ThresholdRow MakeRow(double db, int rails, std::int64_t mc_shots,
                     std::uint64_t seed, std::uint64_t stream) {
  ThresholdRow row;
  row.db = db;
  row.r0 = DbToR(db);
  row.p_del = PDelAnalytic(row.r0);
  row.rails = rails;
  row.p_vertex = VertexDisconnectProb(row.p_del, rails);
  if (mc_shots > 0) {
    Rng rng = StreamRng(seed, stream);
    const MonteCarloEstimate mc = PDelMonteCarlo(row.r0, mc_shots, rng);
    row.p_del_mc = mc.estimate;
    row.stderr_mc = mc.standard_error;
  }
  return row;
}

}  // namespace

std::vector<ThresholdRow> ThresholdTable(double db_min, double db_max,
                                         double db_step, int rails,
                                         std::int64_t mc_shots,
                                         std::uint64_t seed) {
  if (!(db_step > 0.0) || !(db_max >= db_min) || !std::isfinite(db_max) ||
      !std::isfinite(db_min)) {
    throw std::invalid_argument("dB range must be finite and nonempty with step > 0");
  }
  std::vector<ThresholdRow> rows;
  const auto count = static_cast<std::int64_t>(
      std::floor((db_max - db_min) / db_step + 1e-9)) + 1;
  for (std::int64_t k = 0; k < count; ++k) {
    rows.push_back(MakeRow(db_min + double(k) * db_step, rails, mc_shots, seed,
                           static_cast<std::uint64_t>(k)));
  }
  return rows;
}

std::vector<ThresholdRow> InverseThresholdRows(const std::vector<double>& targets,
                                               int rails, std::int64_t mc_shots,
                                               std::uint64_t seed) {
  std::vector<ThresholdRow> rows;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    // Streams above 2^32 keep inverse rows independent of table rows.
    rows.push_back(MakeRow(SqueezingDbForPdel(targets[k]), rails, mc_shots, seed,
                           (std::uint64_t{1} << 32) + k));
  }
  return rows;
}

}  // namespace cvdl
