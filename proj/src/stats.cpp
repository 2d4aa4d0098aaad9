// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#include "qsprep/stats.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "qsprep/error.hpp"

namespace qsprep::stats {

double MeanStd::sem() const { return count > 0 ? std / std::sqrt(static_cast<double>(count)) : 0.0; }

MeanStd mean_std(std::span<const double> xs) {
  MeanStd m;
  m.count = xs.size();
  if (xs.empty()) return m;
  // Welford, in index order.
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double x : xs) {
    ++k;
    const double d = x - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (x - mean);
  }
  m.mean = mean;
  m.std = xs.size() > 1 ? std::sqrt(m2 / static_cast<double>(xs.size() - 1)) : 0.0;
  return m;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    f.sse += r * r;
  }
  f.r_squared = syy > 0.0 ? 1.0 - f.sse / syy : 1.0;
  f.slope_stderr = x.size() > 2 ? std::sqrt(f.sse / (n - 2.0) / sxx) : 0.0;
  return f;
}

ExpFit fit_exponential(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit needs at least two points");
  // For fixed beta the optimal c is closed form; search beta by Brent.
  auto c_of = [&](double beta) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = std::exp(beta * x[i]);
      num += y[i] * e;
      den += e * e;
    }
    return num / den;
  };
  auto sse_of = [&](double beta) {
    const double c = c_of(beta);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - c * std::exp(beta * x[i]);
      s += r * r;
    }
    return s;
  };
  double xmax = 0.0;
  for (double v : x) xmax = std::max(xmax, std::abs(v));
  const double bound = 50.0 / std::max(xmax, 1.0);
  // Coarse grid first so Brent starts in the right basin.
  double best = 0.0, best_sse = std::numeric_limits<double>::infinity();
  const int grid = 400;
  for (int g = 0; g <= grid; ++g) {
    const double beta = -bound + 2.0 * bound * g / grid;
    const double s = sse_of(beta);
    if (s < best_sse) {
      best_sse = s;
      best = beta;
    }
  }
  const double step = 2.0 * bound / grid;
  auto [beta, sse] = boost::math::tools::brent_find_minima(sse_of, best - step, best + step, 50);
  ExpFit f{c_of(beta), beta, sse};
  return f;
}

double chi_square_p_value(std::span<const double> observed, std::span<const double> expected,
                          double min_expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw ValidationError("chi-square needs matching nonempty bins");
  std::vector<double> o, e;
  double acc_o = 0.0, acc_e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_o += observed[i];
    acc_e += expected[i];
    if (acc_e >= min_expected) {
      o.push_back(acc_o);
      e.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (e.empty()) {
      o.push_back(acc_o);
      e.push_back(acc_e);
    } else {
      o.back() += acc_o;
      e.back() += acc_e;
    }
  }
  if (e.size() < 2) return 1.0;
  double chi2 = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) chi2 += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
  boost::math::chi_squared dist(static_cast<double>(e.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, chi2));
}

double binomial_pmf(std::int64_t n, std::int64_t k, double p) {
  boost::math::binomial dist(static_cast<double>(n), p);
  return boost::math::pdf(dist, static_cast<double>(k));
}

double proportion_sigma(double p, std::size_t n) {
  return n > 0 ? std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n)) : 0.0;
}

}  // namespace qsprep::stats
