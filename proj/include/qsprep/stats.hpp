// SPDX-FileCopyrightText: 2026 qsprep contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qsprep::stats {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  std::size_t count = 0;
  double sem() const;
};

MeanStd mean_std(std::span<const double> xs);

// Ordinary least squares y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
  double sse = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// y = c * exp(beta * x), least squares in linear space (not in log space).
struct ExpFit {
  double c = 0.0;
  double beta = 0.0;
  double sse = 0.0;
};

ExpFit fit_exponential(std::span<const double> x, std::span<const double> y);

// Pearson chi-square p-value of observed counts against expected counts.
// Bins with expected < min_expected are pooled into their neighbour.
double chi_square_p_value(std::span<const double> observed, std::span<const double> expected,
                          double min_expected = 5.0);

double binomial_pmf(std::int64_t n, std::int64_t k, double p);

// Binomial standard error sqrt(p(1-p)/n).
double proportion_sigma(double p, std::size_t n);

}  // namespace qsprep::stats
