#include "gi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gi/errors.hpp"

namespace gi {

namespace {

double mean_of(std::span<const double> xs) {
  long double s = 0.0L;
  for (double x : xs) s += x;
  return static_cast<double>(s / static_cast<long double>(xs.size()));
}

}  // namespace

double integrated_autocorrelation_time(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 2) return 0.5;
  const double m = mean_of(series);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = series[i] - m;

  const auto autocov = [&](std::size_t lag) {
    long double s = 0.0L;
    for (std::size_t i = 0; i + lag < n; ++i) s += centered[i] * centered[i + lag];
    return static_cast<double>(s / static_cast<long double>(n));
  };
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) return 0.5;

  double tau = -0.5;
  for (std::size_t k = 0; 2 * k + 1 < n / 2; ++k) {
    const double pair = (autocov(2 * k) + autocov(2 * k + 1)) / c0;
    if (pair <= 0.0) break;
    tau += pair;
  }
  return std::max(tau, 0.5);
}

SeriesSummary summarize(std::span<const double> series, int batches) {
  if (series.empty()) throw DomainError("cannot summarize an empty series");
  if (batches < 2) throw DomainError("batch means needs at least 2 batches");
  SeriesSummary s;
  s.mean = mean_of(series);

  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(batches), series.size());
  const std::size_t size = series.size() / count;
  if (count >= 2) {
    std::vector<double> means(count);
    for (std::size_t b = 0; b < count; ++b) means[b] = mean_of(series.subspan(b * size, size));
    const double grand = mean_of(means);
    long double ss = 0.0L;
    for (double x : means) ss += (x - grand) * (x - grand);
    const double var = static_cast<double>(ss / static_cast<long double>(count - 1));
    s.std_error = std::sqrt(var / static_cast<double>(count));
  }
  s.tau_int = integrated_autocorrelation_time(series);
  return s;
}

double binder_cumulant(std::span<const double> series) {
  if (series.empty()) throw DomainError("cannot compute a Binder cumulant of an empty series");
  long double m2 = 0.0L, m4 = 0.0L;
  for (double x : series) {
    const long double x2 = static_cast<long double>(x) * x;
    m2 += x2;
    m4 += x2 * x2;
  }
  m2 /= series.size();
  m4 /= series.size();
  if (m2 == 0.0L) return 0.0;
  return static_cast<double>(1.0L - m4 / (3.0L * m2 * m2));
}

}  // namespace gi
