#pragma once

#include <span>

namespace gi {

struct SeriesSummary {
  double mean = 0.0;
  double std_error = 0.0;  // batch means
  double tau_int = 0.5;    // integrated autocorrelation time, in samples
};

/// Mean, batch-means standard error and integrated autocorrelation time.
///
/// The series is cut into `batches` equal batches (the remainder at the end
/// is dropped for the error estimate only). With fewer samples than batches
/// every sample is its own batch. tau_int uses Geyer's initial positive
/// sequence: sum pairs rho(2k) + rho(2k+1) until the first non-positive pair.
SeriesSummary summarize(std::span<const double> series, int batches = 32);

double integrated_autocorrelation_time(std::span<const double> series);

/// 1 - <x^4> / (3 <x^2>^2); 0 for an identically zero series.
double binder_cumulant(std::span<const double> series);

}  // namespace gi
