#pragma once

// Constant-term period series of toric hypersurfaces, checks against tautological
// systems, and torus quadrature.

#include <complex>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "tautgen/taut_builder.hpp"
#include "tautgen/toric_geom.hpp"
#include "tautgen/weyl_ops.hpp"

namespace tautgen {

using Complex = std::complex<double>;

struct PeriodSeries {
  FormalSeries series;  // weights: 0 on a_{i0}, 1 elsewhere; truncation = order
  std::size_t i0 = 0;
  long order = 0;
};

/// sum_k (-1)^k a_{i0}^{-k-1} sum multinomial(k) prod a_i^{k_i} over sum k_i mu_i = 0.
PeriodSeries period_series(const AMatrix& a, long order);

/// Throws ConsistencyError if a term breaks A e = -(1,0,...,0) or sign normalization.
void check_period_invariants(const AMatrix& a, const PeriodSeries& p);

struct VerificationReport {
  std::vector<AnnihilationReport> reports;
  bool passed = true;
  std::optional<long> certified_order;  // minimum over operators
};

VerificationReport verify_system(const TautSystem& system, const PeriodSeries& p);

/// q = sum_{i != i0} |a_i| / |a_{i0}|; InputError "outside expansion polydisc" unless q < 1.
double dominance_ratio(const AMatrix& a, const std::vector<Complex>& coeffs);

/// Trapezoid rule for the torus average of 1 / sum_i a_i y^{mu_i}.
Complex numeric_period(const AMatrix& a, const std::vector<Complex>& coeffs, int grid_size);

Complex evaluate_series(const PeriodSeries& p, const std::vector<Complex>& coeffs);

/// |Pi - Pi_K| <= q^{K+1} / ((1 - q) |a_{i0}|).
double truncation_tail_bound(const AMatrix& a, const std::vector<Complex>& coeffs, long order);

/// Random complex coefficients with dominance ratio exactly `ratio`.
std::vector<Complex> sample_dominant(const AMatrix& a, double ratio, std::mt19937_64& rng);

/// Smallest K with truncation_tail_bound <= tolerance.
long order_for_tolerance(const AMatrix& a, const std::vector<Complex>& coeffs, double tolerance);

namespace reference {

PeriodSeries period_series(const AMatrix& a, long order);
Complex numeric_period(const AMatrix& a, const std::vector<Complex>& coeffs, int grid_size);

}  // namespace reference

}  // namespace tautgen
