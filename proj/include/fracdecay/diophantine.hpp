#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fracdecay/ifs.hpp"

namespace fracdecay {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Finitely supported probability measure on (0, inf): the step-size law
/// sum_w p_w delta_{-log r_w} of the random walk behind W_t.
class AuxiliaryMeasure {
 public:
  /// Atoms closer than 1e-12 are merged. Masses must be positive and sum to
  /// 1 within 1e-12; locations must be positive.
  explicit AuxiliaryMeasure(std::vector<Atom> atoms);

  /// Sorted by location.
  const std::vector<Atom>& atoms() const { return atoms_; }
  double sigma() const { return sigma_; }
  double max_location() const { return atoms_.back().location; }
  /// lambda((z, inf))
  double survival(double z) const;

 private:
  std::vector<Atom> atoms_;
  double sigma_ = 0.0;
};

AuxiliaryMeasure auxiliary_measure(const WeightedIFS& ifs);

/// sum mass e^{-z location}
std::complex<double> laplace_transform(const AuxiliaryMeasure& lambda, std::complex<double> z);

struct ScanPoint {
  double b = 0.0;
  double abs_one_minus_L = 0.0;
  /// |b|^l |1 - L(ib)|; +inf when it overflows.
  double scaled = 0.0;
  /// l log|b| + log|1 - L(ib)|; -inf at an exact zero.
  double log_scaled = 0.0;
};

struct DiophantineReport {
  double degree_l = 0.0;
  /// Natural log of the lower-bound constant when known (NaN otherwise).
  double log_c = 0.0;
  std::vector<ScanPoint> scan;
  ScanPoint minimum;
  bool lattice = false;
};

/// Grid infimum of |b|^l |1 - L(ib)| over b in [1, b_max]. The uniform grid
/// is refined around every b = 2 pi k / location, where near-cancellation
/// can occur. The quantity is even in b, so negative b are not scanned.
DiophantineReport weakly_diophantine_scan(const AuxiliaryMeasure& lambda, double l,
                                          double b_max, std::size_t grid);

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

struct ContinuedFraction {
  std::vector<std::int64_t> quotients;
  std::vector<Convergent> convergents;
  /// theta matched a convergent with q <= 10^6 to within 4 ulp.
  bool terminating = false;
  /// Stopped because the next denominator would exceed 2^50.
  bool precision_exhausted = false;
};

/// Partial quotients of theta in (0,1), computed exactly from its binary value.
ContinuedFraction continued_fraction_expansion(double theta, std::size_t n);

enum class LatticeVerdict { lattice, non_lattice, indeterminate };

const char* to_string(LatticeVerdict v);

/// Lattice iff every pairwise location ratio is p/q with q <= 10^6, judged by
/// |q theta - p| over continued-fraction convergents: <= 1e-11 rational,
/// > 1e-9 irrational, otherwise indeterminate.
LatticeVerdict classify_lattice(const AuxiliaryMeasure& lambda);

/// classify_lattice(lambda) == LatticeVerdict::lattice
bool lattice_test(const AuxiliaryMeasure& lambda);

/// 387072 e^3 (15.8 + 5.5 log 2) log(a1(a1-1)) log(a2(a2-1)) + 1.
double matveev_degree(std::int64_t a1, std::int64_t a2);

/// log c_{a1,a2}; c itself underflows every floating type.
double matveev_log_constant(std::int64_t a1, std::int64_t a2);

/// True iff a(a-1) is not n^m for any n >= 2, m >= 2.
bool perfect_power_free(std::uint64_t a);

/// floor(n^{1/k}) by integer correction of a floating estimate.
std::uint64_t integer_root(std::uint64_t n, unsigned k);

}  // namespace fracdecay
