#include "fracdecay/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "fracdecay/errors.hpp"
#include "fracdecay/numeric.hpp"

namespace fracdecay {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kAtomMergeTolerance = 1e-12;
constexpr double kMassTolerance = 1e-12;
constexpr std::int64_t kRationalDenominatorCap = 1'000'000;
constexpr double kLatticeTolerance = 1e-11;
constexpr double kIrrationalFloor = 1e-9;
const cpp_int kDenominatorLimit = cpp_int(1) << 50;

// 387072 e^3 (15.8 + 5.5 log 2)
double matveev_prefactor() {
  return 387072.0 * std::exp(3.0) * (15.8 + 5.5 * std::numbers::ln2);
}

void check_digit_pair(std::int64_t a1, std::int64_t a2) {
  if (a1 < 2 || a2 < 2) throw InputError("digits must be >= 2");
  if (a1 == a2) {
    throw InputError("digits must differ: log(a(a-1)) values of equal digits are dependent");
  }
}

double log_digit_product(std::int64_t a) {
  const auto x = static_cast<double>(a);
  return std::log(x) + std::log(x - 1.0);
}

ScanPoint scan_point(const AuxiliaryMeasure& lambda, double l, double b) {
  ScanPoint p;
  p.b = b;
  p.abs_one_minus_L = std::abs(1.0 - laplace_transform(lambda, {0.0, b}));
  p.log_scaled = p.abs_one_minus_L > 0.0
                     ? l * std::log(std::abs(b)) + std::log(p.abs_one_minus_L)
                     : -std::numeric_limits<double>::infinity();
  p.scaled = p.abs_one_minus_L > 0.0 ? std::exp(p.log_scaled) : 0.0;
  return p;
}

// Golden-section search for the minimum of |1 - L(ib)| on [lo, hi].
double local_minimizer(const AuxiliaryMeasure& lambda, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double b) { return std::abs(1.0 - laplace_transform(lambda, {0.0, b})); };
  double a = lo, d = hi;
  double b = d - g * (d - a), c = a + g * (d - a);
  double fb = f(b), fc = f(c);
  for (int i = 0; i < 60; ++i) {
    if (fb < fc) {
      d = c;
      c = b;
      fc = fb;
      b = d - g * (d - a);
      fb = f(b);
    } else {
      a = b;
      b = c;
      fb = fc;
      c = a + g * (d - a);
      fc = f(c);
    }
  }
  return fb < fc ? b : c;
}

}  // namespace

AuxiliaryMeasure::AuxiliaryMeasure(std::vector<Atom> atoms) {
  if (atoms.empty()) throw InputError("auxiliary measure needs at least one atom");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  CompensatedSum<double> total;
  for (const auto& a : atoms) {
    if (!(a.location > 0.0) || !std::isfinite(a.location)) {
      throw InputError("atom locations must be positive");
    }
    if (!(a.mass > 0.0)) throw InputError("atom masses must be positive");
    total.add(a.mass);
    if (!atoms_.empty() && a.location - atoms_.back().location <= kAtomMergeTolerance) {
      atoms_.back().mass += a.mass;
    } else {
      atoms_.push_back(a);
    }
  }
  if (std::abs(total.value() - 1.0) > kMassTolerance) {
    throw InputError("atom masses must sum to 1 within 1e-12");
  }
  CompensatedSum<double> mean;
  for (const auto& a : atoms_) mean.add(a.mass * a.location);
  sigma_ = mean.value();
}

double AuxiliaryMeasure::survival(double z) const {
  CompensatedSum<double> s;
  for (const auto& a : atoms_) {
    if (a.location > z) s.add(a.mass);
  }
  return s.value();
}

AuxiliaryMeasure auxiliary_measure(const WeightedIFS& ifs) {
  std::vector<Atom> atoms;
  for (Symbol w = 0; w < ifs.size(); ++w) {
    atoms.push_back({-std::log(ifs.ratio(w)), ifs.weight(w)});
  }
  return AuxiliaryMeasure(std::move(atoms));
}

std::complex<double> laplace_transform(const AuxiliaryMeasure& lambda, std::complex<double> z) {
  CompensatedSum<std::complex<double>> sum;
  for (const auto& a : lambda.atoms()) sum.add(a.mass * std::exp(-z * a.location));
  return sum.value();
}

DiophantineReport weakly_diophantine_scan(const AuxiliaryMeasure& lambda, double l,
                                          double b_max, std::size_t grid) {
  if (!(l > 0.0)) throw InputError("exponent l must be positive");
  if (!(b_max > 1.0)) throw InputError("b_max must exceed 1");
  if (grid < 2) throw InputError("scan grid needs at least 2 points");

  DiophantineReport report;
  report.degree_l = l;
  report.log_c = std::numeric_limits<double>::quiet_NaN();
  report.lattice = lattice_test(lambda);

  for (std::size_t k = 0; k < grid; ++k) {
    const double b = 1.0 + (b_max - 1.0) * static_cast<double>(k) / static_cast<double>(grid - 1);
    report.scan.push_back(scan_point(lambda, l, b));
  }
  const double window =
      0.5 * std::min(std::numbers::pi / lambda.max_location(), (b_max - 1.0) / static_cast<double>(grid));
  for (const auto& atom : lambda.atoms()) {
    const double spacing = kTwoPi / atom.location;
    for (double k = std::ceil(1.0 / spacing); k * spacing <= b_max; k += 1.0) {
      const double b0 = k * spacing;
      report.scan.push_back(scan_point(lambda, l, b0));
      const double lo = std::max(1.0, b0 - window);
      const double hi = std::min(b_max, b0 + window);
      if (hi > lo) report.scan.push_back(scan_point(lambda, l, local_minimizer(lambda, lo, hi)));
    }
  }
  std::sort(report.scan.begin(), report.scan.end(),
            [](const ScanPoint& a, const ScanPoint& b) { return a.b < b.b; });
  report.minimum = *std::min_element(
      report.scan.begin(), report.scan.end(),
      [](const ScanPoint& a, const ScanPoint& b) { return a.log_scaled < b.log_scaled; });
  return report;
}

ContinuedFraction continued_fraction_expansion(double theta, std::size_t n) {
  if (!(theta > 0.0 && theta < 1.0)) throw InputError("theta must lie in (0,1)");
  if (n < 1) throw InputError("need at least one partial quotient");

  int exponent = 0;
  const double mantissa = std::frexp(theta, &exponent);
  const cpp_int theta_num = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  const cpp_int theta_den = cpp_int(1) << (53 - exponent);
  const double tolerance = 4.0 * (std::nextafter(theta, 1.0) - theta);

  ContinuedFraction cf;
  cpp_int num = theta_num, den = theta_den;
  cpp_int p_prev = 1, q_prev = 0, p = 0, q = 1;
  while (cf.quotients.size() < n) {
    if (num == 0) {
      cf.terminating = true;
      break;
    }
    const cpp_int a = den / num;
    const cpp_int p_next = a * p + p_prev;
    const cpp_int q_next = a * q + q_prev;
    if (q_next > kDenominatorLimit) {
      cf.precision_exhausted = true;
      break;
    }
    const cpp_int rem = den - a * num;
    den = num;
    num = rem;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    cf.quotients.push_back(static_cast<std::int64_t>(a));
    cf.convergents.push_back({static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)});
    if (num == 0) {
      cf.terminating = true;
      break;
    }
    if (q <= kRationalDenominatorCap) {
      const cpp_int diff = boost::multiprecision::abs(theta_num * q - p * theta_den);
      const double err = static_cast<double>(boost::multiprecision::cpp_rational(diff, theta_den * q));
      if (err <= tolerance) {
        cf.terminating = true;
        break;
      }
    }
  }
  return cf;
}

const char* to_string(LatticeVerdict v) {
  switch (v) {
    case LatticeVerdict::lattice:
      return "lattice";
    case LatticeVerdict::non_lattice:
      return "non_lattice";
    case LatticeVerdict::indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

LatticeVerdict classify_lattice(const AuxiliaryMeasure& lambda) {
  const auto& atoms = lambda.atoms();
  bool indeterminate = false;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double theta = atoms[i].location / atoms[j].location;
      if (!(theta < 1.0)) continue;
      const auto cf = continued_fraction_expansion(theta, 64);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : cf.convergents) {
        if (c.q > kRationalDenominatorCap) break;
        const long double d = std::abs(static_cast<long double>(c.q) * theta -
                                       static_cast<long double>(c.p));
        best = std::min(best, static_cast<double>(d));
      }
      if (best <= kLatticeTolerance) continue;
      if (best > kIrrationalFloor) return LatticeVerdict::non_lattice;
      indeterminate = true;
    }
  }
  return indeterminate ? LatticeVerdict::indeterminate : LatticeVerdict::lattice;
}

bool lattice_test(const AuxiliaryMeasure& lambda) {
  return classify_lattice(lambda) == LatticeVerdict::lattice;
}

double matveev_degree(std::int64_t a1, std::int64_t a2) {
  check_digit_pair(a1, a2);
  return matveev_prefactor() * log_digit_product(a1) * log_digit_product(a2) + 1.0;
}

double matveev_log_constant(std::int64_t a1, std::int64_t a2) {
  check_digit_pair(a1, a2);
  const double l1 = log_digit_product(a1);
  const double l2 = log_digit_product(a2);
  const double exponent = matveev_prefactor() * l1 * l2;
  return -std::log(l2) - exponent * std::log(3.0 * std::exp(1.0) * l1 / (2.0 * l2));
}

std::uint64_t integer_root(std::uint64_t n, unsigned k) {
  if (k == 0) throw InputError("root order must be positive");
  if (k == 1 || n < 2) return n;
  auto pow_le = [n, k](std::uint64_t r) {
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (r != 0 && acc > n / r) return false;
      acc *= r;
    }
    return true;
  };
  auto r = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

bool perfect_power_free(std::uint64_t a) {
  if (a < 2) throw InputError("perfect_power_free needs a >= 2");
  if (a > (std::uint64_t{1} << 32)) throw InputError("a(a-1) would overflow 64 bits");
  const std::uint64_t n = a * (a - 1);
  const auto max_k = static_cast<unsigned>(std::floor(std::log2(static_cast<double>(n))));
  for (unsigned k = 2; k <= max_k; ++k) {
    const std::uint64_t r = integer_root(n, k);
    if (r < 2) break;
    std::uint64_t v = 1;
    for (unsigned i = 0; i < k; ++i) v *= r;
    if (v == n) return false;
  }
  return true;
}

}  // namespace fracdecay
