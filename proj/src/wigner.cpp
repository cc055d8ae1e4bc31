#include "thermamp/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "thermamp/error.hpp"
#include "thermamp/simd/kernels.hpp"
#include "thermamp/special.hpp"

namespace thermamp {

namespace {

constexpr double kOracleMaxTail = 1e-10;
constexpr double kOracleTruncation = 1e-12;
constexpr double kSectionStep = 1e-2;
constexpr double kSectionTol = 1e-10;

}  // namespace

double wigner_thermal(double nbar_amp, PhasePoint p) {
  const double width = 2.0 * nbar_amp + 1.0;
  return 2.0 / (std::numbers::pi * width) * std::exp(-2.0 * p.beta_abs2() / width);
}

// With c1 = 2(N+1)/(2N+1) (added) or c2 = 2N/(2N+1) (subtracted), the j-th
// term of the bilinear sum divided by N_m is
//   C(m,j)^2 j!/m! (-+1)^j (2N+1)^-m v^(m-j),   v = 4(N+1)|beta|^2/(2N+1)
// (with N in place of N+1 for the subtracted case). The (2N+1)^-m factor is
// folded into the log prefactor, leaving O(1)-scaled polynomial coefficients.
WignerEvaluator::WignerEvaluator(const StateSpec& spec)
    : spec_(spec), nbar_amp_(amplified_nbar(spec)) {
  if (spec.variant == Variant::Subtracted && spec.m > 0 && nbar_amp_ == 0.0) {
    throw Error(ErrorKind::SubtractionFromVacuum, "photon subtraction annihilates the vacuum");
  }
  const double width = 2.0 * nbar_amp_ + 1.0;
  const double dm = static_cast<double>(spec.m);
  const bool added = spec.variant == Variant::Added;
  log_poly_scale_ = -dm * std::log(width);
  log_prefactor_ = std::log(2.0 / (std::numbers::pi * width)) + log_poly_scale_;
  gauss_rate_ = 2.0 / width;
  poly_arg_scale_ = 4.0 * (added ? nbar_amp_ + 1.0 : nbar_amp_) / width;

  const auto m = static_cast<std::size_t>(spec.m);
  coeffs_.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    // power v^i comes from j = m - i; C(m,j)^2 j!/m! = C(m,i)/i!
    const double mag = std::exp(log_binomial(m, i) - log_factorial(i));
    const bool negative = added && ((m - i) % 2 == 1);
    coeffs_[i] = negative ? -mag : mag;
  }
}

double WignerEvaluator::value(PhasePoint p) const {
  const double r = p.beta_abs2();
  const double v = poly_arg_scale_ * r;
  double poly = 0.0;
  simd::scalar::horner(coeffs_, std::span<const double>(&v, 1), std::span<double>(&poly, 1));
  return std::exp(log_prefactor_ - gauss_rate_ * r) * poly;
}

double WignerEvaluator::nongaussian(PhasePoint p) const {
  const double v = poly_arg_scale_ * p.beta_abs2();
  double poly = 0.0;
  simd::scalar::horner(coeffs_, std::span<const double>(&v, 1), std::span<double>(&poly, 1));
  return std::exp(log_poly_scale_) * poly;
}

void WignerEvaluator::evaluate(std::span<const PhasePoint> points, std::span<double> out) const {
  if (out.size() < points.size()) throw std::invalid_argument("output span shorter than input");
  std::vector<double> v(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) v[i] = poly_arg_scale_ * points[i].beta_abs2();
  simd::horner(coeffs_, v, out);
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] *= std::exp(log_prefactor_ - gauss_rate_ * points[i].beta_abs2());
  }
}

double wigner_value(const StateSpec& s, PhasePoint p) { return WignerEvaluator(s).value(p); }

double wigner_value_bilinear(const StateSpec& s, PhasePoint p) {
  const double nbar_amp = amplified_nbar(s);
  const double width = 2.0 * nbar_amp + 1.0;
  const NormalizationConstants norm = normalization_constants(s);
  const bool added = s.variant == Variant::Added;
  const double coupling = 2.0 * (added ? nbar_amp + 1.0 : nbar_amp) / width;
  const std::complex<double> beta = p.beta();
  const std::complex<double> a = coupling * std::conj(beta);
  const std::complex<double> b = coupling * beta;
  const std::complex<double> c = (added ? -0.5 : 0.5) * coupling;
  const std::complex<double> d = bilinear_derivative(a, b, c, s.m);
  // Scale of the largest possible term for the residue check.
  const double scale = bilinear_derivative(std::abs(a), std::abs(b), std::abs(c), s.m);
  if (std::fabs(d.imag()) > 1e-14 * std::max(scale, 1e-300)) {
    throw std::logic_error("bilinear derivative left a non-negligible imaginary part");
  }
  return wigner_thermal(nbar_amp, p) * d.real() / norm.n_m;
}

double nongaussian_term(const StateSpec& s, PhasePoint p) {
  if (s.m < 1) throw Error(ErrorKind::DomainError, "the non-Gaussian factor needs m >= 1");
  return WignerEvaluator(s).nongaussian(p);
}

namespace {

// rho_kk (-1)^k up to the first index past which the remaining mass times
// the kernel bound 2/pi is below the truncation threshold.
std::vector<double> oracle_coefficients(const DiagonalFockState& state) {
  if (state.tail_mass > kOracleMaxTail) {
    throw Error(ErrorKind::TailTooLarge, "state tail mass exceeds 1e-10");
  }
  const std::size_t n = state.weights.size();
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] + state.weights[k];
  std::size_t keep = n;
  for (std::size_t k = 0; k < n; ++k) {
    if ((suffix[k + 1] + state.tail_mass) * (2.0 / std::numbers::pi) < kOracleTruncation) {
      keep = k + 1;
      break;
    }
  }
  std::vector<double> coeffs(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    coeffs[k] = (k % 2 == 0) ? state.weights[k] : -state.weights[k];
  }
  return coeffs;
}

}  // namespace

void wigner_oracle(const DiagonalFockState& state, std::span<const PhasePoint> points,
                   std::span<double> out) {
  if (out.size() < points.size()) throw std::invalid_argument("output span shorter than input");
  const std::vector<double> coeffs = oracle_coefficients(state);
  std::vector<double> arg(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) arg[i] = 4.0 * points[i].beta_abs2();
  simd::laguerre_series(coeffs, arg, out);
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] *= (2.0 / std::numbers::pi) * std::exp(-0.5 * arg[i]);
  }
}

double wigner_oracle(const DiagonalFockState& state, PhasePoint p) {
  const std::vector<double> coeffs = oracle_coefficients(state);
  const double arg = 4.0 * p.beta_abs2();
  double sum = 0.0;
  simd::scalar::laguerre_series(coeffs, std::span<const double>(&arg, 1), std::span<double>(&sum, 1));
  return (2.0 / std::numbers::pi) * std::exp(-0.5 * arg) * sum;
}

double negativity_radius_m1(double nbar_amp) {
  if (!(nbar_amp >= 0.0) || !std::isfinite(nbar_amp)) {
    throw Error(ErrorKind::DomainError, "nbar_amp must be finite and >= 0");
  }
  return 0.5 * std::sqrt((2.0 * nbar_amp + 1.0) / (nbar_amp + 1.0));
}

double section_extent(double nbar_amp) { return 2.0 * std::sqrt(2.0 * (2.0 * nbar_amp + 1.0)); }

namespace {

struct SectionSamples {
  std::vector<double> x;
  std::vector<double> w;
};

SectionSamples sample_section(const WignerEvaluator& eval) {
  const double x_hi = section_extent(eval.nbar_amp());
  const auto n = static_cast<std::size_t>(std::ceil(x_hi / kSectionStep)) + 1;
  SectionSamples s;
  s.x.resize(n);
  s.w.resize(n);
  std::vector<PhasePoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.x[i] = std::min(x_hi, static_cast<double>(i) * kSectionStep);
    pts[i] = PhasePoint{s.x[i], 0.0};
  }
  eval.evaluate(pts, s.w);
  return s;
}

}  // namespace

SectionMinimum min_section(const StateSpec& s) {
  const WignerEvaluator eval(s);
  const SectionSamples samples = sample_section(eval);
  const auto it = std::min_element(samples.w.begin(), samples.w.end());
  const auto i = static_cast<std::size_t>(it - samples.w.begin());

  double lo = samples.x[i > 0 ? i - 1 : 0];
  double hi = samples.x[std::min(i + 1, samples.x.size() - 1)];
  const auto f = [&](double x) { return eval.value(PhasePoint{x, 0.0}); };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > kSectionTol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }

  // The minimum may sit on a bracket end (e.g. at the origin).
  SectionMinimum best{samples.x[i], samples.w[i]};
  for (double x : {lo, hi, 0.5 * (lo + hi)}) {
    const double w = f(x);
    if (w < best.w_min) best = SectionMinimum{x, w};
  }
  return best;
}

std::vector<double> section_roots(const StateSpec& s) {
  const WignerEvaluator eval(s);
  const SectionSamples samples = sample_section(eval);
  const auto f = [&](double x) { return eval.value(PhasePoint{x, 0.0}); };
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < samples.x.size(); ++i) {
    const double wa = samples.w[i];
    const double wb = samples.w[i + 1];
    if (wa == 0.0) {
      roots.push_back(samples.x[i]);
      continue;
    }
    if ((wa < 0.0) == (wb < 0.0) || wb == 0.0) continue;
    double lo = samples.x[i];
    double hi = samples.x[i + 1];
    bool lo_negative = wa < 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double wm = f(mid);
      if (wm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((wm < 0.0) == lo_negative) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

double GridAxis::at(std::size_t i) const {
  if (i + 1 == count) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

double GridAxis::step() const { return (hi - lo) / static_cast<double>(count - 1); }

double WignerGrid::integral() const {
  CompensatedSum acc;
  for (std::size_t iy = 0; iy < y.count; ++iy) {
    const double wy = (iy == 0 || iy + 1 == y.count) ? 0.5 : 1.0;
    for (std::size_t ix = 0; ix < x.count; ++ix) {
      const double wx = (ix == 0 || ix + 1 == x.count) ? 0.5 : 1.0;
      acc.add(wx * wy * at(ix, iy));
    }
  }
  return acc.value() * x.step() * y.step() * 0.5;
}

double WignerGrid::min_value() const { return *std::min_element(values.begin(), values.end()); }

WignerGrid wigner_grid(const StateSpec& s, GridAxis x, GridAxis y, unsigned threads) {
  if (x.count < 2 || y.count < 2) {
    throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points per axis");
  }
  if (!(x.hi > x.lo) || !(y.hi > y.lo)) {
    throw Error(ErrorKind::InvalidArgument, "grid bounds must satisfy lo < hi");
  }
  const WignerEvaluator eval(s);
  WignerGrid grid{x, y, std::vector<double>(x.count * y.count)};

  const auto fill_rows = [&](std::size_t row_begin, std::size_t row_end) {
    std::vector<PhasePoint> pts(x.count);
    for (std::size_t iy = row_begin; iy < row_end; ++iy) {
      const double yv = y.at(iy);
      for (std::size_t ix = 0; ix < x.count; ++ix) pts[ix] = PhasePoint{x.at(ix), yv};
      eval.evaluate(pts, std::span<double>(grid.values).subspan(iy * x.count, x.count));
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, y.count));
  if (workers <= 1) {
    fill_rows(0, y.count);
    return grid;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (y.count + workers - 1) / workers;
    for (std::size_t begin = 0; begin < y.count; begin += chunk) {
      pool.emplace_back(fill_rows, begin, std::min(begin + chunk, y.count));
    }
  }
  return grid;
}

}  // namespace thermamp
