#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "circlt/error.hpp"

namespace circlt {

enum class Family { gaussian, rademacher, uniform_symmetric, custom_smooth };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::rademacher: return "rademacher";
    case Family::uniform_symmetric: return "uniform_symmetric";
    case Family::custom_smooth: return "custom_smooth";
  }
  return "unknown";
}

inline Family family_from_string(std::string_view name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "rademacher") return Family::rademacher;
  if (name == "uniform_symmetric") return Family::uniform_symmetric;
  if (name == "custom_smooth") return Family::custom_smooth;
  throw Refusal("unknown ensemble family '" + std::string(name) +
                "' (expected gaussian, rademacher, uniform_symmetric or custom_smooth)");
}

namespace detail {

inline constexpr double kSqrt3 = std::numbers::sqrt3;
inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684758586311649;

inline double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// 2*sqrt(3)*(Phi(z) - 1/2): maps a standard normal onto U[-sqrt3, sqrt3].
inline double gaussian_to_uniform(double z) { return 2.0 * kSqrt3 * (normal_cdf(z) - 0.5); }

// E[Z * gaussian_to_uniform(Z)] = 2 sqrt3 E[phi(Z)] = sqrt(3/pi).
inline double blend_scale(double w) {
  const double cross = std::sqrt(3.0 / std::numbers::pi);
  return std::sqrt(w * w + (1 - w) * (1 - w) + 2 * w * (1 - w) * cross);
}

}  // namespace detail

/// Standardized input law (mean 0, variance 1) with its subgaussian parameter and,
/// for laws of the form u(Z), the bounds c1 >= |u'| and c2 >= |u''|.
///
/// custom_smooth is the standardized blend u(z) = (w z + (1-w) v(z)) / s(w) of a
/// Gaussian and the symmetric uniform v(z) = 2 sqrt3 (Phi(z) - 1/2) driven by
/// the same normal draw.
struct EnsembleSpec {
  Family family = Family::gaussian;
  double subgaussian_sigma = 1.0;
  std::optional<double> c1;
  std::optional<double> c2;
  bool symmetric = true;
  double blend = 0.5;  // custom_smooth only

  bool is_smooth() const { return c1.has_value() && c2.has_value(); }

  static EnsembleSpec make(Family family, double blend = 0.5) {
    EnsembleSpec s;
    s.family = family;
    switch (family) {
      case Family::gaussian:
        s.c1 = 1.0;
        s.c2 = 0.0;
        break;
      case Family::rademacher:
        break;
      case Family::uniform_symmetric:
        // Strictly subgaussian: E e^{tX} = sinh(sqrt3 t)/(sqrt3 t) <= e^{t^2/2}.
        s.c1 = 2.0 * detail::kSqrt3 * detail::kInvSqrt2Pi;
        s.c2 = 2.0 * detail::kSqrt3 * detail::kInvSqrt2Pi * std::exp(-0.5);
        break;
      case Family::custom_smooth: {
        if (!(blend >= 0.0 && blend <= 1.0)) throw Refusal("custom_smooth blend must lie in [0, 1]");
        s.blend = blend;
        const double scale = detail::blend_scale(blend);
        s.c1 = (blend + (1 - blend) * 2.0 * detail::kSqrt3 * detail::kInvSqrt2Pi) / scale;
        s.c2 = (1 - blend) * 2.0 * detail::kSqrt3 * detail::kInvSqrt2Pi * std::exp(-0.5) / scale;
        // u is c1-Lipschitz, so u(Z) is c1-subgaussian by Gaussian concentration.
        s.subgaussian_sigma = *s.c1;
        break;
      }
    }
    return s;
  }
};

/// Identifies an independent substream: draws depend only on (master_seed, replica_index).
struct RandomStream {
  std::uint64_t master_seed = 0;
  std::uint64_t replica_index = 0;

  std::mt19937_64 engine() const {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(replica_index),
                      static_cast<std::uint32_t>(replica_index >> 32), 0x63697263u};
    return std::mt19937_64(seq);
  }
};

/// u(z) for a smooth family. Refuses rademacher, which has no such representation.
inline double smooth_transform_value(const EnsembleSpec& spec, double z) {
  switch (spec.family) {
    case Family::gaussian: return z;
    case Family::uniform_symmetric: return detail::gaussian_to_uniform(z);
    case Family::custom_smooth:
      return (spec.blend * z + (1 - spec.blend) * detail::gaussian_to_uniform(z)) /
             detail::blend_scale(spec.blend);
    case Family::rademacher: break;
  }
  throw Refusal("rademacher inputs are not in any smooth class L(c1,c2): no transform u(Z) exists");
}

inline std::vector<double> sample_sequence(const EnsembleSpec& spec, std::size_t n, const RandomStream& stream) {
  if (n == 0) throw Refusal("sample_sequence requires n >= 1");
  auto eng = stream.engine();
  std::vector<double> out(n);
  switch (spec.family) {
    case Family::gaussian: {
      std::normal_distribution<double> normal;
      for (auto& v : out) v = normal(eng);
      break;
    }
    case Family::rademacher: {
      std::bernoulli_distribution coin(0.5);
      for (auto& v : out) v = coin(eng) ? 1.0 : -1.0;
      break;
    }
    case Family::uniform_symmetric: {
      std::uniform_real_distribution<double> uniform(-detail::kSqrt3, detail::kSqrt3);
      for (auto& v : out) v = uniform(eng);
      break;
    }
    case Family::custom_smooth: {
      std::normal_distribution<double> normal;
      for (auto& v : out) v = smooth_transform_value(spec, normal(eng));
      break;
    }
  }
  return out;
}

struct MomentReport {
  std::size_t count = 0;
  double mean = 0, mean_se = 0;
  double variance = 0, variance_se = 0;
  // abs_moments[k-1] = empirical E|X|^k for k = 1..k_max
  std::vector<double> abs_moments;
  std::vector<double> abs_moment_se;
};

inline MomentReport verify_standardization(const EnsembleSpec& spec, std::size_t m, const RandomStream& stream,
                                           int k_max) {
  if (m < 100) throw Refusal("verify_standardization requires at least 100 samples");
  if (k_max < 3) throw Refusal("verify_standardization requires k_max >= 3");
  const auto xs = sample_sequence(spec, m, stream);
  const double count = static_cast<double>(m);

  MomentReport r;
  r.count = m;
  double sum = 0;
  for (double x : xs) sum += x;
  r.mean = sum / count;
  double m2 = 0, m4 = 0;
  for (double x : xs) {
    const double d = (x - r.mean) * (x - r.mean);
    m2 += d;
    m4 += d * d;
  }
  m2 /= count;
  m4 /= count;
  r.variance = m2 * count / (count - 1);
  r.mean_se = std::sqrt(m2 / count);
  r.variance_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / count);

  r.abs_moments.assign(static_cast<std::size_t>(k_max), 0.0);
  r.abs_moment_se.assign(static_cast<std::size_t>(k_max), 0.0);
  for (int k = 1; k <= k_max; ++k) {
    double s1 = 0, s2 = 0;
    for (double x : xs) {
      const double a = std::pow(std::abs(x), k);
      s1 += a;
      s2 += a * a;
    }
    const double mk = s1 / count;
    r.abs_moments[static_cast<std::size_t>(k - 1)] = mk;
    r.abs_moment_se[static_cast<std::size_t>(k - 1)] = std::sqrt(std::max(s2 / count - mk * mk, 0.0) / count);
  }
  return r;
}

}  // namespace circlt
