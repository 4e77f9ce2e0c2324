#pragma once

// Inscribed and circumscribed step figures over k equal bases on [0, 1].

#include "eudoxus/fraction.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace eudoxus {

template <typename T>
struct Quadrature {
  T lower;  ///< inscribed figure
  T upper;  ///< circumscribed figure
  T width() const { return upper - lower; }
};

class NotMonotone : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// samples holds f(i/k) for i = 0..k; f must be monotone.
template <typename T>
Quadrature<T> quadrature(const std::vector<T>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("quadrature: need k >= 1 (k + 1 samples)");
  const auto k = static_cast<std::int64_t>(samples.size() - 1);
  bool up = true, down = true;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i] < samples[i - 1]) up = false;
    if (samples[i - 1] < samples[i]) down = false;
  }
  if (!up && !down) throw NotMonotone("quadrature: samples are not monotone");
  T lo = T(0), hi = T(0);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const T& a = samples[i];
    const T& b = samples[i + 1];
    lo = lo + (up ? a : b);
    hi = hi + (up ? b : a);
  }
  return {lo / T(k), hi / T(k)};
}

template <typename T, typename F>
Quadrature<T> quadrature(F&& f, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("quadrature: k must be >= 1");
  std::vector<T> samples;
  samples.reserve(static_cast<std::size_t>(k + 1));
  for (std::int64_t i = 0; i <= k; ++i) samples.push_back(f(T(i) / T(k)));
  return quadrature(samples);
}

template <typename T>
struct UltimateRatio {
  Quadrature<T> q;
  T gap;    ///< upper / lower - 1
  T bound;  ///< (f(1) - f(0)) / (k lower)
};

template <typename T>
UltimateRatio<T> ultimate_ratio(const std::vector<T>& samples) {
  Quadrature<T> q = quadrature(samples);
  const auto k = static_cast<std::int64_t>(samples.size() - 1);
  if (!(T(0) < q.lower)) throw std::domain_error("ultimate_ratio: inscribed figure has no area");
  T rise = samples.back() - samples.front();
  if (rise < T(0)) rise = T(0) - rise;
  return {q, q.upper / q.lower - T(1), rise / (T(k) * q.lower)};
}

/// Two figures whose corresponding columns all stand in one ratio rho.
template <typename T>
struct FigureRatio {
  T rho;
  std::optional<T> lower_ratio;  ///< inscribed areas g : f; absent when both vanish
  T upper_ratio;
  bool columns_equal;  ///< every column ratio equals rho
};

template <typename T>
FigureRatio<T> figure_ratio(const std::vector<T>& f, const std::vector<T>& g) {
  if (f.size() != g.size()) throw std::invalid_argument("figure_ratio: figures need the same subdivision");
  Quadrature<T> qf = quadrature(f);
  Quadrature<T> qg = quadrature(g);
  T rho = T(0);
  bool have = false, same = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == T(0)) continue;
    const T r = g[i] / f[i];
    if (!have) {
      rho = r;
      have = true;
    } else if (!(r == rho)) {
      same = false;
    }
  }
  std::optional<T> lower;
  if (!(qf.lower == T(0))) lower = qg.lower / qf.lower;
  return {rho, lower, qg.upper / qf.upper, have && same};
}

}  // namespace eudoxus
