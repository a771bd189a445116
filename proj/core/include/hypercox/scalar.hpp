#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "hypercox/multiquad.hpp"

namespace hypercox {

// Classification tolerance for the binary64 backend. Defaults to 1e-9 and can be
// overridden once per process through HYPERCOX_EPS.
double default_eps();

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  // Sign of x, treating |x| <= eps * scale as zero.
  static int sign(double x, double scale = 1.0) {
    double tol = default_eps() * (scale > 1.0 ? scale : 1.0);
    if (x > tol) return 1;
    if (x < -tol) return -1;
    return 0;
  }
  static double to_double(double x) { return x; }
  static std::optional<double> sqrt(double x) {
    if (x < 0) return std::nullopt;
    return std::sqrt(x);
  }
  static double from_int(long v) { return static_cast<double>(v); }
  static double magnitude(double x) { return std::fabs(x); }
  static std::string str(double x);
};

template <>
struct ScalarTraits<MultiQuad> {
  static constexpr bool exact = true;
  static int sign(const MultiQuad& x, double = 1.0) { return x.sign(); }
  static double to_double(const MultiQuad& x) { return x.to_double(); }
  static std::optional<MultiQuad> sqrt(const MultiQuad& x) { return x.sqrt(); }
  static MultiQuad from_int(long v) { return MultiQuad(v); }
  static double magnitude(const MultiQuad& x) { return std::fabs(x.to_double()); }
  static std::string str(const MultiQuad& x) { return x.str(); }
};

}  // namespace hypercox
