#include <cstdlib>
#include <sstream>
#include <string>

#include "hypercox/scalar.hpp"

namespace hypercox {

double default_eps() {
  static const double eps = [] {
    const char* env = std::getenv("HYPERCOX_EPS");
    if (!env || !*env) return 1e-9;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0) || v >= 1e-2) return 1e-9;
    return v;
  }();
  return eps;
}

std::string ScalarTraits<double>::str(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace hypercox
