#include "oscatter/green.hpp"

#include <cmath>
#include <numbers>

namespace oscatter {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kHankelSwitch = 12.0;

Complex hankel1_0_series(double z) {
  // J0 and Y0 via ascending series; fine in double up to the switch point.
  const double q = 0.25 * z * z;
  double term = 1.0, j0 = 1.0, ysum = 0.0, harmonic = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    j0 += term;
    harmonic += 1.0 / k;
    ysum -= term * harmonic;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(j0))) break;
  }
  const double y0 = (2.0 / kPi) * ((std::log(0.5 * z) + kEulerGamma) * j0 + ysum);
  return {j0, y0};
}

Complex hankel1_0_asymptotic(double z) {
  // H0 ~ sqrt(2/(pi z)) e^{i(z - pi/4)} Sum_k i^k a_k / z^k,
  // a_k = a_{k-1} * (-(2k-1)^2) / (8k); truncated at the smallest term.
  Complex sum(1.0, 0.0);
  double ak = 1.0, zk = 1.0, prev = 1.0;
  Complex ipow(1.0, 0.0);
  for (int k = 1; k < 60; ++k) {
    ak *= -static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k);
    zk *= z;
    ipow *= Complex(0.0, 1.0);
    const double mag = std::abs(ak) / zk;
    if (mag > prev) break;
    prev = mag;
    sum += ipow * (ak / zk);
  }
  const Complex phase(std::cos(z - 0.25 * kPi), std::sin(z - 0.25 * kPi));
  return std::sqrt(2.0 / (kPi * z)) * phase * sum;
}

}  // namespace

Complex hankel1_0(double z) {
  if (!(z > 0.0)) throw SingularEvaluation("H0^(1) needs z > 0");
  return (z <= kHankelSwitch) ? hankel1_0_series(z) : hankel1_0_asymptotic(z);
}

Complex green_kernel(int d, double energy, double r, bool enable_dim2) {
  if (!(energy > 0.0)) throw OutOfDomain("green_kernel needs energy > 0");
  if (r < 0.0) throw OutOfDomain("green_kernel needs r >= 0");
  const double k = std::sqrt(energy);
  switch (d) {
    case 1: {
      const Complex e(std::cos(k * r), std::sin(k * r));
      return Complex(0.0, 1.0) * e / (2.0 * k);
    }
    case 2: {
      if (!enable_dim2)
        throw UnsupportedDimension("d = 2 kernel is an optional feature; not enabled");
      if (r == 0.0) throw SingularEvaluation("d = 2 kernel diverges at r = 0");
      return Complex(0.0, 0.25) * hankel1_0(k * r);
    }
    case 3: {
      if (r == 0.0) throw SingularEvaluation("d = 3 kernel diverges at r = 0");
      const Complex e(std::cos(k * r), std::sin(k * r));
      return e / (4.0 * kPi * r);
    }
    default:
      throw UnsupportedDimension("green_kernel built for d in {1, 3} (+ optional 2)");
  }
}

Complex far_field_coefficient(int d, double energy) {
  if (!(energy > 0.0)) throw OutOfDomain("far_field_coefficient needs energy > 0");
  switch (d) {
    case 1:
      return Complex(0.0, 1.0) / (2.0 * std::sqrt(energy));
    case 3:
      return Complex(1.0 / (4.0 * kPi), 0.0);
    default:
      throw UnsupportedDimension("far-field normalization built for d in {1, 3}");
  }
}

}  // namespace oscatter
