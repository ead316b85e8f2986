#include "oscatter/periodic_cell.hpp"

#include <cmath>
#include <numbers>

namespace oscatter {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PeriodicCell::PeriodicCell(std::vector<double> L) : periods(std::move(L)) {
  if (periods.empty()) throw ConfigInvalid("cell needs at least one period");
  for (double p : periods)
    if (!(p > 0.0)) throw ConfigInvalid("cell periods must be positive");
}

double PeriodicCell::volume() const {
  double v = 1.0;
  for (double p : periods) v *= p;
  return v;
}

CellSpectrum::CellSpectrum(PeriodicCell cell, int max_mode)
    : cell_(std::move(cell)), max_mode_(max_mode) {
  if (max_mode_ < 0) throw ConfigInvalid("max_mode must be >= 0");
  std::size_t n = 1;
  for (int j = 0; j < cell_.dim(); ++j) n *= static_cast<std::size_t>(2 * max_mode_ + 1);
  coeffs_.assign(n, Complex(0.0, 0.0));
}

int CellSpectrum::index(const std::vector<int>& m) const {
  if (static_cast<int>(m.size()) != cell_.dim())
    throw CellMismatch("multi-index dimension does not match cell");
  const int w = 2 * max_mode_ + 1;
  int flat = 0;
  for (int j = cell_.dim() - 1; j >= 0; --j) {
    if (m[j] < -max_mode_ || m[j] > max_mode_)
      throw OutOfDomain("mode index exceeds spectrum bound");
    flat = flat * w + (m[j] + max_mode_);
  }
  return flat;
}

std::vector<int> CellSpectrum::multi_index(int flat) const {
  const int w = 2 * max_mode_ + 1;
  std::vector<int> m(cell_.dim());
  for (int j = 0; j < cell_.dim(); ++j) {
    m[j] = flat % w - max_mode_;
    flat /= w;
  }
  return m;
}

std::vector<double> CellSpectrum::wavevector(int flat) const {
  std::vector<int> m = multi_index(flat);
  std::vector<double> k(cell_.dim());
  for (int j = 0; j < cell_.dim(); ++j) k[j] = kTwoPi * m[j] / cell_.periods[j];
  return k;
}

double CellSpectrum::wavevector_sq(int flat) const {
  double s = 0.0;
  for (double kj : wavevector(flat)) s += kj * kj;
  return s;
}

Complex CellSpectrum::evaluate(const std::vector<double>& y) const {
  if (static_cast<int>(y.size()) != cell_.dim())
    throw CellMismatch("evaluation point dimension does not match cell");
  Complex sum(0.0, 0.0);
  for (int f = 0; f < size(); ++f) {
    if (coeffs_[f] == Complex(0.0, 0.0)) continue;
    std::vector<double> k = wavevector(f);
    double phase = 0.0;
    for (int j = 0; j < cell_.dim(); ++j) phase += k[j] * y[j];
    sum += coeffs_[f] * Complex(std::cos(phase), std::sin(phase));
  }
  return sum;
}

Complex CellSpectrum::evaluate(double y) const {
  if (cell_.dim() != 1) throw CellMismatch("scalar evaluate needs a 1-d cell");
  const double k1 = kTwoPi / cell_.periods[0];
  // Direct sum m = -M..M; small M so no recursion tricks needed.
  Complex sum(0.0, 0.0);
  for (int m = -max_mode_; m <= max_mode_; ++m) {
    const Complex& c = coeffs_[m + max_mode_];
    if (c == Complex(0.0, 0.0)) continue;
    const double phase = k1 * m * y;
    sum += c * Complex(std::cos(phase), std::sin(phase));
  }
  return sum;
}

bool CellSpectrum::is_hermitian(double tol) const {
  for (int f = 0; f < size(); ++f) {
    std::vector<int> m = multi_index(f);
    for (int& mj : m) mj = -mj;
    const Complex diff = coeffs_[f] - std::conj(at(m));
    if (std::abs(diff) > tol) return false;
  }
  return true;
}

double CellSpectrum::max_abs() const {
  double mx = 0.0;
  for (const Complex& c : coeffs_) mx = std::max(mx, std::abs(c));
  return mx;
}

CellSpectrum& CellSpectrum::operator+=(const CellSpectrum& o) {
  require_same_cell(*this, o);
  for (int f = 0; f < size(); ++f) coeffs_[f] += o.coeffs_[f];
  return *this;
}

CellSpectrum& CellSpectrum::operator-=(const CellSpectrum& o) {
  require_same_cell(*this, o);
  for (int f = 0; f < size(); ++f) coeffs_[f] -= o.coeffs_[f];
  return *this;
}

CellSpectrum& CellSpectrum::operator*=(Complex s) {
  for (Complex& c : coeffs_) c *= s;
  return *this;
}

void require_same_cell(const CellSpectrum& a, const CellSpectrum& b) {
  if (!(a.cell() == b.cell()) || a.max_mode() != b.max_mode())
    throw CellMismatch("spectra live on different cells or mode bounds");
}

Complex cell_average(const CellSpectrum& g) {
  return g.at(std::vector<int>(g.cell().dim(), 0));
}

CellSpectrum solve_cell_poisson(const CellSpectrum& g, double mean_tol) {
  const Complex mean = cell_average(g);
  double scale = g.max_abs();
  if (scale == 0.0) scale = 1.0;
  if (std::abs(mean) > mean_tol * std::max(1.0, scale))
    throw SolvabilityViolation("cell Poisson right-hand side has nonzero mean");
  CellSpectrum u(g.cell(), g.max_mode());
  for (int f = 0; f < g.size(); ++f) {
    const double k2 = g.wavevector_sq(f);
    u[f] = (k2 == 0.0) ? Complex(0.0, 0.0) : -g[f] / k2;
  }
  return u;
}

CellSpectrum cell_gradient(const CellSpectrum& g, int axis) {
  if (axis < 0 || axis >= g.cell().dim())
    throw OutOfDomain("gradient axis outside cell dimension");
  CellSpectrum d(g.cell(), g.max_mode());
  for (int f = 0; f < g.size(); ++f) {
    const double kj = g.wavevector(f)[axis];
    d[f] = Complex(0.0, kj) * g[f];
  }
  return d;
}

CellSpectrum cell_laplacian(const CellSpectrum& g) {
  CellSpectrum l(g.cell(), g.max_mode());
  for (int f = 0; f < g.size(); ++f) l[f] = -g.wavevector_sq(f) * g[f];
  return l;
}

CellSpectrum cell_product(const CellSpectrum& u, const CellSpectrum& v) {
  if (!(u.cell() == v.cell()))
    throw CellMismatch("product factors live on different cells");
  const int M = std::max(u.max_mode(), v.max_mode());
  CellSpectrum w(u.cell(), M);
  const int dim = u.cell().dim();
  // Direct convolution over the exact extended band (bound Mu + Mv), kept
  // only where |sum_j| <= M. Equivalent to padding to 2M and truncating.
  std::vector<int> sum(dim);
  for (int fu = 0; fu < u.size(); ++fu) {
    if (u[fu] == Complex(0.0, 0.0)) continue;
    const std::vector<int> mu = u.multi_index(fu);
    for (int fv = 0; fv < v.size(); ++fv) {
      if (v[fv] == Complex(0.0, 0.0)) continue;
      const std::vector<int> mv = v.multi_index(fv);
      bool inside = true;
      for (int j = 0; j < dim; ++j) {
        sum[j] = mu[j] + mv[j];
        if (sum[j] < -M || sum[j] > M) {
          inside = false;
          break;
        }
      }
      if (inside) w.at(sum) += u[fu] * v[fv];
    }
  }
  return w;
}

}  // namespace oscatter
