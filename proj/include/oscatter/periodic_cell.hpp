#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "oscatter/errors.hpp"

namespace oscatter {

using Complex = std::complex<double>;

// Torus the fast variable lives on: [0, L_1) x ... x [0, L_d).
struct PeriodicCell {
  std::vector<double> periods;

  PeriodicCell() = default;
  explicit PeriodicCell(std::vector<double> L);

  int dim() const { return static_cast<int>(periods.size()); }
  double volume() const;
  bool operator==(const PeriodicCell& o) const { return periods == o.periods; }
};

// Truncated Fourier representation of a cell-periodic function:
//   g(y) = sum_{|m_j| <= M} c_m exp(i k_m . y),  k_m = 2 pi (m_1/L_1, ...).
// Coefficients are stored flat; index(m) linearizes the multi-index with
// m_j in [-M, M]. The mean of g is exactly coeff at m = 0.
class CellSpectrum {
 public:
  CellSpectrum() = default;
  CellSpectrum(PeriodicCell cell, int max_mode);

  const PeriodicCell& cell() const { return cell_; }
  int max_mode() const { return max_mode_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  // Linear index of a multi-index; throws OutOfDomain when |m_j| > M.
  int index(const std::vector<int>& m) const;
  std::vector<int> multi_index(int flat) const;

  Complex& at(const std::vector<int>& m) { return coeffs_[index(m)]; }
  const Complex& at(const std::vector<int>& m) const { return coeffs_[index(m)]; }
  Complex& operator[](int flat) { return coeffs_[flat]; }
  const Complex& operator[](int flat) const { return coeffs_[flat]; }

  std::vector<Complex>& coeffs() { return coeffs_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  // Frequency vector k_m of the flat index.
  std::vector<double> wavevector(int flat) const;
  // |k_m|^2 of the flat index.
  double wavevector_sq(int flat) const;

  Complex evaluate(const std::vector<double>& y) const;
  Complex evaluate(double y) const;  // d = 1 shorthand

  // Hermitian symmetry c_{-m} = conj(c_m) within tolerance; real-valued g.
  bool is_hermitian(double tol = 1e-13) const;

  double max_abs() const;

  CellSpectrum& operator+=(const CellSpectrum& o);
  CellSpectrum& operator-=(const CellSpectrum& o);
  CellSpectrum& operator*=(Complex s);
  friend CellSpectrum operator+(CellSpectrum a, const CellSpectrum& b) { return a += b; }
  friend CellSpectrum operator-(CellSpectrum a, const CellSpectrum& b) { return a -= b; }
  friend CellSpectrum operator*(Complex s, CellSpectrum a) { return a *= s; }

 private:
  PeriodicCell cell_;
  int max_mode_ = 0;
  std::vector<Complex> coeffs_;
};

void require_same_cell(const CellSpectrum& a, const CellSpectrum& b);

// Mean over the cell, exactly the m = 0 coefficient.
Complex cell_average(const CellSpectrum& g);

// Solves Delta_y u = g on the torus with zero-mean u.
// Requires |mean g| <= mean_tol, else SolvabilityViolation.
CellSpectrum solve_cell_poisson(const CellSpectrum& g, double mean_tol = 1e-12);

// Component j of grad_y g: multiplies c_m by i k_{m,j}.
CellSpectrum cell_gradient(const CellSpectrum& g, int axis);

// Laplacian in y: multiplies c_m by -|k_m|^2.
CellSpectrum cell_laplacian(const CellSpectrum& g);

// Pointwise product on the cell. The full convolution reaches mode bound
// 2M; the result is truncated back to max(Mu, Mv). Truncation is lossy
// when the factors jointly exceed that bound, so pick the working bound of
// the wider factor large enough that products of interest fit.
CellSpectrum cell_product(const CellSpectrum& u, const CellSpectrum& v);

}  // namespace oscatter
