#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

// Shared numerical kernels: dense symmetric eigendecomposition (cyclic
// Jacobi), Gauss-Legendre quadrature mapped to [0,inf), inverse-power-law
// fitting, compensated summation.

namespace lri {

/// Kahan compensated accumulator.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

/// Dense row-major matrix, just large enough an interface for this project.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows_(r), cols_(c), a_(r * c, fill) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  double* row(std::size_t i) { return a_.data() + i * cols_; }
  const double* row(std::size_t i) const { return a_.data() + i * cols_; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        double v = x(i, k);
        if (v == 0.0) continue;
        const double* yr = y.row(k);
        double* zr = z.row(i);
        for (std::size_t j = 0; j < y.cols_; ++j) zr[j] += v * yr[j];
      }
    return z;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    Matrix z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
    return z;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    Matrix z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
    return z;
  }
  Matrix& operator+=(const Matrix& y) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += y.a_[i];
    return *this;
  }
  Matrix& operator*=(double v) {
    for (auto& x : a_) x *= v;
    return *this;
  }
  friend Matrix operator*(double v, const Matrix& x) {
    Matrix z = x;
    z *= v;
    return z;
  }
  double max_abs() const {
    double m = 0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }
  bool finite() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](double v) { return std::isfinite(v); });
  }

private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
};

struct EigResult {
  std::vector<double> values; // ascending
  Matrix vectors;             // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix. Deterministic
/// sweep order; stops when the off-diagonal Frobenius norm falls below
/// tol * (Frobenius norm). Eigenvalues sorted ascending.
inline EigResult eig_sym(const Matrix& m, double tol = 1e-14) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_sym: not square");
  if (!m.finite()) throw std::invalid_argument("eig_sym: non-finite entries");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix v = Matrix::identity(n);

  auto off_norm = [&] {
    double s = 0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2 * a(p, q) * a(p, q);
    return std::sqrt(s);
  };
  double full = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) full += a(i, j) * a(i, j);
  full = std::sqrt(full);
  const double stop = tol * std::max(full, 1e-300);

  for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= stop / (n * n)) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double* ap = a.row(p);
        double* aq = a.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          double akp = ap[k], akq = aq[k];
          ap[k] = c * akp - s * akq;
          aq[k] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigResult out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton on P_n).
inline void gauss_legendre(int n, std::vector<double>& x,
                           std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    double p1 = 1.0, p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

/// Quadrature rule on [0, inf) from Gauss-Legendre under the rational map
/// u = u0 (1+t)/(1-t); u0 sets the scale (typically a geometric-mean gap).
struct QuadratureRule {
  std::vector<double> nodes, weights;
  int count() const { return static_cast<int>(nodes.size()); }
};

inline QuadratureRule semi_infinite_rule(int n = 100, double u0 = 1.0) {
  if (n < 2 || u0 <= 0) throw std::invalid_argument("semi_infinite_rule");
  std::vector<double> t, w;
  gauss_legendre(n, t, w);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double om = 1.0 - t[i];
    rule.nodes[i] = u0 * (1.0 + t[i]) / om;
    rule.weights[i] = w[i] * 2.0 * u0 / (om * om);
  }
  return rule;
}

struct QuadResult {
  double value = 0;
  double tail_fraction = 0; // |last-node contribution| / |value|
  bool tail_warning = false;
};

/// Integrates f over [0, inf) with the mapped rule; integrands must decay
/// (the residue-identity family decays as u^-4). The last-node contribution
/// is reported as a tail bound and flags non-decaying integrands.
inline QuadResult integrate_seminfinite(const std::function<double(double)>& f,
                                        const QuadratureRule& rule) {
  KahanSum acc;
  double last = 0;
  for (int i = 0; i < rule.count(); ++i) {
    double c = rule.weights[i] * f(rule.nodes[i]);
    acc.add(c);
    if (i == rule.count() - 1) last = c;
  }
  QuadResult out;
  out.value = acc.value();
  double scale = std::max(std::abs(out.value), 1e-300);
  out.tail_fraction = std::abs(last) / scale;
  out.tail_warning = out.tail_fraction > 1e-6;
  return out;
}

struct PowerLawFit {
  double coeff = 0;        // c in E = c / R^n
  double rel_residual = 0; // rms residual / rms data
  bool window_warning = false;
};

/// Least-squares coefficient of the inverse-power model E = c R^{-n}.
inline PowerLawFit fit_power_law(const std::vector<double>& R,
                                 const std::vector<double>& E, int n) {
  if (R.size() != E.size() || R.size() < 3)
    throw std::invalid_argument("fit_power_law: need >= 3 points");
  double num = 0, den = 0, e2 = 0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    double b = std::pow(R[i], -n);
    num += E[i] * b;
    den += b * b;
    e2 += E[i] * E[i];
  }
  PowerLawFit fit;
  fit.coeff = num / den;
  double r2 = 0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    double d = E[i] - fit.coeff * std::pow(R[i], -n);
    r2 += d * d;
  }
  fit.rel_residual = std::sqrt(r2 / std::max(e2, 1e-300));
  fit.window_warning = fit.rel_residual > 0.01;
  return fit;
}

} // namespace lri
