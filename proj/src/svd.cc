/* Copyright 2026 The MSVD Denoise Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "msvd/svd.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>

#include "msvd/errors.h"

namespace msvd {
namespace {

constexpr int kMaxSweeps = 30;
constexpr double kOrthogonalityTol = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Column-major scratch storage; Jacobi touches whole columns at a time.
struct Columns {
  std::size_t length;
  std::size_t count;
  std::vector<double> data;

  Columns(std::size_t length, std::size_t count)
      : length(length), count(count), data(length * count, 0.0) {}

  double* col(std::size_t j) { return data.data() + j * length; }
  const double* col(std::size_t j) const { return data.data() + j * length; }
};

double Dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void Rotate(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

// Appends unit vectors to basis (columns 0..filled-1 already orthonormal)
// until it has basis.count columns, drawing candidates from e_0, e_1, ...
void CompleteBasis(Columns& basis, std::size_t filled) {
  const std::size_t n = basis.length;
  std::vector<double> cand(n);
  for (std::size_t e = 0; e < n && filled < basis.count; ++e) {
    std::fill(cand.begin(), cand.end(), 0.0);
    cand[e] = 1.0;
    // Two passes of classical Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < filled; ++j) {
        const double proj = Dot(basis.col(j), cand.data(), n);
        const double* q = basis.col(j);
        for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * q[i];
      }
    }
    const double norm = std::sqrt(Dot(cand.data(), cand.data(), n));
    // A standard basis vector loses at most sqrt(1 - 1/n) of its norm to a
    // span that does not contain it, so 0.5 / sqrt(n) separates the cases.
    if (norm < 0.5 / std::sqrt(static_cast<double>(n))) continue;
    double* dst = basis.col(filled);
    for (std::size_t i = 0; i < n; ++i) dst[i] = cand[i] / norm;
    ++filled;
  }
  if (filled != basis.count) {
    throw ConvergenceError("orthonormal completion failed");
  }
}

Matrix ToMatrix(const Columns& c) {
  Matrix m(c.length, c.count);
  for (std::size_t j = 0; j < c.count; ++j)
    for (std::size_t i = 0; i < c.length; ++i) m(i, j) = c.col(j)[i];
  return m;
}

// Flips columns of u (and the matching columns of v, when present) so the
// largest-magnitude entry of each u column is positive.
void NormalizeSigns(Matrix& u, Matrix* v) {
  for (std::size_t j = 0; j < u.cols(); ++j) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const double mag = std::abs(u(i, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (u(best, j) >= 0.0) continue;
    for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
    if (v != nullptr && j < v->cols()) {
      for (std::size_t i = 0; i < v->rows(); ++i) (*v)(i, j) = -(*v)(i, j);
    }
  }
}

// Hestenes Jacobi on a tall (rows >= cols) matrix. Returns unnormalized signs.
SvdFactors TallSvd(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  Columns w(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) w.col(j)[i] = a(i, j);
  Columns v(n, n);
  for (std::size_t j = 0; j < n; ++j) v.col(j)[j] = 1.0;

  // Columns shorter than this are rounding residue of a rank-deficient input;
  // they are neither rotated nor reported as nonzero singular values.
  const double cutoff =
      frobenius_norm(a) * kEps * static_cast<double>(std::max(m, n));
  const double cutoff_sq = cutoff * cutoff;

  bool converged = false;
  double worst = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double* wp = w.col(p);
        double* wq = w.col(q);
        const double alpha = Dot(wp, wp, m);
        const double beta = Dot(wq, wq, m);
        const double gamma = Dot(wp, wq, m);
        if (alpha <= cutoff_sq || beta <= cutoff_sq || gamma == 0.0) continue;
        const double cosine = std::abs(gamma) / std::sqrt(alpha * beta);
        worst = std::max(worst, cosine);
        if (cosine < kOrthogonalityTol) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        Rotate(wp, wq, m, c, s);
        Rotate(v.col(p), v.col(q), n, c, s);
      }
    }
  }
  if (!converged && worst >= kOrthogonalityTol) {
    throw ConvergenceError("one-sided Jacobi did not converge in " +
                           std::to_string(kMaxSweeps) +
                           " sweeps (worst column cosine " +
                           std::to_string(worst) + ")");
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j)
    norms[j] = std::sqrt(Dot(w.col(j), w.col(j), m));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x,
                                                   std::size_t y) {
    return norms[x] > norms[y];
  });

  std::vector<double> s(n, 0.0);
  Columns u(m, m);
  Columns v_sorted(n, n);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    std::copy_n(v.col(j), n, v_sorted.col(k));
    if (norms[j] > cutoff && norms[j] > 0.0) {
      s[k] = norms[j];
      for (std::size_t i = 0; i < m; ++i) u.col(k)[i] = w.col(j)[i] / norms[j];
      rank = k + 1;
    }
  }
  CompleteBasis(u, rank);
  return {ToMatrix(u), std::move(s), ToMatrix(v_sorted)};
}

}  // namespace

SvdFactors svd(const Matrix& a) {
  if (a.rows() >= a.cols()) {
    SvdFactors f = TallSvd(a);
    NormalizeSigns(f.u, &f.v);
    return f;
  }
  SvdFactors t = TallSvd(transpose(a));
  SvdFactors f{std::move(t.v), std::move(t.s), std::move(t.u)};
  NormalizeSigns(f.u, &f.v);
  return f;
}

Matrix compose(const SvdFactors& f) {
  const std::size_t m = f.u.rows();
  const std::size_t n = f.v.rows();
  Matrix out(m, n);
  for (std::size_t k = 0; k < f.s.size(); ++k) {
    const double sk = f.s[k];
    if (sk == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const double uik = sk * f.u(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += uik * f.v(j, k);
    }
  }
  return out;
}

SymmetricEigen symmetric_eigen(const Matrix& sym) {
  const std::size_t n = sym.rows();
  if (sym.cols() != n) {
    throw DimensionError("symmetric_eigen: matrix must be square");
  }
  Matrix a = sym;
  Matrix v = Matrix::Identity(n);
  const double scale = frobenius_norm(a);

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double threshold =
            std::max(kOrthogonalityTol * std::sqrt(std::abs(app * aqq)),
                     kEps * scale);
        if (std::abs(apq) <= threshold) continue;
        converged = false;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("Jacobi eigensolver did not converge in " +
                           std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

Matrix left_singular_basis_4(const Matrix& a1) {
  if (a1.rows() != 4) {
    throw DimensionError("left_singular_basis_4: expected 4 rows, got " +
                         std::to_string(a1.rows()));
  }
  if (a1.cols() < 4) {
    throw DimensionError("left_singular_basis_4: need at least 4 columns, got " +
                         std::to_string(a1.cols()));
  }
  Matrix gram(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i; j < 4; ++j) {
      const double g = Dot(a1.row(i).data(), a1.row(j).data(), a1.cols());
      gram(i, j) = g;
      gram(j, i) = g;
    }
  }
  Matrix u = symmetric_eigen(gram).vectors;
  NormalizeSigns(u, nullptr);
  return u;
}

}  // namespace msvd
