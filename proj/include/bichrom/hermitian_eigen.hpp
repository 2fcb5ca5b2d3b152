// Copyright 2026 The bichrom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense Hermitian eigensolver: Householder reduction to real symmetric
// tridiagonal form followed by implicit-shift QL iterations. Eigenvalues are
// returned in ascending order with matching unit eigenvectors (columns).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bichrom/error.hpp"

namespace bichrom {

template <typename Scalar>
class HermitianEigenSolver {
 public:
  using ComplexT = std::complex<Scalar>;
  using MatrixC = Eigen::Matrix<ComplexT, Eigen::Dynamic, Eigen::Dynamic>;
  using VectorR = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using MatrixR = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  HermitianEigenSolver() = default;

  template <typename Derived>
  explicit HermitianEigenSolver(const Eigen::MatrixBase<Derived>& a, bool vectors = true) {
    compute(a, vectors);
  }

  template <typename Derived>
  HermitianEigenSolver& compute(const Eigen::MatrixBase<Derived>& a_in, bool vectors = true) {
    const Eigen::Index n = a_in.rows();
    if (a_in.cols() != n) throw DomainError("HermitianEigenSolver: matrix must be square");
    MatrixC a = a_in;
    MatrixC q = MatrixC::Identity(n, n);
    tridiagonalize(a, q, vectors);

    // Off-diagonals of the tridiagonal form are complex; a diagonal unitary
    // phase makes them real and non-negative.
    VectorR diag(n), off(n);
    std::vector<ComplexT> phase(static_cast<std::size_t>(n), ComplexT(1));
    for (Eigen::Index k = 0; k < n; ++k) diag(k) = a(k, k).real();
    off.setZero();
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      const ComplexT e = a(k + 1, k);
      const Scalar mag = std::abs(e);
      off(k) = mag;
      phase[k + 1] = mag > Scalar(0) ? phase[k] * (e / mag) : phase[k];
    }

    MatrixR z = MatrixR::Identity(n, n);
    implicit_ql(diag, off, z, vectors);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return diag(i) < diag(j); });

    values_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) values_(i) = diag(order[static_cast<std::size_t>(i)]);
    if (vectors) {
      MatrixC qd = q;
      for (Eigen::Index k = 0; k < n; ++k) qd.col(k) *= phase[static_cast<std::size_t>(k)];
      vectors_.resize(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        vectors_.col(i) = qd * z.col(order[static_cast<std::size_t>(i)]).template cast<ComplexT>();
      }
    } else {
      vectors_.resize(0, 0);
    }
    return *this;
  }

  const VectorR& eigenvalues() const { return values_; }
  const MatrixC& eigenvectors() const { return vectors_; }

 private:
  // A <- H A H with H = I - 2 v v^H, reducing column k below the subdiagonal.
  static void tridiagonalize(MatrixC& a, MatrixC& q, bool vectors) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k + 2 < n; ++k) {
      const Eigen::Index m = n - k - 1;
      Eigen::Matrix<ComplexT, Eigen::Dynamic, 1> v = a.col(k).tail(m);
      const Scalar norm = v.norm();
      if (norm == Scalar(0)) continue;
      const ComplexT x0 = v(0);
      const ComplexT unit = std::abs(x0) > Scalar(0) ? x0 / std::abs(x0) : ComplexT(1);
      v(0) += unit * norm;
      const Scalar vnorm = v.norm();
      if (vnorm == Scalar(0)) continue;
      v /= vnorm;

      auto block = a.bottomRightCorner(m, m);
      const Eigen::Matrix<ComplexT, Eigen::Dynamic, 1> p = block * v;
      const ComplexT kappa = v.dot(p);  // v^H p, real for Hermitian blocks
      const Eigen::Matrix<ComplexT, Eigen::Dynamic, 1> w = p - kappa * v;
      block -= Scalar(2) * (v * w.adjoint() + w * v.adjoint());

      const ComplexT sub = -unit * norm;
      a.col(k).tail(m).setZero();
      a.row(k).tail(m).setZero();
      a(k + 1, k) = sub;
      a(k, k + 1) = std::conj(sub);

      if (vectors) {
        auto qb = q.rightCols(m);
        const Eigen::Matrix<ComplexT, Eigen::Dynamic, 1> qv = qb * v;
        qb -= Scalar(2) * qv * v.adjoint();
      }
    }
  }

  // Symmetric tridiagonal eigenproblem (diag d, sub-diagonal e[0..n-2]).
  static void implicit_ql(VectorR& d, VectorR& e, MatrixR& z, bool vectors) {
    const Eigen::Index n = d.size();
    if (n == 0) return;
    const long max_iterations = 30L * static_cast<long>(n);
    long iterations = 0;
    e(n - 1) = Scalar(0);
    for (Eigen::Index l = 0; l < n; ++l) {
      for (;;) {
        Eigen::Index m = l;
        for (; m + 1 < n; ++m) {
          const Scalar dd = std::abs(d(m)) + std::abs(d(m + 1));
          if (std::abs(e(m)) <= std::numeric_limits<Scalar>::epsilon() * dd) break;
        }
        if (m == l) break;
        if (++iterations > max_iterations) {
          throw NumericalError(NumericalErrc::eigensolver_failure,
                               "QL iteration did not converge for a " + std::to_string(n) +
                                   "x" + std::to_string(n) + " matrix");
        }
        Scalar g = (d(l + 1) - d(l)) / (Scalar(2) * e(l));
        Scalar r = std::hypot(g, Scalar(1));
        g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
        Scalar s = 1, c = 1, p = 0;
        Eigen::Index i = m - 1;
        bool deflated = false;
        for (; i >= l; --i) {
          Scalar f = s * e(i);
          const Scalar b = c * e(i);
          r = std::hypot(f, g);
          e(i + 1) = r;
          if (r == Scalar(0)) {
            d(i + 1) -= p;
            e(m) = 0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d(i + 1) - p;
          r = (d(i) - g) * s + Scalar(2) * c * b;
          p = s * r;
          d(i + 1) = g + p;
          g = c * r - b;
          if (vectors) {
            for (Eigen::Index k = 0; k < n; ++k) {
              f = z(k, i + 1);
              z(k, i + 1) = s * z(k, i) + c * f;
              z(k, i) = c * z(k, i) - s * f;
            }
          }
        }
        if (deflated) continue;
        d(l) -= p;
        e(l) = g;
        e(m) = 0;
      }
    }
  }

  VectorR values_;
  MatrixC vectors_;
};

}  // namespace bichrom
