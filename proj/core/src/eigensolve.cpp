#include "spectral_enclose/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spectral_enclose/error.hpp"

namespace spectral {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const Matrix& m, const char* what) {
  if (!m.square() || m.rows() == 0) throw InvalidArgument(std::string(what) + ": matrix must be square and non-empty");
}

/// Column index of the first nonzero in each row of the lower triangle.
std::vector<std::size_t> row_envelope(const Matrix& m) {
  std::vector<std::size_t> first(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t j = 0;
    while (j < i && m(i, j) == 0.0) ++j;
    first[i] = j;
  }
  return first;
}

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;  // offdiag[i] couples i and i+1; offdiag[n-1] = 0
};

/// Householder reduction of the symmetric matrix `a` (overwritten). When `qt` is
/// non-null it receives Q^T with Q^T A Q = T.
Tridiagonal tridiagonalize(Matrix& a, Matrix* qt) {
  const std::size_t n = a.rows();
  Tridiagonal tri{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  if (qt) *qt = Matrix::identity(n);

  std::vector<double> v(n), p(n), w(n), r(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    const double* x = a.row(k).data() + k + 1;

    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(x[i]));
    tri.diag[k] = a(k, k);
    if (scale == 0.0) {
      tri.offdiag[k] = 0.0;
      continue;
    }
    double ssq = 0.0;
    for (std::size_t i = 0; i < m; ++i) ssq += (x[i] / scale) * (x[i] / scale);
    double alpha = scale * std::sqrt(ssq);
    if (x[0] > 0.0) alpha = -alpha;

    for (std::size_t i = 0; i < m; ++i) v[i] = x[i];
    v[0] -= alpha;
    double vtv = 0.0;
    for (std::size_t i = 0; i < m; ++i) vtv += v[i] * v[i];
    tri.offdiag[k] = alpha;
    if (vtv == 0.0) continue;
    const double beta = 2.0 / vtv;

    // p = beta S v, w = p - (beta/2)(p.v) v, S <- S - v w^T - w v^T
    const std::size_t off = k + 1;
    double pv = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double* s = a.row(off + i).data() + off;
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += s[j] * v[j];
      p[i] = beta * acc;
      pv += p[i] * v[i];
    }
    const double kappa = 0.5 * beta * pv;
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kappa * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      double* s = a.row(off + i).data() + off;
      const double vi = v[i];
      const double wi = w[i];
      for (std::size_t j = 0; j < m; ++j) s[j] -= vi * w[j] + wi * v[j];
    }

    if (qt) {
      // Q^T <- H_k Q^T, H_k acting on rows k+1..n-1
      std::fill(r.begin(), r.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        const double* q = qt->row(off + i).data();
        for (std::size_t j = 0; j < n; ++j) r[j] += vi * q[j];
      }
      for (std::size_t i = 0; i < m; ++i) {
        const double c = beta * v[i];
        double* q = qt->row(off + i).data();
        for (std::size_t j = 0; j < n; ++j) q[j] -= c * r[j];
      }
    }
  }
  if (n >= 2) {
    tri.diag[n - 2] = a(n - 2, n - 2);
    tri.offdiag[n - 2] = a(n - 1, n - 2);
  }
  tri.diag[n - 1] = a(n - 1, n - 1);
  tri.offdiag[n - 1] = 0.0;
  return tri;
}

/// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
/// Rows i and i+1 of `zt` are rotated alongside (zt holds eigenvectors as rows).
void tridiagonal_ql(Tridiagonal& tri, Matrix* zt) {
  auto& d = tri.diag;
  auto& e = tri.offdiag;
  const std::size_t n = d.size();
  const std::size_t max_sweeps = 30 * n;
  std::size_t sweeps = 0;

  for (std::size_t l = 0; l < n; ++l) {
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m == l) break;
      if (++sweeps > max_sweeps)
        throw ConvergenceFailure("QL iteration exceeded " + std::to_string(max_sweeps) + " sweeps");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (zt) {
          double* zi = zt->row(i).data();
          double* zi1 = zt->row(i + 1).data();
          for (std::size_t k = 0; k < n; ++k) {
            const double t = zi1[k];
            zi1[k] = s * zi[k] + c * t;
            zi[k] = c * zi[k] - s * t;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

EigenDecomposition sorted(std::vector<double> values, const Matrix* zt) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });

  EigenDecomposition result;
  result.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) result.values[k] = values[order[k]];
  if (zt) {
    result.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto src = zt->row(order[k]);
      for (std::size_t i = 0; i < n; ++i) result.vectors(i, k) = src[i];
    }
    result.b_orthonormal = true;
  }
  return result;
}

}  // namespace

Matrix cholesky(const Matrix& b) {
  require_square(b, "cholesky");
  const std::size_t n = b.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, b(i, i));
  const double tol = static_cast<double>(n) * kEps * max_diag;

  const auto first = row_envelope(b);
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* li = l.row(i).data();
    for (std::size_t j = first[i]; j <= i; ++j) {
      const double* lj = l.row(j).data();
      double sum = b(i, j);
      for (std::size_t k = std::max(first[i], first[j]); k < j; ++k) sum -= li[k] * lj[k];
      if (j == i) {
        if (!(sum > tol)) throw NotPositiveDefinite(i, sum);
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  }
  return l;
}

EigenDecomposition eig_sym(const Matrix& m, Vectors vectors) {
  require_square(m, "eig_sym");
  Matrix work = m;
  Matrix qt;
  const bool want = vectors == Vectors::compute;
  Tridiagonal tri = tridiagonalize(work, want ? &qt : nullptr);
  tridiagonal_ql(tri, want ? &qt : nullptr);
  return sorted(std::move(tri.diag), want ? &qt : nullptr);
}

EigenDecomposition eig_gsym(const Matrix& m, const Matrix& b, Vectors vectors) {
  require_square(m, "eig_gsym");
  require_square(b, "eig_gsym");
  if (m.rows() != b.rows()) throw InvalidArgument("eig_gsym: pencil dimensions differ");
  const std::size_t n = m.rows();

  const Matrix l = cholesky(b);
  const auto first = row_envelope(l);

  // Row-wise forward substitution: rows of X <- L^{-1} rows of X.
  const auto forward_solve = [&](Matrix& x) {
    for (std::size_t i = 0; i < n; ++i) {
      double* xi = x.row(i).data();
      for (std::size_t k = first[i]; k < i; ++k) {
        const double lik = l(i, k);
        if (lik == 0.0) continue;
        const double* xk = x.row(k).data();
        for (std::size_t j = 0; j < n; ++j) xi[j] -= lik * xk[j];
      }
      const double inv = l(i, i);
      for (std::size_t j = 0; j < n; ++j) xi[j] /= inv;
    }
  };

  Matrix c = m;
  forward_solve(c);   // L^{-1} M
  c = c.transposed();
  forward_solve(c);   // L^{-1} (L^{-1} M)^T = L^{-1} M L^{-T}
  symmetrize(c);

  EigenDecomposition result = eig_sym(c, vectors);
  result.b_orthonormal = false;
  if (!result.has_vectors()) return result;

  // Back-transform: V <- L^{-T} Y, solving L^T V = Y row by row from the bottom.
  Matrix& v = result.vectors;
  for (std::size_t i = n; i-- > 0;) {
    double* vi = v.row(i).data();
    for (std::size_t k = i + 1; k < n; ++k) {
      if (first[k] > i) continue;
      const double lki = l(k, i);
      if (lki == 0.0) continue;
      const double* vk = v.row(k).data();
      for (std::size_t j = 0; j < n; ++j) vi[j] -= lki * vk[j];
    }
    const double inv = l(i, i);
    for (std::size_t j = 0; j < n; ++j) vi[j] /= inv;
  }
  result.b_orthonormal = true;
  return result;
}

}  // namespace spectral
