#include "plf/exact_matrix.hpp"

namespace plf {

namespace {

// split an EMat<SplitQ> into its two rational components
std::pair<EMat<Rat>, EMat<Rat>> split_components(const EMat<SplitQ>& m) {
  EMat<Rat> a(m.rows(), m.cols()), b(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      a(i, j) = m(i, j).first();
      b(i, j) = m(i, j).second();
    }
  return {a, b};
}

EMat<SplitQ> join_components(const EMat<Rat>& a, const EMat<Rat>& b) {
  EMat<SplitQ> m(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m(i, j) = SplitQ(a(i, j), b(i, j));
  return m;
}

template <typename S>
EMat<S> gauss_jordan(EMat<S> m) {
  int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw BadSize("inverse of a non-square matrix");
  EMat<S> inv = eye<S>(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (!m(row, col).is_zero()) {
        piv = row;
        break;
      }
    if (piv < 0) throw Error("Singular", "matrix is not invertible");
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      inv.row(piv).swap(inv.row(col));
    }
    S d = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) = m(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col || m(row, col).is_zero()) continue;
      S f = m(row, col);
      for (int j = 0; j < n; ++j) {
        m(row, j) = m(row, j) - f * m(col, j);
        inv(row, j) = inv(row, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

template <typename S>
S det_elim(EMat<S> m) {
  int n = static_cast<int>(m.rows());
  S d(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (!m(row, col).is_zero()) {
        piv = row;
        break;
      }
    if (piv < 0) return S(0);
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      d = -d;
    }
    d = d * m(col, col);
    S inv_piv = S(1) / m(col, col);
    for (int row = col + 1; row < n; ++row) {
      if (m(row, col).is_zero()) continue;
      S f = m(row, col) * inv_piv;
      for (int j = col; j < n; ++j) m(row, j) = m(row, j) - f * m(col, j);
    }
  }
  return d;
}

}  // namespace

EMat<QDelta> inverse(const EMat<QDelta>& m) { return gauss_jordan<QDelta>(m); }
EMat<Rat> inverse(const EMat<Rat>& m) { return gauss_jordan<Rat>(m); }
EMat<SplitQ> inverse(const EMat<SplitQ>& m) {
  auto [a, b] = split_components(m);
  return join_components(gauss_jordan<Rat>(a), gauss_jordan<Rat>(b));
}

Rat det(const EMat<Rat>& m) { return det_elim<Rat>(m); }
QDelta det(const EMat<QDelta>& m) { return det_elim<QDelta>(m); }
SplitQ det(const EMat<SplitQ>& m) {
  auto [a, b] = split_components(m);
  return SplitQ(det_elim<Rat>(a), det_elim<Rat>(b));
}

Rat random_small_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return Rat(d(rng));
}

QDelta random_qdelta(std::mt19937_64& rng) {
  return QDelta(random_small_rat(rng), random_small_rat(rng));
}

SplitQ random_splitq(std::mt19937_64& rng) {
  return SplitQ(random_small_rat(rng), random_small_rat(rng));
}

namespace {

// random theta-anti-Hermitian X = S^{-1} Y with theta_t(Y) = -Y
template <typename S>
EMat<S> random_lie(int N, std::mt19937_64& rng);

template <>
EMat<QDelta> random_lie<QDelta>(int N, std::mt19937_64& rng) {
  EMat<QDelta> Y = EMat<QDelta>::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      QDelta v = random_qdelta(rng);
      Y(i, j) = v;
      Y(j, i) = -v.conj();
    }
    Y(i, i) = QDelta(Rat(0), random_small_rat(rng));  // delta * Q on the diagonal
  }
  return inverse(mat_S<QDelta>(N)) * Y;
}

template <>
EMat<SplitQ> random_lie<SplitQ>(int N, std::mt19937_64& rng) {
  // theta_t(Y) = -Y with theta the swap: Y = (Y1, -tY1)
  EMat<Rat> Y1(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) Y1(i, j) = random_small_rat(rng);
  EMat<Rat> Y2 = -Y1.transpose();
  return inverse(mat_S<SplitQ>(N)) * join_components(Y1, Y2);
}

bool invertible_scalar(const Rat& x) { return !x.is_zero(); }
bool invertible_scalar(const QDelta& x) { return !x.is_zero(); }
bool invertible_scalar(const SplitQ& x) {
  return !x.first().is_zero() && !x.second().is_zero();
}

template <typename S>
EMat<S> cayley_unitary(int N, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    EMat<S> X = random_lie<S>(N, rng);
    EMat<S> a = eye<S>(N) - X, b = eye<S>(N) + X;
    if (!invertible_scalar(det(a))) continue;
    EMat<S> g = inverse(a) * b;
    return g;
  }
  throw Error("Sampling", "could not draw an invertible Cayley chart point");
}

}  // namespace

EMat<QDelta> random_unitary(int N, std::mt19937_64& rng) {
  EMat<QDelta> g = cayley_unitary<QDelta>(N, rng) * cayley_unitary<QDelta>(N, rng);
  return g;
}

EMat<SplitQ> random_unitary_split(int N, std::mt19937_64& rng) {
  return cayley_unitary<SplitQ>(N, rng) * cayley_unitary<SplitQ>(N, rng);
}

}  // namespace plf

namespace plf {
namespace {
Rat g_delta_sq(2);
}
const Rat& QDelta::delta_sq() { return g_delta_sq; }
void QDelta::set_delta_sq(Rat d) { g_delta_sq = std::move(d); }
}  // namespace plf
