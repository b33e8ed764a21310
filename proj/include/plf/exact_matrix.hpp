#pragma once

// Exact dense matrices over Q(delta) (delta^2 = Delta rational) and over the
// split algebra Q x Q, on top of Eigen dynamic matrices with the custom
// scalars of rational.hpp.  Carries the structural matrices J_k, S_N, Q and
// the two embeddings between the unitary groups, plus exact Gauss-Jordan
// inversion and a root-element sampler for the unitary groups.

#include "plf/errors.hpp"
#include "plf/rational.hpp"

#include <optional>
#include <random>
#include <vector>

namespace plf {

template <typename S>
using EMat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

// entrywise involution
inline QDelta conj_scalar(const QDelta& z) { return z.conj(); }
inline SplitQ conj_scalar(const SplitQ& z) { return z.conj(); }

template <typename S>
EMat<S> theta(const EMat<S>& m) {
  EMat<S> r = m;
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) = conj_scalar(r(i, j));
  return r;
}

template <typename S>
EMat<S> theta_t(const EMat<S>& m) {
  return theta<S>(m).transpose();
}

template <typename S>
bool mats_equal(const EMat<S>& a, const EMat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename S>
EMat<S> eye(int n) {
  EMat<S> m = EMat<S>::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = S(1);
  return m;
}

// J_k: antidiagonal ones (J_1 = (1), J_k = [[0, J_{k-1}], [1, 0]])
template <typename S>
EMat<S> mat_J(int k) {
  if (k < 1) throw BadSize("J_k needs k >= 1");
  EMat<S> m = EMat<S>::Zero(k, k);
  for (int i = 0; i < k; ++i) m(i, k - 1 - i) = S(1);
  return m;
}

// S_N: J_N for even N; for odd N the antidiagonal with -2 in the center
template <typename S>
EMat<S> mat_S(int N) {
  if (N < 1) throw BadSize("S_N needs N >= 1");
  if (N % 2 == 0) return mat_J<S>(N);
  int n = N / 2;
  EMat<S> m = EMat<S>::Zero(N, N);
  for (int i = 0; i < n; ++i) {
    m(i, N - 1 - i) = S(1);
    m(N - 1 - i, i) = S(1);
  }
  m(n, n) = S(-2);
  return m;
}

// I'_r = diag(1, -1, 1, ..., (-1)^{r-1}); the inductive reading that makes
// I'_1 = (1) and the d_{r-1} recursion consistent
template <typename S>
EMat<S> mat_Iprime(int r) {
  EMat<S> m = EMat<S>::Zero(r, r);
  for (int i = 0; i < r; ++i) m(i, i) = (i % 2 == 0) ? S(1) : S(-1);
  return m;
}

// w_{i,j} = [[0, I_j], [I_i, 0]]
template <typename S>
EMat<S> mat_w(int i, int j) {
  EMat<S> m = EMat<S>::Zero(i + j, i + j);
  for (int a = 0; a < j; ++a) m(a, i + a) = S(1);
  for (int a = 0; a < i; ++a) m(j + a, a) = S(1);
  return m;
}

// the change of basis of the upper embedding (block sizes n,1,2(r-n-1),1,n)
template <typename S>
EMat<S> mat_Q(int n, int r) {
  if (!(n < r)) throw BadSize("Q needs n < r");
  int N = 2 * r, mid = 2 * (r - n - 1);
  EMat<S> m = EMat<S>::Zero(N, N);
  for (int i = 0; i < n; ++i) m(i, i) = S(1);
  m(n, n) = S(1);
  m(n, n + 1 + mid) = S(1);
  for (int i = 0; i < mid; ++i) m(n + 1 + i, n + 1 + i) = S(1);
  m(n + 1 + mid, n) = S(1);
  m(n + 1 + mid, n + 1 + mid) = S(-1);
  for (int i = 0; i < n; ++i) m(N - n + i, N - n + i) = S(1);
  return m;
}

// exact inverse: Gauss-Jordan with nonzero pivoting over Q(delta); the split
// algebra goes through its two rational components
EMat<QDelta> inverse(const EMat<QDelta>& m);
EMat<Rat> inverse(const EMat<Rat>& m);
EMat<SplitQ> inverse(const EMat<SplitQ>& m);

Rat det(const EMat<Rat>& m);
QDelta det(const EMat<QDelta>& m);
SplitQ det(const EMat<SplitQ>& m);

// membership in U_N for the form S_N: theta_t(g) S g = S
template <typename S>
bool in_unitary(const EMat<S>& g) {
  int N = static_cast<int>(g.rows());
  EMat<S> Sm = mat_S<S>(N);
  EMat<S> lhs = theta_t<S>(g) * Sm * g;
  return mats_equal<S>(lhs, Sm);
}

// j_{n,r}: U_2r -> U_{2n+1} (corner embedding), defined for n >= r
template <typename S>
EMat<S> embed_lower(const EMat<S>& g, int n, int r) {
  if (g.rows() != 2 * r || n < r) throw NotInSourceGroup("embed_lower needs 2r x 2r, n >= r");
  int N = 2 * n + 1, mid = 2 * (n - r) + 1;
  EMat<S> m = EMat<S>::Zero(N, N);
  m.block(0, 0, r, r) = g.block(0, 0, r, r);
  m.block(0, N - r, r, r) = g.block(0, r, r, r);
  m.block(N - r, 0, r, r) = g.block(r, 0, r, r);
  m.block(N - r, N - r, r, r) = g.block(r, r, r, r);
  m.block(r, r, mid, mid) = eye<S>(mid);
  return m;
}

// j^{n,r}: U_{2n+1} -> U_{2r} through conjugation by Q, defined for n < r
template <typename S>
EMat<S> embed_upper(const EMat<S>& g, int n, int r) {
  if (g.rows() != 2 * n + 1 || n >= r)
    throw NotInSourceGroup("embed_upper needs (2n+1) x (2n+1), n < r");
  int N = 2 * r, mid = 2 * (r - n - 1);
  EMat<S> inner = EMat<S>::Zero(N, N);
  // block rows/cols (n, 1, mid, n+1)
  inner.block(0, 0, n, n) = g.block(0, 0, n, n);
  inner.block(0, N - (n + 1), n, n + 1) = g.block(0, n, n, n + 1);
  inner(n, n) = S(1);
  inner.block(n + 1, n + 1, mid, mid) = eye<S>(mid);
  inner.block(N - (n + 1), 0, n + 1, n) = g.block(n, 0, n + 1, n);
  inner.block(N - (n + 1), N - (n + 1), n + 1, n + 1) = g.block(n, n, n + 1, n + 1);
  EMat<S> Q = mat_Q<S>(n, r);
  return Q * inner * inverse(Q);
}

// the stabilized vector e of the upper embedding
template <typename S>
EMat<S> stabilized_vector(int n, int r) {
  EMat<S> e = EMat<S>::Zero(2 * r, 1);
  e(n, 0) = S(1);
  e(2 * r - 1 - n, 0) = S(1);
  return e;
}

// ---- randomness -------------------------------------------------------------

Rat random_small_rat(std::mt19937_64& rng);
QDelta random_qdelta(std::mt19937_64& rng);
SplitQ random_splitq(std::mt19937_64& rng);

template <typename S>
S random_scalar(std::mt19937_64& rng);
template <>
inline Rat random_scalar<Rat>(std::mt19937_64& rng) { return random_small_rat(rng); }
template <>
inline QDelta random_scalar<QDelta>(std::mt19937_64& rng) { return random_qdelta(rng); }
template <>
inline SplitQ random_scalar<SplitQ>(std::mt19937_64& rng) { return random_splitq(rng); }

template <typename S>
EMat<S> random_matrix(int rows, int cols, std::mt19937_64& rng) {
  EMat<S> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_scalar<S>(rng);
  return m;
}

// random invertible matrix: unit-triangular L and U times a diagonal of
// units (and, for SplitQ, componentwise units)
template <typename S>
EMat<S> random_invertible(int n, std::mt19937_64& rng) {
  EMat<S> L = eye<S>(n), U = eye<S>(n), D = eye<S>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      L(i, j) = random_scalar<S>(rng);
      U(j, i) = random_scalar<S>(rng);
    }
  std::uniform_int_distribution<int> pm(0, 1);
  for (int i = 0; i < n; ++i) D(i, i) = pm(rng) ? S(1) : S(-2);
  return L * D * U;
}

// random element of U_N over Q(delta) or the split algebra, by the Cayley
// transform of a random theta-anti-Hermitian Lie algebra element (two charts
// multiplied for coverage of the group)
EMat<QDelta> random_unitary(int N, std::mt19937_64& rng);
EMat<SplitQ> random_unitary_split(int N, std::mt19937_64& rng);

template <typename S>
EMat<S> random_unitary_sem(int N, std::mt19937_64& rng);
template <>
inline EMat<QDelta> random_unitary_sem<QDelta>(int N, std::mt19937_64& rng) {
  return random_unitary(N, rng);
}
template <>
inline EMat<SplitQ> random_unitary_sem<SplitQ>(int N, std::mt19937_64& rng) {
  return random_unitary_split(N, rng);
}

}  // namespace plf
