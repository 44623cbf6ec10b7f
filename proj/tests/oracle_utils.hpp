// Self-contained dense linear algebra used to cross-check the library from the
// outside. Everything here builds full 2^n x 2^n matrices and applies them by
// plain matrix-vector products, deliberately sharing no code path with the
// library's bit-twiddling kernels.
#ifndef IONLINK_TESTS_ORACLE_UTILS_HPP
#define IONLINK_TESTS_ORACLE_UTILS_HPP

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using cx = std::complex<double>;
using cvec = std::vector<cx>;
using cmat = std::vector<std::vector<cx>>;

inline cmat zeros(std::size_t rows, std::size_t cols) {
  return cmat(rows, std::vector<cx>(cols, cx{0.0, 0.0}));
}

inline cmat eye(std::size_t dim) {
  cmat m = zeros(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1.0;
  return m;
}

inline cmat matmul(const cmat& a, const cmat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  cmat out = zeros(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      const cx av = a[i][t];
      if (av == cx{}) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += av * b[t][j];
    }
  return out;
}

inline cmat kron(const cmat& a, const cmat& b) {
  const std::size_t ar = a.size(), ac = a[0].size();
  const std::size_t br = b.size(), bc = b[0].size();
  cmat out = zeros(ar * br, ac * bc);
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t p = 0; p < br; ++p)
        for (std::size_t q = 0; q < bc; ++q)
          out[i * br + p][j * bc + q] = a[i][j] * b[p][q];
  return out;
}

inline cvec matvec(const cmat& a, const cvec& v) {
  const std::size_t n = a.size(), m = v.size();
  cvec out(n, cx{});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out[i] += a[i][j] * v[j];
  return out;
}

inline cx inner(const cvec& u, const cvec& v) {
  cx s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline double fid(const cvec& u, const cvec& v) { return std::norm(inner(u, v)); }

inline double norm_sq(const cvec& v) {
  double s = 0.0;
  for (const cx& a : v) s += std::norm(a);
  return s;
}

// Bit of qubit q inside basis index i, with qubit 0 the most significant bit.
inline int bit_of(std::size_t index, int qubit, int n) {
  return static_cast<int>((index >> (n - 1 - qubit)) & 1u);
}

// Embeds a small gate acting on `targets` (in order) into the full register.
// full[i][j] = small[row][col] when i and j agree on every non-target bit,
// where row/col collect the target bits of i/j in target order.
inline cmat embed(int n, const std::vector<int>& targets, const cmat& small) {
  const std::size_t dim = std::size_t{1} << n;
  const int k = static_cast<int>(targets.size());
  cmat out = zeros(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      bool free_match = true;
      for (int q = 0; q < n && free_match; ++q) {
        bool is_target = false;
        for (int t : targets) is_target = is_target || (t == q);
        if (!is_target && bit_of(i, q, n) != bit_of(j, q, n)) free_match = false;
      }
      if (!free_match) continue;
      std::size_t row = 0, col = 0;
      for (int t = 0; t < k; ++t) {
        row = (row << 1) | static_cast<std::size_t>(bit_of(i, targets[t], n));
        col = (col << 1) | static_cast<std::size_t>(bit_of(j, targets[t], n));
      }
      out[i][j] = small[row][col];
    }
  }
  return out;
}

inline const cmat& m_id() {
  static const cmat m = {{1.0, 0.0}, {0.0, 1.0}};
  return m;
}
inline const cmat& m_x() {
  static const cmat m = {{0.0, 1.0}, {1.0, 0.0}};
  return m;
}
inline const cmat& m_z() {
  static const cmat m = {{1.0, 0.0}, {0.0, -1.0}};
  return m;
}
inline const cmat& m_h() {
  static const double r = 1.0 / std::sqrt(2.0);
  static const cmat m = {{r, r}, {r, -r}};
  return m;
}
inline const cmat& m_cnot() {
  static const cmat m = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  return m;
}
// Z-basis projectors and their X-basis counterparts.
inline const cmat& m_p0() {
  static const cmat m = {{1.0, 0.0}, {0.0, 0.0}};
  return m;
}
inline const cmat& m_p1() {
  static const cmat m = {{0.0, 0.0}, {0.0, 1.0}};
  return m;
}
inline const cmat& m_plus() {
  static const cmat m = {{0.5, 0.5}, {0.5, 0.5}};
  return m;
}
inline const cmat& m_minus() {
  static const cmat m = {{0.5, -0.5}, {-0.5, 0.5}};
  return m;
}

// Reduced density matrix over `keep` (in order), tracing out everything else.
inline cmat reduced_density(const cvec& v, int n, const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  const std::size_t rdim = std::size_t{1} << k;
  cmat rho = zeros(rdim, rdim);
  const std::size_t dim = v.size();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      bool traced_match = true;
      for (int q = 0; q < n && traced_match; ++q) {
        bool kept = false;
        for (int t : keep) kept = kept || (t == q);
        if (!kept && bit_of(i, q, n) != bit_of(j, q, n)) traced_match = false;
      }
      if (!traced_match) continue;
      std::size_t row = 0, col = 0;
      for (int t = 0; t < k; ++t) {
        row = (row << 1) | static_cast<std::size_t>(bit_of(i, keep[t], n));
        col = (col << 1) | static_cast<std::size_t>(bit_of(j, keep[t], n));
      }
      rho[row][col] += v[i] * std::conj(v[j]);
    }
  }
  return rho;
}

// <target| rho |target> for a pure target.
inline double density_overlap(const cmat& rho, const cvec& target) {
  cx s{};
  const std::size_t d = target.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      s += std::conj(target[i]) * rho[i][j] * target[j];
  return s.real();
}

// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels) {
  assert(panels % 2 == 0);
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline cvec bell_shared() {  // (|01> + |10>)/sqrt(2)
  const double r = 1.0 / std::sqrt(2.0);
  return {0.0, r, r, 0.0};
}
inline cvec bell_coincidence() {  // (|01> - |10>)/sqrt(2)
  const double r = 1.0 / std::sqrt(2.0);
  return {0.0, r, -r, 0.0};
}

}  // namespace oracle

#endif
