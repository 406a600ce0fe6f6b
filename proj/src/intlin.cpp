#include "medial/intlin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace medial {

DenseIntMatrix DenseIntMatrix::identity(int n) {
  DenseIntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntVec DenseIntMatrix::col(int c) const {
  IntVec v(rows);
  for (int r = 0; r < rows; ++r) v[r] = at(r, c);
  return v;
}

DenseIntMatrix mat_mul(const DenseIntMatrix &x, const DenseIntMatrix &y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  DenseIntMatrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Int &xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        if (y.at(k, j) != 0) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

Int det(DenseIntMatrix m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: not square");
  int n = m.rows;
  if (n == 0) return 1;
  // Bareiss
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

void SparseIntMatrix::set(int r, int c, Int v) {
  if (r < 0 || r >= rows || c < 0 || c >= cols)
    throw std::out_of_range("SparseIntMatrix::set");
  if (v == 0)
    entries.erase({r, c});
  else
    entries[{r, c}] = std::move(v);
}

void SparseIntMatrix::add(int r, int c, const Int &v) {
  if (v == 0) return;
  auto it = entries.find({r, c});
  if (it == entries.end()) {
    set(r, c, v);
  } else {
    it->second += v;
    if (it->second == 0) entries.erase(it);
  }
}

Int SparseIntMatrix::get(int r, int c) const {
  auto it = entries.find({r, c});
  return it == entries.end() ? Int(0) : it->second;
}

DenseIntMatrix SparseIntMatrix::dense() const {
  DenseIntMatrix m(rows, cols);
  for (auto &[rc, v] : entries) m.at(rc.first, rc.second) = v;
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const DenseIntMatrix &m) {
  SparseIntMatrix s(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (m.at(r, c) != 0) s.entries[{r, c}] = m.at(r, c);
  return s;
}

IntVec SparseIntMatrix::apply(const IntVec &v) const {
  if ((int)v.size() != cols) throw std::invalid_argument("apply: size mismatch");
  IntVec out(rows);
  for (auto &[rc, val] : entries) out[rc.first] += val * v[rc.second];
  return out;
}

std::string SparseIntMatrix::debug_text() const {
  std::ostringstream os;
  os << rows << ' ' << cols << '\n';
  for (auto &[rc, v] : entries) os << rc.first << ' ' << rc.second << ' ' << v << '\n';
  return os.str();
}

int SnfResult::rank() const {
  int r = 0;
  for (auto &d : diag)
    if (d != 0) ++r;
  return r;
}

namespace {

Int iabs(const Int &x) { return x < 0 ? Int(-x) : x; }

struct SnfWork {
  DenseIntMatrix A, U, V;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < A.cols; ++c) std::swap(A.at(i, c), A.at(j, c));
    for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < A.rows; ++r) std::swap(A.at(r, i), A.at(r, j));
    for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
  }
  void row_addmul(int dst, int src, const Int &q) {  // row dst += q * row src
    if (q == 0) return;
    for (int c = 0; c < A.cols; ++c) A.at(dst, c) += q * A.at(src, c);
    for (int c = 0; c < U.cols; ++c) U.at(dst, c) += q * U.at(src, c);
  }
  void col_addmul(int dst, int src, const Int &q) {
    if (q == 0) return;
    for (int r = 0; r < A.rows; ++r) A.at(r, dst) += q * A.at(r, src);
    for (int r = 0; r < V.rows; ++r) V.at(r, dst) += q * V.at(r, src);
  }
  void row_negate(int i) {
    for (int c = 0; c < A.cols; ++c) A.at(i, c) = -A.at(i, c);
    for (int c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
  }
};

}  // namespace

SnfResult smith_normal_form(DenseIntMatrix A0) {
  SnfWork w{std::move(A0), DenseIntMatrix::identity(0), DenseIntMatrix::identity(0)};
  w.U = DenseIntMatrix::identity(w.A.rows);
  w.V = DenseIntMatrix::identity(w.A.cols);
  int n = std::min(w.A.rows, w.A.cols);

  for (int t = 0; t < n; ++t) {
    // least-absolute-value pivot in the trailing submatrix
    int pi = -1, pj = -1;
    Int best;
    for (int i = t; i < w.A.rows; ++i)
      for (int j = t; j < w.A.cols; ++j) {
        const Int &x = w.A.at(i, j);
        if (x == 0) continue;
        Int ax = iabs(x);
        if (pi < 0 || ax < best) { best = ax; pi = i; pj = j; }
      }
    if (pi < 0) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < w.A.rows; ++i) {
        if (w.A.at(i, t) == 0) continue;
        Int q = w.A.at(i, t) / w.A.at(t, t);
        w.row_addmul(i, t, -q);
        if (w.A.at(i, t) != 0) {  // remainder smaller than pivot
          w.row_swap(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < w.A.cols; ++j) {
        if (w.A.at(t, j) == 0) continue;
        Int q = w.A.at(t, j) / w.A.at(t, t);
        w.col_addmul(j, t, -q);
        if (w.A.at(t, j) != 0) {
          w.col_swap(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block
      bool divides = true;
      for (int i = t + 1; i < w.A.rows && divides; ++i)
        for (int j = t + 1; j < w.A.cols && divides; ++j)
          if (w.A.at(i, j) % w.A.at(t, t) != 0) {
            w.row_addmul(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (w.A.at(t, t) < 0) w.row_negate(t);
  }

  SnfResult res;
  res.diag.resize(n);
  for (int t = 0; t < n; ++t) res.diag[t] = w.A.at(t, t);
  res.U = std::move(w.U);
  res.V = std::move(w.V);
  return res;
}

SnfResult smith_normal_form(const SparseIntMatrix &A) {
  return smith_normal_form(A.dense());
}

std::vector<IntVec> kernel_basis(const DenseIntMatrix &A) {
  SnfResult s = smith_normal_form(A);
  int r = s.rank();
  std::vector<IntVec> basis;
  for (int j = r; j < A.cols; ++j) basis.push_back(s.V.col(j));
  return basis;
}

std::vector<IntVec> kernel_basis(const SparseIntMatrix &A) {
  return kernel_basis(A.dense());
}

std::string HomologyResult::text() const {
  std::ostringstream os;
  if (betti == 0 && torsion.empty()) return "0";
  bool first = true;
  if (betti > 0) {
    if (betti == 1)
      os << "Z";
    else
      os << "Z^" << betti;
    first = false;
  }
  for (auto &d : torsion) {
    if (!first) os << " (+) ";
    os << "Z_" << d;
    first = false;
  }
  return os.str();
}

namespace {

// Express each image generator in kernel-basis coordinates.
// Throws when a generator is not in the kernel lattice.
DenseIntMatrix image_in_kernel_coords(const std::vector<IntVec> &kernel,
                                      const std::vector<IntVec> &image) {
  int k = (int)kernel.size();
  int amb = k ? (int)kernel[0].size() : (image.empty() ? 0 : (int)image[0].size());
  DenseIntMatrix K(amb, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < amb; ++i) K.at(i, j) = kernel[j][i];
  SnfResult s = smith_normal_form(K);
  int r = s.rank();
  if (r != k) throw std::runtime_error("kernel basis is not independent");

  DenseIntMatrix Y(k, (int)image.size());
  for (int g = 0; g < (int)image.size(); ++g) {
    if ((int)image[g].size() != amb)
      throw std::invalid_argument("image generator dimension mismatch");
    IntVec c(amb);
    for (int i = 0; i < amb; ++i) {
      Int acc = 0;
      for (int j = 0; j < amb; ++j) acc += s.U.at(i, j) * image[g][j];
      c[i] = acc;
    }
    IntVec y(k);
    for (int i = 0; i < amb; ++i) {
      if (i < k) {
        if (s.diag[i] == 0 || c[i] % s.diag[i] != 0)
          throw std::runtime_error("image not inside kernel");
        y[i] = c[i] / s.diag[i];
      } else if (c[i] != 0) {
        throw std::runtime_error("image not inside kernel");
      }
    }
    for (int i = 0; i < k; ++i) {
      Int acc = 0;
      for (int j = 0; j < k; ++j) acc += s.V.at(i, j) * y[j];
      Y.at(i, g) = acc;
    }
  }
  return Y;
}

}  // namespace

HomologyResult quotient_structure(const std::vector<IntVec> &kernel,
                                  const std::vector<IntVec> &image) {
  int k = (int)kernel.size();
  HomologyResult res;
  if (image.empty()) {
    res.betti = k;
    return res;
  }
  DenseIntMatrix Y = image_in_kernel_coords(kernel, image);
  SnfResult s = smith_normal_form(std::move(Y));
  int r = s.rank();
  res.betti = k - r;
  for (int i = 0; i < r; ++i)
    if (s.diag[i] > 1) res.torsion.push_back(s.diag[i]);
  return res;
}

std::optional<Int> class_order(const IntVec &v, const std::vector<IntVec> &kernel,
                               const std::vector<IntVec> &image) {
  int k = (int)kernel.size();
  std::vector<IntVec> gens = image;
  gens.insert(gens.begin(), v);  // column 0 = v, gets the same coordinate change
  DenseIntMatrix all = image_in_kernel_coords(kernel, gens);
  DenseIntMatrix Y(k, all.cols - 1);
  IntVec vk(k);
  for (int i = 0; i < k; ++i) {
    vk[i] = all.at(i, 0);
    for (int j = 1; j < all.cols; ++j) Y.at(i, j - 1) = all.at(i, j);
  }
  SnfResult s = smith_normal_form(std::move(Y));
  int r = s.rank();
  IntVec w(k);
  for (int i = 0; i < k; ++i) {
    Int acc = 0;
    for (int j = 0; j < k; ++j) acc += s.U.at(i, j) * vk[j];
    w[i] = acc;
  }
  Int order = 1;
  for (int i = 0; i < k; ++i) {
    if (i < r) {
      Int g = boost::multiprecision::gcd(s.diag[i], iabs(w[i]));
      order = boost::multiprecision::lcm(order, Int(s.diag[i] / g));
    } else if (w[i] != 0) {
      return std::nullopt;  // infinite order
    }
  }
  return order;
}

std::vector<IntVec> column_lattice_basis(int rows, const std::vector<IntVec> &columns) {
  // echelon by topmost pivot; gcd reduction via division-with-swap
  std::map<int, IntVec> basis;  // pivot row -> vector
  for (IntVec v : columns) {
    if ((int)v.size() != rows) throw std::invalid_argument("column size mismatch");
    for (;;) {
      int p = -1;
      for (int i = 0; i < rows; ++i)
        if (v[i] != 0) { p = i; break; }
      if (p < 0) break;
      auto it = basis.find(p);
      if (it == basis.end()) {
        if (v[p] < 0)
          for (auto &x : v) x = -x;
        basis.emplace(p, std::move(v));
        break;
      }
      IntVec &b = it->second;
      Int q = v[p] / b[p];
      for (int i = p; i < rows; ++i) v[i] -= q * b[i];
      if (v[p] != 0) std::swap(v, b);  // remainder has smaller pivot value
    }
  }
  std::vector<IntVec> out;
  for (auto &[p, b] : basis) out.push_back(std::move(b));
  return out;
}

long rank_mod_p(const SparseIntMatrix &A, long p) {
  if (p < 2) throw std::invalid_argument("rank_mod_p: p must be >= 2");
  std::vector<std::vector<long>> m(A.rows, std::vector<long>(A.cols, 0));
  for (auto &[rc, v] : A.entries) {
    Int r = v % p;
    if (r < 0) r += p;
    m[rc.first][rc.second] = r.convert_to<long>();
  }
  auto inv_mod = [p](long a) {
    long r = 1, b = a % p, e = p - 2;
    while (e) {
      if (e & 1) r = (__int128)r * b % p;
      b = (__int128)b * b % p;
      e >>= 1;
    }
    return r;
  };
  long rank = 0;
  int row = 0;
  for (int c = 0; c < A.cols && row < A.rows; ++c) {
    int piv = -1;
    for (int i = row; i < A.rows; ++i)
      if (m[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    long inv = inv_mod(m[row][c]);
    for (int j = c; j < A.cols; ++j) m[row][j] = (__int128)m[row][j] * inv % p;
    for (int i = 0; i < A.rows; ++i) {
      if (i == row || m[i][c] == 0) continue;
      long f = m[i][c];
      for (int j = c; j < A.cols; ++j) {
        m[i][j] = (m[i][j] - (__int128)f * m[row][j]) % p;
        if (m[i][j] < 0) m[i][j] += p;
      }
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace medial
