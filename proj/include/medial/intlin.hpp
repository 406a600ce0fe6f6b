#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace medial {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

/// Dense integer matrix, row-major. Working representation for the
/// elimination algorithms; the public sparse type converts to/from it.
struct DenseIntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;  // rows*cols

  DenseIntMatrix() = default;
  DenseIntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
  Int &at(int r, int c) { return a[size_t(r) * cols + c]; }
  const Int &at(int r, int c) const { return a[size_t(r) * cols + c]; }
  static DenseIntMatrix identity(int n);
  IntVec col(int c) const;
};

DenseIntMatrix mat_mul(const DenseIntMatrix &x, const DenseIntMatrix &y);
Int det(DenseIntMatrix m);  // fraction-free Gaussian elimination

struct SparseIntMatrix {
  int rows = 0;
  int cols = 0;
  std::map<std::pair<int, int>, Int> entries;  // nonzero only

  SparseIntMatrix() = default;
  SparseIntMatrix(int r, int c) : rows(r), cols(c) {}
  void set(int r, int c, Int v);
  void add(int r, int c, const Int &v);
  Int get(int r, int c) const;
  DenseIntMatrix dense() const;
  static SparseIntMatrix from_dense(const DenseIntMatrix &m);
  IntVec apply(const IntVec &v) const;  // matrix * vector
  std::string debug_text() const;       // "r c" header + "i j v" triples
};

/// U*A*V = D with D diagonal, d_1 | d_2 | ... >= 0, det(U) = det(V) = +-1.
struct SnfResult {
  IntVec diag;  // length min(rows, cols)
  DenseIntMatrix U;
  DenseIntMatrix V;
  int rank() const;
};

SnfResult smith_normal_form(const SparseIntMatrix &A);
SnfResult smith_normal_form(DenseIntMatrix A);

/// Basis of the saturated integer null space {v : A v = 0}.
std::vector<IntVec> kernel_basis(const SparseIntMatrix &A);
std::vector<IntVec> kernel_basis(const DenseIntMatrix &A);

/// Betti number + torsion coefficients (divisibility order, no 1s or 0s).
struct HomologyResult {
  long betti = 0;
  std::vector<Int> torsion;
  bool operator==(const HomologyResult &) const = default;
  std::string text() const;  // "Z^b (+) Z_{d1} (+) ..."
};

/// Structure of span(kernel)/span(image). Throws std::runtime_error
/// ("image not inside kernel") when a generator leaves the kernel lattice.
HomologyResult quotient_structure(const std::vector<IntVec> &kernel,
                                  const std::vector<IntVec> &image);

/// Least m >= 1 with m*v in the image lattice, or nullopt for infinite order.
std::optional<Int> class_order(const IntVec &v, const std::vector<IntVec> &kernel,
                               const std::vector<IntVec> &image);

/// Echelon basis of the lattice spanned by the given columns
/// (unimodular column operations only).
std::vector<IntVec> column_lattice_basis(int rows, const std::vector<IntVec> &columns);

/// Rank of A over the prime field F_p.
long rank_mod_p(const SparseIntMatrix &A, long p);

}  // namespace medial
