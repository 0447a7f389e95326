#pragma once

// Projective space algebra over a SmallField: normalized points, canonical
// row-reduced subspaces, span/meet, deterministic enumeration with dense
// integer point ids, and (semi)linear collineation application.
//
// Everything is a value; two equal subspaces compare bitwise equal because
// the stored basis is the unique reduced row echelon form of the row space.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "boserep/gf.hpp"

namespace boserep::pg {

using gf::Code;
using gf::SmallField;

constexpr int kMaxCoords = 9;

/// Homogeneous coordinate vector, at most 9 coordinates.
struct Vec {
  uint8_t n = 0;
  std::array<Code, kMaxCoords> c{};

  Code& operator[](int i) { return c[i]; }
  Code operator[](int i) const { return c[i]; }
  bool operator==(const Vec&) const = default;
  auto operator<=>(const Vec&) const = default;
};

inline Vec make_vec(std::initializer_list<Code> xs) {
  Vec v;
  v.n = static_cast<uint8_t>(xs.size());
  int i = 0;
  for (Code x : xs) v.c[i++] = x;
  return v;
}

inline bool is_zero(const Vec& v) {
  for (int i = 0; i < v.n; ++i)
    if (v.c[i]) return false;
  return true;
}

/// Scale so the first nonzero coordinate is 1; rejects the zero vector.
inline Vec normalize(const SmallField& F, Vec v) {
  int lead = -1;
  for (int i = 0; i < v.n; ++i)
    if (v.c[i]) { lead = i; break; }
  if (lead < 0) throw std::invalid_argument("cannot normalize the zero vector");
  if (v.c[lead] != 1) {
    Code s = F.inv(v.c[lead]);
    for (int i = lead; i < v.n; ++i) v.c[i] = F.mul(v.c[i], s);
  }
  return v;
}

inline Vec vec_add(const SmallField& F, const Vec& a, const Vec& b) {
  Vec r = a;
  for (int i = 0; i < a.n; ++i) r.c[i] = F.add(a.c[i], b.c[i]);
  return r;
}

inline Vec vec_scale(const SmallField& F, Code s, const Vec& a) {
  Vec r = a;
  for (int i = 0; i < a.n; ++i) r.c[i] = F.mul(s, a.c[i]);
  return r;
}

// --- point ids -------------------------------------------------------------
// Points are ordered lexicographically on coordinate vectors, coordinates
// compared by the field's canonical element order.  Normalized vectors with
// more leading zeros come first, so id 0 is (0,...,0,1).

inline uint64_t n_points(uint32_t q, int proj_dim) {
  uint64_t n = 0, p = 1;
  for (int i = 0; i <= proj_dim; ++i) { n += p; p *= q; }
  return n;
}

inline uint64_t rank_point(const SmallField& F, const Vec& v) {
  int lead = 0;
  while (lead < v.n && v.c[lead] == 0) ++lead;
  int tail = v.n - 1 - lead;  // number of free coordinates after the leading 1
  uint64_t block = 0, p = 1;
  for (int i = 0; i < tail; ++i) { block += p; p *= F.q; }
  // block = number of points with strictly more leading zeros
  uint64_t t = 0;
  for (int i = lead + 1; i < v.n; ++i) t = t * F.q + F.lex_rank_of(v.c[i]);
  return block + t;
}

inline Vec unrank_point(const SmallField& F, int ambient_dim, uint64_t id) {
  Vec v;
  v.n = static_cast<uint8_t>(ambient_dim + 1);
  uint64_t block = 0, p = 1;
  int tail = 0;
  while (block + p <= id) { block += p; p *= F.q; ++tail; }
  int lead = v.n - 1 - tail;
  for (int i = 0; i < lead; ++i) v.c[i] = 0;
  v.c[lead] = 1;
  uint64_t t = id - block;
  for (int i = v.n - 1; i > lead; --i) { v.c[i] = F.elem_at(t % F.q); t /= F.q; }
  return v;
}

// --- matrices ---------------------------------------------------------------

struct Mat {
  uint8_t rows = 0, cols = 0;
  std::array<Code, kMaxCoords * kMaxCoords> a{};

  Code& at(int r, int c) { return a[r * cols + c]; }
  Code at(int r, int c) const { return a[r * cols + c]; }
  bool operator==(const Mat&) const = default;
  auto operator<=>(const Mat&) const = default;
};

/// In-place reduced row echelon form on a row-major buffer; returns the rank.
inline int rref(const SmallField& F, Code* a, int rows, int cols) {
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i * cols + col]) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    Code s = F.inv(a[r * cols + col]);
    if (s != 1)
      for (int j = col; j < cols; ++j) a[r * cols + j] = F.mul(s, a[r * cols + j]);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Code f = a[i * cols + col];
      if (!f) continue;
      for (int j = col; j < cols; ++j)
        a[i * cols + j] = F.sub(a[i * cols + j], F.mul(f, a[r * cols + j]));
    }
    ++r;
  }
  return r;
}

/// A subspace in canonical form: basis rows in reduced row echelon form.
/// dim() is the projective dimension; rows = dim + 1.  rows = 0 encodes the
/// empty subspace.
struct Subspace {
  Mat basis;

  int ambient() const { return basis.cols - 1; }
  int dim() const { return static_cast<int>(basis.rows) - 1; }
  bool empty() const { return basis.rows == 0; }
  bool operator==(const Subspace&) const = default;
  auto operator<=>(const Subspace&) const = default;
};

inline Subspace subspace_from_rows(const SmallField& F, const std::vector<Vec>& rows) {
  if (rows.empty()) throw std::invalid_argument("need at least one row");
  int cols = rows[0].n;
  // incremental reduction: rank never exceeds cols <= 9, so a buffer of
  // kMaxCoords rows suffices if we re-reduce whenever it fills up
  std::array<Code, kMaxCoords * kMaxCoords> buf{};
  int r = 0;
  for (const auto& v : rows) {
    if (v.n != cols) throw std::invalid_argument("mixed ambient dimensions");
    for (int j = 0; j < cols; ++j) buf[r * cols + j] = v.c[j];
    ++r;
    if (r == kMaxCoords) {
      r = rref(F, buf.data(), r, cols);
      if (r == cols) break;  // full rank reached, span cannot grow
    }
  }
  int rank = rref(F, buf.data(), r, cols);
  Subspace s;
  s.basis.rows = static_cast<uint8_t>(rank);
  s.basis.cols = static_cast<uint8_t>(cols);
  for (int i = 0; i < rank * cols; ++i) s.basis.a[i] = buf[i];
  return s;
}

inline Vec row_of(const Mat& m, int r) {
  Vec v;
  v.n = m.cols;
  for (int j = 0; j < m.cols; ++j) v.c[j] = m.at(r, j);
  return v;
}

inline Subspace point_subspace(const SmallField& F, const Vec& p) {
  return subspace_from_rows(F, {normalize(F, p)});
}

inline Subspace span(const SmallField& F, const Subspace& s, const Subspace& t) {
  if (s.basis.cols != t.basis.cols) throw std::invalid_argument("mixed ambient dimensions");
  std::vector<Vec> rows;
  for (int i = 0; i < s.basis.rows; ++i) rows.push_back(row_of(s.basis, i));
  for (int i = 0; i < t.basis.rows; ++i) rows.push_back(row_of(t.basis, i));
  return subspace_from_rows(F, rows);
}

inline Subspace span_point(const SmallField& F, const Subspace& s, const Vec& p) {
  std::vector<Vec> rows;
  for (int i = 0; i < s.basis.rows; ++i) rows.push_back(row_of(s.basis, i));
  rows.push_back(p);
  return subspace_from_rows(F, rows);
}

inline Subspace span_points(const SmallField& F, const std::vector<Vec>& pts) {
  return subspace_from_rows(F, pts);
}

/// Exact intersection of row spaces (Zassenhaus): rref of [S|S; T|0], the
/// rows with zero left half carry the intersection on the right.
inline Subspace meet(const SmallField& F, const Subspace& s, const Subspace& t) {
  if (s.basis.cols != t.basis.cols) throw std::invalid_argument("mixed ambient dimensions");
  int c = s.basis.cols;
  int rows = s.basis.rows + t.basis.rows;
  std::array<Code, 2 * kMaxCoords * 2 * kMaxCoords> buf{};
  int w = 2 * c;
  for (int i = 0; i < s.basis.rows; ++i)
    for (int j = 0; j < c; ++j) {
      buf[i * w + j] = s.basis.at(i, j);
      buf[i * w + c + j] = s.basis.at(i, j);
    }
  for (int i = 0; i < t.basis.rows; ++i)
    for (int j = 0; j < c; ++j) buf[(s.basis.rows + i) * w + j] = t.basis.at(i, j);
  int rank = rref(F, buf.data(), rows, w);
  std::vector<Vec> inter;
  for (int i = 0; i < rank; ++i) {
    bool left_zero = true;
    for (int j = 0; j < c; ++j)
      if (buf[i * w + j]) { left_zero = false; break; }
    if (!left_zero) continue;
    Vec v;
    v.n = static_cast<uint8_t>(c);
    bool zero = true;
    for (int j = 0; j < c; ++j) {
      v.c[j] = buf[i * w + c + j];
      if (v.c[j]) zero = false;
    }
    if (!zero) inter.push_back(v);
  }
  if (inter.empty()) {
    Subspace e;
    e.basis.rows = 0;
    e.basis.cols = static_cast<uint8_t>(c);
    return e;
  }
  return subspace_from_rows(F, inter);
}

inline bool contains(const SmallField& F, const Subspace& s, const Vec& p) {
  // reduce p against the echelon basis
  Vec v = p;
  for (int i = 0; i < s.basis.rows; ++i) {
    int piv = 0;
    while (piv < s.basis.cols && s.basis.at(i, piv) == 0) ++piv;
    if (piv == s.basis.cols) continue;
    Code f = v.c[piv];
    if (!f) continue;
    for (int j = piv; j < s.basis.cols; ++j) v.c[j] = F.sub(v.c[j], F.mul(f, s.basis.at(i, j)));
  }
  return is_zero(v);
}

inline bool sub_contains(const SmallField& F, const Subspace& outer, const Subspace& inner) {
  for (int i = 0; i < inner.basis.rows; ++i)
    if (!contains(F, outer, row_of(inner.basis, i))) return false;
  return true;
}

/// All points of a subspace, sorted by point id (deterministic).
inline std::vector<Vec> points_of(const SmallField& F, const Subspace& s) {
  std::vector<Vec> out;
  int r = s.basis.rows;
  if (r == 0) return out;
  uint64_t count = n_points(F.q, s.dim());
  out.reserve(count);
  // normalized coefficient vectors over the basis rows: first nonzero = 1
  for (int lead = 0; lead < r; ++lead) {
    uint64_t tails = 1;
    for (int i = lead + 1; i < r; ++i) tails *= F.q;
    for (uint64_t t = 0; t < tails; ++t) {
      Vec acc = row_of(s.basis, lead);
      uint64_t tt = t;
      for (int i = lead + 1; i < r; ++i) {
        Code coef = static_cast<Code>(tt % F.q);
        tt /= F.q;
        if (coef) acc = vec_add(F, acc, vec_scale(F, coef, row_of(s.basis, i)));
      }
      out.push_back(normalize(F, acc));
    }
  }
  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    return rank_point(F, a) < rank_point(F, b);
  });
  return out;
}

inline std::vector<uint32_t> point_ids_of(const SmallField& F, const Subspace& s) {
  auto pts = points_of(F, s);
  std::vector<uint32_t> ids(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) ids[i] = static_cast<uint32_t>(rank_point(F, pts[i]));
  return ids;
}

/// The q+1 points of the line through two distinct points.
inline std::vector<Vec> line_points(const SmallField& F, const Vec& a, const Vec& b) {
  std::vector<Vec> out;
  out.reserve(F.q + 1);
  out.push_back(normalize(F, b));
  for (Code t = 0; t < F.q; ++t) out.push_back(normalize(F, vec_add(F, a, vec_scale(F, t, b))));
  return out;
}

// --- matrix algebra ---------------------------------------------------------

inline Mat mat_identity(int n) {
  Mat m;
  m.rows = m.cols = static_cast<uint8_t>(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

inline Mat mat_mul(const SmallField& F, const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
  Mat r;
  r.rows = a.rows;
  r.cols = b.cols;
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      Code f = a.at(i, k);
      if (!f) continue;
      for (int j = 0; j < b.cols; ++j) r.at(i, j) = F.add(r.at(i, j), F.mul(f, b.at(k, j)));
    }
  return r;
}

inline Mat mat_transpose(const Mat& a) {
  Mat r;
  r.rows = a.cols;
  r.cols = a.rows;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

inline Mat mat_inverse(const SmallField& F, const Mat& a) {
  if (a.rows != a.cols) throw std::invalid_argument("not square");
  int n = a.rows;
  std::array<Code, kMaxCoords * 2 * kMaxCoords> buf{};
  int w = 2 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) buf[i * w + j] = a.at(i, j);
    buf[i * w + n + i] = 1;
  }
  int rank = rref(F, buf.data(), n, w);
  if (rank != n) throw std::invalid_argument("matrix not invertible");
  Mat r;
  r.rows = r.cols = static_cast<uint8_t>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = buf[i * w + n + j];
  return r;
}

inline Vec vec_mat(const SmallField& F, const Vec& v, const Mat& m) {
  Vec r;
  r.n = m.cols;
  for (int j = 0; j < m.cols; ++j) r.c[j] = 0;
  for (int i = 0; i < v.n; ++i) {
    Code f = v.c[i];
    if (!f) continue;
    for (int j = 0; j < m.cols; ++j) r.c[j] = F.add(r.c[j], F.mul(f, m.at(i, j)));
  }
  return r;
}

/// Semilinear map: coordinates are first raised to q^frob_power (via the
/// supplied Frobenius table), then multiplied by the matrix.
struct Collineation {
  Mat m;
  int frob_power = 0;
  const std::vector<Code>* frob_table = nullptr;  // x -> x^q, required if frob_power > 0
};

inline Vec apply(const SmallField& F, const Collineation& c, Vec v) {
  if (c.frob_power) {
    for (int i = 0; i < v.n; ++i) {
      Code x = v.c[i];
      for (int t = 0; t < c.frob_power; ++t) x = (*c.frob_table)[x];
      v.c[i] = x;
    }
  }
  return normalize(F, vec_mat(F, v, c.m));
}

inline Subspace apply_sub(const SmallField& F, const Collineation& c, const Subspace& s) {
  std::vector<Vec> rows;
  rows.reserve(s.basis.rows);
  for (int i = 0; i < s.basis.rows; ++i) rows.push_back(apply(F, c, row_of(s.basis, i)));
  return subspace_from_rows(F, rows);
}

/// Determinant of the 3x3 matrix with the given rows; the collinearity test
/// for three points of a projective plane.
inline Code det3(const SmallField& F, const Vec& a, const Vec& b, const Vec& c) {
  auto m2 = [&](Code x, Code y, Code z, Code w) { return F.sub(F.mul(x, w), F.mul(y, z)); };
  Code d = F.mul(a.c[0], m2(b.c[1], b.c[2], c.c[1], c.c[2]));
  d = F.sub(d, F.mul(a.c[1], m2(b.c[0], b.c[2], c.c[0], c.c[2])));
  d = F.add(d, F.mul(a.c[2], m2(b.c[0], b.c[1], c.c[0], c.c[1])));
  return d;
}

/// Dual coordinates of the line through two distinct points of a plane.
inline Vec cross3(const SmallField& F, const Vec& a, const Vec& b) {
  Vec r;
  r.n = 3;
  r.c[0] = F.sub(F.mul(a.c[1], b.c[2]), F.mul(a.c[2], b.c[1]));
  r.c[1] = F.sub(F.mul(a.c[2], b.c[0]), F.mul(a.c[0], b.c[2]));
  r.c[2] = F.sub(F.mul(a.c[0], b.c[1]), F.mul(a.c[1], b.c[0]));
  return r;
}

inline Code dot(const SmallField& F, const Vec& a, const Vec& b) {
  Code s = 0;
  for (int i = 0; i < a.n; ++i) s = F.add(s, F.mul(a.c[i], b.c[i]));
  return s;
}

/// Solution space of the homogeneous system given by the rows (as a
/// subspace of the dual ambient): used to pass between a subspace and the
/// hyperplanes through it.
inline Subspace nullspace(const SmallField& F, const Mat& m) {
  std::array<Code, kMaxCoords * kMaxCoords> buf{};
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) buf[i * m.cols + j] = m.at(i, j);
  int rank = rref(F, buf.data(), m.rows, m.cols);
  // in rref, the pivot of row r is its first nonzero entry
  std::vector<int> pivots;
  std::vector<bool> is_pivot_col(m.cols, false);
  for (int r = 0; r < rank; ++r) {
    int c = 0;
    while (buf[r * m.cols + c] == 0) ++c;
    pivots.push_back(c);
    is_pivot_col[c] = true;
  }
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols; ++c)
    if (!is_pivot_col[c]) free_cols.push_back(c);
  std::vector<Vec> rows;
  for (int fc : free_cols) {
    Vec v;
    v.n = m.cols;
    for (int j = 0; j < m.cols; ++j) v.c[j] = 0;
    v.c[fc] = 1;
    for (int r = 0; r < rank; ++r) v.c[pivots[r]] = F.neg(buf[r * m.cols + fc]);
    rows.push_back(v);
  }
  if (rows.empty()) {
    Subspace e;
    e.basis.rows = 0;
    e.basis.cols = m.cols;
    return e;
  }
  return subspace_from_rows(F, rows);
}

/// The subspace cut out by a set of hyperplanes (dual vectors as rows).
inline Subspace subspace_from_dual(const SmallField& F, const std::vector<Vec>& duals) {
  Mat m;
  m.rows = static_cast<uint8_t>(duals.size());
  m.cols = duals[0].n;
  for (size_t i = 0; i < duals.size(); ++i)
    for (int j = 0; j < m.cols; ++j) m.at(static_cast<int>(i), j) = duals[i].c[j];
  return nullspace(F, m);
}

/// Hyperplanes through a subspace, as a subspace of the dual space.
inline Subspace dual_of(const SmallField& F, const Subspace& s) {
  return nullspace(F, s.basis);
}

}  // namespace boserep::pg
