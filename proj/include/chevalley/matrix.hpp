#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf.hpp"

namespace chev {

// Square matrix, row-major, entries are canonical field codes.
struct Mat {
  int n = 0;
  std::vector<std::uint32_t> a;

  Mat() = default;
  explicit Mat(int n_) : n(n_), a(std::size_t(n_) * n_, 0) {}
  std::uint32_t& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
  std::uint32_t operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const { return a < o.a; }
};

inline Mat identity(int n) {
  Mat m(n);
  for (int i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

inline bool is_zero(const Mat& m) {
  for (auto v : m.a)
    if (v)
      return false;
  return true;
}

inline Mat mat_mul(const Field& F, const Mat& x, const Mat& y) {
  if (x.n != y.n)
    fail(Err::ShapeMismatch, "matrix sizes differ");
  int n = x.n;
  Mat r(n);
  if (F.is_prime_field()) {
    std::uint64_t p = F.p();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::uint64_t s = 0;
        for (int k = 0; k < n; ++k)
          s += std::uint64_t(x(i, k)) * y(k, j);
        r(i, j) = static_cast<std::uint32_t>(s % p);
      }
    return r;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::uint32_t s = 0;
      for (int k = 0; k < n; ++k)
        s = F.add(s, F.mul(x(i, k), y(k, j)));
      r(i, j) = s;
    }
  return r;
}

inline Mat mat_add(const Field& F, const Mat& x, const Mat& y) {
  if (x.n != y.n)
    fail(Err::ShapeMismatch, "matrix sizes differ");
  Mat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i)
    r.a[i] = F.add(x.a[i], y.a[i]);
  return r;
}

inline Mat mat_sub(const Field& F, const Mat& x, const Mat& y) {
  if (x.n != y.n)
    fail(Err::ShapeMismatch, "matrix sizes differ");
  Mat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i)
    r.a[i] = F.sub(x.a[i], y.a[i]);
  return r;
}

inline Mat mat_scale(const Field& F, std::uint32_t c, const Mat& x) {
  Mat r(x.n);
  for (std::size_t i = 0; i < r.a.size(); ++i)
    r.a[i] = F.mul(c, x.a[i]);
  return r;
}

inline Mat transpose(const Mat& x) {
  Mat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      r(j, i) = x(i, j);
  return r;
}

inline std::uint32_t trace(const Field& F, const Mat& x) {
  std::uint32_t s = 0;
  for (int i = 0; i < x.n; ++i)
    s = F.add(s, x(i, i));
  return s;
}

inline Mat bracket(const Field& F, const Mat& x, const Mat& y) {
  return mat_sub(F, mat_mul(F, x, y), mat_mul(F, y, x));
}

inline std::uint32_t det(const Field& F, Mat m) {
  int n = m.n;
  std::uint32_t d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m(r, c)) {
        piv = r;
        break;
      }
    if (piv < 0)
      return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j)
        std::swap(m(piv, j), m(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, m(c, c));
    std::uint32_t inv = F.inv(m(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (!m(r, c))
        continue;
      std::uint32_t f = F.mul(m(r, c), inv);
      for (int j = c; j < n; ++j)
        m(r, j) = F.sub(m(r, j), F.mul(f, m(c, j)));
    }
  }
  return d;
}

// Inverse by Gauss-Jordan; returns false when singular.
inline bool try_inverse(const Field& F, Mat m, Mat& out) {
  int n = m.n;
  Mat r = identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0)
      return false;
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(r(piv, j), r(c, j));
      }
    std::uint32_t inv = F.inv(m(c, c));
    for (int j = 0; j < n; ++j) {
      m(c, j) = F.mul(m(c, j), inv);
      r(c, j) = F.mul(r(c, j), inv);
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || !m(i, c))
        continue;
      std::uint32_t f = m(i, c);
      for (int j = 0; j < n; ++j) {
        m(i, j) = F.sub(m(i, j), F.mul(f, m(c, j)));
        r(i, j) = F.sub(r(i, j), F.mul(f, r(c, j)));
      }
    }
  }
  out = r;
  return true;
}

inline Mat inverse(const Field& F, const Mat& m) {
  Mat r;
  if (!try_inverse(F, m, r))
    fail(Err::DivisionByZero, "singular matrix");
  return r;
}

// Canonical byte encoding: fixed-width little-endian codes, row-major.
inline std::string mat_key(const Field& F, const Mat& m) {
  int w = F.q() <= 256 ? 1 : (F.q() <= 65536 ? 2 : 3);
  std::string s(m.a.size() * w, '\0');
  std::size_t k = 0;
  for (auto v : m.a)
    for (int b = 0; b < w; ++b)
      s[k++] = static_cast<char>((v >> (8 * b)) & 0xff);
  return s;
}

inline Mat mat_from_key(const Field& F, const std::string& key, int n) {
  int w = F.q() <= 256 ? 1 : (F.q() <= 65536 ? 2 : 3);
  Mat m(n);
  std::size_t k = 0;
  for (auto& v : m.a) {
    v = 0;
    for (int b = 0; b < w; ++b)
      v |= std::uint32_t(static_cast<unsigned char>(key[k++])) << (8 * b);
  }
  return m;
}

inline std::string format_mat(const Field& F, const Mat& m) {
  std::string s;
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    if (i)
      s += ',';
    s += F.format(m.a[i]);
  }
  return s;
}

inline int isqrt_exact(std::size_t v) {
  int r = 0;
  while (std::size_t(r + 1) * (r + 1) <= v)
    ++r;
  return std::size_t(r) * r == v ? r : -1;
}

inline Mat parse_mat(const Field& F, const std::string& text, int n = -1) {
  std::vector<std::uint32_t> vals;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto b = part.find_first_not_of(" \t\r");
    auto e = part.find_last_not_of(" \t\r");
    if (b == std::string::npos)
      fail(Err::ParseError, "empty matrix entry");
    vals.push_back(F.parse(part.substr(b, e - b + 1)));
  }
  int side = isqrt_exact(vals.size());
  if (side <= 0 || (n >= 0 && side != n))
    fail(Err::ShapeMismatch, "matrix entry count " + std::to_string(vals.size()) +
                                 " is not N^2 for the expected N");
  Mat m(side);
  m.a = std::move(vals);
  return m;
}

// Row-reduction utilities over F_q on dense row vectors.
class RowSpace {
public:
  RowSpace(const Field& F, std::size_t width) : F_(F), width_(width) {}
  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }

  // Reduced remainder of v against the current echelon basis.
  std::vector<std::uint32_t> reduce(std::vector<std::uint32_t> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::uint32_t c = v[pivots_[k]];
      if (!c)
        continue;
      const auto& row = rows_[k];
      for (std::size_t j = pivots_[k]; j < width_; ++j)
        if (row[j])
          v[j] = F_.sub(v[j], F_.mul(c, row[j]));
    }
    return v;
  }
  // Adds v; returns true when the rank grew.
  bool insert(std::vector<std::uint32_t> v) {
    v = reduce(std::move(v));
    std::size_t piv = width_;
    for (std::size_t j = 0; j < width_; ++j)
      if (v[j]) {
        piv = j;
        break;
      }
    if (piv == width_)
      return false;
    std::uint32_t inv = F_.inv(v[piv]);
    for (std::size_t j = piv; j < width_; ++j)
      v[j] = F_.mul(v[j], inv);
    // keep earlier rows reduced at the new pivot
    for (auto& row : rows_) {
      std::uint32_t c = row[piv];
      if (!c)
        continue;
      for (std::size_t j = piv; j < width_; ++j)
        if (v[j])
          row[j] = F_.sub(row[j], F_.mul(c, v[j]));
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

private:
  const Field& F_;
  std::size_t width_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t matrix_rank(const Field& F, const std::vector<std::vector<std::uint32_t>>& rows,
                               std::size_t width) {
  RowSpace rs(F, width);
  for (const auto& r : rows)
    rs.insert(r);
  return rs.rank();
}

// Basis of {x : A x = 0} for an m-by-w system, in reduced echelon order.
inline std::vector<std::vector<std::uint32_t>>
nullspace(const Field& F, std::vector<std::vector<std::uint32_t>> A, std::size_t w) {
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w && r < A.size(); ++c) {
    std::size_t piv = A.size();
    for (std::size_t i = r; i < A.size(); ++i)
      if (A[i][c]) {
        piv = i;
        break;
      }
    if (piv == A.size())
      continue;
    std::swap(A[piv], A[r]);
    std::uint32_t inv = F.inv(A[r][c]);
    for (auto& v : A[r])
      v = F.mul(v, inv);
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (i == r || !A[i][c])
        continue;
      std::uint32_t f = A[i][c];
      for (std::size_t j = 0; j < w; ++j)
        A[i][j] = F.sub(A[i][j], F.mul(f, A[r][j]));
    }
    pivcol.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(w, false);
  for (auto c : pivcol)
    is_piv[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t f = 0; f < w; ++f) {
    if (is_piv[f])
      continue;
    std::vector<std::uint32_t> x(w, 0);
    x[f] = 1;
    for (std::size_t k = 0; k < pivcol.size(); ++k)
      x[pivcol[k]] = F.neg(A[k][f]);
    basis.push_back(std::move(x));
  }
  return basis;
}

} // namespace chev
