#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace levylab {

// Vectors are tiny (d <= 4 in practice: deterministic quadrature runs in
// d in {1,2}, path simulation up to kMaxDim), so they live inline.
inline constexpr int kMaxDim = 4;

struct Vec {
  std::array<double, kMaxDim> a{};
  int dim = 1;

  Vec() = default;
  explicit Vec(int d) : dim(d) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("Vec: dimension out of range");
  }
  Vec(std::initializer_list<double> xs) : dim(static_cast<int>(xs.size())) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Vec: dimension out of range");
    int i = 0;
    for (double v : xs) a[i++] = v;
  }

  double& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return a[static_cast<std::size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim; ++i) a[i] += o.a[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < dim; ++i) a[i] -= o.a[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < dim; ++i) a[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec l, const Vec& r) { return l += r; }
  friend Vec operator-(Vec l, const Vec& r) { return l -= r; }
  friend Vec operator*(double s, Vec v) { return v *= s; }
  friend Vec operator-(Vec v) { return v *= -1.0; }

  friend bool operator==(const Vec& l, const Vec& r) {
    if (l.dim != r.dim) return false;
    for (int i = 0; i < l.dim; ++i)
      if (l.a[i] != r.a[i]) return false;
    return true;
  }
};

inline double dot(const Vec& l, const Vec& r) {
  double s = 0;
  for (int i = 0; i < l.dim; ++i) s += l.a[i] * r.a[i];
  return s;
}

inline double norm2(const Vec& v) { return dot(v, v); }
inline double norm(const Vec& v) { return std::sqrt(norm2(v)); }

inline Vec zero_vec(int dim) { return Vec(dim); }

// Unit vector along coordinate axis k.
inline Vec axis_vec(int dim, int k = 0) {
  Vec e(dim);
  e[k] = 1.0;
  return e;
}

}  // namespace levylab
