#pragma once

// Symmetric second-rank tensors in 3-D stored as six tensor components in
// the order 11, 22, 33, 12, 13, 23. Off-diagonal entries are true tensor
// components (not engineering shears); contraction and norm run over the full
// 3x3 matrix, so off-diagonal products count twice.

#include <array>
#include <cmath>
#include <cstddef>

namespace dvp {

class SymTensor2 {
 public:
  static constexpr std::size_t kSize = 6;

  constexpr SymTensor2() = default;
  constexpr SymTensor2(double a11, double a22, double a33, double a12, double a13, double a23)
      : c_{a11, a22, a33, a12, a13, a23} {}
  explicit constexpr SymTensor2(const std::array<double, kSize>& c) : c_(c) {}

  static constexpr SymTensor2 identity() { return {1.0, 1.0, 1.0, 0.0, 0.0, 0.0}; }
  /// e_i (x) e_i for i in 0..2.
  static constexpr SymTensor2 unit_normal(std::size_t i) {
    SymTensor2 t;
    t.c_[i] = 1.0;
    return t;
  }

  constexpr double& operator[](std::size_t i) { return c_[i]; }
  constexpr double operator[](std::size_t i) const { return c_[i]; }
  constexpr const std::array<double, kSize>& components() const { return c_; }

  /// Index into the component array for the (i, j) entry, i, j in 0..2.
  static constexpr std::size_t index(std::size_t i, std::size_t j) {
    if (i == j) return i;
    const std::size_t lo = i < j ? i : j;
    const std::size_t hi = i < j ? j : i;
    return lo == 0 ? (hi == 1 ? 3 : 4) : 5;
  }

  /// 2 for off-diagonal slots, 1 on the diagonal.
  static constexpr double weight(std::size_t slot) { return slot < 3 ? 1.0 : 2.0; }

  constexpr SymTensor2& operator+=(const SymTensor2& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr SymTensor2& operator-=(const SymTensor2& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr SymTensor2& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend constexpr bool operator==(const SymTensor2&, const SymTensor2&) = default;

 private:
  std::array<double, kSize> c_{};
};

constexpr SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
constexpr SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
constexpr SymTensor2 operator-(SymTensor2 a) { return a *= -1.0; }
constexpr SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }
constexpr SymTensor2 operator*(SymTensor2 a, double s) { return a *= s; }

constexpr double trace(const SymTensor2& a) { return a[0] + a[1] + a[2]; }

constexpr SymTensor2 dev(SymTensor2 a) {
  const double m = trace(a) / 3.0;
  a[0] -= m;
  a[1] -= m;
  a[2] -= m;
  return a;
}

/// Double contraction A : B.
constexpr double contract(const SymTensor2& a, const SymTensor2& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + 2.0 * (a[3] * b[3] + a[4] * b[4] + a[5] * b[5]);
}

inline double norm(const SymTensor2& a) { return std::sqrt(contract(a, a)); }

}  // namespace dvp
