#pragma once

// A-valued functions on a finite group: C_c(X, A) = A^X.

#include <cstddef>
#include <random>
#include <vector>

#include "ccrforge/algebra.hpp"
#include "ccrforge/group.hpp"

namespace ccrforge {

class CField {
 public:
  CField(FiniteGroup group, AlgebraShape shape)
      : group_(std::move(group)), shape_(std::move(shape)), values_(group_.size(), AlgebraElement::zero(shape_)) {}
  CField(FiniteGroup group, AlgebraShape shape, std::vector<AlgebraElement> values)
      : group_(std::move(group)), shape_(std::move(shape)), values_(std::move(values)) {
    if (values_.size() != group_.size())
      throw Error(ErrorKind::ShapeMismatch, "field has " + std::to_string(values_.size()) + " values for a group of order " +
                                                std::to_string(group_.size()));
    for (const auto& v : values_)
      if (!(v.shape() == shape_)) throw Error(ErrorKind::ShapeMismatch, "field value of the wrong algebra shape");
  }

  /// values[y] = a if y == x, else 0.
  static CField delta(const FiniteGroup& g, Element x, const AlgebraElement& a) {
    CField f(g, a.shape());
    f.values_[x] = a;
    return f;
  }
  /// values[x] = lambda[x] a.
  static CField pure(const FiniteGroup& g, const std::vector<Complex>& lambda, const AlgebraElement& a) {
    if (lambda.size() != g.size()) throw Error(ErrorKind::ShapeMismatch, "lambda length differs from group order");
    CField f(g, a.shape());
    for (Element x = 0; x < g.size(); ++x) f.values_[x] = lambda[x] * a;
    return f;
  }
  /// Coordinate basis vector number k: delta(k / M, E_{k % M}).
  static CField basis(const FiniteGroup& g, const AlgebraShape& shape, std::size_t k) {
    const std::size_t m = shape.dim();
    return delta(g, k / m, AlgebraElement::matrix_unit(shape, k % m));
  }
  static CField from_coordinates(const FiniteGroup& g, const AlgebraShape& shape, const std::vector<Complex>& coords) {
    const std::size_t m = shape.dim();
    if (coords.size() != g.size() * m) throw Error(ErrorKind::ShapeMismatch, "coordinate vector of the wrong length");
    CField f(g, shape);
    for (Element x = 0; x < g.size(); ++x) f.values_[x] = AlgebraElement::from_coordinates(shape, coords.data() + x * m);
    return f;
  }
  template <class Rng>
  static CField random(const FiniteGroup& g, const AlgebraShape& shape, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> coords(g.size() * shape.dim());
    for (auto& c : coords) c = Complex(u(rng), u(rng));
    return from_coordinates(g, shape, coords);
  }

  std::vector<Complex> coordinates() const {
    const std::size_t m = shape_.dim();
    std::vector<Complex> out(values_.size() * m);
    for (std::size_t x = 0; x < values_.size(); ++x) values_[x].write_coordinates(out.data() + x * m);
    return out;
  }

  const FiniteGroup& group() const noexcept { return group_; }
  const AlgebraShape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return values_.size(); }
  const AlgebraElement& operator[](Element x) const { return values_[x]; }
  AlgebraElement& operator[](Element x) { return values_[x]; }
  const std::vector<AlgebraElement>& values() const noexcept { return values_; }

  CField& operator+=(const CField& o) {
    require_same(o);
    for (std::size_t x = 0; x < values_.size(); ++x) values_[x] += o.values_[x];
    return *this;
  }
  CField& operator-=(const CField& o) {
    require_same(o);
    for (std::size_t x = 0; x < values_.size(); ++x) values_[x] -= o.values_[x];
    return *this;
  }
  CField& operator*=(Complex s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend CField operator+(CField a, const CField& b) { return a += b; }
  friend CField operator-(CField a, const CField& b) { return a -= b; }
  friend CField operator*(Complex s, CField f) { return f *= s; }

  /// Pointwise left multiplication (a f)(x) = a f(x).
  friend CField operator*(const AlgebraElement& a, CField f) {
    for (auto& v : f.values_) v = a * v;
    return f;
  }

 private:
  void require_same(const CField& o) const {
    if (!(group_ == o.group_) || !(shape_ == o.shape_))
      throw Error(ErrorKind::ShapeMismatch, "fields over different groups or algebras");
  }

  FiniteGroup group_;
  AlgebraShape shape_;
  std::vector<AlgebraElement> values_;
};

inline double max_abs_diff(const CField& a, const CField& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) m = std::max(m, max_abs_diff(a[x], b[x]));
  return m;
}

inline double max_abs(const CField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, max_abs(v));
  return m;
}

}  // namespace ccrforge
