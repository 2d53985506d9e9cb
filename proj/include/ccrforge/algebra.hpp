#pragma once

// Finite-dimensional C*-algebras A = M_{n_1}(C) + ... + M_{n_B}(C).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ccrforge/error.hpp"
#include "ccrforge/linalg.hpp"
#include "ccrforge/report.hpp"

namespace ccrforge {

inline constexpr double kUnitarityTol = 1e-12;

/// Block sizes of a direct sum of full matrix algebras.
class AlgebraShape {
 public:
  AlgebraShape() : AlgebraShape(std::vector<std::size_t>{1}) {}
  explicit AlgebraShape(std::vector<std::size_t> blocks) {
    if (blocks.empty()) throw Error(ErrorKind::ShapeMismatch, "algebra needs at least one block");
    for (std::size_t b : blocks)
      if (b == 0) throw Error(ErrorKind::ShapeMismatch, "block size 0");
    auto data = std::make_shared<Data>();
    std::size_t off = 0;
    for (std::size_t b : blocks) {
      data->offsets.push_back(off);
      off += b * b;
    }
    data->dim = off;
    data->blocks = std::move(blocks);
    data_ = std::move(data);
  }

  static AlgebraShape scalar() { return AlgebraShape(std::vector<std::size_t>{1}); }

  const std::vector<std::size_t>& blocks() const noexcept { return data_->blocks; }
  std::size_t block_count() const noexcept { return data_->blocks.size(); }
  std::size_t block_size(std::size_t b) const { return data_->blocks[b]; }
  /// Complex dimension, the sum of n_b^2.
  std::size_t dim() const noexcept { return data_->dim; }
  std::size_t offset(std::size_t b) const { return data_->offsets[b]; }
  /// Sum of block sizes: the trace of the unit.
  std::size_t unit_trace() const {
    std::size_t s = 0;
    for (std::size_t b : blocks()) s += b;
    return s;
  }
  std::size_t max_block() const { return *std::max_element(blocks().begin(), blocks().end()); }
  bool is_scalar() const { return blocks().size() == 1 && blocks()[0] == 1; }

  struct Unit {
    std::size_t block, row, col;
  };
  /// Matrix unit p in the flattened basis: p = offset(block) + row * n + col.
  Unit unit_of(std::size_t p) const {
    std::size_t b = 0;
    while (b + 1 < block_count() && offset(b + 1) <= p) ++b;
    const std::size_t local = p - offset(b);
    return {b, local / block_size(b), local % block_size(b)};
  }

  friend bool operator==(const AlgebraShape& a, const AlgebraShape& b) {
    return a.data_ == b.data_ || a.data_->blocks == b.data_->blocks;
  }

 private:
  struct Data {
    std::vector<std::size_t> blocks;
    std::vector<std::size_t> offsets;
    std::size_t dim = 0;
  };
  std::shared_ptr<const Data> data_;
};

class AlgebraElement {
 public:
  AlgebraElement() : AlgebraElement(AlgebraShape::scalar()) {}
  explicit AlgebraElement(AlgebraShape shape) : shape_(std::move(shape)) {
    for (std::size_t b : shape_.blocks()) mats_.emplace_back(b, b);
  }
  AlgebraElement(AlgebraShape shape, std::vector<Matrix> mats) : shape_(std::move(shape)), mats_(std::move(mats)) {
    if (mats_.size() != shape_.block_count())
      throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(shape_.block_count()) + " blocks, got " +
                                                std::to_string(mats_.size()));
    for (std::size_t b = 0; b < mats_.size(); ++b)
      if (mats_[b].rows() != shape_.block_size(b) || mats_[b].cols() != shape_.block_size(b))
        throw Error(ErrorKind::ShapeMismatch, "block " + std::to_string(b) + " is " + std::to_string(mats_[b].rows()) +
                                                  "x" + std::to_string(mats_[b].cols()) + ", expected " +
                                                  std::to_string(shape_.block_size(b)));
  }

  static AlgebraElement zero(const AlgebraShape& shape) { return AlgebraElement(shape); }
  static AlgebraElement scalar(const AlgebraShape& shape, Complex c) {
    AlgebraElement a(shape);
    for (std::size_t b = 0; b < shape.block_count(); ++b)
      for (std::size_t i = 0; i < shape.block_size(b); ++i) a.mats_[b](i, i) = c;
    return a;
  }
  static AlgebraElement unit(const AlgebraShape& shape) { return scalar(shape, 1.0); }
  static AlgebraElement matrix_unit(const AlgebraShape& shape, std::size_t p) {
    AlgebraElement a(shape);
    const auto u = shape.unit_of(p);
    a.mats_[u.block](u.row, u.col) = 1.0;
    return a;
  }
  /// Identity of block b, zero elsewhere: a minimal central projection.
  static AlgebraElement block_unit(const AlgebraShape& shape, std::size_t b) {
    AlgebraElement a(shape);
    for (std::size_t i = 0; i < shape.block_size(b); ++i) a.mats_[b](i, i) = 1.0;
    return a;
  }

  static AlgebraElement from_coordinates(const AlgebraShape& shape, const Complex* coords) {
    AlgebraElement a(shape);
    for (std::size_t b = 0; b < shape.block_count(); ++b)
      std::copy(coords + shape.offset(b), coords + shape.offset(b) + shape.block_size(b) * shape.block_size(b),
                a.mats_[b].data().begin());
    return a;
  }
  void write_coordinates(Complex* out) const {
    for (std::size_t b = 0; b < mats_.size(); ++b) std::copy(mats_[b].data().begin(), mats_[b].data().end(), out + shape_.offset(b));
  }
  Complex coordinate(std::size_t p) const {
    const auto u = shape_.unit_of(p);
    return mats_[u.block](u.row, u.col);
  }

  const AlgebraShape& shape() const noexcept { return shape_; }
  const std::vector<Matrix>& blocks() const noexcept { return mats_; }
  const Matrix& block(std::size_t b) const { return mats_[b]; }
  Matrix& block(std::size_t b) { return mats_[b]; }

  AlgebraElement adjoint() const {
    AlgebraElement out(shape_);
    for (std::size_t b = 0; b < mats_.size(); ++b) out.mats_[b] = mats_[b].adjoint();
    return out;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    require_same(o);
    for (std::size_t b = 0; b < mats_.size(); ++b) mats_[b] += o.mats_[b];
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    require_same(o);
    for (std::size_t b = 0; b < mats_.size(); ++b) mats_[b] -= o.mats_[b];
    return *this;
  }
  AlgebraElement& operator*=(Complex s) {
    for (auto& m : mats_) m *= s;
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    a.require_same(b);
    AlgebraElement out(a.shape_);
    for (std::size_t k = 0; k < a.mats_.size(); ++k) out.mats_[k] = a.mats_[k] * b.mats_[k];
    return out;
  }

 private:
  void require_same(const AlgebraElement& o) const {
    if (!(shape_ == o.shape_)) throw Error(ErrorKind::ShapeMismatch, "algebra elements of different shapes");
  }

  AlgebraShape shape_;
  std::vector<Matrix> mats_;
};

/// Largest entrywise deviation; infinite across shapes.
inline double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.shape() == b.shape())) return INFINITY;
  double m = 0.0;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) m = std::max(m, max_abs_diff(a.block(k), b.block(k)));
  return m;
}

inline double max_abs(const AlgebraElement& a) {
  double m = 0.0;
  for (const auto& blk : a.blocks()) m = std::max(m, max_abs(blk));
  return m;
}

/// C*-norm of A: the largest singular value over all blocks.
inline double operator_norm(const AlgebraElement& a) {
  double m = 0.0;
  for (const auto& blk : a.blocks()) m = std::max(m, spectral_norm(blk));
  return m;
}

/// Unnormalized trace summed over blocks; faithful and invariant under *-automorphisms.
inline Complex trace_functional(const AlgebraElement& a) {
  Complex t{};
  for (const auto& blk : a.blocks())
    for (std::size_t i = 0; i < blk.rows(); ++i) t += blk(i, i);
  return t;
}

inline double unitarity_defect(const AlgebraElement& u) {
  const auto one = AlgebraElement::unit(u.shape());
  return std::max(max_abs_diff(u.adjoint() * u, one), max_abs_diff(u * u.adjoint(), one));
}

/// *-automorphism in factored form: sigma(a)_b = u_b a_{perm[b]} u_b^*.
struct Automorphism {
  AlgebraShape shape;
  std::vector<std::size_t> perm;
  AlgebraElement u;

  static Automorphism identity(const AlgebraShape& shape) {
    std::vector<std::size_t> perm(shape.block_count());
    for (std::size_t b = 0; b < perm.size(); ++b) perm[b] = b;
    return {shape, std::move(perm), AlgebraElement::unit(shape)};
  }
  static Automorphism inner(const AlgebraElement& u) {
    auto s = identity(u.shape());
    s.u = u;
    return s;
  }

  bool is_identity_perm() const {
    for (std::size_t b = 0; b < perm.size(); ++b)
      if (perm[b] != b) return false;
    return true;
  }

  AlgebraElement apply(const AlgebraElement& a) const {
    if (!(a.shape() == shape)) throw Error(ErrorKind::ShapeMismatch, "automorphism applied across shapes");
    std::vector<Matrix> mats;
    mats.reserve(perm.size());
    for (std::size_t b = 0; b < perm.size(); ++b) {
      const Matrix& ub = u.block(b);
      mats.push_back(ub * a.block(perm[b]) * ub.adjoint());
    }
    return AlgebraElement(shape, std::move(mats));
  }

  Automorphism inverse() const {
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t b = 0; b < perm.size(); ++b) inv[perm[b]] = b;
    std::vector<Matrix> mats(perm.size());
    for (std::size_t g = 0; g < perm.size(); ++g) mats[g] = u.block(inv[g]).adjoint();
    return {shape, std::move(inv), AlgebraElement(shape, std::move(mats))};
  }
};

inline AlgebraElement apply_automorphism(const Automorphism& s, const AlgebraElement& a) { return s.apply(a); }

/// The automorphism a -> second(first(a)).
inline Automorphism compose(const Automorphism& second, const Automorphism& first) {
  if (!(second.shape == first.shape)) throw Error(ErrorKind::ShapeMismatch, "composing automorphisms across shapes");
  const std::size_t nb = first.perm.size();
  std::vector<std::size_t> perm(nb);
  std::vector<Matrix> mats(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    perm[b] = first.perm[second.perm[b]];
    mats[b] = second.u.block(b) * first.u.block(second.perm[b]);
  }
  return {first.shape, std::move(perm), AlgebraElement(first.shape, std::move(mats))};
}

/// Checks block compatibility and unitarity (throwing on failure), then measures
/// multiplicativity and adjoint preservation on every pair of matrix units.
inline AxiomReport validate_automorphism(const Automorphism& s, double tol = kDefaultTol) {
  const auto& shape = s.shape;
  if (s.perm.size() != shape.block_count())
    throw Error(ErrorKind::SizeMismatch, "permutation has " + std::to_string(s.perm.size()) + " entries for " +
                                             std::to_string(shape.block_count()) + " blocks");
  std::vector<bool> hit(s.perm.size());
  for (std::size_t b = 0; b < s.perm.size(); ++b) {
    if (s.perm[b] >= s.perm.size() || hit[s.perm[b]])
      throw Error(ErrorKind::SizeMismatch, "block map is not a permutation");
    hit[s.perm[b]] = true;
    if (shape.block_size(s.perm[b]) != shape.block_size(b))
      throw Error(ErrorKind::SizeMismatch, "block " + std::to_string(s.perm[b]) + " (size " +
                                               std::to_string(shape.block_size(s.perm[b])) + ") sent to slot " +
                                               std::to_string(b) + " (size " + std::to_string(shape.block_size(b)) +
                                               ")");
  }
  if (!(s.u.shape() == shape)) throw Error(ErrorKind::ShapeMismatch, "unitary of the wrong shape");
  const double defect = unitarity_defect(s.u);
  if (defect > kUnitarityTol) throw Error(ErrorKind::NotUnitary, "u*u - 1 deviates by " + std::to_string(defect));

  AxiomReport report;
  report.subject = "automorphism";
  report.tol = tol;
  ResidualMax mult("multiplicative"), star("adjoint");
  const std::size_t m = shape.dim();
  std::vector<AlgebraElement> images;
  images.reserve(m);
  for (std::size_t p = 0; p < m; ++p) images.push_back(s.apply(AlgebraElement::matrix_unit(shape, p)));
  for (std::size_t p = 0; p < m; ++p) {
    const auto ep = AlgebraElement::matrix_unit(shape, p);
    star.observe(max_abs_diff(s.apply(ep.adjoint()), images[p].adjoint()), {p});
    for (std::size_t q = 0; q < m; ++q) {
      const auto prod = ep * AlgebraElement::matrix_unit(shape, q);
      mult.observe(max_abs_diff(s.apply(prod), images[p] * images[q]), {p, q});
    }
  }
  report.entries.push_back(AxiomEntry{"unitary", defect, {}, defect < tol, {}});
  report.entries.push_back(mult.entry(tol));
  report.entries.push_back(star.entry(tol));
  return report;
}

}  // namespace ccrforge
