#pragma once

// The crossed product A x_tau X on C_c(X, A): twisted convolution, involution, norms,
// the embeddings of A and of the Weyl elements, and a faithful GNS representation.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ccrforge/action.hpp"
#include "ccrforge/algebra.hpp"
#include "ccrforge/field.hpp"
#include "ccrforge/linalg.hpp"
#include "ccrforge/twisting.hpp"

namespace ccrforge {

inline constexpr double kGramTol = 1e-10;

class CrossedProduct {
 public:
  explicit CrossedProduct(const TwistingPair& p, double tol = kDefaultTol) : action_(action_from_pair(p, tol)), pair_(p) {}

  /// Crossed product of an action not necessarily born from a pair.
  static CrossedProduct from_action(const ProjectiveAction& t, double tol = kDefaultTol) {
    return CrossedProduct(t, pair_from_action(t, tol));
  }

  const ProjectiveAction& action() const noexcept { return action_; }
  const TwistingPair& pair() const noexcept { return pair_; }
  const FiniteGroup& group() const noexcept { return action_.group(); }
  const AlgebraShape& shape() const noexcept { return action_.shape(); }
  std::size_t dim() const { return action_.dim(); }

  CField apply(Element x, const CField& f) const { return action_.apply(x, f); }

  /// (f g)(x) = sum_y f(y) (tau_y g)(x), counting measure on X.
  CField convolve(const CField& f, const CField& g) const {
    require(f);
    require(g);
    CField out(group(), shape());
    for (Element y = 0; y < group().size(); ++y) {
      if (max_abs(f[y]) == 0.0) continue;
      const auto tg = apply(y, g);
      for (Element x = 0; x < group().size(); ++x) out[x] += f[y] * tg[x];
    }
    return out;
  }

  /// f^*(x) = (tau_x f)(e)^*; the modular function is 1 on a finite group.
  CField involution(const CField& f) const {
    require(f);
    const Element e = group().identity();
    std::vector<AlgebraElement> vals;
    vals.reserve(group().size());
    for (Element x = 0; x < group().size(); ++x) vals.push_back(apply(x, f)[e].adjoint());
    return CField(group(), shape(), std::move(vals));
  }

  /// delta(e, 1); A is unital so this replaces the approximate unit.
  CField unit() const { return zeta_embed(AlgebraElement::unit(shape())); }

  /// delta(e, a), acting by left multiplication as a f(x).
  CField zeta_embed(const AlgebraElement& a) const { return CField::delta(group(), group().identity(), a); }

  /// W(x) = delta(x, 1), which implements tau_x by left convolution.
  CField weyl_element(Element x) const { return CField::delta(group(), x, AlgebraElement::unit(shape())); }

 private:
  CrossedProduct(ProjectiveAction t, TwistingPair p) : action_(std::move(t)), pair_(std::move(p)) {}

  void require(const CField& f) const {
    if (!(f.group() == group()) || !(f.shape() == shape()))
      throw Error(ErrorKind::ShapeMismatch, "field does not belong to this crossed product");
  }

  ProjectiveAction action_;
  TwistingPair pair_;
};

inline double l1_norm(const CField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += operator_norm(v);
  return s;
}

/// <f, g> = omega_0((f^* g)(e)) with omega_0 the unnormalized trace. Only the value at e
/// is needed: (f^* g)(e) = sum_y f^*(y) (tau_y g)(e).
inline Complex inner_product(const CrossedProduct& cp, const CField& f, const CField& g) {
  const auto fs = cp.involution(f);
  const Element e = cp.group().identity();
  AlgebraElement acc(cp.shape());
  for (Element y = 0; y < cp.group().size(); ++y) {
    if (max_abs(fs[y]) == 0.0) continue;
    acc += fs[y] * cp.apply(y, g)[e];
  }
  return trace_functional(acc);
}

/// omega_f(g) = omega_0((f^* g f)(e)).
inline Complex vector_state(const CrossedProduct& cp, const CField& f, const CField& g) {
  const auto gf = cp.convolve(g, f);
  return inner_product(cp, f, gf);
}

struct BasisLabel {
  Element x;
  std::size_t block, row, col;
};

/// Left-regular representation on the orthonormal basis {delta(x, E_ij^(b))}.
class GnsRep {
 public:
  const CrossedProduct& algebra() const noexcept { return cp_; }
  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<BasisLabel>& basis() const noexcept { return labels_; }
  double gram_defect() const noexcept { return gram_defect_; }

  /// Matrix of g -> f g, assembled from the cached images of the basis: column k of
  /// leftmul(basis[j]) holds the coordinates of basis[j] * basis[k].
  Matrix leftmul(const CField& f) const {
    const std::size_t d = dim();
    const auto coords = f.coordinates();
    Matrix out(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      if (coords[j] == Complex{}) continue;
      const auto& src = ops_[j].data();
      auto& dst = out.data();
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] += coords[j] * src[i];
    }
    return out;
  }

  /// pi(a) for a in A, through its embedding.
  Matrix represent(const AlgebraElement& a) const { return leftmul(cp_.zeta_embed(a)); }

 private:
  explicit GnsRep(const CrossedProduct& cp) : cp_(cp) {}
  friend GnsRep gns_representation(const CrossedProduct& cp);

  CrossedProduct cp_;
  std::vector<BasisLabel> labels_;
  std::vector<Matrix> ops_;
  double gram_defect_ = 0.0;
};

/// Builds the GNS representation of the trace state and certifies that the coordinate
/// basis is orthonormal, so that operator norms of leftmul are C*-norms.
inline GnsRep gns_representation(const CrossedProduct& cp) {
  GnsRep rep(cp);
  const auto& shape = cp.shape();
  const std::size_t d = cp.dim();
  for (Element x = 0; x < cp.group().size(); ++x)
    for (std::size_t q = 0; q < shape.dim(); ++q) {
      const auto u = shape.unit_of(q);
      rep.labels_.push_back({x, u.block, u.row, u.col});
    }
  std::vector<CField> basis;
  std::vector<CField> stars;
  for (std::size_t k = 0; k < d; ++k) {
    basis.push_back(CField::basis(cp.group(), shape, k));
    stars.push_back(cp.involution(basis.back()));
  }
  const Element e = cp.group().identity();
  // tau_y basis[k] evaluated at e, for every y.
  std::vector<std::vector<AlgebraElement>> at_e(cp.group().size());
  for (Element y = 0; y < cp.group().size(); ++y)
    for (std::size_t k = 0; k < d; ++k) at_e[y].push_back(cp.apply(y, basis[k])[e]);
  double defect = 0.0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      AlgebraElement acc(shape);
      for (Element y = 0; y < cp.group().size(); ++y)
        if (max_abs(stars[a][y]) != 0.0) acc += stars[a][y] * at_e[y][b];
      const Complex expect = a == b ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(trace_functional(acc) - expect));
    }
  rep.gram_defect_ = defect;
  if (defect > kGramTol)
    throw Error(ErrorKind::GramNotIdentity, "basis Gram matrix deviates from identity by " + std::to_string(defect));
  for (std::size_t j = 0; j < d; ++j) {
    Matrix op(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      const auto col = cp.convolve(basis[j], basis[k]).coordinates();
      for (std::size_t r = 0; r < d; ++r) op(r, k) = col[r];
    }
    rep.ops_.push_back(std::move(op));
  }
  return rep;
}

inline double cstar_norm(const GnsRep& rep, const CField& f) { return spectral_norm(rep.leftmul(f)); }

inline double cstar_norm(const CrossedProduct& cp, const CField& f) { return cstar_norm(gns_representation(cp), f); }

/// Dimension of the center, from the null space of f -> (f b_k - b_k f)_k.
inline std::size_t center_dimension(const CrossedProduct& cp) {
  const std::size_t d = cp.dim();
  std::vector<CField> basis;
  for (std::size_t k = 0; k < d; ++k) basis.push_back(CField::basis(cp.group(), cp.shape(), k));
  Matrix system(d * d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t k = 0; k < d; ++k) {
      const auto comm = (cp.convolve(basis[c], basis[k]) - cp.convolve(basis[k], basis[c])).coordinates();
      for (std::size_t r = 0; r < d; ++r) system(k * d + r, c) = comm[r];
    }
  return d - numerical_rank(system);
}

/// c[(a * D + b) * D + c]: basis[a] * basis[b] = sum_c c[a,b,c] basis[c].
struct StructureConstants {
  std::size_t dim = 0;
  std::vector<Complex> values;

  Complex operator()(std::size_t a, std::size_t b, std::size_t c) const { return values[(a * dim + b) * dim + c]; }
};

inline StructureConstants structure_constants(const CrossedProduct& cp) {
  const std::size_t d = cp.dim();
  StructureConstants sc{d, std::vector<Complex>(d * d * d)};
  std::vector<CField> basis;
  for (std::size_t k = 0; k < d; ++k) basis.push_back(CField::basis(cp.group(), cp.shape(), k));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const auto prod = cp.convolve(basis[a], basis[b]).coordinates();
      std::copy(prod.begin(), prod.end(), sc.values.begin() + static_cast<std::ptrdiff_t>((a * d + b) * d));
    }
  return sc;
}

/// max |(b_a b_b) b_c - b_a (b_b b_c)| by contracting the tensor both ways.
inline double associativity_residual(const StructureConstants& sc) {
  const std::size_t d = sc.dim;
  double worst = 0.0;
  std::vector<Complex> left(d), right(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        std::fill(left.begin(), left.end(), Complex{});
        std::fill(right.begin(), right.end(), Complex{});
        for (std::size_t r = 0; r < d; ++r) {
          const Complex ab = sc(a, b, r);
          const Complex bc = sc(b, c, r);
          if (ab != Complex{})
            for (std::size_t s = 0; s < d; ++s) left[s] += ab * sc(r, c, s);
          if (bc != Complex{})
            for (std::size_t s = 0; s < d; ++s) right[s] += bc * sc(a, r, s);
        }
        for (std::size_t s = 0; s < d; ++s) worst = std::max(worst, std::abs(left[s] - right[s]));
      }
  return worst;
}

}  // namespace ccrforge
