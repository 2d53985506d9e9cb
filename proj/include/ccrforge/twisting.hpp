#pragma once

// Twisting pairs (xi, sigma): a C*-multiplier xi with its twisted representation sigma.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ccrforge/algebra.hpp"
#include "ccrforge/error.hpp"
#include "ccrforge/group.hpp"
#include "ccrforge/report.hpp"

namespace ccrforge {

/// exp(2 pi i k / M) for an exact integer exponent.
inline Complex root_of_unity(std::int64_t k, std::int64_t order) {
  k = ((k % order) + order) % order;
  // Hit the quarter points exactly so that +-1 and +-i carry no rounding.
  if ((4 * k) % order == 0) {
    switch ((4 * k) / order) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order));
}

/// Scalar bicharacter on Z_n^d: xi(k, k') = exp(2 pi i k^T B k' / M).
struct Bicharacter {
  std::size_t n = 1;
  std::size_t d = 1;
  std::int64_t order = 1;  // M
  std::vector<std::vector<std::int64_t>> form;  // B, d x d

  /// k^T B k' reduced into 0..M-1.
  std::int64_t exponent(const std::vector<std::int64_t>& k, const std::vector<std::int64_t>& kp) const {
    if (k.size() != d || kp.size() != d)
      throw Error(ErrorKind::KindMismatch, "lattice vector of length " + std::to_string(k.size()) + "/" +
                                                std::to_string(kp.size()) + ", expected " + std::to_string(d));
    std::int64_t s = 0;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) s = (s + (k[a] % order) * (form[a][b] % order) % order * (kp[b] % order)) % order;
    return ((s % order) + order) % order;
  }

  Complex value(const std::vector<std::int64_t>& k, const std::vector<std::int64_t>& kp) const {
    return root_of_unity(exponent(k, kp), order);
  }

  /// True when B - B^T vanishes mod M up to sign, i.e. xi(k,k') = conj xi(k',k).
  bool is_symplectic() const {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        if (((form[a][b] + form[b][a]) % order + order) % order != 0) return false;
    return true;
  }

  friend bool operator==(const Bicharacter&, const Bicharacter&) = default;
};

struct TableBacking {};

class TwistingPair {
 public:
  using Backing = std::variant<TableBacking, Bicharacter>;

  TwistingPair(FiniteGroup group, AlgebraShape shape, std::vector<AlgebraElement> xi, std::vector<Automorphism> sigma,
               Backing backing = TableBacking{})
      : group_(std::move(group)),
        shape_(std::move(shape)),
        xi_(std::move(xi)),
        sigma_(std::move(sigma)),
        backing_(std::move(backing)) {}

  const FiniteGroup& group() const noexcept { return group_; }
  const AlgebraShape& shape() const noexcept { return shape_; }
  std::size_t order() const noexcept { return group_.size(); }

  const AlgebraElement& xi(Element x, Element y) const { return xi_[x * order() + y]; }
  const Automorphism& sigma(Element x) const { return sigma_[x]; }
  const std::vector<AlgebraElement>& xi_table() const noexcept { return xi_; }
  const std::vector<Automorphism>& sigma_table() const noexcept { return sigma_; }
  const Backing& backing() const noexcept { return backing_; }

  bool sigma_trivial() const {
    for (const auto& s : sigma_)
      if (!s.is_identity_perm() || unitarity_defect(s.u) > kUnitarityTol) return false;
    for (const auto& s : sigma_) {
      // Inner automorphisms by central unitaries act trivially as well.
      for (std::size_t b = 0; b < s.perm.size(); ++b) {
        const Matrix& ub = s.u.block(b);
        const Complex c = ub(0, 0);
        if (max_abs_diff(ub, Matrix::identity(ub.rows()) * c) > kUnitarityTol) return false;
      }
    }
    return true;
  }

 private:
  FiniteGroup group_;
  AlgebraShape shape_;
  std::vector<AlgebraElement> xi_;  // row-major N x N
  std::vector<Automorphism> sigma_;
  Backing backing_;
};

/// Builds a pair from explicit tables. Dimensions, (M1) and unitarity of xi are checked
/// here; (M2)/(M3) are left to check_multiplier.
inline TwistingPair pair_from_tables(const FiniteGroup& group, const AlgebraShape& shape,
                                     std::vector<AlgebraElement> xi, std::vector<Automorphism> sigma,
                                     TwistingPair::Backing backing = TableBacking{}) {
  const std::size_t n = group.size();
  if (xi.size() != n * n)
    throw Error(ErrorKind::ShapeMismatch, "xi table has " + std::to_string(xi.size()) + " entries, expected " +
                                              std::to_string(n * n));
  if (sigma.size() != n)
    throw Error(ErrorKind::ShapeMismatch, "sigma table has " + std::to_string(sigma.size()) + " entries, expected " +
                                              std::to_string(n));
  for (std::size_t k = 0; k < xi.size(); ++k)
    if (!(xi[k].shape() == shape))
      throw Error(ErrorKind::ShapeMismatch, "xi(" + std::to_string(k / n) + "," + std::to_string(k % n) +
                                                ") has the wrong algebra shape");
  for (std::size_t x = 0; x < n; ++x) {
    if (!(sigma[x].shape == shape) || !(sigma[x].u.shape() == shape))
      throw Error(ErrorKind::ShapeMismatch, "sigma(" + std::to_string(x) + ") has the wrong algebra shape");
    validate_automorphism(sigma[x]);  // throws SizeMismatch / NotUnitary; residual is structural
  }
  const Element e = group.identity();
  const auto one = AlgebraElement::unit(shape);
  for (Element x = 0; x < n; ++x) {
    if (max_abs_diff(xi[x * n + e], one) > kUnitarityTol)
      throw Error(ErrorKind::M1Violation, "xi(" + group.label(x) + ",e) != 1");
    if (max_abs_diff(xi[e * n + x], one) > kUnitarityTol)
      throw Error(ErrorKind::M1Violation, "xi(e," + group.label(x) + ") != 1");
  }
  for (std::size_t k = 0; k < xi.size(); ++k) {
    const double defect = unitarity_defect(xi[k]);
    if (defect > kUnitarityTol)
      throw Error(ErrorKind::NotUnitary, "xi(" + group.label(k / n) + "," + group.label(k % n) +
                                             ") is not unitary (defect " + std::to_string(defect) + ")");
  }
  return TwistingPair(group, shape, std::move(xi), std::move(sigma), std::move(backing));
}

inline TwistingPair trivial_pair(const FiniteGroup& group, const AlgebraShape& shape) {
  const std::size_t n = group.size();
  return pair_from_tables(group, shape, std::vector<AlgebraElement>(n * n, AlgebraElement::unit(shape)),
                          std::vector<Automorphism>(n, Automorphism::identity(shape)));
}

/// Scalar multiplier on a group, embedded as multiples of the unit of A; sigma trivial.
inline TwistingPair scalar_pair(const FiniteGroup& group, const AlgebraShape& shape, const std::vector<Complex>& table,
                                TwistingPair::Backing backing = TableBacking{}) {
  std::vector<AlgebraElement> xi;
  xi.reserve(table.size());
  for (Complex c : table) xi.push_back(AlgebraElement::scalar(shape, c));
  return pair_from_tables(group, shape, std::move(xi), std::vector<Automorphism>(group.size(), Automorphism::identity(shape)),
                          std::move(backing));
}

/// Z_2 = {0, 1}, A = C, xi(1,1) = e^{i alpha} and 1 otherwise.
inline TwistingPair z2_alpha_pair(double alpha) {
  return scalar_pair(cyclic_group(2), AlgebraShape::scalar(), {1.0, 1.0, 1.0, std::polar(1.0, alpha)});
}

/// Klein group, A = C, xi(i,j) = xi(j,k) = xi(k,i) = i and xi(j,i) = xi(k,j) = xi(i,k) = -i.
inline TwistingPair klein_pair(const AlgebraShape& shape = AlgebraShape::scalar()) {
  const auto g = klein_group();
  constexpr Complex I{0.0, 1.0};
  std::vector<Complex> t(16, 1.0);
  auto set = [&](Element x, Element y, Complex v) { t[x * 4 + y] = v; };
  set(1, 2, I);  // (i,j)
  set(2, 3, I);  // (j,k)
  set(3, 1, I);  // (k,i)
  set(2, 1, -I);
  set(3, 2, -I);
  set(1, 3, -I);
  return scalar_pair(g, shape, t);
}

/// Bicharacter pair on Z_n^d with A = C.
inline TwistingPair bicharacter_pair(std::size_t n, std::size_t d, std::int64_t order,
                                     std::vector<std::vector<std::int64_t>> form) {
  if (n == 0 || d == 0 || order <= 0) throw Error(ErrorKind::IllDefinedPhase, "n, d and M must be positive");
  if (form.size() != d) throw Error(ErrorKind::DimensionMismatch, "B must be d x d");
  for (std::size_t a = 0; a < d; ++a) {
    if (form[a].size() != d) throw Error(ErrorKind::DimensionMismatch, "B must be d x d");
    for (std::size_t b = 0; b < d; ++b)
      if ((static_cast<std::int64_t>(n) * form[a][b]) % order != 0)
        throw Error(ErrorKind::IllDefinedPhase, "n*B[" + std::to_string(a) + "][" + std::to_string(b) + "] = " +
                                                    std::to_string(static_cast<std::int64_t>(n) * form[a][b]) +
                                                    " is not divisible by M = " + std::to_string(order));
  }
  Bicharacter bc{n, d, order, std::move(form)};
  const auto g = lattice_group(n, d);
  const std::size_t size = g.size();
  std::vector<Complex> t(size * size);
  std::vector<std::vector<std::int64_t>> coords(size);
  for (Element x = 0; x < size; ++x) coords[x] = lattice_coords(x, n, d);
  for (Element x = 0; x < size; ++x)
    for (Element y = 0; y < size; ++y) t[x * size + y] = bc.value(coords[x], coords[y]);
  return scalar_pair(g, AlgebraShape::scalar(), t, bc);
}

/// Exterior-equivalent pair for the unitary family v (v[e] = 1):
/// sigma'_x = Ad(v_x) sigma_x and xi'(x,y) = v_x sigma_x(v_y) xi(x,y) v_{xy}^*.
inline TwistingPair inner_perturbation(const TwistingPair& p, const std::vector<AlgebraElement>& v) {
  const auto& g = p.group();
  const std::size_t n = g.size();
  if (v.size() != n) throw Error(ErrorKind::ShapeMismatch, "perturbation needs one unitary per group element");
  std::vector<AlgebraElement> xi;
  xi.reserve(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      xi.push_back(v[x] * p.sigma(x).apply(v[y]) * p.xi(x, y) * v[g.mul(x, y)].adjoint());
  std::vector<Automorphism> sigma;
  for (Element x = 0; x < n; ++x) {
    Automorphism s = p.sigma(x);
    s.u = v[x] * s.u;
    sigma.push_back(std::move(s));
  }
  return pair_from_tables(g, p.shape(), std::move(xi), std::move(sigma));
}

/// Exhaustive (M1)-(M3) check, plus xi xi^* = 1 and the inverse formula for sigma.
inline AxiomReport check_multiplier(const TwistingPair& p, double tol = kDefaultTol) {
  const auto& g = p.group();
  const auto& shape = p.shape();
  const std::size_t n = g.size();
  const std::size_t m = shape.dim();
  const Element e = g.identity();
  const auto one = AlgebraElement::unit(shape);

  std::vector<AlgebraElement> units;
  units.reserve(m);
  for (std::size_t q = 0; q < m; ++q) units.push_back(AlgebraElement::matrix_unit(shape, q));

  ResidualMax m1("M1"), iso("xi_isometry"), sige("M2_sigma_e"), m2("M2"), m3("M3"), unitxi("unitxi"),
      inv("sigmainvert");

  for (Element x = 0; x < n; ++x) {
    m1.observe(max_abs_diff(p.xi(x, e), one), {x, e});
    m1.observe(max_abs_diff(p.xi(e, x), one), {e, x});
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      iso.observe(max_abs_diff(p.xi(x, y).adjoint() * p.xi(x, y), one), {x, y});
      unitxi.observe(max_abs_diff(p.xi(x, y) * p.xi(x, y).adjoint(), one), {x, y});
    }
  for (std::size_t q = 0; q < m; ++q) sige.observe(max_abs_diff(p.sigma(e).apply(units[q]), units[q]), {q});

  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const Element xy = g.mul(x, y);
      for (Element z = 0; z < n; ++z) {
        const auto lhs = p.sigma(x).apply(p.xi(y, z));
        const auto rhs = p.xi(x, y) * p.xi(xy, z) * p.xi(x, g.mul(y, z)).adjoint();
        m2.observe(max_abs_diff(lhs, rhs), {x, y, z});
      }
    }

  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const Element xy = g.mul(x, y);
      const auto& c = p.xi(x, y);
      for (std::size_t q = 0; q < m; ++q) {
        const auto lhs = p.sigma(x).apply(p.sigma(y).apply(units[q]));
        const auto rhs = c * p.sigma(xy).apply(units[q]) * c.adjoint();
        m3.observe(max_abs_diff(lhs, rhs), {x, y, q});
      }
    }

  for (Element y = 0; y < n; ++y) {
    const Element yi = g.inv(y);
    const auto inverse = p.sigma(y).inverse();
    const auto& c = p.xi(yi, y);
    for (std::size_t q = 0; q < m; ++q) {
      const auto rhs = c.adjoint() * p.sigma(yi).apply(units[q]) * c;
      inv.observe(max_abs_diff(inverse.apply(units[q]), rhs), {y, q});
    }
  }

  AxiomReport r;
  r.subject = "multiplier";
  r.tol = tol;
  r.entries = {m1.entry(tol),  iso.entry(tol),    sige.entry(tol), m2.entry(tol),
               m3.entry(tol),  unitxi.entry(tol), inv.entry(tol)};
  r.entries.push_back(AxiomEntry{"M4", 0.0, {}, true, "vacuous (discrete group)"});
  return r;
}

/// Scalar cocycle identity xi(x,y) xi(xy,z) = xi(x,yz) xi(y,z) for A = C, and its
/// agreement with the (M2) residual when sigma is trivial.
inline AxiomReport check_scalar_cocycle(const TwistingPair& p, double tol = kDefaultTol) {
  if (!p.shape().is_scalar()) throw Error(ErrorKind::NotScalarAlgebra, "cocycle identity needs A = C");
  const auto& g = p.group();
  const std::size_t n = g.size();
  ResidualMax cocycle("cocycle"), m2("M2_scalar");
  auto s = [&](Element x, Element y) { return p.xi(x, y).block(0)(0, 0); };
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) {
        const Element xy = g.mul(x, y), yz = g.mul(y, z);
        cocycle.observe(std::abs(s(x, y) * s(xy, z) - s(x, yz) * s(y, z)), {x, y, z});
        const Complex sigma_xi = p.sigma(x).apply(p.xi(y, z)).block(0)(0, 0);
        m2.observe(std::abs(sigma_xi - s(x, y) * s(xy, z) * std::conj(s(x, yz))), {x, y, z});
      }
  AxiomReport r;
  r.subject = "scalar_cocycle";
  r.tol = tol;
  r.entries.push_back(cocycle.entry(tol));
  const double gap = std::abs(cocycle.value() - m2.value());
  r.entries.push_back(AxiomEntry{"reduces_to_M2", gap, {}, gap < tol,
                                 "cocycle residual " + std::to_string(cocycle.value()) + " vs M2 residual " +
                                     std::to_string(m2.value())});
  return r;
}

inline AxiomReport require_multiplier(const TwistingPair& p, double tol = kDefaultTol) {
  auto r = check_multiplier(p, tol);
  if (!r.passed()) {
    for (const auto& e : r.entries)
      if (!e.pass)
        throw Error(ErrorKind::AxiomFailure, e.id + " residual " + std::to_string(e.residual));
  }
  return r;
}

/// Largest deviation between two pairs: xi entrywise and sigma on every matrix unit.
/// Comparing sigma through its action sidesteps the phase freedom of u.
inline double pair_deviation(const TwistingPair& a, const TwistingPair& b) {
  if (!(a.group() == b.group()) || !(a.shape() == b.shape())) return INFINITY;
  double d = 0.0;
  for (std::size_t k = 0; k < a.xi_table().size(); ++k) d = std::max(d, max_abs_diff(a.xi_table()[k], b.xi_table()[k]));
  const std::size_t m = a.shape().dim();
  for (Element x = 0; x < a.order(); ++x)
    for (std::size_t q = 0; q < m; ++q) {
      const auto eq = AlgebraElement::matrix_unit(a.shape(), q);
      d = std::max(d, max_abs_diff(a.sigma(x).apply(eq), b.sigma(x).apply(eq)));
    }
  return d;
}

}  // namespace ccrforge
