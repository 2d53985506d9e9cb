#pragma once

// Projective actions tau of X on C_c(X, A): construction from a twisting pair, the
// axiom checks, and the reverse extraction of (xi, sigma) from an arbitrary action.

#include <cstddef>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ccrforge/algebra.hpp"
#include "ccrforge/error.hpp"
#include "ccrforge/field.hpp"
#include "ccrforge/group.hpp"
#include "ccrforge/report.hpp"
#include "ccrforge/twisting.hpp"

namespace ccrforge {

inline constexpr double kFactorizationTol = 1e-9;
inline constexpr std::size_t kRandomAxiomFields = 16;

/// One raw (N*M) x (N*M) operator per group element, acting on field coordinates.
struct ExplicitTable {
  std::vector<Matrix> ops;
};

class ProjectiveAction {
 public:
  using Form = std::variant<TwistingPair, ExplicitTable>;

  ProjectiveAction(FiniteGroup group, AlgebraShape shape, Form form)
      : group_(std::move(group)), shape_(std::move(shape)), form_(std::move(form)) {}

  const FiniteGroup& group() const noexcept { return group_; }
  const AlgebraShape& shape() const noexcept { return shape_; }
  const Form& form() const noexcept { return form_; }
  bool closed_form() const noexcept { return std::holds_alternative<TwistingPair>(form_); }
  /// Total coordinate count N * M.
  std::size_t dim() const { return group_.size() * shape_.dim(); }

  CField apply(Element x, const CField& f) const {
    if (!(f.group() == group_) || !(f.shape() == shape_))
      throw Error(ErrorKind::ShapeMismatch, "field does not live on this action's group/algebra");
    if (const auto* p = std::get_if<TwistingPair>(&form_)) {
      // tau_x f(y) = sigma_x(f(x^{-1} y)) xi(x, x^{-1} y)
      std::vector<AlgebraElement> out;
      out.reserve(group_.size());
      const Element xi = group_.inv(x);
      for (Element y = 0; y < group_.size(); ++y) {
        const Element w = group_.mul(xi, y);
        out.push_back(p->sigma(x).apply(f[w]) * p->xi(x, w));
      }
      return CField(group_, shape_, std::move(out));
    }
    const auto& table = std::get<ExplicitTable>(form_);
    return CField::from_coordinates(group_, shape_, table.ops[x].apply(f.coordinates()));
  }

 private:
  FiniteGroup group_;
  AlgebraShape shape_;
  Form form_;
};

inline ProjectiveAction action_from_pair(const TwistingPair& p, double tol = kDefaultTol) {
  require_multiplier(p, tol);
  return ProjectiveAction(p.group(), p.shape(), p);
}

inline ProjectiveAction explicit_action(const FiniteGroup& group, const AlgebraShape& shape, std::vector<Matrix> ops) {
  const std::size_t d = group.size() * shape.dim();
  if (ops.size() != group.size())
    throw Error(ErrorKind::ShapeMismatch, "explicit action needs one operator per group element");
  for (std::size_t x = 0; x < ops.size(); ++x)
    if (ops[x].rows() != d || ops[x].cols() != d)
      throw Error(ErrorKind::ShapeMismatch, "operator for " + group.label(x) + " must be " + std::to_string(d) + "x" +
                                                std::to_string(d));
  return ProjectiveAction(group, shape, ExplicitTable{std::move(ops)});
}

/// Materializes any action as raw operator matrices.
inline ProjectiveAction to_explicit_table(const ProjectiveAction& t) {
  const std::size_t d = t.dim();
  std::vector<Matrix> ops;
  for (Element x = 0; x < t.group().size(); ++x) {
    Matrix op(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      const auto col = t.apply(x, CField::basis(t.group(), t.shape(), k)).coordinates();
      for (std::size_t r = 0; r < d; ++r) op(r, k) = col[r];
    }
    ops.push_back(std::move(op));
  }
  return ProjectiveAction(t.group(), t.shape(), ExplicitTable{std::move(ops)});
}

/// xi(y, z) = (tau_y delta(z, 1))(yz).
inline AlgebraElement extract_xi(const ProjectiveAction& t, Element y, Element z) {
  const auto& g = t.group();
  return t.apply(y, CField::delta(g, z, AlgebraElement::unit(t.shape())))[g.mul(y, z)];
}

/// sigma_x(a) = (tau_x delta(e, a))(x).
inline AlgebraElement extract_sigma(const ProjectiveAction& t, Element x, const AlgebraElement& a) {
  const auto& g = t.group();
  return t.apply(x, CField::delta(g, g.identity(), a))[x];
}

inline double action_deviation(const ProjectiveAction& a, const ProjectiveAction& b) {
  if (!(a.group() == b.group()) || !(a.shape() == b.shape())) return INFINITY;
  double d = 0.0;
  for (Element x = 0; x < a.group().size(); ++x)
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const auto f = CField::basis(a.group(), a.shape(), k);
      d = std::max(d, max_abs_diff(a.apply(x, f), b.apply(x, f)));
    }
  return d;
}

/// Axioms (A1)-(A4) plus the derived identities tau_y tau_z = xi(y,z) tau_{yz},
/// tau_x(a f) = sigma_x(a) tau_x(f), and invertibility of each tau_x. The xi and
/// sigma used by the derived identities are read off the action itself.
inline AxiomReport check_action(const ProjectiveAction& t, double tol = kDefaultTol, std::uint64_t seed = 0x5eedULL) {
  const auto& g = t.group();
  const auto& shape = t.shape();
  const std::size_t n = g.size();
  const std::size_t m = shape.dim();
  const std::size_t d = t.dim();
  const Element e = g.identity();

  std::vector<CField> basis;
  basis.reserve(d);
  for (std::size_t k = 0; k < d; ++k) basis.push_back(CField::basis(g, shape, k));
  std::mt19937_64 rng(seed);
  std::vector<CField> randoms;
  for (std::size_t k = 0; k < kRandomAxiomFields; ++k) randoms.push_back(CField::random(g, shape, rng));
  std::vector<AlgebraElement> units;
  for (std::size_t q = 0; q < m; ++q) units.push_back(AlgebraElement::matrix_unit(shape, q));

  std::vector<AlgebraElement> xi(n * n);
  for (Element y = 0; y < n; ++y)
    for (Element z = 0; z < n; ++z) xi[y * n + z] = extract_xi(t, y, z);
  std::vector<AlgebraElement> sig(n * m);  // sigma_x(E_q)
  for (Element x = 0; x < n; ++x)
    for (std::size_t q = 0; q < m; ++q) sig[x * m + q] = extract_sigma(t, x, units[q]);
  auto sigma_of = [&](Element x, const AlgebraElement& a) {
    AlgebraElement out(shape);
    for (std::size_t q = 0; q < m; ++q) {
      const Complex c = a.coordinate(q);
      if (c != Complex{}) out += c * sig[x * m + q];
    }
    return out;
  };

  // images[x][k] = tau_x basis[k]
  std::vector<std::vector<CField>> images(n);
  for (Element x = 0; x < n; ++x) {
    images[x].reserve(d);
    for (std::size_t k = 0; k < d; ++k) images[x].push_back(t.apply(x, basis[k]));
  }

  ResidualMax a1("A1"), a2("A2"), a3("A3"), a4("A4"), tautau("tautau"), zetacon("zetacon"), invertible("invertible");

  for (std::size_t k = 0; k < d; ++k) a1.observe(max_abs_diff(images[e][k], basis[k]), {k});
  for (const auto& f : randoms) a1.observe(max_abs_diff(t.apply(e, f), f), {d});

  // (A2) on g = delta(z, b), h = basis[k].
  for (Element y = 0; y < n; ++y)
    for (Element z = 0; z < n; ++z) {
      const Element yz = g.mul(y, z);
      for (std::size_t q = 0; q < m; ++q) {
        const auto gz = t.apply(y, CField::delta(g, z, units[q]))[yz];
        for (std::size_t k = 0; k < d; ++k) {
          const auto lhs = t.apply(y, units[q] * images[z][k]);
          const auto rhs = gz * images[yz][k];
          a2.observe(max_abs_diff(lhs, rhs), {y, z, q, k});
        }
      }
    }
  for (std::size_t r = 0; r + 1 < randoms.size(); r += 2) {
    const auto& gf = randoms[r];
    const auto& hf = randoms[r + 1];
    std::vector<CField> th;
    for (Element x = 0; x < n; ++x) th.push_back(t.apply(x, hf));
    for (Element y = 0; y < n; ++y) {
      const auto tg = t.apply(y, gf);
      for (Element z = 0; z < n; ++z) {
        const Element yz = g.mul(y, z);
        const auto lhs = t.apply(y, gf[z] * th[z]);
        const auto rhs = tg[yz] * th[yz];
        a2.observe(max_abs_diff(lhs, rhs), {y, z, d + r});
      }
    }
  }

  auto each_field = [&](auto&& body) {
    for (std::size_t k = 0; k < d; ++k) body(basis[k], k);
    for (std::size_t r = 0; r < randoms.size(); ++r) body(randoms[r], d + r);
  };

  each_field([&](const CField& f, std::size_t tag) {
    std::vector<CField> tf;
    for (Element x = 0; x < n; ++x) tf.push_back(t.apply(x, f));
    // (A3): g(x) = (tau_x f)(e)^*, then (tau_x g)(y) = (tau_y f)(x)^*.
    std::vector<AlgebraElement> gv;
    for (Element x = 0; x < n; ++x) gv.push_back(tf[x][e].adjoint());
    const CField gf(g, shape, std::move(gv));
    for (Element x = 0; x < n; ++x) {
      const auto tg = t.apply(x, gf);
      for (Element y = 0; y < n; ++y) a3.observe(max_abs_diff(tg[y], tf[y][x].adjoint()), {x, y, tag});
    }
    // (A4)
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        a4.observe(std::abs(operator_norm(tf[x][y]) - operator_norm(f[g.mul(g.inv(x), y)])), {x, y, tag});
    // tau_y tau_z f = xi(y,z) tau_{yz} f
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        tautau.observe(max_abs_diff(t.apply(y, tf[z]), xi[y * n + z] * tf[g.mul(y, z)]), {y, z, tag});
    // invertibility: g = tau_{x^{-1}}(xi(x, x^{-1})^* f) satisfies tau_x g = f
    for (Element x = 0; x < n; ++x) {
      const Element xinv = g.inv(x);
      const auto pre = t.apply(xinv, xi[x * n + xinv].adjoint() * f);
      invertible.observe(max_abs_diff(t.apply(x, pre), f), {x, tag});
    }
  });

  for (Element x = 0; x < n; ++x)
    for (std::size_t q = 0; q < m; ++q) {
      const auto sa = sigma_of(x, units[q]);
      for (std::size_t k = 0; k < d; ++k)
        zetacon.observe(max_abs_diff(t.apply(x, units[q] * basis[k]), sa * images[x][k]), {x, q, k});
    }

  AxiomReport r;
  r.subject = "action";
  r.tol = tol;
  r.entries = {a1.entry(tol),      a2.entry(tol),      a3.entry(tol),        a4.entry(tol),
               tautau.entry(tol),  zetacon.entry(tol), invertible.entry(tol)};
  return r;
}

/// Recovers the factored form u P_perm(.) u^* of a *-automorphism given by its images
/// of all matrix units. The block permutation follows the block identities; each u_b is
/// rebuilt column by column from the images of E_{i1}, then orthonormalized.
inline Automorphism factor_automorphism(const AlgebraShape& shape, const std::vector<AlgebraElement>& images,
                                        double tol = kFactorizationTol) {
  const std::size_t nb = shape.block_count();
  const std::size_t m = shape.dim();
  if (images.size() != m) throw Error(ErrorKind::ShapeMismatch, "need one image per matrix unit");
  auto fail = [](const std::string& why) { throw Error(ErrorKind::AutomorphismFactorizationFailure, why); };

  std::vector<std::size_t> perm(nb, nb);
  for (std::size_t src = 0; src < nb; ++src) {
    AlgebraElement img(shape);
    for (std::size_t i = 0; i < shape.block_size(src); ++i) img += images[shape.offset(src) + i * shape.block_size(src) + i];
    std::size_t target = nb;
    for (std::size_t b = 0; b < nb; ++b)
      if (max_abs_diff(img, AlgebraElement::block_unit(shape, b)) < tol) target = b;
    if (target == nb) fail("image of block " + std::to_string(src) + " identity is not a block identity");
    if (perm[target] != nb) fail("two blocks map onto block " + std::to_string(target));
    if (shape.block_size(target) != shape.block_size(src)) fail("block sizes differ under the map");
    perm[target] = src;
  }

  std::vector<Matrix> us(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t src = perm[b];
    const std::size_t nsz = shape.block_size(b);
    auto image_block = [&](std::size_t i, std::size_t j) -> const Matrix& {
      return images[shape.offset(src) + i * nsz + j].block(b);
    };
    // E_11 goes to v v^*; take its dominant column as v up to phase.
    const Matrix& p11 = image_block(0, 0);
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < nsz; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < nsz; ++r) s += std::norm(p11(r, c));
      if (s > best_norm) {
        best_norm = s;
        best = c;
      }
    }
    if (best_norm <= 0.0) fail("E_11 maps to zero in block " + std::to_string(b));
    std::vector<Complex> v1(nsz);
    const double scale = std::sqrt(best_norm);
    for (std::size_t r = 0; r < nsz; ++r) v1[r] = p11(r, best) / scale;

    Matrix u(nsz, nsz);
    for (std::size_t i = 0; i < nsz; ++i) {
      // E_i1 goes to v_i v_1^*, so v_i = image(E_i1) v_1.
      const auto vi = image_block(i, 0).apply(v1);
      for (std::size_t r = 0; r < nsz; ++r) u(r, i) = vi[r];
    }
    // Modified Gram-Schmidt: removes rounding drift and exposes bad input.
    for (std::size_t i = 0; i < nsz; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Complex proj{};
        for (std::size_t r = 0; r < nsz; ++r) proj += std::conj(u(r, j)) * u(r, i);
        for (std::size_t r = 0; r < nsz; ++r) u(r, i) -= proj * u(r, j);
      }
      double s = 0.0;
      for (std::size_t r = 0; r < nsz; ++r) s += std::norm(u(r, i));
      if (s < tol) fail("degenerate column in block " + std::to_string(b));
      const double inv = 1.0 / std::sqrt(s);
      for (std::size_t r = 0; r < nsz; ++r) u(r, i) *= inv;
    }
    us[b] = std::move(u);
  }

  Automorphism s{shape, perm, AlgebraElement(shape, std::move(us))};
  for (std::size_t q = 0; q < m; ++q) {
    const double r = max_abs_diff(s.apply(AlgebraElement::matrix_unit(shape, q)), images[q]);
    if (r > tol) fail("factored form misses matrix unit " + std::to_string(q) + " by " + std::to_string(r));
  }
  return s;
}

/// Extracts (xi, sigma) from an action with the unit in place of an approximate unit:
/// xi(y,z) = (tau_y delta(z,1))(yz) and sigma_x(a) = (tau_x delta(e,a))(x).
inline TwistingPair pair_from_action(const ProjectiveAction& t, double tol = kDefaultTol) {
  const auto report = check_action(t, tol);
  if (!report.passed()) {
    std::string failing;
    for (const auto& e : report.entries)
      if (!e.pass) failing += " " + e.id + "=" + std::to_string(e.residual);
    throw Error(ErrorKind::NotAnAction, "axioms fail:" + failing);
  }
  const auto& g = t.group();
  const auto& shape = t.shape();
  const std::size_t n = g.size();
  std::vector<AlgebraElement> xi;
  xi.reserve(n * n);
  for (Element y = 0; y < n; ++y)
    for (Element z = 0; z < n; ++z) xi.push_back(extract_xi(t, y, z));
  std::vector<Automorphism> sigma;
  for (Element x = 0; x < n; ++x) {
    std::vector<AlgebraElement> images;
    for (std::size_t q = 0; q < shape.dim(); ++q) images.push_back(extract_sigma(t, x, AlgebraElement::matrix_unit(shape, q)));
    sigma.push_back(factor_automorphism(shape, images));
  }
  TwistingPair::Backing backing = TableBacking{};
  if (const auto* p = std::get_if<TwistingPair>(&t.form())) backing = p->backing();
  auto pair = pair_from_tables(g, shape, std::move(xi), std::move(sigma), std::move(backing));
  const auto mult = check_multiplier(pair, tol);
  if (!mult.passed()) throw Error(ErrorKind::NotAnAction, "extracted pair violates the multiplier axioms");
  return pair;
}

/// Worst deviation over both directions of the pair <-> action correspondence:
/// p against pair_from_action(action_from_pair(p)), and the raw operator table of
/// action_from_pair(p) against the action rebuilt from its own extracted pair.
inline double roundtrip_deviation(const TwistingPair& p, double tol = kDefaultTol) {
  const auto t = action_from_pair(p, tol);
  const double forward = pair_deviation(p, pair_from_action(t, tol));
  const auto table = to_explicit_table(t);
  const double backward = action_deviation(table, action_from_pair(pair_from_action(table, tol), tol));
  return std::max(forward, backward);
}

inline double roundtrip_deviation(const ProjectiveAction& t, double tol = kDefaultTol) {
  const auto p = pair_from_action(t, tol);
  const auto rebuilt = action_from_pair(p, tol);
  const double backward = action_deviation(t, rebuilt);
  const double forward = pair_deviation(p, pair_from_action(rebuilt, tol));
  return std::max(forward, backward);
}

}  // namespace ccrforge
