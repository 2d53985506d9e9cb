#pragma once

// Weyl elements and canonical commutation relations: the Weyl-relation certificate for a
// crossed product, Weyl-word reduction, and the sampled quantum-spacetime multiplier.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ccrforge/crossed_product.hpp"
#include "ccrforge/error.hpp"
#include "ccrforge/report.hpp"
#include "ccrforge/twisting.hpp"

namespace ccrforge {

inline constexpr double kSigmaConstraintTol = 1e-9;

/// Checks every Weyl identity exhaustively, in the algebra and in the GNS representation:
/// W(x)W(y) = xi(x,y)W(xy), W(x)^* = xi(x^-1,x)^* W(x^-1), W(x) a W(x)^* = sigma_x(a),
/// unitarity of W(x), W(x) f = tau_x f, and U(x)U(y) = pi(xi(x,y)) U(xy) for U = pi(W).
inline AxiomReport weyl_relation_report(const CrossedProduct& cp, double tol = kDefaultTol) {
  const auto& g = cp.group();
  const auto& p = cp.pair();
  const auto& shape = cp.shape();
  const std::size_t n = g.size();
  const std::size_t m = shape.dim();
  const auto unit = cp.unit();

  std::vector<CField> w, wstar;
  for (Element x = 0; x < n; ++x) {
    w.push_back(cp.weyl_element(x));
    wstar.push_back(cp.involution(w.back()));
  }

  ResidualMax wlaw("wlaw"), star("Wstar"), sigw("sigmaW"), unitary("W_unitary"), left("W_implements_tau"),
      ulaw("ulaw"), covres("covariance"), uunit("U_unitary");

  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      wlaw.observe(max_abs_diff(cp.convolve(w[x], w[y]), cp.convolve(cp.zeta_embed(p.xi(x, y)), w[g.mul(x, y)])), {x, y});

  for (Element x = 0; x < n; ++x) {
    const Element xi = g.inv(x);
    star.observe(max_abs_diff(wstar[x], cp.convolve(cp.zeta_embed(p.xi(xi, x).adjoint()), w[xi])), {x});
    unitary.observe(std::max(max_abs_diff(cp.convolve(wstar[x], w[x]), unit), max_abs_diff(cp.convolve(w[x], wstar[x]), unit)),
                    {x});
    for (std::size_t q = 0; q < m; ++q) {
      const auto a = AlgebraElement::matrix_unit(shape, q);
      const auto lhs = cp.convolve(cp.convolve(w[x], cp.zeta_embed(a)), wstar[x]);
      sigw.observe(max_abs_diff(lhs, cp.zeta_embed(p.sigma(x).apply(a))), {x, q});
    }
    for (std::size_t k = 0; k < cp.dim(); ++k) {
      const auto f = CField::basis(g, shape, k);
      left.observe(max_abs_diff(cp.convolve(w[x], f), cp.apply(x, f)), {x, k});
    }
  }

  const auto rep = gns_representation(cp);
  std::vector<Matrix> u;
  for (Element x = 0; x < n; ++x) u.push_back(rep.leftmul(w[x]));
  const auto id = Matrix::identity(rep.dim());
  for (Element x = 0; x < n; ++x) {
    uunit.observe(std::max(max_abs_diff(u[x].adjoint() * u[x], id), max_abs_diff(u[x] * u[x].adjoint(), id)), {x});
    for (Element y = 0; y < n; ++y)
      ulaw.observe(max_abs_diff(u[x] * u[y], rep.represent(p.xi(x, y)) * u[g.mul(x, y)]), {x, y});
    for (std::size_t q = 0; q < m; ++q) {
      const auto a = AlgebraElement::matrix_unit(shape, q);
      covres.observe(max_abs_diff(rep.represent(p.sigma(x).apply(a)), u[x] * rep.represent(a) * u[x].adjoint()), {x, q});
    }
  }

  AxiomReport r;
  r.subject = "weyl";
  r.tol = tol;
  r.entries = {wlaw.entry(tol), star.entry(tol),  sigw.entry(tol),   unitary.entry(tol),
               left.entry(tol), ulaw.entry(tol),  covres.entry(tol), uunit.entry(tol)};
  return r;
}

/// Antisymmetric 4x4 matrix eps(e, m) with |e|^2 = |m|^2 and e.m = +-1.
struct SigmaMatrix {
  std::array<double, 3> e{};
  std::array<double, 3> m{};
  std::array<std::array<double, 4>, 4> eps{};
};

inline SigmaMatrix build_sigma_matrix(const std::array<double, 3>& e, const std::array<double, 3>& m) {
  const double ee = e[0] * e[0] + e[1] * e[1] + e[2] * e[2];
  const double mm = m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
  const double em = e[0] * m[0] + e[1] * m[1] + e[2] * m[2];
  if (std::abs(ee - mm) > kSigmaConstraintTol || std::abs(std::abs(em) - 1.0) > kSigmaConstraintTol)
    throw Error(ErrorKind::ConstraintViolation,
                "|e|^2-|m|^2 = " + std::to_string(ee - mm) + ", e.m = " + std::to_string(em) + " (need 0 and +-1)");
  SigmaMatrix s{e, m, {}};
  auto set = [&](int mu, int nu, double v) {
    s.eps[mu][nu] = v;
    s.eps[nu][mu] = -v;
  };
  set(0, 1, e[0]);
  set(0, 2, e[1]);
  set(0, 3, e[2]);
  set(1, 2, m[2]);
  set(1, 3, -m[1]);
  set(2, 3, m[0]);
  return s;
}

using Vec4 = std::array<double, 4>;

inline double bilinear(const Vec4& k, const SigmaMatrix& s, const Vec4& kp) {
  double acc = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) acc += k[mu] * s.eps[mu][nu] * kp[nu];
  return acc;
}

/// xi(k, k')(eps) = exp(i/2 k^T eps k'), one value per sampled eps. The group R^4 is
/// never enumerated; the multiplier is evaluated only where asked.
struct SpacetimeMultiplier {
  std::vector<SigmaMatrix> samples;

  std::vector<Complex> value(const Vec4& k, const Vec4& kp) const {
    std::vector<Complex> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(std::polar(1.0, 0.5 * bilinear(k, s, kp)));
    return out;
  }
};

/// xi(k,k') conj(xi(k',k)) = exp(i k^T eps k').
inline Complex commutator_phase(const Vec4& k, const Vec4& kp, const SigmaMatrix& eps) {
  const Complex forward = std::polar(1.0, 0.5 * bilinear(k, eps, kp));
  const Complex backward = std::polar(1.0, 0.5 * bilinear(kp, eps, k));
  return forward * std::conj(backward);
}

using LatticeVec = std::vector<std::int64_t>;

struct WeylWord {
  std::variant<std::vector<Vec4>, std::vector<LatticeVec>> letters;

  std::size_t length() const {
    return std::visit([](const auto& v) { return v.size(); }, letters);
  }
  bool real() const { return std::holds_alternative<std::vector<Vec4>>(letters); }
};

using WordMultiplier = std::variant<Bicharacter, SpacetimeMultiplier>;

struct PhaseResult {
  std::vector<Complex> phases;                // one per sample, or a single root of unity
  std::variant<Vec4, LatticeVec> total;
  std::int64_t exponent = 0;                   // exact exponent mod M for lattice words
};

/// Folds a word left to right: (phase, total) <- (phase * xi(total, k), total + k).
inline PhaseResult reduce_weyl_word(const WeylWord& w, const WordMultiplier& mult) {
  if (const auto* bc = std::get_if<Bicharacter>(&mult)) {
    const auto* letters = std::get_if<std::vector<LatticeVec>>(&w.letters);
    if (!letters) throw Error(ErrorKind::KindMismatch, "bicharacter multiplier needs integer letters");
    LatticeVec total(bc->d, 0);
    std::int64_t exponent = 0;
    const auto n = static_cast<std::int64_t>(bc->n);
    for (const auto& k : *letters) {
      if (k.size() != bc->d)
        throw Error(ErrorKind::KindMismatch, "letter of length " + std::to_string(k.size()) + ", expected " +
                                                 std::to_string(bc->d));
      exponent = (exponent + bc->exponent(total, k)) % bc->order;
      for (std::size_t a = 0; a < bc->d; ++a) total[a] = (((total[a] + k[a]) % n) + n) % n;
    }
    return PhaseResult{{root_of_unity(exponent, bc->order)}, total, exponent};
  }
  const auto& st = std::get<SpacetimeMultiplier>(mult);
  const auto* letters = std::get_if<std::vector<Vec4>>(&w.letters);
  if (!letters) throw Error(ErrorKind::KindMismatch, "spacetime multiplier needs real 4-vector letters");
  Vec4 total{};
  std::vector<Complex> phases(st.samples.size(), 1.0);
  for (const auto& k : *letters) {
    const auto xi = st.value(total, k);
    for (std::size_t s = 0; s < phases.size(); ++s) phases[s] *= xi[s];
    for (int mu = 0; mu < 4; ++mu) total[mu] += k[mu];
  }
  return PhaseResult{phases, total, 0};
}

/// Checks the multiplier axioms for the sampled spacetime multiplier (sigma trivial) on
/// the finite set of points a word touches: 0, its letters and its partial sums.
inline AxiomReport check_word_multiplier(const std::vector<Vec4>& letters, const SpacetimeMultiplier& st,
                                         double tol = kDefaultTol) {
  std::vector<Vec4> pts{Vec4{}};
  Vec4 run{};
  for (const auto& k : letters) {
    pts.push_back(k);
    for (int mu = 0; mu < 4; ++mu) run[mu] += k[mu];
    pts.push_back(run);
  }
  auto add = [](const Vec4& a, const Vec4& b) {
    Vec4 c;
    for (int mu = 0; mu < 4; ++mu) c[mu] = a[mu] + b[mu];
    return c;
  };
  auto diff = [](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0.0;
    for (std::size_t s = 0; s < a.size(); ++s) d = std::max(d, std::abs(a[s] - b[s]));
    return d;
  };
  auto times = [](std::vector<Complex> a, const std::vector<Complex>& b) {
    for (std::size_t s = 0; s < a.size(); ++s) a[s] *= b[s];
    return a;
  };
  const std::vector<Complex> ones(st.samples.size(), 1.0);
  ResidualMax m1("M1"), modulus("unit_modulus"), m2("M2"), m3("M3"), bichar("bicharacter");
  const std::size_t np = pts.size();
  for (std::size_t a = 0; a < np; ++a) {
    m1.observe(std::max(diff(st.value(pts[a], Vec4{}), ones), diff(st.value(Vec4{}, pts[a]), ones)), {a});
    for (std::size_t b = 0; b < np; ++b) {
      const auto xab = st.value(pts[a], pts[b]);
      double mod = 0.0;
      for (const auto& v : xab) mod = std::max(mod, std::abs(std::abs(v) - 1.0));
      modulus.observe(mod, {a, b});
      // sigma trivial on a commutative algebra: xi a xi^* - a vanishes sample by sample.
      double ad = 0.0;
      for (const auto& v : xab) ad = std::max(ad, std::abs(v * std::conj(v) - 1.0));
      m3.observe(ad, {a, b});
      for (std::size_t c = 0; c < np; ++c) {
        const auto lhs = times(st.value(pts[a], pts[b]), st.value(add(pts[a], pts[b]), pts[c]));
        const auto rhs = times(st.value(pts[a], add(pts[b], pts[c])), st.value(pts[b], pts[c]));
        m2.observe(diff(lhs, rhs), {a, b, c});
        bichar.observe(diff(st.value(add(pts[a], pts[c]), pts[b]), times(st.value(pts[a], pts[b]), st.value(pts[c], pts[b]))),
                       {a, c, b});
      }
    }
  }
  AxiomReport r;
  r.subject = "spacetime_multiplier";
  r.tol = tol;
  r.entries = {m1.entry(tol), modulus.entry(tol), m2.entry(tol), m3.entry(tol), bichar.entry(tol)};
  r.entries.push_back(AxiomEntry{"M4", 0.0, {}, true, "not modeled (continuity on R^4)"});
  return r;
}

}  // namespace ccrforge
