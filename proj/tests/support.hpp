#pragma once

// Shared fixtures for the unit and acceptance suites: shipped spec files, broken
// variants that each axiom suite must reject, and actions typed in as raw matrices.

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "ccrforge/action.hpp"
#include "ccrforge/random.hpp"
#include "ccrforge/spec_io.hpp"
#include "ccrforge/twisting.hpp"

namespace fx {

using namespace ccrforge;

inline std::string spec_path(const std::string& name) { return std::string(CCRFORGE_SPEC_DIR) + "/" + name + ".json"; }

inline ProblemSpec load(const std::string& name) { return load_spec(spec_path(name)); }

inline const std::vector<std::string>& finite_fixture_names() {
  static const std::vector<std::string> names{"example1-alpha", "klein-example2", "cyclic3-trivial", "z5sq-bicharacter"};
  return names;
}

struct Named {
  std::string name;
  TwistingPair pair;
};

/// The shipped finite fixtures plus two library-built ones with non-scalar coefficients.
inline std::vector<Named> fixture_pairs() {
  std::vector<Named> out;
  for (const auto& n : finite_fixture_names()) out.push_back({n, make_pair(load(n))});
  out.push_back({"klein-over-M2+M1", klein_pair(AlgebraShape({2, 1}))});
  std::mt19937_64 rng(7);
  out.push_back({"symmetric3-perturbed-M2", random_valid_pair(trivial_pair(symmetric3_group(), AlgebraShape({2})), rng)});
  return out;
}

inline Complex cis(double t) { return std::polar(1.0, t); }

/// Klein cocycle with xi(i,j) reset to 1; (M2) breaks at (i,i,j) by |1 - i| = sqrt 2.
inline TwistingPair klein_broken_xi() {
  const auto good = klein_pair();
  auto xi = good.xi_table();
  xi[1 * 4 + 2] = AlgebraElement::unit(good.shape());
  return pair_from_tables(good.group(), good.shape(), xi, good.sigma_table());
}

/// Z_3 on M_2 with xi = 1, sigma_1 = Ad diag(1, i), sigma_2 = id: sigma is not a
/// homomorphism, so (M3) breaks while (M2) holds.
inline TwistingPair z3_broken_sigma() {
  const AlgebraShape shape({2});
  const auto g = cyclic_group(3);
  Matrix d = Matrix::identity(2);
  d(1, 1) = Complex(0, 1);
  std::vector<Automorphism> sigma(3, Automorphism::identity(shape));
  sigma[1] = Automorphism::inner(AlgebraElement(shape, {d}));
  return pair_from_tables(g, shape, std::vector<AlgebraElement>(9, AlgebraElement::unit(shape)), sigma);
}

/// tau_x f(y) = f(x^-1 y) typed in as permutation matrices.
inline ProjectiveAction left_translation_table(const FiniteGroup& g, const AlgebraShape& shape) {
  const std::size_t m = shape.dim();
  const std::size_t d = g.size() * m;
  std::vector<Matrix> ops;
  for (Element x = 0; x < g.size(); ++x) {
    Matrix op(d, d);
    for (Element y = 0; y < g.size(); ++y)
      for (std::size_t p = 0; p < m; ++p) op(g.mul(x, y) * m + p, y * m + p) = 1.0;
    ops.push_back(op);
  }
  return explicit_action(g, shape, ops);
}

/// tau_1 (a, b) = (e^{i alpha} b, a) on C^2, entered entrywise.
inline ProjectiveAction z2_raw_table(double alpha, Complex lower = 1.0) {
  Matrix t1(2, 2);
  t1(0, 1) = cis(alpha);
  t1(1, 0) = lower;
  return explicit_action(cyclic_group(2), AlgebraShape::scalar(), {Matrix::identity(2), t1});
}

/// alpha-twisted Z2 with a stray phase e^{0.5 i} on the (1,0) entry: (A2) breaks.
inline ProjectiveAction z2_phased_table() { return z2_raw_table(1.0, cis(0.5)); }

/// Left translation on Z_2 with tau_1 doubled: (A4) breaks.
inline ProjectiveAction z2_scaled_table() {
  auto ops = std::get<ExplicitTable>(left_translation_table(cyclic_group(2), AlgebraShape::scalar()).form()).ops;
  ops[1] = ops[1] * Complex(2.0);
  return explicit_action(cyclic_group(2), AlgebraShape::scalar(), ops);
}

/// Klein index of a label in {1, i, j, k}.
inline Element kl(char c) { return c == '1' ? 0 : static_cast<Element>(c - 'i' + 1); }

}  // namespace fx
