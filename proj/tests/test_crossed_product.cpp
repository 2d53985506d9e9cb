#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "ccrforge/crossed_product.hpp"
#include "support.hpp"

using namespace ccrforge;
using fx::kl;

namespace {

const AlgebraShape kC = AlgebraShape::scalar();

CField c2(Complex a, Complex b) {
  return CField(cyclic_group(2), kC, {AlgebraElement::scalar(kC, a), AlgebraElement::scalar(kC, b)});
}

Complex at(const CField& f, Element x) { return f[x].block(0)(0, 0); }

}  // namespace

TEST(CrossedProduct, AlphaTwistedZ2ProductAndInvolution) {
  const double alpha = 0.9;
  const CrossedProduct cp(z2_alpha_pair(alpha));
  const Complex a(1, 2), b(-0.5, 0.3), c(0.2, -1), d(2, 2);
  const auto fg = cp.convolve(c2(a, b), c2(c, d));
  EXPECT_LT(std::abs(at(fg, 0) - (a * c + b * d * fx::cis(alpha))), 1e-12);
  EXPECT_LT(std::abs(at(fg, 1) - (a * d + b * c)), 1e-12);
  const auto fs = cp.involution(c2(a, b));
  EXPECT_LT(std::abs(at(fs, 0) - std::conj(a)), 1e-12);
  EXPECT_LT(std::abs(at(fs, 1) - std::conj(b) * fx::cis(-alpha)), 1e-12);
  EXPECT_LT(max_abs_diff(cp.convolve(cp.weyl_element(1), cp.weyl_element(1)), fx::cis(alpha) * cp.unit()), 1e-12);
}

TEST(CrossedProduct, UnitAndEmbedding) {
  std::mt19937_64 rng(3);
  const auto p = fx::fixture_pairs().back().pair;
  const CrossedProduct cp(p);
  for (std::size_t k = 0; k < cp.dim(); ++k) {
    const auto f = CField::basis(cp.group(), cp.shape(), k);
    EXPECT_LT(max_abs_diff(cp.convolve(cp.unit(), f), f), 1e-12);
    EXPECT_LT(max_abs_diff(cp.convolve(f, cp.unit()), f), 1e-12);
  }
  const auto a = random_element(cp.shape(), rng), b = random_element(cp.shape(), rng);
  const auto f = CField::random(cp.group(), cp.shape(), rng);
  EXPECT_LT(max_abs_diff(cp.convolve(cp.zeta_embed(a), cp.zeta_embed(b)), cp.zeta_embed(a * b)), 1e-12);
  EXPECT_LT(max_abs_diff(cp.convolve(cp.zeta_embed(a), f), a * f), 1e-12);
  EXPECT_LT(max_abs_diff(cp.involution(cp.zeta_embed(a)), cp.zeta_embed(a.adjoint())), 1e-12);
  EXPECT_EQ(max_abs_diff(cp.zeta_embed(AlgebraElement::unit(cp.shape())), cp.unit()), 0.0);
  EXPECT_EQ(max_abs_diff(cp.weyl_element(cp.group().identity()), cp.unit()), 0.0);
}

TEST(CrossedProduct, KleinWeylProducts) {
  const CrossedProduct cp(klein_pair());
  const auto w = [&](char c) { return cp.weyl_element(kl(c)); };
  EXPECT_LT(max_abs_diff(cp.convolve(w('i'), w('j')), Complex(0, 1) * w('k')), 1e-15);
  EXPECT_LT(max_abs_diff(cp.involution(w('i')), w('i')), 1e-15);
}

TEST(CrossedProduct, SigmaCovarianceOnKleinOverM2) {
  std::mt19937_64 rng(12);
  const auto p = random_valid_pair(klein_pair(AlgebraShape({2})), rng);
  const CrossedProduct cp(p);
  for (Element x = 0; x < 4; ++x) {
    const auto a = random_element(cp.shape(), rng);
    const auto w = cp.weyl_element(x);
    const auto lhs = cp.convolve(cp.convolve(w, cp.zeta_embed(a)), cp.involution(w));
    EXPECT_LT(max_abs_diff(lhs, cp.zeta_embed(p.sigma(x).apply(a))), 1e-10);
  }
}

TEST(L1Norm, Examples) {
  const CrossedProduct cp(z2_alpha_pair(1.0));
  EXPECT_NEAR(l1_norm(c2(Complex(3, 4), Complex(0, -2))), 7.0, 1e-14);
  std::mt19937_64 rng(1);
  const AlgebraShape m2({2});
  const auto u = random_unitary_element(m2, rng);
  EXPECT_NEAR(l1_norm(CField::delta(klein_group(), 2, u)), 1.0, 1e-12);
}

TEST(Gns, KleinMatrix) {
  const CrossedProduct cp(klein_pair());
  const auto rep = gns_representation(cp);
  ASSERT_EQ(rep.dim(), 4u);
  const Complex i(0, 1);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 5; ++trial) {
    const Complex a(nd(rng), nd(rng)), b(nd(rng), nd(rng)), c(nd(rng), nd(rng)), d(nd(rng), nd(rng));
    const CField f(cp.group(), kC,
                   {AlgebraElement::scalar(kC, a), AlgebraElement::scalar(kC, b), AlgebraElement::scalar(kC, c),
                    AlgebraElement::scalar(kC, d)});
    const Complex expect[4][4] = {{a, b, c, d}, {b, a, -i * d, i * c}, {c, i * d, a, -i * b}, {d, -i * c, i * b, a}};
    const auto m = rep.leftmul(f);
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s) EXPECT_LT(std::abs(m(r, s) - expect[r][s]), 1e-12);
  }
}

TEST(Gns, RegularRepresentationOfZ2) {
  const CrossedProduct cp(trivial_pair(cyclic_group(2), kC));
  const auto m = gns_representation(cp).leftmul(cp.weyl_element(1));
  EXPECT_EQ(m(0, 0), Complex(0.0));
  EXPECT_EQ(m(0, 1), Complex(1.0));
  EXPECT_EQ(m(1, 0), Complex(1.0));
  EXPECT_EQ(m(1, 1), Complex(0.0));
}

TEST(Gns, LeftMultiplicationIsAStarHomomorphism) {
  std::mt19937_64 rng(5);
  for (const auto& [name, p] : fx::fixture_pairs()) {
    const CrossedProduct cp(p);
    const auto rep = gns_representation(cp);
    EXPECT_LT(rep.gram_defect(), 1e-10) << name;
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = CField::random(cp.group(), cp.shape(), rng);
      const auto g = CField::random(cp.group(), cp.shape(), rng);
      EXPECT_LT(max_abs_diff(rep.leftmul(cp.convolve(f, g)), rep.leftmul(f) * rep.leftmul(g)), 1e-10) << name;
      EXPECT_LT(max_abs_diff(rep.leftmul(cp.involution(f)), rep.leftmul(f).adjoint()), 1e-10) << name;
    }
  }
}

TEST(CrossedProduct, FromActionRejectsNonActions) {
  try {
    CrossedProduct::from_action(fx::z2_scaled_table());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAnAction);
  }
  const auto cp = CrossedProduct::from_action(fx::z2_raw_table(1.0));
  EXPECT_LT(pair_deviation(cp.pair(), z2_alpha_pair(1.0)), 1e-12);
}

TEST(CStarNorm, Examples) {
  const CrossedProduct cp(klein_pair());
  const auto rep = gns_representation(cp);
  for (Element x = 0; x < 4; ++x) EXPECT_NEAR(cstar_norm(rep, cp.weyl_element(x)), 1.0, 1e-12);
  EXPECT_NEAR(cstar_norm(rep, cp.unit()), 1.0, 1e-12);
  const auto f = cp.weyl_element(kl('i')) + cp.weyl_element(kl('j'));
  EXPECT_NEAR(cstar_norm(rep, f), std::sqrt(2.0), 1e-9);
  // Independent check through Eigen's singular values.
  const auto m = rep.leftmul(f);
  Eigen::MatrixXcd e(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) e(r, s) = m(r, s);
  EXPECT_NEAR(Eigen::JacobiSVD<Eigen::MatrixXcd>(e).singularValues()(0), std::sqrt(2.0), 1e-12);
}

TEST(CenterDimension, KleinIsSimpleTrivialIsCommutative) {
  EXPECT_EQ(center_dimension(CrossedProduct(klein_pair())), 1u);
  EXPECT_EQ(center_dimension(CrossedProduct(trivial_pair(klein_group(), kC))), 4u);
  EXPECT_EQ(center_dimension(CrossedProduct(trivial_pair(symmetric3_group(), kC))), 3u);
}

TEST(VectorState, Examples) {
  std::mt19937_64 rng(6);
  const auto p = fx::fixture_pairs()[4].pair;
  const CrossedProduct cp(p);
  const auto a = random_element(cp.shape(), rng);
  EXPECT_LT(std::abs(vector_state(cp, cp.unit(), cp.zeta_embed(a)) - trace_functional(a)), 1e-12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = CField::random(cp.group(), cp.shape(), rng);
    const auto h = CField::random(cp.group(), cp.shape(), rng);
    const Complex v = vector_state(cp, f, cp.convolve(cp.involution(h), h));
    EXPECT_GE(v.real(), -1e-12);
    EXPECT_LT(std::abs(v.imag()), 1e-10 * (1 + std::abs(v)));
  }
}

TEST(StructureConstants, KleinAndZ2) {
  const CrossedProduct k(klein_pair());
  const auto sc = structure_constants(k);
  EXPECT_LT(std::abs(sc(kl('i'), kl('j'), kl('k')) - Complex(0, 1)), 1e-15);
  EXPECT_EQ(associativity_residual(sc), 0.0);
  const auto z = structure_constants(CrossedProduct(trivial_pair(cyclic_group(2), kC)));
  for (const auto& v : z.values) EXPECT_TRUE(v == Complex(0.0) || v == Complex(1.0));
  EXPECT_EQ(z(1, 1, 0), Complex(1.0));
}
