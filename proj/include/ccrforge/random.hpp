#pragma once

// Random fixtures: Haar-ish unitaries, automorphisms and genuine twisting pairs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "ccrforge/algebra.hpp"
#include "ccrforge/twisting.hpp"

namespace ccrforge {

template <class Rng>
Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> nd;
  Matrix m(rows, cols);
  for (auto& v : m.data()) v = Complex(nd(rng), nd(rng));
  return m;
}

/// Gram-Schmidt on a Gaussian matrix.
template <class Rng>
Matrix random_unitary(std::size_t n, Rng& rng) {
  Matrix u = random_matrix(n, n, rng);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Complex proj{};
      for (std::size_t r = 0; r < n; ++r) proj += std::conj(u(r, j)) * u(r, i);
      for (std::size_t r = 0; r < n; ++r) u(r, i) -= proj * u(r, j);
    }
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += std::norm(u(r, i));
    const double inv = 1.0 / std::sqrt(s);
    for (std::size_t r = 0; r < n; ++r) u(r, i) *= inv;
  }
  return u;
}

template <class Rng>
AlgebraElement random_element(const AlgebraShape& shape, Rng& rng) {
  std::vector<Matrix> mats;
  for (std::size_t b : shape.blocks()) mats.push_back(random_matrix(b, b, rng));
  return AlgebraElement(shape, std::move(mats));
}

template <class Rng>
AlgebraElement random_unitary_element(const AlgebraShape& shape, Rng& rng) {
  std::vector<Matrix> mats;
  for (std::size_t b : shape.blocks()) mats.push_back(random_unitary(b, rng));
  return AlgebraElement(shape, std::move(mats));
}

/// Random block permutation among equal-size blocks, composed with a random inner part.
template <class Rng>
Automorphism random_automorphism(const AlgebraShape& shape, Rng& rng) {
  auto s = Automorphism::identity(shape);
  std::vector<std::size_t> sizes = shape.blocks();
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  for (std::size_t size : sizes) {
    std::vector<std::size_t> slots;
    for (std::size_t b = 0; b < shape.block_count(); ++b)
      if (shape.block_size(b) == size) slots.push_back(b);
    auto shuffled = slots;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < slots.size(); ++i) s.perm[slots[i]] = shuffled[i];
  }
  s.u = random_unitary_element(shape, rng);
  return s;
}

/// A genuine pair exterior-equivalent to base, perturbed by random unitaries v_x, v_e = 1.
template <class Rng>
TwistingPair random_valid_pair(const TwistingPair& base, Rng& rng) {
  std::vector<AlgebraElement> v;
  for (Element x = 0; x < base.order(); ++x)
    v.push_back(x == base.group().identity() ? AlgebraElement::unit(base.shape())
                                             : random_unitary_element(base.shape(), rng));
  return inner_perturbation(base, v);
}

}  // namespace ccrforge
