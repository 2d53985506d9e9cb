#pragma once

// Finite groups as Cayley tables over dense indices 0..N-1.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccrforge/error.hpp"

namespace ccrforge {

using Element = std::size_t;
using CayleyTable = std::vector<std::vector<Element>>;

class FiniteGroup {
 public:
  FiniteGroup() = default;

  std::size_t size() const noexcept { return data_ ? data_->cayley.size() : 0; }
  Element identity() const noexcept { return data_->identity; }
  Element mul(Element x, Element y) const { return data_->cayley[x][y]; }
  Element inv(Element x) const { return data_->inverse[x]; }
  const CayleyTable& cayley() const noexcept { return data_->cayley; }
  const std::vector<Element>& inverse_table() const noexcept { return data_->inverse; }

  const std::vector<std::string>& labels() const noexcept { return data_->labels; }
  const std::string& label(Element x) const { return data_->labels[x]; }
  std::optional<Element> index_of(std::string_view label) const {
    const auto& ls = data_->labels;
    auto it = std::find(ls.begin(), ls.end(), label);
    if (it == ls.end()) return std::nullopt;
    return static_cast<Element>(it - ls.begin());
  }

  bool is_abelian() const {
    for (Element x = 0; x < size(); ++x)
      for (Element y = 0; y < x; ++y)
        if (mul(x, y) != mul(y, x)) return false;
    return true;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.data_ == b.data_) return true;
    if (!a.data_ || !b.data_) return false;
    return a.data_->cayley == b.data_->cayley;
  }

 private:
  struct Data {
    CayleyTable cayley;
    Element identity = 0;
    std::vector<Element> inverse;
    std::vector<std::string> labels;
  };
  std::shared_ptr<const Data> data_;

  friend FiniteGroup validate_group(const CayleyTable& table, std::vector<std::string> labels);
};

/// Checks the group axioms exhaustively and fills in identity and inverse tables.
/// Labels are optional; missing labels default to the decimal index.
inline FiniteGroup validate_group(const CayleyTable& table, std::vector<std::string> labels = {}) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::NotClosed, "empty table");
  for (std::size_t x = 0; x < n; ++x) {
    if (table[x].size() != n)
      throw Error(ErrorKind::NotClosed, "row " + std::to_string(x) + " has length " +
                                            std::to_string(table[x].size()) + ", expected " + std::to_string(n));
    for (std::size_t y = 0; y < n; ++y)
      if (table[x][y] >= n)
        throw Error(ErrorKind::NotClosed, "product (" + std::to_string(x) + "," + std::to_string(y) +
                                              ") = " + std::to_string(table[x][y]) + " outside 0.." +
                                              std::to_string(n - 1));
  }

  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) throw Error(ErrorKind::NoIdentity, "no two-sided identity element");
  const Element e = *identity;

  std::vector<Element> inverse(n);
  for (Element x = 0; x < n; ++x) {
    std::optional<Element> found;
    for (Element y = 0; y < n && !found; ++y)
      if (table[x][y] == e && table[y][x] == e) found = y;
    if (!found) throw Error(ErrorKind::NoInverse, "element " + std::to_string(x) + " has no two-sided inverse");
    inverse[x] = *found;
  }

  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (table[table[x][y]][z] != table[x][table[y][z]])
          throw Error(ErrorKind::NotAssociative, "triple (" + std::to_string(x) + "," + std::to_string(y) + "," +
                                                     std::to_string(z) + ")");

  // Implied by the axioms above, but cheap to confirm.
  for (Element x = 0; x < n; ++x) {
    std::vector<bool> row(n), col(n);
    for (Element y = 0; y < n; ++y) {
      row[table[x][y]] = true;
      col[table[y][x]] = true;
    }
    if (std::find(row.begin(), row.end(), false) != row.end() ||
        std::find(col.begin(), col.end(), false) != col.end())
      throw Error(ErrorKind::NotClosed, "row/column " + std::to_string(x) + " is not a permutation");
  }

  if (labels.empty()) {
    labels.resize(n);
    for (std::size_t x = 0; x < n; ++x) labels[x] = std::to_string(x);
  } else if (labels.size() != n) {
    throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(n) + " labels, got " +
                                             std::to_string(labels.size()));
  }

  FiniteGroup g;
  auto data = std::make_shared<FiniteGroup::Data>();
  data->cayley = table;
  data->identity = e;
  data->inverse = std::move(inverse);
  data->labels = std::move(labels);
  g.data_ = std::move(data);
  return g;
}

/// Named group constructors understood by build_group.
struct GroupKind {
  enum class Tag { cyclic, product, klein, symmetric3 };
  Tag tag = Tag::cyclic;
  std::size_t n = 1;
  std::vector<GroupKind> factors;

  static GroupKind cyclic(std::size_t n) { return {Tag::cyclic, n, {}}; }
  static GroupKind product(std::vector<GroupKind> factors) { return {Tag::product, 0, std::move(factors)}; }
  static GroupKind klein() { return {Tag::klein, 0, {}}; }
  static GroupKind symmetric3() { return {Tag::symmetric3, 0, {}}; }

  friend bool operator==(const GroupKind&, const GroupKind&) = default;
};

inline GroupKind::Tag parse_group_tag(std::string_view name) {
  if (name == "cyclic") return GroupKind::Tag::cyclic;
  if (name == "product") return GroupKind::Tag::product;
  if (name == "klein") return GroupKind::Tag::klein;
  if (name == "symmetric3") return GroupKind::Tag::symmetric3;
  throw Error(ErrorKind::UnknownKind, "group kind '" + std::string(name) + "'");
}

inline std::string_view to_string(GroupKind::Tag tag) {
  switch (tag) {
    case GroupKind::Tag::cyclic: return "cyclic";
    case GroupKind::Tag::product: return "product";
    case GroupKind::Tag::klein: return "klein";
    case GroupKind::Tag::symmetric3: return "symmetric3";
  }
  return "unknown";
}

/// Klein four-group {1, i, j, k} with i^2 = j^2 = k^2 = 1 and ij = ji = k.
inline FiniteGroup klein_group() {
  // Index 0..3 = 1, i, j, k; the product is bitwise xor.
  CayleyTable t(4, std::vector<Element>(4));
  for (Element x = 0; x < 4; ++x)
    for (Element y = 0; y < 4; ++y) t[x][y] = x ^ y;
  return validate_group(t, {"1", "i", "j", "k"});
}

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::SizeMismatch, "cyclic group of order 0");
  CayleyTable t(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return validate_group(t);
}

/// Permutations of {0,1,2} in lexicographic one-line order; (st)(k) = s(t(k)).
inline FiniteGroup symmetric3_group() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  CayleyTable t(n, std::vector<Element>(n));
  std::vector<std::string> labels;
  for (const auto& s : perms) labels.push_back(std::to_string(s[0]) + std::to_string(s[1]) + std::to_string(s[2]));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<int> c(3);
      for (int k = 0; k < 3; ++k) c[k] = perms[a][perms[b][k]];
      t[a][b] = static_cast<Element>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return validate_group(t, labels);
}

/// Direct product with lexicographic indexing: (a, b) -> a * |B| + b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.size(), nb = b.size();
  CayleyTable t(na * nb, std::vector<Element>(na * nb));
  std::vector<std::string> labels(na * nb);
  for (Element x1 = 0; x1 < na; ++x1)
    for (Element x2 = 0; x2 < nb; ++x2) {
      labels[x1 * nb + x2] = a.label(x1) + "," + b.label(x2);
      for (Element y1 = 0; y1 < na; ++y1)
        for (Element y2 = 0; y2 < nb; ++y2) t[x1 * nb + x2][y1 * nb + y2] = a.mul(x1, y1) * nb + b.mul(x2, y2);
    }
  for (auto& l : labels) l = "(" + l + ")";
  return validate_group(t, labels);
}

inline FiniteGroup build_group(const GroupKind& kind) {
  switch (kind.tag) {
    case GroupKind::Tag::cyclic:
      if (kind.n < 1) throw Error(ErrorKind::SizeMismatch, "cyclic(n) requires n >= 1");
      return cyclic_group(kind.n);
    case GroupKind::Tag::klein: return klein_group();
    case GroupKind::Tag::symmetric3: return symmetric3_group();
    case GroupKind::Tag::product: {
      if (kind.factors.empty()) throw Error(ErrorKind::SizeMismatch, "product of zero factors");
      // Nested labels from repeated pairing would read ((a,b),c); flatten them instead.
      std::vector<FiniteGroup> parts;
      for (const auto& f : kind.factors) parts.push_back(build_group(f));
      FiniteGroup acc = parts.front();
      for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_product(acc, parts[i]);
      if (parts.size() == 1) return acc;
      std::vector<std::string> labels(acc.size());
      for (Element x = 0; x < acc.size(); ++x) {
        Element rest = x;
        std::vector<std::string> coords(parts.size());
        for (std::size_t i = parts.size(); i-- > 0;) {
          coords[i] = parts[i].label(rest % parts[i].size());
          rest /= parts[i].size();
        }
        std::string l = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) l += (i ? "," : "") + coords[i];
        labels[x] = l + ")";
      }
      return validate_group(acc.cayley(), labels);
    }
  }
  throw Error(ErrorKind::UnknownKind, "unhandled group kind");
}

/// Z_n^d with lexicographic indexing, first coordinate most significant.
inline FiniteGroup lattice_group(std::size_t n, std::size_t d) {
  return build_group(GroupKind::product(std::vector<GroupKind>(d, GroupKind::cyclic(n))));
}

inline std::vector<std::int64_t> lattice_coords(Element x, std::size_t n, std::size_t d) {
  std::vector<std::int64_t> k(d);
  for (std::size_t i = d; i-- > 0;) {
    k[i] = static_cast<std::int64_t>(x % n);
    x /= n;
  }
  return k;
}

inline Element lattice_index(const std::vector<std::int64_t>& k, std::size_t n) {
  Element x = 0;
  const auto nn = static_cast<std::int64_t>(n);
  for (std::int64_t c : k) x = x * n + static_cast<Element>(((c % nn) + nn) % nn);
  return x;
}

}  // namespace ccrforge
