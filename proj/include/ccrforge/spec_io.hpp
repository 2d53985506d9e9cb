#pragma once

// Problem-specification files (JSON) and machine-readable result documents.
//
// Complex numbers are [re, im]; matrices are row-major nested arrays; an algebra element
// is a list of per-block matrices. Group elements may be referenced by index or label.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ccrforge/algebra.hpp"
#include "ccrforge/crossed_product.hpp"
#include "ccrforge/error.hpp"
#include "ccrforge/field.hpp"
#include "ccrforge/group.hpp"
#include "ccrforge/report.hpp"
#include "ccrforge/twisting.hpp"
#include "ccrforge/weyl.hpp"

namespace ccrforge {

using json = nlohmann::json;

struct GroupSpec {
  std::string kind;  // cyclic | product | klein | symmetric3 | table | minkowski
  std::size_t n = 0;
  std::vector<GroupSpec> factors;
  CayleyTable table;
  std::vector<std::string> labels;
};

struct XiEntry {
  Element x = 0, y = 0;
  AlgebraElement value;
};

struct SigmaEntry {
  Element x = 0;
  std::vector<std::size_t> perm;
  AlgebraElement u;
};

struct TwistingSpec {
  std::string kind;  // trivial | table | bicharacter | spacetime
  std::vector<XiEntry> xi;
  std::vector<SigmaEntry> sigma;
  Bicharacter bicharacter;
  std::vector<SigmaMatrix> samples;
};

struct ElementTerm {
  Element at = 0;
  AlgebraElement value;
};

struct ProblemSpec {
  std::string name;
  GroupSpec group_spec;
  std::optional<FiniteGroup> group;  // absent for minkowski
  AlgebraShape shape;
  TwistingSpec twisting;
  std::map<std::string, std::vector<ElementTerm>> elements;

  bool spacetime() const { return twisting.kind == "spacetime"; }
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaError, (path.empty() ? "/" : path) + ": " + what);
}
[[noreturn]] inline void dimension_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::DimensionMismatch, (path.empty() ? "/" : path) + ": " + what);
}

inline void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) schema_error(path, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) schema_error(path + "/" + it.key(), "unknown key");
}

inline const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) schema_error(path + "/" + key, "missing required key");
  return j.at(key);
}

inline std::size_t as_size(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) schema_error(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

inline const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

inline Complex parse_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_error(path, "complex numbers are [re, im] pairs");
  return {as_double(j[0], path + "/0"), as_double(j[1], path + "/1")};
}

inline Matrix parse_matrix(const json& j, const std::string& path, std::size_t size) {
  as_array(j, path);
  if (j.size() != size) dimension_error(path, "expected " + std::to_string(size) + " rows, got " + std::to_string(j.size()));
  Matrix m(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    as_array(j[r], rp);
    if (j[r].size() != size)
      dimension_error(rp, "expected " + std::to_string(size) + " columns, got " + std::to_string(j[r].size()));
    for (std::size_t c = 0; c < size; ++c) m(r, c) = parse_complex(j[r][c], rp + "/" + std::to_string(c));
  }
  return m;
}

inline AlgebraElement parse_element(const json& j, const std::string& path, const AlgebraShape& shape) {
  as_array(j, path);
  if (j.size() != shape.block_count())
    dimension_error(path, "expected " + std::to_string(shape.block_count()) + " blocks, got " + std::to_string(j.size()));
  std::vector<Matrix> mats;
  for (std::size_t b = 0; b < shape.block_count(); ++b)
    mats.push_back(parse_matrix(j[b], path + "/" + std::to_string(b), shape.block_size(b)));
  return AlgebraElement(shape, std::move(mats));
}

inline Element parse_ref(const json& j, const std::string& path, const FiniteGroup& g) {
  if (j.is_string()) {
    const auto idx = g.index_of(j.get<std::string>());
    if (!idx) schema_error(path, "unknown group element '" + j.get<std::string>() + "'");
    return *idx;
  }
  const std::size_t x = as_size(j, path);
  if (x >= g.size()) dimension_error(path, "group element " + std::to_string(x) + " out of range");
  return x;
}

inline GroupSpec parse_group_spec(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  GroupSpec gs;
  gs.kind = as_string(require(j, path, "kind"), path + "/kind");
  if (gs.kind == "cyclic") {
    allow_keys(j, path, {"kind", "n"});
    gs.n = as_size(require(j, path, "n"), path + "/n");
    if (gs.n == 0) schema_error(path + "/n", "cyclic order must be positive");
  } else if (gs.kind == "product") {
    allow_keys(j, path, {"kind", "factors"});
    const auto& fs = as_array(require(j, path, "factors"), path + "/factors");
    if (fs.empty()) schema_error(path + "/factors", "product needs at least one factor");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      gs.factors.push_back(parse_group_spec(fs[i], path + "/factors/" + std::to_string(i)));
      if (gs.factors.back().kind == "minkowski" || gs.factors.back().kind == "table")
        schema_error(path + "/factors/" + std::to_string(i), "product factors must be named finite groups");
    }
  } else if (gs.kind == "klein" || gs.kind == "symmetric3" || gs.kind == "minkowski") {
    allow_keys(j, path, {"kind"});
  } else if (gs.kind == "table") {
    allow_keys(j, path, {"kind", "table", "labels"});
    const auto& t = as_array(require(j, path, "table"), path + "/table");
    for (std::size_t r = 0; r < t.size(); ++r) {
      const std::string rp = path + "/table/" + std::to_string(r);
      as_array(t[r], rp);
      std::vector<Element> row;
      for (std::size_t c = 0; c < t[r].size(); ++c) row.push_back(as_size(t[r][c], rp + "/" + std::to_string(c)));
      gs.table.push_back(std::move(row));
    }
    if (j.contains("labels")) {
      const auto& ls = as_array(j.at("labels"), path + "/labels");
      for (std::size_t i = 0; i < ls.size(); ++i) gs.labels.push_back(as_string(ls[i], path + "/labels/" + std::to_string(i)));
    }
  } else {
    throw Error(ErrorKind::UnknownKind, path + "/kind: group kind '" + gs.kind + "'");
  }
  return gs;
}

inline GroupKind to_group_kind(const GroupSpec& gs) {
  GroupKind k;
  k.tag = parse_group_tag(gs.kind);
  k.n = gs.n;
  for (const auto& f : gs.factors) k.factors.push_back(to_group_kind(f));
  return k;
}

inline FiniteGroup build_from_spec(const GroupSpec& gs) {
  if (gs.kind == "table") return validate_group(gs.table, gs.labels);
  return build_group(to_group_kind(gs));
}

inline json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json group_spec_to_json(const GroupSpec& gs) {
  json j{{"kind", gs.kind}};
  if (gs.kind == "cyclic") j["n"] = gs.n;
  if (gs.kind == "product") {
    j["factors"] = json::array();
    for (const auto& f : gs.factors) j["factors"].push_back(group_spec_to_json(f));
  }
  if (gs.kind == "table") {
    j["table"] = gs.table;
    if (!gs.labels.empty()) j["labels"] = gs.labels;
  }
  return j;
}

}  // namespace detail

inline json element_to_json(const AlgebraElement& a) {
  json blocks = json::array();
  for (const auto& m : a.blocks()) blocks.push_back(detail::matrix_to_json(m));
  return blocks;
}

/// "line L, column C" for a byte offset into text.
inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline ProblemSpec parse_spec(const std::string& text) {
  using namespace detail;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  allow_keys(root, "", {"name", "group", "algebra", "twisting", "elements"});

  ProblemSpec spec;
  if (root.contains("name")) spec.name = as_string(root.at("name"), "/name");

  spec.group_spec = parse_group_spec(require(root, "", "group"), "/group");
  if (spec.group_spec.kind != "minkowski") {
    try {
      spec.group = build_from_spec(spec.group_spec);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnknownKind) throw;
      throw Error(e.kind(), std::string("/group: ") + e.what());
    }
  }

  const auto& alg = require(root, "", "algebra");
  allow_keys(alg, "/algebra", {"blocks"});
  const auto& blocks = as_array(require(alg, "/algebra", "blocks"), "/algebra/blocks");
  if (blocks.empty()) schema_error("/algebra/blocks", "at least one block required");
  std::vector<std::size_t> sizes;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    sizes.push_back(as_size(blocks[b], "/algebra/blocks/" + std::to_string(b)));
    if (sizes.back() == 0) schema_error("/algebra/blocks/" + std::to_string(b), "block size must be positive");
  }
  spec.shape = AlgebraShape(sizes);

  const auto& tw = require(root, "", "twisting");
  if (!tw.is_object()) schema_error("/twisting", "expected an object");
  spec.twisting.kind = as_string(require(tw, "/twisting", "kind"), "/twisting/kind");
  const auto& tk = spec.twisting.kind;
  if ((tk == "spacetime") != (spec.group_spec.kind == "minkowski"))
    dimension_error("/twisting/kind", "spacetime twisting goes with (and only with) the minkowski group");

  if (tk == "trivial") {
    allow_keys(tw, "/twisting", {"kind"});
  } else if (tk == "table") {
    allow_keys(tw, "/twisting", {"kind", "xi", "sigma"});
    const auto& g = *spec.group;
    if (tw.contains("xi")) {
      const auto& xs = as_array(tw.at("xi"), "/twisting/xi");
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::string p = "/twisting/xi/" + std::to_string(i);
        allow_keys(xs[i], p, {"x", "y", "value"});
        XiEntry entry{parse_ref(require(xs[i], p, "x"), p + "/x", g), parse_ref(require(xs[i], p, "y"), p + "/y", g),
                      parse_element(require(xs[i], p, "value"), p + "/value", spec.shape)};
        spec.twisting.xi.push_back(std::move(entry));
      }
    }
    if (tw.contains("sigma")) {
      const auto& ss = as_array(tw.at("sigma"), "/twisting/sigma");
      for (std::size_t i = 0; i < ss.size(); ++i) {
        const std::string p = "/twisting/sigma/" + std::to_string(i);
        allow_keys(ss[i], p, {"x", "perm", "u"});
        SigmaEntry entry;
        entry.x = parse_ref(require(ss[i], p, "x"), p + "/x", g);
        if (ss[i].contains("perm")) {
          const auto& pj = as_array(ss[i].at("perm"), p + "/perm");
          if (pj.size() != spec.shape.block_count()) dimension_error(p + "/perm", "one entry per algebra block");
          for (std::size_t b = 0; b < pj.size(); ++b) entry.perm.push_back(as_size(pj[b], p + "/perm/" + std::to_string(b)));
        } else {
          for (std::size_t b = 0; b < spec.shape.block_count(); ++b) entry.perm.push_back(b);
        }
        entry.u = ss[i].contains("u") ? parse_element(ss[i].at("u"), p + "/u", spec.shape) : AlgebraElement::unit(spec.shape);
        spec.twisting.sigma.push_back(std::move(entry));
      }
    }
  } else if (tk == "bicharacter") {
    allow_keys(tw, "/twisting", {"kind", "n", "d", "M", "B"});
    auto& bc = spec.twisting.bicharacter;
    bc.n = as_size(require(tw, "/twisting", "n"), "/twisting/n");
    bc.d = as_size(require(tw, "/twisting", "d"), "/twisting/d");
    bc.order = as_int(require(tw, "/twisting", "M"), "/twisting/M");
    if (bc.n == 0 || bc.d == 0 || bc.order <= 0) schema_error("/twisting", "n, d and M must be positive");
    const auto& bj = as_array(require(tw, "/twisting", "B"), "/twisting/B");
    if (bj.size() != bc.d) dimension_error("/twisting/B", "B must be d x d");
    for (std::size_t a = 0; a < bc.d; ++a) {
      const std::string rp = "/twisting/B/" + std::to_string(a);
      as_array(bj[a], rp);
      if (bj[a].size() != bc.d) dimension_error(rp, "B must be d x d");
      std::vector<std::int64_t> row;
      for (std::size_t b = 0; b < bc.d; ++b) row.push_back(as_int(bj[a][b], rp + "/" + std::to_string(b)));
      bc.form.push_back(std::move(row));
    }
    if (!spec.shape.is_scalar()) dimension_error("/algebra/blocks", "bicharacter twisting needs A = C");
    if (!(*spec.group == lattice_group(bc.n, bc.d)))
      dimension_error("/group", "bicharacter twisting needs the group Z_n^d with n = " + std::to_string(bc.n) +
                                    ", d = " + std::to_string(bc.d));
  } else if (tk == "spacetime") {
    allow_keys(tw, "/twisting", {"kind", "samples"});
    const auto& ss = as_array(require(tw, "/twisting", "samples"), "/twisting/samples");
    if (ss.empty()) schema_error("/twisting/samples", "at least one sample required");
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const std::string p = "/twisting/samples/" + std::to_string(i);
      allow_keys(ss[i], p, {"e", "m"});
      auto vec3 = [&](const char* key) {
        const auto& v = as_array(require(ss[i], p, key), p + "/" + key);
        if (v.size() != 3) dimension_error(p + "/" + key, "expected a 3-vector");
        return std::array<double, 3>{as_double(v[0], p + "/" + key + "/0"), as_double(v[1], p + "/" + key + "/1"),
                                     as_double(v[2], p + "/" + key + "/2")};
      };
      try {
        spec.twisting.samples.push_back(build_sigma_matrix(vec3("e"), vec3("m")));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ConstraintViolation) throw;
        throw Error(ErrorKind::ConstraintViolation, p + ": " + e.what());
      }
    }
    if (spec.shape.blocks() != std::vector<std::size_t>(ss.size(), 1))
      dimension_error("/algebra/blocks", "spacetime algebra is C^S: one 1x1 block per sample");
  } else {
    throw Error(ErrorKind::UnknownKind, "/twisting/kind: twisting kind '" + tk + "'");
  }

  if (root.contains("elements")) {
    const auto& els = root.at("elements");
    if (!els.is_object()) schema_error("/elements", "expected an object");
    if (!spec.group) schema_error("/elements", "named elements need a finite group");
    for (auto it = els.begin(); it != els.end(); ++it) {
      const std::string p = "/elements/" + it.key();
      const auto& terms = as_array(it.value(), p);
      std::vector<ElementTerm> parsed;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tp = p + "/" + std::to_string(i);
        allow_keys(terms[i], tp, {"at", "value"});
        parsed.push_back({parse_ref(require(terms[i], tp, "at"), tp + "/at", *spec.group),
                          parse_element(require(terms[i], tp, "value"), tp + "/value", spec.shape)});
      }
      spec.elements[it.key()] = std::move(parsed);
    }
  }
  return spec;
}

inline ProblemSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

/// Normalized document: element references by index, defaults made explicit.
inline json spec_to_json(const ProblemSpec& spec) {
  using namespace detail;
  json j;
  if (!spec.name.empty()) j["name"] = spec.name;
  j["group"] = group_spec_to_json(spec.group_spec);
  j["algebra"] = {{"blocks", spec.shape.blocks()}};
  json tw{{"kind", spec.twisting.kind}};
  if (spec.twisting.kind == "table") {
    tw["xi"] = json::array();
    for (const auto& e : spec.twisting.xi) tw["xi"].push_back({{"x", e.x}, {"y", e.y}, {"value", element_to_json(e.value)}});
    tw["sigma"] = json::array();
    for (const auto& s : spec.twisting.sigma)
      tw["sigma"].push_back({{"x", s.x}, {"perm", s.perm}, {"u", element_to_json(s.u)}});
  } else if (spec.twisting.kind == "bicharacter") {
    const auto& bc = spec.twisting.bicharacter;
    tw["n"] = bc.n;
    tw["d"] = bc.d;
    tw["M"] = bc.order;
    tw["B"] = bc.form;
  } else if (spec.twisting.kind == "spacetime") {
    tw["samples"] = json::array();
    for (const auto& s : spec.twisting.samples) tw["samples"].push_back({{"e", s.e}, {"m", s.m}});
  }
  j["twisting"] = std::move(tw);
  if (!spec.elements.empty()) {
    json els = json::object();
    for (const auto& [name, terms] : spec.elements) {
      json arr = json::array();
      for (const auto& t : terms) arr.push_back({{"at", t.at}, {"value", element_to_json(t.value)}});
      els[name] = std::move(arr);
    }
    j["elements"] = std::move(els);
  }
  return j;
}

inline std::string serialize_spec(const ProblemSpec& spec) { return spec_to_json(spec).dump(2); }

/// The twisting pair a finite-group spec describes; unspecified table entries default
/// to xi = 1 and sigma = identity.
inline TwistingPair make_pair(const ProblemSpec& spec) {
  if (!spec.group) throw Error(ErrorKind::KindMismatch, "spacetime specs have no finite twisting pair");
  const auto& g = *spec.group;
  const auto& tw = spec.twisting;
  if (tw.kind == "trivial") return trivial_pair(g, spec.shape);
  if (tw.kind == "bicharacter") {
    const auto& bc = tw.bicharacter;
    return bicharacter_pair(bc.n, bc.d, bc.order, bc.form);
  }
  const std::size_t n = g.size();
  std::vector<AlgebraElement> xi(n * n, AlgebraElement::unit(spec.shape));
  for (const auto& e : tw.xi) xi[e.x * n + e.y] = e.value;
  std::vector<Automorphism> sigma(n, Automorphism::identity(spec.shape));
  for (const auto& s : tw.sigma) sigma[s.x] = Automorphism{spec.shape, s.perm, s.u};
  return pair_from_tables(g, spec.shape, std::move(xi), std::move(sigma));
}

inline SpacetimeMultiplier make_spacetime(const ProblemSpec& spec) {
  if (!spec.spacetime()) throw Error(ErrorKind::KindMismatch, "spec has no spacetime samples");
  return SpacetimeMultiplier{spec.twisting.samples};
}

inline CField make_element(const ProblemSpec& spec, const std::string& name) {
  const auto it = spec.elements.find(name);
  if (it == spec.elements.end()) throw Error(ErrorKind::SchemaError, "/elements/" + name + ": no such element");
  CField f(*spec.group, spec.shape);
  for (const auto& t : it->second) f[t.at] += t.value;
  return f;
}

inline json report_to_json(const AxiomReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json je{{"axiom", e.id}, {"residual", e.residual}, {"witness", e.witness}, {"pass", e.pass}};
    if (!e.note.empty()) je["note"] = e.note;
    entries.push_back(std::move(je));
  }
  return {{"subject", r.subject}, {"tol", r.tol}, {"pass", r.passed()}, {"entries", std::move(entries)}};
}

/// Structure constants of the crossed product over the basis delta(x, E_p), sparse.
inline json export_structure_constants(const CrossedProduct& cp, double drop_below = 1e-15) {
  const auto sc = structure_constants(cp);
  const auto& shape = cp.shape();
  json basis = json::array();
  for (std::size_t k = 0; k < sc.dim; ++k) {
    const Element x = k / shape.dim();
    const auto u = shape.unit_of(k % shape.dim());
    basis.push_back({{"index", k}, {"x", x}, {"label", cp.group().label(x)}, {"block", u.block}, {"row", u.row}, {"col", u.col}});
  }
  json entries = json::array();
  for (std::size_t a = 0; a < sc.dim; ++a)
    for (std::size_t b = 0; b < sc.dim; ++b)
      for (std::size_t c = 0; c < sc.dim; ++c) {
        const Complex v = sc(a, b, c);
        if (std::abs(v) > drop_below) entries.push_back({{"lhs", a}, {"rhs", b}, {"out", c}, {"value", detail::complex_to_json(v)}});
      }
  return {{"dimension", sc.dim},
          {"group_order", cp.group().size()},
          {"blocks", shape.blocks()},
          {"basis", std::move(basis)},
          {"entries", std::move(entries)},
          {"associativity_residual", associativity_residual(sc)}};
}

/// Rebuilds the dense tensor from an exported document.
inline StructureConstants structure_constants_from_json(const json& doc) {
  StructureConstants sc;
  sc.dim = doc.at("dimension").get<std::size_t>();
  sc.values.assign(sc.dim * sc.dim * sc.dim, Complex{});
  for (const auto& e : doc.at("entries")) {
    const auto a = e.at("lhs").get<std::size_t>(), b = e.at("rhs").get<std::size_t>(), c = e.at("out").get<std::size_t>();
    sc.values[(a * sc.dim + b) * sc.dim + c] = detail::parse_complex(e.at("value"), "/entries");
  }
  return sc;
}

}  // namespace ccrforge
