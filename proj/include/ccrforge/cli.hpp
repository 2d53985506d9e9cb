#pragma once

// Command dispatch behind the ccr-forge executable. run_command is pure apart from the
// optional --out file, so tests drive it directly.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccrforge/action.hpp"
#include "ccrforge/crossed_product.hpp"
#include "ccrforge/error.hpp"
#include "ccrforge/report.hpp"
#include "ccrforge/spec_io.hpp"
#include "ccrforge/twisting.hpp"
#include "ccrforge/weyl.hpp"

namespace ccrforge {

struct CommandOptions {
  double tol = kDefaultTol;
  std::optional<std::string> element;
  std::optional<std::string> out;
  std::vector<std::string> words;
  bool json = false;
};

struct CommandResult {
  int exit_code = 0;
  json document;
  std::string text;
};

inline constexpr int kExitFailed = 1;
inline constexpr int kExitError = 2;

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

inline std::string format_report(const AxiomReport& r) {
  std::ostringstream os;
  os << r.subject << " (tol " << std::scientific << std::setprecision(1) << r.tol << ")\n";
  for (const auto& e : r.entries) {
    os << "  " << std::left << std::setw(18) << e.id << std::right << std::scientific << std::setprecision(3)
       << std::setw(12) << e.residual << "  " << (e.pass ? "pass" : "FAIL");
    if (!e.witness.empty()) {
      os << "  at (";
      for (std::size_t i = 0; i < e.witness.size(); ++i) os << (i ? "," : "") << e.witness[i];
      os << ")";
    }
    if (!e.note.empty()) os << "  " << e.note;
    os << "\n";
  }
  return os.str();
}

inline std::string format_complex(Complex c) {
  std::ostringstream os;
  os << std::setprecision(12) << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
  return os.str();
}

/// Letters separated by ';', components by ','.
inline WeylWord parse_word(const std::string& text, bool real, std::size_t width) {
  std::vector<Vec4> reals;
  std::vector<LatticeVec> ints;
  for (const auto& letter : split(text, ';')) {
    const auto comps = split(letter, ',');
    if (comps.size() != width)
      throw Error(ErrorKind::KindMismatch, "letter '" + letter + "' has " + std::to_string(comps.size()) +
                                               " components, expected " + std::to_string(width));
    try {
      if (real) {
        Vec4 k{};
        for (std::size_t i = 0; i < 4; ++i) {
          std::size_t used = 0;
          k[i] = std::stod(comps[i], &used);
          if (used != comps[i].size()) throw std::invalid_argument(comps[i]);
        }
        reals.push_back(k);
      } else {
        LatticeVec k;
        for (const auto& c : comps) {
          std::size_t used = 0;
          k.push_back(std::stoll(c, &used));
          if (used != c.size()) throw std::invalid_argument(c);
        }
        ints.push_back(std::move(k));
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::KindMismatch, "letter '" + letter + "' is not a list of " + (real ? "reals" : "integers"));
    }
  }
  if (real) return WeylWord{reals};
  return WeylWord{ints};
}

struct Collected {
  std::vector<AxiomReport> reports;
  json extra = json::object();
  std::string text;
};

inline Collected cmd_check(const ProblemSpec& spec, const CommandOptions& opt) {
  Collected c;
  if (spec.spacetime()) {
    const auto st = make_spacetime(spec);
    std::vector<Vec4> letters;
    if (opt.words.empty()) {
      for (int mu = 0; mu < 4; ++mu) {
        Vec4 k{};
        k[mu] = 1.0;
        letters.push_back(k);
      }
    } else {
      for (const auto& w : opt.words) {
        const auto word = parse_word(w, true, 4);
        const auto& ls = std::get<std::vector<Vec4>>(word.letters);
        letters.insert(letters.end(), ls.begin(), ls.end());
      }
    }
    c.reports.push_back(check_word_multiplier(letters, st, opt.tol));
    return c;
  }
  const auto p = make_pair(spec);
  c.reports.push_back(check_multiplier(p, opt.tol));
  if (spec.shape.is_scalar()) c.reports.push_back(check_scalar_cocycle(p, opt.tol));
  if (c.reports.front().passed()) {
    c.reports.push_back(check_action(action_from_pair(p, opt.tol), opt.tol));
  } else {
    c.text += "action checks skipped: the multiplier axioms fail\n";
  }
  return c;
}

/// The multiplier report gates every command that builds the crossed product; a failing
/// report is returned instead of raising.
inline std::optional<TwistingPair> gate(const ProblemSpec& spec, const CommandOptions& opt, Collected& c) {
  auto p = make_pair(spec);
  auto r = check_multiplier(p, opt.tol);
  if (r.passed()) return p;
  c.reports.push_back(std::move(r));
  c.text += "multiplier axioms fail at tol; nothing built\n";
  return std::nullopt;
}

inline Collected cmd_build(const ProblemSpec& spec, const CommandOptions& opt) {
  Collected c;
  const auto p = gate(spec, opt, c);
  if (!p) return c;
  const CrossedProduct cp(*p, opt.tol);
  auto doc = export_structure_constants(cp);
  const double assoc = doc.at("associativity_residual").get<double>();
  AxiomReport r;
  r.subject = "structure_constants";
  r.tol = opt.tol;
  r.entries.push_back({"associativity", assoc, {}, assoc < opt.tol, {}});
  c.reports.push_back(r);
  if (opt.out) {
    std::ofstream out(*opt.out);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + *opt.out + "'");
    out << doc.dump(2) << "\n";
    if (!out) throw Error(ErrorKind::IoError, "write to '" + *opt.out + "' failed");
    c.extra["output"] = *opt.out;
    c.text += "structure constants (dimension " + std::to_string(cp.dim()) + ") written to " + *opt.out + "\n";
  } else {
    c.extra["structure_constants"] = std::move(doc);
    c.text += "structure constants: dimension " + std::to_string(cp.dim()) + ", " +
              std::to_string(c.extra["structure_constants"]["entries"].size()) + " nonzero entries (use --out or --json)\n";
  }
  return c;
}

inline Collected cmd_norm(const ProblemSpec& spec, const CommandOptions& opt) {
  if (!opt.element) throw Error(ErrorKind::SchemaError, "norm needs --element NAME");
  Collected c;
  const auto p = gate(spec, opt, c);
  if (!p) return c;
  const CrossedProduct cp(*p, opt.tol);
  const auto f = make_element(spec, *opt.element);
  const auto rep = gns_representation(cp);
  const double l1 = l1_norm(f);
  const double cs = cstar_norm(rep, f);
  c.extra["element"] = *opt.element;
  c.extra["l1"] = l1;
  c.extra["cstar"] = cs;
  c.extra["gram_defect"] = rep.gram_defect();
  std::ostringstream os;
  os << std::setprecision(12) << *opt.element << ": l1 = " << l1 << ", cstar = " << cs << "\n";
  c.text += os.str();
  return c;
}

inline Collected cmd_roundtrip(const ProblemSpec& spec, const CommandOptions& opt) {
  Collected c;
  const auto p = gate(spec, opt, c);
  if (!p) return c;
  const double dev = roundtrip_deviation(*p, opt.tol);
  AxiomReport r;
  r.subject = "roundtrip";
  r.tol = opt.tol;
  r.entries.push_back({"roundtrip_deviation", dev, {}, dev < opt.tol, {}});
  c.reports.push_back(r);
  return c;
}

inline Collected cmd_weyl(const ProblemSpec& spec, const CommandOptions& opt) {
  Collected c;
  const auto p = gate(spec, opt, c);
  if (!p) return c;
  c.reports.push_back(weyl_relation_report(CrossedProduct(*p, opt.tol), opt.tol));
  return c;
}

inline Collected cmd_spacetime(const ProblemSpec& spec, const CommandOptions& opt) {
  if (opt.words.empty()) throw Error(ErrorKind::SchemaError, "spacetime needs at least one --word");
  Collected c;
  json results = json::array();
  if (spec.spacetime()) {
    const auto st = make_spacetime(spec);
    for (const auto& text : opt.words) {
      const auto word = parse_word(text, true, 4);
      const auto res = reduce_weyl_word(word, st);
      json phases = json::array();
      std::ostringstream os;
      os << "word \"" << text << "\"\n";
      for (std::size_t s = 0; s < res.phases.size(); ++s) {
        phases.push_back(complex_to_json(res.phases[s]));
        os << "  sample " << s << ": " << format_complex(res.phases[s]) << "\n";
      }
      const auto total = std::get<Vec4>(res.total);
      results.push_back({{"word", text}, {"phases", phases}, {"total", total}});
      c.text += os.str();
      auto r = check_word_multiplier(std::get<std::vector<Vec4>>(word.letters), st, opt.tol);
      r.subject = "spacetime_multiplier[" + text + "]";
      c.reports.push_back(std::move(r));
    }
  } else if (spec.twisting.kind == "bicharacter") {
    const auto& bc = spec.twisting.bicharacter;
    const auto p = gate(spec, opt, c);
    if (!p) return c;
    const CrossedProduct cp(*p, opt.tol);
    const auto rep = gns_representation(cp);
    for (const auto& text : opt.words) {
      const auto word = parse_word(text, false, bc.d);
      const auto res = reduce_weyl_word(word, bc);
      // Oracle: the product of the represented Weyl unitaries.
      Matrix prod = Matrix::identity(rep.dim());
      for (const auto& k : std::get<std::vector<LatticeVec>>(word.letters)) {
        prod = prod * rep.leftmul(cp.weyl_element(lattice_index(k, bc.n)));
      }
      const auto& total = std::get<LatticeVec>(res.total);
      const Matrix expect = res.phases[0] * rep.leftmul(cp.weyl_element(lattice_index(total, bc.n)));
      const double dev = max_abs_diff(prod, expect);
      results.push_back({{"word", text},
                         {"phases", json::array({complex_to_json(res.phases[0])})},
                         {"exponent", res.exponent},
                         {"order", bc.order},
                         {"total", total}});
      c.text += "word \"" + text + "\": phase exp(2 pi i " + std::to_string(res.exponent) + "/" +
                std::to_string(bc.order) + ") = " + format_complex(res.phases[0]) + "\n";
      AxiomReport r;
      r.subject = "weyl_word[" + text + "]";
      r.tol = opt.tol;
      r.entries.push_back({"gns_product", dev, {}, dev < opt.tol, {}});
      c.reports.push_back(std::move(r));
    }
  } else {
    throw Error(ErrorKind::KindMismatch, "spacetime needs spacetime or bicharacter twisting");
  }
  c.extra["words"] = std::move(results);
  return c;
}

}  // namespace detail

inline CommandResult run_command(const std::string& cmd, const ProblemSpec& spec, const CommandOptions& opt = {}) {
  using namespace detail;
  CommandResult result;
  Collected c;
  try {
    if (cmd == "check") {
      c = cmd_check(spec, opt);
    } else if (cmd == "build") {
      c = cmd_build(spec, opt);
    } else if (cmd == "norm") {
      c = cmd_norm(spec, opt);
    } else if (cmd == "roundtrip") {
      c = cmd_roundtrip(spec, opt);
    } else if (cmd == "weyl") {
      c = cmd_weyl(spec, opt);
    } else if (cmd == "spacetime") {
      c = cmd_spacetime(spec, opt);
    } else {
      throw Error(ErrorKind::UnknownKind, "unknown command '" + cmd + "'");
    }
  } catch (const Error& e) {
    result.exit_code = kExitError;
    result.document = {{"command", cmd}, {"pass", false}, {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    result.text = std::string("error: ") + e.what() + "\n";
    return result;
  }

  json reports = json::array();
  std::optional<json> first_failure;
  bool pass = true;
  for (const auto& r : c.reports) {
    reports.push_back(report_to_json(r));
    result.text += format_report(r);
    if (!r.passed() && !first_failure) {
      pass = false;
      first_failure = reports.back();
    }
  }
  result.text = c.text + result.text;
  result.document = c.extra;
  result.document["command"] = cmd;
  result.document["tol"] = opt.tol;
  result.document["pass"] = pass;
  result.document["reports"] = std::move(reports);
  if (first_failure) result.document["first_failure"] = *first_failure;
  result.exit_code = pass ? 0 : kExitFailed;
  result.text += pass ? "PASS\n" : "FAIL\n";
  return result;
}

}  // namespace ccrforge
