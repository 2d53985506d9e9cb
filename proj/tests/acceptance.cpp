// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ccrforge/crossed_product.hpp"
#include "ccrforge/weyl.hpp"
#include "support.hpp"

using namespace ccrforge;
using fx::kl;

namespace {

/// Collects failures with context; a criterion passes when nothing was recorded.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void below(double value, double tol, const std::string& what) {
    std::ostringstream os;
    os << what << " = " << value << " (tol " << tol << ")";
    expect(value < tol, os.str());
  }
  bool ok() const { return failed_ == 0; }
  std::size_t count() const { return count_; }
  std::string summary() const {
    std::ostringstream os;
    os << count_ << " checks";
    if (failed_) {
      os << ", " << failed_ << " failed:";
      for (const auto& f : failures_) os << "\n      " << f;
    }
    return os.str();
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

Complex s0(const AlgebraElement& a) { return a.block(0)(0, 0); }

// 1. alpha-twisted Z2 golden test.
void z2_golden(Checker& c) {
  const AlgebraShape cs = AlgebraShape::scalar();
  const auto spec_pair = make_pair(fx::load("example1-alpha"));
  c.below(pair_deviation(spec_pair, z2_alpha_pair(1.0)), 1e-15, "example1-alpha fixture vs alpha = 1");
  for (double alpha : {0.0, 1.0, M_PI / 2}) {
    const CrossedProduct cp(alpha == 1.0 ? spec_pair : z2_alpha_pair(alpha));
    const Complex phase = std::polar(1.0, alpha);
    const std::vector<std::pair<Complex, Complex>> basis{{1.0, 0.0}, {0.0, 1.0}};
    auto field = [&](Complex a, Complex b) {
      return CField(cp.group(), cs, {AlgebraElement::scalar(cs, a), AlgebraElement::scalar(cs, b)});
    };
    for (const auto& [a, b] : basis) {
      for (const auto& [cc, d] : basis) {
        const auto fg = cp.convolve(field(a, b), field(cc, d));
        c.below(std::abs(s0(fg[0]) - (a * cc + b * d * phase)), 1e-12, "product component 0");
        c.below(std::abs(s0(fg[1]) - (a * d + b * cc)), 1e-12, "product component 1");
      }
      const auto fs = cp.involution(field(a, b));
      c.below(std::abs(s0(fs[0]) - std::conj(a)), 1e-12, "involution component 0");
      c.below(std::abs(s0(fs[1]) - std::conj(b) * std::conj(phase)), 1e-12, "involution component 1");
    }
    c.below(max_abs_diff(cp.unit(), field(1.0, 0.0)), 1e-12, "unit is (1,0)");
    for (const auto& [a, b] : basis) {
      c.below(max_abs_diff(cp.convolve(cp.unit(), field(a, b)), field(a, b)), 1e-12, "unit * f");
      c.below(max_abs_diff(cp.convolve(field(a, b), cp.unit()), field(a, b)), 1e-12, "f * unit");
    }
  }
}

// 2. Klein golden test.
void klein_golden(Checker& c) {
  const CrossedProduct cp(make_pair(fx::load("klein-example2")));
  const auto rep = gns_representation(cp);
  const AlgebraShape cs = AlgebraShape::scalar();
  c.expect(cp.dim() == 4, "complex dimension 4");
  const Complex i(0, 1);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const Complex a(nd(rng), nd(rng)), b(nd(rng), nd(rng)), cc(nd(rng), nd(rng)), d(nd(rng), nd(rng));
    const CField f(cp.group(), cs,
                   {AlgebraElement::scalar(cs, a), AlgebraElement::scalar(cs, b), AlgebraElement::scalar(cs, cc),
                    AlgebraElement::scalar(cs, d)});
    const Complex expect[4][4] = {{a, b, cc, d}, {b, a, -i * d, i * cc}, {cc, i * d, a, -i * b}, {d, -i * cc, i * b, a}};
    const auto m = rep.leftmul(f);
    double dev = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s) dev = std::max(dev, std::abs(m(r, s) - expect[r][s]));
    c.below(dev, 1e-12, "GNS matrix vs displayed form");
  }
  const auto centre = center_dimension(cp);
  c.expect(centre == 1, "center dimension " + std::to_string(centre) + ", expected 1");
  const auto w = [&](char x) { return cp.weyl_element(kl(x)); };
  c.below(max_abs_diff(cp.convolve(w('i'), w('j')), i * w('k')), 1e-12, "W(i)W(j) = i W(k)");
  c.below(max_abs_diff(cp.convolve(w('j'), w('i')), -i * w('k')), 1e-12, "W(j)W(i) = -i W(k)");
  for (char x : {'i', 'j', 'k'})
    c.below(max_abs_diff(cp.convolve(w(x), w(x)), cp.unit()), 1e-12, std::string("W(") + x + ")^2 = 1");
}

std::vector<fx::Named> randomized_pairs() {
  std::mt19937_64 rng(0xacce55);
  const std::vector<FiniteGroup> groups{klein_group(), cyclic_group(3), symmetric3_group()};
  const std::vector<AlgebraShape> shapes{AlgebraShape::scalar(), AlgebraShape({2}), AlgebraShape({2, 1})};
  std::vector<fx::Named> out;
  for (int t = 0; t < 20; ++t) {
    const auto& g = groups[t % 3];
    const auto& s = shapes[(t / 3) % 3];
    // Klein pairs start from the cocycle, the others from the trivial pair.
    const auto base = t % 3 == 0 ? klein_pair(s) : trivial_pair(g, s);
    out.push_back({"random#" + std::to_string(t), random_valid_pair(base, rng)});
  }
  return out;
}

// 3. Pair <-> action round trip.
void roundtrip(Checker& c) {
  for (const auto& [name, p] : fx::fixture_pairs()) c.below(roundtrip_deviation(p), 1e-10, name);
  for (const auto& [name, p] : randomized_pairs()) {
    c.expect(!p.sigma_trivial() || p.shape().is_scalar(), name + " has nontrivial sigma");
    c.below(roundtrip_deviation(p), 1e-10, name);
  }
  for (const auto& [g, s] : std::vector<std::pair<FiniteGroup, AlgebraShape>>{
           {klein_group(), AlgebraShape::scalar()}, {symmetric3_group(), AlgebraShape({2, 1})}, {cyclic_group(3), AlgebraShape({2})}}) {
    const auto p = pair_from_action(fx::left_translation_table(g, s));
    c.below(pair_deviation(p, trivial_pair(g, s)), 1e-12, "left translation recovers xi = 1, sigma = id");
  }
  for (double alpha : {0.0, 1.0, M_PI / 2}) {
    const auto p = pair_from_action(fx::z2_raw_table(alpha));
    c.below(std::abs(s0(p.xi(1, 1)) - std::polar(1.0, alpha)), 1e-12, "xi(1,1) = e^{i alpha}");
    c.below(pair_deviation(p, z2_alpha_pair(alpha)), 1e-12, "alpha-twisted Z2 raw table recovers the pair");
    c.expect(p.sigma_trivial(), "alpha-twisted Z2 sigma trivial");
    c.below(roundtrip_deviation(fx::z2_raw_table(alpha)), 1e-12, "alpha-twisted Z2 raw table round trip");
  }
}

// 4. Axiom suites on fixtures, and their mutated variants.
void axioms(Checker& c) {
  for (const auto& [name, p] : fx::fixture_pairs()) {
    const auto m = check_multiplier(p);
    for (const char* id : {"M1", "M2", "M3", "unitxi", "sigmainvert"}) c.below(m.at(id).residual, 1e-10, name + " " + id);
    const auto a = check_action(action_from_pair(p));
    for (const char* id : {"A1", "A2", "A3", "A4", "tautau", "zetacon"}) c.below(a.at(id).residual, 1e-10, name + " " + id);
  }
  for (const auto& t : {fx::left_translation_table(klein_group(), AlgebraShape({2})), fx::z2_raw_table(1.0)})
    c.expect(check_action(t).passed(), "explicit table passes check_action");

  const auto broken_xi = make_pair(fx::load("mutated/klein-xi-ij-one"));
  c.below(pair_deviation(broken_xi, fx::klein_broken_xi()), 1e-15, "mutated Klein spec matches library fixture");
  const auto mx = check_multiplier(broken_xi);
  c.expect(!mx.passed() && mx.at("M2").residual >= 1e-2, "broken Klein cocycle: M2 fails loudly");
  const auto ms = check_multiplier(make_pair(fx::load("mutated/z3-sigma-not-homomorphism")));
  c.expect(!ms.passed() && ms.at("M3").residual >= 1e-2, "non-homomorphic sigma: M3 fails loudly");
  const auto a4 = check_action(fx::z2_scaled_table());
  c.expect(!a4.passed() && a4.at("A4").residual >= 1e-2, "scaled tau: A4 fails loudly");
  const auto a2 = check_action(fx::z2_phased_table());
  c.expect(!a2.passed() && a2.at("A2").residual >= 1e-2, "stray phase: A2 fails loudly");
}

// 5. Crossed-product identities.
void crossed_product_identities(Checker& c) {
  std::mt19937_64 rng(55);
  for (const auto& [name, p] : fx::fixture_pairs()) {
    const CrossedProduct cp(p);
    const auto& g = cp.group();
    const auto rep = gns_representation(cp);
    const std::size_t d = cp.dim();
    std::vector<CField> basis, rnd;
    for (std::size_t k = 0; k < d; ++k) basis.push_back(CField::basis(g, cp.shape(), k));
    for (int r = 0; r < 50; ++r) rnd.push_back(CField::random(g, cp.shape(), rng));
    std::vector<CField> all = basis;
    all.insert(all.end(), rnd.begin(), rnd.end());
    // Pairs: each basis field against a random one, and consecutive random fields.
    std::vector<std::pair<const CField*, const CField*>> pairs;
    for (std::size_t k = 0; k < d; ++k) {
      pairs.push_back({&basis[k], &rnd[k % rnd.size()]});
      pairs.push_back({&rnd[k % rnd.size()], &basis[k]});
    }
    for (std::size_t r = 0; r + 1 < rnd.size(); ++r) pairs.push_back({&rnd[r], &rnd[r + 1]});

    double assoc = associativity_residual(structure_constants(cp));
    for (std::size_t r = 0; r + 2 < rnd.size(); ++r)
      assoc = std::max(assoc, max_abs_diff(cp.convolve(cp.convolve(rnd[r], rnd[r + 1]), rnd[r + 2]),
                                           cp.convolve(rnd[r], cp.convolve(rnd[r + 1], rnd[r + 2]))));
    c.below(assoc, 1e-10, name + " associativity");

    double star2 = 0, antihom = 0, leftmul = 0, iso = 0, sub = 0, l1star = 0, l1tau = 0, bound = 0, cstar_id = 0,
           cstar_tau = 0, positivity = 0;
    for (const auto& f : all) {
      const auto fs = cp.involution(f);
      star2 = std::max(star2, max_abs_diff(cp.involution(fs), f));
      const double l1 = l1_norm(f);
      l1star = std::max(l1star, std::abs(l1_norm(fs) - l1) / l1);
      const double n = cstar_norm(rep, f);
      bound = std::max(bound, (n - l1) / l1);
      cstar_id = std::max(cstar_id, std::abs(cstar_norm(rep, cp.convolve(fs, f)) - n * n) / (n * n));
      for (Element x = 0; x < g.size(); ++x) {
        const auto tf = cp.apply(x, f);
        l1tau = std::max(l1tau, std::abs(l1_norm(tf) - l1) / l1);
        cstar_tau = std::max(cstar_tau, std::abs(cstar_norm(rep, tf) - n) / n);
      }
    }
    for (const auto& [pf, pg] : pairs) {
      const auto& f = *pf;
      const auto& h = *pg;
      const auto fh = cp.convolve(f, h);
      antihom = std::max(antihom, max_abs_diff(cp.involution(fh), cp.convolve(cp.involution(h), cp.involution(f))));
      sub = std::max(sub, (l1_norm(fh) - l1_norm(f) * l1_norm(h)) / (l1_norm(f) * l1_norm(h)));
      const auto fstar_h = cp.convolve(cp.involution(f), h);
      for (Element x = 0; x < g.size(); ++x) {
        const auto tf = cp.apply(x, f);
        leftmul = std::max(leftmul, max_abs_diff(cp.apply(x, fh), cp.convolve(tf, h)));
        iso = std::max(iso, max_abs_diff(cp.convolve(cp.involution(tf), cp.apply(x, h)), fstar_h));
      }
      const Complex v = vector_state(cp, f, cp.convolve(cp.involution(h), h));
      positivity = std::max(positivity, -v.real());
    }
    c.below(star2, 1e-10, name + " f** = f");
    c.below(antihom, 1e-10, name + " (fg)* = g* f*");
    c.below(leftmul, 1e-10, name + " tau_x(fg) = (tau_x f) g");
    c.below(iso, 1e-10, name + " (tau_x f)*(tau_x g) = f* g");
    c.expect(sub <= 1e-10, name + " ||fg||_1 <= ||f||_1 ||g||_1");
    c.below(l1star, 1e-10, name + " ||f*||_1 = ||f||_1");
    c.below(l1tau, 1e-10, name + " ||tau_x f||_1 = ||f||_1");
    c.expect(bound <= 1e-10, name + " ||f|| <= ||f||_1");
    c.below(cstar_id, 1e-8, name + " ||f* f|| = ||f||^2");
    c.below(cstar_tau, 1e-8, name + " ||tau_x f|| = ||f||");
    c.expect(positivity <= 1e-12, name + " vector state positivity");
  }
}

// 6. Weyl relations.
void weyl_relations(Checker& c) {
  for (const auto& [name, p] : fx::fixture_pairs()) {
    const auto r = weyl_relation_report(CrossedProduct(p), 1e-12);
    for (const auto& e : r.entries) c.below(e.residual, 1e-12, name + " " + e.id);
  }
  const CrossedProduct cp(make_pair(fx::load("z5sq-bicharacter")));
  const auto rep = gns_representation(cp);
  const auto u1 = rep.leftmul(cp.weyl_element(lattice_index({1, 0}, 5)));
  const auto u2 = rep.leftmul(cp.weyl_element(lattice_index({0, 1}, 5)));
  c.below(max_abs_diff(u1 * u2, std::polar(1.0, 2 * M_PI / 5) * (u2 * u1)), 1e-12, "U(e1)U(e2) = e^{2 pi i/5} U(e2)U(e1)");
}

// 7. Quantum-spacetime demo.
void spacetime(Checker& c) {
  bool accepted = true;
  try {
    build_sigma_matrix({1, 0, 0}, {1, 0, 0});
  } catch (const Error&) {
    accepted = false;
  }
  c.expect(accepted, "((1,0,0),(1,0,0)) accepted");
  bool rejected = false;
  try {
    build_sigma_matrix({1, 0, 0}, {0, 1, 0});
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::ConstraintViolation;
  }
  c.expect(rejected, "e.m = 0 rejected");

  const auto spec = fx::load("spacetime-demo");
  const auto st = make_spacetime(spec);
  c.expect(st.samples.size() == 2, "two shipped samples");
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-3, 3);
  for (std::size_t s = 0; s < st.samples.size(); ++s) {
    const auto& e = st.samples[s].e;
    const auto& m = st.samples[s].m;
    // Independent assembly of eps(e, m).
    const double eps[4][4] = {{0, e[0], e[1], e[2]},
                              {-e[0], 0, m[2], -m[1]},
                              {-e[1], -m[2], 0, m[0]},
                              {-e[2], m[1], -m[0], 0}};
    double direct = 0, via_words = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const Vec4 k{u(rng), u(rng), u(rng), u(rng)}, kp{u(rng), u(rng), u(rng), u(rng)};
      double q = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) q += k[a] * eps[a][b] * kp[b];
      const Complex phase = commutator_phase(k, kp, st.samples[s]);
      direct = std::max(direct, std::abs(phase - std::polar(1.0, q)));
      const auto fwd = reduce_weyl_word(WeylWord{std::vector<Vec4>{k, kp}}, st).phases[s];
      const auto bwd = reduce_weyl_word(WeylWord{std::vector<Vec4>{kp, k}}, st).phases[s];
      via_words = std::max(via_words, std::abs(phase - fwd / bwd));
    }
    c.below(direct, 1e-12, "sample " + std::to_string(s) + " commutator phase = exp(i k eps k')");
    c.below(via_words, 1e-12, "sample " + std::to_string(s) + " commutator phase = two-letter word ratio");
  }

  const auto zspec = fx::load("z5sq-bicharacter");
  const CrossedProduct cp(make_pair(zspec));
  const auto rep = gns_representation(cp);
  const auto& bc = zspec.twisting.bicharacter;
  std::uniform_int_distribution<std::int64_t> lat(-6, 6);
  double worst = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<LatticeVec> letters{{lat(rng), lat(rng)}, {lat(rng), lat(rng)}, {lat(rng), lat(rng)}};
    const auto res = reduce_weyl_word(WeylWord{letters}, bc);
    Matrix prod = Matrix::identity(rep.dim());
    for (const auto& k : letters) prod = prod * rep.leftmul(cp.weyl_element(lattice_index(k, 5)));
    const auto expect = res.phases[0] * rep.leftmul(cp.weyl_element(lattice_index(std::get<LatticeVec>(res.total), 5)));
    worst = std::max(worst, max_abs_diff(prod, expect));
  }
  c.below(worst, 1e-12, "three-letter words vs GNS product on Z5^2");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
      {"AC1 alpha-twisted Z2 product, involution and unit", z2_golden},
      {"AC2 Klein GNS matrix, trivial center, Pauli relations", klein_golden},
      {"AC3 pair/action round trip on fixtures, 20 random pairs, raw tables", roundtrip},
      {"AC4 multiplier and action axiom suites, mutated fixtures rejected", axioms},
      {"AC5 crossed-product identities on basis + 50 random fields", crossed_product_identities},
      {"AC6 Weyl relations and the Z5^2 commutation phase", weyl_relations},
      {"AC7 quantum-spacetime phases and three-letter words", spacetime},
  };
  int failed = 0;
  for (const auto& [title, run] : criteria) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s (%s, %.2fs)\n", c.ok() ? "PASS" : "FAIL", title.c_str(), c.summary().c_str(), secs);
    if (!c.ok()) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
