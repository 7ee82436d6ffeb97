#include "instances.hpp"

#include "mirror/amodel.hpp"
#include "mirror/bmodel.hpp"
#include "mirror/ccc.hpp"
#include "mirror/error.hpp"
#include "mirror/integration.hpp"
#include "mirror/special.hpp"
#include "mirror/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace mirror;
using namespace testing_instances;

namespace {

const cd kTwoPiI(0, 2 * kPi);

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

LineBundleTwist twist_of(std::vector<long long> c) {
  LineBundleTwist t;
  for (auto x : c) t.c.push_back(Q(x));
  return t;
}

// Im t compatible with the twist: -2 pi h.
std::vector<cd> twisted_t(const GitPresentation& g, const LineBundleTwist& tw, std::vector<double> re_t) {
  auto h = h_of(tw, g);
  std::vector<cd> t;
  for (size_t a = 0; a < re_t.size(); ++a) t.emplace_back(re_t[a], -2 * kPi * to_double(h[a]));
  return t;
}

cd za_normalized(const GitPresentation& g, const LineBundleTwist& tw, const ComplexParams& p, double tol = 1e-13) {
  return zA_series(g, build_fan(g), tw, p, {.tol = tol}).charge.value;
}

cd mb_normalized(const GitPresentation& g, const LineBundleTwist& tw, const ComplexParams& p, const Kappa& kappa,
                 double tol) {
  auto v = mb_inverse_fourier(g, tw, p, make_mb_spec(g, tw, p, tol)).value;
  return kappa.value * v * std::pow(kTwoPiI, -g.n);
}

cd fiber_normalized(const GitPresentation& g, const LineBundleTwist& tw, const ComplexParams& p, const Kappa& kappa,
                    double tol) {
  std::vector<double> im_t;
  for (const auto& x : p.t) im_t.push_back(x.imag());
  auto v = fiber_oscillatory(g, build_fan(g), tw, p, default_chart(g, tw, im_t), tol).value;
  return kappa.value * v * std::pow(kTwoPiI, -g.n);
}

double worst_pairwise(const std::vector<cd>& v) {
  double worst = 0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) worst = std::max(worst, rel(v[i], v[j]));
  return worst;
}

RationalPoly monomial(int r, std::initializer_list<int> idx) {
  RationalPoly p;
  p.nvars = r;
  Exponents e(r, 0);
  for (int i : idx) ++e[i];
  p.terms[e] = Q(1);
  return p;
}

Q integrate_on_x(const GitPresentation& git, const RationalPoly& p, std::uint64_t seed) {
  auto fan = build_fan(git);
  return localize_integral(star_fan(zero_box(git), fan, git), p, git, {.seed = seed});
}

std::vector<IndexSet> subsets_of(const IndexSet& s) {
  std::vector<IndexSet> out;
  for (unsigned mask = 0; mask < (1u << s.size()); ++mask) {
    IndexSet x;
    for (size_t j = 0; j < s.size(); ++j)
      if (mask & (1u << j)) x.push_back(s[j]);
    out.push_back(x);
  }
  return out;
}

Outcome cahen_mellin() {
  GitPresentation g;
  g.r = g.r_prime = 1;
  g.charge = {{1}};
  g.ell = {{Q(1)}};
  LineBundleTwist zero{{Q(0)}};
  double worst = 0;
  for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    ComplexParams p{{cd(t)}, 1.0};
    auto v = mb_inverse_fourier(g, zero, p, make_mb_spec(g, zero, p, 1e-12)).value;
    worst = std::max(worst, std::abs(v - std::exp(-std::exp(t))));
  }
  return {worst < 1e-10, "max abs error " + fmt_double(worst)};
}

Outcome p1_three_way(const Kappa& kappa) {
  auto g = p1();
  double worst = 0, worst_bessel = 0;
  for (double t : {-2.0, -3.0, -4.0})
    for (double z : {0.5, 1.0, 2.0})
      for (auto c : {std::vector<long long>{0, 0}, std::vector<long long>{1, 0}}) {
        auto tw = twist_of(c);
        ComplexParams p{twisted_t(g, tw, {t}), z};
        cd za = za_normalized(g, tw, p);
        worst = std::max(worst, worst_pairwise({za, mb_normalized(g, tw, p, kappa, 1e-11),
                                                fiber_normalized(g, tw, p, kappa, 1e-11)}));
        if (c[0] == 0 && z == 1.0) {
          cd bessel = kappa.value * 2.0 * std::cyl_bessel_k(0.0, 2 * std::exp(t / 2)) / kTwoPiI;
          worst_bessel = std::max(worst_bessel, std::abs(za - bessel));
        }
      }
  return {worst < 1e-6 && worst_bessel < 1e-8,
          "max pairwise relative " + fmt_double(worst) + ", Bessel abs " + fmt_double(worst_bessel)};
}

Outcome p2_three_way(const Kappa& kappa) {
  auto g = p2();
  double worst = 0;
  for (auto c : {std::vector<long long>{0, 0, 0}, std::vector<long long>{1, 0, 0}}) {
    auto tw = twist_of(c);
    ComplexParams p{twisted_t(g, tw, {-3.0}), 1.0};
    worst = std::max(worst, worst_pairwise({za_normalized(g, tw, p), mb_normalized(g, tw, p, kappa, 1e-10),
                                            fiber_normalized(g, tw, p, kappa, 1e-9)}));
  }
  return {worst < 1e-5, "max pairwise relative " + fmt_double(worst)};
}

Outcome wp12_sector(const Kappa& kappa) {
  auto g = wp12();
  auto fan = build_fan(g);
  auto box = box_elements(fan, g);
  bool box_ok = box.size() == 2 && box[0].v == IntVec{0} && box[0].age == Q(0) && box[1].v == IntVec{-1} &&
                box[1].age == Q(1, 2);
  bool keff_ok = true;
  auto curves = enumerate_Keff(g, fan, Q(5));
  keff_ok = curves.size() == 11;
  for (size_t j = 0; keff_ok && j < curves.size(); ++j) keff_ok = curves[j].beta == QVec{Q(static_cast<long>(j), 2)};
  auto tw = twist_of({0, 0});
  ComplexParams p{{cd(-3)}, 1.0};
  double r = rel(za_normalized(g, tw, p), mb_normalized(g, tw, p, kappa, 1e-11));
  return {box_ok && keff_ok && r < 1e-5, std::string("Box ") + (box_ok ? "ok" : "wrong") + ", K_eff " +
                                             (keff_ok ? "ok" : "wrong") + ", relative " + fmt_double(r)};
}

Outcome f1_two_param(const Kappa& kappa) {
  auto g = f1();
  auto tw = twist_of({0, 0, 0, 0});
  ComplexParams p{{cd(-3), cd(-3)}, 1.0};
  double r = rel(za_normalized(g, tw, p, 1e-12), mb_normalized(g, tw, p, kappa, 1e-8));
  return {r < 1e-4, "relative " + fmt_double(r)};
}

Outcome h_invariance() {
  auto g = p2();
  auto fan = build_fan(g);
  ComplexParams p{{cd(-3)}, 1.0};
  auto a = zA_series(g, fan, twist_of({0, 0, 0}), p);
  auto b = zA_series(g, fan, twist_of({1, -1, 0}), p);
  bool same = a.table.size() == b.table.size() && !a.table.empty();
  for (size_t j = 0; same && j < a.table.size(); ++j)
    same = a.table[j].beta == b.table[j].beta && a.table[j].value == b.table[j].value;
  return {same, std::to_string(a.table.size()) + " terms compared"};
}

Outcome grade_grid(const Kappa& kappa) {
  auto g = p2();
  auto tw = twist_of({0, 0, 0});
  int points = 0, agree = 0, converged = 0;
  double worst = 0;
  for (int j = 0; j <= 20; ++j) {
    double im = -3 * kPi + 0.3 * kPi * j;
    if (std::abs(std::abs(im) - 1.5 * kPi) < 1e-9) continue;
    ++points;
    ComplexParams p{{cd(-3, im)}, 1.0};
    auto gc = grade_restriction_check(g, tw, {im});
    bool grade = gc.pass && gc.margin > 0;
    bool decays = mb_integrand_decays(g, tw, p, default_anchor(g));
    if (decays) {
      ++converged;
      worst = std::max(worst, rel(mb_normalized(g, tw, p, kappa, 1e-10), za_normalized(g, tw, p)));
    }
    if (grade == decays) ++agree;
  }
  return {agree == points && worst < 1e-6,
          std::to_string(agree) + "/" + std::to_string(points) + " points agree, " + std::to_string(converged) +
              " convergent, max relative vs series " + fmt_double(worst)};
}

Outcome gamma_identities() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-20, 20);
  int checked = 0;
  double worst_reflection = 0, worst_shift = 0, worst_residue = 0;
  while (checked < 1000) {
    cd z(u(rng), u(rng));
    if (std::abs(z) > 20) continue;
    if (std::abs(z.imag()) < 0.05 && std::abs(z.real() - std::round(z.real())) < 0.05) continue;
    worst_reflection = std::max(worst_reflection, rel(gamma(z) * gamma(1.0 - z) * std::sin(kPi * z), cd(kPi)));
    worst_shift = std::max(worst_shift, rel(gamma(z + 1.0), z * gamma(z)));
    ++checked;
  }
  double fact = 1;
  for (int m = 0; m <= 10; ++m) {
    if (m > 0) fact *= m;
    double expected = ((m % 2) ? -1.0 : 1.0) / fact;
    worst_residue = std::max(worst_residue, std::abs(gamma_laurent(Q(-m), 3).coefficient(-1) - expected));
  }
  return {worst_reflection < 1e-12 && worst_shift < 1e-12 && worst_residue < 1e-14,
          "reflection " + fmt_double(worst_reflection) + ", shift " + fmt_double(worst_shift) + ", residue " +
              fmt_double(worst_residue)};
}

Outcome localization() {
  // F1 with rays (1,0),(0,1),(-1,-1),(0,-1)
  const int table[4][4] = {{0, 1, 0, 1}, {1, 1, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, -1}};
  auto g2 = p2();
  auto g12 = wp12();
  auto gf = f1();
  bool fixed = true;
  for (std::uint64_t seed : {17ULL, 9001ULL}) {
    fixed = fixed && integrate_on_x(g2, monomial(3, {0, 0}), seed) == 1;
    fixed = fixed && integrate_on_x(g12, monomial(2, {1}), seed) == Q(1, 2);
  }
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> pick(0, 3);
  int matched = 0;
  for (int trial = 0; trial < 50; ++trial) {
    int i = pick(rng), j = pick(rng);
    if (integrate_on_x(gf, monomial(4, {i, j}), rng()) == table[i][j]) ++matched;
  }
  return {fixed && matched == 50, std::string("fixed values ") + (fixed ? "ok" : "wrong") + ", F1 monomials " +
                                      std::to_string(matched) + "/50"};
}

Outcome cycle_suite() {
  auto g = p2();
  auto fan = build_fan(g);
  std::map<std::pair<int, int>, int> expected{{{0, 1}, 0}, {{0, 2}, 0}, {{1, 1}, 0}, {{3, 0}, 0}, {{0, 0}, 1},
                                              {{0, 3}, 1}, {{1, 2}, 1}, {{2, 0}, 1}, {{2, 1}, 1}, {{1, 0}, -1}};
  int table_ok = 0, table_total = 0;
  IndexSet all{0, 1, 2};
  for (const auto& I : subsets_of(all)) {
    IndexSet rest;
    for (int i : all)
      if (!std::count(I.begin(), I.end(), i)) rest.push_back(i);
    for (const auto& J : subsets_of(rest)) {
      ++table_total;
      if (multiplicity_unchecked(I, J, g, fan) == expected.at({static_cast<int>(I.size()), static_cast<int>(J.size())}))
        ++table_ok;
    }
  }
  std::mt19937 rng(11);
  int closed = 0, agree = 0, total = 0;
  for (auto gg : {p2(), f1()}) {
    auto ff = build_fan(gg);
    for (int trial = 0; trial < 50; ++trial) {
      QVec a;
      for (int i = 0; i < gg.r_prime; ++i) a.push_back(Q(static_cast<int>(rng() % 2001) - 1000, 613));
      auto arr = arrangement_cells(a, gg, ff);
      auto cell = ccc_cycle(arr, gg, ff, CycleBackend::CellFormula);
      auto def = ccc_cycle(arr, gg, ff, CycleBackend::Definition);
      ++total;
      if (boundary(cell, gg).zero) ++closed;
      if (cell.coefficients == def.coefficients) ++agree;
    }
  }
  bool ample = true;
  auto g1 = p1();
  auto f1fan = build_fan(g1);
  ample = ample && ccc_cycle({Q(1), Q(1)}, g1, f1fan, CycleBackend::CellFormula).coefficients ==
                       moment_polytope_cycle({Q(1), Q(1)}, g1, f1fan).coefficients;
  for (QVec a : {QVec{Q(3, 10), Q(2, 5), Q(1, 2)}, QVec{Q(1), Q(1), Q(1)}})
    ample = ample &&
            ccc_cycle(a, g, fan, CycleBackend::CellFormula).coefficients == moment_polytope_cycle(a, g, fan).coefficients;
  return {table_ok == table_total && closed == total && agree == total && ample,
          "table " + std::to_string(table_ok) + "/" + std::to_string(table_total) + ", closed " +
              std::to_string(closed) + "/" + std::to_string(total) + ", backends agree " + std::to_string(agree) +
              "/" + std::to_string(total) + ", moment polytope " + (ample ? "ok" : "wrong")};
}

Outcome syz_spot(const Kappa& kappa) {
  auto g = p1();
  auto fan = build_fan(g);
  auto tw = twist_of({0, 0});
  ComplexParams p{{cd(-3, 0.5)}, 1.0};
  cd syz = zB_over_syz_n1(g, fan, tw, p, 1e-11).value;
  cd za = zA_series(g, fan, tw, p, {.tol = 1e-13}).charge.value;
  double r = rel(syz, kTwoPiI * za / kappa.value);
  return {r < 1e-6, "relative " + fmt_double(r)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const std::string cli = MIRROR_CLI_PATH;
  const std::string config = std::string(MIRROR_FIXTURE_DIR) + "/p2.json";
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    std::string out = "acceptance_verify_" + std::to_string(run) + ".json";
    std::string cmd = "\"" + cli + "\" verify \"" + config + "\" --seed 7 --quiet --out " + out;
    if (std::system(cmd.c_str()) != 0) return {false, "verify run failed"};
    outputs.push_back(slurp(out));
    std::remove(out.c_str());
  }
  bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  return {same, std::to_string(outputs[0].size()) + " bytes, " + (same ? "identical" : "different")};
}

}  // namespace

int main() {
  Kappa kappa = calibrate_kappa();
  struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "Cahen-Mellin convention", 1, cahen_mellin},
      {2, "P1 three-way", 10, [&] { return p1_three_way(kappa); }},
      {3, "P2 three-way", 60, [&] { return p2_three_way(kappa); }},
      {4, "P(1,2) twisted sector", 0, [&] { return wp12_sector(kappa); }},
      {5, "F1 two-parameter", 120, [&] { return f1_two_param(kappa); }},
      {6, "h-invariance", 0, h_invariance},
      {7, "grade restriction grid", 0, [&] { return grade_grid(kappa); }},
      {8, "Gamma identities", 0, gamma_identities},
      {9, "localization", 0, localization},
      {10, "cycle suite", 0, cycle_suite},
      {11, "SYZ integral on P1", 0, [&] { return syz_spot(kappa); }},
      {12, "determinism", 0, determinism},
  };
  std::cout << "kappa = " << kappa.label << " (residual " << fmt_double(kappa.residual) << ")\n";
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
    }
    if (!o.pass) ++failures;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
              << buf << "]\n"
              << std::flush;
  }
  return failures == 0 ? 0 : 1;
}
