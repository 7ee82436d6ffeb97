#pragma once

#include "mirror/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mirror {

using IndexSet = std::vector<int>;  // sorted, 0-based

struct GitPresentation {
  int n = 0;
  int r = 0;
  int r_prime = 0;
  IntMat b;        // r vectors in Z^n
  IntMat charge;   // k x r, columns are the D_i in the p-basis
  QVec eta;        // stability in the p-basis
  QMat p_basis;    // rows: p_a in the coordinates of the input charge rows
  QMat ell;        // r x k splitting, sum_i l_i^(a) ell_ib = delta_ab
  int k() const { return static_cast<int>(charge.size()); }
  QVec divisor(int i) const;       // D_i in L^vee coordinates
  QVec ray(int i) const;           // b_i as rational vector
  Q pairing(int i, const QVec& beta) const;  // D_i(beta)
};

struct GitInput {
  IntMat b;
  int r_prime = -1;                     // defaults to all vectors being rays
  std::optional<IntMat> charge;         // override for the kernel basis
  std::optional<QVec> eta;              // k-vector in the charge-row basis
  std::optional<QVec> eta_weights;      // r-vector: eta = sum_i w_i D_i
  std::optional<QMat> p_basis;          // override, rows in charge-row coordinates
};

IntMat derive_charge_matrix(const IntMat& b, int n);
GitPresentation make_git(const GitInput& input);

struct StackyFan {
  std::vector<IndexSet> cones;         // all cones, including the empty one
  std::vector<IndexSet> maximal_cones;
  std::set<IndexSet> anticones;
  bool complete = false;
  bool is_cone(const IndexSet& s) const;
};

std::set<IndexSet> anticones(const GitPresentation& git);
StackyFan fan_from_anticones(const GitPresentation& git, const std::set<IndexSet>& anticones);
StackyFan build_fan(const GitPresentation& git);
IndexSet complement(const IndexSet& s, int r);

struct BoxElement {
  IntVec v;
  IndexSet host_cone;
  QVec c_of_v;  // length r, zero off the host cone
  Q age;
  bool operator==(const BoxElement& o) const { return v == o.v; }
};

std::vector<BoxElement> box_elements(const StackyFan& fan, const GitPresentation& git);
BoxElement box_inverse(const BoxElement& v, const GitPresentation& git);
BoxElement zero_box(const GitPresentation& git);

struct CurveClass {
  QVec beta;
  QVec pairings;
  BoxElement sector;
  Q degree;
  IndexSet witness_cone;
};

std::vector<CurveClass> enumerate_Keff(const GitPresentation& git, const StackyFan& fan, const Q& degree_bound);

struct PositivityReport {
  bool fano = false;
  QVec rho_hat;
  struct ConeWitness {
    IndexSet cone;
    bool contained = false;
    QVec coefficients;  // rho_hat = sum coefficients_j D_{I_sigma[j]}
  };
  std::vector<ConeWitness> witnesses;
};

PositivityReport check_positivity(const GitPresentation& git, const StackyFan& fan);

// Torus-fixed data of the sector X_v used by localization.
struct SectorGeometry {
  BoxElement sector;
  int dim = 0;
  std::vector<IndexSet> fixed_cones;  // maximal cones containing the host cone
  std::vector<bool> in_star;          // ray i restricts nontrivially to X_v
  Z generic_stabilizer;               // |(N cap span host) : sum_host Z b_i|
};

SectorGeometry star_fan(const BoxElement& v, const StackyFan& fan, const GitPresentation& git);

struct LineBundleTwist {
  QVec c;  // length r
};

QVec h_of(const LineBundleTwist& twist, const GitPresentation& git);

struct Splittings {
  std::map<int, QVec> dvee;                 // j >= r' -> D_j^vee in L coordinates
  std::map<int, std::map<int, Q>> s_coeffs;  // j -> (ray i -> s_ji)
  QMat ell;
};

Splittings splittings(const GitPresentation& git, const StackyFan& fan);

// Nef membership over all maximal cones.
bool in_nef(const QVec& x, const GitPresentation& git, const StackyFan& fan);
// |N : sum_{i in cone} Z b_i| for a maximal cone.
Z cone_index(const IndexSet& cone, const GitPresentation& git);
// Coefficients of x in the rays of a simplicial cone (nullopt if not in the span).
std::optional<QVec> cone_coordinates(const IndexSet& cone, const QVec& x, const GitPresentation& git);

std::string index_set_string(const IndexSet& s);  // 1-based, e.g. "{1,3}"

}  // namespace mirror
