#pragma once

#include "mirror/bmodel.hpp"
#include "mirror/toric.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mirror {

// Closure of {<m,b_i> = -a_i (i in I), > -a_j (j in J), < -a_l otherwise} in M_R.
struct Cell {
  IndexSet I;
  IndexSet J;
  int dim = 0;
  QVec interior_point;
  std::vector<QVec> vertices;
  std::vector<QVec> rays;
  bool cone = false;     // I generates a cone of the fan
  int multiplicity = 0;  // m_{I,J}; zero when I is not a cone
  bool bounded() const { return rays.empty(); }
};

struct Arrangement {
  QVec a;
  std::vector<Cell> cells;  // ordered lexicographically by (I, J)
  bool degenerate = false;
};

Arrangement arrangement_cells(const QVec& a, const GitPresentation& git, const StackyFan& fan);

// sum_{K subset J, I+K a cone} (-1)^{n-|I|-|K|}; NotACone unless I is a cone.
int multiplicity(const IndexSet& I, const IndexSet& J, const GitPresentation& git, const StackyFan& fan);
int multiplicity_unchecked(const IndexSet& I, const IndexSet& J, const GitPresentation& git, const StackyFan& fan);

// Piece tau x (-sigma_I); positive orientation means the frame (tangent of tau, -b_I) is positive in R^n.
struct CycleKey {
  IndexSet I;
  IndexSet J;
  auto operator<=>(const CycleKey&) const = default;
};

struct CCCycle {
  QVec a;
  std::map<CycleKey, int> coefficients;  // nonzero coefficients on open cells of H_I times -sigma_I
};

enum class CycleBackend { Definition, CellFormula };

CCCycle ccc_cycle(const QVec& a, const GitPresentation& git, const StackyFan& fan, CycleBackend backend);
CCCycle ccc_cycle(const Arrangement& arr, const GitPresentation& git, const StackyFan& fan, CycleBackend backend);

struct BoundaryReport {
  bool zero = false;
  std::map<std::pair<CycleKey, IndexSet>, int> residual;  // ((K, J'), L) -> coefficient, nonzero only
};

BoundaryReport boundary(const CCCycle& cycle, const GitPresentation& git);

// Moment polytope cycle sum_F F x (-C_F) for a; coefficient 1 on every face cell of Delta_a.
CCCycle moment_polytope_cycle(const QVec& a, const GitPresentation& git, const StackyFan& fan);

bool is_fano_polytope(const GitPresentation& git, const StackyFan& fan);

class RhoMap {
 public:
  RhoMap(const GitPresentation& git, const StackyFan& fan);
  QVec operator()(const QVec& n) const;
  // max_{i in I} <m,b_i> > <m,b_j> for all j outside I
  bool in_U(const IndexSet& I, const QVec& m) const;
  const std::map<IndexSet, QVec>& dual_barycenters() const { return dual_bary_; }

 private:
  const GitPresentation* git_;
  const StackyFan* fan_;
  std::map<IndexSet, QVec> m_sigma_;
  std::map<IndexSet, QVec> dual_bary_;
};

// Samples barycenters and random points of -sigma_I for every cone.
bool rho_containment_check(const RhoMap& rho, const GitPresentation& git, const StackyFan& fan, int samples,
                           unsigned seed);

struct SyzPiece {
  Cell cell;
  int coefficient = 0;          // multiplicity
  std::vector<double> phase;    // Im x_i at the cell interior point
  std::vector<double> re_base;  // sum_a Re t_a l_ia
};

struct SyzCycle {
  QVec a;
  QVec perturbation;  // added to a when the arrangement was degenerate
  std::vector<SyzPiece> pieces;
  std::vector<double> im_t;
};

SyzCycle syz_cycle(const LineBundleTwist& twist, const std::vector<cd>& t, const GitPresentation& git,
                   const StackyFan& fan);

bool convergence_check(const SyzCycle& cycle, const GitPresentation& git, const StackyFan& fan);

CentralCharge zB_over_syz_n1(const GitPresentation& git, const StackyFan& fan, const LineBundleTwist& twist,
                             const ComplexParams& params, double tol);

std::string cells_csv(const Arrangement& arr);
std::string cells_svg(const Arrangement& arr, double half_width);

}  // namespace mirror
