#pragma once

#include "mirror/rational.hpp"

#include <optional>
#include <vector>

namespace mirror {

enum class Sense { LE, GE, EQ };

struct LinearConstraint {
  QVec coeff;
  Sense sense;
  Q rhs;
};

// Free variables; maximize objective subject to the constraints.
struct LinearProgram {
  int vars = 0;
  std::vector<LinearConstraint> rows;
  QVec objective;

  void add(QVec coeff, Sense sense, Q rhs) { rows.push_back({std::move(coeff), sense, std::move(rhs)}); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Q value;
  QVec x;
};

LpResult solve_lp(const LinearProgram& lp);

// target in sum_i R_{>0} gens_i ; gens empty means only target == 0 (never, for target != 0).
bool in_open_cone(const QVec& target, const std::vector<QVec>& gens);
// target in sum_i R_{>=0} gens_i; returns coefficients when feasible.
std::optional<QVec> closed_cone_witness(const QVec& target, const std::vector<QVec>& gens);

// Polyhedron {x : eq rows = rhs, ge rows >= rhs, strict rows > rhs}.
struct Polyhedron {
  int dim = 0;
  std::vector<LinearConstraint> eq;
  std::vector<LinearConstraint> ge;
  std::vector<LinearConstraint> strict;
};

struct PolyhedronInfo {
  bool nonempty = false;
  int dimension = -1;
  QVec interior_point;  // relative interior point when nonempty
  bool bounded = false;
};

PolyhedronInfo analyze_polyhedron(const Polyhedron& p, bool want_bounded = false);

}  // namespace mirror
