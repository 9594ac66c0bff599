#pragma once

#include <string>
#include <vector>

#include "mhar/linalg.hpp"

namespace mhar {

/// Convex body {x : a_in x <= b_in, a_eq x = b_eq}. The equality block may be
/// empty, in which case the body is full dimensional.
struct Polytope {
  Matrix a_in;
  Vector b_in;
  Matrix a_eq;
  Vector b_eq;

  Polytope() = default;
  Polytope(Matrix a_in_, Vector b_in_);
  Polytope(Matrix a_in_, Vector b_in_, Matrix a_eq_, Vector b_eq_);

  int dim() const { return static_cast<int>(a_in.cols()); }
  int num_inequalities() const { return static_cast<int>(a_in.rows()); }
  int num_equalities() const { return static_cast<int>(a_eq.rows()); }
};

enum class IssueCode {
  shape_mismatch,
  non_finite,
  zero_row,
  no_inequalities,
  too_many_equalities,
  rank_deficient_eq,
};

const char* issue_code_name(IssueCode code);

struct ValidationIssue {
  IssueCode code;
  int row;  // offending row where applicable, otherwise -1
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
};

/// Structural checks on a polytope: consistent shapes, finite entries, no
/// all-zero constraint rows, fewer equalities than dimensions, and a full
/// row rank equality block.
ValidationReport validate(const Polytope& p);

/// True when x satisfies every inequality within eps and every equality
/// within |residual| <= eps.
bool contains(const Polytope& p, const VectorRef& x, double eps);

/// [-1, 1]^n as 2n inequality rows.
Polytope make_hypercube(int n);

/// Standard simplex {x >= 0, sum x = 1}: n inequality rows plus one equality.
Polytope make_simplex(int n);

std::string serialize_polytope(const Polytope& p);
Polytope parse_polytope(const std::string& text);
void save_polytope(const Polytope& p, const std::string& path);
Polytope load_polytope(const std::string& path);

}  // namespace mhar
