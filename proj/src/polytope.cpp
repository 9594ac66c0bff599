#include "mhar/polytope.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mhar/errors.hpp"

namespace mhar {
namespace {

using nlohmann::json;

void check_shapes(const Matrix& a_in, const Vector& b_in, const Matrix& a_eq,
                  const Vector& b_eq) {
  if (a_in.rows() != b_in.size()) {
    raise(ErrorCode::dimension_mismatch,
          "polytope: a_in has " + std::to_string(a_in.rows()) + " rows but b_in has " +
              std::to_string(b_in.size()) + " entries");
  }
  if (a_eq.rows() != b_eq.size()) {
    raise(ErrorCode::dimension_mismatch,
          "polytope: a_eq has " + std::to_string(a_eq.rows()) + " rows but b_eq has " +
              std::to_string(b_eq.size()) + " entries");
  }
  if (a_eq.rows() > 0 && a_eq.cols() != a_in.cols()) {
    raise(ErrorCode::dimension_mismatch,
          "polytope: a_in has " + std::to_string(a_in.cols()) + " columns but a_eq has " +
              std::to_string(a_eq.cols()));
  }
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const json& rows, Eigen::Index cols_hint) {
  if (!rows.is_array()) raise(ErrorCode::io_failure, "polytope: matrix field is not an array");
  const Eigen::Index nrows = static_cast<Eigen::Index>(rows.size());
  Eigen::Index ncols = cols_hint;
  if (nrows > 0) {
    if (!rows[0].is_array()) raise(ErrorCode::io_failure, "polytope: matrix row is not an array");
    ncols = static_cast<Eigen::Index>(rows[0].size());
  }
  Matrix m(nrows, ncols);
  for (Eigen::Index i = 0; i < nrows; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != ncols) {
      raise(ErrorCode::io_failure, "polytope: ragged matrix row " + std::to_string(i));
    }
    for (Eigen::Index j = 0; j < ncols; ++j) {
      const json& cell = row[static_cast<size_t>(j)];
      if (!cell.is_number()) raise(ErrorCode::io_failure, "polytope: non-numeric matrix entry");
      m(i, j) = cell.get<double>();
    }
  }
  return m;
}

Vector vector_from_json(const json& arr) {
  if (!arr.is_array()) raise(ErrorCode::io_failure, "polytope: vector field is not an array");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const json& cell = arr[static_cast<size_t>(i)];
    if (!cell.is_number()) raise(ErrorCode::io_failure, "polytope: non-numeric vector entry");
    v(i) = cell.get<double>();
  }
  return v;
}

}  // namespace

Polytope::Polytope(Matrix a_in_, Vector b_in_)
    : Polytope(std::move(a_in_), std::move(b_in_), Matrix(0, 0), Vector(0)) {}

Polytope::Polytope(Matrix a_in_, Vector b_in_, Matrix a_eq_, Vector b_eq_)
    : a_in(std::move(a_in_)), b_in(std::move(b_in_)), a_eq(std::move(a_eq_)),
      b_eq(std::move(b_eq_)) {
  if (a_eq.rows() == 0 && a_eq.cols() != a_in.cols()) {
    a_eq.resize(0, a_in.cols());
  }
  check_shapes(a_in, b_in, a_eq, b_eq);
}

const char* issue_code_name(IssueCode code) {
  switch (code) {
    case IssueCode::shape_mismatch:
      return "SHAPE_MISMATCH";
    case IssueCode::non_finite:
      return "NON_FINITE";
    case IssueCode::zero_row:
      return "ZERO_ROW";
    case IssueCode::no_inequalities:
      return "NO_INEQUALITIES";
    case IssueCode::too_many_equalities:
      return "TOO_MANY_EQUALITIES";
    case IssueCode::rank_deficient_eq:
      return "RANK_DEFICIENT_EQ";
  }
  return "UNKNOWN";
}

ValidationReport validate(const Polytope& p) {
  ValidationReport report;
  auto add = [&](IssueCode code, int row, std::string message) {
    report.ok = false;
    report.issues.push_back({code, row, std::move(message)});
  };

  if (p.a_in.rows() != p.b_in.size()) {
    add(IssueCode::shape_mismatch, -1,
        "a_in rows (" + std::to_string(p.a_in.rows()) + ") != b_in size (" +
            std::to_string(p.b_in.size()) + ")");
  }
  if (p.a_eq.rows() != p.b_eq.size()) {
    add(IssueCode::shape_mismatch, -1,
        "a_eq rows (" + std::to_string(p.a_eq.rows()) + ") != b_eq size (" +
            std::to_string(p.b_eq.size()) + ")");
  }
  if (p.a_eq.rows() > 0 && p.a_eq.cols() != p.a_in.cols()) {
    add(IssueCode::shape_mismatch, -1,
        "a_eq has " + std::to_string(p.a_eq.cols()) + " columns, a_in has " +
            std::to_string(p.a_in.cols()));
  }
  if (!report.ok) return report;  // later checks assume consistent shapes

  if (p.num_inequalities() == 0) {
    add(IssueCode::no_inequalities, -1, "polytope has no inequality rows");
  }
  if (!p.a_in.allFinite() || !p.b_in.allFinite()) {
    add(IssueCode::non_finite, -1, "inequality block contains NaN or Inf");
  }
  if (p.a_eq.size() > 0 && (!p.a_eq.allFinite() || !p.b_eq.allFinite())) {
    add(IssueCode::non_finite, -1, "equality block contains NaN or Inf");
  }
  for (Eigen::Index i = 0; i < p.a_in.rows(); ++i) {
    if (p.a_in.row(i).cwiseAbs().maxCoeff() == 0.0) {
      add(IssueCode::zero_row, static_cast<int>(i),
          "a_in row " + std::to_string(i) + " is all zero");
    }
  }
  for (Eigen::Index i = 0; i < p.a_eq.rows(); ++i) {
    if (p.a_eq.cols() == 0 || p.a_eq.row(i).cwiseAbs().maxCoeff() == 0.0) {
      add(IssueCode::zero_row, static_cast<int>(i),
          "a_eq row " + std::to_string(i) + " is all zero");
    }
  }
  if (p.num_equalities() >= p.dim() && p.dim() > 0) {
    add(IssueCode::too_many_equalities, -1,
        "equality count " + std::to_string(p.num_equalities()) + " leaves no walk dimensions in " +
            std::to_string(p.dim()));
  }
  if (p.num_equalities() > 0 && p.num_equalities() < p.dim() && p.a_eq.allFinite()) {
    Eigen::ColPivHouseholderQR<Matrix> qr(p.a_eq.transpose());
    if (qr.rank() < p.a_eq.rows()) {
      add(IssueCode::rank_deficient_eq, -1,
          "a_eq has rank " + std::to_string(qr.rank()) + " < " + std::to_string(p.a_eq.rows()));
    }
  }
  return report;
}

bool contains(const Polytope& p, const VectorRef& x, double eps) {
  if (x.size() != p.dim()) {
    raise(ErrorCode::dimension_mismatch, "contains: point has " + std::to_string(x.size()) +
                                             " coordinates, polytope has " +
                                             std::to_string(p.dim()));
  }
  if (p.num_inequalities() > 0) {
    if (((p.a_in * x) - p.b_in).maxCoeff() > eps) return false;
  }
  if (p.num_equalities() > 0) {
    if (((p.a_eq * x) - p.b_eq).cwiseAbs().maxCoeff() > eps) return false;
  }
  return true;
}

Polytope make_hypercube(int n) {
  if (n < 1) raise(ErrorCode::invalid_argument, "make_hypercube: n must be >= 1");
  Matrix a(2 * n, n);
  a.topRows(n) = Matrix::Identity(n, n);
  a.bottomRows(n) = -Matrix::Identity(n, n);
  Vector b = Vector::Ones(2 * n);
  return Polytope(std::move(a), std::move(b));
}

Polytope make_simplex(int n) {
  if (n < 2) raise(ErrorCode::invalid_argument, "make_simplex: n must be >= 2");
  Matrix a = -Matrix::Identity(n, n);
  Vector b = Vector::Zero(n);
  Matrix a_eq = Matrix::Ones(1, n);
  Vector b_eq = Vector::Ones(1);
  return Polytope(std::move(a), std::move(b), std::move(a_eq), std::move(b_eq));
}

std::string serialize_polytope(const Polytope& p) {
  json doc;
  doc["format_version"] = 1;
  doc["A_in"] = matrix_to_json(p.a_in);
  doc["b_in"] = vector_to_json(p.b_in);
  doc["A_eq"] = matrix_to_json(p.a_eq);
  doc["b_eq"] = vector_to_json(p.b_eq);
  return doc.dump(2) + "\n";
}

Polytope parse_polytope(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::io_failure, std::string("polytope: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) raise(ErrorCode::io_failure, "polytope: document is not an object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != 1) {
    raise(ErrorCode::io_failure, "polytope: missing or unsupported format_version");
  }
  for (const char* key : {"A_in", "b_in"}) {
    if (!doc.contains(key)) {
      raise(ErrorCode::io_failure, std::string("polytope: missing field ") + key);
    }
  }
  Matrix a_in = matrix_from_json(doc["A_in"], 0);
  if (a_in.rows() == 0) raise(ErrorCode::io_failure, "polytope: A_in must have at least one row");
  const Eigen::Index n = a_in.cols();
  Vector b_in = vector_from_json(doc["b_in"]);
  Matrix a_eq(0, n);
  Vector b_eq(0);
  if (doc.contains("A_eq") != doc.contains("b_eq")) {
    raise(ErrorCode::io_failure, "polytope: A_eq and b_eq must appear together");
  }
  if (doc.contains("A_eq")) {
    a_eq = matrix_from_json(doc["A_eq"], n);
    b_eq = vector_from_json(doc["b_eq"]);
    if (a_eq.rows() == 0) a_eq.resize(0, n);
  }
  if (a_eq.rows() > 0 && a_eq.cols() != n) {
    raise(ErrorCode::io_failure, "polytope: A_eq width disagrees with A_in");
  }
  return Polytope(std::move(a_in), std::move(b_in), std::move(a_eq), std::move(b_eq));
}

void save_polytope(const Polytope& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::io_failure, "cannot open " + path + " for writing");
  out << serialize_polytope(p);
  if (!out) raise(ErrorCode::io_failure, "write failed for " + path);
}

Polytope load_polytope(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::io_failure, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_polytope(buffer.str());
}

}  // namespace mhar
