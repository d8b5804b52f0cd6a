#pragma once

#include "gbis/graph.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace gbis {

/// One stored entry of a sparse symmetric matrix, row <= col. An
/// off-diagonal entry stands for both (row, col) and (col, row).
struct SymEntry {
  int row;
  int col;
  double value;
};

/// Sparse symmetric coefficient matrix. Entries are kept sorted by
/// (col, row) with duplicates merged and exact zeros dropped.
class SymCoeff {
 public:
  SymCoeff() = default;

  /// Bulk construction; entries with row > col are mirrored.
  static SymCoeff from(std::vector<SymEntry> entries);

  /// Adds `v` to entry (i, j) and, when i != j, to its mirror (j, i).
  SymCoeff& add(int i, int j, double v);

  const std::vector<SymEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  int max_index() const;

  /// Trace inner product <A, M>.
  double dot(const Matrix& m) const;
  Matrix dense(int order) const;

 private:
  void normalize();
  std::vector<SymEntry> entries_;
};

struct Constraint {
  std::string label;
  SymCoeff coeff;
  double rhs = 0.0;
};

/// Single-block conic program in standard form
///
///   min  <C, M> + c0
///   s.t. <A_i, M> =  b_i   (equalities)
///        <G_j, M> <= h_j   (inequalities)
///        M positive semidefinite.
///
/// Equalities are fixed once the builder returns; inequalities may be
/// appended later (cuts). Constraint labels are unique across both lists.
class ConicProblem {
 public:
  /// Reserved label of the metadata line that stores the fixed trace of M.
  static constexpr const char* kTraceLabel = "@trace";
  /// Reserved label of the metadata line that stores the face basis.
  static constexpr const char* kFaceLabel = "@face";

  explicit ConicProblem(int order = 0) : order_(order) {}

  int order() const { return order_; }

  const SymCoeff& objective() const { return objective_; }
  double objective_constant() const { return objective_constant_; }
  void set_objective(SymCoeff c, double constant = 0.0);

  const std::vector<Constraint>& equalities() const { return equalities_; }
  const std::vector<Constraint>& inequalities() const { return inequalities_; }

  /// Throws std::invalid_argument on duplicate labels or out-of-range entries.
  void add_equality(std::string label, SymCoeff a, double rhs);
  void add_inequality(std::string label, SymCoeff g, double rhs);

  /// Appends unless the label is already present; returns whether it did.
  bool try_add_inequality(std::string label, SymCoeff g, double rhs);

  bool has_label(const std::string& label) const { return labels_.count(label) > 0; }

  /// trace(M) value implied by the equalities, if the builder recorded one.
  std::optional<double> trace_constant() const { return trace_constant_; }
  void set_trace_constant(double t) { trace_constant_ = t; }

  /// Optional basis V (order x r, orthonormal columns) of a face that
  /// contains every feasible M, i.e. M = V R V' with R PSD of order r. The
  /// solver then works on R, which restores strict feasibility when the
  /// equalities force M to be singular.
  const std::optional<Matrix>& face() const { return face_; }
  /// Throws std::invalid_argument unless v has `order` rows and orthonormal
  /// columns (to 1e-10).
  void set_face(Matrix v);

  double objective_value(const Matrix& m) const;

  /// Text format, one record per line:
  ///   gbis-conic 1
  ///   order <n>
  ///   meta @trace <t>                        (optional)
  ///   meta @face <r> {v}                     (optional, row-major)
  ///   obj objective <c0> <nnz> {r c v}       (1-based r <= c)
  ///   eq <label> <nnz> {r c v} <rhs>
  ///   le <label> <nnz> {r c v} <rhs>
  void write(std::ostream& out) const;
  static ConicProblem read(std::istream& in);

 private:
  void check_coeff(const SymCoeff& a) const;
  void claim_label(const std::string& label);

  int order_;
  SymCoeff objective_;
  double objective_constant_ = 0.0;
  std::vector<Constraint> equalities_;
  std::vector<Constraint> inequalities_;
  std::unordered_set<std::string> labels_;
  std::optional<double> trace_constant_;
  std::optional<Matrix> face_;
};

}  // namespace gbis
