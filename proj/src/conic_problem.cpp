#include "gbis/conic_problem.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gbis {

SymCoeff SymCoeff::from(std::vector<SymEntry> entries) {
  SymCoeff a;
  for (auto& e : entries)
    if (e.row > e.col) std::swap(e.row, e.col);
  a.entries_ = std::move(entries);
  a.normalize();
  return a;
}

SymCoeff& SymCoeff::add(int i, int j, double v) {
  if (i > j) std::swap(i, j);
  entries_.push_back({i, j, v});
  normalize();
  return *this;
}

void SymCoeff::normalize() {
  std::sort(entries_.begin(), entries_.end(), [](const SymEntry& a, const SymEntry& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::vector<SymEntry> merged;
  merged.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const SymEntry& e) { return e.value == 0.0; }),
               merged.end());
  entries_ = std::move(merged);
}

int SymCoeff::max_index() const {
  int m = -1;
  for (const auto& e : entries_) m = std::max(m, e.col);
  return m;
}

double SymCoeff::dot(const Matrix& m) const {
  double s = 0.0;
  for (const auto& e : entries_)
    s += e.row == e.col ? e.value * m(e.row, e.col) : e.value * (m(e.row, e.col) + m(e.col, e.row));
  return s;
}

Matrix SymCoeff::dense(int order) const {
  Matrix a = Matrix::Zero(order, order);
  for (const auto& e : entries_) {
    a(e.row, e.col) = e.value;
    a(e.col, e.row) = e.value;
  }
  return a;
}

void ConicProblem::set_objective(SymCoeff c, double constant) {
  check_coeff(c);
  objective_ = std::move(c);
  objective_constant_ = constant;
}

void ConicProblem::check_coeff(const SymCoeff& a) const {
  for (const auto& e : a.entries())
    if (e.row < 0 || e.col >= order_) throw std::invalid_argument("coefficient index out of range");
}

void ConicProblem::claim_label(const std::string& label) {
  if (label.empty() || label.find_first_of(" \t\n") != std::string::npos)
    throw std::invalid_argument("constraint labels must be non-empty without whitespace");
  if (label == kTraceLabel) throw std::invalid_argument("label is reserved");
  if (!labels_.insert(label).second) throw std::invalid_argument("duplicate constraint label: " + label);
}

void ConicProblem::add_equality(std::string label, SymCoeff a, double rhs) {
  check_coeff(a);
  claim_label(label);
  equalities_.push_back({std::move(label), std::move(a), rhs});
}

void ConicProblem::add_inequality(std::string label, SymCoeff g, double rhs) {
  check_coeff(g);
  claim_label(label);
  inequalities_.push_back({std::move(label), std::move(g), rhs});
}

bool ConicProblem::try_add_inequality(std::string label, SymCoeff g, double rhs) {
  if (has_label(label)) return false;
  add_inequality(std::move(label), std::move(g), rhs);
  return true;
}

void ConicProblem::set_face(Matrix v) {
  if (v.rows() != order_ || v.cols() < 1 || v.cols() > order_)
    throw std::invalid_argument("face basis has the wrong shape");
  const Matrix gram = v.transpose() * v;
  if (!v.allFinite() || (gram - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("face basis columns must be orthonormal");
  face_ = std::move(v);
}

double ConicProblem::objective_value(const Matrix& m) const {
  return objective_.dot(m) + objective_constant_;
}

namespace {

void write_coeff(std::ostream& out, const SymCoeff& a) {
  out << a.entries().size();
  for (const auto& e : a.entries()) out << ' ' << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value;
}

SymCoeff read_coeff(std::istream& in) {
  std::size_t nnz = 0;
  if (!(in >> nnz)) throw std::invalid_argument("missing entry count");
  std::vector<SymEntry> entries;
  entries.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    int r = 0, c = 0;
    double v = 0;
    if (!(in >> r >> c >> v)) throw std::invalid_argument("truncated coefficient list");
    entries.push_back({r - 1, c - 1, v});
  }
  return SymCoeff::from(std::move(entries));
}

}  // namespace

void ConicProblem::write(std::ostream& out) const {
  auto flags = out.flags();
  auto prec = out.precision();
  out << std::setprecision(17);
  out << "gbis-conic 1\n";
  out << "order " << order_ << '\n';
  if (trace_constant_) out << "meta " << kTraceLabel << ' ' << *trace_constant_ << '\n';
  if (face_) {
    out << "meta " << kFaceLabel << ' ' << face_->cols();
    for (Eigen::Index i = 0; i < face_->rows(); ++i)
      for (Eigen::Index j = 0; j < face_->cols(); ++j) out << ' ' << (*face_)(i, j);
    out << '\n';
  }
  out << "obj objective " << objective_constant_ << ' ';
  write_coeff(out, objective_);
  out << '\n';
  for (const auto& c : equalities_) {
    out << "eq " << c.label << ' ';
    write_coeff(out, c.coeff);
    out << ' ' << c.rhs << '\n';
  }
  for (const auto& c : inequalities_) {
    out << "le " << c.label << ' ';
    write_coeff(out, c.coeff);
    out << ' ' << c.rhs << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

ConicProblem ConicProblem::read(std::istream& in) {
  std::string line, tag;
  if (!std::getline(in, line) || line.rfind("gbis-conic 1", 0) != 0)
    throw std::invalid_argument("not a gbis-conic stream");
  int order = -1;
  if (!std::getline(in, line)) throw std::invalid_argument("missing order line");
  {
    std::istringstream ls(line);
    if (!(ls >> tag >> order) || tag != "order" || order < 1) throw std::invalid_argument("bad order line");
  }
  ConicProblem p(order);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string label;
    ls >> tag >> label;
    if (tag == "meta" && label == kFaceLabel) {
      int r = 0;
      if (!(ls >> r) || r < 1 || r > order) throw std::invalid_argument("bad face line");
      Matrix v(order, r);
      for (int i = 0; i < order; ++i)
        for (int j = 0; j < r; ++j)
          if (!(ls >> v(i, j))) throw std::invalid_argument("truncated face basis");
      p.set_face(std::move(v));
    } else if (tag == "meta") {
      double t = 0;
      if (label != kTraceLabel || !(ls >> t)) throw std::invalid_argument("bad meta line");
      p.set_trace_constant(t);
    } else if (tag == "obj") {
      double c0 = 0;
      if (!(ls >> c0)) throw std::invalid_argument("bad objective line");
      p.set_objective(read_coeff(ls), c0);
    } else if (tag == "eq" || tag == "le") {
      SymCoeff a = read_coeff(ls);
      double rhs = 0;
      if (!(ls >> rhs)) throw std::invalid_argument("missing right-hand side for " + label);
      if (tag == "eq")
        p.add_equality(label, std::move(a), rhs);
      else
        p.add_inequality(label, std::move(a), rhs);
    } else {
      throw std::invalid_argument("unknown record: " + tag);
    }
  }
  return p;
}

}  // namespace gbis
