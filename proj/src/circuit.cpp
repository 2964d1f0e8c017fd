#include "pit/circuit.hpp"

#include <algorithm>
#include <string>

namespace pit {

namespace {

void enforce_cap(const SparsePoly& p, const ExpandOptions& opts) {
  if (p.num_terms() > opts.cap) throw ExpansionTooLarge(opts.cap);
}

std::size_t var_count(std::optional<VarIndex> v) {
  return v ? static_cast<std::size_t>(*v) : 0;
}

// a * (c0 + sum c_i x_i) without materializing the linear function.
SparsePoly mul_linear(const SparsePoly& a, const LinearFunction& l) {
  const PrimeField& F = a.field();
  SparsePoly r(F);
  if (a.is_zero() || l.is_zero()) return r;
  for (const auto& [m, c] : a.terms()) {
    r.add_term(m, F.mul(c, l.constant_term()));
    for (const auto& [v, lc] : l.coefficients()) {
      r.add_term(m * Monomial::var(v), F.mul(c, lc));
    }
  }
  return r;
}

}  // namespace

// ------------------------------------------------------------------ Formula

Formula Formula::constant(PrimeField field, FieldElement c) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Leaf, field, nullptr, nullptr, field.from_u64(c.value),
           std::nullopt}));
}

Formula Formula::leaf(PrimeField field, FieldElement c, VarIndex var) {
  if (var == kHomogenizingVar) {
    throw InvalidArgument("formula leaves use variables x1, x2, ...");
  }
  return Formula(std::make_shared<const Node>(
      Node{Kind::Leaf, field, nullptr, nullptr, field.from_u64(c.value), var}));
}

Formula Formula::add(Formula a, Formula b) {
  if (!(a.field() == b.field())) throw FieldMismatch();
  PrimeField f = a.field();
  return Formula(std::make_shared<const Node>(
      Node{Kind::Add, f, std::make_shared<const Formula>(std::move(a)),
           std::make_shared<const Formula>(std::move(b)), {}, std::nullopt}));
}

Formula Formula::mul(Formula a, Formula b) {
  if (!(a.field() == b.field())) throw FieldMismatch();
  PrimeField f = a.field();
  return Formula(std::make_shared<const Node>(
      Node{Kind::Mul, f, std::make_shared<const Formula>(std::move(a)),
           std::make_shared<const Formula>(std::move(b)), {}, std::nullopt}));
}

std::size_t Formula::depth() const {
  if (kind() == Kind::Leaf) return 0;
  return 1 + std::max(left().depth(), right().depth());
}

std::size_t Formula::num_vars() const {
  if (kind() == Kind::Leaf) return var_count(variable());
  return std::max(left().num_vars(), right().num_vars());
}

FieldElement Formula::eval(std::span<const FieldElement> xs) const {
  const PrimeField& F = field();
  switch (kind()) {
    case Kind::Add:
      return F.add(left().eval(xs), right().eval(xs));
    case Kind::Mul:
      return F.mul(left().eval(xs), right().eval(xs));
    case Kind::Leaf:
      break;
  }
  if (!variable()) return coefficient();
  if (*variable() > xs.size()) throw ArityMismatch(*variable(), xs.size());
  return F.mul(coefficient(), xs[*variable() - 1]);
}

SparsePoly Formula::expand(const ExpandOptions& opts) const {
  SparsePoly r(field());
  switch (kind()) {
    case Kind::Add:
      r = left().expand(opts) + right().expand(opts);
      break;
    case Kind::Mul:
      r = left().expand(opts) * right().expand(opts);
      break;
    case Kind::Leaf:
      if (variable()) {
        r = SparsePoly::monomial(field(), Monomial::var(*variable()),
                                 coefficient());
      } else {
        r = SparsePoly::constant(field(), coefficient());
      }
      break;
  }
  enforce_cap(r, opts);
  return r;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || !(a.field() == b.field())) return false;
  if (a.kind() == Formula::Kind::Leaf) {
    return a.coefficient() == b.coefficient() && a.variable() == b.variable();
  }
  return a.left() == b.left() && a.right() == b.right();
}

// ------------------------------------------------------- DepthThreeCircuit

std::size_t DepthThreeCircuit::degree() const {
  std::size_t d = 0;
  for (const auto& p : products) d = std::max(d, p.size());
  return d;
}

std::size_t DepthThreeCircuit::num_vars() const {
  std::size_t n = 0;
  for (const auto& p : products) {
    for (const auto& l : p) n = std::max(n, var_count(l.max_var()));
  }
  return n;
}

FieldElement DepthThreeCircuit::eval(std::span<const FieldElement> xs) const {
  FieldElement sum;
  for (const auto& p : products) {
    FieldElement prod = field.one();
    for (const auto& l : p) prod = field.mul(prod, l.eval(xs));
    sum = field.add(sum, prod);
  }
  return sum;
}

DepthThreeCircuit normalize_degree(const DepthThreeCircuit& c) {
  DepthThreeCircuit r = c;
  const std::size_t d = c.degree();
  for (auto& p : r.products) {
    while (p.size() < d) {
      p.push_back(LinearFunction::constant(c.field, c.field.one()));
    }
  }
  return r;
}

SparsePoly expand_depth3(const DepthThreeCircuit& c, const ExpandOptions& opts) {
  SparsePoly sum(c.field);
  for (const auto& p : c.products) {
    SparsePoly prod = SparsePoly::one(c.field);
    for (const auto& l : p) {
      prod = mul_linear(prod, l);
      enforce_cap(prod, opts);
    }
    sum += prod;
    enforce_cap(sum, opts);
  }
  return sum;
}

// ------------------------------------------------------------ LinearMatrix

LinearMatrix::LinearMatrix(PrimeField field, std::size_t k)
    : field_(field), k_(k), entries_(k * k, LinearFunction(field)) {}

LinearMatrix LinearMatrix::identity(PrimeField field, std::size_t k) {
  LinearMatrix m(field, k);
  for (std::size_t i = 0; i < k; ++i) {
    m.at(i, i) = LinearFunction::constant(field, field.one());
  }
  return m;
}

LinearMatrix LinearMatrix::constant(PrimeField field, const Matrix& c) {
  LinearMatrix m(field, c.rows());
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      m.at(i, j) = LinearFunction::constant(field, c(i, j));
    }
  }
  return m;
}

bool LinearMatrix::is_upper_triangular() const {
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      if (!at(r, c).is_zero()) return false;
    }
  }
  return true;
}

bool LinearMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) {
      if (r != c && !at(r, c).is_zero()) return false;
    }
  }
  return true;
}

std::optional<VarIndex> LinearMatrix::max_var() const {
  std::optional<VarIndex> best;
  for (const auto& l : entries_) {
    auto v = l.max_var();
    if (v && (!best || *v > *best)) best = v;
  }
  return best;
}

Matrix LinearMatrix::eval(std::span<const FieldElement> xs,
                          FieldElement z) const {
  Matrix m(k_, k_);
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) m(r, c) = at(r, c).eval(xs, z);
  }
  return m;
}

// ---------------------------------------------------- LinearMatrixSequence

std::size_t LinearMatrixSequence::num_vars() const {
  std::size_t n = 0;
  for (const auto& m : matrices) n = std::max(n, var_count(m.max_var()));
  return n;
}

bool LinearMatrixSequence::uses_z() const {
  for (const auto& m : matrices) {
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        if (!m.at(r, c).coefficient(kHomogenizingVar).is_zero()) return true;
      }
    }
  }
  return false;
}

bool LinearMatrixSequence::is_upper_triangular() const {
  auto const_upper = [&](const std::optional<Matrix>& m) {
    if (!m) return true;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < r; ++c) {
        if (!(*m)(r, c).is_zero()) return false;
      }
    }
    return true;
  };
  if (!const_upper(left_mask) || !const_upper(right_mask)) return false;
  return std::all_of(matrices.begin(), matrices.end(),
                     [](const LinearMatrix& m) { return m.is_upper_triangular(); });
}

void LinearMatrixSequence::check_shapes() const {
  if (k == 0) throw InvalidArgument("sequence side length must be positive");
  if (matrices.empty()) throw InvalidArgument("sequence must be non-empty");
  for (const auto& m : matrices) {
    if (m.size() != k) {
      throw InvalidArgument("matrix of side " + std::to_string(m.size()) +
                            " in a k=" + std::to_string(k) + " sequence");
    }
  }
  for (const auto* mask : {&left_mask, &right_mask}) {
    if (*mask && ((*mask)->rows() != k || (*mask)->cols() != k)) {
      throw InvalidArgument("mask shape does not match k");
    }
  }
}

// -------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(PrimeField field, std::size_t k)
    : k_(k), entries_(k * k, SparsePoly(field)) {}

PolyMatrix PolyMatrix::identity(PrimeField field, std::size_t k) {
  PolyMatrix m(field, k);
  for (std::size_t i = 0; i < k; ++i) m.at(i, i) = SparsePoly::one(field);
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const SparsePoly& p) { return p.is_zero(); });
}

int PolyMatrix::degree() const {
  int d = -1;
  for (const auto& p : entries_) d = std::max(d, p.degree());
  return d;
}

std::size_t PolyMatrix::total_terms() const {
  std::size_t t = 0;
  for (const auto& p : entries_) t += p.num_terms();
  return t;
}

namespace {

PolyMatrix from_constant(PrimeField field, const Matrix& c) {
  PolyMatrix m(field, c.rows());
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      m.at(i, j) = SparsePoly::constant(field, c(i, j));
    }
  }
  return m;
}

PolyMatrix times_linear(const PolyMatrix& a, const LinearMatrix& b,
                        const ExpandOptions& opts) {
  const std::size_t k = a.size();
  PolyMatrix r(b.field(), k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      SparsePoly& out = r.at(i, j);
      for (std::size_t m = 0; m < k; ++m) {
        if (a.at(i, m).is_zero() || b.at(m, j).is_zero()) continue;
        out += mul_linear(a.at(i, m), b.at(m, j));
      }
      enforce_cap(out, opts);
    }
  }
  return r;
}

PolyMatrix linear_times(const LinearMatrix& a, const PolyMatrix& b,
                        const ExpandOptions& opts) {
  const std::size_t k = b.size();
  PolyMatrix r(a.field(), k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      SparsePoly& out = r.at(i, j);
      for (std::size_t m = 0; m < k; ++m) {
        if (a.at(i, m).is_zero() || b.at(m, j).is_zero()) continue;
        out += mul_linear(b.at(m, j), a.at(i, m));
      }
      enforce_cap(out, opts);
    }
  }
  return r;
}

}  // namespace

PolyMatrix expand_sequence(const LinearMatrixSequence& s,
                           const ExpandOptions& opts) {
  s.check_shapes();
  PolyMatrix acc = s.left_mask ? from_constant(s.field, *s.left_mask)
                               : PolyMatrix::identity(s.field, s.k);
  for (const auto& m : s.matrices) acc = times_linear(acc, m, opts);
  if (s.right_mask) {
    acc = times_linear(acc, LinearMatrix::constant(s.field, *s.right_mask),
                       opts);
  }
  return acc;
}

Matrix eval_sequence(const LinearMatrixSequence& s,
                     std::span<const FieldElement> xs, FieldElement z) {
  s.check_shapes();
  if (s.num_vars() > xs.size()) throw ArityMismatch(s.num_vars(), xs.size());
  Matrix acc = s.left_mask ? *s.left_mask : Matrix::identity(s.k);
  for (const auto& m : s.matrices) acc = multiply(s.field, acc, m.eval(xs, z));
  if (s.right_mask) acc = multiply(s.field, acc, *s.right_mask);
  return acc;
}

std::vector<int> partial_product_degrees(const LinearMatrixSequence& s,
                                         const ExpandOptions& opts) {
  s.check_shapes();
  std::vector<int> out(s.length());
  PolyMatrix suffix = PolyMatrix::identity(s.field, s.k);
  for (std::size_t l = s.length(); l-- > 0;) {
    suffix = linear_times(s.matrices[l], suffix, opts);
    out[l] = suffix.degree();
  }
  return out;
}

// --------------------------------------------------------------------- ABP

std::size_t Abp::width() const {
  std::size_t w = 0;
  for (auto n : levels) w = std::max(w, n);
  return w;
}

std::size_t Abp::num_vars() const {
  std::size_t n = 0;
  for (const auto& g : gaps) {
    for (const auto& e : g) n = std::max(n, var_count(e.label.max_var()));
  }
  return n;
}

bool Abp::uses_z() const {
  for (const auto& g : gaps) {
    for (const auto& e : g) {
      if (!e.label.coefficient(kHomogenizingVar).is_zero()) return true;
    }
  }
  return false;
}

void Abp::check_structure() const {
  if (levels.size() < 2) throw InvalidArgument("ABP needs at least two levels");
  if (levels.front() != 1 || levels.back() != 1) {
    throw InvalidArgument("ABP source and sink levels must have one vertex");
  }
  if (gaps.size() + 1 != levels.size()) {
    throw InvalidArgument("ABP gap count must be level count - 1");
  }
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    for (const auto& e : gaps[g]) {
      if (e.from >= levels[g] || e.to >= levels[g + 1]) {
        throw InvalidArgument("ABP edge endpoint out of range in gap " +
                              std::to_string(g + 1));
      }
    }
  }
}

bool Abp::is_planar() const {
  for (const auto& g : gaps) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        const auto& a = g[i];
        const auto& b = g[j];
        if ((a.from < b.from && a.to > b.to) ||
            (a.from > b.from && a.to < b.to)) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

bool is_z(const LinearFunction& l) {
  return l.constant_term().is_zero() && l.coefficients().size() == 1 &&
         l.coefficients().begin()->first == kHomogenizingVar &&
         l.coefficients().begin()->second.value == 1;
}

bool is_single_term(const LinearFunction& l) {
  return l.constant_term().is_zero() && l.coefficients().size() == 1;
}

}  // namespace

LayerKind classify_layer(const Abp& a, std::size_t gap) {
  const std::size_t from = a.levels.at(gap);
  const std::size_t to = a.levels.at(gap + 1);
  const auto& edges = a.gaps.at(gap);
  if (from == 1 && to <= 2) return LayerKind::Source;
  if (from <= 2 && to == 1) return LayerKind::Sink;
  if (from != 2 || to != 2) return LayerKind::Other;

  const LinearFunction* label[2][2] = {{nullptr, nullptr}, {nullptr, nullptr}};
  for (const auto& e : edges) {
    if (label[e.from][e.to]) return LayerKind::Other;  // parallel multi-edge
    label[e.from][e.to] = &e.label;
  }
  auto homogeneous = [](const LinearFunction* l) {
    return l == nullptr || l->is_homogeneous();
  };
  if (label[1][0]) return LayerKind::Other;
  if (!label[0][1]) {
    return homogeneous(label[0][0]) && homogeneous(label[1][1])
               ? LayerKind::Parallel
               : LayerKind::Other;
  }
  if (label[0][0] && label[1][1] && is_z(*label[0][0]) && is_z(*label[1][1]) &&
      is_single_term(*label[0][1])) {
    return LayerKind::Triangular;
  }
  return LayerKind::Other;
}

bool is_pattern_planar(const Abp& a) {
  for (std::size_t g = 0; g < a.gaps.size(); ++g) {
    if (classify_layer(a, g) == LayerKind::Other) return false;
  }
  return true;
}

FieldElement eval_abp(const Abp& a, std::span<const FieldElement> xs,
                      FieldElement z) {
  a.check_structure();
  if (a.num_vars() > xs.size()) throw ArityMismatch(a.num_vars(), xs.size());
  const PrimeField& F = a.field;
  std::vector<FieldElement> cur{F.one()};
  for (std::size_t g = 0; g < a.gaps.size(); ++g) {
    std::vector<FieldElement> next(a.levels[g + 1]);
    for (const auto& e : a.gaps[g]) {
      next[e.to] = F.add(next[e.to], F.mul(cur[e.from], e.label.eval(xs, z)));
    }
    cur = std::move(next);
  }
  return cur[0];
}

SparsePoly expand_abp(const Abp& a, const ExpandOptions& opts) {
  a.check_structure();
  std::vector<SparsePoly> cur{SparsePoly::one(a.field)};
  for (std::size_t g = 0; g < a.gaps.size(); ++g) {
    std::vector<SparsePoly> next(a.levels[g + 1], SparsePoly(a.field));
    for (const auto& e : a.gaps[g]) {
      next[e.to] += mul_linear(cur[e.from], e.label);
      enforce_cap(next[e.to], opts);
    }
    cur = std::move(next);
  }
  return cur[0];
}

}  // namespace pit
