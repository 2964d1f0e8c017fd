#include "pit/poly.hpp"

#include <algorithm>

namespace pit {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == v) {
      factors_.back().second += e;
    } else {
      factors_.emplace_back(v, e);
    }
    degree_ += e;
  }
}

Monomial Monomial::var(VarIndex v, std::uint32_t e) {
  return Monomial({{v, e}});
}

std::uint32_t Monomial::exponent(VarIndex v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

std::optional<VarIndex> Monomial::max_var() const {
  if (factors_.empty()) return std::nullopt;
  return factors_.back().first;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() ||
        (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

int graded_lex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) {
      // The side carrying the lower-index (more significant) variable wins.
      return fa[i].first < fb[i].first ? 1 : -1;
    }
    if (fa[i].second != fb[i].second) {
      return fa[i].second > fb[i].second ? 1 : -1;
    }
  }
  if (i < fa.size()) return 1;
  if (i < fb.size()) return -1;
  return 0;
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  return graded_lex_compare(a, b) > 0;
}

// ---------------------------------------------------------- LinearFunction

LinearFunction LinearFunction::constant(PrimeField field, FieldElement c) {
  LinearFunction l(field);
  l.constant_ = field.from_u64(c.value);
  return l;
}

LinearFunction LinearFunction::variable(PrimeField field, VarIndex v,
                                        FieldElement c) {
  LinearFunction l(field);
  l.set_coefficient(v, field.from_u64(c.value));
  return l;
}

FieldElement LinearFunction::coefficient(VarIndex v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? FieldElement{} : it->second;
}

void LinearFunction::set_coefficient(VarIndex v, FieldElement c) {
  if (c.is_zero()) {
    coeffs_.erase(v);
  } else {
    coeffs_[v] = c;
  }
}

std::optional<VarIndex> LinearFunction::max_var() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

LinearFunction LinearFunction::operator+(const LinearFunction& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch();
  LinearFunction r = *this;
  r.constant_ = field_.add(constant_, o.constant_);
  for (const auto& [v, c] : o.coeffs_) {
    r.set_coefficient(v, field_.add(r.coefficient(v), c));
  }
  return r;
}

LinearFunction LinearFunction::operator-(const LinearFunction& o) const {
  return *this + o.scaled(field_.neg(field_.one()));
}

LinearFunction LinearFunction::scaled(FieldElement c) const {
  LinearFunction r(field_);
  if (c.is_zero()) return r;
  r.constant_ = field_.mul(constant_, c);
  for (const auto& [v, a] : coeffs_) r.coeffs_[v] = field_.mul(a, c);
  return r;
}

FieldElement LinearFunction::eval(std::span<const FieldElement> xs,
                                  FieldElement z) const {
  FieldElement acc = constant_;
  for (const auto& [v, c] : coeffs_) {
    FieldElement val;
    if (v == kHomogenizingVar) {
      val = z;
    } else if (v <= xs.size()) {
      val = xs[v - 1];
    } else {
      throw ArityMismatch(v, xs.size());
    }
    acc = field_.add(acc, field_.mul(c, val));
  }
  return acc;
}

LinearFunction LinearFunction::homogenized() const {
  LinearFunction r = *this;
  r.constant_ = FieldElement{};
  r.set_coefficient(kHomogenizingVar,
                    field_.add(coefficient(kHomogenizingVar), constant_));
  return r;
}

SparsePoly LinearFunction::to_poly() const {
  SparsePoly p(field_);
  p.add_term(Monomial(), constant_);
  for (const auto& [v, c] : coeffs_) p.add_term(Monomial::var(v), c);
  return p;
}

// -------------------------------------------------------------- SparsePoly

SparsePoly SparsePoly::constant(PrimeField field, FieldElement c) {
  SparsePoly p(field);
  p.add_term(Monomial(), field.from_u64(c.value));
  return p;
}

SparsePoly SparsePoly::variable(PrimeField field, VarIndex v) {
  return monomial(field, Monomial::var(v), FieldElement{1});
}

SparsePoly SparsePoly::monomial(PrimeField field, Monomial m, FieldElement c) {
  SparsePoly p(field);
  p.add_term(m, field.from_u64(c.value));
  return p;
}

int SparsePoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

std::optional<VarIndex> SparsePoly::max_var() const {
  std::optional<VarIndex> best;
  for (const auto& [m, c] : terms_) {
    auto v = m.max_var();
    if (v && (!best || *v > *best)) best = v;
  }
  return best;
}

FieldElement SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? FieldElement{} : it->second;
}

void SparsePoly::add_term(const Monomial& m, FieldElement c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void SparsePoly::check_field(const SparsePoly& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch();
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_field(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_field(o);
  for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
  return *this;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly r = *this;
  r += o;
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
  SparsePoly r = *this;
  r -= o;
  return r;
}

SparsePoly SparsePoly::operator-() const {
  return scaled(field_.neg(field_.one()));
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  check_field(o);
  SparsePoly r(field_);
  if (is_zero() || o.is_zero()) return r;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      r.add_term(ma * mb, field_.mul(ca, cb));
    }
  }
  return r;
}

SparsePoly SparsePoly::scaled(FieldElement c) const {
  SparsePoly r(field_);
  if (c.is_zero()) return r;
  for (const auto& [m, a] : terms_) {
    r.terms_.emplace_hint(r.terms_.end(), m, field_.mul(a, c));
  }
  return r;
}

SparsePoly SparsePoly::pow(std::uint32_t e) const {
  SparsePoly result = one(field_);
  SparsePoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

FieldElement SparsePoly::eval(std::span<const FieldElement> xs,
                              FieldElement z) const {
  if (auto v = max_var(); v && *v > xs.size()) {
    throw ArityMismatch(*v, xs.size());
  }
  FieldElement acc;
  for (const auto& [m, c] : terms_) {
    FieldElement t = c;
    for (const auto& [v, e] : m.factors()) {
      FieldElement base = v == kHomogenizingVar ? z : xs[v - 1];
      t = field_.mul(t, field_.pow(base, e));
    }
    acc = field_.add(acc, t);
  }
  return acc;
}

SparsePoly SparsePoly::substitute(VarIndex v, const SparsePoly& g) const {
  check_field(g);
  SparsePoly r(field_);
  std::vector<SparsePoly> powers{one(field_)};
  for (const auto& [m, c] : terms_) {
    std::uint32_t e = m.exponent(v);
    if (e == 0) {
      r.add_term(m, c);
      continue;
    }
    while (powers.size() <= e) powers.push_back(powers.back() * g);
    std::vector<Monomial::Factor> rest;
    for (const auto& f : m.factors()) {
      if (f.first != v) rest.push_back(f);
    }
    Monomial stripped(std::move(rest));
    for (const auto& [mg, cg] : powers[e].terms_) {
      r.add_term(stripped * mg, field_.mul(c, cg));
    }
  }
  return r;
}

// ------------------------------------------------------- free operations

SparsePoly homogeneous_part(const SparsePoly& f, std::uint32_t d) {
  SparsePoly r(f.field());
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() == d) r.add_term(m, c);
  }
  return r;
}

SparsePoly homogenize(const SparsePoly& f, std::uint32_t target) {
  SparsePoly r(f.field());
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() > target) {
      throw InvalidArgument("homogenize: degree exceeds target");
    }
    if (m.exponent(kHomogenizingVar) != 0) {
      throw InvalidArgument("homogenize: polynomial already uses z");
    }
    r.add_term(m * Monomial::var(kHomogenizingVar, target - m.degree()), c);
  }
  return r;
}

std::optional<SparsePoly> reduce_mod_two_linears(const SparsePoly& f,
                                                 const LinearFunction& l1,
                                                 const LinearFunction& l2) {
  if (l1.is_zero() && l2.is_zero()) {
    throw InvalidArgument("reduce_mod_two_linears: both linear functions zero");
  }
  const PrimeField& F = f.field();
  // Reduced row-echelon form of the 2-row affine system, pivots chosen as
  // the lowest-index variable of each row in turn.
  std::vector<std::pair<VarIndex, LinearFunction>> pivots;
  for (const LinearFunction* src : {&l1, &l2}) {
    LinearFunction row = *src;
    for (const auto& [pv, prow] : pivots) {
      FieldElement c = row.coefficient(pv);
      if (!c.is_zero()) row = row - prow.scaled(c);
    }
    if (row.is_constant()) {
      if (!row.constant_term().is_zero()) return std::nullopt;
      continue;
    }
    VarIndex pv = row.coefficients().begin()->first;
    row = row.scaled(F.inv(row.coefficient(pv)));
    for (auto& [qv, qrow] : pivots) {
      FieldElement c = qrow.coefficient(pv);
      if (!c.is_zero()) qrow = qrow - row.scaled(c);
    }
    pivots.emplace_back(pv, row);
  }
  SparsePoly r = f;
  for (const auto& [pv, row] : pivots) {
    // x_pv = -(row - x_pv)
    LinearFunction rest = row;
    rest.set_coefficient(pv, FieldElement{});
    r = r.substitute(pv, -rest.to_poly());
  }
  return r;
}

SparsePoly product_of(PrimeField field, std::span<const LinearFunction> ls) {
  SparsePoly r = SparsePoly::one(field);
  for (const auto& l : ls) r = r * l.to_poly();
  return r;
}

}  // namespace pit
