#include "pit/transforms.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace pit {

std::size_t ceil_log2(std::size_t s) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < s) ++r;
  return r;
}

std::size_t LoweredU2::length_bound() const {
  std::size_t b = source.d + source.n;
  for (std::size_t i = 0; i < ceil_log2(std::max<std::size_t>(source.s, 1)); ++i) {
    b *= 4;
  }
  return b;
}

// -------------------------------------------------------------- sps_to_u2

namespace {

// [[L1, L2 g],[0, L3]] together with the matrices that compute it.
struct PartialProduct {
  std::vector<LinearMatrix> mats;
  std::vector<LinearFunction> l1, l2, l3;
};

bool is_one(const LinearFunction& l) {
  return l.is_constant() && l.constant_term().value == 1;
}

void append_factor(std::vector<LinearFunction>& out, const LinearFunction& l) {
  if (!is_one(l)) out.push_back(l);
}

template <typename... Lists>
std::vector<LinearFunction> concat(const Lists&... lists) {
  std::vector<LinearFunction> out;
  (out.insert(out.end(), lists.begin(), lists.end()), ...);
  return out;
}

LinearMatrix diagonal(PrimeField F, const LinearFunction& a,
                      const LinearFunction& b) {
  LinearMatrix m(F, 2);
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  return m;
}

// [[1, l],[0, 1]] as the product of single-term factors [[1, a_i x_i],[0,1]].
void emit_offdiagonal(PrimeField F, const LinearFunction& l,
                      std::vector<LinearMatrix>& out) {
  auto unit = [&](LinearFunction entry) {
    LinearMatrix m = LinearMatrix::identity(F, 2);
    m.at(0, 1) = std::move(entry);
    out.push_back(std::move(m));
  };
  if (!l.constant_term().is_zero()) {
    unit(LinearFunction::constant(F, l.constant_term()));
  }
  for (const auto& [v, c] : l.coefficients()) {
    unit(LinearFunction::variable(F, v, c));
  }
  if (l.is_zero()) unit(LinearFunction(F));
}

PartialProduct summand(PrimeField F, const std::vector<LinearFunction>& ls) {
  PartialProduct p;
  for (std::size_t j = 0; j + 1 < ls.size(); ++j) {
    p.mats.push_back(diagonal(F, ls[j], LinearFunction::constant(F, F.one())));
    append_factor(p.l1, ls[j]);
  }
  emit_offdiagonal(F, ls.back(), p.mats);
  return p;
}

// [[L1, L2 g],[0,L3]] diag(A,B) [[M1, M2 h],[0,M3]] with A = L2 M3, B = L1 M2.
PartialProduct merge(PrimeField F, PartialProduct p, PartialProduct q) {
  std::vector<LinearFunction> a = concat(p.l2, q.l3);
  std::vector<LinearFunction> b = concat(p.l1, q.l2);
  PartialProduct r;
  r.mats = std::move(p.mats);
  const LinearFunction one = LinearFunction::constant(F, F.one());
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    r.mats.push_back(diagonal(F, i < a.size() ? a[i] : one,
                              i < b.size() ? b[i] : one));
  }
  r.mats.insert(r.mats.end(), std::make_move_iterator(q.mats.begin()),
                std::make_move_iterator(q.mats.end()));
  r.l1 = concat(a, p.l1, q.l1);
  r.l2 = concat(p.l1, p.l2, q.l2, q.l3);
  r.l3 = concat(b, p.l3, q.l3);
  return r;
}

}  // namespace

LoweredU2 sps_to_u2(const DepthThreeCircuit& c) {
  const PrimeField F = c.field;
  DepthThreeCircuit norm = normalize_degree(c);
  LoweredU2 out;
  out.source = {c.num_vars(), norm.degree(), c.top_fanin()};
  out.seq.field = F;
  out.seq.k = 2;

  std::vector<PartialProduct> parts;
  for (const auto& prod : norm.products) {
    if (prod.empty()) continue;
    bool has_zero = std::any_of(prod.begin(), prod.end(),
                                [](const LinearFunction& l) { return l.is_zero(); });
    if (has_zero) continue;
    parts.push_back(summand(F, prod));
  }
  if (parts.empty()) {
    out.seq.matrices.push_back(LinearMatrix::identity(F, 2));
    out.syntactic_zero = true;
    return out;
  }
  while (parts.size() > 1) {
    std::vector<PartialProduct> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      next.push_back(merge(F, std::move(parts[i]), std::move(parts[i + 1])));
    }
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  out.seq.matrices = std::move(parts.front().mats);
  out.l_factors = std::move(parts.front().l2);
  return out;
}

LinearMatrixSequence mask_offdiagonal(const LoweredU2& l) {
  LinearMatrixSequence s = l.seq;
  Matrix left(2, 2);
  left(0, 0) = FieldElement{1};
  Matrix right(2, 2);
  right(1, 1) = FieldElement{1};
  s.left_mask = left;
  s.right_mask = right;
  return s;
}

// -------------------------------------------------------------- u2_to_sps

U2Entries u2_to_sps(const LinearMatrixSequence& s) {
  if (s.k != 2 || !s.is_upper_triangular()) throw NotUpperTriangular();
  s.check_shapes();
  const PrimeField F = s.field;
  std::vector<LinearMatrix> mats;
  if (s.left_mask) mats.push_back(LinearMatrix::constant(F, *s.left_mask));
  mats.insert(mats.end(), s.matrices.begin(), s.matrices.end());
  if (s.right_mask) mats.push_back(LinearMatrix::constant(F, *s.right_mask));

  U2Entries e{{F, {{}}}, {F, {{}}}, {F, {}}};
  for (const auto& m : mats) {
    e.top_left.products[0].push_back(m.at(0, 0));
    e.bottom_right.products[0].push_back(m.at(1, 1));
  }
  for (std::size_t j = 0; j < mats.size(); ++j) {
    std::vector<LinearFunction> prod;
    for (std::size_t i = 0; i < j; ++i) prod.push_back(mats[i].at(0, 0));
    prod.push_back(mats[j].at(0, 1));
    for (std::size_t i = j + 1; i < mats.size(); ++i) {
      prod.push_back(mats[i].at(1, 1));
    }
    e.top_right.products.push_back(std::move(prod));
  }
  return e;
}

// ------------------------------------------------------ homogenize_and_abp

Abp homogenize_and_abp(const LoweredU2& l) {
  const PrimeField F = l.seq.field;
  const LinearFunction one = LinearFunction::constant(F, F.one());
  const LinearFunction z = LinearFunction::variable(F, kHomogenizingVar);
  Abp a;
  a.field = F;
  a.levels.push_back(1);
  a.levels.push_back(2);
  a.gaps.push_back({AbpEdge{0, 0, one}});
  for (std::size_t j = 0; j < l.seq.matrices.size(); ++j) {
    const LinearMatrix& m = l.seq.matrices[j];
    if (m.size() != 2) throw UnsupportedShape("lowering is not 2x2");
    LinearMatrix h(F, 2);
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) h.at(r, c) = m.at(r, c).homogenized();
    }
    bool diag = h.is_diagonal();
    bool unipotent = h.at(1, 0).is_zero() && h.at(0, 0) == z && h.at(1, 1) == z &&
                     h.at(0, 1).coefficients().size() == 1;
    if (!diag && !unipotent) {
      throw UnsupportedShape("matrix " + std::to_string(j + 1) +
                             " is neither diagonal nor [[z, c*x],[0, z]]");
    }
    std::vector<AbpEdge> gap;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) {
        if (!h.at(r, c).is_zero()) gap.push_back(AbpEdge{r, c, h.at(r, c)});
      }
    }
    a.gaps.push_back(std::move(gap));
    a.levels.push_back(2);
  }
  a.gaps.push_back({AbpEdge{1, 0, one}});
  a.levels.push_back(1);
  return a;
}

// ------------------------------------------------------------ ben_or_cleve

namespace {

void boc_emit(const Formula& e, std::size_t row, std::size_t col,
              bool negate, std::vector<LinearMatrix>& out) {
  const PrimeField& F = e.field();
  switch (e.kind()) {
    case Formula::Kind::Leaf: {
      LinearMatrix m = LinearMatrix::identity(F, 3);
      FieldElement c = negate ? F.neg(e.coefficient()) : e.coefficient();
      m.at(row, col) = e.variable() ? LinearFunction::variable(F, *e.variable(), c)
                                    : LinearFunction::constant(F, c);
      out.push_back(std::move(m));
      return;
    }
    case Formula::Kind::Add:
      boc_emit(e.left(), row, col, negate, out);
      boc_emit(e.right(), row, col, negate, out);
      return;
    case Formula::Kind::Mul: {
      // I + s f1 f2 E_rc = (I - f2 E_mc)(I + s f1 E_rm)(I + f2 E_mc)(I - s f1 E_rm)
      const std::size_t mid = 3 - row - col;
      boc_emit(e.right(), mid, col, true, out);
      boc_emit(e.left(), row, mid, negate, out);
      boc_emit(e.right(), mid, col, false, out);
      boc_emit(e.left(), row, mid, !negate, out);
      return;
    }
  }
}

}  // namespace

LinearMatrixSequence ben_or_cleve(const Formula& e) {
  LinearMatrixSequence s;
  s.field = e.field();
  s.k = 3;
  boc_emit(e, kBocRow, kBocCol, false, s.matrices);
  return s;
}

bool is_transvection(const LinearMatrix& m) {
  std::size_t off = 0;
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) {
      const LinearFunction& l = m.at(r, c);
      if (r == c) {
        if (!(l.is_constant() && l.constant_term().value == 1)) return false;
      } else if (!l.is_zero()) {
        ++off;
      }
    }
  }
  return off <= 1;
}

// ---------------------------------------------------- local_ring_reduction

namespace {

struct LocalRingShape {
  std::size_t s;
  std::size_t d;

  std::size_t dim() const { return 1 + d + (s - 1) * (d - 1); }

  std::optional<std::size_t> index_of(std::size_t i, std::size_t a) const {
    if (a == 0) return 0;
    if (a > d) return std::nullopt;
    if (i == 1 || a == d) return a;
    return 1 + d + (i - 2) * (d - 1) + (a - 1);
  }

  // (family, power) of each basis index.
  std::pair<std::size_t, std::size_t> decode(std::size_t idx) const {
    if (idx == 0) return {1, 0};
    if (idx <= d) return {1, idx};
    std::size_t off = idx - 1 - d;
    return {2 + off / (d - 1), 1 + off % (d - 1)};
  }
};

}  // namespace

std::optional<std::size_t> LocalRingReduction::index_of(std::size_t i,
                                                        std::size_t a) const {
  return LocalRingShape{s, d}.index_of(i, a);
}

AlgebraBasis local_ring_algebra(PrimeField field, std::size_t s, std::size_t d) {
  if (s == 0 || d == 0) {
    throw InvalidArgument("local ring needs s >= 1 and d >= 1");
  }
  LocalRingShape shape{s, d};
  const std::size_t k = shape.dim();
  std::vector<std::vector<AlgebraElement>> table(
      k, std::vector<AlgebraElement>(k, AlgebraElement{std::vector<FieldElement>(k)}));
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      auto [fi, a] = shape.decode(x);
      auto [fj, b] = shape.decode(y);
      std::optional<std::size_t> idx;
      if (a == 0) {
        idx = y;
      } else if (b == 0) {
        idx = x;
      } else if (fi == fj) {
        idx = shape.index_of(fi, a + b);
      }
      if (idx) table[x][y].coords[*idx] = field.one();
    }
  }
  AlgebraElement one{std::vector<FieldElement>(k)};
  one.coords[0] = field.one();
  return AlgebraBasis(field, std::move(table), std::move(one));
}

LocalRingReduction local_ring_reduction(const DepthThreeCircuit& c) {
  DepthThreeCircuit norm = normalize_degree(c);
  const std::size_t s = norm.top_fanin();
  const std::size_t d = norm.degree();
  const std::size_t n = norm.num_vars();
  const PrimeField F = norm.field;
  AlgebraBasis basis = local_ring_algebra(F, s, d);
  LocalRingShape shape{s, d};

  std::vector<std::vector<AlgebraElement>> terms;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<AlgebraElement> coeffs(n + 1, basis.zero());
    for (std::size_t i = 0; i < s; ++i) {
      const LinearFunction& l = norm.products[i][j];
      const std::size_t yi = *shape.index_of(i + 1, 1);
      auto bump = [&](std::size_t slot, FieldElement c) {
        coeffs[slot].coords[yi] = F.add(coeffs[slot].coords[yi], c);
      };
      bump(0, l.constant_term());
      for (const auto& [v, a] : l.coefficients()) {
        if (v == kHomogenizingVar) {
          throw InvalidArgument("local_ring_reduction: circuit uses z");
        }
        bump(v, a);
      }
    }
    terms.push_back(std::move(coeffs));
  }
  LocalRingReduction r{AlgebraTermCircuit{std::move(basis), std::move(terms)},
                       s, d, d};
  return r;
}

}  // namespace pit
