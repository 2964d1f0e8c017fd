#include "pit/suite.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <sstream>

#include "pit/pit.hpp"
#include "pit/text.hpp"
#include "pit/transforms.hpp"

namespace pit::suite {

// ------------------------------------------------------------- generators

LinearFunction random_linear(SplitMix64& rng, const PrimeField& F, std::size_t n) {
  LinearFunction l(F);
  if (rng.below(2)) l.set_constant(rng.element(F));
  for (std::size_t i = 1; i <= n; ++i) {
    if (rng.below(2)) l.set_coefficient(static_cast<VarIndex>(i), rng.element(F));
  }
  return l;
}

LinearFunction random_nonzero_linear(SplitMix64& rng, const PrimeField& F,
                                     std::size_t n) {
  while (true) {
    LinearFunction l = random_linear(rng, F, n);
    if (!l.is_zero()) return l;
  }
}

DepthThreeCircuit random_sps(SplitMix64& rng, const PrimeField& F, std::size_t n,
                             std::size_t d, std::size_t s) {
  DepthThreeCircuit c{F, {}};
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<LinearFunction> prod;
    for (std::size_t j = 0; j < d; ++j) prod.push_back(random_linear(rng, F, n));
    c.products.push_back(std::move(prod));
  }
  return c;
}

namespace {

FieldElement random_unit(SplitMix64& rng, const PrimeField& F) {
  return FieldElement{rng.between(1, F.modulus() - 1)};
}

template <class T>
void shuffle(SplitMix64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

// A product and a syntactically different copy of its negation: factors
// permuted, one factor negated, a unit moved between two factors.
void add_cancelling_pair(SplitMix64& rng, const PrimeField& F, std::size_t n,
                         std::size_t d, DepthThreeCircuit& c) {
  std::vector<LinearFunction> p;
  for (std::size_t j = 0; j < d; ++j) p.push_back(random_nonzero_linear(rng, F, n));
  std::vector<LinearFunction> q = p;
  q[0] = q[0].scaled(F.neg(F.one()));
  if (d >= 2) {
    FieldElement a = random_unit(rng, F);
    q[0] = q[0].scaled(a);
    q[1] = q[1].scaled(F.inv(a));
  }
  shuffle(rng, q);
  c.products.push_back(std::move(p));
  c.products.push_back(std::move(q));
}

}  // namespace

DepthThreeCircuit random_zero_sps(SplitMix64& rng, const PrimeField& F,
                                  std::size_t n, std::size_t d, std::size_t max_s) {
  DepthThreeCircuit c{F, {}};
  if (d >= 2 && max_s >= 3 && rng.below(2)) {
    // (a + b)(a - b) R - a a R + b b R
    LinearFunction a = random_nonzero_linear(rng, F, n);
    LinearFunction b = random_nonzero_linear(rng, F, n);
    std::vector<LinearFunction> tail;
    for (std::size_t j = 2; j < d; ++j) tail.push_back(random_nonzero_linear(rng, F, n));
    auto with_tail = [&](LinearFunction u, LinearFunction v) {
      std::vector<LinearFunction> p{std::move(u), std::move(v)};
      p.insert(p.end(), tail.begin(), tail.end());
      return p;
    };
    c.products.push_back(with_tail(a + b, a - b));
    c.products.push_back(with_tail(a.scaled(F.neg(F.one())), a));
    c.products.push_back(with_tail(b, b));
  } else {
    const std::size_t pairs = std::max<std::size_t>(1, max_s / 2);
    for (std::size_t i = 0; i < pairs; ++i) add_cancelling_pair(rng, F, n, d, c);
  }
  shuffle(rng, c.products);
  return c;
}

namespace {

Formula random_formula_at(SplitMix64& rng, const PrimeField& F, std::size_t budget,
                          std::size_t n) {
  if (budget == 0 || rng.below(4) == 0) {
    if (n == 0 || rng.below(4) == 0) return Formula::constant(F, rng.element(F));
    return Formula::leaf(F, random_unit(rng, F),
                         static_cast<VarIndex>(rng.between(1, n)));
  }
  Formula a = random_formula_at(rng, F, budget - 1, n);
  Formula b = random_formula_at(rng, F, budget - 1, n);
  return rng.below(2) ? Formula::add(std::move(a), std::move(b))
                      : Formula::mul(std::move(a), std::move(b));
}

}  // namespace

Formula random_formula(SplitMix64& rng, const PrimeField& F, std::size_t max_depth,
                       std::size_t n) {
  return random_formula_at(rng, F, max_depth, n);
}

AlgebraElement random_element(SplitMix64& rng, const AlgebraBasis& b) {
  AlgebraElement x = b.zero();
  for (auto& c : x.coords) {
    if (rng.below(2)) c = rng.element(b.field());
  }
  return x;
}

AlgebraElement random_combination(SplitMix64& rng, const AlgebraBasis& b,
                                  const std::vector<AlgebraElement>& span) {
  AlgebraElement x = b.zero();
  for (const auto& v : span) {
    x = algebra_add(b, x, algebra_scale(b, v, rng.element(b.field())));
  }
  return x;
}

// -------------------------------------------------------------------- zoo

namespace {

AlgebraElement coords(std::size_t k, std::initializer_list<std::pair<std::size_t, u64>> nz) {
  AlgebraElement e{std::vector<FieldElement>(k)};
  for (auto [i, v] : nz) e.coords[i] = FieldElement{v};
  return e;
}

AlgebraElement embed(const AlgebraElement& x, std::size_t offset, std::size_t k) {
  AlgebraElement e{std::vector<FieldElement>(k)};
  std::copy(x.coords.begin(), x.coords.end(), e.coords.begin() + offset);
  return e;
}

std::vector<AlgebraElement> embed_all(const std::vector<AlgebraElement>& xs,
                                      std::size_t offset, std::size_t k) {
  std::vector<AlgebraElement> out;
  for (const auto& x : xs) out.push_back(embed(x, offset, k));
  return out;
}

}  // namespace

AlgebraBasis direct_product(const AlgebraBasis& a, const AlgebraBasis& b) {
  const std::size_t ka = a.dim(), kb = b.dim(), k = ka + kb;
  std::vector<std::vector<AlgebraElement>> table(
      k, std::vector<AlgebraElement>(k, AlgebraElement{std::vector<FieldElement>(k)}));
  for (std::size_t i = 0; i < ka; ++i) {
    for (std::size_t j = 0; j < ka; ++j) table[i][j] = embed(a.product(i, j), 0, k);
  }
  for (std::size_t i = 0; i < kb; ++i) {
    for (std::size_t j = 0; j < kb; ++j) {
      table[ka + i][ka + j] = embed(b.product(i, j), ka, k);
    }
  }
  AlgebraElement one = embed(a.identity(), 0, k);
  for (std::size_t i = 0; i < kb; ++i) one.coords[ka + i] = b.identity().coords[i];
  return AlgebraBasis(a.field(), std::move(table), std::move(one));
}

AlgebraBasis truncated_poly_algebra(const PrimeField& F, std::size_t m) {
  std::vector<std::vector<AlgebraElement>> table(
      m, std::vector<AlgebraElement>(m, AlgebraElement{std::vector<FieldElement>(m)}));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i + j < m) table[i][j].coords[i + j] = F.one();
    }
  }
  return AlgebraBasis(F, std::move(table), coords(m, {{0, 1}}));
}

AlgebraBasis idempotent_poly_algebra(const PrimeField& F) {
  return AlgebraBasis(F,
                      {{coords(2, {{0, 1}}), coords(2, {{1, 1}})},
                       {coords(2, {{1, 1}}), coords(2, {{1, 1}})}},
                      coords(2, {{0, 1}}));
}

AlgebraBasis upper_triangular_algebra(const PrimeField& F) {
  // e1 = E11, e2 = E12, e3 = E22.
  AlgebraElement z = coords(3, {});
  AlgebraElement e1 = coords(3, {{0, 1}});
  AlgebraElement e2 = coords(3, {{1, 1}});
  AlgebraElement e3 = coords(3, {{2, 1}});
  return AlgebraBasis(F, {{e1, e2, z}, {z, z, e2}, {z, z, e3}},
                      coords(3, {{0, 1}, {2, 1}}));
}

std::vector<ZooAlgebra> commutative_zoo(const PrimeField& F) {
  std::vector<ZooAlgebra> zoo;
  AlgebraBasis f1 = truncated_poly_algebra(F, 1);
  AlgebraBasis dual = truncated_poly_algebra(F, 2);
  AlgebraBasis cubic = truncated_poly_algebra(F, 3);
  zoo.push_back({"F", f1, {}});
  zoo.push_back({"FxF", direct_product(f1, f1), {}});
  zoo.push_back({"F[y]/(y^2)", dual, {coords(2, {{1, 1}})}});
  zoo.push_back({"F[y]/(y^3)", cubic, {coords(3, {{1, 1}}), coords(3, {{2, 1}})}});
  zoo.push_back({"F[y]/(y^2-y)", idempotent_poly_algebra(F), {}});
  zoo.push_back({"FxFxF", direct_product(direct_product(f1, f1), f1), {}});
  zoo.push_back({"FxF[y]/(y^2)", direct_product(f1, dual), {coords(3, {{2, 1}})}});
  zoo.push_back({"F[y]/(y^2)xF[y]/(y^2)", direct_product(dual, dual),
                 embed_all({coords(2, {{1, 1}})}, 0, 4)});
  zoo.back().radical.push_back(embed(coords(2, {{1, 1}}), 2, 4));
  zoo.push_back({"F[y]/(y^3)xF", direct_product(cubic, f1),
                 embed_all({coords(3, {{1, 1}}), coords(3, {{2, 1}})}, 0, 4)});
  for (auto [s, d] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}}) {
    AlgebraBasis r = local_ring_algebra(F, s, d);
    std::vector<AlgebraElement> rad;
    for (std::size_t i = 1; i < r.dim(); ++i) rad.push_back(r.basis_element(i));
    zoo.push_back({"local(s=" + std::to_string(s) + ",d=" + std::to_string(d) + ")",
                   r, std::move(rad)});
  }
  return zoo;
}

// --------------------------------------------------------------- criteria

Sizes small_sizes() {
  Sizes s;
  s.max_n = 3;
  s.max_d = 3;
  s.max_s = 3;
  s.random_circuits = 40;
  s.zero_circuits = 10;
  s.abp_points = 10;
  s.zoo_instances = 40;
  s.count_rule_instances = 10;
  s.local_ring_circuits = 3;
  s.formulas = 30;
  s.max_formula_depth = 3;
  return s;
}

namespace {

constexpr u64 kStreamStride = 0xD1B54A32D192ED03ULL;

SplitMix64 stream(u64 seed, u64 id) { return SplitMix64(seed ^ (id * kStreamStride)); }

// Collects instance lines and counts; an exception inside an instance is a
// failure, never a crash of the suite.
class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}

  void instance(const std::string& label, const std::function<std::string()>& body) {
    ++r_.checks;
    std::string line;
    try {
      line = body();
    } catch (const std::exception& e) {
      line = "FAIL exception: " + std::string(e.what());
    }
    if (line.rfind("FAIL", 0) == 0) ++r_.failures;
    os_ << label << ' ' << line << '\n';
  }

  void finish() {
    os_ << "criterion " << r_.id << " (" << r_.name << "): " << r_.checks - r_.failures
        << "/" << r_.checks << " passed\n";
    r_.report = os_.str();
  }

 private:
  CriterionResult& r_;
  std::ostringstream os_;
};

// Builds "ok ..." or "FAIL <first failed check> ...".
class Checks {
 public:
  void expect(bool ok, const char* what) {
    if (!ok && failed_.empty()) failed_ = what;
  }
  std::string line(const std::string& details) const {
    return (failed_.empty() ? "ok " : "FAIL " + failed_ + " ") + details;
  }

 private:
  std::string failed_;
};

struct SuiteCircuit {
  bool constructed_zero = false;
  DepthThreeCircuit c;
};

std::vector<SuiteCircuit> lowering_suite(u64 seed, const Sizes& z) {
  const PrimeField F(101);
  SplitMix64 rng = stream(seed, 100);
  std::vector<SuiteCircuit> out;
  for (std::size_t i = 0; i < z.random_circuits; ++i) {
    std::size_t n = rng.between(1, z.max_n);
    std::size_t d = rng.between(1, z.max_d);
    std::size_t s = rng.between(1, z.max_s);
    out.push_back({false, random_sps(rng, F, n, d, s)});
  }
  for (std::size_t i = 0; i < z.zero_circuits; ++i) {
    std::size_t n = rng.between(1, z.max_n);
    std::size_t d = rng.between(1, z.max_d);
    out.push_back({true, random_zero_sps(rng, F, n, d, std::max<std::size_t>(2, z.max_s))});
  }
  return out;
}

std::string shape(const DepthThreeCircuit& c) {
  return "n=" + std::to_string(c.num_vars()) + " d=" + std::to_string(c.degree()) +
         " s=" + std::to_string(c.top_fanin());
}

std::string label(const char* prefix, std::size_t i, const SuiteCircuit& sc) {
  return std::string(prefix) + " #" + std::to_string(i) +
         (sc.constructed_zero ? " zero" : " rand");
}

CriterionResult lowering_soundness(u64 seed, const Sizes& z) {
  CriterionResult r{1, "U2 lowering soundness", 0, 0, {}};
  Recorder rec(r);
  SplitMix64 sz_rng = stream(seed, 1);
  const auto circuits = lowering_suite(seed, z);
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const SuiteCircuit& sc = circuits[i];
    const u64 sz_seed = sz_rng.next();
    rec.instance(label("c1", i, sc), [&] {
      Checks ck;
      const DepthThreeCircuit& c = sc.c;
      LoweredU2 low = sps_to_u2(c);
      LinearMatrixSequence masked = mask_offdiagonal(low);
      PolyMatrix prod = expand_sequence(masked);
      SparsePoly f = expand_depth3(c);
      SparsePoly lf = product_of(c.field, low.l_factors) * f;
      ck.expect(!sc.constructed_zero || f.is_zero(), "constructed-zero");
      ck.expect(std::none_of(low.l_factors.begin(), low.l_factors.end(),
                             [](const LinearFunction& l) { return l.is_zero(); }),
                "nonzero-L");
      ck.expect(prod.at(0, 1) == lf, "entry=L*f");
      ck.expect(prod.at(0, 0).is_zero() && prod.at(1, 0).is_zero() &&
                    prod.at(1, 1).is_zero(),
                "mask");
      ck.expect(f.is_zero() == prod.is_zero(), "zero-equivalence");
      SzResult sz = schwartz_zippel(masked, 20, sz_seed);
      ck.expect(sz.nonzero != f.is_zero(), "schwartz-zippel");
      std::string wit = sz.witness ? format_point(*sz.witness, masked.uses_z()) : "-";
      return ck.line(shape(c) + " len=" + std::to_string(low.seq.length()) +
                     " L=" + std::to_string(low.l_factors.size()) +
                     " f=" + (f.is_zero() ? "zero" : "nonzero") + " witness=" + wit);
    });
  }
  rec.finish();
  return r;
}

CriterionResult size_bound(u64 seed, const Sizes& z) {
  CriterionResult r{2, "U2 length bound", 0, 0, {}};
  Recorder rec(r);
  const auto circuits = lowering_suite(seed, z);
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const SuiteCircuit& sc = circuits[i];
    rec.instance(label("c2", i, sc), [&] {
      Checks ck;
      LoweredU2 low = sps_to_u2(sc.c);
      const std::size_t n = sc.c.num_vars(), d = sc.c.degree(), s = sc.c.top_fanin();
      const std::size_t bound = (d + n) * (std::size_t{1} << (2 * ceil_log2(s)));
      ck.expect(low.length_bound() == bound, "bound-formula");
      ck.expect(low.seq.length() <= bound, "len<=bound");
      return ck.line(shape(sc.c) + " len=" + std::to_string(low.seq.length()) +
                     " bound=" + std::to_string(bound));
    });
  }
  rec.finish();
  return r;
}

CriterionResult abp_equivalence(u64 seed, const Sizes& z) {
  CriterionResult r{3, "width-2 planar ABP", 0, 0, {}};
  Recorder rec(r);
  SplitMix64 pts = stream(seed, 3);
  const auto circuits = lowering_suite(seed, z);
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const SuiteCircuit& sc = circuits[i];
    rec.instance(label("c3", i, sc), [&] {
      Checks ck;
      const DepthThreeCircuit& c = sc.c;
      const PrimeField& F = c.field;
      LoweredU2 low = sps_to_u2(c);
      Abp abp = homogenize_and_abp(low);
      abp.check_structure();
      ck.expect(is_pattern_planar(abp), "planar");
      ck.expect(abp.is_planar(), "non-crossing");
      bool width_ok = abp.levels.front() == 1 && abp.levels.back() == 1;
      for (std::size_t lv = 1; lv + 1 < abp.levels.size(); ++lv) {
        width_ok = width_ok && abp.levels[lv] <= 2;
      }
      ck.expect(width_ok, "width");
      // The source and sink gaps carry the constant mask weights.
      for (std::size_t g = 1; g + 1 < abp.gaps.size(); ++g) {
        for (const auto& e : abp.gaps[g]) {
          ck.expect(e.label.is_homogeneous(), "homogeneous");
        }
      }
      const std::size_t n = std::max<std::size_t>(c.num_vars(), 1);
      std::size_t agree = 0;
      for (std::size_t t = 0; t < z.abp_points; ++t) {
        std::vector<FieldElement> x;
        for (std::size_t v = 0; v < n; ++v) x.push_back(pts.element(F));
        FieldElement want = c.eval(x);
        for (const auto& l : low.l_factors) want = F.mul(want, l.eval(x));
        if (eval_abp(abp, x, F.one()) == want) ++agree;
      }
      ck.expect(agree == z.abp_points, "eval");
      return ck.line(shape(c) + " levels=" + std::to_string(abp.levels.size()) +
                     " width=" + std::to_string(abp.width()) +
                     " points=" + std::to_string(agree));
    });
  }
  rec.finish();
  return r;
}

AlgebraBasis faulty(const AlgebraBasis& b, const Faults& faults) {
  if (!faults.flip_structure_constant) return b;
  AlgebraBasis m = b;
  const PrimeField& F = b.field();
  m.set_structure_constant(0, 0, 0, F.add(b.product(0, 0).coords[0], F.one()));
  return m;
}

std::string pit_line(const PitVerdict& v, Verdict brute) {
  return std::string("pit=") + to_string(v.verdict) + " brute=" + to_string(brute) +
         " splits=" + std::to_string(v.stats.splits) +
         " filtered=" + std::to_string(v.stats.terms_filtered);
}

// Every circuit over F_2[y]/(y^2) with n <= 2 and d <= 2.
void exhaustive_dual_numbers(Recorder& rec, const Faults& faults) {
  const PrimeField F2(2);
  const AlgebraBasis pristine = truncated_poly_algebra(F2, 2);
  const AlgebraBasis engine = faulty(pristine, faults);
  std::vector<AlgebraElement> elems;
  for (u64 a = 0; a < 2; ++a) {
    for (u64 b = 0; b < 2; ++b) {
      elems.push_back(AlgebraElement{{FieldElement{a}, FieldElement{b}}});
    }
  }
  for (std::size_t n = 0; n <= 2; ++n) {
    std::vector<std::vector<AlgebraElement>> all_terms;
    std::size_t term_count = 1;
    for (std::size_t j = 0; j <= n; ++j) term_count *= elems.size();
    for (std::size_t code = 0; code < term_count; ++code) {
      std::vector<AlgebraElement> t;
      for (std::size_t j = 0, c = code; j <= n; ++j, c /= elems.size()) {
        t.push_back(elems[c % elems.size()]);
      }
      all_terms.push_back(std::move(t));
    }
    std::size_t pass = 0, total = 0;
    std::string first_failure;
    for (std::size_t d = 0; d <= 2; ++d) {
      std::size_t circuits = 1;
      for (std::size_t j = 0; j < d; ++j) circuits *= all_terms.size();
      for (std::size_t code = 0; code < circuits; ++code) {
        std::vector<std::vector<AlgebraElement>> terms;
        for (std::size_t j = 0, c = code; j < d; ++j, c /= all_terms.size()) {
          terms.push_back(all_terms[c % all_terms.size()]);
        }
        ++total;
        try {
          Verdict want = brute_force_zero(AlgebraTermCircuit{pristine, terms});
          Verdict got = commutative_pit(AlgebraTermCircuit{engine, terms}).verdict;
          if (want == got) {
            ++pass;
          } else if (first_failure.empty()) {
            first_failure = "d=" + std::to_string(d) + " code=" + std::to_string(code);
          }
        } catch (const std::exception& e) {
          if (first_failure.empty()) first_failure = e.what();
        }
      }
    }
    // One report line per n so the exhaustive part stays readable.
    rec.instance("c4 F2[y]/(y^2) n=" + std::to_string(n), [&] {
      std::string counts = std::to_string(pass) + "/" + std::to_string(total) + " agree";
      return pass == total ? "ok " + counts : "FAIL " + counts + " first: " + first_failure;
    });
  }
}

CriterionResult commutative_agreement(u64 seed, const Sizes& z, const Faults& faults) {
  CriterionResult r{4, "commutative PIT agrees with brute force", 0, 0, {}};
  Recorder rec(r);
  exhaustive_dual_numbers(rec, faults);
  const PrimeField F(101);
  SplitMix64 rng = stream(seed, 4);
  for (const ZooAlgebra& za : commutative_zoo(F)) {
    const AlgebraBasis engine = faulty(za.basis, faults);
    rec.instance("c4 validate " + za.name, [&] {
      validate_basis(engine);
      return std::string(engine.is_commutative() ? "ok commutative" : "FAIL not commutative");
    });
    for (std::size_t i = 0; i < z.zoo_instances; ++i) {
      const std::size_t n = rng.between(1, 3);
      const std::size_t d = rng.between(1, 4);
      std::vector<std::vector<AlgebraElement>> terms;
      for (std::size_t j = 0; j < d; ++j) {
        const bool nil = !za.radical.empty() && rng.below(2);
        std::vector<AlgebraElement> t;
        for (std::size_t v = 0; v <= n; ++v) {
          t.push_back(nil ? random_combination(rng, za.basis, za.radical)
                          : random_element(rng, za.basis));
        }
        terms.push_back(std::move(t));
      }
      rec.instance("c4 " + za.name + " #" + std::to_string(i), [&] {
        Verdict want = brute_force_zero(AlgebraTermCircuit{za.basis, terms});
        PitVerdict got = commutative_pit(AlgebraTermCircuit{engine, terms});
        std::string details = "n=" + std::to_string(n) + " d=" + std::to_string(d) +
                              " " + pit_line(got, want);
        return (got.verdict == want ? "ok " : "FAIL ") + details;
      });
    }
  }
  rec.finish();
  return r;
}

CriterionResult count_rule(u64 seed, const Sizes& z, const Faults& faults) {
  CriterionResult r{5, "nilpotent count rule", 0, 0, {}};
  Recorder rec(r);
  const PrimeField F(101);
  SplitMix64 rng = stream(seed, 5);
  for (const ZooAlgebra& za : commutative_zoo(F)) {
    if (za.radical.empty()) continue;
    const AlgebraBasis engine = faulty(za.basis, faults);
    const std::size_t k = za.basis.dim();
    for (std::size_t i = 0; i < z.count_rule_instances; ++i) {
      const std::size_t n = rng.between(1, 2);
      const std::size_t d = rng.between(k + 1, k + 3);
      std::vector<std::vector<AlgebraElement>> terms;
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<AlgebraElement> t;
        for (std::size_t v = 0; v <= n; ++v) {
          t.push_back(random_combination(rng, za.basis, za.radical));
        }
        terms.push_back(std::move(t));
      }
      rec.instance("c5 " + za.name + " #" + std::to_string(i), [&] {
        Checks ck;
        bool all_nil = true;
        for (const auto& t : terms) {
          for (const auto& a : t) {
            all_nil = all_nil && classify(za.basis, a) == ElementClass::Nilpotent;
          }
        }
        ck.expect(all_nil, "all-nilpotent");
        PitVerdict got = commutative_pit(AlgebraTermCircuit{engine, terms});
        Verdict want = brute_force_zero(AlgebraTermCircuit{za.basis, terms});
        ck.expect(got.verdict == Verdict::Zero, "judged-zero");
        ck.expect(got.stats.splits == 0 && !got.trace.empty() &&
                      got.trace.back().find("count exceeds dim") != std::string::npos,
                  "by-count");
        ck.expect(want == Verdict::Zero, "brute-confirms");
        return ck.line("k=" + std::to_string(k) + " terms=" + std::to_string(d) + " " +
                       pit_line(got, want));
      });
    }
  }
  rec.finish();
  return r;
}

CriterionResult local_ring(u64 seed, const Sizes& z, const Faults& faults) {
  CriterionResult r{6, "local ring reduction", 0, 0, {}};
  Recorder rec(r);
  const PrimeField F(101);
  SplitMix64 rng = stream(seed, 6);
  for (std::size_t s = 2; s <= 3; ++s) {
    for (std::size_t d = 2; d <= 3; ++d) {
      for (std::size_t i = 0; i < z.local_ring_circuits; ++i) {
        const std::size_t n = rng.between(1, 4);
        DepthThreeCircuit c = random_sps(rng, F, n, d, s);
        rec.instance("c6 s=" + std::to_string(s) + " d=" + std::to_string(d) + " #" +
                         std::to_string(i),
                     [&] {
          Checks ck;
          LocalRingReduction red = local_ring_reduction(c);
          AlgebraTermCircuit tc = red.circuit;
          tc.basis = faulty(tc.basis, faults);
          const AlgebraBasis& R = tc.basis;
          validate_basis(R);
          ck.expect(R.is_commutative(), "commutative");
          ck.expect(R.dim() == s * (d - 1) + 2, "dimension");
          for (std::size_t y = 1; y <= s; ++y) {
            auto idx = red.index_of(y, 1);
            ck.expect(idx && classify(R, R.basis_element(*idx)) == ElementClass::Nilpotent,
                      "y-nilpotent");
          }
          AlgebraPoly prod = expand_term_circuit(tc);
          SparsePoly top(F);
          bool others_zero = true;
          for (const auto& [m, a] : prod) {
            for (std::size_t t = 0; t < a.dim(); ++t) {
              if (t == red.top_index) {
                top.add_term(m, a.coords[t]);
              } else {
                others_zero = others_zero && a.coords[t].is_zero();
              }
            }
          }
          SparsePoly f = expand_depth3(c);
          ck.expect(top == f, "top=f");
          ck.expect(others_zero, "others-zero");
          PitVerdict v = commutative_pit(tc);
          ck.expect((v.verdict == Verdict::Zero) == f.is_zero(), "pit");
          return ck.line("n=" + std::to_string(n) + " dim=" + std::to_string(R.dim()) +
                         " f=" + (f.is_zero() ? "zero" : "nonzero") +
                         " pit=" + to_string(v.verdict));
        });
      }
    }
  }
  rec.finish();
  return r;
}

CriterionResult ben_or_cleve_suite(u64 seed, const Sizes& z) {
  CriterionResult r{7, "Ben-Or/Cleve 3x3 programs", 0, 0, {}};
  Recorder rec(r);
  const PrimeField F(101);
  SplitMix64 rng = stream(seed, 7);
  for (std::size_t i = 0; i < z.formulas; ++i) {
    const std::size_t n = rng.between(1, z.max_n);
    Formula e = random_formula(rng, F, z.max_formula_depth, n);
    rec.instance("c7 #" + std::to_string(i), [&] {
      Checks ck;
      LinearMatrixSequence seq = ben_or_cleve(e);
      std::size_t bound = 1;
      for (std::size_t t = 0; t < e.depth(); ++t) bound *= 4;
      ck.expect(seq.k == 3 && seq.length() <= bound, "length");
      ck.expect(std::all_of(seq.matrices.begin(), seq.matrices.end(), is_transvection),
                "transvections");
      PolyMatrix prod = expand_sequence(seq);
      SparsePoly want = e.expand();
      bool rest = true;
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
          if (a == kBocRow && b == kBocCol) continue;
          rest = rest && prod.at(a, b) == (a == b ? SparsePoly::one(F) : SparsePoly(F));
        }
      }
      ck.expect(prod.at(kBocRow, kBocCol) == want, "entry=E");
      ck.expect(rest, "identity-elsewhere");
      return ck.line("depth=" + std::to_string(e.depth()) +
                     " len=" + std::to_string(seq.length()) +
                     " bound=" + std::to_string(bound) +
                     " terms=" + std::to_string(want.num_terms()));
    });
  }
  rec.finish();
  return r;
}

CriterionResult robustness(u64 /*seed*/, const Sizes& /*z*/) {
  CriterionResult r{8, "robustness search over F2", 0, 0, {}};
  Recorder rec(r);
  const PrimeField F2(2);
  auto x = [&](VarIndex v) { return SparsePoly::variable(F2, v); };
  rec.instance("c8 x1*x2+x3*x4+x5*x6", [&] {
    auto pairs = robustness_search(x(1) * x(2) + x(3) * x(4) + x(5) * x(6));
    return (pairs.empty() ? "ok" : "FAIL") + std::string(" violations=") +
           std::to_string(pairs.size());
  });
  rec.instance("c8 x1*x2", [&] {
    auto pairs = robustness_search(x(1) * x(2));
    std::string first = pairs.empty() ? "-"
                                      : "(" + to_text(pairs.front().first) + ", " +
                                            to_text(pairs.front().second) + ")";
    return (pairs.empty() ? "FAIL" : "ok") + std::string(" violations=") +
           std::to_string(pairs.size()) + " first=" + first;
  });
  rec.finish();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, u64 seed, const Sizes& sizes, const Faults& faults) {
  switch (id) {
    case 1:
      return lowering_soundness(seed, sizes);
    case 2:
      return size_bound(seed, sizes);
    case 3:
      return abp_equivalence(seed, sizes);
    case 4:
      return commutative_agreement(seed, sizes, faults);
    case 5:
      return count_rule(seed, sizes, faults);
    case 6:
      return local_ring(seed, sizes, faults);
    case 7:
      return ben_or_cleve_suite(seed, sizes);
    case 8:
      return robustness(seed, sizes);
    default:
      throw InvalidArgument("no criterion " + std::to_string(id));
  }
}

}  // namespace pit::suite
