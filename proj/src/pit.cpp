#include "pit/pit.hpp"

#include <algorithm>
#include <sstream>

#include "pit/random.hpp"

namespace pit {

const char* to_string(Verdict v) {
  return v == Verdict::Zero ? "zero" : "nonzero";
}

// ------------------------------------------------------- algebra products

namespace {

void enforce_cap(std::size_t size, const ExpandOptions& opts) {
  if (size > opts.cap) throw ExpansionTooLarge(opts.cap);
}

AlgebraPoly unit_poly(const AlgebraBasis& b) {
  AlgebraPoly p;
  if (!b.identity().is_zero()) p.emplace(Monomial(), b.identity());
  return p;
}

// p * (A_0 + A_1 x_1 + ... + A_n x_n)
AlgebraPoly times_term(const AlgebraBasis& b, const AlgebraPoly& p,
                       const std::vector<AlgebraElement>& term,
                       const ExpandOptions& opts) {
  AlgebraPoly r;
  for (const auto& [m, a] : p) {
    for (std::size_t j = 0; j < term.size(); ++j) {
      if (term[j].is_zero()) continue;
      AlgebraElement prod = algebra_mul(b, a, term[j]);
      if (prod.is_zero()) continue;
      Monomial mm = j == 0 ? m : m * Monomial::var(static_cast<VarIndex>(j));
      auto [it, inserted] = r.try_emplace(std::move(mm), prod);
      if (!inserted) {
        it->second = algebra_add(b, it->second, prod);
        if (it->second.is_zero()) r.erase(it);
      }
    }
  }
  enforce_cap(r.size(), opts);
  return r;
}

AlgebraPoly multiply_terms(const AlgebraBasis& b,
                           const std::vector<std::vector<AlgebraElement>>& terms,
                           const ExpandOptions& opts) {
  AlgebraPoly acc = unit_poly(b);
  for (const auto& t : terms) {
    acc = times_term(b, acc, t, opts);
    if (acc.empty()) break;
  }
  return acc;
}

struct PitRun {
  const PitOptions& opts;
  PitVerdict& out;

  Verdict solve(const AlgebraBasis& b,
                const std::vector<std::vector<AlgebraElement>>& terms,
                std::size_t depth, const std::string& label) {
    out.stats.max_depth = std::max(out.stats.max_depth, depth);
    // Step 1: split along the first non-nilpotent zero divisor.
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = 0; j < terms[i].size(); ++j) {
        if (classify(b, terms[i][j]) != ElementClass::ZeroDivisorNonNilpotent) {
          continue;
        }
        AlgebraElement v = find_idempotent(b, terms[i][j]);
        SplitResult sr = split(b, v);
        if (sr.left.algebra.dim() >= b.dim() || sr.right.algebra.dim() >= b.dim()) {
          throw NoIdempotentFound("split did not reduce dimension " +
                                  std::to_string(b.dim()));
        }
        ++out.stats.splits;
        std::ostringstream os;
        os << label << ": dim " << b.dim() << ", A[" << i + 1 << "][" << j
           << "] is a non-nilpotent zero divisor; split into dims "
           << sr.left.algebra.dim() << " + " << sr.right.algebra.dim();
        out.trace.push_back(os.str());
        auto project = [&](const SubAlgebra& sub) {
          std::vector<std::vector<AlgebraElement>> projected;
          for (const auto& t : terms) {
            std::vector<AlgebraElement> pt;
            for (const auto& a : t) pt.push_back(sub.project(b, a));
            projected.push_back(std::move(pt));
          }
          return projected;
        };
        if (solve(sr.left.algebra, project(sr.left), depth + 1, label + ".v") ==
            Verdict::NonZero) {
          return Verdict::NonZero;
        }
        return solve(sr.right.algebra, project(sr.right), depth + 1,
                     label + ".(1-v)");
      }
    }
    // Step 2: every coefficient is invertible or nilpotent.
    std::vector<std::vector<AlgebraElement>> nilpotent_terms;
    for (const auto& t : terms) {
      bool has_unit = std::any_of(t.begin(), t.end(), [&](const AlgebraElement& a) {
        return classify(b, a) == ElementClass::Invertible;
      });
      if (has_unit) {
        ++out.stats.terms_filtered;
      } else {
        nilpotent_terms.push_back(t);
      }
    }
    std::ostringstream os;
    os << label << ": dim " << b.dim() << " local, " << nilpotent_terms.size()
       << " of " << terms.size() << " terms all-nilpotent";
    // Step 3: a product of more than k nilpotents vanishes.
    if (nilpotent_terms.size() > b.dim()) {
      os << "; count exceeds dim -> zero";
      out.trace.push_back(os.str());
      return Verdict::Zero;
    }
    if (nilpotent_terms.size() > opts.max_terms) {
      throw DimensionTooLarge(std::to_string(nilpotent_terms.size()) +
                              " nilpotent terms exceed the limit of " +
                              std::to_string(opts.max_terms));
    }
    // Step 4: multiply out.
    AlgebraPoly prod = multiply_terms(b, nilpotent_terms, opts.expand);
    out.stats.final_product_terms = prod.size();
    Verdict v = prod.empty() ? Verdict::Zero : Verdict::NonZero;
    os << "; product has " << prod.size() << " monomials -> " << to_string(v);
    out.trace.push_back(os.str());
    return v;
  }
};

}  // namespace

PitVerdict commutative_pit(const AlgebraTermCircuit& c, const PitOptions& opts) {
  c.check_shapes();
  if (!c.basis.is_commutative()) throw NotCommutative();
  PitVerdict out;
  PitRun run{opts, out};
  out.verdict = run.solve(c.basis, c.terms, 0, "R");
  if (out.stats.max_depth > c.basis.dim()) {
    throw NoIdempotentFound("recursion deeper than the algebra dimension");
  }
  return out;
}

AlgebraPoly expand_term_circuit(const AlgebraTermCircuit& c,
                                const ExpandOptions& opts) {
  c.check_shapes();
  return multiply_terms(c.basis, c.terms, opts);
}

// ------------------------------------------------------------ brute force

Verdict brute_force_zero(const DepthThreeCircuit& c, const ExpandOptions& opts) {
  return expand_depth3(c, opts).is_zero() ? Verdict::Zero : Verdict::NonZero;
}

Verdict brute_force_zero(const LinearMatrixSequence& s, const ExpandOptions& opts) {
  return expand_sequence(s, opts).is_zero() ? Verdict::Zero : Verdict::NonZero;
}

Verdict brute_force_zero(const Abp& a, const ExpandOptions& opts) {
  return expand_abp(a, opts).is_zero() ? Verdict::Zero : Verdict::NonZero;
}

Verdict brute_force_zero(const Formula& f, const ExpandOptions& opts) {
  return f.expand(opts).is_zero() ? Verdict::Zero : Verdict::NonZero;
}

Verdict brute_force_zero(const AlgebraTermCircuit& c, const ExpandOptions& opts) {
  return expand_term_circuit(c, opts).empty() ? Verdict::Zero : Verdict::NonZero;
}

// --------------------------------------------------------- Schwartz-Zippel

std::string format_point(const EvalPoint& p, bool with_z) {
  std::string s;
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.xs[i].value);
  }
  if (with_z) s += (p.xs.empty() ? "z=" : ";z=") + std::to_string(p.z.value);
  return s.empty() ? "()" : s;
}

SzResult schwartz_zippel(const NonzeroAt& probe, const PrimeField& field,
                         std::size_t num_vars, bool uses_z,
                         std::size_t degree_bound, std::size_t trials, u64 seed) {
  if (trials == 0) throw InvalidArgument("schwartz_zippel needs trials >= 1");
  SzResult r;
  r.seed = seed;
  r.small_field_warning = field.modulus() <= degree_bound;
  SplitMix64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    EvalPoint pt;
    pt.xs.reserve(num_vars);
    for (std::size_t i = 0; i < num_vars; ++i) pt.xs.push_back(rng.element(field));
    if (uses_z) pt.z = rng.element(field);
    ++r.trials_run;
    if (probe(pt)) {
      r.nonzero = true;
      r.witness = std::move(pt);
      return r;
    }
  }
  return r;
}

SzResult schwartz_zippel(const DepthThreeCircuit& c, std::size_t trials, u64 seed) {
  return schwartz_zippel(
      [&](const EvalPoint& p) { return !c.eval(p.xs).is_zero(); }, c.field,
      c.num_vars(), false, c.degree(), trials, seed);
}

SzResult schwartz_zippel(const LinearMatrixSequence& s, std::size_t trials,
                         u64 seed) {
  return schwartz_zippel(
      [&](const EvalPoint& p) { return !eval_sequence(s, p.xs, p.z).is_zero(); },
      s.field, s.num_vars(), s.uses_z(), s.length(), trials, seed);
}

SzResult schwartz_zippel(const Abp& a, std::size_t trials, u64 seed) {
  return schwartz_zippel(
      [&](const EvalPoint& p) { return !eval_abp(a, p.xs, p.z).is_zero(); },
      a.field, a.num_vars(), a.uses_z(), a.gaps.size(), trials, seed);
}

SzResult schwartz_zippel(const Formula& f, std::size_t trials, u64 seed) {
  const std::size_t depth = std::min<std::size_t>(f.depth(), 62);
  return schwartz_zippel([&](const EvalPoint& p) { return !f.eval(p.xs).is_zero(); },
                         f.field(), f.num_vars(), false, std::size_t{1} << depth,
                         trials, seed);
}

// ------------------------------------------------------ robustness search

std::vector<LinearFunction> normalized_linear_functions(const PrimeField& field,
                                                        std::size_t n) {
  const u64 p = field.modulus();
  // Coefficient slots in normalization order: x_1..x_n, then the constant.
  std::vector<u64> digits(n + 1, 0);
  std::vector<LinearFunction> out;
  while (true) {
    // Increment the little-endian counter; slot 0 is least significant.
    std::size_t pos = 0;
    while (pos <= n && ++digits[pos] == p) digits[pos++] = 0;
    if (pos > n) break;
    auto lead = std::find_if(digits.begin(), digits.end(),
                             [](u64 d) { return d != 0; });
    if (*lead != 1) continue;
    LinearFunction l(field);
    for (std::size_t i = 0; i < n; ++i) {
      l.set_coefficient(static_cast<VarIndex>(i + 1), FieldElement{digits[i]});
    }
    l.set_constant(FieldElement{digits[n]});
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<std::pair<LinearFunction, LinearFunction>> robustness_search(
    const SparsePoly& f, std::size_t budget) {
  const std::size_t n = f.max_var().value_or(0);
  for (const auto& [m, c] : f.terms()) {
    if (m.exponent(kHomogenizingVar)) {
      throw InvalidArgument("robustness_search: polynomial uses z");
    }
  }
  // (p^(n+1) - 1) / (p - 1) normalized functions; refuse before enumerating.
  const u64 p = f.field().modulus();
  long double count = 0;
  long double pw = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    count += pw;
    pw *= static_cast<long double>(p);
  }
  const long double pairs = count * (count + 1) / 2;
  if (pairs > static_cast<long double>(budget)) {
    throw BudgetExceeded("robustness_search: about " +
                         std::to_string(static_cast<unsigned long long>(pairs)) +
                         " pairs exceed the budget of " + std::to_string(budget));
  }
  std::vector<LinearFunction> ls = normalized_linear_functions(f.field(), n);
  std::vector<std::pair<LinearFunction, LinearFunction>> out;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = i; j < ls.size(); ++j) {
      auto r = reduce_mod_two_linears(f, ls[i], ls[j]);
      if (r && r->degree() <= 1) out.emplace_back(ls[i], ls[j]);
    }
  }
  return out;
}

}  // namespace pit
