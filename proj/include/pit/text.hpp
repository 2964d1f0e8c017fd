#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pit/circuit.hpp"
#include "pit/term_circuit.hpp"
#include "pit/transforms.hpp"

namespace pit {

// Text forms. Coefficients print in the symmetric range (-p/2, p/2]; x0 is
// printed as z.

std::string to_text(const PrimeField& F, FieldElement c);
std::string to_text(const LinearFunction& l);
std::string to_text(const SparsePoly& f);

LinearFunction parse_linear_function(std::string_view text, PrimeField field);
SparsePoly parse_poly(std::string_view text, PrimeField field);

/// Everything one input file may contain. At most one circuit block.
struct Document {
  PrimeField field;
  std::optional<Formula> formula;
  std::optional<DepthThreeCircuit> sps;
  std::optional<LinearMatrixSequence> seq;
  std::optional<Abp> abp;
  std::optional<SparsePoly> poly;
  std::optional<std::vector<LinearFunction>> l_factors;
  std::optional<AlgebraBasis> algebra;
  std::vector<std::vector<AlgebraElement>> terms;

  bool has_circuit() const {
    return formula || sps || seq || abp || poly;
  }
  /// The algebra plus its term lines; nullopt when no algebra was given.
  std::optional<AlgebraTermCircuit> term_circuit() const;
};

/// Parses the circuit/algebra grammar. The optional leading `field <p>`
/// overrides default_field. Throws ParseError with 1-based line/column.
Document parse_document(std::string_view text,
                        PrimeField default_field = PrimeField());

std::string serialize(const DepthThreeCircuit& c);
std::string serialize(const LinearMatrixSequence& s);
std::string serialize(const Abp& a);
std::string serialize(const Formula& f);
std::string serialize(const LoweredU2& l);
/// `algebra`, `identity` and `mult` lines.
std::string serialize(const AlgebraBasis& b);
/// Algebra lines followed by one `term` line per factor.
std::string serialize(const AlgebraTermCircuit& c);

/// Bare prefix form of a formula, e.g. (+ x1 (* 2*x2 x3)).
std::string to_text(const Formula& f);

/// "field <p>\n" header.
std::string field_line(const PrimeField& F);

}  // namespace pit
