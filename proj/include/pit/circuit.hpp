#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pit/linalg.hpp"
#include "pit/poly.hpp"

namespace pit {

inline constexpr std::size_t kDefaultExpansionCap = 1'000'000;

/// Limits for symbolic expansion oracles.
struct ExpandOptions {
  std::size_t cap = kDefaultExpansionCap;
};

// ------------------------------------------------------------------ Formula

/// Fan-in-2 arithmetic formula over +, * with leaves c or c*x_i.
class Formula {
 public:
  enum class Kind { Add, Mul, Leaf };

  static Formula constant(PrimeField field, FieldElement c);
  static Formula leaf(PrimeField field, FieldElement c, VarIndex var);
  static Formula add(Formula a, Formula b);
  static Formula mul(Formula a, Formula b);

  Kind kind() const { return node_->kind; }
  const PrimeField& field() const { return node_->field; }
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }
  FieldElement coefficient() const { return node_->coeff; }
  /// nullopt for a constant leaf.
  std::optional<VarIndex> variable() const { return node_->var; }

  /// Leaves have depth 0; every internal node adds one.
  std::size_t depth() const;
  std::size_t num_vars() const;
  FieldElement eval(std::span<const FieldElement> xs) const;
  SparsePoly expand(const ExpandOptions& opts = {}) const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    PrimeField field;
    std::shared_ptr<const Formula> left;
    std::shared_ptr<const Formula> right;
    FieldElement coeff;
    std::optional<VarIndex> var;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ------------------------------------------------------- DepthThreeCircuit

/// Sum of products of linear functions.
struct DepthThreeCircuit {
  PrimeField field;
  std::vector<std::vector<LinearFunction>> products;

  std::size_t top_fanin() const { return products.size(); }
  /// Longest product length.
  std::size_t degree() const;
  /// Largest x index used (z excluded).
  std::size_t num_vars() const;
  FieldElement eval(std::span<const FieldElement> xs) const;

  friend bool operator==(const DepthThreeCircuit&,
                         const DepthThreeCircuit&) = default;
};

/// Pads every product with the constant 1 up to the common degree.
DepthThreeCircuit normalize_degree(const DepthThreeCircuit& c);

/// Throws ExpansionTooLarge when an intermediate exceeds the cap.
SparsePoly expand_depth3(const DepthThreeCircuit& c,
                         const ExpandOptions& opts = {});

// ------------------------------------------------ linear matrix sequences

/// k x k matrix of linear functions.
class LinearMatrix {
 public:
  LinearMatrix(PrimeField field, std::size_t k);
  static LinearMatrix identity(PrimeField field, std::size_t k);
  static LinearMatrix constant(PrimeField field, const Matrix& m);

  std::size_t size() const { return k_; }
  const PrimeField& field() const { return field_; }
  const LinearFunction& at(std::size_t r, std::size_t c) const {
    return entries_[r * k_ + c];
  }
  LinearFunction& at(std::size_t r, std::size_t c) {
    return entries_[r * k_ + c];
  }

  bool is_upper_triangular() const;
  bool is_diagonal() const;
  std::optional<VarIndex> max_var() const;
  Matrix eval(std::span<const FieldElement> xs,
              FieldElement z = FieldElement{1}) const;

  friend bool operator==(const LinearMatrix&, const LinearMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t k_;
  std::vector<LinearFunction> entries_;
};

/// Ordered product left_mask * M_1 * ... * M_d * right_mask.
struct LinearMatrixSequence {
  PrimeField field;
  std::size_t k = 2;
  std::vector<LinearMatrix> matrices;
  std::optional<Matrix> left_mask;
  std::optional<Matrix> right_mask;

  std::size_t length() const { return matrices.size(); }
  std::size_t num_vars() const;
  bool uses_z() const;
  bool is_upper_triangular() const;
  /// Throws InvalidArgument when shapes disagree.
  void check_shapes() const;

  friend bool operator==(const LinearMatrixSequence&,
                         const LinearMatrixSequence&) = default;
};

/// k x k grid of polynomials, row-major.
class PolyMatrix {
 public:
  PolyMatrix(PrimeField field, std::size_t k);
  static PolyMatrix identity(PrimeField field, std::size_t k);

  std::size_t size() const { return k_; }
  const SparsePoly& at(std::size_t r, std::size_t c) const {
    return entries_[r * k_ + c];
  }
  SparsePoly& at(std::size_t r, std::size_t c) { return entries_[r * k_ + c]; }

  bool is_zero() const;
  int degree() const;
  std::size_t total_terms() const;

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t k_;
  std::vector<SparsePoly> entries_;
};

PolyMatrix expand_sequence(const LinearMatrixSequence& s,
                           const ExpandOptions& opts = {});
Matrix eval_sequence(const LinearMatrixSequence& s,
                     std::span<const FieldElement> xs,
                     FieldElement z = FieldElement{1});

/// Entry l-1 is the max total degree of the suffix product M_l * ... * M_d
/// (masks ignored); -1 when that product is the zero matrix.
std::vector<int> partial_product_degrees(const LinearMatrixSequence& s,
                                         const ExpandOptions& opts = {});

// --------------------------------------------------------------------- ABP

struct AbpEdge {
  std::size_t from;
  std::size_t to;
  LinearFunction label;
  friend bool operator==(const AbpEdge&, const AbpEdge&) = default;
};

/// Layered DAG; gaps[g] holds the edges from level g to level g+1.
struct Abp {
  PrimeField field;
  std::vector<std::size_t> levels;
  std::vector<std::vector<AbpEdge>> gaps;

  std::size_t width() const;
  std::size_t num_vars() const;
  bool uses_z() const;
  /// Single source and sink, edges in range, gap count = levels - 1.
  void check_structure() const;
  /// No two edges of a gap cross under the stored vertex order.
  bool is_planar() const;

  friend bool operator==(const Abp&, const Abp&) = default;
};

/// Shape of one gap between consecutive levels of a width-2 ABP.
enum class LayerKind {
  Parallel,    // edges 0->0, 1->1 only
  Triangular,  // z on 0->0 and 1->1, one single-term label on 0->1
  Source,      // 1 -> 2 fan-out
  Sink,        // 2 -> 1 fan-in
  Other,
};
LayerKind classify_layer(const Abp& a, std::size_t gap);
/// True iff every gap is Parallel, Triangular, Source or Sink.
bool is_pattern_planar(const Abp& a);

/// Path-sum value computed level by level.
FieldElement eval_abp(const Abp& a, std::span<const FieldElement> xs,
                      FieldElement z = FieldElement{1});
SparsePoly expand_abp(const Abp& a, const ExpandOptions& opts = {});

}  // namespace pit
