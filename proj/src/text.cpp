#include "pit/text.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace pit {

// ------------------------------------------------------------- emitting

namespace {

std::string var_name(VarIndex v) {
  return v == kHomogenizingVar ? "z" : "x" + std::to_string(v);
}

// Joins signed terms as "a + b - c"; each entry is (coefficient, body) where
// an empty body denotes a constant.
class TermWriter {
 public:
  explicit TermWriter(const PrimeField& F) : F_(F) {}

  void add(FieldElement c, const std::string& body) {
    std::int64_t v = F_.centered(c);
    if (v == 0) return;
    bool neg = v < 0;
    u64 mag = neg ? static_cast<u64>(-v) : static_cast<u64>(v);
    if (first_) {
      if (neg) os_ << '-';
    } else {
      os_ << (neg ? " - " : " + ");
    }
    first_ = false;
    if (body.empty()) {
      os_ << mag;
    } else if (mag == 1) {
      os_ << body;
    } else {
      os_ << mag << '*' << body;
    }
  }

  std::string str() const { return first_ ? "0" : os_.str(); }

 private:
  const PrimeField& F_;
  std::ostringstream os_;
  bool first_ = true;
};

}  // namespace

std::string to_text(const PrimeField& F, FieldElement c) {
  return std::to_string(F.centered(c));
}

std::string to_text(const LinearFunction& l) {
  TermWriter w(l.field());
  w.add(l.constant_term(), "");
  for (const auto& [v, c] : l.coefficients()) w.add(c, var_name(v));
  return w.str();
}

std::string to_text(const SparsePoly& f) {
  TermWriter w(f.field());
  for (const auto& [m, c] : f.terms()) {
    std::string body;
    for (const auto& [v, e] : m.factors()) {
      if (!body.empty()) body += '*';
      body += var_name(v);
      if (e > 1) body += '^' + std::to_string(e);
    }
    w.add(c, body);
  }
  return w.str();
}

std::string field_line(const PrimeField& F) {
  return "field " + std::to_string(F.modulus()) + "\n";
}

namespace {

std::string matrix_text(const PrimeField& F, const Matrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s += "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ", ";
      s += to_text(F, m(r, c));
    }
  }
  return s + "]";
}

std::string coords_text(const PrimeField& F, const AlgebraElement& a) {
  std::string s;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (i) s += ' ';
    s += to_text(F, a.coords[i]);
  }
  return s;
}

}  // namespace

std::string serialize(const DepthThreeCircuit& c) {
  std::string s = field_line(c.field) + "sps {\n";
  for (std::size_t i = 0; i < c.products.size(); ++i) {
    s += "  ";
    for (const auto& l : c.products[i]) s += "(" + to_text(l) + ")";
    s += i + 1 < c.products.size() ? ";\n" : "\n";
  }
  return s + "}\n";
}

std::string serialize(const LinearMatrixSequence& seq) {
  std::string s = field_line(seq.field) + "seq k=" + std::to_string(seq.k) + " {\n";
  if (seq.left_mask) s += "  left " + matrix_text(seq.field, *seq.left_mask) + "\n";
  for (const auto& m : seq.matrices) {
    s += "  [";
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r) s += "; ";
      for (std::size_t c = 0; c < m.size(); ++c) {
        if (c) s += ", ";
        s += to_text(m.at(r, c));
      }
    }
    s += "]\n";
  }
  if (seq.right_mask) {
    s += "  right " + matrix_text(seq.field, *seq.right_mask) + "\n";
  }
  return s + "}\n";
}

std::string serialize(const Abp& a) {
  std::string s = field_line(a.field) + "abp {\n";
  for (auto n : a.levels) s += "  level " + std::to_string(n) + ";\n";
  for (std::size_t g = 0; g < a.gaps.size(); ++g) {
    for (const auto& e : a.gaps[g]) {
      s += "  edge " + std::to_string(g + 1) + ": " + std::to_string(e.from) + " " +
           std::to_string(e.to) + " " + to_text(e.label) + ";\n";
    }
  }
  return s + "}\n";
}

std::string to_text(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Add:
      return "(+ " + to_text(f.left()) + " " + to_text(f.right()) + ")";
    case Formula::Kind::Mul:
      return "(* " + to_text(f.left()) + " " + to_text(f.right()) + ")";
    case Formula::Kind::Leaf:
      break;
  }
  const PrimeField& F = f.field();
  if (!f.variable()) return to_text(F, f.coefficient());
  std::string v = var_name(*f.variable());
  std::int64_t c = F.centered(f.coefficient());
  if (c == 1) return v;
  if (c == -1) return "-" + v;
  return std::to_string(c) + "*" + v;
}

std::string serialize(const Formula& f) {
  return field_line(f.field()) + "formula " + to_text(f) + "\n";
}

std::string serialize(const LoweredU2& l) {
  std::string s = serialize(l.seq) + "L:";
  for (const auto& f : l.l_factors) s += " (" + to_text(f) + ")";
  return s + "\n";
}

std::string serialize(const AlgebraBasis& b) {
  const PrimeField& F = b.field();
  std::string s = "algebra k=" + std::to_string(b.dim()) + "\n";
  s += "identity " + coords_text(F, b.identity()) + "\n";
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      s += "mult " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " : " +
           coords_text(F, b.product(i, j)) + "\n";
    }
  }
  return s;
}

std::string serialize(const AlgebraTermCircuit& c) {
  std::string s = field_line(c.basis.field()) + serialize(c.basis);
  for (const auto& t : c.terms) {
    s += "term";
    for (std::size_t j = 0; j < t.size(); ++j) {
      s += j ? " | " : " ";
      s += coords_text(c.basis.field(), t[j]);
    }
    s += "\n";
  }
  return s;
}

std::optional<AlgebraTermCircuit> Document::term_circuit() const {
  if (!algebra) return std::nullopt;
  return AlgebraTermCircuit{*algebra, terms};
}

// -------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, PrimeField field) : text_(text), field_(field) {}

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, msg);
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char ch) {
    if (peek() == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) {
      fail(std::string("expected '") + ch + "'" +
           (pos_ < text_.size() ? std::string(", found '") + text_[pos_] + "'"
                                : std::string(", found end of input")));
    }
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  u64 number() {
    skip_ws();
    std::size_t start = pos_;
    u64 v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      u64 digit = static_cast<u64>(text_[pos_] - '0');
      if (v > (~u64{0} - digit) / 10) fail_at(start, "number too large");
      v = v * 10 + digit;
      ++pos_;
    }
    if (start == pos_) fail("expected number");
    return v;
  }

  FieldElement signed_element() {
    bool neg = accept('-');
    if (!neg) accept('+');
    FieldElement c = field_.from_u64(number());
    return neg ? field_.neg(c) : c;
  }

  bool peek_var() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char ch = text_[pos_];
    if (ch == 'z') {
      return pos_ + 1 >= text_.size() ||
             !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1]));
    }
    return ch == 'x' && pos_ + 1 < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
  }

  VarIndex variable() {
    skip_ws();
    std::size_t start = pos_;
    if (!peek_var()) fail("expected variable x<i> or z");
    if (text_[pos_] == 'z') {
      ++pos_;
      return kHomogenizingVar;
    }
    ++pos_;
    u64 v = number();
    if (v > 0xFFFFFFFFULL) fail_at(start, "variable index too large");
    return static_cast<VarIndex>(v);
  }

  // [c '*'] var | c | var
  void linear_term(LinearFunction& l, bool neg) {
    FieldElement c = field_.one();
    std::optional<VarIndex> v;
    if (peek_digit()) {
      c = field_.from_u64(number());
      if (accept('*')) v = variable();
    } else {
      v = variable();
    }
    if (neg) c = field_.neg(c);
    if (v) {
      l.set_coefficient(*v, field_.add(l.coefficient(*v), c));
    } else {
      l.set_constant(field_.add(l.constant_term(), c));
    }
  }

  LinearFunction linear_function() {
    LinearFunction l(field_);
    bool neg = accept('-');
    if (!neg) accept('+');
    linear_term(l, neg);
    while (true) {
      if (accept('+')) {
        linear_term(l, false);
      } else if (accept('-')) {
        linear_term(l, true);
      } else {
        break;
      }
    }
    return l;
  }

  // [c '*'] factor ('*' factor)* | c, factor = var ['^' e]
  void poly_term(SparsePoly& f, bool neg) {
    FieldElement c = field_.one();
    std::vector<Monomial::Factor> factors;
    bool need_factor = true;
    if (peek_digit()) {
      c = field_.from_u64(number());
      need_factor = accept('*');
    }
    while (need_factor) {
      VarIndex v = variable();
      std::uint32_t e = 1;
      if (accept('^')) {
        u64 ee = number();
        if (ee > 0xFFFFFFFFULL) fail("exponent too large");
        e = static_cast<std::uint32_t>(ee);
      }
      factors.emplace_back(v, e);
      need_factor = accept('*');
    }
    f.add_term(Monomial(std::move(factors)), neg ? field_.neg(c) : c);
  }

  SparsePoly polynomial() {
    SparsePoly f(field_);
    bool neg = accept('-');
    if (!neg) accept('+');
    poly_term(f, neg);
    while (true) {
      if (accept('+')) {
        poly_term(f, false);
      } else if (accept('-')) {
        poly_term(f, true);
      } else {
        break;
      }
    }
    return f;
  }

  DepthThreeCircuit sps() {
    DepthThreeCircuit c{field_, {}};
    expect('{');
    if (accept('}')) fail("sps block needs at least one product");
    while (true) {
      std::vector<LinearFunction> prod;
      do {
        expect('(');
        prod.push_back(linear_function());
        expect(')');
      } while (peek() == '(');
      c.products.push_back(std::move(prod));
      if (accept(';') || accept(',')) continue;
      expect('}');
      break;
    }
    return c;
  }

  Matrix constant_matrix() {
    std::vector<std::vector<FieldElement>> rows(1);
    expect('[');
    while (true) {
      rows.back().push_back(signed_element());
      if (accept(',')) continue;
      if (accept(';')) {
        rows.emplace_back();
        continue;
      }
      expect(']');
      break;
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols()) fail("ragged matrix");
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  LinearMatrix linear_matrix(std::size_t k) {
    std::size_t start = pos_;
    std::vector<std::vector<LinearFunction>> rows(1);
    expect('[');
    while (true) {
      rows.back().push_back(linear_function());
      if (accept(',')) continue;
      if (accept(';')) {
        rows.emplace_back();
        continue;
      }
      expect(']');
      break;
    }
    if (rows.size() != k) fail_at(start, "matrix does not have k rows");
    LinearMatrix m(field_, k);
    for (std::size_t r = 0; r < k; ++r) {
      if (rows[r].size() != k) fail_at(start, "matrix row does not have k entries");
      for (std::size_t c = 0; c < k; ++c) m.at(r, c) = std::move(rows[r][c]);
    }
    return m;
  }

  LinearMatrixSequence seq() {
    LinearMatrixSequence s;
    s.field = field_;
    std::size_t kpos = pos_;
    if (identifier() != "k") fail_at(kpos, "expected k=<side>");
    expect('=');
    s.k = static_cast<std::size_t>(number());
    if (s.k == 0 || s.k > 64) fail_at(kpos, "side length out of range");
    expect('{');
    while (!accept('}')) {
      if (peek() == '[') {
        if (s.right_mask) fail("matrix after right mask");
        s.matrices.push_back(linear_matrix(s.k));
        continue;
      }
      std::size_t at = pos_;
      std::string kw = identifier();
      if (kw != "left" && kw != "right") fail_at(at, "unexpected '" + kw + "' in seq");
      Matrix m = constant_matrix();
      if (m.rows() != s.k || m.cols() != s.k) fail_at(at, "mask must be k x k");
      if (kw == "left") {
        if (s.left_mask || !s.matrices.empty()) fail_at(at, "misplaced left mask");
        s.left_mask = m;
      } else {
        if (s.right_mask) fail_at(at, "duplicate right mask");
        s.right_mask = m;
      }
    }
    if (s.matrices.empty()) fail("seq block needs at least one matrix");
    return s;
  }

  Abp abp() {
    Abp a;
    a.field = field_;
    expect('{');
    std::vector<std::pair<std::size_t, AbpEdge>> edges;
    std::size_t start = pos_;
    while (!accept('}')) {
      std::size_t at = pos_;
      std::string kw = identifier();
      if (kw == "level") {
        a.levels.push_back(static_cast<std::size_t>(number()));
      } else if (kw == "edge" || kw == "edges") {
        std::size_t gap = static_cast<std::size_t>(number());
        expect(':');
        std::size_t u = static_cast<std::size_t>(number());
        std::size_t v = static_cast<std::size_t>(number());
        if (gap == 0) fail_at(at, "gap numbers start at 1");
        edges.push_back({gap - 1, AbpEdge{u, v, linear_function()}});
      } else {
        fail_at(at, "unexpected '" + kw + "' in abp");
      }
      if (peek() != '}') expect(';');
    }
    if (a.levels.size() < 2) fail_at(start, "abp needs at least two levels");
    a.gaps.resize(a.levels.size() - 1);
    for (auto& [g, e] : edges) {
      if (g >= a.gaps.size()) fail_at(start, "edge gap beyond last level");
      a.gaps[g].push_back(std::move(e));
    }
    try {
      a.check_structure();
    } catch (const InvalidArgument& e) {
      fail_at(start, e.what());
    }
    return a;
  }

  Formula formula() {
    if (accept('(')) {
      char op = peek();
      if (op != '+' && op != '*') fail("expected '+' or '*' after '('");
      ++pos_;
      Formula a = formula();
      Formula b = formula();
      expect(')');
      return op == '+' ? Formula::add(std::move(a), std::move(b))
                       : Formula::mul(std::move(a), std::move(b));
    }
    bool neg = accept('-');
    FieldElement c = field_.one();
    std::optional<VarIndex> v;
    if (peek_digit()) {
      c = field_.from_u64(number());
      if (accept('*')) v = variable();
    } else {
      std::size_t at = pos_;
      v = variable();
      if (*v == kHomogenizingVar) fail_at(at, "formulas use x1, x2, ...");
    }
    if (neg) c = field_.neg(c);
    if (v) {
      if (*v == kHomogenizingVar) fail("formulas use x1, x2, ...");
      return Formula::leaf(field_, c, *v);
    }
    return Formula::constant(field_, c);
  }

  AlgebraElement coords(std::size_t k) {
    AlgebraElement a{std::vector<FieldElement>(k)};
    for (std::size_t i = 0; i < k; ++i) a.coords[i] = signed_element();
    return a;
  }

  Document document() {
    Document doc;
    doc.field = field_;
    std::optional<std::size_t> alg_k;
    std::size_t alg_pos = 0;
    std::optional<AlgebraElement> identity;
    std::vector<std::vector<std::optional<AlgebraElement>>> table;
    std::vector<std::pair<std::size_t, std::vector<AlgebraElement>>> raw_terms;
    bool seen_item = false;

    auto one_circuit = [&](std::size_t at) {
      if (doc.has_circuit()) fail_at(at, "only one circuit block per file");
    };

    while (!at_end()) {
      std::size_t at = pos_;
      std::string kw = identifier();
      if (kw == "field") {
        if (seen_item) fail_at(at, "field must come first");
        u64 p = number();
        if (!is_prime(p)) fail_at(at, "field modulus " + std::to_string(p) + " is not prime");
        field_ = PrimeField(p);
        doc.field = field_;
      } else if (kw == "sps") {
        one_circuit(at);
        doc.sps = sps();
      } else if (kw == "seq") {
        one_circuit(at);
        doc.seq = seq();
      } else if (kw == "abp") {
        one_circuit(at);
        doc.abp = abp();
      } else if (kw == "formula") {
        one_circuit(at);
        doc.formula = formula();
      } else if (kw == "poly") {
        one_circuit(at);
        doc.poly = polynomial();
      } else if (kw == "L") {
        expect(':');
        std::vector<LinearFunction> ls;
        while (accept('(')) {
          ls.push_back(linear_function());
          expect(')');
        }
        doc.l_factors = std::move(ls);
      } else if (kw == "algebra") {
        if (alg_k) fail_at(at, "duplicate algebra header");
        std::size_t kpos = pos_;
        if (identifier() != "k") fail_at(kpos, "expected k=<dim>");
        expect('=');
        u64 k = number();
        if (k == 0 || k > 4096) fail_at(kpos, "algebra dimension out of range");
        alg_k = static_cast<std::size_t>(k);
        alg_pos = at;
        table.assign(*alg_k, std::vector<std::optional<AlgebraElement>>(*alg_k));
      } else if (kw == "identity") {
        if (!alg_k) fail_at(at, "identity before algebra header");
        identity = coords(*alg_k);
      } else if (kw == "mult") {
        if (!alg_k) fail_at(at, "mult before algebra header");
        u64 i = number();
        u64 j = number();
        if (i == 0 || j == 0 || i > *alg_k || j > *alg_k) {
          fail_at(at, "mult index out of range");
        }
        expect(':');
        auto& slot = table[i - 1][j - 1];
        if (slot) fail_at(at, "duplicate mult line");
        slot = coords(*alg_k);
      } else if (kw == "term") {
        if (!alg_k) fail_at(at, "term before algebra header");
        std::vector<AlgebraElement> t;
        do {
          t.push_back(coords(*alg_k));
        } while (accept('|'));
        raw_terms.emplace_back(at, std::move(t));
      } else {
        fail_at(at, "unknown item '" + kw + "'");
      }
      seen_item = true;
    }

    if (alg_k) {
      if (!identity) fail_at(alg_pos, "algebra has no identity line");
      std::vector<std::vector<AlgebraElement>> st(*alg_k);
      for (std::size_t i = 0; i < *alg_k; ++i) {
        for (std::size_t j = 0; j < *alg_k; ++j) {
          if (!table[i][j]) {
            fail_at(alg_pos, "missing mult " + std::to_string(i + 1) + " " +
                                 std::to_string(j + 1));
          }
          st[i].push_back(*table[i][j]);
        }
      }
      doc.algebra.emplace(field_, std::move(st), *identity);
      const std::size_t width = raw_terms.empty() ? 0 : raw_terms.front().second.size();
      for (auto& [tpos, t] : raw_terms) {
        if (t.size() != width) {
          fail_at(tpos, "terms have different numbers of coefficients");
        }
        doc.terms.push_back(std::move(t));
      }
    }
    return doc;
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  PrimeField field_;
};

}  // namespace

LinearFunction parse_linear_function(std::string_view text, PrimeField field) {
  Parser p(text, field);
  LinearFunction l = p.linear_function();
  if (!p.at_end()) p.fail("trailing input after linear function");
  return l;
}

SparsePoly parse_poly(std::string_view text, PrimeField field) {
  Parser p(text, field);
  SparsePoly f = p.polynomial();
  if (!p.at_end()) p.fail("trailing input after polynomial");
  return f;
}

Document parse_document(std::string_view text, PrimeField default_field) {
  return Parser(text, default_field).document();
}

}  // namespace pit
