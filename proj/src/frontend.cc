// Copyright 2026 The reluproof Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reluproof/frontend.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace reluproof {

FrontendError::FrontendError(Kind kind, const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? message + " at line " + std::to_string(line) + ", column " +
                                        std::to_string(column)
                                  : message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

using nlohmann::json;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FrontendError(FrontendError::Kind::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void LineColumn(std::string_view text, size_t offset, int* line, int* column) {
  *line = 1;
  *column = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++*line;
      *column = 1;
    } else {
      ++*column;
    }
  }
}

[[noreturn]] void SchemaError(const std::string& what) {
  throw FrontendError(FrontendError::Kind::kSchema, what);
}

Rational JsonNumber(const json& value, const std::string& where) {
  try {
    if (value.is_string()) return Rational::Parse(value.get<std::string>());
    if (value.is_number_integer()) {
      if (value.is_number_unsigned()) return Rational::Parse(std::to_string(value.get<uint64_t>()));
      return Rational(static_cast<long>(value.get<int64_t>()));
    }
    if (value.is_number_float()) {
      // Shortest round-trip text of the double, then exact decimal parse.
      char buf[64];
      const auto result = std::to_chars(buf, buf + sizeof(buf), value.get<double>());
      return Rational::Parse(std::string_view(buf, result.ptr - buf));
    }
  } catch (const std::invalid_argument& e) {
    SchemaError(where + ": " + e.what());
  }
  SchemaError(where + ": expected a number");
}

Layer ParseLayer(const json& j, size_t index) {
  const std::string where = "layer " + std::to_string(index);
  if (!j.is_object()) SchemaError(where + " is not an object");
  if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].empty())
    SchemaError(where + ": missing or empty \"weights\"");
  if (!j.contains("bias") || !j["bias"].is_array())
    SchemaError(where + ": missing \"bias\"");
  const json& rows = j["weights"];
  const size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (cols == 0) SchemaError(where + ": weight rows must be non-empty arrays");
  Layer layer;
  layer.weights.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != cols)
      SchemaError(where + ": weight row " + std::to_string(r) + " has the wrong length");
    for (size_t c = 0; c < cols; ++c)
      layer.weights(r, c) =
          JsonNumber(rows[r][c], where + " weight [" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  const json& bias = j["bias"];
  layer.bias.resize(static_cast<Eigen::Index>(bias.size()));
  for (size_t r = 0; r < bias.size(); ++r)
    layer.bias(r) = JsonNumber(bias[r], where + " bias [" + std::to_string(r) + "]");
  const std::string activation = j.value("activation", std::string("identity"));
  if (activation == "relu") {
    layer.activation = Activation::kRelu;
  } else if (activation == "identity") {
    layer.activation = Activation::kIdentity;
  } else {
    SchemaError(where + ": unknown activation \"" + activation + "\"");
  }
  return layer;
}

// ---------------------------------------------------------------------------
// VNN-LIB subset.

struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> items;
  int line = 0;
  int column = 0;

  bool is_list() const { return atom.empty(); }
  bool is(std::string_view head) const {
    return is_list() && !items.empty() && !items[0].is_list() && items[0].atom == head;
  }
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  std::vector<SExpr> ReadAll() {
    std::vector<SExpr> out;
    SkipSpace();
    while (pos_ < text_.size()) {
      out.push_back(Read());
      SkipSpace();
    }
    return out;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) {
    int line, column;
    LineColumn(text_, pos_, &line, &column);
    throw FrontendError(FrontendError::Kind::kParse, what, line, column);
  }

  void SkipSpace() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr Read() {
    SExpr e;
    LineColumn(text_, pos_, &e.line, &e.column);
    if (text_[pos_] == ')') Fail("unexpected ')'");
    if (text_[pos_] == '(') {
      ++pos_;
      SkipSpace();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        e.items.push_back(Read());
        SkipSpace();
      }
      if (pos_ >= text_.size()) Fail("unterminated list");
      ++pos_;
      return e;
    }
    const size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

[[noreturn]] void FailAt(FrontendError::Kind kind, const SExpr& e, const std::string& what) {
  throw FrontendError(kind, what, e.line, e.column);
}

// Linear form sum coeff * var + constant. Keys: 'X' or 'Y' tagged indices.
struct LinearForm {
  std::map<std::pair<char, int>, Rational> coeffs;
  Rational constant;

  void Scale(const Rational& k) {
    for (auto& [key, c] : coeffs) c *= k;
    constant *= k;
  }
  void Add(const LinearForm& o, const Rational& k) {
    for (const auto& [key, c] : o.coeffs) coeffs[key] += c * k;
    constant += o.constant * k;
  }
  bool is_constant() const {
    for (const auto& [key, c] : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }
};

class PropertyBuilder {
 public:
  PropertySpec Build(const std::vector<SExpr>& commands) {
    if (commands.empty())
      throw FrontendError(FrontendError::Kind::kSchema, "property file contains no commands");
    std::vector<const SExpr*> asserts;
    for (const SExpr& cmd : commands) {
      if (cmd.is("declare-const")) {
        Declare(cmd);
      } else if (cmd.is("assert")) {
        if (cmd.items.size() != 2) FailAt(FrontendError::Kind::kParse, cmd, "assert takes one term");
        asserts.push_back(&cmd.items[1]);
      } else if (cmd.is("set-logic") || cmd.is("check-sat") || cmd.is("exit")) {
        continue;
      } else {
        FailAt(FrontendError::Kind::kUnsupported, cmd,
               "unsupported command" + (cmd.is_list() && !cmd.items.empty() && !cmd.items[0].is_list()
                                            ? " '" + cmd.items[0].atom + "'"
                                            : std::string()));
      }
    }
    if (asserts.empty())
      throw FrontendError(FrontendError::Kind::kSchema, "property file contains no assertions");
    for (const SExpr* a : asserts) Assert(*a);

    PropertySpec spec;
    spec.num_outputs = num_y_;
    spec.input_lower.resize(num_x_);
    spec.input_upper.resize(num_x_);
    for (int i = 0; i < num_x_; ++i) {
      if (!lower_[i] || !upper_[i])
        throw FrontendError(FrontendError::Kind::kSchema,
                            "input X_" + std::to_string(i) + " needs both a lower and an upper bound");
      spec.input_lower[i] = *lower_[i];
      spec.input_upper[i] = *upper_[i];
    }
    if (constraints_.empty())
      throw FrontendError(FrontendError::Kind::kSchema, "property has no output constraint");
    spec.output_constraints = std::move(constraints_);
    return spec;
  }

 private:
  void Declare(const SExpr& cmd) {
    if (cmd.items.size() != 3 || cmd.items[1].is_list() || cmd.items[2].is_list())
      FailAt(FrontendError::Kind::kParse, cmd, "malformed declare-const");
    if (cmd.items[2].atom != "Real")
      FailAt(FrontendError::Kind::kUnsupported, cmd, "only Real constants are supported");
    const auto key = VarKey(cmd.items[1].atom);
    if (!key) FailAt(FrontendError::Kind::kUnsupported, cmd, "constant names must be X_i or Y_i");
    if (declared_.count(*key)) FailAt(FrontendError::Kind::kScope, cmd, "duplicate declaration");
    declared_.insert(*key);
    if (key->first == 'X') {
      num_x_ = std::max(num_x_, key->second + 1);
      lower_.resize(num_x_);
      upper_.resize(num_x_);
    } else {
      num_y_ = std::max(num_y_, key->second + 1);
    }
  }

  static std::optional<std::pair<char, int>> VarKey(const std::string& name) {
    if (name.size() < 3 || (name[0] != 'X' && name[0] != 'Y') || name[1] != '_') return std::nullopt;
    int index = 0;
    const auto res = std::from_chars(name.data() + 2, name.data() + name.size(), index);
    if (res.ec != std::errc() || res.ptr != name.data() + name.size() || index < 0)
      return std::nullopt;
    return std::make_pair(name[0], index);
  }

  LinearForm Term(const SExpr& e) {
    LinearForm form;
    if (!e.is_list()) {
      if (const auto key = VarKey(e.atom)) {
        if (!declared_.count(*key))
          FailAt(FrontendError::Kind::kScope, e, "undeclared constant '" + e.atom + "'");
        form.coeffs[*key] = Rational(1);
        return form;
      }
      try {
        form.constant = Rational::Parse(e.atom);
      } catch (const std::invalid_argument&) {
        FailAt(FrontendError::Kind::kScope, e, "unknown symbol '" + e.atom + "'");
      }
      return form;
    }
    if (e.items.empty() || e.items[0].is_list())
      FailAt(FrontendError::Kind::kParse, e, "expected an operator");
    const std::string& op = e.items[0].atom;
    const size_t n = e.items.size() - 1;
    if (op == "+" && n >= 1) {
      for (size_t i = 1; i <= n; ++i) form.Add(Term(e.items[i]), 1);
    } else if (op == "-" && n == 1) {
      form.Add(Term(e.items[1]), -1);
    } else if (op == "-" && n >= 2) {
      form = Term(e.items[1]);
      for (size_t i = 2; i <= n; ++i) form.Add(Term(e.items[i]), -1);
    } else if (op == "*" && n >= 1) {
      form.constant = Rational(1);
      for (size_t i = 1; i <= n; ++i) {
        LinearForm factor = Term(e.items[i]);
        if (factor.is_constant()) {
          form.Scale(factor.constant);
        } else if (form.is_constant()) {
          factor.Scale(form.constant);
          form = std::move(factor);
        } else {
          FailAt(FrontendError::Kind::kUnsupported, e, "non-linear product");
        }
      }
    } else if (op == "/" && n == 2) {
      form = Term(e.items[1]);
      const LinearForm den = Term(e.items[2]);
      if (!den.is_constant() || den.constant.is_zero())
        FailAt(FrontendError::Kind::kUnsupported, e, "division by a non-constant or zero");
      form.Scale(Rational(1) / den.constant);
    } else {
      FailAt(FrontendError::Kind::kUnsupported, e, "unsupported term '" + op + "'");
    }
    return form;
  }

  void Assert(const SExpr& e) {
    if (e.is("and")) {
      for (size_t i = 1; i < e.items.size(); ++i) Assert(e.items[i]);
      return;
    }
    if (e.is("or"))
      FailAt(FrontendError::Kind::kUnsupported, e,
             "disjunction 'or' is not supported; split the property into separate files");
    if (!e.is("<=") && !e.is(">="))
      FailAt(FrontendError::Kind::kUnsupported, e,
             "unsupported assertion" +
                 (e.is_list() && !e.items.empty() && !e.items[0].is_list() ? " '" + e.items[0].atom + "'"
                                                                           : std::string()));
    if (e.items.size() != 3) FailAt(FrontendError::Kind::kParse, e, "comparison takes two terms");
    // lhs - rhs (relation) 0
    LinearForm form = Term(e.items[1]);
    form.Add(Term(e.items[2]), -1);
    Relation rel = e.is("<=") ? Relation::kLessEqual : Relation::kGreaterEqual;

    bool has_x = false, has_y = false;
    for (const auto& [key, c] : form.coeffs) {
      if (c.is_zero()) continue;
      (key.first == 'X' ? has_x : has_y) = true;
    }
    if (has_x && has_y)
      FailAt(FrontendError::Kind::kUnsupported, e, "constraints mixing inputs and outputs");
    if (!has_x && !has_y) FailAt(FrontendError::Kind::kUnsupported, e, "constant assertion");

    if (has_x) {
      int var = -1;
      Rational coeff;
      for (const auto& [key, c] : form.coeffs) {
        if (c.is_zero()) continue;
        if (var >= 0) FailAt(FrontendError::Kind::kUnsupported, e, "input constraints must be simple bounds");
        var = key.second;
        coeff = c;
      }
      // coeff * x + constant (rel) 0  =>  x (rel') -constant / coeff
      const Rational value = -form.constant / coeff;
      if (coeff.sign() < 0) rel = rel == Relation::kLessEqual ? Relation::kGreaterEqual : Relation::kLessEqual;
      if (rel == Relation::kLessEqual) {
        upper_[var] = upper_[var] ? min(*upper_[var], value) : value;
      } else {
        lower_[var] = lower_[var] ? max(*lower_[var], value) : value;
      }
      return;
    }
    OutputConstraint c;
    c.coeffs.assign(num_y_, Rational(0));
    for (const auto& [key, coeff] : form.coeffs) c.coeffs[key.second] = coeff;
    c.relation = rel;
    c.rhs = -form.constant;
    constraints_.push_back(std::move(c));
  }

  std::set<std::pair<char, int>> declared_;
  int num_x_ = 0;
  int num_y_ = 0;
  std::vector<std::optional<Rational>> lower_, upper_;
  std::vector<OutputConstraint> constraints_;
};

}  // namespace

Network ParseNetworkText(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line, column;
    LineColumn(text, e.byte > 0 ? e.byte - 1 : 0, &line, &column);
    std::string message = e.what();
    if (const size_t p = message.find("parse error"); p != std::string::npos) message = message.substr(p);
    throw FrontendError(FrontendError::Kind::kParse, "malformed network JSON: " + message, line, column);
  }
  if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array())
    SchemaError("network JSON must be an object with a \"layers\" array");
  Network net;
  for (size_t i = 0; i < doc["layers"].size(); ++i) net.layers.push_back(ParseLayer(doc["layers"][i], i));
  try {
    net.Validate();
  } catch (const std::invalid_argument& e) {
    SchemaError(e.what());
  }
  return net;
}

Network ParseNetwork(const std::string& path) { return ParseNetworkText(ReadFile(path)); }

PropertySpec ParsePropertyText(std::string_view text) {
  return PropertyBuilder().Build(SExprReader(text).ReadAll());
}

PropertySpec ParseProperty(const std::string& path) { return ParsePropertyText(ReadFile(path)); }

CompiledQuery Compile(const Network& net, const PropertySpec& prop) {
  try {
    net.Validate();
  } catch (const std::invalid_argument& e) {
    throw FrontendError(FrontendError::Kind::kCompile, e.what());
  }
  if (static_cast<int>(prop.input_lower.size()) != net.input_dim())
    throw FrontendError(FrontendError::Kind::kCompile,
                        "property declares " + std::to_string(prop.input_lower.size()) +
                            " inputs but the network has " + std::to_string(net.input_dim()));
  if (prop.num_outputs > net.output_dim())
    throw FrontendError(FrontendError::Kind::kCompile,
                        "property declares " + std::to_string(prop.num_outputs) +
                            " outputs but the network has " + std::to_string(net.output_dim()));

  CompiledQuery out;
  TableauQuery& q = out.query;
  q.input_dim = net.input_dim();
  q.output_dim = net.output_dim();

  // Count columns and rows first.
  int num_vars = q.input_dim + 1;
  int num_rows = 0;
  for (const Layer& layer : net.layers) {
    const int m = static_cast<int>(layer.weights.rows());
    num_vars += layer.activation == Activation::kRelu ? 3 * m : m;
    num_rows += layer.activation == Activation::kRelu ? 2 * m : m;
  }
  num_vars += static_cast<int>(prop.output_constraints.size());
  num_rows += static_cast<int>(prop.output_constraints.size());

  q.num_vars = num_vars;
  q.rows = RationalMatrix::Zero(num_rows, num_vars);
  q.lower.assign(num_vars, std::nullopt);
  q.upper.assign(num_vars, std::nullopt);
  for (int i = 0; i < q.input_dim; ++i) {
    q.lower[i] = prop.input_lower[i];
    q.upper[i] = prop.input_upper[i];
  }
  q.one_var = q.input_dim;
  q.lower[q.one_var] = Rational(1);
  q.upper[q.one_var] = Rational(1);

  std::vector<VarIndex> prev(q.input_dim);
  for (int i = 0; i < q.input_dim; ++i) prev[i] = i;
  VarIndex next_var = q.input_dim + 1;
  int row = 0;
  for (const Layer& layer : net.layers) {
    const int m = static_cast<int>(layer.weights.rows());
    std::vector<VarIndex> outputs(m);
    for (int i = 0; i < m; ++i) {
      const VarIndex b = next_var++;
      for (size_t j = 0; j < prev.size(); ++j) q.rows(row, prev[j]) = layer.weights(i, j);
      q.rows(row, q.one_var) = layer.bias(i);
      q.rows(row, b) = Rational(-1);
      ++row;
      if (layer.activation == Activation::kRelu) {
        const ReluTriple r{b, next_var, next_var + 1};
        next_var += 2;
        q.rows(row, r.f) = Rational(1);
        q.rows(row, r.b) = Rational(-1);
        q.rows(row, r.aux) = Rational(-1);
        ++row;
        q.lower[r.f] = Rational(0);
        q.lower[r.aux] = Rational(0);
        q.relus.push_back(r);
        outputs[i] = r.f;
      } else {
        outputs[i] = b;
      }
    }
    prev = std::move(outputs);
  }
  q.output_vars = prev;

  for (const OutputConstraint& c : prop.output_constraints) {
    const VarIndex s = next_var++;
    for (size_t i = 0; i < c.coeffs.size(); ++i)
      if (!c.coeffs[i].is_zero()) q.rows(row, q.output_vars[i]) = c.coeffs[i];
    q.rows(row, q.one_var) = -c.rhs;
    q.rows(row, s) = Rational(-1);
    ++row;
    if (c.relation == Relation::kLessEqual) {
      q.upper[s] = Rational(0);
    } else {
      q.lower[s] = Rational(0);
    }
  }

  out.abstraction.relu_of_var.assign(q.relus.size() + 1, -1);
  out.abstraction.var_of_relu.resize(q.relus.size());
  for (size_t k = 0; k < q.relus.size(); ++k) {
    out.abstraction.relu_of_var[k + 1] = static_cast<int>(k);
    out.abstraction.var_of_relu[k] = static_cast<int>(k + 1);
  }
  q.Validate();
  return out;
}

}  // namespace reluproof
