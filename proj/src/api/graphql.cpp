#include "graphcomm/api/graphql.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphcomm/api/query_service.hpp"

namespace graphcomm::api {

namespace {

// ---- syntax -----------------------------------------------------------------

struct Token {
  enum Kind { kPunct, kName, kInt, kFloat, kString, kEnd } kind = kEnd;
  std::string text;
  std::size_t offset = 0;
};

[[noreturn]] void syntax_error(std::string_view source, std::size_t offset,
                               const std::string& what) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
    if (source[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw ValidationError({"query"}, "syntax error at " + std::to_string(line) + ":" +
                                       std::to_string(column) + ": " + what);
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ignored();
    Token t;
    t.offset = pos_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (c == '.') {
      if (src_.substr(pos_, 3) != "...") syntax_error(src_, pos_, "expected '...'");
      pos_ += 3;
      t.kind = Token::kPunct;
      t.text = "...";
      return t;
    }
    if (std::string_view("!$():=@[]{}|&").find(c) != std::string_view::npos) {
      ++pos_;
      t.kind = Token::kPunct;
      t.text = std::string(1, c);
      return t;
    }
    if (c == '_' || std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (src_[pos_] == '_' || std::isalnum(static_cast<unsigned char>(src_[pos_])))) {
        ++pos_;
      }
      t.kind = Token::kName;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return number(t);
    if (c == '"') return string(t);
    syntax_error(src_, pos_, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip_ignored() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r') ++pos_;
      } else {
        return;
      }
    }
  }

  Token number(Token& t) {
    const std::size_t start = pos_;
    bool is_float = false;
    if (src_[pos_] == '-') ++pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ == from) syntax_error(src_, pos_, "expected digit");
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      is_float = true;
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      is_float = true;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      digits();
    }
    t.kind = is_float ? Token::kFloat : Token::kInt;
    t.text = std::string(src_.substr(start, pos_ - start));
    return t;
  }

  Token string(Token& t) {
    if (src_.substr(pos_, 3) == "\"\"\"") return block_string(t);
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') syntax_error(src_, pos_, "unterminated string");
      const char c = src_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= src_.size()) syntax_error(src_, pos_, "unterminated string");
      const char e = src_[pos_++];
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case '/': out.push_back('/'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'u': {
          // Delegate \uXXXX (and surrogate pairs) to the JSON decoder.
          std::string escaped = "\"\\u";
          escaped += src_.substr(pos_, 4);
          pos_ += 4;
          if (src_.substr(pos_, 2) == "\\u") {
            escaped += src_.substr(pos_, 6);
            pos_ += 6;
          }
          escaped += '"';
          try {
            out += Json::parse(escaped).get<std::string>();
          } catch (const Json::exception&) {
            syntax_error(src_, pos_, "bad unicode escape");
          }
          break;
        }
        default:
          syntax_error(src_, pos_ - 1, std::string("bad escape '\\") + e + "'");
      }
    }
    t.kind = Token::kString;
    t.text = std::move(out);
    return t;
  }

  Token block_string(Token& t) {
    pos_ += 3;
    const std::size_t end = src_.find("\"\"\"", pos_);
    if (end == std::string_view::npos) syntax_error(src_, pos_, "unterminated block string");
    t.kind = Token::kString;
    t.text = std::string(src_.substr(pos_, end - pos_));
    pos_ = end + 3;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

struct Value {
  enum Kind { kLiteral, kVariable, kList, kObject } kind = kLiteral;
  Json literal;
  std::string variable;
  std::vector<std::pair<std::string, Value>> members;
};

using Arguments = std::vector<std::pair<std::string, Value>>;

struct Directive {
  std::string name;
  Arguments args;
};

struct Selection {
  enum Kind { kField, kInlineFragment, kSpread } kind = kField;
  std::string alias;
  std::string name;  // field name, or fragment name for spreads
  Arguments args;
  std::vector<Directive> directives;
  std::string type_condition;
  std::vector<Selection> children;
  bool has_children = false;
};

struct VariableDefinition {
  std::string name;
  bool required = false;
  std::optional<Value> default_value;
};

struct Operation {
  std::string kind = "query";
  std::string name;
  std::vector<VariableDefinition> variables;
  std::vector<Selection> selections;
};

struct Fragment {
  std::string type_condition;
  std::vector<Selection> selections;
};

struct Document {
  std::vector<Operation> operations;
  std::map<std::string, Fragment, std::less<>> fragments;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), lexer_(src) { advance(); }

  Document parse() {
    Document doc;
    if (tok_.kind == Token::kEnd) syntax_error(src_, tok_.offset, "empty document");
    while (tok_.kind != Token::kEnd) {
      if (is_punct("{")) {
        Operation op;
        op.selections = selection_set();
        doc.operations.push_back(std::move(op));
      } else if (tok_.kind == Token::kName && tok_.text == "fragment") {
        advance();
        std::string name = expect_name();
        if (name == "on") syntax_error(src_, tok_.offset, "fragment cannot be named 'on'");
        expect_keyword("on");
        Fragment f;
        f.type_condition = expect_name();
        skip_directives();
        f.selections = selection_set();
        if (!doc.fragments.emplace(name, std::move(f)).second) {
          throw ValidationError({"query"}, "duplicate fragment '" + name + "'");
        }
      } else if (tok_.kind == Token::kName &&
                 (tok_.text == "query" || tok_.text == "mutation" || tok_.text == "subscription")) {
        Operation op;
        op.kind = tok_.text;
        advance();
        if (tok_.kind == Token::kName) op.name = expect_name();
        if (is_punct("(")) op.variables = variable_definitions();
        skip_directives();
        op.selections = selection_set();
        doc.operations.push_back(std::move(op));
      } else {
        syntax_error(src_, tok_.offset, "expected an operation or fragment");
      }
    }
    return doc;
  }

 private:
  void advance() { tok_ = lexer_.next(); }
  bool is_punct(std::string_view p) const { return tok_.kind == Token::kPunct && tok_.text == p; }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) syntax_error(src_, tok_.offset, "expected '" + std::string(p) + "'");
    advance();
  }

  std::string expect_name() {
    if (tok_.kind != Token::kName) syntax_error(src_, tok_.offset, "expected a name");
    std::string name = std::move(tok_.text);
    advance();
    return name;
  }

  void expect_keyword(std::string_view word) {
    if (tok_.kind != Token::kName || tok_.text != word) {
      syntax_error(src_, tok_.offset, "expected '" + std::string(word) + "'");
    }
    advance();
  }

  std::vector<VariableDefinition> variable_definitions() {
    expect_punct("(");
    std::vector<VariableDefinition> defs;
    while (!is_punct(")")) {
      expect_punct("$");
      VariableDefinition def;
      def.name = expect_name();
      expect_punct(":");
      def.required = type_reference();
      if (is_punct("=")) {
        advance();
        def.default_value = value(true);
      }
      skip_directives();
      defs.push_back(std::move(def));
    }
    advance();
    return defs;
  }

  // Returns whether the outermost type is non-null.
  bool type_reference() {
    if (is_punct("[")) {
      advance();
      type_reference();
      expect_punct("]");
    } else {
      expect_name();
    }
    if (is_punct("!")) {
      advance();
      return true;
    }
    return false;
  }

  Value value(bool constant) {
    Value v;
    switch (tok_.kind) {
      case Token::kPunct:
        if (is_punct("$")) {
          if (constant) syntax_error(src_, tok_.offset, "variable not allowed here");
          advance();
          v.kind = Value::kVariable;
          v.variable = expect_name();
          return v;
        }
        if (is_punct("[")) {
          advance();
          v.kind = Value::kList;
          while (!is_punct("]")) {
            if (tok_.kind == Token::kEnd) syntax_error(src_, tok_.offset, "unterminated list");
            v.members.emplace_back("", value(constant));
          }
          advance();
          return v;
        }
        if (is_punct("{")) {
          advance();
          v.kind = Value::kObject;
          while (!is_punct("}")) {
            std::string key = expect_name();
            expect_punct(":");
            v.members.emplace_back(std::move(key), value(constant));
          }
          advance();
          return v;
        }
        break;
      case Token::kInt:
        v.literal = Json::parse(tok_.text);
        advance();
        return v;
      case Token::kFloat:
        v.literal = std::stod(tok_.text);
        advance();
        return v;
      case Token::kString:
        v.literal = tok_.text;
        advance();
        return v;
      case Token::kName:
        if (tok_.text == "true" || tok_.text == "false") {
          v.literal = tok_.text == "true";
        } else if (tok_.text == "null") {
          v.literal = nullptr;
        } else {
          v.literal = tok_.text;  // enum value
        }
        advance();
        return v;
      case Token::kEnd:
        break;
    }
    syntax_error(src_, tok_.offset, "expected a value");
  }

  Arguments arguments() {
    Arguments args;
    if (!is_punct("(")) return args;
    advance();
    while (!is_punct(")")) {
      std::string name = expect_name();
      expect_punct(":");
      args.emplace_back(std::move(name), value(false));
    }
    advance();
    return args;
  }

  std::vector<Directive> directives() {
    std::vector<Directive> out;
    while (is_punct("@")) {
      advance();
      Directive d;
      d.name = expect_name();
      d.args = arguments();
      out.push_back(std::move(d));
    }
    return out;
  }

  void skip_directives() { directives(); }

  std::vector<Selection> selection_set() {
    expect_punct("{");
    std::vector<Selection> out;
    while (!is_punct("}")) {
      if (tok_.kind == Token::kEnd) syntax_error(src_, tok_.offset, "unterminated selection set");
      out.push_back(selection());
    }
    advance();
    if (out.empty()) syntax_error(src_, tok_.offset, "empty selection set");
    return out;
  }

  Selection selection() {
    Selection s;
    if (is_punct("...")) {
      advance();
      if (tok_.kind == Token::kName && tok_.text != "on") {
        s.kind = Selection::kSpread;
        s.name = expect_name();
        s.directives = directives();
        return s;
      }
      s.kind = Selection::kInlineFragment;
      if (tok_.kind == Token::kName) {
        advance();  // "on"
        s.type_condition = expect_name();
      }
      s.directives = directives();
      s.children = selection_set();
      s.has_children = true;
      return s;
    }
    s.name = expect_name();
    if (is_punct(":")) {
      advance();
      s.alias = std::move(s.name);
      s.name = expect_name();
    }
    s.args = arguments();
    s.directives = directives();
    if (is_punct("{")) {
      s.children = selection_set();
      s.has_children = true;
    }
    return s;
  }

  std::string_view src_;
  Lexer lexer_;
  Token tok_;
};

// ---- execution --------------------------------------------------------------

struct FieldType {
  std::string type;
  bool list = false;
};

const std::map<std::string, std::map<std::string, FieldType>, std::less<>>& schema() {
  static const std::map<std::string, std::map<std::string, FieldType>, std::less<>> types = {
      {"SuggestedNode",
       {{"_id", {"String"}}, {"graph_name", {"String"}}, {"the_type", {"String"}},
        {"appearances", {"Int"}}}},
      {"SlimNode", {{"_id", {"String"}}, {"graph_name", {"String"}}, {"community", {"String"}}}},
      {"SlimEdge", {{"_from", {"String"}}, {"_to", {"String"}}, {"label", {"String"}}}},
      {"Community", {{"number", {"String"}}}},
      {"SlimGraph",
       {{"startNode", {"SlimNode"}},
        {"vertices", {"SlimNode", true}},
        {"edges", {"SlimEdge", true}},
        {"communities", {"Community", true}}}},
  };
  return types;
}

bool is_scalar(std::string_view type) { return type == "String" || type == "Int"; }

bool is_suggestion_field(std::string_view name) {
  if (!name.starts_with("nodesID")) return false;
  for (char c : name.substr(7)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

class Executor {
 public:
  Executor(const QueryService& service, const Document& doc, const Operation& op,
           const Json& provided)
      : service_(service), doc_(doc) {
    for (const auto& def : op.variables) {
      const auto it = provided.find(def.name);
      if (it != provided.end() && !it->is_null()) {
        vars_[def.name] = *it;
      } else if (def.default_value) {
        vars_[def.name] = resolve(*def.default_value);
      } else if (def.required) {
        throw ValidationError({def.name}, "variable $" + def.name + " is required");
      } else {
        vars_[def.name] = nullptr;
      }
    }
  }

  Json run(const std::vector<Selection>& selections, bool& truncated) {
    Json data = Json::object();
    for (const Selection* field : collect("Query", selections)) {
      const std::string key = field->alias.empty() ? field->name : field->alias;
      if (field->name == "__typename") {
        data[key] = "Query";
        continue;
      }
      if (is_suggestion_field(field->name)) {
        const auto name = string_arg(*field, "name", true);
        require_children(*field, "SuggestedNode");
        Json out = Json::array();
        for (const auto& node : service_.nodes_id(*name)) {
          out.push_back(project(node, "SuggestedNode", field->children));
        }
        data[key] = std::move(out);
      } else if (field->name == "nodeGraph") {
        const auto node_id = string_arg(*field, "node_id", true);
        const auto lo = string_arg(*field, "minDepth", false);
        const auto hi = string_arg(*field, "maxDepth", false);
        require_children(*field, "SlimGraph");
        NodeGraph result = service_.node_graph(*node_id, lo, hi);
        truncated = truncated || result.truncated;
        data[key] = project(result.graph, "SlimGraph", field->children);
      } else {
        throw ValidationError({field->name},
                              "cannot query field '" + field->name + "' on type 'Query'");
      }
    }
    return data;
  }

 private:
  Json resolve(const Value& v) const {
    switch (v.kind) {
      case Value::kLiteral:
        return v.literal;
      case Value::kVariable: {
        const auto it = vars_.find(v.variable);
        if (it == vars_.end()) {
          throw ValidationError({v.variable}, "variable $" + v.variable + " is not defined");
        }
        return it->second;
      }
      case Value::kList: {
        Json out = Json::array();
        for (const auto& [_, m] : v.members) out.push_back(resolve(m));
        return out;
      }
      case Value::kObject: {
        Json out = Json::object();
        for (const auto& [k, m] : v.members) out[k] = resolve(m);
        return out;
      }
    }
    return nullptr;
  }

  // String-typed argument; integers are accepted and rendered in decimal.
  std::optional<std::string> string_arg(const Selection& field, std::string_view name,
                                        bool required) const {
    for (const auto& [arg, value] : field.args) {
      if (arg != name) continue;
      const Json v = resolve(value);
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return v.dump();
      if (!v.is_null()) {
        throw ValidationError({std::string(name)}, std::string(name) + " must be a string");
      }
    }
    if (required) {
      throw ValidationError({std::string(name)},
                            "argument '" + std::string(name) + "' of '" + field.name +
                                "' is required");
    }
    return std::nullopt;
  }

  static void require_children(const Selection& field, std::string_view type) {
    if (!field.has_children) {
      throw ValidationError({field.name}, "field '" + field.name + "' of type '" +
                                              std::string(type) + "' needs a selection set");
    }
  }

  bool included(const Selection& s) const {
    for (const auto& d : s.directives) {
      if (d.name != "include" && d.name != "skip") {
        throw ValidationError({d.name}, "unknown directive @" + d.name);
      }
      std::optional<bool> flag;
      for (const auto& [arg, value] : d.args) {
        const Json v = resolve(value);
        if (arg == "if" && v.is_boolean()) flag = v.get<bool>();
      }
      if (!flag) throw ValidationError({d.name}, "@" + d.name + " needs a boolean 'if'");
      if ((d.name == "include") != *flag) return false;
    }
    return true;
  }

  std::vector<const Selection*> collect(std::string_view type,
                                        const std::vector<Selection>& selections,
                                        int depth = 0) const {
    if (depth > 32) throw ValidationError({"query"}, "fragment nesting too deep or cyclic");
    std::vector<const Selection*> out;
    for (const auto& s : selections) {
      if (!included(s)) continue;
      switch (s.kind) {
        case Selection::kField:
          out.push_back(&s);
          break;
        case Selection::kInlineFragment:
          if (s.type_condition.empty() || s.type_condition == type) {
            for (const auto* f : collect(type, s.children, depth + 1)) out.push_back(f);
          }
          break;
        case Selection::kSpread: {
          const auto it = doc_.fragments.find(s.name);
          if (it == doc_.fragments.end()) {
            throw ValidationError({s.name}, "unknown fragment '" + s.name + "'");
          }
          if (it->second.type_condition == type) {
            for (const auto* f : collect(type, it->second.selections, depth + 1)) out.push_back(f);
          }
          break;
        }
      }
    }
    return out;
  }

  Json project(const Json& value, const std::string& type,
               const std::vector<Selection>& selections) const {
    const auto& fields = schema().at(type);
    Json out = Json::object();
    for (const Selection* field : collect(type, selections)) {
      const std::string key = field->alias.empty() ? field->name : field->alias;
      if (field->name == "__typename") {
        out[key] = type;
        continue;
      }
      const auto it = fields.find(field->name);
      if (it == fields.end()) {
        throw ValidationError({field->name}, "cannot query field '" + field->name +
                                                 "' on type '" + type + "'");
      }
      const FieldType& ft = it->second;
      const auto found = value.find(field->name);
      const Json& raw = found == value.end() ? Json() : *found;
      if (is_scalar(ft.type)) {
        if (field->has_children) {
          throw ValidationError({field->name}, "scalar field '" + field->name +
                                                   "' cannot have a selection set");
        }
        out[key] = raw;
        continue;
      }
      require_children(*field, ft.type);
      Json projected;
      if (raw.is_null()) {
        projected = nullptr;
      } else if (ft.list) {
        projected = Json::array();
        for (const auto& item : raw) projected.push_back(project(item, ft.type, field->children));
      } else {
        projected = project(raw, ft.type, field->children);
      }
      if (out.contains(key) && out[key].is_object() && projected.is_object()) {
        out[key].update(projected);
      } else if (out.contains(key) && out[key].is_array() && projected.is_array() &&
                 out[key].size() == projected.size()) {
        for (std::size_t i = 0; i < projected.size(); ++i) out[key][i].update(projected[i]);
      } else {
        out[key] = std::move(projected);
      }
    }
    return out;
  }

  const QueryService& service_;
  const Document& doc_;
  std::map<std::string, Json, std::less<>> vars_;
};

}  // namespace

Json execute_graphql(const QueryService& service, std::string_view document,
                     const Json& variables, bool& truncated, std::string_view operation_name) {
  const Document doc = Parser(document).parse();
  const Operation* op = nullptr;
  if (operation_name.empty()) {
    if (doc.operations.size() != 1) {
      throw ValidationError({"operationName"},
                            "document must contain exactly one operation or name one");
    }
    op = &doc.operations.front();
  } else {
    for (const auto& candidate : doc.operations) {
      if (candidate.name == operation_name) op = &candidate;
    }
    if (op == nullptr) {
      throw ValidationError({"operationName"},
                            "no operation named '" + std::string(operation_name) + "'");
    }
  }
  if (op->kind != "query") {
    throw ValidationError({"query"}, "only query operations are supported");
  }
  Executor executor(service, doc, *op, variables);
  return executor.run(op->selections, truncated);
}

}  // namespace graphcomm::api
