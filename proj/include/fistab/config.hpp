#ifndef FISTAB_CONFIG_HPP
#define FISTAB_CONFIG_HPP

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fistab/error.hpp"
#include "fistab/fiset.hpp"
#include "fistab/permgroup.hpp"
#include "fistab/relation.hpp"

// Job configuration: a small brace-structured text format.
//
//   # comment
//   caps   { group_order = 40320, matrix_size = 3000 }
//   params { n_max = 10, lambda_cutoff = 4, window = 3, workers = 1 }
//   fiset "pairs" {
//     orbit { m = 2, H = ["(1 2)"], label = "pair" }
//     identify { degree = 3, a = pair:K=[1,2]:coset="()", b = pair:K=[1,3]:coset="()" }
//   }
//   relation "kneser" {
//     source = "pairs", target = "pairs", symmetric = true
//     generator { degree = 4, x = pair:K=[1,2]:coset="()", y = pair:K=[3,4]:coset="()" }
//   }
//
// Commas between entries are optional. Unknown keys and blocks are errors.

namespace fistab {

struct ElementLiteral {
  std::string label;
  std::vector<int> support;
  std::string coset = "()";
  friend bool operator==(const ElementLiteral&, const ElementLiteral&) = default;
};

struct OrbitDecl {
  int m = 0;
  std::vector<std::string> generators;
  std::string label;
  friend bool operator==(const OrbitDecl&, const OrbitDecl&) = default;
};

struct IdentifyDecl {
  int degree = 0;
  ElementLiteral a, b;
  friend bool operator==(const IdentifyDecl&, const IdentifyDecl&) = default;
};

struct FISetDecl {
  std::string name;
  std::vector<OrbitDecl> orbits;
  std::vector<IdentifyDecl> identifications;
  friend bool operator==(const FISetDecl&, const FISetDecl&) = default;
};

struct GeneratorDecl {
  int degree = 0;
  ElementLiteral x, y;
  friend bool operator==(const GeneratorDecl&, const GeneratorDecl&) = default;
};

struct RelationDecl {
  std::string name;
  std::string source, target;
  bool symmetric = false;
  std::vector<GeneratorDecl> generators;
  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

struct JobParams {
  int n_max = 10;
  int lambda_cutoff = 4;
  int window = 3;
  int workers = 1;
  friend bool operator==(const JobParams&, const JobParams&) = default;
};

struct JobConfig {
  Limits caps;
  JobParams params;
  std::vector<FISetDecl> fisets;
  std::vector<RelationDecl> relations;
  std::map<std::string, int> lines;  // declaration line per name, for diagnostics

  const FISetDecl* find_fiset(std::string_view name) const {
    for (const auto& f : fisets)
      if (f.name == name) return &f;
    return nullptr;
  }
  const RelationDecl* find_relation(std::string_view name) const {
    for (const auto& r : relations)
      if (r.name == name) return &r;
    return nullptr;
  }
  std::string where(const std::string& name) const {
    auto it = lines.find(name);
    return it == lines.end() ? std::string() : "line " + std::to_string(it->second) + ": ";
  }

  friend bool operator==(const JobConfig& a, const JobConfig& b) {
    return a.caps == b.caps && a.params == b.params && a.fisets == b.fisets && a.relations == b.relations;
  }
};

namespace detail {

struct Token {
  enum Kind { Ident, Int, String, Punct, End } kind = End;
  std::string text;
  int line = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      if (pos_ >= src_.size()) {
        out.push_back({Token::End, "", line_});
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '-')) ++pos_;
        out.push_back({Token::Ident, std::string(src_.substr(start, pos_ - start)), line_});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        std::size_t start = pos_++;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ - start == 1 && c == '-') throw ParseError("line " + std::to_string(line_) + ": stray '-'");
        out.push_back({Token::Int, std::string(src_.substr(start, pos_ - start)), line_});
      } else if (c == '"') {
        std::string s;
        ++pos_;
        while (pos_ < src_.size() && src_[pos_] != '"') {
          if (src_[pos_] == '\n') throw ParseError("line " + std::to_string(line_) + ": unterminated string");
          s += src_[pos_++];
        }
        if (pos_ >= src_.size()) throw ParseError("line " + std::to_string(line_) + ": unterminated string");
        ++pos_;
        out.push_back({Token::String, s, line_});
      } else if (std::string_view("{}[]=,:").find(c) != std::string_view::npos) {
        out.push_back({Token::Punct, std::string(1, c), line_});
        ++pos_;
      } else {
        throw ParseError("line " + std::to_string(line_) + ": unexpected character '" + std::string(1, c) + "'");
      }
    }
  }

 private:
  void skip() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  JobConfig run() {
    JobConfig cfg;
    std::set<std::string> seen_blocks;
    while (peek().kind != Token::End) {
      const Token head = expect_ident();
      if (head.text == "caps" || head.text == "params") {
        if (!seen_blocks.insert(head.text).second) fail(head, "duplicate '" + head.text + "' block");
        if (head.text == "caps")
          parse_caps(cfg.caps);
        else
          parse_params(cfg.params);
      } else if (head.text == "fiset") {
        const Token name = expect(Token::String, "fiset name");
        declare(cfg, name);
        cfg.fisets.push_back(parse_fiset(name.text));
      } else if (head.text == "relation") {
        const Token name = expect(Token::String, "relation name");
        declare(cfg, name);
        cfg.relations.push_back(parse_relation(name.text));
      } else {
        fail(head, "unknown top-level block '" + head.text + "'");
      }
    }
    return cfg;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  static bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    return true;
  }

  [[noreturn]] static void fail(const Token& at, const std::string& msg) {
    throw ParseError("line " + std::to_string(at.line) + ": " + msg);
  }

  Token expect(Token::Kind kind, const std::string& what) {
    Token t = next();
    if (t.kind != kind) fail(t, "expected " + what + ", got '" + t.text + "'");
    return t;
  }
  Token expect_ident() { return expect(Token::Ident, "identifier"); }
  void expect_punct(char c) {
    Token t = next();
    if (t.kind != Token::Punct || t.text[0] != c) fail(t, std::string("expected '") + c + "', got '" + t.text + "'");
  }
  bool accept_punct(char c) {
    if (peek().kind == Token::Punct && peek().text[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static void declare(JobConfig& cfg, const Token& name) {
    if (cfg.lines.contains(name.text)) fail(name, "name '" + name.text + "' declared twice");
    cfg.lines[name.text] = name.line;
  }

  long parse_int() {
    Token t = expect(Token::Int, "integer");
    try {
      return std::stol(t.text);
    } catch (const std::exception&) {
      fail(t, "integer out of range");
    }
  }
  int parse_small_int() {
    const Token& at = peek();
    long v = parse_int();
    if (v < 0 || v > 1'000'000'000) fail(at, "integer out of range");
    return static_cast<int>(v);
  }
  std::size_t parse_positive() {
    const Token& at = peek();
    long v = parse_int();
    if (v <= 0) fail(at, "cap must be positive");
    return static_cast<std::size_t>(v);
  }
  bool parse_bool() {
    Token t = expect_ident();
    if (t.text == "true") return true;
    if (t.text == "false") return false;
    fail(t, "expected true or false");
  }
  std::vector<int> parse_int_list() {
    expect_punct('[');
    std::vector<int> out;
    while (!accept_punct(']')) {
      out.push_back(parse_small_int());
      accept_punct(',');
    }
    return out;
  }
  std::vector<std::string> parse_string_list() {
    expect_punct('[');
    std::vector<std::string> out;
    while (!accept_punct(']')) {
      out.push_back(expect(Token::String, "string").text);
      accept_punct(',');
    }
    return out;
  }
  ElementLiteral parse_element() {
    ElementLiteral e;
    e.label = expect_ident().text;
    expect_punct(':');
    Token k = expect_ident();
    if (k.text != "K") fail(k, "expected K=[...] in element literal");
    expect_punct('=');
    e.support = parse_int_list();
    if (!accept_punct(':')) return e;  // coset defaults to the identity
    Token c = expect_ident();
    if (c.text != "coset") fail(c, "expected coset=\"...\" in element literal");
    expect_punct('=');
    e.coset = expect(Token::String, "coset cycle string").text;
    return e;
  }

  /// key = value entries until '}', dispatching on the key.
  template <typename F>
  void entries(F&& on_key) {
    expect_punct('{');
    std::set<std::string> seen;
    while (!accept_punct('}')) {
      Token key = expect_ident();
      if (peek().kind == Token::Punct && peek().text == "{") {
        on_key(key, true);
      } else {
        if (!seen.insert(key.text).second) fail(key, "duplicate key '" + key.text + "'");
        expect_punct('=');
        on_key(key, false);
      }
      accept_punct(',');
    }
  }

  void parse_caps(Limits& caps) {
    entries([&](const Token& key, bool block) {
      if (block) fail(key, "unexpected block in caps");
      if (key.text == "group_order") caps.group_order = parse_positive();
      else if (key.text == "orbit_size") caps.orbit_size = parse_positive();
      else if (key.text == "fiset_size") caps.fiset_size = parse_positive();
      else if (key.text == "matrix_size") caps.matrix_size = parse_positive();
      else if (key.text == "oracle_size") caps.oracle_size = parse_positive();
      else if (key.text == "class_degree") caps.class_degree = static_cast<int>(parse_positive());
      else if (key.text == "root_combinations") caps.root_combinations = parse_positive();
      else fail(key, "unknown cap '" + key.text + "'");
    });
  }

  void parse_params(JobParams& p) {
    entries([&](const Token& key, bool block) {
      if (block) fail(key, "unexpected block in params");
      if (key.text == "n_max") p.n_max = parse_small_int();
      else if (key.text == "lambda_cutoff") p.lambda_cutoff = parse_small_int();
      else if (key.text == "window") p.window = static_cast<int>(parse_positive());
      else if (key.text == "workers") p.workers = static_cast<int>(parse_positive());
      else fail(key, "unknown parameter '" + key.text + "'");
    });
  }

  FISetDecl parse_fiset(const std::string& name) {
    FISetDecl f{name, {}, {}};
    entries([&](const Token& key, bool block) {
      if (!block) fail(key, "unknown fiset key '" + key.text + "'");
      if (key.text == "orbit") {
        OrbitDecl o;
        bool has_m = false, has_label = false;
        entries([&](const Token& k, bool b) {
          if (b) fail(k, "unexpected block in orbit");
          if (k.text == "m") {
            o.m = parse_small_int();
            has_m = true;
          } else if (k.text == "H") {
            o.generators = parse_string_list();
          } else if (k.text == "label") {
            const Token t = expect(Token::String, "label");
            if (!is_identifier(t.text)) fail(t, "orbit label '" + t.text + "' is not an identifier");
            o.label = t.text;
            has_label = true;
          } else {
            fail(k, "unknown orbit key '" + k.text + "'");
          }
        });
        if (!has_m || !has_label) fail(key, "orbit needs m and label");
        f.orbits.push_back(std::move(o));
      } else if (key.text == "identify") {
        IdentifyDecl id;
        int have = 0;
        entries([&](const Token& k, bool b) {
          if (b) fail(k, "unexpected block in identify");
          if (k.text == "degree") id.degree = parse_small_int();
          else if (k.text == "a") id.a = parse_element();
          else if (k.text == "b") id.b = parse_element();
          else fail(k, "unknown identify key '" + k.text + "'");
          ++have;
        });
        if (have != 3) fail(key, "identify needs degree, a and b");
        f.identifications.push_back(std::move(id));
      } else {
        fail(key, "unknown fiset block '" + key.text + "'");
      }
    });
    return f;
  }

  RelationDecl parse_relation(const std::string& name) {
    RelationDecl r{name, {}, {}, false, {}};
    bool has_source = false, has_target = false;
    entries([&](const Token& key, bool block) {
      if (block) {
        if (key.text != "generator") fail(key, "unknown relation block '" + key.text + "'");
        GeneratorDecl g;
        int have = 0;
        entries([&](const Token& k, bool b) {
          if (b) fail(k, "unexpected block in generator");
          if (k.text == "degree") g.degree = parse_small_int();
          else if (k.text == "x") g.x = parse_element();
          else if (k.text == "y") g.y = parse_element();
          else fail(k, "unknown generator key '" + k.text + "'");
          ++have;
        });
        if (have != 3) fail(key, "generator needs degree, x and y");
        r.generators.push_back(std::move(g));
        return;
      }
      if (key.text == "source") {
        r.source = expect(Token::String, "fiset name").text;
        has_source = true;
      } else if (key.text == "target") {
        r.target = expect(Token::String, "fiset name").text;
        has_target = true;
      } else if (key.text == "symmetric") {
        r.symmetric = parse_bool();
      } else {
        fail(key, "unknown relation key '" + key.text + "'");
      }
    });
    if (!has_source || !has_target) throw ParseError("relation '" + name + "' needs source and target");
    return r;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::string quote(const std::string& s) { return "\"" + s + "\""; }

inline std::string element_text(const ElementLiteral& e) {
  std::string s = e.label + ":K=[";
  for (std::size_t i = 0; i < e.support.size(); ++i) s += (i ? "," : "") + std::to_string(e.support[i]);
  return s + "]:coset=" + quote(e.coset);
}

}  // namespace detail

/// Builds and caches the FI-sets and relations of a config. FI-sets are shared,
/// so a relation with equal source and target names is a self-relation.
class Workspace {
 public:
  explicit Workspace(JobConfig cfg) : cfg_(std::move(cfg)) {}

  const JobConfig& config() const { return cfg_; }

  std::shared_ptr<const FISet> fiset(const std::string& name) {
    if (auto it = fisets_.find(name); it != fisets_.end()) return it->second;
    const FISetDecl* decl = cfg_.find_fiset(name);
    if (!decl) throw InvalidArgument("unknown fiset '" + name + "'");
    try {
      FISetSpec spec;
      for (const auto& o : decl->orbits) {
        std::vector<Permutation> gens;
        for (const auto& c : o.generators) gens.push_back(Permutation::parse_cycles(c, o.m));
        spec.orbits.push_back({o.m, PermutationGroup(o.m, std::move(gens), cfg_.caps.group_order), o.label});
      }
      auto probe = std::make_shared<FISet>(spec, cfg_.caps);
      for (const auto& id : decl->identifications)
        spec.identifications.push_back({id.degree, element(*probe, id.a), element(*probe, id.b)});
      auto built = std::make_shared<const FISet>(std::move(spec), cfg_.caps);
      fisets_.emplace(name, built);
      return built;
    } catch (const Error& e) {
      throw InvalidArgument(cfg_.where(name) + "fiset '" + name + "': " + e.what());
    }
  }

  RelationSpec relation(const std::string& name) {
    const RelationDecl* decl = cfg_.find_relation(name);
    if (!decl) throw InvalidArgument("unknown relation '" + name + "'");
    try {
      RelationSpec R{fiset(decl->source), fiset(decl->target), {}, decl->symmetric};
      for (const auto& g : decl->generators) {
        RelationGenerator gen{g.degree, element(*R.source, g.x), element(*R.target, g.y)};
        R.source->validate(gen.x, gen.degree);
        R.target->validate(gen.y, gen.degree);
        R.generators.push_back(std::move(gen));
      }
      return R;
    } catch (const Error& e) {
      throw InvalidArgument(cfg_.where(name) + "relation '" + name + "': " + e.what());
    }
  }

  static ElementRep element(const FISet& X, const ElementLiteral& lit) {
    const std::size_t orbit = X.orbit_index(lit.label);
    const int m = X.spec().orbits[orbit].m;
    return X.make_element(lit.label, lit.support, Permutation::parse_cycles(lit.coset, m));
  }

  /// Literal for a canonical element.
  static ElementLiteral literal(const FISet& X, const ElementRep& e) {
    return {X.spec().orbits.at(e.orbit).label, e.support, X.coset_representative(e.orbit, e.coset).to_cycles()};
  }

 private:
  JobConfig cfg_;
  std::map<std::string, std::shared_ptr<const FISet>> fisets_;
};

/// Parses and validates a config; every name must resolve and every
/// element literal must be valid at its degree.
inline JobConfig parse_config(std::string_view text) {
  JobConfig cfg = detail::Parser(detail::Lexer(text).run()).run();
  for (const auto& r : cfg.relations)
    for (const auto* ref : {&r.source, &r.target})
      if (!cfg.find_fiset(*ref)) throw ParseError(cfg.where(r.name) + "relation '" + r.name + "' refers to unknown fiset '" + *ref + "'");
  Workspace ws(cfg);
  for (const auto& f : cfg.fisets) ws.fiset(f.name);
  for (const auto& r : cfg.relations) ws.relation(r.name);
  return cfg;
}

inline std::string serialize_config(const JobConfig& cfg) {
  using detail::element_text;
  using detail::quote;
  std::ostringstream os;
  const auto& c = cfg.caps;
  os << "caps { group_order = " << c.group_order << ", orbit_size = " << c.orbit_size << ", fiset_size = " << c.fiset_size
     << ", matrix_size = " << c.matrix_size << ", oracle_size = " << c.oracle_size << ", class_degree = " << c.class_degree
     << ", root_combinations = " << c.root_combinations << " }\n";
  const auto& p = cfg.params;
  os << "params { n_max = " << p.n_max << ", lambda_cutoff = " << p.lambda_cutoff << ", window = " << p.window
     << ", workers = " << p.workers << " }\n";
  for (const auto& f : cfg.fisets) {
    os << "\nfiset " << quote(f.name) << " {\n";
    for (const auto& o : f.orbits) {
      os << "  orbit { m = " << o.m << ", H = [";
      for (std::size_t i = 0; i < o.generators.size(); ++i) os << (i ? ", " : "") << quote(o.generators[i]);
      os << "], label = " << quote(o.label) << " }\n";
    }
    for (const auto& id : f.identifications)
      os << "  identify { degree = " << id.degree << ", a = " << element_text(id.a) << ", b = " << element_text(id.b) << " }\n";
    os << "}\n";
  }
  for (const auto& r : cfg.relations) {
    os << "\nrelation " << quote(r.name) << " {\n  source = " << quote(r.source) << ", target = " << quote(r.target)
       << ", symmetric = " << (r.symmetric ? "true" : "false") << "\n";
    for (const auto& g : r.generators)
      os << "  generator { degree = " << g.degree << ", x = " << element_text(g.x) << ", y = " << element_text(g.y) << " }\n";
    os << "}\n";
  }
  return os.str();
}

}  // namespace fistab

#endif  // FISTAB_CONFIG_HPP
