#include "adaptivemon/rules/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "adaptivemon/error.hpp"

namespace adaptivemon::rules {

std::string_view to_string(Comparator cmp) noexcept {
  switch (cmp) {
    case Comparator::ge:
      return ">=";
    case Comparator::le:
      return "<=";
    case Comparator::eq:
      return "==";
  }
  return "?";
}

std::string_view to_string(Parameter p) noexcept { return p == Parameter::rate ? "rate" : "enabled"; }

namespace {

enum class Tok { ident, string, number, cmp, lbrace, rbrace, lparen, rparen, comma, semi, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end:
      return "end of input";
    case Tok::string:
      return fmt::format("string \"{}\"", t.text);
    default:
      return fmt::format("'{}'", t.text);
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          t.text += advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
        t.kind = Tok::number;
        t.text = lex_number();
      } else if (c == '"') {
        t.kind = Tok::string;
        t.text = lex_string();
      } else if (c == '>' || c == '<' || c == '=') {
        advance();
        if (pos_ >= src_.size() || src_[pos_] != '=') {
          throw ParseError(fmt::format("expected comparator '>=', '<=' or '==' near '{}'", c), t.line, t.column);
        }
        advance();
        t.kind = Tok::cmp;
        t.text = std::string{c, '='};
      } else {
        static const std::map<char, Tok> punct = {{'{', Tok::lbrace}, {'}', Tok::rbrace}, {'(', Tok::lparen},
                                                  {')', Tok::rparen}, {',', Tok::comma},  {';', Tok::semi}};
        auto it = punct.find(c);
        if (it == punct.end()) throw ParseError(fmt::format("unexpected character '{}'", c), t.line, t.column);
        t.kind = it->second;
        t.text = std::string(1, advance());
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string lex_number() {
    std::string s;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += advance();
    };
    if (src_[pos_] == '-' || src_[pos_] == '+') s += advance();
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      s += advance();
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      s += advance();
      if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) s += advance();
      digits();
    }
    return s;
  }

  std::string lex_string() {
    const int line = line_, col = col_;
    advance();
    std::string s;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') throw ParseError("unterminated string", line, col);
      char c = advance();
      if (c == '"') return s;
      if (c == '\\') {
        if (pos_ >= src_.size()) throw ParseError("unterminated string", line, col);
        c = advance();
        if (c != '"' && c != '\\') throw ParseError(fmt::format("unknown escape '\\{}'", c), line_, col_ - 2);
      }
      s += c;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  RuleSet document() {
    RuleSet set;
    std::map<std::string, int, std::less<>> seen;
    while (peek().kind != Tok::end) {
      Rule r = rule();
      if (auto it = seen.find(r.name); it != seen.end()) {
        throw ParseError(fmt::format("duplicate rule name '{}' (first defined on line {}, again on line {})",
                                     r.name, it->second, r.pos.line),
                         r.pos.line, r.pos.column);
      }
      seen.emplace(r.name, r.pos.line);
      set.rules.push_back(std::move(r));
    }
    return set;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw ParseError(fmt::format("expected {}, found {}", expected, describe(t)), t.line, t.column);
  }

  bool at_keyword(std::string_view kw) const { return peek().kind == Tok::ident && peek().text == kw; }

  void keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail(fmt::format("'{}'", kw));
    take();
  }

  Token expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail(std::string(what));
    return take();
  }

  std::string string_lit() { return expect(Tok::string, "string literal").text; }

  std::int64_t integer(std::string_view what) {
    const Token t = expect(Tok::number, what);
    std::int64_t v = 0;
    const char* first = t.text.data() + (t.text.starts_with('+') ? 1 : 0);
    const char* last = t.text.data() + t.text.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last) {
      throw ParseError(fmt::format("expected integer, found '{}'", t.text), t.line, t.column);
    }
    return v;
  }

  double number(std::string_view what) {
    const Token t = expect(Tok::number, what);
    double v = 0;
    const char* first = t.text.data() + (t.text.starts_with('+') ? 1 : 0);
    const char* last = t.text.data() + t.text.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last || !std::isfinite(v)) {
      throw ParseError(fmt::format("expected number, found '{}'", t.text), t.line, t.column);
    }
    return v;
  }

  LogicalState state() {
    const Token& t = peek();
    if (t.kind != Tok::ident) fail("state keyword");
    auto s = parse_logical_state(t.text);
    if (!s) throw ParseError(fmt::format("unknown state keyword '{}'", t.text), t.line, t.column);
    take();
    return *s;
  }

  Comparator comparator() {
    const Token t = expect(Tok::cmp, "comparator '>=', '<=' or '=='");
    if (t.text == ">=") return Comparator::ge;
    if (t.text == "<=") return Comparator::le;
    return Comparator::eq;
  }

  Rule rule() {
    Rule r;
    const Token& start = peek();
    r.pos = {start.line, start.column};
    keyword("rule");
    r.name = expect(Tok::ident, "rule name").text;
    keyword("salience");
    r.salience = integer("salience integer");
    expect(Tok::lbrace, "'{'");
    keyword("when");
    r.conditions.push_back(condition());
    while (at_keyword("and")) {
      take();
      r.conditions.push_back(condition());
    }
    keyword("then");
    r.actions.push_back(action());
    while (peek().kind == Tok::semi) {
      take();
      r.actions.push_back(action());
    }
    expect(Tok::rbrace, "';' or '}'");
    return r;
  }

  Condition condition() {
    if (at_keyword("indicator")) {
      take();
      StateCheck c;
      c.indicator = string_lit();
      if (at_keyword("not")) {
        take();
        c.negated = true;
      }
      keyword("in");
      keyword("state");
      c.state = state();
      return c;
    }
    if (at_keyword("streak")) {
      take();
      StreakCheck c;
      expect(Tok::lparen, "'('");
      c.indicator = string_lit();
      expect(Tok::comma, "','");
      c.state = state();
      expect(Tok::rparen, "')'");
      c.cmp = comparator();
      c.count = integer("integer");
      return c;
    }
    if (at_keyword("param")) {
      take();
      ParamCheck c;
      if (at_keyword("rate")) {
        c.param = Parameter::rate;
      } else if (at_keyword("enabled")) {
        c.param = Parameter::enabled;
      } else {
        fail("parameter name 'rate' or 'enabled'");
      }
      take();
      expect(Tok::lparen, "'('");
      c.indicator = string_lit();
      expect(Tok::rparen, "')'");
      c.cmp = comparator();
      c.value = number("number");
      return c;
    }
    fail("condition ('indicator', 'streak' or 'param')");
  }

  std::vector<std::string> string_list() {
    std::vector<std::string> out{string_lit()};
    while (peek().kind == Tok::comma) {
      take();
      out.push_back(string_lit());
    }
    return out;
  }

  Action action() {
    const Token& t = peek();
    if (at_keyword("change_rate")) {
      take();
      std::string ind = string_lit();
      if (at_keyword("proportional")) {
        take();
        return ChangeRateProportional{std::move(ind)};
      }
      if (at_keyword("to")) {
        take();
        const Token& nt = peek();
        const double secs = number("number of seconds");
        if (!(secs > 0)) throw ParseError("change_rate interval must be > 0", nt.line, nt.column);
        return ChangeRateTo{std::move(ind), secs};
      }
      fail("'proportional' or 'to'");
    }
    if (at_keyword("select_indicators")) {
      take();
      if (at_keyword("keep")) {
        take();
        return SelectKeep{string_list()};
      }
      if (at_keyword("drop")) {
        take();
        return SelectDrop{string_list()};
      }
      if (at_keyword("all")) {
        take();
        return SelectAll{};
      }
      fail("'keep', 'drop' or 'all'");
    }
    if (t.kind == Tok::ident) throw ParseError(fmt::format("unknown action '{}'", t.text), t.line, t.column);
    fail("action ('change_rate' or 'select_indicators')");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string quote_list(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += quote(names[i]);
  }
  return out;
}

std::string print(const Condition& c) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, StateCheck>) {
          return fmt::format("indicator {} {}in state {}", quote(x.indicator), x.negated ? "not " : "",
                             to_string(x.state));
        } else if constexpr (std::is_same_v<T, StreakCheck>) {
          return fmt::format("streak({}, {}) {} {}", quote(x.indicator), to_string(x.state), to_string(x.cmp),
                             x.count);
        } else {
          return fmt::format("param {}({}) {} {}", to_string(x.param), quote(x.indicator), to_string(x.cmp),
                             x.value);
        }
      },
      c);
}

std::string print(const Action& a) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ChangeRateProportional>) {
          return fmt::format("change_rate {} proportional", quote(x.indicator));
        } else if constexpr (std::is_same_v<T, ChangeRateTo>) {
          return fmt::format("change_rate {} to {}", quote(x.indicator), x.seconds);
        } else if constexpr (std::is_same_v<T, SelectKeep>) {
          return "select_indicators keep " + quote_list(x.indicators);
        } else if constexpr (std::is_same_v<T, SelectDrop>) {
          return "select_indicators drop " + quote_list(x.indicators);
        } else {
          return "select_indicators all";
        }
      },
      a);
}

}  // namespace

RuleSet parse_rules(std::string_view text) { return Parser(Lexer(text).run()).document(); }

RuleSet load_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open rule file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rules(buf.str());
}

std::string print_rules(const RuleSet& rules) {
  std::string out;
  for (std::size_t i = 0; i < rules.rules.size(); ++i) {
    const Rule& r = rules.rules[i];
    if (i) out += '\n';
    out += fmt::format("rule {} salience {} {{\n", r.name, r.salience);
    for (std::size_t c = 0; c < r.conditions.size(); ++c) {
      out += fmt::format("  {} {}\n", c == 0 ? "when" : " and", print(r.conditions[c]));
    }
    for (std::size_t a = 0; a < r.actions.size(); ++a) {
      out += fmt::format("  {} {}{}\n", a == 0 ? "then" : "    ", print(r.actions[a]),
                         a + 1 < r.actions.size() ? ";" : "");
    }
    out += "}\n";
  }
  return out;
}

}  // namespace adaptivemon::rules
