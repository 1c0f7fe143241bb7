#include "trsd/formats.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <vector>

namespace trsd {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), is_ident_char);
}

std::string trim_copy(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

CellIndex parse_cell_index(const std::string& text, std::size_t offset) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size())
    throw ParseError("expected an integer, got '" + text + "'", offset);
  for (; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected an integer, got '" + text + "'", offset);
  return CellIndex(text);
}

// Token stream for the system file format.

struct Token {
  enum class Kind { lparen, rparen, comma, arrow, ident, end };
  Kind kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> lex_trs(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(') {
      out.push_back({Token::Kind::lparen, "(", i++});
      continue;
    }
    if (c == ')') {
      out.push_back({Token::Kind::rparen, ")", i++});
      continue;
    }
    if (c == ',') {
      out.push_back({Token::Kind::comma, ",", i++});
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Kind::arrow, "->", i});
      i += 2;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      out.push_back({Token::Kind::ident, text.substr(i, j - i), i});
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Token::Kind::end, "", text.size()});
  return out;
}

class TrsReader {
 public:
  explicit TrsReader(const std::string& text) : tokens_(lex_trs(text)) {}

  Trs read() {
    bool saw_var = false, saw_rules = false;
    while (peek().kind != Token::Kind::end) {
      expect(Token::Kind::lparen, "expected '('");
      const Token section = expect(Token::Kind::ident, "expected VAR or RULES");
      if (section.text == "VAR") {
        if (saw_var) throw ParseError("duplicate VAR section", section.offset);
        if (saw_rules)
          throw ParseError("VAR section must precede RULES", section.offset);
        saw_var = true;
        read_vars();
      } else if (section.text == "RULES") {
        if (saw_rules) throw ParseError("duplicate RULES section", section.offset);
        saw_rules = true;
        read_rules();
      } else {
        throw ParseError("unknown section '" + section.text + "'", section.offset);
      }
    }
    if (!saw_rules) throw ParseError("missing RULES section", peek().offset);

    Signature sig;
    for (const auto& v : vars_) sig.add_variable(v);
    for (const auto& name : symbol_order_) sig.add_symbol(name, arity_.at(name));
    return Trs(std::move(sig), std::move(rules_));
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token expect(Token::Kind kind, const std::string& what) {
    if (peek().kind != kind) throw ParseError(what, peek().offset);
    return tokens_[pos_++];
  }

  void read_vars() {
    while (peek().kind == Token::Kind::ident) {
      const Token t = tokens_[pos_++];
      if (!var_set_.insert(t.text).second)
        throw ParseError("duplicate variable '" + t.text + "'", t.offset);
      vars_.push_back(t.text);
    }
    expect(Token::Kind::rparen, "expected ')'");
  }

  void read_rules() {
    while (peek().kind != Token::Kind::rparen) {
      const std::size_t at = peek().offset;
      Term lhs = read_term();
      expect(Token::Kind::arrow, "expected '->'");
      Term rhs = read_term();
      if (lhs.is_variable())
        throw ParseError("rule left-hand side is a bare variable", at);
      std::set<std::string> lhs_vars, rhs_vars;
      collect_vars(lhs, lhs_vars);
      collect_vars(rhs, rhs_vars);
      for (const auto& v : rhs_vars)
        if (!lhs_vars.count(v))
          throw ParseError("variable '" + v + "' occurs only on the right-hand side", at);
      rules_.push_back(Rule{std::move(lhs), std::move(rhs)});
    }
    expect(Token::Kind::rparen, "expected ')'");
  }

  Term read_term() {
    const Token head = expect(Token::Kind::ident, "expected a term");
    if (var_set_.count(head.text)) {
      if (peek().kind == Token::Kind::lparen)
        throw ParseError("variable '" + head.text + "' cannot take arguments",
                         peek().offset);
      return Term::variable(head.text);
    }
    std::vector<Term> args;
    if (peek().kind == Token::Kind::lparen) {
      ++pos_;
      args.push_back(read_term());
      while (peek().kind == Token::Kind::comma) {
        ++pos_;
        args.push_back(read_term());
      }
      expect(Token::Kind::rparen, "expected ',' or ')'");
    }
    auto it = arity_.find(head.text);
    if (it == arity_.end()) {
      arity_.emplace(head.text, args.size());
      symbol_order_.push_back(head.text);
    } else if (it->second != args.size()) {
      throw ParseError("arity mismatch for '" + head.text + "': expected " +
                           std::to_string(it->second) + ", got " +
                           std::to_string(args.size()),
                       head.offset);
    }
    return Term::app(head.text, std::move(args));
  }

  static void collect_vars(const Term& t, std::set<std::string>& out) {
    if (t.is_variable()) {
      out.insert(t.head());
      return;
    }
    for (const Term& a : t.args()) collect_vars(a, out);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;
  std::set<std::string> var_set_;
  std::vector<std::string> symbol_order_;
  std::map<std::string, std::size_t> arity_;
  std::vector<Rule> rules_;
};

}  // namespace

TuringMachine parse_machine(const std::string& text) {
  TuringMachine tm;
  std::set<std::string> seen;

  auto require_names = [](const std::vector<std::string>& tokens, std::size_t at) {
    for (const auto& t : tokens)
      if (!is_identifier(t))
        throw ParseError("invalid identifier '" + t + "'", at);
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::size_t end = eol == std::string::npos ? text.size() : eol;
    std::string line = text.substr(pos, end - pos);
    const std::size_t at = pos;
    pos = eol == std::string::npos ? text.size() : eol + 1;

    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim_copy(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'key: value'", at);
    const std::string key = trim_copy(line.substr(0, colon));
    const std::vector<std::string> tokens = split_ws(line.substr(colon + 1));

    auto once = [&seen, &key, at]() {
      if (!seen.insert(key).second)
        throw ParseError("duplicate '" + key + ":' line", at);
    };
    auto single_name = [&tokens, &key, at, &require_names]() {
      if (tokens.size() != 1)
        throw ParseError("'" + key + ":' expects exactly one name", at);
      require_names(tokens, at);
      return tokens[0];
    };

    if (key == "states") {
      once();
      if (tokens.empty()) throw ParseError("'states:' expects at least one name", at);
      require_names(tokens, at);
      tm.states = tokens;
    } else if (key == "alphabet") {
      once();
      if (tokens.empty())
        throw ParseError("'alphabet:' expects at least one name", at);
      require_names(tokens, at);
      tm.alphabet = tokens;
    } else if (key == "blank") {
      once();
      tm.blank = single_name();
    } else if (key == "start") {
      once();
      tm.start = single_name();
    } else if (key == "final") {
      once();
      tm.final_state = single_name();
    } else if (key == "delta") {
      if (tokens.size() != 6 || tokens[2] != "->")
        throw ParseError("delta line must read: q a -> q' L|R b", at);
      require_names({tokens[0], tokens[1], tokens[3], tokens[5]}, at);
      Direction dir;
      if (tokens[4] == "L")
        dir = Direction::left;
      else if (tokens[4] == "R")
        dir = Direction::right;
      else
        throw ParseError("direction must be L or R", at);
      tm.delta.push_back(
          TuringMachine::DeltaEntry{tokens[0], tokens[1], tokens[3], dir, tokens[5]});
    } else {
      throw ParseError("unknown key '" + key + "'", at);
    }
  }

  for (const char* key : {"states", "alphabet", "blank", "start", "final"})
    if (!seen.count(key))
      throw ParseError(std::string("missing '") + key + ":' line", text.size());
  return tm;
}

std::string machine_to_text(const TuringMachine& tm) {
  std::string out = "states:";
  for (const auto& q : tm.states) out += " " + q;
  out += "\nalphabet:";
  for (const auto& a : tm.alphabet) out += " " + a;
  out += "\nblank: " + tm.blank;
  out += "\nstart: " + tm.start;
  out += "\nfinal: " + tm.final_state;
  out += "\n";
  for (const auto& e : tm.delta)
    out += "delta: " + e.state + " " + e.read + " -> " + e.next_state + " " +
           (e.direction == Direction::left ? "L" : "R") + " " + e.write + "\n";
  return out;
}

Trs parse_trs(const std::string& text) { return TrsReader(text).read(); }

std::string trs_to_text(const Trs& trs) {
  std::string out = "(VAR";
  for (const auto& v : trs.signature().variables()) out += " " + v;
  out += ")\n(RULES\n";
  for (const Rule& rule : trs.rules())
    out += "  " + format_term(rule.lhs) + " -> " + format_term(rule.rhs) + "\n";
  out += ")\n";
  return out;
}

Configuration parse_config(const std::string& text, const TuringMachine& tm) {
  const auto at_sign = text.find('@');
  if (at_sign == std::string::npos)
    throw ParseError("expected 'state@position'", 0);
  const std::string state = text.substr(0, at_sign);
  if (!tm.has_state(state))
    throw ParseError("unknown state '" + state + "'", 0);

  const auto cells_start = text.find(':', at_sign + 1);
  const std::string pos_text =
      text.substr(at_sign + 1, (cells_start == std::string::npos ? text.size()
                                                                 : cells_start) -
                                   at_sign - 1);
  Configuration k;
  k.state = state;
  k.position = parse_cell_index(pos_text, at_sign + 1);

  if (cells_start != std::string::npos) {
    std::set<CellIndex> assigned;
    std::size_t cursor = cells_start + 1;
    while (true) {
      const auto comma = text.find(',', cursor);
      const std::size_t end = comma == std::string::npos ? text.size() : comma;
      const std::string item = text.substr(cursor, end - cursor);
      const auto equals = item.find('=');
      if (equals == std::string::npos)
        throw ParseError("expected 'index=symbol'", cursor);
      const CellIndex index = parse_cell_index(item.substr(0, equals), cursor);
      const std::string symbol = item.substr(equals + 1);
      if (!tm.has_letter(symbol))
        throw ParseError("unknown tape symbol '" + symbol + "'",
                         cursor + equals + 1);
      if (!assigned.insert(index).second)
        throw ParseError("duplicate cell index " + index.str(), cursor);
      if (symbol != tm.blank) k.tape.emplace(index, symbol);
      if (comma == std::string::npos) break;
      cursor = comma + 1;
    }
  }
  return k;
}

std::string config_to_text(const Configuration& k) {
  std::string out = k.state + "@" + k.position.str();
  bool first = true;
  for (const auto& [index, symbol] : k.tape) {
    out += first ? ":" : ",";
    first = false;
    out += index.str() + "=" + symbol;
  }
  return out;
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  const std::size_t bound = std::min(offset, text.size());
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + bound, '\n')) + 1;
}

}  // namespace trsd
