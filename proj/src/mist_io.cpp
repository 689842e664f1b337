#include "iic/mist_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace iic {

namespace {

constexpr std::uint64_t kMaxConstant = 1'000'000'000;

bool is_keyword(std::string_view s) {
  return s == "vars" || s == "rules" || s == "init" || s == "target";
}

struct Tok {
  enum Kind { ident, number, sym, eof } kind = eof;
  std::string text;
  std::uint64_t value = 0;
  std::size_t line = 0;
  std::size_t col = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) { tokenize(text); }

  const Tok& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : eof_;
  }
  const Tok& next() {
    const Tok& t = peek();
    if (pos_ < tokens_.size()) ++pos_;
    return t;
  }
  bool at_sym(std::string_view s) const {
    return peek().kind == Tok::sym && peek().text == s;
  }
  bool at_keyword() const {
    return peek().kind == Tok::ident && is_keyword(peek().text);
  }

 private:
  void tokenize(std::string_view text) {
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
      for (std::size_t j = 0; j < k; ++j, ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
    };
    while (i < text.size()) {
      char c = text[i];
      if (c == '#') {
        while (i < text.size() && text[i] != '\n') advance(1);
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      Tok t;
      t.line = line;
      t.col = col;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                   text[i] == '_')) {
          advance(1);
        }
        t.kind = Tok::ident;
        t.text = std::string(text.substr(start, i - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          advance(1);
        }
        t.kind = Tok::number;
        t.text = std::string(text.substr(start, i - start));
        if (t.text.size() > 10) throw ParseError(t.line, t.col, "constant too large");
        t.value = std::stoull(t.text);
        if (t.value > kMaxConstant) throw ParseError(t.line, t.col, "constant too large");
      } else if (text.compare(i, 2, ">=") == 0) {
        t.kind = Tok::sym;
        t.text = ">=";
        advance(2);
      } else if (text.compare(i, 2, "->") == 0) {
        t.kind = Tok::sym;
        t.text = "->";
        advance(2);
      } else if (c == '=' || c == '\'' || c == '+' || c == '-' || c == ',' || c == ';') {
        t.kind = Tok::sym;
        t.text = std::string(1, c);
        advance(1);
      } else {
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
      tokens_.push_back(std::move(t));
    }
    eof_.line = line;
    eof_.col = col;
  }

  std::vector<Tok> tokens_;
  Tok eof_;
  std::size_t pos_ = 0;
};

[[noreturn]] void err(const Tok& t, const std::string& msg) {
  throw ParseError(t.line, t.col, msg);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  SpecFile parse() {
    parse_vars();
    parse_rules();
    parse_init();
    parse_target();

    PetriNet net;
    net.places = names_;
    net.transitions = std::move(transitions_);
    net.initial = std::move(initial_);
    net.validate();
    return SpecFile{std::move(net), UpSet::from(std::move(target_))};
  }

 private:
  void expect_section(const char* name) {
    const Tok& t = lex_.peek();
    if (!(t.kind == Tok::ident && t.text == name)) {
      err(t, std::string("expected '") + name + "' section");
    }
    lex_.next();
  }

  std::size_t expect_var() {
    const Tok& t = lex_.peek();
    if (t.kind != Tok::ident) err(t, "expected a variable name");
    if (is_keyword(t.text)) err(t, "'" + t.text + "' is a reserved word");
    auto it = index_.find(t.text);
    if (it == index_.end()) err(t, "undeclared variable '" + t.text + "'");
    lex_.next();
    return it->second;
  }

  std::uint64_t expect_number(const char* what) {
    const Tok& t = lex_.peek();
    if (t.kind == Tok::sym && t.text == "-") err(t, "negative constants are not allowed");
    if (t.kind != Tok::number) err(t, std::string("expected ") + what);
    lex_.next();
    return t.value;
  }

  void expect_sym(const char* s) {
    const Tok& t = lex_.peek();
    if (!(t.kind == Tok::sym && t.text == s)) {
      err(t, std::string("expected '") + s + "'");
    }
    lex_.next();
  }

  void parse_vars() {
    expect_section("vars");
    while (lex_.peek().kind == Tok::ident && !lex_.at_keyword()) {
      const Tok& t = lex_.next();
      if (index_.count(t.text)) err(t, "duplicate variable '" + t.text + "'");
      index_.emplace(t.text, names_.size());
      names_.push_back(t.text);
    }
    if (names_.empty()) err(lex_.peek(), "empty 'vars' section");
  }

  void parse_rules() {
    expect_section("rules");
    while (!lex_.at_keyword() && lex_.peek().kind != Tok::eof) {
      parse_one_rule();
    }
    if (transitions_.empty()) err(lex_.peek(), "empty 'rules' section");
  }

  void parse_one_rule() {
    const Tok rule_start = lex_.peek();
    const std::size_t n = names_.size();
    std::vector<std::optional<std::uint64_t>> stated(n);
    std::vector<std::int64_t> delta(n, 0);

    // guard conjunction
    while (true) {
      std::size_t v = expect_var();
      expect_sym(">=");
      std::uint64_t k = expect_number("a guard bound");
      stated[v] = std::max(stated[v].value_or(0), k);
      if (lex_.at_sym(",")) {
        lex_.next();
        continue;
      }
      break;
    }
    expect_sym("->");

    // update list
    while (true) {
      const Tok& vt = lex_.peek();
      std::size_t v = expect_var();
      expect_sym("'");
      expect_sym("=");
      const Tok& rhs = lex_.peek();
      std::size_t v2 = expect_var();
      if (v2 != v) err(rhs, "update must rewrite the same variable");
      if (lex_.at_sym("+") || lex_.at_sym("-")) {
        const bool neg = lex_.next().text == "-";
        std::uint64_t k = expect_number("an update amount");
        delta[v] += neg ? -static_cast<std::int64_t>(k) : static_cast<std::int64_t>(k);
      }
      (void)vt;
      if (lex_.at_sym(",")) {
        lex_.next();
        continue;
      }
      break;
    }
    expect_sym(";");

    Transition t;
    t.guard.resize(n);
    t.delta.resize(n);
    t.name = "t" + std::to_string(transitions_.size());
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t d = delta[j];
      if (d < std::numeric_limits<TokenDelta>::min() ||
          d > std::numeric_limits<TokenDelta>::max()) {
        err(rule_start, "constant too large");
      }
      std::uint64_t g;
      if (stated[j]) {
        g = *stated[j];
        if (static_cast<std::int64_t>(g) + d < 0) {
          err(rule_start, "rule decreases '" + names_[j] + "' below zero despite its guard");
        }
      } else {
        g = d < 0 ? static_cast<std::uint64_t>(-d) : 0;
      }
      t.guard[j] = static_cast<Token>(g);
      t.delta[j] = static_cast<TokenDelta>(d);
    }
    transitions_.push_back(std::move(t));
  }

  // One marking: assignments joined by commas (which may span lines); a
  // token not preceded by a comma starts the next marking.
  Marking parse_assignment_line() {
    Marking m = Marking::zeros(names_.size());
    std::vector<bool> set(names_.size(), false);
    while (true) {
      const Tok& vt = lex_.peek();
      std::size_t v = expect_var();
      if (set[v]) err(vt, "duplicate assignment to '" + names_[v] + "'");
      set[v] = true;
      expect_sym("=");
      m[v] = static_cast<Token>(expect_number("a token count"));
      if (lex_.at_sym(",")) {
        lex_.next();
        continue;
      }
      return m;
    }
  }

  void parse_init() {
    expect_section("init");
    while (!lex_.at_keyword() && lex_.peek().kind != Tok::eof) {
      Marking m = parse_assignment_line();
      if (std::find(initial_.begin(), initial_.end(), m) == initial_.end()) {
        initial_.push_back(std::move(m));
      }
    }
    if (initial_.empty()) err(lex_.peek(), "empty 'init' section");
  }

  void parse_target() {
    expect_section("target");
    while (lex_.peek().kind != Tok::eof) {
      if (lex_.at_keyword()) err(lex_.peek(), "unexpected section");
      Marking m = Marking::zeros(names_.size());
      while (true) {
        std::size_t v = expect_var();
        expect_sym(">=");
        m[v] = std::max(m[v], static_cast<Token>(expect_number("a bound")));
        if (lex_.at_sym(",")) {
          lex_.next();
          continue;
        }
        break;
      }
      target_.push_back(std::move(m));
    }
    if (target_.empty()) err(lex_.peek(), "empty 'target' section");
  }

  Lexer lex_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<Transition> transitions_;
  std::vector<Marking> initial_;
  std::vector<Marking> target_;
};

std::string fmt_named(const PetriNet& net, const Marking& m) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j) os << ',';
    os << net.places[j] << '=' << m[j];
  }
  os << ')';
  return os.str();
}

std::string bound_conjunct(const Marking& m, const std::vector<std::string>& places) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    if (!first) os << " & ";
    os << places[j] << " >= " << m[j];
    first = false;
  }
  if (first) os << places.at(0) << " >= 0";
  return os.str();
}

}  // namespace

SpecFile parse_spec(std::string_view text) { return Parser(text).parse(); }

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string emit_certificate(const UpSet& basis, const std::vector<std::string>& places) {
  std::vector<Marking> sorted = basis.basis();
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream os;
  os << "safe\n";
  for (const Marking& b : sorted) {
    os << "! (" << bound_conjunct(b, places) << ")\n";
  }
  return os.str();
}

std::string emit_trace(const PetriNet& net, const UpSet& target, const CexTrace& trace) {
  const Marking* start = nullptr;
  for (const Marking& m0 : net.initial) {
    if (covers(m0, trace.first())) {
      start = &m0;
      break;
    }
  }
  if (!start) throw UsageError("emit_trace: no initial marking covers the trace head");

  std::ostringstream os;
  os << "unsafe\n";
  os << fmt_named(net, *start) << "\n";
  Marking m = *start;
  for (const CexStep& s : trace.steps) {
    m = fire(m, net.transitions.at(s.transition));
    os << "fire " << s.transition << " -> " << fmt_named(net, m) << "\n";
  }
  for (const Marking& u : target.basis()) {
    if (covers(m, u)) {
      os << "covers " << bound_conjunct(u, net.places) << "\n";
      return os.str();
    }
  }
  throw UsageError("emit_trace: replay does not reach the target");
}

std::string emit_spec(const PetriNet& net, const UpSet& target) {
  std::ostringstream os;
  os << "vars";
  for (const std::string& p : net.places) os << ' ' << p;
  os << "\nrules\n";
  for (const Transition& t : net.transitions) {
    bool first = true;
    for (std::size_t j = 0; j < t.guard.size(); ++j) {
      if (t.guard[j] == 0) continue;
      os << (first ? "" : ", ") << net.places[j] << " >= " << t.guard[j];
      first = false;
    }
    if (first) os << net.places.at(0) << " >= 0";
    os << " -> ";
    first = true;
    for (std::size_t j = 0; j < t.delta.size(); ++j) {
      if (t.delta[j] == 0) continue;
      os << (first ? "" : ", ") << net.places[j] << "' = " << net.places[j]
         << (t.delta[j] > 0 ? " + " : " - ")
         << (t.delta[j] > 0 ? t.delta[j] : -static_cast<std::int64_t>(t.delta[j]));
      first = false;
    }
    if (first) os << net.places.at(0) << "' = " << net.places.at(0);
    os << ";\n";
  }
  for (std::size_t i = 0; i < net.initial.size(); ++i) {
    os << (i == 0 ? "init " : "");
    const Marking& m = net.initial[i];
    bool first = true;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      os << (first ? "" : ", ") << net.places[j] << " = " << m[j];
      first = false;
    }
    if (first) os << net.places.at(0) << " = 0";
    os << "\n";
  }
  for (std::size_t i = 0; i < target.basis().size(); ++i) {
    os << (i == 0 ? "target " : "");
    const Marking& u = target.basis()[i];
    bool first = true;
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (u[j] == 0) continue;
      os << (first ? "" : ", ") << net.places[j] << " >= " << u[j];
      first = false;
    }
    if (first) os << net.places.at(0) << " >= 0";
    os << "\n";
  }
  return os.str();
}

}  // namespace iic
