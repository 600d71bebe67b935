#include "sedan/sexp.hpp"

#include <cctype>

namespace sedan {

Value Sexp::to_value() const {
  if (is_atom()) return atom;
  Value result = tail.empty() ? Value::nil() : tail.front().to_value();
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    result = Value::cons(it->to_value(), std::move(result));
  }
  return result;
}

namespace {

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
         c == '\'' || c == '"' || c == ';';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<Sexp> read_all() {
    std::vector<Sexp> out;
    skip_space();
    while (!at_end()) {
      out.push_back(read());
      skip_space();
    }
    return out;
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }
  SourcePos pos() const { return {line_, col_}; }

  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of input", pos());
    const SourcePos start = pos();
    const char c = peek();
    if (c == '(') return read_list();
    if (c == ')') throw ParseError("unbalanced ')'", start);
    if (c == '\'') {
      advance();
      Sexp quoted = read();
      Sexp out;
      out.kind = Sexp::Kind::kList;
      out.pos = start;
      Sexp head;
      head.atom = Value::symbol("quote");
      head.pos = start;
      out.items.push_back(std::move(head));
      out.items.push_back(std::move(quoted));
      return out;
    }
    Sexp out;
    out.pos = start;
    if (c == '"') {
      out.atom = read_string();
    } else if (c == '#') {
      out.atom = read_character();
    } else if (c == '|') {
      out.atom = read_barred_symbol();
    } else {
      out.atom = read_token(start);
    }
    return out;
  }

  Sexp read_list() {
    const SourcePos start = pos();
    advance();  // '('
    Sexp out;
    out.kind = Sexp::Kind::kList;
    out.pos = start;
    while (true) {
      skip_space();
      if (at_end()) throw ParseError("unbalanced '(': missing ')'", start);
      if (peek() == ')') {
        advance();
        break;
      }
      if (peek() == '.' && i_ + 1 < text_.size() && is_delimiter(text_[i_ + 1])) {
        const SourcePos dot = pos();
        if (out.items.empty()) throw ParseError("dot with no preceding element", dot);
        advance();
        out.tail.push_back(read());
        skip_space();
        if (at_end() || peek() != ')') {
          throw ParseError("expected ')' after dotted tail", pos());
        }
        advance();
        break;
      }
      out.items.push_back(read());
    }
    // () reads as nil.
    if (out.items.empty()) {
      Sexp nil;
      nil.pos = start;
      nil.atom = Value::nil();
      return nil;
    }
    return out;
  }

  Value read_string() {
    const SourcePos start = pos();
    advance();
    std::string s;
    while (true) {
      if (at_end()) throw ParseError("unterminated string", start);
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) throw ParseError("unterminated string", start);
        c = advance();
      }
      s += c;
    }
    return Value::string(std::move(s));
  }

  Value read_character() {
    const SourcePos start = pos();
    advance();  // '#'
    if (at_end() || peek() != '\\') throw ParseError("expected #\\ character", start);
    advance();
    if (at_end()) throw ParseError("unterminated character", start);
    std::string name;
    name += advance();
    while (!at_end() && !is_delimiter(peek())) name += advance();
    if (name.size() == 1) return Value::character(name[0]);
    std::string lower;
    for (char ch : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "space") return Value::character(' ');
    if (lower == "newline") return Value::character('\n');
    if (lower == "tab") return Value::character('\t');
    throw ParseError("unknown character name #\\" + name, start);
  }

  Value read_barred_symbol() {
    const SourcePos start = pos();
    advance();
    std::string s;
    while (true) {
      if (at_end()) throw ParseError("unterminated |symbol|", start);
      char c = advance();
      if (c == '|') break;
      s += c;
    }
    return Value::symbol(s);
  }

  Value read_token(SourcePos start) {
    std::string tok;
    while (!at_end() && !is_delimiter(peek())) tok += advance();
    if (tok.empty()) throw ParseError("unexpected character", start);
    if (auto n = parse_number(tok)) return *n;
    return Value::symbol(tok);
  }

  static std::optional<Value> parse_number(const std::string& tok) {
    std::size_t i = 0;
    bool negative = false;
    if (tok[i] == '-' || tok[i] == '+') {
      negative = tok[i] == '-';
      ++i;
    }
    const std::size_t num_start = i;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
    if (i == num_start) return std::nullopt;
    Integer num(tok.substr(num_start, i - num_start));
    Integer den = 1;
    if (i < tok.size()) {
      if (tok[i] != '/') return std::nullopt;
      const std::size_t den_start = ++i;
      while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
      if (i == den_start || i != tok.size()) return std::nullopt;
      den = Integer(tok.substr(den_start));
      if (den == 0) return std::nullopt;
    }
    if (negative) num = -num;
    return Value::rational(Rational(num, den));
  }

  std::string_view text_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<Sexp> read_all(std::string_view text) { return Reader(text).read_all(); }

Sexp read_one(std::string_view text) {
  auto all = read_all(text);
  if (all.size() != 1) {
    throw ParseError("expected exactly one expression, found " + std::to_string(all.size()),
                     all.empty() ? SourcePos{1, 1} : all[1].pos);
  }
  return std::move(all.front());
}

Value read_value(std::string_view text) { return read_one(text).to_value(); }

std::string to_string(const Sexp& s) {
  if (s.is_atom()) return to_string(s.atom);
  if (s.items.size() == 2 && s.tail.empty() && s.items[0].is_symbol("quote")) {
    return "'" + to_string(s.items[1]);
  }
  std::string out = "(";
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += ' ';
    out += to_string(s.items[i]);
  }
  if (!s.tail.empty()) out += " . " + to_string(s.tail.front());
  out += ')';
  return out;
}

}  // namespace sedan
