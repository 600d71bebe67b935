#include "sedan/value.hpp"

#include <cctype>
#include <functional>
#include <variant>

namespace sedan {

struct Value::Node {
  Kind kind;
  std::variant<Rational, std::string, char, std::pair<Value, Value>> data;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_rational(const Rational& q) {
  std::size_t h = 0;
  for (const auto& part : {boost::multiprecision::numerator(q),
                           boost::multiprecision::denominator(q)}) {
    Integer x = abs(part);
    std::size_t words = 0;
    while (x != 0 && words < 4) {
      h = mix(h, static_cast<std::size_t>(static_cast<unsigned long long>(
                     x & Integer(0xffffffffffffffffULL))));
      x >>= 64;
      ++words;
    }
    h = mix(h, part < 0 ? 1 : 2);
  }
  return h;
}

const std::shared_ptr<const Value::Node>& symbol_node(std::string_view name);

}  // namespace

Value::Value() : Value(nil()) {}

Value Value::nil() {
  static const Value v(symbol_node("nil"));
  return v;
}

Value Value::t() {
  static const Value v(symbol_node("t"));
  return v;
}

namespace {

std::shared_ptr<const Value::Node> make_symbol_node(std::string_view name) {
  auto node = std::make_shared<Value::Node>();
  node->kind = Value::Kind::kSymbol;
  node->data = std::string(name);
  node->hash = mix(0x51, std::hash<std::string_view>{}(name));
  return node;
}

const std::shared_ptr<const Value::Node>& symbol_node(std::string_view name) {
  static const std::shared_ptr<const Value::Node> nil_node = make_symbol_node("nil");
  static const std::shared_ptr<const Value::Node> t_node = make_symbol_node("t");
  return name == "nil" ? nil_node : t_node;
}

}  // namespace

Value Value::integer(long long n) { return rational(Rational(n)); }

Value Value::integer(const Integer& n) { return rational(Rational(n)); }

Value Value::rational(const Rational& q) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kRational;
  node->data = q;
  node->hash = mix(0x11, hash_rational(q));
  return Value(std::move(node));
}

Value Value::symbol(std::string_view name) {
  if (name == "nil") return nil();
  if (name == "t") return t();
  return Value(make_symbol_node(name));
}

Value Value::character(char c) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kCharacter;
  node->data = c;
  node->hash = mix(0x21, static_cast<unsigned char>(c));
  return Value(std::move(node));
}

Value Value::string(std::string text) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kString;
  node->hash = mix(0x31, std::hash<std::string>{}(text));
  node->data = std::move(text);
  return Value(std::move(node));
}

Value Value::cons(Value car, Value cdr) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kPair;
  node->hash = mix(mix(0x41, car.hash()), cdr.hash());
  node->data = std::pair<Value, Value>(std::move(car), std::move(cdr));
  return Value(std::move(node));
}

Value Value::list(const std::vector<Value>& elements) {
  Value result = nil();
  for (auto it = elements.rbegin(); it != elements.rend(); ++it) {
    result = cons(*it, std::move(result));
  }
  return result;
}

Value::Kind Value::kind() const { return node_->kind; }

bool Value::is_nil() const { return node_ == nil().node_; }

bool Value::is_t() const { return node_ == t().node_; }

bool Value::is_integer() const {
  return is_rational() && boost::multiprecision::denominator(as_rational()) == 1;
}

bool Value::is_true_list() const {
  const Value* cur = this;
  while (cur->is_pair()) cur = &cur->cdr();
  return cur->is_nil();
}

const Rational& Value::as_rational() const { return std::get<Rational>(node_->data); }

const std::string& Value::symbol_name() const {
  return std::get<std::string>(node_->data);
}

const std::string& Value::string_text() const {
  return std::get<std::string>(node_->data);
}

char Value::as_character() const { return std::get<char>(node_->data); }

const Value& Value::car() const {
  if (!is_pair()) {
    static const Value n = nil();
    return n;
  }
  return std::get<std::pair<Value, Value>>(node_->data).first;
}

const Value& Value::cdr() const {
  if (!is_pair()) {
    static const Value n = nil();
    return n;
  }
  return std::get<std::pair<Value, Value>>(node_->data).second;
}

std::vector<Value> Value::list_elements() const {
  std::vector<Value> out;
  const Value* cur = this;
  while (cur->is_pair()) {
    out.push_back(cur->car());
    cur = &cur->cdr();
  }
  return out;
}

std::size_t Value::list_length() const {
  std::size_t n = 0;
  const Value* cur = this;
  while (cur->is_pair()) {
    ++n;
    cur = &cur->cdr();
  }
  return n;
}

bool operator==(const Value& a, const Value& b) {
  const Value* x = &a;
  const Value* y = &b;
  // Iterate along cdr chains; recurse only on cars.
  while (true) {
    if (x->node_ == y->node_) return true;
    if (x->node_->hash != y->node_->hash) return false;
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case Value::Kind::kRational:
        return x->as_rational() == y->as_rational();
      case Value::Kind::kCharacter:
        return x->as_character() == y->as_character();
      case Value::Kind::kString:
      case Value::Kind::kSymbol:
        return std::get<std::string>(x->node_->data) ==
               std::get<std::string>(y->node_->data);
      case Value::Kind::kPair:
        if (!(x->car() == y->car())) return false;
        x = &x->cdr();
        y = &y->cdr();
        break;
    }
  }
}

std::size_t Value::hash() const { return node_->hash; }

std::strong_ordering compare(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) {
    return static_cast<int>(a.kind()) <=> static_cast<int>(b.kind());
  }
  switch (a.kind()) {
    case Value::Kind::kRational: {
      const auto& p = a.as_rational();
      const auto& q = b.as_rational();
      if (p < q) return std::strong_ordering::less;
      if (q < p) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    case Value::Kind::kCharacter:
      return static_cast<unsigned char>(a.as_character()) <=>
             static_cast<unsigned char>(b.as_character());
    case Value::Kind::kString:
      return a.string_text().compare(b.string_text()) <=> 0;
    case Value::Kind::kSymbol:
      return a.symbol_name().compare(b.symbol_name()) <=> 0;
    case Value::Kind::kPair: {
      auto c = compare(a.car(), b.car());
      if (c != 0) return c;
      return compare(a.cdr(), b.cdr());
    }
  }
  return std::strong_ordering::equal;
}

std::string rational_to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool looks_numeric(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  bool digits = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    digits = true;
  }
  if (i == s.size()) return digits;
  if (s[i] != '/' || !digits) return false;
  ++i;
  bool den = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    den = true;
  }
  return den && i == s.size();
}

}  // namespace

bool symbol_needs_bars(std::string_view name) {
  if (name.empty() || looks_numeric(name) || name == ".") return true;
  for (char c : name) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isspace(u) || c == '(' || c == ')' || c == '\'' || c == '"' ||
        c == ';' || c == '|' || c == '`' || c == ',' || c == '#' ||
        !std::isprint(u)) {
      return true;
    }
  }
  return false;
}

namespace {

void print_symbol(std::string& out, const std::string& name, PrintStyle style) {
  if (style == PrintStyle::kReport) {
    bool has_upper = false;
    for (char c : name) has_upper |= std::isupper(static_cast<unsigned char>(c)) != 0;
    if (!has_upper && !symbol_needs_bars(name)) {
      for (char c : name) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      return;
    }
    out += '|';
    out += name;
    out += '|';
    return;
  }
  if (symbol_needs_bars(name)) {
    out += '|';
    out += name;
    out += '|';
  } else {
    out += name;
  }
}

void print_character(std::string& out, char c) {
  out += "#\\";
  switch (c) {
    case ' ': out += "Space"; return;
    case '\n': out += "Newline"; return;
    case '\t': out += "Tab"; return;
    default: out += c;
  }
}

void print_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

void print(std::string& out, const Value& v, PrintStyle style) {
  switch (v.kind()) {
    case Value::Kind::kRational:
      out += rational_to_string(v.as_rational());
      return;
    case Value::Kind::kCharacter:
      print_character(out, v.as_character());
      return;
    case Value::Kind::kString:
      print_string(out, v.string_text());
      return;
    case Value::Kind::kSymbol:
      print_symbol(out, v.symbol_name(), style);
      return;
    case Value::Kind::kPair: {
      out += '(';
      const Value* cur = &v;
      bool first = true;
      while (cur->is_pair()) {
        if (!first) out += ' ';
        print(out, cur->car(), style);
        first = false;
        cur = &cur->cdr();
      }
      if (!cur->is_nil()) {
        out += " . ";
        print(out, *cur, style);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Value& v, PrintStyle style) {
  std::string out;
  print(out, v, style);
  return out;
}

}  // namespace sedan
