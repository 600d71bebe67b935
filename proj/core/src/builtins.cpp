#include "sedan/builtins.hpp"

#include <array>

namespace sedan {

Rational fix_rational(const Value& v) {
  return v.is_rational() ? v.as_rational() : Rational(0);
}

Rational rational_expt(const Rational& base, long long exponent) {
  if (exponent == 0) return Rational(1);
  if (base == 0) return Rational(0);
  const bool invert = exponent < 0;
  unsigned long long e = static_cast<unsigned long long>(invert ? -exponent : exponent);
  Rational result(1);
  Rational b = base;
  while (e) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return invert ? Rational(1) / result : result;
}

namespace {

using Args = std::span<const Value>;

Value b_cons(Args a) { return Value::cons(a[0], a[1]); }
Value b_car(Args a) { return a[0].car(); }
Value b_cdr(Args a) { return a[0].cdr(); }
Value b_consp(Args a) { return Value::boolean(a[0].is_pair()); }
Value b_equal(Args a) { return Value::boolean(a[0] == a[1]); }
Value b_not(Args a) { return Value::boolean(a[0].is_nil()); }

Value b_if(Args a) { return a[0].truthy() ? a[1] : a[2]; }
Value b_and(Args a) { return a[0].truthy() ? a[1] : Value::nil(); }
Value b_or(Args a) { return a[0].truthy() ? a[0] : a[1]; }
Value b_implies(Args a) { return Value::boolean(a[0].is_nil() || a[1].truthy()); }

Value b_plus(Args a) { return Value::rational(fix_rational(a[0]) + fix_rational(a[1])); }
Value b_times(Args a) { return Value::rational(fix_rational(a[0]) * fix_rational(a[1])); }

Value b_minus(Args a) {
  if (a.size() == 1) return Value::rational(-fix_rational(a[0]));
  return Value::rational(fix_rational(a[0]) - fix_rational(a[1]));
}

Value b_divide(Args a) {
  if (a.size() == 1) {
    const Rational d = fix_rational(a[0]);
    return Value::rational(d == 0 ? Rational(0) : Rational(1) / d);
  }
  const Rational d = fix_rational(a[1]);
  if (d == 0) return Value::integer(0);
  return Value::rational(fix_rational(a[0]) / d);
}

Value b_less(Args a) { return Value::boolean(fix_rational(a[0]) < fix_rational(a[1])); }

Value b_expt(Args a) {
  const Rational base = fix_rational(a[0]);
  // Non-integer exponents are treated as 0.
  if (!a[1].is_integer()) return Value::integer(1);
  const Integer e = boost::multiprecision::numerator(a[1].as_rational());
  // Exponents beyond this bound are not meaningful for testing; clamp to
  // avoid unbounded allocation.
  constexpr long long kMaxExponent = 4096;
  if (e > kMaxExponent || e < -kMaxExponent) {
    if (base == 1) return Value::integer(1);
    if (base == -1) return Value::integer(e % 2 == 0 ? 1 : -1);
    if (base == 0) return Value::integer(0);
    return Value::rational(rational_expt(base, e > 0 ? kMaxExponent : -kMaxExponent));
  }
  return Value::rational(rational_expt(base, e.convert_to<long long>()));
}

Value b_len(Args a) { return Value::integer(static_cast<long long>(a[0].list_length())); }

Value b_append(Args a) {
  auto front = a[0].list_elements();
  Value result = a[1];
  for (auto it = front.rbegin(); it != front.rend(); ++it) result = Value::cons(*it, result);
  return result;
}

Value b_natp(Args a) { return Value::boolean(a[0].is_integer() && a[0].as_rational() >= 0); }
Value b_posp(Args a) { return Value::boolean(a[0].is_integer() && a[0].as_rational() > 0); }
Value b_negp(Args a) { return Value::boolean(a[0].is_integer() && a[0].as_rational() < 0); }
Value b_integerp(Args a) { return Value::boolean(a[0].is_integer()); }
Value b_rationalp(Args a) { return Value::boolean(a[0].is_rational()); }
Value b_booleanp(Args a) { return Value::boolean(a[0].is_nil() || a[0].is_t()); }
Value b_symbolp(Args a) { return Value::boolean(a[0].is_symbol()); }
Value b_stringp(Args a) { return Value::boolean(a[0].is_string()); }
Value b_characterp(Args a) { return Value::boolean(a[0].is_character()); }
Value b_true_listp(Args a) { return Value::boolean(a[0].is_true_list()); }

constexpr std::array kBuiltins = {
    Builtin{"cons", 2, 2, false, false, b_cons},
    Builtin{"car", 1, 1, false, false, b_car},
    Builtin{"cdr", 1, 1, false, false, b_cdr},
    Builtin{"consp", 1, 1, true, false, b_consp},
    Builtin{"equal", 2, 2, true, false, b_equal},
    Builtin{"not", 1, 1, true, false, b_not},
    Builtin{"if", 3, 3, false, true, b_if},
    Builtin{"and", 2, 2, false, true, b_and},
    Builtin{"or", 2, 2, false, true, b_or},
    Builtin{"implies", 2, 2, true, true, b_implies},
    Builtin{"+", 2, 2, false, false, b_plus},
    Builtin{"-", 1, 2, false, false, b_minus},
    Builtin{"*", 2, 2, false, false, b_times},
    Builtin{"/", 1, 2, false, false, b_divide},
    Builtin{"<", 2, 2, true, false, b_less},
    Builtin{"expt", 2, 2, false, false, b_expt},
    Builtin{"len", 1, 1, false, false, b_len},
    Builtin{"append", 2, 2, false, false, b_append},
    Builtin{"natp", 1, 1, true, false, b_natp},
    Builtin{"posp", 1, 1, true, false, b_posp},
    Builtin{"negp", 1, 1, true, false, b_negp},
    Builtin{"integerp", 1, 1, true, false, b_integerp},
    Builtin{"rationalp", 1, 1, true, false, b_rationalp},
    Builtin{"booleanp", 1, 1, true, false, b_booleanp},
    Builtin{"symbolp", 1, 1, true, false, b_symbolp},
    Builtin{"stringp", 1, 1, true, false, b_stringp},
    Builtin{"characterp", 1, 1, true, false, b_characterp},
    Builtin{"true-listp", 1, 1, true, false, b_true_listp},
};

}  // namespace

const Builtin* find_builtin(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::span<const Builtin> all_builtins() { return kBuiltins; }

}  // namespace sedan
