#include "sedan/eval.hpp"

#include <algorithm>

#include "sedan/builtins.hpp"
#include "sedan/datadef.hpp"
#include "sedan/error.hpp"

namespace sedan {

struct Evaluator::Frame {
  // Either a function frame (formals + args) or the top-level binding.
  const std::vector<std::string>* formals = nullptr;
  std::span<const Value> args;
  const Binding* top = nullptr;

  const Value* lookup(const std::string& name) const {
    if (formals) {
      for (std::size_t i = 0; i < formals->size(); ++i) {
        if ((*formals)[i] == name) return &args[i];
      }
      return nullptr;
    }
    auto it = top->find(name);
    return it == top->end() ? nullptr : &it->second;
  }
};

Value Evaluator::eval(const Term& term, const Binding& binding) const {
  Frame frame;
  frame.top = &binding;
  return eval_in(term, frame, 0);
}

Value Evaluator::call(std::string_view fn, std::span<const Value> args) const {
  return apply(fn, args, 0);
}

Value Evaluator::eval_in(const Term& term, const Frame& frame, std::size_t depth) const {
  switch (term.kind()) {
    case Term::Kind::kQuote:
      return term.value();
    case Term::Kind::kVar: {
      const Value* v = frame.lookup(term.name());
      if (!v) throw EvalError("unbound variable " + term.name());
      return *v;
    }
    case Term::Kind::kApp:
      break;
  }
  const std::string& fn = term.name();
  const auto& args = term.args();
  // Lazy connectives.
  if (fn == "if") {
    return eval_in(args[0], frame, depth).truthy() ? eval_in(args[1], frame, depth)
                                                   : eval_in(args[2], frame, depth);
  }
  if (fn == "and") {
    return eval_in(args[0], frame, depth).truthy() ? eval_in(args[1], frame, depth)
                                                   : Value::nil();
  }
  if (fn == "or") {
    Value a = eval_in(args[0], frame, depth);
    return a.truthy() ? a : eval_in(args[1], frame, depth);
  }
  if (fn == "implies") {
    if (eval_in(args[0], frame, depth).is_nil()) return Value::t();
    return Value::boolean(eval_in(args[1], frame, depth).truthy());
  }
  std::vector<Value> vals;
  vals.reserve(args.size());
  for (const auto& a : args) vals.push_back(eval_in(a, frame, depth));
  return apply(fn, vals, depth);
}

Value Evaluator::apply(std::string_view fn, std::span<const Value> args,
                       std::size_t depth) const {
  if (const Builtin* b = find_builtin(fn)) {
    if (args.size() < b->min_arity || args.size() > b->max_arity) {
      throw EvalError("wrong number of arguments to " + std::string(fn));
    }
    return b->apply(args);
  }
  if (const FunctionDef* def = world_.function(fn)) {
    if (args.size() != def->formals.size()) {
      throw EvalError("wrong number of arguments to " + std::string(fn));
    }
    if (depth + 1 > world_.settings.max_eval_depth) {
      throw EvalError("recursion depth " + std::to_string(world_.settings.max_eval_depth) +
                      " exceeded in " + std::string(fn) +
                      " (the definition is likely nonterminating)");
    }
    Frame frame;
    frame.formals = &def->formals;
    frame.args = args;
    return eval_in(def->body, frame, depth + 1);
  }
  if (const TypeEntry* t = world_.types().by_recognizer(fn)) {
    if (args.size() != 1) throw EvalError("wrong number of arguments to " + std::string(fn));
    return Value::boolean(recognize(world_, t->name, args[0]));
  }
  if (const TypeEntry* t = world_.types().by_enumerator(fn)) {
    if (args.size() != 1) throw EvalError("wrong number of arguments to " + std::string(fn));
    const Value& n = args[0];
    std::uint64_t index = 0;
    if (n.is_integer() && n.as_rational() > 0) {
      const Integer i = boost::multiprecision::numerator(n.as_rational());
      index = i > Integer(UINT64_MAX) ? UINT64_MAX : i.convert_to<std::uint64_t>();
    }
    return enumerate(world_, t->name, index);
  }
  throw EvalError("undefined function " + std::string(fn));
}

Value evaluate(const Term& term, const Binding& binding, const World& world) {
  return Evaluator(world).eval(term, binding);
}

std::string binding_to_string(const Binding& b, PrintStyle style,
                              const std::vector<std::string>& order) {
  std::vector<std::string> names;
  for (const auto& name : order) {
    if (b.count(name)) names.push_back(name);
  }
  for (const auto& [name, _] : b) {
    if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  }
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += (i + 1 == names.size()) ? " and " : ", ";
    out += "(" + to_string(Value::symbol(names[i]), style) + " " +
           to_string(b.find(names[i])->second, style) + ")";
  }
  return out;
}

}  // namespace sedan
