#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sedan/datadef.hpp"
#include "sedan/hints.hpp"
#include "sedan/sexp.hpp"
#include "sedan/term.hpp"

namespace sedan {

/// A `set-testing` keyword and its value.
struct TestingSetting {
  std::string key;  // without the colon
  Value value;
};

/// One top-level form of a source file.
struct Form {
  enum class Kind {
    kDefun,
    kDefdata,
    kDefdataSubtype,
    kDefrule,
    kThm,
    kTest,
    kSetTesting,
    kInclude,
  };

  Kind kind = Kind::kDefun;
  Sexp source;

  /// defun, defrule: the defined name.
  std::string name;
  std::vector<std::string> formals;
  Term body;
  std::vector<DefdataMember> members;
  /// defdata-subtype.
  std::string sub;
  std::string super;
  /// defdata-subtype and defrule: skip the testing evidence check.
  bool trust = false;
  /// defrule.
  bool enabled = true;
  /// thm, test?, defrule.
  Term formula;
  std::vector<UserHint> hints;
  std::optional<std::size_t> trials;
  std::vector<TestingSetting> settings;
  /// include.
  std::string path;
};

std::string_view to_string(Form::Kind k);

/// Reads and checks the shape of every top-level form. Throws ParseError
/// with the position of the offending subform.
std::vector<Form> parse_forms(std::string_view text);

/// Surface text of a form (reads back to the same form).
std::string to_string(const Form& f);

}  // namespace sedan
