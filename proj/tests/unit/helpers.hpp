#pragma once

#include <string>
#include <string_view>

#include <doctest.h>

#include "sedan/session.hpp"

namespace sedan::test {

/// World after admitting `text`; fails the test on any error.
inline World load(std::string_view text, const SessionFlags& flags = {}) {
  const SessionOutcome o = process_text(text, flags, SEDAN_CORPUS_DIR);
  if (o.error) FAIL("loading failed: " << *o.error);
  return o.world;
}

inline std::string corpus(const std::string& name) {
  return std::string(SEDAN_CORPUS_DIR) + "/" + name;
}

inline constexpr std::string_view kTriangleDefs = R"(
(include "base-rules.lisp")
(defrule cancel-*-left
  (implies (and (rationalp x) (< 0 x)) (equal (equal x (* x y)) (equal y 1))))
(defrule cancel-*-right
  (implies (and (rationalp x) (< 0 x)) (equal (equal x (* y x)) (equal y 1))))
(defdata triple (list pos pos pos))
(defun trianglep (v)
  (and (triplep v)
       (< (third v) (+ (first v) (second v)))
       (< (first v) (+ (second v) (third v)))
       (< (second v) (+ (first v) (third v)))))
(defun shape (v)
  (if (trianglep v)
      (cond ((equal (first v) (second v))
             (if (equal (second v) (third v)) "equilateral" "isosceles"))
            ((equal (second v) (third v)) "isosceles")
            ((equal (first v) (third v)) "isosceles")
            (t "scalene"))
    "error"))
)";

inline constexpr std::string_view kTriangleThm = R"(
(implies (and (trianglep x)
              (> (third x) 256)
              (= (third x) (* (second x) (first x))))
         (not (equal "isosceles" (shape x))))
)";

}  // namespace sedan::test
